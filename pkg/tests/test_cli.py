import json

import pytest

from arrfree.arrangement import parse_file
from arrfree.certify import verify_certificate
from arrfree.cli import main
from arrfree.fixtures import fixture_path

BOOLEAN = fixture_path("boolean.json")
BOOLEAN234 = fixture_path("boolean_234.json")
BRAID = fixture_path("braid.json")
EX1 = fixture_path("example1_a1_m0_2.json")
EX1_TEMPLATE = fixture_path("example1_template.json")
EX52 = fixture_path("example52.json")
RANK4 = fixture_path("rank4_flag.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# lattice


def test_lattice_braid(capsys):
    code, out, _ = run(capsys, "lattice", BRAID, "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data["levels"]["2"]) == 7


def test_lattice_boolean(capsys):
    code, out, _ = run(capsys, "lattice", BOOLEAN, "--json")
    assert code == 0
    assert len(json.loads(out)["levels"]["2"]) == 3


def test_lattice_rank4(capsys):
    code, out, _ = run(capsys, "lattice", RANK4, "--json", "--max-codim", "2")
    assert code == 0
    assert len(json.loads(out)["levels"]["2"]) == 28


def test_lattice_bad_codim(capsys):
    code, _, err = run(capsys, "lattice", BOOLEAN, "--max-codim", "5")
    assert code == 2
    assert "max-codim" in err


def test_lattice_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not valid", encoding="utf-8")
    code, _, err = run(capsys, "lattice", str(bad))
    assert code == 2 and "error" in err


# ---------------------------------------------------------------------------
# b2


@pytest.mark.parametrize(
    "path,total", [(RANK4, 36), (EX1, 16), (BOOLEAN234, 26)]
)
def test_b2_values(capsys, path, total):
    code, out, _ = run(capsys, "b2", path, "--json")
    assert code == 0
    assert json.loads(out)["b2"]["total"] == total


# ---------------------------------------------------------------------------
# certify


def test_certify_example1_free(capsys):
    code, out, _ = run(capsys, "certify", EX1, "--json")
    assert code == 0
    verdict = json.loads(out)["verdict"]
    assert verdict["kind"] == "Free" and verdict["exponents"] == [2, 2, 3]


def test_certify_example52_nonfree(capsys):
    code, out, _ = run(capsys, "certify", EX52)
    assert code == 10
    assert "NonFree" in out


def test_certify_braid_inconclusive(capsys):
    code, out, _ = run(capsys, "certify", BRAID)
    assert code == 20
    assert "Inconclusive" in out


def test_certify_braid_with_oracle(capsys):
    code, out, _ = run(capsys, "certify", BRAID, "--oracle", "--json")
    assert code == 0
    verdict = json.loads(out)["verdict"]
    assert verdict["exponents"] == [1, 2, 3]


def test_certify_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2}', encoding="utf-8")
    code, _, err = run(capsys, "certify", str(bad))
    assert code == 2 and "error" in err


def test_certify_json_deterministic(capsys):
    _, out1, _ = run(capsys, "certify", EX1, "--json", "--seed", "7")
    _, out2, _ = run(capsys, "certify", EX1, "--json", "--seed", "7")
    assert out1 == out2


def test_certificate_file_roundtrip(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, _, _ = run(capsys, "certify", EX1, "--cert", str(cert))
    assert code == 0
    payload = json.loads(cert.read_text(encoding="utf-8"))
    assert payload["header"]["format"] == "arrfree-certificate/1"
    assert payload["header"]["dispatch_order"][0] == "rank2"
    v = verify_certificate(parse_file(EX1), payload)
    assert v.kind == payload["kind"] == "Free"


def test_certify_only_rule(capsys):
    code, out, _ = run(capsys, "certify", EX52, "--only-rule", "two-locally-heavy", "--json")
    assert code == 10
    verdict = json.loads(out)["verdict"]
    assert verdict["certificate"]["rule"] == "TwoLocallyHeavy"


def test_certify_seed_env_default(capsys, monkeypatch):
    monkeypatch.setenv("ARRFREE_SEED", "42")
    code, out, _ = run(capsys, "certify", EX1, "--json")
    assert code == 0
    assert json.loads(out)["seed"] == 42


# ---------------------------------------------------------------------------
# sweep


def test_sweep_boundary(capsys):
    code, out, _ = run(
        capsys, "sweep", EX1_TEMPLATE, "--param", "a=1..3", "--param", "m0=2*a", "--json"
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    verdicts = {r["params"]["a"]: r["verdict"] for r in rows}
    assert verdicts == {1: "Free", 2: "NonFree", 3: "NonFree"}


def test_sweep_m0_range_all_free(capsys):
    code, out, _ = run(
        capsys, "sweep", EX1_TEMPLATE, "--param", "a=1", "--param", "m0=2..5", "--json"
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 4
    for r in rows:
        m0 = r["params"]["m0"]
        assert r["verdict"] == "Free"
        assert r["exponents"] == sorted([m0, 2, 3])


def test_sweep_rejects_row(capsys):
    code, out, _ = run(
        capsys, "sweep", EX1_TEMPLATE, "--param", "a=2", "--param", "m0=3", "--json"
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows[0]["status"] == "rejected"
    assert "m0 >= 2*a" in rows[0]["note"]


# ---------------------------------------------------------------------------
# oracle


def test_oracle_braid_hilbert(capsys):
    code, out, _ = run(capsys, "oracle", BRAID, "--hilbert", "--json")
    assert code == 0
    h = json.loads(out)["hilbert"]
    assert h["kind"] == "FreeProven" and h["exponents"] == [1, 2, 3]


def test_oracle_example52_cap8(capsys):
    code, out, _ = run(capsys, "oracle", EX52, "--hilbert", "--cap", "8", "--json")
    assert code == 0
    assert json.loads(out)["hilbert"]["kind"] == "NonFreeProven"


def test_oracle_degree_one_irreducible_nonsimple(capsys):
    code, out, _ = run(capsys, "oracle", EX52, "--degree", "1", "--json")
    assert code == 0
    assert json.loads(out)["dimension"] == 0


def test_oracle_cap_too_large(capsys):
    code, _, err = run(capsys, "oracle", EX52, "--hilbert", "--cap", "30")
    assert code == 3
    assert "too large" in err


def test_oracle_nonessential_needs_flag(tmp_path, capsys):
    p = tmp_path / "noness.json"
    p.write_text(
        json.dumps({"dim": 3, "hyperplanes": [[1, 0, 0], [0, 1, 0]], "mult": [2, 3]}),
        encoding="utf-8",
    )
    code, _, err = run(capsys, "oracle", str(p), "--hilbert")
    assert code == 2 and "essentialize" in err
    code, out, _ = run(capsys, "oracle", str(p), "--hilbert", "--essentialize", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["nonessential_dims"] == 1
    assert data["hilbert"]["kind"] == "FreeProven"
    assert data["hilbert"]["exponents"] == [2, 3]
