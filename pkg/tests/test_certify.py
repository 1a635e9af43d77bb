import json
import random

import pytest

from arrfree.arrangement import is_heavy, is_locally_heavy, parse, rank
from arrfree.certify import (
    CertificateError,
    CertifyOptions,
    Flag,
    addition_deletion_step,
    certify,
    certify_flag,
    certify_locally_heavy,
    find_locally_heavy_flags,
    is_generic_hyperplane,
    nonfree_generic,
    nonfree_two_locally_heavy,
    normalize_multiplicity_shift,
    verify_certificate,
)
from arrfree.fixtures import (
    boolean3,
    braid3,
    example52,
    example_a3,
    generic4,
    rank4_flag_example,
)

from conftest import force_locally_heavy, random_multiarrangement


# ---------------------------------------------------------------------------
# predicates


def test_is_heavy():
    a = parse({"dim": 2, "hyperplanes": [[1, 0], [0, 1], [1, -1]], "mult": [5, 2, 2]})
    assert is_heavy(a, 0)
    assert not is_heavy(example_a3(1, 2), 5)  # 2 < 5
    single = parse({"dim": 2, "hyperplanes": [[1, 0]], "mult": [3]})
    assert is_heavy(single, 0)


def test_is_locally_heavy():
    for a_ in (1, 2):
        for m0 in (2 * a_, 2 * a_ + 1):
            assert is_locally_heavy(example_a3(a_, m0), 5)
    assert not is_locally_heavy(example_a3(1, 1), 5)
    br = braid3()
    assert not any(is_locally_heavy(br, i) for i in range(br.size))
    e = example52()
    assert is_locally_heavy(e, 1) and is_locally_heavy(e, 5)


def test_is_generic_hyperplane():
    assert is_generic_hyperplane(boolean3(), 2)
    assert not is_generic_hyperplane(braid3(), 2)
    g = generic4()
    assert all(is_generic_hyperplane(g, i) for i in range(4))
    with pytest.raises(ValueError):
        is_generic_hyperplane(boolean3((2, 1, 1)), 0)


# ---------------------------------------------------------------------------
# flags


def test_flag_search_rank4_contains_paper_flag():
    a = rank4_flag_example()
    flags = find_locally_heavy_flags(a)
    assert flags
    target_chain = (
        frozenset({9}),  # w
        frozenset({6, 7, 8, 9}),  # w, z, z+w, z-w
        frozenset({3, 4, 5, 6, 7, 8, 9}),  # everything with no x
        frozenset(range(10)),
    )
    match = [f for f in flags if f.members_chain == target_chain]
    assert match and match[0].values == (1, 3, 3, 3)


def test_flag_search_braid_empty():
    assert find_locally_heavy_flags(braid3()) == []


def test_flag_search_boolean_all_ones():
    flags = find_locally_heavy_flags(boolean3())
    assert flags
    assert all(f.values == (1, 1, 1) for f in flags)


def test_flag_search_rejects_multiarrangement():
    with pytest.raises(ValueError):
        find_locally_heavy_flags(example_a3(1, 2))


def test_certify_flag_rank4():
    a = rank4_flag_example()
    v = certify_flag(a, find_locally_heavy_flags(a)[0])
    assert v.kind == "Free" and v.exponents == (1, 3, 3, 3)
    assert v.certificate.numbers["b2"] == 36
    assert v.certificate.numbers["flag_rhs"] == 36


def test_certify_flag_boolean():
    a = boolean3()
    v = certify_flag(a, find_locally_heavy_flags(a)[0])
    assert v.kind == "Free" and v.exponents == (1, 1, 1)
    assert v.certificate.numbers["b2"] == 3 == v.certificate.numbers["flag_rhs"]


def test_certify_flag_split_arrangement():
    a = parse(
        {"dim": 3, "hyperplanes": [[1, 0, 0], [0, 1, 0], [1, -1, 0], [0, 0, 1]], "mult": [1] * 4}
    )
    flags = find_locally_heavy_flags(a)
    start_x = [f for f in flags if f.members_chain[0] == frozenset({0})]
    assert start_x
    v = certify_flag(a, start_x[0])
    assert v.kind == "Free" and v.exponents == (1, 1, 2)
    assert v.certificate.numbers["b2"] == 5 == v.certificate.numbers["flag_rhs"]


def test_certify_flag_invalid():
    a = boolean3()
    bad = Flag(
        (frozenset({0}), frozenset({0, 1}), frozenset({0, 1, 2})),
        (1, 2, 1),
    )
    with pytest.raises(ValueError):
        certify_flag(a, bad)


# ---------------------------------------------------------------------------
# locally heavy recursion


def test_certify_locally_heavy_example1_free():
    v = certify_locally_heavy(example_a3(1, 3), 5)
    assert v.kind == "Free"
    assert v.exponents == (2, 3, 3)
    n = v.certificate.numbers
    assert n["away_b2"] == 6 == n["restriction_b2"]


def test_certify_locally_heavy_example1_nonfree():
    v = certify_locally_heavy(example_a3(2, 4), 5)
    assert v.kind == "NonFree"
    assert v.witness["away_b2"] == 26 and v.witness["restriction_b2"] == 25


def test_certify_locally_heavy_boolean():
    v = certify_locally_heavy(boolean3((2, 3, 4)), 2)
    assert v.kind == "Free" and v.exponents == (2, 3, 4)
    n = v.certificate.numbers
    assert n["away_b2"] == 6 == n["restriction_b2"]


def test_certify_locally_heavy_requires_predicate():
    with pytest.raises(ValueError):
        certify_locally_heavy(example_a3(1, 1), 5)


def test_flag_and_locally_heavy_agree():
    # simple arrangements where both routes apply must agree
    cases = [
        boolean3(),
        parse({"dim": 3, "hyperplanes": [[1, 0, 0], [0, 1, 0], [1, -1, 0], [0, 0, 1]], "mult": [1] * 4}),
    ]
    for a in cases:
        flags = find_locally_heavy_flags(a)
        lh = [i for i in range(a.size) if is_locally_heavy(a, i)]
        assert flags and lh
        v1 = certify_flag(a, flags[0])
        v2 = certify_locally_heavy(a, lh[0])
        assert v1.kind == v2.kind == "Free"
        assert v1.exponents == v2.exponents


# ---------------------------------------------------------------------------
# shifts


def test_shift_legal():
    s = normalize_multiplicity_shift(example_a3(1, 2), 5, 3)
    assert s.mult[5] == 5


def test_shift_destroys_local_heaviness():
    with pytest.raises(ValueError):
        normalize_multiplicity_shift(example_a3(1, 2), 5, -1)


def test_shift_boolean_down():
    s = normalize_multiplicity_shift(boolean3((2, 3, 4)), 2, -2)
    assert s.mult == (2, 3, 2)


def test_shift_nonpositive():
    with pytest.raises(ValueError):
        normalize_multiplicity_shift(boolean3((2, 3, 4)), 2, -4)


def test_shift_invariance_of_verdicts():
    base = example_a3(1, 3)
    base_v = certify(base)
    for k in (-1, 0, 1, 2, 5):
        s = normalize_multiplicity_shift(base, 5, k)
        v = certify(s)
        assert v.kind == base_v.kind == "Free"
        others = sorted(set(base_v.exponents) - {3}) if k else None
        assert sorted(v.exponents) == sorted((3 + k, 2, 3))
        del others


# ---------------------------------------------------------------------------
# nonfreeness rules


def test_nonfree_generic_any_multiplicity():
    g = generic4()
    rng = random.Random(3)
    for _ in range(5):
        m = tuple(rng.randint(1, 4) for _ in range(4))
        a = parse({"dim": 3, "hyperplanes": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], "mult": list(m)})
        v = nonfree_generic(a, 0)
        assert v.kind == "NonFree"
    assert nonfree_generic(g, 3).kind == "NonFree"


def test_nonfree_generic_braid_inconclusive():
    for i in range(6):
        assert nonfree_generic(braid3(), i).kind == "Inconclusive"


def test_nonfree_generic_reducible_inconclusive():
    a = parse(
        {"dim": 3, "hyperplanes": [[1, 0, 0], [0, 1, 0], [1, -1, 0], [0, 0, 1]], "mult": [1] * 4}
    )
    assert is_generic_hyperplane(a, 3)
    assert nonfree_generic(a, 3).kind == "Inconclusive"


def test_two_locally_heavy_example52():
    v = nonfree_two_locally_heavy(example52())
    assert v.kind == "NonFree"
    assert v.certificate.rule == "TwoLocallyHeavy"


def test_two_locally_heavy_reducible_inconclusive():
    a = parse(
        {"dim": 3, "hyperplanes": [[1, 0, 0], [0, 1, 0], [1, -1, 0], [0, 0, 1]], "mult": [3, 1, 2, 5]}
    )
    assert is_locally_heavy(a, 0) and is_locally_heavy(a, 3)
    assert nonfree_two_locally_heavy(a).kind == "Inconclusive"


def test_two_locally_heavy_rank4_embedding():
    a = parse(
        {
            "dim": 4,
            "hyperplanes": [
                [1, 0, 0, 0],
                [1, -1, 0, 0],
                [1, 0, -1, 0],
                [0, 1, 0, 0],
                [0, 1, -1, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
            ],
            "mult": [1, 2, 1, 1, 1, 2, 1],
        }
    )
    assert rank(a) == 4
    v = nonfree_two_locally_heavy(a)
    assert v.kind == "NonFree"
    assert set(v.witness["flat"]) == {0, 1, 2, 3, 4, 5}


def test_two_locally_heavy_needs_two():
    with pytest.raises(ValueError):
        nonfree_two_locally_heavy(braid3())


# ---------------------------------------------------------------------------
# addition-deletion patterns


def test_addition_deletion_infers_full():
    assert addition_deletion_step({"deletion": (2, 2, 2), "restriction": (2, 2)}) == (
        "full",
        (2, 2, 3),
    )


def test_addition_deletion_infers_deletion():
    name, exps = addition_deletion_step({"full": (2, 3, 5), "restriction": (2, 3)})
    assert name == "deletion" and exps == (2, 3, 4)


def test_addition_deletion_infers_restriction():
    name, exps = addition_deletion_step({"full": (2, 2, 3), "deletion": (2, 2, 2)})
    assert name == "restriction" and exps == (2, 2)


def test_addition_deletion_incompatible():
    with pytest.raises(ValueError):
        addition_deletion_step({"deletion": (2, 2, 2), "restriction": (1, 3)})
    with pytest.raises(ValueError):
        addition_deletion_step({"full": (2, 2, 3)})


# ---------------------------------------------------------------------------
# dispatch


def test_certify_dispatch_fixtures():
    assert certify(boolean3()).kind == "Free"
    assert certify(example_a3(1, 2)).kind == "Free"
    assert certify(example_a3(2, 4)).kind == "NonFree"
    assert certify(example52()).kind == "NonFree"
    assert certify(braid3()).kind == "Inconclusive"


def test_certify_rank2_input():
    a = parse({"dim": 2, "hyperplanes": [[1, 0], [0, 1], [1, -1]], "mult": [2, 2, 2]})
    v = certify(a)
    assert v.kind == "Free" and v.exponents == (3, 3)
    assert v.certificate.rule == "Rank2Base"


def test_certify_only_rule_isolation():
    e = example52()
    v = certify(e, CertifyOptions(only_rule="two-locally-heavy"))
    assert v.kind == "NonFree" and v.certificate.rule == "TwoLocallyHeavy"
    v = certify(e, CertifyOptions(only_rule="generic"))
    assert v.kind == "Inconclusive"
    v = certify(braid3(), CertifyOptions(only_rule="oracle", use_oracle=True))
    assert v.kind == "Free" and v.exponents == (1, 2, 3)


def test_free_exponents_sum_to_total_multiplicity():
    for a in (boolean3(), boolean3((2, 3, 4)), example_a3(1, 2), example_a3(1, 5), rank4_flag_example()):
        v = certify(a)
        assert v.kind == "Free"
        assert sum(v.exponents) == a.total_mult


def test_verdict_kind_validation():
    from arrfree.certify import Verdict

    with pytest.raises(ValueError):
        Verdict("Maybe")


# ---------------------------------------------------------------------------
# certificates


def _roundtrip(a):
    v = certify(a, CertifyOptions(use_oracle=True))
    payload = json.loads(json.dumps(v.to_dict(), sort_keys=True))
    v2 = verify_certificate(a, payload)
    assert v2.kind == v.kind
    if v.kind == "Free":
        assert v2.exponents == v.exponents
    return v, payload


def test_certificate_roundtrip_fixtures():
    for a in (
        boolean3(),
        boolean3((2, 3, 4)),
        example_a3(1, 2),
        example_a3(2, 4),
        example52(),
        rank4_flag_example(),
        braid3(),
    ):
        _roundtrip(a)


def test_certificate_tamper_detected():
    a = example_a3(1, 2)
    v, payload = _roundtrip(a)
    payload["certificate"]["numbers"]["away_b2"] += 1
    with pytest.raises(CertificateError):
        verify_certificate(a, payload)


def test_certificate_wrong_kind_detected():
    a = example_a3(1, 2)
    v, payload = _roundtrip(a)
    payload["kind"] = "NonFree"
    with pytest.raises(CertificateError):
        verify_certificate(a, payload)


def test_certificate_shift_node_reverifies():
    from arrfree.certify import CertNode, RULE_SHIFT

    base = example_a3(1, 2)
    shifted = normalize_multiplicity_shift(base, 5, 2)
    inner = certify(shifted)
    node = CertNode(RULE_SHIFT, {"h0": 5, "k": 2}, {}, (inner.certificate,))
    payload = {"kind": "Free", "exponents": [2, 3, 4], "certificate": node.to_dict()}
    v = verify_certificate(base, json.loads(json.dumps(payload)))
    assert v.kind == "Free" and v.exponents == (2, 3, 4)


def test_certificate_addition_deletion_node():
    from arrfree.certify import addition_deletion_node, _reverify_node, CertNode

    node = addition_deletion_node({"deletion": (2, 2, 2), "restriction": (2, 2)})
    assert node.rule == "AdditionDeletion"
    assert node.numbers == {"inferred": "full", "exponents": [2, 2, 3]}
    rebuilt = CertNode.from_dict(json.loads(json.dumps(node.to_dict())))
    v = _reverify_node(boolean3(), rebuilt)  # arrangement-independent pattern check
    assert v.exponents == (2, 2, 3)
    tampered = CertNode(node.rule, node.inputs, {"inferred": "full", "exponents": [2, 2, 4]})
    with pytest.raises(CertificateError):
        _reverify_node(boolean3(), tampered)


# ---------------------------------------------------------------------------
# randomized coherence


def test_locally_heavy_verdicts_match_two_lh_rule():
    # when the locally-heavy route proves NonFree on an irreducible rank-3
    # input with two locally heavy hyperplanes, the two-lh rule must agree
    rng = random.Random(67)
    checked = 0
    while checked < 10:
        a = random_multiarrangement(rng, max_planes=5)
        i0 = rng.randrange(a.size)
        a = force_locally_heavy(a, i0, rng)
        lh = [i for i in range(a.size) if is_locally_heavy(a, i)]
        if len(lh) < 2 or rank(a) != 3:
            continue
        from arrfree.arrangement import reducibility

        if not reducibility(a).irreducible:
            continue
        v1 = nonfree_two_locally_heavy(a)
        assert v1.kind == "NonFree"
        v2 = certify_locally_heavy(a, i0)
        assert v2.kind in ("NonFree", "Inconclusive")
        checked += 1
