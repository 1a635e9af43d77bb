"""Freeness and nonfreeness certification with machine-checkable proof trees.

Rules implemented, in dispatch order: rank-2 base case, flag equality for
simple arrangements, locally-heavy restriction recursion, the generic
totally-nonfree rule, the two-locally-heavy rule, and (opt-in) the
brute-force oracle.  Verdicts are three-valued; the engine never guesses
where no rule applies.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .arrangement import (
    Hyperplane,
    Multiarrangement,
    essentialize,
    euler_ziegler_multiplicity,
    intersection_lattice,
    is_heavy,
    is_locally_heavy,
    localization,
    locally_heavy_indices,
    rank,
    reducibility,
    restriction_flats,
    shifted_mult,
)
from .betti import b2_away, b2_multi, b2_simple
from .rank2 import instance_from_rank2_arrangement, rank2_exponents

RULE_RANK2 = "Rank2Base"
RULE_LOCALLY_HEAVY = "LocallyHeavyRestriction"
RULE_FLAG = "FlagEquality"
RULE_GENERIC = "GenericTotallyNonfree"
RULE_TWO_LH = "TwoLocallyHeavy"
RULE_ADD_DEL = "AdditionDeletion"
RULE_SAITO = "SaitoBasis"
RULE_HILBERT = "HilbertObstruction"
RULE_SHIFT = "MultiplicityShift"

DISPATCH_ORDER = ("rank2", "flag", "locally-heavy", "generic", "two-locally-heavy", "oracle")


class CertificateError(ValueError):
    """A certificate failed re-verification."""


@dataclass(frozen=True)
class CertNode:
    rule: str
    inputs: dict
    numbers: dict
    children: tuple["CertNode", ...] = ()

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "inputs": self.inputs,
            "numbers": self.numbers,
            "children": [c.to_dict() for c in self.children],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CertNode":
        return cls(
            data["rule"],
            dict(data.get("inputs", {})),
            dict(data.get("numbers", {})),
            tuple(cls.from_dict(c) for c in data.get("children", [])),
        )


@dataclass(frozen=True)
class Verdict:
    kind: str  # "Free" | "NonFree" | "Inconclusive"
    exponents: tuple[int, ...] | None = None
    witness: dict | None = None
    reason: str | None = None
    certificate: CertNode | None = None

    def __post_init__(self):
        if self.kind not in ("Free", "NonFree", "Inconclusive"):
            raise ValueError(f"bad verdict kind {self.kind}")

    @property
    def is_free(self) -> bool:
        return self.kind == "Free"

    @property
    def decisive(self) -> bool:
        return self.kind != "Inconclusive"

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.exponents is not None:
            out["exponents"] = list(self.exponents)
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason is not None:
            out["reason"] = self.reason
        out["certificate"] = self.certificate.to_dict() if self.certificate else None
        return out


@dataclass(frozen=True)
class CertifyOptions:
    use_oracle: bool = False
    oracle_cap: int | None = None
    seed: int = 0
    only_rule: str | None = None


@dataclass(frozen=True)
class Flag:
    """Chain X_1 > X_2 > ... > X_l, each given by the set of hyperplanes
    containing it, with the per-level restriction multiplicities; the
    leading value is 1 by convention."""

    members_chain: tuple[frozenset[int], ...]
    values: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "members_chain": [sorted(m) for m in self.members_chain],
            "values": list(self.values),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Flag":
        return cls(
            tuple(frozenset(m) for m in data["members_chain"]),
            tuple(data["values"]),
        )


# is_heavy / is_locally_heavy are implemented in the arrangement layer and
# re-exported here; they are part of this module's public predicate surface.


def is_generic_hyperplane(a: Multiarrangement, h: Hyperplane | int) -> bool:
    """All codim-2 flats inside h have exactly two members; simple input only."""
    if not a.is_simple():
        raise ValueError("generic hyperplanes are defined for simple arrangements")
    i = a.index_of(h)
    return all(len(f.members) == 2 for f in restriction_flats(a, i))


# ---------------------------------------------------------------------------
# flag search


def _restriction_step(
    m: Multiarrangement, members: Sequence[frozenset[int]], k: int
) -> tuple[Multiarrangement, list[frozenset[int]]]:
    """Restrict onto hyperplane k of m, composing original-member sets."""
    restr = euler_ziegler_multiplicity(m, k)
    new_members = [
        frozenset().union(*(members[j] for j in tm)) for tm in restr.trace_members
    ]
    return restr.arrangement, new_members


def find_locally_heavy_flags(a: Multiarrangement) -> list[Flag]:
    """All full flags whose restriction steps are locally heavy.

    Depth-first: the first flat ranges over all hyperplanes, and each later
    flat over the locally heavy hyperplanes of the iterated Euler-Ziegler
    restriction.  Returns every chain reaching codimension l.
    """
    if not a.is_simple():
        raise ValueError("flag search needs a simple arrangement")
    flags: list[Flag] = []

    def dfs(m: Multiarrangement, members: list[frozenset[int]], chain, values, depth: int):
        if depth == a.dim:
            flags.append(Flag(tuple(chain), tuple(values)))
            return
        if m.size == 0:
            return
        candidates = range(m.size) if depth == 0 else locally_heavy_indices(m)
        for k in candidates:
            if m.dim == 1:
                nxt, nxt_members = None, None
            else:
                nxt, nxt_members = _restriction_step(m, members, k)
            chain.append(members[k])
            values.append(m.mult[k])
            if depth + 1 == a.dim:
                flags.append(Flag(tuple(chain), tuple(values)))
            elif nxt is not None:
                dfs(nxt, nxt_members, chain, values, depth + 1)
            chain.pop()
            values.pop()

    dfs(a, [frozenset({i}) for i in range(a.size)], [], [], 0)
    flags.sort(key=lambda f: tuple(sorted(m) for m in f.members_chain))
    return flags


def _flag_levels(a: Multiarrangement, f: Flag) -> list[tuple[Multiarrangement, int]]:
    """Re-verify a flag; return the level arrangements with the chosen index."""
    if not a.is_simple():
        raise ValueError("flags are defined for simple arrangements")
    if len(f.members_chain) != a.dim or len(f.values) != a.dim:
        raise ValueError("flag has wrong length")
    m = a
    members = [frozenset({i}) for i in range(a.size)]
    levels = []
    for depth in range(a.dim):
        k = next((i for i in range(m.size) if members[i] == f.members_chain[depth]), None)
        if k is None:
            raise ValueError("flag level does not match a restriction hyperplane")
        if depth > 0 and not is_locally_heavy(m, k):
            raise ValueError("flag level is not locally heavy")
        if m.mult[k] != f.values[depth]:
            raise ValueError("flag level multiplicity mismatch")
        levels.append((m, k))
        if depth + 1 < a.dim:
            m, members = _restriction_step(m, members, k)
    return levels


def certify_flag(a: Multiarrangement, f: Flag) -> Verdict:
    """Decide freeness of a simple arrangement from a locally heavy flag.

    Both sides of the flag equality are computed exactly: equality proves
    freeness with exponents (1, v_1, ..., v_{l-1}); inequality disproves it.
    """
    levels = _flag_levels(a, f)
    v = f.values
    l = a.dim
    lhs = b2_simple(a).total
    rhs = sum(v[i] * v[j] for i in range(l) for j in range(i + 1, l))

    # telescoping consistency of the away-quantities, level by level
    if l >= 3:
        level_b2 = [b2_multi(m).total for m, _ in levels[: l - 1]]
        totals = [sum(v[i:]) for i in range(l)]
        away = [level_b2[i] - v[i] * (totals[i] - v[i]) for i in range(l - 2)]
        final_b2 = level_b2[l - 2]
        assert final_b2 == v[l - 2] * v[l - 1], "rank-2 tail must have the flag exponents"
        assert sum(away) == sum(level_b2[1 : l - 2]) + lhs - rhs + final_b2, (
            "away-quantity telescope failed"
        )

    inputs = {"flag": f.to_dict()}
    numbers = {"b2": lhs, "flag_rhs": rhs, "level_values": list(v)}
    node = CertNode(RULE_FLAG, inputs, numbers)
    if lhs == rhs:
        return Verdict("Free", tuple(sorted(v)), certificate=node)
    return Verdict("NonFree", witness={"b2": lhs, "flag_rhs": rhs}, certificate=node)


# ---------------------------------------------------------------------------
# locally heavy recursion


def _rank2_base(a: Multiarrangement) -> Verdict:
    r = rank(a)
    if r > 2:
        raise ValueError("rank-2 base case needs rank <= 2")
    if r == 0:
        exps: tuple[int, ...] = ()
    elif r == 1:
        exps = (a.total_mult,)
    else:
        exps = rank2_exponents(instance_from_rank2_arrangement(a))
    node = CertNode(
        RULE_RANK2,
        {"arrangement": a.to_dict()},
        {"rank": r, "exponents": list(exps)},
    )
    return Verdict("Free", exps, certificate=node)


def certify_locally_heavy(
    a: Multiarrangement, h0: Hyperplane | int, opts: CertifyOptions = CertifyOptions()
) -> Verdict:
    """Apply the restriction criterion at a locally heavy hyperplane.

    Freeness is equivalent to the Euler-Ziegler restriction being free with
    the away-b2 equal to the restriction's b2; the restriction is certified
    recursively (rank-2 base case, then further locally heavy hyperplanes,
    then the flag rule, then the oracle when enabled).
    """
    i0 = a.index_of(h0)
    if not is_locally_heavy(a, i0):
        raise ValueError(f"hyperplane {a.label(i0)} is not locally heavy")
    m0 = a.mult[i0]
    restr = euler_ziegler_multiplicity(a, i0)
    away = b2_away(a, i0)
    rb2 = b2_multi(restr.arrangement).total
    assert away >= rb2, "away-b2 inequality violated"
    inputs = {
        "h0": i0,
        "h0_form": a.hyperplanes[i0].form_str(),
        "restriction": restr.arrangement.to_dict(),
    }
    numbers = {"m0": m0, "away_b2": away, "restriction_b2": rb2}
    if away != rb2:
        node = CertNode(RULE_LOCALLY_HEAVY, inputs, numbers)
        return Verdict(
            "NonFree",
            witness={"away_b2": away, "restriction_b2": rb2, "h0": i0},
            certificate=node,
        )
    sub = _certify_core(restr.arrangement, opts)
    node = CertNode(
        RULE_LOCALLY_HEAVY,
        inputs,
        numbers,
        (sub.certificate,) if sub.certificate else (),
    )
    if sub.kind == "Free":
        exps = tuple(sorted((m0,) + tuple(sub.exponents)))
        return Verdict("Free", exps, certificate=node)
    if sub.kind == "NonFree":
        return Verdict(
            "NonFree",
            witness={"restriction_nonfree": sub.witness or {}, "h0": i0},
            certificate=node,
        )
    return Verdict(
        "Inconclusive",
        reason=f"restriction undecided: {sub.reason}",
        certificate=node,
    )


def _certify_core(a: Multiarrangement, opts: CertifyOptions) -> Verdict:
    """Recursive certifier used on restrictions."""
    if rank(a) <= 2:
        return _rank2_base(a)
    reasons = []
    lh = sorted(locally_heavy_indices(a), key=lambda i: (-a.mult[i], i))
    for i in lh:
        v = certify_locally_heavy(a, i, opts)
        if v.decisive:
            return v
        reasons.append(v.reason or "")
    if not lh:
        reasons.append("no locally heavy hyperplane")
    if a.is_simple():
        flags = find_locally_heavy_flags(a)
        if flags:
            return certify_flag(a, flags[0])
        reasons.append("no locally heavy flag")
    if opts.use_oracle:
        v = _oracle_rule(a, opts)
        if v.decisive:
            return v
        reasons.append(v.reason or "oracle undetermined")
    return Verdict("Inconclusive", reason="; ".join(r for r in reasons if r))


# ---------------------------------------------------------------------------
# nonfreeness rules


def nonfree_generic(a: Multiarrangement, h: Hyperplane | int) -> Verdict:
    """An irreducible arrangement of rank > 2 with a generic hyperplane is
    totally nonfree, so the given multiarrangement is nonfree."""
    s = a.underlying_simple()
    i = a.index_of(h)
    if rank(s) <= 2:
        return Verdict("Inconclusive", reason="rank must exceed 2 for the generic rule")
    if not is_generic_hyperplane(s, i):
        return Verdict("Inconclusive", reason=f"{a.label(i)} is not generic")
    red = reducibility(s)
    if not red.irreducible:
        return Verdict("Inconclusive", reason="arrangement is reducible")
    node = CertNode(
        RULE_GENERIC,
        {"h": i, "h_form": a.hyperplanes[i].form_str()},
        {"rank": rank(s), "blocks": len(red.blocks)},
    )
    return Verdict("NonFree", witness={"generic_hyperplane": i}, certificate=node)


def nonfree_two_locally_heavy(a: Multiarrangement) -> Verdict:
    """Nonfreeness from two locally heavy hyperplanes.

    Rank 3: irreducible implies nonfree (the reducible case is free but no
    exponents are derived here, so it stays inconclusive).  Rank > 3: look
    for a rank-3 flat under both hyperplanes whose localization is
    irreducible apart from its non-essential part.
    """
    lh = locally_heavy_indices(a)
    if len(lh) < 2:
        raise ValueError("need at least two locally heavy hyperplanes")
    r = rank(a)
    if r < 3:
        return Verdict("Inconclusive", reason="rank below 3")
    if r == 3:
        red = reducibility(a)
        if red.irreducible:
            node = CertNode(
                RULE_TWO_LH,
                {"locally_heavy": lh[:2]},
                {"rank": 3, "blocks": 1},
            )
            return Verdict("NonFree", witness={"locally_heavy": lh[:2]}, certificate=node)
        return Verdict(
            "Inconclusive",
            reason="reducible rank-3 case: rule only proves nonfreeness",
        )
    flats3 = intersection_lattice(a, 3).get(3, ())
    for hi in range(len(lh)):
        for li in range(hi + 1, len(lh)):
            h, l = lh[hi], lh[li]
            for f in flats3:
                if h not in f.members or l not in f.members:
                    continue
                loc = localization(a, f)
                if reducibility(loc).irreducible:
                    node = CertNode(
                        RULE_TWO_LH,
                        {
                            "locally_heavy": [h, l],
                            "flat_members": sorted(f.members),
                        },
                        {"rank": r, "localization_rank": rank(loc)},
                    )
                    return Verdict(
                        "NonFree",
                        witness={"locally_heavy": [h, l], "flat": sorted(f.members)},
                        certificate=node,
                    )
    return Verdict(
        "Inconclusive",
        reason="no essentially irreducible rank-3 flat under two locally heavy hyperplanes",
    )


# ---------------------------------------------------------------------------
# multiplicity shifts and addition-deletion bookkeeping


def normalize_multiplicity_shift(
    a: Multiarrangement, h0: Hyperplane | int, k: int
) -> Multiarrangement:
    """Shift the multiplicity of a locally heavy hyperplane by k; freeness is
    invariant under such shifts, so this travels between heavy and minimal
    locally heavy forms."""
    i0 = a.index_of(h0)
    if not is_locally_heavy(a, i0):
        raise ValueError(f"{a.label(i0)} is not locally heavy")
    new = a.mult[i0] + k
    if new < 1:
        raise ValueError("shift makes the multiplicity nonpositive")
    shifted = shifted_mult(a, i0, k)
    if not is_locally_heavy(shifted, i0):
        raise ValueError("shift destroys local heaviness")
    return shifted


def addition_deletion_step(known: dict[str, Sequence[int]]) -> tuple[str, tuple[int, ...]]:
    """Infer the third exponent statement from two of full/deletion/restriction.

    Patterns (as multisets): full = (d_1..d_l), deletion = full with one
    entry lowered by 1, restriction = full minus that entry.
    """
    names = {"full", "deletion", "restriction"}
    if set(known) - names or len(known) != 2:
        raise ValueError("give exactly two of full, deletion, restriction")
    data = {k: Counter(int(x) for x in v) for k, v in known.items()}
    sizes = {k: sum(c.values()) for k, c in data.items()}

    def as_tuple(c: Counter) -> tuple[int, ...]:
        return tuple(sorted(c.elements()))

    if "full" in data and "restriction" in data:
        full, restr = data["full"], data["restriction"]
        if sizes["full"] != sizes["restriction"] + 1 or restr - full:
            raise ValueError("exponent patterns incompatible")
        leftover = full - restr
        if sum(leftover.values()) != 1:
            raise ValueError("exponent patterns incompatible")
        (dl,) = leftover.elements()
        deletion = restr.copy()
        deletion[dl - 1] += 1
        return "deletion", as_tuple(deletion)
    if "full" in data and "deletion" in data:
        full, dele = data["full"], data["deletion"]
        if sizes["full"] != sizes["deletion"]:
            raise ValueError("exponent patterns incompatible")
        for dl in sorted(full):
            rest = full.copy()
            rest[dl] -= 1
            rest += Counter()
            cand = rest.copy()
            cand[dl - 1] += 1
            if cand == dele:
                return "restriction", as_tuple(rest)
        raise ValueError("exponent patterns incompatible")
    dele, restr = data["deletion"], data["restriction"]
    if sizes["deletion"] != sizes["restriction"] + 1 or restr - dele:
        raise ValueError("exponent patterns incompatible")
    leftover = dele - restr
    if sum(leftover.values()) != 1:
        raise ValueError("exponent patterns incompatible")
    (dm,) = leftover.elements()
    full = restr.copy()
    full[dm + 1] += 1
    return "full", as_tuple(full)


def addition_deletion_node(known: dict[str, Sequence[int]]) -> CertNode:
    """Certificate node recording one addition-deletion inference."""
    name, exps = addition_deletion_step(known)
    return CertNode(
        RULE_ADD_DEL,
        {"known": {k: list(v) for k, v in known.items()}},
        {"inferred": name, "exponents": list(exps)},
    )


# ---------------------------------------------------------------------------
# oracle bridge and top-level dispatch


def _oracle_rule(a: Multiarrangement, opts: CertifyOptions) -> Verdict:
    from . import oracle

    ess, dropped = essentialize(a)
    res = oracle.hilbert_freeness_test(ess, degree_cap=opts.oracle_cap, seed=opts.seed)
    if res.kind == "FreeProven":
        node = CertNode(
            RULE_SAITO,
            {
                "derivations": [t.to_dict() for t in res.basis],
                "essentialized_from_dim": a.dim if dropped else None,
            },
            {"exponents": list(res.exponents), "seed": opts.seed},
        )
        return Verdict("Free", res.exponents, certificate=node)
    if res.kind == "NonFreeProven":
        node = CertNode(
            RULE_HILBERT,
            {"degree_cap": res.degree_cap, "essentialized_from_dim": a.dim if dropped else None},
            {"graded_dims": list(res.dims), "total_mult": ess.total_mult},
        )
        return Verdict("NonFree", witness={"graded_dims": list(res.dims)}, certificate=node)
    return Verdict("Inconclusive", reason="oracle undetermined")


def certify(a: Multiarrangement, opts: CertifyOptions = CertifyOptions()) -> Verdict:
    """Run the rules in the documented dispatch order; first decision wins."""
    attempts: list[str] = []

    def enabled(rule: str) -> bool:
        return opts.only_rule is None or opts.only_rule == rule

    if enabled("rank2") and rank(a) <= 2:
        return _rank2_base(a)
    if enabled("flag") and a.is_simple():
        flags = find_locally_heavy_flags(a)
        if flags:
            return certify_flag(a, flags[0])
        attempts.append("flag: no locally heavy flag")
    elif enabled("flag"):
        attempts.append("flag: input not simple")
    if enabled("locally-heavy"):
        lh = sorted(locally_heavy_indices(a), key=lambda i: (-a.mult[i], i))
        if not lh:
            attempts.append("locally-heavy: no locally heavy hyperplane")
        for i in lh:
            v = certify_locally_heavy(a, i, opts)
            if v.decisive:
                return v
            attempts.append(f"locally-heavy[{a.label(i)}]: {v.reason}")
    if enabled("generic"):
        for i in range(a.size):
            v = nonfree_generic(a, i)
            if v.decisive:
                return v
        attempts.append("generic: no irreducible generic-hyperplane witness")
    if enabled("two-locally-heavy"):
        lh = locally_heavy_indices(a)
        if len(lh) >= 2:
            v = nonfree_two_locally_heavy(a)
            if v.decisive:
                return v
            attempts.append(f"two-locally-heavy: {v.reason}")
        else:
            attempts.append("two-locally-heavy: fewer than two locally heavy hyperplanes")
    if enabled("oracle") and opts.use_oracle:
        v = _oracle_rule(a, opts)
        if v.decisive:
            return v
        attempts.append("oracle: undetermined")
    return Verdict("Inconclusive", reason="; ".join(attempts) or "no applicable rule")


# ---------------------------------------------------------------------------
# certificate re-verification


def _reverify_node(a: Multiarrangement, node: CertNode) -> Verdict:
    from . import oracle

    if node.rule == RULE_RANK2:
        v = _rank2_base(a)
        if list(v.exponents) != node.numbers.get("exponents"):
            raise CertificateError("rank-2 exponents do not re-verify")
        return v
    if node.rule == RULE_FLAG:
        flag = Flag.from_dict(node.inputs["flag"])
        v = certify_flag(a, flag)
        if v.certificate.numbers != node.numbers:
            raise CertificateError("flag numbers do not re-verify")
        return v
    if node.rule == RULE_LOCALLY_HEAVY:
        i0 = node.inputs["h0"]
        if not is_locally_heavy(a, i0):
            raise CertificateError("cited hyperplane is not locally heavy")
        restr = euler_ziegler_multiplicity(a, i0)
        away = b2_away(a, i0)
        rb2 = b2_multi(restr.arrangement).total
        want = {"m0": a.mult[i0], "away_b2": away, "restriction_b2": rb2}
        if want != node.numbers:
            raise CertificateError("locally-heavy numbers do not re-verify")
        if away != rb2:
            return Verdict("NonFree", witness={"away_b2": away, "restriction_b2": rb2})
        if not node.children:
            raise CertificateError("equality case needs a restriction certificate")
        sub = _reverify_node(restr.arrangement, node.children[0])
        if sub.kind == "Free":
            return Verdict("Free", tuple(sorted((a.mult[i0],) + tuple(sub.exponents))))
        return sub
    if node.rule == RULE_GENERIC:
        v = nonfree_generic(a, node.inputs["h"])
        if not v.decisive:
            raise CertificateError("generic rule preconditions do not re-verify")
        return v
    if node.rule == RULE_TWO_LH:
        v = nonfree_two_locally_heavy(a)
        if not v.decisive:
            raise CertificateError("two-locally-heavy rule does not re-verify")
        return v
    if node.rule == RULE_SAITO:
        thetas = [oracle.Derivation.from_dict(d) for d in node.inputs["derivations"]]
        ess, _ = essentialize(a)
        res = oracle.saito_check(ess, thetas)
        if res.kind != "Basis":
            raise CertificateError("cited derivations are not a basis")
        if sorted(t.pdeg for t in thetas) != node.numbers.get("exponents"):
            raise CertificateError("basis degrees do not match cited exponents")
        return Verdict("Free", tuple(sorted(t.pdeg for t in thetas)))
    if node.rule == RULE_HILBERT:
        ess, _ = essentialize(a)
        res = oracle.hilbert_freeness_test(
            ess, degree_cap=node.inputs["degree_cap"], seed=0, trials=0
        )
        if res.kind != "NonFreeProven":
            raise CertificateError("Hilbert obstruction does not re-verify")
        return Verdict("NonFree", witness={"graded_dims": list(res.dims)})
    if node.rule == RULE_SHIFT:
        shifted = normalize_multiplicity_shift(a, node.inputs["h0"], node.inputs["k"])
        return _reverify_node(shifted, node.children[0])
    if node.rule == RULE_ADD_DEL:
        known = {k: tuple(v) for k, v in node.inputs["known"].items()}
        name, exps = addition_deletion_step(known)
        if name != node.numbers["inferred"] or list(exps) != node.numbers["exponents"]:
            raise CertificateError("addition-deletion inference does not re-verify")
        return Verdict("Free", exps)
    raise CertificateError(f"unknown certificate rule {node.rule}")


def verify_certificate(a: Multiarrangement, payload: dict) -> Verdict:
    """Re-verify a certificate JSON payload against an arrangement.

    Recomputes every number each node cites and returns the re-derived
    verdict; raises CertificateError when anything fails to match.
    """
    kind = payload.get("kind")
    cert = payload.get("certificate")
    if kind == "Inconclusive":
        return Verdict("Inconclusive", reason=payload.get("reason"))
    if cert is None:
        raise CertificateError("decisive verdict without certificate")
    v = _reverify_node(a, CertNode.from_dict(cert))
    if v.kind != kind:
        raise CertificateError(f"certificate yields {v.kind}, payload says {kind}")
    if kind == "Free" and payload.get("exponents") is not None:
        if list(v.exponents) != list(payload["exponents"]):
            raise CertificateError("exponents do not re-verify")
    return v
