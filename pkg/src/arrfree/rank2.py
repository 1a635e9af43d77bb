"""Exponents of rank-2 multiarrangements and the Euler multiplicity.

Rank-2 multiarrangements are always free; the smaller exponent is the
minimal degree of a nonzero member of the derivation module, found by
exact linear solves degree by degree.  No formula table: the heavy and
balanced special cases fall out of the solver and are asserted in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arrangement import Flat, Multiarrangement
from .dspace import derivation_basis
from .exactalg import Polynomial, Vec, vec


@dataclass(frozen=True)
class Rank2Instance:
    """Distinct linear forms in two variables with positive multiplicities."""

    forms: tuple[Vec, ...]
    mult: tuple[int, ...]
    source: tuple[int, ...] = ()  # originating hyperplane indices, when known

    def __post_init__(self):
        if len(self.forms) < 2:
            raise ValueError("rank-2 instance needs at least two forms")
        if len(self.mult) != len(self.forms):
            raise ValueError("one multiplicity per form required")
        seen = set()
        for f in self.forms:
            if len(f) != 2 or all(x == 0 for x in f):
                raise ValueError(f"bad form {f}")
            lead = next(x for x in f if x != 0)
            canon = tuple(x / lead for x in f)
            if canon in seen:
                raise ValueError("proportional forms")
            seen.add(canon)

    @property
    def total_mult(self) -> int:
        return sum(self.mult)


def project_to_rank2(a: Multiarrangement, x: Flat) -> Rank2Instance:
    """Quotient the members of a codim-2 flat down to two variables.

    The flat's RREF basis rows (w1, w2) span the normals of all members, so
    each member normal n is n[p1]*w1 + n[p2]*w2 with p1 < p2 the pivot
    columns; (n[p1], n[p2]) is its projected form.
    """
    if x.codim != 2:
        raise ValueError("flat must have codimension 2")
    rows = x.basis
    pivots = [next(i for i, c in enumerate(r) if c != 0) for r in rows]
    forms = []
    idx = x.sorted_members()
    for k in idx:
        n = a.hyperplanes[k].normal
        forms.append(vec((n[pivots[0]], n[pivots[1]])))
    return Rank2Instance(tuple(forms), tuple(a.mult[k] for k in idx), idx)


def instance_from_rank2_arrangement(a: Multiarrangement) -> Rank2Instance:
    """Treat a whole rank-2 multiarrangement as a two-variable instance."""
    mat = a.normal_matrix()
    rows = mat.row_space()
    if len(rows) != 2:
        raise ValueError("arrangement does not have rank 2")
    pivots = [next(i for i, c in enumerate(r) if c != 0) for r in rows]
    forms = tuple(vec((h.normal[pivots[0]], h.normal[pivots[1]])) for h in a.hyperplanes)
    return Rank2Instance(forms, a.mult, tuple(range(a.size)))


@lru_cache(maxsize=4096)
def _min_degree_basis(forms: tuple[Vec, ...], mult: tuple[int, ...]):
    """Smallest degree with a nonzero solution, plus that degree's basis."""
    total = sum(mult)
    for d in range(total // 2 + 1):
        basis = derivation_basis(forms, mult, d)
        if basis:
            return d, tuple(basis)
    raise AssertionError("rank-2 module has an element of degree <= |m|/2")


def rank2_exponents(inst: Rank2Instance) -> tuple[int, int]:
    """Nondecreasing exponent pair (d1, d2) with d1 + d2 = |m|."""
    d1, _ = _min_degree_basis(inst.forms, inst.mult)
    return d1, inst.total_mult - d1


def euler_multiplicity_at_flat(inst: Rank2Instance, h0: int) -> int:
    """Euler multiplicity m*: degree of a local basis derivation that is not
    divisible by the distinguished form.

    m* = d1 when some degree-d1 solution lies outside alpha0*Der, else d2.
    """
    if not 0 <= h0 < len(inst.forms):
        raise ValueError("distinguished form index out of range")
    d1, basis = _min_degree_basis(inst.forms, inst.mult)
    alpha0 = Polynomial.linear_form(inst.forms[h0])
    for coeffs in basis:
        if any(not c.is_zero() and not c.divisible_by(alpha0) for c in coeffs):
            return d1
    return inst.total_mult - d1
