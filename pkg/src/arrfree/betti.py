"""Second Betti numbers of simple and multiarrangements.

b2 of a multiarrangement sums the products of local exponents over the
codimension-2 flats; the local exponents always come from the rank-2
solver, never from a formula table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arrangement import Hyperplane, Multiarrangement, codim2_flats
from .rank2 import project_to_rank2, rank2_exponents


@dataclass(frozen=True)
class BettiReport:
    total: int
    per_flat: tuple[tuple[tuple[int, ...], int], ...]  # (sorted members, contribution)
    exponents: tuple[tuple[int, int], ...]  # local exponent pair per flat, same order

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "flats": [
                {"members": list(m), "contribution": c, "exponents": list(e)}
                for (m, c), e in zip(self.per_flat, self.exponents)
            ],
        }


def b2_simple(a: Multiarrangement) -> BettiReport:
    """Sum of |A_X| - 1 over codim-2 flats; demands a simple arrangement."""
    if not a.is_simple():
        raise ValueError("b2_simple needs all multiplicities equal to 1")
    rows = []
    exps = []
    for f in codim2_flats(a):
        n = len(f.members)
        rows.append((f.sorted_members(), n - 1))
        exps.append((1, n - 1))
    return BettiReport(sum(c for _, c in rows), tuple(rows), tuple(exps))


@lru_cache(maxsize=2048)
def b2_multi(a: Multiarrangement) -> BettiReport:
    """Sum of d1*d2 over codim-2 flats, exponents from the rank-2 solver."""
    rows = []
    exps = []
    for f in codim2_flats(a):
        d1, d2 = rank2_exponents(project_to_rank2(a, f))
        rows.append((f.sorted_members(), d1 * d2))
        exps.append((d1, d2))
    return BettiReport(sum(c for _, c in rows), tuple(rows), tuple(exps))


def b2_away(a: Multiarrangement, h: Hyperplane | int) -> int:
    """b2(A,m) - m(H)(|m| - m(H)), the part of b2 away from H."""
    i = a.index_of(h)
    m0 = a.mult[i]
    return b2_multi(a).total - m0 * (a.total_mult - m0)


def b2_away_local_sum(a: Multiarrangement, h0: Hyperplane | int) -> int:
    """Sum of local b2 over the codim-2 flats not contained in h0."""
    i0 = a.index_of(h0)
    total = 0
    for f in codim2_flats(a):
        if i0 in f.members:
            continue
        d1, d2 = rank2_exponents(project_to_rank2(a, f))
        total += d1 * d2
    return total
