"""Multi-index sets of bivariate derivative orders.

The solver organizes partial derivatives u^(m,n) by total order.  Three set
variants appear everywhere downstream:

* ``full``  : all (m, n) with m + n <= M,
* ``band1`` : the subset with m in {0, 1} (x-order at most one),
* ``band2`` : the complement of band1 inside full.

Every matrix/table in the package is laid out in the graded lexicographic
order produced here, so the ordering is part of the contract.
"""

from __future__ import annotations

from dataclasses import dataclass


def _graded_lex(pairs):
    return sorted(pairs, key=lambda mn: (mn[0] + mn[1], mn[0], mn[1]))


@dataclass(frozen=True)
class MultiIndexSet:
    """An ordered set of (m, n) derivative orders."""

    order: int
    variant: str
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mn):
        return mn in self.members

    def index(self, mn):
        return self.members.index(mn)


def lambda_set(order: int, variant: str = "full") -> MultiIndexSet:
    """Index set of total order <= ``order`` in graded-lex order.

    ``band1`` keeps m in {0, 1}; ``band2`` is its complement.  For
    ``order`` = M >= 1 the band1 set has exactly 2M + 1 members.
    """
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    if variant not in ("full", "band1", "band2"):
        raise ValueError(f"unknown variant {variant!r}")
    full = [(m, n) for m in range(order + 1) for n in range(order + 1 - m)]
    if variant == "band1":
        full = [mn for mn in full if mn[0] <= 1]
    elif variant == "band2":
        full = [mn for mn in full if mn[0] >= 2]
    return MultiIndexSet(order, variant, tuple(_graded_lex(full)))
