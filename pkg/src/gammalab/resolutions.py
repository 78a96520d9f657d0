"""Free resolutions of the integers over a group ring.

A resolution stores, per degree, a free rank and a differential given as a
matrix of group ring coefficient vectors.  Two views of a differential are
used: the underlying integer matrix (one block row/column per module
generator, one slot per group element) for validation, and the small twisted
matrix obtained by summing each coefficient vector against a sign character,
which is what homology with twisted integer coefficients needs.

Two providers are built in: the normalized inhomogeneous chain resolution,
which works for every group but grows like ``(order - 1)^k``, and the
periodic rank-one resolution for cyclic groups.  A cost estimate guards the
former; exceeding the budget raises with the offending sizes spelled out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceededError, IncompatibleInputError, UnsupportedInputError
from .groups import FiniteGroup, OrientationChar
from .intmat import IntMatrix

DEFAULT_BUDGET = 250_000

# A differential is a matrix of group ring elements, stored as nested lists:
# entry[i][j] is a coefficient tuple of length ``group.order``.
RingMatrix = List[List[Tuple[int, ...]]]


@dataclass
class Resolution:
    """A chain of free modules resolving the integers."""

    group: FiniteGroup
    ranks: List[int]
    differentials: List[RingMatrix]

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def differential(self, k: int) -> RingMatrix:
        """The map from degree ``k`` to ``k - 1`` (``1 <= k <= length``)."""
        if not (1 <= k <= self.length):
            raise IncompatibleInputError(
                f"no differential at degree {k} in a resolution of length "
                f"{self.length}")
        return self.differentials[k - 1]

    def underlying_matrix(self, k: int) -> IntMatrix:
        """Integer matrix of the degree-``k`` differential on underlying
        generators, indexed ``(i, g) -> i * order + g``."""
        ring = self.differential(k)
        order = self.group.order
        table = self.group.table
        rows_out = self.ranks[k - 1] * order
        cols_out = self.ranks[k] * order
        mat = IntMatrix.zeros(rows_out, cols_out)
        for i in range(self.ranks[k - 1]):
            for j in range(self.ranks[k]):
                coeffs = ring[i][j]
                for h in range(order):
                    col = j * order + h
                    for g, c in enumerate(coeffs):
                        if c:
                            mat.data[i * order + table[h][g]][col] += c
        return mat

    def twisted_matrix(self, k: int, w: OrientationChar) -> IntMatrix:
        """The degree-``k`` differential after tensoring down to twisted
        integers: each ring entry collapses to its signed coefficient sum."""
        ring = self.differential(k)
        rows = []
        for i in range(self.ranks[k - 1]):
            row = []
            for j in range(self.ranks[k]):
                row.append(sum(c * w(g) for g, c in enumerate(ring[i][j])))
            rows.append(row)
        return IntMatrix.from_rows(rows, cols=self.ranks[k])

    def validate(self, check_exactness: bool = True) -> None:
        """Check the chain condition, and optionally exactness over the
        integers (the defining property of resolving the integers)."""
        from .homology import quotient_of_kernel_by_image

        underlying = [self.underlying_matrix(k) for k in range(1, self.length + 1)]
        for k in range(2, self.length + 1):
            prod = underlying[k - 2].mul(underlying[k - 1])
            if not prod.is_zero():
                raise IncompatibleInputError(
                    f"differentials at degrees {k} and {k - 1} do not compose "
                    f"to zero")
        if not check_exactness:
            return
        if self.length >= 1:
            cokernel_rank, cokernel_torsion = _cokernel_invariants(underlying[0])
            if cokernel_rank != 1 or cokernel_torsion:
                raise IncompatibleInputError(
                    "degree-zero cokernel of the underlying complex is not "
                    "infinite cyclic; this chain does not resolve the integers")
        for k in range(1, self.length):
            h = quotient_of_kernel_by_image(underlying[k - 1], underlying[k])
            if not h.is_trivial():
                raise IncompatibleInputError(
                    f"underlying complex is not exact at degree {k}")


def _cokernel_invariants(mat: IntMatrix):
    from .abelian import AbelianPresentation

    rows = [mat.column(j) for j in range(mat.cols)]
    return AbelianPresentation.from_relation_rows(mat.rows, rows).invariant_factors()


def chain_resolution_ranks(order: int, length: int) -> List[int]:
    return [(order - 1) ** k for k in range(length + 1)]


def resolution_cost(order: int, ranks: Sequence[int]) -> int:
    """Work estimate: entries times ring size, summed over differentials."""
    return sum(ranks[k - 1] * ranks[k] * order for k in range(1, len(ranks)))


def check_budget(order: int, ranks: Sequence[int], budget: Optional[int]) -> None:
    if budget is None:
        return
    cost = resolution_cost(order, ranks)
    if cost > budget:
        sizes = " + ".join(f"{ranks[k - 1]}x{ranks[k]}"
                           for k in range(1, len(ranks)))
        raise BudgetExceededError(
            f"resolution cost {cost} exceeds budget {budget} "
            f"(group order {order}, differential sizes {sizes}); raise the "
            f"budget or use a smaller resolution")


def chain_resolution(group: FiniteGroup, length: int,
                     budget: Optional[int] = DEFAULT_BUDGET) -> Resolution:
    """The normalized inhomogeneous chain resolution.

    Degree ``k`` is free on ``k``-tuples of nonidentity elements; the
    differential drops the first entry (with its translation recorded as a
    ring coefficient), merges adjacent entries with alternating signs, and
    drops the last entry.  Merged tuples containing the identity die.
    """
    order = group.order
    ranks = chain_resolution_ranks(order, length)
    check_budget(order, ranks, budget)
    nonidentity = list(range(1, order))
    tuples_by_degree: List[List[Tuple[int, ...]]] = [
        list(itertools.product(nonidentity, repeat=k)) for k in range(length + 1)
    ]
    index_by_degree = [
        {t: i for i, t in enumerate(tuples)} for tuples in tuples_by_degree
    ]
    differentials = []
    for k in range(1, length + 1):
        rows = ranks[k - 1]
        entries: List[List[Dict[int, int]]] = [
            [dict() for _ in range(ranks[k])] for _ in range(rows)
        ]
        row_index = index_by_degree[k - 1]
        for col, tup in enumerate(tuples_by_degree[k]):
            head, tail = tup[0], tup[1:]
            _add_coeff(entries[row_index[tail]][col], head, 1)
            sign = -1
            for i in range(k - 1):
                merged = group.table[tup[i]][tup[i + 1]]
                if merged != 0:
                    row = tup[:i] + (merged,) + tup[i + 2:]
                    _add_coeff(entries[row_index[row]][col], 0, sign)
                sign = -sign
            _add_coeff(entries[row_index[tup[:-1]]][col], 0, sign)
        ring: RingMatrix = []
        for i in range(rows):
            ring_row = []
            for j in range(ranks[k]):
                coeffs = [0] * order
                for g, c in entries[i][j].items():
                    coeffs[g] = c
                ring_row.append(tuple(coeffs))
            ring.append(ring_row)
        differentials.append(ring)
    return Resolution(group, ranks, differentials)


def _add_coeff(entry: Dict[int, int], g: int, c: int) -> None:
    entry[g] = entry.get(g, 0) + c
    if entry[g] == 0:
        del entry[g]


def periodic_generator(group: FiniteGroup) -> int:
    """The smallest element of full order in a cyclic group."""
    for g in range(group.order):
        if group.element_order(g) == group.order:
            return g
    raise UnsupportedInputError(
        "periodic resolution requires a cyclic group, and no element "
        "generates this one")


def periodic_resolution(group: FiniteGroup, length: int) -> Resolution:
    """The rank-one two-periodic resolution for a cyclic group: generator
    minus identity in odd degrees, the full element sum in even degrees."""
    t = periodic_generator(group)
    order = group.order
    minus_one = [0] * order
    minus_one[0] = -1
    gen_minus_one = list(minus_one)
    gen_minus_one[t] += 1
    norm = [1] * order
    differentials: List[RingMatrix] = []
    for k in range(1, length + 1):
        entry = tuple(gen_minus_one) if k % 2 == 1 else tuple(norm)
        differentials.append([[entry]])
    return Resolution(group, [1] * (length + 1), differentials)
