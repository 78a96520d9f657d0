"""Finitely generated abelian groups as generator/relation presentations.

A presentation holds ``ngens`` generators and a relation matrix whose *rows*
are relations.  Elements are integer column vectors of generator
coefficients; homomorphisms act on such column vectors.  Two presentations
compare equal iff they present isomorphic groups (same invariant factors).

The canonical-coordinate machinery diagonalizes the relation matrix once
(``U R V = D``) and then answers membership, equality, primitivity and
torsion questions by a single change of basis ``y = V^T x``:

* coordinate ``i`` with diagonal ``d_i >= 2`` is a ``Z/d_i`` coordinate,
* coordinate ``i`` with ``d_i = 0`` (or beyond the diagonal) is a free
  ``Z`` coordinate,
* coordinates with ``d_i = 1`` are dead.
"""

from __future__ import annotations

import itertools
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import IncompatibleInputError
from .intmat import IntMatrix, bezout_combination, smith_normal_form


def format_invariants(rank: int, factors: Sequence[int]) -> str:
    """Human-readable name of ``Z^rank + Z/d_1 + ...``; ``"0"`` for the trivial group."""
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")
    parts.extend(f"Z/{d}" for d in factors)
    return " + ".join(parts) if parts else "0"


class AbelianPresentation:
    """An abelian group presented by generators and relation rows."""

    def __init__(self, ngens: int, relations: IntMatrix):
        if relations.cols != ngens:
            raise ValueError(
                f"relation matrix has {relations.cols} columns for {ngens} generators")
        self.ngens = ngens
        self.relations = relations
        self._invariants: Optional[Tuple[int, Tuple[int, ...]]] = None
        self._canonical = None

    # -- constructors -------------------------------------------------

    @classmethod
    def free(cls, n: int) -> "AbelianPresentation":
        return cls(n, IntMatrix(0, n))

    @classmethod
    def from_relation_rows(cls, ngens: int, rows: Sequence[Sequence[int]]) -> "AbelianPresentation":
        return cls(ngens, IntMatrix.from_rows(rows, cols=ngens))

    @classmethod
    def cyclic(cls, order: int) -> "AbelianPresentation":
        return cls(1, IntMatrix(1, 1, [[order]]))

    @classmethod
    def from_factors(cls, rank: int, factors: Sequence[int]) -> "AbelianPresentation":
        n = rank + len(factors)
        rows = []
        for i, d in enumerate(factors):
            row = [0] * n
            row[rank + i] = d
            rows.append(row)
        return cls(n, IntMatrix.from_rows(rows, cols=n))

    # -- invariants ---------------------------------------------------

    def invariant_factors(self) -> Tuple[int, Tuple[int, ...]]:
        """Return ``(free_rank, torsion_factors)`` with each factor >= 2 and
        dividing the next."""
        if self._invariants is None:
            snf = smith_normal_form(self.relations, track_u=False, track_v=False)
            nonzero = [d for d in snf.diagonal if d != 0]
            rank = self.ngens - len(nonzero)
            torsion = tuple(d for d in nonzero if d >= 2)
            self._invariants = (rank, torsion)
        return self._invariants

    @property
    def rank(self) -> int:
        return self.invariant_factors()[0]

    @property
    def torsion(self) -> Tuple[int, ...]:
        return self.invariant_factors()[1]

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_torsion_free(self) -> bool:
        return not self.torsion

    def torsion_order(self) -> int:
        order = 1
        for d in self.torsion:
            order *= d
        return order

    def has_explicit_relations(self) -> bool:
        return not self.relations.is_zero() if self.relations.rows else False

    def describe(self) -> str:
        rank, torsion = self.invariant_factors()
        return format_invariants(rank, torsion)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbelianPresentation):
            return NotImplemented
        return self.invariant_factors() == other.invariant_factors()

    def __hash__(self):
        return hash(self.invariant_factors())

    def __repr__(self) -> str:
        return (f"AbelianPresentation({self.ngens} gens, "
                f"{self.relations.rows} relations: {self.describe()})")

    # -- canonical coordinates ---------------------------------------

    def _canon(self):
        if self._canonical is None:
            snf = smith_normal_form(self.relations, track_u=False, track_v=True)
            diag = snf.diagonal
            free_idx, torsion_idx, torsion_mod = [], [], []
            for i in range(self.ngens):
                d = diag[i] if i < len(diag) else 0
                if d == 0:
                    free_idx.append(i)
                elif d >= 2:
                    torsion_idx.append(i)
                    torsion_mod.append(d)
            self._canonical = (snf.v, snf.vinv, free_idx, torsion_idx, torsion_mod)
        return self._canonical

    def to_canonical(self, x: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Express an element in canonical coordinates ``(free, torsion)``."""
        v, _, free_idx, torsion_idx, torsion_mod = self._canon()
        if len(x) != self.ngens:
            raise ValueError(f"element length {len(x)} does not match {self.ngens} generators")
        y = v.vec_mat(list(x))  # y = V^T x
        free = tuple(y[i] for i in free_idx)
        torsion = tuple(y[i] % d for i, d in zip(torsion_idx, torsion_mod))
        return free, torsion

    def from_canonical(self, free: Sequence[int], torsion: Sequence[int]) -> List[int]:
        _, vinv, free_idx, torsion_idx, _ = self._canon()
        y = [0] * self.ngens
        for i, value in zip(free_idx, free):
            y[i] = value
        for i, value in zip(torsion_idx, torsion):
            y[i] = value
        # x = (V^T)^-1 y = (V^-1)^T y
        return vinv.vec_mat(y)

    def element_is_zero(self, x: Sequence[int]) -> bool:
        free, torsion = self.to_canonical(x)
        return all(v == 0 for v in free) and all(v == 0 for v in torsion)

    def elements_equal(self, x: Sequence[int], y: Sequence[int]) -> bool:
        return self.element_is_zero([a - b for a, b in zip(x, y)])

    def contains_in_relation_lattice(self, x: Sequence[int]) -> bool:
        """Whether ``x`` lies in the subgroup spanned by the relation rows."""
        v, _, free_idx, torsion_idx, torsion_mod = self._canon()
        y = v.vec_mat(list(x))
        if any(y[i] != 0 for i in free_idx):
            return False
        return all(y[i] % d == 0 for i, d in zip(torsion_idx, torsion_mod))

    # -- torsion ------------------------------------------------------

    def torsion_part(self) -> Tuple["AbelianPresentation", "AbelianHom"]:
        """The torsion subgroup with its inclusion.

        Returns a diagonal presentation ``(Z/d_1 + ... + Z/d_k)`` and a hom
        into ``self`` sending the ``j``-th torsion generator to the element
        of ``self`` whose canonical coordinates are ``e_j``.
        """
        _, vinv, _, torsion_idx, torsion_mod = self._canon()
        sub = AbelianPresentation.from_factors(0, torsion_mod)
        columns = []
        for i in torsion_idx:
            unit = [0] * self.ngens
            unit[i] = 1
            columns.append(vinv.vec_mat(unit))
        matrix = IntMatrix.from_columns(columns, rows=self.ngens)
        return sub, AbelianHom(sub, self, matrix)

    def enumerate_torsion(self) -> Iterator[Tuple[int, ...]]:
        """All canonical torsion coordinate tuples (free part held at zero)."""
        _, _, _, _, torsion_mod = self._canon()
        return itertools.product(*[range(d) for d in torsion_mod])

    # -- primitivity and functionals ---------------------------------

    def is_primitive_mod_torsion(self, x: Sequence[int]) -> bool:
        """True iff some homomorphism to Z sends ``x`` to 1 — equivalently the
        free canonical coordinates of ``x`` have gcd 1."""
        free, _ = self.to_canonical(x)
        g = 0
        for value in free:
            if value:
                g = _gcd(g, value)
        return g == 1

    def functional_hitting_one(self, x: Sequence[int]) -> Optional[List[int]]:
        """Coefficient row of a hom to Z with value 1 on ``x``, or ``None``.

        The row ``f`` satisfies ``sum(f[i] * e[i]) = 1`` for ``e = x`` and
        kills every relation, so it defines an honest functional on the
        presented group.
        """
        v, _, free_idx, _, _ = self._canon()
        free, _ = self.to_canonical(x)
        g, coeffs = bezout_combination(list(free))
        if g != 1:
            return None
        row = [0] * self.ngens
        for c, i in zip(coeffs, free_idx):
            if c == 0:
                continue
            # row += c * (i-th row of V^T) = c * (i-th column of V)
            for k in range(self.ngens):
                row[k] += c * v.data[k][i]
        return row

    # -- combination --------------------------------------------------

    def direct_sum(self, other: "AbelianPresentation") -> "AbelianPresentation":
        left = self.relations
        right = other.relations
        top = left.hstack(IntMatrix(left.rows, other.ngens))
        bottom = IntMatrix(right.rows, self.ngens).hstack(right)
        return AbelianPresentation(self.ngens + other.ngens, top.vstack(bottom))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class AbelianHom:
    """A homomorphism between presented abelian groups.

    ``matrix`` has shape ``target.ngens x source.ngens`` and acts on column
    vectors of generator coefficients.  Construction checks well-definedness:
    every relation of the source must land in the relation lattice of the
    target.
    """

    def __init__(self, source: AbelianPresentation, target: AbelianPresentation,
                 matrix: IntMatrix, check: bool = True):
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError(
                f"hom matrix is {matrix.shape}, expected "
                f"({target.ngens}, {source.ngens})")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            for i in range(source.relations.rows):
                relation = source.relations.row(i)
                image = matrix.mat_vec(relation)
                if not target.contains_in_relation_lattice(image):
                    raise IncompatibleInputError(
                        f"hom is not well defined: image of relation {i} "
                        f"is nonzero in the target")

    @classmethod
    def identity(cls, a: AbelianPresentation) -> "AbelianHom":
        return cls(a, a, IntMatrix.identity(a.ngens), check=False)

    def apply(self, x: Sequence[int]) -> List[int]:
        return self.matrix.mat_vec(list(x))

    def compose(self, other: "AbelianHom") -> "AbelianHom":
        """Return ``self ∘ other`` (apply ``other`` first)."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("homs are not composable")
        return AbelianHom(other.source, self.target,
                          self.matrix.mul(other.matrix), check=False)

    def equals(self, other: "AbelianHom") -> bool:
        """Equality as maps (columns may differ by target relations)."""
        if self.matrix.shape != other.matrix.shape:
            return False
        diff = self.matrix.sub(other.matrix)
        return all(self.target.element_is_zero(diff.column(j))
                   for j in range(diff.cols))

    def is_zero_map(self) -> bool:
        return all(self.target.element_is_zero(self.matrix.column(j))
                   for j in range(self.matrix.cols))

    def cokernel(self) -> AbelianPresentation:
        """The target modulo the image of this map."""
        rows = [self.target.relations.row(i)
                for i in range(self.target.relations.rows)]
        rows.extend(self.matrix.column(j) for j in range(self.matrix.cols))
        return AbelianPresentation.from_relation_rows(self.target.ngens, rows)

    def kernel(self) -> Tuple[AbelianPresentation, IntMatrix]:
        """The kernel as an abstract group plus a matrix of coset
        representatives (columns, in source generator coordinates)."""
        from .intmat import lattice_basis, preimage_lattice, SNFSolver
        target_lattice = self.target.relations.transpose()
        preimage = preimage_lattice(self.matrix, target_lattice)
        if preimage.cols == 0:
            return AbelianPresentation.free(0), preimage
        solver = SNFSolver(preimage)
        rows = []
        source_lattice = self.source.relations
        for i in range(source_lattice.rows):
            coords = solver.solve(source_lattice.row(i))
            if coords is None:
                raise AssertionError("source relation escaped the preimage lattice")
            rows.append(coords)
        presentation = AbelianPresentation.from_relation_rows(preimage.cols, rows)
        return presentation, preimage


def tensor_product(a: AbelianPresentation, b: AbelianPresentation) -> AbelianPresentation:
    """Presentation of ``A (x) B`` over Z.

    Generators are ``g_i (x) h_j`` ordered with the first factor outermost;
    the relations are the relations of each factor tensored with the
    generators of the other.
    """
    n, m = a.ngens, b.ngens
    rows = []
    for i in range(a.relations.rows):
        relation = a.relations.row(i)
        for j in range(m):
            row = [0] * (n * m)
            for k in range(n):
                row[k * m + j] = relation[k]
            rows.append(row)
    for i in range(b.relations.rows):
        relation = b.relations.row(i)
        for k in range(n):
            row = [0] * (n * m)
            for j in range(m):
                row[k * m + j] = relation[j]
            rows.append(row)
    return AbelianPresentation.from_relation_rows(n * m, rows)
