"""The quadratic functor on finitely generated abelian groups.

On a free group ``Z^n`` the functor yields a free group of rank
``n(n+1)/2`` with basis ``v_1..v_n`` followed by ``w_ij`` for ``i < j``;
``v_i`` plays the role of the square of the i-th generator and ``w_ij`` the
polarized product of the i-th and j-th.  A presented group is handled by
presenting the functor value: squares and polarizations of relation vectors
against everything generate exactly the needed relations.

The whole construction is functorial, and a symmetric integer matrix
corresponds to a unique element here (squares on the diagonal, ``w_ij``
off it), which is how intersection forms enter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .abelian import AbelianHom, AbelianPresentation
from .errors import IncompatibleInputError, UnsupportedInputError
from .intmat import IntMatrix


def gamma_rank(n: int) -> int:
    """Rank of the functor value on ``Z^n``."""
    return n * (n + 1) // 2


def pair_index(n: int, i: int, j: int) -> int:
    """Position of ``w_ij`` (``i < j``) in the basis of the value on ``Z^n``."""
    if not (0 <= i < j < n):
        raise IncompatibleInputError(f"pair ({i}, {j}) is not ordered within 0..{n - 1}")
    return n + i * n - i * (i + 1) // 2 + (j - i - 1)


def basis_labels(n: int) -> List[str]:
    labels = [f"v{i + 1}" for i in range(n)]
    labels += [f"w{i + 1}{j + 1}" for i in range(n) for j in range(i + 1, n)]
    return labels


def expand_square(vec: Sequence[int]) -> List[int]:
    """Image of the square of ``sum a_i e_i``: quadratic in the coefficients."""
    n = len(vec)
    out = [0] * gamma_rank(n)
    for i, a in enumerate(vec):
        out[i] = a * a
    pos = n
    for i in range(n):
        for j in range(i + 1, n):
            out[pos] = vec[i] * vec[j]
            pos += 1
    return out


def polarization(x: Sequence[int], y: Sequence[int]) -> List[int]:
    """The symmetric cross term: square of a sum minus both squares.

    Bilinear in ``x`` and ``y``, with ``polarization(x, x)`` twice the square.
    """
    if len(x) != len(y):
        raise IncompatibleInputError(
            f"polarization of vectors of different lengths {len(x)} and {len(y)}")
    n = len(x)
    out = [0] * gamma_rank(n)
    for k in range(n):
        out[k] = 2 * x[k] * y[k]
    pos = n
    for k in range(n):
        for l in range(k + 1, n):
            out[pos] = x[k] * y[l] + x[l] * y[k]
            pos += 1
    return out


def induced_matrix(f: IntMatrix) -> IntMatrix:
    """Matrix of the induced map on functor values, for ``f: Z^n -> Z^m``.

    Columns follow the basis order: squares map to squares of image columns,
    ``w_ij`` to the polarization of the i-th and j-th image columns.
    """
    m, n = f.shape
    cols = []
    image = [f.column(i) for i in range(n)]
    for i in range(n):
        cols.append(expand_square(image[i]))
    for i in range(n):
        for j in range(i + 1, n):
            cols.append(polarization(image[i], image[j]))
    return IntMatrix.from_columns(cols, rows=gamma_rank(m))


@dataclass(frozen=True)
class QuadraticValue:
    """The functor value on a presented abelian group.

    ``source_generators`` is the generator count of the input presentation;
    ``presentation`` presents the value on ``gamma_rank(source_generators)``
    generators.
    """

    source_generators: int
    presentation: AbelianPresentation

    def invariant_factors(self) -> Tuple[int, Tuple[int, ...]]:
        return self.presentation.invariant_factors()

    def describe(self) -> str:
        return self.presentation.describe()


def quadratic_value(a: AbelianPresentation) -> QuadraticValue:
    """Present the functor value on a presented abelian group.

    Relations: the square of each input relation vector, and its polarization
    against each generator.  These generate the full relation subgroup.
    """
    n = a.ngens
    rows: List[List[int]] = []
    units = IntMatrix.identity(n)
    for r in range(a.relations.rows):
        rel = a.relations.row(r)
        rows.append(expand_square(rel))
        for j in range(n):
            rows.append(polarization(rel, units.column(j)))
    presentation = AbelianPresentation.from_relation_rows(gamma_rank(n), rows)
    return QuadraticValue(n, presentation)


def induced_hom(f: AbelianHom) -> AbelianHom:
    """The induced map between functor values of presented groups."""
    src = quadratic_value(f.source).presentation
    dst = quadratic_value(f.target).presentation
    return AbelianHom(src, dst, induced_matrix(f.matrix))


def value_of_symmetric_matrix(s: IntMatrix) -> List[int]:
    """The element corresponding to a symmetric matrix: diagonal entries on
    squares, entry ``(i, j)`` on ``w_ij``."""
    n, m = s.shape
    if n != m:
        raise IncompatibleInputError(f"matrix is {n} x {m}, not square")
    for i in range(n):
        for j in range(i + 1, n):
            if s.data[i][j] != s.data[j][i]:
                raise IncompatibleInputError(
                    f"matrix is not symmetric at ({i}, {j}): "
                    f"{s.data[i][j]} vs {s.data[j][i]}")
    out = [s.data[i][i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            out.append(s.data[i][j])
    return out


def symmetric_matrix_of_value(coeffs: Sequence[int], n: int) -> IntMatrix:
    """Inverse of :func:`value_of_symmetric_matrix`; a bijection on coordinates."""
    if len(coeffs) != gamma_rank(n):
        raise IncompatibleInputError(
            f"coefficient vector of length {len(coeffs)} does not match rank "
            f"{gamma_rank(n)}")
    s = [[0] * n for _ in range(n)]
    for i in range(n):
        s[i][i] = coeffs[i]
    pos = n
    for i in range(n):
        for j in range(i + 1, n):
            s[i][j] = coeffs[pos]
            s[j][i] = coeffs[pos]
            pos += 1
    return IntMatrix.from_rows(s, cols=n)


def split_indices(n_first: int, n_second: int) -> Tuple[List[int], List[int], List[int]]:
    """Basis positions of the three summands for a direct sum ``Z^a + Z^b``:
    value on the first block, mixed polarizations, value on the second block.
    """
    n = n_first + n_second
    first, mixed, second = [], [], []
    for i in range(n):
        (first if i < n_first else second).append(i)
    pos = n
    for i in range(n):
        for j in range(i + 1, n):
            if j < n_first:
                first.append(pos)
            elif i >= n_first:
                second.append(pos)
            else:
                mixed.append(pos)
            pos += 1
    return first, mixed, second


def quadratic_module(module):
    """Apply the functor to a module over a group ring: same group, induced
    action matrices, free underlying group.

    Requires the underlying abelian group to be free (no relation rows),
    which covers every module this library constructs.
    """
    from .modules import ZPiModule

    if module.underlying.has_explicit_relations():
        raise UnsupportedInputError(
            "functor value with a group action is only computed over a free "
            "underlying group; this module carries nontrivial relations")
    action = [induced_matrix(module.action_matrix(g))
              for g in range(module.group.order)]
    n = module.underlying.ngens
    return ZPiModule(module.group,
                     AbelianPresentation.free(gamma_rank(n)),
                     action)
