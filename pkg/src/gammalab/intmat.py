"""Exact integer matrices, Smith normal form, and lattice utilities.

Everything here runs on Python's arbitrary-precision integers; no result is
ever rounded or reduced modulo anything.  This module is the computational
substrate for the rest of the package: presentations of abelian groups,
kernels, preimage lattices and homology all reduce to the functions below.

Conventions
-----------
* ``IntMatrix`` is dense, with explicit row and column counts so that the
  degenerate shapes ``0 x n`` and ``n x 0`` (empty relation sets, rank-zero
  modules) stay unambiguous.
* ``smith_normal_form`` returns ``U, D, V`` with ``U * M * V = D``, both
  transforms unimodular, and the diagonal of ``D`` nonnegative with each
  entry dividing the next.  The inverses of the transforms are accumulated
  alongside them, which is cheaper and more reliable than inverting after
  the fact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence


def xgcd(a: int, b: int) -> tuple:
    """Extended gcd: return ``(g, x, y)`` with ``g = x*a + y*b`` and ``g >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def gcd_list(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g, _, _ = xgcd(g, v)
        if g == 1:
            return 1
    return g


def bezout_combination(values: Sequence[int]) -> tuple:
    """Return ``(g, coeffs)`` with ``g = sum(c * v) >= 0`` over the values."""
    g = 0
    coeffs: List[int] = []
    for v in values:
        g2, x, y = xgcd(g, v)
        coeffs = [c * x for c in coeffs]
        coeffs.append(y)
        g = g2
    return g, coeffs


class IntMatrix:
    """A dense matrix of Python integers with explicit shape."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[Sequence[Sequence[int]]] = None):
        if rows < 0 or cols < 0:
            raise ValueError(f"matrix shape ({rows}, {cols}) is negative")
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            if len(data) != rows:
                raise ValueError(f"expected {rows} rows, got {len(data)}")
            copied = []
            for i, row in enumerate(data):
                row = list(row)
                if len(row) != cols:
                    raise ValueError(f"row {i} has length {len(row)}, expected {cols}")
                copied.append(row)
            self.data = copied

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        """Build from a list of rows; ``cols`` is required when the list is empty."""
        if not rows:
            if cols is None:
                raise ValueError("column count required for an empty row list")
            return cls(0, cols)
        width = len(rows[0])
        if cols is not None and cols != width:
            raise ValueError(f"rows have length {width}, expected {cols}")
        return cls(len(rows), width, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        if not columns:
            if rows is None:
                raise ValueError("row count required for an empty column list")
            return cls(rows, 0)
        height = len(columns[0])
        m = cls(height, len(columns))
        for j, col in enumerate(columns):
            if len(col) != height:
                raise ValueError(f"column {j} has length {len(col)}, expected {height}")
            for i, value in enumerate(col):
                m.data[i][j] = value
        return m

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMatrix":
        n = len(entries)
        m = cls(rows if rows is not None else n, cols if cols is not None else n)
        for i, value in enumerate(entries):
            m.data[i][i] = value
        return m

    # -- basic access -------------------------------------------------

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def row(self, i: int) -> List[int]:
        return list(self.data[i])

    def column(self, j: int) -> List[int]:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> Iterator[List[int]]:
        for j in range(self.cols):
            yield self.column(j)

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, self.data)

    def transpose(self) -> "IntMatrix":
        t = IntMatrix(self.cols, self.rows)
        for i in range(self.rows):
            row = self.data[i]
            for j in range(self.cols):
                t.data[j][i] = row[j]
        return t

    def is_zero(self) -> bool:
        return all(all(v == 0 for v in row) for row in self.data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"IntMatrix({self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(v) for v in row) for row in self.data)
        return f"IntMatrix({self.rows}x{self.cols}: {body})"

    # -- arithmetic ---------------------------------------------------

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = IntMatrix(self.rows, other.cols)
        bdata = other.data
        for i in range(self.rows):
            arow = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = arow[k]
                if a == 0:
                    continue
                brow = bdata[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b:
                        orow[j] += a * b
        return out

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return self.mul(other)

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.data, other.data)])

    def sub(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot subtract {other.shape} from {self.shape}")
        return IntMatrix(self.rows, self.cols,
                         [[a - b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.data, other.data)])

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[c * v for v in row] for row in self.data])

    def mat_vec(self, x: Sequence[int]) -> List[int]:
        if len(x) != self.cols:
            raise ValueError(f"vector length {len(x)} does not match {self.cols} columns")
        return [sum(a * b for a, b in zip(row, x)) for row in self.data]

    def vec_mat(self, x: Sequence[int]) -> List[int]:
        if len(x) != self.rows:
            raise ValueError(f"vector length {len(x)} does not match {self.rows} rows")
        out = [0] * self.cols
        for i, coeff in enumerate(x):
            if coeff == 0:
                continue
            row = self.data[i]
            for j in range(self.cols):
                out[j] += coeff * row[j]
        return out

    def trace(self) -> int:
        if self.rows != self.cols:
            raise ValueError(f"trace of a non-square {self.shape} matrix")
        return sum(self.data[i][i] for i in range(self.rows))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError(f"cannot hstack {self.shape} and {other.shape}")
        return IntMatrix(self.rows, self.cols + other.cols,
                         [r1 + r2 for r1, r2 in zip(self.data, other.data)])

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError(f"cannot vstack {self.shape} and {other.shape}")
        return IntMatrix(self.rows + other.rows, self.cols, self.data + other.data)


def det(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination; exact for any size."""
    if m.rows != m.cols:
        raise ValueError(f"determinant of a non-square {m.shape} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [row[:] for row in m.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


@dataclass
class SNFResult:
    """Smith normal form ``U * M * V = D`` together with the transform inverses.

    ``u``/``uinv`` (resp. ``v``/``vinv``) are ``None`` when tracking was turned
    off for speed.  ``diagonal`` lists the diagonal of ``D`` out to
    ``min(rows, cols)``, sign-normalized and in divisibility order.
    """

    d: IntMatrix
    u: Optional[IntMatrix]
    v: Optional[IntMatrix]
    uinv: Optional[IntMatrix]
    vinv: Optional[IntMatrix]
    diagonal: List[int]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


class _Worker:
    """Mutable elimination state: the matrix plus optionally tracked transforms.

    Row operations multiply ``U`` on the left by the elementary matrix ``E``
    and ``U^-1`` on the right by ``E^-1``; column operations do the mirror
    image on ``V`` / ``V^-1``.
    """

    def __init__(self, m: IntMatrix, track_u: bool, track_v: bool):
        self.a = [row[:] for row in m.data]
        self.rows = m.rows
        self.cols = m.cols
        self.u = [[int(i == j) for j in range(m.rows)] for i in range(m.rows)] if track_u else None
        self.uinv = [[int(i == j) for j in range(m.rows)] for i in range(m.rows)] if track_u else None
        self.v = [[int(i == j) for j in range(m.cols)] for i in range(m.cols)] if track_v else None
        self.vinv = [[int(i == j) for j in range(m.cols)] for i in range(m.cols)] if track_v else None

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.a[i], self.a[j] = self.a[j], self.a[i]
        if self.u is not None:
            self.u[i], self.u[j] = self.u[j], self.u[i]
            for row in self.uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        if self.v is not None:
            for row in self.v:
                row[i], row[j] = row[j], row[i]
            self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def add_row(self, i: int, j: int, q: int) -> None:
        """row_i += q * row_j."""
        if q == 0:
            return
        ai, aj = self.a[i], self.a[j]
        for k in range(self.cols):
            if aj[k]:
                ai[k] += q * aj[k]
        if self.u is not None:
            ui, uj = self.u[i], self.u[j]
            for k in range(self.rows):
                if uj[k]:
                    ui[k] += q * uj[k]
            for row in self.uinv:
                if row[i]:
                    row[j] -= q * row[i]

    def add_col(self, j: int, i: int, q: int) -> None:
        """col_j += q * col_i."""
        if q == 0:
            return
        for row in self.a:
            if row[i]:
                row[j] += q * row[i]
        if self.v is not None:
            for row in self.v:
                if row[i]:
                    row[j] += q * row[i]
            vi, vj = self.vinv[i], self.vinv[j]
            for k in range(self.cols):
                if vj[k]:
                    vi[k] -= q * vj[k]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        if self.u is not None:
            self.u[i] = [-x for x in self.u[i]]
            for row in self.uinv:
                row[i] = -row[i]

    def negate_col(self, j: int) -> None:
        for row in self.a:
            row[j] = -row[j]
        if self.v is not None:
            for row in self.v:
                row[j] = -row[j]
            self.vinv[j] = [-x for x in self.vinv[j]]

    def combine_rows(self, t: int, i: int, x: int, y: int, a_div: int, b_div: int) -> None:
        """Unimodular 2-row transform: (row_t, row_i) <- (x*row_t + y*row_i,
        -b_div*row_t + a_div*row_i), where x*a + y*b = g, a_div = a//g, b_div = b//g."""
        at, ai = self.a[t], self.a[i]
        for k in range(self.cols):
            p, q = at[k], ai[k]
            at[k] = x * p + y * q
            ai[k] = -b_div * p + a_div * q
        if self.u is not None:
            ut, ui = self.u[t], self.u[i]
            for k in range(self.rows):
                p, q = ut[k], ui[k]
                ut[k] = x * p + y * q
                ui[k] = -b_div * p + a_div * q
            # E^-1 = [[a_div, -y], [b_div, x]] acting on columns (t, i)
            for row in self.uinv:
                p, q = row[t], row[i]
                row[t] = a_div * p + b_div * q
                row[i] = -y * p + x * q

    def combine_cols(self, t: int, j: int, x: int, y: int, a_div: int, b_div: int) -> None:
        """Unimodular 2-column transform mirroring :meth:`combine_rows`."""
        for row in self.a:
            p, q = row[t], row[j]
            row[t] = x * p + y * q
            row[j] = -b_div * p + a_div * q
        if self.v is not None:
            for row in self.v:
                p, q = row[t], row[j]
                row[t] = x * p + y * q
                row[j] = -b_div * p + a_div * q
            vt, vj = self.vinv[t], self.vinv[j]
            for k in range(self.cols):
                p, q = vt[k], vj[k]
                vt[k] = a_div * p + b_div * q
                vj[k] = -y * p + x * q


def _find_min_pivot(a, t, rows, cols):
    best = None
    for i in range(t, rows):
        row = a[i]
        for j in range(t, cols):
            value = row[j]
            if value != 0:
                key = (abs(value), i, j)
                if best is None or key < best:
                    best = key
    if best is None:
        return None
    return best[1], best[2]


def _find_first_pivot(a, t, rows, cols):
    for i in range(t, rows):
        row = a[i]
        for j in range(t, cols):
            if row[j] != 0:
                return i, j
    return None


def _clear_classical(w: _Worker, t: int) -> None:
    """Clear row and column ``t`` using division steps, re-picking the
    minimal pivot whenever a remainder survives.  Terminates because the
    pivot's absolute value strictly decreases on every re-pick."""
    while True:
        pos = _find_min_pivot(w.a, t, w.rows, w.cols)
        w.swap_rows(t, pos[0])
        w.swap_cols(t, pos[1])
        pivot = w.a[t][t]
        dirty = False
        for i in range(t + 1, w.rows):
            value = w.a[i][t]
            if value:
                q = value // pivot
                w.add_row(i, t, -q)
                if w.a[i][t]:
                    dirty = True
        for j in range(t + 1, w.cols):
            value = w.a[t][j]
            if value:
                q = value // pivot
                w.add_col(j, t, -q)
                if w.a[t][j]:
                    dirty = True
        if not dirty:
            column_clear = all(w.a[i][t] == 0 for i in range(t + 1, w.rows))
            row_clear = all(w.a[t][j] == 0 for j in range(t + 1, w.cols))
            if column_clear and row_clear:
                return


def _clear_bezout(w: _Worker, t: int) -> None:
    """Clear row and column ``t`` with extended-gcd two-row/two-column
    transforms; no quotient/remainder steps, so intermediate entries stay
    bounded by Bezout combinations of the originals."""
    pos = _find_first_pivot(w.a, t, w.rows, w.cols)
    w.swap_rows(t, pos[0])
    w.swap_cols(t, pos[1])
    while True:
        for i in range(t + 1, w.rows):
            b = w.a[i][t]
            if b == 0:
                continue
            a = w.a[t][t]
            g, x, y = xgcd(a, b)
            if b % a == 0:
                w.add_row(i, t, -(b // a))
            else:
                w.combine_rows(t, i, x, y, a // g, b // g)
        for j in range(t + 1, w.cols):
            b = w.a[t][j]
            if b == 0:
                continue
            a = w.a[t][t]
            g, x, y = xgcd(a, b)
            if b % a == 0:
                w.add_col(j, t, -(b // a))
            else:
                w.combine_cols(t, j, x, y, a // g, b // g)
        if all(w.a[i][t] == 0 for i in range(t + 1, w.rows)):
            return


def smith_normal_form(m: IntMatrix, strategy: str = "classical",
                      track_u: bool = True, track_v: bool = True) -> SNFResult:
    """Smith normal form with unimodular transforms.

    ``strategy`` selects the pivoting scheme:

    * ``"classical"`` — pick the nonzero entry of minimal absolute value and
      reduce by repeated division (ties broken by position, so the whole
      computation is deterministic).
    * ``"bezout"`` — fraction-free variant: entries are cleared by
      extended-gcd 2x2 unimodular combinations instead of quotient chains.

    Both strategies produce the identical ``D`` (the normal form is unique);
    the transforms may differ.  Tracking of ``U`` or ``V`` (and their
    inverses) can be disabled when only the diagonal is needed.
    """
    if strategy not in ("classical", "bezout"):
        raise ValueError(f"unknown strategy {strategy!r}")
    w = _Worker(m, track_u, track_v)
    limit = min(w.rows, w.cols)
    t = 0
    while t < limit:
        if _find_first_pivot(w.a, t, w.rows, w.cols) is None:
            break
        if strategy == "classical":
            _clear_classical(w, t)
        else:
            _clear_bezout(w, t)
        # Fold any entry of the trailing block that the pivot does not divide
        # into the pivot's row, then re-clear: this drives the pivot down to
        # the gcd of the whole block, which yields the divisibility chain.
        pivot = w.a[t][t]
        retry = False
        for i in range(t + 1, w.rows):
            row = w.a[i]
            for j in range(t + 1, w.cols):
                if row[j] % pivot != 0:
                    w.add_row(t, i, 1)
                    retry = True
                    break
            if retry:
                break
        if retry:
            continue
        t += 1
    for i in range(limit):
        if w.a[i][i] < 0:
            w.negate_col(i)
    diagonal = [w.a[i][i] for i in range(limit)]
    mk = lambda rows: IntMatrix(len(rows), len(rows[0]) if rows else 0, rows)
    return SNFResult(
        d=IntMatrix(w.rows, w.cols, w.a),
        u=mk(w.u) if w.u is not None else (IntMatrix.identity(0) if track_u else None),
        v=mk(w.v) if w.v is not None else (IntMatrix.identity(0) if track_v else None),
        uinv=mk(w.uinv) if w.uinv is not None else (IntMatrix.identity(0) if track_u else None),
        vinv=mk(w.vinv) if w.vinv is not None else (IntMatrix.identity(0) if track_v else None),
        diagonal=diagonal,
    )


class SNFSolver:
    """Reusable exact solver for ``M x = b`` built on one Smith normal form.

    Solving many right-hand sides against the same matrix (expressing lattice
    vectors in a basis, building presentations of kernels) amortizes the
    normal form.
    """

    def __init__(self, m: IntMatrix, strategy: str = "classical"):
        self.m = m
        self.snf = smith_normal_form(m, strategy=strategy)

    def solve(self, b: Sequence[int]) -> Optional[List[int]]:
        """Return integer ``x`` with ``M x = b``, or ``None`` if none exists."""
        if len(b) != self.m.rows:
            raise ValueError(f"rhs length {len(b)} does not match {self.m.rows} rows")
        ub = self.snf.u.mat_vec(list(b))
        diag = self.snf.diagonal
        z = [0] * self.m.cols
        for i, value in enumerate(ub):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                if value != 0:
                    return None
            else:
                q, r = divmod(value, d)
                if r != 0:
                    return None
                if i < self.m.cols:
                    z[i] = q
        return self.snf.v.mat_vec(z)

    def contains(self, b: Sequence[int]) -> bool:
        """Whether ``b`` lies in the lattice spanned by the columns of ``M``."""
        return self.solve(b) is not None

    def solve_matrix(self, b: IntMatrix) -> Optional[IntMatrix]:
        """Column-wise :meth:`solve`; ``None`` if any column is unsolvable."""
        columns = []
        for j in range(b.cols):
            x = self.solve(b.column(j))
            if x is None:
                return None
            columns.append(x)
        return IntMatrix.from_columns(columns, rows=self.m.cols)


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """A basis for the integer kernel ``{x : M x = 0}``, as columns."""
    snf = smith_normal_form(m, track_u=False, track_v=True)
    diag = snf.diagonal
    columns = []
    for j in range(m.cols):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            columns.append(snf.v.column(j))
    return IntMatrix.from_columns(columns, rows=m.cols)


def lattice_basis(m: IntMatrix) -> IntMatrix:
    """A basis (as columns) for the lattice spanned by the columns of ``M``.

    From ``U M V = D`` the column span of ``M`` equals that of ``U^-1 D``,
    whose nonzero columns are a basis.
    """
    snf = smith_normal_form(m, track_u=True, track_v=False)
    columns = []
    for j, d in enumerate(snf.diagonal):
        if d != 0:
            columns.append([d * value for value in snf.uinv.column(j)])
    return IntMatrix.from_columns(columns, rows=m.rows)


def preimage_lattice(f: IntMatrix, target_gens: IntMatrix) -> IntMatrix:
    """Basis (columns) of ``{x : F x in colspan(target_gens)}``.

    Computed as the projection to the first block of the kernel of the
    stacked map ``[F | -G]``.
    """
    if f.rows != target_gens.rows:
        raise ValueError(
            f"map has {f.rows} output rows but target lattice lives in rank {target_gens.rows}")
    stacked = f.hstack(target_gens.scale(-1))
    kernel = kernel_basis(stacked)
    projected = IntMatrix(f.cols, kernel.cols,
                          [kernel.data[i] for i in range(f.cols)])
    return lattice_basis(projected)


def integer_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix over Z; raises if the matrix is not unimodular."""
    if m.rows != m.cols:
        raise ValueError(f"cannot invert a non-square {m.shape} matrix")
    solver = SNFSolver(m)
    inverse = solver.solve_matrix(IntMatrix.identity(m.rows))
    if inverse is None:
        raise ValueError("matrix is not invertible over the integers")
    return inverse
