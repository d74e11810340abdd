"""Dense exact matrices over Q(i) and the linear algebra built on them.

Storage is split into a tuple of real parts and a tuple of imaginary parts
(``None`` when the matrix is real), which is the layout the kernels expect.
Matrices are immutable; every operation returns a new one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernels
from .errors import ParseError, ShapeError
from .exactnum import ONE, ZERO, GaussianRational, gq_format, gq_parse

__all__ = [
    "Matrix",
    "RREF",
    "NilpotencyVerdict",
    "identity",
    "zero",
    "diag",
    "rref_decompose",
    "rank",
    "determinant",
    "try_inverse",
    "inverse",
    "solve",
    "full_rank_factorize",
    "is_nilpotent",
    "commutes",
    "express_as_polynomial",
    "polynomial_eval",
    "column_space_basis",
]


def _split(value) -> tuple[Fraction, Fraction]:
    if isinstance(value, GaussianRational):
        return value.re, value.im
    if isinstance(value, str):
        z = gq_parse(value)
        return z.re, z.im
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, (int, Fraction)):
        return Fraction(value), ZERO
    if isinstance(value, complex) or isinstance(value, float):
        raise TypeError(f"inexact entry {value!r}")
    return Fraction(value), ZERO


class Matrix:
    """Immutable dense matrix of Gaussian rationals.

    Build one with :meth:`from_rows`, :func:`identity`, :func:`zero` or
    :func:`diag`. Empty (0-by-0) matrices exist only to represent trivial
    subspaces; every algebra element has at least one row.
    """

    __slots__ = ("n_rows", "n_cols", "_re", "_im", "_hash")

    def __init__(self, n_rows: int, n_cols: int, re: Sequence[Fraction], im=None):
        if n_rows < 0 or n_cols < 0:
            raise ShapeError(f"negative dimension {n_rows}x{n_cols}")
        if len(re) != n_rows * n_cols or (im is not None and len(im) != len(re)):
            raise ShapeError(f"entry count does not match shape {n_rows}x{n_cols}")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self._re = tuple(re)
        self._im = tuple(im) if im is not None and any(im) else None
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> Matrix:
        """Build from nested rows of ints, Fractions, literals or GaussianRationals."""
        rows = [list(r) for r in rows]
        if not rows:
            raise ShapeError("a matrix needs at least one row")
        width = len(rows[0])
        if width == 0 or any(len(r) != width for r in rows):
            raise ShapeError("rows must be non-empty and of equal length")
        re, im = [], []
        for r in rows:
            for v in r:
                x, y = _split(v)
                re.append(x)
                im.append(y)
        return cls(len(rows), width, re, im)

    @classmethod
    def from_entries(cls, n_rows: int, n_cols: int, entries: Iterable) -> Matrix:
        re, im = [], []
        for v in entries:
            x, y = _split(v)
            re.append(x)
            im.append(y)
        return cls(n_rows, n_cols, re, im)

    @classmethod
    def from_columns(cls, columns: Sequence[Matrix], n_rows: int) -> Matrix:
        """Stack column vectors side by side; an empty list gives n-by-0."""
        if not columns:
            return cls(n_rows, 0, ())
        return hstack(columns)

    # -- basic accessors --------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    @property
    def is_real(self) -> bool:
        return self._im is None

    @property
    def entries(self) -> tuple[GaussianRational, ...]:
        im = self._im or (ZERO,) * len(self._re)
        return tuple(GaussianRational(x, y) for x, y in zip(self._re, im))

    def __getitem__(self, idx) -> GaussianRational:
        i, j = idx
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(idx)
        k = i * self.n_cols + j
        return GaussianRational(self._re[k], self._im[k] if self._im else ZERO)

    def to_rows(self) -> list[list[GaussianRational]]:
        e = self.entries
        c = self.n_cols
        return [list(e[i * c:(i + 1) * c]) for i in range(self.n_rows)]

    def is_zero(self) -> bool:
        return not any(self._re) and self._im is None

    def is_identity(self) -> bool:
        return self.is_square and self == identity(self.n_rows)

    def trace(self) -> GaussianRational:
        self._need_square("trace")
        n = self.n_rows
        re = sum((self._re[i * n + i] for i in range(n)), ZERO)
        im = sum((self._im[i * n + i] for i in range(n)), ZERO) if self._im else ZERO
        return GaussianRational(re, im)

    def _need_square(self, what: str):
        if not self.is_square:
            raise ShapeError(f"{what} needs a square matrix, got {self.n_rows}x{self.n_cols}")

    # -- equality / hashing -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and self._re == other._re
            and self._im == other._im
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n_rows, self.n_cols, self._re, self._im))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def _same_shape(self, other: Matrix, op: str):
        if not isinstance(other, Matrix):
            raise TypeError(f"cannot {op} Matrix and {type(other).__name__}")
        if self.shape != other.shape:
            raise ShapeError(f"cannot {op} {self.n_rows}x{self.n_cols} and {other.n_rows}x{other.n_cols}")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other, "add")
        re = [x + y for x, y in zip(self._re, other._re)]
        im = _combine_im(self._im, other._im, len(re), lambda x, y: x + y)
        return Matrix(self.n_rows, self.n_cols, re, im)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other, "subtract")
        re = [x - y for x, y in zip(self._re, other._re)]
        im = _combine_im(self._im, other._im, len(re), lambda x, y: x - y)
        return Matrix(self.n_rows, self.n_cols, re, im)

    def __neg__(self):
        im = [-y for y in self._im] if self._im else None
        return Matrix(self.n_rows, self.n_cols, [-x for x in self._re], im)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.n_cols != other.n_rows:
            raise ShapeError(
                f"cannot multiply {self.n_rows}x{self.n_cols} by {other.n_rows}x{other.n_cols}"
            )
        n, k, m = self.n_rows, self.n_cols, other.n_cols
        if n == 0 or m == 0 or k == 0:
            return Matrix(n, m, (ZERO,) * (n * m))
        re, im = _kernels.matmul(self._re, self._im, other._re, other._im, n, k, m)
        return Matrix(n, m, re, im)

    def scale(self, s) -> Matrix:
        """Multiply every entry by the scalar ``s``."""
        sr, si = _split(s)
        if not si and self._im is None:
            return Matrix(self.n_rows, self.n_cols, [x * sr for x in self._re])
        im0 = self._im or (ZERO,) * len(self._re)
        re = [x * sr - y * si for x, y in zip(self._re, im0)]
        im = [x * si + y * sr for x, y in zip(self._re, im0)]
        return Matrix(self.n_rows, self.n_cols, re, im)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            raise TypeError("use @ for matrix products")
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Matrix):
            return NotImplemented
        return self.scale(GaussianRational.coerce(other).inverse())

    def __pow__(self, k: int) -> Matrix:
        self._need_square("power")
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"matrix power needs a non-negative integer exponent, got {k!r}")
        result = identity(self.n_rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def transpose(self) -> Matrix:
        r, c = self.n_rows, self.n_cols
        re = [self._re[i * c + j] for j in range(c) for i in range(r)]
        im = [self._im[i * c + j] for j in range(c) for i in range(r)] if self._im else None
        return Matrix(c, r, re, im)

    # -- slicing ----------------------------------------------------------

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> Matrix:
        """Rows r0..r1-1 and columns c0..c1-1."""
        c = self.n_cols
        re = [self._re[i * c + j] for i in range(r0, r1) for j in range(c0, c1)]
        im = [self._im[i * c + j] for i in range(r0, r1) for j in range(c0, c1)] if self._im else None
        return Matrix(r1 - r0, c1 - c0, re, im)

    def column(self, j: int) -> Matrix:
        return self.submatrix(0, self.n_rows, j, j + 1)

    def columns(self) -> list[Matrix]:
        return [self.column(j) for j in range(self.n_cols)]

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "rows": self.n_rows,
            "cols": self.n_cols,
            "entries": [[gq_format(z) for z in row] for row in self.to_rows()],
        }

    @classmethod
    def from_json_obj(cls, obj) -> Matrix:
        if not isinstance(obj, dict):
            raise ParseError("matrix object must be a JSON object")
        try:
            rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        except KeyError as exc:
            raise ParseError(f"matrix object is missing key {exc.args[0]!r}") from None
        if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
            raise ParseError("rows and cols must be non-negative integers")
        if not isinstance(entries, list) or len(entries) != rows:
            raise ParseError(f"expected {rows} entry rows")
        flat = []
        for i, row in enumerate(entries):
            if not isinstance(row, list) or len(row) != cols:
                raise ParseError(f"row {i} must hold {cols} literals")
            for j, s in enumerate(row):
                try:
                    flat.append(gq_parse(s))
                except ParseError as exc:
                    raise ParseError(f"entry ({i},{j}) {s!r}: {exc}") from None
        return cls.from_entries(rows, cols, flat)

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def loads(cls, text: str) -> Matrix:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
        return cls.from_json_obj(obj)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(gq_format(z) for z in r) + "]" for r in self.to_rows())
        return f"Matrix([{rows}])"

    def __str__(self):
        cells = [[gq_format(z) for z in r] for r in self.to_rows()]
        if not cells:
            return "[]"
        w = max(len(s) for r in cells for s in r)
        return "\n".join("[" + " ".join(s.rjust(w) for s in r) + "]" for r in cells)


def _combine_im(a_im, b_im, size, op):
    if a_im is None and b_im is None:
        return None
    a = a_im or (ZERO,) * size
    b = b_im or (ZERO,) * size
    return [op(x, y) for x, y in zip(a, b)]


# -- constructors ------------------------------------------------------------


def identity(n: int) -> Matrix:
    re = [ZERO] * (n * n)
    for i in range(n):
        re[i * n + i] = ONE
    return Matrix(n, n, re)


def zero(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return Matrix(n, m, [ZERO] * (n * m))


def diag(*values) -> Matrix:
    n = len(values)
    out = [0] * (n * n)
    for i, v in enumerate(values):
        out[i * n + i] = v
    return Matrix.from_entries(n, n, out)


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a block matrix from a grid of compatible blocks."""
    row_mats = [hstack(list(r)) for r in grid]
    return vstack(row_mats)


def hstack(mats: Sequence[Matrix]) -> Matrix:
    n = mats[0].n_rows
    if any(m.n_rows != n for m in mats):
        raise ShapeError("hstack needs equal row counts: " + ", ".join(f"{m.n_rows}x{m.n_cols}" for m in mats))
    cplx = any(m._im is not None for m in mats)
    re, im = [], []
    for i in range(n):
        for m in mats:
            c = m.n_cols
            re.extend(m._re[i * c:(i + 1) * c])
            if cplx:
                im.extend(m._im[i * c:(i + 1) * c] if m._im else (ZERO,) * c)
    return Matrix(n, sum(m.n_cols for m in mats), re, im if cplx else None)


def vstack(mats: Sequence[Matrix]) -> Matrix:
    c = mats[0].n_cols
    if any(m.n_cols != c for m in mats):
        raise ShapeError("vstack needs equal column counts: " + ", ".join(f"{m.n_rows}x{m.n_cols}" for m in mats))
    cplx = any(m._im is not None for m in mats)
    re, im = [], []
    for m in mats:
        re.extend(m._re)
        if cplx:
            im.extend(m._im or (ZERO,) * len(m._re))
    return Matrix(sum(m.n_rows for m in mats), c, re, im if cplx else None)


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    """Block diagonal ``a ⊕ b``; either summand may be 0-by-0."""
    if a.n_rows == 0:
        return b
    if b.n_rows == 0:
        return a
    return block([[a, zero(a.n_rows, b.n_cols)], [zero(b.n_rows, a.n_cols), b]])


# -- elimination -------------------------------------------------------------


@dataclass(frozen=True)
class RREF:
    rank: int
    rref: Matrix
    pivot_columns: tuple[int, ...]
    kernel_basis: tuple[Matrix, ...] = field(repr=False)


def _rref_raw(a: Matrix, pivot_cols: int | None = None):
    pc = a.n_cols if pivot_cols is None else pivot_cols
    re, im, pivots, det = _kernels.rref(a._re, a._im, a.n_rows, a.n_cols, pc)
    return Matrix(a.n_rows, a.n_cols, re, im), tuple(pivots), det


def rref_decompose(a: Matrix) -> RREF:
    """Reduced row echelon form, rank, pivot columns and a kernel basis.

    Pivots are chosen as the first nonzero entry in column order, so the
    result is the unique RREF. Kernel vectors are returned as column
    matrices, one per free column.
    """
    if a.n_rows == 0 or a.n_cols == 0:
        basis = tuple(identity(a.n_cols).column(j) for j in range(a.n_cols))
        return RREF(0, a, (), basis)
    r, pivots, _ = _rref_raw(a)
    free = [j for j in range(a.n_cols) if j not in pivots]
    basis = []
    for f in free:
        vec = [GaussianRational(0)] * a.n_cols
        vec[f] = GaussianRational(1)
        for row, p in enumerate(pivots):
            vec[p] = -r[row, f]
        basis.append(Matrix.from_entries(a.n_cols, 1, vec))
    return RREF(len(pivots), r, pivots, tuple(basis))


def rank(a: Matrix) -> int:
    if a.n_rows == 0 or a.n_cols == 0:
        return 0
    return len(_rref_raw(a)[1])


def _inverse_and_det(a: Matrix):
    a._need_square("inverse")
    n = a.n_rows
    if n == 0:
        return a, GaussianRational(1)
    r, pivots, (dr, di) = _rref_raw(hstack([a, identity(n)]), n)
    det = GaussianRational(dr, di)
    if len(pivots) < n:
        return None, det
    return r.submatrix(0, n, n, 2 * n), det


def determinant(a: Matrix) -> GaussianRational:
    a._need_square("determinant")
    if a.n_rows == 0:
        return GaussianRational(1)
    _, _, (dr, di) = _rref_raw(a)
    return GaussianRational(dr, di)


def try_inverse(a: Matrix) -> Matrix | None:
    """The inverse of ``a``, or ``None`` when ``a`` is singular."""
    return _inverse_and_det(a)[0]


def inverse(a: Matrix) -> Matrix:
    inv = try_inverse(a)
    if inv is None:
        raise ZeroDivisionError("matrix is singular")
    return inv


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Unique X with ``a @ X == b``; ``None`` if inconsistent or underdetermined."""
    if a.n_rows != b.n_rows:
        raise ShapeError(f"cannot solve {a.n_rows}x{a.n_cols} system with {b.n_rows}x{b.n_cols} right side")
    n = a.n_cols
    if n == 0:
        return Matrix(0, b.n_cols, ()) if b.is_zero() else None
    r, pivots, _ = _rref_raw(hstack([a, b]), n)
    k = len(pivots)
    if k < n:
        return None
    if not r.submatrix(k, r.n_rows, n, r.n_cols).is_zero():
        return None
    return r.submatrix(0, n, n, r.n_cols)


def column_space_basis(a: Matrix) -> list[Matrix]:
    """Columns of ``a`` at the pivot positions of its RREF."""
    if a.n_rows == 0 or a.n_cols == 0:
        return []
    _, pivots, _ = _rref_raw(a)
    return [a.column(j) for j in pivots]


def full_rank_factorize(a: Matrix) -> tuple[Matrix, Matrix] | None:
    """Return (B, C) with ``a == B @ C``, B full column rank, C full row rank.

    B holds the pivot columns of ``a`` and C the nonzero rows of its RREF.
    ``None`` is returned for the zero matrix.
    """
    a._need_square("full-rank factorization")
    r, pivots, _ = _rref_raw(a)
    k = len(pivots)
    if k == 0:
        return None
    b = hstack([a.column(j) for j in pivots])
    c = r.submatrix(0, k, 0, a.n_cols)
    return b, c


# -- predicates --------------------------------------------------------------


@dataclass(frozen=True)
class NilpotencyVerdict:
    """Whether a matrix is nilpotent; ``exponent`` is the least m with a^m = 0."""

    nilpotent: bool
    exponent: int | None = None

    def __bool__(self):
        return self.nilpotent


def is_nilpotent(a: Matrix) -> NilpotencyVerdict:
    """Decide nilpotency by repeated squaring up to an exponent >= n.

    The least vanishing exponent is then found by binary lifting over the
    stored powers a, a^2, a^4, ...
    """
    a._need_square("nilpotency test")
    n = a.n_rows
    if n == 0:
        return NilpotencyVerdict(True, 0)
    if a.is_zero():
        return NilpotencyVerdict(True, 1)
    if a.trace():
        return NilpotencyVerdict(False)
    powers = [a]
    while (1 << (len(powers) - 1)) < n:
        powers.append(powers[-1] @ powers[-1])
    if not powers[-1].is_zero():
        return NilpotencyVerdict(False)
    # largest e with a^e != 0, built from the highest bit down
    e = 0
    cur = None
    for j in range(len(powers) - 1, -1, -1):
        cand = powers[j] if cur is None else cur @ powers[j]
        if not cand.is_zero():
            cur = cand
            e += 1 << j
    return NilpotencyVerdict(True, e + 1)


def commutes(a: Matrix, b: Matrix) -> bool:
    a._need_square("commutation test")
    if a.shape != b.shape:
        raise ShapeError(f"cannot compare {a.n_rows}x{a.n_cols} with {b.n_rows}x{b.n_cols}")
    return a @ b == b @ a


def _vec(a: Matrix) -> Matrix:
    return Matrix(a.n_rows * a.n_cols, 1, a._re, a._im)


def express_as_polynomial(a: Matrix, b: Matrix) -> list[GaussianRational] | None:
    """Coefficients c_0..c_d of least degree with ``sum c_i a^i == b``.

    Returns ``None`` when ``b`` is not in the unital algebra generated by
    ``a``. By Cayley-Hamilton the powers I, a, ..., a^n already span that
    algebra, so a single elimination over their vectorizations suffices:
    the first dependent power ends the independent prefix and the solution
    in that prefix is unique, hence of least degree.
    """
    a._need_square("polynomial membership")
    if a.shape != b.shape:
        raise ShapeError(f"cannot compare {a.n_rows}x{a.n_cols} with {b.n_rows}x{b.n_cols}")
    n = a.n_rows
    powers = [identity(n)]
    for _ in range(n):
        powers.append(powers[-1] @ a)
    system = hstack([_vec(p) for p in powers] + [_vec(b)])
    r, pivots, _ = _rref_raw(system, n + 1)
    k = len(pivots)
    # pivots of the power columns are exactly 0..k-1 (the independent prefix)
    tail = r.submatrix(k, r.n_rows, n + 1, n + 2)
    if not tail.is_zero():
        return None
    coeffs = [r[i, n + 1] for i in range(k)]
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        coeffs = [GaussianRational(0)]
    return coeffs


def polynomial_eval(coeffs: Sequence, a: Matrix) -> Matrix:
    """Horner evaluation of ``sum coeffs[i] * a^i``."""
    n = a.n_rows
    result = zero(n)
    for c in reversed(list(coeffs)):
        result = result @ a + identity(n).scale(c)
    return result
