"""Drazin inverses of 2x2 anti-triangular block matrices ``[[a, b], [c, 0]]``.

The chains below compute ``M^d`` by materializing every factorization
step: Cline transfers between block factors, commuting products, and the
PQ = 0 additive rule. Each structural identity a step relies on is checked
exactly before the step is taken. Pass a list as ``steps`` to collect the
intermediate ``(name, matrix)`` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .decompositions import thm22_refine
from .drazin import additive_pq_zero, cline_transfer, commuting_product_drazin, drazin
from .errors import CertificateError, HypothesisError, ShapeError
from .matrix import Matrix, block, identity, inverse, is_nilpotent, zero

__all__ = [
    "Block2x2",
    "UPolySequence",
    "u_poly",
    "u_sequence",
    "power_check_lemma31",
    "Lemma31Verdict",
    "Lemma32Extraction",
    "lemma32_extract",
    "lemma32_forward",
    "thm33_chain",
    "thm33_converse",
    "cor34_chain",
    "lem35_chain",
    "lem35_converse",
    "thm36_split",
    "thm36_converse",
    "cor37_derive",
    "anti_triangular",
]


@dataclass(frozen=True)
class Block2x2:
    a: Matrix
    b: Matrix
    c: Matrix
    d: Matrix
    embedded: Matrix

    @classmethod
    def from_blocks(cls, a: Matrix, b: Matrix, c: Matrix, d: Matrix | None = None) -> Block2x2:
        n = a.n_rows
        if d is None:
            d = zero(n)
        for m in (a, b, c, d):
            if m.shape != (n, n):
                raise ShapeError(f"blocks must all be {n}x{n}, got {m.n_rows}x{m.n_cols}")
        return cls(a, b, c, d, block([[a, b], [c, d]]))

    @classmethod
    def from_embedded(cls, m: Matrix) -> Block2x2:
        if not m.is_square or m.n_rows % 2:
            raise ShapeError(f"expected an even square matrix, got {m.n_rows}x{m.n_cols}")
        n = m.n_rows // 2
        return cls(
            m.submatrix(0, n, 0, n),
            m.submatrix(0, n, n, 2 * n),
            m.submatrix(n, 2 * n, 0, n),
            m.submatrix(n, 2 * n, n, 2 * n),
            m,
        )


def anti_triangular(a: Matrix, b: Matrix, c: Matrix) -> Matrix:
    """The 2n-by-2n embedding of ``[[a, b], [c, 0]]``."""
    return Block2x2.from_blocks(a, b, c).embedded


def _blk(a, b, c, d) -> Matrix:
    return block([[a, b], [c, d]])


def _dg(x: Matrix, y: Matrix | None = None) -> Matrix:
    y = x if y is None else y
    return block([[x, zero(x.n_rows)], [zero(y.n_rows), y]])


def _require(ok: bool, condition: str):
    if not ok:
        raise HypothesisError(condition)


def _step_identity(ok: bool, name: str):
    if not ok:
        raise CertificateError([name])


def _record(steps, name, m):
    if steps is not None:
        steps.append((name, m))
    return m


def _square_triple(a, b, c, what):
    n = a.n_rows
    for m in (a, b, c):
        if m.shape != (n, n) or n == 0:
            raise ShapeError(f"{what} needs equal non-empty square blocks, got {a.shape}, {b.shape}, {c.shape}")


def _additive(u: Matrix, v: Matrix, u_d: Matrix, v_d: Matrix) -> Matrix:
    """(u+v)^d by the PQ = 0 rule, in whichever orientation has a zero product."""
    if (u @ v).is_zero():
        return additive_pq_zero(u, v, u_d, v_d)
    if (v @ u).is_zero():
        return additive_pq_zero(v, u, v_d, u_d)
    raise CertificateError(["PQ=0 in either order"])


# -- U(m) and the power formula ----------------------------------------------


def u_poly(a: Matrix, m: int) -> Matrix:
    """U(m) = sum_{i=0}^{m//2} C(m-i, i) a^i, with U(-1) = 0."""
    if not a.is_square:
        raise ShapeError(f"U(m) needs a square matrix, got {a.n_rows}x{a.n_cols}")
    if m < -1:
        raise ValueError(f"U(m) is defined for m >= -1, got {m}")
    n = a.n_rows
    if m == -1:
        return zero(n)
    total = zero(n)
    p = identity(n)
    for i in range(m // 2 + 1):
        total = total + p.scale(comb(m - i, i))
        p = p @ a
    return total


@dataclass(frozen=True)
class UPolySequence:
    """U(-1), U(0), ..., U(N) evaluated at ``a``; ``values[m + 1]`` is U(m)."""

    a: Matrix
    values: tuple[Matrix, ...]

    def __getitem__(self, m: int) -> Matrix:
        return self.values[m + 1]


def u_sequence(a: Matrix, upto: int) -> UPolySequence:
    """U(-1..upto) from the closed binomial form."""
    return UPolySequence(a, tuple(u_poly(a, m) for m in range(-1, upto + 1)))


@dataclass(frozen=True)
class Lemma31Verdict:
    n: int
    checks: dict[str, bool]

    def __bool__(self):
        return all(self.checks.values())


def power_check_lemma31(a: Matrix, n: int) -> Lemma31Verdict:
    """Compare M^n for M = [[1, 1], [a, 0]] with [[U(n), U(n-1)], [U(n-1)a, U(n-2)a]]."""
    if not a.is_square or a.n_rows == 0:
        raise ShapeError(f"power check needs a square matrix, got {a.n_rows}x{a.n_cols}")
    if n < 1:
        raise ValueError(f"power check needs n >= 1, got {n}")
    k = a.n_rows
    eye = identity(k)
    m = _blk(eye, eye, a, zero(k))
    u = u_sequence(a, n)
    expected = _blk(u[n], u[n - 1], u[n - 1] @ a, u[n - 2] @ a)
    return Lemma31Verdict(
        n,
        {
            "M^n blocks": m ** n == expected,
            "U(n)-U(n-1)=U(n-2)a": u[n] - u[n - 1] == u[n - 2] @ a,
        },
    )


# -- [[1, 1], [a, 0]] ------------------------------------------------------------


def _sqrt_one_plus(nil: Matrix) -> Matrix:
    """sqrt(1 + nil) for nilpotent ``nil`` from the terminating binomial series."""
    n = nil.n_rows
    total = zero(n)
    coeff = Fraction(1)
    p = identity(n)
    for k in range(n + 1):
        if p.is_zero():
            break
        total = total + p.scale(coeff)
        coeff = coeff * (Fraction(1, 2) - k) / (k + 1)
        p = p @ nil
    return total


def lemma32_forward(a: Matrix, a_d: Matrix | None = None) -> Matrix:
    """``[[1, 1], [a, 0]]^d`` from ``a^d``.

    With e = a a^d the e-part is inverted outright: [[0, a^d], [e, -a^d]].
    On the (1-e)-part N = a(1-e) is nilpotent and Q = [[1, 1], [N, 0]] solves
    Q^2 - Q - N = 0, whose roots t± = (1 ± s)/2 with s = sqrt(1 + 4N) split Q
    into a unit part and a nilpotent part; there Q^d = (Q - t-)(s t+)^{-1}.
    """
    n = a.n_rows
    eye = identity(n)
    if a_d is None:
        a_d = drazin(a)
    e = a @ a_d
    f = eye - e
    nil = a @ f
    s = _sqrt_one_plus(nil * 4)
    _step_identity(s @ s == eye + nil * 4, "s^2 = 1 + 4N")
    t_plus = (eye + s) / 2
    t_minus = (eye - s) / 2
    q = _blk(eye, eye, nil, zero(n))
    core = _blk(zero(n), a_d, e, -a_d)
    return core + (q - _dg(t_minus)) @ _dg(inverse(s @ t_plus) @ f)


@dataclass(frozen=True)
class Lemma32Extraction:
    x11: Matrix
    x12: Matrix
    x21: Matrix
    x22: Matrix
    a_d: Matrix
    checks: dict[str, bool]


def lemma32_extract(a: Matrix, m_d: Matrix | None = None) -> Lemma32Extraction:
    """Read a witness for ``a`` off the blocks of ``[[1, 1], [a, 0]]^d``.

    The (1,2) block x12 commutes with a and leaves a - a^2 x12 nilpotent, so
    it refines to ``a^d``. ``m_d`` may be supplied when already known.
    """
    if not a.is_square or a.n_rows == 0:
        raise ShapeError(f"extraction needs a square matrix, got {a.n_rows}x{a.n_cols}")
    n = a.n_rows
    eye = identity(n)
    if m_d is None:
        m_d = drazin(_blk(eye, eye, a, zero(n)))
    x = Block2x2.from_embedded(m_d)
    x11, x12, x21, x22 = x.a, x.b, x.c, x.d
    checks = {
        "x21=a x12": x21 == a @ x12,
        "a x12=x12 a": a @ x12 == x12 @ a,
        "x11=x12+x22": x11 == x12 + x22,
        "a-a^2x12 nilpotent": bool(is_nilpotent(a - a @ a @ x12)),
    }
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise CertificateError(failed)
    refined = thm22_refine(a, x12, certify_polynomial=False)
    checks["refined a_d = drazin(a)"] = refined.a_d == drazin(a)
    if not checks["refined a_d = drazin(a)"]:
        raise CertificateError(["refined a_d = drazin(a)"])
    return Lemma32Extraction(x11, x12, x21, x22, refined.a_d, checks)


# -- idempotent corner: a^2 = a, ab = b --------------------------------------


def thm33_chain(a: Matrix, b: Matrix, c: Matrix, bc_d: Matrix | None = None, steps=None) -> Matrix:
    """``M^d`` for M = [[a, b], [c, 0]] with a idempotent and ab = b, from ``(bc)^d``."""
    _square_triple(a, b, c, "idempotent-corner chain")
    _require(a @ a == a, "a^2 = a")
    _require(a @ b == b, "ab = b")
    n = a.n_rows
    eye, o = identity(n), zero(n)
    bc = b @ c
    if bc_d is None:
        bc_d = drazin(bc)
    _record(steps, "(bc)^d", bc_d)

    # bc = a(bc), so (bca)^d = bc ((bc)^d)^2 a
    _step_identity(a @ bc == bc, "abc = bc")
    bca = bc @ a
    bca_d = _record(steps, "(bca)^d", cline_transfer(a, bc, bc_d))

    k = _blk(eye, eye, bca, o)
    k_d = _record(steps, "[[1,1],[bca,0]]^d", lemma32_forward(bca, bca_d))

    # diag(a, a) commutes with K; a is its own Drazin inverse
    da = _dg(a)
    p1 = da @ k
    _step_identity(p1 == _blk(a, a, bca, o), "diag(a,a)K = [[a,a],[bca,0]]")
    p1_d = _record(steps, "[[a,a],[bca,0]]^d", commuting_product_drazin(da, k, da, k_d, certify=False))

    # [[a,a],[bc,0]] = [[0,0],[bc(1-a),0]] + [[a,a],[bca,0]]
    q1 = _blk(o, o, bc @ (eye - a), o)
    _step_identity((q1 @ q1).is_zero(), "Q^2 = 0")
    p2 = _blk(a, a, bc, o)
    p2_d = _record(steps, "[[a,a],[bc,0]]^d", _additive(q1, p1, zero(2 * n), p1_d))

    # [[a,a],[bc,0]] = diag(1,bc)[[a,a],[1,0]],  [[a,bc],[1,0]] = [[a,a],[1,0]]diag(1,bc)
    x1, y1 = _dg(eye, bc), _blk(a, a, eye, o)
    _step_identity(x1 @ y1 == p2, "diag(1,bc)[[a,a],[1,0]] = [[a,a],[bc,0]]")
    r1 = y1 @ x1
    _step_identity(r1 == _blk(a, bc, eye, o), "[[a,a],[1,0]]diag(1,bc) = [[a,bc],[1,0]]")
    r1_d = _record(steps, "[[a,bc],[1,0]]^d", cline_transfer(x1, y1, p2_d))

    # M = diag(1,c)[[a,b],[1,0]],  [[a,bc],[1,0]] = [[a,b],[1,0]]diag(1,c)
    x2, y2 = _blk(a, b, eye, o), _dg(eye, c)
    _step_identity(x2 @ y2 == r1, "[[a,b],[1,0]]diag(1,c) = [[a,bc],[1,0]]")
    _step_identity(y2 @ x2 == _blk(a, b, c, o), "diag(1,c)[[a,b],[1,0]] = M")
    return _record(steps, "M^d", cline_transfer(x2, y2, r1_d))


def thm33_converse(a: Matrix, b: Matrix, c: Matrix, m_d: Matrix | None = None, steps=None) -> Matrix:
    """``(bc)^d`` from ``M^d`` for M = [[a, b], [c, 0]], a idempotent, ab = b."""
    _square_triple(a, b, c, "idempotent-corner converse")
    _require(a @ a == a, "a^2 = a")
    _require(a @ b == b, "ab = b")
    n = a.n_rows
    eye, o = identity(n), zero(n)
    bc = b @ c
    m = _blk(a, b, c, o)
    if m_d is None:
        m_d = drazin(m)

    x2, y2 = _blk(a, b, eye, o), _dg(eye, c)
    _step_identity(y2 @ x2 == m, "diag(1,c)[[a,b],[1,0]] = M")
    r1_d = _record(steps, "[[a,bc],[1,0]]^d", cline_transfer(y2, x2, m_d))

    x1, y1 = _dg(eye, bc), _blk(a, a, eye, o)
    _step_identity(y1 @ x1 == _blk(a, bc, eye, o), "[[a,a],[1,0]]diag(1,bc) = [[a,bc],[1,0]]")
    p2_d = _record(steps, "[[a,a],[bc,0]]^d", cline_transfer(y1, x1, r1_d))

    # [[1,a],[bc,0]] = [[1-a,0],[0,0]] + [[a,a],[bc,0]]; the first summand is idempotent
    lead = _dg(eye - a, o)
    p2 = _blk(a, a, bc, o)
    st_d = _record(steps, "[[1,a],[bc,0]]^d", _additive(lead, p2, lead, p2_d))

    # S = [[1,1],[bc,0]], T = diag(1,a): ST = [[1,a],[bc,0]], TS = S
    s, t = _blk(eye, eye, bc, o), _dg(eye, a)
    _step_identity(s @ t == _blk(eye, a, bc, o), "ST = [[1,a],[bc,0]]")
    _step_identity(t @ s == s, "TS = [[1,1],[bc,0]]")
    k_d = _record(steps, "[[1,1],[bc,0]]^d", cline_transfer(s, t, st_d))
    return _record(steps, "(bc)^d", lemma32_extract(bc, k_d).a_d)


def cor34_chain(a: Matrix, b: Matrix, steps=None) -> Matrix:
    """``[[a, a], [b, 0]]^d`` for idempotent ``a``."""
    return thm33_chain(a, a, b, steps=steps)


# -- commuting hypotheses ----------------------------------------------------


def _lem35_hypotheses(a, b, c):
    a_d = drazin(a)
    bc = b @ c
    _require(c @ a @ a_d == c, "c a a^d = c")
    _require(a_d @ bc == bc @ a_d, "a^d bc = bc a^d")
    return a_d, bc


def lem35_chain(a: Matrix, b: Matrix, c: Matrix, bc_d: Matrix | None = None, steps=None) -> Matrix:
    """``M^d`` for M = [[a, b], [c, 0]] when c a a^d = c and a^d bc = bc a^d."""
    _square_triple(a, b, c, "commuting chain")
    a_d, bc = _lem35_hypotheses(a, b, c)
    n = a.n_rows
    eye, o = identity(n), zero(n)
    if bc_d is None:
        bc_d = drazin(bc)
    _record(steps, "(bc)^d", bc_d)

    # y = (a^d)^2 bc; ((a^d)^2)^d = (a^2 a^d)^2
    ad2 = a_d @ a_d
    y = ad2 @ bc
    add = a @ a @ a_d
    y_d = _record(steps, "((a^d)^2bc)^d", commuting_product_drazin(ad2, bc, add @ add, bc_d, certify=False))

    k = _blk(eye, eye, y, o)
    k_d = _record(steps, "[[1,1],[y,0]]^d", lemma32_forward(y, y_d))

    da = _dg(a)
    _step_identity(da @ k == k @ da, "diag(a,a)K = K diag(a,a)")
    p_d = _record(steps, "diag(a,a)K ^d", commuting_product_drazin(da, k, _dg(a_d), k_d, certify=False))

    # diag(a,a)K = diag(a,b)[[1,1],[ca^d,0]] and M = [[1,1],[ca^d,0]]diag(a,b)
    x, w = _dg(a, b), _blk(eye, eye, c @ a_d, o)
    _step_identity(x @ w == da @ k, "diag(a,b)[[1,1],[ca^d,0]] = diag(a,a)K")
    _step_identity(w @ x == _blk(a, b, c, o), "[[1,1],[ca^d,0]]diag(a,b) = M")
    return _record(steps, "M^d", cline_transfer(x, w, p_d))


def lem35_converse(a: Matrix, b: Matrix, c: Matrix, m_d: Matrix | None = None, steps=None) -> Matrix:
    """``(bc)^d`` from ``M^d`` under the hypotheses of :func:`lem35_chain`."""
    _square_triple(a, b, c, "commuting converse")
    a_d, bc = _lem35_hypotheses(a, b, c)
    n = a.n_rows
    eye, o = identity(n), zero(n)
    m = _blk(a, b, c, o)
    if m_d is None:
        m_d = drazin(m)

    # M = [[a,1],[c,0]]diag(1,b),  W = diag(1,b)[[a,1],[c,0]] = [[a,1],[bc,0]]
    x, yb = _blk(a, eye, c, o), _dg(eye, b)
    _step_identity(x @ yb == m, "[[a,1],[c,0]]diag(1,b) = M")
    w = yb @ x
    _step_identity(w == _blk(a, eye, bc, o), "diag(1,b)[[a,1],[c,0]] = [[a,1],[bc,0]]")
    w_d = _record(steps, "[[a,1],[bc,0]]^d", cline_transfer(x, yb, m_d))

    dad = _dg(a_d)
    z = dad @ w
    _step_identity(dad @ w == w @ dad, "diag(a^d,a^d) W = W diag(a^d,a^d)")
    add = a @ a @ a_d
    z_d = _record(steps, "[[a^da,a^d],[a^dbc,0]]^d", commuting_product_drazin(dad, w, _dg(add), w_d, certify=False))

    # T = diag(1,a^d) Z diag(1,a); with X = diag(1,a^d), Y = Z diag(1,a): YX = Z, XY = T
    xl, yr = _dg(eye, a_d), z @ _dg(eye, a)
    _step_identity(yr @ xl == z, "Z diag(1,aa^d) = Z")
    t = xl @ yr
    y = a_d @ a_d @ bc
    _step_identity(t == _blk(a_d @ a, a @ a_d, y, o), "T = [[a^da,aa^d],[(a^d)^2bc,0]]")
    t_d = _record(steps, "T^d", cline_transfer(yr, xl, z_d))

    # [[1,1],[y,0]] = [[a^pi,a^pi],[0,0]] + T; the first summand is idempotent
    a_pi = eye - a @ a_d
    lead = _blk(a_pi, a_pi, o, o)
    k_d = _record(steps, "[[1,1],[y,0]]^d", _additive(lead, t, lead, t_d))
    y_d = _record(steps, "y^d", lemma32_extract(y, k_d).a_d)

    # bc = y a^2 with y and a^2 commuting
    a2 = a @ a
    _step_identity(y @ a2 == bc, "bc = (a^d)^2 bc a^2")
    return _record(steps, "(bc)^d", commuting_product_drazin(y, a2, y_d, a_d @ a_d, certify=False))


def _thm36_parts(a, b, c):
    a_d = drazin(a)
    n = a.n_rows
    eye, o = identity(n), zero(n)
    a_pi = eye - a @ a_d
    bc = b @ c
    _require((bc @ a_pi).is_zero(), "bc a^pi = 0")
    _require(a_d @ bc == bc @ a_d, "a^d bc = bc a^d")
    c1 = c @ a @ a_d
    p = _blk(a, b, c1, o)
    q = _blk(o, o, c @ a_pi, o)
    _step_identity((p @ q).is_zero(), "PQ = 0")
    _step_identity((q @ q).is_zero(), "Q^2 = 0")
    _step_identity(p + q == _blk(a, b, c, o), "M = P + Q")
    return c1, p, q


def thm36_split(a: Matrix, b: Matrix, c: Matrix, bc_d: Matrix | None = None, steps=None) -> Matrix:
    """``M^d`` when bc a^pi = 0 and a^d bc = bc a^d.

    M = P + Q with P = [[a, b], [c a a^d, 0]] handled by :func:`lem35_chain`
    and Q = [[0, 0], [c a^pi, 0]] square-zero.
    """
    _square_triple(a, b, c, "split chain")
    c1, p, q = _thm36_parts(a, b, c)
    p_d = _record(steps, "P^d", lem35_chain(a, b, c1, bc_d))
    return _record(steps, "M^d", _additive(p, q, p_d, zero(p.n_rows)))


def thm36_converse(a: Matrix, b: Matrix, c: Matrix, m_d: Matrix | None = None, steps=None) -> Matrix:
    """``(bc)^d`` from ``M^d`` under the hypotheses of :func:`thm36_split`."""
    _square_triple(a, b, c, "split converse")
    c1, p, q = _thm36_parts(a, b, c)
    m = p + q
    if m_d is None:
        m_d = drazin(m)
    # P = M + N with N = -Q, MN = 0, N^2 = 0
    nq = -q
    p_d = _record(steps, "P^d", _additive(m, nq, m_d, zero(m.n_rows)))
    return _record(steps, "(bc)^d", lem35_converse(a, b, c1, p_d))


def cor37_derive(a: Matrix, b: Matrix, c: Matrix, bc_d: Matrix | None = None, steps=None) -> Matrix:
    """``M^d`` when a^pi bc = 0 and a bc = bc a, by reduction to :func:`thm36_split`.

    a^d is a polynomial in a, so a bc = bc a gives a^d bc = bc a^d, and then
    bc a^pi = a^pi bc = 0.
    """
    from .matrix import express_as_polynomial

    _square_triple(a, b, c, "corollary chain")
    n = a.n_rows
    eye = identity(n)
    a_d = drazin(a)
    bc = b @ c
    _require(((eye - a @ a_d) @ bc).is_zero(), "a^pi bc = 0")
    _require(a @ bc == bc @ a, "a bc = bc a")
    coeffs = express_as_polynomial(a, a_d)
    _step_identity(coeffs is not None, "a^d in alg(a)")
    _step_identity(a_d @ bc == bc @ a_d, "a^d bc = bc a^d")
    _step_identity((bc @ (eye - a @ a_d)).is_zero(), "bc a^pi = 0")
    return thm36_split(a, b, c, bc_d, steps)
