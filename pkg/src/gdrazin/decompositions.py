"""Constructive characterizations of Drazin invertibility.

Each operation returns a record whose ``checks`` dict names every condition
it certified. A forward direction (building the witness from ``a^d``) that
fails a check raises :class:`CertificateError`; a converse direction given a
witness that does not meet the hypotheses raises :class:`HypothesisError`.

Quasinilpotent means nilpotent throughout, and invertibility of ``eae`` in
the corner algebra ``eAe`` is tested as invertibility of ``eae + 1 - e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .drazin import drazin, drazin_inverse
from .errors import CertificateError, HypothesisError, ShapeError
from .matrix import (
    Matrix,
    column_space_basis,
    determinant,
    direct_sum,
    express_as_polynomial,
    hstack,
    identity,
    inverse,
    is_nilpotent,
    solve,
    try_inverse,
)

__all__ = [
    "StronglyDrazinVerdict",
    "Thm22Refinement",
    "QuasipolarCertificate",
    "ScalerCertificate",
    "EUWDecomposition",
    "TwoUnits",
    "CornerData",
    "Splitting",
    "strongly_drazin_check",
    "thm22_witness_check",
    "thm22_refine",
    "quasipolar",
    "cor23_scaler",
    "euw_decompose",
    "two_units",
    "corner_characterize",
    "invariant_splitting",
]


def _square(a: Matrix, what: str):
    if not a.is_square or a.n_rows == 0:
        raise ShapeError(f"{what} needs a non-empty square matrix, got {a.n_rows}x{a.n_cols}")


def _pair(a: Matrix, b: Matrix, what: str):
    _square(a, what)
    if a.shape != b.shape:
        raise ShapeError(f"{what} needs equal shapes, got {a.shape} and {b.shape}")


def _certify(checks: dict[str, bool]):
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise CertificateError(failed)


def _invertible(m: Matrix) -> bool:
    return bool(determinant(m))


# -- strongly Drazin ---------------------------------------------------------


@dataclass(frozen=True)
class StronglyDrazinVerdict:
    strongly_drazin: bool
    e: Matrix | None = None
    checks: dict[str, bool] = field(default_factory=dict)

    def __bool__(self):
        return self.strongly_drazin


def strongly_drazin_check(a: Matrix) -> StronglyDrazinVerdict:
    """``a`` is idempotent plus a commuting nilpotent iff ``a - a^2`` is nilpotent.

    When it is, the idempotent is ``e = a a^d``.
    """
    _square(a, "strongly Drazin check")
    if not is_nilpotent(a - a @ a):
        return StronglyDrazinVerdict(False, None, {"a-a^2 nilpotent": False})
    e = a @ drazin(a)
    checks = {
        "a-a^2 nilpotent": True,
        "e^2=e": e @ e == e,
        "ea=ae": e @ a == a @ e,
        "a-e nilpotent": bool(is_nilpotent(a - e)),
    }
    _certify(checks)
    return StronglyDrazinVerdict(True, e, checks)


# -- witness characterization ------------------------------------------------


def thm22_witness_check(a: Matrix, x: Matrix) -> bool:
    """True iff ``x`` commutes with ``a`` and ``a - a^2 x`` is nilpotent."""
    _pair(a, x, "witness check")
    return a @ x == x @ a and bool(is_nilpotent(a - a @ a @ x))


@dataclass(frozen=True)
class Thm22Refinement:
    z: Matrix
    e: Matrix
    a_d: Matrix
    checks: dict[str, bool]


def thm22_refine(a: Matrix, x: Matrix, certify_polynomial: bool = True) -> Thm22Refinement:
    """Turn a commuting witness ``x`` into the Drazin inverse of ``a``.

    With ``z = xax`` the product ``az`` is strongly Drazin; its idempotent
    ``e = (az)(az)^d`` makes ``a + 1 - e`` a unit and ``(a + 1 - e)^{-1} e``
    is ``a^d``.
    """
    _pair(a, x, "witness refinement")
    if a @ x != x @ a:
        raise HypothesisError("xa = ax")
    if not is_nilpotent(a - a @ a @ x):
        raise HypothesisError("a - a^2 x nilpotent")
    n = a.n_rows
    eye = identity(n)
    z = x @ a @ x
    az = a @ z
    e = az @ drazin(az)
    shifted = a + eye - e
    shifted_inv = try_inverse(shifted)
    checks = {
        "a-a^2z nilpotent": bool(is_nilpotent(a - a @ az)),
        "z-z^2a nilpotent": bool(is_nilpotent(z - z @ z @ a)),
        "az-(az)^2 nilpotent": bool(is_nilpotent(az - az @ az)),
        "e^2=e": e @ e == e,
        "az-e nilpotent": bool(is_nilpotent(az - e)),
        "a+1-e invertible": shifted_inv is not None,
        "a(1-e) nilpotent": bool(is_nilpotent(a @ (eye - e))),
        "ea=ae": e @ a == a @ e,
    }
    if certify_polynomial:
        checks["e in alg(az)"] = express_as_polynomial(az, e) is not None
    _certify(checks)
    a_d = shifted_inv @ e
    checks["a_d = drazin(a)"] = a_d == drazin(a)
    _certify(checks)
    return Thm22Refinement(z, e, a_d, checks)


# -- quasipolar --------------------------------------------------------------


@dataclass(frozen=True)
class QuasipolarCertificate:
    p: Matrix
    b: Matrix
    checks: dict[str, bool]


def quasipolar(a: Matrix, p: Matrix | None = None) -> QuasipolarCertificate:
    """Certify ``pa = ap``, ``a + p`` invertible, ``ap`` nilpotent and build
    ``b = (a+p)^{-1}(1-p)``.

    Without ``p`` the spectral idempotent ``a^pi`` is used. For an idempotent
    ``p`` the result ``b`` is ``a^d``; otherwise ``b`` is only certified to be
    a commuting witness.
    """
    _square(a, "quasipolar")
    forward = p is None
    res = drazin_inverse(a)
    if forward:
        p = res.a_pi
    else:
        _pair(a, p, "quasipolar")
    n = a.n_rows
    eye = identity(n)
    sum_inv = try_inverse(a + p)
    checks = {
        "pa=ap": p @ a == a @ p,
        "a+p invertible": sum_inv is not None,
        "ap nilpotent": bool(is_nilpotent(a @ p)),
    }
    if not forward:
        for name, ok in checks.items():
            if not ok:
                raise HypothesisError(name)
    _certify(checks)
    b = sum_inv @ (eye - p)
    checks["b commutes, a-a^2b nilpotent"] = thm22_witness_check(a, b)
    if p @ p == p:
        checks["b = drazin(a)"] = b == res.a_d
    _certify(checks)
    return QuasipolarCertificate(p, b, checks)


# -- scaler ------------------------------------------------------------------


@dataclass(frozen=True)
class ScalerCertificate:
    u: Matrix
    checks: dict[str, bool]


def cor23_scaler(a: Matrix) -> ScalerCertificate:
    """A unit ``u = (a + a^pi)^{-1}`` in comm(a) with ``au`` strongly Drazin."""
    _square(a, "scaler")
    res = drazin_inverse(a)
    s = a + res.a_pi
    u = try_inverse(s)
    if u is None:
        raise CertificateError(["a+a^pi invertible"])
    au = a @ u
    checks = {
        "u invertible": True,
        "ua=au": u @ a == a @ u,
        "au-(au)^2 nilpotent": bool(is_nilpotent(au - au @ au)),
        "a-a^2u nilpotent": bool(is_nilpotent(a - a @ a @ u)),
    }
    _certify(checks)
    return ScalerCertificate(u, checks)


# -- e u + w -----------------------------------------------------------------


@dataclass(frozen=True)
class EUWDecomposition:
    e: Matrix
    u: Matrix
    w: Matrix
    checks: dict[str, bool]


def euw_decompose(a: Matrix) -> EUWDecomposition:
    """``a = eu + w`` with e idempotent, u a unit, w nilpotent, all commuting.

    e = a a^d, w = a(1 - e), u = ae + (1 - e).
    """
    _square(a, "euw decomposition")
    n = a.n_rows
    eye = identity(n)
    e = a @ drazin(a)
    f = eye - e
    w = a @ f
    u = a @ e + f
    u_inv = try_inverse(u)
    checks = {
        "e^2=e": e @ e == e,
        "u invertible": u_inv is not None,
        "w nilpotent": bool(is_nilpotent(w)),
        "eu=ue": e @ u == u @ e,
        "ew=we": e @ w == w @ e,
        "uw=wu": u @ w == w @ u,
        "a=eu+w": e @ u + w == a,
    }
    _certify(checks)
    checks["a-a^2u^-1 nilpotent"] = bool(is_nilpotent(a - a @ a @ u_inv))
    _certify(checks)
    return EUWDecomposition(e, u, w, checks)


# -- two units ---------------------------------------------------------------


@dataclass(frozen=True)
class TwoUnits:
    u1: Matrix
    u2: Matrix
    checks: dict[str, bool]


def two_units(a: Matrix) -> TwoUnits:
    """Write ``a`` as a sum of two invertible matrices.

    Decompose a/2 = eu + w; then a = (2e - 1)u + u(1 + 2u^{-1}w).
    """
    _square(a, "two-units decomposition")
    half = euw_decompose(a / 2)
    n = a.n_rows
    eye = identity(n)
    e, u, w = half.e, half.u, half.w
    u1 = (e * 2 - eye) @ u
    u2 = u @ (eye + inverse(u) @ w * 2)
    checks = {
        "u1 invertible": _invertible(u1),
        "u2 invertible": _invertible(u2),
        "u1+u2=a": u1 + u2 == a,
    }
    _certify(checks)
    return TwoUnits(u1, u2, checks)


# -- corners -----------------------------------------------------------------


@dataclass(frozen=True)
class CornerData:
    e: Matrix
    corner_inverse: Matrix
    a_d: Matrix
    checks: dict[str, bool]


def corner_characterize(a: Matrix, e: Matrix | None = None) -> CornerData:
    """Split ``a`` by a commuting idempotent into an invertible corner ``eae``
    and a nilpotent corner ``(1-e)a(1-e)``; reconstruct ``a^d = e(eae+1-e)^{-1}``.
    """
    _square(a, "corner characterization")
    forward = e is None
    n = a.n_rows
    eye = identity(n)
    if forward:
        e = a @ drazin(a)
    else:
        _pair(a, e, "corner characterization")
        if e @ e != e:
            raise HypothesisError("e^2 = e")
        if e @ a != a @ e:
            raise HypothesisError("ea = ae")
    f = eye - e
    shifted = e @ a @ e + f
    shifted_inv = try_inverse(shifted)
    checks = {
        "e^2=e": e @ e == e,
        "ea=ae": e @ a == a @ e,
        "eae+1-e invertible": shifted_inv is not None,
        "(1-e)a(1-e) nilpotent": bool(is_nilpotent(f @ a @ f)),
    }
    if not forward:
        for name in ("eae+1-e invertible", "(1-e)a(1-e) nilpotent"):
            if not checks[name]:
                raise HypothesisError(name)
    _certify(checks)
    corner_inverse = e @ shifted_inv @ e
    a_d = e @ shifted_inv
    checks["corner inverse"] = corner_inverse @ a @ e == e and e @ a @ corner_inverse == e
    checks["a_d = drazin(a)"] = a_d == drazin(a)
    _certify(checks)
    return CornerData(e, corner_inverse, a_d, checks)


# -- invariant subspaces -----------------------------------------------------


@dataclass(frozen=True)
class Splitting:
    basis_P: list[Matrix]
    basis_Q: list[Matrix]
    restriction_P: Matrix
    restriction_Q: Matrix
    checks: dict[str, bool]

    @property
    def change_of_basis(self) -> Matrix:
        return hstack(self.basis_P + self.basis_Q)


def _restriction(a: Matrix, basis: list[Matrix], n: int) -> tuple[Matrix, bool]:
    if not basis:
        return Matrix(0, 0, ()), True
    m = hstack(basis)
    r = solve(m, a @ m)
    if r is None:
        return Matrix(0, 0, ()), False
    return r, True


def invariant_splitting(a: Matrix) -> Splitting:
    """Split the column space as P ⊕ Q with ``a`` invertible on P and nilpotent on Q.

    P is spanned by the columns of e = a a^d and Q by those of 1 - e; an empty
    side gets a 0-by-0 restriction, which counts as both invertible and
    nilpotent.
    """
    _square(a, "invariant splitting")
    n = a.n_rows
    e = a @ drazin(a)
    bp = column_space_basis(e)
    bq = column_space_basis(identity(n) - e)
    rp, p_inv = _restriction(a, bp, n)
    rq, q_inv = _restriction(a, bq, n)
    checks = {
        "dim P + dim Q = n": len(bp) + len(bq) == n,
        "aP in P": p_inv,
        "aQ in Q": q_inv,
    }
    _certify(checks)
    s = hstack(bp + bq)
    s_inv = try_inverse(s)
    checks["P+Q direct"] = s_inv is not None
    checks["a|P invertible"] = rp.n_rows == 0 or _invertible(rp)
    checks["a|Q nilpotent"] = bool(is_nilpotent(rq))
    _certify(checks)
    checks["reassembly = a"] = s @ direct_sum(rp, rq) @ s_inv == a
    _certify(checks)
    return Splitting(bp, bq, rp, rq, checks)
