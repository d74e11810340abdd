"""Drazin inverse, index and spectral idempotent, plus the transfer rules
(Cline's formula, commuting products, the PQ = 0 additive formula) that the
block-matrix constructions are assembled from.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CertificateError, HypothesisError, ShapeError
from .matrix import (
    Matrix,
    NilpotencyVerdict,
    express_as_polynomial,
    full_rank_factorize,
    identity,
    is_nilpotent,
    try_inverse,
    zero,
)

__all__ = [
    "DrazinResult",
    "DrazinAxioms",
    "drazin_inverse",
    "drazin",
    "verify_drazin_axioms",
    "cline_transfer",
    "commuting_product_drazin",
    "additive_pq_zero",
    "spectral_idempotent",
]


@dataclass(frozen=True)
class DrazinResult:
    """``a_d`` is the Drazin inverse, ``a_pi = I - a a_d`` the spectral idempotent."""

    a_d: Matrix
    index: int
    a_pi: Matrix


def _drazin_rec(a: Matrix) -> tuple[Matrix, int]:
    n = a.n_rows
    if a.is_zero():
        return a, 1
    inv = try_inverse(a)
    if inv is not None:
        return inv, 0
    b, c = full_rank_factorize(a)
    # CB is r-by-r with r = rank(a) < n, so the recursion shrinks.
    inner, k = _drazin_rec(c @ b)
    # Cline: (BC)^d = B ((CB)^d)^2 C; rank(a^{j+1}) = rank((CB)^j) shifts the index.
    return b @ (inner @ inner) @ c, k + 1


def drazin_inverse(a: Matrix) -> DrazinResult:
    """Drazin inverse of a square matrix by full-rank-factorization recursion.

    Invertible matrices have index 0 and a_d = a^{-1}; a zero matrix has
    index 1 and a_d = 0.
    """
    if not a.is_square:
        raise ShapeError(f"Drazin inverse needs a square matrix, got {a.n_rows}x{a.n_cols}")
    if a.n_rows == 0:
        return DrazinResult(a, 0, a)
    a_d, k = _drazin_rec(a)
    return DrazinResult(a_d, k, identity(a.n_rows) - a @ a_d)


def drazin(a: Matrix) -> Matrix:
    """Shorthand for ``drazin_inverse(a).a_d``."""
    return drazin_inverse(a).a_d


def spectral_idempotent(a: Matrix, a_d: Matrix | None = None) -> Matrix:
    if a_d is None:
        a_d = drazin(a)
    return identity(a.n_rows) - a @ a_d


@dataclass(frozen=True)
class DrazinAxioms:
    commutes: bool
    reflexive: bool
    residual: NilpotencyVerdict

    @property
    def ok(self) -> bool:
        return self.commutes and self.reflexive and self.residual.nilpotent

    def __bool__(self):
        return self.ok

    def as_checks(self) -> dict[str, bool]:
        return {
            "ab=ba": self.commutes,
            "b=bab": self.reflexive,
            "a-a^2b nilpotent": self.residual.nilpotent,
        }


def verify_drazin_axioms(a: Matrix, b: Matrix) -> DrazinAxioms:
    """Check ab = ba, b = bab and nilpotency of a - a^2 b, independently."""
    if not a.is_square or a.shape != b.shape:
        raise ShapeError(f"axiom check needs equal square shapes, got {a.shape} and {b.shape}")
    ab = a @ b
    return DrazinAxioms(
        commutes=ab == b @ a,
        reflexive=b @ ab == b,
        residual=is_nilpotent(a - a @ ab),
    )


def _check_pair(a: Matrix, b: Matrix, what: str):
    if not a.is_square or a.shape != b.shape:
        raise ShapeError(f"{what} needs equal square shapes, got {a.shape} and {b.shape}")


def cline_transfer(a: Matrix, b: Matrix, ab_d: Matrix | None = None) -> Matrix:
    """``(ba)^d`` from ``(ab)^d`` by Cline's formula ``b ((ab)^d)^2 a``.

    Factors may be rectangular (a: m-by-n, b: n-by-m) as long as both
    products are square. ``ab_d`` may be supplied when already known.
    """
    if a.n_cols != b.n_rows or b.n_cols != a.n_rows:
        raise ShapeError(f"Cline transfer needs a: m-by-n and b: n-by-m, got {a.shape} and {b.shape}")
    if ab_d is None:
        ab_d = drazin(a @ b)
    return b @ (ab_d @ ab_d) @ a


def commuting_product_drazin(
    a: Matrix,
    b: Matrix,
    a_d: Matrix | None = None,
    b_d: Matrix | None = None,
    certify: bool = True,
) -> Matrix:
    """``(ab)^d = a^d b^d`` for commuting ``a`` and ``b``.

    With ``certify`` the side fact a^d b = b a^d is confirmed by writing a^d
    as a polynomial in a.
    """
    _check_pair(a, b, "commuting product")
    if a @ b != b @ a:
        raise HypothesisError("ab = ba")
    if a_d is None:
        a_d = drazin(a)
    if b_d is None:
        b_d = drazin(b)
    if certify:
        failed = []
        if express_as_polynomial(a, a_d) is None:
            failed.append("a^d in alg(a)")
        if a_d @ b != b @ a_d:
            failed.append("a^d b = b a^d")
        if failed:
            raise CertificateError(failed)
    return a_d @ b_d


def additive_pq_zero(
    p: Matrix,
    q: Matrix,
    p_d: Matrix | None = None,
    q_d: Matrix | None = None,
) -> Matrix:
    """``(p+q)^d`` when ``pq = 0``.

    (p+q)^d = sum_i (q^d)^{i+1} p^i p^pi + sum_i q^pi q^i (p^d)^{i+1}; both
    sums stop once the powers of p p^pi and q^pi q vanish (after at most
    n terms).
    """
    _check_pair(p, q, "additive formula")
    if not (p @ q).is_zero():
        raise HypothesisError("pq = 0")
    n = p.n_rows
    if p_d is None:
        p_d = drazin(p)
    if q_d is None:
        q_d = drazin(q)
    eye = identity(n)
    p_pi = eye - p @ p_d
    q_pi = eye - q @ q_d

    total = zero(n)
    # first sum: (q^d)^{i+1} (p^i p^pi)
    left = q_d
    right = p_pi
    for _ in range(n + 1):
        if right.is_zero() or left.is_zero():
            break
        total = total + left @ right
        left = left @ q_d
        right = p @ right
    # second sum: (q^pi q^i) (p^d)^{i+1}
    left = q_pi
    right = p_d
    for _ in range(n + 1):
        if left.is_zero() or right.is_zero():
            break
        total = total + left @ right
        left = left @ q
        right = right @ p_d
    return total
