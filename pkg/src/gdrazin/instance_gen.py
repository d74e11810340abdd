"""Seeded generation of exact structured instances.

Randomness comes from :class:`random.Random` (Mersenne Twister MT19937)
seeded with the spec's 64-bit integer seed. Trial ``i`` of a run with master
seed ``s`` uses ``derive_seed(s, i)``, the first 8 bytes of
``blake2b(f"{s}:{i}")`` read big-endian, so corpora do not depend on how
trials are scheduled.

Raw entries are integers in ``[-entry_bound, entry_bound]``; roughly one
instance in eight draws Gaussian-integer entries instead. Conjugations use
unimodular integer matrices built from elementary row operations, so the
inverse is exact and small.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import asdict, dataclass

from .drazin import drazin
from .errors import GenerationError, ShapeError
from .exactnum import GaussianRational
from .matrix import (
    Matrix,
    block,
    determinant,
    direct_sum,
    identity,
    is_nilpotent,
    rank,
    rref_decompose,
    zero,
)

__all__ = [
    "ELEMENT_KINDS",
    "THEOREM_KINDS",
    "KINDS",
    "GenSpec",
    "derive_seed",
    "gen_element",
    "gen_theorem_instance",
    "generate",
    "similarity_conjugate",
    "unimodular",
]

ELEMENT_KINDS = ("nilpotent", "idempotent", "unit", "drazin_structured", "commuting_witness")
THEOREM_KINDS = ("thm33", "lem35", "thm36", "cor37", "pq_zero")
KINDS = ELEMENT_KINDS + THEOREM_KINDS

_COMPLEX_RATE = 0.125


@dataclass(frozen=True)
class GenSpec:
    seed: int
    size: int
    entry_bound: int = 3
    kind: str = "drazin_structured"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown instance kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.size < 1:
            raise ValueError(f"size must be positive, got {self.size}")
        if self.entry_bound < 1:
            raise ValueError(f"entry_bound must be positive, got {self.entry_bound}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")

    def to_json_obj(self) -> dict:
        return asdict(self)


def derive_seed(master: int, index: int) -> int:
    digest = hashlib.blake2b(f"{master}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


class _Draw:
    """Entry sampler bound to one instance."""

    def __init__(self, rng: random.Random, bound: int, allow_complex: bool = True):
        self.rng = rng
        self.bound = bound
        self.cplx = allow_complex and rng.random() < _COMPLEX_RATE

    def scalar(self, nonzero: bool = False):
        b = self.bound
        while True:
            re = self.rng.randint(-b, b)
            im = self.rng.randint(-b, b) if self.cplx else 0
            if re or im or not nonzero:
                return GaussianRational(re, im) if im else re

    def matrix(self, rows: int, cols: int) -> Matrix:
        return Matrix.from_entries(rows, cols, [self.scalar() for _ in range(rows * cols)])

    def strictly_upper(self, n: int) -> Matrix:
        return Matrix.from_entries(n, n, [self.scalar() if j > i else 0 for i in range(n) for j in range(n)])

    def poly(self, a: Matrix) -> Matrix:
        """Random polynomial in ``a`` of degree below its size."""
        n = a.n_rows
        total = zero(n)
        p = identity(n)
        for _ in range(max(n, 1)):
            total = total + p * self.scalar()
            p = p @ a
        return total


def unimodular(rng: random.Random, n: int, ops: int | None = None) -> tuple[Matrix, Matrix]:
    """(S, S^{-1}) from elementary +-1 row additions and row sign flips."""
    if ops is None:
        ops = rng.randint(0, 2 * n)
    s = [[int(i == j) for j in range(n)] for i in range(n)]
    s_inv = [row[:] for row in s]
    for _ in range(ops):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            # row i of S negated; column i of S^{-1} negated
            s[i] = [-x for x in s[i]]
            for row in s_inv:
                row[i] = -row[i]
        else:
            m = rng.choice((-1, 1))
            # S <- E S with E = I + m e_ij; S^{-1} <- S^{-1} E^{-1}
            s[i] = [x + m * y for x, y in zip(s[i], s[j])]
            for row in s_inv:
                row[j] -= m * row[i]
    return Matrix.from_rows(s), Matrix.from_rows(s_inv)


def similarity_conjugate(a: Matrix, seed: int) -> tuple[Matrix, Matrix, Matrix]:
    """(S, S^{-1}, S a S^{-1}) for a seeded unimodular integer S."""
    if not a.is_square:
        raise ShapeError(f"conjugation needs a square matrix, got {a.n_rows}x{a.n_cols}")
    s, s_inv = unimodular(random.Random(seed), a.n_rows)
    return s, s_inv, s @ a @ s_inv


def _unit(draw: _Draw, n: int) -> Matrix:
    rng = draw.rng
    u = [[GaussianRational(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(rng.randint(n, 3 * n) if n else 0):
        i = rng.randrange(n)
        j = rng.randrange(n)
        m = draw.scalar(nonzero=True)
        if i == j:
            u[i] = [x * m for x in u[i]]
        else:
            u[i] = [x + m * y for x, y in zip(u[i], u[j])]
    return Matrix.from_rows(u) if n else identity(0)


def _split_rank(rng: random.Random, n: int) -> int:
    return rng.randint(0, n)


def _structured_parts(draw: _Draw, n: int):
    r = _split_rank(draw.rng, n)
    d = _unit(draw, r)
    nil = draw.strictly_upper(n - r)
    return r, d, nil


def _fail(spec: GenSpec, what: str):
    raise GenerationError(f"{spec.kind} instance (seed {spec.seed}, size {spec.size}) failed re-verification: {what}")


def gen_element(spec: GenSpec):
    """A single structured matrix, or ``(a, x)`` for ``commuting_witness``."""
    if spec.kind not in ELEMENT_KINDS:
        raise ValueError(f"{spec.kind!r} is not an element kind; expected one of {', '.join(ELEMENT_KINDS)}")
    rng = random.Random(spec.seed)
    draw = _Draw(rng, spec.entry_bound)
    n = spec.size
    s, s_inv = unimodular(rng, n)
    kind = spec.kind

    if kind == "nilpotent":
        a = s @ draw.strictly_upper(n) @ s_inv
        if not is_nilpotent(a):
            _fail(spec, "N^n = 0")
        return a
    if kind == "idempotent":
        r = _split_rank(rng, n)
        core = block([[identity(r), draw.matrix(r, n - r)], [zero(n - r, r), zero(n - r)]])
        a = s @ core @ s_inv
        if a @ a != a or rank(a) != r:
            _fail(spec, "E^2 = E with rank r")
        return a
    if kind == "unit":
        a = _unit(draw, n)
        if not determinant(a):
            _fail(spec, "det != 0")
        return a
    if kind == "drazin_structured":
        _, d, nil = _structured_parts(draw, n)
        return s @ direct_sum(d, nil) @ s_inv
    # commuting_witness
    _, d, nil = _structured_parts(draw, n)
    a = s @ direct_sum(d, nil) @ s_inv
    x = draw.poly(a)
    if a @ x != x @ a:
        _fail(spec, "ax = xa")
    return a, x


def _conjugate(s: Matrix, s_inv: Matrix, *mats: Matrix) -> tuple[Matrix, ...]:
    return tuple(s @ m @ s_inv for m in mats)


def _blocks(r: int, n: int, m11, m12, m21, m22) -> Matrix:
    k = n - r
    return block([
        [m11 if m11 is not None else zero(r), m12 if m12 is not None else zero(r, k)],
        [m21 if m21 is not None else zero(k, r), m22 if m22 is not None else zero(k)],
    ])


def _check_theorem(spec: GenSpec, inst: dict[str, Matrix]):
    kind = spec.kind
    if kind == "pq_zero":
        if not (inst["p"] @ inst["q"]).is_zero():
            _fail(spec, "PQ = 0")
        return
    a, b, c = inst["a"], inst["b"], inst["c"]
    if kind == "thm33":
        if a @ a != a:
            _fail(spec, "a^2 = a")
        if a @ b != b:
            _fail(spec, "ab = b")
        return
    a_d = drazin(a)
    a_pi = identity(a.n_rows) - a @ a_d
    bc = b @ c
    if kind == "lem35":
        if c @ a @ a_d != c:
            _fail(spec, "c a a^d = c")
        if a_d @ bc != bc @ a_d:
            _fail(spec, "a^d bc = bc a^d")
    elif kind == "thm36":
        if not (bc @ a_pi).is_zero():
            _fail(spec, "bc a^pi = 0")
        if a_d @ bc != bc @ a_d:
            _fail(spec, "a^d bc = bc a^d")
    elif kind == "cor37":
        if not (a_pi @ bc).is_zero():
            _fail(spec, "a^pi bc = 0")
        if a @ bc != bc @ a:
            _fail(spec, "a bc = bc a")


def gen_theorem_instance(spec: GenSpec) -> dict[str, Matrix]:
    """Named matrices satisfying the hypotheses of ``spec.kind``.

    ``thm33`` yields a, b, c with a idempotent and ab = b. ``lem35``,
    ``thm36`` and ``cor37`` work in the basis where a = D (+) N and pick b, c
    block-structured there. ``pq_zero`` yields p, q with pq = 0.
    """
    if spec.kind not in THEOREM_KINDS:
        raise ValueError(f"{spec.kind!r} is not a theorem kind; expected one of {', '.join(THEOREM_KINDS)}")
    rng = random.Random(spec.seed)
    draw = _Draw(rng, spec.entry_bound)
    n = spec.size
    s, s_inv = unimodular(rng, n)
    kind = spec.kind

    if kind == "thm33":
        r = _split_rank(rng, n)
        e = block([[identity(r), draw.matrix(r, n - r)], [zero(n - r, r), zero(n - r)]])
        a, b0 = _conjugate(s, s_inv, e, draw.matrix(n, n))
        inst = {"a": a, "b": a @ b0, "c": draw.matrix(n, n)}
    elif kind == "pq_zero":
        r = rng.randint(0, n - 1) if rng.random() < 0.9 else n
        p = draw.matrix(n, r) @ draw.matrix(r, n) if r else zero(n)
        kernel = rref_decompose(p).kernel_basis
        if kernel:
            k = rng.randint(1, len(kernel))
            basis = block([kernel[:k]])
            q = basis @ draw.matrix(k, n)
        else:
            q = zero(n)
        p, q = _conjugate(s, s_inv, p, q)
        inst = {"p": p, "q": q}
    else:
        r, d, nil = _structured_parts(draw, n)
        k = n - r
        a_t = direct_sum(d, nil)
        if kind == "lem35":
            if rng.random() < 0.5:
                # c = [[C11, 0], [0, 0]], b = [[B11, B12], [0, B22]]
                b_t = _blocks(r, n, draw.poly(d), draw.matrix(r, k), None, draw.matrix(k, k))
                c_t = _blocks(r, n, draw.poly(d), None, None, None)
            else:
                # c = [[C11, 0], [C21, 0]], b = [[B11, 0], [0, 0]]
                b_t = _blocks(r, n, draw.poly(d), None, None, None)
                c_t = _blocks(r, n, draw.poly(d), None, draw.matrix(k, r), None)
        else:
            if rng.random() < 0.5:
                # bc = [[B11 C11, 0], [0, 0]] with c free below
                b_t = _blocks(r, n, draw.poly(d), None, None, None)
                c_t = _blocks(r, n, draw.poly(d), None, draw.matrix(k, r), draw.matrix(k, k))
            else:
                b_t = _blocks(r, n, draw.poly(d), draw.matrix(r, k), None, draw.matrix(k, k))
                c_t = _blocks(r, n, draw.poly(d), None, None, None)
        a, b, c = _conjugate(s, s_inv, a_t, b_t, c_t)
        inst = {"a": a, "b": b, "c": c}
    _check_theorem(spec, inst)
    return inst


def generate(spec: GenSpec):
    """Dispatch on ``spec.kind`` to :func:`gen_element` or :func:`gen_theorem_instance`."""
    if spec.kind in ELEMENT_KINDS:
        return gen_element(spec)
    return gen_theorem_instance(spec)
