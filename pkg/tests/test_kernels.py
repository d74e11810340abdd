from __future__ import annotations

import os
import random
import subprocess
import sys
from fractions import Fraction as F

import pytest

from gdrazin import _kernels, _pykernels

ckernels = pytest.importorskip("gdrazin._ckernels")


def _entry(rng, big):
    if rng.random() < 0.3:
        return F(0)
    num = rng.randint(-(10 ** 30), 10 ** 30) if big else rng.randint(-9, 9)
    return F(num, rng.randint(1, 10 ** 25 if big else 6))


def _flat(rng, size, big, cplx):
    re = [_entry(rng, big) for _ in range(size)]
    im = [_entry(rng, big) for _ in range(size)] if cplx else None
    return re, im


def _norm(im, size):
    return None if im is None or not any(im) else list(im)


@pytest.mark.parametrize("seed", range(40))
def test_matmul_backends_agree(seed):
    rng = random.Random(seed)
    n, k, m = rng.randint(1, 6), rng.randint(1, 6), rng.randint(1, 6)
    big, cplx = seed % 3 == 0, seed % 2 == 1
    a = _flat(rng, n * k, big, cplx)
    b = _flat(rng, k * m, big, rng.random() < 0.5)
    py_re, py_im = _pykernels.matmul(*a, *b, n, k, m)
    c_re, c_im = ckernels.matmul(*a, *b, n, k, m)
    assert list(py_re) == list(c_re)
    assert _norm(py_im, n * m) == _norm(c_im, n * m)


@pytest.mark.parametrize("seed", range(40))
def test_rref_backends_agree(seed):
    rng = random.Random(1000 + seed)
    rows, cols = rng.randint(1, 6), rng.randint(1, 7)
    re, im = _flat(rng, rows * cols, seed % 3 == 0, seed % 2 == 1)
    if rng.random() < 0.5 and rows > 1:
        # force a dependent row
        re[cols:2 * cols] = [2 * x for x in re[:cols]]
        if im is not None:
            im[cols:2 * cols] = [2 * x for x in im[:cols]]
    pc = rng.randint(0, cols)
    py = _pykernels.rref(re, im, rows, cols, pc)
    c = ckernels.rref(re, im, rows, cols, pc)
    assert list(py[0]) == list(c[0])
    assert _norm(py[1], rows * cols) == _norm(c[1], rows * cols)
    assert list(py[2]) == list(c[2])
    assert tuple(py[3]) == tuple(c[3])


def test_outputs_are_canonical_fractions():
    re, _ = ckernels.matmul([F(1, 3), F(2, 3)], None, [F(3, 4), F(9, 8)], None, 1, 2, 1)
    (x,) = re
    assert isinstance(x, F) and x == F(1, 1) and x.denominator == 1
    assert hash(x) == hash(1)


def test_backend_selected():
    assert _kernels.BACKEND == "gmp"


def test_pure_python_fallback_runs():
    env = dict(os.environ, GDRAZIN_PURE_PYTHON="1")
    code = (
        "from gdrazin import BACKEND, Matrix, drazin;"
        "a = Matrix.from_rows([[2, 1], [0, 0]]);"
        "print(BACKEND, drazin(a))"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split("\n")[0] == "python [1/2 1/4]"
