from __future__ import annotations

import json
import random

import pytest

from gdrazin import (
    GenSpec,
    GenerationError,
    Matrix,
    ShapeError,
    determinant,
    drazin,
    gen_element,
    gen_theorem_instance,
    generate,
    identity,
    is_nilpotent,
    rank,
    similarity_conjugate,
    zero,
)
from gdrazin import instance_gen
from gdrazin.instance_gen import ELEMENT_KINDS, KINDS, THEOREM_KINDS, derive_seed, unimodular
from util import M


def _dump(out) -> str:
    if isinstance(out, Matrix):
        return out.dumps()
    if isinstance(out, tuple):
        return json.dumps([m.to_json_obj() for m in out])
    return json.dumps({k: m.to_json_obj() for k, m in out.items()})


@pytest.mark.parametrize("kind", KINDS)
def test_deterministic_bytes(kind):
    for i in range(5):
        spec = GenSpec(derive_seed(77, i), 1 + i, 3, kind)
        assert _dump(generate(spec)) == _dump(generate(spec))


def test_seed_derivation_is_stable():
    assert derive_seed(0, 0) == derive_seed(0, 0)
    assert derive_seed(0, 0) != derive_seed(0, 1) != derive_seed(1, 0)
    assert 0 <= derive_seed(123, 456) < 2 ** 64
    # frozen value: the documented blake2b derivation
    import hashlib

    expect = int.from_bytes(hashlib.blake2b(b"42:7", digest_size=8).digest(), "big")
    assert derive_seed(42, 7) == expect


def test_spec_validation():
    with pytest.raises(ValueError, match="unknown instance kind"):
        GenSpec(1, 2, 3, "nonsense")
    with pytest.raises(ValueError):
        GenSpec(1, 0, 3, "unit")
    with pytest.raises(ValueError):
        GenSpec(-1, 2, 3, "unit")
    with pytest.raises(ValueError):
        gen_element(GenSpec(1, 2, 3, "thm33"))
    with pytest.raises(ValueError):
        gen_theorem_instance(GenSpec(1, 2, 3, "unit"))


@pytest.mark.parametrize("i", range(25))
def test_element_properties(i):
    n = 1 + i % 6
    seed = derive_seed(5, i)
    nil = gen_element(GenSpec(seed, n, 3, "nilpotent"))
    assert (nil ** n).is_zero()
    e = gen_element(GenSpec(seed, n, 3, "idempotent"))
    assert e @ e == e
    u = gen_element(GenSpec(seed, n, 3, "unit"))
    assert determinant(u) != 0
    a, x = gen_element(GenSpec(seed, n, 3, "commuting_witness"))
    assert a @ x == x @ a


def test_idempotent_rank_is_trace():
    ranks = set()
    for i in range(40):
        e = gen_element(GenSpec(derive_seed(9, i), 4, 3, "idempotent"))
        assert e.trace() == rank(e)
        ranks.add(rank(e))
    assert ranks == {0, 1, 2, 3, 4}


def test_entries_bounded_before_conjugation():
    rng = random.Random(0)
    for _ in range(20):
        u = gen_element(GenSpec(rng.getrandbits(64), 3, 1, "nilpotent"))
        assert is_nilpotent(u)


def test_degenerate_draws_occur():
    zeros = ranks0 = 0
    for i in range(300):
        spec = GenSpec(derive_seed(1, i), 2, 3, "idempotent")
        if gen_element(spec).is_zero():
            ranks0 += 1
        if gen_element(GenSpec(spec.seed, 2, 1, "nilpotent")).is_zero():
            zeros += 1
    assert ranks0 > 0 and zeros > 0


def test_complex_entries_occur():
    seen = any(not gen_element(GenSpec(derive_seed(2, i), 3, 3, "unit")).is_real for i in range(100))
    assert seen


@pytest.mark.parametrize("kind", THEOREM_KINDS)
@pytest.mark.parametrize("i", range(10))
def test_theorem_instances_satisfy_hypotheses(kind, i):
    inst = gen_theorem_instance(GenSpec(derive_seed(8, i), 1 + i % 4, 3, kind))
    if kind == "pq_zero":
        assert (inst["p"] @ inst["q"]).is_zero()
        return
    a, b, c = inst["a"], inst["b"], inst["c"]
    n = a.n_rows
    a_d = drazin(a)
    a_pi = identity(n) - a @ a_d
    bc = b @ c
    if kind == "thm33":
        assert a @ a == a and a @ b == b
    elif kind == "lem35":
        assert c @ a @ a_d == c and a_d @ bc == bc @ a_d
    elif kind == "thm36":
        assert (bc @ a_pi).is_zero() and a_d @ bc == bc @ a_d
    else:
        assert (a_pi @ bc).is_zero() and a @ bc == bc @ a


def test_pq_zero_can_emit_worked_pattern():
    # the worked pair has p a rank-one idempotent and q a nonzero square-zero
    # matrix with qp != 0
    for i in range(2000):
        inst = gen_theorem_instance(GenSpec(derive_seed(4, i), 2, 1, "pq_zero"))
        p, q = inst["p"], inst["q"]
        if p @ p == p and rank(p) == 1 and not q.is_zero() and (q @ q).is_zero() and not (q @ p).is_zero():
            return
    pytest.fail("no instance of the worked shape in 2000 draws")


def test_generation_failure_is_loud(monkeypatch):
    monkeypatch.setattr(instance_gen, "is_nilpotent", lambda a: False)
    with pytest.raises(GenerationError, match="re-verification"):
        gen_element(GenSpec(1, 3, 3, "nilpotent"))


@pytest.mark.parametrize("seed", range(20))
def test_similarity_conjugate(seed):
    a = gen_element(GenSpec(derive_seed(6, seed), 1 + seed % 5, 3, "drazin_structured"))
    s, s_inv, b = similarity_conjugate(a, seed)
    assert s @ s_inv == identity(a.n_rows)
    assert determinant(s) in (1, -1)
    assert b == s @ a @ s_inv
    assert drazin(b) == s @ drazin(a) @ s_inv


def test_similarity_identity_when_no_ops():
    s, s_inv = unimodular(random.Random(0), 3, ops=0)
    assert s == s_inv == identity(3)
    seed = next(k for k in range(1000) if random.Random(k).randint(0, 6) == 0)
    a = M([1, 2, 0], [0, 0, 1], [0, 0, 0])
    s, _, b = similarity_conjugate(a, seed)
    assert s == identity(3) and b == a
    with pytest.raises(ShapeError):
        similarity_conjugate(zero(2, 3), 0)


def test_element_kinds_listed():
    assert set(ELEMENT_KINDS) | set(THEOREM_KINDS) == set(KINDS)
