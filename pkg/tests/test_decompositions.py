from __future__ import annotations

from fractions import Fraction as F

import pytest

from gdrazin import (
    GenSpec,
    HypothesisError,
    ShapeError,
    corner_characterize,
    cor23_scaler,
    diag,
    drazin,
    euw_decompose,
    express_as_polynomial,
    gen_element,
    identity,
    invariant_splitting,
    inverse,
    is_nilpotent,
    quasipolar,
    strongly_drazin_check,
    thm22_refine,
    thm22_witness_check,
    two_units,
    verify_drazin_axioms,
    zero,
)
from gdrazin.instance_gen import derive_seed
from util import M

A21 = M([2, 1], [0, 0])
A21_D = M([F(1, 2), F(1, 4)], [0, 0])
NIL = M([0, 1, 2], [0, 0, 3], [0, 0, 0])


def test_strongly_drazin_examples():
    v = strongly_drazin_check(M([1, 1], [0, 0]))
    assert v and v.e == M([1, 1], [0, 0])
    v = strongly_drazin_check(M([1, 1], [0, 1]))
    assert v and v.e == identity(2)
    assert is_nilpotent(M([1, 1], [0, 1]) - v.e)
    assert not strongly_drazin_check(diag(2, 0))


def test_witness_check_examples():
    assert thm22_witness_check(diag(2, 0), diag(F(1, 2), 0))
    assert not thm22_witness_check(diag(2, 0), zero(2))
    assert thm22_witness_check(A21, A21_D)


def test_refine_examples():
    r = thm22_refine(diag(2, 0), diag(F(1, 2), 0))
    assert (r.z, r.e, r.a_d) == (diag(F(1, 2), 0), diag(1, 0), diag(F(1, 2), 0))
    r = thm22_refine(NIL, zero(3))
    assert (r.z, r.e, r.a_d) == (zero(3), zero(3), zero(3))
    assert thm22_refine(A21, A21_D).a_d == A21_D


def test_refine_rejects_bad_witness():
    with pytest.raises(HypothesisError) as info:
        thm22_refine(diag(2, 0), zero(2))
    assert info.value.condition == "a - a^2 x nilpotent"
    with pytest.raises(HypothesisError) as info:
        thm22_refine(A21, M([0, 0], [1, 0]))
    assert info.value.condition == "xa = ax"


def test_quasipolar_examples():
    c = quasipolar(A21)
    assert c.p == M([0, F(-1, 2)], [0, 1])
    assert (A21 @ c.p).is_zero()
    assert c.b == A21_D
    assert quasipolar(diag(2, 0), diag(0, 1)).b == diag(F(1, 2), 0)
    a = M([2, 1], [1, 1])
    assert quasipolar(a, zero(2)).b == inverse(a)


def test_quasipolar_names_failed_condition():
    with pytest.raises(HypothesisError) as info:
        quasipolar(diag(2, 0), zero(2))
    assert info.value.condition == "a+p invertible"
    with pytest.raises(HypothesisError) as info:
        quasipolar(diag(2, 0), M([0, 1], [0, 1]))
    assert info.value.condition == "pa=ap"
    with pytest.raises(HypothesisError) as info:
        quasipolar(diag(2, 0), diag(1, 1))
    assert info.value.condition == "ap nilpotent"


def test_quasipolar_non_idempotent_p():
    # p = a^pi + a nilpotent commuting piece: b is a witness but not claimed to be a^d
    a = M([1, 0, 0], [0, 0, 1], [0, 0, 0])
    p = diag(0, 1, 1) + M([0, 0, 0], [0, 0, 1], [0, 0, 0])
    c = quasipolar(a, p)
    assert thm22_witness_check(a, c.b)
    assert c.p @ c.p != c.p


def test_scaler_examples():
    c = cor23_scaler(diag(2, 0))
    assert c.u == diag(F(1, 2), 1)
    assert diag(2, 0) @ c.u == diag(1, 0)
    assert cor23_scaler(M([2])).u == M([F(1, 2)])
    c = cor23_scaler(NIL)
    assert c.u == inverse(NIL + identity(3))
    assert is_nilpotent(NIL @ c.u)


def test_euw_examples():
    d = euw_decompose(diag(2, 0))
    assert (d.e, d.u, d.w) == (diag(1, 0), diag(2, 1), zero(2))
    a = M([2, 0, 0], [0, 0, 1], [0, 0, 0])
    d = euw_decompose(a)
    assert (d.e, d.u, d.w) == (diag(1, 0, 0), diag(2, 1, 1), M([0, 0, 0], [0, 0, 1], [0, 0, 0]))
    d = euw_decompose(NIL)
    assert (d.e, d.u, d.w) == (zero(3), identity(3), NIL)


def test_two_units_examples():
    t = two_units(zero(3))
    assert (t.u1, t.u2) == (-identity(3), identity(3))
    t = two_units(diag(2, 0))
    assert (t.u1, t.u2) == (diag(1, -1), identity(2))
    t = two_units(M([0, 1], [0, 0]))
    assert (t.u1, t.u2) == (-identity(2), M([1, 1], [0, 1]))


def test_corner_examples():
    c = corner_characterize(A21)
    assert c.e == M([1, F(1, 2)], [0, 0])
    f = identity(2) - c.e
    assert (f @ A21 @ f).is_zero() and (f @ A21).is_zero()
    c = corner_characterize(diag(3, 0), diag(1, 0))
    assert c.a_d == diag(F(1, 3), 0)
    assert c.e @ c.corner_inverse @ c.e == diag(F(1, 3), 0)
    a = M([1, 2], [3, 4])
    assert corner_characterize(a, identity(2)).a_d == inverse(a)


def test_corner_rejects():
    with pytest.raises(HypothesisError) as info:
        corner_characterize(diag(3, 0), M([1, 1], [0, 0]))
    assert info.value.condition == "ea = ae"
    with pytest.raises(HypothesisError) as info:
        corner_characterize(diag(3, 0), diag(2, 0))
    assert info.value.condition == "e^2 = e"
    with pytest.raises(HypothesisError) as info:
        corner_characterize(diag(3, 0), identity(2))
    assert info.value.condition == "eae+1-e invertible"
    with pytest.raises(HypothesisError) as info:
        corner_characterize(diag(3, 1), diag(1, 0))
    assert info.value.condition == "(1-e)a(1-e) nilpotent"


def test_splitting_examples():
    s = invariant_splitting(diag(2, 0))
    assert s.basis_P == [M([1], [0])] and s.basis_Q == [M([0], [1])]
    assert s.restriction_P == M([2]) and s.restriction_Q == M([0])
    s = invariant_splitting(NIL)
    assert s.basis_P == [] and s.restriction_P.shape == (0, 0)
    assert s.restriction_Q == NIL
    a = M([1, 2], [3, 4])
    s = invariant_splitting(a)
    assert s.basis_Q == [] and s.restriction_Q.shape == (0, 0)
    c = s.change_of_basis
    assert c @ s.restriction_P @ inverse(c) == a


def test_shape_errors():
    for fn in (strongly_drazin_check, euw_decompose, two_units, invariant_splitting, cor23_scaler):
        with pytest.raises(ShapeError):
            fn(zero(2, 3))


@pytest.mark.parametrize("i", range(40))
def test_generated_roundtrips(i):
    kind = ("nilpotent", "idempotent", "unit", "drazin_structured")[i % 4]
    a = gen_element(GenSpec(derive_seed(11, i), 1 + i % 6, 3, kind))
    a_d = drazin(a)
    # every reconstructed inverse passes the axioms, so by uniqueness equals a^d
    for b in (thm22_refine(a, a_d).a_d, quasipolar(a).b, corner_characterize(a).a_d):
        assert b == a_d and verify_drazin_axioms(a, b).ok
    r = thm22_refine(a, a_d)
    assert express_as_polynomial(a @ r.z, r.e) is not None
    assert all(euw_decompose(a).checks.values())
    t = two_units(a)
    assert t.u1 + t.u2 == a
    s = invariant_splitting(a)
    assert len(s.basis_P) + len(s.basis_Q) == a.n_rows
    assert all(cor23_scaler(a).checks.values())
    v = strongly_drazin_check(a)
    assert bool(v) == bool(is_nilpotent(a - a @ a))
