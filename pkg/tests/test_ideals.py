import pytest

from approxreg.errors import NotHomogeneousError, RingMismatchError, ZeroDivisorInputError
from approxreg.ideals import (
    IdealHandle,
    SubmoduleHandle,
    annihilator,
    colon,
    colon_element,
    combine,
    intersect,
    maximal_ideal,
    saturate,
    unit_ideal,
    zero_ideal,
)
from approxreg.ring import GradedFreeModule


def test_combine(R3, ideal):
    assert combine("sum", ideal(R3, "x"), ideal(R3, "y")) == ideal(R3, "x", "y")
    prod = combine("product", ideal(R3, "x", "y"), ideal(R3, "x", "z"))
    assert prod == ideal(R3, "x^2", "x*z", "x*y", "y*z")
    I = ideal(R3, "x^2", "y*z")
    assert combine("product", I, unit_ideal(R3)) == I
    with pytest.raises(ValueError):
        combine("meet", I, I)


def test_ring_mismatch(R2, R3, ideal):
    with pytest.raises(RingMismatchError):
        combine("sum", ideal(R2, "x"), ideal(R3, "x"))
    with pytest.raises(RingMismatchError):
        intersect(ideal(R2, "x"), ideal(R3, "x"))


def test_intersect(R3, ideal):
    assert intersect(ideal(R3, "x"), ideal(R3, "y")) == ideal(R3, "x*y")
    A = intersect(ideal(R3, "x", "y"), ideal(R3, "x", "z"))
    assert A == ideal(R3, "x", "y*z")
    assert A.issubset(ideal(R3, "x", "y")) and A.issubset(ideal(R3, "x", "z"))
    I = ideal(R3, "x^2", "y*z")
    assert intersect(I, unit_ideal(R3)) == I


def test_colon(R2, ideal):
    A = ideal(R2, "x^2", "x*y")
    assert colon(A, ideal(R2, "x")) == ideal(R2, "x", "y")
    assert colon(A, unit_ideal(R2)) == A
    assert colon(ideal(R2, "x*y"), ideal(R2, "y")) == ideal(R2, "x")
    with pytest.raises(ZeroDivisorInputError):
        colon(A, zero_ideal(R2))


def test_saturate(R2, ideal):
    m = maximal_ideal(R2)
    assert saturate(ideal(R2, "x^2", "x*y"), m) == ideal(R2, "x")
    assert saturate(ideal(R2, "x*y"), m) == ideal(R2, "x*y")
    assert saturate(zero_ideal(R2), m).is_zero()


def test_annihilator(R2, ideal):
    A = ideal(R2, "x^2", "x*y")
    assert annihilator(A, R2.parse("y")) == ideal(R2, "x")
    assert annihilator(A, R2.parse("x")) == maximal_ideal(R2)
    assert annihilator(A, R2.parse("x^2")).is_unit()


def test_inhomogeneous_rejected(R2):
    with pytest.raises(NotHomogeneousError):
        IdealHandle(R2, ["x^2 + y"])


def test_submodule_colon_and_scaling(R2):
    F = GradedFreeModule(R2, (0, 0))
    M = SubmoduleHandle(F, [F.element(["x", "0"]), F.element(["0", "x"])])
    # (xS^2 : y) = xS^2
    assert colon_element(M, R2.parse("y")) == M
    assert colon_element(M, R2.parse("x")).is_whole()
    assert M.scaled(IdealHandle(R2, ["y"])).issubset(M)


def test_equality_is_by_basis(R2, ideal):
    assert ideal(R2, "x^2 - y^2", "x^2 + y^2") == ideal(R2, "x^2", "y^2")
    assert hash(ideal(R2, "x", "y")) == hash(maximal_ideal(R2))
    assert maximal_ideal(R2).contains_power_of_maximal(1)
    assert not ideal(R2, "x^2", "y^2").contains_power_of_maximal(2)
    assert ideal(R2, "x^2", "y^2").contains_power_of_maximal(3)


def test_minimal_generators(R2, ideal):
    I = ideal(R2, "x^2", "x*y", "x^2*y", "x^3")
    assert len(I.minimal_generators()) == 2
