import random

import pytest

from approxreg import arrangements as A
from approxreg.ideals import IdealHandle
from approxreg.ring import QQ, PolynomialRing, PrimeField

R2 = PolynomialRing(QQ, ("x0", "x1"))
R3 = PolynomialRing(QQ, ("x0", "x1", "x2"))


def test_vanishing_ideal():
    Rxy = PolynomialRing(QQ, ("x", "y", "z"))
    assert A.vanishing_ideal(A.SubspaceArrangement(Rxy, [["x"], ["y"]])) == IdealHandle(Rxy, ["x*y"])
    axes = A.SubspaceArrangement(Rxy, [["x", "y"], ["x", "z"], ["y", "z"]])
    assert A.vanishing_ideal(axes) == IdealHandle(Rxy, ["x*y", "x*z", "y*z"])
    assert A.vanishing_ideal(A.SubspaceArrangement(Rxy, [["x", "y"]])) == IdealHandle(Rxy, ["x", "y"])
    with pytest.raises(ValueError):
        A.SubspaceArrangement(Rxy, [["x"], ["2*x"]])


def test_rejects_proportional_forms():
    with pytest.raises(ValueError):
        A.HyperplaneArrangement(R2, ["x0", "-3*x0"])
    with pytest.raises(ValueError):
        A.HyperplaneArrangement(R2, ["x0^2"])


def test_boolean_derivations():
    D = A.derivation_module(A.HyperplaneArrangement.boolean(R2))
    assert sorted(str(g) for g in D.submodule.display_generators()) == ["(0, x1)", "(x0, 0)"]
    assert D.regularity() == 1


def test_three_points_on_line():
    arr = A.HyperplaneArrangement(R2, ["x0", "x1", "x0 + x1"])
    D = A.derivation_module(arr)
    t = D.betti_table()
    assert t[0, 1] == 1 and t[0, 2] == 1 and sum(t.entries.values()) == 2
    assert D.regularity() == 2
    assert D.contains(D.euler())


def test_every_generator_is_tangent():
    rng = random.Random(2)
    arr = A.HyperplaneArrangement.random(R3, 4, rng)
    D = A.derivation_module(arr)
    assert all(D.is_tangent(g) for g in D.generators)
    assert D.contains(D.euler())


def test_deletion():
    arr = A.HyperplaneArrangement(R2, ["x0", "x1", "x0 + x1"])
    assert A.deletion(arr, 2).forms == A.HyperplaneArrangement.boolean(R2).forms
    assert all(A.deletion_inclusions(arr))
    small = A.deletion(A.HyperplaneArrangement.boolean(R2), 0)
    D = A.derivation_module(small)
    assert D.submodule.minimal_generators() and len(D.submodule.minimal_generators()) == 2
    with pytest.raises(IndexError):
        A.deletion(arr, 3)
    with pytest.raises(ValueError):
        A.deletion(small, 0)


def test_classify():
    assert A.classify(A.HyperplaneArrangement.boolean(R3)) == {"essential": True, "linearly_general": True}
    assert not A.classify(A.HyperplaneArrangement(R3, ["x0", "x1", "x0 + x1"]))["essential"]
    rng = random.Random(4)
    general = A.HyperplaneArrangement.random_general(R3, 4, rng)
    assert A.classify(general)["linearly_general"]


def test_cone():
    assert A.cone_check(A.HyperplaneArrangement(R2, ["x0", "x1", "x0 + x1", "x0 - x1"]), ["x2"])


def test_small_characteristic_refused():
    R = PolynomialRing(PrimeField(3), ("x0", "x1"))
    with pytest.raises(ValueError):
        A.derivation_module(A.HyperplaneArrangement(R, ["x0", "x1", "x0 + x1"]))
    R5 = PolynomialRing(PrimeField(5), ("x0", "x1"))
    assert A.derivation_module(A.HyperplaneArrangement(R5, ["x0", "x1", "x0 + x1"])).regularity() == 2


def test_file_format(tmp_path):
    text = "# three lines\nx0\nx1  # second\n\nx0 + x1\n"
    arr = A.parse_arrangement_text(R2, text)
    assert len(arr) == 3
    assert A.parse_arrangement_text(R2, A.format_arrangement_text(arr)).forms == arr.forms
