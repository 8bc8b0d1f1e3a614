import json
import random

import pytest

from approxreg import regularity_lab as lab
from approxreg.errors import GenericityError, NoBoundError, NotFilterRegularError, ZeroDivisorInputError
from approxreg.ideals import IdealHandle, maximal_ideal
from approxreg.resolve import MINUS_INFINITY, PresentedModule, regularity
from approxreg.ring import GradedFreeModule, PolynomialRing, PrimeField


def Q(ring, *gens):
    return PresentedModule.quotient(IdealHandle(ring, list(gens)))


def test_finite_part(R2):
    fp = lab.finite_part(Q(R2, "x^2", "x*y"))
    assert [fp.hilbert_function(d) for d in range(4)] == [0, 1, 0, 0]
    assert lab.finite_part(Q(R2, "x*y")).is_zero()
    M = Q(R2, "x", "y")
    assert [lab.finite_part(M).hilbert_function(d) for d in range(3)] == [1, 0, 0]


def test_filter_regular(R2):
    M = Q(R2, "x^2", "x*y")
    assert lab.is_filter_regular("y", M)
    assert not lab.is_filter_regular("x", M)
    assert lab.is_filter_regular("x", Q(R2, "x", "y"))
    with pytest.raises(ZeroDivisorInputError):
        lab.is_filter_regular(R2(0), M)


def test_filter_regular_sequence(R2):
    seq = lab.find_filter_regular_sequence([Q(R2, "x")], rng=random.Random(0))
    assert len(seq.forms) == 2
    assert seq.ideal(2) == maximal_ideal(R2)
    assert seq.forms[0] not in IdealHandle(R2, ["x"])
    free = PresentedModule.free(GradedFreeModule(R2, (0,)))
    assert len(lab.find_filter_regular_sequence([free], rng=random.Random(1)).forms) == 2


def test_filter_regular_sequence_exhausted():
    R = PolynomialRing(PrimeField(3), ("x", "y"))
    M = Q(R, "x*y*(x+y)*(x-y)")
    with pytest.raises(GenericityError):
        lab.find_filter_regular_sequence([M], trials=5, rng=random.Random(0))


def test_hypersurface_identity(R2):
    rep = lab.verify_hypersurface_identity(Q(R2, "x^2", "x*y"), R2.parse("y"))
    assert rep.ok and rep.actual_regularity == 1
    free = PresentedModule.free(GradedFreeModule(R2, (0,)))
    rep = lab.verify_hypersurface_identity(free, R2.parse("x"))
    assert rep.ok and rep.details["reg_finite_part"] == MINUS_INFINITY
    assert lab.verify_hypersurface_identity(Q(R2, "x*y"), R2.parse("x+y")).ok
    with pytest.raises(NotFilterRegularError):
        lab.verify_hypersurface_identity(Q(R2, "x^2", "x*y"), R2.parse("x"))


def _worked_system(R2):
    J = IdealHandle(R2, ["x^2", "x*y"])
    parts = [(IdealHandle(R2, ["x"]), IdealHandle(R2, ["y"])), (IdealHandle(R2, ["x", "y"]), IdealHandle(R2, ["x"]))]
    return lab.ApproximationSystem.from_submodules(J, parts, 1)


def test_approximation_system_checks(R2):
    assert lab.verify_approximation_system(_worked_system(R2)).t == 1
    M = Q(R2, "x^2", "x*y")
    trivial = lab.ApproximationSystem(M, [(M, maximal_ideal(R2))], 1)
    assert lab.verify_approximation_system(trivial).ok
    broken = lab.ApproximationSystem(M, [(Q(R2, "x"), IdealHandle(R2, ["y"]))], 3)
    verdict = lab.verify_approximation_system(broken)
    assert not verdict.ok and verdict.violations
    with pytest.raises(NoBoundError):
        lab.certified_regularity_bound(broken)


def test_cor_m_worked_example(R2):
    I = lambda *g: IdealHandle(R2, list(g))
    sysm = lab.CorMSystem(I("x^2", "x*y"), [(I("x", "y"), I("x")), (I("x"), I("x")), (I("x"), I("y"))])
    rep = lab.certified_regularity_bound(sysm)
    assert rep.certified_bound == 2 and rep.actual_regularity == 2


def test_coapprox_example(R2):
    m = maximal_ideal(R2)
    x, y = IdealHandle(R2, ["x"]), IdealHandle(R2, ["y"])
    rep = lab.certified_regularity_bound(lab.CoApproximationSystem(m, [(m.scaled(x), x), (m.scaled(y), y)], 1))
    assert rep.certified_bound == 2 and rep.actual_regularity == 1
    with pytest.raises(NoBoundError):
        lab.certified_regularity_bound(lab.CoApproximationSystem(m, [(m.scaled(x), x), (m.scaled(y), y)], 1), r=1)


def test_single_step(R2):
    rep = lab.verify_single_step(_worked_system(R2), R2.parse("y"), r=1)
    assert rep.applicable and rep.ok and rep.certified_bound == 1


def test_regapprox_bound(R2):
    rep = lab.certified_regularity_bound(_worked_system(R2))
    assert rep.ok and rep.certified_bound >= rep.actual_regularity
    obj = json.loads(rep.to_json())
    assert set(obj) >= {"theorem", "hypotheses", "certified_bound", "actual_regularity", "ok"}


def test_ass_containment(R2):
    I = lambda *g: IdealHandle(R2, list(g))
    rep = lab.ass_containment_check(Q(R2, "x^2", "x*y"), [I("x"), I("y"), I("x", "y")])
    confirmed = rep.confirmed
    assert I("x") in confirmed and maximal_ideal(R2) in confirmed and I("y") not in confirmed
    assert rep.exhausted
    rep = lab.ass_containment_check(Q(R2, "x*y"), [I("x"), I("y")])
    assert I("x") in rep.confirmed and I("y") in rep.confirmed and rep.exhausted
    rep = lab.ass_containment_check(Q(R2, "x"), [I("x")], include_maximal=False)
    assert rep.confirmed == [I("x")] and rep.exhausted


def test_finite_part_regularity_bounded(R3):
    rng = random.Random(5)
    from approxreg.combinations import random_linear_ideal

    for _ in range(5):
        a = random_linear_ideal(R3, 2, rng).ideal
        b = random_linear_ideal(R3, 1, rng).ideal
        M = PresentedModule.quotient(a * b + a.scaled(maximal_ideal(R3)))
        fp = lab.finite_part(M)
        assert fp.is_finite_length()
        assert regularity(fp) <= regularity(M)


def test_short_exact_sequence(R2):
    out = lab.short_exact_sequence_check(IdealHandle(R2, ["x^2", "x*y"]), IdealHandle(R2, ["x"]))
    assert out["ok"] and out["reg"] == (2, 1, 1)
    with pytest.raises(ValueError):
        lab.short_exact_sequence_check(IdealHandle(R2, ["x"]), IdealHandle(R2, ["y"]))
