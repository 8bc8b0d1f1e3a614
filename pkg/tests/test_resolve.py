import pytest

from approxreg import oracle
from approxreg.errors import NotFiniteLengthError, NotMinimalError
from approxreg.ideals import IdealHandle, SubmoduleHandle, maximal_ideal
from approxreg.resolve import (
    MINUS_INFINITY,
    BettiTable,
    PresentedModule,
    betti,
    betti_table,
    free_resolution,
    regularity,
    top_degree,
)
from approxreg.ring import QQ, GradedFreeModule, PolynomialRing


def quotient(ring, *gens):
    return PresentedModule.quotient(IdealHandle(ring, list(gens)))


def test_koszul(R2):
    res = free_resolution(quotient(R2, "x", "y"))
    assert res.ranks == [1, 2, 1]
    assert [m.shifts for m in res.modules] == [(0,), (1, 1), (2,)]
    assert res.composition_is_zero() and not res.has_unit_entries()
    t = betti(res)
    assert t[0, 0] == 1 and t[1, 1] == 2 and t[2, 2] == 1


def test_free_module_resolution(R2):
    M = PresentedModule.free(GradedFreeModule(R2, (2,)))
    assert free_resolution(M).length == 0
    assert regularity(M) == 2


def test_quotient_resolution(R2):
    res = free_resolution(quotient(R2, "x^2", "x*y"))
    assert res.ranks == [1, 2, 1]
    assert sorted(res.modules[1].shifts) == [2, 2] and res.modules[2].shifts == (3,)
    assert res.composition_is_zero()


def test_betti_tables(R2):
    t = betti_table(IdealHandle(R2, ["x^2", "x*y"]))
    assert t[0, 2] == 2 and t[1, 3] == 1
    assert sum(t.entries.values()) == 3
    zero = PresentedModule.quotient(maximal_ideal(R2)).mod_ideal(IdealHandle(R2, ["1"]))
    assert betti_table(zero).is_empty()


def test_betti_requires_minimal(R2):
    res = free_resolution(quotient(R2, "x^2", "x*y", "x^2"), minimize=False)
    if res.has_unit_entries():
        with pytest.raises(NotMinimalError):
            betti(res)


def test_regularity_examples(R2):
    S = PresentedModule.free(GradedFreeModule(R2, (0,)))
    assert regularity(S) == 0
    assert regularity(IdealHandle(R2, ["x*y"])) == 2
    assert regularity(IdealHandle(R2, ["x^2", "x*y"])) == 2
    assert regularity(quotient(R2, "x^2", "x*y")) == 1
    assert regularity(quotient(R2, "1")) == MINUS_INFINITY


def test_top_degree(R2):
    assert top_degree(quotient(R2, "x", "y")) == 0
    assert top_degree(quotient(R2, "x^2", "y^2")) == 2
    sub = PresentedModule.subquotient(IdealHandle(R2, ["x"]), IdealHandle(R2, ["x^2", "x*y"]))
    assert top_degree(sub) == 1
    with pytest.raises(NotFiniteLengthError):
        top_degree(quotient(R2, "x"))


def test_betti_text_and_json(R2):
    t = betti_table(quotient(R2, "x^2", "x*y"))
    text = t.to_text()
    assert "total:" in text
    assert BettiTable.__name__ and t.to_json() == t.to_json()
    assert t.regularity() == 1 and t.projective_dimension() == 2


def test_power_of_maximal_ideal():
    R = PolynomialRing(QQ, ("a", "b", "c", "d"))
    from approxreg.ring import monomials_of_degree

    gens = [R.monomial(m) for m in monomials_of_degree(4, 5)]
    t = betti_table(IdealHandle(R, gens))
    assert [t.totals()[i] for i in range(4)] == [56, 140, 120, 35]
    assert t.regularity() == 5


def test_hilbert_function_matches_oracle(R3):
    gens = ["x^2 - y*z", "x*y", "z^3"]
    I = IdealHandle(R3, gens)
    M = PresentedModule.quotient(I)
    for d in range(6):
        assert M.hilbert_function(d) == oracle.quotient_dim(I.vecs, (0,), 3, d, QQ)


def test_module_resolution_exact_degreewise(R2):
    F = GradedFreeModule(R2, (0, 1))
    N = SubmoduleHandle(F, [F.element(["x^2", "y"]), F.element(["x*y", "x"]), F.element(["y^2", "0"])])
    res = free_resolution(PresentedModule.quotient(N))
    assert res.composition_is_zero() and not res.has_unit_entries()
    # Euler characteristic of the resolution equals the Hilbert function
    M = PresentedModule.quotient(N)
    for d in range(7):
        chi = 0
        for i, F_i in enumerate(res.modules):
            chi += (-1) ** i * len(oracle.graded_basis(F_i.shifts, 2, d))
        assert chi == M.hilbert_function(d)
