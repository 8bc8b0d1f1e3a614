import random

import pytest
from hypothesis import given, settings, strategies as st

from approxreg import combinations as C
from approxreg.errors import CapExceededError
from approxreg.ideals import IdealHandle, maximal_ideal
from approxreg.regularity_lab import verify_approximation_system
from approxreg.ring import QQ, PolynomialRing

RX = PolynomialRing(QQ, ("x0", "x1", "x2"))


def I(ring, *gens):
    return IdealHandle(ring, list(gens))


def test_linear_ideal_validation(R2):
    with pytest.raises(ValueError):
        C.LinearIdeal(R2, ["x", "2*x"])
    with pytest.raises(ValueError):
        C.LinearIdeal(R2, ["x^2"])


def test_eval_examples(R2):
    x, y = C.atom(R2, "x"), C.atom(R2, "y")
    assert C.evaluate(x * (x + y)) == I(R2, "x^2", "x*y")
    assert C.evaluate(x ^ y) == I(R2, "x*y")
    assert C.evaluate(C.Sum(C.Zero, x)) == I(R2, "x")


def test_grammar_degree():
    a, b, c = C.atom(RX, "x0"), C.atom(RX, "x1"), C.atom(RX, "x2")
    assert C.grammar_degree(a * (a + b)) == 2
    assert C.grammar_degree(a) == 1
    assert C.grammar_degree((a ^ b) ^ c) == 3
    assert C.grammar_degree((a * b) + (b * c)) == 3
    assert C.grammar_degree((a * b) + c) == 2
    assert C.grammar_degree(C.Unit) == 0


def test_decompose_examples(R2):
    x, y = C.atom(R2, "x"), C.atom(R2, "y")
    pairs = C.decompose(x * (x + y))
    assert [(p.path, C.to_text(p.approximant)) for p in pairs] == [("l", "(x) + (y)"), ("rl", "(x)"), ("rr", "(x)")]
    assert all(p.verified for p in pairs)
    assert {C.to_text(p.approximant) for p in C.decompose(x + y)} == {"1"}
    meet = C.decompose(x ^ y)
    assert [C.to_text(p.approximant) for p in meet] == ["(y)", "(x)"]
    assert C.decompose(C.Product(x, C.Zero)) == []


def test_simplify_drops_constants(R2):
    x = C.atom(R2, "x")
    assert C.simplify(C.Meet(C.Unit, x)) == x
    assert C.simplify(C.Product(C.Zero, x)) == C.Zero
    assert C.simplify(C.Sum(C.Unit, x)) == C.Unit


def test_verify_r_regularity(R2):
    x, y = C.atom(R2, "x"), C.atom(R2, "y")
    rep = C.verify_r_regularity(x * (x + y))
    assert (rep.grammar_degree, rep.regularity, rep.ok) == (2, 2, True)


def test_ass_candidates(R2):
    x, y = C.atom(R2, "x"), C.atom(R2, "y")
    cands, rep = C.ass_candidates(x * (x + y))
    assert len(cands) == 3
    assert I(R2, "x") in rep.confirmed and I(R2, "x", "y") in rep.confirmed
    assert I(R2, "y") not in rep.confirmed
    _, rep = C.ass_candidates(x ^ y)
    assert I(R2, "x") in rep.confirmed and I(R2, "y") in rep.confirmed
    _, rep = C.ass_candidates(x)
    assert rep.confirmed == [I(R2, "x")]


def test_ass_cap():
    atoms = [C.atom(RX, f"x0 + {k}*x1") for k in range(13)]
    e = atoms[0]
    for a in atoms[1:]:
        e = e + a
    with pytest.raises(CapExceededError):
        C.ass_candidates(e)


def test_enumerate_small(R2):
    x, y = C.LinearIdeal(R2, ["x"]), C.LinearIdeal(R2, ["y"])
    c1 = C.enumerate_Cr([x, y], 1)
    assert set(c1) == {I(R2), I(R2, "1"), I(R2, "x"), I(R2, "y"), I(R2, "x", "y")}
    assert set(C.enumerate_Cr([], 3, R2)) == {I(R2), I(R2, "1")}
    with pytest.raises(CapExceededError):
        C.enumerate_Cr([x, y], 4)


def test_text_round_trip():
    s = "(x0,x1) * ((x0) + (x2)) ^ (x1,x2)"
    e = C.parse_expression(RX, s)
    assert isinstance(e, C.Meet) and isinstance(e.left, C.Product)
    assert C.to_text(e) == s
    assert C.parse_expression(RX, "0 + 1 * (x0 - 1/2*x1)") == C.Sum(C.Zero, C.Product(C.Unit, C.atom(RX, "x0 - 1/2*x1")))
    with pytest.raises(ValueError):
        C.parse_expression(RX, "(x0^2)")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_print_parse_identity(seed):
    rng = random.Random(seed)
    atoms = [C.random_linear_ideal(RX, rng.randint(1, 2), rng) for _ in range(3)]
    e = C.random_expression(atoms, 4, rng)
    assert C.parse_expression(RX, C.to_text(e)) == e


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_decompose_inclusions_random(seed):
    rng = random.Random(seed)
    atoms = [C.random_linear_ideal(RX, rng.randint(1, 2), rng) for _ in range(3)]
    e = C.random_expression(atoms, 3, rng, max_degree=4)
    pairs = C.decompose(e)
    assert all(p.verified for p in pairs)
    e = C.simplify(e)
    if pairs:
        assert {p.atom for p in pairs} == set(C.support(e))


def test_decomposition_is_approximation_system(R2):
    x, y = C.atom(R2, "x"), C.atom(R2, "y")
    sysm = C.approximation_system(x * (x + y))
    assert verify_approximation_system(sysm).ok
    assert verify_approximation_system(C.cor_m_system((x ^ y) + x * y)).ok


def test_enumerate_level_one_is_subset_sums():
    A = [C.LinearIdeal(RX, ["x0"]), C.LinearIdeal(RX, ["x1", "x2"])]
    expected = {I(RX), I(RX, "1"), I(RX, "x0"), I(RX, "x1", "x2"), maximal_ideal(RX)}
    assert set(C.enumerate_Cr(A, 1)) == expected
