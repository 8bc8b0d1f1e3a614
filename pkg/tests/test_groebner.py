import random

import pytest
from hypothesis import given, settings, strategies as st

from approxreg import oracle
from approxreg.errors import NotHomogeneousError, RingMismatchError
from approxreg.groebner import (
    TopOrder,
    buchberger,
    is_groebner_basis,
    leading_term,
    normal_form,
    syzygies,
)
from approxreg.ring import QQ, GradedFreeModule, PolynomialRing, PrimeField, vec_mul_poly


def polys(G):
    return sorted(str(g) for g in G.generators)


def test_normal_form_examples(R2):
    x, y = R2.gens()
    assert normal_form(x**2 * y, [x**2 - y]) == y**2
    f = R2.parse("x^3 + y")
    assert normal_form(f, []) == f
    assert normal_form(x**2, [x]).is_zero()


def test_normal_form_mismatch(R2, R3):
    with pytest.raises(RingMismatchError):
        normal_form(R2.parse("x"), [R3.parse("x")])


def test_buchberger_examples(R2, R3):
    assert polys(buchberger([R2.parse("x^2 - y^2"), R2.parse("x^2 + y^2")])) == ["x^2", "y^2"]
    assert polys(buchberger([R2.parse("x")])) == ["x"]
    G = buchberger([R3.parse("y - x^2"), R3.parse("z - x^3")])
    assert polys(G) == sorted(["x^2 - y", "x*y - z", "y^2 - x*z"])


def test_reduced_basis_properties(R3):
    G = buchberger([R3.parse(s) for s in ("x^2 + y*z", "x*y - z^2", "y^3 + x*z^2")])
    order = G.order
    assert is_groebner_basis(G.vecs, order, QQ)
    leads = [leading_term(v, order) for v in G.vecs]
    for v, lt in zip(G.vecs, leads):
        assert v[lt] == 1
        for (comp, e) in v:
            for lt2 in leads:
                if lt2 == lt:
                    continue
                assert not (lt2[0] == comp and all(a <= b for a, b in zip(lt2[1], e)))


def _check_syzygy(sources, syz):
    mod = 0
    total = {}
    for (i, e), c in syz.items():
        for t, v in vec_mul_poly(sources[i], {e: c}, mod).items():
            total[t] = total.get(t, 0) + v
    return all(v == 0 for v in total.values())


def test_syzygy_examples(R2):
    x, y = R2.gens()
    S = syzygies([x, y])
    assert len(S) == 1
    assert S.ambient.shifts == (1, 1)
    assert len(syzygies([x * y + y**2])) == 0
    S = syzygies([x**2, x * y, y**2])
    assert len(S) == 2 and S.ambient.shifts == (2, 2, 2)
    srcs = [{(0, e): c for e, c in p.terms.items()} for p in (x**2, x * y, y**2)]
    for z in S.vecs:
        assert _check_syzygy(srcs, z)
    for d in range(6):
        assert oracle.submodule_dim(S.vecs, (2, 2, 2), 2, d, QQ) == oracle.syzygy_dim(srcs, (0,), 2, d, QQ)


def test_syzygies_reject_inhomogeneous(R2):
    with pytest.raises(NotHomogeneousError):
        syzygies([R2.parse("x^2 + y"), R2.parse("x")])


def test_module_groebner_basis(R2):
    F = GradedFreeModule(R2, (0, 1))
    gens = [F.element(["x^2", "y"]), F.element(["x*y", "x"])]
    G = buchberger(gens)
    assert is_groebner_basis(G.vecs, TopOrder((0, 1)), QQ)
    for g in gens:
        assert G.contains(g)


def test_prime_field_basis():
    R = PolynomialRing(PrimeField(7), ("x", "y"))
    G = buchberger([R.parse("x^2 + 3*x*y"), R.parse("y^2 - x*y")])
    assert is_groebner_basis(G.vecs, G.order, R.field)


def _random_homogeneous(R, rng, deg, nterms=3):
    from approxreg.ring import monomials_of_degree

    mons = monomials_of_degree(R.nvars, deg)
    p = R(0)
    for m in rng.sample(mons, min(nterms, len(mons))):
        p = p + R.monomial(m, rng.randint(-3, 3))
    return p


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_groebner_membership_property(seed):
    rng = random.Random(seed)
    R = PolynomialRing(QQ, ("x", "y", "z"))
    gens = [p for p in (_random_homogeneous(R, rng, rng.randint(1, 3)) for _ in range(3)) if not p.is_zero()]
    if not gens:
        return
    G = buchberger(gens)
    assert is_groebner_basis(G.vecs, G.order, QQ)
    combo = R(0)
    for g in gens:
        combo = combo + g * _random_homogeneous(R, rng, 1)
    assert G.contains(combo)
