import random

from instances import oracle_mismatches, random_ideal_gens

from approxreg import oracle
from approxreg.ring import QQ, PolynomialRing, PrimeField


def test_oracle_dimensions_by_hand():
    R = PolynomialRing(QQ, ("x", "y"))
    x, y = R.gens()
    vecs = [{(0, e): c for e, c in f.terms.items()} for f in (x * x, x * y)]
    # (x^2, xy) contains every degree-d monomial except y^d
    assert [oracle.quotient_dim(vecs, (0,), 2, d, QQ) for d in range(5)] == [1, 2, 1, 1, 1]
    # the one syzygy y*e1 - x*e2 lives in degree 3
    assert [oracle.syzygy_dim(vecs, (0,), 2, d, QQ) for d in range(2, 6)] == [0, 1, 2, 3]


def test_gb_agrees_with_oracle_small_sample():
    rng = random.Random(5)
    for field in (QQ, PrimeField(101)):
        R = PolynomialRing(field, ("x", "y", "z"))
        for _ in range(6):
            gens = random_ideal_gens(R, rng, rng.randint(1, 4))
            assert oracle_mismatches(R, gens, rng, top=5) == []


def test_kernel_vectors_are_syzygies():
    R = PolynomialRing(QQ, ("x", "y"))
    x, y = R.gens()
    gens = [x * x, x * y, y * y]
    vecs = [{(0, e): c for e, c in f.terms.items()} for f in gens]
    ks = oracle.kernel_vectors(vecs, (0,), 2, 3, QQ)
    assert len(ks) == 2
    for k in ks:
        total = R(0)
        for (i, e), c in k.items():
            total = total + gens[i] * R.monomial(e, c)
        assert total.is_zero()
