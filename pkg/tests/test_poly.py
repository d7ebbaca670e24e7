import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import numpy_real_roots
from realloops.poly import (
    X, CommonRealRootError, Polynomial, RootAtEndpointError, cauchy_index, gcd, gcd_many,
    has_real_root, isolate_real_roots, refine, square_free_part, squarefree, sturm_chain,
    sturm_root_count,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(small, min_size=1, max_size=7).map(Polynomial)
nonzero = polys.filter(lambda p: not p.is_zero())


def test_trailing_zeros_stripped():
    assert Polynomial((1, 2, 0, 0)).degree == 1
    assert Polynomial(()).degree == -1
    assert Polynomial((0,)).is_zero()


def test_arithmetic_basics():
    p = (X - 1) * (X + 2)
    assert p == X**2 + X - 2
    q, r = divmod(X**3 + 1, X + 1)
    assert q == X**2 - X + 1 and r.is_zero()
    assert p(Fraction(1, 2)) == Fraction(-5, 4)


def test_json_roundtrip():
    p = Polynomial((Fraction(-1, 3), 0, 2))
    assert Polynomial.from_json(p.to_json()) == p
    assert p.to_json() == ["-1/3", "0/1", "2/1"]


def test_gcd_common_factor():
    a = (X - 1) * (X**2 + 1) * (X + 3)
    b = (X**2 + 1) * (X - 5)
    assert gcd(a, b) == X**2 + 1


def test_gcd_coprime():
    assert gcd(X**2 + 1, X - 1) == Polynomial((1,))
    assert gcd_many([X**2 + 1, X**2 + 2, X**2 + 3]).degree == 0


def test_gcd_zero_zero():
    with pytest.raises(ValueError):
        gcd(Polynomial(), Polynomial())


@given(nonzero, nonzero, nonzero)
def test_gcd_divides_and_is_greatest(a, b, c):
    g = gcd(a * c, b * c)
    assert (a * c % g).is_zero() and (b * c % g).is_zero()
    # c divides both, so it divides the gcd
    assert (g % c.monic()).is_zero() or c.degree == 0


def test_square_free_decomposition():
    p = (X - 1) ** 3 * (X + 2) ** 2 * (X**2 + 1)
    dec = dict((f, k) for f, k in square_free_part(p))
    assert dec == {X**2 + 1: 1, X + 2: 2, X - 1: 3}
    assert squarefree(p) == (X - 1) * (X + 2) * (X**2 + 1)


@given(nonzero)
def test_square_free_product_recovers_monic(p):
    if p.degree <= 0:
        return
    prod = Polynomial((1,))
    for f, k in square_free_part(p):
        prod = prod * f**k
    assert prod == p.monic()


def test_sturm_count_examples():
    assert sturm_root_count(X**2 - 2) == 2
    assert sturm_root_count(X**2 + 1) == 0
    assert sturm_root_count((X - 1) ** 2 * (X + 1)) == 2
    assert sturm_root_count(X**3 - X, (Fraction(-1, 2), 2)) == 2


def test_sturm_count_endpoint_root_raises():
    with pytest.raises(RootAtEndpointError):
        sturm_root_count(X**2 - 1, (1, 3))


def test_sturm_chain_signs_are_euclidean():
    # every term is a positive multiple of the textbook remainder
    p = X**4 - 3 * X**2 + X + 1
    chain = sturm_chain(p)
    a, b = p, p.derivative()
    for term in chain[2:]:
        r = -(a % b)
        ratio = term.lc / r.lc
        assert ratio > 0 and term == r.scale(ratio)
        a, b = b, r


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6), st.integers(0, 2))
def test_isolation_matches_numpy(roots, n_complex):
    p = Polynomial.from_roots(roots)
    for k in range(n_complex):
        p = p * (X**2 + k + 1)
    ivs = isolate_real_roots(p)
    distinct = sorted(set(roots))
    assert len(ivs) == len(distinct)
    for iv, r in zip(ivs, distinct):
        assert iv.lo <= r <= iv.hi
        assert iv.multiplicity == roots.count(r)
    assert len(numpy_real_roots(Polynomial.from_roots(distinct).coeffs)) == len(distinct)


@given(nonzero)
def test_sturm_count_matches_numpy(p):
    if p.degree <= 0:
        return
    expected = numpy_real_roots(squarefree(p).coeffs)
    assert sturm_root_count(p) == len(expected)


def test_refine_irrational_root():
    p = X**2 - 2
    iv = [i for i in isolate_real_roots(p) if i.lo >= 0][0]
    iv = refine(p, iv, Fraction(1, 10**12))
    assert iv.lo <= Fraction(math.sqrt(2)) + Fraction(1, 10**12) and iv.width <= Fraction(1, 10**12)
    assert abs(float(iv.mid) - math.sqrt(2)) < 1e-11


def test_has_real_root():
    assert not has_real_root(X**2 + 1)
    assert has_real_root(X**3 + 1)
    assert not has_real_root(Polynomial((3,)))


def test_cauchy_index_calibration():
    # (x, 1) is the identity of RP^1
    assert cauchy_index(X, Polynomial((1,))) == 1
    assert cauchy_index(Polynomial((1,)), X) == -1
    assert cauchy_index(X**2 + 1, X**2 + 1) == 0
    assert cauchy_index(X**2 - 1, 2 * X) == 2


def test_cauchy_index_common_root_raises():
    with pytest.raises(CommonRealRootError):
        cauchy_index((X - 1) * (X + 2), (X - 1) * X)


def test_cauchy_index_common_complex_factor_allowed():
    assert cauchy_index((X**2 + 1) * X, (X**2 + 1) * Polynomial((1,))) == 1


def test_compose_mobius():
    p = X**2 - 3
    c, d = Fraction(1), 2
    t = Fraction(2, 7)
    assert p.compose_mobius(c, d)(t) == t**d * p(c - 1 / t)
