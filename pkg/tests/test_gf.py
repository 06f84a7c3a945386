import itertools

import pytest

from lrcmr import gf
from lrcmr.errors import DivisionByZero, FieldMismatch, NotPrime, ReducibleModulus
from lrcmr.gf import arith, element_order, make_field, power


def _brute_irreducible(mod, p):
    # a polynomial of degree <= 3 is reducible iff it has a root
    e = len(mod) - 1
    assert e <= 3
    return all(sum(c * x**i for i, c in enumerate(mod)) % p for x in range(p))


def test_gf2():
    f = make_field(2, 1)
    assert f.q == 2 and f.alpha == 1


def test_gf4_modulus_and_alpha():
    f = make_field(2, 2)
    assert f.modulus == (1, 1, 1)
    assert _brute_irreducible(f.modulus, 2)
    assert f.alpha == 2  # the class of x


def test_gf13_generator():
    f = make_field(13, 1)
    assert f.alpha == 2
    orders = {g: next(t for t in range(1, 13) if pow(g, t, 13) == 1) for g in range(2, 13)}
    assert min(g for g, o in orders.items() if o == 12) == 2


def test_gf4_products():
    f = make_field(2, 2)
    x = f.gen
    assert arith("add", x, x) == f.zero
    assert arith("mul", x, x).coeffs == (1, 1)  # x + 1


@pytest.mark.parametrize("p,e", [(2, 1), (2, 4), (3, 2), (13, 1), (3, 4), (7, 2)])
def test_div_self_is_one(p, e):
    f = make_field(p, e)
    for a in f.elements()[1:]:
        assert arith("div", a, a) == f.one


def test_power_and_order():
    f = make_field(2, 4)
    a = f.gen
    assert power(a, f.q - 1) == f.one
    assert power(a, 0) == f.one
    assert element_order(f.one) == 1
    assert element_order(a) == 15
    b = power(a, 5)
    assert element_order(b) == 3
    assert b**3 == f.one and b**1 != f.one


@pytest.mark.parametrize("p,e", [(2, 3), (2, 4), (3, 2), (5, 1), (3, 3), (7, 2)])
def test_alpha_is_primitive(p, e):
    f = make_field(p, e)
    seen = {f.alpha_pow(i) for i in range(f.q - 1)}
    assert seen == set(range(1, f.q))


@pytest.mark.parametrize("p,e", [(2, 2), (3, 2), (2, 4)])
def test_axioms_exhaustive(p, e):
    f = make_field(p, e)
    els = range(f.q)
    for a, b in itertools.product(els, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.sub(f.add(a, b), b) == a
        if b:
            assert f.mul(f.div(a, b), b) == a
    for a, b, c in itertools.product(els, repeat=3):
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)


def test_zech_matches_digitwise_add():
    for p, e in [(3, 2), (3, 4), (5, 2), (2, 4), (13, 1)]:
        f = make_field(p, e)
        z = f.zech_table
        for d in range(f.q - 1):
            s = f.add(1, f.alpha_pow(d))
            assert (z[d] == -1) if s == 0 else (f.alpha_pow(int(z[d])) == s)


def test_errors():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, [1, 0, 1])  # x^2 + 1 = (x+1)^2
    f = make_field(2, 2)
    with pytest.raises(DivisionByZero):
        f.inv(0)
    with pytest.raises(FieldMismatch):
        arith("add", f.one, make_field(3, 1).one)


def test_nonprimitive_modulus_gets_other_alpha():
    # x^4 + x^3 + x^2 + x + 1 is irreducible over GF(2) but x has order 5
    f = make_field(2, 4, [1, 1, 1, 1, 1])
    assert f.alpha != 2
    assert element_order(f.gen) == 15


def test_prime_helpers():
    assert gf.prime_factors(360) == [2, 3, 5]
    assert [n for n in range(20) if gf.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
