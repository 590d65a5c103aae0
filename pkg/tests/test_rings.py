"""Chain rings: parsing, CRT splitting, exact arithmetic, valuations."""

import itertools
import random

import pytest

from difmod.errors import ParseError, ValidationError
from difmod.rings import ChainRing, Ring, crt_split, elem_ops, ring_make


def test_parse_z4():
    r = ring_make("Z/4")
    assert r.ncomp == 1
    cr = r.components[0]
    assert (cr.kind, cr.p, cr.m) == ("Z", 2, 2)
    assert cr.uniformizer_symbol() == "2"
    assert r.descriptor() == "Z/4"


def test_parse_dual_numbers():
    r = ring_make("F2[x]/(x^2)")
    cr = r.components[0]
    assert (cr.kind, cr.p, cr.m) == ("F", 2, 2)
    assert cr.uniformizer_symbol() == "x"


def test_parse_rational_and_length_one():
    r = ring_make("Q[x]/(x^3)")
    assert r.components[0].kind == "Q"
    assert r.size() is None
    assert ring_make("F5[x]/(x)").components[0].m == 1


def test_parse_z12_splits():
    r = ring_make("Z/12")
    assert [(c.p, c.m) for c in r.components] == [(2, 2), (3, 1)]
    with pytest.raises(ParseError):
        ring_make("Z/12", allow_composite=False)


def test_parse_errors():
    for bad in ["Z/1", "Z/0", "R[x]/(x^2)", "F4[x]/(x^2)", "Q[x]/(x^0)", "Z4"]:
        with pytest.raises((ParseError, ValidationError)):
            ring_make(bad)


@pytest.mark.parametrize("n", [4, 12, 30, 60, 100])
def test_crt_reconstruction(n):
    # componentwise arithmetic must reproduce plain mod-n arithmetic
    factors = crt_split(n)
    assert n == 1 or all(e >= 1 for _, e in factors)
    prod = 1
    for p, e in factors:
        prod *= p ** e
    assert prod == n
    ring = ring_make(f"Z/{n}")
    def split(a):
        return tuple(a % (p ** e) for p, e in factors)
    for a, b in itertools.product(range(n), repeat=2) if n <= 40 else \
            ((random.Random(n).randrange(n), random.Random(n + 1).randrange(n))
             for _ in range(200)):
        assert ring.add(split(a), split(b)) == split((a + b) % n)
        assert ring.mul(split(a), split(b)) == split((a * b) % n)


def test_crt_examples():
    assert crt_split(4) == [(2, 2)]
    assert crt_split(12) == [(2, 2), (3, 1)]
    assert crt_split(30) == [(2, 1), (3, 1), (5, 1)]
    with pytest.raises(ValidationError):
        crt_split(1)


def test_valuation_and_units_z4():
    r = ring_make("Z/4")
    assert r.valuation((2,)) == (1,)
    assert not r.is_unit((2,))
    assert r.valuation((3,)) == (0,)
    assert r.is_unit((3,))
    assert r.valuation((0,)) == (2,)


def test_dual_number_square():
    r = ring_make("F2[x]/(x^2)")
    one_plus_x = ((1, 1),)
    assert r.mul(one_plus_x, one_plus_x) == r.one  # x^2 = 0


def test_elem_ops_bundle():
    r = ring_make("Z/4")
    ops = elem_ops(r, (2,), (3,))
    assert ops.sum == (1,)
    assert ops.product == (2,)
    assert ops.is_unit is False
    assert ops.valuation == (1,)


@pytest.mark.parametrize("desc", ["Z/4", "Z/8", "F2[x]/(x^2)", "F3[x]/(x^3)", "Z/12"])
def test_valuation_multiplicative(desc):
    ring = ring_make(desc)
    rng = random.Random(17)
    for _ in range(200):
        a = tuple(c.random_element(rng) for c in ring.components)
        b = tuple(c.random_element(rng) for c in ring.components)
        for c, x, y in zip(ring.components, a, b):
            va, vb = c.valuation(x), c.valuation(y)
            assert c.valuation(c.mul(x, y)) == min(va + vb, c.m)


@pytest.mark.parametrize("desc", ["Z/4", "Z/8", "F2[x]/(x^2)", "F3[x]/(x^3)", "Z/6"])
def test_unit_iff_invertible_brute_force(desc):
    ring = ring_make(desc)
    assert ring.size() <= 256
    for cr in ring.components:
        for a in cr.elements():
            has_inverse = any(cr.mul(a, b) == cr.one for b in cr.elements())
            assert has_inverse == cr.is_unit(a)
            if has_inverse:
                assert cr.mul(a, cr.unit_inverse(a)) == cr.one


def test_unit_inverse_polynomial():
    cr = ChainRing("F", 3, 3)
    for a in cr.elements():
        if cr.is_unit(a):
            assert cr.mul(a, cr.unit_inverse(a)) == cr.one


def test_divide_by_pi():
    cr = ChainRing("Z", 2, 3)
    assert cr.divide_by_pi(4, 2) == 1
    assert cr.divide_by_pi(6, 1) == 3
    with pytest.raises(ValidationError):
        cr.divide_by_pi(3, 1)


def test_element_strings_round_trip():
    for desc in ["Z/8", "F3[x]/(x^3)", "Q[x]/(x^2)", "Z/12"]:
        ring = ring_make(desc)
        rng = random.Random(5)
        for _ in range(50):
            a = tuple(c.random_element(rng) for c in ring.components)
            assert ring.elem_from_str(ring.elem_to_str(a)) == a
