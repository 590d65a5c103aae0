"""Differential modules: construction, cohomology, contractibility, stripping."""

import random

import pytest

from difmod.dm import (
    DiffMod, cohomology, contractible_report, dm_direct_sum, dm_make, evaluate,
    is_acyclic, is_contractible, is_injective_object, is_quasi_iso, minimal_check,
    mu_d, mu_d_report, pair, stalk, strip_decompose, strip_pairs,
)
from difmod.errors import PreconditionError, ValidationError
from difmod.modules import ModMap, direct_sum, free_module, make_module
from difmod.rings import ring_make

Z4 = ring_make("Z/4")
Z8 = ring_make("Z/8")
F2X = ring_make("F2[x]/(x^2)")


def mult_dm(ring, exps, k):
    m = make_module(ring, [exps])
    cr = ring.components[0]
    n = len(exps)
    d = ModMap(m, m, (tuple(tuple(cr.reduce(k) if i == j else cr.zero
                                  for j in range(n)) for i in range(n)),))
    return dm_make(m, d)


def two_on_z4():
    return mult_dm(Z4, [2], 2)


def test_dm_make_validation():
    two_on_z4()  # 2*2 = 0 mod 4
    m = make_module(Z4, [2])
    dm_make(m, ModMap.zero(m, m))
    with pytest.raises(ValidationError):
        mult_dm(Z4, [2], 1)  # identity does not square to zero
    other = make_module(Z4, [1])
    with pytest.raises(ValidationError):
        DiffMod(m, ModMap.zero(other, other))


def test_cohomology_examples():
    assert cohomology(two_on_z4()).is_zero()
    m = make_module(Z4, [2, 1])
    assert cohomology(stalk(m)) == m
    assert cohomology(pair(make_module(Z4, [2]))).is_zero()


def test_cohomology_additive():
    rng = random.Random(2)
    for _ in range(20):
        a = random_square_zero(Z4, rng, 3)
        b = random_square_zero(Z8, rng, 3) if False else random_square_zero(Z4, rng, 3)
        total, _ = dm_direct_sum([a, b])
        ha, hb, ht = cohomology(a), cohomology(b), cohomology(total)
        merged = tuple(tuple(sorted(x + y, reverse=True))
                       for x, y in zip(ha.invariants, hb.invariants))
        assert ht.invariants == merged


def random_square_zero(ring, rng, max_dim):
    """Rejection-sampled square-zero endomorphism (tests only)."""
    cr = ring.components[0]
    while True:
        exps = sorted((rng.randint(1, cr.m) for _ in range(rng.randint(0, max_dim))),
                      reverse=True)
        m = make_module(ring, [exps])
        for _ in range(40):
            rows = []
            for i, b in enumerate(exps):
                row = []
                for j, a in enumerate(exps):
                    shift = max(b - a, 0)
                    row.append(cr.mul(cr.pi_pow(shift), cr.random_element(rng), b))
                rows.append(tuple(row))
            d = ModMap(m, m, (tuple(rows),))
            if (d @ d).is_zero_map():
                return dm_make(m, d)


def test_quasi_iso():
    d = two_on_z4()
    assert is_quasi_iso(ModMap.identity(d.module), d, d)
    # projection away from a contractible summand is a quasi-isomorphism
    base = stalk(make_module(Z4, [1]))
    padded, ds = dm_direct_sum([base, pair(make_module(Z4, [2]))])
    assert is_quasi_iso(ds.projections[0], padded, base)
    assert not is_quasi_iso(ModMap.zero(base.module, base.module), base, base)
    with pytest.raises(ValidationError):
        # the identity does not intertwine multiplication-by-two with zero
        is_quasi_iso(ModMap.identity(d.module), d, stalk(make_module(Z4, [2])))


def test_contractible_pair_functor():
    rep = contractible_report(pair(make_module(Z4, [1])))
    assert rep.all_agree() and rep.c1_homotopy
    assert rep.homotopy is not None
    assert rep.retraction is not None


def test_contractible_counterexample_z4():
    # acyclic but not contractible: splitting fails on the indecomposable
    rep = contractible_report(two_on_z4())
    assert is_acyclic(two_on_z4())
    assert rep.all_agree() and not rep.c1_homotopy


def test_contractible_nonacyclic():
    rep = contractible_report(stalk(make_module(Z4, [2])))
    assert rep.all_agree() and not rep.c1_homotopy


@pytest.mark.parametrize("desc", ["Z/4", "Z/8", "F2[x]/(x^2)", "F3[x]/(x^3)"])
def test_four_criteria_agree_random(desc):
    ring = ring_make(desc)
    rng = random.Random(41)
    for _ in range(25):
        d = random_square_zero(ring, rng, 4)
        rep = contractible_report(d)
        assert rep.all_agree(), (desc, d.module.invariants, d.d.blocks)
        if rep.c1_homotopy:
            assert rep.homotopy.certifies(d)


def test_is_injective_object():
    assert is_injective_object(pair(make_module(Z4, [2])))
    assert not is_injective_object(two_on_z4())
    assert not is_injective_object(stalk(make_module(Z4, [1])))
    assert not is_injective_object(pair(make_module(Z4, [1])))  # carrier not free


def test_minimal_check_examples():
    assert minimal_check(two_on_z4())
    assert not minimal_check(pair(make_module(Z4, [2])))
    assert minimal_check(stalk(make_module(Z4, [2])))
    with pytest.raises(PreconditionError):
        minimal_check(stalk(make_module(Z4, [1])))


def test_strip_decompose_mixed():
    target, _ = dm_direct_sum([pair(make_module(Z4, [2])), two_on_z4()])
    res = strip_decompose(target)
    assert res.verify(target)
    assert res.injective_part.module.invariants == ((2, 2),)
    assert res.minimal_part.module.invariants == ((2,),)
    assert minimal_check(res.minimal_part)
    assert is_injective_object(res.injective_part)


def test_strip_decompose_already_minimal():
    d = two_on_z4()
    res = strip_decompose(d)
    assert res.injective_part.module.is_zero()
    assert res.minimal_part == d


def test_strip_decompose_zero():
    from difmod.modules import zero_module
    z = stalk(zero_module(Z4))
    res = strip_decompose(z)
    assert res.minimal_part.module.is_zero()
    assert res.injective_part.module.is_zero()


def test_strip_requires_free():
    with pytest.raises(PreconditionError):
        strip_decompose(stalk(make_module(Z4, [1])))


@pytest.mark.parametrize("desc", ["Z/4", "Z/8", "F3[x]/(x^3)"])
def test_strip_random_free(desc):
    ring = ring_make(desc)
    cr = ring.components[0]
    rng = random.Random(59)
    for _ in range(20):
        rank = rng.randint(0, 4)
        m = free_module(ring, rank)
        dm = None
        for _ in range(60):
            rows = [tuple(cr.random_element(rng) for _ in range(rank))
                    for _ in range(rank)]
            try:
                d = ModMap(m, m, (tuple(rows),))
            except Exception:
                continue
            if (d @ d).is_zero_map():
                dm = dm_make(m, d)
                break
        if dm is None:
            dm, _ = dm_direct_sum([pair(free_module(ring, 1)),
                                   stalk(free_module(ring, rng.randint(0, 2)))])
        res = strip_decompose(dm)
        assert res.verify(dm)
        if not res.minimal_part.module.is_zero():
            assert minimal_check(res.minimal_part)
        if not res.injective_part.module.is_zero():
            assert is_injective_object(res.injective_part)


def test_pair_functor_shape():
    d = pair(make_module(Z4, [1]))
    assert d.module.invariants == ((1, 1),)
    assert d.d.blocks[0] == ((0, 0), (1, 0))
    assert evaluate(d) == d.module


def test_mu_d():
    assert mu_d(two_on_z4()) == (1,)
    rep = mu_d_report(two_on_z4().with_provenance("test", proxy=True))
    assert rep.total == 1 and rep.proxy and not rep.certified_semi_injective


def test_contractibility_over_product_ring():
    z12 = ring_make("Z/12")
    m = make_module(z12, [[2], [1]])
    rep = contractible_report(pair(m))
    assert rep.all_agree() and rep.c1_homotopy
    rep2 = contractible_report(stalk(m))
    assert rep2.all_agree() and not rep2.c1_homotopy
