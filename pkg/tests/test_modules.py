"""Module normal forms, maps, subquotients, socle, envelopes, hom/tensor.

Derived expectations are frozen from the enumeration oracles in oracles.py,
which know nothing about the Smith-normal-form engine.
"""

import random

import pytest

from difmod.errors import ValidationError
from difmod.modules import (
    ModMap, Module, Submodule, bifunctors_tensor_hom, cokernel_of, direct_sum,
    free_module, hom_basis, image_of, induced_on_subquotients, injective_envelope,
    inverse_of, is_essential, is_isomorphism, kernel_of, make_module,
    map_from_columns, map_subquotients, mu, quotient_with_projection, snf_classify,
    socle, socle_and_mu, solve_map, subquotient, tensor_map, tensor_module,
    zero_module,
)
from difmod.rings import ring_make

from oracles import (
    brute_is_essential, brute_linear_maps, brute_quotient_invariants, brute_socle,
    enumerate_component_vectors, subgroup_closure,
)

Z4 = ring_make("Z/4")
Z8 = ring_make("Z/8")
F2X = ring_make("F2[x]/(x^2)")


def scalar(ring, *per_comp_ints):
    """Ring element from small integers (integer kinds only)."""
    return tuple(cr.reduce(v) for cr, v in zip(ring.components, per_comp_ints))


def e(ring, *entries):
    """Single-component matrix over an integer-kind chain ring from ints."""
    cr = ring.components[0]
    return tuple(tuple(cr.reduce(x) for x in row) for row in entries)


def test_module_normal_form_validation():
    make_module(Z4, [2, 1])
    with pytest.raises(ValidationError):
        Module(Z4, ((1, 2),))  # not descending
    with pytest.raises(ValidationError):
        make_module(Z4, [3])   # exponent above m


def test_snf_classify_examples():
    # frozen from brute_quotient_invariants below
    m1 = snf_classify(Z4, [[scalar(Z4, 2)]], 1, 1)
    assert m1.invariants == ((1,),)
    m2 = snf_classify(Z4, [[scalar(Z4, 0)]], 1, 1)
    assert m2.invariants == ((2,),)
    m3 = snf_classify(Z4, [[scalar(Z4, 2), scalar(Z4, 0)],
                           [scalar(Z4, 0), scalar(Z4, 1)]], 2, 2)
    assert m3.invariants == ((1,),)


@pytest.mark.parametrize("desc", ["Z/4", "Z/8", "F2[x]/(x^2)"])
def test_snf_classify_against_enumeration(desc):
    ring = ring_make(desc)
    cr = ring.components[0]
    rng = random.Random(23)
    for _ in range(25):
        r = rng.randint(1, 3)
        c = rng.randint(0, 3)
        entries = [[(cr.random_element(rng),) for _ in range(c)] for _ in range(r)]
        got = snf_classify(ring, entries, r, c).invariants[0]
        cols = [[entries[i][j][0] for i in range(r)] for j in range(c)]
        want = brute_quotient_invariants(cr, [cr.m] * r, cols)
        assert got == want


def test_modmap_well_definedness():
    d, c = make_module(Z4, [1]), make_module(Z4, [2])
    ModMap(d, c, ((( Z4.components[0].reduce(2),),),))  # Z/2 -> Z/4 via 2
    with pytest.raises(ValidationError):
        ModMap(d, c, (((Z4.components[0].reduce(1),),),))  # 1 is not divisible enough


def test_hom_basis_examples():
    h1 = hom_basis(make_module(Z4, [1]), make_module(Z4, [2]))
    assert h1.module.invariants == ((1,),)
    gen = h1.generators()[0]
    assert gen.blocks[0][0][0] == 2  # 1 -> 2
    h2 = hom_basis(make_module(Z4, [2]), make_module(Z4, [2]))
    assert h2.module.invariants == ((2,),)
    h3 = hom_basis(make_module(Z4, [1]), make_module(Z4, [2, 1]))
    assert h3.module.invariants == ((1, 1),)


@pytest.mark.parametrize("desc", ["Z/4", "F2[x]/(x^2)"])
def test_hom_cardinality_against_enumeration(desc):
    ring = ring_make(desc)
    cr = ring.components[0]
    rng = random.Random(5)
    for _ in range(12):
        dom_e = sorted((rng.randint(1, cr.m) for _ in range(rng.randint(0, 2))),
                       reverse=True)
        cod_e = sorted((rng.randint(1, cr.m) for _ in range(rng.randint(0, 2))),
                       reverse=True)
        M, N = make_module(ring, [dom_e]), make_module(ring, [cod_e])
        if (M.size() or 17) > 16 or (N.size() or 17) > 16:
            continue
        count = sum(1 for _ in brute_linear_maps(cr, dom_e, cod_e))
        assert hom_basis(M, N).module.size() == count


def mult_map(ring, mod, k):
    cr = ring.components[0]
    n = len(mod.invariants[0])
    return ModMap(mod, mod, (tuple(tuple(cr.reduce(k) if i == j else cr.zero
                                         for j in range(n)) for i in range(n)),))


def test_subquotients_of_multiplication_by_two():
    m = make_module(Z4, [2])
    f = mult_map(Z4, m, 2)
    parts = map_subquotients(f)
    assert parts.ker.invariants == ((1,),)
    assert parts.im.invariants == ((1,),)
    assert parts.coker.invariants == ((1,),)
    # witnesses compose correctly
    assert (f @ parts.ker_incl).is_zero_map()
    assert (parts.coker_proj @ f).is_zero_map()


def test_subquotients_identity_and_zero():
    m = make_module(Z4, [2, 1])
    ident = ModMap.identity(m)
    parts = map_subquotients(ident)
    assert parts.ker.is_zero() and parts.coker.is_zero()
    assert parts.im.invariants == m.invariants
    z = ModMap.zero(m, make_module(Z4, [2]))
    parts = map_subquotients(z)
    assert parts.ker.invariants == m.invariants
    assert parts.im.is_zero()
    assert parts.coker.invariants == ((2,),)


@pytest.mark.parametrize("desc", ["Z/4", "Z/8", "F2[x]/(x^2)", "F3[x]/(x^3)"])
def test_length_additivity_random(desc):
    ring = ring_make(desc)
    cr = ring.components[0]
    rng = random.Random(31)
    for _ in range(30):
        dom_e = sorted((rng.randint(1, cr.m) for _ in range(rng.randint(0, 3))),
                       reverse=True)
        cod_e = sorted((rng.randint(1, cr.m) for _ in range(rng.randint(0, 3))),
                       reverse=True)
        M, N = make_module(ring, [dom_e]), make_module(ring, [cod_e])
        rows = []
        for i, b in enumerate(cod_e):
            row = []
            for j, a in enumerate(dom_e):
                shift = max(b - a, 0)
                row.append(cr.mul(cr.pi_pow(shift), cr.random_element(rng), b))
            rows.append(tuple(row))
        f = ModMap(M, N, (tuple(rows),))
        map_subquotients(f)  # raises internally if additivity fails


def test_socle_examples_and_oracle():
    s, counts = socle_and_mu(make_module(Z4, [2]))
    assert counts == (1,)
    sub_elems = subgroup_closure(Z4.components[0], [2],
                                 [list(g[0]) for g in s.gens])
    assert sub_elems == {(0,), (2,)}
    s2, counts2 = socle_and_mu(make_module(Z4, [2, 1]))
    assert counts2 == (2,)
    assert mu(zero_module(Z4)) == (0,)


@pytest.mark.parametrize("desc", ["Z/4", "Z/8", "F2[x]/(x^2)"])
def test_socle_against_enumeration(desc):
    ring = ring_make(desc)
    cr = ring.components[0]
    rng = random.Random(3)
    for _ in range(10):
        exps = sorted((rng.randint(1, cr.m) for _ in range(rng.randint(0, 2))),
                      reverse=True)
        m = make_module(ring, [exps])
        if (m.size() or 100) > 64:
            continue
        s = socle(m)
        got = subgroup_closure(cr, exps, [list(g[0]) for g in s.gens])
        assert got == brute_socle(cr, exps)


def test_injective_envelope_examples():
    env, emb = injective_envelope(make_module(Z4, [1]))
    assert env.invariants == ((2,),)
    assert emb.blocks[0][0][0] == 2
    sub = Submodule(env, tuple(emb.columns()))
    assert is_essential(sub)

    m = make_module(Z4, [2])
    env, emb = injective_envelope(m)
    assert env == m and emb.blocks[0][0][0] == 1

    m = make_module(Z4, [2, 1])
    env, emb = injective_envelope(m)
    assert env.invariants == ((2, 2),)
    assert is_essential(Submodule(env, tuple(emb.columns())))


def test_is_essential_examples():
    m = make_module(Z4, [2])
    two = Submodule(m, (((2,),),))
    assert is_essential(two)
    m2 = make_module(Z4, [1, 1])
    first = Submodule(m2, (((1, 0),),))
    assert not is_essential(first)
    assert is_essential(Submodule(m2, (((1, 0),), ((0, 1),))))


@pytest.mark.parametrize("desc", ["Z/4", "Z/8", "F2[x]/(x^2)"])
def test_essential_against_definition(desc):
    ring = ring_make(desc)
    cr = ring.components[0]
    rng = random.Random(11)
    for _ in range(12):
        exps = sorted((rng.randint(1, cr.m) for _ in range(rng.randint(1, 2))),
                      reverse=True)
        m = make_module(ring, [exps])
        if (m.size() or 100) > 64:
            continue
        n_gens = rng.randint(0, 2)
        gens = []
        for _ in range(n_gens):
            gens.append((tuple(cr.random_element(rng, e) for e in exps),))
        sub = Submodule(m, tuple(gens))
        sub_elems = subgroup_closure(cr, exps, [list(g[0]) for g in gens])
        assert is_essential(sub) == brute_is_essential(cr, exps, sub_elems)


def test_submodule_normal_form_round_trip():
    rng = random.Random(9)
    for desc in ["Z/4", "Z/8", "F3[x]/(x^3)"]:
        ring = ring_make(desc)
        cr = ring.components[0]
        for _ in range(15):
            exps = sorted((rng.randint(1, cr.m) for _ in range(rng.randint(1, 3))),
                          reverse=True)
            m = make_module(ring, [exps])
            gens = [(tuple(cr.random_element(rng, e) for e in exps),)
                    for _ in range(rng.randint(0, 3))]
            sub = Submodule(m, tuple(gens))
            abstract, incl = sub.normal_form()
            # the inclusion is injective and lands exactly on the submodule
            k, _ = kernel_of(incl)
            assert k.is_zero()
            assert all(sub.contains(col) for col in incl.columns())
            back = Submodule(m, tuple(incl.columns()))
            assert all(back.contains(g) for g in sub.gens)


def test_tensor_and_hom_bifunctors():
    t, h = bifunctors_tensor_hom(make_module(Z4, [1]), make_module(Z4, [1]))
    assert t.module.invariants == ((1,),)  # Z/2 (x) Z/2 = Z/2
    n = make_module(Z4, [2, 1])
    t2, _ = bifunctors_tensor_hom(make_module(Z4, [2]), n)
    assert t2.module.invariants == n.invariants  # R (x) N = N
    h2 = hom_basis(make_module(Z4, [2]), n)
    assert h2.module.invariants == n.invariants  # Hom(R, N) = N
    h3 = hom_basis(make_module(Z4, [1]), make_module(Z4, [2]))
    assert h3.module.invariants == ((1,),)


def test_tensor_map_transport():
    # multiplication by 2 on Z/4, tensored with Z/2, becomes zero
    m = make_module(Z4, [2])
    f = mult_map(Z4, m, 2)
    n = make_module(Z4, [1])
    td = tensor_module(m, n)
    g = tensor_map(f, td, td)
    assert g.is_zero_map()


def test_direct_sum_biproduct_identities():
    a = make_module(Z4, [2, 1])
    b = make_module(Z4, [1])
    ds = direct_sum([a, b])
    assert ds.total.invariants == ((2, 1, 1),)
    acc = None
    for inj, proj in zip(ds.injections, ds.projections):
        term = inj @ proj
        acc = term if acc is None else acc + term
        assert (proj @ inj - ModMap.identity(inj.dom)).is_zero_map()
    assert (acc - ModMap.identity(ds.total)).is_zero_map()


def test_subquotient_and_induced_maps():
    m = make_module(Z4, [2])
    f = mult_map(Z4, m, 2)
    sq = subquotient(f, f)   # ker(2)/im(2) = 0
    assert sq.H.is_zero()
    z = ModMap.zero(m, m)
    sq2 = subquotient(z, z)  # everything survives
    assert sq2.H.invariants == ((2,),)
    ind = induced_on_subquotients(sq2, sq2, ModMap.identity(m))
    assert is_isomorphism(ind)


def test_solve_and_inverse():
    m = make_module(Z4, [2, 1])
    f = ModMap.identity(m)
    inv = inverse_of(f)
    assert (inv - f).is_zero_map()
    g = mult_map(Z4, make_module(Z4, [2]), 2)
    assert solve_map(g, ((2,),)) is not None
    assert solve_map(g, ((1,),)) is None
    with pytest.raises(ValidationError):
        inverse_of(g)


def test_product_ring_componentwise():
    z12 = ring_make("Z/12")
    m = make_module(z12, [[2], [1]])
    assert m.length() == (2, 1)
    s, counts = socle_and_mu(m)
    assert counts == (1, 1)
    env, emb = injective_envelope(m)
    assert env.invariants == ((2,), (1,))
    parts = map_subquotients(ModMap.identity(m))
    assert parts.ker.is_zero() and parts.coker.is_zero()


def test_quotient_with_projection():
    m = make_module(Z4, [2, 2])
    q, proj = quotient_with_projection(m, [((2, 0),)])
    assert sorted(q.invariants[0], reverse=True) == [2, 1]
    assert proj.apply(((2, 0),)) == q.zero_vector()
