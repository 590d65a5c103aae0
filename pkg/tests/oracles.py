"""Independent brute-force oracles used by the test suite.

Everything here works by enumeration over finite rings and stays deliberately
ignorant of the library's Smith-normal-form machinery, so agreement between
the two is meaningful evidence.
"""

from __future__ import annotations

import itertools


def log_base(n: int, p: int) -> int:
    v = 0
    while n > 1:
        assert n % p == 0
        n //= p
        v += 1
    return v


def enumerate_component_vectors(cr, exps):
    """All canonical coordinate vectors of the module ⊕ R/(pi^e) over one chain ring."""
    pools = [list(cr.elements(e)) for e in exps]
    if not pools:
        yield ()
        return
    for combo in itertools.product(*pools):
        yield tuple(combo)


def component_vec_add(cr, exps, u, v):
    return tuple(cr.add(a, b, e) for a, b, e in zip(u, v, exps))

def component_vec_scale(cr, exps, c, u):
    return tuple(cr.mul(c, a, e) for a, e in zip(u, exps))


def subgroup_closure(cr, exps, gens):
    """All elements of the submodule generated by gens (finite chain ring)."""
    found = {tuple(cr.reduce(a, e) for a, e in zip(g, exps)) for g in gens}
    found.add(tuple(cr.zero for _ in exps))
    frontier = list(found)
    scalars = list(cr.elements())
    while frontier:
        nxt = []
        for g in frontier:
            for c in scalars:
                for h in list(found):
                    cand = component_vec_add(cr, exps, component_vec_scale(cr, exps, c, g), h)
                    if cand not in found:
                        found.add(cand)
                        nxt.append(cand)
        frontier = nxt
    return found


def invariants_from_annihilators(cr, elements, apply_pi_pow):
    """Recover the exponent multiset of a finite module from annihilator counts.

    elements: iterable of all module elements; apply_pi_pow(t, x) multiplies
    x by pi^t and returns a canonical element.  Works because the number of
    elements killed by pi^t in ⊕ R/(pi^e) is p^(sum min(e, t)).
    """
    elements = list(elements)
    p = cr.p
    zero = apply_pi_pow(cr.m, elements[0])  # pi^m kills everything
    logs = []
    for t in range(cr.m + 1):
        count = sum(1 for x in elements if apply_pi_pow(t, x) == zero)
        logs.append(log_base(count, p))
    deltas = [logs[t] - logs[t - 1] for t in range(1, cr.m + 1)]  # #{e_j >= t}
    exps = []
    for t in range(1, cr.m + 1):
        later = deltas[t] if t < cr.m else 0
        exps.extend([t] * (deltas[t - 1] - later))
    return tuple(sorted(exps, reverse=True))


def brute_quotient_invariants(cr, ambient_exps, gen_cols):
    """Invariant exponents of (⊕ R/(pi^e)) / <generators>, by enumeration."""
    sub = subgroup_closure(cr, ambient_exps, gen_cols)
    all_vecs = list(enumerate_component_vectors(cr, ambient_exps))
    # quotient elements: orbit representatives under translation by sub
    seen = set()
    reps = []
    for v in all_vecs:
        if v in seen:
            continue
        orbit = {component_vec_add(cr, ambient_exps, v, s) for s in sub}
        seen |= orbit
        reps.append(frozenset(orbit))
    def apply_pi_pow(t, coset):
        v = next(iter(coset))
        scaled = component_vec_scale(cr, ambient_exps, cr.pi_pow(t), v)
        for r in reps:
            if scaled in r:
                return r
        raise AssertionError("coset arithmetic broke")
    if not ambient_exps:
        return ()
    return invariants_from_annihilators(cr, reps, apply_pi_pow)


def brute_linear_maps(cr, dom_exps, cod_exps):
    """All well-defined matrices ⊕R/(pi^a) → ⊕R/(pi^b), by brute force.

    A candidate assignment of generator images is linear exactly when each
    generator image is killed by that generator's annihilator.
    """
    images_per_gen = []
    for a in dom_exps:
        ok = []
        for img in enumerate_component_vectors(cr, cod_exps):
            killed = component_vec_scale(cr, cod_exps, cr.pi_pow(a), img)
            if all(cr.is_zero(c) for c in killed):
                ok.append(img)
        images_per_gen.append(ok)
    for combo in itertools.product(*images_per_gen):
        # matrix columns are the generator images
        yield [list(col) for col in zip(*combo)] if combo else []


def brute_socle(cr, exps):
    """Elements annihilated by the uniformizer, by enumeration."""
    pi = cr.pi_pow(1)
    out = set()
    for v in enumerate_component_vectors(cr, exps):
        if all(cr.is_zero(x) for x in component_vec_scale(cr, exps, pi, v)):
            out.add(v)
    return out


def brute_is_essential(cr, exps, sub_elements):
    """Definitional essentiality: every nonzero cyclic submodule meets the set."""
    sub = set(sub_elements)
    zero = tuple(cr.zero for _ in exps)
    for v in enumerate_component_vectors(cr, exps):
        if v == zero:
            continue
        cyclic = {component_vec_scale(cr, exps, c, v) for c in cr.elements()}
        if all((w == zero or w not in sub) for w in cyclic):
            return False
    return True
