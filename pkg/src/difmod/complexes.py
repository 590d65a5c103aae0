"""Bounded cochain complexes, minimal injective resolutions, Bass numbers.

Complexes are cohomologically graded with degree +1 differentials on a
finite support interval.  Resolutions are built by iterated injective
envelopes; over a chain ring the cokernel sequence is eventually periodic,
which the builder detects and reports instead of materializing anything
unbounded.  Bass numbers are computed along two independent routes and
cross-checked: socle counts of the resolution terms, and dimensions of the
derived hom modules from the residue field computed out of its free
resolution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, ValidationError
from .modules import (
    ModMap, Module, Submodule, cokernel_of, direct_sum, injective_envelope,
    is_essential, kernel_of, make_module, map_subquotients, socle, subquotient,
    zero_module,
)
from .rings import Ring


@dataclass(frozen=True)
class Complex:
    """Terms indexed by degrees lo..hi with differentials d_i: X^i -> X^(i+1)."""

    ring: Ring
    lo: int
    terms: tuple[Module, ...]
    diffs: tuple[ModMap, ...]   # diffs[k]: terms[k] -> terms[k+1]

    def __post_init__(self):
        if not self.terms:
            raise ValidationError("a complex needs at least one term (may be zero)")
        if len(self.diffs) != len(self.terms) - 1:
            raise ValidationError("need exactly one differential per adjacent pair")
        for k, d in enumerate(self.diffs):
            if d.dom != self.terms[k] or d.cod != self.terms[k + 1]:
                raise ValidationError(f"differential {k} endpoints mismatch")
        for k in range(len(self.diffs) - 1):
            if not (self.diffs[k + 1] @ self.diffs[k]).is_zero_map():
                raise ValidationError("differentials do not compose to zero")
        for t in self.terms:
            if t.ring != self.ring:
                raise ValidationError("terms over a different ring")

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def support(self):
        return range(self.lo, self.hi + 1)

    def term(self, i: int) -> Module:
        if self.lo <= i <= self.hi:
            return self.terms[i - self.lo]
        return zero_module(self.ring)

    def diff(self, i: int) -> ModMap:
        """d^i: term(i) -> term(i+1); the zero map outside the stored range."""
        if self.lo <= i < self.hi:
            return self.diffs[i - self.lo]
        return ModMap.zero(self.term(i), self.term(i + 1))

    def is_zero(self) -> bool:
        return all(t.is_zero() for t in self.terms)

    def total_length(self) -> int:
        return sum(t.total_length() for t in self.terms)


def cx_make(ring: Ring, lo: int, terms, diffs) -> Complex:
    return Complex(ring, lo, tuple(terms), tuple(diffs))


def stalk_complex(m: Module, degree: int = 0) -> Complex:
    return Complex(m.ring, degree, (m,), ())


def disc_complex(m: Module, degree: int = 0) -> Complex:
    """m == m concentrated in degrees (degree, degree+1); acyclic."""
    return Complex(m.ring, degree, (m, m), (ModMap.identity(m),))


def evaluate_complex(c: Complex, i: int) -> Module:
    return c.term(i)


def cx_cohomology(c: Complex, i: int) -> Module:
    """ker d^i / im d^(i-1) in invariant normal form."""
    return subquotient(c.diff(i), c.diff(i - 1)).H


def cx_cohomology_data(c: Complex, i: int):
    return subquotient(c.diff(i), c.diff(i - 1))


def cx_is_acyclic(c: Complex) -> bool:
    return all(cx_cohomology(c, i).is_zero() for i in c.support())


def mu_c(c: Complex) -> tuple[int, ...]:
    """Summed per-component multiplicity of residue-field envelopes."""
    totals = [0] * c.ring.ncomp
    for t in c.terms:
        for k, n in enumerate(t.summands()):
            totals[k] += n
    return tuple(totals)


def shift_complex(c: Complex, k: int) -> Complex:
    """Reindex so old degree i sits in degree i + k (no sign changes)."""
    return Complex(c.ring, c.lo + k, c.terms, c.diffs)


def complex_direct_sum(parts: list[Complex]) -> Complex:
    if not parts:
        raise ValidationError("empty direct sum of complexes")
    ring = parts[0].ring
    lo = min(p.lo for p in parts)
    hi = max(p.hi for p in parts)
    terms = []
    sums = []
    for i in range(lo, hi + 1):
        ds = direct_sum([p.term(i) for p in parts])
        sums.append(ds)
        terms.append(ds.total)
    diffs = []
    for i in range(lo, hi):
        ds_i, ds_n = sums[i - lo], sums[i - lo + 1]
        d = None
        for t, p in enumerate(parts):
            piece = ds_n.injections[t] @ p.diff(i) @ ds_i.projections[t]
            d = piece if d is None else d + piece
        diffs.append(d)
    return Complex(ring, lo, tuple(terms), tuple(diffs))


def cx_minimality_check(c: Complex) -> bool:
    """Every kernel is essential; requires injective (free) terms."""
    for t in c.terms:
        if not t.is_free():
            raise PreconditionError("minimality check needs injective terms")
    for i in c.support():
        _, ker_incl = kernel_of(c.diff(i))
        if not is_essential(Submodule(c.term(i), tuple(ker_incl.columns()))):
            return False
    return True


# ---------------------------------------------------------------------------
# minimal injective resolutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Resolution:
    """Truncated minimal injective resolution 0 -> M -> J^0 -> ... -> J^L.

    cokernels[i] is the module the degree-i term envelopes (cokernels[0] is M
    itself); period = (start, length) once the cokernel sequence repeats, and
    the construction from a repeated normal form is deterministic, so the
    terms and differentials repeat verbatim from there on."""

    base: Module
    augmentation: ModMap
    complex: Complex
    cokernels: tuple[Module, ...]
    period: tuple[int, int] | None
    truncation: int

    def term(self, i: int) -> Module:
        return self.complex.term(i)

    def finished(self) -> bool:
        """True when the resolution terminates within the truncation."""
        return any(k.is_zero() for k in self.cokernels)

    def injective_dimension(self) -> int | None:
        """Length of the finite resolution, when it terminates."""
        if not self.finished():
            return None
        last = 0
        for i in range(self.truncation + 1):
            if not self.term(i).is_zero():
                last = i
        return last if not self.base.is_zero() else 0


def min_inj_resolution(m: Module, length: int) -> Resolution:
    """Iterated injective envelopes with period detection.

    J^0 = E(M); each next term envelopes the cokernel of the previous
    essential embedding, which keeps every kernel essential."""
    if length < 0:
        raise PreconditionError("resolution length must be nonnegative")
    ring = m.ring
    terms = []
    diffs = []
    cokernels = [m]
    seen = {m.invariants: 0}
    period = None
    current = m
    embed = None
    prev_proj = None
    for i in range(length + 1):
        env, incl = injective_envelope(current)
        terms.append(env)
        if i == 0:
            embed = incl
        else:
            diffs.append(incl @ prev_proj)
        nxt, proj = cokernel_of(incl)
        prev_proj = proj
        if period is None:
            key = nxt.invariants
            if key in seen:
                period = (seen[key], i + 1 - seen[key])
            else:
                seen[key] = i + 1
        cokernels.append(nxt)
        current = nxt
    res = Resolution(base=m, augmentation=embed,
                     complex=Complex(ring, 0, tuple(terms), tuple(diffs)),
                     cokernels=tuple(cokernels), period=period,
                     truncation=length)
    return res


def resolution_is_exact(res: Resolution) -> bool:
    """Exactness of 0 -> M -> J^0 -> ... through degree truncation-1."""
    aug = res.augmentation
    k, _ = kernel_of(aug)
    if not k.is_zero():
        return False
    if res.truncation >= 1:
        first = subquotient(res.complex.diff(0), aug)
        if not first.H.is_zero():
            return False
    for i in range(1, res.truncation):
        h = cx_cohomology(res.complex, i)
        if not h.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# Bass numbers, two routes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BassReport:
    mu: tuple[int, ...]            # per degree 0..L
    partial_sums: tuple[int, ...]
    route_a: tuple[int, ...]
    route_b: tuple[int, ...]
    period: tuple[int, int] | None
    verdict: str                   # "finite(n)" or "infinite" or "undetermined"
    injective_dimension: int | None


def _residue_field_ext_dims(ring: Ring, m: Module, length: int) -> list[int]:
    """dim_k of the degree-i derived homs from the residue field into m.

    Uses the minimal free resolution of the residue field over a chain ring:
    R <- R <- R <- ... with maps alternating pi and pi^(m-1); the route never
    touches the injective-envelope code."""
    cr = ring.components[0]
    if cr.m == 1:
        # the ring is a field; everything is free
        dims = [m.total_length()] + [0] * length
        return dims[:length + 1]
    def mult(power):
        n = len(m.invariants[0])
        val = cr.pi_pow(power)
        return ModMap(m, m, (tuple(tuple(val if i == j else cr.zero
                                         for j in range(n)) for i in range(n)),))
    lo_map = mult(1)            # dual of the first syzygy map
    hi_map = mult(cr.m - 1)
    dims = []
    for i in range(length + 1):
        if i == 0:
            h = kernel_of(lo_map)[0]
        elif i % 2 == 1:
            h = subquotient(hi_map, lo_map).H
        else:
            h = subquotient(lo_map, hi_map).H
        for e in h.invariants[0]:
            if e != 1:
                raise AssertionError("derived hom from the residue field must "
                                     "be a vector space")
        dims.append(len(h.invariants[0]))
    return dims


def bass_numbers(m: Module, length: int) -> BassReport:
    """Per-degree multiplicities of the residue-field envelope, cross-checked.

    Route A reads socle counts off the minimal injective resolution; route B
    computes derived-hom dimensions from the free resolution of the residue
    field.  The two must agree degree by degree."""
    ring = m.ring
    if ring.ncomp != 1:
        raise PreconditionError(
            "Bass numbers are defined over a local ring; decompose the module "
            "componentwise (see bass_numbers_componentwise)")
    res = min_inj_resolution(m, length)
    route_a = tuple(res.term(i).summands()[0] for i in range(length + 1))
    route_b = tuple(_residue_field_ext_dims(ring, m, length))
    if route_a != route_b:
        raise AssertionError(
            f"Bass number routes disagree: {route_a} vs {route_b}")
    partial = []
    acc = 0
    for v in route_a:
        acc += v
        partial.append(acc)
    inj_dim = res.injective_dimension()
    if inj_dim is not None:
        verdict = f"finite({inj_dim})"
    elif res.period is not None:
        start, plen = res.period
        window = route_a[start:start + plen] if start + plen <= length + 1 else ()
        if window and any(v > 0 for v in window):
            verdict = "infinite"
        else:
            verdict = "undetermined"
    else:
        verdict = "undetermined"
    return BassReport(mu=route_a, partial_sums=tuple(partial), route_a=route_a,
                      route_b=route_b, period=res.period, verdict=verdict,
                      injective_dimension=inj_dim)


def bass_numbers_componentwise(m: Module, length: int) -> tuple[BassReport, ...]:
    """One report per ring component (each component ring is local)."""
    out = []
    for c, cr in enumerate(m.ring.components):
        local = Ring((cr,))
        local_mod = make_module(local, [list(m.invariants[c])])
        out.append(bass_numbers(local_mod, length))
    return tuple(out)


def hom_from_residue_field_has_zero_diffs(c: Complex) -> bool:
    """Socle-to-next-term vanishing, degree by degree.

    Applying hom from the residue field to a complex gives the restriction
    of each differential to the socle; for a minimal complex these all die."""
    for i in c.support():
        d = c.diff(i)
        soc = socle(c.term(i))
        for g in soc.gens:
            img = d.apply(g)
            if any(not cr.is_zero(x) for cr, coords in zip(c.ring.components, img)
                   for x in coords):
                return False
    return True
