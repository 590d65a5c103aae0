"""Differential modules: pairs (X, d) with d o d = 0.

Implements cohomology and quasi-isomorphisms, the four equivalent
contractibility criteria with verified witnesses, the injectivity and
minimality tests, the split-off of the maximal contractible-injective
summand from a square-zero endomorphism, and the multiplicity count of
residue-field-envelope summands.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError, ValidationError
from .modules import (
    DirectSum, ModMap, Module, Submodule, Subquotient, direct_sum, hom_basis,
    induced_hom_map, induced_on_subquotients, is_essential, is_isomorphism,
    kernel_of, make_module, map_from_columns, solve_map, subquotient,
    zero_module,
)
from .rings import Ring


@dataclass(frozen=True)
class DiffMod:
    """A module with a square-zero endomorphism.

    provenance records how the object was built; semi-injectivity has no
    finite intrinsic test, so it is certified only by construction and the
    flag rides along here.  Neither field takes part in equality."""

    module: Module
    d: ModMap
    provenance: str | None = field(default=None, compare=False)
    certified_semi_injective: bool = field(default=False, compare=False)
    proxy: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.d.dom != self.module or self.d.cod != self.module:
            raise ValidationError("differential endpoints must be the module itself")
        if not (self.d @ self.d).is_zero_map():
            raise ValidationError("differential does not square to zero")

    @property
    def ring(self) -> Ring:
        return self.module.ring

    def is_zero(self) -> bool:
        return self.module.is_zero()

    def with_provenance(self, provenance, certified=False, proxy=False) -> "DiffMod":
        return DiffMod(self.module, self.d, provenance=provenance,
                       certified_semi_injective=certified, proxy=proxy)


def dm_make(module: Module, d: ModMap, provenance: str | None = None) -> DiffMod:
    return DiffMod(module, d, provenance=provenance)


# ---------------------------------------------------------------------------
# basic functors
# ---------------------------------------------------------------------------

def stalk(m: Module) -> DiffMod:
    """The zero-differential object on m."""
    return DiffMod(m, ModMap.zero(m, m))


def pair(m: Module) -> DiffMod:
    """The left adjoint of the underlying-module functor: (M + M, shift).

    The differential carries the first copy identically onto the second;
    these are exactly the contractible objects up to isomorphism."""
    ds = direct_sum([m, m])
    d = ds.injections[1] @ ds.projections[0]
    return DiffMod(ds.total, d)


def evaluate(dm: DiffMod) -> Module:
    return dm.module


def dm_direct_sum(parts: list[DiffMod]) -> tuple[DiffMod, DirectSum]:
    if not parts:
        raise ValidationError("empty direct sum")
    ds = direct_sum([p.module for p in parts])
    d = None
    for p, inj, proj in zip(parts, ds.injections, ds.projections):
        term = inj @ p.d @ proj
        d = term if d is None else d + term
    return DiffMod(ds.total, d), ds


# ---------------------------------------------------------------------------
# cohomology and quasi-isomorphisms
# ---------------------------------------------------------------------------

def cohomology_data(dm: DiffMod) -> Subquotient:
    return subquotient(dm.d, dm.d)


def cohomology(dm: DiffMod) -> Module:
    """ker d / im d in invariant normal form."""
    return cohomology_data(dm).H


def is_acyclic(dm: DiffMod) -> bool:
    return cohomology(dm).is_zero()


def intertwines(f: ModMap, src: DiffMod, dst: DiffMod) -> bool:
    if f.dom != src.module or f.cod != dst.module:
        return False
    return (dst.d @ f - f @ src.d).is_zero_map()


def is_quasi_iso(f: ModMap, src: DiffMod, dst: DiffMod) -> bool:
    """Whether the induced map on cohomology is an isomorphism."""
    if not intertwines(f, src, dst):
        raise ValidationError("map does not intertwine the differentials")
    induced = induced_on_subquotients(cohomology_data(src), cohomology_data(dst), f)
    return is_isomorphism(induced)


# ---------------------------------------------------------------------------
# contractibility: four criteria with witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Homotopy:
    h: ModMap

    def certifies(self, dm: DiffMod) -> bool:
        ident = ModMap.identity(dm.module)
        return (dm.d @ self.h + self.h @ dm.d - ident).is_zero_map()


@dataclass(frozen=True)
class ContractibilityReport:
    c1_homotopy: bool
    c2_periodic_homotopy: bool
    c3_pair_form: bool
    c4_split_acyclic: bool
    homotopy: Homotopy | None
    retraction: ModMap | None

    def all_agree(self) -> bool:
        return self.c1_homotopy == self.c2_periodic_homotopy == \
            self.c3_pair_form == self.c4_split_acyclic


def _solve_one_sided(dm: DiffMod) -> Homotopy | None:
    """Solve id = h*d + d*h for a single endomorphism h."""
    hs = hom_basis(dm.module, dm.module)
    op = induced_hom_map(hs, hs, lambda g: g @ dm.d + dm.d @ g)
    target = hs.map_to_coords(ModMap.identity(dm.module))
    sol = solve_map(op, target)
    if sol is None:
        return None
    return Homotopy(hs.coords_to_map(hs.module.reduce_vector(sol)))


def _solve_two_sided(dm: DiffMod) -> bool:
    """Solvability of id = d*h0 + h1*d in independent unknowns (h0, h1).

    This is the degreewise system on one period of the unrolled periodic
    complex: a solution extends to a homotopy in every degree, and any
    degreewise homotopy restricts to one."""
    hs = hom_basis(dm.module, dm.module)
    m0 = induced_hom_map(hs, hs, lambda g: dm.d @ g)
    m1 = induced_hom_map(hs, hs, lambda g: g @ dm.d)
    ds = direct_sum([hs.module, hs.module])
    op = m0 @ ds.projections[0] + m1 @ ds.projections[1]
    target = hs.map_to_coords(ModMap.identity(dm.module))
    return solve_map(op, target) is not None


def _split_acyclic(dm: DiffMod):
    """Acyclicity plus a retraction of ker d -> X (the splitting witness)."""
    if not is_acyclic(dm):
        return False, None
    ker_mod, ker_incl = kernel_of(dm.d)
    hs = hom_basis(dm.module, ker_mod)
    end_space = hom_basis(ker_mod, ker_mod)
    op = induced_hom_map(hs, end_space, lambda g: g @ ker_incl)
    target = end_space.map_to_coords(ModMap.identity(ker_mod))
    sol = solve_map(op, target)
    if sol is None:
        return False, None
    retraction = hs.coords_to_map(hs.module.reduce_vector(sol))
    return True, retraction


def contractible_report(dm: DiffMod) -> ContractibilityReport:
    """Evaluate the four equivalent contractibility criteria independently."""
    hom = _solve_one_sided(dm)
    if hom is not None and not hom.certifies(dm):
        raise AssertionError("homotopy witness failed verification")
    c2 = _solve_two_sided(dm)
    stripped = strip_pairs(dm)
    c3 = stripped.minimal_part.module.is_zero()
    c4, retraction = _split_acyclic(dm)
    return ContractibilityReport(
        c1_homotopy=hom is not None, c2_periodic_homotopy=c2, c3_pair_form=c3,
        c4_split_acyclic=c4, homotopy=hom, retraction=retraction)


def is_contractible(dm: DiffMod) -> bool:
    return _solve_one_sided(dm) is not None


def is_injective_object(dm: DiffMod) -> bool:
    """Contractible with injective (free) underlying module."""
    return dm.module.is_free() and is_contractible(dm)


# ---------------------------------------------------------------------------
# minimality
# ---------------------------------------------------------------------------

def minimal_check(dm: DiffMod, require_injective: bool = True) -> bool:
    """Socle containment in ker d, the minimality criterion.

    Only meaningful for objects with injective underlying module; pass
    require_injective=False to evaluate the bare socle condition anyway."""
    if require_injective and not dm.module.is_free():
        raise PreconditionError(
            "minimality is only defined over injective underlying modules")
    _, ker_incl = kernel_of(dm.d)
    sub = Submodule(dm.module, tuple(ker_incl.columns()))
    return is_essential(sub)


def mu_d(dm: DiffMod) -> tuple[int, ...]:
    """Per-component count of residue-field-envelope summands of the carrier."""
    return dm.module.summands()


@dataclass(frozen=True)
class MuDReport:
    per_component: tuple[int, ...]
    total: int
    proxy: bool
    certified_semi_injective: bool


def mu_d_report(dm: DiffMod) -> MuDReport:
    per = mu_d(dm)
    return MuDReport(per_component=per, total=sum(per), proxy=dm.proxy,
                     certified_semi_injective=dm.certified_semi_injective)


# ---------------------------------------------------------------------------
# splitting off the contractible-injective part
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StripResult:
    """D = minimal_part (+) injective_part via an explicit change of basis.

    basis maps the block object (direct sum of the two parts) isomorphically
    onto the original carrier and conjugates block_d into the original
    differential; both are None exactly when the carrier is zero."""

    minimal_part: DiffMod
    injective_part: DiffMod
    basis: ModMap | None
    block_d: ModMap | None

    def verify(self, original: DiffMod) -> bool:
        if self.basis is None:
            return original.module.is_zero()
        if not is_isomorphism(self.basis):
            return False
        return (original.d @ self.basis - self.basis @ self.block_d).is_zero_map()


def _strip_component(cr, exps0, mat0):
    """Strip pair blocks inside one ring component.

    Returns (pairs, rest) where pairs is a list of (e, src_coords, img_coords)
    in original coordinates and rest = (exps, mat, basis_rows)."""
    n = len(exps0)
    exps = list(exps0)
    orig_exps = list(exps0)
    mat = [[mat0[i][j] for j in range(n)] for i in range(n)]
    basis = [[cr.one if r == k else cr.zero for r in range(n)] for k in range(n)]
    pairs = []

    def scale_gen(p, u):
        uinv = cr.unit_inverse(u)
        for i in range(len(mat)):
            mat[i][p] = cr.mul(mat[i][p], u, exps[i])
        mat[p] = [cr.mul(x, uinv, exps[p]) for x in mat[p]]
        basis[p] = [cr.mul(x, u, orig_exps[r]) for r, x in enumerate(basis[p])]

    def transvect(p, i, t):
        # gen_p += t * gen_i
        if cr.is_zero(t):
            return
        for r in range(len(mat)):
            mat[r][p] = cr.add(mat[r][p], cr.mul(t, mat[r][i]), exps[r])
        mat[i] = [cr.sub(x, cr.mul(t, y), exps[i]) for x, y in zip(mat[i], mat[p])]
        basis[p] = [cr.add(x, cr.mul(t, y), orig_exps[r])
                    for r, (x, y) in enumerate(zip(basis[p], basis[i]))]

    while True:
        pivot = None
        for i in range(len(mat)):
            for j in range(len(mat)):
                if i != j and exps[i] == exps[j] and cr.is_unit(mat[i][j]):
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        p, q = pivot
        col_q = [mat[i][q] for i in range(len(mat))]
        scale_gen(p, col_q[p])
        for i in range(len(mat)):
            if i != p:
                transvect(p, i, col_q[i])
        # the differential now carries gen_q exactly onto gen_p
        assert cr.is_zero(cr.sub(mat[p][q], cr.one))
        assert all(cr.is_zero(mat[i][q]) for i in range(len(mat)) if i != p)
        alphas = [mat[p][i] for i in range(len(mat))]
        betas = [mat[q][i] for i in range(len(mat))]
        for i in range(len(mat)):
            if i in (p, q):
                continue
            # gen_i -= alpha_i*gen_q + beta_i*gen_p; the sign flip reuses
            # transvect via negated coefficients
            transvect(i, q, cr.neg(alphas[i]))
            transvect(i, p, cr.neg(betas[i]))
        for i in range(len(mat)):
            if i not in (p, q):
                assert cr.is_zero(mat[p][i]) and cr.is_zero(mat[q][i])
        pairs.append((exps[q], list(basis[q]), list(basis[p])))
        keep = [i for i in range(len(mat)) if i not in (p, q)]
        mat = [[mat[i][j] for j in keep] for i in keep]
        basis = [basis[i] for i in keep]
        exps = [exps[i] for i in keep]
    return pairs, (exps, mat, basis)


def strip_pairs(dm: DiffMod) -> StripResult:
    """Split off pair blocks at unit pivots between equal-order summands.

    Sound for any carrier; on free carriers it realizes the full
    minimal (+) injective decomposition (see strip_decompose)."""
    ring = dm.ring
    comp_pairs = []
    comp_rest = []
    for c, cr in enumerate(ring.components):
        n = len(dm.module.invariants[c])
        mat = [[dm.d.blocks[c][i][j] for j in range(n)] for i in range(n)]
        pairs, rest = _strip_component(cr, list(dm.module.invariants[c]), mat)
        comp_pairs.append(pairs)
        comp_rest.append(rest)

    # minimal part: leftover generators, re-sorted into normal form
    orders = []
    min_exps = []
    for c in range(ring.ncomp):
        exps, mat, basis = comp_rest[c]
        order = sorted(range(len(exps)), key=lambda i: (-exps[i], i))
        orders.append(order)
        min_exps.append(tuple(exps[i] for i in order))
    min_module = Module(ring, tuple(min_exps))
    min_blocks = []
    for c in range(ring.ncomp):
        exps, mat, basis = comp_rest[c]
        order = orders[c]
        min_blocks.append(tuple(tuple(mat[i][j] for j in order) for i in order))
    minimal_part = DiffMod(min_module, ModMap(min_module, min_module,
                                              tuple(min_blocks)))

    # injective part: one pair object per stripped block
    pair_objects = []
    pair_embeddings = []  # (component, src_coords, img_coords)
    for c in range(ring.ncomp):
        for e, src, img in comp_pairs[c]:
            cyclic = make_module(ring, [[e] if cc == c else []
                                        for cc in range(ring.ncomp)])
            pair_objects.append(pair(cyclic))
            pair_embeddings.append((c, src, img))
    if pair_objects:
        injective_part, inj_ds = dm_direct_sum(pair_objects)
    else:
        injective_part, inj_ds = stalk(zero_module(ring)), None

    if dm.module.is_zero():
        return StripResult(minimal_part, injective_part, None, None)

    def ambient_vector(c, coords):
        vec = [tuple(cr2.zero for _ in dm.module.invariants[c2])
               for c2, cr2 in enumerate(ring.components)]
        vec[c] = tuple(coords)
        return tuple(vec)

    block_dm, block_ds = dm_direct_sum([minimal_part, injective_part])
    min_cols = []
    for c in range(ring.ncomp):
        exps, mat, basis = comp_rest[c]
        for i in orders[c]:
            min_cols.append(ambient_vector(c, basis[i]))
    u_min = map_from_columns(min_module, dm.module, min_cols)
    u_inj = ModMap.zero(injective_part.module, dm.module)
    if inj_ds is not None:
        for obj, proj, (c, src, img) in zip(pair_objects, inj_ds.projections,
                                            pair_embeddings):
            u = map_from_columns(obj.module, dm.module,
                                 [ambient_vector(c, src), ambient_vector(c, img)])
            u_inj = u_inj + (u @ proj)
    basis_map = (u_min @ block_ds.projections[0]) + (u_inj @ block_ds.projections[1])
    result = StripResult(minimal_part, injective_part, basis_map, block_dm.d)
    if not result.verify(dm):
        raise AssertionError("stripping certificate failed verification")
    return result


def strip_decompose(dm: DiffMod) -> StripResult:
    """Minimal (+) contractible-injective splitting for free carriers.

    The returned basis conjugates the block differential into the original
    one; the minimal part keeps only differential entries of positive
    valuation, so its socle lies in the kernel."""
    if not dm.module.is_free():
        raise PreconditionError("decomposition requires a free underlying module")
    result = strip_pairs(dm)
    for cr, block in zip(result.minimal_part.ring.components,
                         result.minimal_part.d.blocks):
        for row in block:
            for x in row:
                if cr.is_unit(x):
                    raise AssertionError("minimal part kept a unit entry")
    return result
