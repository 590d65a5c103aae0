"""Finitely generated modules over chain rings, in invariant normal form.

A module is a direct sum of cyclics R/(pi^e) per ring component, recorded as
a descending exponent list.  Maps are matrices whose (i, j) entry sends
generator j of the domain to a multiple of generator i of the codomain;
well-definedness forces valuation(entry) >= max(e_cod(i) - e_dom(j), 0) and
entries are stored reduced modulo pi^(e_cod(i)).

All kernel, image, cokernel and solving computations lift matrices to the
ambient PID, augment with the annihilator relations, run Smith normal form
there and reduce valuations back into [0, m].  Product rings are handled
strictly componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import ValidationError
from .rings import Ring
from .smith import kernel_columns, mat_vec, smith_normal_form, solve_linear


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Module:
    ring: Ring
    invariants: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.invariants) != self.ring.ncomp:
            raise ValidationError("one exponent list per ring component required")
        for cr, exps in zip(self.ring.components, self.invariants):
            for e in exps:
                if not 1 <= e <= cr.m:
                    raise ValidationError(f"exponent {e} outside [1, {cr.m}]")
            if tuple(sorted(exps, reverse=True)) != tuple(exps):
                raise ValidationError("exponents must be sorted descending")

    def length(self) -> tuple[int, ...]:
        return tuple(sum(exps) for exps in self.invariants)

    def total_length(self) -> int:
        return sum(self.length())

    def is_zero(self) -> bool:
        return all(not exps for exps in self.invariants)

    def is_free(self) -> bool:
        """Free = injective over a chain ring: every exponent maximal."""
        return all(e == cr.m for cr, exps in zip(self.ring.components, self.invariants)
                   for e in exps)

    def summands(self) -> tuple[int, ...]:
        return tuple(len(exps) for exps in self.invariants)

    def size(self) -> int | None:
        total = 1
        for cr, exps in zip(self.ring.components, self.invariants):
            if cr.kind == "Q":
                return None if exps else total
            for e in exps:
                total *= cr.p ** e
        return total

    def zero_vector(self):
        return tuple(tuple(cr.zero for _ in exps)
                     for cr, exps in zip(self.ring.components, self.invariants))

    def generator(self, comp: int, pos: int):
        vec = [list(cr.zero for _ in exps)
               for cr, exps in zip(self.ring.components, self.invariants)]
        vec[comp][pos] = self.ring.components[comp].one
        return tuple(tuple(c) for c in vec)

    def reduce_vector(self, vec):
        return tuple(tuple(cr.reduce(x, e) for x, e in zip(coords, exps))
                     for cr, coords, exps in zip(self.ring.components, vec,
                                                 self.invariants))

    def add_vectors(self, u, v):
        return tuple(tuple(cr.add(x, y, e) for x, y, e in zip(cu, cv, exps))
                     for cr, cu, cv, exps in zip(self.ring.components, u, v,
                                                 self.invariants))

    def scale_vector(self, scalar, v):
        """scalar is a ring element (per-component tuple)."""
        return tuple(tuple(cr.mul(s, x, e) for x, e in zip(cv, exps))
                     for cr, s, cv, exps in zip(self.ring.components, scalar, v,
                                                self.invariants))

    def elements(self) -> Iterator:
        """Enumerate all elements (finite rings only)."""
        def comp_elems(cr, exps):
            if not exps:
                return [()]
            out = [()]
            for e in exps:
                out = [prefix + (x,) for prefix in out for x in cr.elements(e)]
            return out
        pools = [comp_elems(cr, exps)
                 for cr, exps in zip(self.ring.components, self.invariants)]
        def rec(i, acc):
            if i == len(pools):
                yield tuple(acc)
                return
            for choice in pools[i]:
                acc.append(choice)
                yield from rec(i + 1, acc)
                acc.pop()
        yield from rec(0, [])


def make_module(ring: Ring, exponents) -> Module:
    """Build a module from per-component exponent lists (sorted for you)."""
    if exponents and isinstance(exponents[0], int):
        if ring.ncomp != 1:
            raise ValidationError("flat exponent list needs a single-component ring")
        exponents = [exponents]
    if len(exponents) != ring.ncomp:
        raise ValidationError("one exponent list per component required")
    return Module(ring, tuple(tuple(sorted(exps, reverse=True))
                              for exps in exponents))


def zero_module(ring: Ring) -> Module:
    return Module(ring, tuple(() for _ in ring.components))


def free_module(ring: Ring, rank) -> Module:
    """Free module; rank may be an int (same per component) or per-component."""
    if isinstance(rank, int):
        rank = [rank] * ring.ncomp
    return Module(ring, tuple(tuple([cr.m] * r)
                              for cr, r in zip(ring.components, rank)))


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModMap:
    dom: Module
    cod: Module
    blocks: tuple  # per component: tuple of row tuples

    def __post_init__(self):
        if self.dom.ring != self.cod.ring:
            raise ValidationError("map between modules over different rings")
        canon = []
        for cr, e_dom, e_cod, block in zip(self.dom.ring.components,
                                           self.dom.invariants, self.cod.invariants,
                                           self.blocks):
            if len(block) != len(e_cod):
                raise ValidationError("row count does not match codomain")
            rows = []
            for i, row in enumerate(block):
                if len(row) != len(e_dom):
                    raise ValidationError("column count does not match domain")
                out = []
                for j, entry in enumerate(row):
                    entry = cr.reduce(entry, e_cod[i])
                    need = max(e_cod[i] - e_dom[j], 0)
                    if cr.valuation(entry) < need:
                        raise ValidationError(
                            f"entry ({i},{j}) has valuation "
                            f"{cr.valuation(entry)} < {need}; map ill defined")
                    out.append(entry)
                rows.append(tuple(out))
            canon.append(tuple(rows))
        object.__setattr__(self, "blocks", tuple(canon))

    @staticmethod
    def identity(m: Module) -> "ModMap":
        blocks = []
        for cr, exps in zip(m.ring.components, m.invariants):
            n = len(exps)
            blocks.append(tuple(tuple(cr.one if i == j else cr.zero
                                      for j in range(n)) for i in range(n)))
        return ModMap(m, m, tuple(blocks))

    @staticmethod
    def zero(dom: Module, cod: Module) -> "ModMap":
        blocks = []
        for cr, e_dom, e_cod in zip(dom.ring.components, dom.invariants,
                                    cod.invariants):
            blocks.append(tuple(tuple(cr.zero for _ in e_dom) for _ in e_cod))
        return ModMap(dom, cod, tuple(blocks))

    def __matmul__(self, other: "ModMap") -> "ModMap":
        """Composition self o other."""
        if other.cod != self.dom:
            raise ValidationError("maps not composable")
        blocks = []
        for c, cr in enumerate(self.dom.ring.components):
            bg, bf = self.blocks[c], other.blocks[c]
            nrows = len(self.cod.invariants[c])
            ncols = len(other.dom.invariants[c])
            ninner = len(self.dom.invariants[c])
            e_cod = self.cod.invariants[c]
            rows = []
            for i in range(nrows):
                row = []
                for j in range(ncols):
                    acc = cr.zero
                    for k in range(ninner):
                        acc = cr.add(acc, cr.mul(bg[i][k], bf[k][j]), e_cod[i])
                    row.append(acc)
                rows.append(tuple(row))
            blocks.append(tuple(rows))
        return ModMap(other.dom, self.cod, tuple(blocks))

    def __add__(self, other: "ModMap") -> "ModMap":
        if self.dom != other.dom or self.cod != other.cod:
            raise ValidationError("cannot add maps with different ends")
        blocks = []
        for cr, ba, bb, e_cod in zip(self.dom.ring.components, self.blocks,
                                     other.blocks, self.cod.invariants):
            blocks.append(tuple(tuple(cr.add(x, y, e_cod[i])
                                      for x, y in zip(ra, rb))
                                for i, (ra, rb) in enumerate(zip(ba, bb))))
        return ModMap(self.dom, self.cod, tuple(blocks))

    def __sub__(self, other: "ModMap") -> "ModMap":
        return self + (-other)

    def __neg__(self) -> "ModMap":
        blocks = []
        for cr, b, e_cod in zip(self.dom.ring.components, self.blocks,
                                self.cod.invariants):
            blocks.append(tuple(tuple(cr.neg(x, e_cod[i]) for x in row)
                                for i, row in enumerate(b)))
        return ModMap(self.dom, self.cod, tuple(blocks))

    def scale(self, scalar) -> "ModMap":
        blocks = []
        for cr, s, b, e_cod in zip(self.dom.ring.components, scalar, self.blocks,
                                   self.cod.invariants):
            blocks.append(tuple(tuple(cr.mul(s, x, e_cod[i]) for x in row)
                                for i, row in enumerate(b)))
        return ModMap(self.dom, self.cod, tuple(blocks))

    def apply(self, vec):
        out = []
        for cr, b, coords, e_cod in zip(self.dom.ring.components, self.blocks, vec,
                                        self.cod.invariants):
            res = []
            for i, row in enumerate(b):
                acc = cr.zero
                for x, y in zip(row, coords):
                    acc = cr.add(acc, cr.mul(x, y), e_cod[i])
                res.append(acc)
            out.append(tuple(res))
        return tuple(out)

    def is_zero_map(self) -> bool:
        return all(cr.is_zero(x) for cr, b in zip(self.dom.ring.components,
                                                  self.blocks)
                   for row in b for x in row)

    def columns(self):
        """The generator images as codomain vectors (componentwise order)."""
        cols = []
        for comp in range(self.dom.ring.ncomp):
            for j in range(len(self.dom.invariants[comp])):
                vec = []
                for c in range(self.dom.ring.ncomp):
                    if c == comp:
                        vec.append(tuple(self.blocks[c][i][j]
                                         for i in range(len(self.cod.invariants[c]))))
                    else:
                        vec.append(tuple(self.dom.ring.components[c].zero
                                         for _ in self.cod.invariants[c]))
                cols.append(tuple(vec))
        return cols


def map_from_columns(dom: Module, cod: Module, cols) -> ModMap:
    """Assemble a map from generator images (one codomain vector per
    generator of the domain, ordered componentwise)."""
    order = []
    for comp in range(dom.ring.ncomp):
        for _ in range(len(dom.invariants[comp])):
            order.append(comp)
    per_comp_cols = [[] for _ in range(dom.ring.ncomp)]
    for comp, col in zip(order, cols):
        per_comp_cols[comp].append(col)
    blocks = []
    for c, cr in enumerate(dom.ring.components):
        ncod = len(cod.invariants[c])
        rows = []
        for i in range(ncod):
            rows.append(tuple(col[c][i] for col in per_comp_cols[c]))
        blocks.append(tuple(rows))
    return ModMap(dom, cod, tuple(blocks))


# ---------------------------------------------------------------------------
# per-component linear algebra via PID lifting
# ---------------------------------------------------------------------------

def _solve_component(cr, rows_mods, mat, target):
    """Solve mat*x = target where equation i holds modulo pi^(rows_mods[i]).

    Entries of mat and target are canonical chain-ring representatives; the
    returned x has entries reduced modulo pi^m, or None when unsolvable.
    """
    ncols = len(mat[0]) if mat else 0
    if not rows_mods:
        return [cr.zero] * ncols
    # pi^mods[i] may be the zero representative when mods[i] = m; the PID
    # lift must use the honest power, so bypass pi_pow's reduction
    dom = cr.domain()
    aug = []
    for i in range(len(rows_mods)):
        row = list(mat[i]) if mat else []
        for j in range(len(rows_mods)):
            row.append(_pid_pi_pow(cr, rows_mods[i]) if i == j else dom.zero)
        aug.append(row)
    sol = solve_linear(dom, aug, list(target))
    if sol is None:
        return None
    return [cr.reduce(x) for x in sol[:ncols]]


def _pid_pi_pow(cr, v):
    """pi^v in the ambient PID (not reduced; pi^m is nonzero there)."""
    if cr.kind == "Z":
        return cr.p ** v
    one = cr.domain().field.one
    zero = cr.domain().field.zero
    return tuple([zero] * v + [one])


def _kernel_component(cr, rows_mods, mat, ncols):
    """Generators of {x : mat*x = 0 mod pi^(rows_mods) rowwise}, reduced."""
    if ncols == 0:
        return []
    dom = cr.domain()
    if not rows_mods:
        gens = []
        for j in range(ncols):
            col = [cr.zero] * ncols
            col[j] = cr.one
            gens.append(col)
        return gens
    aug = []
    for i in range(len(rows_mods)):
        row = list(mat[i])
        for j in range(len(rows_mods)):
            row.append(_pid_pi_pow(cr, rows_mods[i]) if i == j else dom.zero)
        aug.append(row)
    gens = []
    for col in kernel_columns(dom, aug):
        reduced = [cr.reduce(x) for x in col[:ncols]]
        if any(not cr.is_zero(x) for x in reduced):
            gens.append(reduced)
    return gens


def _lattice_data(cr, ambient_exps, gen_cols):
    """Smith data of the lattice spanned by gen_cols plus the relations.

    Returns (diag_vals, U, Uinv) for the s x (t+s) matrix [G | diag(pi^e)],
    where s = len(ambient_exps).  diag_vals are the s diagonal valuations.
    """
    dom = cr.domain()
    s = len(ambient_exps)
    mat = []
    for i in range(s):
        row = [col[i] for col in gen_cols]
        for j in range(s):
            row.append(_pid_pi_pow(cr, ambient_exps[i]) if i == j else dom.zero)
        mat.append(row)
    sm = smith_normal_form(dom, mat)
    vals = [cr.valuation(cr.reduce(sm.D[i][i])) if not dom.is_zero(sm.D[i][i])
            else cr.m for i in range(s)]
    # the lattice contains diag(pi^e), hence has full rank: no zero diagonal
    for i in range(s):
        if dom.is_zero(sm.D[i][i]):
            raise AssertionError("relation lattice must have full rank")
    return sm, vals


def _quotient_component(cr, ambient_exps, gen_cols):
    """Normal form and projection for (⊕ R/pi^e) / <gen_cols>.

    Returns (exps_desc, proj_rows) where proj_rows[i] is the row of the
    projection hitting the i-th cyclic summand of the quotient.
    """
    s = len(ambient_exps)
    if s == 0:
        return [], []
    sm, vals = _lattice_data(cr, ambient_exps, gen_cols)
    keep = [(vals[i], i) for i in range(s) if vals[i] >= 1]
    keep.sort(key=lambda t: (-t[0], t[1]))
    exps = [v for v, _ in keep]
    rows = [[cr.reduce(x, v) for x in sm.U[i]] for v, i in keep]
    return exps, rows


def _submodule_component(cr, ambient_exps, gen_cols):
    """Normal form with explicit basis for the submodule <gen_cols>.

    Returns (exps_desc, basis_cols); basis_cols[i] generates a cyclic direct
    summand of order pi^(exps_desc[i]) and together they span the submodule.
    """
    s = len(ambient_exps)
    if s == 0 or not gen_cols:
        return [], []
    dom = cr.domain()
    sm, _ = _lattice_data(cr, ambient_exps, gen_cols)
    # lattice basis B = Uinv * D'; C = B^{-1} * diag(pi^e) = D'^{-1} U diag(pi^e)
    diag = [sm.D[i][i] for i in range(s)]
    rel = [[_pid_pi_pow(cr, ambient_exps[j]) if i == j else dom.zero
            for j in range(s)] for i in range(s)]
    W = [[None] * s for _ in range(s)]
    for i in range(s):
        for j in range(s):
            acc = dom.zero
            for k in range(s):
                acc = dom.add(acc, dom.mul(sm.U[i][k], rel[k][j]))
            q, r = dom.divmod(acc, diag[i])
            if not dom.is_zero(r):
                raise AssertionError("relation lattice not contained in span")
            W[i][j] = q
    sm2 = smith_normal_form(dom, W)
    # generators: columns of B * U2inv = Uinv * D' * U2inv
    Dp = [[diag[i] if i == j else dom.zero for j in range(s)] for i in range(s)]
    BU = _mat_mul3(dom, sm.Uinv, Dp, sm2.Uinv)
    out = []
    for i in range(s):
        v = cr.valuation(cr.reduce(sm2.D[i][i])) if not dom.is_zero(sm2.D[i][i]) \
            else cr.m
        if v >= 1:
            col = [cr.reduce(BU[r][i], ambient_exps[r]) for r in range(s)]
            out.append((v, i, col))
    out.sort(key=lambda t: (-t[0], t[1]))
    return [v for v, _, _ in out], [col for _, _, col in out]


def _mat_mul3(dom, a, b, c):
    from .smith import mat_mul
    return mat_mul(dom, mat_mul(dom, a, b), c)


# ---------------------------------------------------------------------------
# submodules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Submodule:
    ambient: Module
    gens: tuple  # vectors in the ambient module

    def __post_init__(self):
        object.__setattr__(self, "gens",
                           tuple(self.ambient.reduce_vector(g) for g in self.gens))

    def _component_cols(self, c):
        return [list(g[c]) for g in self.gens]

    def contains(self, vec) -> bool:
        vec = self.ambient.reduce_vector(vec)
        for c, cr in enumerate(self.ambient.ring.components):
            exps = self.ambient.invariants[c]
            cols = self._component_cols(c)
            mat = [[col[i] for col in cols] for i in range(len(exps))]
            if _solve_component(cr, list(exps), mat, list(vec[c])) is None:
                return False
        return True

    def contains_submodule(self, other: "Submodule") -> bool:
        return all(self.contains(g) for g in other.gens)

    def normal_form(self) -> tuple[Module, ModMap]:
        """The submodule as an abstract module with its inclusion."""
        exps_per_comp = []
        cols_per_comp = []
        for c, cr in enumerate(self.ambient.ring.components):
            exps, cols = _submodule_component(cr, list(self.ambient.invariants[c]),
                                              self._component_cols(c))
            exps_per_comp.append(tuple(exps))
            cols_per_comp.append(cols)
        sub = Module(self.ambient.ring, tuple(exps_per_comp))
        blocks = []
        for c, cr in enumerate(self.ambient.ring.components):
            nrow = len(self.ambient.invariants[c])
            cols = cols_per_comp[c]
            blocks.append(tuple(tuple(col[i] for col in cols) for i in range(nrow)))
        return sub, ModMap(sub, self.ambient, tuple(blocks))


def socle(m: Module) -> Submodule:
    """The largest semisimple submodule: pi^(e-1) times each generator."""
    gens = []
    for c, (cr, exps) in enumerate(zip(m.ring.components, m.invariants)):
        for j, e in enumerate(exps):
            g = m.generator(c, j)
            scalar = tuple(cr2.pi_pow(e - 1) if c2 == c else cr2.one
                           for c2, cr2 in enumerate(m.ring.components))
            gens.append(m.scale_vector(scalar, g))
    return Submodule(m, tuple(gens))


def socle_and_mu(m: Module) -> tuple[Submodule, tuple[int, ...]]:
    """Socle plus the per-component count of simple summands in it.

    For an injective (free) module over a chain ring this is the number of
    copies of the injective envelope of the residue field."""
    return socle(m), m.summands()


def mu(m: Module) -> tuple[int, ...]:
    return m.summands()


def is_essential(sub: Submodule) -> bool:
    """Essential (large) iff the socle of the ambient module is contained."""
    soc = socle(sub.ambient)
    return sub.contains_submodule(soc)


def injective_envelope(m: Module) -> tuple[Module, ModMap]:
    """The injective envelope (a free module) with its essential embedding.

    Over a chain ring E(R/(pi^e)) = R via 1 -> pi^(m-e)."""
    env = free_module(m.ring, list(m.summands()))
    blocks = []
    for cr, exps in zip(m.ring.components, m.invariants):
        n = len(exps)
        blocks.append(tuple(tuple(cr.pi_pow(cr.m - exps[j]) if i == j else cr.zero
                                  for j in range(n)) for i in range(n)))
    return env, ModMap(m, env, tuple(blocks))


# ---------------------------------------------------------------------------
# kernels, images, cokernels
# ---------------------------------------------------------------------------

def kernel_of(f: ModMap) -> tuple[Module, ModMap]:
    """Kernel in normal form with its inclusion into the domain."""
    gens = []
    ring = f.dom.ring
    for c, cr in enumerate(ring.components):
        e_dom = list(f.dom.invariants[c])
        e_cod = list(f.cod.invariants[c])
        mat = [list(row) for row in f.blocks[c]]
        for col in _kernel_component(cr, e_cod, mat, len(e_dom)):
            vec = [tuple(cr2.zero for _ in f.dom.invariants[c2])
                   for c2, cr2 in enumerate(ring.components)]
            vec[c] = tuple(cr.reduce(x, e) for x, e in zip(col, e_dom))
            gens.append(tuple(vec))
    return Submodule(f.dom, tuple(gens)).normal_form()


def image_of(f: ModMap) -> tuple[Module, ModMap]:
    """Image in normal form with its inclusion into the codomain."""
    return Submodule(f.cod, tuple(f.columns())).normal_form()


def cokernel_of(f: ModMap) -> tuple[Module, ModMap]:
    """Cokernel in normal form with the projection from the codomain."""
    return quotient_with_projection(f.cod, f.columns())


@dataclass(frozen=True)
class SubquotientParts:
    ker: Module
    ker_incl: ModMap
    im: Module
    im_incl: ModMap
    coker: Module
    coker_proj: ModMap


def map_subquotients(f: ModMap) -> SubquotientParts:
    """Kernel, image, cokernel with witnesses; lengths are rechecked."""
    ker, ker_incl = kernel_of(f)
    im, im_incl = image_of(f)
    coker, coker_proj = cokernel_of(f)
    for c in range(f.dom.ring.ncomp):
        ld, lc = f.dom.length()[c], f.cod.length()[c]
        if ld != ker.length()[c] + im.length()[c]:
            raise AssertionError("length additivity failed on the domain side")
        if lc != im.length()[c] + coker.length()[c]:
            raise AssertionError("length additivity failed on the codomain side")
    return SubquotientParts(ker, ker_incl, im, im_incl, coker, coker_proj)


def solve_map(f: ModMap, target):
    """One preimage vector under f, or None.  target lives in f.cod."""
    target = f.cod.reduce_vector(target)
    out = []
    for c, cr in enumerate(f.dom.ring.components):
        e_dom = list(f.dom.invariants[c])
        e_cod = list(f.cod.invariants[c])
        mat = [list(row) for row in f.blocks[c]]
        sol = _solve_component(cr, e_cod, mat, list(target[c]))
        if sol is None:
            return None
        out.append(tuple(cr.reduce(x, e) for x, e in zip(sol, e_dom)))
    return tuple(out)


def is_injective_map(f: ModMap) -> bool:
    ker, _ = kernel_of(f)
    return ker.is_zero()

def is_surjective_map(f: ModMap) -> bool:
    coker, _ = cokernel_of(f)
    return coker.is_zero()

def is_isomorphism(f: ModMap) -> bool:
    return (f.dom.invariants == f.cod.invariants and is_surjective_map(f))

def inverse_of(f: ModMap) -> ModMap:
    """Two-sided inverse of an isomorphism."""
    if not is_isomorphism(f):
        raise ValidationError("map is not invertible")
    cols = []
    for c in range(f.cod.ring.ncomp):
        for j in range(len(f.cod.invariants[c])):
            pre = solve_map(f, f.cod.generator(c, j))
            if pre is None:
                raise ValidationError("map is not invertible")
            cols.append(pre)
    inv = map_from_columns(f.cod, f.dom, cols)
    if not (inv @ f - ModMap.identity(f.dom)).is_zero_map():
        raise AssertionError("inverse verification failed")
    return inv


# ---------------------------------------------------------------------------
# subquotients (cohomology support)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subquotient:
    """ker(f)/im(g) for composable maps g, f with f o g = 0, with transport."""

    carrier: Module
    ker_mod: Module
    ker_incl: ModMap
    H: Module
    proj: ModMap  # ker_mod -> H

    def reduce(self, vec):
        """H-coordinates of an element of the carrier lying in ker(f)."""
        pre = solve_map(self.ker_incl, vec)
        if pre is None:
            raise ValidationError("element does not lie in the kernel")
        return self.proj.apply(pre)

    def lift(self, i_comp, i_pos):
        """A carrier element representing the (i_comp, i_pos) generator of H."""
        pre = solve_map(self.proj, self.H.generator(i_comp, i_pos))
        if pre is None:
            raise AssertionError("projection must be surjective")
        return self.ker_incl.apply(pre)


def quotient_with_projection(mod: Module, rel_vectors) -> tuple[Module, ModMap]:
    """mod / <rel_vectors> in normal form with the projection map."""
    ring = mod.ring
    exps_per_comp = []
    rows_per_comp = []
    for c, cr in enumerate(ring.components):
        cols = [list(vec[c]) for vec in rel_vectors]
        exps, rows = _quotient_component(cr, list(mod.invariants[c]), cols)
        exps_per_comp.append(tuple(exps))
        rows_per_comp.append(rows)
    quot = Module(ring, tuple(exps_per_comp))
    blocks = tuple(tuple(tuple(row) for row in rows_per_comp[c])
                   for c in range(ring.ncomp))
    return quot, ModMap(mod, quot, blocks)


def subquotient(f: ModMap, g: ModMap) -> Subquotient:
    """ker f / im g where g: W -> X and f: X -> Y with f o g = 0."""
    if g.cod != f.dom:
        raise ValidationError("subquotient needs composable maps")
    if not (f @ g).is_zero_map():
        raise ValidationError("maps do not compose to zero")
    ker_mod, ker_incl = kernel_of(f)
    rel_cols = []
    for col in g.columns():
        pre = solve_map(ker_incl, col)
        if pre is None:
            raise AssertionError("image not contained in kernel")
        rel_cols.append(pre)
    H, proj = quotient_with_projection(ker_mod, rel_cols)
    return Subquotient(carrier=f.dom, ker_mod=ker_mod, ker_incl=ker_incl,
                       H=H, proj=proj)


def induced_on_subquotients(sq1: Subquotient, sq2: Subquotient,
                            f: ModMap) -> ModMap:
    """The map H1 -> H2 induced by f (must send ker into ker, im into im)."""
    cols = []
    for c in range(sq1.H.ring.ncomp):
        for j in range(len(sq1.H.invariants[c])):
            x = sq1.lift(c, j)
            cols.append(sq2.reduce(f.apply(x)))
    return map_from_columns(sq1.H, sq2.H, cols)


# ---------------------------------------------------------------------------
# direct sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectSum:
    total: Module
    injections: tuple[ModMap, ...]
    projections: tuple[ModMap, ...]


def direct_sum(parts: list[Module]) -> DirectSum:
    """Normal-form direct sum with injections and projections.

    The summand order within each component is deterministic: exponents
    descending, ties broken by (part index, position)."""
    if not parts:
        raise ValidationError("direct_sum needs at least one summand (use a zero "
                              "module for an empty sum)")
    ring = parts[0].ring
    for p in parts:
        if p.ring != ring:
            raise ValidationError("direct sum of modules over different rings")
    layout = []  # per component: ordered list of (part index, position)
    exps_per_comp = []
    for c in range(ring.ncomp):
        slots = []
        for t, p in enumerate(parts):
            for pos, e in enumerate(p.invariants[c]):
                slots.append((-e, t, pos))
        slots.sort()
        layout.append([(t, pos) for _, t, pos in slots])
        exps_per_comp.append(tuple(-s[0] for s in slots))
    total = Module(ring, tuple(exps_per_comp))
    injections = []
    projections = []
    for t, p in enumerate(parts):
        inj_blocks = []
        proj_blocks = []
        for c, cr in enumerate(ring.components):
            rows_inj = []
            for slot in layout[c]:
                row = [cr.one if slot == (t, j) else cr.zero
                       for j in range(len(p.invariants[c]))]
                rows_inj.append(tuple(row))
            inj_blocks.append(tuple(rows_inj))
            rows_proj = []
            for j in range(len(p.invariants[c])):
                row = [cr.one if slot == (t, j) else cr.zero for slot in layout[c]]
                rows_proj.append(tuple(row))
            proj_blocks.append(tuple(rows_proj))
        injections.append(ModMap(p, total, tuple(inj_blocks)))
        projections.append(ModMap(total, p, tuple(proj_blocks)))
    return DirectSum(total, tuple(injections), tuple(projections))


# ---------------------------------------------------------------------------
# presentation classifier
# ---------------------------------------------------------------------------

def snf_classify(ring: Ring, entries, nrows: int, ncols: int) -> Module:
    """Cokernel of a free presentation R^c -> R^r in invariant normal form.

    entries[i][j] is a ring element (per-component tuple)."""
    if len(entries) != nrows or any(len(row) != ncols for row in entries):
        raise ValidationError("presentation matrix shape mismatch")
    exps_per_comp = []
    for c, cr in enumerate(ring.components):
        cols = [[cr.reduce(entries[i][j][c]) for i in range(nrows)]
                for j in range(ncols)]
        exps, _ = _quotient_component(cr, [cr.m] * nrows, cols)
        exps_per_comp.append(tuple(exps))
    return Module(ring, tuple(exps_per_comp))


# ---------------------------------------------------------------------------
# hom and tensor layouts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomSpace:
    """Hom(M, N) as a module with explicit coordinates.

    Slot (i, j) corresponds to Hom(R/pi^a_j, R/pi^b_i) = R/pi^min(a_j, b_i),
    generated by multiplication by pi^max(b_i - a_j, 0); slots are ordered by
    descending exponent to match the normal form of the hom module."""

    M: Module
    N: Module
    module: Module
    slots: tuple  # per component: tuple of (exp, i, j, shift)

    def coords_to_map(self, coords) -> ModMap:
        blocks = []
        for c, cr in enumerate(self.M.ring.components):
            e_dom = self.M.invariants[c]
            e_cod = self.N.invariants[c]
            mat = [[cr.zero] * len(e_dom) for _ in range(len(e_cod))]
            for (exp, i, j, shift), t in zip(self.slots[c], coords[c]):
                mat[i][j] = cr.mul(cr.pi_pow(shift), t, e_cod[i])
            blocks.append(tuple(tuple(row) for row in mat))
        return ModMap(self.M, self.N, tuple(blocks))

    def map_to_coords(self, f: ModMap):
        if f.dom != self.M or f.cod != self.N:
            raise ValidationError("map does not live in this hom space")
        out = []
        for c, cr in enumerate(self.M.ring.components):
            coords = []
            for exp, i, j, shift in self.slots[c]:
                coords.append(cr.reduce(cr.divide_by_pi(f.blocks[c][i][j], shift),
                                        exp))
            out.append(tuple(coords))
        return tuple(out)

    def generators(self) -> list[ModMap]:
        gens = []
        for c in range(self.M.ring.ncomp):
            for pos in range(len(self.slots[c])):
                gens.append(self.coords_to_map(self.module.generator(c, pos)))
        return gens


def hom_basis(M: Module, N: Module) -> HomSpace:
    """Hom(M, N) with its module structure and generating maps."""
    if M.ring != N.ring:
        raise ValidationError("hom between modules over different rings")
    slots_per_comp = []
    exps_per_comp = []
    for c, cr in enumerate(M.ring.components):
        slots = []
        for i, b in enumerate(N.invariants[c]):
            for j, a in enumerate(M.invariants[c]):
                slots.append((min(a, b), i, j, max(b - a, 0)))
        slots.sort(key=lambda s: (-s[0], s[1], s[2]))
        slots_per_comp.append(tuple(slots))
        exps_per_comp.append(tuple(s[0] for s in slots))
    module = Module(M.ring, tuple(exps_per_comp))
    return HomSpace(M, N, module, tuple(slots_per_comp))


def induced_hom_map(src: HomSpace, dst: HomSpace,
                    transform: Callable[[ModMap], ModMap]) -> ModMap:
    """Matrix of a linear operation Hom -> Hom computed on the slot basis."""
    cols = []
    for c in range(src.M.ring.ncomp):
        for pos in range(len(src.slots[c])):
            gen = src.coords_to_map(src.module.generator(c, pos))
            cols.append(dst.map_to_coords(transform(gen)))
    return map_from_columns(src.module, dst.module, cols)


@dataclass(frozen=True)
class TensorSpace:
    """M (x) N as a module with slot bookkeeping for transport.

    Slot (i, k): the cyclic summand generated by gen_i (x) gen_k, of order
    pi^min(a_i, b_k)."""

    M: Module
    N: Module
    module: Module
    slots: tuple  # per component: tuple of (exp, i, k)


def tensor_module(M: Module, N: Module) -> TensorSpace:
    if M.ring != N.ring:
        raise ValidationError("tensor of modules over different rings")
    slots_per_comp = []
    exps_per_comp = []
    for c in range(M.ring.ncomp):
        slots = []
        for i, a in enumerate(M.invariants[c]):
            for k, b in enumerate(N.invariants[c]):
                slots.append((min(a, b), i, k))
        slots.sort(key=lambda s: (-s[0], s[1], s[2]))
        slots_per_comp.append(tuple(slots))
        exps_per_comp.append(tuple(s[0] for s in slots))
    return TensorSpace(M, N, Module(M.ring, tuple(exps_per_comp)),
                       tuple(slots_per_comp))


def tensor_map(f: ModMap, t_dom: TensorSpace, t_cod: TensorSpace) -> ModMap:
    """f (x) N: requires t_dom = dom(f) (x) N and t_cod = cod(f) (x) N."""
    if t_dom.M != f.dom or t_cod.M != f.cod or t_dom.N != t_cod.N:
        raise ValidationError("tensor transport layouts do not match the map")
    blocks = []
    for c, cr in enumerate(f.dom.ring.components):
        rows = []
        for exp_r, i_r, k_r in t_cod.slots[c]:
            row = []
            for exp_c, i_c, k_c in t_dom.slots[c]:
                if k_r == k_c:
                    row.append(cr.reduce(f.blocks[c][i_r][i_c], exp_r))
                else:
                    row.append(cr.zero)
            rows.append(tuple(row))
        blocks.append(tuple(rows))
    return ModMap(t_dom.module, t_cod.module, tuple(blocks))


def bifunctors_tensor_hom(M: Module, N: Module) -> tuple[TensorSpace, HomSpace]:
    """The module-level tensor and hom bifunctors with transport data."""
    return tensor_module(M, N), hom_basis(M, N)
