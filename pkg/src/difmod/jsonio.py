"""JSON document formats for every public value type.

Elements serialize as canonical strings ("3", "1+x"); product-ring elements
join their component strings with "|".  Matrices serialize densely in the
componentwise generator order, so cross-component entries are zero strings.
Every emitted document re-parses to an equal value.
"""

from __future__ import annotations

from .complexes import BassReport, Complex, Resolution
from .dm import DiffMod
from .errors import ParseError
from .modules import ModMap, Module
from .rings import KIND_FP, KIND_INT, KIND_RAT, ChainRing, Ring


def ring_to_json(ring: Ring) -> dict:
    comps = []
    for c in ring.components:
        comps.append({"kind": c.kind, "p": c.p, "m": c.m})
    return {"components": comps, "descriptor": ring.descriptor()}


def ring_from_json(doc: dict) -> Ring:
    try:
        comps = tuple(ChainRing(kind=c["kind"], p=c["p"], m=c["m"])
                      for c in doc["components"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad ring document: {exc}") from exc
    return Ring(comps)


def module_to_json(m: Module) -> dict:
    return {"ring": ring_to_json(m.ring),
            "invariants": [list(exps) for exps in m.invariants]}


def module_from_json(doc: dict) -> Module:
    ring = ring_from_json(doc["ring"])
    return Module(ring, tuple(tuple(e) for e in doc["invariants"]))


def _gen_positions(m: Module):
    """Flat generator order: componentwise, positions within component."""
    out = []
    for c in range(m.ring.ncomp):
        for j in range(len(m.invariants[c])):
            out.append((c, j))
    return out


def _entry_str(ring: Ring, comp: int, value) -> str:
    parts = []
    for c, cr in enumerate(ring.components):
        parts.append(cr.elem_to_str(value if c == comp else cr.zero))
    return "|".join(parts)


def modmap_to_json(f: ModMap) -> dict:
    ring = f.dom.ring
    rows = _gen_positions(f.cod)
    cols = _gen_positions(f.dom)
    matrix = []
    for (ci, i) in rows:
        row = []
        for (cj, j) in cols:
            if ci == cj:
                row.append(_entry_str(ring, ci, f.blocks[ci][i][j]))
            else:
                row.append(_entry_str(ring, ci, ring.components[ci].zero))
        matrix.append(row)
    return {"dom": module_to_json(f.dom), "cod": module_to_json(f.cod),
            "matrix": matrix}


def modmap_from_json(doc: dict) -> ModMap:
    dom = module_from_json(doc["dom"])
    cod = module_from_json(doc["cod"])
    ring = dom.ring
    rows = _gen_positions(cod)
    cols = _gen_positions(dom)
    matrix = doc["matrix"]
    if len(matrix) != len(rows) or any(len(r) != len(cols) for r in matrix):
        raise ParseError("matrix shape does not match the declared modules")
    blocks = [[[None] * len(dom.invariants[c]) for _ in cod.invariants[c]]
              for c in range(ring.ncomp)]
    for ri, (ci, i) in enumerate(rows):
        for cj, (cc, j) in enumerate(cols):
            value = ring.elem_from_str(matrix[ri][cj])
            if ci == cc:
                blocks[ci][i][j] = value[ci]
            elif not ring.components[ci].is_zero(value[ci]):
                raise ParseError("nonzero entry between different ring components")
    return ModMap(dom, cod, tuple(tuple(tuple(row) for row in b) for b in blocks))


def diffmod_to_json(d: DiffMod) -> dict:
    return {"module": module_to_json(d.module), "d": modmap_to_json(d.d),
            "provenance": d.provenance,
            "certified_semi_injective": d.certified_semi_injective,
            "proxy": d.proxy}


def diffmod_from_json(doc: dict) -> DiffMod:
    return DiffMod(module_from_json(doc["module"]), modmap_from_json(doc["d"]),
                   provenance=doc.get("provenance"),
                   certified_semi_injective=doc.get("certified_semi_injective",
                                                    False),
                   proxy=doc.get("proxy", False))


def complex_to_json(c: Complex) -> dict:
    return {"lo": c.lo, "hi": c.hi,
            "terms": [module_to_json(t) for t in c.terms],
            "diffs": [modmap_to_json(d) for d in c.diffs]}


def complex_from_json(doc: dict) -> Complex:
    terms = [module_from_json(t) for t in doc["terms"]]
    if not terms:
        raise ParseError("a complex document needs at least one term")
    diffs = [modmap_from_json(d) for d in doc["diffs"]]
    return Complex(terms[0].ring, doc["lo"], tuple(terms), tuple(diffs))


def resolution_to_json(res: Resolution) -> dict:
    return {"module": module_to_json(res.base),
            "augmentation": modmap_to_json(res.augmentation),
            "complex": complex_to_json(res.complex),
            "cokernels": [module_to_json(k) for k in res.cokernels],
            "period": list(res.period) if res.period else None,
            "truncation": res.truncation}


def bass_report_to_json(rep: BassReport) -> dict:
    return {"mu": list(rep.mu), "partial_sums": list(rep.partial_sums),
            "route_a": list(rep.route_a), "route_b": list(rep.route_b),
            "period": list(rep.period) if rep.period else None,
            "verdict": rep.verdict,
            "injective_dimension": rep.injective_dimension}
