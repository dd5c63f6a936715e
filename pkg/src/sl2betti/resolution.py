"""Graded free resolutions, Betti tables, and the Koszul homology oracle.

Resolutions are built level by level: a module Groebner basis of the current
(minimal) generators is computed with full cofactor tracking, every treated
S-pair that reduces to zero leaves a syzygy of those generators, and the
syzygies become the next level's generators.  Building each level from a
minimal generating set makes the resulting chain minimal; the raw mode keeps
every Schreyer syzygy instead and leaves the cleanup to `minimize`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from .groebner import (
    BuchbergerEngine,
    GroebnerBasis,
    Ideal,
    ModMono,
    buchberger,
    monomials_of_degree,
    standard_monomials,
)
from .linalg import Echelon, intify
from .poly import (
    Exponent,
    GradedRing,
    MonomialOrder,
    Polynomial,
    WEIGHTED,
    monomial_mul,
)


@dataclass(frozen=True)
class FreeModule:
    """Graded free module: generator k has weighted degree shifts[k]."""

    shifts: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.shifts)


@dataclass
class ModuleElement:
    """Element of a free module, one polynomial component per generator."""

    module: FreeModule
    components: Tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        if len(self.components) != self.module.rank:
            raise ValueError("component count must equal the module rank")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def degree(self) -> int:
        """Weighted degree when homogeneous; -1 for zero."""
        degs = {
            c.weighted_degree() + s
            for c, s in zip(self.components, self.module.shifts)
            if not c.is_zero()
        }
        if not degs:
            return -1
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        degs = set()
        for c, s in zip(self.components, self.module.shifts):
            if c.is_zero():
                continue
            if not c.is_homogeneous():
                return False
            degs.add(c.weighted_degree() + s)
        return len(degs) <= 1


Matrix = Dict[int, Dict[int, Polynomial]]  # column -> row -> entry


@dataclass
class Resolution:
    """Chain F_l -> ... -> F_1 -> F_0 = R with differentials d_i: F_i -> F_{i-1}."""

    ring: GradedRing
    modules: List[FreeModule]
    differentials: List[Matrix]  # differentials[i] = d_{i+1}: F_{i+1} -> F_i
    flags: List[str] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def differential(self, i: int) -> Matrix:
        """d_i: F_i -> F_{i-1}, for 1 <= i <= length."""
        return self.differentials[i - 1]

    def entry(self, i: int, row: int, col: int) -> Polynomial:
        return self.differential(i).get(col, {}).get(row, self.ring.zero())

    def is_minimal(self) -> bool:
        for d in self.differentials:
            for col in d.values():
                for p in col.values():
                    if not p.is_zero() and p.weighted_degree() == 0:
                        return False
        return True


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j} plus length and maximal shift."""

    entries: Dict[Tuple[int, int], int]
    length: int
    j_star: int

    @classmethod
    def from_entries(cls, entries: Dict[Tuple[int, int], int]) -> "BettiTable":
        entries = {k: v for k, v in entries.items() if v}
        entries.setdefault((0, 0), 1)
        length = max(i for i, _ in entries)
        j_star = max(j for _, j in entries)
        return cls(entries, length, j_star)

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.entries == other.entries


# ---------------------------------------------------------------------------
# module orders
# ---------------------------------------------------------------------------

def base_keyfn(ring: GradedRing, order: MonomialOrder = WEIGHTED) -> Callable[[ModMono], tuple]:
    """Key on rank-one module monomials: the ring order."""
    base = order.key_function(ring)
    return lambda mm: base(mm[1])


def pot_keyfn(ring: GradedRing, order: MonomialOrder = WEIGHTED) -> Callable[[ModMono], tuple]:
    """Position over term: lower position wins, ring order breaks ties."""
    base = order.key_function(ring)
    return lambda mm: (-mm[0],) + base(mm[1])


def schreyer_keyfn(
    prev_keyfn: Callable[[ModMono], tuple], tags: Sequence[ModMono]
) -> Callable[[ModMono], tuple]:
    """Order induced by the previous level's leading terms, position tie-break."""

    def key(mm: ModMono) -> tuple:
        pos, m = mm
        tpos, tmono = tags[pos]
        return prev_keyfn((tpos, monomial_mul(tmono, m))) + (-pos,)

    return key


# ---------------------------------------------------------------------------
# module Groebner bases and syzygies
# ---------------------------------------------------------------------------

def _element_to_mvec(el: ModuleElement) -> Dict[ModMono, Fraction]:
    vec: Dict[ModMono, Fraction] = {}
    for pos, comp in enumerate(el.components):
        for m, c in comp.terms.items():
            vec[(pos, m)] = c
    return vec


def _mvec_to_element(
    ring: GradedRing, module: FreeModule, vec: Dict[ModMono, object]
) -> ModuleElement:
    comps: List[Dict[Exponent, Fraction]] = [dict() for _ in range(module.rank)]
    for (pos, m), c in vec.items():
        comps[pos][m] = Fraction(c)
    return ModuleElement(
        module, tuple(Polynomial._raw(ring, d) for d in comps)
    )


def _trace_to_element(
    ring: GradedRing, module: FreeModule, trace: Dict[int, Dict[Exponent, int]]
) -> ModuleElement:
    comps: List[Dict[Exponent, Fraction]] = [dict() for _ in range(module.rank)]
    for pos, p in trace.items():
        for m, c in p.items():
            comps[pos][m] = Fraction(c)
    return ModuleElement(
        module, tuple(Polynomial._raw(ring, d) for d in comps)
    )


@dataclass
class ModuleGB:
    """Module Groebner basis with cofactors over the input elements."""

    ring: GradedRing
    ambient: FreeModule
    inputs: List[ModuleElement]
    elements: List[ModuleElement]
    leads: List[ModMono]
    cofactors: List[Dict[int, Dict[Exponent, Fraction]]]
    keyfn: Callable[[ModMono], tuple]
    redundant_inputs: Set[int]
    input_syzygies: List[ModuleElement]   # syzygies of the inputs, not the basis
    _is_ideal: bool = False


def module_groebner(
    elements: Sequence[ModuleElement],
    module: FreeModule,
    ring: Optional[GradedRing] = None,
    keyfn: Optional[Callable[[ModMono], tuple]] = None,
    *,
    is_ideal: bool = False,
) -> ModuleGB:
    """Groebner basis of a submodule with Schreyer-ready bookkeeping."""
    elements = list(elements)
    if ring is None:
        if not elements:
            raise ValueError("need at least one element or an explicit ring")
        ring = elements[0].components[0].ring
    if keyfn is None:
        keyfn = pot_keyfn(ring) if module.rank > 1 else base_keyfn(ring)
    for el in elements:
        if not el.is_homogeneous():
            raise ValueError("module Groebner input must be homogeneous")
    engine = BuchbergerEngine(
        ring,
        [_element_to_mvec(el) for el in elements],
        module.shifts,
        keyfn,
        track_cofactors=True,
        want_syzygies=True,
        is_ideal=is_ideal or module.rank == 1,
    )
    res = engine.run()
    gb_elements = [_mvec_to_element(ring, module, vec) for vec in res.basis]
    input_module = FreeModule(tuple(el.degree() for el in elements))
    syz = [
        _trace_to_element(ring, input_module, t) for t in res.syzygies
    ] + [
        _trace_to_element(ring, input_module, t) for _, t in res.input_traces
    ]
    return ModuleGB(
        ring=ring,
        ambient=module,
        inputs=elements,
        elements=gb_elements,
        leads=res.leads,
        cofactors=res.cofactors,
        keyfn=keyfn,
        redundant_inputs=res.redundant_inputs,
        input_syzygies=[s for s in syz if not s.is_zero()],
        _is_ideal=is_ideal or module.rank == 1,
    )


def syzygies(gb: ModuleGB) -> Tuple[FreeModule, List[ModuleElement]]:
    """Schreyer generators of the kernel of the map defined by gb.elements.

    Shifts of the output module are the degrees of the basis elements.
    """
    engine = BuchbergerEngine(
        gb.ring,
        [_element_to_mvec(el) for el in gb.elements],
        gb.ambient.shifts,
        gb.keyfn,
        track_cofactors=True,
        want_syzygies=True,
        is_ideal=gb._is_ideal,
    )
    res = engine.run()
    out_module = FreeModule(tuple(el.degree() for el in gb.elements))
    out = [_trace_to_element(gb.ring, out_module, t) for t in res.syzygies]
    out += [_trace_to_element(gb.ring, out_module, t) for _, t in res.input_traces]
    out = [s for s in out if not s.is_zero()]
    out.sort(key=lambda el: el.degree())
    return out_module, out


# ---------------------------------------------------------------------------
# resolutions
# ---------------------------------------------------------------------------

def resolve(I: Ideal, *, minimalize_levels: bool = True) -> Resolution:
    """Free resolution of R/I by iterated module Groebner bases and syzygies.

    With minimalize_levels (the default) each level keeps only a minimal
    generating set of the syzygy module, so the output chain is minimal.
    The raw mode keeps every Schreyer syzygy; `minimize` removes the junk.
    Terminates within the variable count by the syzygy theorem.
    """
    ring = I.ring
    gens = I.nonzero_generators()
    flags: List[str] = []
    if len(gens) != len(I.generators):
        flags.append("zero generators dropped")
    modules = [FreeModule((0,))]
    diffs: List[Matrix] = []
    if not gens:
        return Resolution(ring, modules, diffs, flags)
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("resolve requires homogeneous generators")

    # level data: inputs as mvecs over the previous module
    inputs: List[Dict[ModMono, int]] = []
    input_degrees: List[int] = []
    for g in gens:
        gn = g.normalize()
        inputs.append({(0, m): c.numerator for m, c in gn.terms.items()})
        input_degrees.append(gn.weighted_degree())
    keyfn = base_keyfn(ring)
    level = 1
    while inputs:
        if level > ring.nvars + 1:
            raise AssertionError("resolution exceeded the syzygy theorem bound")
        prev_module = modules[-1]
        engine = BuchbergerEngine(
            ring,
            inputs,
            prev_module.shifts,
            keyfn,
            track_cofactors=True,
            want_syzygies=True,
            is_ideal=(level == 1),
        )
        res = engine.run()
        if minimalize_levels:
            kept = [i for i in range(len(inputs)) if i not in res.redundant_inputs]
            if res.redundant_inputs and level == 1:
                flags.append("input generators were not minimal")
            traces = list(res.syzygies)
        else:
            kept = list(range(len(inputs)))
            traces = list(res.syzygies) + [t for _, t in res.input_traces]
        pos_of_input = {idx: pos for pos, idx in enumerate(kept)}
        module = FreeModule(tuple(input_degrees[i] for i in kept))
        matrix: Matrix = {}
        for pos, idx in enumerate(kept):
            col: Dict[int, Dict[Exponent, Fraction]] = {}
            for (row, m), c in inputs[idx].items():
                col.setdefault(row, {})[m] = Fraction(c)
            matrix[pos] = {
                row: Polynomial._raw(ring, d) for row, d in col.items()
            }
        modules.append(module)
        diffs.append(matrix)

        # syzygies of the kept inputs become the next level's inputs
        next_inputs: List[Dict[ModMono, int]] = []
        next_degrees: List[int] = []
        tagged: List[Tuple[int, Dict[ModMono, int]]] = []
        for t in traces:
            vec: Dict[ModMono, int] = {}
            for idx, p in t.items():
                if idx not in pos_of_input:
                    # trace touching a dropped input: only possible in raw
                    # mode, where nothing is dropped
                    raise AssertionError("syzygy references a dropped generator")
                pos = pos_of_input[idx]
                for m, c in p.items():
                    vec[(pos, m)] = c
            if not vec:
                continue
            deg = _mvec_degree(ring, module, vec)
            tagged.append((deg, vec))
        tagged.sort(key=lambda dv: dv[0])
        for deg, vec in tagged:
            next_inputs.append(vec)
            next_degrees.append(deg)
        # Schreyer order induced by the kept inputs' leading terms
        tags = [max(inputs[idx], key=keyfn) for idx in kept]
        keyfn = schreyer_keyfn(keyfn, tags)
        inputs = next_inputs
        input_degrees = next_degrees
        level += 1
    return Resolution(ring, modules, diffs, flags)


def _mvec_degree(ring: GradedRing, module: FreeModule, vec: Dict[ModMono, int]) -> int:
    degs = {
        ring.weighted_degree(m) + module.shifts[pos] for (pos, m) in vec
    }
    if len(degs) != 1:
        raise AssertionError("syzygy trace is not homogeneous")
    return degs.pop()


# ---------------------------------------------------------------------------
# minimization by unit cancellation
# ---------------------------------------------------------------------------

def _constant_value(p: Polynomial) -> Optional[Fraction]:
    if len(p.terms) != 1:
        return None
    (m, c), = p.terms.items()
    if any(m):
        return None
    return c


def minimize(res: Resolution, rng: Optional[random.Random] = None) -> Resolution:
    """Cancel scalar differential entries until the complex is minimal.

    Deterministic scan from the highest homological index downward unless an
    rng is supplied, in which case the cancellation order is randomized; the
    Betti data of the output is independent of that order.
    """
    ring = res.ring
    mods: List[Dict[int, int]] = [
        {k: s for k, s in enumerate(m.shifts)} for m in res.modules
    ]
    diffs: List[Dict[int, Dict[int, Polynomial]]] = [
        {c: dict(rows) for c, rows in d.items()} for d in res.differentials
    ]

    def find_units() -> List[Tuple[int, int, int]]:
        found = []
        for i in range(len(diffs) - 1, -1, -1):
            for c in sorted(diffs[i]):
                for r in sorted(diffs[i][c]):
                    if _constant_value(diffs[i][c][r]) is not None:
                        found.append((i, r, c))
        return found

    while True:
        units = find_units()
        if not units:
            break
        if rng is None:
            i, r, c = units[0]
        else:
            i, r, c = units[rng.randrange(len(units))]
        u = _constant_value(diffs[i][c][r])
        d = diffs[i]
        col_c = d.pop(c)
        col_entries = {rr: p for rr, p in col_c.items() if rr != r}
        row_entries = {}
        for cc in list(d):
            p = d[cc].pop(r, None)
            if p is not None and not p.is_zero():
                row_entries[cc] = p
            if not d[cc]:
                del d[cc]
        # Schur complement on d_i
        for cc, rowp in row_entries.items():
            for rr, colp in col_entries.items():
                upd = d.setdefault(cc, {})
                cur = upd.get(rr, ring.zero())
                new = cur - colp * rowp.scale(Fraction(1) / u)
                if new.is_zero():
                    upd.pop(rr, None)
                    if not upd:
                        del d[cc]
                else:
                    upd[rr] = new
        # d_{i+1}: row c disappears; redistribute through the column entries
        if i + 1 < len(diffs):
            dn = diffs[i + 1]
            for t in list(dn):
                val = dn[t].pop(c, None)
                if val is not None and not val.is_zero():
                    for rr, colp in col_entries.items():
                        cur = dn[t].get(rr, ring.zero())
                        new = cur - colp * val.scale(Fraction(1) / u)
                        if new.is_zero():
                            dn[t].pop(rr, None)
                        else:
                            dn[t][rr] = new
                if not dn[t]:
                    del dn[t]
        # d_{i-1}: column r disappears; redistribute through the row entries
        if i - 1 >= 0:
            dp = diffs[i - 1]
            col_r = dp.pop(r, None)
            if col_r:
                for cc, rowp in row_entries.items():
                    tgt = dp.setdefault(cc, {})
                    for rr, p in col_r.items():
                        cur = tgt.get(rr, ring.zero())
                        new = cur - p * rowp.scale(Fraction(1) / u)
                        if new.is_zero():
                            tgt.pop(rr, None)
                        else:
                            tgt[rr] = new
                    if not tgt:
                        dp.pop(cc, None)
        del mods[i + 1][c]
        del mods[i][r]

    # repack indices and drop empty tail modules
    new_modules: List[FreeModule] = []
    remaps: List[Dict[int, int]] = []
    for live in mods:
        remap = {old: new for new, old in enumerate(sorted(live))}
        remaps.append(remap)
        new_modules.append(FreeModule(tuple(live[old] for old in sorted(live))))
    new_diffs: List[Matrix] = []
    for i, d in enumerate(diffs):
        out: Matrix = {}
        for c, rows in d.items():
            out[remaps[i + 1][c]] = {
                remaps[i][r]: p for r, p in rows.items() if not p.is_zero()
            }
        new_diffs.append(out)
    while new_modules and new_modules[-1].rank == 0:
        new_modules.pop()
        if new_diffs:
            new_diffs.pop()
    return Resolution(ring, new_modules, new_diffs, list(res.flags))


def betti(res: Resolution) -> BettiTable:
    """Graded Betti numbers of a minimal resolution."""
    if not res.is_minimal():
        raise ValueError("betti requires a minimal resolution; run minimize first")
    entries: Dict[Tuple[int, int], int] = {(0, 0): 1}
    if res.modules and res.modules[0].shifts != (0,):
        raise ValueError("resolution must start at F_0 = R")
    for i, mod in enumerate(res.modules[1:], start=1):
        for s in mod.shifts:
            entries[(i, s)] = entries.get((i, s), 0) + 1
    return BettiTable.from_entries(entries)


# ---------------------------------------------------------------------------
# Koszul homology oracle
# ---------------------------------------------------------------------------

class _NormalFormTable:
    """Normal forms of monomials modulo a Groebner basis, as vectors over
    the standard monomials of each weighted degree."""

    def __init__(self, gb: GroebnerBasis):
        self.gb = gb
        self.ring = gb.ring
        keyfn = gb.order.key_function(gb.ring)
        self._keyfn = keyfn
        self.std: Dict[int, List[Exponent]] = {}
        self.index: Dict[int, Dict[Exponent, int]] = {}
        self._engine = BuchbergerEngine(
            self.ring, [], [0], lambda mm: keyfn(mm[1]), track_cofactors=False,
            is_ideal=True,
        )
        for g in gb.elements:
            vec = {(0, m): c for m, c in g.normalize(gb.order).terms.items()}
            lead = max(vec, key=self._engine.keyfn)
            self._engine.basis.append({mm: c.numerator for mm, c in vec.items()})
            self._engine.leads.append(lead)
            self._engine.lead_coeffs.append(vec[lead].numerator)
            self._engine.sugars.append(0)
            self._engine.cofactors.append({})
            self._engine.by_pos.setdefault(0, []).append(len(self._engine.basis) - 1)
        self._nf_cache: Dict[Exponent, Dict[int, Fraction]] = {}

    def standard(self, degree: int) -> List[Exponent]:
        got = self.std.get(degree)
        if got is None:
            got = standard_monomials(self.gb, degree)
            got.sort(key=self._keyfn, reverse=True)
            self.std[degree] = got
            self.index[degree] = {m: i for i, m in enumerate(got)}
        return got

    def nf_vector(self, mono: Exponent) -> Dict[int, Fraction]:
        """NF(mono) as {standard-monomial index: coefficient} in its degree."""
        got = self._nf_cache.get(mono)
        if got is not None:
            return got
        degree = self.ring.weighted_degree(mono)
        self.standard(degree)
        idx = self.index[degree]
        if mono in idx:
            out = {idx[mono]: Fraction(1)}
        else:
            rem, _ = self._engine._divide({(0, mono): 1})
            out = {idx[mm[1]]: c for mm, c in rem.items()}
        self._nf_cache[mono] = out
        return out


def koszul_betti(
    I: Ideal,
    j_cap: int,
    ring: Optional[GradedRing] = None,
    order: MonomialOrder = WEIGHTED,
) -> BettiTable:
    """Betti numbers up to shift j_cap via Koszul strand homology.

    beta_{i,j} = dim of the degree-j strand homology of K(x_1..x_m) (x) R/I,
    computed degreewise by exact linear algebra; independent of any
    resolution.  Cost grows quickly with j_cap, which the caller bounds.
    """
    ring = ring or I.ring
    if not I.is_homogeneous():
        raise ValueError("koszul_betti requires a homogeneous ideal")
    gb = buchberger(I, order, track_cofactors=False)
    table = _NormalFormTable(gb)
    m = ring.nvars
    weights = ring.weights

    # strand bases: (i, j) -> list of (subset, std monomial)
    def subset_degree(S: Tuple[int, ...]) -> int:
        return sum(weights[t] for t in S)

    bases: Dict[Tuple[int, int], List[Tuple[Tuple[int, ...], Exponent]]] = {}
    base_index: Dict[Tuple[int, int], Dict[Tuple[Tuple[int, ...], Exponent], int]] = {}

    def strand_basis(i: int, j: int) -> List[Tuple[Tuple[int, ...], Exponent]]:
        key = (i, j)
        got = bases.get(key)
        if got is not None:
            return got
        out: List[Tuple[Tuple[int, ...], Exponent]] = []
        if 0 <= i <= m:
            for S in combinations(range(m), i):
                d = j - subset_degree(S)
                if d < 0:
                    continue
                for u in table.standard(d):
                    out.append((S, u))
        bases[key] = out
        base_index[key] = {b: k for k, b in enumerate(out)}
        return out

    def differential_rank(i: int, j: int) -> int:
        """Rank of the strand map (K_i (x) R/I)_j -> (K_{i-1} (x) R/I)_j."""
        if i < 1 or i > m:
            return 0
        dom = strand_basis(i, j)
        if not dom:
            return 0
        strand_basis(i - 1, j)
        idx = base_index[(i - 1, j)]
        ech = Echelon()
        for (S, u) in dom:
            colvec: Dict[int, Fraction] = {}
            for k, t in enumerate(S):
                S2 = S[:k] + S[k + 1:]
                mono = tuple(
                    e + (1 if v == t else 0) for v, e in enumerate(u)
                )
                nf = table.nf_vector(mono)
                if not nf:
                    continue
                d2 = j - subset_degree(S2)
                std2 = table.std[d2]
                sign = -1 if k % 2 else 1
                for pos, c in nf.items():
                    tgt = idx[(S2, std2[pos])]
                    s = colvec.get(tgt, Fraction(0)) + sign * c
                    if s:
                        colvec[tgt] = s
                    else:
                        colvec.pop(tgt, None)
            if colvec:
                ech.add(intify(colvec))
        return ech.rank

    entries: Dict[Tuple[int, int], int] = {}
    for j in range(j_cap + 1):
        ranks: Dict[int, int] = {}
        for i in range(m + 1):
            if i == 0:
                continue
            ranks[i] = differential_rank(i, j)
        ranks[m + 1] = 0
        for i in range(m + 1):
            dim = len(strand_basis(i, j))
            if dim == 0:
                continue
            b = dim - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if b:
                entries[(i, j)] = b
    return BettiTable.from_entries(entries)


# ---------------------------------------------------------------------------
# complex verification
# ---------------------------------------------------------------------------

def format_resolution(res: Resolution) -> str:
    """Dump: per homological index the shift list, then each differential as
    sparse (row, col, polynomial) triples in the text grammar."""
    from .poly import format_polynomial

    lines = []
    for i, mod in enumerate(res.modules):
        lines.append(f"module {i} shifts {' '.join(map(str, mod.shifts))}")
    for i in range(1, res.length + 1):
        lines.append(f"differential {i}")
        d = res.differential(i)
        for c in sorted(d):
            for r in sorted(d[c]):
                p = d[c][r]
                if not p.is_zero():
                    lines.append(f"  {r} {c} {format_polynomial(p)}")
    return "\n".join(lines) + "\n"


@dataclass
class ComplexReport:
    ok: bool
    message: str = "complex verified"
    failure: Optional[Tuple[str, int, int]] = None  # (kind, level, degree)


def verify_complex(res: Resolution, e_cap: int) -> ComplexReport:
    """Assert d.d = 0 exactly and degreewise exactness at F_i for i >= 1."""
    ring = res.ring
    # composition check
    for i in range(2, res.length + 1):
        d_hi = res.differential(i)
        d_lo = res.differential(i - 1)
        for c, rows in d_hi.items():
            acc: Dict[int, Polynomial] = {}
            for mid, p in rows.items():
                for r, q in d_lo.get(mid, {}).items():
                    cur = acc.get(r, ring.zero())
                    acc[r] = cur + q * p
            for r, p in acc.items():
                if not p.is_zero():
                    return ComplexReport(
                        False, f"d_{i-1} o d_{i} != 0 at column {c}", ("dd", i, -1)
                    )
    # homogeneity of entries
    for i in range(1, res.length + 1):
        d = res.differential(i)
        hi, lo = res.modules[i], res.modules[i - 1]
        for c, rows in d.items():
            for r, p in rows.items():
                if p.is_zero():
                    continue
                if not p.is_homogeneous() or p.weighted_degree() != hi.shifts[c] - lo.shifts[r]:
                    return ComplexReport(
                        False,
                        f"entry ({r},{c}) of d_{i} is not homogeneous of the right degree",
                        ("degree", i, -1),
                    )
    # degreewise exactness at F_i, i >= 1
    for i in range(1, res.length + 1):
        for e in range(e_cap + 1):
            rank_i = _strand_rank(res, i, e)
            dim_i = _strand_dim(res, i, e)
            ker = dim_i - rank_i
            im_next = _strand_rank(res, i + 1, e) if i + 1 <= res.length else 0
            if ker != im_next:
                return ComplexReport(
                    False,
                    f"homology at F_{i} in degree {e}: ker {ker} != im {im_next}",
                    ("exactness", i, e),
                )
    return ComplexReport(True, f"d o d = 0, homogeneous, exact for degrees <= {e_cap}")


def _strand_dim(res: Resolution, i: int, e: int) -> int:
    mod = res.modules[i]
    total = 0
    for s in mod.shifts:
        if e - s >= 0:
            total += len(monomials_of_degree(res.ring, e - s))
    return total


def _strand_rank(res: Resolution, i: int, e: int) -> int:
    """Rank of (d_i)_e by exact elimination."""
    if i < 1 or i > res.length:
        return 0
    ring = res.ring
    d = res.differential(i)
    hi, lo = res.modules[i], res.modules[i - 1]
    # row coordinates: (target gen, monomial)
    row_index: Dict[Tuple[int, Exponent], int] = {}

    def row_id(key: Tuple[int, Exponent]) -> int:
        got = row_index.get(key)
        if got is None:
            got = len(row_index)
            row_index[key] = got
        return got

    ech = Echelon()
    for c in sorted(d):
        s_c = hi.shifts[c]
        if e - s_c < 0:
            continue
        for mult in monomials_of_degree(ring, e - s_c):
            vec: Dict[int, Fraction] = {}
            for r, p in d[c].items():
                for m, coef in p.terms.items():
                    key = (r, monomial_mul(m, mult))
                    rid = row_id(key)
                    s = vec.get(rid, Fraction(0)) + coef
                    if s:
                        vec[rid] = s
                    else:
                        vec.pop(rid, None)
            if vec:
                ech.add(intify(vec))
    return ech.rank
