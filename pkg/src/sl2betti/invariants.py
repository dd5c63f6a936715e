"""Minimal generating sets of SL2-invariants of tuples of binary forms.

Works over the coefficient ring of V_d1 + ... + V_dn in the binomial
convention: the i-th form is sum_k C(d_i,k) a_k x^(d_i-k) y^k, the
coefficient a_k carries sl2-weight d_i - 2k, and invariants are the
weight-zero polynomials annihilated by the raising operator.  Everything
is exact integer linear algebra on weight-graded pieces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import Echelon, nullspace
from .poly import Exponent, GradedRing, Polynomial, WEIGHTED

_FORM_PREFIXES = ("x", "y", "u", "v", "w", "s", "t", "p", "q", "r")


@dataclass(frozen=True)
class ProblemSpec:
    """A tuple of binary-form degrees plus a generator search bound."""

    degrees: Tuple[int, ...]
    degree_bound: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if not self.degrees or any(d < 1 for d in self.degrees):
            raise ValueError("form degrees must be positive integers")
        if self.degree_bound < 1:
            raise ValueError("degree bound must be positive")

    @property
    def n_forms(self) -> int:
        return len(self.degrees)


class CoefficientRing:
    """Coordinate ring of V_d with per-variable sl2-weights and form blocks."""

    def __init__(self, degrees: Sequence[int]):
        self.form_degrees = tuple(int(d) for d in degrees)
        names: List[str] = []
        form_of_var: List[int] = []
        index_in_form: List[int] = []
        sl2_weights: List[int] = []
        for i, d in enumerate(self.form_degrees):
            prefix = _FORM_PREFIXES[i] if i < len(_FORM_PREFIXES) else f"c{i}_"
            for k in range(d + 1):
                names.append(f"{prefix}{k}")
                form_of_var.append(i)
                index_in_form.append(k)
                sl2_weights.append(d - 2 * k)
        self.ring = GradedRing(tuple(names), (1,) * len(names))
        self.form_of_var = tuple(form_of_var)
        self.index_in_form = tuple(index_in_form)
        self.sl2_weights = tuple(sl2_weights)
        # var_index[(form, k)] -> position in the ring
        self.var_index = {
            (f, k): v for v, (f, k) in enumerate(zip(form_of_var, index_in_form))
        }
        self.blocks = []
        start = 0
        for d in self.form_degrees:
            self.blocks.append(range(start, start + d + 1))
            start += d + 1

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def sl2_weight(self, m: Exponent) -> int:
        return sum(e * w for e, w in zip(m, self.sl2_weights))

    def multidegree(self, m: Exponent) -> Tuple[int, ...]:
        md = [0] * len(self.form_degrees)
        for e, f in zip(m, self.form_of_var):
            md[f] += e
        return tuple(md)


def coefficient_ring(spec: ProblemSpec) -> CoefficientRing:
    return CoefficientRing(spec.degrees)


# ---------------------------------------------------------------------------
# sl2 action
# ---------------------------------------------------------------------------

def _operator_moves(cring: CoefficientRing, kind: str) -> List[Tuple[int, int, int]]:
    """(source var, target var, scalar) triples of the first-order operator."""
    moves = []
    for v in range(cring.nvars):
        f = cring.form_of_var[v]
        k = cring.index_in_form[v]
        d = cring.form_degrees[f]
        if kind == "raising":
            if k >= 1:
                moves.append((v, cring.var_index[(f, k - 1)], k))
        elif kind == "lowering":
            if k <= d - 1:
                moves.append((v, cring.var_index[(f, k + 1)], d - k))
        else:
            raise ValueError(f"unknown operator kind {kind!r}")
    return moves


def apply_operator(kind: str, p: Polynomial, cring: CoefficientRing) -> Polynomial:
    """Image of p under the raising or lowering sl2 operator (exact, linear)."""
    moves = _operator_moves(cring, kind)
    out: Dict[Exponent, Fraction] = {}
    for m, c in p.terms.items():
        for src, dst, scal in moves:
            e = m[src]
            if not e:
                continue
            lst = list(m)
            lst[src] -= 1
            lst[dst] += 1
            key = tuple(lst)
            add = c * (scal * e)
            s = out.get(key)
            if s is None:
                out[key] = add
            else:
                s = s + add
                if s:
                    out[key] = s
                else:
                    del out[key]
    return Polynomial._raw(cring.ring, out)


def _apply_moves_int(m: Exponent, moves) -> List[Tuple[Exponent, int]]:
    out = []
    for src, dst, scal in moves:
        e = m[src]
        if not e:
            continue
        lst = list(m)
        lst[src] -= 1
        lst[dst] += 1
        out.append((tuple(lst), scal * e))
    return out


# ---------------------------------------------------------------------------
# weight-graded enumeration and dimension counts
# ---------------------------------------------------------------------------

def monomials_of_multidegree_weight(
    cring: CoefficientRing, multidegree: Sequence[int], weight: int
) -> List[Exponent]:
    """Monomials with the given per-form degrees and total sl2-weight."""
    n = cring.nvars
    md = list(multidegree)
    if len(md) != len(cring.form_degrees):
        raise ValueError("multidegree length does not match the form count")
    out: List[Exponent] = []
    # remaining weight extremes per suffix, for pruning
    prefix: List[int] = []

    def rec(v: int, rem_form: int, f: int, wt: int) -> None:
        if v == n:
            if wt == weight:
                out.append(tuple(prefix))
            return
        vf = cring.form_of_var[v]
        if vf != f:
            if rem_form != 0:
                return
            rec_from_form(v, vf, wt)
            return
        d = cring.form_degrees[f]
        k = cring.index_in_form[v]
        if k == d:  # last variable of the block: exponent forced
            e = rem_form
            prefix.append(e)
            rec(v + 1, 0, f, wt + e * cring.sl2_weights[v])
            prefix.pop()
            return
        for e in range(rem_form + 1):
            prefix.append(e)
            rec(v + 1, rem_form - e, f, wt + e * cring.sl2_weights[v])
            prefix.pop()

    def rec_from_form(v: int, f: int, wt: int) -> None:
        rec(v, md[f], f, wt)

    if n == 0:
        return [()] if weight == 0 and not any(md) else []
    rec_from_form(0, 0, weight * 0)
    return out


@lru_cache(maxsize=None)
def _form_weight_counts(d: int, m: int) -> Dict[int, int]:
    """Weight distribution of degree-m monomials in the d+1 coefficients of V_d."""
    table: Dict[Tuple[int, int], Dict[int, int]] = {}

    def rec(k: int, rem: int) -> Dict[int, int]:
        if k == d:
            return {rem * (d - 2 * k): 1}
        key = (k, rem)
        got = table.get(key)
        if got is not None:
            return got
        acc: Dict[int, int] = {}
        for e in range(rem + 1):
            base = e * (d - 2 * k)
            for w, c in rec(k + 1, rem - e).items():
                acc[base + w] = acc.get(base + w, 0) + c
        table[key] = acc
        return acc

    return rec(0, m)


def weight_multiplicity(
    spec: ProblemSpec, multidegree: Sequence[int], weight: int
) -> int:
    """Number of coefficient monomials of the multidegree with the sl2-weight."""
    acc: Dict[int, int] = {0: 1}
    for d, m in zip(spec.degrees, multidegree):
        nxt: Dict[int, int] = {}
        for w1, c1 in acc.items():
            for w2, c2 in _form_weight_counts(d, m).items():
                nxt[w1 + w2] = nxt.get(w1 + w2, 0) + c1 * c2
        acc = nxt
    return acc.get(weight, 0)


def cayley_sylvester_dim(spec: ProblemSpec, multidegree: Sequence[int]) -> int:
    """dim of the invariant space of the multidegree: N(0) - N(2), purely
    combinatorial weight-space counting."""
    if sum(m * d for m, d in zip(multidegree, spec.degrees)) % 2:
        return 0
    return weight_multiplicity(spec, multidegree, 0) - weight_multiplicity(
        spec, multidegree, 2
    )


def cs_total_dims(spec: ProblemSpec, upto: int) -> List[int]:
    """Sum of cayley_sylvester_dim over all multidegrees, per total degree."""
    # acc[e] = weight distribution of the degree-e piece of the whole ring
    acc: List[Dict[int, int]] = [{0: 1}] + [dict() for _ in range(upto)]
    for d in spec.degrees:
        nxt: List[Dict[int, int]] = [dict() for _ in range(upto + 1)]
        for e1 in range(upto + 1):
            if not acc[e1]:
                continue
            for m in range(upto + 1 - e1):
                fw = _form_weight_counts(d, m)
                tgt = nxt[e1 + m]
                for w1, c1 in acc[e1].items():
                    for w2, c2 in fw.items():
                        w = w1 + w2
                        tgt[w] = tgt.get(w, 0) + c1 * c2
        acc = nxt
    return [acc[e].get(0, 0) - acc[e].get(2, 0) for e in range(upto + 1)]


def multidegrees_of_total(n: int, total: int) -> List[Tuple[int, ...]]:
    """All length-n compositions of `total`, in lexicographic order."""
    out: List[Tuple[int, ...]] = []
    comp: List[int] = []

    def rec(i: int, rem: int) -> None:
        if i == n - 1:
            comp.append(rem)
            out.append(tuple(comp))
            comp.pop()
            return
        for v in range(rem + 1):
            comp.append(v)
            rec(i + 1, rem - v)
            comp.pop()

    if n == 0:
        return [()] if total == 0 else []
    rec(0, total)
    return out


# ---------------------------------------------------------------------------
# invariant bases by exact nullspace
# ---------------------------------------------------------------------------

def invariant_basis(
    spec: ProblemSpec, multidegree: Sequence[int]
) -> List[Polynomial]:
    """Basis of the invariants of one multidegree piece.

    Kernel of the raising operator on the weight-0 subspace, by fraction-free
    elimination; deterministic and normalized.  Empty when the total weight
    sum(m_i * d_i) is odd.
    """
    cring = CoefficientRing(spec.degrees)
    if sum(m * d for m, d in zip(multidegree, spec.degrees)) % 2:
        return []
    cols = monomials_of_multidegree_weight(cring, multidegree, 0)
    if not cols:
        return []
    keyfn = WEIGHTED.key_function(cring.ring)
    cols.sort(key=keyfn, reverse=True)
    col_index = {m: i for i, m in enumerate(cols)}
    moves = _operator_moves(cring, "raising")
    rows: Dict[Exponent, Dict[int, int]] = {}
    for j, m in enumerate(cols):
        for target, c in _apply_moves_int(m, moves):
            row = rows.setdefault(target, {})
            row[j] = row.get(j, 0) + c
    # the kernel dimension is known combinatorially; the rank bound lets the
    # elimination stop as soon as it is certified
    expected = cayley_sylvester_dim(spec, multidegree)
    kernel = nullspace(
        [rows[t] for t in sorted(rows, key=keyfn, reverse=True)],
        range(len(cols)),
        stop_rank=len(cols) - expected,
    )
    if len(kernel) != expected:
        raise AssertionError(
            f"invariant piece {tuple(multidegree)}: nullspace dimension "
            f"{len(kernel)} differs from the weight count {expected}"
        )
    basis = []
    for vec in kernel:
        terms = {cols[j]: Fraction(c) for j, c in vec.items()}
        p = Polynomial._raw(cring.ring, terms).normalize(WEIGHTED)
        if not apply_operator("raising", p, cring).is_zero():
            raise AssertionError("nullspace vector not annihilated by the operator")
        basis.append(p)
    return basis


# ---------------------------------------------------------------------------
# generator search
# ---------------------------------------------------------------------------

@dataclass
class GeneratorSet:
    """Minimal generating invariants with their degrees, ascending."""

    cring: CoefficientRing
    spec: ProblemSpec
    generators: List[Polynomial]
    degrees: List[int]
    multidegrees: List[Tuple[int, ...]]
    bound: int
    unverified_beyond_bound: bool = True

    def __len__(self) -> int:
        return len(self.generators)


class _ProductSpan:
    """Products of known generators, cached as integer term maps."""

    def __init__(self, cring: CoefficientRing):
        self.cring = cring
        self.cache: Dict[Tuple[int, ...], Dict[Exponent, int]] = {}
        self.gen_terms: List[Dict[Exponent, int]] = []
        self.gen_multidegrees: List[Tuple[int, ...]] = []

    def add_generator(self, g: Polynomial, multidegree: Tuple[int, ...]) -> None:
        terms = {m: int(c) for m, c in g.terms.items()}
        self.gen_terms.append(terms)
        self.gen_multidegrees.append(multidegree)

    def product(self, exponents: Tuple[int, ...]) -> Dict[Exponent, int]:
        got = self.cache.get(exponents)
        if got is not None:
            return got
        j = max(i for i, e in enumerate(exponents) if e)
        prev = list(exponents)
        prev[j] -= 1
        prev_t = tuple(prev)
        if any(prev):
            base = self.product(prev_t)
        else:
            base = {(0,) * self.cring.nvars: 1}
        out: Dict[Exponent, int] = {}
        for m1, c1 in base.items():
            for m2, c2 in self.gen_terms[j].items():
                key = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        self.cache[exponents] = out
        return out

    def exponent_tuples(self, multidegree: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        """All generator multisets whose multidegrees sum to the target."""
        n = len(self.gen_terms)
        out: List[Tuple[int, ...]] = []
        expo = [0] * n

        def rec(i: int, remaining: Tuple[int, ...]) -> None:
            if not any(remaining):
                if any(expo):
                    out.append(tuple(expo))
                return
            if i == n:
                return
            md = self.gen_multidegrees[i]
            cap = min(
                (r // m) for r, m in zip(remaining, md) if m
            ) if any(md) else 0
            for e in range(cap + 1):
                expo[i] = e
                rec(i + 1, tuple(r - e * m for r, m in zip(remaining, md)))
            expo[i] = 0

        rec(0, tuple(multidegree))
        return out


def minimal_invariant_generators(spec: ProblemSpec) -> GeneratorSet:
    """Search total degrees 1..bound, multidegrees in lexicographic order;
    append a complement basis of the invariants beyond the span of products
    of previously found generators.  Deterministic, degrees ascending."""
    cring = CoefficientRing(spec.degrees)
    keyfn = WEIGHTED.key_function(cring.ring)
    span = _ProductSpan(cring)
    gens: List[Polynomial] = []
    degs: List[int] = []
    mdegs: List[Tuple[int, ...]] = []
    for e in range(1, spec.degree_bound + 1):
        for md in multidegrees_of_total(spec.n_forms, e):
            if sum(m * d for m, d in zip(md, spec.degrees)) % 2:
                continue
            dim_inv = cayley_sylvester_dim(spec, md)
            if dim_inv == 0:
                continue
            cols = monomials_of_multidegree_weight(cring, md, 0)
            cols.sort(key=keyfn, reverse=True)
            col_index = {m: i for i, m in enumerate(cols)}
            ech = Echelon()
            for expo in span.exponent_tuples(md):
                if ech.rank == dim_inv:
                    break
                prod = span.product(expo)
                ech.add({col_index[m]: c for m, c in prod.items()})
            if ech.rank == dim_inv:
                continue
            for b in invariant_basis(spec, md):
                vec = {col_index[m]: int(c) for m, c in b.terms.items()}
                rem = ech.add(vec)
                if rem is None:
                    continue
                g = Polynomial._raw(
                    cring.ring, {cols[i]: Fraction(c) for i, c in rem.items()}
                ).normalize(WEIGHTED)
                gens.append(g)
                degs.append(e)
                mdegs.append(md)
                span.add_generator(g, md)
                if ech.rank == dim_inv:
                    break
    return GeneratorSet(cring, spec, gens, degs, mdegs, spec.degree_bound)


@dataclass
class CompletenessReport:
    agree: bool
    checked_to: int
    first_discrepancy: Optional[Tuple[int, int, int]] = None  # (degree, got, expected)

    def __str__(self) -> str:
        if self.agree:
            return f"dimensions agree for all degrees <= {self.checked_to}"
        e, got, want = self.first_discrepancy
        return f"first discrepancy at degree {e}: subalgebra {got} != invariants {want}"


def verify_completeness(
    genset: GeneratorSet,
    spec: ProblemSpec,
    check_bound: int,
    series_coefficients: Optional[Sequence[int]] = None,
) -> CompletenessReport:
    """Compare subalgebra dimensions against the combinatorial count per degree.

    series_coefficients, when given, are dim(subalgebra)_e from the Hilbert
    series of the presentation quotient; otherwise spans are computed directly.
    """
    want = cs_total_dims(spec, check_bound)
    if series_coefficients is not None:
        got_all = list(series_coefficients[: check_bound + 1])
        for e in range(check_bound + 1):
            if got_all[e] != want[e]:
                return CompletenessReport(False, check_bound, (e, got_all[e], want[e]))
        return CompletenessReport(True, check_bound)

    cring = genset.cring
    keyfn = WEIGHTED.key_function(cring.ring)
    span = _ProductSpan(cring)
    for g, md in zip(genset.generators, genset.multidegrees):
        span.add_generator(g, md)
    for e in range(1, check_bound + 1):
        total = 0
        for md in multidegrees_of_total(spec.n_forms, e):
            if sum(m * d for m, d in zip(md, spec.degrees)) % 2:
                continue
            cols = monomials_of_multidegree_weight(cring, md, 0)
            if not cols:
                continue
            cols.sort(key=keyfn, reverse=True)
            col_index = {m: i for i, m in enumerate(cols)}
            ech = Echelon()
            for expo in span.exponent_tuples(md):
                prod = span.product(expo)
                ech.add({col_index[m]: c for m, c in prod.items()})
            total += ech.rank
        if total != want[e]:
            return CompletenessReport(False, check_bound, (e, total, want[e]))
    return CompletenessReport(True, check_bound)
