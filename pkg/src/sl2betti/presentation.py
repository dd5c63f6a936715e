"""Presentation of the invariant algebra: kernel of x_i -> f_i.

The source ring carries weights deg(x_i) = deg(f_i).  Two kernel routes are
provided: `kernel` eliminates the coefficient variables from the ideal
(x_i - f_i) in a combined ring under a block order, which works for any
explicit generator list; `present` drives the full pipeline and finds the
kernel degree by degree with exact linear algebra, certified against the
combinatorial dimension count up to a stated horizon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    hilbert_series_quotient,
    minimal_generators,
    monomials_of_degree,
    standard_monomials,
)
from .invariants import (
    GeneratorSet,
    ProblemSpec,
    cs_total_dims,
    minimal_invariant_generators,
)
from .linalg import nullspace
from .poly import (
    Exponent,
    GradedRing,
    Polynomial,
    WEIGHTED,
    elimination_order,
)


@dataclass
class AlgebraMap:
    """phi: K[x_1..x_m] -> K[V_d], x_i -> f_i, with deg(x_i) = deg(f_i)."""

    source: GradedRing
    images: List[Polynomial]

    def __post_init__(self) -> None:
        if len(self.images) != self.source.nvars:
            raise ValueError("image count must match source variable count")
        for w, f in zip(self.source.weights, self.images):
            if f.is_zero() or not f.is_homogeneous():
                raise ValueError("images must be nonzero and homogeneous")
            if f.weighted_degree() != w:
                raise ValueError("source weights must equal image degrees")

    @property
    def target_ring(self) -> GradedRing:
        return self.images[0].ring if self.images else GradedRing((), ())


def algebra_map_from_generators(genset: GeneratorSet) -> AlgebraMap:
    names = tuple(f"f{i+1}" for i in range(len(genset.generators)))
    source = GradedRing(names, tuple(genset.degrees))
    return AlgebraMap(source, list(genset.generators))


class _ImageCache:
    """Memoized phi(x^alpha), held as integer products of the normalized
    images together with the exact rational factor relating them to the
    true images: phi(x^alpha) = factor(alpha) * image(alpha).

    Target-ring exponents are bit-packed into single integers so that the
    product inner loop is integer addition; `unpack` restores tuples.
    """

    PACK_BITS = 12  # enough for exponents up to 4095 per variable

    def __init__(self, amap: AlgebraMap):
        self.amap = amap
        tgt = amap.target_ring
        self.nvars_t = tgt.nvars
        bits = self.PACK_BITS
        self.images: List[Dict[int, int]] = []
        self.image_factors: List[Fraction] = []
        for f in amap.images:
            g = f.normalize()
            m0 = next(iter(g.terms))
            self.image_factors.append(f.terms[m0] / g.terms[m0])
            self.images.append(
                {self._pack(m): c.numerator for m, c in g.terms.items()}
            )
        self.cache: Dict[Exponent, Dict[int, int]] = {}

    def _pack(self, m: Exponent) -> int:
        out = 0
        for e in m:
            out = (out << self.PACK_BITS) | e
        return out

    def unpack(self, code: int) -> Exponent:
        mask = (1 << self.PACK_BITS) - 1
        out = [0] * self.nvars_t
        for i in range(self.nvars_t - 1, -1, -1):
            out[i] = code & mask
            code >>= self.PACK_BITS
        return tuple(out)

    def factor(self, alpha: Exponent) -> Fraction:
        out = Fraction(1)
        for fac, e in zip(self.image_factors, alpha):
            if e:
                out *= fac ** e
        return out

    def image(self, alpha: Exponent) -> Dict[int, int]:
        """phi(x^alpha) / factor(alpha), keyed by packed exponents."""
        if not any(alpha):
            return {0: 1}
        got = self.cache.get(alpha)
        if got is not None:
            return got
        # peel off the generator with the fewest terms for the cheapest product
        best = min(
            (i for i, e in enumerate(alpha) if e),
            key=lambda i: len(self.images[i]),
        )
        prev = list(alpha)
        prev[best] -= 1
        base = self.image(tuple(prev))
        f = self.images[best]
        out: Dict[int, int] = {}
        get = out.get
        for m1, c1 in base.items():
            for m2, c2 in f.items():
                key = m1 + m2
                s = get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        self.cache[alpha] = out
        return out


def substitute(amap: AlgebraMap, p: Polynomial, cache: Optional[_ImageCache] = None) -> Polynomial:
    """phi(p), exact."""
    if p.ring != amap.source:
        raise ValueError("polynomial is not in the source ring of the map")
    cache = cache or _ImageCache(amap)
    tgt = amap.target_ring
    acc: Dict[int, Fraction] = {}
    for alpha, c in p.terms.items():
        scale = c * cache.factor(alpha)
        for m, v in cache.image(alpha).items():
            s = acc.get(m)
            add = scale * v
            if s is None:
                acc[m] = add
            else:
                s = s + add
                if s:
                    acc[m] = s
                else:
                    del acc[m]
    return Polynomial._raw(tgt, {cache.unpack(m): c for m, c in acc.items()})


# ---------------------------------------------------------------------------
# elimination kernel
# ---------------------------------------------------------------------------

def kernel(amap: AlgebraMap, *, check: bool = True) -> Ideal:
    """Full kernel of phi by block-order elimination of the coefficient block.

    Forms (x_i - f_i) in K[coefficient vars, x vars], takes a Groebner basis
    under an order eliminating the coefficient block, and keeps the elements
    free of coefficient variables; every output maps to zero under phi.
    """
    src = amap.source
    m = src.nvars
    if m == 0:
        return Ideal(src, [])
    tgt = amap.target_ring
    nc = tgt.nvars
    names = tuple(f"c{i}" for i in range(nc)) + tuple(f"z{i}" for i in range(m))
    weights = (1,) * nc + src.weights
    combined = GradedRing(names, weights)
    order = elimination_order(nc)
    gens: List[Polynomial] = []
    for i, f in enumerate(amap.images):
        terms: Dict[Exponent, Fraction] = {}
        e = [0] * (nc + m)
        e[nc + i] = 1
        terms[tuple(e)] = Fraction(1)
        for mono, c in f.terms.items():
            key = tuple(mono) + (0,) * m
            terms[key] = terms.get(key, Fraction(0)) - c
        gens.append(Polynomial._raw(combined, terms))
    gb = buchberger(Ideal(combined, gens), order, track_cofactors=False)
    out: List[Polynomial] = []
    for g in gb.elements:
        if all(all(e == 0 for e in mono[:nc]) for mono in g.terms):
            out.append(
                Polynomial._raw(
                    src, {mono[nc:]: c for mono, c in g.terms.items()}
                ).normalize(WEIGHTED)
            )
    keyfn = WEIGHTED.key_function(src)
    out.sort(key=lambda p: (p.weighted_degree(), keyfn(p.leading_monomial(WEIGHTED))))
    result = Ideal(src, out)
    if check:
        cache = _ImageCache(amap)
        for g in out:
            if not substitute(amap, g, cache).is_zero():
                raise AssertionError("kernel element does not map to zero")
    return result


# ---------------------------------------------------------------------------
# degreewise kernel with a dimension certificate
# ---------------------------------------------------------------------------

@dataclass
class PresentInfo:
    horizon: int
    verified: bool
    relation_degrees: List[int]
    message: str = ""


def kernel_by_degrees(
    amap: AlgebraMap,
    spec: ProblemSpec,
    horizon: int,
) -> Tuple[Ideal, PresentInfo]:
    """Minimal kernel generators found degree by degree.

    At each weighted degree e the map phi is restricted to the standard
    monomials modulo the kernel found so far; new minimal generators are an
    exact nullspace basis.  The Hilbert function of the quotient is compared
    with the weight-counting dimension of the invariant algebra for every
    e <= horizon, which certifies completeness through that range.
    """
    src = amap.source
    cs = cs_total_dims(spec, horizon)
    cache = _ImageCache(amap)
    tgt = amap.target_ring
    keyfn = WEIGHTED.key_function(src)
    gens: List[Polynomial] = []
    gb: Optional[GroebnerBasis] = None
    hf: List[int] = _free_hilbert_coefficients(src, horizon)
    relation_degrees: List[int] = []
    for e in range(1, horizon + 1):
        need = hf[e] - cs[e]
        if need < 0:
            raise ValueError(
                f"quotient dimension below invariant dimension at degree {e}; "
                "the generator set upstream is incomplete"
            )
        if need == 0:
            continue
        if gb is None and gens:
            gb = buchberger(Ideal(src, gens), WEIGHTED, track_cofactors=False)
        std = (
            standard_monomials(gb, e) if gb is not None else monomials_of_degree(src, e)
        )
        std.sort(key=keyfn, reverse=True)
        col_of = {a: i for i, a in enumerate(std)}
        rows: Dict[Exponent, Dict[int, int]] = {}
        for j, alpha in enumerate(std):
            for mono, c in cache.image(alpha).items():
                rows.setdefault(mono, {})[j] = c
        kern = nullspace(
            [rows[k] for k in sorted(rows)],
            range(len(std)),
            stop_rank=len(std) - need,
        )
        if len(kern) != need:
            raise AssertionError(
                f"degree {e}: found {len(kern)} kernel vectors, expected {need}"
            )
        for vec in kern:
            # the matrix used the normalized images; undo their scale factors
            terms = {
                std[j]: Fraction(c) / cache.factor(std[j])
                for j, c in vec.items()
            }
            g = Polynomial._raw(src, terms).normalize(WEIGHTED)
            if not substitute(amap, g, cache).is_zero():
                raise AssertionError(f"degree {e}: kernel vector not in the kernel")
            gens.append(g)
            relation_degrees.append(e)
        gb = buchberger(Ideal(src, gens), WEIGHTED, track_cofactors=False)
        hs = hilbert_series_quotient(Ideal(src, gens), src, WEIGHTED, gb=gb)
        hf = hs.coefficients(horizon)
        if hf[e] != cs[e]:
            raise AssertionError(f"degree {e}: quotient dimension still off")
    verified = all(hf[e] == cs[e] for e in range(horizon + 1))
    info = PresentInfo(
        horizon=horizon,
        verified=verified,
        relation_degrees=relation_degrees,
        message=f"quotient dimensions match the invariant count for all degrees <= {horizon}",
    )
    return Ideal(src, gens), info


def _free_hilbert_coefficients(ring: GradedRing, upto: int) -> List[int]:
    c = [0] * (upto + 1)
    c[0] = 1
    for w in ring.weights:
        for i in range(w, upto + 1):
            c[i] += c[i - w]
    return c


def default_horizon(relation_degrees: Sequence[int], weights: Sequence[int]) -> int:
    base = 2 * max(relation_degrees, default=0)
    return max(base, 2 * max(weights, default=1), 12)


def present(
    spec: ProblemSpec,
    *,
    genset: Optional[GeneratorSet] = None,
    method: str = "linear",
    horizon: Optional[int] = None,
) -> Tuple[AlgebraMap, Ideal, PresentInfo]:
    """Full pipeline front half: generators, map, minimal kernel.

    method "linear" uses the degree-certified route; "elimination" forms the
    combined-ring Groebner basis and minimalizes the result.
    """
    genset = genset or minimal_invariant_generators(spec)
    if not genset.generators:
        source = GradedRing((), ())
        return (
            AlgebraMap(source, []),
            Ideal(source, []),
            PresentInfo(horizon or 0, True, [], "no generators: the base field"),
        )
    amap = algebra_map_from_generators(genset)
    if method == "elimination":
        ker = kernel(amap)
        mins = minimal_generators(ker) if ker.generators else []
        ideal = Ideal(amap.source, [g for g, _ in mins])
        degs = [d for _, d in mins]
        h = horizon or default_horizon(degs, amap.source.weights)
        hs = hilbert_series_quotient(ideal, amap.source)
        cs = cs_total_dims(spec, h)
        hf = hs.coefficients(h)
        verified = hf == cs
        return amap, ideal, PresentInfo(h, verified, degs, "elimination route")
    if method != "linear":
        raise ValueError(f"unknown kernel method {method!r}")
    if horizon is None:
        # discover relations with a provisional horizon, then extend the
        # certificate to twice the largest relation degree found
        h = default_horizon([], amap.source.weights)
        ideal, info = kernel_by_degrees(amap, spec, h)
        target = default_horizon(info.relation_degrees, amap.source.weights)
        while target > h:
            h = target
            ideal, info = kernel_by_degrees(amap, spec, h)
            target = default_horizon(info.relation_degrees, amap.source.weights)
        return amap, ideal, info
    ideal, info = kernel_by_degrees(amap, spec, horizon)
    return amap, ideal, info
