"""Buchberger engine, minimal generators, Hilbert series."""

import random
from fractions import Fraction

import pytest

from sl2betti.groebner import (
    Ideal,
    RationalSeries,
    buchberger,
    hilbert_series_quotient,
    ideals_equal,
    minimal_generators,
    monomials_of_degree,
    normal_form,
    standard_monomials,
)
from sl2betti.linalg import Echelon, intify
from sl2betti.poly import (
    GradedRing,
    Polynomial,
    WEIGHTED,
    elimination_order,
    monomial_mul,
)


def spoly(f, g, order=WEIGHTED):
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = tuple(a - b for a, b in zip(lcm, lf))
    mg = tuple(a - b for a, b in zip(lcm, lg))
    return f.mul_monomial(mf, g.leading_coefficient(order)) - g.mul_monomial(
        mg, f.leading_coefficient(order)
    )


class TestNormalForm:
    def test_member_reduces_to_zero(self):
        R = GradedRing(("x", "y"), (1, 1))
        x = R.variable(0)
        r, _ = normal_form(x, [x])
        assert r.is_zero()

    def test_quotient(self):
        R = GradedRing(("x", "y"), (1, 1))
        x, y = R.variable(0), R.variable(1)
        r, cofs = normal_form(x * x, [x])
        assert r.is_zero() and cofs[0] == x

    def test_partial(self):
        R = GradedRing(("x", "y"), (1, 1))
        x, y = R.variable(0), R.variable(1)
        r, cofs = normal_form(x * x + y, [x])
        assert r == y and cofs[0] == x

    def test_division_identity_random(self):
        rng = random.Random(3)
        R = GradedRing(("x", "y", "z"), (1, 1, 1))
        for _ in range(25):
            polys = [_random_poly(R, rng) for _ in range(3)]
            reducers = [p for p in polys[:2] if not p.is_zero()]
            if not reducers:
                continue
            p = polys[2]
            r, cofs = normal_form(p, reducers)
            acc = r
            for c, g in zip(cofs, reducers):
                acc = acc + c * g
            assert acc == p
            # no remainder monomial divisible by a leading monomial
            for m in r.monomials():
                for g in reducers:
                    lg = g.leading_monomial(WEIGHTED)
                    assert any(a < b for a, b in zip(m, lg))


def _random_poly(ring, rng, deg=3, terms=4):
    out = {}
    for _ in range(rng.randint(1, terms)):
        total = rng.randint(0, deg)
        mono = [0] * ring.nvars
        for _ in range(total):
            mono[rng.randrange(ring.nvars)] += 1
        c = rng.randint(-4, 4)
        if c:
            out[tuple(mono)] = Fraction(c)
    return Polynomial(ring, out)


def _random_homogeneous(ring, rng, deg, terms=4):
    monos = monomials_of_degree(ring, deg)
    if not monos:
        return ring.zero()
    out = {}
    for _ in range(rng.randint(1, terms)):
        c = rng.randint(-3, 3)
        if c:
            out[monos[rng.randrange(len(monos))]] = Fraction(c)
    return Polynomial(ring, out)


class TestBuchberger:
    def test_single_generator(self):
        R = GradedRing(("x", "y"), (1, 1))
        x = R.variable(0)
        gb = buchberger(Ideal(R, [x]))
        assert [str(g) for g in gb.elements] == ["x"]

    def test_twisted_cubic_elimination(self):
        # kernel of t -> (t^2, t^3): the t-free part generates (y^2 - x^3)
        T = GradedRing(("t", "x", "y"), (1, 2, 3))
        t, x, y = (T.variable(i) for i in range(3))
        gb = buchberger(Ideal(T, [x - t * t, y - t * t * t]), elimination_order(1))
        t_free = [g for g in gb.elements if all(m[0] == 0 for m in g.monomials())]
        assert len(t_free) == 1
        # oracle: substitute x = t^2, y = t^3 and check vanishing
        for g in t_free:
            sub = T.zero()
            for m, c in g.terms.items():
                term = T.one().scale(c) * (x ** 0)
                term = term * (t ** (2 * m[1] + 3 * m[2]))
                sub = sub + term.mul_monomial((0, 0, 0))
            # g(t^2, t^3) as polynomial in t must vanish
            acc = T.zero()
            for m, c in g.terms.items():
                acc = acc + (t ** (2 * m[1] + 3 * m[2])).scale(c)
            assert acc.is_zero()

    def test_paper_relations_reduce_to_zero(self, paper_ring, paper_J):
        gb = buchberger(Ideal(paper_ring, paper_J), track_cofactors=False)
        for g in paper_J:
            assert gb.contains(g)

    def test_cofactor_soundness_random(self):
        rng = random.Random(5)
        R = GradedRing(("x", "y", "z"), (1, 1, 1))
        for _ in range(15):
            gens = [g for g in (_random_poly(R, rng, 2) for _ in range(3)) if not g.is_zero()]
            if not gens:
                continue
            gb = buchberger(Ideal(R, gens))
            for el, row in zip(gb.elements, gb.cofactors):
                acc = R.zero()
                for c, f in zip(row, gb.inputs):
                    acc = acc + c * f
                assert acc == el

    def test_spolynomials_reduce_to_zero_random_homogeneous(self):
        rng = random.Random(9)
        for trial in range(12):
            n = rng.randint(2, 4)
            R = GradedRing(tuple("xyzw"[:n]), (1,) * n)
            gens = [
                _random_homogeneous(R, rng, rng.randint(1, 3))
                for _ in range(rng.randint(1, 4))
            ]
            gens = [g for g in gens if not g.is_zero()]
            if not gens:
                continue
            gb = buchberger(Ideal(R, gens), track_cofactors=False)
            for i in range(len(gb.elements)):
                for j in range(i + 1, len(gb.elements)):
                    s = spoly(gb.elements[i], gb.elements[j])
                    if s.is_zero():
                        continue
                    r, _ = normal_form(s, gb.elements)
                    assert r.is_zero()

    def test_reduced_basis(self, paper_ring, paper_J):
        gb = buchberger(Ideal(paper_ring, paper_J), track_cofactors=False)
        leads = gb.leading_monomials()
        for k, g in enumerate(gb.elements):
            for m in g.monomials():
                for l, lead in enumerate(leads):
                    if l == k:
                        continue
                    assert any(a < b for a, b in zip(m, lead)), (
                        "reduced basis has a divisible monomial"
                    )


class TestIdealsEqual:
    def test_same_ideal_different_generators(self):
        R = GradedRing(("x", "y"), (1, 1))
        x, y = R.variable(0), R.variable(1)
        assert ideals_equal(Ideal(R, [x, y]), Ideal(R, [x + y, y]))
        assert not ideals_equal(Ideal(R, [x]), Ideal(R, [y]))


class TestMinimalGenerators:
    def test_redundancy_removal(self):
        R = GradedRing(("x", "y"), (1, 1))
        x = R.variable(0)
        mg = minimal_generators(Ideal(R, [x, x * x]))
        assert [(str(g), d) for g, d in mg] == [("x", 1)]

    def test_zero_ideal(self):
        R = GradedRing(("x",), (1,))
        assert minimal_generators(Ideal(R, [])) == []

    def test_paper_J_minimalizes_to_nine(self, paper_ring, paper_J):
        mg = minimal_generators(Ideal(paper_ring, paper_J))
        assert sorted(d for _, d in mg) == [5, 5, 5, 6, 6, 6, 6, 6, 6]

    def test_degree_multiset_invariant_under_shuffle(self, paper_ring, paper_J):
        rng = random.Random(17)
        want = [5, 5, 5, 6, 6, 6, 6, 6, 6]
        for _ in range(4):
            shuffled = paper_J[:]
            rng.shuffle(shuffled)
            mg = minimal_generators(Ideal(paper_ring, shuffled))
            assert sorted(d for _, d in mg) == want

    def test_requires_homogeneous(self):
        R = GradedRing(("x", "y"), (1, 1))
        x, y = R.variable(0), R.variable(1)
        with pytest.raises(ValueError):
            minimal_generators(Ideal(R, [x + x * y]))


class TestHilbertSeries:
    def test_free_ring(self):
        R = GradedRing(("x",), (1,))
        hs = hilbert_series_quotient(Ideal(R, []))
        assert hs.numerator == {0: 1}
        assert hs.coefficients(4) == [1, 1, 1, 1, 1]

    def test_hypersurface(self):
        R = GradedRing(("x",), (1,))
        x = R.variable(0)
        hs = hilbert_series_quotient(Ideal(R, [x * x]))
        # numerator (1 - z^2) over (1 - z): counts 1, x
        assert hs.coefficients(5) == [1, 1, 0, 0, 0, 0]
        assert hs.equals(RationalSeries({0: 1, 1: 1}, ()))

    def test_non_homogeneous_rejected(self):
        R = GradedRing(("x", "y"), (1, 1))
        x, y = R.variable(0), R.variable(1)
        with pytest.raises(ValueError):
            hilbert_series_quotient(Ideal(R, [x + x * y]))

    def test_brute_force_dimensions_random(self):
        rng = random.Random(23)
        for trial in range(10):
            n = rng.randint(2, 3)
            R = GradedRing(tuple("xyz"[:n]), tuple(rng.randint(1, 2) for _ in range(n)))
            gens = [
                _random_homogeneous(R, rng, rng.randint(1, 3))
                for _ in range(rng.randint(1, 3))
            ]
            gens = [g for g in gens if not g.is_zero()]
            if not gens:
                continue
            I = Ideal(R, gens)
            hs = hilbert_series_quotient(I)
            coeffs = hs.coefficients(8)
            for e in range(9):
                monos = monomials_of_degree(R, e)
                index = {m: i for i, m in enumerate(monos)}
                ech = Echelon()
                for g in gens:
                    d = g.weighted_degree()
                    if d > e:
                        continue
                    for mult in monomials_of_degree(R, e - d):
                        vec = {
                            index[monomial_mul(m, mult)]: c
                            for m, c in g.terms.items()
                        }
                        ech.add(intify(vec))
                assert coeffs[e] == len(monos) - ech.rank, (trial, e)

    def test_series_equals_cross_multiplication(self):
        a = RationalSeries({0: 1, 2: -1}, (1,))
        b = RationalSeries({0: 1, 1: 1}, ())
        assert a.equals(b)
        assert not a.equals(RationalSeries({0: 1}, ()))


class TestGroebnerDump:
    def test_sorted_by_degree_then_order(self, paper_ring, paper_J):
        from sl2betti.groebner import format_groebner_dump
        from sl2betti.poly import parse_session

        gb = buchberger(Ideal(paper_ring, paper_J), track_cofactors=False)
        text = format_groebner_dump(gb)
        ring, order, polys = parse_session(text)
        assert ring == paper_ring
        degrees = [p.weighted_degree() for p in polys]
        assert degrees == sorted(degrees)
        assert sorted(str(p) for p in polys) == sorted(
            str(g.normalize(gb.order)) for g in gb.elements
        )


class TestStandardMonomials:
    def test_counts_match_series(self, paper_ring, paper_J):
        I = Ideal(paper_ring, paper_J)
        gb = buchberger(I, track_cofactors=False)
        hs = hilbert_series_quotient(I, gb=gb)
        coeffs = hs.coefficients(8)
        for e in range(9):
            assert len(standard_monomials(gb, e)) == coeffs[e]
