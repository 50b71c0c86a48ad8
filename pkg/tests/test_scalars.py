"""Exact arithmetic kernel: unit checks, sympy cross-checks and properties."""

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import gaussian, nonzero_gaussian, polys, ratfuncs, tangential_ratfuncs
from ncgres.scalars import (
    I,
    AdmissibilityError,
    Covariables,
    DegreeError,
    GaussianRational,
    HomFrac,
    Poly,
    RatFunc,
    ScalarSum,
    line_integral,
    line_integral_coefficient,
    principal_part_at_i,
    residue_at_i,
    sphere_integrate,
    sphere_moment,
    tangential_average,
)

X = sp.Symbol("x")
LAY2 = Covariables(2)


def to_sympy(f: RatFunc) -> sp.Expr:
    """Convert a ``xi_n``-only RatFunc to a sympy expression in ``x``."""
    num = 0
    for e, c in f.num.terms.items():
        assert not any(e[i] for i in range(len(e)) if i != f.xn)
        num += (sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)) * X ** e[f.xn]
    return num / ((X - sp.I) ** f.a * (X + sp.I) ** f.b)


def gr_to_sympy(c: GaussianRational) -> sp.Expr:
    return sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)


def xi_n(power=1):
    return Poly.var(LAY2.xn, LAY2.nvars, power)


def one():
    return LAY2.const(1)


# --- Gaussian rationals ---------------------------------------------------


class TestGaussianRational:
    def test_i_squared(self):
        assert I * I == GaussianRational(-1)

    def test_inverse(self):
        z = GaussianRational(3, -4)
        assert z * z.inverse() == GaussianRational(1)
        assert z.inverse() == GaussianRational(Fraction(3, 25), Fraction(4, 25))

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(0).inverse()

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            GaussianRational.coerce(1.5j)

    @given(gaussian, gaussian, gaussian)
    def test_field_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a - a == GaussianRational(0)

    @given(nonzero_gaussian)
    def test_division_roundtrip(self, a):
        assert (GaussianRational(7, 2) / a) * a == GaussianRational(7, 2)


# --- polynomials ------------------------------------------------------------


class TestPoly:
    @given(polys(), polys(), polys())
    def test_ring_axioms(self, p, q, r):
        assert p + q == q + p
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r

    @given(polys(), polys())
    def test_leibniz(self, p, q):
        assert (p * q).diff(0) == p.diff(0) * q + p * q.diff(0)

    @given(polys(), gaussian)
    def test_shift_then_back(self, p, v):
        assert p.shift(1, v).shift(1, -v) == p

    @given(polys())
    def test_eval_matches_terms(self, p):
        pt = [0.5, -1.25, 2.0]
        total = sum(complex(c) * pt[0] ** e[0] * pt[1] ** e[1] * pt[2] ** e[2] for e, c in p.terms.items())
        assert abs(p.eval(pt) - total) < 1e-9

    def test_degree_and_coeffs(self):
        p = xi_n(3) * GaussianRational(2) + one()
        assert p.degree(LAY2.xn) == 3
        assert p.coeffs_in(LAY2.xn)[3] == LAY2.const(2)


# --- homogeneous fractions --------------------------------------------------


class TestHomFrac:
    def test_reduces_by_norm(self):
        lay = Covariables(3)
        f = HomFrac(lay.norm_sq() * lay.xi(0), 2)
        assert f == HomFrac(lay.xi(0), 1)
        assert f.k == 1

    def test_derivative_of_inverse_norm(self):
        lay = Covariables(3)
        f = HomFrac(lay.const(1), 1)
        # d/dxi_n |xi|^-2 = -2 xi_n |xi|^-4
        assert f.diff(lay.xn) == HomFrac(lay.xi_n() * GaussianRational(-2), 2)

    @given(polys(4, max_deg=2), st.integers(0, 3))
    def test_quotient_rule(self, p, k):
        lay = Covariables(3)
        f = HomFrac(p, k)
        g = HomFrac(lay.xi_n(), 1)
        assert (f * g).diff(lay.xn) == f.diff(lay.xn) * g + f * g.diff(lay.xn)


# --- rational functions -----------------------------------------------------


class TestRatFunc:
    def test_canonical_cancellation(self):
        f = RatFunc(xi_n() - I, 2, 1)
        assert (f.a, f.b) == (1, 1)

    def test_from_parts(self):
        den = xi_n(2) + one()
        f = RatFunc.from_parts(one() * GaussianRational(2), den * den)
        assert (f.a, f.b) == (2, 2)

    def test_from_parts_rejects_other_roots(self):
        with pytest.raises(AdmissibilityError):
            RatFunc.from_parts(one(), xi_n() - one())

    def test_from_parts_rejects_tangential_denominator(self):
        lay = Covariables(3)
        with pytest.raises(AdmissibilityError):
            RatFunc.from_parts(lay.const(1), lay.xi(0) + lay.xi_n())

    @given(ratfuncs())
    def test_canonical_idempotent(self, f):
        again = RatFunc(f.num, f.a, f.b)
        assert (again.num, again.a, again.b) == (f.num, f.a, f.b)

    @given(ratfuncs(), ratfuncs())
    def test_sum_matches_sympy(self, f, g):
        assert sp.simplify(to_sympy(f + g) - (to_sympy(f) + to_sympy(g))) == 0

    @given(ratfuncs())
    def test_derivative_matches_sympy(self, f):
        assert sp.simplify(to_sympy(f.diff(LAY2.xn)) - sp.diff(to_sympy(f), X)) == 0

    @given(tangential_ratfuncs())
    def test_sphere_restriction_idempotent(self, f):
        r = f.restrict_to_sphere()
        assert r.restrict_to_sphere() == r

    @given(tangential_ratfuncs())
    def test_sphere_restriction_preserves_values(self, f):
        import math

        th, ph, x, h = 0.7, 1.9, 0.3, 0.8
        pt = [math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th), x, h]
        assert abs(f.eval(pt) - f.restrict_to_sphere().eval(pt)) < 1e-8 * (1 + abs(f.eval(pt)))


# --- contour operations -----------------------------------------------------


class TestContour:
    def test_residue_frozen(self):
        # [DERIVED: sympy.residue] 1/((x-i)^2 (x+i)^3) at x = i
        f = RatFunc(one(), 2, 3)
        assert residue_at_i(f) == LAY2.const(GaussianRational(Fraction(-3, 16)))
        assert sp.residue(to_sympy(f), X, sp.I) == sp.Rational(-3, 16)

    def test_principal_part_frozen(self):
        pp = principal_part_at_i(RatFunc(one(), 1, 1))
        assert pp == RatFunc(LAY2.const(GaussianRational(0, Fraction(-1, 2))), 1, 0)

    def test_arctangent_integral(self):
        assert line_integral(RatFunc(one(), 1, 1)) == ScalarSum.of(1, pi=1)

    def test_degree_errors(self):
        with pytest.raises(DegreeError):
            principal_part_at_i(RatFunc(xi_n(2), 1, 1))
        with pytest.raises(DegreeError):
            line_integral_coefficient(RatFunc(one(), 0, 1))

    @given(ratfuncs(integrable=True))
    def test_residue_matches_sympy(self, f):
        want = sp.residue(to_sympy(f), X, sp.I)
        got = residue_at_i(f).const_value()
        assert sp.simplify(gr_to_sympy(got) - want) == 0

    @given(ratfuncs(integrable=True))
    def test_principal_part_decomposition(self, f):
        pp = principal_part_at_i(f)
        assert pp.b == 0 and pp.num.degree(LAY2.xn) < max(pp.a, 1)
        rest = sp.cancel(to_sympy(f) - to_sympy(pp))
        assert sp.denom(rest).subs(X, sp.I) != 0

    @given(ratfuncs(integrable=True))
    def test_projection_idempotent(self, f):
        pp = principal_part_at_i(f)
        assert principal_part_at_i(pp) == pp

    @given(ratfuncs(integrable=True), ratfuncs(integrable=True), gaussian)
    def test_line_integral_linear(self, f, g, c):
        assert line_integral(f * c + g) == line_integral(f) * c + line_integral(g)


# --- scalars and sphere moments -------------------------------------------


class TestSphere:
    @pytest.mark.parametrize(
        "exps, want",
        [((2, 0, 0), Fraction(1, 3)), ((2, 2, 0), Fraction(1, 15)), ((4, 0, 0), Fraction(1, 5)), ((2, 0), Fraction(1, 2)), ((1, 1, 0), 0)],
    )
    def test_moments(self, exps, want):
        assert sphere_moment(exps) == want

    def test_sphere_integrate_is_omega_multiple(self):
        lay = Covariables(4)
        assert sphere_integrate(lay.xi(0) ** 2 + lay.H()) == ScalarSum.of(Fraction(1, 3), omega=1) + ScalarSum.of(1, omega=1, h=1)

    @given(tangential_ratfuncs())
    def test_average_kills_odd_moments(self, f):
        avg = tangential_average(f)
        lay = Covariables(4)
        assert all(not any(e[i] for i in lay.tangential) for e in avg.num.terms)

    def test_scalarsum_roundtrip(self):
        s = ScalarSum.of(GaussianRational(Fraction(-3, 8), 2), pi=1, omega=1, h=1) + ScalarSum.of(5)
        assert ScalarSum.from_terms(s.to_terms()) == s

    def test_subs_h(self):
        s = ScalarSum.of(2, pi=1, h=1) + ScalarSum.of(1, pi=1)
        assert s.subs_h(0) == ScalarSum.of(1, pi=1)
