"""Symbol calculus at the base point."""

import pytest

from ncgres.scalars import HomFrac
from ncgres.symbols import (
    JetDepthError,
    composition_defect,
    derive,
    dirac_symbols,
    invert_symbol,
    make_context,
    on_sphere,
    order_zero_symbol,
    pi_plus_symbol,
    principal_symbol,
)

SCENARIOS = [("dirac", 3), ("dirac", 4), ("signature", 4)]


@pytest.mark.parametrize("operator, n", SCENARIOS)
def test_composition_is_identity(operator, n):
    ctx = make_context(operator, n)
    p1, p0 = principal_symbol(ctx), order_zero_symbol(ctx)
    q1, q2 = invert_symbol(p1, p0, ctx)
    order0, order1 = composition_defect(ctx, p1, p0, q1, q2)
    assert order0.is_zero() and order1.is_zero()


def test_principal_squares_to_norm():
    ctx = make_context("dirac", 4)
    p1 = principal_symbol(ctx).value
    assert (p1 @ p1).scalar_part() == HomFrac(ctx.layout.norm_sq(), 0)


def test_q2_has_no_normal_derivative():
    syms = dirac_symbols(make_context("dirac", 4))
    with pytest.raises(JetDepthError):
        derive(syms[-2], "x_n")


def test_bare_matrix_rejects_base_derivative():
    syms = dirac_symbols(make_context("dirac", 4))
    with pytest.raises(JetDepthError):
        derive(syms[-1].value, "x_n")


def test_tangential_base_derivative_vanishes():
    syms = dirac_symbols(make_context("dirac", 4))
    assert derive(syms[-1], "x").value.is_zero()


def test_derive_argument_checks():
    syms = dirac_symbols(make_context("dirac", 4))
    with pytest.raises(ValueError):
        derive(syms[-1].value, "xi", 3)
    with pytest.raises(ValueError):
        derive(syms[-1].value, "y")
    with pytest.raises(ValueError):
        derive(syms[-1].value, "xi_n", times=-1)


def test_derivatives_commute():
    q1 = dirac_symbols(make_context("dirac", 4))[-1].value
    a = derive(derive(q1, "xi", 0), "xi_n")
    b = derive(derive(q1, "xi_n"), "xi", 0)
    assert a == b


def test_tangential_derivative_must_precede_projection():
    # the cosphere form forgets the |xi'| dependence of |xi|^2, so a formal
    # xi'-derivative taken after projection misses the denominator term
    q1 = dirac_symbols(make_context("dirac", 4))[-1].value
    before = pi_plus_symbol(derive(q1, "xi", 1))
    after = pi_plus_symbol(q1).map(lambda v: v.diff(1))
    assert before != after
    assert len(before.entries) > len(after.entries)


@pytest.mark.parametrize("operator, n", SCENARIOS)
def test_pi_plus_idempotent(operator, n):
    q1 = dirac_symbols(make_context(operator, n))[-1].value
    once = pi_plus_symbol(q1)
    assert pi_plus_symbol(once) == once
    assert pi_plus_symbol(on_sphere(q1)) == once


def test_context_validation():
    with pytest.raises(ValueError):
        make_context("laplace", 4)
    from ncgres.clifford import make_backend

    with pytest.raises(ValueError):
        make_context("dirac", 4, make_backend("exterior", 4))
