"""Collar geometry at the base point."""

from fractions import Fraction

import pytest

from ncgres.clifford import make_backend
from ncgres.geometry import (
    MetricJet,
    boundary_action,
    christoffel,
    connection_data,
    connection_matrix,
    extrinsic_curvature,
    p0_closed_form,
    subleading_symbol,
)
from ncgres.scalars import GaussianRational, ScalarSum

H = ScalarSum.of(1, h=1)


def half(sign=1):
    return H * GaussianRational(Fraction(sign, 2))


@pytest.mark.parametrize("n", [3, 4])
def test_christoffel_pattern(n):
    gam = christoffel(MetricJet.collar(n))
    nn = n - 1
    for i in range(nn):
        assert gam[nn][i][i] == half()
        assert gam[i][nn][i] == half(-1)
        assert gam[i][i][nn] == half(-1)
    nonzero = sum(1 for k in range(n) for i in range(n) for j in range(n) if not gam[k][i][j].is_zero())
    assert nonzero == 3 * nn


def test_connection_antisymmetric():
    om = connection_matrix(MetricJet.collar(4))
    for i in range(4):
        for s in range(4):
            for t in range(4):
                assert om[i][s][t] == -om[i][t][s]
    assert om[0][3][0] == half()


def test_extrinsic_curvature_and_action():
    jet = MetricJet.collar(4)
    assert extrinsic_curvature(jet) == H * GaussianRational(Fraction(-3, 2))
    assert boundary_action(jet) == H * GaussianRational(-3)
    assert connection_data(jet).K == extrinsic_curvature(jet)


@pytest.mark.parametrize("operator, kind, n", [("dirac", "spinor", 3), ("dirac", "spinor", 4), ("signature", "exterior", 4)])
def test_p0_closed_form(operator, kind, n):
    backend = make_backend(kind, n)
    om = connection_matrix(MetricJet.collar(n))
    assert subleading_symbol(backend, om, n + 1, operator) == p0_closed_form(backend, n + 1, operator)


def test_operator_backend_mismatch():
    with pytest.raises(ValueError):
        subleading_symbol(make_backend("spinor", 4), connection_matrix(MetricJet.collar(4)), 5, "signature")


def test_collar_needs_dimension():
    with pytest.raises(ValueError):
        MetricJet.collar(1)
