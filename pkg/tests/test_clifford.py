"""Clifford backends: relations and traces, also under a change of representation."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gaussian
from ncgres.clifford import (
    SUPPORTED,
    AlgebraElement,
    BackendError,
    c_normal,
    c_xi_prime,
    check_relations,
    make_backend,
    ugalde_closed_form,
    ugalde_mode_trace,
    word,
)
from ncgres.scalars import GaussianRational, Poly

BACKENDS = sorted(SUPPORTED)


def elementary(dim, i, j, t):
    """``Id + t E_ij`` and its inverse."""
    m = AlgebraElement.identity(dim) + AlgebraElement(dim, {(i, j): t})
    inv = AlgebraElement.identity(dim) + AlgebraElement(dim, {(i, j): -t})
    return m, inv


@st.composite
def basis_changes(draw, dim):
    """Random invertible matrix as a product of elementary matrices, with inverse."""
    m = AlgebraElement.identity(dim)
    inv = AlgebraElement.identity(dim)
    for _ in range(draw(st.integers(1, 4))):
        i, j = draw(st.tuples(st.integers(0, dim - 1), st.integers(0, dim - 1)).filter(lambda p: p[0] != p[1]))
        e, e_inv = elementary(dim, i, j, draw(gaussian))
        m, inv = m @ e, e_inv @ inv
    return m, inv


@pytest.mark.parametrize("kind, n", BACKENDS)
def test_relations(kind, n):
    check_relations(make_backend(kind, n))


@pytest.mark.parametrize("kind, n, dim", [("spinor", 3, 2), ("spinor", 4, 4), ("exterior", 4, 16)])
def test_identity_trace(kind, n, dim):
    assert make_backend(kind, n).identity().trace() == GaussianRational(dim)


def test_unsupported():
    with pytest.raises(BackendError):
        make_backend("spinor", 5)
    with pytest.raises(BackendError):
        make_backend("spinor", 4).cbar(0)


def test_normal_square_trace():
    b = make_backend("spinor", 4)
    g = c_normal(b, 5)
    assert (g @ g).trace() == Poly.const(-4, 5)


def test_c_xi_prime_squares_to_minus_norm():
    b = make_backend("spinor", 4)
    cp = c_xi_prime(b, 5)
    norm = sum((Poly.var(i, 5, 2) for i in range(3)), Poly(5))
    assert (cp @ cp) == b.identity().map(lambda one: -norm * one)


def test_ugalde_values():
    assert [ugalde_mode_trace(m) for m in range(5)] == [1, 0, -2, 0, 1]
    assert [ugalde_closed_form(m, 4) for m in range(5)] == [1, 0, -2, 0, 1]


@pytest.mark.parametrize("i", [0, 1, 2])
def test_ugalde_tangential_index_irrelevant(i):
    assert sum(ugalde_mode_trace(m, 4, i) for m in range(5)) == 0


def test_ugalde_bad_degree():
    with pytest.raises(ValueError):
        ugalde_mode_trace(5)


@given(st.lists(st.integers(0, 3), max_size=6), st.lists(st.integers(0, 3), max_size=6))
def test_trace_cyclic(u, v):
    gens = make_backend("spinor", 4).gammas
    a, b = word(gens, u), word(gens, v)
    assert (a @ b).trace() == (b @ a).trace()


@given(st.lists(st.integers(0, 3), min_size=1, max_size=5), st.lists(st.integers(0, 3), max_size=4))
def test_exterior_trace_cyclic(u, v):
    b = make_backend("exterior", 4)
    gens = list(b.gammas) + list(b.bars)
    x, y = word(gens, [k * 2 % 8 for k in u]), word(gens, [k * 2 % 8 + 1 for k in v])
    assert (x @ y).trace() == (y @ x).trace()


@given(basis_changes(4))
def test_conjugated_backend_satisfies_relations(change):
    m, inv = change
    check_relations(make_backend("spinor", 4).conjugated(m, inv))


def test_conjugated_requires_inverse():
    b = make_backend("spinor", 3)
    m, _ = elementary(2, 0, 1, GaussianRational(1))
    with pytest.raises(BackendError):
        b.conjugated(m, m)


def test_permuted():
    b = make_backend("exterior", 4)
    p = b.permuted([2, 0, 1])
    check_relations(p)
    assert p.c(0) == b.c(2) and p.c(3) == b.c(3)
    with pytest.raises(BackendError):
        b.permuted([0, 1, 3])
