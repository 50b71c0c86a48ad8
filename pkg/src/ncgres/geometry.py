"""Collar-metric geometry at a boundary point.

The metric near the boundary is ``g = h(x_n)^-1 g_bd + dx_n^2`` with
``h(0) = 1`` and ``H = h'(0)``.  In boundary normal coordinates at the base
point only first normal derivatives of ``g`` survive, so everything is linear
in ``H`` and is returned as :class:`~ncgres.scalars.ScalarSum` tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .clifford import AlgebraElement, Backend
from .scalars import GaussianRational, Poly, ScalarSum

Table2 = list[list[ScalarSum]]
Table3 = list[list[list[ScalarSum]]]

_H = ScalarSum.of(1, h=1)


def _zeros(*shape) -> list:
    if len(shape) == 1:
        return [ScalarSum() for _ in range(shape[0])]
    return [_zeros(*shape[1:]) for _ in range(shape[0])]


def h_power_derivative(p: Fraction) -> ScalarSum:
    """``d/dx_n h^p`` at ``x_n = 0`` given ``h(0) = 1``."""
    return _H * GaussianRational(Fraction(p))


@dataclass(frozen=True)
class MetricJet:
    """Value and first derivatives of ``g_ij`` at the base point."""

    n: int
    g: Table2
    dg: Table3  # dg[l][i][j] = d/dx_l g_ij

    @classmethod
    def collar(cls, n: int) -> "MetricJet":
        if n < 2:
            raise ValueError("need n >= 2")
        g = _zeros(n, n)
        for i in range(n):
            g[i][i] = ScalarSum.of(1)
        dg = _zeros(n, n, n)
        d_inv_h = h_power_derivative(Fraction(-1))
        for i in range(n - 1):
            dg[n - 1][i][i] = d_inv_h
        return cls(n, g, dg)

    def inverse_at_base(self) -> Table2:
        for i in range(self.n):
            for j in range(self.n):
                if self.g[i][j] != (ScalarSum.of(1) if i == j else ScalarSum()):
                    raise ValueError("metric at the base point must be the identity")
        return self.g


@dataclass(frozen=True)
class ConnectionData:
    christoffel: Table3  # christoffel[k][i][j] = Gamma^k_ij
    omega: Table3  # omega[i][s][t] = omega_st(e_i)
    K: ScalarSum


def christoffel(jet: MetricJet) -> Table3:
    """``Gamma^k_ij = 1/2 g^kl (d_j g_li + d_i g_lj - d_l g_ij)`` at the base point."""
    n = jet.n
    ginv = jet.inverse_at_base()
    out = _zeros(n, n, n)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                acc = ScalarSum()
                for l in range(n):
                    if ginv[k][l].is_zero():
                        continue
                    acc = acc + ginv[k][l] * (jet.dg[j][l][i] + jet.dg[i][l][j] - jet.dg[l][i][j])
                out[k][i][j] = acc * GaussianRational(Fraction(1, 2))
    return out


def frame_coefficient_derivatives(jet: MetricJet) -> Table3:
    """``d/dx_i h_ts`` where ``d/dx_t = sum_s h_ts e_s``.

    Tangential frame vectors are ``sqrt(h) e_t``, hence ``h_ts = h^-1/2 delta``.
    """
    n = jet.n
    out = _zeros(n, n, n)
    d = h_power_derivative(Fraction(-1, 2))
    for t in range(n - 1):
        out[n - 1][t][t] = d
    return out


def connection_matrix(jet: MetricJet) -> Table3:
    """``omega_st(e_i) = -d_i h_ts + Gamma^s_it`` at the base point."""
    n = jet.n
    gam = christoffel(jet)
    dh = frame_coefficient_derivatives(jet)
    out = _zeros(n, n, n)
    for i in range(n):
        for s in range(n):
            for t in range(n):
                out[i][s][t] = -dh[i][t][s] + gam[s][i][t]
    return out


def extrinsic_curvature(jet: MetricJet) -> ScalarSum:
    """Trace of ``K_ij = -Gamma^n_ij`` over the boundary directions."""
    n = jet.n
    gam = christoffel(jet)
    ginv = jet.inverse_at_base()
    acc = ScalarSum()
    for i in range(n - 1):
        for j in range(n - 1):
            acc = acc + (-gam[n - 1][i][j]) * ginv[i][j]
    return acc


def boundary_action(jet: MetricJet) -> ScalarSum:
    """Gibbons-Hawking boundary term ``2K`` per unit boundary volume."""
    return extrinsic_curvature(jet) * GaussianRational(2)


def connection_data(jet: MetricJet) -> ConnectionData:
    return ConnectionData(christoffel(jet), connection_matrix(jet), extrinsic_curvature(jet))


def h_poly(s: ScalarSum, nvars: int) -> Poly:
    """Embed an ``H``-only scalar into the covariable polynomial ring."""
    out = Poly(nvars)
    for (p, o, h), c in s.terms.items():
        if p or o:
            raise ValueError(f"{s} involves pi or Omega")
        out = out + Poly.var(nvars - 1, nvars, h) * c
    return out


def subleading_symbol(backend: Backend, omega: Table3, nvars: int, operator: str | None = None) -> AlgebraElement:
    """Order-zero symbol ``p_0`` at the base point.

    Dirac: ``-1/4 sum omega_st(e_i) c_i c_s c_t``.
    Signature: ``1/4 sum omega_st(e_i) c_i (cbar_s cbar_t - c_s c_t)``.
    """
    if operator is None:
        operator = "dirac" if backend.kind == "spinor" else "signature"
    if (operator, backend.kind) not in {("dirac", "spinor"), ("signature", "exterior")}:
        raise ValueError(f"{operator} operator does not act on the {backend.kind} backend")
    n = backend.n
    out = AlgebraElement.zero(backend.dim)
    for i in range(n):
        for s in range(n):
            for t in range(n):
                w = omega[i][s][t]
                if w.is_zero():
                    continue
                cc = backend.c(s) @ backend.c(t)
                if operator == "dirac":
                    term = (backend.c(i) @ cc).scale(GaussianRational(Fraction(-1, 4)))
                else:
                    bb = backend.cbar(s) @ backend.cbar(t)
                    term = (backend.c(i) @ (bb - cc)).scale(GaussianRational(Fraction(1, 4)))
                out = out + term.map(lambda v: h_poly(w, nvars) * v)
    return out


def p0_closed_form(backend: Backend, nvars: int, operator: str | None = None) -> AlgebraElement:
    """``-(n-1)/4 H c(dx_n)``, plus ``1/4 H sum_i c_i cbar_n cbar_i`` for the signature operator."""
    if operator is None:
        operator = "dirac" if backend.kind == "spinor" else "signature"
    n = backend.n
    H = Poly.var(nvars - 1, nvars)
    out = backend.c(n - 1).map(lambda v: H * v * GaussianRational(Fraction(-(n - 1), 4)))
    if operator == "signature":
        out = out + signature_p0_tilde(backend, nvars)
    return out


def signature_p0_tilde(backend: Backend, nvars: int) -> AlgebraElement:
    n = backend.n
    H = Poly.var(nvars - 1, nvars)
    acc = AlgebraElement.zero(backend.dim)
    for i in range(n - 1):
        acc = acc + backend.c(i) @ backend.cbar(n - 1) @ backend.cbar(i)
    return acc.map(lambda v: H * v * GaussianRational(Fraction(1, 4)))


@dataclass(frozen=True)
class DerivativeRules:
    """Normal derivatives of the symbol primitives at the base point.

    ``d/dx_n c(xi') = tangential_scale * c(xi')`` and
    ``d/dx_n |xi|^2 = norm_scale * |xi'|^2``; ``c(dx_n)`` is constant.
    """

    tangential_scale: ScalarSum
    norm_scale: ScalarSum


def derivative_rules(jet: MetricJet) -> DerivativeRules:
    # c(dx_j) = sqrt(h) c(e_j) along the normal, and |xi|^2 = h |xi'|^2 + xi_n^2
    return DerivativeRules(
        tangential_scale=h_power_derivative(Fraction(1, 2)),
        norm_scale=h_power_derivative(Fraction(1)),
    )

