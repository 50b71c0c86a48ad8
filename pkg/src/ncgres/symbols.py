"""Symbol calculus at the base point.

A symbol component is carried as a :class:`Jet`: its value at ``x_0`` and its
``x_n``-derivative there (``None`` when that derivative is beyond what the
collar 1-jet determines).  Tangential ``x``-derivatives vanish identically in
boundary normal coordinates.  Matrix entries are :class:`HomFrac`, so every
covariable derivative is exact; :func:`pi_plus_symbol` moves to the cosphere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .clifford import AlgebraElement, Backend, c_normal, c_xi_prime, make_backend
from .geometry import (
    DerivativeRules,
    MetricJet,
    connection_matrix,
    derivative_rules,
    h_poly,
    subleading_symbol,
)
from .scalars import Covariables, GaussianRational, HomFrac, I, Poly, RatFunc, principal_part_at_i

OPERATOR_BACKEND = {"dirac": "spinor", "signature": "exterior"}


class JetDepthError(ValueError):
    """An ``x_n``-derivative was requested beyond the available jet depth."""


def to_hom(e: AlgebraElement) -> AlgebraElement:
    def conv(v):
        if isinstance(v, HomFrac):
            return v
        if isinstance(v, Poly):
            return HomFrac(v, 0, reduce=False)
        raise TypeError(f"cannot lift {type(v).__name__} to HomFrac")

    return e.map(conv)


@dataclass(frozen=True)
class Jet:
    """Value and normal derivative of one homogeneous symbol component."""

    value: AlgebraElement
    dxn: AlgebraElement | None

    def __add__(self, other: "Jet") -> "Jet":
        dxn = None if self.dxn is None or other.dxn is None else self.dxn + other.dxn
        return Jet(self.value + other.value, dxn)

    def __neg__(self) -> "Jet":
        return Jet(-self.value, None if self.dxn is None else -self.dxn)

    def __matmul__(self, other: "Jet") -> "Jet":
        if self.dxn is None or other.dxn is None:
            dxn = None
        else:
            dxn = self.dxn @ other.value + self.value @ other.dxn
        return Jet(self.value @ other.value, dxn)

    def scale(self, s) -> "Jet":
        return Jet(self.value.scale(s), None if self.dxn is None else self.dxn.scale(s))


@dataclass(frozen=True)
class JetSymbol:
    """Graded symbol: homogeneity order -> :class:`Jet`."""

    components: dict[int, Jet] = field(default_factory=dict)

    def __getitem__(self, order: int) -> Jet:
        return self.components[order]

    def orders(self) -> list[int]:
        return sorted(self.components, reverse=True)


@dataclass(frozen=True)
class SymbolContext:
    operator: str
    n: int
    backend: Backend
    layout: Covariables
    metric: MetricJet
    rules: DerivativeRules

    @property
    def nvars(self) -> int:
        return self.layout.nvars

    def c_xi_prime(self) -> AlgebraElement:
        return to_hom(c_xi_prime(self.backend, self.nvars))

    def c_normal(self) -> AlgebraElement:
        return to_hom(c_normal(self.backend, self.nvars))

    def c_xi(self) -> AlgebraElement:
        return self.c_xi_prime() + self.c_normal().map(lambda v: v * self.layout.xi_n())

    def hom(self, p) -> HomFrac:
        if not isinstance(p, Poly):
            p = Poly.const(p, self.nvars)
        return HomFrac(p, 0, reduce=False)

    def inv_norm_sq(self, k: int = 1) -> HomFrac:
        return HomFrac(Poly.const(1, self.nvars), k, reduce=False)


def make_context(operator: str, n: int, backend: Backend | None = None) -> SymbolContext:
    if operator not in OPERATOR_BACKEND:
        raise ValueError(f"unknown operator {operator!r}")
    if backend is None:
        backend = make_backend(OPERATOR_BACKEND[operator], n)
    elif backend.kind != OPERATOR_BACKEND[operator] or backend.n != n:
        raise ValueError("backend does not match operator and dimension")
    metric = MetricJet.collar(n)
    return SymbolContext(operator, n, backend, Covariables(n), metric, derivative_rules(metric))


def principal_symbol(ctx: SymbolContext) -> Jet:
    """``p_1 = i c(xi)`` with ``d/dx_n p_1 = i (H/2) c(xi')``."""
    value = ctx.c_xi().scale(I)
    scale = h_poly(ctx.rules.tangential_scale, ctx.nvars)
    return Jet(value, ctx.c_xi_prime().map(lambda v: v * scale).scale(I))


def order_zero_symbol(ctx: SymbolContext) -> Jet:
    """``p_0`` at the base point; its normal derivative is not determined."""
    omega = connection_matrix(ctx.metric)
    return Jet(to_hom(subleading_symbol(ctx.backend, omega, ctx.nvars, ctx.operator)), None)


def _normal_derivative(jet: Jet) -> AlgebraElement:
    if jet.dxn is None:
        raise JetDepthError("normal derivative not available at this jet depth")
    return jet.dxn


def invert_symbol(p1: Jet, p0: Jet, ctx: SymbolContext) -> tuple[Jet, Jet]:
    """``q_-1 = p_1^-1`` and ``q_-2 = -q_-1 [p_0 q_-1 + sum_j d_xi_j p_1 D_x_j q_-1]``.

    ``D_x = -i d_x``; at the base point only the normal term of the sum is
    nonzero.
    """
    sq = (p1.value @ p1.value).scalar_part()
    norm = ctx.hom(ctx.layout.norm_sq())
    if sq is None or sq != norm:
        raise ValueError("principal symbol does not square to |xi|^2")
    inv = ctx.inv_norm_sq()
    q1_value = p1.value.map(lambda v: v * inv)
    q1_dxn = -(q1_value @ _normal_derivative(p1) @ q1_value)
    q1 = Jet(q1_value, q1_dxn)

    bracket = p0.value @ q1.value
    for j in range(ctx.n):
        dp1 = p1.value.map(lambda v: v.diff(j))
        if dp1.is_zero():
            continue
        if j == ctx.n - 1:
            dq = q1.dxn.scale(-I)
        else:
            continue  # tangential x-derivatives vanish at the base point
        bracket = bracket + dp1 @ dq
    q2 = Jet(-(q1.value @ bracket), None)
    return q1, q2


def dirac_symbols(ctx: SymbolContext) -> JetSymbol:
    """``sigma(D^-1)`` truncated to orders -1 and -2."""
    p1 = principal_symbol(ctx)
    p0 = order_zero_symbol(ctx)
    q1, q2 = invert_symbol(p1, p0, ctx)
    return JetSymbol({-1: q1, -2: q2})


def composition_defect(ctx: SymbolContext, p1: Jet, p0: Jet, q1: Jet, q2: Jet) -> tuple[AlgebraElement, AlgebraElement]:
    """Orders 0 and -1 of ``sigma(D) o sigma(D^-1) - 1`` at the base point."""
    order0 = p1.value @ q1.value - ctx.backend.identity().map(lambda v: ctx.hom(v))
    order1 = p1.value @ q2.value + p0.value @ q1.value
    dp1 = p1.value.map(lambda v: v.diff(ctx.n - 1))
    order1 = order1 + dp1 @ q1.dxn.scale(-I)
    return order0, order1


def pi_plus_symbol(e: AlgebraElement) -> AlgebraElement:
    """Entry-wise principal part at ``xi_n = +i`` on the cosphere."""

    def proj(v):
        if isinstance(v, HomFrac):
            v = v.on_sphere()
        elif isinstance(v, Poly):
            v = RatFunc(v)
        return principal_part_at_i(v)

    return e.map(proj)


def on_sphere(e: AlgebraElement) -> AlgebraElement:
    def conv(v):
        if isinstance(v, HomFrac):
            return v.on_sphere()
        if isinstance(v, Poly):
            return RatFunc(v)
        return v

    return e.map(conv)


_VARIABLES = ("xi_n", "xi", "x_n", "x")


def derive(obj, which: str, index: int | None = None, times: int = 1):
    """Derivative of a :class:`Jet` or matrix.

    ``which`` is ``"xi_n"``, ``"xi"`` (tangential covariable ``index``,
    0-based), ``"x_n"`` or ``"x"`` (tangential base coordinate).
    """
    if which not in _VARIABLES:
        raise ValueError(f"unknown derivative {which!r}")
    if times < 0:
        raise ValueError("negative derivative order")
    out = obj
    for _ in range(times):
        out = _derive_once(out, which, index)
    return out


def _derive_once(obj, which: str, index: int | None):
    if isinstance(obj, Jet):
        if which == "x_n":
            return Jet(_normal_derivative(obj), None)
        if which == "x":
            zero = AlgebraElement.zero(obj.value.dim)
            return Jet(zero, None)
        return Jet(_derive_once(obj.value, which, index), None if obj.dxn is None else _derive_once(obj.dxn, which, index))
    if isinstance(obj, AlgebraElement):
        if which in ("x_n", "x"):
            raise JetDepthError("base-point derivatives need a Jet, not a bare matrix")
        var = _covariable_index(obj, which, index)
        if var is None:
            return obj
        return obj.map(lambda v: v.diff(var))
    raise TypeError(f"cannot differentiate {type(obj).__name__}")


def _covariable_index(e: AlgebraElement, which: str, index: int | None) -> int | None:
    for v in e.entries.values():
        nvars = v.nvars
        break
    else:
        return None
    n = nvars - 1
    if which == "xi_n":
        return n - 1
    if index is None or not 0 <= index < n - 1:
        raise ValueError(f"tangential index must be in 0..{n - 2}")
    return index


def scalar_matrix(ctx: SymbolContext, value) -> AlgebraElement:
    return ctx.backend.identity().map(lambda one: ctx.hom(value) * one)
