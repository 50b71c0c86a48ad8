"""Floating-point oracle for the exact engine.

Integrals over ``xi_n`` use adaptive quadrature on the whole real line; the
tangential sphere uses a product rule (Gauss-Legendre in ``cos(theta)`` times
the trapezoid rule in ``phi`` on S^2, the trapezoid rule on S^1), which is
exact for the polynomial degrees that occur.  Oracle results only ever add
records; they never touch exact values.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .report import VerificationRecord, record
from .residue import (
    CaseIndex,
    case_integrand,
    enumerate_cases,
    evaluate_case,
    multi_indices,
)
from .scalars import (
    Covariables,
    GaussianRational,
    Poly,
    RatFunc,
    line_integral,
    sphere_area,
)
from .symbols import dirac_symbols, make_context

log = logging.getLogger(__name__)

TOLERANCE = 1e-6


@dataclass(frozen=True)
class OracleConfig:
    h: float = 1.0
    sphere_nodes: int = 24
    tolerance: float = TOLERANCE
    seed: int = 0


def relative_error(exact: complex, numeric: complex) -> float:
    """Relative error, falling back to absolute error when ``exact`` is 0."""
    scale = abs(exact)
    return abs(exact - numeric) / (scale if scale > 0 else 1.0)


def sphere_rule(m: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (rows) and weights on the unit sphere ``S^(m-1)`` in ``R^m``."""
    if m == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if m == 2:
        phi = 2 * np.pi * np.arange(2 * k) / (2 * k)
        return np.stack([np.cos(phi), np.sin(phi)], axis=1), np.full(2 * k, 2 * np.pi / (2 * k))
    if m == 3:
        t, wt = np.polynomial.legendre.leggauss(k)
        phi = 2 * np.pi * np.arange(2 * k) / (2 * k)
        ct, ph = np.meshgrid(t, phi, indexing="ij")
        st = np.sqrt(1 - ct**2)
        nodes = np.stack([st * np.cos(ph), st * np.sin(ph), ct], axis=-1).reshape(-1, 3)
        weights = (wt[:, None] * np.full(2 * k, np.pi / k)[None, :]).reshape(-1)
        return nodes, weights
    raise ValueError(f"no sphere rule for S^{m - 1}")


class CompiledRatFunc:
    """Vectorized numeric evaluation of a :class:`RatFunc` with ``H`` fixed."""

    def __init__(self, f: RatFunc, h: float):
        lay = Covariables(f.nvars - 1)
        terms = list(f.num.terms.items())
        self.tangential = list(lay.tangential)
        self.xn = lay.xn
        exps = np.array([e for e, _ in terms], dtype=int).reshape(len(terms), f.nvars)
        coeff = np.array([complex(c) for _, c in terms], dtype=complex)
        # fold H into the coefficients
        self.coeff = coeff * h ** exps[:, lay.h] if len(terms) else coeff
        self.exps = exps
        self.a, self.b = f.a, f.b

    def sphere_average_fn(self, nodes: np.ndarray, weights: np.ndarray):
        """``xi_n -> int_S f(xi', xi_n) dsigma`` as a scalar callable."""
        if not len(self.coeff):
            return lambda x: 0j
        tang = np.ones((len(nodes), len(self.coeff)))
        for col, idx in enumerate(self.tangential):
            tang = tang * nodes[:, col : col + 1] ** self.exps[None, :, idx]
        moments = weights @ tang  # per monomial sphere integral
        weighted = self.coeff * moments
        powers = self.exps[:, self.xn]

        def fn(x: float) -> complex:
            num = np.sum(weighted * x**powers)
            return num / ((x - 1j) ** self.a * (x + 1j) ** self.b)

        return fn


def quad_line(fn, abs_floor: float = 1e-10, rel: float = 1e-9) -> tuple[complex, bool]:
    """``int_R fn`` for complex ``fn``; second value reports convergence.

    Convergence is judged from quadpack's own error estimate rather than its
    warnings, which also fire on round-off when the true value is zero.
    """
    ok = True
    parts = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for part in (lambda x: fn(x).real, lambda x: fn(x).imag):
            val, err = integrate.quad(part, -np.inf, np.inf, epsabs=1e-13, epsrel=1e-11, limit=400)
            ok &= err <= max(abs_floor, rel * abs(val))
            parts.append(val)
    return complex(parts[0], parts[1]), ok


def _oracle_record(check_id: str, anchor: str, exact: complex, numeric: complex, converged: bool, tol: float) -> VerificationRecord:
    err = relative_error(exact, numeric)
    note = f"relative error {err:.2e}"
    if not converged:
        note += "; quadrature did not converge"
    return record(
        check_id,
        anchor,
        [exact.real, exact.imag],
        [numeric.real, numeric.imag],
        converged and err <= tol,
        note=note,
    )


def numeric_case(idx: CaseIndex, operator: str, n: int, cfg: OracleConfig = OracleConfig()) -> tuple[complex, complex, bool]:
    """Exact and quadrature values for one case at ``H = cfg.h``, plus a convergence flag."""
    ctx = make_context(operator, n)
    symbols = dirac_symbols(ctx)
    exact = evaluate_case(idx, symbols, ctx).contribution.evaluate(math.pi, sphere_area(n - 1), cfg.h)
    nodes, weights = sphere_rule(n - 1, cfg.sphere_nodes)
    sign, jk = idx.prefactor_parts()
    total, converged = 0j, True
    for alpha in multi_indices(idx.alpha, n - 1):
        afact = math.prod(math.factorial(m) for m in alpha)
        tr = case_integrand(idx, symbols, alpha, ctx.nvars)
        fn = CompiledRatFunc(tr, cfg.h).sphere_average_fn(nodes, weights)
        val, ok = quad_line(fn)
        converged &= ok
        total += complex(sign) * val / (afact * jk)
    return exact, total, converged


def case_records(operator: str, n: int, cfg: OracleConfig = OracleConfig()) -> list[VerificationRecord]:
    out = []
    for idx in enumerate_cases(n):
        exact, numeric, ok = numeric_case(idx, operator, n, cfg)
        label = idx.label.replace(" ", "")
        out.append(_oracle_record(f"oracle.case.{label}", "plumbing", exact, numeric, ok, cfg.tolerance))
    return out


def random_ratfunc(rng: np.random.Generator, nvars: int = 3) -> RatFunc:
    """Random ``xi_n``-only rational function of degree at most -2."""
    lay = Covariables(nvars - 1)
    a, b = (int(v) for v in rng.integers(1, 5, size=2))
    top = a + b - 2
    num = Poly(nvars)
    for k in range(top + 1):
        re, im = (Fraction(int(v), int(rng.integers(1, 6))) for v in rng.integers(-9, 10, size=2))
        num = num + Poly.var(lay.xn, nvars, k) * GaussianRational(re, im)
    if num.is_zero():
        num = Poly.const(1, nvars)
    return RatFunc(num, a, b)


def random_records(count: int = 100, seed: int = 0, tol: float = TOLERANCE) -> list[VerificationRecord]:
    rng = np.random.default_rng(seed)
    out = []
    worst = 0.0
    ok_all = True
    for _ in range(count):
        f = random_ratfunc(rng)
        exact = line_integral(f).evaluate(math.pi, 1.0, 0.0)
        fn = _line_fn(f)
        numeric, ok = quad_line(fn)
        err = relative_error(exact, numeric)
        worst = max(worst, err)
        ok_all &= ok and err <= tol
    out.append(record("oracle.random-ratfunc", "plumbing", count, f"max relative error {worst:.2e}", ok_all))
    return out


def _line_fn(f: RatFunc):
    powers = {e[f.xn]: complex(c) for e, c in f.num.terms.items()}

    def fn(x: float) -> complex:
        num = sum(c * x**k for k, c in powers.items())
        return num / ((x - 1j) ** f.a * (x + 1j) ** f.b)

    return fn


def arctangent_record(tol: float = TOLERANCE) -> VerificationRecord:
    lay = Covariables(2)
    f = RatFunc(lay.const(1), 1, 1)
    exact = line_integral(f).evaluate(math.pi, 1.0, 0.0)
    numeric, ok = quad_line(_line_fn(f))
    return _oracle_record("oracle.arctangent", "plumbing", exact, numeric, ok, tol)


def sphere_moment_records(seed: int = 0, samples: int = 1_000_000, tol: float = TOLERANCE) -> list[VerificationRecord]:
    """``int_{S^2} xi_1^2 = 4 pi / 3`` by product rule and by Monte Carlo."""
    exact = 4 * math.pi / 3
    nodes, weights = sphere_rule(3, 8)
    quad = float(weights @ nodes[:, 0] ** 2)
    out = [_oracle_record("oracle.sphere-moment.product", "plumbing", exact, quad, True, tol)]
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((samples, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    vals = 4 * math.pi * pts[:, 0] ** 2
    mc = float(vals.mean())
    stderr = float(vals.std(ddof=1) / math.sqrt(samples))
    out.append(
        record(
            "oracle.sphere-moment.monte-carlo",
            "plumbing",
            exact,
            mc,
            abs(mc - exact) <= 5 * stderr,
            note=f"within {abs(mc - exact) / stderr:.2f} standard errors ({samples} samples)",
        )
    )
    return out


def run_oracle(operator: str, n: int, seed: int = 0, cfg: OracleConfig | None = None) -> list[VerificationRecord]:
    cfg = cfg or OracleConfig(seed=seed)
    recs = case_records(operator, n, cfg)
    recs.append(arctangent_record(cfg.tolerance))
    recs += random_records(100, seed, cfg.tolerance)
    recs += sphere_moment_records(seed, tol=cfg.tolerance)
    log.info("oracle: %d records", len(recs))
    return recs


__all__ = [
    "OracleConfig",
    "CompiledRatFunc",
    "case_records",
    "numeric_case",
    "quad_line",
    "random_records",
    "relative_error",
    "run_oracle",
    "sphere_moment_records",
    "sphere_rule",
]
