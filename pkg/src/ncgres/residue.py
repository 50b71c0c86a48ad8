"""Boundary term of the residue of ``(pi^+ D^-1)^2``.

Each index ``(r, l, k, j, alpha)`` with ``r - k - |alpha| + l - j - 1 = -n``
contributes

    (-i)^(|alpha|+j+k+1) / (alpha! (j+k+1)!)
      * int_{|xi'|=1} int_R tr[ d_xn^j d_xi'^alpha d_xin^k pi^+ q_r
                                * d_x'^alpha d_xin^(j+1) d_xn^k q_l ] dxi_n

per unit boundary volume.  Evaluation order: matrix trace, ``xi_n`` residue
at ``+i``, then sphere moments.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial

from .clifford import Backend
from .geometry import MetricJet, boundary_action
from .scalars import (
    GaussianRational,
    Poly,
    RatFunc,
    ScalarSum,
    line_integral_coefficient,
    sphere_integrate,
)
from .symbols import (
    JetSymbol,
    SymbolContext,
    derive,
    dirac_symbols,
    make_context,
    on_sphere,
    pi_plus_symbol,
)

log = logging.getLogger(__name__)

SUPPORTED = {("dirac", 3), ("dirac", 4), ("signature", 4)}

_PI = ScalarSum.of(1, pi=1)
_OMEGA = ScalarSum.of(1, omega=1)
_H = ScalarSum.of(1, h=1)


def _q(frac) -> ScalarSum:
    return ScalarSum.of(GaussianRational(Fraction(frac)))


@dataclass(frozen=True)
class CaseIndex:
    r: int
    l: int
    k: int
    j: int
    alpha: int  # |alpha|; evaluation sums over all tangential multi-indices of this order

    @property
    def label(self) -> str:
        return CASE_LABELS.get((self.r, self.l, self.k, self.j, self.alpha), f"r{self.r}l{self.l}k{self.k}j{self.j}a{self.alpha}")

    def prefactor_parts(self) -> tuple[GaussianRational, int]:
        """``(-i)^(|alpha|+j+k+1)`` and ``(j+k+1)!`` (``alpha!`` depends on the multi-index)."""
        return GaussianRational(0, -1) ** (self.alpha + self.j + self.k + 1), factorial(self.j + self.k + 1)


CASE_LABELS = {
    (-1, -1, 0, 0, 1): "a I",
    (-1, -1, 0, 1, 0): "a II",
    (-1, -1, 1, 0, 0): "a III",
    (-2, -1, 0, 0, 0): "b",
    (-1, -2, 0, 0, 0): "c",
    (-1, -1, 0, 0, 0): "single",
}


@dataclass(frozen=True)
class CaseResult:
    index: CaseIndex
    contribution: ScalarSum
    trace: RatFunc | None = None

    @property
    def label(self) -> str:
        return self.index.label


@dataclass
class PhiReport:
    operator: str
    n: int
    cases: list[CaseResult]
    total: ScalarSum
    expected: dict[str, ScalarSum] = field(default_factory=dict)

    def verdicts(self) -> dict[str, bool]:
        out = {}
        for c in self.cases:
            if c.label in self.expected:
                out[c.label] = c.contribution == self.expected[c.label]
        if "total" in self.expected:
            out["total"] = self.total == self.expected["total"]
        return out


def enumerate_cases(n: int, min_order: int = -2) -> list[CaseIndex]:
    """All ``(r, l, k, j, |alpha|)`` with ``min_order <= r, l <= -1`` on the constraint."""
    out = []
    for r in range(-1, min_order - 1, -1):
        for l in range(-1, min_order - 1, -1):
            slack = r + l - 1 + n  # = k + |alpha| + j
            if slack < 0:
                continue
            for k in range(slack + 1):
                for j in range(slack - k + 1):
                    out.append(CaseIndex(r, l, k, j, slack - k - j))
    out.sort(key=lambda c: (-(c.r + c.l), c.r, -c.alpha, -c.j, -c.k))
    return out


def multi_indices(order: int, dims: int) -> list[tuple[int, ...]]:
    return [a for a in product(range(order + 1), repeat=dims) if sum(a) == order]


def _apply_left(q, idx: CaseIndex, alpha: tuple[int, ...]):
    jet = derive(q, "x_n", times=idx.j)
    value = jet.value
    for axis, m in enumerate(alpha):
        value = derive(value, "xi", axis, times=m)
    return derive(value, "xi_n", times=idx.k)


def _apply_right(q, idx: CaseIndex, alpha: tuple[int, ...]):
    jet = q
    if sum(alpha):
        jet = derive(jet, "x")
    jet = derive(jet, "x_n", times=idx.k) if idx.k else jet
    return derive(jet.value, "xi_n", times=idx.j + 1)


def case_integrand(idx: CaseIndex, symbols: JetSymbol, alpha: tuple[int, ...], nvars: int) -> RatFunc:
    """Traced integrand for one multi-index, on the cosphere."""
    right = _apply_right(symbols[idx.l], idx, alpha)
    if right.is_zero():
        return RatFunc(Poly(nvars))
    left = pi_plus_symbol(_apply_left(symbols[idx.r], idx, alpha))
    return (left @ on_sphere(right)).trace()


def evaluate_case(idx: CaseIndex, symbols: JetSymbol, ctx: SymbolContext) -> CaseResult:
    sign, jk_fact = idx.prefactor_parts()
    total = ScalarSum()
    traced = None
    for alpha in multi_indices(idx.alpha, ctx.n - 1):
        alpha_fact = 1
        for m in alpha:
            alpha_fact *= factorial(m)
        tr = case_integrand(idx, symbols, alpha, ctx.nvars)
        if not isinstance(tr, RatFunc):
            tr = RatFunc(ctx.layout.const(tr))
        traced = tr if traced is None else traced + tr
        coeff = sign * GaussianRational(Fraction(1, alpha_fact * jk_fact))
        total = total + sphere_integrate(line_integral_coefficient(tr)) * _PI * coeff
    log.debug("case %s: %s", idx.label, total)
    return CaseResult(idx, total, traced)


def expected_dirac4() -> dict[str, ScalarSum]:
    unit = _PI * _H * _OMEGA
    return {
        "a I": ScalarSum(),
        "a II": unit * _q(Fraction(-3, 8)),
        "a III": unit * _q(Fraction(3, 8)),
        "b": unit * _q(Fraction(9, 8)),
        "c": unit * _q(Fraction(-9, 8)),
        "total": ScalarSum(),
    }


def expected_values(operator: str, n: int) -> dict[str, ScalarSum]:
    if n == 4:
        base = expected_dirac4()
        if operator == "signature":
            return {k: v * GaussianRational(4) for k, v in base.items()}
        return base
    # literal prefactor: (-i) * (i pi / 2) * Omega
    val = _PI * _OMEGA * _q(Fraction(1, 2))
    return {"single": val, "total": val}


def assemble_phi(operator: str, n: int, backend: Backend | None = None) -> PhiReport:
    if (operator, n) not in SUPPORTED:
        raise ValueError(f"unsupported combination ({operator}, {n})")
    ctx = make_context(operator, n, backend)
    symbols = dirac_symbols(ctx)
    cases = [evaluate_case(idx, symbols, ctx) for idx in enumerate_cases(n)]
    total = ScalarSum()
    for c in cases:
        total = total + c.contribution
    return PhiReport(operator, n, cases, total, expected_values(operator, n))


def _case(report: PhiReport, label: str) -> ScalarSum:
    for c in report.cases:
        if c.label == label:
            return c.contribution
    raise KeyError(label)


def res_11(report: PhiReport) -> ScalarSum:
    """Leftover-term residue pairing orders -1, -1 with one normal derivative."""
    return _case(report, "a II")


def res_21(report: PhiReport) -> ScalarSum:
    """Leftover-term residue pairing orders -2, -1."""
    return _case(report, "b")


def gravitational_boundary_action(n: int = 4) -> ScalarSum:
    return boundary_action(MetricJet.collar(n))


@dataclass(frozen=True)
class ResRelation:
    name: str
    computed: ScalarSum
    factor: ScalarSum
    action: ScalarSum

    @property
    def expected(self) -> ScalarSum:
        return self.factor * self.action

    @property
    def holds(self) -> bool:
        return self.computed == self.expected


def res_relations(report: PhiReport) -> list[ResRelation]:
    """``res_11 = (pi/8) Omega I`` and ``res_21 = -(3 pi/8) Omega I`` (times 4 for signature)."""
    if report.n != 4:
        raise ValueError("residue relations are stated for n = 4")
    scale = 4 if report.operator == "signature" else 1
    action = gravitational_boundary_action(4)
    f11 = _PI * _OMEGA * _q(Fraction(scale, 8))
    f21 = _PI * _OMEGA * _q(Fraction(-3 * scale, 8))
    return [
        ResRelation("res_11", res_11(report), f11, action),
        ResRelation("res_21", res_21(report), f21, action),
    ]


@dataclass(frozen=True)
class KKWTotal:
    operator: str
    n: int
    boundary: ScalarSum
    interior_coefficient: str | None  # quoted, multiplies int_M s dvol
    interior_status: str = "IMPORTED"
    boundary_status: str = "COMPUTED"
    stated_boundary: ScalarSum | None = None

    def statement(self) -> str:
        parts = []
        if self.interior_coefficient is not None:
            parts.append(f"({self.interior_coefficient}) * int_M s dvol  [{self.interior_status}]")
        parts.append(f"({self.boundary}) * Vol(bd M)  [{self.boundary_status}]")
        return "Wres[(pi^+ D^-1)^2] = " + " + ".join(parts)


INTERIOR_COEFFICIENTS = {("dirac", 4): "-Omega_4/3", ("signature", 4): "8*Omega_4/3"}


def kkw_total(report: PhiReport) -> KKWTotal:
    stated = None
    if report.n == 3:
        # value as printed without the (-i) prefactor: i pi/2 * Omega_2 = i pi^2
        stated = _PI * _OMEGA * ScalarSum.of(GaussianRational(0, Fraction(1, 2)))
    return KKWTotal(
        report.operator,
        report.n,
        report.total,
        INTERIOR_COEFFICIENTS.get((report.operator, report.n)),
        stated_boundary=stated,
    )


def omega_value(report_n: int) -> ScalarSum:
    """``Omega`` of the tangential sphere as a pi-monomial: 4 pi (n=4), 2 pi (n=3)."""
    return {4: _PI * _q(4), 3: _PI * _q(2)}[report_n]


def substitute_omega(s: ScalarSum, n: int) -> ScalarSum:
    out = ScalarSum()
    om = omega_value(n)
    for (p, o, h), c in s.terms.items():
        term = ScalarSum({(p, 0, h): c})
        for _ in range(o):
            term = term * om
        out = out + term
    return out
