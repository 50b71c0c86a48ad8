"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also repeated in the terminal summary.  ``python3
tests/test_acceptance.py`` runs the same criteria without pytest.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import pytest

from ncgres import checks
from ncgres.clifford import AlgebraElement, make_backend, word
from ncgres.oracle import OracleConfig, case_records as oracle_cases, random_records
from ncgres.report import DOCUMENTED, MATCH, MISMATCH
from ncgres.residue import (
    INTERIOR_COEFFICIENTS,
    assemble_phi,
    expected_dirac4,
    kkw_total,
    res_11,
    res_21,
    res_relations,
    substitute_omega,
)
from ncgres.scalars import Covariables, GaussianRational, Poly, RatFunc, ScalarSum
from ncgres.symbols import dirac_symbols, make_context, pi_plus_symbol

TIME_LIMIT = 10.0
RESULTS: dict[int, str] = {}


@lru_cache(maxsize=None)
def phi(operator: str, n: int):
    return assemble_phi(operator, n)


def _all_match(records) -> tuple[bool, list[str]]:
    bad = [r.check_id for r in records if r.status != MATCH]
    return not bad, bad


def _run_records(checklist, ctx):
    return [checks.run_check(c, ctx.nvars) for c in checklist]


# --- criteria --------------------------------------------------------------


def criterion_1():
    recs = checks.geometry_records("dirac", 4) + checks.geometry_records("signature", 4)
    ok, bad = _all_match(recs)
    return ok, f"{len(recs)} geometry records" + (f"; failing {bad}" if bad else "")


def criterion_2():
    recs = []
    for op, n in [("dirac", 4), ("signature", 4), ("dirac", 3)]:
        ctx = make_context(op, n)
        recs += _run_records(checks.trace_checks(ctx), ctx)
    recs += checks.ugalde_records(4)
    ok, bad = _all_match(recs)
    return ok, f"{len(recs)} trace identities" + (f"; failing {bad}" if bad else "")


SYMBOL_ANCHORS = {"(2.12)", "(2.19)", "(2.20)", "(2.21)", "(2.22)", "(2.28)", "(2.29)", "(2.37)", "(2.38)", "(2.44)", "(2.45)", "(5.3)", "(5.4)"}


def criterion_3():
    recs = []
    for n in (4, 3):
        ctx = make_context("dirac", n)
        recs += _run_records(checks.symbol_checks(ctx), ctx)
    covered = {a for r in recs for a in SYMBOL_ANCHORS if a in r.anchor}
    ok, bad = _all_match(recs)
    missing = SYMBOL_ANCHORS - covered
    return ok and not missing, f"{len(recs)} symbol forms" + (f"; failing {bad}" if bad else "") + (f"; missing {sorted(missing)}" if missing else "")


def criterion_4():
    rep = phi("dirac", 4)
    want = expected_dirac4()
    got = {c.label: c.contribution for c in rep.cases}
    ok = all(got[k] == want[k] for k in ("a I", "a II", "a III", "b", "c"))
    ok &= rep.total.is_zero() and kkw_total(rep).boundary.is_zero()
    ok &= kkw_total(rep).interior_coefficient == INTERIOR_COEFFICIENTS[("dirac", 4)] == "-Omega_4/3"
    return ok, "; ".join(f"{k}={v}" for k, v in got.items()) + f"; Phi={rep.total}"


def criterion_5():
    dirac = phi("dirac", 4)
    sig = phi("signature", 4)
    ok = all(s.contribution == d.contribution * GaussianRational(4) for s, d in zip(sig.cases, dirac.cases))
    ok &= len(sig.cases) == len(dirac.cases) and sig.total.is_zero()
    ok &= kkw_total(sig).interior_coefficient == "8*Omega_4/3"
    return ok, f"{len(sig.cases)} cases at 4x Dirac; Phi={sig.total}"


def criterion_6():
    ok = True
    parts = []
    for op in ("dirac", "signature"):
        rep = phi(op, 4)
        ok &= res_11(rep) == rep.cases[1].contribution and res_21(rep) == rep.cases[3].contribution
        for rel in res_relations(rep):
            ok &= rel.holds
            parts.append(f"{op} {rel.name}=({rel.factor})*I")
    scale = {"dirac": (Fraction(1, 8), Fraction(-3, 8)), "signature": (Fraction(1, 2), Fraction(-3, 2))}
    for op, (f11, f21) in scale.items():
        rels = {r.name: r for r in res_relations(phi(op, 4))}
        ok &= rels["res_11"].factor == ScalarSum.of(f11, pi=1, omega=1)
        ok &= rels["res_21"].factor == ScalarSum.of(f21, pi=1, omega=1)
    return ok, "; ".join(parts)


def criterion_7():
    rep = phi("dirac", 3)
    recs = checks.run_all("dirac", 3, rep)
    ok = len(rep.cases) == 1 and rep.cases[0].label == "single"
    trace_ok = any(r.check_id == "case.trace.single" and r.status == MATCH for r in recs)
    magnitude = substitute_omega(rep.total, 3) == ScalarSum.of(1, pi=2)
    doc = [r for r in recs if r.status == DOCUMENTED]
    relation = any(r.check_id == "n3.prefactor-relation" and r.status == MATCH for r in recs)
    no_mismatch = not any(r.status == MISMATCH for r in recs)
    ok &= trace_ok and magnitude and relation and no_mismatch and [r.check_id for r in doc] == ["n3.phase"]
    return ok, f"Phi={substitute_omega(rep.total, 3)}; documented={[r.check_id for r in doc]}"


def _elementary_change(dim, rng):
    m = AlgebraElement.identity(dim)
    inv = AlgebraElement.identity(dim)
    for _ in range(4):
        i, j = rng.sample(range(dim), 2)
        t = GaussianRational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        e = AlgebraElement.identity(dim) + AlgebraElement(dim, {(i, j): t})
        e_inv = AlgebraElement.identity(dim) + AlgebraElement(dim, {(i, j): -t})
        m, inv = m @ e, e_inv @ inv
    return m, inv


def criterion_8():
    rng = random.Random(8)
    fails = []
    base = phi("dirac", 4)
    values = [c.contribution for c in base.cases]
    conj = make_backend("spinor", 4).conjugated(*_elementary_change(4, rng))
    if [c.contribution for c in assemble_phi("dirac", 4, conj).cases] != values:
        fails.append("conjugation")
    if [c.contribution for c in assemble_phi("dirac", 4, make_backend("spinor", 4).permuted([2, 0, 1])).cases] != values:
        fails.append("permutation")
    if not all(c.contribution.subs_h(0).is_zero() for c in base.cases):
        fails.append("H->0")
    q1 = dirac_symbols(make_context("dirac", 4))[-1].value
    once = pi_plus_symbol(q1)
    if pi_plus_symbol(once) != once:
        fails.append("pi+ idempotence")
    gens = make_backend("spinor", 4).gammas
    for _ in range(30):
        u = [rng.randrange(4) for _ in range(rng.randrange(6))]
        v = [rng.randrange(4) for _ in range(rng.randrange(6))]
        if (word(gens, u) @ word(gens, v)).trace() != (word(gens, v) @ word(gens, u)).trace():
            fails.append("trace cyclicity")
            break
    lay = Covariables(2)
    for _ in range(30):
        num = Poly(lay.nvars)
        for k in range(rng.randrange(5)):
            num = num + Poly.var(lay.xn, lay.nvars, k) * GaussianRational(rng.randint(-4, 4), rng.randint(-4, 4))
        f = RatFunc(num * (lay.xi_n() - GaussianRational(0, 1)) ** rng.randrange(3), rng.randrange(4), rng.randrange(4))
        g = RatFunc(f.num, f.a, f.b)
        if (g.num, g.a, g.b) != (f.num, f.a, f.b):
            fails.append("canonical idempotence")
            break
    return not fails, "representation, H->0, pi+ idempotence, cyclicity, canonical form" + (f"; failing {fails}" if fails else "")


def criterion_9():
    cfg = OracleConfig(seed=9)
    recs = []
    for op, n in [("dirac", 4), ("signature", 4), ("dirac", 3)]:
        recs += oracle_cases(op, n, cfg)
    recs += random_records(100, seed=9, tol=1e-6)
    ok, bad = _all_match(recs)
    errors = [float(r.note.split()[2].rstrip(";")) for r in recs if r.note.startswith("relative error")]
    errors += [float(r.expected.split()[-1]) for r in recs if r.check_id == "oracle.random-ratfunc"]
    detail = f"{len(recs)} oracle records, worst relative error {max(errors):.1e} (tolerance 1e-6)"
    return ok, detail + (f"; failing {bad}" if bad else "")


CRITERIA: dict[int, tuple[str, Callable]] = {
    1: ("geometry suite", criterion_1),
    2: ("trace-identity suite", criterion_2),
    3: ("symbol suite", criterion_3),
    4: ("case suite, Dirac n=4", criterion_4),
    5: ("case suite, signature n=4", criterion_5),
    6: ("residue relations and gravitational action", criterion_6),
    7: ("n=3 suite", criterion_7),
    8: ("property suites", criterion_8),
    9: ("numeric oracle", criterion_9),
}


def evaluate(number: int) -> tuple[bool, str]:
    name, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported on the line
        ok, detail = False, f"error: {exc!r}"
    elapsed = time.perf_counter() - start
    if elapsed >= TIME_LIMIT:
        ok = False
        detail += f"; over the {TIME_LIMIT:.0f} s limit"
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number} ({name}): {detail} ({elapsed:.2f} s)"
    RESULTS[number] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, line = evaluate(number)
    assert ok, line


if __name__ == "__main__":
    outcomes = [evaluate(k)[0] for k in sorted(CRITERIA)]
    sys.exit(0 if all(outcomes) else 1)
