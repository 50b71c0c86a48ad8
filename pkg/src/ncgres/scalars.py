"""Exact arithmetic kernel.

Everything here is exact.  Sparse multivariate polynomials have Gaussian
rational coefficients, and two kinds of fractions sit on top of them.

* :class:`HomFrac` is ``N / |xi|^(2k)`` with ``|xi|^2 = xi_1^2 + ... + xi_n^2``.
  It is an honest function on R^n, so every covariable derivative is exact.
  Pseudodifferential symbols live here until they are projected.
* :class:`RatFunc` is ``N / ((xi_n - i)^a (xi_n + i)^b)`` and is read on the
  cosphere ``|xi'| = 1``, where ``|xi|^2 = (xi_n - i)(xi_n + i)``.  Principal
  parts and line integrals (through residues) are taken here.

Polynomials carry a fixed generator layout for dimension ``n``:
indices ``0 .. n-2`` are the tangential covariables, ``n-1`` is ``xi_n``
and ``n`` is ``H = h'(0)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping, Union

Rational = Union[int, Fraction]


class AdmissibilityError(ValueError):
    """A denominator with a factor other than (xi_n - i) or (xi_n + i)."""


class DegreeError(ValueError):
    """Normal-covariable degree too high for the requested operation."""


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


class GaussianRational:
    """``re + i*im`` with both parts exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re + other, self.im)
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re - other, self.im)
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                return GaussianRational(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c, 0)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        nrm = self.norm()
        if not nrm:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / nrm, -self.im / nrm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(self.re / other, self.im / other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return "i" if self.im == 1 else ("-i" if self.im == -1 else f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"({self.re}{sign}{'' if mag == 1 else mag}i)"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gr(re: Rational = 0, im: Rational = 0) -> GaussianRational:
    return GaussianRational(re, im)


# ---------------------------------------------------------------------------
# Sparse polynomials
# ---------------------------------------------------------------------------

Exps = tuple


def _add_exps(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Sparse polynomial ``{exponent tuple: GaussianRational}``.

    Instances are treated as immutable once built.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, GaussianRational] | None = None):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if c}

    # construction -------------------------------------------------------

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        c = GaussianRational.coerce(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, idx: int, nvars: int, power: int = 1) -> "Poly":
        e = [0] * nvars
        e[idx] = power
        return cls._raw(nvars, {tuple(e): ONE})

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff=1) -> "Poly":
        exps = tuple(exps)
        c = GaussianRational.coerce(coeff)
        return cls._raw(len(exps), {exps: c} if c else {})

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different generator sets")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Poly.const(other, self.nvars)
        return None

    # ring operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational.coerce(other)
            if not c:
                return Poly._raw(self.nvars, {})
            return Poly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = _add_exps(e1, e2)
                v = c1 * c2
                s = out.get(e)
                out[e] = v if s is None else s + v
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Poly) else other
        if o is None:
            return NotImplemented
        return self.nvars == o.nvars and self.terms == o.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # calculus and structure ----------------------------------------------

    def diff(self, idx: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            k = e[idx]
            if k:
                e2 = e[:idx] + (k - 1,) + e[idx + 1:]
                out[e2] = c * k
        return Poly._raw(self.nvars, out)

    def degree(self, idx: int) -> int:
        """Degree in generator ``idx``; ``-1`` for the zero polynomial."""
        return max((e[idx] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coeffs_in(self, idx: int) -> dict[int, "Poly"]:
        """Split as ``sum_k c_k * x_idx^k`` with ``c_k`` free of ``x_idx``."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[idx]
            e2 = e[:idx] + (0,) + e[idx + 1:]
            out.setdefault(k, {})[e2] = c
        return {k: Poly._raw(self.nvars, t) for k, t in out.items()}

    def subs(self, idx: int, value) -> "Poly":
        """Substitute a constant for generator ``idx``."""
        value = GaussianRational.coerce(value)
        powers = [ONE]
        out: dict = {}
        for e, c in self.terms.items():
            k = e[idx]
            while len(powers) <= k:
                powers.append(powers[-1] * value)
            v = c * powers[k]
            if not v:
                continue
            e2 = e[:idx] + (0,) + e[idx + 1:]
            s = out.get(e2)
            out[e2] = v if s is None else s + v
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def shift(self, idx: int, value) -> "Poly":
        """Substitute ``x_idx -> x_idx + value``."""
        value = GaussianRational.coerce(value)
        powers = [ONE]
        out: dict = {}
        for e, c in self.terms.items():
            k = e[idx]
            while len(powers) <= k:
                powers.append(powers[-1] * value)
            for m in range(k + 1):
                v = c * powers[k - m] * comb(k, m)
                if not v:
                    continue
                e2 = e[:idx] + (m,) + e[idx + 1:]
                s = out.get(e2)
                out[e2] = v if s is None else s + v
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def drop_var(self, idx: int) -> "Poly":
        """Same polynomial over a generator set without ``idx`` (must not occur)."""
        out = {}
        for e, c in self.terms.items():
            if e[idx]:
                raise ValueError(f"generator {idx} occurs in polynomial")
            out[e[:idx] + e[idx + 1:]] = c
        return Poly._raw(self.nvars - 1, out)

    def eval(self, point) -> complex:
        total = 0j
        for e, c in self.terms.items():
            v = complex(c)
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def const_value(self) -> GaussianRational:
        if not self.terms:
            return ZERO
        if len(self.terms) == 1 and (0,) * self.nvars in self.terms:
            return self.terms[(0,) * self.nvars]
        raise ValueError("polynomial is not constant")

    def __iter__(self) -> Iterator[tuple[Exps, GaussianRational]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __repr__(self):
        return f"Poly({self.nvars}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self:
            mono = "*".join(
                f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def _divmod_linear(p: Poly, idx: int, root: GaussianRational) -> tuple[Poly, Poly]:
    """Synthetic division of ``p`` by ``(x_idx - root)``."""
    by_deg = p.coeffs_in(idx)
    if not by_deg:
        return p, p
    top = max(by_deg)
    zero = Poly(p.nvars)
    quot: dict[int, Poly] = {}
    carry = zero
    for k in range(top, -1, -1):
        cur = by_deg.get(k, zero) + carry
        if k == 0:
            return _assemble(quot, idx, p.nvars), cur
        quot[k - 1] = cur
        carry = cur * root
    raise AssertionError("unreachable")


def _assemble(by_deg: Mapping[int, Poly], idx: int, nvars: int) -> Poly:
    out: dict = {}
    for k, c in by_deg.items():
        for e, v in c.terms.items():
            e2 = e[:idx] + (e[idx] + k,) + e[idx + 1:]
            s = out.get(e2)
            out[e2] = v if s is None else s + v
    return Poly._raw(nvars, {e: c for e, c in out.items() if c})


# ---------------------------------------------------------------------------
# Generator layout helpers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Covariables:
    """Generator layout for dimension ``n``: ``xi_1..xi_{n-1}, xi_n, H``."""

    n: int

    @property
    def nvars(self) -> int:
        return self.n + 1

    @property
    def xn(self) -> int:
        return self.n - 1

    @property
    def h(self) -> int:
        return self.n

    @property
    def tangential(self) -> range:
        return range(self.n - 1)

    def xi(self, i: int) -> Poly:
        """Covariable ``xi_{i+1}`` (0-based index, normal one is ``n-1``)."""
        return Poly.var(i, self.nvars)

    def xi_n(self) -> Poly:
        return Poly.var(self.xn, self.nvars)

    def H(self) -> Poly:
        return Poly.var(self.h, self.nvars)

    def const(self, c) -> Poly:
        return Poly.const(c, self.nvars)

    def tangential_norm_sq(self) -> Poly:
        out = Poly(self.nvars)
        for i in self.tangential:
            out = out + Poly.var(i, self.nvars, 2)
        return out

    def norm_sq(self) -> Poly:
        return self.tangential_norm_sq() + Poly.var(self.xn, self.nvars, 2)


def layout_of(p: Poly) -> Covariables:
    return Covariables(p.nvars - 1)


# ---------------------------------------------------------------------------
# N / |xi|^(2k)
# ---------------------------------------------------------------------------


def _divide_by_norm_sq(num: Poly) -> Poly | None:
    """Exact quotient ``num / |xi|^2`` or ``None`` if it does not divide."""
    lay = layout_of(num)
    xn = lay.xn
    r = lay.tangential_norm_sq()
    by_deg = num.coeffs_in(xn)
    if not by_deg:
        return num
    top = max(by_deg)
    zero = Poly(num.nvars)
    work = {k: by_deg.get(k, zero) for k in range(top + 1)}
    quot: dict[int, Poly] = {}
    # divide by xi_n^2 + r, monic in xi_n
    for k in range(top, 1, -1):
        c = work[k]
        if c.is_zero():
            continue
        quot[k - 2] = c
        work[k - 2] = work[k - 2] - c * r
        work[k] = zero
    if any(not work[k].is_zero() for k in range(min(2, top + 1))):
        return None
    return _assemble(quot, xn, num.nvars)


class HomFrac:
    """``num / |xi|^(2k)``, a genuine function of all covariables."""

    __slots__ = ("num", "k")

    def __init__(self, num: Poly, k: int = 0, *, reduce: bool = True):
        if k < 0:
            raise ValueError("negative power of |xi|^2")
        if reduce:
            while k > 0 and not num.is_zero():
                q = _divide_by_norm_sq(num)
                if q is None:
                    break
                num, k = q, k - 1
            if num.is_zero():
                k = 0
        self.num = num
        self.k = k

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def _coerce(self, other) -> "HomFrac | None":
        if isinstance(other, HomFrac):
            return other
        if isinstance(other, Poly):
            return HomFrac(other, 0, reduce=False)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return HomFrac(Poly.const(other, self.nvars), 0, reduce=False)
        return None

    def _lift(self, k: int) -> Poly:
        if k == self.k:
            return self.num
        return self.num * layout_of(self.num).norm_sq() ** (k - self.k)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = max(self.k, o.k)
        return HomFrac(self._lift(k) + o._lift(k), k)

    __radd__ = __add__

    def __neg__(self):
        return HomFrac(-self.num, self.k, reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return HomFrac(self.num * other, self.k, reduce=False)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return HomFrac(self.num * o.num, self.k + o.k)

    __rmul__ = __mul__

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.k == o.k and self.num == o.num

    __hash__ = None

    def diff(self, idx: int) -> "HomFrac":
        """Exact partial derivative in any generator."""
        lay = layout_of(self.num)
        dnum = self.num.diff(idx)
        if self.k == 0 or idx == lay.h:
            return HomFrac(dnum, self.k)
        # d(N Q^-k) = (Q dN - 2k x N) Q^-(k+1), Q = |xi|^2
        x = Poly.var(idx, self.nvars)
        return HomFrac(lay.norm_sq() * dnum - x * self.num * (2 * self.k), self.k + 1)

    def on_sphere(self) -> "RatFunc":
        return RatFunc(self.num, self.k, self.k)

    def __repr__(self):
        return f"HomFrac(({self.num}) / |xi|^{2 * self.k})"


# ---------------------------------------------------------------------------
# N / ((xi_n - i)^a (xi_n + i)^b) on the cosphere
# ---------------------------------------------------------------------------


class RatFunc:
    """Rational function of ``xi_n`` with poles only at ``+i`` and ``-i``.

    The numerator may involve the tangential covariables and ``H``; the
    denominator is read on ``|xi'| = 1``.  The stored form is canonical: a
    pole order is positive only if the numerator does not vanish there.
    """

    __slots__ = ("num", "a", "b")

    def __init__(self, num: Poly, a: int = 0, b: int = 0):
        if a < 0 or b < 0:
            raise ValueError("pole orders must be nonnegative")
        xn = num.nvars - 2
        if num.is_zero():
            a = b = 0
        while a > 0:
            q, r = _divmod_linear(num, xn, I)
            if not r.is_zero():
                break
            num, a = q, a - 1
        while b > 0:
            q, r = _divmod_linear(num, xn, -I)
            if not r.is_zero():
                break
            num, b = q, b - 1
        self.num = num
        self.a = a
        self.b = b

    @classmethod
    def from_parts(cls, num: Poly, den: Poly) -> "RatFunc":
        """Normalize ``num / den`` where ``den`` must factor over ``xi_n = +-i``."""
        lay = layout_of(num)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        for e in den.terms:
            if any(e[i] for i in range(len(e)) if i != lay.xn):
                raise AdmissibilityError("denominator depends on more than xi_n")
        d, a, b = den, 0, 0
        while True:
            q, r = _divmod_linear(d, lay.xn, I)
            if r.is_zero() and d.degree(lay.xn) > 0:
                d, a = q, a + 1
                continue
            q, r = _divmod_linear(d, lay.xn, -I)
            if r.is_zero() and d.degree(lay.xn) > 0:
                d, b = q, b + 1
                continue
            break
        if d.degree(lay.xn) > 0:
            raise AdmissibilityError("denominator has a root other than +-i")
        c = d.const_value()
        return cls(num * c.inverse(), a, b)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def xn(self) -> int:
        return self.num.nvars - 2

    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, HomFrac):
            return other.on_sphere()
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return RatFunc(Poly.const(other, self.nvars))
        return None

    def _lift(self, a: int, b: int) -> Poly:
        lay = layout_of(self.num)
        out = self.num
        x = lay.xi_n()
        if a > self.a:
            out = out * (x - I) ** (a - self.a)
        if b > self.b:
            out = out * (x + I) ** (b - self.b)
        return out

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = max(self.a, o.a), max(self.b, o.b)
        return RatFunc(self._lift(a, b) + o._lift(a, b), a, b)

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num, out.a, out.b = -self.num, self.a, self.b
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            if not GaussianRational.coerce(other):
                return RatFunc(Poly(self.nvars))
            out = RatFunc.__new__(RatFunc)
            out.num, out.a, out.b = self.num * other, self.a, self.b
            return out
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.a + o.a, self.b + o.b)

    __rmul__ = __mul__

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.num == o.num

    __hash__ = None

    def degree(self) -> int:
        """Total ``xi_n``-degree: numerator degree minus pole count."""
        if self.num.is_zero():
            return -(10**9)
        return self.num.degree(self.xn) - self.a - self.b

    def diff(self, idx: int) -> "RatFunc":
        """Formal derivation; for ``xi_n`` it is the true derivative."""
        if idx != self.xn:
            return RatFunc(self.num.diff(idx), self.a, self.b)
        x = layout_of(self.num).xi_n()
        new = (
            self.num.diff(idx) * (x - I) * (x + I)
            - self.num * (x + I) * self.a
            - self.num * (x - I) * self.b
        )
        return RatFunc(new, self.a + 1, self.b + 1)

    def restrict_to_sphere(self) -> "RatFunc":
        """Canonical representative modulo ``|xi'|^2 = 1``.

        Eliminates even powers of the last tangential covariable, so two
        functions agree on the cosphere iff their restrictions are equal.
        """
        lay = layout_of(self.num)
        if lay.n < 2:
            return self
        last = lay.n - 2
        others = Poly(self.nvars)
        for i in range(last):
            others = others + Poly.var(i, self.nvars, 2)
        repl = Poly.const(1, self.nvars) - others
        out = Poly(self.nvars)
        for k, c in self.num.coeffs_in(last).items():
            out = out + c * repl ** (k // 2) * Poly.var(last, self.nvars, k % 2)
        return RatFunc(out, self.a, self.b)

    def eval(self, point) -> complex:
        xn = point[self.xn]
        return self.num.eval(point) / ((xn - 1j) ** self.a * (xn + 1j) ** self.b)

    def __repr__(self):
        return f"RatFunc(({self.num}) / ((xn-i)^{self.a} (xn+i)^{self.b}))"


# ---------------------------------------------------------------------------
# principal parts, residues, line integrals
# ---------------------------------------------------------------------------


def _taylor_at_i(f: RatFunc, order: int) -> list[Poly]:
    """First ``order`` Taylor coefficients of ``num / (xi_n + i)^b`` at ``xi_n = i``."""
    xn = f.xn
    shifted = f.num.shift(xn, I).coeffs_in(xn)
    zero = Poly(f.nvars)
    # (2i + t)^(-b) = (2i)^(-b) sum_j binom(-b, j) (t / 2i)^j
    two_i = GaussianRational(0, 2)
    base = two_i ** (-f.b)
    inv = two_i.inverse()
    series = []
    for j in range(order):
        binom = Fraction(1)
        for m in range(j):
            binom *= Fraction(-f.b - m, m + 1)
        series.append(base * (inv ** j) * binom)
    coeffs = []
    for m in range(order):
        acc = zero
        for j in range(m + 1):
            c = shifted.get(m - j)
            if c is not None and series[j]:
                acc = acc + c * series[j]
        coeffs.append(acc)
    return coeffs


def principal_part_at_i(f: RatFunc) -> RatFunc:
    """Sum of the Laurent terms ``c_k / (xi_n - i)^k`` of ``f`` at ``xi_n = i``."""
    if f.is_zero() or f.a == 0:
        return RatFunc(Poly(f.nvars))
    if f.degree() > -1:
        raise DegreeError(f"principal part needs xi_n-degree <= -1, got {f.degree()}")
    coeffs = _taylor_at_i(f, f.a)
    x = layout_of(f.num).xi_n()
    num = Poly(f.nvars)
    power = Poly.const(1, f.nvars)
    for m, c in enumerate(coeffs):
        num = num + c * power
        power = power * (x - I)
    return RatFunc(num, f.a, 0)


def residue_at_i(f: RatFunc) -> Poly:
    """Coefficient of ``(xi_n - i)^-1``; free of ``xi_n``."""
    if f.is_zero() or f.a == 0:
        return Poly(f.nvars)
    return _taylor_at_i(f, f.a)[f.a - 1]


def line_integral_coefficient(f: RatFunc) -> Poly:
    """``c`` with ``int_R f(xi_n) dxi_n = pi * c`` (contour closed upward)."""
    if not f.is_zero() and f.degree() > -2:
        raise DegreeError(f"divergent xi_n integral: degree {f.degree()} > -2")
    return residue_at_i(f) * GaussianRational(0, 2)


def line_integral(f: RatFunc) -> "ScalarSum":
    """``int_R f dxi_n`` as an exact scalar; numerator may involve only ``xi_n, H``."""
    coeff = line_integral_coefficient(f)
    lay = layout_of(f.num)
    out = ScalarSum()
    for e, c in coeff.terms.items():
        if any(e[i] for i in lay.tangential):
            raise ValueError("integrand depends on tangential covariables; use sphere_integrate")
        out = out + ScalarSum({(1, 0, e[lay.h]): c})
    return out


# ---------------------------------------------------------------------------
# formal scalars in pi, Omega, H
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Scalar:
    """``coeff * pi^pi_pow * Omega^omega_pow * H^h_pow``."""

    coeff: GaussianRational
    pi_pow: int = 0
    omega_pow: int = 0
    h_pow: int = 0

    def __post_init__(self):
        if self.h_pow < 0:
            raise ValueError("H power must be nonnegative")

    def key(self) -> tuple[int, int, int]:
        return (self.pi_pow, self.omega_pow, self.h_pow)


class ScalarSum:
    """Formal sum of :class:`Scalar` monomials, kept in normal form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int], object] | None = None):
        self.terms: dict[tuple[int, int, int], GaussianRational] = {}
        for k, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                self.terms[tuple(k)] = c

    @classmethod
    def of(cls, coeff=1, pi: int = 0, omega: int = 0, h: int = 0) -> "ScalarSum":
        return cls({(pi, omega, h): coeff})

    @classmethod
    def from_scalars(cls, scalars: Iterable[Scalar]) -> "ScalarSum":
        out = cls()
        for s in scalars:
            out = out + cls({s.key(): s.coeff})
        return out

    def scalars(self) -> list[Scalar]:
        return [Scalar(c, *k) for k, c in sorted(self.terms.items())]

    def _coerce(self, other):
        if isinstance(other, ScalarSum):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return ScalarSum({(0, 0, 0): other})
        if isinstance(other, Scalar):
            return ScalarSum({other.key(): other.coeff})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, ZERO) + c
        return ScalarSum(out)

    __radd__ = __add__

    def __neg__(self):
        return ScalarSum({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                out[k] = out.get(k, ZERO) + c1 * c2
        return ScalarSum(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = GaussianRational.coerce(other)
        return self * c.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def subs_h(self, value: Rational) -> "ScalarSum":
        out = ScalarSum()
        for (p, o, h), c in self.terms.items():
            out = out + ScalarSum({(p, o, 0): c * Fraction(value) ** h})
        return out

    def evaluate(self, pi: float, omega: float, h: float) -> complex:
        return sum(
            (complex(c) * pi ** p * omega ** o * h ** k for (p, o, k), c in self.terms.items()),
            0j,
        )

    def to_terms(self) -> list[dict]:
        return [
            {
                "coeff_re": str(s.coeff.re),
                "coeff_im": str(s.coeff.im),
                "pi_pow": s.pi_pow,
                "omega_pow": s.omega_pow,
                "h_pow": s.h_pow,
            }
            for s in self.scalars()
        ]

    @classmethod
    def from_terms(cls, terms: Iterable[Mapping]) -> "ScalarSum":
        return cls(
            {
                (t["pi_pow"], t["omega_pow"], t["h_pow"]): GaussianRational(
                    Fraction(t["coeff_re"]), Fraction(t["coeff_im"])
                )
                for t in terms
            }
        )

    def __repr__(self):
        return f"ScalarSum({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = ("pi", "Omega", "H")
        parts = []
        for s in self.scalars():
            mono = "*".join(
                n + (f"^{k}" if k != 1 else "")
                for n, k in zip(names, s.key())
                if k
            )
            if not mono:
                parts.append(str(s.coeff))
            elif s.coeff == ONE:
                parts.append(mono)
            elif s.coeff == -ONE:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{s.coeff}*{mono}")
        return " + ".join(parts)


PI = ScalarSum.of(1, pi=1)
OMEGA = ScalarSum.of(1, omega=1)
H_SYM = ScalarSum.of(1, h=1)


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def sphere_moment(exps: Iterable[int]) -> Fraction:
    """``(1/Omega) * integral of xi^exps`` over the unit sphere in R^m, m = len(exps)."""
    exps = tuple(exps)
    m = len(exps)
    if any(e % 2 for e in exps):
        return Fraction(0)
    d = sum(exps) // 2
    num = 1
    for e in exps:
        num *= double_factorial(e - 1)
    den = 1
    for j in range(d):
        den *= m + 2 * j
    return Fraction(num, den)


def sphere_integrate(p: Poly) -> ScalarSum:
    """Integrate a polynomial in ``xi'`` (and ``H``) over ``|xi'| = 1``.

    The result is a multiple of ``Omega``, the area of that sphere.
    """
    lay = layout_of(p)
    out: dict = {}
    for e, c in p.terms.items():
        if e[lay.xn]:
            raise ValueError("xi_n must be integrated out before the sphere integral")
        w = sphere_moment(e[i] for i in lay.tangential)
        if w:
            key = (0, 1, e[lay.h])
            out[key] = out.get(key, ZERO) + c * w
    return ScalarSum(out)


def tangential_average(f: RatFunc) -> RatFunc:
    """Replace each tangential monomial by its mean over ``|xi'| = 1``."""
    lay = layout_of(f.num)
    out: dict = {}
    for e, c in f.num.terms.items():
        w = sphere_moment(e[i] for i in lay.tangential)
        if w:
            e2 = tuple(0 if i in lay.tangential else k for i, k in enumerate(e))
            out[e2] = out.get(e2, ZERO) + c * w
    return RatFunc(Poly(f.nvars, out), f.a, f.b)


def sphere_area(m: int) -> float:
    """Numeric area of the unit sphere in R^m."""
    from math import gamma, pi

    return 2 * pi ** (m / 2) / gamma(m / 2)


__all__ = [
    "AdmissibilityError",
    "Covariables",
    "DegreeError",
    "GaussianRational",
    "HomFrac",
    "I",
    "OMEGA",
    "ONE",
    "PI",
    "Poly",
    "RatFunc",
    "Scalar",
    "ScalarSum",
    "ZERO",
    "gr",
    "line_integral",
    "line_integral_coefficient",
    "principal_part_at_i",
    "residue_at_i",
    "sphere_area",
    "sphere_integrate",
    "sphere_moment",
    "tangential_average",
]
