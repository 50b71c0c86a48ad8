"""Matrix models of the Clifford actions.

Two backends:

* ``spinor``: gamma matrices on C^2 (n=3) or C^4 (n=4) with
  ``g_i g_j + g_j g_i = -2 delta_ij``.
* ``exterior``: the full exterior algebra of R^4 (dimension 16) with
  ``c(e) = eps(e) - iota(e)`` and ``cbar(e) = eps(e) + iota(e)``.

Matrices are sparse ``{(row, col): entry}`` maps.  Entries may be any of the
exact scalar types (GaussianRational, Poly, HomFrac, RatFunc); products lift
entries through the usual arithmetic coercions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

from .scalars import ONE, ZERO, GaussianRational, I, Poly

SUPPORTED = {("spinor", 3), ("spinor", 4), ("exterior", 4)}


class BackendError(ValueError):
    pass


def _is_zero(x) -> bool:
    return not x


class AlgebraElement:
    """Square sparse matrix with exact entries."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: dict | None = None):
        self.dim = dim
        self.entries = {k: v for k, v in (entries or {}).items() if not _is_zero(v)}

    @classmethod
    def identity(cls, dim: int, one=ONE) -> "AlgebraElement":
        return cls(dim, {(r, r): one for r in range(dim)})

    @classmethod
    def zero(cls, dim: int) -> "AlgebraElement":
        return cls(dim)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "AlgebraElement":
        dim = len(rows)
        return cls(dim, {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)})

    def _check(self, other: "AlgebraElement"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return AlgebraElement(self.dim, out)

    def __neg__(self):
        return AlgebraElement(self.dim, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __matmul__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        rows: dict[int, list] = {}
        for (r, c), v in other.entries.items():
            rows.setdefault(r, []).append((c, v))
        out: dict = {}
        for (r, m), v in self.entries.items():
            for c, w in rows.get(m, ()):
                p = v * w
                cur = out.get((r, c))
                out[(r, c)] = p if cur is None else cur + p
        return AlgebraElement(self.dim, out)

    def scale(self, s) -> "AlgebraElement":
        """Multiply every entry by the scalar ``s`` (on the left)."""
        return AlgebraElement(self.dim, {k: s * v for k, v in self.entries.items()})

    def __mul__(self, s):
        if isinstance(s, AlgebraElement):
            return self @ s
        return AlgebraElement(self.dim, {k: v * s for k, v in self.entries.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def map(self, fn: Callable) -> "AlgebraElement":
        return AlgebraElement(self.dim, {k: fn(v) for k, v in self.entries.items()})

    def trace(self):
        total = None
        for r in range(self.dim):
            v = self.entries.get((r, r))
            if v is not None:
                total = v if total is None else total + v
        return ZERO if total is None else total

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def scalar_part(self):
        """``s`` if the element equals ``s * Id``, else ``None``."""
        s = self.entries.get((0, 0), ZERO)
        if self == AlgebraElement.identity(self.dim).map(lambda one: one * s):
            return s
        return None

    def __repr__(self):
        return f"AlgebraElement(dim={self.dim}, nnz={len(self.entries)})"


def trace(e: AlgebraElement):
    """Plain matrix trace."""
    return e.trace()


def word(gens: Sequence[AlgebraElement], letters: Sequence[int]) -> AlgebraElement:
    """Ordered product ``gens[letters[0]] @ gens[letters[1]] @ ...``."""
    out = AlgebraElement.identity(gens[0].dim)
    for w in letters:
        out = out @ gens[w]
    return out


# ---------------------------------------------------------------------------
# concrete generators
# ---------------------------------------------------------------------------

_SIGMA = [
    [[0, 1], [1, 0]],
    [[0, -I], [I, 0]],
    [[1, 0], [0, -1]],
]


def _mat(rows) -> AlgebraElement:
    return AlgebraElement.from_rows(
        [[GaussianRational.coerce(v) for v in row] for row in rows]
    )


def _spinor_generators(n: int) -> list[AlgebraElement]:
    if n == 3:
        return [_mat(s).scale(I) for s in _SIGMA]
    # Euclidean Dirac matrices squaring to +1, then multiplied by i
    gens = []
    for s in _SIGMA:
        block = [[0, 0] + [-I * v for v in s[0]], [0, 0] + [-I * v for v in s[1]]]
        block += [[I * v for v in s[0]] + [0, 0], [I * v for v in s[1]] + [0, 0]]
        gens.append(_mat(block).scale(I))
    gens.append(_mat([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]).scale(I))
    return gens


def wedge_basis(n: int) -> list[tuple[int, ...]]:
    """Basis forms ordered by degree, then lexicographically."""
    from itertools import combinations

    return [s for m in range(n + 1) for s in combinations(range(n), m)]


def exterior_operators(n: int) -> tuple[list[AlgebraElement], list[AlgebraElement]]:
    """Exterior (eps) and interior (iota) multiplication by the basis covectors."""
    basis = wedge_basis(n)
    index = {s: k for k, s in enumerate(basis)}
    eps, iota = [], []
    for j in range(n):
        e_ent, i_ent = {}, {}
        for s in basis:
            sign = -1 if sum(1 for t in s if t < j) % 2 else 1
            if j in s:
                rest = tuple(t for t in s if t != j)
                i_ent[(index[rest], index[s])] = GaussianRational(sign)
            else:
                grown = tuple(sorted(s + (j,)))
                e_ent[(index[grown], index[s])] = GaussianRational(sign)
        eps.append(AlgebraElement(len(basis), e_ent))
        iota.append(AlgebraElement(len(basis), i_ent))
    return eps, iota


@dataclass(frozen=True)
class Backend:
    kind: str
    n: int
    gammas: tuple[AlgebraElement, ...]
    bars: tuple[AlgebraElement, ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.gammas[0].dim

    def identity(self) -> AlgebraElement:
        return AlgebraElement.identity(self.dim)

    def c(self, i: int) -> AlgebraElement:
        """Clifford action of the i-th frame covector (0-based; ``n-1`` is normal)."""
        return self.gammas[i]

    def cbar(self, i: int) -> AlgebraElement:
        if not self.bars:
            raise BackendError("spinor backend has no cbar action")
        return self.bars[i]

    def conjugated(self, m: AlgebraElement, m_inv: AlgebraElement) -> "Backend":
        """Same backend in the basis changed by ``m`` (``m_inv`` its inverse)."""
        if not (m @ m_inv) == self.identity():
            raise BackendError("m_inv is not the inverse of m")
        conj = lambda g: m @ g @ m_inv
        return Backend(self.kind, self.n, tuple(map(conj, self.gammas)), tuple(map(conj, self.bars)))

    def permuted(self, perm: Sequence[int]) -> "Backend":
        """Relabel tangential generators; ``perm`` permutes ``range(n-1)``."""
        if sorted(perm) != list(range(self.n - 1)):
            raise BackendError("perm must permute the tangential indices")
        order = list(perm) + [self.n - 1]
        bars = tuple(self.bars[k] for k in order) if self.bars else ()
        return Backend(self.kind, self.n, tuple(self.gammas[k] for k in order), bars)


def check_relations(backend: Backend) -> None:
    """Raise unless every Clifford relation holds exactly."""
    n = backend.n
    one = backend.identity()
    for i in range(n):
        for j in range(n):
            a, b = backend.c(i), backend.c(j)
            rel = a @ b + b @ a
            want = one.scale(GaussianRational(-2)) if i == j else AlgebraElement.zero(backend.dim)
            if rel != want:
                raise BackendError(f"c-relation fails for ({i}, {j})")
            if backend.bars:
                a2, b2 = backend.cbar(i), backend.cbar(j)
                rel = a2 @ b2 + b2 @ a2
                want = one.scale(GaussianRational(2)) if i == j else AlgebraElement.zero(backend.dim)
                if rel != want:
                    raise BackendError(f"cbar-relation fails for ({i}, {j})")
                if not (a @ b2 + b2 @ a).is_zero():
                    raise BackendError(f"c and cbar fail to anticommute for ({i}, {j})")


def make_backend(kind: str, n: int) -> Backend:
    if (kind, n) not in SUPPORTED:
        raise BackendError(f"unsupported backend ({kind}, {n})")
    if kind == "spinor":
        backend = Backend(kind, n, tuple(_spinor_generators(n)))
    else:
        eps, iota = exterior_operators(n)
        backend = Backend(
            kind, n, tuple(e - i for e, i in zip(eps, iota)), tuple(e + i for e, i in zip(eps, iota))
        )
    check_relations(backend)
    return backend


def clifford_of_covector(backend: Backend, coeffs: Sequence) -> AlgebraElement:
    """``sum_i coeffs[i] * c(e_i)``."""
    if len(coeffs) != backend.n:
        raise BackendError(f"expected {backend.n} coefficients, got {len(coeffs)}")
    out = AlgebraElement.zero(backend.dim)
    for k, g in zip(coeffs, backend.gammas):
        if k:
            out = out + g.scale(k)
    return out


def c_xi_prime(backend: Backend, nvars: int) -> AlgebraElement:
    """``c(xi')`` with polynomial entries in the covariable layout."""
    coeffs = [Poly.var(i, nvars) for i in range(backend.n - 1)] + [Poly(nvars)]
    return clifford_of_covector(backend, coeffs)


def c_normal(backend: Backend, nvars: int) -> AlgebraElement:
    """``c(dx_n)`` as a polynomial-entry element."""
    return backend.c(backend.n - 1).map(lambda v: Poly.const(v, nvars))


def ugalde_mode_trace(m: int, n: int = 4, i: int = 0) -> int:
    """Trace on degree-``m`` forms of the product of the two chirality-type operators.

    The operator is ``[eps_i iota_i - iota_i eps_i][eps_n iota_n - iota_n eps_n]``
    for a tangential index ``i`` and the normal index.
    """
    if not 0 <= m <= n:
        raise ValueError(f"form degree {m} out of range 0..{n}")
    if not 0 <= i < n - 1:
        raise ValueError("i must be a tangential index")
    eps, iota = exterior_operators(n)
    j = n - 1
    op = (eps[i] @ iota[i] - iota[i] @ eps[i]) @ (eps[j] @ iota[j] - iota[j] @ eps[j])
    basis = wedge_basis(n)
    total = ZERO
    for k, s in enumerate(basis):
        if len(s) == m:
            total = total + op.entries.get((k, k), ZERO)
    return int(total.re)


def ugalde_closed_form(m: int, n: int = 4) -> int:
    """``C(n-2, m-2) + C(n-2, m) - 2 C(n-2, m-1)``; zero binomials outside range."""

    def c(k):
        return comb(n - 2, k) if 0 <= k <= n - 2 else 0

    return c(m - 2) + c(m) - 2 * c(m - 1)
