"""Local-ring computations through truncated (Macaulay matrix) quotients.

For an m-primary ideal ``A`` of k[[x_1..x_d]] we pick the smallest ``N``
with dim R/(A + m^N) == dim R/(A + m^(N+1)).  Nakayama then gives
m^N inside A, so R/A is the span of the monomials of degree < N modulo
the truncated products ``g * u`` (g a generator, u a monomial).  Every
invariant here (length, membership, colon, mu) is exact linear algebra
on that space.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import HypothesisError, InputError, InternalInconsistency, NotPrimaryError, RingMismatchError
from .linalg import Echelon, kernel
from .polyring import Polynomial, RingDescriptor

DEFAULT_NMAX = 40
LINEAR_SCAN = 12


def default_nmax() -> int:
    return int(os.environ.get("REES_AG_NMAX", DEFAULT_NMAX))


@dataclass(frozen=True)
class LocalIdeal:
    """Finitely generated ideal of the local ring at the origin.

    The generator list is kept as given (never minimized).
    """

    ring: RingDescriptor
    gens: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        for g in self.gens:
            if not isinstance(g, Polynomial) or g.ring != self.ring:
                raise RingMismatchError("ideal generators must be polynomials of the ideal's ring")

    @classmethod
    def parse(cls, ring: RingDescriptor, texts: Iterable[str]) -> "LocalIdeal":
        ideal = cls(ring, [ring.parse(t) for t in texts])
        ideal.check_in_maximal()
        return ideal

    @classmethod
    def maximal(cls, ring: RingDescriptor) -> "LocalIdeal":
        return cls(ring, ring.gens())

    def check_in_maximal(self) -> None:
        for g in self.gens:
            if g.constant_term():
                raise InputError(f"generator {g} has a nonzero constant term (not in m)")

    def nonzero_gens(self) -> tuple:
        return tuple(g for g in self.gens if g)

    def __add__(self, other: "LocalIdeal") -> "LocalIdeal":
        return ideal_combine("sum", self, other)

    def __mul__(self, other: "LocalIdeal") -> "LocalIdeal":
        return ideal_combine("product", self, other)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


def ideal_combine(op: str, A: LocalIdeal, B: LocalIdeal) -> LocalIdeal:
    if A.ring != B.ring:
        raise RingMismatchError("ideals live in different rings")
    if op == "sum":
        return LocalIdeal(A.ring, A.gens + B.gens)
    if op == "product":
        return LocalIdeal(A.ring, [f * g for f in A.gens for g in B.gens])
    raise ValueError(f"unknown ideal operation {op!r}")


def power(A: LocalIdeal, n: int) -> LocalIdeal:
    out = LocalIdeal(A.ring, [A.ring.one()])
    for _ in range(n):
        out = out * A
    return out


# -- truncated spans -----------------------------------------------------------

@lru_cache(maxsize=64)
def monomials_below(d: int, N: int) -> tuple:
    """Monomials of degree < N, highest degree first, lex-descending within a degree."""
    out = []
    for deg in range(N - 1, -1, -1):
        block = []
        for combo in combinations_with_replacement(range(d), deg):
            e = [0] * d
            for i in combo:
                e[i] += 1
            block.append(tuple(e))
        block.sort(reverse=True)
        out.extend(block)
    return tuple(out)


@lru_cache(maxsize=64)
def _column_index(d: int, N: int) -> dict:
    return {m: i for i, m in enumerate(monomials_below(d, N))}


def _truncated_span(ring: RingDescriptor, gens: Sequence[Polynomial], N: int) -> Echelon:
    """Echelon basis of the image of (gens) in k[x]/m^N."""
    index = _column_index(ring.d, N)
    monos = monomials_below(ring.d, N)
    E = Echelon(ring.field)
    # low-degree multipliers first keeps early pivots sparse
    for g in sorted((g for g in gens if g), key=lambda g: (g.order(), len(g))):
        o = g.order()
        if o >= N:
            continue
        terms = list(g.terms.items())
        for u in reversed(monos):
            du = sum(u)
            if du + o >= N:
                break
            vec = {}
            for m, c in terms:
                if sum(m) + du < N:
                    vec[index[tuple(a + b for a, b in zip(m, u))]] = c
            E.add(vec)
    return E


def truncated_colength(ring: RingDescriptor, gens: Sequence[Polynomial], N: int) -> int:
    """dim_k R/((gens) + m^N)."""
    return len(monomials_below(ring.d, N)) - _truncated_span(ring, gens, N).rank


@dataclass(frozen=True, eq=False)
class ArtinianQuotient:
    ideal: LocalIdeal
    N: int
    basis: tuple
    _echelon: Echelon = field(repr=False)

    @property
    def ring(self) -> RingDescriptor:
        return self.ideal.ring

    @property
    def length(self) -> int:
        return len(self.basis)

    @property
    def _positions(self) -> dict:
        index = _column_index(self.ring.d, self.N)
        return {index[m]: j for j, m in enumerate(self.basis)}

    def vector(self, f: Polynomial) -> dict:
        """Coordinates of the class of ``f`` on the standard monomial basis."""
        if f.ring != self.ring:
            raise RingMismatchError("polynomial from a different ring")
        index = _column_index(self.ring.d, self.N)
        raw = {index[m]: c for m, c in f.terms.items() if sum(m) < self.N}
        red = self._echelon.reduce(raw)
        pos = self._positions
        return {pos[k]: c for k, c in red.items()}

    def normal_form(self, f: Polynomial) -> Polynomial:
        vec = self.vector(f)
        return Polynomial(self.ring, {self.basis[j]: c for j, c in vec.items()}, _clean=True)

    def contains(self, f: Polynomial) -> bool:
        return not self.vector(f)

    def element(self, coords: dict) -> Polynomial:
        return Polynomial(self.ring, {self.basis[j]: c for j, c in coords.items()})


@lru_cache(maxsize=512)
def _stabilized(I: LocalIdeal, nmax: int) -> ArtinianQuotient:
    ring = I.ring
    gens = I.nonzero_gens()
    spans = {}

    def colength(N):
        if N not in spans:
            spans[N] = _truncated_span(ring, gens, N)
        return len(monomials_below(ring.d, N)) - spans[N].rank

    def stable(N):
        return colength(N) == colength(N + 1)

    # stability at N means m^N in I (Nakayama), so it persists for larger N.
    # Scan small levels one by one (overshooting is costly when d is large),
    # then gallop and bisect for the smallest stable level.
    lo, hi = 0, 1
    while not stable(hi):
        if hi >= nmax:
            raise NotPrimaryError(f"ideal {I} not m-primary or cap too small (N_max = {nmax})")
        lo = hi
        hi = min(hi + 1 if hi < LINEAR_SCAN else 2 * hi, nmax)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if stable(mid):
            hi = mid
        else:
            lo = mid
    N = hi
    cols = monomials_below(ring.d, N)
    basis = [m for i, m in enumerate(cols) if i not in spans[N].rows]
    basis.sort(key=lambda m: (sum(m), tuple(-e for e in m)))
    return ArtinianQuotient(I, N, tuple(basis), spans[N])


def stabilized_quotient(I: LocalIdeal, nmax: int | None = None) -> ArtinianQuotient:
    return _stabilized(I, nmax or default_nmax())


def local_length(I: LocalIdeal, nmax: int | None = None) -> int:
    return stabilized_quotient(I, nmax).length


def membership(f: Polynomial, I: LocalIdeal, nmax: int | None = None) -> bool:
    return stabilized_quotient(I, nmax).contains(f)


def contains_ideal(A: LocalIdeal, B: LocalIdeal, nmax: int | None = None) -> bool:
    """True iff B is contained in A."""
    q = stabilized_quotient(A, nmax)
    return all(q.contains(g) for g in B.gens)


def ideal_equal(A: LocalIdeal, B: LocalIdeal, nmax: int | None = None) -> bool:
    return contains_ideal(A, B, nmax) and contains_ideal(B, A, nmax)


def _colon_kernel(A: LocalIdeal, B: LocalIdeal, nmax: int | None):
    if A.ring != B.ring:
        raise RingMismatchError("ideals live in different rings")
    q = stabilized_quotient(A, nmax)
    n = q.length
    gens = B.nonzero_gens()
    images = []
    for s in q.basis:
        img = {}
        for k, g in enumerate(gens):
            for j, c in q.vector(g.mul_monomial(s, truncate_at=q.N)).items():
                img[k * n + j] = c
        images.append(img)
    return q, kernel(A.ring.field, images)


def colon(A: LocalIdeal, B: LocalIdeal, nmax: int | None = None) -> LocalIdeal:
    """A : B, generated by A together with lifts of the annihilator of B in R/A."""
    q, ker = _colon_kernel(A, B, nmax)
    extra = [q.element(v) for v in ker]
    return LocalIdeal(A.ring, A.gens + tuple(extra))


def socle_dimension(Q: LocalIdeal, nmax: int | None = None) -> int:
    _, ker = _colon_kernel(Q, LocalIdeal.maximal(Q.ring), nmax)
    return len(ker)


def socle_ideal(Q: LocalIdeal, nmax: int | None = None) -> LocalIdeal:
    """Q : m, with the length bookkeeping l(R/Q) = l(R/I) + dim socle checked."""
    lQ = local_length(Q, nmax)
    if lQ <= 1:
        raise HypothesisError("socle ideal of the maximal ideal is the unit ideal")
    q, ker = _colon_kernel(Q, LocalIdeal.maximal(Q.ring), nmax)
    I = LocalIdeal(Q.ring, Q.gens + tuple(q.element(v) for v in ker))
    lI = local_length(I, nmax)
    if lQ != lI + len(ker):
        raise InternalInconsistency(f"length step failed: {lQ} != {lI} + {len(ker)}")
    return I


def mu(I: LocalIdeal, nmax: int | None = None) -> int:
    """Minimal number of generators, as l(R/mI) - l(R/I)."""
    m = LocalIdeal.maximal(I.ring)
    return local_length(m * I, nmax) - local_length(I, nmax)


def mu_subquotient(J: LocalIdeal, I: LocalIdeal, nmax: int | None = None) -> int:
    """mu(J/I) = l(R/(I + mJ)) - l(R/J) for I inside J."""
    qJ = stabilized_quotient(J, nmax)
    for g in I.gens:
        if not qJ.contains(g):
            raise HypothesisError(f"containment fails: generator {g} is not in {J}")
    m = LocalIdeal.maximal(J.ring)
    return local_length(I + m * J, nmax) - qJ.length


def linear_rank(I: LocalIdeal) -> int:
    """dim_k (I + m^2)/m^2."""
    return I.ring.d + 1 - truncated_colength(I.ring, I.nonzero_gens(), 2)


def is_maximal(I: LocalIdeal, nmax: int | None = None) -> bool:
    return local_length(I, nmax) == 1
