"""Parameter ideals: validation, linear rank, and the determinantal socle element."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from . import artinian as art
from .artinian import LocalIdeal
from .errors import HypothesisError, InputError, InternalInconsistency, NotPrimaryError, ShapeError
from .polyring import Polynomial, RingDescriptor, det_exact

VERIFIED = "verified"
ASSERTED = "asserted"


@dataclass(frozen=True)
class ParameterIdealData:
    Q: LocalIdeal
    r: int
    full: bool
    sop_status: str
    linear_rank: int
    warnings: tuple = field(default=(), compare=False)

    @property
    def ring(self) -> RingDescriptor:
        return self.Q.ring

    @property
    def d(self) -> int:
        return self.Q.ring.d


def _monomial_height(gens: Sequence[Polynomial]) -> int:
    """Height of a monomial ideal: smallest set of variables meeting every support."""
    supports = [frozenset(i for i, e in enumerate(next(iter(g.terms))) if e) for g in gens]
    d = gens[0].ring.d
    for k in range(d + 1):
        for cover in combinations(range(d), k):
            c = set(cover)
            if all(s & c for s in supports):
                return k
    return d


def classify_parameter_ideal(gens: Sequence[Polynomial], ring: RingDescriptor,
                             nmax: int | None = None) -> ParameterIdealData:
    gens = list(gens)
    r, d = len(gens), ring.d
    if r == 0:
        raise InputError("a parameter ideal needs at least one generator")
    if r > d:
        raise HypothesisError(f"{r} generators cannot be a subsystem of parameters in dimension {d}")
    Q = LocalIdeal(ring, gens)
    Q.check_in_maximal()
    warnings = []
    if r == d:
        try:
            art.stabilized_quotient(Q, nmax)
        except NotPrimaryError:
            raise NotPrimaryError(f"{Q} has {d} generators but is not m-primary") from None
        status = VERIFIED
    elif all(len(g) == 1 for g in gens):
        if _monomial_height(gens) != r:
            raise HypothesisError(f"monomials {Q} do not form a subsystem of parameters")
        status = VERIFIED
    else:
        status = ASSERTED
        warnings.append("subsystem of parameters asserted, not verified (non-monomial, r < d)")
    if not ring.field.is_rational:
        warnings.append(f"finite residue field {ring.field}: theorems assume an infinite residue field")
    return ParameterIdealData(Q, r, r == d, status, art.linear_rank(Q), tuple(warnings))


def parameter_ideal(ring: RingDescriptor, texts: Sequence[str], nmax: int | None = None) -> ParameterIdealData:
    return classify_parameter_ideal([ring.parse(t) for t in texts], ring, nmax)


# -- determinantal construction ---------------------------------------------------

@dataclass(frozen=True)
class DeltaData:
    i: int
    linear_vars: tuple   # indices of x_1..x_i
    other_vars: tuple    # indices of x_{i+1}..x_d
    a_ideal: LocalIdeal
    b_part: tuple
    alpha: tuple         # (d-i) x (d-i) rows of polynomials
    delta: Polynomial
    I: LocalIdeal


def split_shape(gens: Sequence[Polynomial]) -> int:
    """Number of leading generators that are distinct bare variables."""
    seen = set()
    for k, g in enumerate(gens):
        v = g.variable_index()
        if v is None or v in seen:
            return k
        seen.add(v)
    return len(gens)


def _split(a: Polynomial, other: Sequence[int]) -> dict:
    """Write ``a`` (every term of degree >= 2 in ``other``) as sum_k alpha_k x_k.

    Each term goes to the first variable x_k of ``other`` dividing it whose
    cofactor keeps positive degree in ``other``.
    """
    ring = a.ring
    parts = {k: {} for k in other}
    for m, c in a.terms.items():
        for k in other:
            if m[k] == 0:
                continue
            cof = list(m)
            cof[k] -= 1
            if sum(cof[j] for j in other) >= 1:
                parts[k][tuple(cof)] = c
                break
        else:
            raise ShapeError(f"term {ring.monomial(m, c)} of {a} is not in the square of the complementary variables")
    return {k: Polynomial(ring, t, _clean=True) for k, t in parts.items()}


def delta_construction(Qd: ParameterIdealData, i: int | None = None,
                       nmax: int | None = None, check: bool = True) -> DeltaData:
    """Socle ideal of Q as Q + (det alpha) for Q = (x_1..x_i, a_{i+1}..a_d).

    The first ``i`` generators must be distinct variables and every other
    generator must lie in the square of the remaining variables.
    """
    if not Qd.full:
        raise ShapeError("the determinantal construction needs a full parameter ideal")
    ring, d = Qd.ring, Qd.d
    gens = list(Qd.Q.gens)
    lead = split_shape(gens)
    if i is None:
        i = lead
    if i > lead:
        raise ShapeError(f"the first {i} generators are not distinct variables")
    if i > d - 2:
        raise ShapeError(f"split index i = {i} exceeds d - 2 = {d - 2}")
    linear = tuple(gens[k].variable_index() for k in range(i))
    other = tuple(k for k in range(d) if k not in linear)
    rest = gens[i:]
    for a in rest:
        low = a.partial_degree(other)
        if not a or min(low) < 2:
            raise ShapeError(f"generator {a} is not in the square of ({', '.join(ring.variables[k] for k in other)})")
    alpha = []
    for a in rest:
        parts = _split(a, other)
        alpha.append(tuple(parts[k] for k in other))
    for a, row in zip(rest, alpha):
        combo = ring.zero()
        for k, coef in zip(other, row):
            combo = combo + coef * ring.var(k)
        if combo != a:
            raise InternalInconsistency(f"splitting of {a} does not recombine")
    delta = det_exact([list(row) for row in alpha])
    I = LocalIdeal(ring, tuple(gens) + (delta,))
    if check:
        socle = art.socle_ideal(Qd.Q, nmax)
        if not art.ideal_equal(I, socle, nmax):
            raise InternalInconsistency(f"Q + (det alpha) = {I} differs from Q : m = {socle}")
    return DeltaData(
        i=i,
        linear_vars=linear,
        other_vars=other,
        a_ideal=LocalIdeal(ring, [ring.var(k) for k in linear]),
        b_part=tuple(rest),
        alpha=tuple(alpha),
        delta=delta,
        I=I,
    )


def reduction_check(I: LocalIdeal, Q: LocalIdeal, nmax: int | None = None) -> bool:
    """True iff I^2 = QI (Q must lie in I)."""
    qI = art.stabilized_quotient(I, nmax)
    for g in Q.gens:
        if not qI.contains(g):
            raise HypothesisError(f"containment fails: {g} is not in {I}")
    return art.ideal_equal(I * I, Q * I, nmax)
