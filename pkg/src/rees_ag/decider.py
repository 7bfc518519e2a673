"""Gorenstein / almost Gorenstein verdicts for Rees algebras over k[[x_1..x_d]].

The base ring is always the power series ring, hence regular; every rule
below relies on that.  Rules never try to exhibit the Ulrich cokernel of
the definition directly: when no criterion covers an input the verdict is
``Unknown``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import artinian as art
from .artinian import LocalIdeal
from .eagon_northcott import canonical_presentation
from .errors import HypothesisError
from .localideal import ParameterIdealData, reduction_check

GORENSTEIN = "Gorenstein"
AG_PROPER = "AlmostGorensteinProper"
NOT_AG = "NotAlmostGorenstein"
UNKNOWN = "Unknown"

GRADED = "graded"
LOCAL = "local"

REGULAR_BASE = "base ring k[[x_1..x_d]] is regular"
EN_ACYCLIC = "acyclicity of the Eagon-Northcott complex taken from the literature, not recomputed"


@dataclass
class AGVerdict:
    status: str
    mode: str
    rule: str
    facts: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def fact(self, name: str):
        for k, v in self.facts:
            if k == name:
                return v
        raise KeyError(name)

    @property
    def type(self):
        try:
            return self.fact("type")
        except KeyError:
            return None

    @property
    def is_almost_gorenstein(self) -> bool:
        return self.status in (GORENSTEIN, AG_PROPER)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "mode": self.mode,
            "rule": self.rule,
            "facts": [[k, v] for k, v in self.facts],
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _from_type(t: int) -> str:
    return GORENSTEIN if t == 1 else AG_PROPER


def _parameter_type(Qd: ParameterIdealData) -> int:
    if Qd.r == 2:
        return 1
    return canonical_presentation(Qd.r, list(Qd.Q.gens)).type


def _require_r(Qd: ParameterIdealData) -> None:
    if Qd.r < 2:
        raise HypothesisError("Rees algebra rules need at least two parameters")


def decide_parameter_graded(Qd: ParameterIdealData) -> AGVerdict:
    """Rees algebra R[Qt] as a graded ring.

    r = 2: hypersurface S/(a2 X1 - a1 X2) over a regular S, so Gorenstein.
    r >= 3: almost Gorenstein iff the parameters are part of a regular
    system of parameters, i.e. their linear parts are independent.
    """
    _require_r(Qd)
    warnings = list(Qd.warnings)
    facts = [("r", Qd.r), ("linear_rank", Qd.linear_rank), ("sop_status", Qd.sop_status)]
    if Qd.r == 2:
        facts.append(("type", 1))
        return AGVerdict(GORENSTEIN, GRADED, "parameter-graded:hypersurface-r2", facts,
                         warnings + [REGULAR_BASE])
    t = _parameter_type(Qd)
    facts.append(("type", t))
    if Qd.linear_rank == Qd.r:
        return AGVerdict(_from_type(t), GRADED, "parameter-graded:regular-sop-part", facts,
                         warnings + [REGULAR_BASE, EN_ACYCLIC])
    return AGVerdict(NOT_AG, GRADED, "parameter-graded:not-regular-sop-part", facts,
                     warnings + [REGULAR_BASE, EN_ACYCLIC])


def decide_parameter_local(Qd: ParameterIdealData) -> AGVerdict:
    _require_r(Qd)
    warnings = list(Qd.warnings) + [REGULAR_BASE]
    facts = [("r", Qd.r), ("linear_rank", Qd.linear_rank), ("sop_status", Qd.sop_status)]
    if Qd.r == 2:
        facts.append(("type", 1))
        return AGVerdict(GORENSTEIN, LOCAL, "parameter-local:hypersurface-r2", facts, warnings)
    t = _parameter_type(Qd)
    facts.append(("type", t))
    return AGVerdict(_from_type(t), LOCAL, "parameter-local:regular-base", facts, warnings + [EN_ACYCLIC])


def _check_socle_input(Qd: ParameterIdealData, nmax) -> None:
    if not Qd.full:
        raise HypothesisError("socle rules need a full parameter ideal (r = d)")
    if art.local_length(Qd.Q, nmax) <= 1:
        raise HypothesisError("Q = m is excluded: its socle ideal is the unit ideal")


def socle_rees_type(Qd: ParameterIdealData, nmax: int | None = None) -> int:
    """Cohen-Macaulay type (d - 2) + mu(J/I) of R[It], I = Q:m, J = Q:I.

    Valid only when I^2 = QI; otherwise a HypothesisError is raised.
    """
    _check_socle_input(Qd, nmax)
    d = Qd.d
    if d < 3:
        raise HypothesisError("the socle type formula needs d >= 3")
    I = art.socle_ideal(Qd.Q, nmax)
    if not reduction_check(I, Qd.Q, nmax):
        raise HypothesisError("hypothesis I^2 = QI fails")
    J = art.colon(Qd.Q, I, nmax)
    return (d - 2) + art.mu_subquotient(J, I, nmax)


def decide_socle_graded(Qd: ParameterIdealData, nmax: int | None = None) -> AGVerdict:
    """R[It] for I = Q:m as a graded ring.

    Almost Gorenstein iff I = m, or d = 3 and I = (x) + m^2; the latter is
    tested as m^2 in I with exactly one independent linear form in I.
    """
    _check_socle_input(Qd, nmax)
    d = Qd.d
    warnings = list(Qd.warnings) + [REGULAR_BASE]
    if d < 3:
        return AGVerdict(UNKNOWN, GRADED, "socle-graded:low-dimension-uncovered",
                         [("d", d)], warnings)
    ring = Qd.ring
    m = LocalIdeal.maximal(ring)
    I = art.socle_ideal(Qd.Q, nmax)
    I_is_m = art.ideal_equal(I, m, nmax)
    m2_in_I = art.contains_ideal(I, m * m, nmax)
    lin = art.linear_rank(I)
    facts = [("d", d), ("I", str(I)), ("I == m", I_is_m), ("m^2 in I", m2_in_I), ("linear_rank(I)", lin)]
    if I_is_m:
        # I = m is itself generated by a regular system of parameters
        t = canonical_presentation(d, ring.gens()).type
        facts.append(("type", t))
        return AGVerdict(_from_type(t), GRADED, "socle-graded:I-is-maximal", facts, warnings + [EN_ACYCLIC])
    if d == 3 and m2_in_I and lin == 1:
        rule = "socle-graded:linear-plus-square-dim3"
        if reduction_check(I, Qd.Q, nmax):
            t = socle_rees_type(Qd, nmax)
            facts.append(("type", t))
            return AGVerdict(_from_type(t), GRADED, rule, facts, warnings)
        warnings.append("I^2 != QI: type formula not applicable")
        return AGVerdict(AG_PROPER, GRADED, rule, facts, warnings)
    if reduction_check(I, Qd.Q, nmax):
        facts.append(("type", socle_rees_type(Qd, nmax)))
    return AGVerdict(NOT_AG, GRADED, "socle-graded:criterion-fails", facts, warnings)


def decide_socle_local(Qd: ParameterIdealData, nmax: int | None = None) -> AGVerdict:
    _check_socle_input(Qd, nmax)
    warnings = list(Qd.warnings) + [REGULAR_BASE]
    facts = [("d", Qd.d), ("linear_rank(Q)", Qd.linear_rank)]
    if Qd.d >= 3 and Qd.linear_rank == 0:
        return AGVerdict(NOT_AG, LOCAL, "socle-local:Q-inside-m^2", facts, warnings)
    graded = decide_socle_graded(Qd, nmax)
    facts += [("graded_status", graded.status)]
    if graded.is_almost_gorenstein:
        if graded.type is not None:
            facts.append(("type", graded.type))
        return AGVerdict(graded.status, LOCAL, "socle-local:promoted-from-graded", facts,
                         list(dict.fromkeys(warnings + graded.warnings)))
    return AGVerdict(UNKNOWN, LOCAL, "socle-local:uncovered", facts, warnings)


def decide(Qd: ParameterIdealData, kind: str, mode: str, nmax: int | None = None) -> AGVerdict:
    if kind == "parameter":
        return decide_parameter_graded(Qd) if mode == GRADED else decide_parameter_local(Qd)
    if kind == "socle":
        return decide_socle_graded(Qd, nmax) if mode == GRADED else decide_socle_local(Qd, nmax)
    raise ValueError(f"unknown kind {kind!r}")
