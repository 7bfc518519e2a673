"""Two-sided checks of closed-form identities against the Artinian engine.

Each check computes one side through lengths of Artinian quotients and
the other from a closed formula in d and the linear rank.  Nothing here
calls the decider.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Iterator

from . import artinian as art
from .artinian import LocalIdeal
from .errors import ReesAGError
from .localideal import ParameterIdealData, delta_construction, split_shape

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckReport:
    name: str
    inputs: dict
    expected: object
    provenance: str
    computed: object
    status: str
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> str:
        return json.dumps(asdict(self), default=str)


def _report(name, Qd, expected, provenance, computed, note=""):
    status = PASS if expected == computed else FAIL
    return CheckReport(name, _inputs(Qd), expected, provenance, computed, status, note)


def _skip(name, Qd, why):
    return CheckReport(name, _inputs(Qd), None, "", None, SKIPPED, why)


def _inputs(Qd: ParameterIdealData) -> dict:
    return {"vars": list(Qd.ring.variables), "Q": [str(g) for g in Qd.Q.gens],
            "d": Qd.d, "i": Qd.linear_rank}


def _maximal(Qd):
    return LocalIdeal.maximal(Qd.ring)


def _in_setting(Qd) -> bool:
    """Q contains i independent linear forms, 1 <= i <= d - 2, and lies in them + m^2."""
    return Qd.full and 1 <= Qd.linear_rank <= Qd.d - 2


def check_lemma_muQ(Qd, nmax=None):
    name = "lemma_muQ"
    if not Qd.full or Qd.linear_rank != 0:
        return _skip(name, Qd, "needs a full parameter ideal inside m^2")
    m = _maximal(Qd)
    return _report(name, Qd, Qd.d * Qd.d, "d * mu(m) with mu(m) = d",
                   art.mu(m * Qd.Q, nmax))


def check_mu_socle(Qd, nmax=None):
    name = "mu_socle"
    if not Qd.full or Qd.linear_rank != 0:
        return _skip(name, Qd, "needs a full parameter ideal inside m^2")
    I = art.socle_ideal(Qd.Q, nmax)
    return _report(name, Qd, Qd.d + 1, "d + 1 for Q inside m^2", art.mu(I, nmax))


def check_prop_muMQI2(Qd, nmax=None):
    name = "prop_muMQI2"
    if not _in_setting(Qd):
        return _skip(name, Qd, "needs 1 <= i <= d - 2")
    I = art.socle_ideal(Qd.Q, nmax)
    mQ = _maximal(Qd) * Qd.Q
    return _report(name, Qd, Qd.d * (Qd.d - Qd.linear_rank), "d * (d - i)",
                   art.mu_subquotient(mQ, I * I, nmax))


def check_mu_m_over_I(Qd, nmax=None):
    name = "mu_m_over_I"
    if not _in_setting(Qd):
        return _skip(name, Qd, "needs 1 <= i <= d - 2")
    I = art.socle_ideal(Qd.Q, nmax)
    return _report(name, Qd, Qd.d - Qd.linear_rank, "d - i",
                   art.mu_subquotient(_maximal(Qd), I, nmax))


def check_duality(Qd, nmax=None):
    name = "duality"
    if not Qd.full or art.local_length(Qd.Q, nmax) <= 1:
        return _skip(name, Qd, "needs a full parameter ideal Q != m")
    I = art.socle_ideal(Qd.Q, nmax)
    back = art.colon(Qd.Q, I, nmax)
    return _report(name, Qd, True, "Q : (Q : m) = m over a Gorenstein ring",
                   art.ideal_equal(back, _maximal(Qd), nmax))


def check_length_step(Qd, nmax=None):
    name = "length_step"
    if not Qd.full or art.local_length(Qd.Q, nmax) <= 1:
        return _skip(name, Qd, "needs a full parameter ideal Q != m")
    lQ = art.local_length(Qd.Q, nmax)
    I = art.socle_ideal(Qd.Q, nmax)
    return _report(name, Qd, lQ - 1, "l(R/Q) - 1 (one-dimensional socle)",
                   art.local_length(I, nmax))


def check_reduction(Qd, nmax=None):
    name = "reduction"
    if not Qd.full or not (Qd.linear_rank == 0 or _in_setting(Qd)):
        return _skip(name, Qd, "needs Q inside m^2 or 1 <= i <= d - 2")
    I = art.socle_ideal(Qd.Q, nmax)
    return _report(name, Qd, True, "I^2 = QI", art.ideal_equal(I * I, Qd.Q * I, nmax))


def check_delta(Qd, nmax=None):
    """Q + (det alpha) against Q : m computed by the colon routine."""
    name = "delta"
    if not Qd.full or Qd.d < 2 or split_shape(Qd.Q.gens) < Qd.linear_rank or Qd.linear_rank > Qd.d - 2:
        return _skip(name, Qd, "needs split form x_1..x_i, a_{i+1}..a_d with i <= d - 2")
    try:
        dd = delta_construction(Qd, Qd.linear_rank, nmax, check=False)
    except ReesAGError as exc:
        return _skip(name, Qd, str(exc))
    socle = art.socle_ideal(Qd.Q, nmax)
    colon_delta = art.colon(Qd.Q, LocalIdeal(Qd.ring, [dd.delta]), nmax)
    same = art.ideal_equal(dd.I, socle, nmax) and art.ideal_equal(colon_delta, _maximal(Qd), nmax)
    return _report(name, Qd, True, "Q + (det alpha) = Q : m and Q : det alpha = m", same,
                   note=f"delta = {dd.delta}")


IDENTITIES = {
    "lemma_muQ": check_lemma_muQ,
    "mu_socle": check_mu_socle,
    "prop_muMQI2": check_prop_muMQI2,
    "mu_m_over_I": check_mu_m_over_I,
    "duality": check_duality,
    "length_step": check_length_step,
    "reduction": check_reduction,
    "delta": check_delta,
}


def verify_identity(name: str, Qd: ParameterIdealData, nmax: int | None = None) -> CheckReport:
    try:
        fn = IDENTITIES[name]
    except KeyError:
        raise ValueError(f"unknown identity {name!r}; choose from {sorted(IDENTITIES)}") from None
    return fn(Qd, nmax)


def run_suite(instances: Iterable[ParameterIdealData], names: Iterable[str] | None = None,
              nmax: int | None = None) -> list:
    names = list(names or IDENTITIES)
    return [verify_identity(n, Qd, nmax) for Qd in instances for n in names]


def summarize(reports: Iterable[CheckReport]) -> dict:
    out = {PASS: 0, FAIL: 0, SKIPPED: 0}
    for r in reports:
        out[r.status] += 1
    return out


def iter_json_lines(reports: Iterable[CheckReport]) -> Iterator[str]:
    for r in reports:
        yield r.to_json()
