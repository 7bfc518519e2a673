"""Command-line front end.

Exit codes: 0 success (Unknown verdicts included), 2 invalid input,
3 hypothesis violation or failed computation.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor

import jsonschema

from . import artinian as art
from .artinian import LocalIdeal
from .decider import decide
from .eagon_northcott import build_en_complex, canonical_presentation, verify_complex
from .errors import InputError, ReesAGError
from .localideal import classify_parameter_ideal, delta_construction
from .oracle import run_suite, summarize
from .polyring import Field, RingDescriptor

COMMANDS = ("socle", "length", "colon", "mu", "type", "en-complex", "decide", "verify", "scan")

INSTANCE_SCHEMA = {
    "type": "object",
    "required": ["vars", "gens"],
    "additionalProperties": False,
    "properties": {
        "field": {
            "oneOf": [
                {"const": "Q"},
                {
                    "type": "object",
                    "required": ["Fp"],
                    "additionalProperties": False,
                    "properties": {"Fp": {"type": "integer", "minimum": 2}},
                },
            ]
        },
        "vars": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z0-9_]*$"},
        },
        "gens": {"type": "array", "items": {"type": "string"}},
        "split_i": {"type": "integer", "minimum": 0},
        "colon_by": {"type": "array", "items": {"type": "string"}},
        "sub": {"type": "array", "items": {"type": "string"}},
    },
}


class UsageError(InputError):
    pass


# -- instance handling --------------------------------------------------------

def validate_instance(doc) -> None:
    try:
        jsonschema.validate(doc, INSTANCE_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise UsageError(f"instance schema violation at {path}: {exc.message}") from None


def load_instance(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        doc = json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON in {path}: {exc}") from None
    validate_instance(doc)
    return doc


def ring_of(doc: dict) -> RingDescriptor:
    fld = doc.get("field", "Q")
    p = 0 if fld == "Q" else fld["Fp"]
    return RingDescriptor(Field(p), tuple(doc["vars"]))


def ideal_of(ring: RingDescriptor, texts) -> LocalIdeal:
    return LocalIdeal.parse(ring, texts)


def parse_range(text: str) -> range:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text or "")
    if not m:
        raise UsageError(f"--n expects LO..HI, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _strs(ideal_or_gens) -> list:
    gens = ideal_or_gens.gens if isinstance(ideal_or_gens, LocalIdeal) else ideal_or_gens
    return [str(g) for g in gens]


def _matrix_strs(M) -> list:
    return [[str(e) for e in row] for row in M]


# -- commands -------------------------------------------------------------------

def cmd_length(doc, args) -> dict:
    ring = ring_of(doc)
    q = art.stabilized_quotient(ideal_of(ring, doc["gens"]), args.nmax)
    basis = [str(ring.monomial(m)) for m in q.basis]
    return {"length": q.length, "N": q.N, "basis": basis}


def cmd_socle(doc, args) -> dict:
    ring = ring_of(doc)
    Q = ideal_of(ring, doc["gens"])
    I = art.socle_ideal(Q, args.nmax)
    out = {
        "Q": _strs(Q),
        "I": _strs(I),
        "length_Q": art.local_length(Q, args.nmax),
        "length_I": art.local_length(I, args.nmax),
        "socle_dim": art.socle_dimension(Q, args.nmax),
    }
    if "split_i" in doc:
        Qd = classify_parameter_ideal(list(Q.gens), ring, args.nmax)
        dd = delta_construction(Qd, doc["split_i"], args.nmax)
        out["delta"] = str(dd.delta)
        out["alpha"] = _matrix_strs(dd.alpha)
    return out


def cmd_colon(doc, args) -> dict:
    ring = ring_of(doc)
    A = ideal_of(ring, doc["gens"])
    B = ideal_of(ring, doc["colon_by"]) if "colon_by" in doc else LocalIdeal.maximal(ring)
    C = art.colon(A, B, args.nmax)
    return {"A": _strs(A), "B": _strs(B), "colon": _strs(C), "unit": art.local_length(C, args.nmax) == 0}


def cmd_mu(doc, args) -> dict:
    ring = ring_of(doc)
    J = ideal_of(ring, doc["gens"])
    if "sub" in doc:
        I = ideal_of(ring, doc["sub"])
        return {"mu_subquotient": art.mu_subquotient(J, I, args.nmax), "J": _strs(J), "I": _strs(I)}
    return {"mu": art.mu(J, args.nmax), "ideal": _strs(J)}


def _parameter_data(doc, args):
    ring = ring_of(doc)
    return classify_parameter_ideal([ring.parse(t) for t in doc["gens"]], ring, args.nmax)


def cmd_type(doc, args) -> dict:
    from .decider import socle_rees_type

    Qd = _parameter_data(doc, args)
    if args.kind == "socle":
        return {"kind": "socle", "type": socle_rees_type(Qd, args.nmax)}
    if Qd.r == 2:
        return {"kind": "parameter", "r": 2, "type": 1}
    pres = canonical_presentation(Qd.r, list(Qd.Q.gens))
    return {"kind": "parameter", "r": Qd.r, "type": pres.type,
            "generator_shifts": list(pres.generator_shifts)}


def cmd_en_complex(doc, args) -> dict:
    if doc is None:
        if args.r is None:
            raise UsageError("en-complex needs --input or --r")
        doc = {"vars": [f"a{j}" for j in range(1, args.r + 1)],
               "gens": [f"a{j}" for j in range(1, args.r + 1)]}
    ring = ring_of(doc)
    a = [ring.parse(t) for t in doc["gens"]]
    r = args.r if args.r is not None else len(a)
    if r != len(a):
        raise UsageError(f"--r {r} does not match {len(a)} generators")
    cx = build_en_complex(r, a)
    rep = verify_complex(cx)
    out = {
        "r": r,
        "ring": list(cx.ring.variables),
        "maps": [
            {"n": n, "shape": list(M.shape), "source_shifts": list(M.source.shifts),
             "target_shifts": list(M.target.shifts), "matrix": _matrix_strs(M.matrix)}
            for n, M in enumerate(cx.maps, start=1)
        ],
        "checks": rep.checks,
        "ok": rep.ok,
    }
    if r >= 3:
        pres = canonical_presentation(r, a)
        out["tM"] = _matrix_strs(cx.tM)
        out["canonical_module"] = {
            "generator_shifts": list(pres.generator_shifts),
            "relation_shifts": list(pres.relation_shifts),
            "type": pres.type,
        }
    return out


def cmd_decide(doc, args) -> dict:
    Qd = _parameter_data(doc, args)
    return decide(Qd, args.kind, args.mode, args.nmax).to_dict()


def cmd_verify(doc, args) -> dict:
    Qd = _parameter_data(doc, args)
    reports = run_suite([Qd], nmax=args.nmax)
    return {"reports": reports, "summary": summarize(reports)}


def _scan_one(job):
    ring, texts, kind, mode, nmax = job
    Qd = classify_parameter_ideal([ring.parse(t) for t in texts], ring, nmax)
    v = decide(Qd, kind, mode, nmax)
    row = {"gens": texts, "status": v.status, "type": v.type, "rule": v.rule}
    if kind == "socle":
        row["I"] = _strs(art.socle_ideal(Qd.Q, nmax))
    return row


def family_members(family: str, values) -> list:
    if not family:
        raise UsageError("scan needs --family")
    gens = [g.strip() for g in family.split(",")]
    if any(not g for g in gens):
        raise UsageError(f"empty generator in family {family!r}")
    return [(n, [re.sub(r"\bn\b", str(n), g) for g in gens]) for n in values]


def _family_vars(family: str) -> list:
    seen = []
    for name in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", family):
        if name != "n" and name not in seen:
            seen.append(name)
    return seen


def cmd_scan(doc, args) -> dict:
    values = parse_range(args.n)
    members = family_members(args.family, values)
    if doc is not None:
        ring = ring_of(doc)
    else:
        ring = RingDescriptor(Field(0), tuple(_family_vars(args.family)))
    if "n" in ring.variables:
        raise UsageError("'n' is reserved for the family parameter")
    jobs = [(ring, texts, args.kind, args.mode, args.nmax) for _, texts in members]
    workers = args.jobs or 1
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            rows = list(pool.map(_scan_one, jobs))
    else:
        rows = [_scan_one(j) for j in jobs]
    for (n, _), row in zip(members, rows):
        row["n"] = n
    return {"family": args.family, "kind": args.kind, "mode": args.mode, "rows": rows}


HANDLERS = {
    "socle": cmd_socle,
    "length": cmd_length,
    "colon": cmd_colon,
    "mu": cmd_mu,
    "type": cmd_type,
    "en-complex": cmd_en_complex,
    "decide": cmd_decide,
    "verify": cmd_verify,
    "scan": cmd_scan,
}


# -- output -------------------------------------------------------------------------

def table(headers, rows) -> str:
    cells = [[str(h) for h in headers]] + [[("" if c is None else str(c)) for c in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_text(command: str, result: dict) -> str:
    if command == "scan":
        rows = [[r["n"], ", ".join(r["gens"]), r["status"], r["type"], ", ".join(r.get("I", []))]
                for r in result["rows"]]
        return table(["n", "Q", "status", "type", "I"], rows)
    if command == "verify":
        rows = [[r.name, r.status, r.expected, r.computed, r.note] for r in result["reports"]]
        s = result["summary"]
        return table(["check", "status", "expected", "computed", "note"], rows) + \
            f"\n\n{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped"
    if command == "decide":
        lines = [f"status: {result['status']}", f"mode:   {result['mode']}", f"rule:   {result['rule']}"]
        lines.append(table(["fact", "value"], result["facts"]))
        for w in result["warnings"]:
            lines.append(f"warning: {w}")
        return "\n".join(lines)
    if command == "en-complex":
        lines = []
        for M in result["maps"]:
            lines.append(f"d{M['n']}: {M['shape'][0]} x {M['shape'][1]}")
            lines.append(table([f"c{j}" for j in range(M["shape"][1])], M["matrix"]))
        if "tM" in result:
            lines.append("transposed last differential:")
            lines.append(table([f"c{j}" for j in range(len(result["tM"][0]))], result["tM"]))
            lines.append(f"canonical module type: {result['canonical_module']['type']}")
        lines.append("complex checks: " + ("pass" if result["ok"] else "FAIL"))
        return "\n".join(lines)
    rows = [[k, ", ".join(map(str, v)) if isinstance(v, list) else v] for k, v in result.items()]
    return table(["key", "value"], rows)


def render_json(command: str, result: dict) -> str:
    if command == "verify":
        return "\n".join(r.to_json() for r in result["reports"])
    return json.dumps(result, indent=2)


# -- entry point ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rees-ag", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="instance JSON file ('-' for stdin)")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--nmax", type=int, default=None, help="truncation cap (env REES_AG_NMAX)")
    p.add_argument("--mode", choices=("graded", "local"), default="graded")
    p.add_argument("--kind", choices=("parameter", "socle"), default="socle")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--family", default=None)
    p.add_argument("--n", default=None, help="parameter range LO..HI for scan")
    p.add_argument("--jobs", type=int, default=os.cpu_count(), help="worker processes for scan")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.nmax is None:
            args.nmax = art.default_nmax()
        if args.nmax < 1:
            raise UsageError("--nmax must be positive")
        doc = load_instance(args.input) if args.input else None
        if doc is None and args.command not in ("en-complex", "scan"):
            raise UsageError(f"{args.command} needs --input")
        result = HANDLERS[args.command](doc, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ReesAGError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:  # e.g. malformed REES_AG_NMAX
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = render_json if args.format == "json" else render_text
    print(out(args.command, result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
