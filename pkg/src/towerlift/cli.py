"""Batch front end: one JSON job in, one JSON report out.

Exit status: 0 success, 1 unparsable input, 2 precondition violated,
3 search budget exhausted, 4 certificate rejected by verify.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

import jsonschema

from .applications import euler_trivial_witness, settheoretic_generators, unimodular_certify
from .certificates import dumps, normalization_certificate, verify_certificate
from .errors import BudgetExceeded, InvalidTower, ParseError, PreconditionError, TowerliftError
from .groebner.oracle import UNKNOWN, oracle_member
from .lifting import lift_T2, lift_T3
from .tower import IdealHandle, dim_height_at_level, make_tower
from .transforms import DEFAULT_MAX_EXPONENT, combined_normalize

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3, 4

COMMANDS = (
    "height", "normalize", "lift", "lift-boundary", "settheoretic", "euler",
    "certify-unimodular", "verify", "oracle-check",
)

_strings = {"type": "array", "items": {"type": "string"}}

JOB_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "towerlift job",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "command": {"enum": list(COMMANDS)},
        "d": {"type": "integer", "minimum": 0},
        "m": {"type": "integer", "minimum": 0},
        "n": {"type": "integer", "minimum": 0},
        "f": {"type": "string"},
        "field": {"enum": ["Q", "Fp"]},
        "prime": {"type": "integer", "minimum": 2},
        "level": {"type": "string"},
        "generators": _strings,
        "gens": _strings,
        "boundary": _strings,
        "vector": _strings,
        "idempotent": {"type": "array", "items": _strings},
        "element": {"type": "string"},
        "degree_bound": {"type": "integer", "minimum": 0},
        "certificate": {"type": "object"},
        "seed": {"type": "integer"},
        "budget_ms": {"type": "integer", "minimum": 1},
        "max_exponent": {"type": "integer", "minimum": 0},
        "max_perturbation_degree": {"type": "integer", "minimum": 0},
        "max_n_factorial": {"type": "integer", "minimum": 1},
    },
}

_NEEDS = {
    "height": ["d", "m", "n", "f", "generators"],
    "normalize": ["d", "m", "n", "f", "generators"],
    "lift": ["d", "m", "n", "f", "generators", "gens"],
    "lift-boundary": ["d", "m", "n", "f", "generators", "gens", "boundary"],
    "settheoretic": ["d", "m", "n", "f", "generators", "gens"],
    "euler": ["d", "m", "n", "f", "generators", "gens"],
    "certify-unimodular": ["d", "m", "n", "f", "vector"],
    "oracle-check": ["d", "m", "n", "f", "generators", "element"],
    "verify": ["certificate"],
}


class JobError(Exception):
    def __init__(self, code: int, payload: dict):
        self.code = code
        self.payload = payload
        super().__init__(payload.get("message", ""))


def validate_job(job: Any, command: str) -> dict:
    try:
        jsonschema.validate(job, JOB_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise JobError(EXIT_PARSE, {"kind": "parse", "message": exc.message, "location": where}) from None
    if job.get("command", command) != command:
        raise JobError(EXIT_PARSE, {"kind": "parse", "message": f"job is for {job['command']!r}, not {command!r}",
                                    "location": "command"})
    missing = [k for k in _NEEDS[command] if k not in job]
    if missing:
        raise JobError(EXIT_PARSE, {"kind": "parse", "message": f"missing fields: {', '.join(missing)}",
                                    "location": "<root>"})
    return job


def _tower(job: dict, opts: argparse.Namespace):
    field = opts.field or job.get("field", "Q")
    prime = opts.prime if opts.prime is not None else job.get("prime")
    return make_tower(job["d"], job["m"], job["n"], job["f"], field, prime)


def _option(job, opts, name, default):
    v = getattr(opts, name, None)
    if v is not None:
        return v
    return job.get(name, default)


def _search_kwargs(job, opts) -> dict:
    out = {
        "seed": _option(job, opts, "seed", 0),
        "max_exponent": _option(job, opts, "max_exponent", DEFAULT_MAX_EXPONENT),
        "budget_ms": _option(job, opts, "budget_ms", None),
    }
    mpd = _option(job, opts, "max_perturbation_degree", None)
    if mpd is not None:
        out["max_perturbation_degree"] = mpd
    return out


def run_job(command: str, job: dict, opts: argparse.Namespace) -> dict:
    if command == "verify":
        cert = job["certificate"] if "certificate" in job and "schema" not in job else job
        report = verify_certificate(cert)
        if not report["ok"]:
            raise JobError(EXIT_VERIFY, {"kind": "verify", "message": report["reason"],
                                         "first_failure": report["first_failure"], "report": report})
        return {"verify": report}
    validate_job(job, command)
    T = _tower(job, opts)
    if command == "certify-unimodular":
        res = unimodular_certify(job["vector"], T, job.get("idempotent"))
        out = {"unimodular": res.unimodular}
        if res:
            out["certificate"] = res.certificate(T)
        return out
    I = IdealHandle(T, job.get("level", "A"), job["generators"])
    if command == "height":
        dim, ht = dim_height_at_level(I)
        return {"height": ht, "dim": dim, "level": I.level.name}
    if command == "oracle-check":
        e = T.parse(job["element"])
        nf = I.contains(e)
        bound = job.get("degree_bound", max(2, e.num.total_degree()))
        orc = oracle_member(e.num, I.preimage(), bound)
        orc_out = "unknown" if orc is UNKNOWN else bool(orc)
        return {"normal_form": nf, "oracle": orc_out, "agree": orc is UNKNOWN or bool(orc) == nf}
    kw = _search_kwargs(job, opts)
    if command == "normalize":
        W = combined_normalize(I, max_exponent=kw["max_exponent"], budget_ms=kw["budget_ms"])
        return {"witness": W.to_json(), "certificate": normalization_certificate(W, {"max_exponent": kw["max_exponent"]})}
    if command == "lift":
        cert = lift_T2(I, job["gens"], **kw)
    elif command == "lift-boundary":
        cert = lift_T3(I, job["gens"], job["boundary"], **kw)
    elif command == "euler":
        cert = euler_trivial_witness(I, job["gens"], **kw)
    elif command == "settheoretic":
        max_n = _option(job, opts, "max_n_factorial", 4)
        cert = settheoretic_generators(I, job["gens"], max_n=max_n, **kw)
        c = cert.certificate()
        return {"generators": c["result"]["generators"], "exponent": cert.exponent, "certificate": c}
    else:  # pragma: no cover - argparse restricts the command
        raise JobError(EXIT_PARSE, {"kind": "parse", "message": f"unknown command {command}"})
    c = cert.certificate()
    return {"lifted": c["result"]["lifted"], "certificate": c}


def execute(command: str, text: str, opts: argparse.Namespace) -> tuple[int, dict]:
    """Run one job given as JSON text; returns (exit status, report)."""
    report: dict = {"command": command}
    try:
        try:
            job = json.loads(text)
        except json.JSONDecodeError as exc:
            raise JobError(EXIT_PARSE, {"kind": "parse", "message": exc.msg,
                                        "location": f"line {exc.lineno} column {exc.colno}"}) from None
        if not isinstance(job, dict):
            raise JobError(EXIT_PARSE, {"kind": "parse", "message": "the job must be a JSON object", "location": "<root>"})
        report.update(run_job(command, job, opts))
        report["status"] = "ok"
        return EXIT_OK, report
    except JobError as exc:
        report["status"] = "error"
        report["error"] = exc.payload
        return exc.code, report
    except (ParseError, InvalidTower) as exc:
        report["status"] = "error"
        report["error"] = {"kind": "parse", "message": str(exc),
                           "location": getattr(exc, "position", None)}
        return EXIT_PARSE, report
    except PreconditionError as exc:
        report["status"] = "error"
        report["error"] = {"kind": "precondition", "reason": exc.reason, "message": str(exc)}
        return EXIT_PRECONDITION, report
    except BudgetExceeded as exc:
        report["status"] = "error"
        report["error"] = {"kind": "budget", "stage": exc.stage, "last": exc.last, "message": str(exc)}
        return EXIT_BUDGET, report
    except TowerliftError as exc:
        report["status"] = "error"
        report["error"] = {"kind": "precondition", "reason": type(exc).__name__, "message": str(exc)}
        return EXIT_PRECONDITION, report


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="towerlift", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", "-i", default="-", help="job JSON file (default: stdin)")
    ap.add_argument("--output", "-o", default="-", help="report JSON file (default: stdout)")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--budget-ms", dest="budget_ms", type=int)
    ap.add_argument("--max-exponent", dest="max_exponent", type=int)
    ap.add_argument("--max-perturbation-degree", dest="max_perturbation_degree", type=int)
    ap.add_argument("--field", choices=["Q", "Fp"])
    ap.add_argument("--prime", type=int)
    ap.add_argument("--max-n-factorial", dest="max_n_factorial", type=int)
    ap.add_argument("--schema", action="store_true", help="print the job schema and exit")
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--schema" in argv:
        sys.stdout.write(json.dumps(JOB_SCHEMA, indent=1, sort_keys=True) + "\n")
        return 0
    opts = build_parser().parse_args(argv)
    if opts.input == "-":
        text = sys.stdin.read()
    else:
        with open(opts.input, encoding="utf-8") as fh:
            text = fh.read()
    code, report = execute(opts.command, text, opts)
    out = dumps(report)
    if opts.output == "-":
        sys.stdout.write(out)
    else:
        with open(opts.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
