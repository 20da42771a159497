"""Command line front end.  Every command reads one JSON document and writes one.

Exit codes: 0 success, 1 invalid input, 2 capacity exceeded, 3 property violated.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from .derivatives import coefficient_ideal, coefficient_ideal_normal_variant
from .descent import DescentModel, build_model, order_invariance_report
from .errors import CapacityError, DivisibilityFailure, PropertyViolation, QdesingError, RoundTripFailure
from .initial_exponents import (
    diagram_of_ideal,
    hilbert_samuel_at_point,
    hs_at_nonclosed_point,
    min_embedding_dim,
)
from .kernel import Ideal, Ring, make_field
from .marked import Chart, MarkedIdeal, cosupport
from .resolution import (
    STEP_CAP,
    bennett_checks,
    check_pullback_generic_fibre,
    check_pullback_product_line,
    resolve_maximal_order,
)
from .serialize import dumps
from .transforms import BlowupCenter, controlled_transform, equivalence_check

EXIT_OK, EXIT_INPUT, EXIT_CAPACITY, EXIT_PROPERTY = 0, 1, 2, 3

CHECKS = ("product-line", "generic-fibre", "bennett", "equivalence", "order-invariance")


class CheckFailed(QdesingError):
    def __init__(self, result):
        super().__init__("check failed")
        self.result = result


# ----- input helpers -----------------------------------------------------

def _ideal(doc) -> Ideal:
    ring = Ring(make_field(doc.get("field", "QQ")), doc["vars"])
    return Ideal(ring, [ring.parse(g) for g in doc["gens"]])


def _marked(doc) -> MarkedIdeal:
    return MarkedIdeal.from_strings(doc["vars"], doc["gens"], int(doc["d"]), doc.get("field", "QQ"),
                                    doc.get("E", ()), doc.get("N", ()))


def _center(doc) -> BlowupCenter:
    c = doc["center"]
    if isinstance(c, list):
        return BlowupCenter(tuple(c))
    return BlowupCenter(tuple(c["vars"]), tuple(c.get("values", ())))


def _scalars(ring, values):
    """Point coordinates; strings may use field parameters, e.g. ``"t/2"``."""
    zero = [0] * ring.nvars
    return [ring.parse(a).evaluate(zero) if isinstance(a, str) else ring.field(a) for a in values]


# ----- commands ----------------------------------------------------------

def cmd_diagram(doc, opts):
    I = _ideal(doc)
    kmax = opts.get("kmax", 6)
    D = diagram_of_ideal(I, kmax)
    return {"n": D.n, "vertices": [list(v) for v in D.vertices], "stable": D.stable,
            "certifiedBound": D.certified_bound, "H": D.h_prefix(kmax)}


def cmd_hs(doc, opts):
    I = _ideal(doc)
    kmax = opts.get("kmax", 6)
    if "prime" in doc:
        ring = I.ring
        H = hs_at_nonclosed_point(I, [ring.parse(g) for g in doc["prime"]], kmax)
        where = {"prime": list(doc["prime"])}
    else:
        point = doc.get("point", [0] * I.ring.nvars)
        H = hilbert_samuel_at_point(I, _scalars(I.ring, point), kmax)
        where = {"point": [str(a) for a in point]}
    return dict(where, **H.to_json(kmax), embeddingDimension=min_embedding_dim(H))


def cmd_blowup(doc, opts):
    M = _marked(doc)
    C = _center(doc)
    out = controlled_transform(M, C, allow_divisorial=bool(doc.get("allowDivisorial", False)))
    return {"center": C.to_json(), "charts": len(out),
            "results": [{"chart": R.chart.label, "marked": R.to_json(), "cosupportEmpty": cosupport(R).is_unit()}
                        for R in out]}


def cmd_resolve(doc, opts):
    M = _marked(doc)
    return resolve_maximal_order(M, opts.get("step_cap", STEP_CAP)).to_json()


def cmd_coeff(doc, opts):
    M = _marked(doc)
    if "normal" in doc:
        C = coefficient_ideal_normal_variant(M, doc["normal"])
    else:
        C = coefficient_ideal(M, int(doc.get("k", M.d - 1)))
    return {"d": C.d, "gens": [str(g) for g in C.ideal.groebner()], "marked": C.to_json()}


def cmd_descend(doc, opts):
    model = build_model(_ideal(doc))
    out = model.to_json()
    out["prime"] = [str(p) for p in model.prime]
    out["dimT"] = model.dim_T
    out["roundTrip"] = True  # build_model raises otherwise
    return out


def _report(rep):
    out = rep.to_json()
    if out.get("verdict") not in ("pass", "equivalent-to-depth"):
        raise CheckFailed(out)
    return out


def check_product_line(doc, opts):
    M = _marked(doc)
    return _report(check_pullback_product_line(M, int(doc.get("k", 1)), opts.get("step_cap", STEP_CAP),
                                               opts.get("kmax", 6)))


def check_generic_fibre(doc, opts):
    if "symbols" in doc:
        model = DescentModel.over_affine_space(doc["symbols"], doc["vars"], doc["gens"])
    else:
        model = build_model(_ideal(doc))
    ring = model.z_ring
    M = MarkedIdeal(Chart(ring), model.z_ideal(), int(doc.get("d", 2)))
    return _report(check_pullback_generic_fibre(M, model, opts.get("step_cap", STEP_CAP)))


def check_bennett(doc, opts):
    return _report(bennett_checks(_ideal(doc), _center(doc), opts.get("kmax", 8)))


def check_equivalence(doc, opts):
    depth = opts.get("depth", 2)
    if doc.get("coefficient"):
        M1 = _marked(doc)
        M2 = coefficient_ideal(M1, M1.d - 1)
    else:
        M1, M2 = _marked(doc["first"]), _marked(doc["second"])
    return _report(equivalence_check(M1, M2, depth))


def check_order_invariance(doc, opts):
    model = build_model(_ideal(doc))
    points = doc.get("points") or [doc.get("point", [0] * len(model.vars))]
    reports = [order_invariance_report(model, p).to_json() for p in points]
    ok = all(r["equal"] for r in reports)
    return _report(_Plain({"claim": "order on the generic fibre equals order upstairs",
                           "instances": reports, "verdict": "pass" if ok else "fail"}))


class _Plain:
    def __init__(self, data):
        self.data = data

    def to_json(self):
        return self.data


CHECK_HANDLERS = {
    "product-line": check_product_line,
    "generic-fibre": check_generic_fibre,
    "bennett": check_bennett,
    "equivalence": check_equivalence,
    "order-invariance": check_order_invariance,
}

HANDLERS = {
    "diagram": cmd_diagram,
    "hs": cmd_hs,
    "blowup": cmd_blowup,
    "resolve": cmd_resolve,
    "coeff": cmd_coeff,
    "descend": cmd_descend,
}


def run_job(command: str, doc, opts) -> dict:
    """Run one command on a parsed input document."""
    if command.startswith("check "):
        name = command.split(None, 1)[1]
        if name not in CHECK_HANDLERS:
            raise QdesingError(f"unknown check {name!r}")
        return CHECK_HANDLERS[name](doc, opts)
    if command not in HANDLERS:
        raise QdesingError(f"unknown command {command!r}")
    return HANDLERS[command](doc, opts)


def _matches(expected, actual) -> bool:
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and _matches(v, actual[k]) for k, v in expected.items())
    return expected == actual


def cmd_corpus(doc, opts):
    """Run a job list; each job may carry ``expect`` values compared against its result."""
    jobs = doc["jobs"] if doc is not None else corpus_mod.shipped_jobs()
    rows, failed = [], 0
    for i, job in enumerate(jobs):
        job_opts = dict(opts, **job.get("options", {}))
        try:
            result = run_job(job["command"], job["input"], job_opts)
            status = "ok"
        except CheckFailed as e:
            result, status = e.result, "check-failed"
        except CapacityError as e:
            result, status = {"error": str(e)}, "capacity"
        except QdesingError as e:
            result, status = {"error": str(e)}, "error"
        expect = job.get("expect")
        if status == "ok" and expect is not None and not _matches(expect, result):
            status = "mismatch"
        failed += status != "ok"
        row = {"index": i, "command": job["command"], "status": status}
        if status != "ok":
            row["result"] = result
            if expect is not None:
                row["expect"] = expect
        rows.append(row)
    out = {"jobs": rows, "total": len(rows), "failed": failed}
    if failed:
        raise CheckFailed(out)
    return out


# ----- argument handling -------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdesing", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", "-i", help="JSON input file, '-' for stdin")
        sp.add_argument("--kmax", type=int, default=None, help="truncation level for H")
        sp.add_argument("--depth", type=int, default=None, help="test-sequence depth")
        sp.add_argument("--step-cap", type=int, default=None, help="maximum number of blow-ups")
        sp.add_argument("--json", action="store_true", help="compact canonical JSON")
        return sp

    for name in HANDLERS:
        common(sub.add_parser(name))
    chk = common(sub.add_parser("check"))
    chk.add_argument("claim", choices=CHECKS)
    common(sub.add_parser("corpus"))
    return p


def _read(path):
    if path is None or path == "-":
        return json.load(sys.stdin)
    return json.loads(Path(path).read_text())


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = {k: v for k, v in (("kmax", args.kmax), ("depth", args.depth), ("step_cap", args.step_cap))
            if v is not None}
    pretty = not args.json
    try:
        if args.command == "corpus":
            doc = _read(args.input) if args.input else None
            result = cmd_corpus(doc, opts)
        else:
            doc = _read(args.input)
            command = f"check {args.claim}" if args.command == "check" else args.command
            result = run_job(command, doc, opts)
    except CheckFailed as e:
        sys.stdout.write(dumps(e.result, pretty))
        return EXIT_PROPERTY
    except CapacityError as e:
        sys.stdout.write(dumps({"error": "capacity", "message": str(e)}, pretty))
        return EXIT_CAPACITY
    except (PropertyViolation, DivisibilityFailure, RoundTripFailure) as e:
        sys.stdout.write(dumps({"error": "property", "message": str(e)}, pretty))
        return EXIT_PROPERTY
    except (QdesingError, KeyError, TypeError, ValueError, json.JSONDecodeError) as e:
        sys.stdout.write(dumps({"error": "input", "message": str(e) or type(e).__name__}, pretty))
        return EXIT_INPUT
    sys.stdout.write(dumps(result, pretty))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
