"""Command-line front end.

Every subcommand emits a machine-readable document (JSON by default, CSV
or pretty text behind --output) that echoes the full run configuration,
so identical configurations produce byte-identical output.

Exit codes: 0 success/pass, 1 usage error, 2 precondition failure,
3 certificate or reproduction failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import bodies, certificates, closed_forms, combs, montecarlo, segments
from .poly import MultiPoly
from .rationals import format_rational, parse_rational

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_CERTIFICATE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_workers():
    value = os.environ.get("SYLVESTER_WORKERS", "1")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def build_parser():
    parser = _Parser(
        prog="sylvester",
        description="Exact and Monte Carlo convex-position probabilities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, body=False, mc=False, n=False):
        p.add_argument("--output", choices=("json", "csv", "pretty"),
                       default="json")
        if body:
            p.add_argument(
                "--body", default="square",
                help="named body (triangle|square|disk), file path, "
                     "or inline body JSON",
            )
        if n:
            p.add_argument("--n", type=int, default=4)
        if mc:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--samples", type=int, default=10_000)
            p.add_argument("--workers", type=int, default=_default_workers())

    p = sub.add_parser("comb", help="exact comb probability")
    p.add_argument("--comb", required=True,
                   help="file path or inline JSON {x:[...], l:[...]}")
    common(p)

    p = sub.add_parser("kpoly", help="comb polynomial K, symbolic or numeric")
    p.add_argument("--x", required=True,
                   help="comma-separated interior abscissas, e.g. 1/3,2/3")
    p.add_argument("--lengths",
                   help="comma-separated tooth lengths; omit for symbolic K")
    common(p)

    p = sub.add_parser("cond", help="exact conditional probability of a family")
    p.add_argument("--family", required=True,
                   help="file path or inline NormalizedFamily JSON")
    common(p)

    p = sub.add_parser("estimate", help="Monte Carlo estimate of Q^n")
    p.add_argument("--rb", action="store_true",
                   help="Rao-Blackwellized conditional estimator")
    common(p, body=True, mc=True, n=True)

    p = sub.add_parser("transform", help="Steiner symmetrization or shaking")
    p.add_argument("--op", choices=("sym", "sha"), required=True)
    common(p, body=True)

    p = sub.add_parser("closed-forms", help="table of reference constants")
    common(p)

    p = sub.add_parser("verify", help="re-check the n=4/n=5 certificates")
    p.add_argument("--case", choices=("n4", "n5", "all"), default="all")
    common(p)

    p = sub.add_parser("theorem1", help="Monte Carlo reproduction table")
    p.add_argument("--check", action="store_true",
                   help="exit nonzero unless every row is within 4 sigma")
    common(p, mc=True)

    return parser


# -- helpers ---------------------------------------------------------------


def _load_doc(source):
    """File path or inline JSON."""
    if os.path.exists(source):
        with open(source) as fh:
            return json.load(fh)
    try:
        return json.loads(source)
    except json.JSONDecodeError:
        raise UsageError(f"not a file and not valid JSON: {source!r}")


_NAMED_BODIES = {
    "square": {
        "type": "polygon",
        "vertices": [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]],
    },
    "triangle": {
        "type": "polygon",
        "vertices": [["0", "0"], ["1", "0"], ["0", "1"]],
    },
    "disk": {"type": "disk", "center": ["0", "0"], "r": "1"},
}


def _load_body(source):
    if source in _NAMED_BODIES:
        return bodies.body_from_json(_NAMED_BODIES[source])
    return bodies.body_from_json(_load_doc(source))


def _rational_list(text):
    return [parse_rational(part) for part in text.split(",") if part]


def _value_doc(value):
    return {"value": format_rational(value), "value_float": float(value)}


def _run_config(args):
    config = {"command": args.command, "output": args.output}
    for key in ("seed", "samples", "workers", "n", "body", "case", "op",
                "rb", "check", "x", "lengths", "comb", "family"):
        if hasattr(args, key) and getattr(args, key) is not None:
            config[key] = getattr(args, key)
    return config


def _emit(doc, args, rows=None):
    """Serialize a result document.

    For csv output, ``rows`` (list of flat dicts) is rendered as a CSV
    table preceded by a run-config comment; pretty output is a readable
    key: value rendering.  JSON is canonical: sorted keys, no whitespace
    variation.
    """
    doc = dict(doc)
    doc["run_config"] = _run_config(args)
    if args.output == "json":
        return json.dumps(doc, sort_keys=True)
    if args.output == "csv":
        if rows is None:
            rows = [_flatten(doc)]
        header = list(rows[0])
        lines = ["# run_config: " + json.dumps(doc["run_config"],
                                               sort_keys=True)]
        lines.append(",".join(header))
        for row in rows:
            lines.append(",".join(str(row.get(h, "")) for h in header))
        return "\n".join(lines)
    lines = []
    if "text" in doc:
        lines.append(doc["text"])
    else:
        for key in sorted(doc):
            if key == "run_config":
                continue
            lines.append(f"{key}: {json.dumps(doc[key], sort_keys=True)}")
    lines.append("run_config: " + json.dumps(doc["run_config"],
                                             sort_keys=True))
    return "\n".join(lines)


def _flatten(doc, prefix=""):
    flat = {}
    for key, value in doc.items():
        if key == "run_config":
            continue
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            flat[name] = json.dumps(value)
        else:
            flat[name] = value
    return flat


# -- subcommands -----------------------------------------------------------


def _cmd_comb(args):
    comb = combs.Comb.from_json(_load_doc(args.comb))
    value = combs.comb_probability(comb)
    return _value_doc(value), EXIT_OK


def _cmd_kpoly(args):
    x = _rational_list(args.x)
    if args.lengths is not None:
        lengths = _rational_list(args.lengths)
        if len(lengths) != len(x):
            raise UsageError("need one length per abscissa")
        value = combs.comb_poly(x, lengths)
        return _value_doc(value), EXIT_OK
    if not x:
        raise UsageError("need at least one abscissa")
    names = [f"l{j + 1}" for j in range(len(x))]
    poly = combs.comb_poly(x, [MultiPoly.variable(v) for v in names])
    poly = poly.with_variables(tuple(names))
    return {"variables": names, "terms": poly.to_json()}, EXIT_OK


def _cmd_cond(args):
    family = segments.NormalizedFamily.from_json(_load_doc(args.family))
    value = segments.family_probability(family)
    return _value_doc(value), EXIT_OK


def _cmd_estimate(args):
    body = _load_body(args.body)
    if args.rb:
        result = montecarlo.estimate_Q_rb(
            body, args.n, args.samples, seed=args.seed
        )
    else:
        result = montecarlo.estimate_Q(
            body, args.n, args.samples, seed=args.seed, workers=args.workers
        )
    return result.to_json(), EXIT_OK


def _cmd_transform(args):
    body = _load_body(args.body)
    op = bodies.steiner_symmetrize if args.op == "sym" else bodies.shake
    return {"body": bodies.body_to_json(op(body))}, EXIT_OK


def _cmd_closed_forms(args):
    rows = closed_forms.constants_table()
    return {"constants": rows}, EXIT_OK, rows


def _cmd_verify(args):
    if args.case == "n4":
        report = certificates.verify_n4()
    elif args.case == "n5":
        report = certificates.verify_n5_cone().merge(
            certificates.verify_n5_quadratic()
        )
    else:
        report = certificates.verify_all()
    doc = report.to_json()
    if args.output == "pretty":
        lines = []
        for check in report.identity_checks:
            status = "pass" if check.passed else "FAIL"
            lines.append(f"[{status}] identity: {check.name} "
                         f"({check.grid_points} points)")
        for check in report.positivity_checks:
            status = "pass" if check.passed else "FAIL"
            lines.append(f"[{status}] positivity: {check.name} "
                         f"[{check.method}]")
        lines.append(f"summary: {'pass' if report.summary else 'FAIL'}")
        doc = {"report": doc, "text": "\n".join(lines)}
    code = EXIT_OK if report.summary else EXIT_CERTIFICATE
    return doc, code


_THEOREM1_CASES = (
    ("triangle", 5),
    ("square", 5),
    ("disk", 4),
    ("disk", 5),
)


def _cmd_theorem1(args):
    rows = []
    all_ok = True
    for shape, n in _THEOREM1_CASES:
        body = _load_body(shape)
        if shape == "disk":
            reference = float(closed_forms.disk_constant(n))
            exact = None
        else:
            value = closed_forms.closed_form(shape, n)
            reference = float(value)
            exact = format_rational(value)
        result = montecarlo.estimate_Q(
            body, n, args.samples, seed=args.seed, workers=args.workers
        )
        sigma = result.std_error or float("nan")
        z = (result.estimate - reference) / sigma if sigma else float("nan")
        ok = abs(z) <= 4
        all_ok = all_ok and ok
        rows.append({
            "shape": shape,
            "n": n,
            "reference": reference,
            "exact": exact,
            "estimate": result.estimate,
            "std_error": result.std_error,
            "z": z,
            "pass": ok,
        })
    doc = {"rows": rows, "pass": all_ok}
    code = EXIT_OK
    if args.check and not all_ok:
        code = EXIT_CERTIFICATE
    return doc, code, rows


_HANDLERS = {
    "comb": _cmd_comb,
    "kpoly": _cmd_kpoly,
    "cond": _cmd_cond,
    "estimate": _cmd_estimate,
    "transform": _cmd_transform,
    "closed-forms": _cmd_closed_forms,
    "verify": _cmd_verify,
    "theorem1": _cmd_theorem1,
}

_PRECONDITION_ERRORS = (
    ValueError,
    KeyError,
    ZeroDivisionError,
    OSError,
    json.JSONDecodeError,
)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    handler = _HANDLERS[args.command]
    try:
        outcome = handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _PRECONDITION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if len(outcome) == 3:
        doc, code, rows = outcome
    else:
        doc, code = outcome
        rows = None
    print(_emit(doc, args, rows))
    return code


if __name__ == "__main__":
    sys.exit(main())
