"""Command-line surface: traces, audits, ratio tables, verification, instances.

Commands

  trace         greedy chain of a described objective as CSV
  audit         weak ratio / augmentability audits as a JSON bundle
  ratio-table   per-k measured + closed-form ratios with the large-k limit
  verify-paper  run the built-in verification matrix of known exact results
  gen-instance  emit an instance description (flow JSON or family descriptor)

Objectives come either from ``--family TAG --params JSON`` descriptors or
from ``--instance FILE`` holding a flow-instance JSON.  Exact rationals are
rendered as "p/q"; decimal columns are derived for plotting convenience and
never authoritative.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .core import (
    GroundSetTooLarge,
    approximation_ratio,
    format_rational,
    greedy_adaptive,
    indices_of,
    parse_rational,
)
from .audit import (
    check_alpha_augmentable,
    check_gamma_alpha_augmentable,
    min_alpha_for,
    weak_submodularity_ratio,
)
from .families import (
    critical_ratio_closed_form,
    limit_ratio,
    make_critical_function,
    oracle_from_descriptor,
)
from .independence import rank_quotient
from . import flows, verify

TRACE_HEADER = ("step", "pick", "gain", "value", "ties")
RATIO_HEADER = ("k", "measured", "closed_form", "closed_form_dec", "limit", "converging", "note")


def _parse_params(text: str | None) -> dict:
    if not text:
        return {}
    try:
        params = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemExit(f"--params is not valid JSON (line {exc.lineno}, col {exc.colno}): {exc.msg}")
    if not isinstance(params, dict):
        raise SystemExit("--params must be a JSON object")
    return params


def _load_instance(args) -> "flows.FlowInstance | None":
    if not args.instance:
        return None
    try:
        with open(args.instance) as handle:
            return flows.FlowInstance.from_json(handle.read())
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        raise SystemExit(f"--instance {args.instance}: {exc}")


def _described(args):
    inst = _load_instance(args)
    if inst is not None:
        bundle = oracle_from_descriptor({"family": "flow", "instance": inst.to_json_dict()})
        return bundle
    if not args.family:
        raise SystemExit("need --family TAG or --instance FILE")
    descriptor = {"family": args.family, **_parse_params(args.params)}
    try:
        return oracle_from_descriptor(descriptor)
    except (KeyError, ValueError) as exc:
        raise SystemExit(f"bad descriptor for family {args.family!r}: {exc}")


def _tie(args):
    return args.tie


def _write_text(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def cmd_trace(args) -> int:
    bundle = _described(args)
    f = bundle.oracle
    k = f.n if args.k is None else int(args.k)
    trace = greedy_adaptive(f, k, tie=_tie(args))
    _write_text(args, _csv_text(TRACE_HEADER, trace.rows(f.ground)))
    return 0


def cmd_audit(args) -> int:
    bundle = _described(args)
    f = bundle.oracle
    params = _parse_params(args.params)
    gamma = parse_rational(params.get("gamma", 1))
    alphas = [parse_rational(a) for a in params.get("alphas", [1, 2])]
    scope = args.scope
    tie = _tie(args)
    out: dict = {"oracle": f.name, "scope": scope, "tie": tie}

    def guarded(label, fn):
        try:
            out[label] = fn()
        except GroundSetTooLarge as exc:
            out[label] = {"error": str(exc)}

    def ratio_section():
        r = weak_submodularity_ratio(f, tie=tie)
        return {
            "value": format_rational(r.value),
            "X": list(indices_of(r.x_set)),
            "Y": list(indices_of(r.y_set)),
        }

    guarded("weak_ratio", ratio_section)
    guarded(
        "alpha_augmentable",
        lambda: {
            format_rational(a): check_alpha_augmentable(f, a, scope=scope, tie=tie).to_json_dict()
            for a in alphas
            if a >= 1
        },
    )
    guarded(
        "gamma_alpha",
        lambda: {
            format_rational(a): check_gamma_alpha_augmentable(
                f, gamma, a, scope=scope, tie=tie
            ).to_json_dict()
            for a in alphas
            if a >= gamma
        },
    )
    guarded("min_alpha", lambda: format_rational(min_alpha_for(f, gamma, scope=scope, tie=tie)))
    if bundle.system is not None:
        def rank_section():
            rq = rank_quotient(bundle.system)
            return {
                "quotient": format_rational(rq.quotient),
                "set": list(indices_of(rq.witness_set)),
                "smallest_basis": list(indices_of(rq.small_basis)),
                "largest_basis": list(indices_of(rq.large_basis)),
            }

        guarded("rank_quotient", rank_section)
    _write_text(args, json.dumps(out, sort_keys=True, indent=2) + "\n")
    return 0


def _ratio_rows_critical(params, ks, tie, max_measure):
    gamma = parse_rational(params.get("gamma", 1))
    alpha = parse_rational(params.get("alpha", 1))
    limit = limit_ratio(gamma, alpha)
    rows = []
    previous_gap = None
    for k in ks:
        closed = critical_ratio_closed_form(gamma, alpha, k)
        gap = abs(float(closed) - limit)
        converging = "" if previous_gap is None else ("yes" if gap < previous_gap else "no")
        previous_gap = gap
        measured = ""
        note = ""
        if 2 * k <= max_measure:
            f = make_critical_function(gamma, alpha, k)
            ratio, _ = approximation_ratio(f, tie=tie)
            measured = format_rational(ratio)
        else:
            note = "closed-form-only"
        rows.append(
            (str(k), measured, format_rational(closed), f"{float(closed):.15g}",
             f"{limit:.15g}", converging, note)
        )
    return rows


def _ratio_rows_staircase(params, ks, tie, max_measure):
    alpha = int(params.get("alpha", 1))
    limit = limit_ratio(1, alpha)
    rows = []
    previous_gap = None
    for k in ks:
        closed = flows.lower_bound_ratio_closed_form(alpha, k)
        gap = abs(float(closed) - limit)
        converging = "" if previous_gap is None else ("yes" if gap < previous_gap else "no")
        previous_gap = gap
        measured = ""
        note = ""
        if 2 * alpha * k <= max_measure:
            inst = flows.make_lower_bound_instance(alpha, k)
            ratio, _ = approximation_ratio(flows.objective_oracle(inst), tie=tie)
            measured = format_rational(ratio)
        else:
            note = "closed-form-only"
        rows.append(
            (str(k), measured, format_rational(closed), f"{float(closed):.15g}",
             f"{limit:.15g}", converging, note)
        )
    return rows


def cmd_ratio_table(args) -> int:
    params = _parse_params(args.params)
    ks = [int(part) for part in str(args.k or "").replace(",", " ").split()] if args.k else []
    tie = _tie(args)
    if args.family == "critical":
        max_measure = args.max_measure if args.max_measure is not None else 12
        rows = _ratio_rows_critical(params, ks, tie, max_measure)
    elif args.family in ("gk", "staircase"):
        max_measure = args.max_measure if args.max_measure is not None else 6
        rows = _ratio_rows_staircase(params, ks, tie, max_measure)
    else:
        raise SystemExit(f"ratio-table supports families 'critical' and 'gk', not {args.family!r}")
    _write_text(args, _csv_text(RATIO_HEADER, rows))
    if args.gnuplot and args.out:
        script = (
            f'set datafile separator ","\n'
            f'set key autotitle columnhead\n'
            f'plot "{args.out}" using 1:4 with linespoints, "" using 1:5 with lines\n'
        )
        with open(args.out + ".gp", "w", newline="") as handle:
            handle.write(script)
    return 0


def cmd_verify(args) -> int:
    results = verify.run_checks(args.filter)
    for result in results:
        if result.ok:
            print(f"PASS {result.check_id}")
        else:
            print(f"FAIL {result.check_id}: {result.detail}")
    summary = {
        "checks": {r.check_id: {"ok": r.ok, "detail": r.detail} for r in results},
        "failures": sum(1 for r in results if not r.ok),
    }
    if args.out:
        with open(args.out, "w", newline="") as handle:
            json.dump(summary, handle, sort_keys=True, indent=2)
            handle.write("\n")
    return 0 if summary["failures"] == 0 else 1


def cmd_gen_instance(args) -> int:
    params = _parse_params(args.params)
    family = args.family
    try:
        if family in ("gk", "staircase"):
            epsilon = parse_rational(params["epsilon"]) if "epsilon" in params else None
            inst = flows.make_lower_bound_instance(int(params["alpha"]), int(params["k"]), epsilon)
        elif family == "two_sink":
            inst = flows.make_two_sink_instance(int(params.get("alpha", 2)))
        elif family == "zero_ratio":
            inst = flows.make_zero_ratio_instance(int(params.get("alpha", 2)))
        else:
            inst = None
    except (KeyError, ValueError) as exc:
        raise SystemExit(f"bad parameters for family {family!r}: {exc}")
    if inst is None:
        descriptor = {"family": family, **params}
        try:
            oracle_from_descriptor(descriptor)  # validate before writing
        except (KeyError, ValueError) as exc:
            raise SystemExit(f"bad descriptor for family {family!r}: {exc}")
        _write_text(args, json.dumps(descriptor, sort_keys=True, indent=2) + "\n")
        return 0
    _write_text(args, inst.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="greedyaug", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scope=False, k=False):
        p.add_argument("--family", help="family tag (see gen-instance)")
        p.add_argument("--instance", help="path to a flow-instance JSON file")
        p.add_argument("--params", help="JSON object of family/audit parameters")
        p.add_argument("--tie", default="low", choices=("low", "high"), help="tie policy")
        p.add_argument("--out", help="output path (default: stdout)")
        if scope:
            p.add_argument("--scope", default="strong", choices=("weak", "strong"))
        if k:
            p.add_argument("--k", help="cardinality (trace) or comma list of k values (table)")

    p_trace = sub.add_parser("trace", help="greedy chain as CSV")
    common(p_trace, k=True)
    p_trace.set_defaults(fn=cmd_trace)

    p_audit = sub.add_parser("audit", help="class audits as a JSON bundle")
    common(p_audit, scope=True)
    p_audit.set_defaults(fn=cmd_audit)

    p_table = sub.add_parser("ratio-table", help="measured and closed-form ratios per k")
    common(p_table, k=True)
    p_table.add_argument("--max-measure", type=int, help="largest ground size to measure exactly")
    p_table.add_argument("--gnuplot", action="store_true", help="also emit a plot script")
    p_table.set_defaults(fn=cmd_ratio_table)

    p_verify = sub.add_parser(
        "verify-paper", help="run the built-in verification matrix of known exact results"
    )
    p_verify.add_argument("--filter", default=None, help="only run checks whose id contains this")
    p_verify.add_argument("--out", help="write a JSON summary here")
    p_verify.set_defaults(fn=cmd_verify)

    p_gen = sub.add_parser("gen-instance", help="emit an instance description")
    common(p_gen)
    p_gen.set_defaults(fn=cmd_gen_instance)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
