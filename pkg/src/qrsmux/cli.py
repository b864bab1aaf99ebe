"""Command-line interface.

Subcommands: synth-sum, lower, gf2m, verify, sweep.  The QRS_OUT_DIR
environment variable supplies the default output directory for sweep
artifacts; a --config file can override primitive polynomials
(gf2m.poly.<m>) and the counting convention (convention.id).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import analysis, config as config_mod, gf2m, lowering, revsim, sumsynth
from .circuit import parse, serialize
from .errors import QrsError


def _load_config(path: str | None) -> dict[str, str]:
    return config_mod.load_config(path) if path else {}


def _out_path(path: str, out_dir: str | None) -> str:
    if out_dir and not os.path.isabs(path):
        os.makedirs(out_dir, exist_ok=True)
        return os.path.join(out_dir, path)
    return path


def _write_lowering_report(report, path: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(lowering.REPORT_COLUMNS) + "\n")
        for row in lowering.report_rows(report):
            fh.write(",".join(str(v) for v in row) + "\n")


def cmd_synth_sum(args) -> int:
    circuit = sumsynth.synth_sum(args.d)
    counted = circuit.count()
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(serialize(circuit))
        print(f"wrote {args.emit} ({len(circuit)} gates)")
    if args.oracle:
        predicted = sumsynth.predicted_counts(args.d)
        print(f"synthesized: {counted.as_dict()}")
        print(f"predicted:   {predicted.as_dict()}")
        ok = counted == predicted
        print("oracle check: " + ("PASS" if ok else "FAIL"))
        if not ok:
            return 1
    if not args.emit and not args.oracle:
        print(f"d={args.d}: {counted.as_dict()}")
    return 0


def cmd_lower(args) -> int:
    with open(args.in_path, encoding="utf-8") as fh:
        circuit = parse(fh.read())
    strategy = lowering.Strategy(args.strategy, os_cost_per_control=args.os_cost)
    report = lowering.lower_circuit(circuit, strategy)
    _write_lowering_report(report, args.report)
    print(f"strategy={args.strategy}: totals {report.total.as_dict()}")
    for note in report.notes:
        print(f"note: {note}")
    print(f"wrote {args.report}")
    return 0


def cmd_gf2m(args) -> int:
    cfg = _load_config(args.config)
    overrides = config_mod.poly_overrides(cfg)
    k = args.k if args.k is not None else 1 << (args.m - 1)
    spec = gf2m.build_code(args.m, k, poly=args.poly, overrides=overrides)
    encoder = gf2m.synth_encoder_gf2m(spec)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(serialize(encoder))
        print(f"wrote {args.emit} ({len(encoder)} gates)")
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="") as fh:
            fh.write("gate,exponent,cx-count,formula-count,verified\n")
            for g in encoder.gates:
                if g.kind != "CMulAdd":
                    continue
                circuit = gf2m.synth_cmuladd(spec.field, g.n)
                counted = circuit.count()["C1X"]
                formula = gf2m.cmuladd_cx_formula(spec.field, g.n)
                verified = gf2m.verify_cmuladd(circuit, spec.field, g.n)
                name = "C1" if g.n == 0 else ("Calpha" if g.n == 1 else f"Calpha^{g.n}")
                fh.write(f"{name},{g.n},{counted},{formula},{str(verified).lower()}\n")
        print(f"wrote {args.report}")
    print(f"[{spec.n},{spec.K}] over GF({spec.field.order}): "
          f"classical part costs {gf2m.encoder_classical_cx_cost(spec)} CX")
    return 0


def cmd_verify(args) -> int:
    circuit = sumsynth.synth_sum(args.d)
    if args.mutate is not None:
        circuit = circuit.without_gate(args.mutate)
        print(f"mutated: removed gate {args.mutate}")
    report = revsim.verify_sum(args.d, circuit)
    print(report.summary())
    return 0 if report.verified else 1


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    convention_id = args.convention or config_mod.convention_id(cfg, analysis.DEFAULT_CONVENTION_ID)
    strategies = tuple(s.strip() for s in args.strategies.split(",") if s.strip())
    report = analysis.sweep(args.d_min, args.d_max, strategies, convention_id)
    out_dir = os.environ.get("QRS_OUT_DIR")
    out_path = _out_path(args.out, out_dir)
    analysis.emit_csv(report, out_path)
    print(f"wrote {out_path} ({len(report.rows)} rows, convention {report.convention})")
    if args.svg:
        series = analysis.series_points(report, args.series)
        svg_path = _out_path(args.svg, out_dir)
        analysis.emit_svg(series, ("d", args.series), svg_path, log_y=args.log_y)
        print(f"wrote {svg_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qrsmux", description=__doc__)
    parser.add_argument("--config", help="key=value config file", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth-sum", help="synthesize the qubit-level SUM gate for one dimension")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--emit", help="write the circuit interchange document here")
    p.add_argument("--oracle", action="store_true",
                   help="compare synthesized tallies against the closed-form prediction")
    p.set_defaults(func=cmd_synth_sum)

    p = sub.add_parser("lower", help="lower an interchange document under one strategy")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--strategy", choices=lowering.STRATEGY_NAMES, required=True)
    p.add_argument("--os-cost", type=int, default=2)
    p.add_argument("--report", required=True, help="per-gate CSV report path")
    p.set_defaults(func=cmd_lower)

    p = sub.add_parser("gf2m", help="build the GF(2^m) code and encoder")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="message length (default (n+1)/2)")
    p.add_argument("--poly", type=lambda s: int(s, 0), default=None,
                   help="primitive polynomial bitmask override")
    p.add_argument("--emit", help="write the encoder interchange document here")
    p.add_argument("--report", help="per-gate CSV report path")
    p.set_defaults(func=cmd_gf2m)

    p = sub.add_parser("verify", help="exhaustively verify the synthesized SUM gate")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mutate", type=int, default=None, help="remove this gate index first")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="sweep primes and emit the gate-count report")
    p.add_argument("--d-min", type=int, default=3)
    p.add_argument("--d-max", type=int, default=257)
    p.add_argument("--strategies", default=",".join(analysis.ALL_STRATEGIES))
    p.add_argument("--out", required=True, help="CSV path (QRS_OUT_DIR prefixes relative paths)")
    p.add_argument("--svg", help="optional SVG chart path")
    p.add_argument("--series", default="nsum", choices=sorted(analysis.SVG_SERIES))
    p.add_argument("--log-y", action="store_true")
    p.add_argument("--convention", default=None, help="counting-convention registry id")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QrsError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
