"""Batch command line front end.

Subcommands: betti (Betti numbers of a preset or a complex file), orbits
(periodic-orbit search), verify (orbit count against the Betti sum), and
ring (series arithmetic demos on file inputs).  All reports are written
as sorted-key JSON so a fixed seed and fixed inputs reproduce outputs
byte for byte.

Exit codes: 0 success / verified, 1 malformed input, 2 violated
precondition or invalid complex, 3 orbit count below the Betti sum,
4 hypotheses violated (degenerate contractible orbit).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .betti import InvalidComplexError, novikov_betti
from .complexes import (
    ComplexError,
    PRESET_BUILDERS,
    complex_from_json_dict,
    preset_complex,
    validate_complex,
)
from .lattice import (
    IrresolvableComparison,
    LatticeError,
    WeightedLattice,
    kernel_and_split,
    parse_rational,
)
from .novikov import (
    SeriesError,
    series_from_json_dict,
    series_invert_unit,
    series_mul,
    series_regroup,
    series_to_json_dict,
    series_ungroup,
)
from .torus import (
    DynamicsError,
    find_periodic_orbits,
    system_from_json_dict,
    verify_main_theorem,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_INEQUALITY = 3
EXIT_HYPOTHESES = 4


class ParseFailure(Exception):
    pass


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseFailure(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _dump_json(data, path):
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _parse_theta(text, rank):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != rank:
        raise ParseFailure(
            f"--theta lists {len(parts)} components, the complex needs {rank}"
        )
    try:
        values = [parse_rational(p) for p in parts]
    except LatticeError as exc:
        raise ParseFailure(f"--theta: {exc}") from exc
    if all(v == 0 for v in values):
        return WeightedLattice(rank, ())
    return WeightedLattice(rank, [(values, 1)])


def cmd_betti(args) -> int:
    if args.preset:
        complex_ = preset_complex(args.preset)
    elif args.input:
        complex_ = complex_from_json_dict(_load_json(args.input))
    else:
        raise ParseFailure("betti needs --preset or --input")
    if args.theta_lattice:
        theta = WeightedLattice.from_json_dict(_load_json(args.theta_lattice))
    elif args.theta:
        theta = _parse_theta(args.theta, complex_.lattice.rank)
    else:
        theta = WeightedLattice(complex_.lattice.rank, ())
    report = validate_complex(complex_)
    if not report.valid:
        print(f"invalid complex: {report.message}", file=sys.stderr)
        return EXIT_PRECONDITION
    betti = novikov_betti(complex_, theta)
    payload = betti.to_json_dict()
    payload["config"] = {"seed": args.seed, "preset": args.preset, "theta": args.theta}
    _dump_json(payload, args.output)
    if args.output is not None:
        print("degree   betti")
        for degree, value in sorted(betti.betti.items()):
            print(f"{degree:>6}   {value}")
        print(f"sum: {betti.total}")
    return EXIT_OK


def _system_from_args(args):
    if not args.input:
        raise ParseFailure("a system JSON file is required (--input)")
    data = _load_json(args.input)
    try:
        system = system_from_json_dict(data)
    except DynamicsError as exc:
        raise ParseFailure(str(exc)) from exc
    if args.steps:
        system = type(system)(
            system.n, system.theta, system.hamiltonian, steps=args.steps
        )
    return system


def cmd_orbits(args) -> int:
    system = _system_from_args(args)
    orbits = find_periodic_orbits(
        system,
        args.grid,
        newton_tol=args.newton_tol,
        dedupe_radius=args.dedupe_radius,
        threads=args.threads,
    )
    payload = {
        "orbits": [o.to_json_dict() for o in orbits],
        "count": len(orbits),
        "config": {"grid": args.grid, "seed": args.seed, "steps": system.steps},
    }
    _dump_json(payload, args.output)
    if args.output is not None:
        print(f"{len(orbits)} orbits")
        for o in orbits:
            point = ", ".join(f"{x:.6f}" for x in o.base_point)
            print(
                f"  k={list(o.displacement)} z0=({point}) margin={o.margin:.3e}"
                f" cz={o.cz_index}"
            )
    return EXIT_OK


def cmd_verify(args) -> int:
    system = _system_from_args(args)
    report = verify_main_theorem(
        system,
        grid_density=args.grid,
        newton_tol=args.newton_tol,
        dedupe_radius=args.dedupe_radius,
        threads=args.threads,
    )
    payload = report.to_json_dict()
    payload["config"] = {"grid": args.grid, "seed": args.seed, "steps": system.steps}
    _dump_json(payload, args.output)
    if args.output is not None:
        print(report.format_table())
    if report.verdict == "hypothesis_violated":
        return EXIT_HYPOTHESES
    if report.verdict == "fail":
        return EXIT_INEQUALITY
    return EXIT_OK


def _load_series(path):
    data = _load_json(path)
    try:
        return series_from_json_dict(data)
    except (SeriesError, LatticeError) as exc:
        raise ParseFailure(f"{path}: {exc}") from exc


def cmd_ring(args) -> int:
    series = _load_series(args.input)
    if args.op == "invert":
        cutoff = parse_rational(args.cutoff) if args.cutoff else series.cutoff
        result = series_invert_unit(series, cutoff)
    elif args.op == "multiply":
        if not args.other:
            raise ParseFailure("multiply needs --other SERIES.json")
        other = _load_series(args.other)
        result = series_mul(series, other)
    elif args.op == "regroup-roundtrip":
        splitting = kernel_and_split(series.lattice)
        result = series_ungroup(series_regroup(series, splitting))
    else:
        raise ParseFailure(f"unknown ring operation {args.op!r}")
    payload = series_to_json_dict(result)
    payload["config"] = {"op": args.op, "seed": args.seed}
    _dump_json(payload, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="novhom",
        description=(
            "Betti numbers over completed group rings and periodic-orbit "
            "verification on symplectic tori"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", help="write the JSON report here")
        p.add_argument("--seed", type=int, default=0, help="seed recorded in reports")

    p_betti = sub.add_parser("betti", help="Betti numbers of a preset or complex file")
    p_betti.add_argument("--preset", choices=sorted(PRESET_BUILDERS))
    p_betti.add_argument("--input", help="complex JSON file")
    p_betti.add_argument("--theta", help="comma-separated rational weights")
    p_betti.add_argument("--theta-lattice", help="weight lattice JSON file")
    common(p_betti)

    for name, fn in (("orbits", cmd_orbits), ("verify", cmd_verify)):
        p = sub.add_parser(name, help=f"{name} for a torus system JSON file")
        p.add_argument("--input", required=True, help="system JSON file")
        p.add_argument("--grid", type=int, default=8, help="seeds per coordinate")
        p.add_argument("--newton-tol", type=float, default=1e-10)
        p.add_argument("--dedupe-radius", type=float, default=1e-4)
        p.add_argument("--steps", type=int, default=None, help="integrator steps")
        p.add_argument("--threads", type=int, default=None)
        common(p)
        p.set_defaults(handler=fn)

    p_ring = sub.add_parser("ring", help="series arithmetic on file inputs")
    p_ring.add_argument(
        "--op",
        required=True,
        choices=["invert", "multiply", "regroup-roundtrip"],
    )
    p_ring.add_argument("--input", required=True, help="series JSON file")
    p_ring.add_argument("--other", help="second series for multiply")
    p_ring.add_argument("--cutoff", help="target cutoff for invert")
    common(p_ring)

    p_betti.set_defaults(handler=cmd_betti)
    p_ring.set_defaults(handler=cmd_ring)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (LatticeError, ComplexError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidComplexError as exc:
        print(f"invalid complex: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (SeriesError, DynamicsError, IrresolvableComparison) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
