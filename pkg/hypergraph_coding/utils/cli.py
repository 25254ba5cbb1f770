#!/usr/bin/env python
"""Command-line front end: one subcommand per operation of the toolkit."""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np
import structlog
from pydantic import ValidationError

from hypergraph_coding.bounds import approx_function_bound, curve_to_csv, lipschitz_bound, rate_curve
from hypergraph_coding.codecs.lzw import save_block
from hypergraph_coding.codecs.modular import modular_pipeline, quantized_entropy
from hypergraph_coding.codecs.polar import (
    block_exponent,
    design_from_instance,
    polar_decode_blocks,
    polar_encode_blocks,
    save_design,
    save_transmitted,
)
from hypergraph_coding.core.errors import EXIT_OK, EXIT_USAGE, HypergraphCodingError, exit_code_for
from hypergraph_coding.core.logging import configure_logging
from hypergraph_coding.core.model import ProblemInstance, sample_pairs
from hypergraph_coding.core.settings import settings
from hypergraph_coding.entropy import solve_entropy
from hypergraph_coding.harness import (
    REPORT_CSV_COLUMNS,
    SIMULATION_CSV_COLUMNS,
    SimConfig,
    emit_csv,
    emit_json,
    emit_text,
    reproduce_example,
    simulate,
)
from hypergraph_coding.harness.reproduce import REPRODUCERS
from hypergraph_coding.hypergraph import build_hypergraph, unique_clustering
from hypergraph_coding.instance_io import resolve_instance

logger = structlog.get_logger(__name__)

CSV_HELP = """CSV columns:
  hypergraph      edge, vertices (space separated)
  entropy         value, iterations, converged
  curve           eps_lo, eps_hi, rate
  bounds          kind, epsilon, bound
  encode-modular  n, bits, rate, quantized_entropy, p_avg
  encode-polar    n, bits, rate, mutual_information, w_agreement
  simulate        {simulate}
  reproduce       {reproduce}
""".format(
    simulate=", ".join(SIMULATION_CSV_COLUMNS), reproduce=", ".join(REPORT_CSV_COLUMNS)
)


class UsageError(Exception):
    """Raised instead of exiting when the command line cannot be parsed."""

    pass


class ArgumentParser(argparse.ArgumentParser):
    """Parser that reports usage errors through an exception so ``main`` controls the exit code."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _pmf(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma separated probabilities, got '{text}'") from e


def _load(args) -> ProblemInstance:
    inst = resolve_instance(args.instance)
    if getattr(args, "epsilon", None) is not None:
        inst = inst.with_epsilon(args.epsilon)
    if getattr(args, "pmf", None) is not None:
        inst = inst.with_px(args.pmf)
    return inst


def cmd_hypergraph(args) -> int:
    G = build_hypergraph(_load(args))
    if args.format == "csv":
        rows = [[i, " ".join(map(str, e))] for i, e in enumerate(G.maximal_edges)]
        emit_csv(["edge", "vertices"], rows, args.out)
    else:
        emit_text(G.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_entropy(args) -> int:
    inst = _load(args)
    solution = solve_entropy(inst, build_hypergraph(inst), seed=args.seed)
    if args.format == "csv":
        row = [solution.value, solution.iterations, solution.converged]
        emit_csv(["value", "iterations", "converged"], [row], args.out)
    else:
        emit_json(solution.to_dict(), args.out)
    return EXIT_OK


def cmd_curve(args) -> int:
    curve = rate_curve(_load(args))
    if args.format == "csv":
        emit_text(curve_to_csv(curve), args.out)
    else:
        emit_json(curve, args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    inst = resolve_instance(args.instance)
    epsilon = inst.epsilon if args.epsilon is None else args.epsilon
    if args.lipschitz is not None:
        kind = "lipschitz"
        bound = lipschitz_bound(inst.f_table[:, 0], inst.px, args.lipschitz, epsilon)
    else:
        kind = "approximation"
        bound = approx_function_bound(inst, args.delta, epsilon)
    if args.format == "csv":
        emit_csv(["kind", "epsilon", "bound"], [[kind, epsilon, bound]], args.out)
    else:
        emit_json({"kind": kind, "epsilon": epsilon, "bound": bound}, args.out)
    return EXIT_OK


def _summary(args, payload: dict) -> None:
    # with --out the codec output goes to the file and the summary to stdout
    if args.format == "csv":
        emit_csv(list(payload), [list(payload.values())])
    else:
        emit_json(payload)


def cmd_encode_modular(args) -> int:
    inst = _load(args)
    rng = np.random.default_rng(args.seed)
    xs, ys = sample_pairs(inst, args.blocklength, rng)
    clustering = unique_clustering(inst, build_hypergraph(inst))
    result = modular_pipeline(inst, xs, ys, clustering=clustering)
    if args.out is not None:
        save_block(args.out, result.block)
    _summary(
        args,
        {
            "n": result.block.n,
            "bits": len(result.block.bits),
            "rate": result.block.rate,
            "quantized_entropy": quantized_entropy(inst, clustering),
            "p_avg": result.report.p_avg,
        },
    )
    return EXIT_OK


def cmd_encode_polar(args) -> int:
    inst = _load(args)
    design = design_from_instance(inst, block_exponent(args.blocklength), target_rate=args.rate, seed=args.seed)
    rng = np.random.default_rng(args.seed)
    xs, ys = sample_pairs(inst, args.blocklength * args.blocks, rng)
    xs = xs.reshape(args.blocks, args.blocklength)
    u_info, w = polar_encode_blocks(design, xs, int(rng.integers(2**63)))
    w_hat, _ = polar_decode_blocks(design, u_info)
    if args.out is not None:
        save_design(f"{args.out}.design.json", design)
        save_transmitted(args.out, u_info)
    _summary(
        args,
        {
            "n": int(xs.size),
            "bits": int(u_info.size),
            "rate": design.rate,
            "mutual_information": design.mutual_information,
            "w_agreement": bool(np.array_equal(w, w_hat)),
        },
    )
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = SimConfig(
        instance=args.instance,
        command=args.codec,
        blocklength=args.blocklength,
        blocks=args.blocks,
        seed=args.seed,
        epsilon=args.epsilon,
        target_rate=args.rate,
        pmf=args.pmf,
        out=args.out,
        format=args.format,
    )
    result = simulate(cfg)
    if cfg.format == "csv":
        emit_csv(SIMULATION_CSV_COLUMNS, [result.csv_row()], cfg.out)
    else:
        emit_json(result, cfg.out)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    fixtures = sorted(REPRODUCERS) if args.fixture == "all" else [args.fixture]
    reports = [reproduce_example(name, seed=args.seed) for name in fixtures]
    if args.format == "csv":
        emit_csv(REPORT_CSV_COLUMNS, [row for r in reports for row in r.csv_rows()], args.out)
    else:
        emit_json([r.model_dump(mode="json") for r in reports], args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_USAGE


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="hypergraph-coding",
        description="Coding for computing under a maximal distortion constraint",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--log-level", help="Log level (default from settings)")
    parser.add_argument("--log-format", choices=["console", "json"], help="Log renderer")

    common = ArgumentParser(add_help=False)
    common.add_argument("--instance", required=True, help="Instance file or fixture name")
    common.add_argument("--epsilon", type=float, help="Override the instance fidelity")
    common.add_argument("--seed", type=int, default=settings.default_seed, help="Generator seed")
    common.add_argument("--out", type=Path, help="Output path (stdout when omitted)")
    common.add_argument("--format", choices=["json", "csv"], default="json", help="Output format")

    coding = ArgumentParser(add_help=False)
    coding.add_argument("--blocklength", type=int, default=1024, help="Source symbols per block")
    coding.add_argument("--blocks", type=int, default=1, help="Number of blocks")
    coding.add_argument("--rate", type=float, help="Polar target rate")
    coding.add_argument("--pmf", type=_pmf, help="Override p(x), comma separated")

    subparsers = parser.add_subparsers(dest="command", parser_class=ArgumentParser)

    p = subparsers.add_parser("hypergraph", parents=[common], help="Maximal hyperedges of G_eps")
    p.set_defaults(handler=cmd_hypergraph)

    p = subparsers.add_parser("entropy", parents=[common], help="Functional eps-entropy and optimal channel")
    p.set_defaults(handler=cmd_entropy)

    p = subparsers.add_parser("curve", parents=[common], help="Rate curve R(eps)")
    p.set_defaults(handler=cmd_curve)

    p = subparsers.add_parser("bounds", parents=[common], help="Lipschitz or approximate-function bound")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--lipschitz", type=float, help="Lipschitz constant of the identity-coded source")
    group.add_argument("--delta", type=float, default=0.0, help="Uniform approximation error")
    p.set_defaults(handler=cmd_bounds)

    p = subparsers.add_parser("encode-modular", parents=[common, coding], help="Quantize and LZW a sampled block")
    p.set_defaults(handler=cmd_encode_modular)

    p = subparsers.add_parser("encode-polar", parents=[common, coding], help="Polar-encode sampled blocks")
    p.set_defaults(handler=cmd_encode_polar)

    p = subparsers.add_parser("simulate", parents=[common, coding], help="End-to-end codec simulation")
    p.add_argument("--codec", choices=["modular", "polar"], default="modular", help="Codec to simulate")
    p.set_defaults(handler=cmd_simulate)

    p = subparsers.add_parser("reproduce", help="Recompute the worked examples")
    p.add_argument("fixture", choices=sorted(REPRODUCERS) + ["all"], help="Worked example")
    p.add_argument("--seed", type=int, default=settings.default_seed, help="Generator seed")
    p.add_argument("--out", type=Path, help="Output path (stdout when omitted)")
    p.add_argument("--format", choices=["json", "csv"], default="json", help="Output format")
    p.set_defaults(handler=cmd_reproduce)

    return parser


def main(args: Optional[List[str]] = None) -> int:
    """Run the command-line utility.

    Args:
        args: Command-line arguments (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(args)
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.log_level or args.log_format:
        configure_logging(args.log_level, args.log_format)

    if args.command is None:
        parser.print_help()
        return EXIT_USAGE

    try:
        return args.handler(args)
    except ValidationError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except HypergraphCodingError as e:
        logger.error("command_failed", command=args.command, error=str(e), error_type=type(e).__name__)
        print(f"Error: {e}", file=sys.stderr)
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
