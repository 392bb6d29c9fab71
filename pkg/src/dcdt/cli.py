"""Command-line front end.

Every command is a pure function of its input files and flags; repeated
runs produce byte-identical outputs.  Exit codes: 0 success, 1 usage or
I/O error, 2 JPEG/sidecar parse error, 3 numeric or constraint error.
"""

import argparse
import sys

from .analysis import (
    histogram_from_entries,
    load_block_costs_csv,
    random_block_costs,
    save_block_costs_csv,
    save_histogram_csv,
    spearman,
)
from .errors import ConstraintError, JpegError, UnknownQuantTableError
from .jpeg import dump_sidecar, infer_quality, parse_jpeg, serialize_jpeg
from .pipeline import embed
from .simulator import EmbedConfig, load_map_csv, save_map_csv
from .transform import DcdtParams, p_for_qf, p_from_table, save_jpeg_cost_csv


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _resolve_params(args, quant_table) -> DcdtParams:
    """Explicit --p wins; otherwise infer QF from the quantization table
    and take the tuned SCA-GFR exponent, falling back to the linear rule."""
    if args.p is not None:
        return DcdtParams(args.p, "explicit")
    qf, _ = infer_quality(quant_table)
    try:
        return DcdtParams(p_from_table(qf, "SCA-GFR"), f"table(qf={qf},SCA-GFR)")
    except KeyError:
        pass
    try:
        return DcdtParams(p_for_qf(qf), f"regression(qf={qf})")
    except ValueError:
        raise UnknownQuantTableError(
            f"inferred QF {qf} has no tuned or regressed exponent; pass --p"
        )


def _cmd_dump(args) -> int:
    with open(args.input, "rb") as fh:
        image = parse_jpeg(fh.read())
    with open(args.output, "wb") as fh:
        fh.write(dump_sidecar(image))
    return 0


def _cmd_cost(args) -> int:
    with open(args.input, "rb") as fh:
        image = parse_jpeg(fh.read())
    params = _resolve_params(args, image.quant_table)
    from .pipeline import compute_cost_map

    _, rho = compute_cost_map(image, params.p)
    save_jpeg_cost_csv(
        rho, args.output, header_lines=[f"p={params.p!r} source={params.source}"]
    )
    return 0


def _cmd_embed(args) -> int:
    with open(args.input, "rb") as fh:
        image = parse_jpeg(fh.read())
    params = _resolve_params(args, image.quant_table)
    config = EmbedConfig(
        alpha=args.payload,
        p=params.p,
        seed=args.seed,
        wet_cost=args.wet_cost,
        lambda_tol=args.tol,
        mde=args.mde,
        T=args.T,
        v=args.v,
    )
    result = embed(image, config)
    with open(args.output, "wb") as fh:
        fh.write(serialize_jpeg(result.stego))
    if args.map:
        save_map_csv(result.map, args.map)
    total = result.map.size
    print(f"p={params.p!r}")
    print(f"p_source={params.source}")
    print(f"nonzero_ac={result.nonzero_ac}")
    print(f"target_bits={result.target_bits!r}")
    print(f"lambda={result.lam!r}")
    print(f"entropy_bits={result.entropy_bits!r}")
    print(f"changes={result.change_count}")
    print(f"change_rate={result.change_count / total!r}")
    if args.mde:
        print(f"skipped_blocks={result.skipped_blocks}")
    return 0


def _cmd_scc(args) -> int:
    a = load_block_costs_csv(args.a)
    b = load_block_costs_csv(args.b)
    print(f"{spearman(a.values, b.values):+.4f}")
    return 0


def _cmd_rand(args) -> int:
    save_block_costs_csv(random_block_costs(args.n, args.seed), args.output)
    return 0


def _cmd_modehist(args) -> int:
    hist = histogram_from_entries(load_map_csv(args.input))
    save_histogram_csv(hist, args.output)
    return 0


def _add_p_flags(sub):
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--p", type=float, default=None, help="explicit exponent")
    group.add_argument(
        "--qf-auto",
        action="store_true",
        help="derive the exponent from the inferred quality factor (default)",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="dcdt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dump", help="extract coefficients to a COEF1 sidecar")
    s.add_argument("input")
    s.add_argument("output")
    s.set_defaults(func=_cmd_dump)

    s = sub.add_parser("cost", help="per-coefficient embedding cost CSV")
    s.add_argument("input")
    s.add_argument("output")
    _add_p_flags(s)
    s.set_defaults(func=_cmd_cost)

    s = sub.add_parser("embed", help="simulate payload-limited embedding")
    s.add_argument("input")
    s.add_argument("output")
    s.add_argument("--payload", type=float, required=True, help="bits per nonzero AC")
    s.add_argument("--seed", type=int, default=0)
    _add_p_flags(s)
    s.add_argument("--mde", action="store_true", help="mutually dependent extension")
    s.add_argument("--T", type=int, default=10, help="per-block enumeration bound")
    s.add_argument("--v", type=float, default=10.0, help="cost update penalty")
    s.add_argument("--wet-cost", type=float, default=1e13, dest="wet_cost")
    s.add_argument("--tol", type=float, default=1e-3, help="relative entropy tolerance")
    s.add_argument("--map", default=None, help="write the modification map CSV here")
    s.set_defaults(func=_cmd_embed)

    s = sub.add_parser("scc", help="Spearman correlation of two cost CSVs")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=_cmd_scc)

    s = sub.add_parser("rand", help="random block-cost CSV")
    s.add_argument("output")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=_cmd_rand)

    s = sub.add_parser("modehist", help="per-mode histogram of a map CSV")
    s.add_argument("input")
    s.add_argument("output")
    s.set_defaults(func=_cmd_modehist)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"dcdt: error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except JpegError as exc:
        print(f"dcdt: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ConstraintError, ValueError, KeyError) as exc:
        print(f"dcdt: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"dcdt: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
