"""Command-line front end: codec operations and experiment sweeps.

Bits are ASCII 0/1 strings, most significant bit first.  Binary matcher
sequences are contiguous 0/1 strings; nonbinary sequences are comma-separated
1-based symbol indices unless ``--alpha`` supplies symbol names.  Exit codes:
0 success, 2 usage error, 3 domain error (invalid subset, composition
mismatch and the like).  Sweep output is deterministic: rows are sorted by
grid key and numbers are written with full repr precision, so reruns are
byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .analysis import (
    air_sweep,
    dos_curve,
    pasr_reduction_sweep,
    rate_loss_summary,
)
from .architectures import (
    BlLevel,
    BlPlan,
    bl_demap,
    bl_map,
    pa_best_ordering,
    pa_demap,
    pa_map,
    pa_split,
)
from .composition import Composition, CompositionError
from .matchers import BinaryCodec, nb_enum_demap, nb_enum_map
from .shaping import DEFAULT_SEED
from .subsetrank import rank, unrank, validate_subset

OUT_DIR_ENV = "CCDM_OUT_DIR"


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse {what}: {text!r}") from None


def _parse_levels(text: str) -> tuple[tuple[int, int], ...]:
    levels = []
    for part in text.split(":"):
        counts = _parse_ints(part, "level counts")
        if len(counts) != 2:
            raise ValueError(f"each level needs two counts, got {part!r}")
        levels.append(counts)
    return tuple(levels)


def _alphabet(args, m: int) -> tuple:
    if getattr(args, "alpha", None):
        names = tuple(args.alpha.split(","))
        if len(names) != m:
            raise ValueError(f"--alpha lists {len(names)} names, need {m}")
        return names
    return tuple(range(1, m + 1))


def _format_sequence(seq, args) -> str:
    return ",".join(str(sym) for sym in seq)


def _parse_sequence(text: str, alphabet) -> tuple:
    by_name = {str(sym): sym for sym in alphabet}
    out = []
    for part in text.split(","):
        part = part.strip()
        if part not in by_name:
            raise CompositionError(f"symbol {part!r} not in alphabet")
        out.append(by_name[part])
    return tuple(out)


def _read_payload(args, flag: str) -> str:
    value = getattr(args, flag)
    if value is not None:
        return value
    return sys.stdin.read().strip()


def _composition(args) -> Composition:
    counts = _parse_ints(args.composition, "composition")
    return Composition(counts, _alphabet(args, len(counts)))


def _pa_plan(args):
    c = _composition(args)
    if args.ordering:
        return pa_split(c, _parse_ints(args.ordering, "ordering"), args.order)
    return pa_best_ordering(c, args.order)


def _bl_plan(args) -> BlPlan:
    if not args.levels:
        raise ValueError("scheme bl needs --levels, e.g. 78,22:61,39")
    levels = _parse_levels(args.levels)
    lengths = {sum(level) for level in levels}
    if len(lengths) != 1:
        raise ValueError("all levels must sum to the same block length")
    n = lengths.pop()
    m = 1 << len(levels)
    return BlPlan(
        n=n,
        amplitudes=_alphabet(args, m),
        levels=tuple(
            BlLevel(counts=level, codec=BinaryCodec(n, level[1], args.order))
            for level in levels
        ),
    )


# -- subcommand handlers ------------------------------------------------------


def _cmd_rank(args) -> int:
    subset = validate_subset(_parse_ints(args.subset, "subset"), args.n, args.w)
    print(rank(subset, args.n, args.order))
    return 0


def _cmd_unrank(args) -> int:
    subset = unrank(args.rank, args.n, args.w, args.order)
    print(",".join(str(t) for t in subset))
    return 0


def _cmd_map(args) -> int:
    bits = _read_payload(args, "bits")
    if args.scheme == "sr":
        if args.n is None or args.w is None:
            raise ValueError("scheme sr needs --n and --w")
        print(BinaryCodec(args.n, args.w, args.order).map(bits))
    elif args.scheme == "pa":
        plan = _pa_plan(args)
        print(_format_sequence(pa_map(plan, bits), args))
    elif args.scheme == "nb":
        print(_format_sequence(nb_enum_map(_composition(args), bits), args))
    else:
        plan = _bl_plan(args)
        print(_format_sequence(bl_map(plan, bits), args))
    return 0


def _cmd_demap(args) -> int:
    payload = _read_payload(args, "seq")
    if args.scheme == "sr":
        if args.n is None or args.w is None:
            raise ValueError("scheme sr needs --n and --w")
        print(BinaryCodec(args.n, args.w, args.order).demap(payload))
        return 0
    if args.scheme == "pa":
        plan = _pa_plan(args)
        seq = _parse_sequence(payload, plan.composition.alphabet)
        print(pa_demap(plan, seq))
    elif args.scheme == "nb":
        c = _composition(args)
        print(nb_enum_demap(c, _parse_sequence(payload, c.alphabet)))
    else:
        plan = _bl_plan(args)
        print(bl_demap(plan, _parse_sequence(payload, plan.amplitudes)))
    return 0


def _snr_grid(args) -> list[float]:
    if args.snr is not None:
        return [args.snr]
    steps = round((args.snr_max - args.snr_min) / args.snr_step)
    if steps < 0:
        raise ValueError("empty SNR grid")
    return [round(args.snr_min + i * args.snr_step, 10) for i in range(steps + 1)]


def _render(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, tuple):
        return ":".join(str(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return value


def _write_rows(rows: list[dict], args, meta: str) -> None:
    out_path = args.out
    if out_path and not os.path.isabs(out_path):
        base = os.environ.get(OUT_DIR_ENV)
        if base:
            out_path = os.path.join(base, out_path)
    if args.format == "json":
        payload = [{k: _render(v) for k, v in row.items()} for row in rows]
        text = json.dumps({"provenance": meta, "rows": payload}, indent=2) + "\n"
    else:
        buffer = io.StringIO()
        buffer.write(f"# {meta}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(rows[0].keys())
        for row in rows:
            writer.writerow([_render(v) for v in row.values()])
        text = buffer.getvalue()
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_sweep(args) -> int:
    meta = (
        f"ccdm {__version__} sweep={args.experiment} seed={args.seed}"
        f" quad_nodes={args.nodes}"
    )
    if args.experiment == "dos":
        if args.m is not None:
            rows = pasr_reduction_sweep(args.m, args.n, _snr_grid(args), args.nodes)
            rows.sort(key=lambda r: r["snr_db"])
        else:
            rows = dos_curve(args.n)
            rows.sort(key=lambda r: r["w"])
    elif args.experiment == "rateloss":
        if args.m is None:
            raise ValueError("sweep rateloss needs --m")
        rows = [rate_loss_summary(args.m, args.n, snr, args.nodes) for snr in _snr_grid(args)]
        rows.sort(key=lambda r: r["snr_db"])
    else:
        if args.m is None:
            raise ValueError("sweep air needs --m")
        rows = air_sweep(args.m, args.n, _snr_grid(args), args.nodes)
        rows.sort(key=lambda r: r["snr_db"])
    _write_rows(rows, args, meta)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccdm",
        description="Constant-composition distribution matching tools",
    )
    parser.add_argument("--config", help="key=value file overriding flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rank = sub.add_parser("rank", help="rank a subset")
    p_rank.add_argument("--n", type=int, required=True)
    p_rank.add_argument("--w", type=int, required=True)
    p_rank.add_argument("--order", choices=("lex", "colex"), default="lex")
    p_rank.add_argument("--subset", required=True, help="comma-separated elements")
    p_rank.set_defaults(func=_cmd_rank)

    p_unrank = sub.add_parser("unrank", help="unrank to a subset")
    p_unrank.add_argument("--n", type=int, required=True)
    p_unrank.add_argument("--w", type=int, required=True)
    p_unrank.add_argument("--order", choices=("lex", "colex"), default="lex")
    p_unrank.add_argument("--rank", type=int, required=True)
    p_unrank.set_defaults(func=_cmd_unrank)

    for name, handler in (("map", _cmd_map), ("demap", _cmd_demap)):
        p = sub.add_parser(name, help=f"{name} with a matcher")
        p.add_argument("--scheme", choices=("sr", "pa", "bl", "nb"), required=True)
        p.add_argument("--n", type=int)
        p.add_argument("--w", type=int)
        p.add_argument("--order", choices=("lex", "colex"), default="lex")
        p.add_argument("--composition", help="comma-separated counts (pa/nb)")
        p.add_argument("--ordering", help="1-based amplitude placement order (pa)")
        p.add_argument("--levels", help="colon-separated level counts (bl), e.g. 78,22:61,39")
        p.add_argument("--alpha", help="comma-separated symbol names")
        if name == "map":
            p.add_argument("--bits", help="input bits; read from stdin when omitted")
        else:
            p.add_argument("--seq", help="sequence; read from stdin when omitted")
        p.set_defaults(func=handler)

    p_sweep = sub.add_parser("sweep", help="emit experiment data")
    p_sweep.add_argument("experiment", choices=("rateloss", "dos", "air"))
    p_sweep.add_argument("--n", type=int, required=True)
    p_sweep.add_argument("--m", type=int)
    p_sweep.add_argument("--snr", type=float, help="single SNR point in dB")
    p_sweep.add_argument("--snr-min", type=float, default=0.0)
    p_sweep.add_argument("--snr-max", type=float, default=20.0)
    p_sweep.add_argument("--snr-step", type=float, default=1.0)
    p_sweep.add_argument("--nodes", type=int, default=32, help="quadrature nodes per dimension")
    p_sweep.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_sweep.add_argument("--out", help=f"output path; relative paths honour ${OUT_DIR_ENV}")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.set_defaults(func=_cmd_sweep)
    return parser


def _apply_config(args) -> None:
    if not args.config:
        return
    with open(args.config) as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, _, raw = line.partition("=")
            key = key.strip().replace("-", "_")
            raw = raw.strip()
            for cast in (int, float):
                try:
                    value = cast(raw)
                    break
                except ValueError:
                    continue
            else:
                value = raw
            setattr(args, key, value)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except (CompositionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
