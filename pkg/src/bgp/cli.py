"""Command-line front end.

    bgp partition --gen path:12:0 --k 3 --algo exact
    bgp partition --input graph.txt --k 4 --algo approx4 --format dot --verify
    bgp bench --families random_connected --sizes 8..12 --count 50 --k 4 --algo approx4

Exit codes: 0 success, 2 infeasible configuration or input, 3 verification
failure (a certificate or ratio claim did not hold up).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bench import ALGORITHMS, claimed_ratio, ratio_report, run_algorithm
from .errors import BgpError, StructureViolation
from .generators import FAMILIES, GeneratorSpec, generate
from .graph import Graph, parse_edge_list
from .oracle import exact_opt, oracle_limit
from .partition import (
    BI_STAR_RATIO,
    STAR_OPTIMAL,
    Certificate,
    Partition,
    PartitionResult,
)
from .verify import certificate_error

_EXIT_OK = 0
_EXIT_CONFIG = 2
_EXIT_VERIFY = 3


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def certificate_witness(c: Certificate) -> dict[str, object]:
    if c.tag == "BoundMet":
        return {"bound": _frac_str(c.bound)}
    if c.tag == STAR_OPTIMAL:
        return {"center": c.center}
    if c.tag == BI_STAR_RATIO:
        return {"case": c.case, "centers": list(c.centers) if c.centers else None}
    return {}


def partition_record(g: Graph, result: PartitionResult, include_trace: bool) -> dict[str, object]:
    record: dict[str, object] = {
        "n": g.n,
        "k": result.partition.k,
        "sizes": sorted((len(s) for s in result.partition.parts), reverse=True),
        "parts": [sorted(s) for s in result.partition.parts],
        "certificate": {
            "tag": result.certificate.tag,
            "ratio": _frac_str(result.certificate.claimed_ratio),
            "witness": certificate_witness(result.certificate),
        },
    }
    if include_trace:
        record["trace"] = [
            {
                "op": r.kind,
                "detail": {
                    key: sorted(value)
                    if isinstance(value, frozenset)
                    else [sorted(x) for x in value]
                    if isinstance(value, tuple)
                    else value
                    for key, value in r.detail.items()
                },
                "rank_before": list(r.rank_before),
                "rank_after": list(r.rank_after),
            }
            for r in result.trace
        ]
    return record


_DOT_COLORS = (
    "lightblue",
    "lightgreen",
    "lightsalmon",
    "gold",
    "plum",
    "lightgray",
    "khaki",
    "lightpink",
)


def emit_dot(g: Graph, p: Partition, certificate: Certificate | None = None) -> str:
    """DOT rendering: one fill color per part, hub vertices double-circled."""
    hubs: set[int] = set()
    if certificate is not None:
        if certificate.center is not None:
            hubs.add(certificate.center)
        if certificate.centers is not None:
            hubs.update(x for x in certificate.centers if x is not None)
    color_of: dict[int, str] = {}
    for i, part in enumerate(p.parts):
        for v in part:
            color_of[v] = _DOT_COLORS[i % len(_DOT_COLORS)]
    lines = ["graph partition {", "  node [style=filled];"]
    for v in range(g.n):
        shape = ", shape=doublecircle" if v in hubs else ""
        lines.append(f'  {v} [fillcolor="{color_of[v]}"{shape}];')
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parse_gen(text: str) -> GeneratorSpec:
    fields = text.split(":")
    if len(fields) != 3:
        raise BgpError(f"--gen expects FAMILY:N:SEED, got {text!r}")
    family, n, seed = fields
    try:
        return GeneratorSpec(family, int(n), int(seed))
    except ValueError as exc:
        raise BgpError(f"--gen expects integer N and SEED, got {text!r}") from exc


def _load_graph(args: argparse.Namespace) -> tuple[Graph, GeneratorSpec | None]:
    if args.gen is not None:
        spec = _parse_gen(args.gen)
        return generate(spec), spec
    try:
        with open(args.input, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise BgpError(f"cannot read {args.input}: {exc}") from exc
    return parse_edge_list(text), None


def _cmd_partition(args: argparse.Namespace) -> int:
    g, _ = _load_graph(args)
    result = run_algorithm(g, args.k, args.algo)
    record = partition_record(g, result, args.trace)
    verify_failed = False
    if args.verify:
        reason = certificate_error(g, result.partition, result.certificate)
        verification: dict[str, object] = {"certificate_ok": reason is None}
        if reason is not None:
            verification["reason"] = reason
            verify_failed = True
        if g.n <= oracle_limit():
            opt, _ = exact_opt(g, args.k)
            realized = Fraction(result.size, opt)
            verification["opt"] = opt
            verification["realized_ratio"] = _frac_str(realized)
            if realized > result.certificate.claimed_ratio:
                verification["ratio_exceeded"] = True
                verify_failed = True
        record["verification"] = verification
    if args.format == "json":
        sys.stdout.write(json.dumps(record, indent=2) + "\n")
    elif args.format == "dot":
        sys.stdout.write(emit_dot(g, result.partition, result.certificate))
    else:
        header = ("n", "k", "algo", "size", "certificate", "ratio", "ops")
        row = (
            str(g.n),
            str(args.k),
            args.algo,
            str(result.size),
            result.certificate.tag,
            _frac_str(result.certificate.claimed_ratio),
            str(result.operation_count),
        )
        sys.stdout.write("\t".join(header) + "\n" + "\t".join(row) + "\n")
    return _EXIT_VERIFY if verify_failed else _EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        sizes = list(range(int(lo), int(hi) + 1))
    else:
        sizes = [int(x) for x in text.split(",")]
    if not sizes or any(s < 1 for s in sizes):
        raise BgpError(f"bad --sizes {text!r}")
    return sizes


def _cmd_bench(args: argparse.Namespace) -> int:
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    unknown = [f for f in families if f not in FAMILIES]
    if unknown:
        raise BgpError(f"unknown families {unknown}")
    sizes = _parse_sizes(args.sizes)
    specs = [
        GeneratorSpec(family, n, args.seed + i)
        for family in families
        for n in sizes
        for i in range(args.count)
    ]
    report = ratio_report(specs, args.k, args.algo)
    sys.stdout.write(report.to_tsv())
    if report.violations:
        print(
            f"error: {len(report.violations)} instances exceed the claimed ratio "
            f"{_frac_str(claimed_ratio(args.algo, args.k))}",
            file=sys.stderr,
        )
        return _EXIT_VERIFY
    return _EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bgp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    part = sub.add_parser("partition", help="partition one graph and emit the result")
    source = part.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="edge-list file ('n m' header, then 'u v' lines)")
    source.add_argument("--gen", help="generator spec FAMILY:N:SEED")
    part.add_argument("--k", type=int, required=True)
    part.add_argument("--algo", choices=ALGORITHMS, required=True)
    part.add_argument("--format", choices=("json", "dot", "tsv"), default="json")
    part.add_argument("--trace", action="store_true", help="include the operation log")
    part.add_argument("--verify", action="store_true", help="re-verify the certificate (and the ratio when the oracle fits)")
    part.set_defaults(func=_cmd_partition)

    bench = sub.add_parser("bench", help="ratio sweep against the exact oracle")
    bench.add_argument("--families", required=True, help="comma-separated generator families")
    bench.add_argument("--sizes", required=True, help="LO..HI or comma-separated sizes")
    bench.add_argument("--count", type=int, default=10, help="instances per (family, size)")
    bench.add_argument("--k", type=int, required=True)
    bench.add_argument("--algo", choices=ALGORITHMS, required=True)
    bench.add_argument("--seed", type=int, default=0)
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StructureViolation as exc:
        print(f"structure violation: {exc}", file=sys.stderr)
        return _EXIT_VERIFY
    except BgpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
