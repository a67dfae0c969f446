"""Empirical-ratio benchmark: run an algorithm against the exact oracle over
generated instances and report per-instance and aggregate ratios."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .approx3 import approx3
from .approx4 import approx4
from .approxk import approx_k
from .errors import MismatchedShape
from .generators import GeneratorSpec, generate
from .graph import Graph
from .oracle import exact_opt
from .partition import Certificate, PartitionResult

ALGORITHMS = ("approx3", "approxk", "approx4", "exact")

TSV_COLUMNS = (
    "family",
    "n",
    "seed",
    "k",
    "algo",
    "size",
    "opt",
    "ratio",
    "certificate",
    "ops",
    "millis",
)


def claimed_ratio(algo: str, k: int) -> Fraction:
    if algo == "approx3":
        return Fraction(3, 2)
    if algo == "approx4":
        return Fraction(24, 13)
    if algo == "approxk":
        return Fraction(k, 2)
    if algo == "exact":
        return Fraction(1)
    raise MismatchedShape(f"unknown algorithm {algo!r}")


def run_algorithm(g: Graph, k: int, algo: str) -> PartitionResult:
    """Dispatch by algorithm id, enforcing each algorithm's part-count shape."""
    if algo == "approx3":
        if k != 3:
            raise MismatchedShape(f"approx3 requires k=3, got k={k}")
        return approx3(g)
    if algo == "approx4":
        if k != 4:
            raise MismatchedShape(f"approx4 requires k=4, got k={k}")
        return approx4(g)
    if algo == "approxk":
        return approx_k(g, k)
    if algo == "exact":
        _, p = exact_opt(g, k)
        return PartitionResult(p, Certificate.oracle_exact())
    raise MismatchedShape(f"unknown algorithm {algo!r}")


@dataclass(frozen=True)
class BenchRow:
    family: str
    n: int
    seed: int
    k: int
    algo: str
    size: int
    opt: int
    ratio: Fraction
    certificate: str
    ops: int
    millis: int


@dataclass(frozen=True)
class RatioReport:
    rows: tuple[BenchRow, ...]
    claimed: Fraction

    @property
    def max_ratio(self) -> Fraction:
        return max((r.ratio for r in self.rows), default=Fraction(0))

    @property
    def mean_ratio(self) -> Fraction:
        if not self.rows:
            return Fraction(0)
        return sum(r.ratio for r in self.rows) / len(self.rows)

    @property
    def violations(self) -> tuple[BenchRow, ...]:
        return tuple(r for r in self.rows if r.ratio > self.claimed)

    def to_tsv(self) -> str:
        lines = ["\t".join(TSV_COLUMNS)]
        for r in self.rows:
            lines.append(
                "\t".join(
                    (
                        r.family,
                        str(r.n),
                        str(r.seed),
                        str(r.k),
                        r.algo,
                        str(r.size),
                        str(r.opt),
                        f"{r.size / r.opt:.4f}",
                        r.certificate,
                        str(r.ops),
                        str(r.millis),
                    )
                )
            )
        lines.append(
            f"# instances={len(self.rows)}"
            f" max_ratio={float(self.max_ratio):.4f}"
            f" mean_ratio={float(self.mean_ratio):.4f}"
            f" claimed={float(self.claimed):.4f}"
            f" violations={len(self.violations)}"
        )
        return "\n".join(lines) + "\n"


def ratio_report(specs: list[GeneratorSpec], k: int, algo: str) -> RatioReport:
    """Run algo and the oracle on every spec; rows ordered by (family, n, seed)."""
    rows = []
    for spec in sorted(specs, key=lambda s: (s.family, s.n, s.seed)):
        g = generate(spec)
        start = time.perf_counter()
        result = run_algorithm(g, k, algo)
        millis = int((time.perf_counter() - start) * 1000)
        opt, _ = exact_opt(g, k)
        rows.append(
            BenchRow(
                family=spec.family,
                n=spec.n,
                seed=spec.seed,
                k=k,
                algo=algo,
                size=result.size,
                opt=opt,
                ratio=Fraction(result.size, opt),
                certificate=result.certificate.tag,
                ops=result.operation_count,
                millis=millis,
            )
        )
    return RatioReport(tuple(rows), claimed_ratio(algo, k))
