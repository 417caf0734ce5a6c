"""Scaling runs of ``reachable_coherent`` on the chain family."""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass

from .core import structure_size
from .reach import reachable_coherent
from .suites import chain

DEFAULT_SIZES = (100, 200, 400, 800, 1600, 3200)


@dataclass(frozen=True)
class BenchRow:
    n: int
    size: int
    steps: int
    seconds: float
    kernel: str


def bench_chain(sizes=DEFAULT_SIZES, kernel: str | None = None, repeat: int = 3) -> list[BenchRow]:
    """Best-of-``repeat`` wall time for one query per chain length."""
    from . import kernel as kernels

    name = kernels.NAME if kernel in (None, "auto") else kernel
    rows = []
    for n in sizes:
        source, target = chain(n)
        best = math.inf
        for _ in range(repeat):
            began = time.perf_counter()
            answer = reachable_coherent(source, target, witness=False, kernel=kernel)
            best = min(best, time.perf_counter() - began)
        if not answer.reachable:
            raise AssertionError(f"chain({n}) target not reached")
        rows.append(BenchRow(n, structure_size(source), answer.stats.explored, best, name))
    return rows


def loglog_slope(rows: list[BenchRow]) -> float:
    """Least-squares slope of log(seconds) against log(size)."""
    xs = [math.log(r.size) for r in rows]
    ys = [math.log(r.seconds) for r in rows]
    return statistics.linear_regression(xs, ys).slope


def format_table(rows: list[BenchRow]) -> str:
    lines = [f"{'kernel':>8} {'n':>6} {'size':>7} {'steps':>7} {'seconds':>10}"]
    for r in rows:
        lines.append(f"{r.kernel:>8} {r.n:>6} {r.size:>7} {r.steps:>7} {r.seconds:>10.5f}")
    return "\n".join(lines)
