"""Finite surrogates for the density of A_f in (0, 1): interval coverage
by enumeration of small primes or by the witness pipeline, plus the exact
star discrepancy of the points found.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction as Q

from .bfset import as_rational
from .intpoly import IntPoly
from .rootsmodp import EXHAUSTIVE_THRESHOLD, a_f_points
from .witness import B_MAX, W_MAX, Approximation, Witness, approximate


def star_discrepancy(points) -> Q:
    """Exact D*_N of points in (0, 1); 1 for the empty set."""
    pts = sorted(as_rational(u) for u in points)
    if not pts:
        return Q(1)
    if pts[0] <= 0 or pts[-1] >= 1:
        raise ValueError("points must lie strictly inside (0, 1)")
    N = len(pts)
    return max(max(Q(i, N) - u, u - Q(i - 1, N)) for i, u in enumerate(pts, 1))


@dataclass
class Interval:
    lo: Q
    hi: Q
    count: int = 0
    witness: Witness | None = None
    failure: str = ""

    @property
    def covered(self) -> bool:
        return self.count >= 1


@dataclass
class DensityReport:
    poly: str
    mode: str
    eps: Q
    bounds: dict
    seed: int
    intervals: list[Interval]
    points: int
    discrepancy: Q
    max_p: int | None
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def covered(self) -> int:
        return sum(iv.covered for iv in self.intervals)

    @property
    def coverage(self) -> Q:
        return Q(self.covered, len(self.intervals))

    def summary(self, timing: bool = False) -> dict:
        out = {
            "poly": self.poly,
            "mode": self.mode,
            "eps": str(self.eps),
            **self.bounds,
            "seed": self.seed,
            "intervals": len(self.intervals),
            "covered": self.covered,
            "coverage": str(self.coverage),
            "points": self.points,
            "max_p": self.max_p,
            "star_discrepancy": str(self.discrepancy),
            "star_discrepancy_decimal": f"{float(self.discrepancy):.12g}",
            **self.extra,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def rows(self) -> list[dict]:
        out = []
        for iv in self.intervals:
            row = {"lo": str(iv.lo), "hi": str(iv.hi), "covered": iv.covered, "count": iv.count}
            if self.mode == "constructive":
                W = iv.witness
                for k in ("a", "b", "t", "w", "p", "z"):
                    row[k] = getattr(W, k) if W else ""
                row["failure"] = iv.failure
            out.append(row)
        return out

    def to_json_lines(self, timing: bool = False) -> str:
        lines = [json.dumps(self.summary(timing))]
        lines += [json.dumps(row) for row in self.rows()]
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        rows = self.rows()
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()

    def to_table(self, timing: bool = False) -> str:
        lines = [f"{k}: {v}" for k, v in self.summary(timing).items()]
        for row in self.rows():
            mark = "covered" if row["covered"] else "EMPTY"
            line = f"[{row['lo']}, {row['hi']})  {mark:7}  count={row['count']}"
            if self.mode == "constructive":
                if row["p"] != "":
                    line += f"  z/p={row['z']}/{row['p']} via {row['a']}/{row['b']} t={row['t']} w={row['w']}"
                else:
                    line += f"  {row['failure']}"
            lines.append(line)
        return "\n".join(lines) + "\n"


def _tiling(eps: Q) -> list[Interval]:
    k = 1 / eps
    if eps <= 0 or k.denominator != 1:
        raise ValueError("1/eps must be a positive integer")
    k = int(k)
    return [Interval(Q(j, k), Q(j + 1, k)) for j in range(k)]


def cover_report_enumerative(
    f: IntPoly,
    X: int,
    eps,
    threshold: int = EXHAUSTIVE_THRESHOLD,
    seed: int = 0,
    workers: int = 1,
) -> DensityReport:
    eps = as_rational(eps)
    intervals = _tiling(eps)
    start = time.perf_counter()
    pts = a_f_points(f, X, threshold, seed, workers)
    k = len(intervals)
    for pt in pts:
        # floor(k * z / p) picks the half-open interval [j/k, (j+1)/k)
        intervals[pt.z * k // pt.p].count += 1
    return DensityReport(
        poly=str(f),
        mode="enumerative",
        eps=eps,
        bounds={"X": X},
        seed=seed,
        intervals=intervals,
        points=len(pts),
        discrepancy=star_discrepancy([pt.value for pt in pts]),
        max_p=max((pt.p for pt in pts), default=None),
        wall_time=time.perf_counter() - start,
    )


def _run_midpoint(args) -> Approximation:
    f, alpha, eps, b_max, w_max, seed = args
    return approximate(f, alpha, eps, b_max, w_max, seed)


def cover_report_constructive(
    f: IntPoly,
    eps,
    b_max: int = B_MAX,
    w_max: int = W_MAX,
    seed: int = 0,
    workers: int = 1,
) -> DensityReport:
    """Run the witness pipeline at each interval midpoint with tolerance eps/2."""
    eps = as_rational(eps)
    intervals = _tiling(eps)
    start = time.perf_counter()
    jobs = [(f, (iv.lo + iv.hi) / 2, eps / 2, b_max, w_max, seed) for iv in intervals]
    if workers <= 1:
        runs = [_run_midpoint(job) for job in jobs]
    else:
        with ProcessPoolExecutor(workers) as pool:
            runs = list(pool.map(_run_midpoint, jobs))

    values = []
    for iv, run in zip(intervals, runs):
        if run.ok:
            iv.witness = run.witness
            iv.count = 1
            values.append(run.witness.value)
        else:
            iv.failure = run.describe_failure()
    witnesses = [iv.witness for iv in intervals if iv.witness]
    return DensityReport(
        poly=str(f),
        mode="constructive",
        eps=eps,
        bounds={"b_max": b_max, "w_max": w_max},
        seed=seed,
        intervals=intervals,
        points=len(values),
        discrepancy=star_discrepancy(values),
        max_p=max((W.p for W in witnesses), default=None),
        wall_time=time.perf_counter() - start,
        extra={
            "w_tried": sum(r.stats.w_tried for r in runs),
            "primality_tests": sum(r.stats.primality_tests for r in runs),
        },
    )
