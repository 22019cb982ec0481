"""Cost functions, performance ratios and the TSV comparison report."""
from __future__ import annotations

import io
from dataclasses import dataclass, field

from .core import ParameterError

TSV_COLUMNS = ("algorithm", "cost_mm", "ratio_mm", "cost_sc", "ratio_sc",
               "per_set_steps", "lower_bound", "wall_ms")


def cost_mm(results) -> int:
    """Sum over sets of steps times set size."""
    return sum(r.steps * len(r.completion) for r in results)


def cost_sc(results) -> int:
    """Sum of completion steps over every sequence of every set."""
    return sum(sum(r.completion.values()) for r in results)


def performance_ratio(cost, q: int, K: int, M: int, N: int) -> float:
    """``cost / (q*K*M*N)``: cost relative to periodic deposition of full sets."""
    denom = q * K * M * N
    if min(q, K, M, N) < 1 or denom == 0:
        raise ParameterError(f"ratio needs q, K, M, N >= 1; got {q}, {K}, {M}, {N}")
    return cost / denom


@dataclass
class CostReport:
    algorithm: str
    cost_mm: int
    cost_sc: int
    ratio_mm: float
    ratio_sc: float
    per_set_steps: list
    lower_bound: int | None = None
    wall_time: float | None = None  # seconds
    extra: dict = field(default_factory=dict, repr=False)

    def row(self, timing: bool = False) -> list[str]:
        lb = "NA" if self.lower_bound is None else str(self.lower_bound)
        wall = f"{self.wall_time * 1000:.1f}" if timing and self.wall_time is not None else "NA"
        return [
            self.algorithm,
            str(self.cost_mm),
            f"{self.ratio_mm:.6f}",
            str(self.cost_sc),
            f"{self.ratio_sc:.6f}",
            ",".join(str(x) for x in self.per_set_steps),
            lb,
            wall,
        ]


def report_from_results(name, results, q, K, M, N, lower_bound=None, wall_time=None,
                        mm=None, sc=None) -> CostReport:
    mm = cost_mm(results) if mm is None else mm
    sc = cost_sc(results) if sc is None else sc
    return CostReport(
        algorithm=name,
        cost_mm=mm,
        cost_sc=sc,
        ratio_mm=performance_ratio(mm, q, K, M, N),
        ratio_sc=performance_ratio(sc, q, K, M, N),
        per_set_steps=[r.steps for r in results],
        lower_bound=lower_bound,
        wall_time=wall_time,
    )


def to_tsv(reports, header: dict | None = None, timing: bool = False) -> str:
    """Serialise reports; ``header`` items become leading ``# key=value`` lines."""
    buf = io.StringIO()
    for key, value in (header or {}).items():
        buf.write(f"# {key}={value}\n")
    buf.write("\t".join(TSV_COLUMNS) + "\n")
    for r in reports:
        buf.write("\t".join(r.row(timing)) + "\n")
    return buf.getvalue()


def parse_tsv(text: str) -> list[dict]:
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    if not lines:
        return []
    cols = lines[0].split("\t")
    return [dict(zip(cols, ln.split("\t"))) for ln in lines[1:]]
