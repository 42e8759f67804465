"""Monte-Carlo estimates of kernel existence in G(n, p)."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from statistics import NormalDist

import numpy as np

from .digraph import sample_gnp
from .kernels import has_kernel

__all__ = ["ExperimentConfig", "ExistenceRecord", "ExperimentResult", "wilson_interval", "run_existence_experiment"]


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    if trials == 0:
        return (0.0, 1.0)
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * np.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    # the bound is exactly 0 (resp. 1) at the boundary; avoid rounding drift
    lo = 0.0 if successes == 0 else max(0.0, float(centre - half))
    hi = 1.0 if successes == trials else min(1.0, float(centre + half))
    return (lo, hi)


@dataclass(frozen=True)
class ExperimentConfig:
    n_values: tuple[int, ...]
    p: float = 0.5
    trials: int = 500
    seed: int = 0
    search_budget: int = 200_000

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(self.n_values))
        if not self.n_values:
            raise ValueError("n_values must be non-empty")
        if list(self.n_values) != sorted(self.n_values) or min(self.n_values) < 0:
            raise ValueError("n_values must be sorted and non-negative")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


@dataclass(frozen=True)
class ExistenceRecord:
    n: int
    trials: int
    exists_count: int
    undecided_count: int

    @property
    def decided(self) -> int:
        return self.trials - self.undecided_count

    @property
    def frequency(self) -> float:
        return self.exists_count / self.decided if self.decided else float("nan")

    @property
    def wilson_interval(self) -> tuple[float, float]:
        return wilson_interval(self.exists_count, self.decided)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list[ExistenceRecord] = field(default_factory=list)

    def by_n(self, n: int) -> ExistenceRecord:
        for r in self.records:
            if r.n == n:
                return r
        raise KeyError(n)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "p", "trials", "exists", "undecided", "frequency", "ci_lo", "ci_hi"])
        for r in self.records:
            lo, hi = r.wilson_interval
            writer.writerow([r.n, self.config.p, r.trials, r.exists_count, r.undecided_count,
                             f"{r.frequency:.6f}", f"{lo:.6f}", f"{hi:.6f}"])
        return buf.getvalue()


def run_existence_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Sample ``cfg.trials`` graphs per ``n`` and count those with a kernel.

    Each ``n`` gets its own random stream derived from ``cfg.seed``, so a
    given ``(seed, n)`` always sees the same graphs regardless of which other
    sizes are in the run.
    """
    result = ExperimentResult(cfg)
    for n in cfg.n_values:
        rng = np.random.default_rng([cfg.seed, n])
        exists = undecided = 0
        for _ in range(cfg.trials):
            g = sample_gnp(n, cfg.p, rng)
            found = has_kernel(g, budget=cfg.search_budget)
            if found is None:
                undecided += 1
            elif found:
                exists += 1
        result.records.append(ExistenceRecord(n, cfg.trials, exists, undecided))
    return result
