"""Optimal and heuristic 1-D data classification for choropleth maps.

Six methods share one contract: given n values and a class count k in
[3, 11], produce k + 1 strictly increasing class bounds covering the data.
Membership is half-open: value v falls in class i iff bounds[i] <= v <
bounds[i+1], with the final class closed at the top.

Quality is scored with the goodness of variance fit,
``GVF = 100 - (SSW / SST) * 100``, where SST is the total sum of squared
deviations from the global mean and SSW sums squared deviations from the
class means. A GVF of ``GVF_SATISFACTORY`` (95 on the 0-100 scale) or
higher is conventionally treated as a satisfactory classification; the
threshold is exposed for configuration rather than hard-coded into any
decision.

Data-driven methods never split runs of tied values across classes; all
internal optimization therefore works on distinct values with integer
weights, and boundary values are midpoints between adjacent distinct
values, which keeps bounds strictly increasing and makes bound-based
assignment reproduce the optimized partition exactly.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .errors import (
    AllMethodsFailed,
    BadK,
    DegenerateData,
    TieCollapse,
    TooFewValues,
    ValueOutOfRange,
)

log = logging.getLogger(__name__)

K_MIN, K_MAX = 3, 11
GVF_SATISFACTORY = 95.0

EQUAL_INTERVALS = "equal_intervals"
QUANTILES = "quantiles"
JENKS_CASPALL = "jenks_caspall"
FISHER_JENKS = "fisher_jenks"
MAX_P = "max_p"
PRETTY_BREAKS = "pretty_breaks"

# fixed order used to break GVF ties when ranking
METHOD_ORDER = (FISHER_JENKS, JENKS_CASPALL, MAX_P, QUANTILES, EQUAL_INTERVALS, PRETTY_BREAKS)

PRETTY_STEPS = (1.0, 2.0, 2.5, 5.0, 10.0)
JENKS_MAX_SWEEPS = 1000
MAXP_MAX_ITER = 1000


@dataclass(frozen=True)
class ClassBreaks:
    method: str
    bounds: tuple[float, ...]
    k: int

    def __post_init__(self):
        if self.k != len(self.bounds) - 1 or self.k < 1:
            raise ValueError(f"k={self.k} inconsistent with {len(self.bounds)} bounds")
        if any(a >= b for a, b in zip(self.bounds, self.bounds[1:])):
            raise ValueError("bounds must be strictly increasing")

    def to_dict(self) -> dict:
        return {"method": self.method, "bounds": list(self.bounds), "k": self.k}


@dataclass(frozen=True)
class ClassificationResult:
    breaks: ClassBreaks
    gvf: float
    class_counts: tuple[int, ...]
    class_means: tuple[float | None, ...]

    def to_dict(self) -> dict:
        return {
            **self.breaks.to_dict(),
            "gvf": self.gvf,
            "class_counts": list(self.class_counts),
            "class_means": list(self.class_means),
        }


# -- shared plumbing ----------------------------------------------------------

def _check_k(k) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or not K_MIN <= k <= K_MAX:
        raise BadK(f"class count must be an integer in [{K_MIN}, {K_MAX}], got {k!r}")
    return k


def _sorted_values(values) -> np.ndarray:
    arr = np.asarray(list(values), dtype=float)
    if arr.size < 2:
        raise DegenerateData("need at least 2 values to classify")
    if not np.all(np.isfinite(arr)):
        raise DegenerateData("values must be finite")
    arr = np.sort(arr)
    if arr[0] == arr[-1]:
        raise DegenerateData("all values are equal")
    return arr


def _groups(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct sorted values and their multiplicities."""
    g, w = np.unique(arr, return_counts=True)
    return g, w


class _GroupStats:
    """Prefix sums over weighted distinct values for O(1) range SSQ."""

    def __init__(self, g: np.ndarray, w: np.ndarray):
        self.g = g
        self.w = w
        self.cum_w = np.concatenate(([0], np.cumsum(w)))
        self.cum_wv = np.concatenate(([0.0], np.cumsum(w * g)))
        self.cum_wv2 = np.concatenate(([0.0], np.cumsum(w * g * g)))

    def ssq(self, a: int, b: int) -> float:
        """Sum of squared deviations from the mean over groups[a:b]."""
        n = self.cum_w[b] - self.cum_w[a]
        s = self.cum_wv[b] - self.cum_wv[a]
        s2 = self.cum_wv2[b] - self.cum_wv2[a]
        return max(s2 - s * s / n, 0.0)

    def weight(self, a: int, b: int) -> int:
        return int(self.cum_w[b] - self.cum_w[a])


def _bounds_from_cuts(g: np.ndarray, cuts: list[int], method: str, k: int) -> ClassBreaks:
    """Cut positions (group indices) -> midpoint bounds."""
    bounds = [float(g[0])]
    bounds += [float((g[c - 1] + g[c]) / 2.0) for c in cuts]
    bounds.append(float(g[-1]))
    return ClassBreaks(method, tuple(bounds), k)


def assign_values(values, bounds) -> np.ndarray:
    """Class index per value under the half-open membership convention."""
    arr = np.asarray(list(values), dtype=float)
    b = np.asarray(bounds, dtype=float)
    if arr.size and (arr.min() < b[0] or arr.max() > b[-1]):
        bad = float(arr.min()) if arr.min() < b[0] else float(arr.max())
        raise ValueOutOfRange(f"value {bad} outside [{b[0]}, {b[-1]}]")
    idx = np.searchsorted(b, arr, side="right") - 1
    return np.minimum(idx, len(b) - 2)


def gvf(values, breaks: ClassBreaks) -> float:
    """Goodness of variance fit of the given breaks on the given values."""
    arr = np.asarray(list(values), dtype=float)
    sst = float(((arr - arr.mean()) ** 2).sum())
    if sst == 0.0:
        raise DegenerateData("zero total variance")
    labels = assign_values(arr, breaks.bounds)
    ssw = 0.0
    for i in range(breaks.k):
        members = arr[labels == i]
        if members.size:
            ssw += float(((members - members.mean()) ** 2).sum())
    return 100.0 - ssw / sst * 100.0


def result_for_breaks(values, breaks: ClassBreaks) -> ClassificationResult:
    arr = np.asarray(list(values), dtype=float)
    labels = assign_values(arr, breaks.bounds)
    counts, means = [], []
    for i in range(breaks.k):
        members = arr[labels == i]
        counts.append(int(members.size))
        means.append(float(members.mean()) if members.size else None)
    return ClassificationResult(breaks, gvf(arr, breaks), tuple(counts), tuple(means))


# -- the six methods -----------------------------------------------------------

def equal_intervals(values, k: int) -> ClassBreaks:
    """k intervals of equal width across [min, max]."""
    k = _check_k(k)
    arr = _sorted_values(values)
    lo, hi = float(arr[0]), float(arr[-1])
    step = (hi - lo) / k
    bounds = [lo + i * step for i in range(k)] + [hi]
    if any(a >= b for a, b in zip(bounds, bounds[1:])):
        raise DegenerateData("value range too small for distinct interval bounds")
    return ClassBreaks(EQUAL_INTERVALS, tuple(bounds), k)


def _quantile_cuts(arr: np.ndarray, k: int) -> list[int]:
    """Element-count cut positions; ties push a boundary up past the run."""
    n = arr.size
    cuts = []
    prev = 0
    for i in range(1, k):
        c = max(int(round(i * n / k)), prev + 1)
        while 0 < c < n and arr[c - 1] == arr[c]:
            c += 1
        if c >= n - (k - 1 - i):  # no room left for the remaining classes
            raise TieCollapse(f"ties leave fewer than {k} non-empty classes")
        cuts.append(c)
        prev = c
    return cuts


def quantiles(values, k: int) -> ClassBreaks:
    """Near-equal class counts from order statistics, keeping ties whole."""
    k = _check_k(k)
    arr = _sorted_values(values)
    cuts = _quantile_cuts(arr, k)
    g, w = _groups(arr)
    cum = np.concatenate(([0], np.cumsum(w)))
    group_cuts = [int(np.searchsorted(cum, c)) for c in cuts]
    return _bounds_from_cuts(g, group_cuts, QUANTILES, k)


def _require_enough_groups(g: np.ndarray, k: int) -> None:
    if g.size < k:
        raise DegenerateData(f"only {g.size} distinct values for {k} classes")


def _even_group_cuts(m: int, k: int) -> list[int]:
    return [round(i * m / k) for i in range(1, k)]


def _seed_cuts(arr: np.ndarray, g: np.ndarray, w: np.ndarray, k: int) -> list[int]:
    """Quantile seed in group space; even split when ties defeat quantiles."""
    try:
        element_cuts = _quantile_cuts(arr, k)
        cum = np.concatenate(([0], np.cumsum(w)))
        return [int(np.searchsorted(cum, c)) for c in element_cuts]
    except TieCollapse:
        return _even_group_cuts(g.size, k)


def _total_ssq(stats: _GroupStats, cuts: list[int]) -> float:
    edges = [0] + cuts + [stats.g.size]
    return sum(stats.ssq(a, b) for a, b in zip(edges, edges[1:]))


def jenks_caspall(values, k: int) -> ClassBreaks:
    """Iterative boundary reallocation from a quantile seed.

    Each sweep tries to shift every boundary one distinct value in either
    direction and keeps moves that lower the total within-class SSQ;
    terminates at a local optimum or after JENKS_MAX_SWEEPS sweeps.
    """
    k = _check_k(k)
    arr = _sorted_values(values)
    g, w = _groups(arr)
    _require_enough_groups(g, k)
    stats = _GroupStats(g, w)
    cuts = _seed_cuts(arr, g, w, k)
    for _ in range(JENKS_MAX_SWEEPS):
        improved = False
        for j in range(k - 1):
            lo = cuts[j - 1] if j > 0 else 0
            hi = cuts[j + 1] if j + 1 < len(cuts) else g.size
            current = stats.ssq(lo, cuts[j]) + stats.ssq(cuts[j], hi)
            best_c, best_ss = cuts[j], current
            for c in (cuts[j] - 1, cuts[j] + 1):
                if lo < c < hi:
                    ss = stats.ssq(lo, c) + stats.ssq(c, hi)
                    if ss < best_ss:
                        best_c, best_ss = c, ss
            if best_c != cuts[j]:
                cuts[j] = best_c
                improved = True
        if not improved:
            break
    return _bounds_from_cuts(g, cuts, JENKS_CASPALL, k)


def _fisher_cuts(g: np.ndarray, w: np.ndarray, k: int) -> tuple[list[int], float]:
    """Exact DP over contiguous partitions of the weighted distinct values.

    Returns the SSW-minimal cut vector; equal-SSW optima resolve to the
    lexicographically smallest cut vector.
    """
    stats = _GroupStats(g, w)
    m = g.size
    # best[i] = (cost, cuts) for the first i groups split into j classes
    best: list[tuple[float, tuple[int, ...]] | None] = [None] * (m + 1)
    for i in range(1, m + 1):
        best[i] = (stats.ssq(0, i), ())
    for j in range(2, k + 1):
        nxt: list[tuple[float, tuple[int, ...]] | None] = [None] * (m + 1)
        for i in range(j, m + 1):
            pick = None
            for c in range(j - 1, i):
                prev = best[c]
                if prev is None:
                    continue
                cand = (prev[0] + stats.ssq(c, i), prev[1] + (c,))
                if pick is None or cand[0] < pick[0] or (cand[0] == pick[0] and cand[1] < pick[1]):
                    pick = cand
            nxt[i] = pick
        best = nxt
    cost, cuts = best[m]
    return list(cuts), cost


def fisher_jenks(values, k: int) -> ClassBreaks:
    """Globally SSW-optimal k-class partition via dynamic programming."""
    k = _check_k(k)
    arr = _sorted_values(values)
    g, w = _groups(arr)
    _require_enough_groups(g, k)
    cuts, _ = _fisher_cuts(g, w, k)
    return _bounds_from_cuts(g, cuts, FISHER_JENKS, k)


def max_p(values, k: int, seed: int = 0) -> ClassBreaks:
    """Seeded contiguous grouping with a minimum class size.

    Random greedy seeding places k contiguous classes on the sorted values,
    each holding at least floor(n / (3k)) members; boundary-move local
    search then minimizes SSW while preserving the size floor. The result
    is a deterministic function of (values, k, seed).
    """
    k = _check_k(k)
    arr = _sorted_values(values)
    n = arr.size
    if n < 3 * k:
        raise TooFewValues(f"max_p needs at least 3k values (n={n}, k={k})")
    g, w = _groups(arr)
    _require_enough_groups(g, k)
    stats = _GroupStats(g, w)
    min_size = n // (3 * k)
    rng = random.Random(seed)

    cuts: list[int] = []
    prev = 0
    for j in range(1, k):
        remaining = k - j
        valid = [
            c for c in range(prev + 1, g.size - remaining + 1)
            if stats.weight(prev, c) >= min_size
            and stats.weight(c, g.size) >= remaining * min_size
        ]
        if not valid:
            raise DegenerateData("tied values prevent the minimum class size")
        c = rng.choice(valid)
        cuts.append(c)
        prev = c

    # coordinate descent: move each boundary to its best valid position
    # between its neighbors while preserving the size floor
    for _ in range(MAXP_MAX_ITER):
        moved = False
        for j in range(k - 1):
            lo = cuts[j - 1] if j > 0 else 0
            hi = cuts[j + 1] if j + 1 < len(cuts) else g.size
            best_c, best_ss = cuts[j], stats.ssq(lo, cuts[j]) + stats.ssq(cuts[j], hi)
            for c in range(lo + 1, hi):
                if stats.weight(lo, c) < min_size or stats.weight(c, hi) < min_size:
                    continue
                ss = stats.ssq(lo, c) + stats.ssq(c, hi)
                if ss < best_ss:
                    best_c, best_ss = c, ss
            if best_c != cuts[j]:
                cuts[j] = best_c
                moved = True
        if not moved:
            break
    return _bounds_from_cuts(g, cuts, MAX_P, k)


def _pretty_step_candidates(target: float) -> list[float]:
    exp = math.floor(math.log10(target))
    return [s * 10.0 ** m for m in (exp - 1, exp, exp + 1) for s in PRETTY_STEPS]


def _pretty_bounds(lo: float, hi: float, step: float) -> list[float]:
    lo_idx = math.floor(lo / step + 1e-9)
    hi_idx = math.ceil(hi / step - 1e-9)
    return [(lo_idx + i) * step for i in range(hi_idx - lo_idx + 1)]


def pretty_breaks(values, k: int) -> ClassBreaks:
    """Round-number bounds: multiples of a neat step close to range / k.

    The resulting class count can differ from the requested k; when the
    nearest neat step would change it by more than 2 the step minimizing
    the class-count error is used instead.
    """
    k = _check_k(k)
    arr = _sorted_values(values)
    lo, hi = float(arr[0]), float(arr[-1])
    target = (hi - lo) / k
    candidates = _pretty_step_candidates(target)
    step = min(candidates, key=lambda s: (abs(s - target), s))
    if abs(len(_pretty_bounds(lo, hi, step)) - 1 - k) > 2:
        step = min(candidates, key=lambda s: (abs(len(_pretty_bounds(lo, hi, s)) - 1 - k),
                                              abs(s - target), s))
    bounds = _pretty_bounds(lo, hi, step)
    return ClassBreaks(PRETTY_BREAKS, tuple(bounds), len(bounds) - 1)


# -- driver ---------------------------------------------------------------------

_METHOD_FNS = {
    EQUAL_INTERVALS: equal_intervals,
    QUANTILES: quantiles,
    JENKS_CASPALL: jenks_caspall,
    FISHER_JENKS: fisher_jenks,
    MAX_P: max_p,
    PRETTY_BREAKS: pretty_breaks,
}


def classify_all(values, k: int, seed: int = 0) -> tuple[list[ClassificationResult], dict[str, str]]:
    """Run all six methods; rank results by GVF descending.

    Methods that cannot handle the input are skipped and reported in the
    second return value. GVF ties keep the fixed METHOD_ORDER.
    """
    _check_k(k)
    results: list[ClassificationResult] = []
    skipped: dict[str, str] = {}
    for method in METHOD_ORDER:
        fn = _METHOD_FNS[method]
        try:
            breaks = fn(values, k, seed) if method == MAX_P else fn(values, k)
            results.append(result_for_breaks(values, breaks))
        except (DegenerateData, TieCollapse, TooFewValues) as e:
            skipped[method] = str(e)
            log.warning("classification method %s skipped: %s", method, e)
    if not results:
        raise AllMethodsFailed(f"no method produced a result: {skipped}")
    results.sort(key=lambda r: -r.gvf)  # stable: METHOD_ORDER wins exact ties
    return results, skipped


def assign_classes(d: Dataset, breaks: ClassBreaks) -> dict[str, int]:
    """Region name -> class index for every numeric record in the dataset."""
    pairs = [(r.name, r.value) for r in d.records if r.value is not None]
    labels = assign_values([v for _, v in pairs], breaks.bounds)
    return {name: int(i) for (name, _), i in zip(pairs, labels)}
