"""Bound checks over enumerated families and conjecture counterexample search."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .bounds import applicable_threshold, codegree_bound
from .family import Family, FamilyParams, covers_size1, is_intersecting
from .generators import Budget, BudgetExceeded, enumerate_maximal_intersecting
from .masks import Mask
from .oracles import ExplicitOracle, min_degree, min_degree_scan

ACHIEVER_CAP = 64


@dataclass(frozen=True)
class BoundReport:
    rule: str  # "vertex-degree" for d=1, else "codegree"
    n: int
    k: int
    d: int
    threshold: int
    bound: int
    max_delta: int
    achievers: tuple[tuple[Mask, ...], ...]  # edge tuples, up to ACHIEVER_CAP
    achievers_truncated: bool
    achievers_all_stars: Optional[bool]  # set when max_delta == bound
    verdict: str  # "holds" | "violated" | "below-threshold"
    families_checked: int
    elapsed_ms: float
    dedup_mode: str

    def csv_row(self) -> list:
        return [
            self.rule,
            self.n,
            self.k,
            self.d,
            self.threshold,
            self.bound,
            self.max_delta,
            self.verdict,
            self.families_checked,
            round(self.elapsed_ms, 3),
        ]


CSV_HEADER = ["theorem", "n", "k", "d", "threshold", "bound", "max_delta", "verdict", "families", "ms"]


def _is_complete_star_family(fam: Family) -> bool:
    from math import comb

    common, vacuous = covers_size1(fam)
    if vacuous or not common:
        return False
    return len(fam) == comb(fam.params.n - 1, fam.params.k - 1)


def _reverify_excess(fam: Family, d: int, bound: int) -> bool:
    """Independent re-check of a claimed violator: direct scans only."""
    if not is_intersecting(fam):
        return False
    val, _ = min_degree_scan(ExplicitOracle(fam), d)
    return val > bound


def check_theorem(
    n: int,
    k: int,
    d: int,
    dedup_mode: str = "labeled",
    threads: int = 1,
    budget: Optional[Budget] = None,
) -> BoundReport:
    """Compare the maximum of delta_d over all maximal intersecting
    families on (n, k) against the codegree bound C(n-d-1, k-d-1).

    Degree monotonicity makes the maximal families sufficient.  Below
    the applicable threshold the observed maximum is recorded as data
    with the verdict "below-threshold", never as a violation.
    """
    if not (1 <= d < k):
        raise ValueError("require 1 <= d < k")
    start = time.monotonic()
    bound = codegree_bound(n, k, d)
    threshold = applicable_threshold(k, d)
    rule = "vertex-degree" if d == 1 else "codegree"

    best = -1
    achievers: list[tuple[Mask, ...]] = []
    truncated = False
    count = 0

    def evaluate(fam: Family) -> tuple[int, Family]:
        val, _ = min_degree(fam, d)
        return val, fam

    stream = enumerate_maximal_intersecting(n, k, dedup_mode, budget=budget)
    if threads > 1:
        executor = ThreadPoolExecutor(max_workers=threads)
        results = executor.map(evaluate, stream)
    else:
        executor = None
        results = map(evaluate, stream)
    try:
        for val, fam in results:
            count += 1
            if val > best:
                best = val
                achievers = [fam.edges]
                truncated = False
            elif val == best:
                if len(achievers) < ACHIEVER_CAP:
                    achievers.append(fam.edges)
                else:
                    truncated = True
    finally:
        if executor is not None:
            executor.shutdown(wait=False)

    achievers.sort()
    all_stars: Optional[bool] = None
    if best == bound:
        params = FamilyParams(n, k)
        all_stars = not truncated and all(
            _is_complete_star_family(Family(params, edges)) for edges in achievers
        )
    if n < threshold:
        verdict = "below-threshold"
    elif best <= bound:
        verdict = "holds"
    else:
        params = FamilyParams(n, k)
        confirmed = any(_reverify_excess(Family(params, edges), d, bound) for edges in achievers)
        verdict = "violated" if confirmed else "holds"
    elapsed = (time.monotonic() - start) * 1000.0
    return BoundReport(
        rule=rule,
        n=n,
        k=k,
        d=d,
        threshold=threshold,
        bound=bound,
        max_delta=best,
        achievers=tuple(achievers),
        achievers_truncated=truncated,
        achievers_all_stars=all_stars,
        verdict=verdict,
        families_checked=count,
        elapsed_ms=elapsed,
        dedup_mode=dedup_mode,
    )


@dataclass(frozen=True)
class SearchReport:
    n: int
    k: int
    d: int
    target: int
    outcome: str  # "found" | "exhausted" | "inconclusive"
    family: Optional[tuple[Mask, ...]]
    delta_found: Optional[int]
    families_checked: int
    nodes: int
    elapsed_ms: float
    budget_ms: Optional[int]
    budget_nodes: Optional[int]


def search_counterexample(
    n: int,
    k: int,
    d: int,
    target: int,
    budget: Optional[Budget] = None,
) -> SearchReport:
    """Search for an intersecting family with delta_d >= target.

    Monotonicity reduces the search to maximal families, so the clique
    stream is scanned with re-verification on a hit.  Exhausting the
    stream certifies nonexistence at (n, k, d); a budget stop reports
    inconclusive instead.
    """
    if not (1 <= d < k):
        raise ValueError("require 1 <= d < k")
    if target <= codegree_bound(n, k, d):
        raise ValueError(
            f"target {target} not above the bound {codegree_bound(n, k, d)}; nothing to search"
        )
    if budget is None:
        budget = Budget()
    count = 0
    hit: Optional[Family] = None
    hit_val: Optional[int] = None
    outcome = "exhausted"
    try:
        for fam in enumerate_maximal_intersecting(n, k, "labeled", budget=budget):
            count += 1
            val, _ = min_degree(fam, d)
            if val >= target:
                sval, _ = min_degree_scan(ExplicitOracle(fam), d)
                if is_intersecting(fam) and sval >= target:
                    hit, hit_val = fam, sval
                    outcome = "found"
                    break
                raise AssertionError("candidate failed independent re-verification")
    except BudgetExceeded:
        outcome = "inconclusive"
    return SearchReport(
        n=n,
        k=k,
        d=d,
        target=target,
        outcome=outcome,
        family=hit.edges if hit is not None else None,
        delta_found=hit_val,
        families_checked=count,
        nodes=budget.nodes,
        elapsed_ms=budget.elapsed_ms,
        budget_ms=budget.max_ms,
        budget_nodes=budget.max_nodes,
    )
