"""Leap-on-success staged exhaustive search.

The optimizer looks for the widest valid array a given sensor count can
reach. Each stage fixes an aperture l, enumerates every placement of the
interior sensors between the pinned endpoints in lexicographic order, and
stops at the first valid array ("leap on success"). A found stage advances
the aperture by one; a stage that exhausts without success proves the
previous stage's array optimal.

Two sound necessary-condition filters can shrink a stage without changing
its verdict: grid points 1 and l-1 must be occupied in any valid array
(the lag l-1 needs two generating pairs and only (0, l-1) and (1, l) exist),
and validity is mirror-invariant, so mirror-canonical candidates suffice.
Filters never change whether a stage is found or exhausted, only how much
work proves it.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import kernel
from .coarray import SensorArray

__all__ = [
    "CorruptCheckpoint",
    "IndexOutOfRange",
    "SearchConfig",
    "StageOutcome",
    "StageResult",
    "SearchOutcome",
    "Verdict",
    "aperture_lower_bound",
    "aperture_upper_bound",
    "candidate_count",
    "checkpoint_load",
    "checkpoint_save",
    "loses_search",
    "rank_candidate",
    "run_stage",
    "unrank_candidate",
]

_CHUNK = 1 << 16


class IndexOutOfRange(IndexError):
    """Candidate index outside 0..candidate_count-1."""


class CorruptCheckpoint(ValueError):
    """Checkpoint file failed validation (version, digest, or config)."""


class StageOutcome(str, Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    BUDGET_EXCEEDED = "budget-exceeded"


class Verdict(str, Enum):
    OPTIMAL = "optimal"
    NEAR_OPTIMAL = "near-optimal"
    NONE_FOUND = "none-found"


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for one search run.

    ``deterministic`` guarantees the lexicographically-first valid array per
    stage under any worker count; fast mode may return a different (equally
    valid) array when running in parallel or with mirror pruning on.
    ``candidate_budget`` caps the total candidates examined across the run.
    """

    n: int
    l_start: int | None = None
    l_limit: int | None = None
    tight_bounds: bool = False
    prune_filters: bool = True
    mirror_prune: bool = False
    deterministic: bool = False
    workers: int = 1
    candidate_budget: int | None = None
    checkpoint_path: str | Path | None = None

    def __post_init__(self) -> None:
        if self.n < 6:
            raise ValueError("searches start at 6 sensors (smallest valid array)")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.candidate_budget is not None and self.candidate_budget < 0:
            raise ValueError("candidate_budget must be non-negative")
        if self.l_start is not None and self.l_start < self.n:
            raise ValueError("l_start must be at least n")
        start = self.effective_l_start()
        if start > aperture_upper_bound(self.n):
            raise ValueError("l_start exceeds the aperture upper bound")
        if self.l_limit is not None and self.l_limit < start:
            raise ValueError("l_limit must be at least the starting aperture")

    def effective_l_start(self) -> int:
        if self.l_start is not None:
            return self.l_start
        return aperture_lower_bound(self.n, self.tight_bounds)

    def filter_signature(self) -> dict:
        """Enumeration-affecting settings; must match to resume a checkpoint."""
        return {
            "prune_filters": self.prune_filters,
            "mirror_prune": self.mirror_prune,
            "deterministic": self.deterministic,
        }


@dataclass(frozen=True)
class StageResult:
    """One aperture's verdict.

    ``candidate_index`` is the unfiltered lexicographic rank of the found
    array, a stable identifier independent of filter settings.
    ``candidates_examined`` counts the stage's own enumeration: in
    deterministic (or serial) mode it is the lexicographic prefix needed to
    reach the verdict, identical for serial, parallel and resumed runs; in
    fast parallel mode it is the work actually performed.
    """

    l: int
    outcome: StageOutcome
    candidates_examined: int
    elapsed: float
    array: SensorArray | None = None
    candidate_index: int | None = None

    def to_dict(self, include_timing: bool = True) -> dict:
        d: dict = {
            "l": self.l,
            "outcome": self.outcome.value,
            "candidates_examined": self.candidates_examined,
            "array": list(self.array.positions) if self.array else None,
            "candidate_index": self.candidate_index,
        }
        if include_timing:
            d["elapsed"] = self.elapsed
        return d

    @staticmethod
    def from_dict(d: dict) -> "StageResult":
        return StageResult(
            l=d["l"],
            outcome=StageOutcome(d["outcome"]),
            candidates_examined=d["candidates_examined"],
            elapsed=d.get("elapsed", 0.0),
            array=SensorArray(tuple(d["array"])) if d.get("array") else None,
            candidate_index=d.get("candidate_index"),
        )


@dataclass(frozen=True)
class SearchOutcome:
    """Whole-run result: the stage trail plus the optimality verdict."""

    n: int
    stages: tuple[StageResult, ...]
    verdict: Verdict
    optimal_aperture: int | None
    best_array: SensorArray | None
    reason: str | None = None

    def to_dict(self, include_timing: bool = True) -> dict:
        return {
            "n": self.n,
            "verdict": self.verdict.value,
            "optimal_aperture": self.optimal_aperture,
            "best_array": list(self.best_array.positions) if self.best_array else None,
            "reason": self.reason,
            "stages": [s.to_dict(include_timing) for s in self.stages],
        }


def aperture_lower_bound(n: int, tight: bool = False) -> int:
    """Smallest aperture worth trying.

    The loose bound is n (sparsity demands l >= n). The tight bound adds the
    redundancy ceiling for doubly covered coarrays, R = n(n-1)/(2l) < 4.
    """
    if n < 6:
        raise ValueError("valid arrays need at least 6 sensors")
    if not tight:
        return n
    return max(n, -(-(n * (n - 1)) // 8))


def aperture_upper_bound(n: int) -> int:
    """Largest aperture the pair budget allows.

    Double coverage of lags 1..l-1 plus the single endpoint pair needs
    2(l-1)+1 pairs, and only n(n-1)/2 exist.
    """
    if n < 6:
        raise ValueError("valid arrays need at least 6 sensors")
    return (n * (n - 1) // 2 + 1) // 2


def candidate_count(n: int, l: int, filtered: bool = False) -> int:
    """Stage size: interior placements with endpoints pinned.

    Unfiltered, n-2 sensors go anywhere in 1..l-1. The filtered count also
    pins grid points 1 and l-1 (forced by the weight of lag l-1).
    """
    if n < 4 or l < n:
        raise ValueError("need l >= n >= 4")
    if filtered:
        return math.comb(l - 3, n - 4)
    return math.comb(l - 1, n - 2)


def _unrank_lex(index: int, m: int, k: int) -> list[int]:
    """index-th k-subset of {0..m-1} in lexicographic order."""
    combo = []
    v = 0
    r = index
    for i in range(k):
        while True:
            c = math.comb(m - 1 - v, k - i - 1)
            if r < c:
                break
            r -= c
            v += 1
        combo.append(v)
        v += 1
    return combo


def _rank_lex(combo: Sequence[int], m: int, k: int) -> int:
    """Lexicographic rank of a k-subset of {0..m-1}."""
    r = 0
    prev = -1
    for i, c in enumerate(combo):
        for v in range(prev + 1, c):
            r += math.comb(m - 1 - v, k - i - 1)
        prev = c
    return r


def unrank_candidate(n: int, l: int, index: int) -> SensorArray:
    """The index-th candidate of the unfiltered stage (n, l)."""
    total = candidate_count(n, l, False)
    if not 0 <= index < total:
        raise IndexOutOfRange(f"index {index} outside 0..{total - 1}")
    combo = _unrank_lex(index, l - 1, n - 2)
    return SensorArray((0, *(v + 1 for v in combo), l))


def rank_candidate(n: int, l: int, arr: SensorArray | Sequence[int]) -> int:
    """Unfiltered lexicographic rank of a candidate; inverse of unrank."""
    pos = tuple(arr.positions if isinstance(arr, SensorArray) else arr)
    if len(pos) != n or pos[0] != 0 or pos[-1] != l:
        raise ValueError(f"not a candidate of stage (n={n}, l={l}): {list(pos)}")
    return _rank_lex([p - 1 for p in pos[1:-1]], l - 1, n - 2)


def _unrank_active(n: int, l: int, filtered: bool, index: int) -> list[int]:
    """0-based interior combination at `index` of the active enumeration."""
    if filtered:
        return _unrank_lex(index, l - 3, n - 4)
    return _unrank_lex(index, l - 1, n - 2)


@dataclass
class _StageScan:
    """Read-only descriptor shared by the serial and parallel stage drivers."""

    n: int
    l: int
    filtered: bool
    mirror: bool
    start: int
    cap: int  # candidates this run may examine (budget-clamped)
    size: int  # full active-enumeration size


def _scan_chunk(sc: _StageScan, lo: int, hi: int) -> tuple[int, int, list[int] | None]:
    first = _unrank_active(sc.n, sc.l, sc.filtered, lo)
    examined, offset, positions = kernel.scan(
        sc.n, sc.l, first, hi - lo, sc.filtered, sc.mirror
    )
    return examined, (lo + offset if offset >= 0 else -1), positions


def _scan_serial(
    sc: _StageScan, on_progress: Callable[[int], None] | None
) -> tuple[int, int, list[int] | None]:
    examined = 0
    lo = sc.start
    end = sc.start + sc.cap
    while lo < end:
        hi = min(lo + _CHUNK, end)
        got, rank, positions = _scan_chunk(sc, lo, hi)
        examined += got
        if rank >= 0:
            return examined, rank, positions
        lo = hi
        if on_progress is not None:
            on_progress(lo)
    return examined, -1, None


def _scan_parallel(
    sc: _StageScan, workers: int, deterministic: bool
) -> tuple[int, int, list[int] | None]:
    end = sc.start + sc.cap
    chunk = max(4096, min(_CHUNK, sc.cap // (workers * 4) + 1))
    bounds = [(lo, min(lo + chunk, end)) for lo in range(sc.start, end, chunk)]
    examined = 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        if deterministic:
            # Confirm chunks strictly in rank order: the first find seen at
            # the confirmation frontier is the global lexicographic first.
            window = workers * 4
            futures: dict[int, object] = {}
            submitted = 0
            try:
                for idx in range(len(bounds)):
                    while submitted < len(bounds) and submitted < idx + window:
                        futures[submitted] = pool.submit(
                            _scan_chunk, sc, *bounds[submitted]
                        )
                        submitted += 1
                    got, rank, positions = futures.pop(idx).result()
                    examined += got
                    if rank >= 0:
                        return examined, rank, positions
            finally:
                for f in futures.values():
                    f.cancel()
            return examined, -1, None

        pending = {pool.submit(_scan_chunk, sc, lo, hi) for lo, hi in bounds}
        best: tuple[int, list[int]] | None = None
        while pending and best is None:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for f in done:
                got, rank, positions = f.result()
                examined += got
                if rank >= 0 and (best is None or rank < best[0]):
                    best = (rank, positions)
        for f in pending:
            f.cancel()
        for f in pending:  # in-flight chunks finish and still count
            if not f.cancelled():
                got, rank, positions = f.result()
                examined += got
                if rank >= 0 and rank < best[0]:
                    best = (rank, positions)
        if best is not None:
            return examined, best[0], best[1]
        return examined, -1, None


def run_stage(
    n: int,
    l: int,
    cfg: SearchConfig,
    *,
    start_index: int = 0,
    budget_remaining: int | None = None,
    on_progress: Callable[[int], None] | None = None,
) -> StageResult:
    """Scan one aperture's candidates; stop at the first valid array.

    ``start_index`` resumes the stage mid-enumeration (checkpointing);
    reported counts stay equivalent to an uninterrupted run.
    """
    t0 = time.perf_counter()
    filtered = cfg.prune_filters
    mirror = cfg.mirror_prune and not cfg.deterministic
    size = candidate_count(n, l, filtered)
    remaining = size - start_index
    if remaining < 0:
        raise ValueError("start_index beyond stage size")
    cap = remaining if budget_remaining is None else min(remaining, budget_remaining)
    sc = _StageScan(n, l, filtered, mirror, start_index, cap, size)

    if cap == 0:
        examined_run, rank, positions = 0, -1, None
    elif cfg.workers == 1:
        examined_run, rank, positions = _scan_serial(sc, on_progress)
    else:
        examined_run, rank, positions = _scan_parallel(sc, cfg.workers, cfg.deterministic)
    elapsed = time.perf_counter() - t0

    if rank >= 0:
        arr = SensorArray(tuple(positions))
        if cfg.deterministic or cfg.workers == 1:
            examined = rank + 1  # prefix count, identical for any worker split
        else:
            examined = start_index + examined_run
        return StageResult(
            l=l,
            outcome=StageOutcome.FOUND,
            candidates_examined=examined,
            elapsed=elapsed,
            array=arr,
            candidate_index=rank_candidate(n, l, arr),
        )
    if cap < remaining:
        return StageResult(
            l=l,
            outcome=StageOutcome.BUDGET_EXCEEDED,
            candidates_examined=start_index + cap,
            elapsed=elapsed,
        )
    return StageResult(
        l=l,
        outcome=StageOutcome.EXHAUSTED,
        candidates_examined=size,
        elapsed=elapsed,
    )


def checkpoint_save(
    path: str | Path,
    *,
    n: int,
    l: int,
    next_index: int,
    stages: Iterable[StageResult],
    filters: dict,
) -> None:
    """Write a resumable snapshot; the digest seals all other fields."""
    payload = {
        "version": 1,
        "n": n,
        "l": l,
        "next_index": next_index,
        "stages": [s.to_dict() for s in stages],
        "filters": dict(filters),
    }
    payload["digest"] = _digest(payload)
    tmp = Path(path).with_suffix(".tmp")
    tmp.write_text(json.dumps(payload))
    os.replace(tmp, path)


def checkpoint_load(path: str | Path) -> dict:
    """Read and validate a checkpoint written by :func:`checkpoint_save`."""
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CorruptCheckpoint(f"unreadable checkpoint {path}: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("version") != 1:
        raise CorruptCheckpoint(f"unsupported checkpoint version in {path}")
    digest = payload.get("digest")
    if digest != _digest({k: v for k, v in payload.items() if k != "digest"}):
        raise CorruptCheckpoint(f"digest mismatch in {path}")
    return payload


def _digest(payload: dict) -> str:
    keys = ["version", "n", "l", "next_index", "stages", "filters"]
    body = json.dumps({k: payload[k] for k in keys}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


def loses_search(
    cfg: SearchConfig,
    on_stage: Callable[[StageResult], None] | None = None,
) -> SearchOutcome:
    """Run the staged search to an optimality verdict.

    Apertures increase by one per found stage. The first exhausted stage
    proves the previous find optimal; running out of budget or hitting the
    aperture limit first yields a near-optimal verdict instead. When
    ``cfg.checkpoint_path`` names an existing checkpoint the run resumes
    from it; the file is refreshed during the run and removed once a
    verdict is reached.
    """
    upper = aperture_upper_bound(cfg.n)
    stages: list[StageResult] = []
    l = cfg.effective_l_start()
    start_index = 0

    ckpt = Path(cfg.checkpoint_path) if cfg.checkpoint_path else None
    if ckpt is not None and ckpt.exists():
        payload = checkpoint_load(ckpt)
        if payload["n"] != cfg.n or payload["filters"] != cfg.filter_signature():
            raise CorruptCheckpoint("checkpoint does not match this configuration")
        stages = [StageResult.from_dict(d) for d in payload["stages"]]
        l = payload["l"]
        start_index = payload["next_index"]

    def save(next_index: int, stage_l: int) -> None:
        if ckpt is not None:
            checkpoint_save(
                ckpt,
                n=cfg.n,
                l=stage_l,
                next_index=next_index,
                stages=stages,
                filters=cfg.filter_signature(),
            )

    # spent counts lexicographic-prefix work, so resumed runs keep exact
    # budget accounting without double counting.
    spent = sum(s.candidates_examined for s in stages) + start_index
    best: StageResult | None = next(
        (s for s in reversed(stages) if s.outcome is StageOutcome.FOUND), None
    )
    verdict: Verdict
    reason: str | None = None

    while True:
        if cfg.l_limit is not None and l > cfg.l_limit:
            verdict = Verdict.NEAR_OPTIMAL if best is not None else Verdict.NONE_FOUND
            reason = "aperture limit reached"
            break
        if l > upper:
            # Beyond the pair budget no candidate can doubly cover 1..l-1,
            # so the stage is exhausted with every candidate filtered out.
            synthetic = StageResult(
                l=l, outcome=StageOutcome.EXHAUSTED, candidates_examined=0, elapsed=0.0
            )
            stages.append(synthetic)
            if on_stage is not None:
                on_stage(synthetic)
            verdict = Verdict.OPTIMAL if best is not None else Verdict.NONE_FOUND
            if best is None:
                reason = "aperture upper bound reached"
            break
        avail = None if cfg.candidate_budget is None else max(cfg.candidate_budget - spent, 0)
        if avail == 0:
            verdict = Verdict.NEAR_OPTIMAL if best is not None else Verdict.NONE_FOUND
            reason = "candidate budget exhausted"
            break

        last_saved = time.monotonic()

        def progress(next_index: int, _l: int = l) -> None:
            nonlocal last_saved
            if time.monotonic() - last_saved >= 1.0:
                save(next_index, _l)
                last_saved = time.monotonic()

        result = run_stage(
            cfg.n,
            l,
            cfg,
            start_index=start_index,
            budget_remaining=avail,
            on_progress=progress if ckpt is not None and cfg.workers == 1 else None,
        )
        stages.append(result)
        start_index = 0
        spent = sum(s.candidates_examined for s in stages)
        if on_stage is not None:
            on_stage(result)
        if result.outcome is StageOutcome.FOUND:
            best = result
            l += 1
            save(0, l)
            continue
        if result.outcome is StageOutcome.EXHAUSTED:
            verdict = Verdict.OPTIMAL if best is not None else Verdict.NONE_FOUND
            if best is None:
                reason = "first stage exhausted"
            break
        verdict = Verdict.NEAR_OPTIMAL if best is not None else Verdict.NONE_FOUND
        reason = "candidate budget exhausted"
        break

    if ckpt is not None and ckpt.exists():
        ckpt.unlink()
    return SearchOutcome(
        n=cfg.n,
        stages=tuple(stages),
        verdict=verdict,
        optimal_aperture=best.l if best is not None else None,
        best_array=best.array if best is not None else None,
        reason=reason,
    )
