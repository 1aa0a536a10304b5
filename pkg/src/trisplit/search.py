"""Exact maximization of subset minimum out-degree.

Two exact engines compute max over vertex subsets X (of the requested
sizes) of the minimum out-degree of the induced subdigraph:

* ``enumerate_max`` sweeps every subset of each requested size.  For
  digraphs of at most 64 vertices the masks of one size class are
  materialized as ascending numpy arrays, built level by level from
  the previous size class, and degree minima are computed with
  vectorized AND + popcount over fixed-index chunks.  Larger vertex
  counts, and size profiles where the level-by-level build would cost
  far more than the requested evaluation, fall back to a pure-Python
  fixed-popcount successor loop (Gosper iteration).
* ``branch_bound_max`` proves the same maximum for one target size by
  depth-first selection over the candidate pool with sound pruning.

Both engines report a witness subset; ties are broken toward the
subset whose increasing id tuple is lexicographically smallest, and a
nonempty witness is preferred when the empty set ties (the empty set
is reported only when it is the entire searched family).  Chunk
boundaries and reduction order are fixed by index, so results are
independent of the worker count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .construction import level_params, ternary_tournament
from .digraph import Digraph, VertexSet

#: Default ceiling on the number of subsets one call may visit.
DEFAULT_BUDGET = 1 << 27

_CHUNK = 1 << 20


class BudgetExceeded(RuntimeError):
    """The requested family is larger than the subset budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"search needs {required} subsets, budget allows {budget}"
        )
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one exact search.

    ``by_size`` maps each searched size to (best value, witness) for
    that size alone; ``best_set``/``best_value`` aggregate over all of
    them.  ``exact`` is True iff the family was fully covered or
    soundly pruned.
    """

    best_set: VertexSet
    best_value: int
    nodes_visited: int
    pruned: int
    exact: bool
    elapsed: float
    by_size: dict[int, tuple[int, VertexSet]] = field(default_factory=dict)


@dataclass(frozen=True)
class VerifyOutcome:
    """Result of checking one level's subset degree cap.

    A run refused for exceeding the subset budget carries a stub
    report with ``exact=False`` and ``passed=None`` (no verdict);
    ``required`` always holds the family size estimate.
    """

    level: int
    bound: int
    required: int
    report: SearchReport
    passed: Optional[bool]


def subset_count(n: int, sizes: Iterable[int]) -> int:
    """Number of subsets the size family contains."""
    return sum(math.comb(n, m) for m in sizes)


def fixed_popcount_masks(n: int, m: int):
    """Yield all n-bit masks of popcount m in increasing numeric order.

    Constant amortized work per mask: the next mask is computed from
    the current one with the classic carry/ripple successor.
    """
    if m == 0:
        yield 0
        return
    if m > n:
        return
    x = (1 << m) - 1
    limit = 1 << n
    while x < limit:
        yield x
        low = x & -x
        ripple = x + low
        x = ripple | (((x ^ ripple) >> 2) // low)


def _normalize_sizes(n: int, sizes) -> tuple[int, ...]:
    if isinstance(sizes, int):
        sizes = [sizes]
    out = sorted(set(int(m) for m in sizes))
    if not out:
        raise ValueError("no subset sizes requested")
    for m in out:
        if not 0 <= m <= n:
            raise ValueError(f"subset size {m} out of range for n={n}")
    return tuple(out)


def _bit_reverse_int(mask: int, n: int) -> int:
    if n == 0:
        return 0
    return int(format(mask, f"0{n}b")[::-1], 2) if mask else 0


def _np_bit_reverse(arr: np.ndarray, n: int) -> np.ndarray:
    """Reverse the low n bits of each element (n <= 64)."""
    if arr.dtype == np.uint32:
        x = arr.copy()
        x = ((x & 0x55555555) << 1) | ((x >> 1) & 0x55555555)
        x = ((x & 0x33333333) << 2) | ((x >> 2) & 0x33333333)
        x = ((x & 0x0F0F0F0F) << 4) | ((x >> 4) & 0x0F0F0F0F)
        x = x.byteswap()
        return x >> (32 - n)
    x = arr.astype(np.uint64)
    x = ((x & 0x5555555555555555) << 1) | ((x >> 1) & 0x5555555555555555)
    x = ((x & 0x3333333333333333) << 2) | ((x >> 2) & 0x3333333333333333)
    x = ((x & 0x0F0F0F0F0F0F0F0F) << 4) | ((x >> 4) & 0x0F0F0F0F0F0F0F0F)
    x = x.byteswap()
    return x >> (64 - n)


def _eval_chunk(masks: np.ndarray, adj: np.ndarray, n: int) -> tuple[int, int, int]:
    """(best value, bit-reversed witness, witness mask) for one chunk.

    Within a size class the id-lexicographically smallest attainer is
    the one whose reversed mask is numerically largest.
    """
    big = np.uint8(255)
    md = np.full(masks.shape, big, dtype=np.uint8)
    for v in range(n):
        d = np.bitwise_count(masks & adj[v]).astype(np.uint8)
        member = ((masks >> v) & 1).astype(bool)
        np.minimum(md, np.where(member, d, big), out=md)
    vmax = int(md.max())
    attain = masks[md == vmax]
    rev = _np_bit_reverse(attain, n)
    i = int(np.argmax(rev))
    return vmax, int(rev[i]), int(attain[i])


def _blocks_by_size(digraph: Digraph, sizes: tuple[int, ...],
                    threads: int) -> dict[int, tuple[int, VertexSet]]:
    """Evaluate every requested size class with the vectorized engine."""
    n = digraph.n
    dtype = np.uint32 if n <= 32 else np.uint64
    adj = np.array(digraph.rows, dtype=dtype)
    wanted = set(sizes)
    out: dict[int, tuple[int, VertexSet]] = {}
    if 0 in wanted:
        out[0] = (0, VertexSet.empty(n))
    prev = np.zeros(1, dtype=dtype)  # the single size-0 mask
    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for m in range(1, max(sizes) + 1):
            parts = [prev[:math.comb(h, m - 1)] | dtype(1 << h)
                     for h in range(m - 1, n)]
            cur = np.concatenate(parts)
            if m in wanted:
                chunks = [cur[lo:lo + _CHUNK] for lo in range(0, len(cur), _CHUNK)]
                if executor is not None and len(chunks) > 1:
                    results = list(executor.map(
                        lambda c: _eval_chunk(c, adj, n), chunks))
                else:
                    results = [_eval_chunk(c, adj, n) for c in chunks]
                best_v, best_rev, best_mask = -1, -1, 0
                for v, rev, mask in results:
                    if v > best_v or (v == best_v and rev > best_rev):
                        best_v, best_rev, best_mask = v, rev, mask
                out[m] = (best_v, VertexSet(best_mask, n))
            prev = cur
    finally:
        if executor is not None:
            executor.shutdown()
    return out


def _gosper_by_size(digraph: Digraph,
                    sizes: tuple[int, ...]) -> dict[int, tuple[int, VertexSet]]:
    """Pure-Python size-class sweep; works for any vertex count."""
    n = digraph.n
    rows = digraph.rows
    out: dict[int, tuple[int, VertexSet]] = {}
    for m in sizes:
        if m == 0:
            out[0] = (0, VertexSet.empty(n))
            continue
        best_v, best_rev, best_mask = -1, -1, 0
        for mask in fixed_popcount_masks(n, m):
            rest = mask
            d = n
            while rest:
                low = rest & -rest
                c = (rows[low.bit_length() - 1] & mask).bit_count()
                if c < d:
                    d = c
                rest ^= low
            if d >= best_v:
                rev = _bit_reverse_int(mask, n)
                if d > best_v or rev > best_rev:
                    best_v, best_rev, best_mask = d, rev, mask
        out[m] = (best_v, VertexSet(best_mask, n))
    return out


def _combine_sizes(by_size: dict[int, tuple[int, VertexSet]]) -> tuple[int, VertexSet]:
    best_value = max(v for v, _ in by_size.values())
    witnesses = [w for v, w in by_size.values() if v == best_value]
    nonempty = [w.ids() for w in witnesses if len(w)]
    if nonempty:
        ids = min(nonempty)
        owner = witnesses[0].owner_n
        return best_value, VertexSet.from_ids(ids, owner)
    return best_value, witnesses[0]


def enumerate_max(digraph: Digraph, sizes, budget: int = DEFAULT_BUDGET,
                  threads: int = 1, engine: str = "auto") -> SearchReport:
    """Exhaustive maximum of min-out-degree over the given subset sizes.

    ``sizes`` is a single size or an iterable of sizes.  Refuses with
    :class:`BudgetExceeded` when the family holds more than ``budget``
    subsets (the estimate is computed before any enumeration).
    """
    t0 = time.perf_counter()
    n = digraph.n
    sizes = _normalize_sizes(n, sizes)
    required = subset_count(n, sizes)
    if required > budget:
        raise BudgetExceeded(required, budget)
    if engine == "auto":
        build_cost = sum(math.comb(n, i) for i in range(max(sizes) + 1))
        if n <= 64 and build_cost <= max(4 * required, 1 << 22):
            engine = "blocks"
        else:
            engine = "gosper"
    if engine == "blocks":
        if n > 64:
            raise ValueError("blocks engine requires at most 64 vertices")
        by_size = _blocks_by_size(digraph, sizes, threads)
    elif engine == "gosper":
        by_size = _gosper_by_size(digraph, sizes)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    best_value, best_set = _combine_sizes(by_size)
    return SearchReport(
        best_set=best_set,
        best_value=best_value,
        nodes_visited=required,
        pruned=0,
        exact=True,
        elapsed=time.perf_counter() - t0,
        by_size=by_size,
    )


class _SearchDone(Exception):
    pass


def branch_bound_max(digraph: Digraph, target_size: int,
                     prune: bool = True) -> SearchReport:
    """Exact maximum over subsets of exactly ``target_size`` vertices.

    Depth-first selection in increasing id order.  Pruning rules, all
    sound for the maximum value:

    * ceiling: a tournament's size-m subset has a vertex beaten at
      least (m-1)//2 times inside it, so the search stops once the
      running best reaches floor((m-1)/2) (m-1 for general digraphs);
    * potential: a vertex's out-degree into selected-plus-candidates
      bounds its final in-set out-degree, so a branch dies when any
      selected vertex cannot reach best+1;
    * peeling: candidates whose potential cannot reach best+1 are
      dropped, iterated to a fixpoint.

    With ``prune=False`` only the structural feasibility check remains
    and every size-m subset is visited; the best value is unchanged.
    """
    n = digraph.n
    if not 0 <= target_size <= n:
        raise ValueError(f"target size {target_size} out of range for n={n}")
    t0 = time.perf_counter()
    if target_size == 0:
        empty = VertexSet.empty(n)
        return SearchReport(empty, 0, 1, 0, True, time.perf_counter() - t0,
                            {0: (0, empty)})
    rows = digraph.rows
    ceiling = (target_size - 1) // 2 if digraph.is_tournament() else target_size - 1
    state = {"best": -1, "mask": 0, "visited": 0, "pruned": 0}

    def recurse(sel: int, pool: int, nsel: int) -> None:
        state["visited"] += 1
        if nsel == target_size:
            rest, val = sel, n
            while rest:
                low = rest & -rest
                d = (rows[low.bit_length() - 1] & sel).bit_count()
                if d < val:
                    val = d
                rest ^= low
            if val > state["best"]:
                state["best"], state["mask"] = val, sel
                if val >= ceiling:
                    raise _SearchDone
            return
        if prune:
            best = state["best"]
            # peel unreachable candidates to a fixpoint
            while True:
                union = sel | pool
                dropped = False
                rest = pool
                while rest:
                    low = rest & -rest
                    if (rows[low.bit_length() - 1] & union).bit_count() <= best:
                        pool ^= low
                        dropped = True
                    rest ^= low
                if not dropped:
                    break
            union = sel | pool
            rest = sel
            while rest:
                low = rest & -rest
                if (rows[low.bit_length() - 1] & union).bit_count() <= best:
                    state["pruned"] += 1
                    return
                rest ^= low
        if pool.bit_count() < target_size - nsel:
            state["pruned"] += 1
            return
        low = pool & -pool
        recurse(sel | low, pool ^ low, nsel + 1)
        recurse(sel, pool ^ low, nsel)

    try:
        recurse(0, (1 << n) - 1, 0)
    except _SearchDone:
        pass
    best_set = VertexSet(state["mask"], n)
    return SearchReport(
        best_set=best_set,
        best_value=state["best"],
        nodes_visited=state["visited"],
        pruned=state["pruned"],
        exact=True,
        elapsed=time.perf_counter() - t0,
        by_size={target_size: (state["best"], best_set)},
    )


_exact_runs: dict[int, SearchReport] = {}


def verify_bound(level: int, budget: int = DEFAULT_BUDGET,
                 threads: int = 1) -> VerifyOutcome:
    """Exhaustively check the level's subset degree cap.

    Sweeps every subset of size 0..(3**level - 1)//2 of the level's
    tournament and compares the exact maximum against the closed-form
    bound.  A family larger than ``budget`` is refused: the outcome
    then has no report and no verdict, only the size estimate.
    """
    params = level_params(level)
    n = params.order
    sizes = range(params.reg_degree + 1)
    required = subset_count(n, sizes)
    if required > budget:
        partial = SearchReport(
            best_set=VertexSet.empty(n),
            best_value=0,
            nodes_visited=0,
            pruned=0,
            exact=False,
            elapsed=0.0,
            by_size={},
        )
        return VerifyOutcome(level, params.bound, required, partial, None)
    digraph = ternary_tournament(level)
    report = enumerate_max(digraph, sizes, budget=budget, threads=threads)
    _exact_runs[level] = report
    return VerifyOutcome(level, params.bound, required, report,
                         report.best_value <= params.bound)


def witness_extremal(level: int, report: Optional[SearchReport] = None) -> VertexSet:
    """A subset attaining the exact maximum of a completed verify run.

    Uses the given report, or the most recent exact :func:`verify_bound`
    run for the level; raises LookupError when neither is available.
    """
    if report is None:
        report = _exact_runs.get(level)
    if report is None or not report.exact:
        raise LookupError(f"no exact verification run recorded for level {level}")
    return report.best_set
