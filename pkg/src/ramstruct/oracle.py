"""Brute-force ground truth: exhaustive search for spherical systems and
ramification structures on small groups.

The search is deterministic: candidates are visited in element-index order and
the first witness in that order is returned. Negative answers are produced
only after the candidate space is exhausted; running out of budget is reported
as its own outcome, never as a negative.

Exactness-preserving reductions used by the pair search:

* partner alphabet: every entry y of a partner tuple contributes its whole
  conjugate-closed cyclic set to the partner's sigma, so y is usable only if
  that set meets sigma(T1) trivially.  Since every such set contains the
  identity, usability against a prefix is the conjunction of pairwise
  compatibilities with the prefix entries, so the alphabet is maintained as a
  running AND of precomputed per-element compatibility masks.  If the usable
  alphabet fails to generate G, no partner exists for any extension of the
  current prefix, because sigma only grows along a prefix.
* generation feasibility: a prefix whose closure needs more new generators
  than there are remaining slots cannot complete to a generating tuple.
* abelian groups: products are invariant under entry permutation, so spherical
  systems are multisets; tuples are enumerated with nondecreasing indices and
  the forced last entry is required to be >= the previous one.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .bitset import iter_bits
from .errors import NotNilpotent, RamError
from .groups import FiniteGroup, prime_factorization, quotient
from .invariants import frattini, min_generators, sylow_decomposition
from .structures import GenTuple, RamStructure, _cyc_masks, validated

ORACLE_ORDER_LIMIT = 512


@dataclass(frozen=True)
class SearchBudget:
    """Bounds on a search; exceeding any bound yields a 'budget' outcome."""

    max_candidates: int = 10**12
    max_millis: Optional[int] = None
    cap: int = 16

    def __post_init__(self):
        if self.max_candidates <= 0 or self.cap <= 0:
            raise ValueError("budget fields must be positive")
        if self.max_millis is not None and self.max_millis <= 0:
            raise ValueError("budget fields must be positive")


@dataclass
class SearchStats:
    candidates: int = 0
    t1_candidates: int = 0
    partner_searches: int = 0
    exhausted: bool = True


class _BudgetStop(Exception):
    pass


class _Tracker:
    __slots__ = ("count", "limit", "deadline", "stats")

    def __init__(self, budget: SearchBudget, stats: SearchStats):
        self.count = 0
        self.limit = budget.max_candidates
        self.deadline = (
            time.monotonic() + budget.max_millis / 1000.0
            if budget.max_millis is not None
            else None
        )
        self.stats = stats

    def tick(self):
        self.count += 1
        if self.count >= self.limit:
            raise _BudgetStop
        if self.deadline is not None and not self.count & 0xFFF:
            if time.monotonic() > self.deadline:
                raise _BudgetStop


class _SearchContext:
    """Per-group tables and memoized machinery shared by all searches."""

    def __init__(self, G: FiniteGroup):
        n = G.order
        if n > ORACLE_ORDER_LIMIT:
            raise RamError(
                f"oracle search supports orders up to {ORACLE_ORDER_LIMIT}, got {n}"
            )
        self.G = G
        self.n = n
        self.full = (1 << n) - 1
        self.mul = [[G.mul(a, b) for b in range(n)] for a in range(n)]
        self.inv = [G.inv(a) for a in range(n)]
        self.cyc = _cyc_masks(G)
        self.abelian = G.is_abelian
        self.gens_for: dict[int, tuple[int, ...]] = {1: ()}
        self.ext_memo: dict[tuple[int, int], int] = {}
        self.alpha_gen_memo: dict[int, bool] = {}
        self.partner_memo: dict[tuple[int, int], Optional[tuple[int, ...]]] = {}
        self.need_memo: dict[int, int] = {}
        # compat[x]: usable partner entries once x is in the tuple, i.e. all y
        # whose conjugate cyclic set meets that of x only in the identity
        cyc = self.cyc
        self.compat = [0] * n
        for x in range(1, n):
            m = 0
            for y in range(1, n):
                if cyc[x] & cyc[y] == 1:
                    m |= 1 << y
            self.compat[x] = m
        self.all_nontrivial = self.full & ~1
        self._setup_generation_bound()

    # -- closures -------------------------------------------------------------

    def closure_from_gens(self, gens) -> int:
        mask = 1
        queue = [0]
        mul = self.mul
        while queue:
            row = mul[queue.pop()]
            for g in gens:
                t = row[g]
                if not (mask >> t) & 1:
                    mask |= 1 << t
                    queue.append(t)
        return mask

    def extend_closure(self, hmask: int, y: int) -> int:
        """Closure of <H, y> given the closed set H; memoized on (H, y)."""
        if (hmask >> y) & 1:
            return hmask
        key = (hmask, y)
        c = self.ext_memo.get(key)
        if c is None:
            gens = self.gens_for[hmask] + (y,)
            c = self.closure_from_gens(gens)
            self.ext_memo[key] = c
            self.gens_for.setdefault(c, gens)
        return c

    # -- partner alphabet ------------------------------------------------------

    def alphabet_generates(self, amask: int) -> bool:
        """Whether the usable partner entries still generate the whole group."""
        r = self.alpha_gen_memo.get(amask)
        if r is None:
            if len(self.alpha_gen_memo) > 1_000_000:
                self.alpha_gen_memo.clear()  # speed cache only; bound the memory
            r = (
                amask != 0
                and self.closure_from_gens(list(iter_bits(amask))) == self.full
            )
            self.alpha_gen_memo[amask] = r
        return r

    # -- generation-feasibility bound -------------------------------------------

    def _setup_generation_bound(self):
        """For nilpotent groups, the exact number of extra generators needed over
        a subgroup is read off the per-prime Frattini quotients; otherwise only
        the trivial bound (1 if proper) is available."""
        self._nilpotent_data = None
        if self.G.order == 1:
            return
        try:
            factors = sylow_decomposition(self.G)
        except NotNilpotent:
            return
        data = []
        for p, factor in sorted(factors.items()):
            phi = frattini(factor.group)
            qv = quotient(factor.group, phi)
            d_p = min_generators(factor.group)
            pos = {g: i for i, g in enumerate(factor.embedding)}
            img = [0] * self.n
            for x in range(self.n):
                img[x] = qv.project(pos[self._p_part(x, p)])
            data.append((p, d_p, img, qv.group))
        self._nilpotent_data = data

    def _p_part(self, x: int, p: int) -> int:
        o = self.G.order_of(x)
        pp = 1
        while o % p == 0:
            o //= p
            pp *= p
        if pp == 1:
            return 0
        return self.G.power(x, o * pow(o, -1, pp))

    def need(self, hmask: int) -> int:
        """Lower bound on how many further elements must be adjoined to the
        subgroup H before the whole group can be generated."""
        r = self.need_memo.get(hmask)
        if r is not None:
            return r
        if hmask == self.full:
            r = 0
        elif self._nilpotent_data is None:
            r = 1
        else:
            r = 0
            elems = list(iter_bits(hmask))
            for p, d_p, img, qgroup in self._nilpotent_data:
                span = qgroup.closure_mask(sorted({img[x] for x in elems}))
                rank = round(math.log(span.bit_count(), p)) if span.bit_count() > 1 else 0
                r = max(r, d_p - rank)
            r = max(r, 1 if hmask != self.full else 0)
        self.need_memo[hmask] = r
        return r

    # -- partner search ----------------------------------------------------------

    def partner(
        self, amask: int, alist: tuple[int, ...], r2: int, tracker: _Tracker
    ) -> Optional[tuple[int, ...]]:
        key = (amask, r2)
        if key in self.partner_memo:
            return self.partner_memo[key]
        tracker.stats.partner_searches += 1
        res = self._partner_dfs(amask, alist, r2, tracker)
        if len(self.partner_memo) > 500_000:
            self.partner_memo.clear()  # speed cache only; bound the memory
        self.partner_memo[key] = res
        return res

    def _partner_dfs(
        self, amask: int, alist: tuple[int, ...], r2: int, tracker: _Tracker
    ) -> Optional[tuple[int, ...]]:
        full = self.full
        inv = self.inv
        mul = self.mul
        abelian = self.abelian
        extend = self.extend_closure
        need = self.need
        tick = tracker.tick
        entries: list[int] = []

        def rec(depth: int, pi: int, hmask: int, startpos: int):
            tick()
            if need(hmask) > r2 - depth:
                return None
            if depth == r2 - 1:
                last = inv[pi]
                if last == 0 or not (amask >> last) & 1:
                    return None
                if abelian and entries and last < entries[-1]:
                    return None
                if extend(hmask, last) != full:
                    return None
                return tuple(entries) + (last,)
            row = mul[pi]
            indices = range(startpos, len(alist)) if abelian else range(len(alist))
            for i in indices:
                y = alist[i]
                entries.append(y)
                r = rec(depth + 1, row[y], extend(hmask, y), i)
                entries.pop()
                if r is not None:
                    return r
            return None

        return rec(0, 0, 1, 0)


def _context(G: FiniteGroup) -> _SearchContext:
    ctx = G._cache().get("oracle_ctx")
    if ctx is None:
        ctx = _SearchContext(G)
        G._cache()["oracle_ctx"] = ctx
    return ctx


def enumerate_spherical(G: FiniteGroup, r: int) -> Iterator[GenTuple]:
    """All spherical systems of size r, in lexicographic order of the first r-1
    entries over nontrivial elements; the last entry is forced as the inverse
    of the prefix product."""
    if r < 2:
        raise ValueError("spherical systems need size >= 2")
    ctx = _context(G)
    n, full = ctx.n, ctx.full
    mul, inv = ctx.mul, ctx.inv
    extend, need = ctx.extend_closure, ctx.need

    def rec(depth: int, pi: int, hmask: int, entries: tuple[int, ...]):
        if need(hmask) > r - depth:
            return
        if depth == r - 1:
            last = inv[pi]
            if last != 0 and extend(hmask, last) == full:
                yield GenTuple(G, entries + (last,))
            return
        row = mul[pi]
        for y in range(1, n):
            yield from rec(depth + 1, row[y], extend(hmask, y), entries + (y,))

    yield from rec(0, 0, 1, ())


def _search_rows(
    G: FiniteGroup,
    pairs: list[tuple[int, int]],
    budget: SearchBudget,
    stats: SearchStats,
) -> dict[tuple[int, int], Optional[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """Decide each (r1, r2) pair (r1 <= r2): a witness tuple pair, or None for
    proven nonexistence. Pairs left undecided on budget exhaustion are absent
    from the result and stats.exhausted is cleared."""
    ctx = _context(G)
    tracker = _Tracker(budget, stats)
    results: dict[tuple[int, int], Optional[tuple[tuple[int, ...], tuple[int, ...]]]] = {}
    rows: dict[int, set[int]] = {}
    for r1, r2 in pairs:
        if r1 > r2:
            raise ValueError("rows expect r1 <= r2")
        rows.setdefault(r1, set()).add(r2)

    try:
        for r1 in sorted(rows):
            undecided = rows[r1]
            _dfs_t1_row(ctx, r1, undecided, results, tracker)
            for r2 in sorted(undecided):
                results[(r1, r2)] = None
            undecided.clear()
    except _BudgetStop:
        stats.exhausted = False
    stats.candidates = tracker.count
    return results


def _dfs_t1_row(ctx: _SearchContext, r1, undecided, results, tracker):
    n, full = ctx.n, ctx.full
    mul, inv, compat = ctx.mul, ctx.inv, ctx.compat
    abelian = ctx.abelian
    extend, need, agen = ctx.extend_closure, ctx.need, ctx.alphabet_generates
    tick = tracker.tick
    entries: list[int] = []

    def rec(depth: int, pi: int, hmask: int, amask: int, minidx: int):
        tick()
        if not agen(amask):
            return
        if need(hmask) > r1 - depth:
            return
        if depth == r1 - 1:
            last = inv[pi]
            if last == 0:
                return
            if abelian and entries and last < entries[-1]:
                return
            if extend(hmask, last) != full:
                return
            amask_full = amask & compat[last]
            if not agen(amask_full):
                return
            tracker.stats.t1_candidates += 1
            t1 = tuple(entries) + (last,)
            alist = tuple(iter_bits(amask_full))
            for r2 in sorted(undecided):
                t2 = ctx.partner(amask_full, alist, r2, tracker)
                if t2 is not None:
                    results[(r1, r2)] = (t1, t2)
                    undecided.discard(r2)
            return
        row = mul[pi]
        for y in range(minidx if abelian else 1, n):
            entries.append(y)
            rec(depth + 1, row[y], extend(hmask, y), amask & compat[y], y)
            entries.pop()
            if not undecided:
                return

    if undecided:
        rec(0, 0, 1, ctx.all_nontrivial, 1)


@dataclass
class FindOutcome:
    """Tri-state search result: found / none exists / budget exhausted."""

    status: str  # "found" | "none" | "budget"
    structure: Optional[RamStructure] = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def found(self) -> bool:
        return self.status == "found"


def find_structure(
    G: FiniteGroup, r1: int, r2: int, budget: Optional[SearchBudget] = None
) -> FindOutcome:
    """First ramification structure of size (r1, r2) in deterministic order, or
    proof of nonexistence, or budget exhaustion."""
    if r1 < 3 or r2 < 3:
        raise ValueError("structure sizes must be >= 3")
    budget = budget or SearchBudget()
    if max(r1, r2) > budget.cap:
        raise ValueError(f"requested size exceeds budget cap {budget.cap}")
    stats = SearchStats()
    a, b = min(r1, r2), max(r1, r2)
    res = _search_rows(G, [(a, b)], budget, stats)
    if (a, b) not in res:
        return FindOutcome("budget", None, stats)
    witness = res[(a, b)]
    if witness is None:
        return FindOutcome("none", None, stats)
    t1, t2 = witness
    structure = validated(G, t1, t2)
    if (r1, r2) != (a, b):
        structure = structure.swapped()
    return FindOutcome("found", structure, stats)


@dataclass
class SizeSetResult:
    pairs: set[tuple[int, int]]  # canonical r1 <= r2
    exhaustive: bool
    stats: SearchStats
    witnesses: dict[tuple[int, int], RamStructure] = field(default_factory=dict)

    def membership(self, r1: int, r2: int) -> bool:
        return (min(r1, r2), max(r1, r2)) in self.pairs


def size_set_up_to(
    G: FiniteGroup, cap: int, budget: Optional[SearchBudget] = None
) -> SizeSetResult:
    """All admissible size pairs with 3 <= r1 <= r2 <= cap; symmetric closure is
    implied since swapping the two systems swaps the size components."""
    if cap < 3:
        raise ValueError("cap must be >= 3")
    budget = budget or SearchBudget(cap=cap)
    stats = SearchStats()
    pairs = [(r1, r2) for r1 in range(3, cap + 1) for r2 in range(r1, cap + 1)]
    res = _search_rows(G, pairs, budget, stats)
    found = set()
    witnesses = {}
    for pair, witness in res.items():
        if witness is not None:
            found.add(pair)
            witnesses[pair] = validated(G, *witness)
    return SizeSetResult(found, stats.exhausted and len(res) == len(pairs), stats, witnesses)


def enumerate_structures(
    G: FiniteGroup,
    r1: int,
    r2: int,
    limit: int,
    budget: Optional[SearchBudget] = None,
) -> tuple[list[RamStructure], SearchStats]:
    """Up to `limit` distinct ramification structures of size (r1, r2), in
    deterministic search order (capped enumeration; no partner memoization)."""
    if r1 < 3 or r2 < 3:
        raise ValueError("structure sizes must be >= 3")
    if limit < 1:
        raise ValueError("limit must be >= 1")
    budget = budget or SearchBudget()
    stats = SearchStats()
    tracker = _Tracker(budget, stats)
    a, b = min(r1, r2), max(r1, r2)
    ctx = _context(G)
    out: list[RamStructure] = []
    n, full = ctx.n, ctx.full
    mul, inv, compat = ctx.mul, ctx.inv, ctx.compat
    abelian = ctx.abelian
    extend, need, agen = ctx.extend_closure, ctx.need, ctx.alphabet_generates
    entries: list[int] = []

    def collect_partners(amask, alist, t1):
        sub: list[int] = []

        def rec(depth, pi, hmask, startpos):
            tracker.tick()
            if need(hmask) > b - depth:
                return False
            if depth == b - 1:
                last = inv[pi]
                if last == 0 or not (amask >> last) & 1:
                    return False
                if abelian and sub and last < sub[-1]:
                    return False
                if extend(hmask, last) != full:
                    return False
                structure = validated(G, t1, tuple(sub) + (last,))
                if (r1, r2) != (a, b):
                    structure = structure.swapped()
                out.append(structure)
                return len(out) >= limit
            row = mul[pi]
            indices = range(startpos, len(alist)) if abelian else range(len(alist))
            for i in indices:
                y = alist[i]
                sub.append(y)
                done = rec(depth + 1, row[y], extend(hmask, y), i)
                sub.pop()
                if done:
                    return True
            return False

        return rec(0, 0, 1, 0)

    def rec1(depth, pi, hmask, amask, minidx):
        tracker.tick()
        if not agen(amask):
            return False
        if need(hmask) > a - depth:
            return False
        if depth == a - 1:
            last = inv[pi]
            if last == 0:
                return False
            if abelian and entries and last < entries[-1]:
                return False
            if extend(hmask, last) != full:
                return False
            amask_full = amask & compat[last]
            if not agen(amask_full):
                return False
            stats.t1_candidates += 1
            alist = tuple(iter_bits(amask_full))
            return collect_partners(amask_full, alist, tuple(entries) + (last,))
        row = mul[pi]
        for y in range(minidx if abelian else 1, n):
            entries.append(y)
            done = rec1(depth + 1, row[y], extend(hmask, y), amask & compat[y], y)
            entries.pop()
            if done:
                return True
        return False

    try:
        rec1(0, 0, 1, ctx.all_nontrivial, 1)
    except _BudgetStop:
        stats.exhausted = False
    stats.candidates = tracker.count
    return out, stats


def spherical_count(G: FiniteGroup, r: int) -> int:
    """Number of spherical systems of size r (independent-check helper)."""
    return sum(1 for _ in enumerate_spherical(G, r))


def ordered_generating_pairs(G: FiniteGroup) -> int:
    """Count of ordered pairs (g1, g2) with <g1, g2> = G, by direct enumeration."""
    full = (1 << G.order) - 1
    count = 0
    for g1 in range(1, G.order):
        for g2 in range(1, G.order):
            if G.closure_mask((g1, g2)) == full:
                count += 1
    return count


def prime_of_order(n: int) -> Optional[int]:
    fact = prime_factorization(n)
    return next(iter(fact)) if len(fact) == 1 else None
