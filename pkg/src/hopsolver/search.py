"""Backtracking search for starter 2-factors.

The search rebuilds, at desk scale, the kind of computer-assisted results
the shipped fixtures came from: given n, a cycle type and a starter kind,
it either produces a record that passes the full verification chain
(condition check + expansion + factorization verification), reports the
space exhausted, or gives up on budget.

Orbit exclusivity is the dominant constraint and the backbone of the
pruning: a valid one-starter uses each of the n two-fold orbits exactly
once, a valid two-starter pair uses each of the 2n four-fold orbits
exactly once, and a valid three-starter uses F1 to cover the two short
orbits of difference (n-1)/2 plus n-2 long orbits (its derived partner F2
re-covers the same orbits shifted, spending the merged black orbit of
difference (n-1)/2 on the replacement 2-cycle), leaving exactly n long
orbits for F3.  Every edge placed therefore claims a fresh orbit, and the
used-orbit set is shared across the factors of one candidate.

Symmetry reduction (the completeness argument for "exhausted"): rotating
a solution by rho gives another solution, so the search only enumerates
canonical representatives.  For one- and two-starter searches the cycle
through the fixed vertex x_infinity is built first, starting at
x_infinity with its first finite vertex pinned to 0 - every rotation
class contains such a representative (rotate the solution so that a
neighbour of x_infinity becomes 0).  A three-starter F1 must contain the
pink+blue 2-cycle of difference (n-1)/2 (the derivation of F2 replaces
its rotated image), and its vertex pair can be rotated onto
{0, (n-1)/2}, so that 2-cycle is placed outright.  Remaining cycles
always start at the smallest vertex they contain, and tours of length
>= 3 are kept only with second vertex smaller than last, so each cycle
edge set is built once.  Within a rotation class at most two canonical
representatives exist (the two tour directions around x_infinity, or the
residual half-turn stabiliser of the special pair), a harmless
duplication for an existence search.

Three-starter searches only the (F1, F3) space with F2 derived by
rotation, mirroring how the shipped records are stored; "exhausted" for
kind three is relative to that space.

Every candidate that completes the backtracking is still hard-gated
through the full verifier chain before being reported Found; a candidate
failing the gate (which the pruning arguments say cannot happen) is
skipped, never returned.
"""

import random
import time
from collections import Counter
from typing import Callable, NamedTuple

from .expand import (
    ReconstructionError,
    VerificationFailed,
    expand_record,
    verify_record,
)
from .format import StarterRecord
from .model import (
    ARC,
    FOUR_FOLD,
    TWO_FOLD,
    BLACK,
    PINK,
    Cycle,
    Edge,
    OrbitTable,
    TwoFactor,
    arc,
    black,
    blue,
    pink,
)
from .verify import verify_hop_factorization
from .verify import _pair_allowed  # local colour condition, shared logic


class SearchBudget(NamedTuple):
    max_nodes: int = 10**8
    max_seconds: float = 300.0
    random_seed: int | None = None


class SearchStats(NamedTuple):
    nodes: int
    seconds: float


FOUND = "found"
EXHAUSTED = "exhausted"
BUDGET = "budget"


class SearchOutcome(NamedTuple):
    status: str  # FOUND / EXHAUSTED / BUDGET
    record: StarterRecord | None
    stats: SearchStats


class _OutOfBudget(Exception):
    pass


class _Phase(NamedTuple):
    lengths: tuple[int, ...]   # cycle lengths still to build, any order
    palette: str               # "two" (pink/black) or "four" (pink/blue/arcs)
    anchor: str                # "infinity" | "special" | "plain"


class _Engine:
    """Shared state for one search: the orbit table, the used-orbit set
    spanning all phases, node/time accounting and the optional tie
    shuffler."""

    def __init__(self, n: int, fold: int, budget: SearchBudget):
        self.n = n
        self.table = OrbitTable(n, fold)
        self.used_orbits: set[int] = set()
        self.budget = budget
        self.nodes = 0
        self.t0 = time.monotonic()
        self.rng = (random.Random(budget.random_seed)
                    if budget.random_seed is not None else None)
        self.done: list[TwoFactor] = []

    # -- bookkeeping ------------------------------------------------------

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfBudget
        if self.nodes % 1024 == 0 and self.elapsed() > self.budget.max_seconds:
            raise _OutOfBudget

    def elapsed(self) -> float:
        return time.monotonic() - self.t0

    def _maybe_shuffle(self, items: list) -> list:
        if self.rng is not None:
            self.rng.shuffle(items)
        return items

    # -- candidate edges --------------------------------------------------

    def _edge_choices(self, v: int, w: int, palette: str) -> list[Edge]:
        if palette == "two":
            return [pink(v, w), black(v, w)]
        return [pink(v, w), blue(v, w), arc(v, w), arc(w, v)]

    def _usable(self, e: Edge) -> bool:
        return self.table.index[e] not in self.used_orbits

    def _two_cycle_choices(self, v: int, w: int,
                           palette: str) -> list[tuple[Edge, Edge]]:
        """Edge pairs forming a legal 2-cycle on {v, w}: pink+black in the
        two-fold graph; pink+blue or two opposite arcs in the four-fold
        graph.  Pairs claiming one orbit twice are dropped here."""
        if palette == "two":
            pairs = [(pink(v, w), black(v, w))]
        else:
            pairs = [(pink(v, w), blue(v, w)), (arc(v, w), arc(w, v))]
        out = []
        for a, b in pairs:
            ia, ib = self.table.index[a], self.table.index[b]
            if ia != ib and self._usable(a) and self._usable(b):
                out.append((a, b))
        return out

    # -- search driver ----------------------------------------------------

    def run(self, phases: list[_Phase],
            accept: Callable[[list[TwoFactor]], bool]) -> str:
        """Backtrack over all phases; `accept` sees each completed
        candidate and returns True to stop.  Returns FOUND/EXHAUSTED, or
        raises _OutOfBudget."""
        if self._phase(phases, 0, accept):
            return FOUND
        return EXHAUSTED

    def _phase(self, phases, pi, accept) -> bool:
        if pi == len(phases):
            return accept(self.done)
        ph = phases[pi]
        state = _PhaseState(self, ph, phases, pi, accept)
        return state.start()


class _PhaseState:
    """Backtracking through the cycles of one factor."""

    def __init__(self, eng: _Engine, ph: _Phase, phases, pi, accept):
        self.eng = eng
        self.ph = ph
        self.phases = phases
        self.pi = pi
        self.accept = accept
        self.unused: set[int] = set(range(eng.n))
        self.remaining = Counter(ph.lengths)
        self.cycles: list[Cycle] = []

    def start(self) -> bool:
        if self.ph.anchor == "special":
            return self._place_special()
        return self._next_cycle(first=True)

    # -- anchored openings ------------------------------------------------

    def _place_special(self) -> bool:
        n = self.eng.n
        k = (n - 1) // 2
        if self.remaining[2] == 0:
            return False  # no 2-cycle slot: nothing in this search space
        pair = [(pink(0, k), blue(0, k))]
        special_black = self.eng.table.index[arc(0, k)]
        for a, b in pair:
            ia, ib = self.eng.table.index[a], self.eng.table.index[b]
            # reserve the merged black orbit for the derived factor's
            # replacement 2-cycle as well
            self.eng.used_orbits.update((ia, ib, special_black))
            self.unused.difference_update((0, k))
            self.remaining[2] -= 1
            self.cycles.append(Cycle((0, k), (a, b)))
            if self._next_cycle(first=False):
                return True
            self.cycles.pop()
            self.remaining[2] += 1
            self.unused.update((0, k))
            self.eng.used_orbits.difference_update((ia, ib, special_black))
        return False

    # -- plain cycle loop -------------------------------------------------

    def _next_cycle(self, first: bool) -> bool:
        if not sum(self.remaining.values()):
            return self._finish_phase()
        infinity_anchor = first and self.ph.anchor == "infinity"
        v0 = self.eng.n - 1 if infinity_anchor else min(self.unused)
        lengths = self.eng._maybe_shuffle(
            sorted((m for m, c in self.remaining.items() if c), reverse=True))
        for m in lengths:
            self.remaining[m] -= 1
            self.unused.discard(v0)
            if m == 2:
                if self._close_two_cycle(v0, infinity_anchor):
                    return True
            elif self._extend([v0], [], m, infinity_anchor):
                return True
            self.unused.add(v0)
            self.remaining[m] += 1
        return False

    def _finish_phase(self) -> bool:
        factor = TwoFactor(self.eng.n, tuple(self.cycles))
        self.eng.done.append(factor)
        try:
            if self.eng._phase(self.phases, self.pi + 1, self.accept):
                return True
        finally:
            self.eng.done.pop()
        return False

    def _close_two_cycle(self, v0: int, infinity_anchor: bool) -> bool:
        eng = self.eng
        partners = [0] if infinity_anchor else self.unused
        cands = []
        for w in partners:
            if w not in self.unused:
                continue
            for pairing in eng._two_cycle_choices(v0, w, self.ph.palette):
                cands.append((w, pairing))
        cands.sort(key=lambda t: (t[0], t[1]))
        eng._maybe_shuffle(cands)
        for w, (a, b) in cands:
            eng._tick()
            ia, ib = eng.table.index[a], eng.table.index[b]
            eng.used_orbits.update((ia, ib))
            self.unused.discard(w)
            self.cycles.append(Cycle((v0, w), (a, b)))
            if self._next_cycle(first=False):
                return True
            self.cycles.pop()
            self.unused.add(w)
            eng.used_orbits.difference_update((ia, ib))
        return False

    def _extend(self, tour: list[int], edges: list[Edge], m: int,
                infinity_anchor: bool) -> bool:
        """Grow a tour of target length m >= 3 from its last vertex; close
        it when full.  The local colour condition (four palette) is
        enforced edge-by-edge; the pink-parity condition (two palette) at
        closure."""
        eng = self.eng
        v = tour[-1]
        if len(tour) == m:
            v0 = tour[0]
            if tour[1] > tour[-1]:
                return False  # the reversed tour builds this edge set
            ok = False
            for e in self._legal(v, v0, edges[-1] if edges else None):
                if not self._closure_ok(e, tour, edges):
                    continue
                eng._tick()
                i = eng.table.index[e]
                eng.used_orbits.add(i)
                self.cycles.append(Cycle(tuple(tour), tuple(edges) + (e,)))
                if self._next_cycle(first=False):
                    ok = True
                self.cycles.pop()
                eng.used_orbits.discard(i)
                if ok:
                    return True
            return False
        nxts = sorted(self.unused)
        if infinity_anchor and len(tour) == 1:
            nxts = [0] if 0 in self.unused else []
        eng._maybe_shuffle(nxts)
        for w in nxts:
            for e in self._legal(v, w, edges[-1] if edges else None):
                eng._tick()
                i = eng.table.index[e]
                eng.used_orbits.add(i)
                self.unused.discard(w)
                tour.append(w)
                edges.append(e)
                if self._extend(tour, edges, m, infinity_anchor):
                    return True
                edges.pop()
                tour.pop()
                self.unused.add(w)
                eng.used_orbits.discard(i)
        return False

    def _legal(self, v: int, w: int, prev: Edge | None) -> list[Edge]:
        """Candidate edges from v to w given the edge that arrived at v
        (None at a tour start)."""
        out = []
        for e in self.eng._edge_choices(v, w, self.ph.palette):
            if not self.eng._usable(e):
                continue
            if (self.ph.palette == "four" and prev is not None
                    and not _pair_allowed(prev, e, v)):
                continue
            out.append(e)
        return out

    def _closure_ok(self, e: Edge, tour: list[int],
                    edges: list[Edge]) -> bool:
        if self.ph.palette == "four":
            return _pair_allowed(e, edges[0], tour[0])
        pinks = sum(1 for x in edges if x.kind == PINK)
        pinks += e.kind == PINK
        return pinks % 2 == 0


# ------------------------------------------------------------- front door --

def _gate(record: StarterRecord) -> bool:
    """Full verification chain; a candidate only counts if everything
    holds (the searched space should make this always true)."""
    if verify_record(record):
        return False
    try:
        d = expand_record(record)
    except (VerificationFailed, ReconstructionError, ValueError):
        return False
    return not verify_hop_factorization(d)


def search_starter(n: int, cycle_type, kind: str,
                   budget: SearchBudget = SearchBudget()) -> SearchOutcome:
    """Look for a starter record of the given kind for HOP type
    cycle_type at this n.  Deterministic for a fixed budget.random_seed
    (and for seed None)."""
    parts = tuple(sorted(cycle_type, reverse=True))
    if sum(parts) != n or any(p < 2 for p in parts):
        raise ValueError(f"{list(parts)} is not a partition of {n} into "
                         "parts >= 2")
    if kind not in ("one", "two", "three"):
        raise ValueError(f"unknown kind {kind!r}")
    if (n % 2 == 0) != (kind in ("one", "two")):
        parity = "even" if kind in ("one", "two") else "odd"
        raise ValueError(f"kind={kind} requires {parity} n, got n={n}")

    if kind == "one":
        fold, phases = TWO_FOLD, [_Phase(parts, "two", "infinity")]
    elif kind == "two":
        fold, phases = FOUR_FOLD, [_Phase(parts, "four", "infinity"),
                                   _Phase(parts, "four", "plain")]
    else:
        fold, phases = FOUR_FOLD, [_Phase(parts, "four", "special"),
                                   _Phase(parts, "four", "plain")]

    eng = _Engine(n, fold, budget)
    hit: list[StarterRecord] = []

    def accept(factors: list[TwoFactor]) -> bool:
        record = StarterRecord(n, parts, kind, tuple(factors))
        if _gate(record):
            hit.append(record)
            return True
        return False

    try:
        status = eng.run(phases, accept)
    except _OutOfBudget:
        return SearchOutcome(BUDGET, None,
                             SearchStats(eng.nodes, eng.elapsed()))
    return SearchOutcome(status, hit[0] if hit else None,
                         SearchStats(eng.nodes, eng.elapsed()))


def search_all(n: int, budget: SearchBudget = SearchBudget()
               ) -> dict[tuple[int, ...], SearchOutcome]:
    """Run search_starter for every cycle type of n the catalog marks as
    needing a starter, with the catalog's suggested kind (for even n: one
    starter first, then the two-starter fallback if that space is
    exhausted)."""
    from .catalog import NEEDS_STARTER, classify, cycle_types

    out: dict[tuple[int, ...], SearchOutcome] = {}
    for parts in cycle_types(n):
        cov = classify(parts, n)
        if cov.category != NEEDS_STARTER:
            continue
        if n % 2:
            out[parts] = search_starter(n, parts, "three", budget)
        else:
            first = search_starter(n, parts, "one", budget)
            if first.status == EXHAUSTED:
                second = search_starter(n, parts, "two", budget)
                out[parts] = second
            else:
                out[parts] = first
    return out
