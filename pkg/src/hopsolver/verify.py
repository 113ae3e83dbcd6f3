"""Condition checkers and full-factorization verifiers.

Everything here is exact and accumulating: a checker walks its whole input
and returns a list of Violation records (empty list = pass), so a damaged
record is diagnosed in a single pass rather than failing fast on the first
problem.  Violations render both as human-readable text and as the
machine-readable line format

    FAIL <record-id> <clause> <locus>

Clause vocabulary: "structure" (malformed cycles / not a spanning set of
disjoint cycles), "graph" (an edge that does not belong to the host
multigraph), "C" (the local colour condition), "A1"/"A2" (one-starter
conditions), "disjoint"/"D2" (two-starter), "E2"/"E3"/"E4" (three-starter),
"count"/"type"/"coverage" (factorization level), and
"matching"/"partition"/"union" (1-factorization level) plus
"alternation"/"multiplicity" (seating level).

The local colour condition on a cycle: at every vertex the two incident
cycle edges must form one of the allowed pairs
  * one pink and one blue edge,
  * two black arcs, one entering and one leaving the vertex,
  * a blue edge and a black arc entering the vertex,
  * a pink edge and a black arc leaving the vertex.
Around a cycle this forces the coloured edges to alternate pink/blue and
every black run to be uniformly directed from its pink end to its blue
end; a 2-cycle passes only as {pink, blue} or as two opposite arcs.
"""

from collections import Counter
from typing import Iterable, NamedTuple

from .model import (
    ARC,
    BLACK,
    BLUE,
    FOUR_FOLD,
    PINK,
    TWO_FOLD,
    Cycle,
    Edge,
    OrbitTable,
    TwoFactor,
    all_edges,
    difference,
    rotate,
)


class Violation(NamedTuple):
    clause: str
    locus: str
    detail: str = ""

    def __str__(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"{self.clause} at {self.locus}{tail}"


def porcelain_lines(record_id: str, violations: list[Violation]) -> list[str]:
    return [f"FAIL {record_id} {v.clause} {v.locus}" for v in violations]


def render_report(record_id: str, violations: list[Violation]) -> str:
    if not violations:
        return f"{record_id}: ok"
    lines = [f"{record_id}: {len(violations)} violation(s)"]
    lines += [f"  - {v}" for v in violations]
    return "\n".join(lines)


# ------------------------------------------------------------- structure --

def check_structure(f: TwoFactor) -> list[Violation]:
    """Is f a genuine 2-factor: well-formed, vertex-disjoint cycles
    spanning all n vertices, with sane edge/endpoint agreement?"""
    out = []
    seen: dict[int, int] = {}
    for ci, c in enumerate(f.cycles):
        m = len(c.vertices)
        locus = f"cycle{ci}"
        if m < 2:
            out.append(Violation("structure", locus, "cycle shorter than 2"))
            continue
        if len(c.edges) != m:
            out.append(Violation("structure", locus,
                                 f"{m} vertices but {len(c.edges)} edges"))
            continue
        if len(set(c.vertices)) != m:
            out.append(Violation("structure", locus, "repeated vertex"))
        for i, e in enumerate(c.edges):
            a, b = c.vertices[i], c.vertices[(i + 1) % m]
            if {e.u, e.v} != {a, b}:
                out.append(Violation(
                    "structure", f"{locus}.edge{i}",
                    f"{e!r} does not join {a} and {b}"))
            if e.u == e.v:
                out.append(Violation("structure", f"{locus}.edge{i}",
                                     "degenerate edge"))
            if e.kind != ARC and e.u > e.v:
                out.append(Violation("structure", f"{locus}.edge{i}",
                                     "unnormalised undirected edge"))
        if m == 2 and len(c.edges) == 2 and c.edges[0] == c.edges[1]:
            out.append(Violation("structure", locus,
                                 "2-cycle with two identical edges"))
        for v in c.vertices:
            if not (0 <= v < f.n):
                out.append(Violation("structure", f"{locus}.vertex{v}",
                                     "vertex out of range"))
            elif v in seen:
                out.append(Violation(
                    "structure", f"{locus}.vertex{v}",
                    f"also in cycle{seen[v]}"))
            else:
                seen[v] = ci
    missing = set(range(f.n)) - set(seen)
    if missing:
        out.append(Violation("structure", f"vertex{min(missing)}",
                             "not covered by any cycle"))
    return out


def _edges_in_graph(f: TwoFactor, table: OrbitTable) -> list[Violation]:
    out = []
    for ci, c in enumerate(f.cycles):
        for e in c.edges:
            if e not in table.index:
                out.append(Violation("graph", f"cycle{ci}.edge({e!r})",
                                     "edge not in the host multigraph"))
    return out


# -------------------------------------------------------- local condition --

def _pair_allowed(e_in: Edge, e_out: Edge, v: int) -> bool:
    """The two cycle edges meeting at v: e_in arrives from the previous
    vertex, e_out continues to the next."""
    kinds = (e_in.kind, e_out.kind)
    if ARC not in kinds:
        return {e_in.kind, e_out.kind} == {PINK, BLUE}
    if kinds == (ARC, ARC):
        enters = (e_in.v == v) + (e_out.v == v)
        leaves = (e_in.u == v) + (e_out.u == v)
        return enters == 1 and leaves == 1
    coloured, black = (e_in, e_out) if e_out.kind == ARC else (e_out, e_in)
    if coloured.kind == BLUE:
        return black.v == v  # arc enters the shared vertex
    if coloured.kind == PINK:
        return black.u == v  # arc leaves the shared vertex
    return False


def check_condition_c(c: Cycle) -> list[Violation]:
    """The local colour condition at every vertex of one cycle.  An
    undirected black edge has no orientation to check and is reported as a
    violation (it cannot occur in a correctly built two-/three-starter)."""
    out = []
    m = len(c.vertices)
    for i, v in enumerate(c.vertices):
        e_in = c.edges[(i - 1) % m]
        e_out = c.edges[i]
        if BLACK in (e_in.kind, e_out.kind):
            out.append(Violation("C", f"vertex{v}",
                                 "undirected black edge in oriented context"))
            continue
        if not _pair_allowed(e_in, e_out, v):
            out.append(Violation(
                "C", f"vertex{v}", f"incident pair {e_in!r}, {e_out!r}"))
    return out


def _condition_c_all(factors: Iterable[TwoFactor],
                     names: Iterable[str]) -> list[Violation]:
    out = []
    for f, name in zip(factors, names):
        for ci, c in enumerate(f.cycles):
            for v in check_condition_c(c):
                out.append(Violation(v.clause, f"{name}.cycle{ci}.{v.locus}",
                                     v.detail))
    return out


# ------------------------------------------------------------ one starter --

def check_a(f: TwoFactor, n: int) -> list[Violation]:
    """One-starter conditions over the two-fold graph: every cycle of
    length >= 3 has an even number of pink edges (A1), and the n edges of
    f hit each of the n orbits exactly once (A2)."""
    if n % 2:
        raise ValueError(f"one-starter check requires even n, got {n}")
    out = check_structure(f)
    table = OrbitTable(n, TWO_FOLD)
    out += _edges_in_graph(f, table)
    if any(v.clause == "graph" for v in out):
        return out
    for ci, c in enumerate(f.cycles):
        if len(c.vertices) >= 3:
            pinks = sum(1 for e in c.edges if e.kind == PINK)
            if pinks % 2:
                out.append(Violation("A1", f"cycle{ci}",
                                     f"{pinks} pink edges"))
    counts = Counter(table.orbit_id(e) for e in f.edges())
    for i, orb in enumerate(table.orbits):
        got = counts.get(i, 0)
        if got != 1:
            rep = min(orb)
            out.append(Violation("A2", f"orbit({rep!r})",
                                 f"covered {got} times, want 1"))
    return out


# ------------------------------------------------------------ two starter --

def check_d(f1: TwoFactor, f2: TwoFactor, n: int) -> list[Violation]:
    """Two-starter conditions over the four-fold graph: every cycle of
    both factors passes the local colour condition (D1), and the 2n edges
    jointly hit each of the 2n orbits exactly once (D2)."""
    if n % 2:
        raise ValueError(f"two-starter check requires even n, got {n}")
    out = check_structure(f1) + check_structure(f2)
    table = OrbitTable(n, FOUR_FOLD)
    out += _edges_in_graph(f1, table) + _edges_in_graph(f2, table)
    if any(v.clause == "graph" for v in out):
        return out
    out += _condition_c_all((f1, f2), ("F1", "F2"))
    shared = set(f1.edges()) & set(f2.edges())
    for e in sorted(shared):
        out.append(Violation("disjoint", f"edge({e!r})",
                             "edge in both factors"))
    counts = Counter(table.orbit_id(e) for f in (f1, f2) for e in f.edges())
    for i, orb in enumerate(table.orbits):
        got = counts.get(i, 0)
        if got != 1:
            rep = min(orb)
            out.append(Violation("D2", f"orbit({rep!r})",
                                 f"covered {got} times, want 1"))
    return out


# ---------------------------------------------------------- three starter --

def check_e(f1: TwoFactor, f2: TwoFactor, f3: TwoFactor,
            n: int) -> list[Violation]:
    """Three-starter conditions over the four-fold graph (odd n):
    pairwise edge-disjointness, the local colour condition on every cycle
    (E1), every orbit confined to F1+F2 or to F3 (E2), F1+F2 closed under
    the half-turn rotation (E3), and F1+F2 containing a pink and a blue
    edge of difference (n-1)/2 (E4)."""
    if n % 2 == 0:
        raise ValueError(f"three-starter check requires odd n, got {n}")
    out = check_structure(f1) + check_structure(f2) + check_structure(f3)
    table = OrbitTable(n, FOUR_FOLD)
    for f in (f1, f2, f3):
        out += _edges_in_graph(f, table)
    if any(v.clause == "graph" for v in out):
        return out
    out += _condition_c_all((f1, f2, f3), ("F1", "F2", "F3"))

    sets = [set(f.edges()) for f in (f1, f2, f3)]
    for (i, a), (j, b) in (((0, sets[0]), (1, sets[1])),
                           ((0, sets[0]), (2, sets[2])),
                           ((1, sets[1]), (2, sets[2]))):
        for e in sorted(a & b):
            out.append(Violation("disjoint", f"edge({e!r})",
                                 f"edge in both F{i+1} and F{j+1}"))

    half = set().union(sets[0], sets[1])
    # E2: no orbit may meet both F1+F2 and F3
    orbits_half = {table.orbit_id(e) for e in half}
    orbits_f3 = {table.orbit_id(e) for e in sets[2]}
    for i in sorted(orbits_half & orbits_f3):
        rep = min(table.orbits[i])
        out.append(Violation("E2", f"orbit({rep!r})",
                             "orbit meets both F1+F2 and F3"))
    # E3: closure of F1+F2 under the half rotation
    k = (n - 1) // 2
    for e in sorted(half):
        if rotate(e, k, n) not in half:
            out.append(Violation("E3", f"edge({e!r})",
                                 "half-rotation image not in F1+F2"))
    # E4: pink and blue of difference (n-1)/2 present in F1+F2
    for kind, name in ((PINK, "pink"), (BLUE, "blue")):
        if not any(e.kind == kind and difference(e.u, e.v, n) == k
                   for e in half):
            out.append(Violation("E4", f"difference{k}",
                                 f"no {name} edge of difference {k} "
                                 "in F1+F2"))
    return out


# ------------------------------------------------- full HOP factorization --

class Factorization(NamedTuple):
    n: int
    cycle_type: tuple[int, ...]
    factors: tuple[TwoFactor, ...]


def verify_hop_factorization(d: Factorization) -> list[Violation]:
    """Is d an honest decomposition of the four-fold graph into 2n-2
    2-factors of the declared cycle type, every cycle satisfying the local
    colour condition, with the edge multisets matching exactly (each pair
    of vertices: one pink, one blue, two opposite black arcs)?"""
    n = d.n
    out = []
    if len(d.factors) != 2 * n - 2:
        out.append(Violation("count", f"factors{len(d.factors)}",
                             f"want {2 * n - 2} factors"))
    want_type = tuple(sorted(d.cycle_type, reverse=True))
    for fi, f in enumerate(d.factors):
        for v in check_structure(f):
            out.append(Violation(v.clause, f"factor{fi}.{v.locus}", v.detail))
        got = f.cycle_type()
        if got != want_type:
            out.append(Violation("type", f"factor{fi}",
                                 f"cycle type {got}, want {want_type}"))
        for ci, c in enumerate(f.cycles):
            for v in check_condition_c(c):
                out.append(Violation(
                    v.clause, f"factor{fi}.cycle{ci}.{v.locus}", v.detail))
    counts = Counter(e for f in d.factors for e in f.edges())
    expected = Counter(all_edges(n, FOUR_FOLD))
    for e in sorted((counts - expected) + (expected - counts)):
        got, want = counts[e], expected[e]
        if got != want:
            out.append(Violation("coverage", f"edge({e!r})",
                                 f"multiplicity {got}, want {want}"))
    return out


# --------------------------------------------- 1-factorizations of K_{2n} --

Matching = frozenset  # of (a, b) tuples with a < b


def _matching_violations(m: Matching, two_n: int,
                         locus: str) -> list[Violation]:
    out = []
    touched: set[int] = set()
    for a, b in m:
        if not (0 <= a < b < two_n):
            out.append(Violation("matching", locus, f"bad edge ({a},{b})"))
        if a in touched or b in touched:
            out.append(Violation("matching", locus,
                                 f"vertex reused by ({a},{b})"))
        touched.update((a, b))
    if len(touched) != two_n:
        out.append(Violation("matching", locus,
                             f"covers {len(touched)} of {two_n} vertices"))
    return out


def verify_semi_uniform(matchings: list[Matching], two_n: int,
                        cycle_type_2x: tuple[int, ...]) -> list[Violation]:
    """Is this a 1-factorization of the complete graph on two_n vertices
    in which the first factor is special: for every other factor i, the
    union of factor 0 and factor i is a 2-factor whose cycle lengths are
    exactly cycle_type_2x?"""
    out = []
    if len(matchings) != two_n - 1:
        out.append(Violation("count", f"matchings{len(matchings)}",
                             f"want {two_n - 1}"))
    for i, m in enumerate(matchings):
        out += _matching_violations(m, two_n, f"matching{i}")
    if out:
        return out
    counts = Counter(e for m in matchings for e in m)
    for u in range(two_n):
        for v in range(u + 1, two_n):
            got = counts.get((u, v), 0)
            if got != 1:
                out.append(Violation("partition", f"edge({u},{v})",
                                     f"multiplicity {got}, want 1"))
    want = tuple(sorted(cycle_type_2x, reverse=True))
    for i in range(1, len(matchings)):
        lengths = _union_cycle_lengths(matchings[0], matchings[i], two_n)
        if lengths is None:
            out.append(Violation("union", f"matching{i}",
                                 "union with matching0 is not disjoint "
                                 "cycles"))
        elif tuple(sorted(lengths, reverse=True)) != want:
            out.append(Violation(
                "union", f"matching{i}",
                f"union cycle lengths {sorted(lengths, reverse=True)}, "
                f"want {list(want)}"))
    return out


def _union_cycle_lengths(m0: Matching, mi: Matching,
                         two_n: int) -> list[int] | None:
    """Cycle lengths of the union of two edge-disjoint perfect matchings,
    or None if the union degenerates (shared edges)."""
    if m0 & mi:
        return None
    nxt0 = {}
    nxt1 = {}
    for a, b in m0:
        nxt0[a], nxt0[b] = b, a
    for a, b in mi:
        nxt1[a], nxt1[b] = b, a
    seen = set()
    lengths = []
    for start in range(two_n):
        if start in seen:
            continue
        length = 0
        v, use0 = start, True
        while True:
            seen.add(v)
            v = (nxt0 if use0 else nxt1)[v]
            use0 = not use0
            length += 1
            if v == start and use0:
                break
        lengths.append(length)
    return lengths


# ------------------------------------------------------ seating solutions --

class SeatingSolution(NamedTuple):
    """A full dinner schedule for n couples: the couples matching (the
    I-edges) and 2n-2 rounds, each a set of cycles covering all 2n guests.
    Cycles are plain vertex tours; whether an edge is an I-edge is decided
    by membership in i_factor."""

    n_couples: int
    i_factor: Matching
    rounds: tuple[tuple[tuple[int, ...], ...], ...]
    variant: str = "standard"  # which attachment convention built this


def verify_alternating_factorization(
        s: SeatingSolution,
        cycle_type_2x: tuple[int, ...]) -> list[Violation]:
    """Do the rounds decompose the complete graph on 2n guests plus 2n-3
    extra copies of every couple edge, with every round of the declared
    doubled cycle type, and couple/non-couple edges alternating along
    every cycle?"""
    n = s.n_couples
    two_n = 2 * n
    out = _matching_violations(s.i_factor, two_n, "i_factor")
    if len(s.rounds) != 2 * n - 2:
        out.append(Violation("count", f"rounds{len(s.rounds)}",
                             f"want {2 * n - 2}"))
    if out:
        return out
    want = tuple(sorted(cycle_type_2x, reverse=True))
    edge_counts: Counter = Counter()
    for ri, rnd in enumerate(s.rounds):
        locus = f"round{ri}"
        seen: set[int] = set()
        lengths = []
        for ci, cyc in enumerate(rnd):
            lengths.append(len(cyc))
            if len(cyc) < 2 or len(set(cyc)) != len(cyc):
                out.append(Violation("structure", f"{locus}.cycle{ci}",
                                     "malformed cycle"))
                continue
            seen.update(cyc)
            for i in range(len(cyc)):
                a, b = cyc[i], cyc[(i + 1) % len(cyc)]
                if a == b:
                    out.append(Violation("structure", f"{locus}.cycle{ci}",
                                         "degenerate edge"))
                    continue
                edge_counts[(min(a, b), max(a, b))] += 1
            alternation = [(min(cyc[i], cyc[(i + 1) % len(cyc)]),
                            max(cyc[i], cyc[(i + 1) % len(cyc)]))
                           in s.i_factor for i in range(len(cyc))]
            if any(alternation[i] == alternation[(i + 1) % len(alternation)]
                   for i in range(len(alternation))):
                out.append(Violation("alternation", f"{locus}.cycle{ci}",
                                     "couple edges do not alternate"))
        if seen != set(range(two_n)):
            out.append(Violation("structure", locus,
                                 "round does not span all guests"))
        if tuple(sorted(lengths, reverse=True)) != want:
            out.append(Violation("type", locus,
                                 f"cycle lengths {sorted(lengths, reverse=True)}, "
                                 f"want {list(want)}"))
    for u in range(two_n):
        for v in range(u + 1, two_n):
            got = edge_counts.get((u, v), 0)
            want_mult = 2 * n - 2 if (u, v) in s.i_factor else 1
            if got != want_mult:
                out.append(Violation(
                    "multiplicity", f"edge({u},{v})",
                    f"multiplicity {got}, want {want_mult}"))
    return out
