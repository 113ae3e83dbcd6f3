"""Expand starter 2-factors into full factorizations, and lift those to
seating schedules.

A starter record compresses a factorization of the four-fold graph into
one, two, or three representative 2-factors; the expansion applies the
rotation rho and (for the one-starter shortcut) reconstructs the
coloured/oriented pair of factors from a single pink/black factor.  The
reconstruction steps (one_to_two, lift) are not pinned down by the
condition checkers alone, so both are hard-gated: their output is run
through the independent verifiers and a failure raises, it is never
returned silently.

Factor bookkeeping for the three-starter expansion: F1 (which contains
the distinguished pink+blue 2-cycle of difference (n-1)/2) and the
derived F2 are each rotated over half the rotation orders, F3 over all of
them:

    { rho^i F1, rho^i F2 : 0 <= i <= (n-3)/2 }  u  { rho^i F3 : i in Z_{n-1} }

which yields 2(n-1)/2 + (n-1) = 2n-2 factors, as does the two-starter
expansion { rho^i F1, rho^i F2 : i in Z_{n-1} }.
"""

from typing import NamedTuple

from .format import StarterRecord
from .model import (
    ARC,
    BLACK,
    BLUE,
    PINK,
    Cycle,
    Edge,
    TwoFactor,
    arc,
    blue,
    difference,
    pink,
    rotate_factor,
)
from .verify import (
    Factorization,
    Matching,
    SeatingSolution,
    Violation,
    check_a,
    check_d,
    check_e,
    render_report,
    verify_alternating_factorization,
    verify_hop_factorization,
)


class ReconstructionError(RuntimeError):
    """A gated construction produced output its verifier rejected."""


class VerificationFailed(ValueError):
    """A record failed its condition check; carries the violation list."""

    def __init__(self, record_id: str, violations: list[Violation]):
        super().__init__(render_report(record_id, violations))
        self.record_id = record_id
        self.violations = violations


# ---------------------------------------------------------------- derive --

def _special_2cycle_indices(f1: TwoFactor, n: int) -> list[int]:
    k = (n - 1) // 2
    out = []
    for ci, c in enumerate(f1.cycles):
        if (len(c.vertices) == 2
                and sorted(e.kind for e in c.edges) == [PINK, BLUE]
                and all(difference(e.u, e.v, n) == k for e in c.edges)):
            out.append(ci)
    return out


def derive_f2(f1: TwoFactor, n: int) -> TwoFactor:
    """The second three-starter factor: rotate F1 by half a turn, then
    swap the (rotation-invariant) pink+blue 2-cycle of difference (n-1)/2
    for the directed black 2-cycle on the same pair of vertices."""
    if n % 2 == 0:
        raise ValueError(f"derive_f2 requires odd n, got {n}")
    k = (n - 1) // 2
    rotated = rotate_factor(f1, k)
    hits = _special_2cycle_indices(rotated, n)
    if not hits:
        raise ValueError("F1 has no pink+blue 2-cycle of difference "
                         f"{k} to replace")
    if len(hits) > 1:
        raise ValueError("F1 has several pink+blue 2-cycles of difference "
                         f"{k}; the replacement is ambiguous")
    cycles = list(rotated.cycles)
    u, v = cycles[hits[0]].vertices
    cycles[hits[0]] = Cycle((u, v), (arc(u, v), arc(v, u)))
    return TwoFactor(n, tuple(cycles))


# ------------------------------------------------------------ one -> two --

def _orient_cycle(c: Cycle, n: int) -> Cycle:
    """Recolour/orient one cycle of a checked one-starter factor:
    pink edges alternate pink/blue along the tour, and each black run is
    directed from the pink edge before it to the blue edge after it (the
    only orientation the local colour condition admits).  All-black cycles
    are directed along the tour.  The tour is canonicalised (start at the
    lowest vertex, towards its lower neighbour) so the phase choice is
    deterministic."""
    m = len(c.vertices)
    # canonical tour
    start = c.vertices.index(min(c.vertices))
    before = c.vertices[start - 1]
    after = c.vertices[(start + 1) % m]
    verts = [c.vertices[(start + i) % m] for i in range(m)]
    edges = [c.edges[(start + i) % m] for i in range(m)]
    if before < after:  # walk the other way round
        verts = [verts[0]] + verts[1:][::-1]
        edges = edges[::-1]

    pink_at = [i for i, e in enumerate(edges) if e.kind == PINK]
    new_edges: list[Edge] = list(edges)
    if not pink_at:
        for i in range(m):
            new_edges[i] = arc(verts[i], verts[(i + 1) % m])
        return Cycle(tuple(verts), tuple(new_edges))
    # alternate the coloured edges, first one pink
    for j, i in enumerate(pink_at):
        a, b = edges[i].u, edges[i].v
        new_edges[i] = pink(a, b) if j % 2 == 0 else blue(a, b)
    # each black run inherits its direction from the colour before it
    for j, i in enumerate(pink_at):
        run_start = i + 1
        run_end = pink_at[(j + 1) % len(pink_at)]  # exclusive
        forward = j % 2 == 0  # run follows a pink edge
        t = run_start
        while t % m != run_end % m:
            a, b = verts[t % m], verts[(t + 1) % m]
            new_edges[t % m] = arc(a, b) if forward else arc(b, a)
            t += 1
    return Cycle(tuple(verts), tuple(new_edges))


def conjugate_factor(f: TwoFactor) -> TwoFactor:
    """Swap pink and blue and reverse every arc.  This preserves the
    local colour condition, so it sends valid factors to valid factors."""
    def flip(e: Edge) -> Edge:
        if e.kind == PINK:
            return Edge(e.u, e.v, BLUE)
        if e.kind == BLUE:
            return Edge(e.u, e.v, PINK)
        if e.kind == ARC:
            return Edge(e.v, e.u, ARC)
        return e
    return TwoFactor(f.n, tuple(
        Cycle(c.vertices, tuple(flip(e) for e in c.edges))
        for c in f.cycles))


def one_to_two(f: TwoFactor, n: int) -> tuple[TwoFactor, TwoFactor]:
    """Reconstruct a two-starter pair from a one-starter factor.

    Per cycle: the even count of pink edges alternates pink/blue, black
    runs are oriented between them, all-black cycles become directed
    cycles, and the pink+black 2-cycles become a pink+blue 2-cycle in F1
    with the directed black 2-cycle going to F2.  F2 is the conjugate of
    F1 on the remaining cycles.  The result is hard-gated by the
    two-starter checker."""
    violations = check_a(f, n)
    if violations:
        raise VerificationFailed("one_to_two input", violations)
    f1_cycles: list[Cycle] = []
    f2_cycles: list[Cycle] = []
    for c in f.cycles:
        if len(c.vertices) == 2:
            # one pink + one undirected black parallel edge
            u, v = c.vertices
            f1_cycles.append(Cycle((u, v), (pink(u, v), blue(u, v))))
            f2_cycles.append(Cycle((u, v), (arc(u, v), arc(v, u))))
        else:
            oriented = _orient_cycle(c, n)
            f1_cycles.append(oriented)
            f2_cycles.append(conjugate_factor(
                TwoFactor(n, (oriented,))).cycles[0])
    f1 = TwoFactor(n, tuple(f1_cycles))
    f2 = TwoFactor(n, tuple(f2_cycles))
    gate = check_d(f1, f2, n)
    if gate:
        raise ReconstructionError(
            "one_to_two produced a pair the two-starter checker rejects:\n"
            + render_report("one_to_two output", gate))
    return f1, f2


# ------------------------------------------------------------- expansion --

def expand_two(f1: TwoFactor, f2: TwoFactor, n: int) -> Factorization:
    factors = []
    for i in range(n - 1):
        factors.append(rotate_factor(f1, i))
        factors.append(rotate_factor(f2, i))
    return Factorization(n, f1.cycle_type(), tuple(factors))


def expand_three(f1: TwoFactor, f2: TwoFactor, f3: TwoFactor,
                 n: int) -> Factorization:
    factors = []
    for i in range((n - 1) // 2):
        factors.append(rotate_factor(f1, i))
        factors.append(rotate_factor(f2, i))
    for i in range(n - 1):
        factors.append(rotate_factor(f3, i))
    return Factorization(n, f1.cycle_type(), tuple(factors))


def verify_record(record: StarterRecord) -> list[Violation]:
    """Run the condition check matching the record's kind (deriving F2
    first for three-starter records)."""
    if record.kind == "one":
        return check_a(record.factors[0], record.n)
    if record.kind == "two":
        return check_d(record.factors[0], record.factors[1], record.n)
    f1, f3 = record.factors
    try:
        f2 = derive_f2(f1, record.n)
    except ValueError as exc:
        return [Violation("E4", "F1", str(exc))]
    return check_e(f1, f2, f3, record.n)


def expand_record(record: StarterRecord) -> Factorization:
    """Check the record, then expand it to the full list of 2n-2 factors.
    Raises VerificationFailed if the condition check rejects it."""
    violations = verify_record(record)
    if violations:
        raise VerificationFailed(record.label, violations)
    if record.kind == "one":
        f1, f2 = one_to_two(record.factors[0], record.n)
        return expand_two(f1, f2, record.n)
    if record.kind == "two":
        return expand_two(record.factors[0], record.factors[1], record.n)
    f1, f3 = record.factors
    return expand_three(f1, derive_f2(f1, record.n), f3, record.n)


# ------------------------------------------------------------------ lift --

_STANDARD, _SWAPPED = "standard", "swapped"


def _guest(x: int, e: Edge, variant: str) -> int:
    """Which guest of couple x an incident edge attaches to: pink and
    entering arcs use one spouse, blue and leaving arcs the other (the
    swapped variant exchanges the two roles)."""
    if e.kind == PINK:
        low = True
    elif e.kind == BLUE:
        low = False
    elif e.v == x:   # arc entering x
        low = True
    else:            # arc leaving x
        low = False
    if variant == _SWAPPED:
        low = not low
    return 2 * x if low else 2 * x + 1


def _lift_cycle(c: Cycle, variant: str) -> tuple[int, ...]:
    """An m-cycle becomes a 2m-tour alternating couple edges with the
    images of the coloured edges: along the tour, each edge contributes
    the guests it attaches to at its two ends, and the couple edges fill
    the gaps.  The walk visits both guests of every couple exactly once
    precisely because the local colour condition holds at every vertex."""
    m = len(c.vertices)
    tour = []
    for i in range(m):
        e = c.edges[i]
        tour.append(_guest(c.vertices[i], e, variant))
        tour.append(_guest(c.vertices[(i + 1) % m], e, variant))
    # tour reads g(e0@v0), g(e0@v1), g(e1@v1), g(e1@v2), ...: the couple
    # edges sit between positions 1-2, 3-4, ..., and (2m-1)-0.
    return tuple(tour)


def lift(d: Factorization) -> SeatingSolution:
    """Turn a verified factorization of the four-fold graph on n vertices
    into a seating schedule for n couples: couple x becomes guests
    2x/2x+1, every m-cycle becomes a 2m-cycle alternating couple edges
    with dinner-table edges.  Gated: the output must pass the alternating
    factorization verifier, else the pink/blue-swapped attachment is
    tried, else this raises."""
    pre = verify_hop_factorization(d)
    if pre:
        raise VerificationFailed("lift input", pre)
    n = d.n
    i_factor: Matching = frozenset((2 * x, 2 * x + 1) for x in range(n))
    doubled = tuple(2 * m for m in d.cycle_type)
    last_report: list[Violation] = []
    for variant in (_STANDARD, _SWAPPED):
        rounds = tuple(
            tuple(_lift_cycle(c, variant) for c in f.cycles)
            for f in d.factors)
        seating = SeatingSolution(n, i_factor, rounds, variant)
        last_report = verify_alternating_factorization(seating, doubled)
        if not last_report:
            return seating
    raise ReconstructionError(
        "lift produced schedules both attachment variants' verifier "
        "rejects:\n" + render_report("lift output", last_report))


def to_one_factorization(s: SeatingSolution) -> list[Matching]:
    """Split a seating schedule into 2n-1 perfect matchings of the guest
    graph: the couples matching first, then each round's dinner-table
    (non-couple) edges."""
    matchings = [s.i_factor]
    for rnd in s.rounds:
        edges = set()
        for cyc in rnd:
            for i in range(len(cyc)):
                a, b = cyc[i], cyc[(i + 1) % len(cyc)]
                e = (min(a, b), max(a, b))
                if e not in s.i_factor:
                    edges.add(e)
        matchings.append(frozenset(edges))
    return matchings


# -------------------------------------------------------- seating output --

