"""Coloured edges, differences, the rotation rho, and its edge orbits.

The objects here model two edge-coloured multigraphs on the vertex set
{0, 1, ..., n-1}, where the label n-1 plays the role of a distinguished
vertex x_infinity and the labels 0..n-2 live in Z_{n-1}:

* the two-fold graph: every pair of vertices carries one pink edge and one
  undirected black edge (n(n-1) edges in total);
* the four-fold graph: every pair carries one pink edge, one blue edge and
  the two opposite black arcs (2n(n-1) edges in total).

The rotation rho fixes x_infinity and sends x_i to x_{i+1 mod n-1}.  It
preserves colours and arc directions, so it acts on either edge set with
order n-1.  An edge between finite vertices u and v has *difference*
min((v-u) mod (n-1), (u-v) mod (n-1)); an edge meeting x_infinity has
difference "infinity", represented throughout by the integer n-1 (which is
safely distinguishable from finite differences, as those are at most
(n-1)//2).

Orbits of rho on the edge set are computed by closure, never inferred from
a (difference, colour) key: for odd n the black arcs of difference (n-1)/2
form a single orbit containing both orientations of every such pair, and
the pink (or blue) edges of that difference form an orbit of size (n-1)/2
rather than n-1, so the naive keying would miscount.
"""

from typing import Iterator, NamedTuple

# Edge kinds.  PINK/BLUE/BLACK are undirected (endpoints stored sorted);
# ARC is a directed black arc from .u to .v.  Undirected black occurs only
# in the two-fold graph, arcs only in the four-fold graph.
PINK = 0
BLACK = 1
BLUE = 2
ARC = 3

KIND_NAMES = {PINK: "pink", BLACK: "black", BLUE: "blue", ARC: "arc"}

# Graph kinds for orbit enumeration.
TWO_FOLD = 2
FOUR_FOLD = 4


class Edge(NamedTuple):
    u: int
    v: int
    kind: int

    def __repr__(self) -> str:
        if self.kind == ARC:
            return f"arc({self.u}->{self.v})"
        return f"{KIND_NAMES[self.kind]}({self.u},{self.v})"


def _distinct(u: int, v: int) -> None:
    if u == v:
        raise DegenerateEdgeError(f"degenerate edge at vertex {u}")


def pink(u: int, v: int) -> Edge:
    _distinct(u, v)
    return Edge(min(u, v), max(u, v), PINK)


def blue(u: int, v: int) -> Edge:
    _distinct(u, v)
    return Edge(min(u, v), max(u, v), BLUE)


def black(u: int, v: int) -> Edge:
    """Undirected black edge (two-fold graph only)."""
    _distinct(u, v)
    return Edge(min(u, v), max(u, v), BLACK)


def arc(tail: int, head: int) -> Edge:
    """Directed black arc (four-fold graph only)."""
    _distinct(tail, head)
    return Edge(tail, head, ARC)


class Cycle(NamedTuple):
    """A cycle presented as a vertex tour plus its edges: edges[i] joins
    vertices[i] to vertices[(i+1) % m].  Nothing is validated here; the
    structural checks live in the verifier so that broken cycles can still
    be represented and reported."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.vertices)


class TwoFactor(NamedTuple):
    n: int
    cycles: tuple[Cycle, ...]

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles), reverse=True))

    def edges(self) -> Iterator[Edge]:
        for c in self.cycles:
            yield from c.edges


def rotate_cycle(c: Cycle, k: int, n: int) -> Cycle:
    return Cycle(
        tuple(rotate_vertex(x, k, n) for x in c.vertices),
        tuple(rotate(e, k, n) for e in c.edges),
    )


def rotate_factor(f: TwoFactor, k: int) -> TwoFactor:
    return TwoFactor(f.n, tuple(rotate_cycle(c, k, f.n) for c in f.cycles))


class DegenerateEdgeError(ValueError):
    """Raised when the two endpoints of an edge coincide."""


def difference(u: int, v: int, n: int) -> int:
    """Difference of the pair {u, v}: n-1 for infinity edges, else the
    canonical d with 1 <= d <= (n-1)//2."""
    if u == v:
        raise DegenerateEdgeError(f"degenerate edge at vertex {u}")
    if u == n - 1 or v == n - 1:
        return n - 1
    d = (v - u) % (n - 1)
    return min(d, n - 1 - d)


def edge_difference(e: Edge, n: int) -> int:
    return difference(e.u, e.v, n)


def rotate_vertex(x: int, k: int, n: int) -> int:
    return x if x == n - 1 else (x + k) % (n - 1)


def rotate(e: Edge, k: int, n: int) -> Edge:
    """Apply rho^k to an edge.  Colour and arc direction travel with the
    endpoints, so the difference is preserved."""
    a = rotate_vertex(e.u, k, n)
    b = rotate_vertex(e.v, k, n)
    if e.kind == ARC:
        return Edge(a, b, ARC)
    return Edge(min(a, b), max(a, b), e.kind)


def all_edges(n: int, fold: int) -> Iterator[Edge]:
    """Every edge of the two-fold (fold=2) or four-fold (fold=4) graph."""
    if fold not in (TWO_FOLD, FOUR_FOLD):
        raise ValueError(f"fold must be {TWO_FOLD} or {FOUR_FOLD}, got {fold}")
    for u in range(n):
        for v in range(u + 1, n):
            yield Edge(u, v, PINK)
            if fold == TWO_FOLD:
                yield Edge(u, v, BLACK)
            else:
                yield Edge(u, v, BLUE)
                yield Edge(u, v, ARC)
                yield Edge(v, u, ARC)


def orbit_of(e: Edge, n: int) -> frozenset[Edge]:
    """The rho-orbit of an edge, by closure.  For odd n this automatically
    yields the merged orbit at difference (n-1)/2: rho^{(n-1)/2} carries
    the arc (a, a+(n-1)/2) onto its opposite arc."""
    return frozenset(rotate(e, k, n) for k in range(n - 1))


class OrbitTable:
    """The partition of an edge set into rho-orbits, with O(1) lookup.

    orbits: list of frozensets, in first-seen order over all_edges.
    index:  maps every edge to its position in `orbits`.
    """

    def __init__(self, n: int, fold: int):
        self.n = n
        self.fold = fold
        self.orbits: list[frozenset[Edge]] = []
        self.index: dict[Edge, int] = {}
        for e in all_edges(n, fold):
            if e in self.index:
                continue
            orb = orbit_of(e, n)
            i = len(self.orbits)
            self.orbits.append(orb)
            for member in orb:
                self.index[member] = i

    def __len__(self) -> int:
        return len(self.orbits)

    def orbit_id(self, e: Edge) -> int:
        return self.index[e]


def all_orbits(n: int, fold: int) -> list[frozenset[Edge]]:
    """All rho-orbits of the chosen edge set, as a partition."""
    return OrbitTable(n, fold).orbits
