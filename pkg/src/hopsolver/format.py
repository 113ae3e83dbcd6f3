"""Plain-text grammar for starter 2-factor records, plus the shipped corpus.

A starter file is line-oriented:

    # comments run to end of line; blank lines separate records
    starter n=10 type=[4,2,2,2] kind=one
    C: [6, [4, 1], 2, [4, 0], 7, [9, 1], 9, [9, 0]]
    C: [5, [2, 0], 3, [2, 1]]
    C: [4, [3, 0], 1, [3, 1]]
    C: [0, [1, 0], 8, [1, 1]]

Each `C:` line is one cycle: vertices alternate with [d, c] edge codes,
where the code after vertex v_i describes the edge from v_i to the next
vertex (the last code closes the cycle back to the first vertex).  d is
the difference of the pair (n-1 denotes infinity) and c the colour:
0 pink, 2 blue, 1 black, -1 black oriented backward.  In a one-starter
record black edges are undirected and only c in {0, 1} is legal.  In two-
and three-starter records c=1 is the forward arc (a, a+d) of the pair and
c=-1 its reverse; on infinity edges c=1 points from the finite vertex to
x_infinity; in the ambiguous case d=(n-1)/2 the arc for c=1 runs in
presentation order.

A `--` line separates the factors of a record: one-starter records have a
single factor, two-starter records list F1 then F2, three-starter records
list F1 then F3 (F2 is derived by rotation; see expand.derive_f2).

The parser validates vertex ranges, that every declared difference equals
the computed one, colour legality for the record kind, the factor count,
and that each factor's cycle lengths form exactly the declared type.
Whether the factors are genuine 2-factors (spanning, vertex-disjoint
cycles) is the verifier's business, so damaged records can still be
parsed, represented and reported.

Two further grammars cover the pipeline's outputs, so that everything the
tooling writes can be read back and re-verified.  A factorization file
holds expanded 2-factorizations; cycle lines and `--` factor separators
work exactly as above (with two-starter colour codes), one record per
`factorization` header:

    factorization n=10 type=[4,3,3]
    C: ...
    --
    C: ...

A seating file holds one solution per `seating` header; each round lists
its tables as parenthesized guest tours, guests 2x and 2x+1 forming
couple x:

    seating couples=10 type=[4,3,3] variant=standard
    round 1: (0 1 3 2 14 15) (4 5 ...) ...

Here the declared cycle lengths are halved (couple scale): the guest
tours of a round have lengths twice the type's parts.  For factorization
and seating records the parsers check only the grammar and vertex/guest
ranges; content conditions are again the verifiers' business.
"""

import csv
import re
from importlib import resources
from typing import Iterator, NamedTuple

from .model import (
    ARC,
    BLACK,
    BLUE,
    PINK,
    Cycle,
    Edge,
    TwoFactor,
    difference,
)
from .verify import Factorization, SeatingSolution

KINDS = ("one", "two", "three")


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class StarterRecord(NamedTuple):
    n: int
    cycle_type: tuple[int, ...]  # sorted descending
    kind: str                    # "one" | "two" | "three"
    factors: tuple[TwoFactor, ...]

    @property
    def label(self) -> str:
        body = ",".join(str(m) for m in self.cycle_type)
        return f"n{self.n}:[{body}]:{self.kind}"


def format_cycle_type(cycle_type: tuple[int, ...]) -> str:
    return "[" + ",".join(str(m) for m in cycle_type) + "]"


_HEADER_RE = re.compile(
    r"starter\s+n=(\d+)\s+type=\[([\d\s,]+)\]\s+kind=(\w+)$"
)
_TOKEN_RE = re.compile(r"-?\d+|[\[\],]")


def _parse_cycle_tokens(body: str, line_no: int):
    """'[v0, [d0, c0], v1, ...]' -> ([v0, v1, ...], [(d0, c0), ...])."""
    tokens = _TOKEN_RE.findall(body)
    if body.replace(" ", "") != "".join(tokens).replace(" ", ""):
        raise ParseError(line_no, f"unrecognised characters in cycle {body!r}")
    if not tokens or tokens[0] != "[" or tokens[-1] != "]":
        raise ParseError(line_no, "cycle must be a bracketed list")
    items = []  # int verts and (d, c) pairs, in order
    i = 1
    while i < len(tokens) - 1:
        t = tokens[i]
        if t == ",":
            i += 1
            continue
        if t == "[":
            if (i + 4 >= len(tokens) or tokens[i + 2] != ","
                    or tokens[i + 4] != "]"):
                raise ParseError(line_no, "edge code must be [d, c]")
            try:
                items.append((int(tokens[i + 1]), int(tokens[i + 3])))
            except ValueError:
                raise ParseError(line_no, "edge code must be [d, c]") from None
            i += 5
        else:
            try:
                items.append(int(t))
            except ValueError:
                raise ParseError(line_no, f"unexpected token {t!r}") from None
            i += 1
    if (len(items) < 4 or len(items) % 2
            or any(not isinstance(x, int) for x in items[0::2])
            or any(not isinstance(x, tuple) for x in items[1::2])):
        raise ParseError(line_no, "cycle must alternate vertex, [d, c] "
                         "(at least two of each)")
    return list(items[0::2]), list(items[1::2])


def _decode_edge(a: int, b: int, d: int, c: int, n: int, kind: str,
                 line_no: int) -> Edge:
    """Edge between consecutive vertices a -> b carrying code [d, c]."""
    if a == b:
        raise ParseError(line_no, f"degenerate edge at vertex {a}")
    if not (1 <= d <= (n - 1) // 2 or d == n - 1):
        raise ParseError(line_no, f"difference {d} out of range for n={n}")
    actual = difference(a, b, n)
    if actual != d:
        raise ParseError(
            line_no,
            f"edge {a}-{b} declared difference {d} but has {actual}")
    if kind == "one":
        if c == 0:
            return Edge(min(a, b), max(a, b), PINK)
        if c == 1:
            return Edge(min(a, b), max(a, b), BLACK)
        raise ParseError(line_no, f"colour {c} not legal in a one-starter")
    if c == 0:
        return Edge(min(a, b), max(a, b), PINK)
    if c == 2:
        return Edge(min(a, b), max(a, b), BLUE)
    if c not in (1, -1):
        raise ParseError(line_no, f"colour {c} not legal")
    # black arc
    if d == n - 1:
        fin = a if b == n - 1 else b
        return Edge(fin, n - 1, ARC) if c == 1 else Edge(n - 1, fin, ARC)
    if 2 * d == n - 1:
        return Edge(a, b, ARC) if c == 1 else Edge(b, a, ARC)
    if (b - a) % (n - 1) == d:
        fwd = Edge(a, b, ARC)
    else:
        fwd = Edge(b, a, ARC)
    return fwd if c == 1 else Edge(fwd.v, fwd.u, ARC)


def _encode_edge(e: Edge, v_i: int, n: int) -> tuple[int, int]:
    """Inverse of _decode_edge for serialization; v_i is the presentation
    tail (the cycle vertex the code is written after)."""
    d = difference(e.u, e.v, n)
    if e.kind == PINK:
        return d, 0
    if e.kind == BLUE:
        return d, 2
    if e.kind == BLACK:
        return d, 1
    t, h = e.u, e.v
    if d == n - 1:
        return d, 1 if h == n - 1 else -1
    if 2 * d == n - 1:
        return d, 1 if t == v_i else -1
    return d, 1 if (h - t) % (n - 1) == d else -1


def _build_cycle(verts, codes, n: int, kind: str, line_no: int) -> Cycle:
    m = len(verts)
    for v in verts:
        if not (0 <= v <= n - 1):
            raise ParseError(line_no, f"vertex {v} out of range for n={n}")
    edges = []
    for i in range(m):
        d, c = codes[i]
        edges.append(_decode_edge(verts[i], verts[(i + 1) % m], d, c, n,
                                  kind, line_no))
    return Cycle(tuple(verts), tuple(edges))


def parse_starter_file(text: str) -> list[StarterRecord]:
    records: list[StarterRecord] = []
    header = None  # (n, declared type, kind, line_no)
    factors: list[list[Cycle]] = []

    def flush(line_no: int) -> None:
        nonlocal header, factors
        if header is None:
            return
        n, declared, kind, hline = header
        want = 1 if kind == "one" else 2
        if len(factors) != want:
            raise ParseError(
                line_no, f"kind={kind} record needs {want} factor(s), "
                f"found {len(factors)}")
        built = tuple(TwoFactor(n, tuple(cycles)) for cycles in factors)
        for f in built:
            if f.cycle_type() != declared:
                raise ParseError(
                    hline, f"factor cycle lengths {f.cycle_type()} do not "
                    f"match declared type {declared}")
        records.append(StarterRecord(n, declared, kind, built))
        header, factors = None, []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            flush(line_no)
            continue
        if line.startswith("starter"):
            flush(line_no)
            m = _HEADER_RE.match(line)
            if not m:
                raise ParseError(line_no, f"bad header {line!r}")
            n = int(m.group(1))
            if n < 4:
                raise ParseError(line_no, f"n={n} too small")
            declared = tuple(sorted(
                (int(x) for x in m.group(2).split(",")), reverse=True))
            if sum(declared) != n or any(p < 2 for p in declared):
                raise ParseError(
                    line_no, f"type {declared} is not a partition of {n} "
                    "into parts >= 2")
            kind = m.group(3)
            if kind not in KINDS:
                raise ParseError(line_no, f"unknown kind {kind!r}")
            if (n % 2 == 0) != (kind in ("one", "two")):
                parity = "even" if kind in ("one", "two") else "odd"
                raise ParseError(
                    line_no, f"kind={kind} requires {parity} n, got n={n}")
            header = (n, declared, kind, line_no)
            factors = [[]]
        elif line == "--":
            if header is None:
                raise ParseError(line_no, "factor separator outside a record")
            factors.append([])
        elif line.startswith("C:"):
            if header is None:
                raise ParseError(line_no, "cycle line outside a record")
            n, _, kind, _ = header
            verts, codes = _parse_cycle_tokens(line[2:].strip(), line_no)
            factors[-1].append(_build_cycle(verts, codes, n, kind, line_no))
        else:
            raise ParseError(line_no, f"unrecognised line {line!r}")
    flush(len(text.splitlines()) + 1)
    return records


def serialize_cycle(c: Cycle, n: int) -> str:
    parts = []
    for i, v in enumerate(c.vertices):
        d, code = _encode_edge(c.edges[i], v, n)
        parts.append(str(v))
        parts.append(f"[{d}, {code}]")
    return "C: [" + ", ".join(parts) + "]"


def serialize_starter(r: StarterRecord) -> str:
    out = [f"starter n={r.n} type={format_cycle_type(r.cycle_type)} "
           f"kind={r.kind}"]
    for i, f in enumerate(r.factors):
        if i:
            out.append("--")
        out.extend(serialize_cycle(c, r.n) for c in f.cycles)
    return "\n".join(out) + "\n"


def serialize_starters(records: list[StarterRecord]) -> str:
    return "\n".join(serialize_starter(r) for r in records)


# ----------------------------------------------------------- shipped data --

def _data_text(name: str) -> str:
    return (resources.files(__package__) / "data" / name).read_text()


def fixture_ns() -> list[int]:
    """Values of n for which a starter fixture file ships."""
    out = []
    for entry in (resources.files(__package__) / "data").iterdir():
        m = re.fullmatch(r"starters_n(\d+)\.txt", entry.name)
        if m:
            out.append(int(m.group(1)))
    return sorted(out)


def load_starters(n: int) -> list[StarterRecord]:
    return parse_starter_file(_data_text(f"starters_n{n}.txt"))


class KnownResult(NamedTuple):
    n: int
    cycle_type: tuple[int, ...]
    citation: str  # "theorem" | "one" | "two" | "three"


def known_results() -> list[KnownResult]:
    """The published coverage table: which result settles each cycle type."""
    rows = []
    reader = csv.DictReader(_data_text("known_results.csv").splitlines())
    for row in reader:
        parts = tuple(sorted(
            (int(x) for x in row["type"].strip("[]").split(",")),
            reverse=True))
        rows.append(KnownResult(int(row["n"]), parts, row["citation"]))
    return rows


# ------------------------------------------- factorization/seating files --

_FACT_HEADER_RE = re.compile(
    r"factorization\s+n=(\d+)\s+type=\[([\d\s,]+)\]$"
)
_SEAT_HEADER_RE = re.compile(
    r"seating\s+couples=(\d+)\s+type=\[([\d\s,]+)\]\s+variant=(\w+)$"
)
_ROUND_RE = re.compile(r"round\s+(\d+)\s*:\s*(.*)$")


def file_kind(text: str) -> str:
    """'starter', 'factorization' or 'seating', from the first header
    line; anything else raises ParseError."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word = line.split(None, 1)[0]
        if word in ("starter", "factorization", "seating"):
            return word
        raise ParseError(line_no, f"unrecognised header line {line!r}")
    raise ParseError(1, "empty file")


def _parse_type_field(field: str, line_no: int) -> tuple[int, ...]:
    try:
        return tuple(sorted((int(x) for x in field.split(",")), reverse=True))
    except ValueError:
        raise ParseError(line_no, f"bad type field [{field}]") from None


def serialize_factorization(d: Factorization) -> str:
    out = [f"factorization n={d.n} "
           f"type={format_cycle_type(d.cycle_type)}"]
    for i, f in enumerate(d.factors):
        if i:
            out.append("--")
        out.extend(serialize_cycle(c, d.n) for c in f.cycles)
    return "\n".join(out) + "\n"


def serialize_factorizations(ds: list[Factorization]) -> str:
    return "\n".join(serialize_factorization(d) for d in ds)


def parse_factorization_file(text: str) -> list[Factorization]:
    """Factorization records; unlike starter records the cycle lengths
    and factor count are not policed here (verify reports them as
    violations instead of refusing to read the file)."""
    records: list[Factorization] = []
    header = None  # (n, type)
    factors: list[list[Cycle]] = []

    def flush() -> None:
        nonlocal header, factors
        if header is None:
            return
        n, declared = header
        built = tuple(TwoFactor(n, tuple(cycles)) for cycles in factors)
        records.append(Factorization(n, declared, built))
        header, factors = None, []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("factorization"):
            flush()
            m = _FACT_HEADER_RE.match(line)
            if not m:
                raise ParseError(line_no, f"bad header {line!r}")
            n = int(m.group(1))
            if n < 4:
                raise ParseError(line_no, f"n={n} too small")
            header = (n, _parse_type_field(m.group(2), line_no))
            factors = [[]]
        elif line == "--":
            if header is None:
                raise ParseError(line_no, "factor separator outside a record")
            factors.append([])
        elif line.startswith("C:"):
            if header is None:
                raise ParseError(line_no, "cycle line outside a record")
            verts, codes = _parse_cycle_tokens(line[2:].strip(), line_no)
            factors[-1].append(
                _build_cycle(verts, codes, header[0], "two", line_no))
        else:
            raise ParseError(line_no, f"unrecognised line {line!r}")
    flush()
    if not records:
        raise ParseError(1, "no factorization records in file")
    return records


def serialize_seating(s: SeatingSolution, cycle_type) -> str:
    """One line per round; cycles are parenthesized guest tours and
    couples are the pairs (2x, 2x+1).  cycle_type is on the couple scale
    (tour lengths are its doubled parts)."""
    lines = [f"seating couples={s.n_couples} "
             f"type={format_cycle_type(sorted(cycle_type, reverse=True))} "
             f"variant={s.variant}"]
    for ri, rnd in enumerate(s.rounds, start=1):
        cycles = " ".join(
            "(" + " ".join(str(g) for g in cyc) + ")" for cyc in rnd)
        lines.append(f"round {ri}: {cycles}")
    return "\n".join(lines) + "\n"


def parse_seating_file(text: str) -> list[tuple[SeatingSolution, tuple]]:
    """Seating records as (solution, declared couple-scale cycle type)
    pairs.  The I-factor is the couple matching {2x, 2x+1}; round counts
    and tour contents are for the verifiers to judge."""
    records: list[tuple[SeatingSolution, tuple]] = []
    header = None  # (n_couples, type, variant)
    rounds: list[tuple[tuple[int, ...], ...]] = []

    def flush() -> None:
        nonlocal header, rounds
        if header is None:
            return
        n_c, declared, variant = header
        i_factor = frozenset((2 * x, 2 * x + 1) for x in range(n_c))
        records.append((SeatingSolution(n_c, i_factor, tuple(rounds),
                                        variant), declared))
        header, rounds = None, []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("seating"):
            flush()
            m = _SEAT_HEADER_RE.match(line)
            if not m:
                raise ParseError(line_no, f"bad header {line!r}")
            header = (int(m.group(1)),
                      _parse_type_field(m.group(2), line_no), m.group(3))
        elif line.startswith("round"):
            if header is None:
                raise ParseError(line_no, "round line outside a record")
            m = _ROUND_RE.match(line)
            if not m:
                raise ParseError(line_no, f"bad round line {line!r}")
            body = m.group(2)
            tours = re.findall(r"\(([^()]*)\)", body)
            if "(" in re.sub(r"\([^()]*\)", "", body):
                raise ParseError(line_no, "unbalanced parentheses")
            parsed = []
            for tour in tours:
                try:
                    parsed.append(tuple(int(g) for g in tour.split()))
                except ValueError:
                    raise ParseError(
                        line_no, f"bad guest in tour ({tour})") from None
            limit = 2 * header[0]
            for tour in parsed:
                for g in tour:
                    if not 0 <= g < limit:
                        raise ParseError(
                            line_no, f"guest {g} out of range for "
                            f"{header[0]} couples")
            rounds.append(tuple(parsed))
        else:
            raise ParseError(line_no, f"unrecognised line {line!r}")
    flush()
    if not records:
        raise ParseError(1, "no seating records in file")
    return records
