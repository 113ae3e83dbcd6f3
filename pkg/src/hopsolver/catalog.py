"""Cycle-type enumeration, coverage classification and dispatch tables.

For each n the catalog lists every possible cycle type (partition of n
into parts >= 2), decides how HOP(2m_1, ..., 2m_t) is settled for it -
by a known theorem or by one of the shipped/searchable starters - and
renders the dispatch table as aligned text, as CSV rows and as a PNG
chart.

Coverage categories, first match wins:

  uniform             all parts equal (m divides n by construction)
  all-parts-div-4     every part divisible by 4
  odd-pair            n odd and exactly two parts
  odd-all-parts-ge-3  n odd, n < 40, smallest part >= 3
  small-n             n <= 9
  needs-starter       everything else; suggested kind is "three" for odd
                      n and "one-or-two" for even n

The classification is deliberately literal; where the shipped result
table settles a row differently (it sometimes cites the uniform-type
theorem for a non-uniform type it could also have covered by one of the
other cases), the report flags the row instead of silently following
either side.

The odd-n case "n odd and the half-length Oberwolfach instance is
solvable" is not implemented: deciding it would need an Oberwolfach
oracle, and the n < 40 case subsumes it for every n this package
targets whenever the smallest part is >= 3.
"""

import csv
import io
from typing import NamedTuple

from .expand import (
    ReconstructionError,
    VerificationFailed,
    expand_record,
    verify_record,
)
from .format import (
    KnownResult,
    StarterRecord,
    fixture_ns,
    format_cycle_type,
    known_results,
    load_starters,
)
from .verify import verify_hop_factorization

UNIFORM = "uniform"
ALL_PARTS_DIV_4 = "all-parts-div-4"
ODD_PAIR = "odd-pair"
ODD_ALL_GE_3 = "odd-all-parts-ge-3"
SMALL_N = "small-n"
NEEDS_STARTER = "needs-starter"

CATEGORIES = (UNIFORM, ALL_PARTS_DIV_4, ODD_PAIR, ODD_ALL_GE_3, SMALL_N,
              NEEDS_STARTER)


class Coverage(NamedTuple):
    category: str
    kind: str | None = None      # starter kind suggestion for needs-starter

    def __str__(self) -> str:
        if self.kind is None:
            return self.category
        return f"{self.category}[{self.kind}]"


def cycle_types(n: int) -> list[tuple[int, ...]]:
    """All cycle types for this n (partitions into parts >= 2), each
    descending-sorted, in result-table order: more parts first, then
    lexicographically by the ascending part list."""
    if n < 4:
        raise ValueError(f"n must be at least 4, got {n}")
    acc: list[tuple[int, ...]] = []

    def grow(rest: int, parts: list[int]) -> None:
        if rest == 0:
            acc.append(tuple(parts))
            return
        top = parts[-1] if parts else rest
        for p in range(min(rest, top), 1, -1):
            if rest - p == 1:
                continue  # a leftover of 1 can never become a part
            grow(rest - p, parts + [p])

    grow(n, [])
    acc.sort(key=lambda t: (-len(t), tuple(sorted(t))))
    return acc


def classify(parts, n: int | None = None) -> Coverage:
    """Coverage for one cycle type.  Pure in (parts, n); n defaults to
    the part sum."""
    t = tuple(sorted(parts, reverse=True))
    total = sum(t)
    if n is None:
        n = total
    elif n != total:
        raise ValueError(f"type {list(t)} sums to {total}, not n={n}")
    if not t or min(t) < 2:
        raise ValueError(f"invalid cycle type {list(parts)}")

    if len(set(t)) == 1:
        return Coverage(UNIFORM)
    if all(p % 4 == 0 for p in t):
        return Coverage(ALL_PARTS_DIV_4)
    if n % 2 and len(t) == 2:
        return Coverage(ODD_PAIR)
    if n % 2 and n < 40 and t[-1] >= 3:
        return Coverage(ODD_ALL_GE_3)
    if n <= 9:
        return Coverage(SMALL_N)
    return Coverage(NEEDS_STARTER, "three" if n % 2 else "one-or-two")


# ------------------------------------------------------------------ report --

class Row(NamedTuple):
    cycle_type: tuple[int, ...]
    coverage: Coverage
    fixture: str      # "verified" | "failed" | "missing" | "-"
    search: str       # "found" | "exhausted" | "budget" | "-"
    flag: str         # discrepancy note, "" when none


class Report(NamedTuple):
    n: int
    rows: tuple[Row, ...]

    @property
    def flagged(self) -> tuple[Row, ...]:
        return tuple(r for r in self.rows if r.flag)


def _fixture_status(record: StarterRecord | None) -> str:
    if record is None:
        return "missing"
    if verify_record(record):
        return "failed"
    try:
        d = expand_record(record)
    except (VerificationFailed, ReconstructionError, ValueError):
        return "failed"
    return "failed" if verify_hop_factorization(d) else "verified"


def _flag_for(cov: Coverage, known: KnownResult | None) -> str:
    if known is None:
        return ""
    cited_starter = known.citation in ("one", "two", "three")
    if cov.category == NEEDS_STARTER:
        if not cited_starter:
            return "classified needs-starter but table cites a theorem"
        return ""
    if cited_starter:
        return (f"table settles this row with a starter ({known.citation}) "
                f"but {cov.category} covers it")
    if cov.category != UNIFORM:
        return ("table cites the uniform-type theorem; literal "
                f"classification is {cov.category}")
    return ""


def report(n: int, fixture_index=None, search_results=None) -> Report:
    """Build the dispatch table for n.

    fixture_index: mapping cycle type -> StarterRecord; defaults to the
    shipped fixtures when n has any.  search_results: mapping cycle type
    -> SearchOutcome (as from search_all); optional.
    """
    if fixture_index is None:
        fixture_index = {}
        if n in fixture_ns():
            fixture_index = {r.cycle_type: r for r in load_starters(n)}
    search_results = search_results or {}
    known = {r.cycle_type: r for r in known_results() if r.n == n}

    rows = []
    for t in cycle_types(n):
        cov = classify(t, n)
        if cov.category == NEEDS_STARTER:
            fixture = _fixture_status(fixture_index.get(t))
        else:
            fixture = "-"
        outcome = search_results.get(t)
        search = outcome.status if outcome is not None else "-"
        rows.append(Row(t, cov, fixture, search, _flag_for(cov, known.get(t))))
    return Report(n, tuple(rows))


def render_text(rep: Report) -> str:
    """Aligned plain-text table with a summary line and flag footnotes."""
    heads = ("type", "coverage", "fixture", "search")
    cells = [(format_cycle_type(r.cycle_type), str(r.coverage) + ("*" if r.flag else ""),
              r.fixture, r.search) for r in rep.rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(heads)]
    lines = [f"dispatch table for n={rep.n}: {len(rep.rows)} cycle types"]
    lines.append("  ".join(h.ljust(w) for h, w in zip(heads, widths)))
    lines.append("  ".join("-" * w for w in widths))
    for c in cells:
        lines.append("  ".join(x.ljust(w) for x, w in zip(c, widths)))
    starters = sum(1 for r in rep.rows if r.coverage.category == NEEDS_STARTER)
    verified = sum(1 for r in rep.rows if r.fixture == "verified")
    lines.append(f"{starters} starter rows, {verified} fixtures verified, "
                 f"{len(rep.flagged)} flagged")
    for r in rep.flagged:
        lines.append(f"* {format_cycle_type(r.cycle_type)}: {r.flag}")
    return "\n".join(lines) + "\n"


def render_csv(rep: Report) -> str:
    """CSV rows type,coverage,fixture,search; flagged coverage carries a
    trailing '*' (footnote text lives in the text rendering)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("type", "coverage", "fixture", "search"))
    for r in rep.rows:
        w.writerow((format_cycle_type(r.cycle_type),
                    str(r.coverage) + ("*" if r.flag else ""),
                    r.fixture, r.search))
    return buf.getvalue()


_CATEGORY_COLOURS = {
    UNIFORM: "#4c72b0",
    ALL_PARTS_DIV_4: "#55a868",
    ODD_PAIR: "#c44e52",
    ODD_ALL_GE_3: "#8172b2",
    SMALL_N: "#ccb974",
    NEEDS_STARTER: "#64b5cd",
}


def render_figure(rep: Report, path: str) -> None:
    """Save a PNG bar chart of the coverage breakdown (flagged rows
    hatched on top of their category bar)."""
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.figure import Figure

    counts = {c: 0 for c in CATEGORIES}
    flags = {c: 0 for c in CATEGORIES}
    for r in rep.rows:
        counts[r.coverage.category] += 1
        flags[r.coverage.category] += bool(r.flag)
    cats = [c for c in CATEGORIES if counts[c]]

    fig = Figure(figsize=(7, 3.5))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot()
    xs = range(len(cats))
    plain = [counts[c] - flags[c] for c in cats]
    ax.bar(xs, plain, color=[_CATEGORY_COLOURS[c] for c in cats])
    ax.bar(xs, [flags[c] for c in cats], bottom=plain,
           color=[_CATEGORY_COLOURS[c] for c in cats],
           hatch="//", edgecolor="white", label="flagged")
    for x, c in zip(xs, cats):
        ax.text(x, counts[c] + 0.1, str(counts[c]), ha="center", va="bottom")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(cats, rotation=20, ha="right", fontsize=8)
    ax.set_ylabel("cycle types")
    ax.set_title(f"coverage of the {len(rep.rows)} cycle types at n={rep.n}")
    if any(flags.values()):
        ax.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
