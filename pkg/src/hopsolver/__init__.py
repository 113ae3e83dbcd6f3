"""Starter 2-factors for round-table seating schedules.

2n dinner guests (n couples) sit at round tables for 2n-2 meals so that
spouses are always adjacent and every other pair is adjacent exactly
once; the table sizes are prescribed by a cycle type.  The package
models such schedules as 2-factorizations of an edge-coloured multigraph
generated from small starter factors by rotation, and provides:

* model      -- vertices, coloured edges, rotation, orbits
* format     -- the plain-text grammars and the shipped starter corpus
* verify     -- condition checkers and factorization verifiers
* expand     -- starter expansion, derived factors, seating lift
* search     -- backtracking starter search with budgets
* catalog    -- cycle-type enumeration, coverage tables, figures
* cli        -- the `hopsolver` command

The usual workflow is load (or search for) a starter record, expand it
to a full factorization, lift to a seating schedule, and verify every
step.
"""

from .catalog import Coverage, Report, classify, cycle_types, report
from .expand import (
    ReconstructionError,
    VerificationFailed,
    derive_f2,
    expand_record,
    expand_three,
    expand_two,
    lift,
    one_to_two,
    to_one_factorization,
    verify_record,
)
from .format import (
    KnownResult,
    ParseError,
    StarterRecord,
    fixture_ns,
    known_results,
    load_starters,
    parse_factorization_file,
    parse_seating_file,
    parse_starter_file,
    serialize_factorization,
    serialize_seating,
    serialize_starter,
    serialize_starters,
)
from .model import (
    ARC,
    BLACK,
    BLUE,
    FOUR_FOLD,
    PINK,
    TWO_FOLD,
    Cycle,
    DegenerateEdgeError,
    Edge,
    OrbitTable,
    TwoFactor,
    all_edges,
    all_orbits,
    arc,
    black,
    blue,
    difference,
    orbit_of,
    pink,
    rotate,
    rotate_factor,
)
from .search import (
    SearchBudget,
    SearchOutcome,
    SearchStats,
    search_all,
    search_starter,
)
from .verify import (
    Factorization,
    SeatingSolution,
    Violation,
    check_a,
    check_condition_c,
    check_d,
    check_e,
    check_structure,
    verify_alternating_factorization,
    verify_hop_factorization,
    verify_semi_uniform,
)

__version__ = "0.1.0"
