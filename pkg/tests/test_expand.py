"""Rotation expansion, factor derivation, reconstruction and the lift."""

import pytest

from hopsolver.expand import (
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
from hopsolver.format import load_starters, parse_starter_file
from hopsolver.model import (
    ARC,
    BLACK,
    BLUE,
    PINK,
    Cycle,
    TwoFactor,
    black,
    edge_difference,
    pink,
    rotate_factor,
)
from hopsolver.verify import (
    check_a,
    check_d,
    verify_alternating_factorization,
    verify_hop_factorization,
    verify_semi_uniform,
)


def _one_starters(n):
    return [r for r in load_starters(n) if r.kind == "one"]


def _by_label(n):
    return {r.label: r for r in load_starters(n)}


# ----------------------------------------------------------------- derive_f2

def test_derive_f2_swaps_the_special_two_cycle():
    for rec in load_starters(11):
        f1 = rec.factors[0]
        f2 = derive_f2(f1, 11)
        # same cycle type, edge-disjoint from F1, half-turn image elsewhere
        assert f2.cycle_type() == f1.cycle_type()
        assert not set(f1.edges()) & set(f2.edges())
        blacks = [c for c in f2.cycles if len(c) == 2
                  and all(e.kind == ARC for e in c.edges)
                  and edge_difference(c.edges[0], 11) == 5]
        assert len(blacks) == 1


def test_derive_f2_requires_the_special_two_cycle():
    f1 = _by_label(11)["n11:[7,2,2]:three"].factors[0]
    stripped = TwoFactor(11, tuple(
        c for c in f1.cycles
        if not (len(c) == 2 and {e.kind for e in c.edges} == {PINK, BLUE}
                and edge_difference(c.edges[0], 11) == 5)))
    with pytest.raises(ValueError):
        derive_f2(stripped, 11)


# ---------------------------------------------------------------- one_to_two

def test_one_to_two_reconstruction_passes_check_d():
    for n in (10, 12):
        for rec in _one_starters(n):
            f1, f2 = one_to_two(rec.factors[0], n)
            assert check_d(f1, f2, n) == []


def test_one_to_two_two_cycles_become_colour_pair_and_arc_pair():
    rec = _by_label(10)["n10:[8,2]:one"]
    f1, f2 = one_to_two(rec.factors[0], 10)
    two1 = next(c for c in f1.cycles if len(c) == 2)
    two2 = next(c for c in f2.cycles if len(c) == 2)
    assert {e.kind for e in two1.edges} == {PINK, BLUE}
    assert all(e.kind == ARC for e in two2.edges)
    assert set(two1.vertices) == set(two2.vertices)


def test_one_to_two_conjugates_longer_cycles():
    rec = _by_label(12)["n12:[5,4,3]:one"]
    f1, f2 = one_to_two(rec.factors[0], 12)
    for c1, c2 in zip(
            (c for c in f1.cycles if len(c) > 2),
            (c for c in f2.cycles if len(c) > 2)):
        k1 = sorted(e.kind for e in c1.edges)
        k2 = sorted(e.kind for e in c2.edges)
        assert k1.count(PINK) == k2.count(BLUE)
        assert k1.count(ARC) == k2.count(ARC)
        assert set(c1.vertices) == set(c2.vertices)


def test_one_to_two_rejects_invalid_input():
    bad = TwoFactor(6, (
        Cycle((0, 1), (pink(0, 1), black(0, 1))),
        Cycle((2, 3), (pink(2, 3), black(2, 3))),  # repeats both diff-1 orbits
        Cycle((4, 5), (pink(4, 5), black(4, 5))),
    ))
    with pytest.raises(VerificationFailed) as exc:
        one_to_two(bad, 6)
    assert any(v.clause == "A2" for v in exc.value.violations)


# --------------------------------------------------------------- expansions

def test_expand_two_produces_all_rotations():
    rec = _by_label(10)["n10:[6,4]:two"]
    f1, f2 = rec.factors
    d = expand_two(f1, f2, 10)
    assert len(d.factors) == 18
    assert d.factors[0] == f1
    assert d.factors[1] == f2
    assert d.factors[2] == rotate_factor(f1, 1)
    assert verify_hop_factorization(d) == []


def test_expand_three_rotation_counts():
    rec = _by_label(11)["n11:[5,4,2]:three"]
    f1, f3 = rec.factors
    f2 = derive_f2(f1, 11)
    d = expand_three(f1, f2, f3, 11)
    assert len(d.factors) == 20
    # F1/F2 appear under half the rotations, F3 under all of them
    assert sum(1 for f in d.factors if f.cycle_type() == f1.cycle_type()) == 20
    assert verify_hop_factorization(d) == []


def test_expand_record_dispatches_all_kinds():
    for n in (10, 11, 12):
        for rec in load_starters(n):
            d = expand_record(rec)
            assert len(d.factors) == 2 * n - 2
            assert d.cycle_type == rec.cycle_type


def test_every_shipped_fixture_expands_cleanly():
    from hopsolver.format import fixture_ns
    for n in sorted(fixture_ns()):
        for rec in load_starters(n):
            assert verify_record(rec) == [], rec.label
            d = expand_record(rec)
            assert verify_hop_factorization(d) == [], rec.label


_ALL_TWO_CYCLES = (
    "starter n=10 type=[2,2,2,2,2] kind=one\n"
    + "".join(f"C: [{2*i}, [1, 0], {2*i+1}, [1, 1]]\n" for i in range(4))
    + "C: [8, [9, 0], 9, [9, 1]]\n")  # pair with the hub carries code n-1


def test_verify_record_reports_instead_of_raising():
    [rec] = parse_starter_file(_ALL_TWO_CYCLES)
    violations = verify_record(rec)
    assert violations and all(v.clause == "A2" for v in violations)


def test_expand_record_raises_on_bad_record():
    [rec] = parse_starter_file(_ALL_TWO_CYCLES)
    with pytest.raises(VerificationFailed):
        expand_record(rec)


# --------------------------------------------------------------------- lift

def test_lift_round_counts_and_verifiers():
    cases = [(10, (4, 3, 3), 18, 19), (11, (7, 2, 2), 20, 21)]
    for n, cycle_type, rounds, matchings in cases:
        rec = next(r for r in load_starters(n) if r.cycle_type == cycle_type)
        d = expand_record(rec)
        s = lift(d)
        assert len(s.rounds) == rounds
        doubled = tuple(2 * m for m in cycle_type)
        assert verify_alternating_factorization(s, doubled) == []
        ms = to_one_factorization(s)
        assert len(ms) == matchings
        assert verify_semi_uniform(ms, 2 * n, doubled) == []


def test_lift_tables_seat_couples_together():
    rec = next(r for r in load_starters(10) if r.cycle_type == (4, 3, 3))
    s = lift(expand_record(rec))
    for rnd in s.rounds:
        for table in rnd:
            pairs = {tuple(sorted((table[i], table[(i + 1) % len(table)])))
                     for i in range(len(table))}
            for x in set(g // 2 for g in table):
                assert (2 * x, 2 * x + 1) in pairs


def test_lift_rejects_unverified_input():
    rec = next(r for r in load_starters(10) if r.kind == "two")
    d = expand_record(rec)
    from hopsolver.verify import Factorization
    broken = Factorization(d.n, d.cycle_type, d.factors[:-1])
    with pytest.raises(VerificationFailed):
        lift(broken)
