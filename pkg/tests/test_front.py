from fractions import Fraction as Fr

import pytest

from lchtree.front import (
    Event,
    InvalidFront,
    capping_path_data,
    check_front,
    grading,
    reeb_chords,
    validate_front,
)


def ev(kind, x, a, b, **kw):
    return Event(kind, Fr(x), a, b, **kw)


def unknot_events():
    return [
        ev("left_cusp", 0, 1, 2),
        ev("chord", 2, 1, 2, index=1, name="a"),
        ev("right_cusp", 4, 1, 2),
    ]


def stab_unknot_events():
    # single S-zigzag on the lower strand: rotation number +-1, LCH acyclic
    return [
        ev("left_cusp", 0, 1, 2),
        ev("left_cusp", 1, 3, 4, above=2),
        ev("chord", Fr(7, 5), 3, 4, index=1, name="q"),
        ev("chord", Fr(17, 10), 1, 3, index=0, name="p"),
        ev("right_cusp", 2, 2, 3),
        ev("right_cusp", 4, 1, 4),
    ]


def test_unknot_valid():
    front = validate_front(unknot_events())
    assert len(front.chords) == 1
    a = front.chords[0]
    assert a.index == 1 and a.grading == 1 and a.modulus == 0
    assert front.orders[1] == (1, 2)
    # one component, trivial rotation
    assert len(front.components) == 1 and front.moduli == (0,)


def test_unknot_capping_path():
    front = validate_front(unknot_events())
    data = capping_path_data(front, "a")
    # rightward arc: one down cusp
    assert data["right"] == {"D": 1, "U": 0, "mu": 1}
    assert data["parity_agrees"]


def test_empty_front_rejected():
    assert check_front([])[0][0] == "UnmatchedCusp"


def test_missing_chord_rejected():
    # cusp-to-cusp pair with no max chord cannot return to zero
    bad = [ev("left_cusp", 0, 1, 2), ev("right_cusp", 4, 1, 2)]
    codes = {c for c, _, _ in check_front(bad)}
    assert "SignChangeWithoutEvent" in codes


def test_duplicate_positions_rejected():
    bad = [
        ev("left_cusp", 0, 1, 2),
        ev("chord", 0, 1, 2, index=1),
        ev("right_cusp", 4, 1, 2),
    ]
    assert check_front(bad)[0][0] == "DuplicatePosition"


def test_nonadjacent_crossing_rejected():
    evs = [
        ev("left_cusp", 0, 1, 2),
        ev("left_cusp", 1, 3, 4, above=2),
        ev("crossing", 2, 1, 4),
        ev("chord", Fr(5, 2), 1, 2, index=1),
        ev("right_cusp", 3, 1, 2),
        ev("right_cusp", 5, 3, 4),
    ]
    codes = {c for c, _, _ in check_front(evs)}
    assert "NonAdjacentCrossing" in codes


def test_stabilized_unknot_valid():
    front = validate_front(stab_unknot_events())
    names = {c.name for c in front.chords}
    assert names == {"q", "p"}
    # rotation number +-1: gradings live mod 2
    assert front.moduli == (2,)
    q = front.chord_by_name("q")
    p = front.chord_by_name("p")
    assert q.parity == 1 and p.parity == 0
    assert q.grading % 2 == 1 and p.grading % 2 == 1


def test_stabilized_unknot_needs_min_chord():
    # dropping the index-0 chord breaks slope consistency at the right cusp
    evs = [e for e in stab_unknot_events() if e.name != "p"]
    codes = {c for c, _, _ in check_front(evs)}
    assert codes  # must be rejected
    assert "CuspSlopeAdjacency" in codes or "InconsistentSlopes" in codes


def test_validate_raises():
    with pytest.raises(InvalidFront):
        validate_front([ev("left_cusp", 0, 1, 2), ev("right_cusp", 4, 1, 2)])


def test_reeb_chords_and_grading():
    front = validate_front(unknot_events())
    assert [c.name for c in reeb_chords(front)] == ["a"]
    assert grading(front, "a") == (1, 0)
