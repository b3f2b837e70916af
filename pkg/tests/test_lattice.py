"""Lattice windows, shift validation, chord and generator enumeration."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootquilt import (
    FloorBoundary,
    Lattice,
    LatticeNotStable,
    Mode,
    NotInChamber,
    NotRegular,
    NotSmall,
    canonical_shift,
    chords,
    generators,
    validate_generic,
    weyl_action,
)



def brute_force_a2_count(radius2: F) -> int:
    """Independent oracle: scan a coordinate box and count by the exact norm."""
    count = 0
    for m in range(-10, 11):
        for n in range(-10, 11):
            norm2 = 2 * m * m - 2 * m * n + 2 * n * n
            if norm2 <= radius2:
                count += 1
    return count


def test_points_radius_zero(group_a1):
    assert group_a1.lattice.points(F(0)) == [(F(0),)]


def test_points_a1_radius_three(group_a1):
    # |k alpha| = |k| sqrt(2) <= 3 iff k*k <= 4.5 iff |k| <= 2
    pts = group_a1.lattice.points(F(3))
    assert sorted(pts) == [((F(k),)) for k in (-2, -1, 0, 1, 2)]


def test_points_a2_radius_two(group_a2):
    pts = group_a2.lattice.points(F(2))
    assert len(pts) == 7
    assert len(pts) == brute_force_a2_count(F(4))


def test_points_a2_radius_three_matches_oracle(group_a2):
    pts = group_a2.lattice.points(F(3))
    assert len(pts) == brute_force_a2_count(F(9))


def test_points_ordering_is_graded(group_a1):
    pts = group_a1.lattice.points(F(3))
    norms = [group_a1.system.norm2(q) for q in pts]
    assert norms == sorted(norms)
    assert pts[0] == (F(0),)


@settings(max_examples=20, deadline=None)
@given(r1=st.integers(min_value=0, max_value=4), r2=st.integers(min_value=0, max_value=4))
def test_window_monotone(group_a2, r1, r2):
    if r1 > r2:
        r1, r2 = r2, r1
    small = group_a2.lattice.points(F(r1))
    large = group_a2.lattice.points(F(r2))
    assert set(small) <= set(large)
    # graded ordering makes the smaller window a prefix of the larger
    assert large[: len(small)] == small


def test_window_weyl_symmetric(group_a2):
    pts = set(group_a2.lattice.points(F(3)))
    W = group_a2.system.weyl_group()
    for q in pts:
        assert tuple(-x for x in q) in pts
        for w in W:
            assert w(q) in pts


def test_budget_exceeded(group_a2):
    from rootquilt import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        group_a2.lattice.points(F(4), cap=3)


def test_weyl_action_examples(group_a2):
    sys_ = group_a2.system
    W = sys_.weyl_group()
    lat = group_a2.lattice
    q = (F(1), F(1))
    assert weyl_action(lat, W.identity, q) == q
    s1 = next(w for w in W if w.word == (0,))
    # s1 sends the second coroot to the sum of the two coroots
    assert weyl_action(lat, s1, (F(0), F(1))) == (F(1), F(1))


def test_weyl_action_a1(group_a1):
    W = group_a1.system.weyl_group()
    s = W.elements[1]
    assert weyl_action(group_a1.lattice, s, (F(1),)) == (F(-1),)


def test_weyl_action_rejects_unstable(group_a2):
    lat = Lattice(group_a2.system, [(F(1), F(0)), (F(0), F(2))])
    W = group_a2.system.weyl_group()
    s2 = next(w for w in W if w.word == (1,))
    with pytest.raises(LatticeNotStable):
        weyl_action(lat, s2, (F(1), F(0)))
    with pytest.raises(LatticeNotStable):
        lat.check_weyl_stable()


def test_validate_generic_worked_case(group_a1):
    # 2 alpha(k alpha + alpha/20) = 4k + 1/5, never an integer for |k| <= 2
    shift = validate_generic(
        group_a1.system, group_a1.lattice, (F(1, 20),), Mode.SMALL_IN_CHAMBER, F(3)
    )
    assert shift.window_radius == 3
    assert len(shift.window_points()) == 5


def test_validate_generic_zero_not_regular(group_a1):
    with pytest.raises(NotRegular):
        validate_generic(group_a1.system, group_a1.lattice, (F(0),), Mode.REGULAR_ONLY, F(0))


def test_validate_generic_floor_boundary(group_a1):
    # 2 alpha(alpha/4) = 1 is an integer already at q = 0
    with pytest.raises(FloorBoundary) as err:
        validate_generic(group_a1.system, group_a1.lattice, (F(1, 4),), Mode.REGULAR_ONLY, F(0))
    assert err.value.point == (F(0),)


def test_validate_generic_chamber_and_smallness(group_a1):
    with pytest.raises(NotInChamber):
        validate_generic(
            group_a1.system, group_a1.lattice, (F(-1, 20),), Mode.SMALL_IN_CHAMBER, F(0)
        )
    # 2 alpha(alpha/3) = 4/3: regular, off every floor boundary, but not small
    with pytest.raises(NotSmall):
        validate_generic(
            group_a1.system, group_a1.lattice, (F(1, 3),), Mode.SMALL_IN_CHAMBER, F(0)
        )


def test_validate_generic_monotone_in_radius(group_a1):
    big = validate_generic(
        group_a1.system, group_a1.lattice, (F(1, 20),), Mode.SMALL_IN_CHAMBER, F(4)
    )
    assert big is not None
    for r in (F(0), F(1), F(2), F(3)):
        assert validate_generic(
            group_a1.system, group_a1.lattice, (F(1, 20),), Mode.SMALL_IN_CHAMBER, r
        )


def test_canonical_shift_group_a1(group_a1):
    # epsilon scan: 2 alpha(a) = 8 eps must drop below 1/2, first at eps = 1/17
    shift = canonical_shift(group_a1.system, group_a1.lattice, Mode.SMALL_IN_CHAMBER, F(3))
    assert shift.a == (F(2, 17),)


def test_generator_and_chord_counts(group_a1):
    shift = validate_generic(
        group_a1.system, group_a1.lattice, (F(1, 20),), Mode.SMALL_IN_CHAMBER, F(3)
    )
    assert len(generators(shift)) == 10
    assert len(chords(shift)) == 5


def test_radius_zero_counts(catalog):
    for entry in catalog:
        shift = canonical_shift(entry.system, entry.lattice, Mode.SMALL_IN_CHAMBER, F(0))
        assert len(chords(shift)) == 1
        assert len(generators(shift)) == entry.system.weyl_group().order


def test_f4_generator_count_at_radius_zero(f4_system):
    # coroot lattice: long coroots equal the roots, short coroots are doubled
    basis = [
        (F(0), F(1), F(-1), F(0)),
        (F(0), F(0), F(1), F(-1)),
        (F(0), F(0), F(0), F(2)),
        (F(1), F(-1), F(-1), F(-1)),
    ]
    lat = Lattice(f4_system, basis)
    lat.check_weyl_stable()
    shift = canonical_shift(f4_system, lat, Mode.SMALL_IN_CHAMBER, F(0))
    assert len(generators(shift)) == 1152


def test_lattice_rejects_dependent_basis(group_a2):
    from rootquilt import InvariantViolation

    with pytest.raises(InvariantViolation):
        Lattice(group_a2.system, [(F(1), F(0)), (F(2), F(0))])


def test_chord_integrality_of_builtin_lattices(catalog):
    for entry in catalog:
        for b in entry.lattice.basis:
            for alpha in entry.system.roots:
                assert (2 * entry.system.pairing(alpha, b)).denominator == 1


def test_canonical_shift_all_entries_frozen(catalog):
    """Hand-derived first passing epsilon per entry: the largest root value
    2*theta(a) must drop below 1/2, so eps is the first odd reciprocal under
    1/(4*theta(rho))."""
    expected = {
        "group-a1": ((F(2, 17),),),  # 8 eps < 1/2 -> eps = 1/17
        "group-a2": ((F(4, 33), F(4, 33)),),  # 16 eps < 1/2 -> eps = 1/33
        "ai-a2": ((F(2, 17), F(2, 17)),),  # 8 eps < 1/2 at m = 1
        "aii-a1": ((F(4, 33),),),  # 16 eps < 1/2 -> eps = 1/33
        "sphere-a1": ((F(6, 49),),),  # 24 eps < 1/2 -> eps = 1/49
        "eiv-a2": ((F(16, 129), F(16, 129)),),  # 64 eps < 1/2 -> eps = 1/129
    }
    for entry in catalog:
        shift = canonical_shift(entry.system, entry.lattice, Mode.SMALL_IN_CHAMBER, F(3))
        assert shift.a == expected[entry.name][0], entry.name
