from __future__ import annotations

import pytest

from zipshift import (
    InvalidWord,
    NotFiniteType,
    format_point,
    heteroclinic_check,
    homoclinic_datum,
    homoclinic_orbits,
    letter_preimage_sum,
    orbit_points,
    parse_point,
    periodic_point,
    periodic_points,
    pre_periodic_points,
    shift,
    stable_unstable_membership,
)


def test_periodic_point_ex21(ex21):
    p = periodic_point(ex21, ("2",))
    assert p.period == 1
    assert format_point(p.point) == "(b)* ; (2)*"
    assert format_point(periodic_point(ex21, ("2", "3")).point) == "(b)* ; (2 3)*"
    assert format_point(periodic_point(ex21, ("3", "2")).point) == "(b)* ; (3 2)*"
    for bad in (("1",), ("3",), ("1", "3"), ("2", "1")):
        with pytest.raises(InvalidWord):
            periodic_point(ex21, bad)


def test_periodic_point_even(even):
    assert format_point(periodic_point(even, ("0",)).point) == "(c)* ; (0)*"
    assert format_point(periodic_point(even, ("1",)).point) == "(a)* ; (1)*"
    assert (
        format_point(periodic_point(even, ("1", "0", "0")).point)
        == "(b c b)* ; (1 0 0)*"
    )
    # a repeated word spells the same point
    assert periodic_point(even, ("0", "0")).point == periodic_point(even, ("0",)).point
    # 01 is admissible in every window yet labels no closed walk
    for bad in (("0", "1"), ("1", "0")):
        with pytest.raises(InvalidWord):
            periodic_point(even, bad)


def test_periodic_points_counts(ex21, sigma_f, classical, five):
    for space in (ex21, sigma_f, classical, five):
        for m in range(1, 6):
            assert len(periodic_points(space, m)) == space.count_periodic(m)
    assert {p.word for p in periodic_points(ex21, 2)} == {
        ("2", "2"),
        ("2", "3"),
        ("3", "2"),
    }


def test_periodic_points_sofic_rejected(even):
    with pytest.raises(NotFiniteType):
        periodic_points(even, 2)


def test_orbit_points(ex21):
    p = periodic_point(ex21, ("2", "3"))
    orb = orbit_points(ex21, p)
    assert len(orb) == 2
    assert orb[0] == p.point
    assert shift(ex21, orb[0]) == orb[1]
    assert shift(ex21, orb[1]) == orb[0]


def test_pre_periodic_points(ex21, sigma_f, sigma_g, classical):
    p = periodic_point(sigma_f, ("1",))
    got = pre_periodic_points(sigma_f, p, 1)
    assert {format_point(q) for q in got} == {"(a)* ; 3 (1)*"}
    assert len(pre_periodic_points(sigma_g, periodic_point(sigma_g, ("1",)), 1)) == 3
    assert pre_periodic_points(classical, periodic_point(classical, ("0",)), 2) == set()
    p2 = periodic_point(ex21, ("2",))
    assert {format_point(q) for q in pre_periodic_points(ex21, p2, 1)} == {
        "(b)* ; 3 (2)*"
    }
    assert {format_point(q) for q in pre_periodic_points(ex21, p2, 2)} == {
        "(b)* ; 3 (2)*",
        "(b)* ; 2 3 (2)*",
    }


def test_stable_unstable_membership(coding2):
    p = periodic_point(coding2, ("0", "1'"))
    h = parse_point("(a b)* b a ; 1 (0 1')*")
    rep = stable_unstable_membership(coding2, p, h)
    assert rep.s_global.holds and rep.s_global.merge == 1 and rep.s_global.phase == 1
    assert rep.u_global.holds and rep.u_global.merge == 2 and rep.u_global.phase == 0
    assert not rep.s_special.holds
    assert not rep.u_special.holds
    # the periodic point itself sits in all four of its sets
    rep = stable_unstable_membership(coding2, p, shift(coding2, p.point))
    assert rep.s_global.holds and rep.u_global.holds


def test_heteroclinic_check(sigma_f):
    p = periodic_point(sigma_f, ("1",))
    q = periodic_point(sigma_f, ("2",))
    assert heteroclinic_check(sigma_f, p, q, parse_point("(b)* ; (1)*"))
    assert not heteroclinic_check(sigma_f, p, q, parse_point("(b)* ; 3 (1)*"))
    assert not heteroclinic_check(sigma_f, q, p, parse_point("(b)* ; (1)*"))
    with pytest.raises(InvalidWord):
        heteroclinic_check(sigma_f, p, p, parse_point("(b)* ; (1)*"))


def test_homoclinic_example(coding2):
    p = periodic_point(coding2, ("0", "1'"))
    h = parse_point("(a b)* b a ; 1 (0 1')*")
    datum = homoclinic_datum(coding2, p, h)
    assert (datum.k_back, datum.n_back, datum.k_fwd, datum.n_fwd) == (0, 3, 1, 1)
    orbs = homoclinic_orbits(coding2, datum)
    assert [o.choices for o in orbs] == [
        ("0", "1"),
        ("0", "1'"),
        ("0'", "1"),
        ("0'", "1'"),
    ]
    level1 = {format_point(o.point(coding2, -1)) for o in orbs}
    assert level1 == {"(a b)* b ; 0 1 (0 1')*", "(a b)* b ; 0' 1 (0 1')*"}
    level2 = [format_point(o.point(coding2, -2)) for o in orbs]
    assert level2 == [
        "(a b)* ; 1 0 1 (0 1')*",
        "(a b)* ; 1' 0 1 (0 1')*",
        "(a b)* ; 1 0' 1 (0 1')*",
        "(a b)* ; 1' 0' 1 (0 1')*",
    ]
    assert orbs[0].point(coding2, 0) == h
    assert orbs[0].point(coding2, 2) == parse_point("(a b)* b a b a ; (1' 0)*")
    assert letter_preimage_sum(coding2, datum) == 4


def test_homoclinic_shift_consistency(coding2):
    p = periodic_point(coding2, ("0", "1'"))
    datum = homoclinic_datum(coding2, p, parse_point("(a b)* b a ; 1 (0 1')*"))
    o = homoclinic_orbits(coding2, datum)[0]
    for i in range(-5, 3):
        assert shift(coding2, o.point(coding2, i)) == o.point(coding2, i + 1)


def test_homoclinic_full_branching(sigma_f):
    p = periodic_point(sigma_f, ("1",))
    h = parse_point("(a)* b b b ; (1)*")
    datum = homoclinic_datum(sigma_f, p, h)
    assert (datum.k_back, datum.n_back, datum.k_fwd, datum.n_fwd) == (0, 4, 0, 0)
    orbs = homoclinic_orbits(sigma_f, datum)
    assert len(orbs) == 8
    assert sorted(o.choices for o in orbs) == [
        ("2", "2", "2"),
        ("2", "2", "4"),
        ("2", "4", "2"),
        ("2", "4", "4"),
        ("4", "2", "2"),
        ("4", "2", "4"),
        ("4", "4", "2"),
        ("4", "4", "4"),
    ]
    assert letter_preimage_sum(sigma_f, datum) == 6


def test_homoclinic_invertible_unique(classical):
    p = periodic_point(classical, ("0",))
    h = parse_point("(0)* 1 ; 1 (0)*")
    datum = homoclinic_datum(classical, p, h)
    orbs = homoclinic_orbits(classical, datum)
    assert len(orbs) == 1
    assert format_point(orbs[0].point(classical, -2)) == "(0)* ; 0 1 1 (0)*"
