"""Periodic orbit structure: periodic and pre-periodic points, stable and
unstable tail membership, and homoclinic orbit enumeration.

A periodic point is the two-sided repetition of an admissible cycle word,
with transition-map images filling the negative side.  Pre-periodic points
are the extra backward branches that fall onto such an orbit after finitely
many steps.  Homoclinic orbits are enumerated by choosing a backward branch
letter at each depth before the point's left tail has merged with the
orbit; deeper letters are forced by the orbit's own two-sided lift.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import InvalidWord, NotFiniteType, NotInSpace
from .point import EpPoint, shift, shift_k
from .preimage import (
    _preimage_point,
    labeled_graph_for,
    point_admissibility,
    preimages,
    preimages_k,
)
from .space import ZipShiftSpace
from .symbols import Word


@dataclass(frozen=True)
class PeriodicPoint:
    """An admissible cycle word together with its two-sided repetition."""

    word: Word
    point: EpPoint

    @property
    def period(self) -> int:
        return len(self.word)


def periodic_point(space: ZipShiftSpace, word: Word) -> PeriodicPoint:
    """The periodic point repeating ``word``, or InvalidWord if no such point.

    The left side holds the transition-map images of the repetition, so its
    repeating pattern generally differs from ``word`` and may be shorter
    after canonicalization.
    """
    word = tuple(word)
    if not word:
        raise InvalidWord("period word must be non-empty")
    m = len(word)
    # Every cyclic window wide enough to cover a forbidden word must be
    # admissible; that settles membership for finite-type spaces, and is a
    # cheap necessary screen before the walk check on sofic ones.
    if space.kind == "sofic":
        width = max(space.n, 2)
    else:
        width = max(space.step_k + 1, space.n)
    u = word * (width // m + 2)
    for i in range(m):
        if not space.admissible_word(u[i : i + width]):
            raise InvalidWord(
                f"cycle {' '.join(word)} has an inadmissible window"
            )

    def img(depth: int) -> str:
        start = (-depth) % m
        return space.tm(u[start : start + space.n])

    lp = tuple(img(m - i) for i in range(m))
    candidate = EpPoint(lp, (), (), word)
    if space.kind == "sofic" and not point_admissibility(space, candidate):
        raise InvalidWord(f"cycle {' '.join(word)} does not label a closed walk")
    return PeriodicPoint(word, candidate)


def periodic_points(space: ZipShiftSpace, m: int) -> set[PeriodicPoint]:
    """All periodic points whose repeat length is m (not necessarily least).

    One entry per admissible cycle word, so a fixed point reappears at every
    multiple of its least period under a different word; the count matches
    count_periodic(m).
    """
    if m < 1:
        raise InvalidWord(f"period must be >= 1, got {m}")
    if space.kind == "sofic":
        raise NotFiniteType("periodic enumeration needs a finite-type space")
    out: set[PeriodicPoint] = set()
    for word in itertools.product(space.alphabet_aprime, repeat=m):
        try:
            out.add(periodic_point(space, word))
        except InvalidWord:
            continue
    return out


def orbit_points(space: ZipShiftSpace, p: PeriodicPoint) -> tuple[EpPoint, ...]:
    """The forward orbit of p as distinct points, starting at p itself."""
    pts = [p.point]
    while True:
        nxt = shift(space, pts[-1])
        if nxt == pts[0]:
            return tuple(pts)
        pts.append(nxt)


def pre_periodic_points(
    space: ZipShiftSpace, p: PeriodicPoint, level: int, d_max: int = 32
) -> set[EpPoint]:
    """Points that fall onto the orbit of p within ``level`` whole periods.

    A point qualifies when some multiple k*m of the period with k <= level
    shifts it onto an orbit point, and it is not an orbit point itself.
    """
    if level < 1:
        raise InvalidWord(f"level must be >= 1, got {level}")
    orbit = set(orbit_points(space, p))
    m = len(p.word)
    found: set[EpPoint] = set()
    for o in orbit:
        for k in range(1, level + 1):
            found |= preimages_k(space, o, k * m, d_max)
    return found - orbit


@dataclass(frozen=True)
class TailFlag:
    """One membership verdict: ``merge`` is the index from which the tails
    agree (right side: letters at i >= merge; left side: depths > merge),
    and ``phase`` is the orbit shift that makes them agree."""

    holds: bool
    merge: int | None = None
    phase: int | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class StableUnstableReport:
    s_global: TailFlag
    s_special: TailFlag
    u_global: TailFlag
    u_special: TailFlag


def _right_merge(t: EpPoint, r: EpPoint) -> int | None:
    """Least i0 >= 0 with t_i = r_i for all i >= i0, or None."""
    start = max(len(t.right_transient), len(r.right_transient))
    span = math.lcm(len(t.right_period), len(r.right_period))
    if any(t.letter(i) != r.letter(i) for i in range(start, start + span)):
        return None
    d = start
    while d > 0 and t.letter(d - 1) == r.letter(d - 1):
        d -= 1
    return d


def _left_merge(t: EpPoint, r: EpPoint) -> int | None:
    """Least d0 >= 0 with t_{-d} = r_{-d} for all depths d > d0, or None."""
    start = max(len(t.left_transient), len(r.left_transient)) + 1
    span = math.lcm(len(t.left_period), len(r.left_period))
    if any(t.letter(-d) != r.letter(-d) for d in range(start, start + span)):
        return None
    d = start
    while d > 1 and t.letter(-(d - 1)) == r.letter(-(d - 1)):
        d -= 1
    return d - 1


def stable_unstable_membership(
    space: ZipShiftSpace, p: PeriodicPoint, t: EpPoint
) -> StableUnstableReport:
    """Tail-equality tests of t against the orbit of p.

    The global sets allow any orbit phase; the special variants compare
    against p itself and require agreement on the whole half line.
    """
    orb = orbit_points(space, p)
    s_global = TailFlag(False)
    for k, r in enumerate(orb):
        d = _right_merge(t, r)
        if d is not None:
            s_global = TailFlag(True, d, k)
            break
    u_global = TailFlag(False)
    for k, r in enumerate(orb):
        d = _left_merge(t, r)
        if d is not None:
            u_global = TailFlag(True, d, k)
            break
    d = _right_merge(t, p.point)
    s_special = TailFlag(d == 0, 0 if d == 0 else None, 0 if d == 0 else None)
    d = _left_merge(t, p.point)
    u_special = TailFlag(d == 0, 0 if d == 0 else None, 0 if d == 0 else None)
    return StableUnstableReport(s_global, s_special, u_global, u_special)


def heteroclinic_check(
    space: ZipShiftSpace, p: PeriodicPoint, q: PeriodicPoint, y: EpPoint
) -> bool:
    """Whole-half-line membership: right side on p's orbit anchor, left on q's."""
    if q.point in set(orbit_points(space, p)):
        raise InvalidWord("the two periodic orbits coincide")
    return bool(stable_unstable_membership(space, p, y).s_special) and bool(
        stable_unstable_membership(space, q, y).u_special
    )


@dataclass(frozen=True)
class HomoclinicDatum:
    """A point doubly asymptotic to a periodic orbit, with merge data.

    The left tail of ``point`` equals the ``k_back``-shifted orbit point at
    every depth >= n_back; the right tail equals the ``k_fwd``-shifted orbit
    point at every index >= n_fwd.
    """

    periodic: PeriodicPoint
    point: EpPoint
    n_back: int
    n_fwd: int
    k_back: int
    k_fwd: int


def homoclinic_datum(
    space: ZipShiftSpace, p: PeriodicPoint, x: EpPoint
) -> HomoclinicDatum:
    """Derive the merge indices of x against the orbit of p.

    Raises NotInSpace when x lies on the orbit or one of its tails never
    merges with the orbit.
    """
    orb = orbit_points(space, p)
    if x in set(orb):
        raise NotInSpace("the point lies on the periodic orbit itself")
    back: tuple[int, int] | None = None
    for k, r in enumerate(orb):
        d = _left_merge(x, r)
        if d is not None:
            back = (k, d + 1)
            break
    fwd: tuple[int, int] | None = None
    for k, r in enumerate(orb):
        d = _right_merge(x, r)
        if d is not None:
            fwd = (k, d)
            break
    if back is None or fwd is None:
        raise NotInSpace("the point is not doubly asymptotic to the orbit")
    return HomoclinicDatum(p, x, back[1], fwd[1], back[0], fwd[0])


@dataclass(frozen=True)
class HomoclinicOrbit:
    """One backward branch history through a homoclinic point.

    ``choices`` lists the branch letters picked at depths 1..n_back-1; all
    deeper letters are forced by the orbit's two-sided lift.  Two orbits are
    the same exactly when their choice words agree.
    """

    datum: HomoclinicDatum
    choices: Word

    def _forced(self, space: ZipShiftSpace, depth: int) -> str:
        anchor = orbit_points(space, self.datum.periodic)[self.datum.k_back]
        w = anchor.right_period
        return w[(-depth) % len(w)]

    def point(self, space: ZipShiftSpace, i: int) -> EpPoint:
        """The orbit entry at index i (index 0 is the datum's point)."""
        if i >= 0:
            return shift_k(space, self.datum.point, i)
        cur = self.datum.point
        for depth in range(1, -i + 1):
            if depth <= len(self.choices):
                t = self.choices[depth - 1]
            else:
                t = self._forced(space, depth)
            cur = _preimage_point(cur, t)
        return cur


def _forced_tail_ok(
    space: ZipShiftSpace,
    datum: HomoclinicDatum,
    leaf: EpPoint,
    forced,
    phase_mod: int,
    d_max: int,
) -> bool:
    """Can the branch keep following the forced lift letters forever?

    Each step is decided exactly by the pre-image engine; the loop stops
    once the (depth phase, seam window) state repeats, since from then on
    the answers cycle.
    """
    g = labeled_graph_for(space)
    width = len(g.labels[0]) + max(space.n, space.step_k, 1)
    seen: set[tuple[int, Word]] = set()
    cur = leaf
    s = datum.n_back
    while True:
        state = (s % phase_mod, cur.window(0, width))
        if state in seen:
            return True
        seen.add(state)
        t = forced(s)
        nxt = None
        for y in preimages(space, cur, d_max).points:
            if y.letter(0) == t:
                nxt = y
                break
        if nxt is None:
            return False
        cur = nxt
        s += 1


def homoclinic_orbits(
    space: ZipShiftSpace, datum: HomoclinicDatum, d_max: int = 32
) -> tuple[HomoclinicOrbit, ...]:
    """All backward branch histories through the datum's point.

    Depths 1..n_back-1 branch over every viable pre-image letter; from depth
    n_back on the letters are forced by the two-sided lift of the orbit
    anchor, and branches whose forced continuation dies are dropped.
    Returned in alphabet order of the choice words.
    """
    anchor = orbit_points(space, datum.periodic)[datum.k_back]
    w = anchor.right_period

    def forced(s: int) -> str:
        return w[(-s) % len(w)]

    phase_mod = math.lcm(len(w), len(anchor.left_period))
    leaves: list[tuple[Word, EpPoint]] = [((), datum.point)]
    for _ in range(1, datum.n_back):
        grown: list[tuple[Word, EpPoint]] = []
        for choices, cur in leaves:
            for y in preimages(space, cur, d_max).points:
                grown.append((choices + (y.letter(0),), y))
        leaves = grown
    out = [
        HomoclinicOrbit(datum, choices)
        for choices, leaf in leaves
        if _forced_tail_ok(space, datum, leaf, forced, phase_mod, d_max)
    ]
    out.sort(key=lambda o: space.alphabet_aprime.key(o.choices))
    return tuple(out)


def letter_preimage_sum(space: ZipShiftSpace, datum: HomoclinicDatum) -> int:
    """Sum over the free backward depths of the seam letter's fiber size.

    A coarse count of branch letters considered depth by depth; the exact
    orbit count from homoclinic_orbits can exceed it, since independent
    choices multiply rather than add.
    """
    fiber = {a: 0 for a in space.alphabet_a}
    for u in space.language(space.n):
        fiber[space.tm(u)] += 1
    return sum(
        fiber[datum.point.letter(-s)] for s in range(1, datum.n_back)
    )
