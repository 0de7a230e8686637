"""Pre-image enumeration on the backward labeled graph.

A pre-image of x prepends one A'-letter to the right side and drops the
deepest seam letter of the left side.  Candidates are read off the backward
labeled graph: one backward step from the position-0 vertex along edges whose
sofic label matches x_{-1}, then an exact viability decision (product of the
backward graph with the left label's transient-then-cycle automaton) keeps
the candidates that extend to genuine points.  A bounded-depth path search
adds the delay / left-closing / distinguishable metadata on top; enumeration
never depends on that search resolving.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidWord, NotInSpace
from .graph import LabeledGraph, build_labeled_graph
from .point import AdmissibilityReport, EpPoint
from .space import Lift, ZipShiftSpace
from .symbols import Word


@lru_cache(maxsize=None)
def labeled_graph_for(space: ZipShiftSpace) -> LabeledGraph:
    return build_labeled_graph(space)


def _right_remainder(x: EpPoint, ell: int) -> tuple[Word, Word]:
    """The right tail of x from index ell on, as (transient, period)."""
    rt, rp = x.right_transient, x.right_period
    if ell <= len(rt):
        return rt[ell:], rp
    k = (ell - len(rt)) % len(rp)
    return (), rp[k:] + rp[:k]


def _left_label_outward(x: EpPoint, skip: int) -> tuple[Word, Word]:
    """The A-label (x_{-1-skip}, x_{-2-skip}, ...) as (transient, period)."""
    trans = tuple(reversed(x.left_transient))
    per = tuple(reversed(x.left_period))
    if skip <= len(trans):
        return trans[skip:], per
    k = (skip - len(trans)) % len(per)
    return (), per[k:] + per[:k]


def _alive_cycle_nodes(n_vertices: int, m: int, succ) -> set[tuple[int, int]]:
    """Nodes of the (vertex, phase) product from which infinite runs exist."""
    alive = {(v, ph) for v in range(n_vertices) for ph in range(m)}
    changed = True
    while changed:
        changed = False
        for node in list(alive):
            if not (succ(node) & alive):
                alive.discard(node)
                changed = True
    return alive


def left_viability(
    space: ZipShiftSpace,
    start_vertices: set[int],
    left_label: tuple[Word, Word],
) -> bool:
    """Can the backward graph spell the label forever from some start vertex?

    The label is an A-word stream given outward (the entry at depth 1 first)
    as a transient followed by a repeating period.  Decided exactly on the
    product of the backward graph with the label's shape.
    """
    transient, period = left_label
    if not period:
        raise InvalidWord("left label needs a non-empty period")
    g = labeled_graph_for(space)
    states = set(start_vertices)
    for a in transient:
        states = {e[0] for v in states for e in g.in_edges(v) if e[3] == a}
        if not states:
            return False
    m = len(period)

    def succ(node: tuple[int, int]) -> set[tuple[int, int]]:
        v, ph = node
        return {(e[0], (ph + 1) % m) for e in g.in_edges(v) if e[3] == period[ph]}

    alive = _alive_cycle_nodes(g.n_vertices(), m, succ)
    return any((v, 0) in alive for v in states)


def _forward_spell_viable(
    g: LabeledGraph, start_vertices: set[int], tail: tuple[Word, Word]
) -> set[int]:
    """Start vertices from which the first-labels can spell the tail forever."""
    transient, period = tail
    m = len(period)

    def succ(node: tuple[int, int]) -> set[tuple[int, int]]:
        v, ph = node
        return {(e[1], (ph + 1) % m) for e in g.out_edges(v) if e[2] == period[ph]}

    alive = _alive_cycle_nodes(g.n_vertices(), m, succ)
    good = set()
    for v0 in start_vertices:
        states = {v0}
        for c in transient:
            states = {e[1] for v in states for e in g.out_edges(v) if e[2] == c}
            if not states:
                break
        if states and any((v, 0) in alive for v in states):
            good.add(v0)
    return good


def _position_zero_vertices(space: ZipShiftSpace, x: EpPoint) -> set[int]:
    """Graph vertices that can sit at index 0 of x's lift."""
    g = labeled_graph_for(space)
    ell = len(g.labels[0])
    ids = set(g.ids_with_label(x.window(0, ell)))
    if not ids:
        return set()
    return _forward_spell_viable(g, ids, _right_remainder(x, ell))


def point_admissibility(space: ZipShiftSpace, x: EpPoint) -> AdmissibilityReport:
    """Window admissibility on the unrolled representation plus liftability."""
    left_len = len(x.left_transient) + len(x.left_period)
    right_len = len(x.right_transient) + len(x.right_period)
    for j in range(1, left_len + 1):
        if x.letter(-j) not in space.alphabet_a:
            return AdmissibilityReport(False, f"letter {x.letter(-j)!r} at index {-j} is not in A")
    for i in range(right_len):
        if x.letter(i) not in space.alphabet_aprime:
            return AdmissibilityReport(False, f"letter {x.letter(i)!r} at index {i} is not in A'")
    if space.kind == "sofic":
        width = max(space.n, 2)
    else:
        width = max(space.memory() + 1, space.n)
    deep_l = len(x.left_transient) + 2 * len(x.left_period) + width
    deep_r = len(x.right_transient) + 2 * len(x.right_period) + width
    for i in range(-deep_l, deep_r - width + 1):
        w = x.window(i, width)
        if i >= 0:
            ok = space.admissible_word(w)
        elif i + width <= 0:
            ok = space.admissible_a_word(w)
        else:
            ok = space.mixed_admissible(w[: -i], w[-i:])
        if not ok:
            return AdmissibilityReport(
                False, f"window {' '.join(w)} at index {i} is not admissible"
            )
    starts = _position_zero_vertices(space, x)
    if not starts:
        return AdmissibilityReport(False, "right tail is not realizable by any walk")
    if not left_viability(space, starts, _left_label_outward(x, 0)):
        return AdmissibilityReport(False, "left label is not liftable")
    return AdmissibilityReport(True, None)


@dataclass(frozen=True)
class LabelClassification:
    """Bounded-depth search metadata over the pre-image branches.

    kind is one of delay, left_closing, distinguishable, sofic_left_closing
    or branching; ``searched_to`` reports the exhausted depth when the search
    did not resolve (branching is an answer, never an error).  Witness paths
    list, per branch letter, the vertex labels of one backward walk from the
    position-0 vertex outward.
    """

    kind: str
    delay: int | None = None
    length: int | None = None
    multiplicity: int | None = None
    variant: str | None = None
    searched_to: int | None = None
    witness_paths: tuple[tuple[str, tuple[Word, ...]], ...] = ()


@dataclass(frozen=True)
class PreimageResult:
    classification: LabelClassification
    points: tuple[EpPoint, ...]


def _preimage_point(x: EpPoint, t: str) -> EpPoint:
    if x.left_transient:
        lt = x.left_transient[:-1]
        lp = x.left_period
    else:
        lt = ()
        lp = (x.left_period[-1],) + x.left_period[:-1]
    return EpPoint(lp, lt, (t,) + x.right_transient, x.right_period)


class _Chain:
    """Backward path sets of one branch letter, tracked per depth.

    Counts are capped at 2: the search only distinguishes none / one / many
    paths, which is all the classification needs.  ``origin`` remembers one
    position-0 vertex behind each depth-1 vertex so witnesses can be walked
    back to the start of the path.
    """

    def __init__(
        self,
        g: LabeledGraph,
        x: EpPoint,
        starts: dict[int, int],
        origin: dict[int, int],
        d_max: int,
    ):
        counts = {u: min(2, c) for u, c in starts.items()}
        self.origin = origin
        self.parents: dict[tuple[int, int], int] = {}
        self.history: list[dict[int, int]] = [dict(counts)]
        for depth in range(2, d_max + 1):
            a = x.letter(-depth)
            new: dict[int, int] = {}
            for v, cnt in counts.items():
                for e in g.in_edges(v):
                    if e[3] == a:
                        u = e[0]
                        new[u] = min(2, new.get(u, 0) + cnt)
                        self.parents.setdefault((depth, u), v)
            counts = new
            self.history.append(dict(counts))
            if not counts:
                break

    def state_at(self, depth: int) -> dict[int, int]:
        if depth - 1 < len(self.history):
            return self.history[depth - 1]
        return {}

    def paths_at(self, depth: int) -> int:
        return min(2, sum(self.state_at(depth).values()))

    def witness(self, g: LabeledGraph, depth: int) -> tuple[Word, ...]:
        d = depth
        while d >= 1 and not self.state_at(d):
            d -= 1
        if d < 1:
            return ()
        v = min(self.state_at(d))
        path = [v]
        for dd in range(d, 1, -1):
            v = self.parents[(dd, v)]
            path.append(v)
        path.append(self.origin[v])
        path.reverse()
        return tuple(g.labels[u] for u in path)


def _classify(
    space: ZipShiftSpace,
    g: LabeledGraph,
    x: EpPoint,
    cands: dict[str, dict[int, int]],
    origin: dict[str, dict[int, int]],
    viable: list[str],
    v0: set[int],
    d_max: int,
) -> LabelClassification:
    """Match the backward path picture against the named patterns.

    A delay is witnessed at the smallest depth where exactly one path still
    carries the left label; left-closing at the smallest depth where at least
    two branch letters survive and every surviving path ends at one common
    vertex.  On sofic presentations the same patterns are reported as the
    distinguishable-by-depth variant and, when at least two position-0
    vertices still carry paths, the sofic left-closing kind; if the search
    exhausts d_max and exactly one position-0 vertex admits an infinite
    backward run, the label alone singles it out (variant L).  Everything
    else is branching, stamped with the searched depth.
    """
    chains = {t: _Chain(g, x, cands[t], origin[t], d_max) for t in cands}
    sofic = space.kind == "sofic"
    m_points = len(viable)

    def wits(depth: int):
        return tuple((t, chains[t].witness(g, depth)) for t in viable)

    start_chains: dict[int, _Chain] = {}
    if sofic and len(v0) >= 2:
        for v in sorted(v0):
            sv: dict[int, int] = {}
            for e in g.in_edges(v):
                if e[3] == x.letter(-1):
                    sv[e[0]] = min(2, sv.get(e[0], 0) + 1)
            if sv:
                start_chains[v] = _Chain(g, x, sv, dict.fromkeys(sv, v), d_max)

    for d in range(1, d_max + 1):
        alive = [t for t in cands if chains[t].state_at(d)]
        if not alive:
            break
        total = sum(chains[t].paths_at(d) for t in alive)
        if total == 1:
            if sofic:
                return LabelClassification(
                    kind="distinguishable",
                    variant="dL",
                    delay=d,
                    multiplicity=1,
                    witness_paths=wits(d),
                )
            return LabelClassification(
                kind="delay", delay=d, multiplicity=1, witness_paths=wits(d)
            )
        union: set[int] = set()
        for t in alive:
            union |= set(chains[t].state_at(d))
        if len(union) == 1 and len(alive) >= 2:
            if sofic and sum(1 for ch in start_chains.values() if ch.state_at(d)) >= 2:
                return LabelClassification(
                    kind="sofic_left_closing",
                    length=d,
                    multiplicity=len(alive),
                    witness_paths=wits(d),
                )
            return LabelClassification(
                kind="left_closing",
                length=d,
                multiplicity=len(alive),
                witness_paths=wits(d),
            )
    if sofic:
        label0 = _left_label_outward(x, 0)
        if sum(1 for v in v0 if left_viability(space, {v}, label0)) == 1:
            return LabelClassification(
                kind="distinguishable",
                variant="L",
                multiplicity=m_points,
                searched_to=d_max,
                witness_paths=wits(d_max),
            )
    return LabelClassification(
        kind="branching",
        multiplicity=m_points,
        searched_to=d_max,
        witness_paths=wits(d_max),
    )


def preimages(space: ZipShiftSpace, x: EpPoint, d_max: int = 32) -> PreimageResult:
    """All y with shift(y) = x, plus classification metadata."""
    report = point_admissibility(space, x)
    if not report.ok:
        raise NotInSpace(report.reason)
    g = labeled_graph_for(space)
    v0 = _position_zero_vertices(space, x)
    cands: dict[str, dict[int, int]] = {}
    origin: dict[str, dict[int, int]] = {}
    for v in sorted(v0):
        for e in g.in_edges(v):
            if e[3] == x.letter(-1):
                t = g.labels[e[0]][0]
                per_u = cands.setdefault(t, {})
                per_u[e[0]] = min(2, per_u.get(e[0], 0) + 1)
                origin.setdefault(t, {}).setdefault(e[0], v)
    label1 = _left_label_outward(x, 1)
    viable: list[str] = []
    points: list[EpPoint] = []
    for t in sorted(cands, key=space.alphabet_aprime.index):
        if left_viability(space, set(cands[t]), label1):
            viable.append(t)
            points.append(_preimage_point(x, t))
    classification = _classify(space, g, x, cands, origin, viable, v0, d_max)
    return PreimageResult(classification, tuple(points))


def preimages_k(
    space: ZipShiftSpace, x: EpPoint, k: int, d_max: int = 32
) -> set[EpPoint]:
    """All y with shift_k(y) = x, by k-fold branching with per-step pruning."""
    if k < 1:
        raise InvalidWord(f"pre-image depth must be >= 1, got {k}")
    frontier = {x}
    for _ in range(k):
        frontier = {y for p in frontier for y in preimages(space, p, d_max).points}
    return frontier


def canonical_lift(space: ZipShiftSpace, x: EpPoint) -> Lift:
    """The unique backward lift that always picks the least viable branch.

    The right side of the lift is x's right side verbatim.  Going left, each
    step follows the backward edge matching x's left label whose source
    vertex is least in (label, id) order among vertices that stay viable for
    the rest of the label.  The choices repeat once the (vertex, label phase)
    pair repeats, so the lift is eventually periodic.
    """
    g = labeled_graph_for(space)
    key = space.alphabet_aprime.key
    starts = _position_zero_vertices(space, x)
    viable0 = [
        v for v in starts if left_viability(space, {v}, _left_label_outward(x, 0))
    ]
    if not viable0:
        raise NotInSpace("point has no backward lift")
    v = min(viable0, key=lambda i: (key(g.labels[i]), i))
    trans_len = len(x.left_transient)
    m = len(x.left_period)
    seen: dict[tuple[int, int], int] = {}
    letters: list[str] = []
    depth = 0
    while True:
        if depth >= trans_len:
            state = (v, (depth - trans_len) % m)
            if state in seen:
                j = seen[state]
                return Lift(
                    tuple(reversed(letters[j:])),
                    tuple(reversed(letters[:j])),
                    x.right_transient,
                    x.right_period,
                )
            seen[state] = depth
        depth += 1
        a = x.letter(-depth)
        options = sorted(
            {e[0] for e in g.in_edges(v) if e[3] == a},
            key=lambda i: (key(g.labels[i]), i),
        )
        chosen = None
        for u in options:
            if left_viability(space, {u}, _left_label_outward(x, depth)):
                chosen = u
                break
        if chosen is None:
            raise NotInSpace("left label is not liftable")
        letters.append(g.labels[chosen][0])
        v = chosen
