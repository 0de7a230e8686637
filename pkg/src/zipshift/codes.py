"""Sliding block codes between zip shift spaces, with block, power, and
inversion constructions.

A code is given by two finite tables: one maps source windows of positive
letters to a target letter, the other maps seam blocks (one negative-side
letter followed by a window of positive letters) to a target negative-side
letter.  The constructor checks that the two tables cohere, derives the
target's own transition map from them, and builds the image space as a
relabeled walk graph of the source; the image space's validation then
re-checks the derived map against the actual image language.
"""
from __future__ import annotations

import itertools
import math
import random

from dataclasses import dataclass

from .errors import InvalidCode, InvalidWord, UnknownSymbol, ZipShiftError
from .graph import LabeledGraph, _block_recode, presentation_graph, vertex_like
from .orbits import periodic_points
from .point import EpPoint, random_point, shift
from .preimage import canonical_lift
from .space import ZipShiftSpace, full_space, sft_space, sofic_space
from .symbols import Alphabet, TransitionMap, Word


def _walk_graph(space: ZipShiftSpace, span: int) -> LabeledGraph:
    """A graph whose bi-infinite walks spell the space's positive-side
    language, with every edge carrying an admissible ``span``-letter word.

    Finite-type spaces get the sliding-window graph on admissible words of
    length span - 1 (at least the memory); sofic spaces reuse the block
    recode of their presentation.  Each edge's word is its source label
    followed by the emitted letter.
    """
    if space.kind == "sofic":
        vl = vertex_like(presentation_graph(space))
        return _block_recode(vl, max(span - 1, space.n, 1), space)
    ell = max(span - 1, space.n - 1, space.memory(), 1)
    vertices = space.language(ell)
    index = {w: i for i, w in enumerate(vertices)}
    edges: list[tuple[int, int, str, str | None]] = []
    for u in vertices:
        for c in space.alphabet_aprime:
            w = u + (c,)
            if space.admissible_word(w):
                edges.append((index[u], index[w[1:]], c, None))
    return LabeledGraph(list(vertices), edges)


class BlockCodeSpec:
    """A validated sliding block code from one zip shift space to another.

    ``psi_plus`` maps every admissible ``window``-word of positive letters
    to a letter of ``target_aprime``; ``psi_minus`` maps every admissible
    seam block (one negative-side letter, then a window) to a letter of
    ``target_a``.  ``m`` is the arity of the image space's transition map,
    which is derived from the tables: each source stretch long enough to
    produce m image letters also forces their image seam letter, and any
    two stretches producing the same image letters must agree on it.

    The image space is constructed as part of validation and exposed as
    ``target``; codes that leave the image's left side depending on the
    choice of backward branches are rejected by the coherence check.
    """

    def __init__(
        self,
        source: ZipShiftSpace,
        target_a: Alphabet,
        target_aprime: Alphabet,
        m: int,
        psi_plus: dict[Word, str],
        psi_minus: dict[Word, str],
        window: int | None = None,
    ):
        if m < 1:
            raise InvalidCode(f"target map arity must be >= 1, got {m}")
        window = source.n if window is None else window
        if window < 1:
            raise InvalidCode(f"window must be >= 1, got {window}")
        self.source = source
        self.target_a = target_a
        self.target_aprime = target_aprime
        self.m = m
        self.window = window
        self.psi_plus = {tuple(k): v for k, v in psi_plus.items()}
        self.psi_minus = {tuple(k): v for k, v in psi_minus.items()}

        dom = set(self.psi_plus)
        want = set(source.language(window))
        if dom != want:
            raise InvalidCode(
                "positive table domain mismatch: "
                f"missing {sorted(want - dom)[:3]}, extra {sorted(dom - want)[:3]}"
            )
        vals = set(self.psi_plus.values())
        if not vals <= set(target_aprime.symbols):
            raise InvalidCode(f"positive table emits unknown letters {sorted(vals - set(target_aprime.symbols))}")
        if vals != set(target_aprime.symbols):
            raise InvalidCode(f"positive table never emits {sorted(set(target_aprime.symbols) - vals)}")

        mwant = {
            (a,) + u
            for u in want
            for a in source.alphabet_a
            if source.mixed_admissible((a,), u)
        }
        mdom = set(self.psi_minus)
        if mdom != mwant:
            raise InvalidCode(
                "seam table domain mismatch: "
                f"missing {sorted(mwant - mdom)[:3]}, extra {sorted(mdom - mwant)[:3]}"
            )
        mvals = set(self.psi_minus.values())
        if not mvals <= set(target_a.symbols):
            raise InvalidCode(f"seam table emits unknown letters {sorted(mvals - set(target_a.symbols))}")

        # Coherence: every long-enough source stretch determines both the m
        # image letters and the image seam letter; the map from the former
        # to the latter must be single-valued to be a transition map at all.
        n = source.n
        span = max(m + window - 1, window + 1, n)
        derived: dict[Word, str] = {}
        for u in source.language(span):
            y = tuple(self.psi_plus[u[j : j + window]] for j in range(m))
            seam = self.psi_minus[(source.tm(u[:n]),) + u[1 : window + 1]]
            prev = derived.setdefault(y, seam)
            if prev != seam:
                raise InvalidCode(
                    f"image block {' '.join(y)} forces both seam letters "
                    f"{prev!r} and {seam!r}; the tables do not commute with the shift"
                )
        self.derived = derived

        g = _walk_graph(source, window)
        names = [f"q{i}" for i in range(g.n_vertices())]
        edges = [
            (names[src], names[dst], self.psi_plus[(g.labels[src] + (first,))[:window]])
            for src, dst, first, _ in g.edges
        ]
        try:
            self.target = sofic_space(
                target_a, target_aprime, TransitionMap(m, derived), names, edges
            )
        except (InvalidWord, UnknownSymbol) as e:
            raise InvalidCode(f"derived image space is inconsistent: {e}") from e


def apply_code(spec: BlockCodeSpec, x: EpPoint) -> EpPoint:
    """The image of x under the code, as a point of spec.target.

    The positive side reads the table over the point's own letters; the
    negative side reads it over the canonical backward branch, then applies
    the derived transition map.  Coherence of the tables makes the result
    independent of which backward branch is taken.
    """
    lift = canonical_lift(spec.source, x)
    w = spec.window

    def z(i: int) -> str:
        return spec.psi_plus[lift.window(i, w)]

    rt = tuple(z(i) for i in range(len(x.right_transient)))
    rp = tuple(z(len(x.right_transient) + j) for j in range(len(x.right_period)))

    def y_neg(j: int) -> str:
        key = tuple(z(-j + t) for t in range(spec.m))
        try:
            return spec.derived[key]
        except KeyError:
            raise InvalidCode(
                f"image block {' '.join(key)} has no derived seam letter"
            ) from None

    depth = len(lift.left_transient) + spec.m + w
    out = [y_neg(j) for j in range(1, depth + 1)]
    cyc = [y_neg(depth + 1 + t) for t in range(len(lift.left_period))]
    return EpPoint(tuple(reversed(cyc)), tuple(reversed(out)), rt, rp)


@dataclass(frozen=True)
class CommutationReport:
    ok: bool
    witness: EpPoint | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_commutation(
    spec: BlockCodeSpec, samples: int = 50, rng: random.Random | None = None
) -> CommutationReport:
    """Spot-check code-then-shift against shift-then-code.

    Samples random source points, adds every periodic point of repeat
    length up to 4 when the source supports enumeration, and reports the
    first point where the two sides disagree.
    """
    rng = rng or random.Random(0)
    pts = [random_point(spec.source, rng) for _ in range(samples)]
    if spec.source.kind != "sofic":
        for mm in range(1, 5):
            pts.extend(p.point for p in periodic_points(spec.source, mm))
    for x in dict.fromkeys(pts):
        try:
            lhs = apply_code(spec, shift(spec.source, x))
            rhs = shift(spec.target, apply_code(spec, x))
        except ZipShiftError:
            return CommutationReport(False, x)
        if lhs != rhs:
            return CommutationReport(False, x)
    return CommutationReport(True, None)


@dataclass(frozen=True)
class NotFound:
    """Inversion failed for every window up to the bound."""

    max_window: int

    def __bool__(self) -> bool:
        return False


def invert_code(
    spec: BlockCodeSpec, max_window: int = 4, rng: random.Random | None = None
) -> BlockCodeSpec | NotFound:
    """Search for a sliding block inverse of the code.

    For each candidate window the inverse tables are forced: all source
    stretches with the same image window must start with the same letter,
    and likewise for seam blocks.  A forced candidate is accepted once it
    round-trips on sampled points in both directions.  Injectivity on
    short periodic points is screened first, since a non-injective code
    can never invert.
    """
    rng = rng or random.Random(0)
    src = spec.source
    if src.kind != "sofic":
        images: dict[EpPoint, EpPoint] = {}
        for mm in range(1, max_window + 1):
            for p in periodic_points(src, mm):
                y = apply_code(spec, p.point)
                prev = images.setdefault(y, p.point)
                if prev != p.point:
                    return NotFound(max_window)

    for w in range(1, max_window + 1):
        stretches = src.language(w + spec.window - 1)
        zwords: dict[Word, Word] = {
            u: tuple(spec.psi_plus[u[j : j + spec.window]] for j in range(w))
            for u in stretches
        }
        groups: dict[Word, set[str]] = {}
        for u, zw in zwords.items():
            groups.setdefault(zw, set()).add(u[0])
        if any(len(s) > 1 for s in groups.values()):
            continue
        plus_inv = {zw: next(iter(s)) for zw, s in groups.items()}

        mgroups: dict[Word, set[str]] = {}
        for u, zw in zwords.items():
            for a in src.alphabet_a:
                if not src.mixed_admissible((a,), u[: spec.window]):
                    continue
                c = spec.psi_minus[(a,) + u[: spec.window]]
                mgroups.setdefault((c,) + zw, set()).add(a)
        if any(len(s) > 1 for s in mgroups.values()):
            continue
        minus_inv = {k: next(iter(s)) for k, s in mgroups.items()}

        try:
            inv = BlockCodeSpec(
                spec.target,
                src.alphabet_a,
                src.alphabet_aprime,
                src.tm.n,
                plus_inv,
                minus_inv,
                window=w,
            )
        except InvalidCode:
            continue

        trial = [random_point(src, rng) for _ in range(50)]
        if src.kind != "sofic":
            for mm in range(1, 4):
                trial.extend(p.point for p in periodic_points(src, mm))
        back = [random_point(spec.target, rng) for _ in range(50)]
        try:
            if any(
                apply_code(inv, apply_code(spec, x)) != x for x in dict.fromkeys(trial)
            ) or any(
                apply_code(spec, apply_code(inv, y)) != y for y in dict.fromkeys(back)
            ):
                continue
        except ZipShiftError:
            continue
        return inv
    return NotFound(max_window)


# -- block and power presentations -----------------------------------------


def _has_forbidden_subword(blocks: Word, forbidden: set[Word]) -> bool:
    return any(
        blocks[i : i + f] in forbidden
        for f in range(2, len(blocks))
        for i in range(len(blocks) - f + 1)
    )


def _joiner(space: ZipShiftSpace) -> str:
    single = all(
        len(c) == 1
        for c in tuple(space.alphabet_a.symbols) + tuple(space.alphabet_aprime.symbols)
    )
    return "" if single else "."


def _join(sep: str, w: Word) -> str:
    return sep.join(w) if sep else "".join(w)


def _split(sep: str, letter: str) -> tuple[str, ...]:
    return tuple(letter.split(sep)) if sep else tuple(letter)


def higher_block(space: ZipShiftSpace, N: int):
    """The sliding N-block presentation of the space.

    Returns (block space, forward map, inverse map).  Each letter of the
    block space names an admissible length-N word; consecutive letters
    overlap in N-1 positions, so the forward map is a conjugacy and the
    inverse just reads off first coordinates.
    """
    if N < 1:
        raise InvalidWord(f"block length must be >= 1, got {N}")
    sep = _joiner(space)
    n = space.n
    new_ap = Alphabet([_join(sep, w) for w in space.language(N)])
    new_a = Alphabet([_join(sep, w) for w in space.language(N, "a")])
    table: dict[Word, str] = {}
    for u in space.language(N + n - 1):
        key = tuple(_join(sep, u[j : j + N]) for j in range(n))
        table[key] = _join(sep, space.tm.phi_extend(u))
    tm = TransitionMap(n, table)

    if space.kind == "sofic":
        g = _block_recode(vertex_like(presentation_graph(space)), max(N, n, 1), space)
        names = [f"q{i}" for i in range(g.n_vertices())]
        edges = [
            (names[src], names[dst], _join(sep, (g.labels[src] + (first,))[:N]))
            for src, dst, first, _ in g.edges
        ]
        new_space = sofic_space(new_a, new_ap, tm, names, edges)
    else:
        spell = {c: _split(sep, c) for c in new_ap}
        K = space.step_k + 1 if space.step_k else 0
        forbidden: set[Word] = set()
        for r in range(2, max(2, K - N + 1) + 1):
            for blocks in itertools.product(new_ap, repeat=r):
                if _has_forbidden_subword(blocks, forbidden):
                    continue
                word = spell[blocks[0]]
                ok = True
                for b in blocks[1:]:
                    wb = spell[b]
                    if N > 1 and word[-(N - 1) :] != wb[: N - 1]:
                        ok = False
                        break
                    word = word + wb[N - 1 :]
                if not ok or not space.admissible_word(word):
                    forbidden.add(tuple(blocks))
        if forbidden:
            new_space = sft_space(new_a, new_ap, tm, forbidden)
        else:
            new_space = full_space(new_a, new_ap, tm)

    def forward(x: EpPoint) -> EpPoint:
        rt = tuple(_join(sep, x.window(i, N)) for i in range(len(x.right_transient)))
        rp = tuple(
            _join(sep, x.window(len(x.right_transient) + j, N))
            for j in range(len(x.right_period))
        )

        def bar(p: int) -> str:
            return x.letter(p) if p < 0 else space.tm(x.window(p, n))

        def y_neg(j: int) -> str:
            return _join(sep, tuple(bar(-j + t) for t in range(N)))

        depth = len(x.left_transient) + N
        out = [y_neg(j) for j in range(1, depth + 1)]
        cyc = [y_neg(depth + 1 + t) for t in range(len(x.left_period))]
        return EpPoint(tuple(reversed(cyc)), tuple(reversed(out)), rt, rp)

    def inverse(y: EpPoint) -> EpPoint:
        first = lambda c: _split(sep, c)[0]
        return EpPoint(
            tuple(first(c) for c in y.left_period),
            tuple(first(c) for c in y.left_transient),
            tuple(first(c) for c in y.right_transient),
            tuple(first(c) for c in y.right_period),
        )

    return new_space, forward, inverse


def higher_power(space: ZipShiftSpace, N: int):
    """The N-step power of the space: letters are aligned N-blocks and one
    step of the new shift is N steps of the old one.

    Returns (power space, forward map).  The new transition map's arity is
    the least that lets N-blocks cover an old transition window.
    """
    if N < 1:
        raise InvalidWord(f"power must be >= 1, got {N}")
    sep = _joiner(space)
    n = space.n
    n2 = 1 + math.ceil((n - 1) / N)
    new_ap = Alphabet([_join(sep, w) for w in space.language(N)])
    new_a = Alphabet([_join(sep, w) for w in space.language(N, "a")])
    table: dict[Word, str] = {}
    for u in space.language(n2 * N):
        key = tuple(_join(sep, u[j * N : (j + 1) * N]) for j in range(n2))
        table[key] = _join(sep, space.tm.phi_extend(u[: N + n - 1]))
    tm = TransitionMap(n2, table)

    if space.kind == "sofic":
        frontier: list[tuple[str, str, Word]] = [
            (v, v, ()) for v in space.presentation_vertices
        ]
        out: dict[str, list[tuple[str, str]]] = {v: [] for v in space.presentation_vertices}
        for s, d, c in space.presentation_edges:
            out[s].append((d, c))
        for _ in range(N):
            frontier = [
                (v0, d, w + (c,)) for v0, v, w in frontier for d, c in out[v]
            ]
        edges = sorted(
            {(v0, v1, _join(sep, w)) for v0, v1, w in frontier}
        )
        new_space = sofic_space(
            new_a, new_ap, tm, list(space.presentation_vertices), edges
        )
    else:
        spell = {c: _split(sep, c) for c in new_ap}
        K = space.step_k + 1 if space.step_k else 0
        forbidden: set[Word] = set()
        top = max(2, (K + N - 2) // N + 1) if K else 0
        for r in range(2, top + 1):
            for blocks in itertools.product(new_ap, repeat=r):
                if _has_forbidden_subword(blocks, forbidden):
                    continue
                word = tuple(c for b in blocks for c in spell[b])
                if not space.admissible_word(word):
                    forbidden.add(tuple(blocks))
        if forbidden:
            new_space = sft_space(new_a, new_ap, tm, forbidden)
        else:
            new_space = full_space(new_a, new_ap, tm)

    def forward(x: EpPoint) -> EpPoint:
        rt_len = math.ceil(len(x.right_transient) / N)
        rp_len = len(x.right_period) // math.gcd(N, len(x.right_period))
        rt = tuple(_join(sep, x.window(i * N, N)) for i in range(rt_len))
        rp = tuple(_join(sep, x.window((rt_len + j) * N, N)) for j in range(rp_len))
        lt_len = math.ceil(len(x.left_transient) / N)
        lp_len = len(x.left_period) // math.gcd(N, len(x.left_period))

        def y_neg(j: int) -> str:
            return _join(sep, tuple(x.letter(-j * N + t) for t in range(N)))

        out = [y_neg(j) for j in range(1, lt_len + 1)]
        cyc = [y_neg(lt_len + 1 + t) for t in range(lp_len)]
        return EpPoint(tuple(reversed(cyc)), tuple(reversed(out)), rt, rp)

    return new_space, forward
