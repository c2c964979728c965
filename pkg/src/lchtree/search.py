"""Rigid Morse flow tree enumeration over a validated front (base dim 1).

Over a 1-dimensional base a rigid tree with one positive puncture is built
from monotone runs of 2-valent corners with three kinds of branching:

* index-1 root chords emit one run (left or right along the unstable line),
  index-0 root chords emit two opposite runs split around a sheet strictly
  between the chord sheets (the 2-valent positive puncture);
* a run sheds its band at an index-1 chord of a boundary sheet against a
  sheet strictly inside (2-valent negative punctures, type 1/2);
* when a boundary sheet dies at a cusp whose partner is not the other
  boundary sheet, the run may split at the cusp into a same-direction
  continuation and an opposite-direction sliver (a Y1 vertex: 3-valent, on
  the cusp locus, dimension-neutral since the extra leaf cancels the Y1
  term in dim = -2 + I(a) + sum(1 - I(b)) + e - s - Y1).

Y0 splits (3-valent off the cusp locus) always raise the dimension by one
over a 1-dim base (their position is never pinned), and switches need two
difference slopes with opposite signs at a cusp where they agree, so
neither occurs; the enumerator records pruned Y0 candidates for
instrumentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class NonGenericFront(Exception):
    pass


class UndecomposableTree(Exception):
    pass


@dataclass(frozen=True)
class Corner:
    """2-valent negative puncture: the band sheds at an index-1 chord."""
    chord: str
    x: Fraction
    kind: str  # shed_top (type 1) | shed_bottom (type 2)
    old_pair: tuple
    new_pair: tuple


@dataclass(frozen=True)
class Y1Split:
    """3-valent vertex on the cusp locus: the run continues and emits an
    opposite-direction sliver arm through the cusp."""
    x: Fraction
    event_pos: int  # the cusp event
    side: str  # bottom | top: which boundary sheet dies at the cusp
    k: int  # the shared middle sheet of the two outgoing edges
    old_pair: tuple
    main_pair: tuple
    sliver: "Arm"


@dataclass(frozen=True)
class Terminal:
    kind: str  # end | neg
    x: Fraction
    chord: str | None = None
    event_pos: int | None = None
    pair: tuple | None = None


@dataclass(frozen=True)
class Arm:
    direction: int  # +1 rightward, -1 leftward
    start_pair: tuple  # (z-upper sheet, z-lower sheet) at the start
    steps: tuple  # Corner | Y1Split, in run order
    terminal: Terminal


@dataclass(frozen=True)
class FlowTree:
    root: str
    root_index: int
    arms: tuple  # one arm, or (top-sheet arm, bottom-sheet arm)

    def _walk_arm_entries(self, arm):
        out = []
        for st in arm.steps:
            if isinstance(st, Corner):
                continue
            out.append(st)
        return out

    def corners(self):
        out = []

        def rec(arm):
            for st in arm.steps:
                if isinstance(st, Corner):
                    out.append(st)
                else:
                    rec(st.sliver)
        for arm in self.arms:
            rec(arm)
        return out

    def y1s(self):
        out = []

        def rec(arm):
            for st in arm.steps:
                if isinstance(st, Y1Split):
                    out.append(st)
                    rec(st.sliver)
        for arm in self.arms:
            rec(arm)
        return out

    def e(self):
        n = 0

        def rec(arm):
            nonlocal n
            if arm.terminal.kind == "end":
                n += 1
            for st in arm.steps:
                if isinstance(st, Y1Split):
                    rec(st.sliver)
        for arm in self.arms:
            rec(arm)
        return n

    def s(self):
        return 0

    def y1(self):
        return len(self.y1s())

    def negatives_in_boundary_order(self):
        return [tag for kind, tag in self.boundary_entries() if kind == "neg"]

    def boundary_entries(self):
        """Punctures and ends in counterclockwise boundary order."""
        tokens, _ = boundary_walk_tokens(None, self)
        return [(t[1], t[2]) for t in tokens if t[0] == "entry"]

    def canonical(self):
        def arm_key(arm):
            steps = []
            for st in arm.steps:
                if isinstance(st, Corner):
                    steps.append(("c", st.chord, st.kind))
                else:
                    steps.append(("y1", st.event_pos, st.k, arm_key(st.sliver)))
            return (arm.direction, arm.start_pair, tuple(steps),
                    (arm.terminal.kind, arm.terminal.chord, arm.terminal.event_pos))
        return (self.root, tuple(arm_key(a) for a in self.arms))


def tree_dimension(front, tree: FlowTree) -> int:
    root = front.chord_by_name(tree.root)
    dim = -2 + root.index + tree.e() - tree.s() - tree.y1()
    for name in tree.negatives_in_boundary_order():
        dim += 1 - front.chord_by_name(name).index
    return dim


def puncture_parities(front, tree: FlowTree):
    out = [front.chord_by_name(tree.root).parity]
    out += [front.chord_by_name(b).parity for b in tree.negatives_in_boundary_order()]
    return out


# ---------------------------------------------------------------------------
# run automaton


def _events_ahead(front, x, direction):
    n = len(front.events)
    if direction == 1:
        return [i for i in range(n) if front.events[i].x > x]
    return [i for i in range(n) if front.events[i].x < x][::-1]


def _downhill(front, pair, gap, direction):
    """Is moving in `direction` downhill for the (z-upper, z-lower) pair?"""
    u, l = pair
    return front.slope_cmp(u, l, gap) == -direction


def _extend(front, pair, direction, x, guard, prune_log=None):
    """Completions (steps, terminal) of a downhill run of `pair` from x."""
    u, l = pair
    for i in _events_ahead(front, x, direction):
        ev = front.events[i]
        gap_before = i if direction == 1 else i + 1
        gap_after = i + 1 if direction == 1 else i
        if prune_log is not None and front.sheets_between(u, l, gap_before):
            prune_log.append({"pair": pair, "gap": gap_before, "dim_lb": 1})
        if ev.pair() == frozenset((u, l)):
            if ev.kind == "chord":
                if ev.index == 1:
                    raise NonGenericFront(
                        f"downhill run of {pair} meets its own max {ev.name}")
                yield (), Terminal("neg", ev.x, chord=ev.name, pair=(u, l))
                return
            if ev.kind == "crossing":
                return  # own-pair sign change: no rigid continuation
            yield (), Terminal("end", ev.x, event_pos=i, pair=(u, l))
            return
        if ev.kind in ("left_cusp", "right_cusp"):
            dies = ev.kind == ("right_cusp" if direction == 1 else "left_cusp")
            if dies and (u in (ev.a, ev.b) or l in (ev.a, ev.b)):
                # boundary sheet dies against a third sheet: Y1 splits only
                side = "bottom" if l in (ev.a, ev.b) else "top"
                dying = l if side == "bottom" else u
                w = ev.a if ev.b == dying else ev.b
                lo, hi = (u, w) if side == "bottom" else (w, l)
                for k in front.sheets_between(lo, hi, gap_before):
                    if k == dying:
                        continue
                    main = (u, k) if side == "bottom" else (k, l)
                    sliver = (k, w) if side == "bottom" else (w, k)
                    key = (frozenset(main), frozenset(sliver), i)
                    if key in guard:
                        raise NonGenericFront("cyclic Y1 recursion")
                    if not front.pair_alive(*main, gap_after):
                        continue
                    if not front.pair_alive(*sliver, gap_before):
                        continue
                    if not _downhill(front, main, gap_after, direction):
                        continue
                    if not _downhill(front, sliver, gap_before, -direction):
                        continue
                    for s_steps, s_term in _extend(front, sliver, -direction,
                                                   ev.x, guard | {key},
                                                   prune_log):
                        sl = Arm(-direction, sliver, s_steps, s_term)
                        for m_steps, m_term in _extend(front, main, direction,
                                                       ev.x, guard | {key},
                                                       prune_log):
                            y = Y1Split(ev.x, i, side, k, (u, l), main, sl)
                            yield (y,) + m_steps, m_term
                return
            continue
        if ev.kind == "chord" and ev.index == 1:
            gap = gap_before
            corner = None
            if ev.a == u and ev.b in front.sheets_between(u, l, gap):
                corner = Corner(ev.name, ev.x, "shed_top", (u, l), (ev.b, l))
            elif ev.b == l and ev.a in front.sheets_between(u, l, gap):
                corner = Corner(ev.name, ev.x, "shed_bottom", (u, l), (u, ev.a))
            if corner is not None:
                for steps, term in _extend(front, corner.new_pair, direction,
                                           ev.x, guard, prune_log):
                    yield (corner,) + steps, term
    return


def enumerate_rigid_trees(front, chord_name, prune_log=None):
    """Complete duplicate-free list of rigid trees rooted at the chord."""
    root = front.chord_by_name(chord_name)
    trees = []
    if root.index == 1:
        for direction in (-1, 1):
            for steps, term in _extend(front, (root.a, root.b), direction,
                                       root.x, frozenset(), prune_log):
                arm = Arm(direction, (root.a, root.b), steps, term)
                trees.append(FlowTree(root.name, 1, (arm,)))
    else:
        gap = root.event_pos + 1
        for k in front.sheets_between(root.a, root.b, gap):
            d_top = -front.slope_cmp(root.a, k, gap)
            d_bot = -front.slope_cmp(k, root.b, gap)
            if d_top == d_bot:
                raise NonGenericFront(
                    f"split directions at {root.name} via sheet {k} coincide")
            tops = [Arm(d_top, (root.a, k), st, t) for st, t in
                    _extend(front, (root.a, k), d_top, root.x, frozenset(),
                            prune_log)]
            bots = [Arm(d_bot, (k, root.b), st, t) for st, t in
                    _extend(front, (k, root.b), d_bot, root.x, frozenset(),
                            prune_log)]
            for at in tops:
                for ab in bots:
                    trees.append(FlowTree(root.name, 0, (at, ab)))
    seen = set()
    out = []
    for t in trees:
        key = t.canonical()
        if key not in seen:
            seen.add(key)
            out.append(t)
    for t in out:
        assert tree_dimension(front, t) == 0
    return out


def enumerate_all_trees(front, prune_log=None):
    return {c.name: enumerate_rigid_trees(front, c.name, prune_log)
            for c in front.chords}


# ---------------------------------------------------------------------------
# boundary walk: lift arcs in counterclockwise order


def _arm_walk(front, arm, root_x):
    """Counterclockwise boundary of the sub-disk over an arm.

    Returns (tokens, arcs): tokens mark puncture/end entries and boundary
    minima in walk order, arcs are (sheet, xlo, xhi, traversal_direction)
    lift arcs.  The outbound journey rides the upper lifts (with the flow),
    the return journey the lower lifts; shed_top corners and top-side Y1
    slivers sit on the outbound journey, shed_bottom corners and
    bottom-side slivers on the return.
    """
    d = arm.direction
    xs = [root_x]
    pairs = [arm.start_pair]
    for st in arm.steps:
        xs.append(st.x)
        pairs.append(st.new_pair if isinstance(st, Corner) else st.main_pair)
    xs.append(arm.terminal.x)

    out = []  # items in walk order

    def arc(sheet, xa, xb, direc):
        lo, hi = (xa, xb) if xa < xb else (xb, xa)
        if lo != hi:
            out.append(("arc", sheet, lo, hi, direc))

    # outbound: upper lifts
    for idx in range(len(pairs)):
        u = pairs[idx][0]
        arc(u, xs[idx], xs[idx + 1], d)
        if idx < len(arm.steps):
            st = arm.steps[idx]
            if isinstance(st, Corner) and st.kind == "shed_top":
                out.append(("entry", "neg", st.chord))
                out.append(("min", st))
            elif isinstance(st, Y1Split) and st.side == "top":
                toks, sarcs = _arm_walk(front, st.sliver, st.x)
                out.append(("block", toks, sarcs))
                out.append(("min", st))
    if arm.terminal.kind == "neg":
        out.append(("entry", "neg", arm.terminal.chord))
    else:
        out.append(("entry", "end", arm.terminal.event_pos))
    # return: lower lifts, leaf to root
    for idx in range(len(pairs) - 1, -1, -1):
        l = pairs[idx][1]
        arc(l, xs[idx + 1], xs[idx], -d)
        if idx > 0:
            st = arm.steps[idx - 1]
            if isinstance(st, Corner) and st.kind == "shed_bottom":
                out.append(("min", st))
                out.append(("entry", "neg", st.chord))
            elif isinstance(st, Y1Split) and st.side == "bottom":
                out.append(("min", st))
                toks, sarcs = _arm_walk(front, st.sliver, st.x)
                out.append(("block", toks, sarcs))

    tokens = []
    arcs = []
    for item in out:
        if item[0] == "arc":
            arcs.append(item[1:])
        elif item[0] == "entry":
            tokens.append(("entry", item[1], item[2]))
        elif item[0] == "min":
            tokens.append(("min", item[1]))
        else:
            tokens.extend(item[1])
            arcs.extend(item[2])
    return tokens, arcs


def boundary_walk_tokens(front, tree: FlowTree):
    root_x = front.chord_by_name(tree.root).x if front is not None else Fraction(0)
    tokens = []
    arcs = []
    for idx, arm in enumerate(tree.arms):
        toks, a = _arm_walk(front, arm, root_x)
        tokens.extend(toks)
        arcs.extend(a)
        if tree.root_index == 0 and idx == 0:
            tokens.append(("min", "root"))
    return tokens, arcs


def boundary_walk(front, tree: FlowTree):
    """Lift arcs (sheet, xlo, xhi, traversal_direction) of the boundary."""
    return boundary_walk_tokens(front, tree)[1]


# ---------------------------------------------------------------------------
# standard domain layout


@dataclass(frozen=True)
class Minimum:
    height: int  # slit height in boundary order (1..m+e-1)
    tau_key: tuple  # ordering key: distance of the vertex from the root
    vertex: object  # Corner | Y1Split | "root"


@dataclass(frozen=True)
class StandardDomainLayout:
    m: int
    e: int
    entries: tuple
    l_indices: tuple
    k_indices: tuple
    minima: tuple  # sorted by height
    j: int  # height of the tau-smallest minimum (0 if none)
    tp2: dict  # chord -> 1 | 2 for the 2-valent negative punctures


def _vertex_depth(front, tree, target):
    """Tree distance from the root to a vertex (sum of edge lengths)."""
    root_x = front.chord_by_name(tree.root).x

    def rec(arm, base_x, acc):
        x0 = base_x
        for st in arm.steps:
            step_len = abs(st.x - x0)
            if st is target:
                return acc + step_len
            if isinstance(st, Y1Split):
                got = rec(st.sliver, st.x, acc + step_len)
                if got is not None:
                    return got
            x0 = st.x
            acc += step_len
        return None

    for arm in tree.arms:
        got = rec(arm, root_x, Fraction(0))
        if got is not None:
            return got
    raise KeyError("vertex not in tree")


def standard_domain(front, tree: FlowTree) -> StandardDomainLayout:
    tokens, _ = boundary_walk_tokens(front, tree)
    entries = []
    minima = []
    tp2 = {}
    for tok in tokens:
        if tok[0] == "entry":
            entries.append((tok[1], tok[2]))
        else:
            vertex = tok[1]
            height = len(entries)
            if isinstance(vertex, Corner):
                tp2[vertex.chord] = 1 if vertex.kind == "shed_top" else 2
                tau = _vertex_depth(front, tree, vertex)
            elif isinstance(vertex, Y1Split):
                tau = _vertex_depth(front, tree, vertex)
            else:  # 2-valent positive root
                tau = Fraction(0)
            minima.append(Minimum(height, (tau,), vertex))
    m = sum(1 for k, _ in entries if k == "neg")
    e = len(entries) - m
    l_idx = tuple(i + 1 for i, (k, _) in enumerate(entries) if k == "neg")
    k_idx = tuple(i + 1 for i, (k, _) in enumerate(entries) if k == "end")
    minima.sort(key=lambda mn: mn.height)
    assert len(minima) == max(0, m + e - 1), (minima, entries)
    assert [mn.height for mn in minima] == sorted({mn.height for mn in minima})
    j = 0
    if minima:
        j = min(minima, key=lambda mn: (mn.tau_key, mn.height)).height
    return StandardDomainLayout(m, e, tuple(entries), l_idx, k_idx,
                                tuple(minima), j, tp2)


def bm_count(tree: FlowTree) -> int:
    return len(tree.corners()) + len(tree.y1s()) + \
        (1 if tree.root_index == 0 else 0)


# ---------------------------------------------------------------------------
# cut decomposition


@dataclass(frozen=True)
class CutStep:
    tag: str  # ng | y1g | f0 | f1 | f2 (y0g/sgn/sgp never occur at n=1)
    vertex: object = None
    arm_path: tuple = ()


@dataclass(frozen=True)
class CutPlan:
    steps: tuple


def _arm_plan(arm, path):
    """Leaf-to-root ng/y1g steps for everything strictly below the first
    step of the arm; the first step is left for the caller."""
    steps = []
    for idx in range(len(arm.steps) - 1, -1, -1):
        st = arm.steps[idx]
        if isinstance(st, Y1Split):
            steps.extend(_full_arm_plan(st.sliver, path + (idx, "sliver")))
            steps.append(CutStep("y1g", st, path + (idx,)))
        else:
            steps.append(CutStep("ng", st, path + (idx,)))
    return steps


def _full_arm_plan(arm, path):
    return _arm_plan(arm, path)


def cut_decomposition(front, tree: FlowTree) -> CutPlan:
    """Gluing plan: leaf-to-root per arm, final step f0/f1/f2.

    f2 iff the positive puncture is 2-valent; f0 iff the tree is a single
    edge with one true vertex; f1 otherwise (the vertex adjacent to the cut
    is a 2-valent puncture or a Y1 vertex, never a switch at n=1).
    """
    if tree.root_index == 0:
        steps = []
        for ai in (1, 0):
            steps.extend(_full_arm_plan(tree.arms[ai], (ai,)))
        steps.append(CutStep("f2"))
        return CutPlan(tuple(steps))
    arm = tree.arms[0]
    if not arm.steps:
        return CutPlan((CutStep("f0"),))
    steps = []
    first = arm.steps[0]
    rest = Arm(arm.direction, first.new_pair if isinstance(first, Corner)
               else first.main_pair, arm.steps[1:], arm.terminal)
    # everything below the first vertex
    for idx in range(len(arm.steps) - 1, 0, -1):
        st = arm.steps[idx]
        if isinstance(st, Y1Split):
            steps.extend(_full_arm_plan(st.sliver, (0, idx, "sliver")))
            steps.append(CutStep("y1g", st, (0, idx)))
        else:
            steps.append(CutStep("ng", st, (0, idx)))
    if isinstance(first, Y1Split):
        steps.extend(_full_arm_plan(first.sliver, (0, 0, "sliver")))
    steps.append(CutStep("f1", first, (0, 0)))
    return CutPlan(tuple(steps))
