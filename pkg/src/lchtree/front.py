"""Exact combinatorial fronts over a 1-dimensional base.

A front is an event list over strictly increasing rational x-positions:
left/right cusps, front crossings, and chords (critical points of sheet
difference functions, Morse index 0 or 1).  Validation reconstructs two
wirings and rejects anything non-realizable:

* the z-wiring (vertical strand order per interval), and
* the slope-wiring (order of the sheet slopes per interval), where chords are
  slope-adjacent transpositions and cusp pairs are slope-adjacent at birth
  and death.

The slope order is what drives gradient flow directions, so everything the
tree search needs is exact and tolerance-free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class InvalidFront(Exception):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{c}@{i}: {m}" for c, i, m in self.violations))


@dataclass(frozen=True)
class Event:
    kind: str  # left_cusp | right_cusp | crossing | chord
    x: Fraction
    a: int  # upper sheet of the pair
    b: int  # lower sheet
    index: int | None = None  # Morse index, chords only
    name: str | None = None  # chord id
    above: int | None = None  # left cusps: live sheet directly above the pair
    slope_above: int | None = None  # left cusps: live sheet directly steeper

    def pair(self):
        return frozenset((self.a, self.b))


@dataclass(frozen=True)
class Chord:
    name: str
    a: int  # upper sheet
    b: int
    x: Fraction
    index: int
    event_pos: int  # index into the event list
    grading: int
    modulus: int  # 0 means absolute Z-grading
    parity: int  # |mu(c)| in {0,1}


@dataclass(frozen=True)
class Basepoint:
    sheet: int
    x: Fraction


@dataclass(frozen=True)
class AbstractFront:
    events: tuple
    orders: tuple  # z-order per gap; orders[i] sits left of events[i]
    slopes: tuple  # slope order per gap (steepest first)
    chords: tuple
    sheets: frozenset
    components: tuple  # tuple of frozensets of sheets
    direction: dict  # sheet -> +-1 traversal direction of its component
    potential: dict  # sheet -> int Maslov potential (normalized per component)
    moduli: tuple  # grading modulus per component (2|r|, 0 if r = 0)
    basepoints: tuple
    birth: dict  # sheet -> event index
    death: dict

    # -- geometry queries ---------------------------------------------------

    def gap_of_x(self, x):
        """Index i with events[i-1].x < x < events[i].x (events define gaps)."""
        for i, ev in enumerate(self.events):
            if x < ev.x:
                return i
            if x == ev.x:
                raise ValueError("x coincides with an event position")
        return len(self.events)

    def alive(self, sheet, gap):
        return self.birth[sheet] < gap <= self.death[sheet]

    def pair_alive(self, a, b, gap):
        return self.alive(a, gap) and self.alive(b, gap)

    def z_above(self, a, b, gap):
        order = self.orders[gap]
        return order.index(a) < order.index(b)

    def slope_cmp(self, a, b, gap):
        """+1 if F_a' > F_b' on the gap (pair difference f_a - f_b rising)."""
        sl = self.slopes[gap]
        return 1 if sl.index(a) < sl.index(b) else -1

    def sheets_between(self, a, b, gap):
        order = self.orders[gap]
        ia, ib = order.index(a), order.index(b)
        if ia > ib:
            ia, ib = ib, ia
        return order[ia + 1: ib]

    def chord_by_name(self, name):
        for c in self.chords:
            if c.name == name:
                return c
        raise KeyError(name)

    def component_of(self, sheet):
        for k, comp in enumerate(self.components):
            if sheet in comp:
                return k
        raise KeyError(sheet)

    def component_modulus(self, sheet):
        return self.moduli[self.component_of(sheet)]


def _auto_chord_names(events):
    used = {e.name for e in events if e.kind == "chord" and e.name}
    out = []
    k = 0
    for e in events:
        if e.kind == "chord" and not e.name:
            while f"c{k}" in used:
                k += 1
            used.add(f"c{k}")
            out.append(Event(e.kind, e.x, e.a, e.b, e.index, f"c{k}",
                             e.above, e.slope_above))
        else:
            out.append(e)
    return out


def _z_sweep(events, bad):
    orders = [()]
    alive = set()
    birth, death = {}, {}
    for i, ev in enumerate(events):
        cur = list(orders[-1])
        if ev.kind == "left_cusp":
            if ev.a in alive or ev.b in alive:
                bad(("UnmatchedCusp", i, "sheet id reused while alive"))
                orders.append(tuple(cur))
                continue
            pos = 0
            if ev.above is not None:
                if ev.above not in cur:
                    bad(("UnmatchedCusp", i, f"anchor sheet {ev.above} not alive"))
                else:
                    pos = cur.index(ev.above) + 1
            cur[pos:pos] = [ev.a, ev.b]
            alive.update((ev.a, ev.b))
            birth[ev.a] = birth[ev.b] = i
        elif ev.kind == "right_cusp":
            if ev.a not in cur or ev.b not in cur:
                bad(("UnmatchedCusp", i, "cusp on dead sheet"))
            else:
                ia, ib = cur.index(ev.a), cur.index(ev.b)
                if ib != ia + 1:
                    bad(("NonAdjacentCusp", i, f"sheets {ev.a},{ev.b} not adjacent"))
                else:
                    del cur[ia:ia + 2]
                    alive.discard(ev.a)
                    alive.discard(ev.b)
                    death[ev.a] = death[ev.b] = i
        elif ev.kind == "crossing":
            if ev.a not in cur or ev.b not in cur:
                bad(("NonAdjacentCrossing", i, "crossing on dead sheet"))
            else:
                ia, ib = cur.index(ev.a), cur.index(ev.b)
                if ib != ia + 1:
                    bad(("NonAdjacentCrossing", i, f"sheets {ev.a},{ev.b} not adjacent"))
                else:
                    cur[ia], cur[ib] = cur[ib], cur[ia]
        elif ev.kind == "chord":
            if ev.a not in cur or ev.b not in cur:
                bad(("ChordOrderViolation", i, "chord on dead sheet"))
            elif cur.index(ev.a) > cur.index(ev.b):
                bad(("ChordOrderViolation", i, f"{ev.a} not above {ev.b}"))
            if ev.index not in (0, 1):
                bad(("BadChordIndex", i, "Morse index must be 0 or 1"))
        else:
            bad(("UnknownEvent", i, ev.kind))
        orders.append(tuple(cur))
    if orders[-1]:
        bad(("UnmatchedCusp", len(events) - 1, "sheets never closed"))
    return tuple(orders), birth, death


def _pair_requirements(events, orders, birth, death, bad):
    """Per-gap required slope comparison for every coexisting pair.

    Returns {frozenset({a,b}): {gap: +1 rising / -1 falling}}; a missing gap
    means the pair's monotonicity there is unconstrained by its own events.
    """
    sheets = set(birth)
    req = {}
    pairs = set()
    for a in sheets:
        for b in sheets:
            if a < b and max(birth[a], birth[b]) <= min(death[a], death[b]) - 1:
                pairs.add(frozenset((a, b)))
    # also include cusp pairs that exist on a single gap
    for i, ev in enumerate(events):
        if ev.kind in ("left_cusp", "right_cusp"):
            pairs.add(ev.pair())

    for pair in pairs:
        a, b = sorted(pair)
        lo = max(birth[a], birth[b]) + 1  # first gap where both live
        hi = min(death[a], death[b])  # last gap
        if lo > hi:
            continue
        start_zero = events[lo - 1].pair() == pair and events[lo - 1].kind == "left_cusp"
        end_zero = hi < len(events) and events[hi].pair() == pair and \
            events[hi].kind == "right_cusp"
        # own interior events split the life into monotone stretches
        inner = [(i, events[i]) for i in range(lo, hi) if events[i].pair() == pair]
        cut = [lo] + [i + 1 for i, _ in inner] + [hi + 1]
        dirs = [None] * (len(cut) - 1)
        if start_zero:
            dirs[0] = 1  # rising out of the birth zero
        ok = True
        for k, (i, e) in enumerate(inner):
            if e.kind == "crossing":
                need_before, need_after = -1, 1
            elif e.kind == "chord":
                need_before, need_after = (1, -1) if e.index == 1 else (-1, 1)
            else:
                bad(("UnmatchedCusp", i, "interior cusp of a live pair"))
                ok = False
                break
            if dirs[k] is not None and dirs[k] != need_before:
                bad(("SignChangeWithoutEvent", i,
                     f"pair {a},{b} monotonicity conflict before event"))
                ok = False
                break
            dirs[k] = need_before
            dirs[k + 1] = need_after
        if not ok:
            continue
        if end_zero:
            if dirs[-1] is None:
                dirs[-1] = -1
            elif dirs[-1] != -1:
                bad(("SignChangeWithoutEvent", hi,
                     f"pair {a},{b} cannot return to zero (needs a max chord)"))
                continue
        table = {}
        for k in range(len(cut) - 1):
            if dirs[k] is None:
                continue
            for gap in range(cut[k], min(cut[k + 1], hi + 1)):
                table[gap] = dirs[k]
        req[pair] = table
    return req


def _required_cmp(req, a, b, gap):
    """Required sign of F_a' - F_b' on the gap, or None."""
    pair = frozenset((a, b))
    tab = req.get(pair)
    if tab is None or gap not in tab:
        return None
    rising = tab[gap]  # +1 means upper-minus-lower rising; need z-upper info
    return rising


def _slope_sweep(events, orders, req, birth, death, bad):
    """Reconstruct the slope order per gap; chords transpose, cusps insert."""
    slopes = [()]

    def z_upper(pair, gap):
        a, b = sorted(pair)
        order = orders[gap]
        if a not in order or b not in order:
            return None
        return a if order.index(a) < order.index(b) else b

    def check(gap, sl):
        for pair, tab in req.items():
            want = tab.get(gap)
            if want is None:
                continue
            up = z_upper(pair, gap)
            if up is None:
                continue
            a, b = sorted(pair)
            lo = b if up == a else a
            if up not in sl or lo not in sl:
                continue
            got = 1 if sl.index(up) < sl.index(lo) else -1
            if got != want:
                return pair
        return None

    for i, ev in enumerate(events):
        cur = list(slopes[-1])
        gap = i + 1
        if ev.kind == "left_cusp":
            if ev.a in cur or ev.b in cur:
                slopes.append(tuple(cur))
                continue
            block = [ev.a, ev.b]  # rising at birth: upper sheet steeper
            positions = []
            if ev.slope_above is not None and ev.slope_above in cur:
                positions = [cur.index(ev.slope_above) + 1]
            else:
                positions = list(range(len(cur) + 1))
            chosen = None
            for pos in reversed(positions):  # lowest consistent slot
                trial = cur[:pos] + block + cur[pos:]
                if check(gap, trial) is None:
                    chosen = trial
                    break
            if chosen is None:
                bad(("InconsistentSlopes", i,
                     f"no slope slot for cusp pair {ev.a},{ev.b}"))
                chosen = cur[:0] + block + cur
            cur = chosen
        elif ev.kind == "right_cusp":
            if ev.a in cur and ev.b in cur:
                ia, ib = cur.index(ev.a), cur.index(ev.b)
                # falling into the death zero: lower sheet steeper, adjacent
                if not (ib + 1 == ia):
                    bad(("CuspSlopeAdjacency", i,
                         f"sheets {ev.a},{ev.b} not slope-adjacent at death"))
                cur = [s for s in cur if s not in (ev.a, ev.b)]
        elif ev.kind == "chord":
            if ev.a in cur and ev.b in cur:
                ia, ib = cur.index(ev.a), cur.index(ev.b)
                if abs(ia - ib) != 1:
                    bad(("InconsistentSlopes", i,
                         f"chord {ev.name}: sheets not slope-adjacent"))
                else:
                    cur[ia], cur[ib] = cur[ib], cur[ia]
        elif ev.kind == "crossing":
            pass
        viol = check(gap, cur)
        if viol is not None and gap < len(events):
            a, b = sorted(viol)
            bad(("InconsistentSlopes", i,
                 f"slope order contradicts pair {a},{b} after event"))
        slopes.append(tuple(cur))
    return tuple(slopes)


def _realizability(events, orders, slopes, birth, death, bad):
    """Exact feasibility of sheet values at event positions.

    Wiring consistency is not sufficient: the values must integrate, i.e.
    admit rational sheet values with equalities at cusps/crossings, strict
    z-order at every event, and strict per-gap monotonicity of every
    slope-adjacent difference.  Scaling freedom turns strictness into >= 1.
    """
    from .lp import feasible

    var = {}

    def vid(s, e):
        key = (s, e)
        if key not in var:
            var[key] = len(var)
        return var[key]

    eqs = []
    ges = []
    for e, ev in enumerate(events):
        if ev.kind in ("left_cusp", "right_cusp", "crossing"):
            eqs.append(({vid(ev.a, e): 1, vid(ev.b, e): -1}, 0))
        pairs_done = set()
        for g in (e, e + 1):
            order = orders[g]
            for u, l in zip(order, order[1:]):
                if (u, l) in pairs_done:
                    continue
                pairs_done.add((u, l))
                if frozenset((u, l)) == ev.pair() and ev.kind != "chord":
                    continue
                ges.append(({vid(u, e): 1, vid(l, e): -1}, 1))
        if ev.kind == "chord":
            ges.append(({vid(ev.a, e): 1, vid(ev.b, e): -1}, 1))
    for g in range(1, len(events)):
        e0, e1 = g - 1, g
        sl = slopes[g]
        for u, l in zip(sl, sl[1:]):
            # u steeper: f_u - f_l strictly increases across the gap
            ges.append((
                {vid(u, e1): 1, vid(l, e1): -1, vid(u, e0): -1, vid(l, e0): 1},
                1))
    if not feasible(len(var), eqs, ges):
        bad(("NotRealizable", 0,
             "no rational sheet values realize the declared wiring"))


def _components(events, birth, death, bad):
    sheets = set(birth)
    partner = {}
    for ev in events:
        if ev.kind in ("left_cusp", "right_cusp"):
            partner.setdefault(ev.a, []).append((ev.kind, ev.b))
            partner.setdefault(ev.b, []).append((ev.kind, ev.a))
    comps = []
    direction = {}
    seen = set()
    for s0 in sorted(sheets):
        if s0 in seen:
            continue
        comp = []
        s, d = s0, 1
        while True:
            comp.append(s)
            seen.add(s)
            direction[s] = d
            # moving right (d=1) we exit at the death event, else at birth
            evi = death[s] if d == 1 else birth[s]
            ev = events[evi]
            nxt = ev.b if ev.a == s else ev.a
            d = -d
            s = nxt
            if s == s0 and d == 1:
                break
            if s in comp and direction.get(s) == d:
                break
        comps.append(frozenset(comp))
    return tuple(comps), direction


def _potentials(events, comps, bad):
    # m(upper) = m(lower) + 1 at every cusp; defect around a component = 2r
    adj = {}
    for i, ev in enumerate(events):
        if ev.kind in ("left_cusp", "right_cusp"):
            # m(upper) = m(lower) + 1
            adj.setdefault(ev.a, []).append((ev.b, -1))
            adj.setdefault(ev.b, []).append((ev.a, 1))
    potential = {}
    moduli = []
    for comp in comps:
        root = min(comp)
        val = {root: 0}
        stack = [root]
        defect = 0
        while stack:
            s = stack.pop()
            for t, off in adj.get(s, ()):
                w = val[s] + off
                if t in val:
                    d = abs(val[t] - w)
                    if d:
                        defect = d if defect == 0 else min(defect, d)
                else:
                    val[t] = w
                    stack.append(t)
        if defect % 2:
            bad(("PotentialParity", 0, "odd Maslov defect"))
        base = min(val.values())
        for s, v in val.items():
            potential[s] = (v - base) % defect if defect else v - base
        moduli.append(defect)
    return potential, tuple(moduli)


def check_front(events, basepoints=()):
    """Validate; returns a list of (code, event_index, message) violations."""
    violations = []
    bad = violations.append
    events = _auto_chord_names(list(events))
    if not events:
        bad(("UnmatchedCusp", 0, "empty front"))
        return violations
    xs = [e.x for e in events]
    if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
        bad(("DuplicatePosition", 0, "event positions must strictly increase"))
        return violations
    orders, birth, death = _z_sweep(events, bad)
    if violations:
        return violations
    req = _pair_requirements(events, orders, birth, death, bad)
    if violations:
        return violations
    slopes = _slope_sweep(events, orders, req, birth, death, bad)
    if violations:
        return violations
    _realizability(events, orders, slopes, birth, death, bad)
    comps, _ = _components(events, birth, death, bad)
    _potentials(events, comps, bad)
    for bp in basepoints:
        if bp.sheet not in birth:
            bad(("BadBasepoint", 0, f"unknown sheet {bp.sheet}"))
    return violations


def validate_front(events, basepoints=()):
    """Validate and build the front; raises InvalidFront on any violation."""
    violations = []
    bad = violations.append
    events = _auto_chord_names(list(events))
    if not events:
        raise InvalidFront([("UnmatchedCusp", 0, "empty front")])
    xs = [e.x for e in events]
    if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
        raise InvalidFront([("DuplicatePosition", 0, "positions must increase")])
    orders, birth, death = _z_sweep(events, bad)
    if violations:
        raise InvalidFront(violations)
    req = _pair_requirements(events, orders, birth, death, bad)
    if violations:
        raise InvalidFront(violations)
    slopes = _slope_sweep(events, orders, req, birth, death, bad)
    if violations:
        raise InvalidFront(violations)
    _realizability(events, orders, slopes, birth, death, bad)
    if violations:
        raise InvalidFront(violations)
    comps, direction = _components(events, birth, death, bad)
    potential, moduli = _potentials(events, comps, bad)
    if violations:
        raise InvalidFront(violations)

    comp_idx = {}
    for k, comp in enumerate(comps):
        for s in comp:
            comp_idx[s] = k
    chords = []
    for i, ev in enumerate(events):
        if ev.kind != "chord":
            continue
        ma, mb = potential[ev.a], potential[ev.b]
        ka, kb = comp_idx[ev.a], comp_idx[ev.b]
        if ka == kb:
            mod = moduli[ka]
        else:
            import math
            mod = math.gcd(moduli[ka], moduli[kb])
        g = ma - mb + ev.index - 1
        if mod:
            g %= mod
        parity = (ma - mb) % 2
        chords.append(Chord(ev.name, ev.a, ev.b, ev.x, ev.index, i, g, mod, parity))

    front = AbstractFront(
        events=tuple(events), orders=orders, slopes=slopes,
        chords=tuple(chords), sheets=frozenset(birth),
        components=comps, direction=direction, potential=potential,
        moduli=moduli, basepoints=tuple(basepoints), birth=birth, death=death,
    )
    for c in chords:
        mu2 = capping_path_data(front, c.name)
        if mu2["parity_agrees"] is False:
            raise InvalidFront([("PotentialParity", c.event_pos,
                                 f"capping parity mismatch at {c.name}")])
    return front


def reeb_chords(front: AbstractFront):
    return front.chords


def grading(front: AbstractFront, chord_name: str):
    c = front.chord_by_name(chord_name)
    return c.grading, c.modulus


def capping_path_data(front: AbstractFront, chord_name: str):
    """Walk the two capping arcs of a chord; returns D, U, mu for both and
    whether the parities agree (they must, per path-independence)."""
    c = front.chord_by_name(chord_name)

    def walk(start_dir):
        s, d = c.a, start_dir
        D = U = 0
        guard = 0
        while True:
            guard += 1
            if guard > 10 * len(front.events) + 10:
                return None
            evi = front.death[s] if d == 1 else front.birth[s]
            ev = front.events[evi]
            other = ev.b if ev.a == s else ev.a
            if s == ev.a:
                D += 1  # traversing the cusp from the upper to the lower sheet
            else:
                U += 1
            s, d = other, -d
            if s == c.b:
                return D, U
        return None

    res = {}
    for tag, d0 in (("right", 1), ("left", -1)):
        out = walk(d0)
        res[tag] = None if out is None else {"D": out[0], "U": out[1],
                                             "mu": out[0] - out[1]}
    mus = [v["mu"] for v in res.values() if v]
    res["parity_agrees"] = len(mus) < 2 or (mus[0] - mus[1]) % 2 == 0
    return res


def maslov_parity_ledger(front: AbstractFront, tree):
    """Lemma-style parity check: sum of puncture parities vs s + e + Y1.

    tree must expose puncture_parities() and counts e(), s(), y1().
    """
    total = sum(tree.puncture_parities()) % 2
    rhs = (tree.e() + tree.s() + tree.y1()) % 2
    return {"lhs": total, "rhs": rhs, "ok": total == rhs}
