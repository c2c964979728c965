"""Independent Z2 admissible-disk enumerator (test oracle).

Works in the Lagrangian projection: the front's sheets give slope curves
over x, chords are their double points, cusps are smooth U-turns.  An
admissible disk is a closed boundary walk along the curves starting and
ending at the positive corner, with every interior corner jumping from the
z-upper to the z-lower sheet of a chord, verified by a global slice
condition: over every gap the covering arcs, sorted by slope order, must
alternate west-, east-moving from the top (counterclockwise region).

This never touches the flow automaton in lchtree.search: it only reads the
validated front's event/slope data.
"""


def _next_event(front, sheet, x, direction):
    evs = front.events
    rng = range(len(evs)) if direction == 1 else range(len(evs) - 1, -1, -1)
    for i in rng:
        ev = evs[i]
        if direction == 1 and ev.x <= x:
            continue
        if direction == -1 and ev.x >= x:
            continue
        if sheet in (ev.a, ev.b):
            return i
    return None


def _walks(front, root):
    """All closed boundary walks from the root chord's upper endpoint."""
    out = []

    def go(sheet, x, direction, corners, arcs, visits):
        i = _next_event(front, sheet, x, direction)
        if i is None:
            return
        ev = front.events[i]
        # each walk cell is used once: enumerates disks embedded in the
        # Lagrangian projection, which the slice condition requires anyway
        key = (sheet, i, direction)
        if key in visits:
            return
        visits2 = visits | {key}
        arcs2 = arcs + ((sheet, min(x, ev.x), max(x, ev.x), direction),)
        if ev.kind in ("left_cusp", "right_cusp"):
            partner = ev.b if ev.a == sheet else ev.a
            go(partner, ev.x, -direction, corners, arcs2, visits2)
            return
        if ev.kind == "crossing":
            go(sheet, ev.x, direction, corners, arcs2, visits2)
            return
        # chord event
        if ev.name == root.name and sheet == root.b:
            out.append((corners, arcs2))  # closing up at the positive corner
        if ev.a == sheet:
            # negative corner: jump to the z-lower sheet, either way out
            for d2 in (-1, 1):
                go(ev.b, ev.x, d2, corners + (ev.name,), arcs2, visits2)
        go(sheet, ev.x, direction, corners, arcs2, visits2)

    for s0 in (-1, 1):
        go(root.a, root.x, s0, (), (), frozenset())
    return out


def _slices_ok(front, arcs, root):
    """Counterclockwise slice condition over every gap."""
    xs = [ev.x for ev in front.events]
    for g in range(1, len(front.events)):
        lo, hi = xs[g - 1], xs[g]
        cover = [(front.slopes[g].index(sheet), d)
                 for (sheet, a, b, d) in arcs if a <= lo and b >= hi]
        cover.sort()
        if len(cover) % 2:
            return False
        for k, (pos, d) in enumerate(cover):
            want = -1 if k % 2 == 0 else 1
            if d != want:
                return False
        # equal slope positions would mean an arc collision
        if len({p for p, _ in cover}) != len(cover):
            return False
    return True


def disks(front, chord_name):
    """Multiset (sorted list) of boundary words of admissible disks."""
    root = front.chord_by_name(chord_name)
    words = []
    for corners, arcs in _walks(front, root):
        if _slices_ok(front, arcs, root):
            words.append(tuple(corners))
    return sorted(words)


def z2_differential(front):
    out = {}
    for c in front.chords:
        counts = {}
        for w in disks(front, c.name):
            counts[w] = counts.get(w, 0) ^ 1
        out[c.name] = {w: 1 for w, p in counts.items() if p}
    return out


def disk_multiset(front, chord_name):
    return disks(front, chord_name)
