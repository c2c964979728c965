"""Front file format: bit-exact JSON interchange.

Top-level object: {"n": 1, "sheets": [...], "events": [...], "basepoints"?,
"spin_cocycle"?}.  Positions are "p/q" strings parsed exactly; they must be
strictly increasing.  Event objects: {"kind", "x", "sheets": [upper, lower],
"index"? (chords), "name"? (chords), "above"?/"slope_above"? (left cusps)}.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .front import Basepoint, Event, validate_front


class ParseError(Exception):
    pass


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            f = Fraction(s)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational {s!r}: {e}") from None
        return f
    raise ParseError(f"bad rational {s!r}")


def rational_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def events_from_dict(doc):
    if doc.get("n", 1) != 1:
        raise ParseError("only base dimension n=1 is supported for enumeration")
    events = []
    last = None
    for k, ev in enumerate(doc.get("events", [])):
        kind = ev.get("kind")
        if kind not in ("left_cusp", "right_cusp", "crossing", "chord"):
            raise ParseError(f"event {k}: unknown kind {kind!r}")
        x = parse_rational(ev.get("x"))
        if last is not None and x <= last:
            raise ParseError(f"event {k}: positions must strictly increase")
        last = x
        sheets = ev.get("sheets")
        if not (isinstance(sheets, list) and len(sheets) == 2):
            raise ParseError(f"event {k}: sheets must be [upper, lower]")
        idx = ev.get("index")
        if kind == "chord" and idx not in (0, 1):
            raise ParseError(f"event {k}: chord needs index 0 or 1")
        events.append(Event(
            kind=kind, x=x, a=int(sheets[0]), b=int(sheets[1]),
            index=idx if kind == "chord" else None,
            name=ev.get("name") if kind == "chord" else None,
            above=ev.get("above") if kind == "left_cusp" else None,
            slope_above=ev.get("slope_above") if kind == "left_cusp" else None,
        ))
    basepoints = tuple(
        Basepoint(int(bp["sheet"]), parse_rational(bp["x"]))
        for bp in doc.get("basepoints", [])
    )
    return events, basepoints


def spin_from_dict(doc):
    """Sparse cocycle: list of [sheet, gap_index] cells carrying bit 1."""
    cells = doc.get("spin_cocycle", [])
    return frozenset((int(s), int(g)) for s, g in cells)


def load_front(path):
    with open(path) as fh:
        doc = json.load(fh)
    events, basepoints = events_from_dict(doc)
    return validate_front(events, basepoints), spin_from_dict(doc)


def front_doc(front, spin=frozenset()):
    evs = []
    for e in front.events:
        d = {"kind": e.kind, "x": rational_str(e.x), "sheets": [e.a, e.b]}
        if e.kind == "chord":
            d["index"] = e.index
            d["name"] = e.name
        if e.kind == "left_cusp":
            if e.above is not None:
                d["above"] = e.above
            if e.slope_above is not None:
                d["slope_above"] = e.slope_above
        evs.append(d)
    doc = {"n": 1, "sheets": sorted(front.sheets), "events": evs}
    if front.basepoints:
        doc["basepoints"] = [
            {"sheet": bp.sheet, "x": rational_str(bp.x)} for bp in front.basepoints
        ]
    if spin:
        doc["spin_cocycle"] = sorted([s, g] for s, g in spin)
    return doc


def dump_front(front, path, spin=frozenset()):
    with open(path, "w") as fh:
        json.dump(front_doc(front, spin), fh, indent=1, sort_keys=True)
        fh.write("\n")
