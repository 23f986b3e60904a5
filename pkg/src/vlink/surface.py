"""Combinatorial knotted surfaces.

* :class:`SurfacePresentation` - sheets and double point curves of a broken
  surface diagram, enough to write down its group, quandle and biquandle.
* :class:`SurfaceGaussCode` - curves lifted to the abstract surface, with the
  pairing and marking data that the validity clauses talk about.
* :class:`YoshikawaDiagram` - a Gauss code with marked flat vertices, and its
  A/B smoothings.

Surface Gauss codes record no embedding of the curves; only incidences,
pairings and tags.  The normal-marking tags are stored and carried along but
can only be checked for presence and pairing consistency.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from .codes import (CodeSyntaxError, GaussCode, Passage, crossing_ends, semi_arcs)
from .invariants import battery, count_for_code
from .moves import R_MOVES, MoveSite, search_equivalence
from .presentations import Presentation, PresentationError, biquandle_relations, conj


class SurfaceError(ValueError):
    pass


# ------------------------------------------------------- surface presentation

@dataclass(frozen=True)
class Curve:
    """Double point curve: a=under_in, b=over_in, c=over_out, d=under_out."""

    id: str
    a: str
    b: str
    c: str
    d: str
    sign: int


@dataclass(frozen=True)
class SurfacePresentation:
    sheets: tuple[str, ...]
    curves: tuple[Curve, ...] = ()
    triples: tuple[tuple[str, str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sheets", tuple(self.sheets))
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "triples", tuple(tuple(t) for t in self.triples))
        declared = set(self.sheets)
        if len(declared) != len(self.sheets):
            raise SurfaceError("duplicate sheet")
        ids = [c.id for c in self.curves]
        if len(set(ids)) != len(ids):
            raise SurfaceError("duplicate curve id")
        for c in self.curves:
            missing = {c.a, c.b, c.c, c.d} - declared
            if missing:
                raise SurfaceError(f"curve {c.id} references undeclared sheets {sorted(missing)}")
            if c.sign not in (1, -1):
                raise SurfaceError(f"curve {c.id} has sign {c.sign}")
        for t in self.triples:
            if len(t) != 3 or not set(t) <= set(ids):
                raise SurfaceError(f"triple point {t} references unknown curves")

    def to_json(self) -> dict:
        return {
            "sheets": list(self.sheets),
            "curves": [{"id": c.id, "a": c.a, "b": c.b, "c": c.c, "d": c.d, "sign": c.sign}
                       for c in self.curves],
            "triples": [list(t) for t in self.triples],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SurfacePresentation":
        try:
            curves = tuple(Curve(str(c["id"]), c["a"], c["b"], c["c"], c["d"], int(c["sign"]))
                           for c in data.get("curves", []))
            return cls(tuple(data["sheets"]), curves, tuple(data.get("triples", [])))
        except (KeyError, TypeError) as exc:
            raise SurfaceError(f"malformed surface presentation: {exc}") from exc


def faces(sp: SurfacePresentation) -> list[list[str]]:
    """Sheets merged across the over side of every curve, in sheet order."""
    parent = {s: s for s in sp.sheets}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in sp.curves:
        ra, rb = find(c.b), find(c.c)
        if ra != rb:
            parent[max(ra, rb, key=sp.sheets.index)] = min(ra, rb, key=sp.sheets.index)
    groups: dict[str, list[str]] = {}
    for s in sp.sheets:
        groups.setdefault(find(s), []).append(s)
    return list(groups.values())


def presentation_from_surface(sp: SurfacePresentation, theory: str) -> Presentation:
    if theory == "biquandle":
        rels = []
        for c in sp.curves:
            rels += biquandle_relations(c.a, c.b, c.c, c.d, c.sign)
        return Presentation("biquandle", sp.sheets, tuple(rels),
                            meridian=sp.sheets[0] if sp.sheets else None)
    if theory not in ("group", "quandle"):
        raise PresentationError(f"unknown theory {theory!r}")
    groups = faces(sp)
    name = {s: f"f{i}" for i, g in enumerate(groups) for s in g}
    gens = tuple(f"f{i}" for i in range(len(groups)))
    rels = []
    for c in sp.curves:
        x, z, y = name[c.d], name[c.a], name[c.b]
        if theory == "group":
            rels.append((x, conj(z, y, c.sign)))
        else:
            rels.append((x, ("qup" if c.sign > 0 else "qupbar", z, y)))
    return Presentation(theory, gens, tuple(rels), meridian=gens[0] if gens else None)


def spin(code: GaussCode) -> SurfacePresentation:
    """Spun torus diagram: each semi-arc sweeps a sheet, each crossing a curve."""
    idx = {s: i for i, s in enumerate(semi_arcs(code))}
    sheets = tuple(f"s{i}" for i in range(len(idx)))
    curves = []
    for c in code.crossings:
        a, b, cc, d = (sheets[idx[s]] for s in crossing_ends(code, c))
        curves.append(Curve(f"c{c}", a, b, cc, d, code.sign(c)))
    return SurfacePresentation(sheets, tuple(curves))


# ----------------------------------------------------------- surface gauss code

@dataclass(frozen=True)
class LiftedCurve:
    id: str
    surface: int
    kind: str               # "closed" | "cusped"
    partner: str
    over: bool
    arrow: str              # "+"/"-" along closed curves; "toward"/"away" for cusped ones
    normal: str             # "+"/"-"
    cusp: str | None = None


@dataclass(frozen=True)
class SurfaceGaussCode:
    surfaces: tuple[int, ...]                        # genus of each component of X
    curves: tuple[LiftedCurve, ...] = ()
    crossings: tuple[tuple[str, str, str], ...] = ()  # (curve, curve, triple point id)

    def to_json(self) -> dict:
        return {
            "surfaces": [{"id": i, "genus": g} for i, g in enumerate(self.surfaces)],
            "curves": [{"id": c.id, "surface": c.surface, "kind": c.kind, "partner": c.partner,
                        "over": c.over, "arrow": c.arrow, "normal": c.normal, "cusp": c.cusp}
                       for c in self.curves],
            "crossings": [{"curves": [u, v], "triple": t} for u, v, t in self.crossings],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SurfaceGaussCode":
        try:
            surfaces = tuple(int(s["genus"]) for s in data["surfaces"])
            curves = tuple(LiftedCurve(str(c["id"]), int(c["surface"]), c["kind"], str(c["partner"]),
                                       bool(c["over"]), c["arrow"], c["normal"], c.get("cusp"))
                           for c in data.get("curves", []))
            crossings = tuple((str(x["curves"][0]), str(x["curves"][1]), str(x["triple"]))
                              for x in data.get("crossings", []))
        except (KeyError, TypeError, IndexError) as exc:
            raise SurfaceError(f"malformed surface Gauss code: {exc}") from exc
        return cls(surfaces, curves, crossings)


def validate_surface_gauss(sgc: SurfaceGaussCode) -> list[tuple[int, str]]:
    """Violations as (clause number, message); an empty list means valid.

    Clauses: 1 closed or cusped; 2 unique symmetric partner, one over copy,
    arrows and normals marked; 3 cusped curves pair across their cusp with
    matching arrows; 4 triple points appear three times.
    """
    by_id = {c.id: c for c in sgc.curves}
    if len(by_id) != len(sgc.curves):
        raise SurfaceError("duplicate curve id")
    for c in sgc.curves:
        if c.partner not in by_id:
            raise SurfaceError(f"curve {c.id} has dangling partner {c.partner}")
        if not 0 <= c.surface < len(sgc.surfaces):
            raise SurfaceError(f"curve {c.id} lies on unknown surface {c.surface}")
    for u, v, _ in sgc.crossings:
        if u not in by_id or v not in by_id:
            raise SurfaceError(f"crossing ({u}, {v}) references unknown curves")

    out: list[tuple[int, str]] = []
    for c in sgc.curves:
        if c.kind == "closed" and c.cusp is not None:
            out.append((1, f"closed curve {c.id} names a cusp"))
        elif c.kind == "cusped" and c.cusp is None:
            out.append((1, f"cusped curve {c.id} has no cusp"))
        elif c.kind not in ("closed", "cusped"):
            out.append((1, f"curve {c.id} is neither closed nor cusped"))

    for c in sgc.curves:
        p = by_id[c.partner]
        if p.id == c.id:
            out.append((2, f"curve {c.id} is paired with itself"))
            continue
        if p.partner != c.id:
            out.append((2, f"pairing of {c.id} with {p.id} is not symmetric"))
            continue
        if c.id < p.id and c.over == p.over:
            out.append((2, f"pair {c.id}/{p.id} needs exactly one over curve"))
        if c.normal not in ("+", "-"):
            out.append((2, f"curve {c.id} has no normal marking"))
        if c.kind == "closed" and p.kind == "closed":
            if c.arrow not in ("+", "-"):
                out.append((2, f"curve {c.id} has no arrow"))
            elif c.id < p.id and c.arrow != p.arrow:
                out.append((2, f"pair {c.id}/{p.id} has arrows that do not match up"))

    cusp_users: dict[str, list[str]] = {}
    for c in sgc.curves:
        if c.kind == "cusped" and c.cusp is not None:
            cusp_users.setdefault(c.cusp, []).append(c.id)
    for cusp, users in sorted(cusp_users.items()):
        if len(users) != 2:
            out.append((3, f"cusp {cusp} ends {len(users)} curves, not 2"))
            continue
        u, v = (by_id[x] for x in users)
        if u.partner != v.id:
            out.append((3, f"curves {u.id}, {v.id} share cusp {cusp} but are not paired"))
        if u.arrow not in ("toward", "away") or u.arrow != v.arrow:
            out.append((3, f"arrows at cusp {cusp} must both point toward or both away"))
    for c in sgc.curves:
        if c.kind == "cusped" and by_id[c.partner].kind != "cusped":
            out.append((3, f"cusped curve {c.id} is paired with a closed curve"))

    at_triple: dict[str, list[tuple[str, str]]] = {}
    for u, v, t in sgc.crossings:
        at_triple.setdefault(t, []).append((u, v))
    for t, pairs in sorted(at_triple.items()):
        members = [x for pair in pairs for x in pair]
        if len(pairs) != 3 or len(set(members)) != 6:
            out.append((4, f"triple point {t} appears {len(pairs)} times, not 3"))
            continue
        for u, v in pairs:
            if by_id[u].partner == v:
                out.append((4, f"curves {u}, {v} are partners and cannot cross"))
            for x in (u, v):
                if by_id[x].partner not in members:
                    out.append((4, f"partner of {x} does not pass through triple point {t}"))
    return out


def spin_surface_gauss(code: GaussCode) -> SurfaceGaussCode:
    """Lift of the spun diagram: a torus per component, a closed pair per crossing."""
    surfaces = tuple(1 for _ in code.components)
    curves = []
    for c in code.crossings:
        s = code.sign(c)
        ko = code.where(c, True)[0]
        ku = code.where(c, False)[0]
        curves.append(LiftedCurve(f"{c}o", ko, "closed", f"{c}u", True, "+", "+"))
        curves.append(LiftedCurve(f"{c}u", ku, "closed", f"{c}o", False, "+", "+" if s > 0 else "-"))
    return SurfaceGaussCode(surfaces, tuple(curves), ())


# ------------------------------------------------------------------ yoshikawa

ENDS = ("i1", "o1", "i2", "o2")
_PAIRINGS = (
    frozenset({frozenset({"i1", "o2"}), frozenset({"i2", "o1"})}),
    frozenset({frozenset({"i1", "i2"}), frozenset({"o1", "o2"})}),
)


@dataclass(frozen=True)
class Marker:
    vertex: str
    occurrence: int  # 1 or 2


@dataclass(frozen=True)
class MarkedVertex:
    """Flat vertex; ends i1/o1 and i2/o2 belong to its first and second passage."""

    id: str
    a: frozenset
    b: frozenset

    def __post_init__(self):
        a = self.pairing("A")
        b = self.pairing("B")
        if a == b:
            raise SurfaceError(f"vertex {self.id}: A and B must be different smoothings")

    def pairing(self, choice: str) -> frozenset:
        pair = frozenset(self.a if choice == "A" else self.b)
        for p in _PAIRINGS:
            if pair in p:
                return p
        raise SurfaceError(f"vertex {self.id}: {sorted(pair)} is not a smoothing pair")


Token = Union[Passage, Marker]


@dataclass(frozen=True)
class YoshikawaDiagram:
    components: tuple[tuple[Token, ...], ...]
    signs: tuple[tuple[int, int], ...]
    vertices: tuple[MarkedVertex, ...] = ()

    def __post_init__(self):
        seen: dict[str, list[int]] = {}
        for comp in self.components:
            for t in comp:
                if isinstance(t, Marker):
                    seen.setdefault(t.vertex, []).append(t.occurrence)
        ids = {v.id for v in self.vertices}
        if set(seen) != ids or any(sorted(o) != [1, 2] for o in seen.values()):
            raise SurfaceError("every marked vertex must be passed exactly twice")
        self.classical  # validates the underlying code

    @property
    def classical(self) -> GaussCode:
        comps = tuple(tuple(t for t in comp if isinstance(t, Passage)) for comp in self.components)
        return GaussCode(comps, self.signs)


_YTOKEN = re.compile(r"M\w+\{[^}]*\}|\S+")
_MARK = re.compile(r"^M(\w+?)(?:\{\s*A:\s*(\w+)\s*,\s*(\w+)\s*;\s*B:\s*(\w+)\s*,\s*(\w+)\s*\})?$")
_CLASSICAL = re.compile(r"^([OU])(\w+)([+-])$")


def parse_yoshikawa(text: str) -> YoshikawaDiagram:
    """Gauss-code grammar plus marker tokens.

    The first passage through vertex v is written ``Mv{A: e,e; B: e,e}``,
    naming one pair of ends for each smoothing; the second passage is ``Mv``.
    """
    ids: dict[str, int] = {}
    signs: dict[int, int] = {}
    vertices: dict[str, MarkedVertex] = {}
    count: dict[str, int] = {}
    comps = []
    for part in (text.strip() or "0").split("/"):
        tokens = _YTOKEN.findall(part)
        if tokens == ["0"]:
            comps.append(())
            continue
        comp: list[Token] = []
        for tok in tokens:
            m = _CLASSICAL.match(tok)
            if m:
                role, name, sg = m.groups()
                cid = ids.setdefault(name, len(ids) + 1)
                s = 1 if sg == "+" else -1
                if signs.setdefault(cid, s) != s:
                    raise CodeSyntaxError(f"sign mismatch on crossing {name}")
                comp.append(Passage(cid, role == "O"))
                continue
            m = _MARK.match(tok)
            if not m:
                raise CodeSyntaxError(f"bad token {tok!r}")
            vid, a1, a2, b1, b2 = m.groups()
            count[vid] = count.get(vid, 0) + 1
            if a1 is not None:
                if vid in vertices:
                    raise SurfaceError(f"vertex {vid} declared twice")
                for e in (a1, a2, b1, b2):
                    if e not in ENDS:
                        raise SurfaceError(f"unknown end {e!r}; use {', '.join(ENDS)}")
                vertices[vid] = MarkedVertex(vid, frozenset({a1, a2}), frozenset({b1, b2}))
            comp.append(Marker(vid, count[vid]))
        comps.append(tuple(comp))
    return YoshikawaDiagram(tuple(comps), tuple(signs.items()), tuple(vertices.values()))


def _segments(yd: YoshikawaDiagram):
    """Split marked components at markers.

    Returns (segments, plain) where each segment is (start_end, passages,
    stop_end) with ends written (vertex, end name), and plain lists the
    components without markers.
    """
    segments = []
    plain = []
    for comp in yd.components:
        marks = [i for i, t in enumerate(comp) if isinstance(t, Marker)]
        if not marks:
            plain.append(comp)
            continue
        n = len(comp)
        for j, i in enumerate(marks):
            nxt = marks[(j + 1) % len(marks)]
            run = []
            k = (i + 1) % n
            while k != nxt:
                run.append(comp[k])
                k = (k + 1) % n
            if len(marks) == 1:
                run = [comp[(i + 1 + t) % n] for t in range(n - 1)]
            m0, m1 = comp[i], comp[nxt]
            segments.append(((m0.vertex, f"o{m0.occurrence}"), tuple(run),
                             (m1.vertex, f"i{m1.occurrence}")))
    return segments, plain


def smooth(yd: YoshikawaDiagram, choice: str) -> GaussCode:
    """Replace every marked vertex by its A or B pairing."""
    if choice not in ("A", "B"):
        raise SurfaceError("choice must be 'A' or 'B'")
    segments, plain = _segments(yd)
    partner = {}
    for v in yd.vertices:
        for pair in v.pairing(choice):
            x, y = sorted(pair)
            partner[(v.id, x)] = (v.id, y)
            partner[(v.id, y)] = (v.id, x)
    starts = {seg[0]: i for i, seg in enumerate(segments)}
    stops = {seg[2]: i for i, seg in enumerate(segments)}
    used = [False] * len(segments)
    new_comps: list[list[tuple[Passage, bool]]] = [[(p, False) for p in comp] for comp in plain]
    for first in range(len(segments)):
        if used[first]:
            continue
        comp: list[tuple[Passage, bool]] = []
        i, forward = first, True
        while not used[i]:
            used[i] = True
            start, run, stop = segments[i]
            if forward:
                comp += [(p, False) for p in run]
                end = partner[stop]
            else:
                comp += [(p, True) for p in reversed(run)]
                end = partner[start]
            if end[1][0] == "o":
                i, forward = starts[end], True
            else:
                i, forward = stops[end], False
        new_comps.append(comp)
    signs = dict(yd.signs)
    for comp in new_comps:
        for p, backwards in comp:
            if backwards:
                signs[p.crossing] = -signs[p.crossing]
    return GaussCode(tuple(tuple(p for p, _ in comp) for comp in new_comps), tuple(signs.items()))


@dataclass(frozen=True)
class CertifiedTrivial:
    path: tuple[MoveSite, ...]


@dataclass(frozen=True)
class Indistinguishable:
    pass


@dataclass(frozen=True)
class Separated:
    target: str
    count: int
    unlink_count: int


Verdict = Union[CertifiedTrivial, Indistinguishable, Separated]


def unlink(m: int) -> GaussCode:
    return GaussCode(tuple(() for _ in range(max(m, 1))), ())


def screen_unlink(code: GaussCode, depth: int, max_steps: int = 20_000) -> Verdict:
    """Try to certify `code` as an unlink; otherwise look for a separating count.

    Never claims non-triviality without naming the invariant that differs.
    """
    target = unlink(len(code.components))
    for t in battery():
        got, want = count_for_code(code, t), count_for_code(target, t)
        if got != want:
            return Separated(t.name, got, want)
    res = search_equivalence(code, target, R_MOVES, max_crossings=code.n_crossings + 2,
                             max_steps=max_steps, max_depth=depth)
    if res.found:
        return CertifiedTrivial(tuple(res.path))
    return Indistinguishable()


@dataclass(frozen=True)
class YoshikawaVerdict:
    a: Verdict
    b: Verdict

    @property
    def accepted(self) -> bool:
        return not isinstance(self.a, Separated) and not isinstance(self.b, Separated)


def validate_yoshikawa(yd: YoshikawaDiagram, depth: int) -> YoshikawaVerdict:
    return YoshikawaVerdict(screen_unlink(smooth(yd, "A"), depth),
                            screen_unlink(smooth(yd, "B"), depth))


# Moves beyond Reidemeister moves for marked diagrams.  Shipped as reference
# data only; they are not executable rewrites.
YOSHIKAWA_MOVES = (
    ("Y4", "slide a strand over or under a marked vertex"),
    ("Y4'", "rotate a marked vertex while a crossing passes through it"),
    ("Y5", "exchange the two smoothing directions by a full twist next to the marker"),
    ("Y6", "create or delete a marked vertex on a kink (birth/death of a saddle on a trivial circle)"),
    ("Y6'", "the mirror of Y6 with the marker turned by a right angle"),
    ("Y7", "pass two adjacent marked vertices through each other between parallel strands"),
    ("Y8", "trade a marked vertex and two crossings for the same configuration reflected"),
)


def dump_json(obj) -> str:
    return json.dumps(obj.to_json(), indent=2)
