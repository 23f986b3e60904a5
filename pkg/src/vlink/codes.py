"""Signed Gauss codes for virtual links.

A code is a list of components, each a cyclic sequence of passages.  A passage
names a crossing and says whether the strand goes over or under there.  Every
crossing is passed exactly twice, once over and once under, and carries a sign.

Text form::

    O1+ U2+ O3+ U1+ O2+ U3+          trefoil
    O1+ O2+ U1+ U2+                  virtual trefoil
    0 / 0                            two-component unlink

Components are separated by `` / ``; the literal ``0`` is an empty component.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple


class CodeError(ValueError):
    """Raised for malformed or inconsistent Gauss codes."""


class CodeSyntaxError(CodeError):
    pass


class CodeSemanticError(CodeError):
    pass


class Passage(NamedTuple):
    crossing: int
    over: bool


class SemiArc(NamedTuple):
    """Segment of component `component` leaving the passage at `position`."""

    component: int
    position: int


@dataclass(frozen=True)
class Arc:
    """Maximal run of semi-arcs not broken by an under-passage."""

    component: int
    start: int
    semi_arcs: tuple[SemiArc, ...]


@dataclass(frozen=True)
class GaussCode:
    components: tuple[tuple[Passage, ...], ...]
    signs: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        comps = tuple(tuple(Passage(int(c), bool(o)) for c, o in comp)
                      for comp in self.components)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "signs", tuple(sorted(dict(self.signs).items())))
        _check(self)

    @classmethod
    def build(cls, components: Iterable[Iterable[tuple[int, bool]]],
              signs: dict[int, int]) -> "GaussCode":
        return cls(tuple(tuple(c) for c in components), tuple(signs.items()))

    @cached_property
    def sign_map(self) -> dict[int, int]:
        return dict(self.signs)

    def sign(self, crossing: int) -> int:
        return self.sign_map[crossing]

    @property
    def crossings(self) -> list[int]:
        return [c for c, _ in self.signs]

    @property
    def n_crossings(self) -> int:
        return len(self.signs)

    @property
    def writhe(self) -> int:
        return sum(s for _, s in self.signs)

    @cached_property
    def locations(self) -> dict[Passage, tuple[int, int]]:
        """Passage -> (component, position)."""
        return {p: (k, i) for k, comp in enumerate(self.components)
                for i, p in enumerate(comp)}

    def where(self, crossing: int, over: bool) -> tuple[int, int]:
        return self.locations[Passage(crossing, over)]

    def __str__(self) -> str:
        return serialize_code(self)


def _check(code: GaussCode) -> None:
    seen: dict[int, list[bool]] = {}
    for comp in code.components:
        for c, over in comp:
            seen.setdefault(c, []).append(over)
    for c, roles in seen.items():
        if sorted(roles) != [False, True]:
            raise CodeSemanticError(
                f"crossing {c} must appear once over and once under, got "
                + " ".join("O" if r else "U" for r in roles))
    signs = dict(code.signs)
    if set(signs) != set(seen):
        raise CodeSemanticError(
            f"sign map covers {sorted(signs)} but passages use {sorted(seen)}")
    for c, s in signs.items():
        if s not in (1, -1):
            raise CodeSemanticError(f"crossing {c} has sign {s}")


_TOKEN = re.compile(r"^([OU])([A-Za-z0-9_]+)([+-])$")


def parse_code(text: str) -> GaussCode:
    """Parse the token grammar; crossing ids are renumbered 1..n by first appearance."""
    text = text.strip()
    if not text:
        text = "0"
    ids: dict[str, int] = {}
    signs: dict[int, int] = {}
    components = []
    for part in text.split("/"):
        tokens = part.split()
        if tokens == ["0"]:
            components.append(())
            continue
        if not tokens:
            raise CodeSyntaxError(f"empty component in {text!r}; write 0")
        comp = []
        for tok in tokens:
            m = _TOKEN.match(tok)
            if m is None:
                raise CodeSyntaxError(f"bad token {tok!r}")
            role, name, sgn = m.groups()
            cid = ids.setdefault(name, len(ids) + 1)
            s = 1 if sgn == "+" else -1
            if signs.setdefault(cid, s) != s:
                raise CodeSemanticError(f"sign mismatch on crossing {name}")
            comp.append(Passage(cid, role == "O"))
        components.append(tuple(comp))
    return GaussCode(tuple(components), tuple(signs.items()))


def serialize_code(code: GaussCode) -> str:
    parts = []
    for comp in code.components:
        if not comp:
            parts.append("0")
        else:
            parts.append(" ".join(
                f"{'O' if p.over else 'U'}{p.crossing}{'+' if code.sign(p.crossing) > 0 else '-'}"
                for p in comp))
    return " / ".join(parts)


def read_codes(path) -> list[GaussCode]:
    """One link per line; blank lines and ``#`` comments are skipped."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(parse_code(line))
    return out


def relabel(code: GaussCode) -> GaussCode:
    """Renumber crossings 1..n in order of first appearance."""
    new: dict[int, int] = {}
    for comp in code.components:
        for p in comp:
            new.setdefault(p.crossing, len(new) + 1)
    comps = tuple(tuple(Passage(new[p.crossing], p.over) for p in comp)
                  for comp in code.components)
    return GaussCode(comps, tuple((new[c], s) for c, s in code.signs))


def semi_arcs(code: GaussCode) -> list[SemiArc]:
    return [SemiArc(k, i) for k, comp in enumerate(code.components)
            for i in range(max(len(comp), 1))]


def arcs(code: GaussCode) -> list[Arc]:
    out = []
    for k, comp in enumerate(code.components):
        n = len(comp)
        unders = [i for i, p in enumerate(comp) if not p.over]
        if not unders:
            out.append(Arc(k, 0, tuple(SemiArc(k, i) for i in range(max(n, 1)))))
            continue
        for j, u in enumerate(unders):
            nxt = unders[(j + 1) % len(unders)]
            length = (nxt - u) % n or n
            out.append(Arc(k, u, tuple(SemiArc(k, (u + t) % n) for t in range(length))))
    return out


def arc_index(code: GaussCode) -> dict[SemiArc, int]:
    """Semi-arc -> index of the arc containing it."""
    return {s: i for i, a in enumerate(arcs(code)) for s in a.semi_arcs}


def crossing_ends(code: GaussCode, crossing: int) -> tuple[SemiArc, SemiArc, SemiArc, SemiArc]:
    """(under_in, over_in, over_out, under_out) semi-arcs at a crossing."""
    ends = []
    for over in (False, True):
        k, i = code.where(crossing, over)
        n = len(code.components[k])
        ends.append((SemiArc(k, (i - 1) % n), SemiArc(k, i)))
    (ui, uo), (oi, oo) = ends
    return ui, oi, oo, uo


def mirror(code: GaussCode, horizontal: bool = False) -> GaussCode:
    """Flip every sign; the default (vertical) mirror also swaps over and under."""
    comps = code.components
    if not horizontal:
        comps = tuple(tuple(Passage(p.crossing, not p.over) for p in comp)
                      for comp in comps)
    return GaussCode(comps, tuple((c, -s) for c, s in code.signs))


def reverse(code: GaussCode) -> GaussCode:
    comps = tuple(tuple(reversed(comp)) for comp in code.components)
    return GaussCode(comps, code.signs)


def connected_pieces(code: GaussCode) -> list[list[int]]:
    """Components grouped by shared crossings."""
    parent = list(range(len(code.components)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in code.crossings:
        a = find(code.where(c, True)[0])
        b = find(code.where(c, False)[0])
        parent[a] = b
    groups: dict[int, list[int]] = {}
    for k in range(len(code.components)):
        groups.setdefault(find(k), []).append(k)
    return list(groups.values())


def _rotation(sign: int) -> tuple[int, ...]:
    # counter-clockwise slot order at a crossing; slots are 0=under_in,
    # 1=over_in, 2=over_out, 3=under_out
    return (1, 0, 2, 3) if sign > 0 else (1, 3, 2, 0)


def boundary_cycles(code: GaussCode, piece: list[int] | None = None) -> int:
    """Number of boundary circles of the band surface (faces of the capped surface)."""
    if piece is None:
        piece = list(range(len(code.components)))
    # half-edge = (crossing, slot); alpha pairs the two ends of each semi-arc
    alpha: dict[tuple[int, int], tuple[int, int]] = {}
    crossings = set()
    for k in piece:
        comp = code.components[k]
        n = len(comp)
        for i, p in enumerate(comp):
            q = comp[(i + 1) % n]
            tail = (p.crossing, 2 if p.over else 3)
            head = (q.crossing, 1 if q.over else 0)
            alpha[tail] = head
            alpha[head] = tail
            crossings.add(p.crossing)
    if not crossings:
        return len(piece) * 2 if piece else 0
    sigma = {}
    for c in crossings:
        rot = _rotation(code.sign(c))
        for j, slot in enumerate(rot):
            sigma[(c, slot)] = (c, rot[(j + 1) % 4])
    seen = set()
    faces = 0
    for start in alpha:
        if start in seen:
            continue
        faces += 1
        h = start
        while h not in seen:
            seen.add(h)
            h = sigma[alpha[h]]
    return faces


def carrier_genus(code: GaussCode) -> int:
    """Genus of the closed surface obtained by capping the band neighbourhood.

    Summed over connected pieces of the diagram; crossing-free pieces are planar.
    """
    total = 0
    for piece in connected_pieces(code):
        v = len({p.crossing for k in piece for p in code.components[k]})
        if v == 0:
            continue
        e = 2 * v
        f = boundary_cycles(code, piece)
        chi = v - e + f
        assert chi % 2 == 0 and chi <= 2, (code, piece, chi)
        total += (2 - chi) // 2
    return total


def is_realizable(code: GaussCode) -> bool:
    return carrier_genus(code) == 0


# Their validation records live in records.py.
_CORPUS_TEXT = {
    "unknot": "0",
    "unlink-2": "0 / 0",
    "trefoil": "O1+ U2+ O3+ U1+ O2+ U3+",
    "figure-8": "O1+ U2+ O3- U4- O2+ U1+ O4- U3-",
    "virtual-trefoil": "O1+ O2+ U1+ U2+",
    "kishino": "O1+ O2- U1+ U3+ O4- O3+ U4- U2-",
}


def corpus() -> dict[str, GaussCode]:
    return {name: parse_code(text) for name, text in _CORPUS_TEXT.items()}
