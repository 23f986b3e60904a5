"""Reidemeister and forbidden moves on Gauss codes, canonical forms, and search.

Virtual Reidemeister moves only change how a diagram sits in the plane; the
Gauss code is unchanged by them, so they have no representation here.  Every
rewrite below acts on the code alone.

Site specs (text form used by the CLI)::

    R1_add@k.i/OU/+        insert a kink after passage i of component k
    R1_remove@c            remove crossing c
    R2_add@k.i,l.j/par/+   over pair at gap k.i, under pair at gap l.j;
                           par|anti orientation, sign of the first crossing;
                           an optional /under-first applies when the gaps coincide
    R2_remove@c,d
    R3@k.i,l.j,m.h         windows (two consecutive passages) on the top,
                           middle and bottom strands
    F_forbidden@k.i        swap the over passages at positions i, i+1
    F_under@k.i            swap two adjacent under passages

Gap k.i is the semi-arc leaving passage i of component k (k.0 for an empty
component).
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .codes import GaussCode, Passage, relabel, serialize_code


class MoveError(ValueError):
    pass


class MoveKind(str, Enum):
    R1_ADD = "R1_add"
    R1_REMOVE = "R1_remove"
    R2_ADD = "R2_add"
    R2_REMOVE = "R2_remove"
    R3 = "R3"
    F_FORBIDDEN = "F_forbidden"
    F_UNDER = "F_under"


R_MOVES = (MoveKind.R1_ADD, MoveKind.R1_REMOVE, MoveKind.R2_ADD, MoveKind.R2_REMOVE, MoveKind.R3)
WELDED_MOVES = R_MOVES + (MoveKind.F_FORBIDDEN,)

# Realizable R3 triangles: (top strand meets its crossing with the middle strand
# first, middle strand meets the top strand first, bottom strand meets the top
# strand first, sign top/middle, sign top/bottom, sign middle/bottom).  Derived
# from random arrangements of three oriented lines; see tests/oracles.py.
R3_PATTERNS = frozenset({
    (False, False, False, -1, -1, -1), (False, False, False, 1, 1, 1),
    (False, False, True, -1, 1, 1), (False, False, True, 1, -1, -1),
    (False, True, False, -1, 1, -1), (False, True, False, 1, -1, 1),
    (False, True, True, -1, -1, 1), (False, True, True, 1, 1, -1),
    (True, False, False, -1, -1, 1), (True, False, False, 1, 1, -1),
    (True, False, True, -1, 1, -1), (True, False, True, 1, -1, 1),
    (True, True, False, -1, 1, 1), (True, True, False, 1, -1, -1),
    (True, True, True, -1, -1, -1), (True, True, True, 1, 1, 1),
})


@dataclass(frozen=True)
class MoveSite:
    kind: MoveKind
    data: tuple

    def __str__(self) -> str:
        return format_site(self)


def _gap(g):
    return f"{g[0]}.{g[1]}"


def format_site(site: MoveSite) -> str:
    k, d = site.kind, site.data
    if k is MoveKind.R1_ADD:
        gap, order, sign = d
        return f"{k.value}@{_gap(gap)}/{order}/{'+' if sign > 0 else '-'}"
    if k is MoveKind.R2_ADD:
        g1, g2, anti, sign, under_first = d
        s = f"{k.value}@{_gap(g1)},{_gap(g2)}/{'anti' if anti else 'par'}/{'+' if sign > 0 else '-'}"
        return s + ("/under-first" if under_first else "")
    if k is MoveKind.R3:
        return f"{k.value}@" + ",".join(_gap(w) for w in d)
    if k in (MoveKind.F_FORBIDDEN, MoveKind.F_UNDER):
        return f"{k.value}@{_gap(d[0])}"
    return f"{k.value}@" + ",".join(str(c) for c in d)


_GAP = re.compile(r"^(\d+)\.(\d+)$")


def _parse_gap(s: str) -> tuple[int, int]:
    m = _GAP.match(s)
    if not m:
        raise MoveError(f"bad gap {s!r}")
    return int(m.group(1)), int(m.group(2))


def parse_site(text: str) -> MoveSite:
    try:
        head, _, rest = text.strip().partition("@")
        kind = MoveKind(head)
        parts = rest.split("/")
        if kind is MoveKind.R1_ADD:
            gap, order, sign = parts
            if order not in ("OU", "UO") or sign not in "+-":
                raise ValueError
            return MoveSite(kind, (_parse_gap(gap), order, 1 if sign == "+" else -1))
        if kind is MoveKind.R2_ADD:
            gaps, orient, sign, *extra = parts
            g1, g2 = (_parse_gap(g) for g in gaps.split(","))
            if orient not in ("par", "anti") or sign not in "+-" or extra not in ([], ["under-first"]):
                raise ValueError
            return MoveSite(kind, (g1, g2, orient == "anti", 1 if sign == "+" else -1, bool(extra)))
        if kind is MoveKind.R3:
            return MoveSite(kind, tuple(_parse_gap(g) for g in parts[0].split(",")))
        if kind in (MoveKind.F_FORBIDDEN, MoveKind.F_UNDER):
            return MoveSite(kind, (_parse_gap(parts[0]),))
        return MoveSite(kind, tuple(int(c) for c in parts[0].split(",")))
    except (ValueError, TypeError) as exc:
        raise MoveError(f"bad site spec {text!r}") from exc


# -------------------------------------------------------------- enumeration

def _gaps(code: GaussCode) -> list[tuple[int, int]]:
    return [(k, i) for k, comp in enumerate(code.components) for i in range(max(len(comp), 1))]


def _adjacent(code: GaussCode, p: Passage, q: Passage) -> bool:
    """q immediately follows p on the same component."""
    (k1, i1), (k2, i2) = code.locations[p], code.locations[q]
    return k1 == k2 and (i1 + 1) % len(code.components[k1]) == i2


def _window(code: GaussCode, k: int, i: int) -> tuple[Passage, Passage]:
    comp = code.components[k]
    return comp[i], comp[(i + 1) % len(comp)]


def _windows(code: GaussCode):
    for k, comp in enumerate(code.components):
        if len(comp) >= 2:
            for i in range(len(comp)):
                yield (k, i), _window(code, k, i)


def enumerate_sites(code: GaussCode, kind: MoveKind | str) -> list[MoveSite]:
    kind = MoveKind(kind)
    sites: list[MoveSite] = []
    if kind is MoveKind.R1_ADD:
        for g in _gaps(code):
            for order in ("OU", "UO"):
                for s in (1, -1):
                    sites.append(MoveSite(kind, (g, order, s)))
    elif kind is MoveKind.R1_REMOVE:
        for c in code.crossings:
            o, u = Passage(c, True), Passage(c, False)
            if _adjacent(code, o, u) or _adjacent(code, u, o):
                sites.append(MoveSite(kind, (c,)))
    elif kind is MoveKind.R2_ADD:
        gaps = _gaps(code)
        for g1 in gaps:
            for g2 in gaps:
                for anti in (False, True):
                    for s in (1, -1):
                        sites.append(MoveSite(kind, (g1, g2, anti, s, False)))
                        if g1 == g2:
                            sites.append(MoveSite(kind, (g1, g2, anti, s, True)))
    elif kind is MoveKind.R2_REMOVE:
        for x, y in itertools.combinations(code.crossings, 2):
            if code.sign(x) == code.sign(y):
                continue
            ox, oy, ux, uy = Passage(x, True), Passage(y, True), Passage(x, False), Passage(y, False)
            if (_adjacent(code, ox, oy) or _adjacent(code, oy, ox)) and \
                    (_adjacent(code, ux, uy) or _adjacent(code, uy, ux)):
                sites.append(MoveSite(kind, (x, y)))
    elif kind is MoveKind.R3:
        sites = _r3_sites(code)
    elif kind in (MoveKind.F_FORBIDDEN, MoveKind.F_UNDER):
        want = kind is MoveKind.F_FORBIDDEN
        for w, (p, q) in _windows(code):
            if p.over == want and q.over == want:
                sites.append(MoveSite(kind, (w,)))
    return sites


def _r3_match(code: GaussCode, wt, wm, wb):
    """Return the pattern tuple if the three windows form an R3 triangle."""
    pt, pm, pb = _window(code, *wt), _window(code, *wm), _window(code, *wb)
    if not (pt[0].over and pt[1].over):
        return None
    m_under = [p for p in pm if not p.over]
    m_over = [p for p in pm if p.over]
    if len(m_under) != 1 or len(m_over) != 1 or pb[0].over or pb[1].over:
        return None
    tm = m_under[0].crossing
    mb = m_over[0].crossing
    top = {p.crossing for p in pt}
    if tm not in top or mb in top:
        return None
    tb = (top - {tm}).pop()
    if {p.crossing for p in pb} != {tb, mb}:
        return None
    pattern = (pt[0].crossing == tm, pm[0].crossing == tm, pb[0].crossing == tb,
               code.sign(tm), code.sign(tb), code.sign(mb))
    return pattern if pattern in R3_PATTERNS else None


def _r3_sites(code: GaussCode) -> list[MoveSite]:
    windows = list(_windows(code))
    by_passage: dict[Passage, list[tuple[int, int]]] = {}
    for w, pair in windows:
        for p in pair:
            by_passage.setdefault(p, []).append(w)
    sites = []
    for wt, (p, q) in windows:
        if not (p.over and q.over):
            continue
        for tm in (p.crossing, q.crossing):
            for wm in by_passage.get(Passage(tm, False), []):
                for wb in by_passage.get(Passage(({p.crossing, q.crossing} - {tm}).pop(), False), []):
                    if _r3_match(code, wt, wm, wb) is not None:
                        sites.append(MoveSite(MoveKind.R3, (wt, wm, wb)))
    return sorted(set(sites), key=lambda s: s.data)


# ------------------------------------------------------------------ rewrites

def _next_id(code: GaussCode) -> int:
    return max(code.crossings, default=0) + 1


def _insert(comps: list[list[Passage]], inserts: list[tuple[tuple[int, int], list[Passage]]]):
    """Insert passage runs after the given gaps; later positions first."""
    for (k, i), run in sorted(inserts, key=lambda x: x[0], reverse=True):
        pos = 0 if not comps[k] else i + 1
        comps[k][pos:pos] = run


def apply_move(code: GaussCode, site: MoveSite) -> GaussCode:
    """Rewrite `code` at `site`; raises MoveError if the site does not apply."""
    if site not in enumerate_sites_cached(code, site.kind):
        raise MoveError(f"site {format_site(site)} does not apply to {serialize_code(code)}")
    comps = [list(c) for c in code.components]
    signs = dict(code.signs)
    kind, d = site.kind, site.data
    if kind is MoveKind.R1_ADD:
        gap, order, s = d
        c = _next_id(code)
        run = [Passage(c, True), Passage(c, False)]
        if order == "UO":
            run.reverse()
        _insert(comps, [(gap, run)])
        signs[c] = s
    elif kind in (MoveKind.R1_REMOVE, MoveKind.R2_REMOVE):
        gone = set(d)
        comps = [[p for p in comp if p.crossing not in gone] for comp in comps]
        for c in gone:
            del signs[c]
    elif kind is MoveKind.R2_ADD:
        g1, g2, anti, s, under_first = d
        x = _next_id(code)
        y = x + 1
        over_run = [Passage(x, True), Passage(y, True)]
        under_run = [Passage(y, False), Passage(x, False)] if anti else [Passage(x, False), Passage(y, False)]
        if g1 == g2:
            run = under_run + over_run if under_first else over_run + under_run
            _insert(comps, [(g1, run)])
        else:
            _insert(comps, [(g1, over_run), (g2, under_run)])
        signs[x], signs[y] = s, -s
    else:
        # R3 and both forbidden moves swap the passages of each window
        for k, i in d:
            n = len(comps[k])
            j = (i + 1) % n
            comps[k][i], comps[k][j] = comps[k][j], comps[k][i]
    return GaussCode(tuple(tuple(c) for c in comps), tuple(signs.items()))


_SITE_CACHE: dict[tuple, frozenset] = {}


def enumerate_sites_cached(code: GaussCode, kind: MoveKind) -> frozenset:
    key = (code, kind)
    hit = _SITE_CACHE.get(key)
    if hit is None:
        if len(_SITE_CACHE) > 20000:
            _SITE_CACHE.clear()
        hit = _SITE_CACHE[key] = frozenset(enumerate_sites(code, kind))
    return hit


# ------------------------------------------------------------ canonical form

def _rotations(comp: tuple[Passage, ...]):
    if not comp:
        yield comp
        return
    for i in range(len(comp)):
        yield comp[i:] + comp[:i]


def canonical_form(code: GaussCode) -> GaussCode:
    """Lexicographically least serialization over component orders, rotations
    and crossing relabelings."""
    best = None
    best_text = None
    for order in itertools.permutations(code.components):
        for rots in itertools.product(*(list(_rotations(c)) for c in order)):
            cand = relabel(GaussCode(tuple(rots), code.signs))
            text = serialize_code(cand)
            if best_text is None or text < best_text:
                best, best_text = cand, text
    return best


def canonical_key(code: GaussCode) -> str:
    return serialize_code(canonical_form(code))


# -------------------------------------------------------------------- search

@dataclass
class SearchResult:
    found: bool
    path: list[MoveSite] = field(default_factory=list)
    expanded: int = 0
    visited: int = 0

    @property
    def verdict(self) -> str:
        return "path" if self.found else "exhausted"


def _neighbors(code: GaussCode, kinds, max_crossings: int):
    for kind in kinds:
        if kind is MoveKind.R1_ADD and code.n_crossings + 1 > max_crossings:
            continue
        if kind is MoveKind.R2_ADD and code.n_crossings + 2 > max_crossings:
            continue
        for site in sorted(enumerate_sites_cached(code, kind), key=format_site):
            yield site, canonical_form(apply_move(code, site))


def _bridge(src: GaussCode, dst: GaussCode, kinds) -> MoveSite:
    """A site taking canonical `src` to canonical `dst` in one move."""
    key = serialize_code(dst)
    for kind in kinds:
        for site in sorted(enumerate_sites_cached(src, kind), key=format_site):
            if canonical_key(apply_move(src, site)) == key:
                return site
    raise MoveError("no single move links the two codes")


def search_equivalence(a: GaussCode, b: GaussCode, kinds: Iterable = R_MOVES,
                       max_crossings: int = 6, max_steps: int = 100_000,
                       max_depth: int | None = None) -> SearchResult:
    """Bidirectional breadth-first search over canonical forms.

    Returns a path of sites; replay it with :func:`replay` from
    ``canonical_form(a)``.  Failure means the bounds were exhausted, never
    that the codes are inequivalent.
    """
    kinds = tuple(MoveKind(k) for k in kinds)
    ca, cb = canonical_form(a), canonical_form(b)
    ka, kb = serialize_code(ca), serialize_code(cb)
    if ka == kb:
        return SearchResult(True, [], 0, 1)
    # key -> (code, parent key, depth)
    sides = [{ka: (ca, None, 0)}, {kb: (cb, None, 0)}]
    queues = [deque([ka]), deque([kb])]
    limits = [None, None] if max_depth is None else [(max_depth + 1) // 2, max_depth // 2]
    expanded = 0
    meet = None
    while queues[0] or queues[1]:
        # grow the smaller frontier
        s = 0 if (queues[0] and (not queues[1] or len(queues[0]) <= len(queues[1]))) else 1
        key = queues[s].popleft()
        code, _, depth = sides[s][key]
        if limits[s] is not None and depth >= limits[s]:
            continue
        expanded += 1
        if expanded > max_steps:
            break
        for _, nxt in _neighbors(code, kinds, max_crossings):
            nk = serialize_code(nxt)
            if nk in sides[s]:
                continue
            sides[s][nk] = (nxt, key, depth + 1)
            if nk in sides[1 - s]:
                meet = nk
                break
            queues[s].append(nk)
        if meet:
            break
    visited = len(sides[0]) + len(sides[1])
    if meet is None:
        return SearchResult(False, [], expanded, visited)
    chain_a = []
    k = meet
    while k is not None:
        chain_a.append(sides[0][k][0])
        k = sides[0][k][1]
    chain_a.reverse()
    chain_b = []
    k = sides[1][meet][1]
    while k is not None:
        chain_b.append(sides[1][k][0])
        k = sides[1][k][1]
    chain = chain_a + chain_b
    path = [_bridge(x, y, kinds) for x, y in zip(chain, chain[1:])]
    return SearchResult(True, path, expanded, visited)


def replay(code: GaussCode, path: Iterable[MoveSite]) -> GaussCode:
    """Apply a search path starting from the canonical form of `code`."""
    cur = canonical_form(code)
    for site in path:
        cur = canonical_form(apply_move(cur, site))
    return cur
