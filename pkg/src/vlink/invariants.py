"""Counting homomorphisms from presentations into finite targets."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from .algebra import (FiniteBiquandle, FiniteGroup, FiniteQuandle, SubgroupWithCenterElement,
                      alexander_biquandle, conjugation_quandle, coset_quandle,
                      dihedral_quandle, quandle_to_biquandle, symmetric_group)
from .codes import GaussCode, carrier_genus
from .presentations import (Presentation, Term, exponent_sums, leaves, presentation)

Structure = Union[FiniteGroup, FiniteQuandle, FiniteBiquandle]


class TheoryMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ColoringTarget:
    name: str
    structure: Structure

    @property
    def theory(self) -> str:
        if isinstance(self.structure, FiniteGroup):
            return "group"
        if isinstance(self.structure, FiniteQuandle):
            return "quandle"
        return "biquandle"

    @property
    def order(self) -> int:
        return self.structure.order


def _op_tables(p: Presentation, target: Structure) -> dict[str, object]:
    if p.theory == "group" and isinstance(target, FiniteGroup):
        return {"mul": target.mul, "inv": target.inv, "one": target.identity}
    if p.theory == "quandle" and isinstance(target, FiniteQuandle):
        return {"qup": target.star, "qupbar": target.star_inv}
    if p.theory == "quandle" and isinstance(target, FiniteBiquandle):
        # quandle presentations read in a biquandle through its up operations
        return {"qup": target.up, "qupbar": target.upbar}
    if p.theory == "biquandle" and isinstance(target, FiniteBiquandle):
        return {"bup": target.up, "bdown": target.down,
                "bupbar": target.upbar, "bdownbar": target.downbar}
    raise TheoryMismatch(f"cannot color a {p.theory} presentation by {type(target).__name__}")


def _unwrap(target) -> Structure:
    return target.structure if isinstance(target, ColoringTarget) else target


def _expr(term: Term, slot: dict[str, int]) -> str:
    if isinstance(term, str):
        return f"v[{slot[term]}]"
    op = term[0]
    if op == "one":
        return "one"
    if op == "inv":
        return f"inv[{_expr(term[1], slot)}]"
    return f"{op}[{_expr(term[1], slot)}][{_expr(term[2], slot)}]"


def _compile(term: Term, slot: dict[str, int], tables: dict[str, object]):
    return eval(f"lambda v: {_expr(term, slot)}", dict(tables))


def _with_inverses(tables: dict[str, object]) -> dict[str, object]:
    """Add op_i0[v][y] = x with op[x][y] = v, and op_i1[x][v] = y with op[x][y] = v,
    wherever those are well defined for this target."""
    out = dict(tables)
    for name, t in tables.items():
        if name in ("inv", "one"):
            continue
        n = len(t)
        cols = [[t[x][y] for x in range(n)] for y in range(n)]
        if all(len(set(c)) == n for c in cols):
            i0 = [[0] * n for _ in range(n)]
            for x in range(n):
                for y in range(n):
                    i0[t[x][y]][y] = x
            out[name + "_i0"] = tuple(map(tuple, i0))
        if all(len(set(row)) == n for row in t):
            i1 = [[0] * n for _ in range(n)]
            for x in range(n):
                for y in range(n):
                    i1[x][t[x][y]] = y
            out[name + "_i1"] = tuple(map(tuple, i1))
    return out


def _occurrences(term: Term, g: str) -> int:
    if isinstance(term, str):
        return term == g
    return sum(_occurrences(a, g) for a in term[1:])


def _isolate(term: Term, value: Term, g: str, tables) -> Term | None:
    """Solve term = value for the single occurrence of g, if every step inverts."""
    if term == g:
        return value
    if isinstance(term, str) or term[0] == "one":
        return None
    if term[0] == "inv":
        return _isolate(term[1], ("inv", value), g, tables)
    op, a, b = term
    if _occurrences(a, g) and op + "_i0" in tables:
        return _isolate(a, (op + "_i0", value, b), g, tables)
    if _occurrences(b, g) and op + "_i1" in tables:
        return _isolate(b, (op + "_i1", a, value), g, tables)
    return None


def _plan(p: Presentation, tables):
    """Static search plan: a list of (generator slot, forcing function or None,
    relation checks that become decidable right after this step)."""
    gens = list(p.generators)
    slot = {g: i for i, g in enumerate(gens)}
    pending = [(l, r, leaves(l) | leaves(r)) for l, r in p.relations]

    def solvable(assigned, rel):
        l, r, lv = rel
        free = lv - assigned
        if len(free) != 1:
            return None
        g = next(iter(free))
        if _occurrences(l, g) + _occurrences(r, g) != 1:
            return None
        t = _isolate(l, r, g, tables) if _occurrences(l, g) else _isolate(r, l, g, tables)
        return None if t is None else (g, t)

    def propagate(assigned, rels):
        """Forced assignments in order, mutating assigned and rels."""
        forced = []
        while True:
            hit = next(((rel, h) for rel in rels if (h := solvable(assigned, rel))), None)
            if hit is None:
                return forced
            rels.remove(hit[0])
            assigned.add(hit[1][0])
            forced.append(hit[1])

    def ready_checks(assigned):
        out = []
        for rel in list(pending):
            if rel[2] <= assigned:
                pending.remove(rel)
                out.append((_compile(rel[0], slot, tables), _compile(rel[1], slot, tables)))
        return out

    assigned: set[str] = set()
    steps = []
    while len(assigned) < len(gens):
        # branch on the generator whose value forces the most others
        best, best_gain = None, -1
        for g in gens:
            if g in assigned:
                continue
            trial = assigned | {g}
            gain = len(propagate(trial, list(pending)))
            if gain > best_gain:
                best, best_gain = g, gain
        assigned.add(best)
        steps.append((slot[best], None, ready_checks(assigned)))
        while True:
            hit = next(((rel, h) for rel in pending if (h := solvable(assigned, rel))), None)
            if hit is None:
                break
            pending.remove(hit[0])
            g, t = hit[1]
            assigned.add(g)
            steps.append((slot[g], _compile(t, slot, tables), ready_checks(assigned)))
    head = ready_checks(assigned)  # relations without generators, e.g. one = one
    return steps, head


def iter_colorings(p: Presentation, target) -> Iterator[tuple[int, ...]]:
    """Every assignment of target elements to generators satisfying all relations.

    Backtracks over generators.  A relation with a single unassigned generator
    fixes it instead of branching, whenever the target's tables can be inverted
    along the path to it; every other relation is checked as soon as all its
    generators are assigned.  Branching picks the generator that forces most.
    """
    target = _unwrap(target)
    tables = _with_inverses(_op_tables(p, target))
    steps, head = _plan(p, tables)
    if any(f(()) != g(()) for f, g in head):
        return
    n = target.order
    v = [0] * len(p.generators)
    depth = len(steps)

    def rec(k):
        if k == depth:
            yield tuple(v)
            return
        s, force, checks = steps[k]
        values = (force(v),) if force is not None else range(n)
        for x in values:
            v[s] = x
            for f, g in checks:
                if f(v) != g(v):
                    break
            else:
                yield from rec(k + 1)

    yield from rec(0)


def count_colorings(p: Presentation, target, surjective: bool = False) -> int:
    target = _unwrap(target)
    n = target.order
    if surjective:
        return sum(1 for c in iter_colorings(p, target) if len(set(c)) == n)
    return sum(1 for _ in iter_colorings(p, target))


def count_surjective_colorings(p: Presentation, target) -> int:
    return count_colorings(p, target, surjective=True)


def evaluate(term: Term, assignment: dict[str, int], target) -> int:
    """Value of a term under an assignment (generic, uncompiled)."""
    target = _unwrap(target)
    if isinstance(term, str):
        return assignment[term]
    op = term[0]
    if isinstance(target, FiniteGroup):
        if op == "one":
            return target.identity
        if op == "inv":
            return target.inv[evaluate(term[1], assignment, target)]
        table = target.mul
    elif isinstance(target, FiniteQuandle):
        table = {"qup": target.star, "qupbar": target.star_inv}[op]
    else:
        table = {"bup": target.up, "bdown": target.down, "bupbar": target.upbar,
                 "bdownbar": target.downbar, "qup": target.up, "qupbar": target.upbar}[op]
    return table[evaluate(term[1], assignment, target)][evaluate(term[2], assignment, target)]


# ------------------------------------------------------------- abelianization

def relation_matrix(p: Presentation) -> list[list[int]]:
    if p.theory != "group":
        raise TheoryMismatch("abelianization needs a group presentation")
    rows = []
    for l, r in p.relations:
        el, er = exponent_sums(l), exponent_sums(r)
        rows.append([el.get(g, 0) - er.get(g, 0) for g in p.generators])
    return rows


def _rank(rows: list[list[int]]) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def abelianization_rank(p: Presentation) -> int:
    """Free rank of the abelianized group: generators minus relation-matrix rank."""
    rows = relation_matrix(p)
    return len(p.generators) - (_rank(rows) if rows else 0)


# ------------------------------------------------------------ battery, report

def builtin_target(spec: str) -> ColoringTarget:
    """Targets by name: dihedral:n, alexander:n:s:t, conj:s3, coset:s3:12, group:s3|s4."""
    parts = spec.lower().split(":")
    kind = parts[0]
    try:
        if kind == "dihedral" and len(parts) == 2:
            n = int(parts[1])
            return ColoringTarget(f"R{n}", dihedral_quandle(n))
        if kind == "alexander" and len(parts) == 4:
            n, s, t = map(int, parts[1:])
            return ColoringTarget(f"Alex({n},{s},{t})", alexander_biquandle(n, s, t))
        if kind == "conj" and parts[1:] == ["s3"]:
            return ColoringTarget("Conj(S3)", conjugation_quandle(symmetric_group(3)))
        if kind == "coset" and parts[1:] == ["s3", "12"]:
            return ColoringTarget("Coset(S3,<(12)>,(12))", s3_coset_quandle())
        if kind == "group" and len(parts) == 2 and parts[1] in ("s3", "s4"):
            k = int(parts[1][1])
            return ColoringTarget(f"S{k}", symmetric_group(k))
        if kind == "promoted" and len(parts) == 2:
            n = int(parts[1])
            return ColoringTarget(f"B(R{n})", quandle_to_biquandle(dihedral_quandle(n)))
    except (ValueError, IndexError):
        pass
    raise ValueError(f"unknown builtin target {spec!r}")


def s3_coset_quandle() -> FiniteQuandle:
    g = symmetric_group(3)
    transposition = g.elements.index((1, 0, 2))
    ctx = SubgroupWithCenterElement(g, frozenset({g.identity, transposition}), transposition)
    return coset_quandle(ctx)


BATTERY_SPECS = ("dihedral:3", "dihedral:5", "conj:s3", "coset:s3:12",
                 "alexander:5:2:3", "alexander:5:3:2", "alexander:5:2:1",
                 "group:s3", "group:s4")


def battery() -> list[ColoringTarget]:
    return [builtin_target(s) for s in BATTERY_SPECS]


def count_for_code(code: GaussCode, target: ColoringTarget, surjective: bool = False) -> int:
    return count_colorings(presentation(code, target.theory), target, surjective)


@dataclass
class InvariantReport:
    code: str
    counts: list[tuple[str, int]] = field(default_factory=list)
    rank: int = 0
    genus: int = 0
    writhe: int = 0

    def to_json(self) -> dict:
        return {"code": self.code, "counts": dict(self.counts), "rank": self.rank,
                "genus": self.genus, "writhe": self.writhe}

    def to_text(self) -> str:
        lines = [f"code: {self.code}"]
        lines += [f"count {name}: {n}" for name, n in self.counts]
        lines += [f"rank: {self.rank}", f"genus: {self.genus}", f"writhe: {self.writhe}"]
        return "\n".join(lines) + "\n"


def report(code: GaussCode, targets: list[ColoringTarget] | None = None) -> InvariantReport:
    from .codes import serialize_code
    targets = battery() if targets is None else targets
    cache: dict[str, Presentation] = {}
    counts = []
    for t in targets:
        if t.theory not in cache:
            cache[t.theory] = presentation(code, t.theory)
        counts.append((t.name, count_colorings(cache[t.theory], t)))
    return InvariantReport(
        code=serialize_code(code),
        counts=counts,
        rank=abelianization_rank(presentation(code, "group")),
        genus=carrier_genus(code),
        writhe=code.writhe,
    )


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "vlink invariant report",
    "type": "object",
    "required": ["code", "counts", "rank", "genus", "writhe"],
    "additionalProperties": False,
    "properties": {
        "code": {"type": "string"},
        "counts": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
        "rank": {"type": "integer", "minimum": 0},
        "genus": {"type": "integer", "minimum": 0},
        "writhe": {"type": "integer"},
    },
}


def report_json(code: GaussCode) -> str:
    return json.dumps(report(code).to_json(), indent=2)
