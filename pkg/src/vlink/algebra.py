"""Finite groups, quandles and biquandles as operation tables.

Elements are the integers ``0..n-1``.  Tables are tuples of tuples so the
structures are hashable and immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Callable, Sequence

Table = tuple[tuple[int, ...], ...]


class AlgebraError(ValueError):
    pass


def _table(rows: Sequence[Sequence[int]]) -> Table:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _square(t: Table, n: int | None = None) -> int:
    n = len(t) if n is None else n
    if len(t) != n or any(len(row) != n for row in t):
        raise AlgebraError(f"table is not {n}x{n}")
    if any(not 0 <= x < n for row in t for x in row):
        raise AlgebraError("table entry out of range")
    return n


def _column_inverse(t: Table) -> Table:
    """inv[x][b] = the a with t[a][b] == x."""
    n = len(t)
    inv = [[-1] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            inv[t[a][b]][b] = a
    return _table(inv)


@dataclass(frozen=True)
class FiniteGroup:
    mul: Table
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "mul", _table(self.mul))
        if not validate_group(self.mul):
            raise AlgebraError(f"not a group: {self.name or self.mul}")

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def identity(self) -> int:
        return next(e for e in range(self.order)
                    if all(self.mul[e][x] == x for x in range(self.order)))

    @property
    def inv(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(next(y for y in range(self.order) if self.mul[x][y] == e)
                     for x in range(self.order))


@dataclass(frozen=True)
class FiniteQuandle:
    star: Table
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "star", _table(self.star))
        failed = quandle_failures(self.star)
        if failed:
            raise AlgebraError(f"not a quandle ({', '.join(failed)}): {self.name}")

    @property
    def order(self) -> int:
        return len(self.star)

    @property
    def star_inv(self) -> Table:
        return _column_inverse(self.star)


@dataclass(frozen=True)
class FiniteBiquandle:
    up: Table
    down: Table
    upbar: Table
    downbar: Table
    name: str = ""

    def __post_init__(self):
        for f in ("up", "down", "upbar", "downbar"):
            object.__setattr__(self, f, _table(getattr(self, f)))
        failed = biquandle_failures(self.tables)
        if failed:
            raise AlgebraError(f"not a biquandle ({', '.join(failed)}): {self.name}")

    @property
    def order(self) -> int:
        return len(self.up)

    @property
    def tables(self) -> tuple[Table, Table, Table, Table]:
        return self.up, self.down, self.upbar, self.downbar


# ---------------------------------------------------------------- validators

def validate_group(mul: Sequence[Sequence[int]]) -> bool:
    t = _table(mul)
    n = _square(t)
    if n == 0:
        return False
    r = range(n)
    if any(t[t[a][b]][c] != t[a][t[b][c]] for a in r for b in r for c in r):
        return False
    ids = [e for e in r if all(t[e][x] == x == t[x][e] for x in r)]
    if not ids:
        return False
    e = ids[0]
    return all(any(t[x][y] == e == t[y][x] for y in r) for x in r)


def quandle_failures(star: Sequence[Sequence[int]]) -> list[str]:
    t = _table(star)
    n = _square(t)
    r = range(n)
    failed = []
    if any(t[a][a] != a for a in r):
        failed.append("idempotence")
    if any(len({t[a][b] for a in r}) != n for b in r):
        failed.append("right-invertibility")
    if any(t[t[a][b]][c] != t[t[a][c]][t[b][c]] for a in r for b in r for c in r):
        failed.append("self-distributivity")
    return failed


def validate_quandle(star: Sequence[Sequence[int]]) -> bool:
    return not quandle_failures(star)


def _biquandle_identities(up: Table, dn: Table, ub: Table, db: Table
                          ) -> list[tuple[str, int, Callable[[int, int, int], bool]]]:
    # (name, arity, predicate); exponent notation reads left to right
    return [
        ("a = a^{b \\bar{b_a}}", 2, lambda a, b, c: ub[up[a][b]][dn[b][a]] == a),
        ("b = b_{a \\bar{a^b}}", 2, lambda a, b, c: db[dn[b][a]][up[a][b]] == b),
        ("a = a^{\\bar b b_{\\bar a}}", 2, lambda a, b, c: up[ub[a][b]][db[b][a]] == a),
        ("b = b_{\\bar a a^{\\bar b}}", 2, lambda a, b, c: dn[db[b][a]][ub[a][b]] == b),
        ("a^{bc} = a^{c_b b^c}", 3,
         lambda a, b, c: up[up[a][b]][c] == up[up[a][dn[c][b]]][up[b][c]]),
        ("c_{ba} = c_{a^b b_a}", 3,
         lambda a, b, c: dn[dn[c][b]][a] == dn[dn[c][up[a][b]]][dn[b][a]]),
        ("(b_a)^{c_{a^b}} = (b^c)_{a^{c_b}}", 3,
         lambda a, b, c: up[dn[b][a]][dn[c][up[a][b]]] == dn[up[b][c]][up[a][dn[c][b]]]),
        ("(b_{\\bar a})^{\\bar{c_{\\bar{a^{\\bar b}}}}} = (b^{\\bar c})_{\\bar{a^{\\bar{c_{\\bar b}}}}}", 3,
         lambda a, b, c: ub[db[b][a]][db[c][ub[a][b]]] == db[ub[b][c]][ub[a][db[c][b]]]),
        ("a^{\\bar b \\bar c} = a^{\\bar{c_{\\bar b}} \\bar{b^{\\bar c}}}", 3,
         lambda a, b, c: ub[ub[a][b]][c] == ub[ub[a][db[c][b]]][ub[b][c]]),
        ("c_{\\bar b \\bar a} = c_{\\bar{a^{\\bar b}} \\bar{b_{\\bar a}}}", 3,
         lambda a, b, c: db[db[c][b]][a] == db[db[c][ub[a][b]]][db[b][a]]),
    ]


BIQUANDLE_AXIOMS = (
    ["bijective " + op for op in ("up", "down", "upbar", "downbar")]
    + ["c = a_c iff a = c^a", "b = a^{\\bar b} iff a = b_{\\bar a}"]
    + [name for name, _, _ in _biquandle_identities((), (), (), ())]
)


def biquandle_failures(tables: Sequence[Sequence[Sequence[int]]], weak: bool = False) -> list[str]:
    """Names of the biquandle axioms that fail; empty when all hold.

    ``weak=True`` skips the bijectivity axiom.
    """
    if len(tables) != 4:
        raise AlgebraError("a biquandle needs four tables")
    up, dn, ub, db = (_table(t) for t in tables)
    n = _square(up)
    for t in (dn, ub, db):
        _square(t, n)
    r = range(n)
    failed = []
    if not weak:
        for name, t in zip(("up", "down", "upbar", "downbar"), (up, dn, ub, db)):
            if any(len({t[a][b] for a in r}) != n for b in r):
                failed.append("bijective " + name)
    if any((c == dn[a][c]) != (a == up[c][a]) for a in r for c in r):
        failed.append("c = a_c iff a = c^a")
    if any((b == ub[a][b]) != (a == db[b][a]) for a in r for b in r):
        failed.append("b = a^{\\bar b} iff a = b_{\\bar a}")
    for name, arity, pred in _biquandle_identities(up, dn, ub, db):
        triples = itertools.product(r, r, r) if arity == 3 else ((a, b, 0) for a in r for b in r)
        if not all(pred(*t) for t in triples):
            failed.append(name)
    return failed


def validate_biquandle(tables: Sequence[Sequence[Sequence[int]]], weak: bool = False) -> bool:
    return not biquandle_failures(tables, weak=weak)


# -------------------------------------------------------------- constructors

def group_from_permutations(gens: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Closure of permutation generators; element 0 is the identity."""
    degree = len(gens[0])
    e = tuple(range(degree))
    elems = [e]
    index = {e: 0}
    frontier = [e]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(degree))
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    # (x*y)(i) = x(y(i)): apply y first
    mul = [[index[tuple(x[y[i]] for i in range(degree))] for y in elems] for x in elems]
    group = FiniteGroup(_table(mul), name)
    object.__setattr__(group, "elements", tuple(elems))
    return group


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(_table([[(a + b) % n for b in range(n)] for a in range(n)]), f"Z{n}")


def symmetric_group(k: int) -> FiniteGroup:
    if k == 1:
        return cyclic_group(1)
    gens = [tuple([1, 0] + list(range(2, k))), tuple(list(range(1, k)) + [0])]
    return group_from_permutations(gens, f"S{k}")


def dihedral_group(k: int) -> FiniteGroup:
    """Symmetries of the k-gon, order 2k."""
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return group_from_permutations([rot, ref], f"D{k}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    n, m = g.order, h.order
    mul = [[g.mul[a // m][b // m] * m + h.mul[a % m][b % m] for b in range(n * m)]
           for a in range(n * m)]
    return FiniteGroup(_table(mul), f"{g.name}x{h.name}")


def builtin_groups() -> dict[str, FiniteGroup]:
    """Small groups used by the axiom and coloring suites (orders <= 12)."""
    groups = {f"Z{n}": cyclic_group(n) for n in range(1, 13)}
    groups["Z2xZ2"] = direct_product(cyclic_group(2), cyclic_group(2))
    groups["S3"] = symmetric_group(3)
    groups["D4"] = dihedral_group(4)
    groups["D5"] = dihedral_group(5)
    groups["D6"] = dihedral_group(6)
    # quaternions as permutations of {±1, ±i, ±j, ±k} (regular representation)
    groups["Q8"] = group_from_permutations(
        [(2, 3, 1, 0, 6, 7, 5, 4), (4, 5, 7, 6, 1, 0, 2, 3)], "Q8")
    groups["A4"] = group_from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)], "A4")
    return groups


def dihedral_quandle(n: int) -> FiniteQuandle:
    if n < 1:
        raise AlgebraError("dihedral quandle needs n >= 1")
    return FiniteQuandle(_table([[(2 * b - a) % n for b in range(n)] for a in range(n)]), f"R{n}")


def trivial_quandle(n: int) -> FiniteQuandle:
    return FiniteQuandle(_table([[a] * n for a in range(n)]), f"T{n}")


def conjugation_quandle(group: FiniteGroup) -> FiniteQuandle:
    """a * b = b^-1 a b."""
    m, inv = group.mul, group.inv
    n = group.order
    star = [[m[m[inv[b]][a]][b] for b in range(n)] for a in range(n)]
    return FiniteQuandle(_table(star), f"Conj({group.name})")


@dataclass(frozen=True)
class SubgroupWithCenterElement:
    group: FiniteGroup
    subgroup: frozenset[int]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "subgroup", frozenset(self.subgroup))
        g, p = self.group, self.subgroup
        if g.identity not in p or any(g.mul[a][b] not in p for a in p for b in p) \
                or any(g.inv[a] not in p for a in p):
            raise AlgebraError("P is not a subgroup")
        if self.m not in p:
            raise AlgebraError("m is not in P, so m is not central in P")
        if any(g.mul[self.m][a] != g.mul[a][self.m] for a in p):
            raise AlgebraError("m is not in the center of P; coset operation is ill-defined")


def right_cosets(group: FiniteGroup, subgroup) -> list[tuple[int, ...]]:
    """Right cosets Pg, ordered by smallest element, each sorted."""
    seen = set()
    cosets = []
    for g in range(group.order):
        if g in seen:
            continue
        coset = tuple(sorted({group.mul[p][g] for p in subgroup}))
        seen.update(coset)
        cosets.append(coset)
    return cosets


def coset_quandle(ctx: SubgroupWithCenterElement, representatives: Sequence[int] | None = None
                  ) -> FiniteQuandle:
    """Quandle on right cosets: Pg * Ph = P(g h^-1 m h).

    `representatives` picks one element per coset (default: the smallest).
    """
    g = ctx.group
    mul, inv = g.mul, g.inv
    cosets = right_cosets(g, ctx.subgroup)
    which = {x: i for i, c in enumerate(cosets) for x in c}
    reps = list(representatives) if representatives is not None else [c[0] for c in cosets]
    if [which[r] for r in reps] != list(range(len(cosets))):
        raise AlgebraError("representatives must list one element of each coset in order")
    star = []
    for x in reps:
        row = []
        for h in reps:
            conj = mul[mul[inv[h]][ctx.m]][h]
            row.append(which[mul[x][conj]])
        star.append(row)
    return FiniteQuandle(_table(star), f"Coset({g.name})")


def quandle_to_biquandle(q: FiniteQuandle) -> FiniteBiquandle:
    n = q.order
    proj = _table([[a] * n for a in range(n)])
    return FiniteBiquandle(q.star, proj, q.star_inv, proj, f"B({q.name})")


def alexander_biquandle(n: int, s: int, t: int) -> FiniteBiquandle:
    """a^b = ta + (1-st)b, a_b = sa, with inverse-unit barred versions, over Z_n."""
    if n < 1:
        raise AlgebraError("modulus must be positive")
    if gcd(s, n) != 1 or gcd(t, n) != 1:
        raise AlgebraError(f"s={s} and t={t} must be units mod {n}")
    si, ti = pow(s, -1, n) if n > 1 else 0, pow(t, -1, n) if n > 1 else 0
    r = range(n)
    up = [[(t * a + (1 - s * t) * b) % n for b in r] for a in r]
    dn = [[(s * a) % n for b in r] for a in r]
    ub = [[(ti * a + (1 - si * ti) * b) % n for b in r] for a in r]
    db = [[(si * a) % n for b in r] for a in r]
    return FiniteBiquandle(up, dn, ub, db, f"Alex({n},{s},{t})")


def units(n: int) -> list[int]:
    return [u for u in range(n) if gcd(u, n) == 1] if n > 1 else [0]


# ---------------------------------------------------------------- enumeration

def _permuted(tables: tuple[Table, ...], perm: Sequence[int]) -> tuple[Table, ...]:
    n = len(perm)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(
        tuple(tuple(perm[t[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        for t in tables)


def is_isomorphic(x: tuple[Table, ...], y: tuple[Table, ...]) -> bool:
    """Backtracking search for a bijection carrying every table of x onto y."""
    n = len(x[0])
    if len(y[0]) != n:
        return False
    perm = [-1] * n
    used = [False] * n

    def consistent(k):
        # all pairs among the first k+1 mapped elements
        for a in range(k + 1):
            for b in range(k + 1):
                if a != k and b != k:
                    continue
                for tx, ty in zip(x, y):
                    v = tx[a][b]
                    if v <= k and perm[v] != ty[perm[a]][perm[b]]:
                        return False
        return True

    def extend(k):
        if k == n:
            return _permuted(x, perm) == y
        for v in range(n):
            if not used[v]:
                perm[k] = v
                used[v] = True
                if consistent(k) and extend(k + 1):
                    return True
                used[v] = False
        perm[k] = -1
        return False

    return extend(0)


def enumerate_biquandles(order: int) -> list[FiniteBiquandle]:
    """All biquandles of the given order (1..3), one per isomorphism class.

    Each up/down pair whose crossing map (a, b) -> (a^b, b_a) is a bijection
    determines the barred tables as that map's inverse; candidates are then
    filtered by the full axiom check.
    """
    if order not in (1, 2, 3):
        raise AlgebraError("biquandle enumeration supports orders 1..3")
    n = order
    r = range(n)
    perms = list(itertools.permutations(r))
    # a table whose column b is the bijection a -> cols[b][a]
    column_tables = [tuple(tuple(cols[b][a] for b in r) for a in r)
                     for cols in itertools.product(perms, repeat=n)]
    found: list[tuple[Table, ...]] = []
    for up in column_tables:
        for dn in column_tables:
            image = {}
            for a in r:
                for b in r:
                    image[(up[a][b], dn[b][a])] = (a, b)
            if len(image) != n * n:
                continue
            ub = [[0] * n for _ in r]
            db = [[0] * n for _ in r]
            for (x, y), (a, b) in image.items():
                ub[x][y] = a
                db[y][x] = b
            cand = (up, dn, _table(ub), _table(db))
            if biquandle_failures(cand):
                continue
            if any(is_isomorphic(cand, f) for f in found):
                continue
            found.append(cand)
    return [FiniteBiquandle(*t, name=f"BQ{n}.{i}") for i, t in enumerate(found)]


# --------------------------------------------------------------- table files

def read_table_file(path) -> FiniteGroup | FiniteQuandle | FiniteBiquandle:
    with open(path, encoding="utf-8") as fh:
        return parse_table_text(fh.read())


def parse_table_text(text: str) -> FiniteGroup | FiniteQuandle | FiniteBiquandle:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise AlgebraError("empty table file")
    head = lines[0].split()
    if len(head) != 2 or head[0] not in ("group", "quandle", "biquandle"):
        raise AlgebraError(f"bad header {lines[0]!r}")
    kind, n = head[0], int(head[1])
    ntab = 4 if kind == "biquandle" else 1
    rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    if len(rows) != n * ntab:
        raise AlgebraError(f"expected {n * ntab} rows, got {len(rows)}")
    tables = [_table(rows[i * n:(i + 1) * n]) for i in range(ntab)]
    for t in tables:
        _square(t, n)
    if kind == "group":
        return FiniteGroup(tables[0])
    if kind == "quandle":
        return FiniteQuandle(tables[0])
    return FiniteBiquandle(*tables)


def format_table_text(obj: FiniteGroup | FiniteQuandle | FiniteBiquandle) -> str:
    if isinstance(obj, FiniteGroup):
        kind, tables = "group", [obj.mul]
    elif isinstance(obj, FiniteQuandle):
        kind, tables = "quandle", [obj.star]
    else:
        kind, tables = "biquandle", list(obj.tables)
    lines = [f"{kind} {obj.order}"]
    for t in tables:
        lines.extend(" ".join(str(x) for x in row) for row in t)
    return "\n".join(lines) + "\n"
