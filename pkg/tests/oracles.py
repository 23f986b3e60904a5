"""Brute-force references, written independently of the library code paths.

Everything here re-reads Gauss codes from their text form and recomputes with
the most direct method available: linear algebra mod p for Fox and Alexander
colorings, exhaustive enumeration for group and quandle homomorphisms, and
random line arrangements for the realizable R3 triangles.
"""

from __future__ import annotations

import itertools
import math
import random


# ------------------------------------------------------------------ raw codes

def raw_parse(text: str):
    """[[(crossing, over, sign), ...], ...] straight from the token list."""
    comps = []
    for part in text.split("/"):
        toks = part.split()
        if toks == ["0"]:
            comps.append([])
            continue
        comps.append([(t[1:-1], t[0] == "O", 1 if t[-1] == "+" else -1) for t in toks])
    return comps


def raw_semi_arcs(comps):
    """Numbered semi-arcs; (k, i) is the one leaving passage i of component k."""
    num = {}
    for k, comp in enumerate(comps):
        for i in range(max(len(comp), 1)):
            num[(k, i)] = len(num)
    return num


def raw_crossings(comps):
    """crossing -> (under_in, over_in, over_out, under_out, sign) as semi-arc numbers."""
    num = raw_semi_arcs(comps)
    ends = {}
    for k, comp in enumerate(comps):
        n = len(comp)
        for i, (c, over, s) in enumerate(comp):
            ins, outs = num[(k, (i - 1) % n)], num[(k, i)]
            e = ends.setdefault(c, [None] * 4 + [s])
            if over:
                e[1], e[2] = ins, outs
            else:
                e[0], e[3] = ins, outs
    return {c: tuple(e) for c, e in ends.items()}


def raw_arcs(comps):
    """Semi-arc -> arc representative (semi-arcs glued through over passages)."""
    num = raw_semi_arcs(comps)
    parent = list(range(len(num)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b, c, d, s in raw_crossings(comps).values():
        parent[find(b)] = find(c)
    reps = sorted({find(x) for x in range(len(num))})
    return {x: reps.index(find(x)) for x in range(len(num))}, len(reps)


# ------------------------------------------------------------ linear counting

def nullity_mod_p(rows, nvars, p):
    m = [[x % p for x in r] for r in rows]
    rank = 0
    for col in range(nvars):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return nvars - rank


def fox_colorings(text: str, p: int) -> int:
    """Dihedral R_p colorings: 2*over = in + out along every crossing, p prime."""
    comps = raw_parse(text)
    arc, n = raw_arcs(comps)
    rows = []
    for a, b, c, d, s in raw_crossings(comps).values():
        r = [0] * n
        r[arc[b]] += 2
        r[arc[a]] -= 1
        r[arc[d]] -= 1
        rows.append(r)
    return p ** nullity_mod_p(rows, n, p)


def alexander_colorings(text: str, p: int, s: int, t: int) -> int:
    """Semi-arc colorings by the Alexander biquandle over Z_p, p prime."""
    comps = raw_parse(text)
    n = len(raw_semi_arcs(comps))
    si, ti = pow(s, -1, p), pow(t, -1, p)
    rows = []
    for a, b, c, d, sg in raw_crossings(comps).values():
        ss, tt = (s, t) if sg > 0 else (si, ti)
        r1 = [0] * n
        r1[c] += 1
        r1[b] -= ss
        r2 = [0] * n
        r2[d] += 1
        r2[a] -= tt
        r2[b] -= 1 - ss * tt
        rows += [r1, r2]
    return p ** nullity_mod_p(rows, n, p)


# -------------------------------------------------------- exhaustive counting

def perm_group(k: int):
    return list(itertools.permutations(range(k)))


def compose(x, y):
    """x then y."""
    return tuple(y[i] for i in x)


def inverse(x):
    out = [0] * len(x)
    for i, j in enumerate(x):
        out[j] = i
    return tuple(out)


def group_homs(text: str, k: int) -> int:
    """Homomorphisms from the Wirtinger group into S_k by trying every arc labelling."""
    comps = raw_parse(text)
    arc, n = raw_arcs(comps)
    elems = perm_group(k)
    rels = [(arc[d], arc[a], arc[b], s) for a, b, c, d, s in raw_crossings(comps).values()]
    count = 0
    for lab in itertools.product(elems, repeat=n):
        ok = True
        for x, z, y, s in rels:
            yi = inverse(lab[y])
            want = compose(compose(yi, lab[z]), lab[y]) if s > 0 else \
                compose(compose(lab[y], lab[z]), yi)
            if lab[x] != want:
                ok = False
                break
        count += ok
    return count


def conj_s3_colorings(text: str) -> int:
    """Arc labellings by transpositions-and-all of S_3 under conjugation."""
    comps = raw_parse(text)
    arc, n = raw_arcs(comps)
    elems = perm_group(3)
    rels = [(arc[d], arc[a], arc[b], s) for a, b, c, d, s in raw_crossings(comps).values()]
    count = 0
    for lab in itertools.product(elems, repeat=n):
        count += all(
            lab[x] == (compose(compose(inverse(lab[y]), lab[z]), lab[y]) if s > 0
                       else compose(compose(lab[y], lab[z]), inverse(lab[y])))
            for x, z, y, s in rels)
    return count


def coset_s3_colorings(text: str) -> int:
    """Right cosets Hg of H = <(01)>, with Hg * Hh = H g h^-1 m h for m = (01)."""
    comps = raw_parse(text)
    arc, n = raw_arcs(comps)
    elems = perm_group(3)
    m = (1, 0, 2)
    h = [(0, 1, 2), m]
    cosets = sorted({frozenset(compose(x, g) for x in h) for g in elems}, key=sorted)

    def coset_of(g):
        return next(i for i, c in enumerate(cosets) if g in c)

    def op(i, j, s):
        g, hh = min(cosets[i]), min(cosets[j])
        # m is an involution, so the operation is its own inverse and both signs agree
        return coset_of(compose(compose(compose(g, inverse(hh)), m), hh))

    rels = [(arc[d], arc[a], arc[b], s) for a, b, c, d, s in raw_crossings(comps).values()]
    return sum(all(lab[x] == op(lab[z], lab[y], s) for x, z, y, s in rels)
               for lab in itertools.product(range(len(cosets)), repeat=n))


def naive_count(p, target) -> int:
    """Exhaustive coloring count through the generic term evaluator."""
    from vlink.invariants import evaluate
    n = target.order
    total = 0
    for values in itertools.product(range(n), repeat=len(p.generators)):
        env = dict(zip(p.generators, values))
        total += all(evaluate(l, env, target) == evaluate(r, env, target) for l, r in p.relations)
    return total


# ------------------------------------------------------------- R3 derivation

def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def r3_patterns_from_lines(samples: int = 4000, seed: int = 7) -> set:
    """Every (t, m, b, s_TM, s_TB, s_MB) seen in random arrangements of three
    oriented lines stacked top/middle/bottom.

    t: along the top line, the crossing with the middle comes first.
    m: along the middle line, the crossing with the top comes first.
    b: along the bottom line, the crossing with the top comes first.
    Signs are those of cross(over direction, under direction).
    """
    rng = random.Random(seed)
    found = set()
    for _ in range(samples):
        lines = []
        for _ in range(3):
            p = (rng.uniform(-1, 1), rng.uniform(-1, 1))
            ang = rng.uniform(0, 2 * math.pi)
            lines.append((p, (math.cos(ang), math.sin(ang))))

        def param(i, j):
            (p, u), (q, v) = lines[i], lines[j]
            den = _cross(u, v)
            if abs(den) < 1e-6:
                return None
            w = (q[0] - p[0], q[1] - p[1])
            return _cross(w, v) / den

        T, M, B = 0, 1, 2
        ps = [param(T, M), param(T, B), param(M, T), param(M, B), param(B, T), param(B, M)]
        if any(x is None for x in ps):
            continue
        tm, tb, mt, mb, bt, bm = ps
        sign = lambda i, j: 1 if _cross(lines[i][1], lines[j][1]) > 0 else -1
        found.add((tm < tb, mt < mb, bt < bm, sign(T, M), sign(T, B), sign(M, B)))
    return found


# ------------------------------------------------------------ random codes

def random_code_text(rng: random.Random, max_crossings: int = 8, max_components: int = 2) -> str:
    n = rng.randint(0, max_crossings)
    passages = [(c, o) for c in range(1, n + 1) for o in (True, False)]
    rng.shuffle(passages)
    k = rng.randint(1, max_components)
    cuts = sorted(rng.sample(range(len(passages) + 1), k - 1)) if k > 1 else []
    bounds = [0] + cuts + [len(passages)]
    signs = {c: rng.choice("+-") for c in range(1, n + 1)}
    parts = []
    for lo, hi in zip(bounds, bounds[1:]):
        seg = passages[lo:hi]
        parts.append(" ".join(f"{'O' if o else 'U'}{c}{signs[c]}" for c, o in seg) or "0")
    return " / ".join(parts)
