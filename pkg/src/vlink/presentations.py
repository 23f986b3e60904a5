"""Presentations by generators and relations, and how to read them off diagrams.

Terms are plain nested tuples: a generator is a ``str``; an operation node is
``(op, arg, ...)``.  Group words use ``mul``/``inv`` (and the nullary ``one``);
quandle terms use ``qup``/``qupbar``; biquandle terms use ``bup``, ``bdown``,
``bupbar`` and ``bdownbar``.  ``("qup", "z", "y")`` reads z^y.

Conventions pinned here:

* conjugation is ``a * b = b^-1 a b``, so adconj sends ``qup(z, y)`` to
  ``mul(mul(inv y, z), y)``;
* at a positive crossing the outgoing under-arc is ``z * y`` (z the incoming
  under-arc, y the over-arc); a negative crossing uses the inverse operation;
* at a positive crossing with incoming under semi-arc a and incoming over
  semi-arc b the outgoing semi-arcs are ``c = b_a`` (over) and ``d = a^b``
  (under); a negative crossing uses ``c = b_{bar a}`` and ``d = a^{bar b}``,
  the inverse crossing map.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Union

from .codes import GaussCode, arc_index, arcs, crossing_ends, semi_arcs

Term = Union[str, tuple]

THEORY_OPS = {
    "group": {"mul": 2, "inv": 1, "one": 0},
    "quandle": {"qup": 2, "qupbar": 2},
    "biquandle": {"bup": 2, "bdown": 2, "bupbar": 2, "bdownbar": 2},
}
ARITY = {op: k for ops in THEORY_OPS.values() for op, k in ops.items()}


class PresentationError(ValueError):
    pass


def leaves(term: Term) -> set[str]:
    if isinstance(term, str):
        return {term}
    out: set[str] = set()
    for arg in term[1:]:
        out |= leaves(arg)
    return out


def ops_in(term: Term) -> set[str]:
    if isinstance(term, str):
        return set()
    out = {term[0]}
    for arg in term[1:]:
        out |= ops_in(arg)
    return out


def check_term(term: Term) -> None:
    if isinstance(term, str):
        return
    if not isinstance(term, tuple) or not term or term[0] not in ARITY:
        raise PresentationError(f"bad term {term!r}")
    if len(term) - 1 != ARITY[term[0]]:
        raise PresentationError(f"{term[0]} takes {ARITY[term[0]]} arguments")
    for arg in term[1:]:
        check_term(arg)


def substitute(term: Term, env: dict[str, Term]) -> Term:
    if isinstance(term, str):
        return env.get(term, term)
    return (term[0],) + tuple(substitute(a, env) for a in term[1:])


def term_size(term: Term) -> int:
    if isinstance(term, str):
        return 1
    return 1 + sum(term_size(a) for a in term[1:])


@dataclass(frozen=True)
class Presentation:
    theory: str
    generators: tuple[str, ...]
    relations: tuple[tuple[Term, Term], ...] = ()
    meridian: str | None = None
    longitude: Term | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple((l, r) for l, r in self.relations))
        if self.theory not in THEORY_OPS:
            raise PresentationError(f"unknown theory {self.theory!r}")
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator")
        declared = set(self.generators)
        allowed = set(THEORY_OPS[self.theory])
        terms = [t for rel in self.relations for t in rel]
        if self.longitude is not None:
            if self.theory != "group":
                raise PresentationError("longitudes live in group presentations")
            terms.append(self.longitude)
        for t in terms:
            check_term(t)
            if not leaves(t) <= declared:
                raise PresentationError(f"undeclared generator in {format_term(t)}")
            if not ops_in(t) <= allowed:
                raise PresentationError(f"{sorted(ops_in(t) - allowed)} not in {self.theory} theory")
        if self.meridian is not None and self.meridian not in declared:
            raise PresentationError(f"meridian {self.meridian} not declared")

    def relation_set(self) -> frozenset:
        """Relations as unordered equations, for comparisons."""
        return frozenset(frozenset((l, r)) if l != r else frozenset((l,))
                         for l, r in self.relations)

    def __str__(self) -> str:
        return format_presentation(self)


# ------------------------------------------------------------------ text form

def format_term(term: Term) -> str:
    if isinstance(term, str):
        return term
    return " ".join([term[0]] + [format_term(a) for a in term[1:]])


def parse_term(text: str | list[str]) -> Term:
    tokens = text.split() if isinstance(text, str) else text
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise PresentationError("truncated term")
        tok = tokens[pos]
        pos += 1
        if tok in ARITY:
            return (tok,) + tuple(read() for _ in range(ARITY[tok]))
        return tok

    term = read()
    if pos != len(tokens):
        raise PresentationError(f"trailing tokens in term: {tokens[pos:]}")
    return term


def format_presentation(p: Presentation) -> str:
    lines = [f"theory {p.theory}", "gens " + " ".join(p.generators)]
    lines += [f"rel {format_term(l)} = {format_term(r)}" for l, r in p.relations]
    if p.meridian is not None:
        lines.append(f"meridian {p.meridian}")
    if p.longitude is not None:
        lines.append(f"longitude {format_term(p.longitude)}")
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    theory, gens, rels, mer, lon = None, [], [], None, None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key == "theory":
            theory = rest.strip()
        elif key == "gens":
            gens = rest.split()
        elif key == "rel":
            lhs, eq, rhs = rest.partition("=")
            if not eq:
                raise PresentationError(f"relation without '=': {line!r}")
            rels.append((parse_term(lhs), parse_term(rhs)))
        elif key == "meridian":
            mer = rest.strip()
        elif key == "longitude":
            lon = parse_term(rest)
        else:
            raise PresentationError(f"unknown line {line!r}")
    if theory is None:
        raise PresentationError("missing theory line")
    return Presentation(theory, tuple(gens), tuple(rels), mer, lon)


# ---------------------------------------------------------- from Gauss codes

def conj(z: Term, y: Term, sign: int = 1) -> Term:
    """z * y = y^-1 z y for sign +1; y z y^-1 for sign -1."""
    if sign > 0:
        return ("mul", ("mul", ("inv", y), z), y)
    return ("mul", ("mul", y, z), ("inv", y))


def arc_name(i: int) -> str:
    return f"x{i}"


def semi_arc_name(i: int) -> str:
    return f"s{i}"


def _arc_relations(code: GaussCode):
    """(outgoing, incoming, over, sign) arc indices, one per crossing."""
    idx = arc_index(code)
    out = []
    for c in code.crossings:
        ui, oi, oo, uo = crossing_ends(code, c)
        out.append((idx[uo], idx[ui], idx[oi], code.sign(c)))
    return out


def wirtinger_group(code: GaussCode) -> Presentation:
    n = len(arcs(code))
    gens = tuple(arc_name(i) for i in range(n))
    rels = tuple((arc_name(x), conj(arc_name(z), arc_name(y), s))
                 for x, z, y, s in _arc_relations(code))
    return Presentation("group", gens, rels, meridian=gens[0] if gens else None)


def quandle_presentation(code: GaussCode) -> Presentation:
    n = len(arcs(code))
    gens = tuple(arc_name(i) for i in range(n))
    rels = tuple((arc_name(x), ("qup" if s > 0 else "qupbar", arc_name(z), arc_name(y)))
                 for x, z, y, s in _arc_relations(code))
    return Presentation("quandle", gens, rels, meridian=gens[0] if gens else None)


def biquandle_relations(a: Term, b: Term, c: Term, d: Term, sign: int):
    """Relations at a crossing with under_in a, over_in b, over_out c, under_out d."""
    if sign > 0:
        return [(c, ("bdown", b, a)), (d, ("bup", a, b))]
    return [(c, ("bdownbar", b, a)), (d, ("bupbar", a, b))]


def biquandle_presentation(code: GaussCode) -> Presentation:
    sas = semi_arcs(code)
    idx = {s: i for i, s in enumerate(sas)}
    gens = tuple(semi_arc_name(i) for i in range(len(sas)))
    rels = []
    for c in code.crossings:
        a, b, cc, d = (gens[idx[s]] for s in crossing_ends(code, c))
        rels += biquandle_relations(a, b, cc, d, code.sign(c))
    return Presentation("biquandle", gens, tuple(rels), meridian=gens[0] if gens else None)


def presentation(code: GaussCode, theory: str) -> Presentation:
    if theory == "group":
        return wirtinger_group(code)
    if theory == "quandle":
        return quandle_presentation(code)
    if theory == "biquandle":
        return biquandle_presentation(code)
    raise PresentationError(f"unknown theory {theory!r}")


# ---------------------------------------------------------------- adconj etc.

def _to_group(term: Term) -> Term:
    if isinstance(term, str):
        return term
    op, z, y = term
    return conj(_to_group(z), _to_group(y), 1 if op == "qup" else -1)


def adconj(qp: Presentation) -> Presentation:
    """Group with the quandle's generators and its relations read as conjugation."""
    if qp.theory != "quandle":
        raise PresentationError(f"adconj needs a quandle presentation, got {qp.theory}")
    rels = tuple((_to_group(l), _to_group(r)) for l, r in qp.relations)
    return Presentation("group", qp.generators, rels, meridian=qp.meridian)


def word(letters: Iterable[tuple[str, int]]) -> Term:
    """Product of generators with exponents, left to right; empty -> ``one``."""
    factors: list[Term] = []
    for g, e in letters:
        f: Term = g if e > 0 else ("inv", g)
        factors.extend([f] * abs(e))
    if not factors:
        return ("one",)
    out = factors[0]
    for f in factors[1:]:
        out = ("mul", out, f)
    return out


def exponent_sums(term: Term) -> dict[str, int]:
    out: dict[str, int] = {}

    def walk(t, sgn):
        if isinstance(t, str):
            out[t] = out.get(t, 0) + sgn
        elif t[0] == "inv":
            walk(t[1], -sgn)
        elif t[0] == "mul":
            walk(t[1], sgn)
            walk(t[2], sgn)

    walk(term, 1)
    return {g: e for g, e in out.items() if e}


def longitude_word(code: GaussCode) -> Term:
    """Over-arcs met at under-passages, read from the meridian's arc, times m^-writhe."""
    if len(code.components) != 1:
        raise PresentationError("longitude is defined for knots only")
    comp = code.components[0]
    if not comp:
        return ("one",)
    idx = arc_index(code)
    start = arcs(code)[0].start
    letters = []
    n = len(comp)
    for t in range(1, n + 1):
        p = comp[(start + t) % n]
        if p.over:
            continue
        _, oi, _, _ = crossing_ends(code, p.crossing)
        letters.append((arc_name(idx[oi]), code.sign(p.crossing)))
    letters.append((arc_name(0), -code.writhe))
    return word(letters)


def with_longitude(code: GaussCode) -> Presentation:
    return replace(wirtinger_group(code), longitude=longitude_word(code))


def simplify(p: Presentation) -> Presentation:
    """Eliminate generators defined by a relation ``g = T`` with g not in T.

    The meridian is never eliminated.  Relations that become syntactic
    identities are dropped.
    """
    gens = list(p.generators)
    rels = list(p.relations)
    longitude = p.longitude
    while True:
        pick = None
        for i, (l, r) in enumerate(rels):
            for g, t in ((l, r), (r, l)):
                if isinstance(g, str) and g != p.meridian and g not in leaves(t):
                    pick = (i, g, t)
                    break
            if pick:
                break
        if pick is None:
            break
        i, g, t = pick
        del rels[i]
        env = {g: t}
        rels = [(substitute(l, env), substitute(r, env)) for l, r in rels]
        rels = [(l, r) for l, r in rels if l != r]
        gens.remove(g)
        if longitude is not None:
            longitude = substitute(longitude, env)
    return Presentation(p.theory, tuple(gens), tuple(rels), p.meridian, longitude)
