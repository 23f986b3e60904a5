"""Acceptance criteria, one test each.

Every criterion prints a PASS/FAIL line (collected into the pytest summary, or
printed directly when this file is run as a script).
"""

from __future__ import annotations

import dataclasses
import itertools
import random
import time

import oracles
from conftest import SEED
from sampling import CountCache, site_pool
from vlink.algebra import (SubgroupWithCenterElement, alexander_biquandle, builtin_groups,
                           conjugation_quandle, coset_quandle, dihedral_quandle,
                           enumerate_biquandles, quandle_to_biquandle, symmetric_group, units,
                           validate_biquandle, validate_quandle)
from vlink.codes import carrier_genus, corpus, is_realizable, serialize_code
from vlink.invariants import (ColoringTarget, abelianization_rank, battery, builtin_target,
                              count_colorings, count_for_code, evaluate, iter_colorings)
from vlink.moves import (R_MOVES, WELDED_MOVES, MoveKind, apply_move, canonical_form,
                         format_site, parse_site, replay, search_equivalence)
from vlink.presentations import (adconj, exponent_sums, longitude_word, presentation,
                                 quandle_presentation, wirtinger_group, with_longitude)
from vlink.surface import LiftedCurve, presentation_from_surface, spin, spin_surface_gauss, \
    validate_surface_gauss

CORPUS = corpus()
RESULTS: list[str] = []

# A forbidden move that changes a biquandle count: found once by searching the
# F sites of the corpus against the Alexander and order <= 3 biquandles.
FORBIDDEN_WITNESS = ("O1+ O2+ U1+ U2+", "F_forbidden@0.0", "alexander:5:2:2", 1, 5)


def record(number: int, ok: bool, detail: str, seconds: float, limit: float | None = None) -> None:
    within = limit is None or seconds < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    RESULTS.append(f"criterion {number:2d}: {status}  {detail}  [{seconds:.1f}s{budget}]")
    assert ok, detail
    assert within, f"took {seconds:.1f}s, limit {limit}s"


def _s3_coset_quandles():
    g = symmetric_group(3)
    out = []
    for bits in itertools.product((0, 1), repeat=6):
        p = frozenset(i for i, b in enumerate(bits) if b)
        for m in p:
            try:
                ctx = SubgroupWithCenterElement(g, p, m)
            except ValueError:
                continue
            out.append(coset_quandle(ctx))
    return out


def test_criterion_01_axiom_suites():
    t0 = time.time()
    quandles = [dihedral_quandle(n) for n in range(1, 9)]
    quandles += [conjugation_quandle(g) for g in builtin_groups().values()]
    cosets = _s3_coset_quandles()
    quandles += cosets
    ok = all(validate_quandle(q.star) for q in quandles)
    alex = [(n, s, t) for n in range(1, 8) for s in units(n) for t in units(n)]
    ok &= all(validate_biquandle(alexander_biquandle(*x).tables) for x in alex)
    ok &= all(validate_biquandle(quandle_to_biquandle(q).tables) for q in quandles)
    record(1, ok, f"{len(quandles)} quandles ({len(cosets)} S3 coset), {len(alex)} Alexander "
                  f"biquandles, {len(quandles)} promotions", time.time() - t0, 10)


def test_criterion_02_coloring_numerics():
    t0 = time.time()
    r3, r5 = builtin_target("dihedral:3"), builtin_target("dihedral:5")
    got = {
        "trefoil/R3": count_for_code(CORPUS["trefoil"], r3),
        "figure-8/R3": count_for_code(CORPUS["figure-8"], r3),
        "figure-8/R5": count_for_code(CORPUS["figure-8"], r5),
    }
    want = {"trefoil/R3": 9, "figure-8/R3": 3, "figure-8/R5": 25}
    oracle = {
        "trefoil/R3": oracles.fox_colorings(serialize_code(CORPUS["trefoil"]), 3),
        "figure-8/R3": oracles.fox_colorings(serialize_code(CORPUS["figure-8"]), 3),
        "figure-8/R5": oracles.fox_colorings(serialize_code(CORPUS["figure-8"]), 5),
    }
    ok = got == want == oracle
    ok &= all(count_for_code(CORPUS["unknot"], t) == t.order for t in battery())
    quandle_targets = [t for t in battery() if t.theory == "quandle"]
    ok &= all(count_for_code(CORPUS["kishino"], t) == count_for_code(CORPUS["unknot"], t)
              for t in quandle_targets)
    record(2, ok, f"{got}; unknot = order; kishino = unknot on {len(quandle_targets)} quandles",
           time.time() - t0, 30)


def test_criterion_03_move_invariance():
    t0 = time.time()
    rng = random.Random(SEED)
    counts = CountCache()
    checked, bad, short = 0, [], []
    for name, code in CORPUS.items():
        for kind in R_MOVES:
            pool = site_pool(code, kind, 50, rng)
            if len(pool) < 50:
                short.append(f"{name}/{kind.value}:{len(pool)}")
            for base, site in pool:
                checked += 1
                if counts(base) != counts(apply_move(base, site)):
                    bad.append(f"{serialize_code(base)} {format_site(site)}")
    welded = CountCache([t for t in battery() if t.theory in ("group", "quandle")])
    f_checked = 0
    for name, code in CORPUS.items():
        for base, site in site_pool(code, MoveKind.F_FORBIDDEN, 50, rng):
            f_checked += 1
            if welded(base) != welded(apply_move(base, site)):
                bad.append(f"F {serialize_code(base)} {format_site(site)}")
    text, spec, tname, before, after = FORBIDDEN_WITNESS
    code = CORPUS["virtual-trefoil"]
    assert serialize_code(code) == text
    target = builtin_target(tname)
    moved = apply_move(code, parse_site(spec))
    witness = (count_for_code(code, target), count_for_code(moved, target)) == (before, after)
    ok = not bad and not short and witness
    record(3, ok, f"seed {SEED}: {checked} R-move sites, {f_checked} F sites (group/quandle), "
                  f"0 changes expected, {len(bad)} found; witness {spec} on {text} "
                  f"{target.name} {before}->{after}", time.time() - t0, 300)


def test_criterion_04_spin():
    t0 = time.time()
    mismatches = []
    for name, code in CORPUS.items():
        sp = spin(code)
        for t in battery():
            direct = count_colorings(presentation(code, t.theory), t)
            spun = count_colorings(presentation_from_surface(sp, t.theory), t)
            if direct != spun:
                mismatches.append(f"{name}/{t.name}: {direct} vs {spun}")
    record(4, not mismatches, f"{len(CORPUS)} codes x {len(battery())} targets, "
                              f"mismatches: {mismatches or 'none'}", time.time() - t0, 60)


def test_criterion_05_adconj_and_rank():
    t0 = time.time()
    ok = all(adconj(quandle_presentation(c)).relation_set() == wirtinger_group(c).relation_set()
             for c in CORPUS.values())
    ranks = {n: abelianization_rank(presentation(c, "group")) for n, c in CORPUS.items()}
    ok &= all(ranks[n] == len(c.components) for n, c in CORPUS.items())
    record(5, ok, f"adconj = Wirtinger on all codes; ranks {ranks}", time.time() - t0, 10)


def test_criterion_06_realizability():
    t0 = time.time()
    # hand-traced faces: trefoil 5, figure-8 6, virtual trefoil 2 (see test_codes)
    genus = {n: carrier_genus(CORPUS[n]) for n in ("unknot", "trefoil", "figure-8", "virtual-trefoil")}
    ok = genus == {"unknot": 0, "trefoil": 0, "figure-8": 0, "virtual-trefoil": 1}
    ok &= all(is_realizable(c) == (carrier_genus(c) == 0) for c in CORPUS.values())
    record(6, ok, f"genus {genus}", time.time() - t0, 1)


def test_criterion_07_peripheral():
    t0 = time.time()
    ok = True
    homs = 0
    knots = {n: c for n, c in CORPUS.items() if len(c.components) == 1}
    for name, code in knots.items():
        ok &= sum(exponent_sums(longitude_word(code)).values()) == 0
        p = with_longitude(code)
        for k in (3, 4):
            g = symmetric_group(k)
            for values in iter_colorings(p, g):
                homs += 1
                env = dict(zip(p.generators, values))
                m, l = env[p.meridian], evaluate(p.longitude, env, g)
                ok &= g.mul[m][l] == g.mul[l][m]
    record(7, ok, f"{len(knots)} knots, {homs} homomorphisms into S3/S4 checked",
           time.time() - t0, 120)


def test_criterion_08_kishino_welded_trivial():
    t0 = time.time()
    k, u = CORPUS["kishino"], CORPUS["unknot"]
    res = search_equivalence(k, u, WELDED_MOVES, max_crossings=6, max_steps=10**6)
    replays = res.found and replay(k, res.path) == canonical_form(u)
    detail = (f"{res.verdict}: " + " ".join(format_site(s) for s in res.path)
              + f" ({res.expanded} expanded)")
    r_only = search_equivalence(k, u, R_MOVES, max_crossings=6, max_steps=300)
    detail += f"; R-moves alone within 300 steps: {r_only.verdict}"
    record(8, bool(replays), detail, time.time() - t0)


def test_criterion_09_kishino_biquandle_separation():
    t0 = time.time()
    k, u = CORPUS["kishino"], CORPUS["unknot"]
    targets = [ColoringTarget(b.name, b) for n in (1, 2, 3) for b in enumerate_biquandles(n)]
    targets += [t for t in battery() if t.theory == "biquandle"]
    separating = []
    for t in targets:
        a, b = count_for_code(k, t), count_for_code(u, t)
        if a != b:
            separating.append(f"{t.name} {a} vs {b}")
    if separating:
        detail = f"{len(separating)} of {len(targets)} targets separate: {', '.join(separating)}"
    else:
        detail = f"negative result: none of {len(targets)} targets separates (not a failure)"
    record(9, True, detail, time.time() - t0)


def _mutations(sgc):
    curves = list(sgc.curves)
    first = curves[0]
    other = next(c for c in curves if c.id not in (first.id, first.partner))
    flip = [dataclasses.replace(first, partner=other.id)] + curves[1:]
    over = next(c for c in curves if c.over)
    drop = [dataclasses.replace(c, over=False) if c.id == over.id else c for c in curves]
    lone = sgc.crossings + ((first.id, other.id, "t*"),)
    return [("flip partner", dataclasses.replace(sgc, curves=tuple(flip)), 2),
            ("drop over flag", dataclasses.replace(sgc, curves=tuple(drop)), 2),
            ("break triple incidence", dataclasses.replace(sgc, crossings=lone), 4)]


def test_criterion_10_surface_gauss_mutations():
    t0 = time.time()
    ok = True
    caught = 0
    for name, code in CORPUS.items():
        sgc = spin_surface_gauss(code)
        ok &= validate_surface_gauss(sgc) == []
        if len(sgc.curves) < 4:
            continue  # crossing-free codes lift to bare tori with nothing to mutate
        for label, bad, clause in _mutations(sgc):
            clauses = {c for c, _ in validate_surface_gauss(bad)}
            ok &= clauses == {clause}
            caught += clauses == {clause}
    record(10, ok, f"all lifts valid; {caught} single-clause mutations rejected with the right clause",
           time.time() - t0, 10)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(RESULTS))
