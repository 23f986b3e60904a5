"""Seeded pools of move sites for the invariance checks."""

from __future__ import annotations

import random

from vlink.codes import GaussCode
from vlink.invariants import battery, count_colorings
from vlink.moves import MoveKind, apply_move, canonical_key, enumerate_sites
from vlink.presentations import presentation


def site_pool(code: GaussCode, kind: MoveKind, want: int, rng: random.Random,
              max_crossings: int = 9, breadth: int = 30, max_layers: int = 4):
    """(code, site) pairs for `kind`, sampled from `code` and from diagrams a few
    random R1/R2 additions away, so removal and R3 sites exist even on reduced codes."""
    pairs = [(code, s) for s in enumerate_sites(code, kind)]
    frontier = [code]
    for _ in range(max_layers):
        if len(pairs) >= want or not frontier:
            break
        nxt = []
        for c in frontier:
            adds = enumerate_sites(c, MoveKind.R1_ADD) + enumerate_sites(c, MoveKind.R2_ADD)
            for s in rng.sample(adds, min(len(adds), breadth)):
                d = apply_move(c, s)
                if d.n_crossings <= max_crossings:
                    nxt.append(d)
        pairs += [(c, s) for c in nxt for s in enumerate_sites(c, kind)]
        frontier = rng.sample(nxt, min(len(nxt), breadth))
    return rng.sample(pairs, min(want, len(pairs)))


class CountCache:
    """Battery counts keyed by canonical form."""

    def __init__(self, targets=None):
        self.targets = battery() if targets is None else targets
        self.cache: dict[str, tuple[int, ...]] = {}

    def __call__(self, code: GaussCode) -> tuple[int, ...]:
        key = canonical_key(code)
        if key not in self.cache:
            pres = {}
            out = []
            for t in self.targets:
                if t.theory not in pres:
                    pres[t.theory] = presentation(code, t.theory)
                out.append(count_colorings(pres[t.theory], t))
            self.cache[key] = tuple(out)
        return self.cache[key]
