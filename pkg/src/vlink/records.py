"""Validation records for the built-in fixtures.

Each record lists the values `vlink selftest` re-derives: carrier genus,
abelianization rank and every battery count.  The numbers were produced by
the brute-force counters in tests/oracles.py and are checked against them by
the test suite.
"""

_BATTERY = ("R3", "R5", "Conj(S3)", "Coset(S3,<(12)>,(12))",
            "Alex(5,2,3)", "Alex(5,3,2)", "Alex(5,2,1)", "S3", "S4")


def _counts(*values: int) -> dict[str, int]:
    return dict(zip(_BATTERY, values))


RECORDS = {
    "unknot": {"genus": 0, "rank": 1, "counts": _counts(3, 5, 6, 3, 5, 5, 5, 6, 24)},
    "unlink-2": {"genus": 0, "rank": 2, "counts": _counts(9, 25, 36, 9, 25, 25, 25, 36, 576)},
    "trefoil": {"genus": 0, "rank": 1, "counts": _counts(9, 5, 12, 9, 5, 5, 5, 12, 96)},
    "figure-8": {"genus": 0, "rank": 1, "counts": _counts(3, 25, 6, 3, 5, 5, 5, 6, 48)},
    "virtual-trefoil": {"genus": 1, "rank": 1, "counts": _counts(3, 5, 6, 3, 5, 5, 5, 6, 24)},
    "kishino": {"genus": 2, "rank": 1, "counts": _counts(3, 5, 6, 3, 5, 5, 5, 6, 24)},
}
