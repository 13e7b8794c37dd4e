"""Regeneration of the search-discovered starter-profile fixtures.

The deterministic profile search is rerun for every fixture family over
the shipped parameter grid and the results are written to
src/onefac/data/profiles.json.  Run as `python -m onefac.fixtures [out]`.
The file is checked into the repository; regeneration must reproduce it
byte for byte.
"""

from __future__ import annotations

import sys
from pathlib import Path

from . import docio
from .families import FAMILY_IDS, family_domain, family_profiles, fixture_pins
from .starters import find_profiles

# (family, n) grid the package ships fixtures for; lambda runs over the
# family domain at each n.  Families absent here are fully closed-form at
# the shipped sizes (P3 n = 11 and P6 n = 9, 10 are closed-form branches).
FIXTURE_NS = {
    "P2": range(5, 15),
    "P3": [9, 10, 12, 13, 14],
    "P5": range(9, 15),
    "P6": range(11, 15),
    "P7": range(9, 15),
    "P8": range(9, 15),
}


def regenerate() -> list[dict]:
    entries = []
    for family in FAMILY_IDS:
        if family not in FIXTURE_NS:
            continue
        for n in FIXTURE_NS[family]:
            for lam in range(2, 2 * n + 1):
                if not family_domain(family, n, lam):
                    continue
                pins, m = fixture_pins(family, n, lam)
                solution = find_profiles(n, lam, m, fixed=pins, limit=1)[0]
                discovered = solution[len(pins):]
                entries.append({
                    "family": family,
                    "n": n,
                    "lambda": lam,
                    "profiles": [docio.profile_to_pairs(t) for t in discovered],
                    "provenance": "search-discovered (orbit-0 anchored shape, v1);"
                                  " pins are closed-form",
                })
    entries.sort(key=lambda e: (e["family"], e["n"], e["lambda"]))
    return entries


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0]) if argv else Path(__file__).parent / "data" / "profiles.json"
    entries = regenerate()
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(docio.serialize(docio.fixture_document(entries)))
    print(f"wrote {len(entries)} fixtures to {out}")
    # sanity: the catalog must resolve every fixture through family_profiles
    from .families import _fixture_table
    _fixture_table.cache_clear()
    for e in entries:
        family_profiles(e["family"], e["n"], e["lambda"])
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
