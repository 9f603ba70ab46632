"""Cocycle classes of covers and the exact triviality decision.

A cover with its connection is encoded by the pair (transition units,
dv/v per chart).  Deciding whether that class is a coboundary reduces to
exact linear algebra over the unit groups of the charts:  a functional
shortcut catches the inseparable case immediately, and otherwise a lattice
solve either produces unit witnesses or names the obstruction.  Every
"trivial" verdict re-verifies its witness before being returned.
"""

import json
import random

from taucover import (
    Cover,
    cech_class,
    coboundary_class,
    is_trivial_class,
    load_fixture,
)


def build(name):
    return Cover(load_fixture(name).bundle())


def main():
    print("== An obstructed class (order 3, char 3) ==")
    cover = build("GM_P3")
    cocycle = cech_class(cover)
    print(f"chart forms: {[c['form'] for c in cocycle['charts']]}, "
          f"closed: {all(c['closed'] for c in cocycle['charts'])}")
    verdict = is_trivial_class(cover)
    print(json.dumps({k: verdict[k] for k in ("trivial", "obstruction", "details")},
                     indent=2, sort_keys=True))
    print(f"functional kills coboundaries: {verdict['s_kills_coboundaries']}")

    print()
    print("== A trivial class with an explicit witness (coprime order) ==")
    verdict = is_trivial_class(build("COPRIME"))
    print(f"trivial: {verdict['trivial']}, witness units: "
          f"{verdict['witness']['units']}, re-verified: {verdict['witness_verified']}")

    print()
    print("== Round trip: a random coboundary is recognized ==")
    cover = build("TWOCHART")
    scheme = cover.bundle.scheme
    rng = random.Random(42)
    units = [scheme.charts[i].random_unit(rng) for i in range(scheme.n_charts)]
    print(f"chosen units: {[str(u) for u in units]}")
    cochain = coboundary_class(cover, units)
    verdict = is_trivial_class(cover, cochain)
    print(f"trivial: {verdict['trivial']}, witness units: "
          f"{verdict['witness']['units']}")

    print()
    print("== The obstruction catalog over all shipped bundles ==")
    for name in ("COPRIME", "DEGENERATE", "GM_P2", "GM_P3", "MIXED",
                 "TWOCHART", "ZEROTORSION"):
        verdict = is_trivial_class(build(name))
        tag = "trivial" if verdict["trivial"] else f"obstructed ({verdict['obstruction']})"
        print(f"  {name:<12} {tag}")


if __name__ == "__main__":
    main()
