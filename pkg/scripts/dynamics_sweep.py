"""Random self-maps: thread count of the infinitely-visited diagram vs cycle length.

    python3 scripts/dynamics_sweep.py --systems 500 --max-states 6 --seed 0
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from uflim.dynamics import corollary_limit, orbit_decompose
from uflim.sampling import random_system


@dataclass(frozen=True)
class SweepConfig:
    systems: int = 500
    max_states: int = 6
    seed: int = 0


def sweep(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    by_cycle = Counter()
    mismatches = []
    for i in range(cfg.systems):
        s = random_system(rng, max_states=cfg.max_states)
        _, cycle = orbit_decompose(s)
        n = len(corollary_limit(s))
        by_cycle[len(cycle)] += 1
        if n != len(cycle):
            mismatches.append((i, s, n))
    return by_cycle, mismatches


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--systems", type=int, default=SweepConfig.systems)
    ap.add_argument("--max-states", type=int, default=SweepConfig.max_states)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    a = ap.parse_args()
    by_cycle, bad = sweep(SweepConfig(a.systems, a.max_states, a.seed))
    for length in sorted(by_cycle):
        count = by_cycle[length]
        print(f"cycle length {length}: {count} system{'' if count == 1 else 's'}")
    print(f"{len(bad)} systems where thread count != cycle length")
    for i, s, n in bad:
        print(f"  #{i}: map={s.map} start={s.start} threads={n}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
