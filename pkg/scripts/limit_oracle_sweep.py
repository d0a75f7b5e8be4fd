"""Compare thread search against brute-force filtering of the full product.

    python3 scripts/limit_oracle_sweep.py --diagrams 200 --seed 0
"""

import argparse
import itertools
import random
import time
from dataclasses import dataclass

from uflim.limits import enumerate_threads, product_size
from uflim.sampling import random_partition_diagram, random_tree_diagram


@dataclass(frozen=True)
class SweepConfig:
    diagrams: int = 200
    max_product: int = 10**5
    seed: int = 0


def filtered_product(d):
    names = list(d.objects)
    out = set()
    for combo in itertools.product(*(d.objects[n] for n in names)):
        choice = dict(zip(names, combo))
        if all(m.get(choice[s]) == choice[t] for (s, t), m in d.arrows.items()):
            out.add(frozenset(choice.items()))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--diagrams", type=int, default=SweepConfig.diagrams)
    ap.add_argument("--max-product", type=int, default=SweepConfig.max_product)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    a = ap.parse_args()
    cfg = SweepConfig(a.diagrams, a.max_product, a.seed)
    rng = random.Random(cfg.seed)
    search = brute = 0.0
    bad = 0
    for i in range(cfg.diagrams):
        if i % 2:
            d = random_tree_diagram(rng, max_objects=8, max_labels=6, max_product=cfg.max_product)
        else:
            d = random_partition_diagram(rng, max_ground=6, max_objects=8, max_product=cfg.max_product)
        t0 = time.perf_counter()
        got = {frozenset(t.items()) for t in enumerate_threads(d)}
        t1 = time.perf_counter()
        want = filtered_product(d)
        t2 = time.perf_counter()
        search += t1 - t0
        brute += t2 - t1
        if got != want:
            bad += 1
            print(f"diagram {i}: product {product_size(d)}, search {len(got)} vs brute {len(want)}")
    print(f"{cfg.diagrams} diagrams, {bad} disagreements; search {search:.2f}s, brute force {brute:.2f}s")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
