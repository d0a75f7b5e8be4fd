"""Count ultrafilters (by brute force over all families) and threads of FP(S).

    python3 scripts/bijection_sweep.py --max-size 4
"""

import argparse
import time
from dataclasses import dataclass

from uflim.limits import enumerate_threads, full_diagram
from uflim.partitions import GroundSet
from uflim.ultrafilters import enumerate_ultrafilters_bruteforce, phi, phi_inverse


@dataclass(frozen=True)
class SweepConfig:
    max_size: int = 4


def sweep(cfg: SweepConfig):
    rows = []
    for n in range(cfg.max_size + 1):
        g = GroundSet.range(n)
        t0 = time.perf_counter()
        ufs = enumerate_ultrafilters_bruteforce(g, force=n > 4)
        threads = enumerate_threads(full_diagram(g))
        ok = ({phi(u) for u in ufs} == set(threads)
              and all(phi_inverse(phi(u), g) == u for u in ufs))
        rows.append((n, 2 ** (2 ** n), len(ufs), len(threads), ok, time.perf_counter() - t0))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=SweepConfig.max_size)
    cfg = SweepConfig(max_size=ap.parse_args().max_size)
    print(f"{'|S|':>3} {'families':>10} {'ultrafilters':>12} {'threads':>7}  bijection  seconds")
    for n, fams, u, t, ok, dt in sweep(cfg):
        print(f"{n:>3} {fams:>10} {u:>12} {t:>7}  {'ok' if ok else 'FAILED':<9}  {dt:.3f}")


if __name__ == "__main__":
    main()
