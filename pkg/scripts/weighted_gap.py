"""Observed gap between the exact weighted minimum and the -n floor on certified graphs.

The -n slack comes with no tightness target, so this only tabulates how much
room is left: gap = omega + n (always >= 0 on certified graphs).

Usage:
    python scripts/weighted_gap.py [--graphs 40] [--max-n 16] [--seed 0]
"""

from __future__ import annotations

import argparse
import random
from fractions import Fraction

from oddcycles.density import DensityParams, min_density_ratio, weighted_min_exact
from oddcycles.graph import FamilySpec, gen_family, gen_random

EPS = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(3, 5)]


def sample(rng: random.Random, max_n: int):
    kind = rng.choice(["random", "clique-union", "multipartite", "complete"])
    if kind == "random":
        n = rng.randint(4, max_n)
        return f"random n={n}", gen_random(n, rng.choice(["1/2", "2/3", "3/4"]),
                                           rng.randrange(10**6))
    if kind == "clique-union":
        k = rng.randint(2, 4)
        s = rng.randint(2, max_n // k)
        return f"clique-union {k}x{s}", gen_family(FamilySpec(kind, k=k, s=s))
    if kind == "multipartite":
        parts = tuple(rng.randint(1, 4) for _ in range(rng.randint(2, 4)))
        return f"multipartite {parts}", gen_family(FamilySpec(kind, parts=parts))
    n = rng.randint(3, max_n)
    return f"complete n={n}", gen_family(FamilySpec(kind, n=n))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graphs", type=int, default=40)
    ap.add_argument("--max-n", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'graph':28s} {'n':>3s} {'eps':>5s} {'d':>9s} {'omega':>12s} {'gap':>10s}")
    worst = None
    for _ in range(args.graphs):
        label, g = sample(rng, args.max_n)
        eps = rng.choice(EPS)
        d = min_density_ratio(g, eps)
        res = weighted_min_exact(g, DensityParams(eps, d))
        gap = res.omega + g.n
        assert gap >= 0, (label, eps, d, res.omega)
        rel = gap / g.n
        worst = rel if worst is None else min(worst, rel)
        print(f"{label:28s} {g.n:3d} {str(eps):>5s} {str(d):>9s} {str(res.omega):>12s} "
              f"{str(gap):>10s}")
    print(f"smallest gap / n: {worst}")


if __name__ == "__main__":
    main()
