"""Growth exponents of mixed moments from cached grids.

Builds (or reuses) a divisor table and a critical-line grid up to ``--T-max``,
then fits log-log slopes for several (k, m) and compares them with the
proven, trivial and conjectural exponents.  Also reports how the slope moves
between the largest-decade fit and a fit over every point.
"""
import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from zetadelta.cache import CacheStore
from zetadelta.divisor import sieve_divisor_counts
from zetadelta.moments import MomentRequest, compare_with_bounds, fit_growth_exponent, mixed_moment
from zetadelta.zeta.grid import sample_critical_line


@dataclass(frozen=True)
class Experiment:
    cache_dir: Path = Path(".cache")
    T_max: float = 1e5
    h: float = 0.01
    points_per_decade: int = 3
    pairs: tuple = ((0, 1), (0, 2), (2, 1), (1, 1), (2, 2), (4, 1))

    def T_values(self):
        decades = np.log10(self.T_max) - 2
        n = int(round(decades * self.points_per_decade)) + 1
        # T must be a grid sample, so round to whole numbers
        return tuple(float(round(T)) for T in np.geomspace(100, self.T_max, n))


def ensure_caches(exp: Experiment):
    store = CacheStore(exp.cache_dir)
    N = int(exp.T_max)
    if store.find_divisor(N) is None:
        store.store_divisor(sieve_divisor_counts(N))
    if store.find_grid(exp.T_max, exp.h) is None:
        store.store_grid(sample_critical_line(2.0, exp.T_max, exp.h))
    return store.open_divisor(store.find_divisor(N)), store.open_grid(store.find_grid(exp.T_max, exp.h))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cache-dir", type=Path, default=Experiment.cache_dir)
    ap.add_argument("--T-max", type=float, default=Experiment.T_max)
    args = ap.parse_args()
    exp = Experiment(cache_dir=args.cache_dir, T_max=args.T_max)
    table, grid = ensure_caches(exp)
    Ts = exp.T_values()
    print(f"T values: {', '.join(f'{T:g}' for T in Ts)}")
    print(f"{'(k,m)':<7}{'top decade':>11}{'all points':>11}{'proven':>9}{'conj.':>7}  signs")
    for k, m in exp.pairs:
        pts = mixed_moment(MomentRequest(k, m, Ts, h=exp.h), table, grid)
        xy = [(p.T, p.value) for p in pts]
        odd = k % 2 == 1
        fit = fit_growth_exponent(xy, use_abs=odd)
        y = np.log(np.abs([v for _, v in xy]))
        full = np.polyfit(np.log(Ts), y, 1)[0]
        r = compare_with_bounds(k, m, fit)
        print(f"({k},{m})  {fit.slope:>11.4f}{full:>11.4f}{r['proven_exponent']:>9}{r['conjectural_exponent']:>7}  {r['sign_pattern']}")


if __name__ == "__main__":
    main()
