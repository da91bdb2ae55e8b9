"""Riemann-Siegel accuracy and speed against the Euler-Maclaurin oracle."""
import argparse
import time

import numpy as np

from zetadelta.zeta import hardy_z_rs, zeta_half_em
from zetadelta.zeta.riemann_siegel import correction_orders


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-decade", type=int, default=200)
    args = ap.parse_args()
    hardy_z_rs(np.array([10.0, 1e4]))  # build coefficient tables before timing
    print(f"{'decade':<14}{'max |RS-EM|':>14}{'orders':>9}{'RS us/pt':>10}{'EM us/pt':>10}")
    for lo, hi in [(10, 100), (100, 1000), (1000, 1e4)]:
        ts = np.geomspace(lo, hi, args.per_decade)
        t0 = time.perf_counter()
        rs = np.abs(hardy_z_rs(ts))
        t1 = time.perf_counter()
        em = np.array([abs(zeta_half_em(float(t), 1e-9)) for t in ts])
        t2 = time.perf_counter()
        orders = correction_orders(ts)
        print(
            f"[{lo:g}, {hi:g}]".ljust(14)
            + f"{np.max(np.abs(rs - em)):>14.2e}{f'{orders.max()}-{orders.min()}':>9}"
            + f"{1e6 * (t1 - t0) / ts.size:>10.1f}{1e6 * (t2 - t1) / ts.size:>10.1f}"
        )


if __name__ == "__main__":
    main()
