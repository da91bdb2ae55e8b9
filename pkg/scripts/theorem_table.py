"""Theorem exponents under alternative pointwise inputs.

Re-derives the six mixed-moment exponents for a few (theta, zeta exponent)
choices to show which ones depend on the pointwise inputs at all.
"""
from fractions import Fraction as Q

from zetadelta.bounds import THEOREM_PAIRS, FactDatabase, derive_mixed_bound, trivial_bound
from zetadelta.bounds.facts import ZetaPointwise

VARIANTS = {
    "default": FactDatabase(),
    "bourgain zeta": FactDatabase(zeta_pointwise=ZetaPointwise.BOURGAIN_53_342),
    "theta = 1/3": FactDatabase(theta=Q(1, 3)),
    "theta = 0.3": FactDatabase(theta=Q(3, 10)),
}


def main():
    names = list(VARIANTS)
    print(f"{'(k,m)':<7}" + "".join(f"{n:>22}" for n in names))
    for k, m in THEOREM_PAIRS:
        cells = []
        for db in VARIANTS.values():
            d = derive_mixed_bound(k, m, db)
            cells.append(f"{d.growth} / {trivial_bound(k, m, db)}")
        print(f"({k},{m})  " + "".join(f"{c:>22}" for c in cells))
    print("\ncells: derived / trivial")


if __name__ == "__main__":
    main()
