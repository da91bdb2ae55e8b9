"""Exact-rational fact database for moment and pointwise bounds.

Every exponent is a :class:`fractions.Fraction`.  A moment fact reads

    int_0^T  prod_i atom_i^{a_i}  dt  <<  T^growth  (log T)^log_power  T^eps

where ``log_power`` is either an explicit rational or ``None`` for an
unspecified constant C, and ``has_epsilon`` marks the T^eps factor.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction as Q
from typing import Mapping

from ..errors import ValidityRangeError

THETA_DEFAULT = Q(131, 416)
ZETA_CLASSIC = Q(32, 205)
ZETA_BOURGAIN = Q(53, 342)

ZETA_MOMENT_RANGE = (Q(4), Q(12))
DELTA_MOMENT_RANGE = (Q(0), Q(11))


class Atom(enum.Enum):
    DELTA_ABS = "delta_abs"
    ZETA_ABS = "zeta_abs"

    @property
    def symbol(self) -> str:
        return "|Delta|" if self is Atom.DELTA_ABS else "|zeta|"


class ZetaPointwise(enum.Enum):
    CLASSIC_32_205 = "classic_32_205"
    BOURGAIN_53_342 = "bourgain_53_342"

    @property
    def exponent(self) -> Q:
        return ZETA_CLASSIC if self is ZetaPointwise.CLASSIC_32_205 else ZETA_BOURGAIN


@dataclass(frozen=True)
class Validity:
    """``lo <= param <= hi`` for the parameter a fact was instantiated at."""

    param: str
    value: Q
    lo: Q
    hi: Q

    def holds(self) -> bool:
        return self.lo <= self.value <= self.hi

    def describe(self) -> str:
        return f"{self.lo} <= {self.param} <= {self.hi}"

    def check(self, tag: str = "") -> None:
        if not self.holds():
            where = f" ({tag})" if tag else ""
            raise ValidityRangeError(
                f"{self.param} = {self.value} violates {self.describe()}{where}"
            )


def _powers(items: Mapping[Atom, Q]) -> tuple[tuple[Atom, Q], ...]:
    return tuple(sorted(((a, Q(p)) for a, p in items.items() if p != 0), key=lambda x: x[0].value))


@dataclass(frozen=True)
class MomentFact:
    powers: tuple[tuple[Atom, Q], ...]
    growth: Q
    log_power: Q | None = None
    has_epsilon: bool = False
    source: str = ""
    validity: Validity | None = None

    @classmethod
    def make(cls, powers: Mapping[Atom, Q], growth, log_power=None, has_epsilon=False, source="", validity=None):
        lp = None if log_power is None else Q(log_power)
        return cls(_powers(powers), Q(growth), lp, has_epsilon, source, validity)

    def power(self, atom: Atom) -> Q:
        return dict(self.powers).get(atom, Q(0))

    @property
    def power_map(self) -> dict[Atom, Q]:
        return dict(self.powers)

    def with_source(self, source: str) -> "MomentFact":
        return replace(self, source=source)


@dataclass(frozen=True)
class PointwiseFact:
    atom: Atom
    exponent: Q
    source: str = ""

    def __post_init__(self):
        if not 0 < self.exponent < 1:
            raise ValueError(f"pointwise exponent must lie in (0, 1), got {self.exponent}")


def zeta_moment_exponent(A) -> Q:
    """Growth exponent 1 + (A - 4)/8 of int |zeta|^A for 4 <= A <= 12."""
    A = Q(A)
    Validity("A", A, *ZETA_MOMENT_RANGE).check("zeta moment")
    return 1 + (A - 4) / 8


def m_of_A(A, theta=THETA_DEFAULT) -> Q:
    """max(A/4, theta (A - 2)), the exponent beyond 1 in int |Delta|^A, 0 <= A <= 11."""
    A, theta = Q(A), Q(theta)
    Validity("A", A, *DELTA_MOMENT_RANGE).check("delta moment")
    return max(A / 4, theta * (A - 2))


def m_of_A_crossover(theta=THETA_DEFAULT) -> Q:
    """The A where A/4 = theta (A - 2), i.e. 8 theta / (4 theta - 1)."""
    theta = Q(theta)
    return 8 * theta / (4 * theta - 1)


ETA = {
    2: Q(1, 10), 3: Q(1, 10), 4: Q(1, 10),
    5: Q(3, 80), 6: Q(35, 4742), 7: Q(17, 6312), 8: Q(8, 9433),
}
ETA2_IMPROVED = Q(3, 20)

TAG_MIXED = "mixed eighth moment"
TAG_ZETA = "zeta moment (4 <= A <= 12)"
TAG_DELTA = "delta moment (0 <= A <= 11)"
TAG_MEAN_SQUARE = "mean square of zeta"
TAG_LENGTH = "length of [0, T]"
TAG_THETA = "pointwise Delta bound"
TAG_SIGMA = "pointwise zeta bound"
TAG_CONJ = "conditional on Delta << x^(1/4+eps) and Lindelof"


@dataclass(frozen=True)
class FactDatabase:
    """The constants and parametric families the engine derives from.

    ``a0`` is a hypothesis slot: a value in (8, crossover) for which
    int |Delta|^A0 |zeta|^2 << T^(1 + A0/4 + eps) is assumed.  It is only
    used by :func:`~zetadelta.bounds.engine.conditional_bound` and never by
    the unconditional derivations.
    """

    theta: Q = THETA_DEFAULT
    zeta_pointwise: ZetaPointwise = ZetaPointwise.CLASSIC_32_205
    eta: tuple[tuple[int, Q], ...] = field(default=tuple(ETA.items()))
    eta2_improved: Q = ETA2_IMPROVED
    a0: Q | None = None

    def __post_init__(self):
        object.__setattr__(self, "theta", Q(self.theta))
        if not 0 < self.theta < 1:
            raise ValueError(f"theta must lie in (0, 1), got {self.theta}")
        if self.a0 is not None:
            a0 = Q(self.a0)
            object.__setattr__(self, "a0", a0)
            if not 8 < a0 < m_of_A_crossover(self.theta):
                raise ValidityRangeError(f"A0 = {a0} must satisfy 8 < A0 < {m_of_A_crossover(self.theta)}")

    @property
    def sigma(self) -> Q:
        return self.zeta_pointwise.exponent

    @property
    def delta_pointwise(self) -> PointwiseFact:
        return PointwiseFact(Atom.DELTA_ABS, self.theta, TAG_THETA)

    @property
    def zeta_pointwise_fact(self) -> PointwiseFact:
        return PointwiseFact(Atom.ZETA_ABS, self.sigma, TAG_SIGMA)

    def pointwise(self, atom: Atom) -> PointwiseFact:
        return self.delta_pointwise if atom is Atom.DELTA_ABS else self.zeta_pointwise_fact

    @property
    def mixed_eighth(self) -> MomentFact:
        return MomentFact.make({Atom.DELTA_ABS: 8, Atom.ZETA_ABS: 2}, 3, 1, False, TAG_MIXED)

    def zeta_moment(self, A) -> MomentFact:
        A = Q(A)
        return MomentFact.make(
            {Atom.ZETA_ABS: A}, zeta_moment_exponent(A), None, False, TAG_ZETA,
            Validity("A", A, *ZETA_MOMENT_RANGE),
        )

    def delta_moment(self, A) -> MomentFact:
        A = Q(A)
        return MomentFact.make(
            {Atom.DELTA_ABS: A}, 1 + m_of_A(A, self.theta), 0, True, TAG_DELTA,
            Validity("A", A, *DELTA_MOMENT_RANGE),
        )

    @property
    def mean_square(self) -> MomentFact:
        return MomentFact.make({Atom.ZETA_ABS: 2}, 1, 1, False, TAG_MEAN_SQUARE)

    @property
    def length(self) -> MomentFact:
        return MomentFact.make({}, 1, 0, False, TAG_LENGTH)

    def hypothesis_a0(self) -> MomentFact:
        if self.a0 is None:
            raise ValueError("no A0 hypothesis supplied")
        return MomentFact.make(
            {Atom.DELTA_ABS: self.a0, Atom.ZETA_ABS: 2}, 1 + self.a0 / 4, 0, True,
            f"hypothesis A0 = {self.a0}",
        )

    def eta_table(self) -> dict[int, Q]:
        return dict(self.eta)

    def key(self) -> tuple:
        return (self.theta, self.sigma)

    def rows(self) -> list[tuple[str, Q, str]]:
        """(symbol, value, citation tag) for a human-readable dump."""
        out = [
            ("theta", self.theta, TAG_THETA),
            ("sigma_zeta", self.sigma, TAG_SIGMA + f" ({self.zeta_pointwise.name.lower()})"),
            ("sigma_zeta alt", ZETA_BOURGAIN if self.sigma == ZETA_CLASSIC else ZETA_CLASSIC, "alternate pointwise zeta bound"),
            ("mixed eighth growth", Q(3), TAG_MIXED + ", with log^1 T"),
            ("M crossover", m_of_A_crossover(self.theta), "A/4 = theta (A - 2)"),
        ]
        out += [(f"eta_{k}", v, "mixed moment error saving") for k, v in self.eta]
        out.append(("eta_2 improved", self.eta2_improved, "annotation only"))
        out.append(("A0", self.a0 if self.a0 is not None else "unset", "hypothesis slot, annotation only"))
        return out
