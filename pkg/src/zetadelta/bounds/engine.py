"""Hölder chaining over the fact database, with exhaustive exact search.

A target (k, m) stands for int_0^T |Delta|^k |zeta|^(2m) dt.  Candidate
derivations come from three families:

* ``mixed-eighth split``: (|Delta|^8 |zeta|^2)^(k/8) times a pure zeta
  moment with weights k/8 and (8-k)/8; the residual power
  A = 2(8m - k)/(8 - k) must lie in [4, 12].
* ``two-factor``: (int |Delta|^(k/w))^w (int |zeta|^(2m/(1-w)))^(1-w) over
  a grid of rational weights w.
* ``pointwise hybrid``: |Delta|^j and/or |zeta|^(2r) pulled out with their
  pointwise bounds, the rest bounded by one of the families above (or by a
  single fact when nothing mixed is left).

The winner minimises the growth exponent; ties go to the lexicographically
smallest weight vector, then to the fewest pointwise extractions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Sequence

from ..errors import InfeasibleError, ValidityRangeError
from .facts import (
    DELTA_MOMENT_RANGE,
    TAG_CONJ,
    ZETA_MOMENT_RANGE,
    Atom,
    FactDatabase,
    MomentFact,
    PointwiseFact,
)

K_RANGE = range(1, 9)
M_RANGE = range(1, 4)
DEFAULT_MAX_DENOMINATOR = 64

SPLIT = "mixed-eighth split"
TWO_FACTOR = "two-factor"
HYBRID = "pointwise hybrid"
SINGLE = "single fact"


def target_powers(k, m) -> dict[Atom, Q]:
    out = {}
    if k:
        out[Atom.DELTA_ABS] = Q(k)
    if m:
        out[Atom.ZETA_ABS] = Q(2 * m)
    return out


def holder_combine(facts: Sequence[MomentFact], weights: Sequence) -> MomentFact:
    """Combine moment facts with Hölder weights 1/p_i summing to exactly 1.

    Powers and growth combine linearly in the weights; an unspecified log
    power anywhere stays unspecified, and T^eps is sticky.
    """
    weights = [Q(w) for w in weights]
    if len(facts) != len(weights) or not facts:
        raise ValueError("need one positive weight per fact")
    if any(w <= 0 for w in weights):
        raise ValueError(f"weights must be positive, got {[str(w) for w in weights]}")
    if sum(weights) != 1:
        raise ValueError(f"weights sum to {sum(weights)}, not 1")
    for f in facts:
        if f.validity is not None:
            f.validity.check(f.source)
    powers: dict[Atom, Q] = {}
    for f, w in zip(facts, weights):
        for atom, p in f.powers:
            powers[atom] = powers.get(atom, Q(0)) + w * p
    growth = sum((w * f.growth for f, w in zip(facts, weights)), Q(0))
    if any(f.log_power is None for f in facts):
        log_power = None
    else:
        log_power = sum((w * f.log_power for f, w in zip(facts, weights)), Q(0))
    return MomentFact.make(
        powers, growth, log_power, any(f.has_epsilon for f in facts), "Hölder combination"
    )


@dataclass(frozen=True)
class Extraction:
    """|atom|^power bounded pointwise on [0, T] by T^(power * exponent + eps)."""

    fact: PointwiseFact
    power: Q

    @property
    def growth(self) -> Q:
        return self.power * self.fact.exponent


@dataclass(frozen=True)
class Derivation:
    target: tuple[int, int]
    strategy: str
    steps: tuple[tuple[MomentFact, Q], ...]
    result: MomentFact
    extractions: tuple[Extraction, ...] = ()
    residual_A: Q | None = None
    conditional: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def growth(self) -> Q:
        return self.result.growth

    @property
    def weights(self) -> tuple[Q, ...]:
        return tuple(w for _, w in self.steps)

    def bookkeeping_ok(self) -> bool:
        """Sum of weighted step powers plus extracted powers equals the target."""
        total: dict[Atom, Q] = {}
        for f, w in self.steps:
            for atom, p in f.powers:
                total[atom] = total.get(atom, Q(0)) + w * p
        for e in self.extractions:
            total[e.fact.atom] = total.get(e.fact.atom, Q(0)) + e.power
        total = {a: p for a, p in total.items() if p}
        return sum(self.weights) == 1 and total == target_powers(*self.target)

    @property
    def rendered(self) -> str:
        from .render import render_derivation

        return render_derivation(self)


@lru_cache(maxsize=8)
def farey(max_den: int) -> tuple[Q, ...]:
    """Reduced fractions in (0, 1) with denominator <= max_den, ascending."""
    return tuple(sorted({Q(p, q) for q in range(2, max_den + 1) for p in range(1, q)}))


def _finish(target, strategy, steps, extractions=(), residual_A=None, conditional=False) -> Derivation:
    facts = [f for f, _ in steps]
    combined = holder_combine(facts, [w for _, w in steps])
    growth = combined.growth + sum((e.growth for e in extractions), Q(0))
    eps = combined.has_epsilon or bool(extractions)
    result = MomentFact.make(
        target_powers(*target), growth, combined.log_power, eps, strategy
    )
    return Derivation(target, strategy, tuple(steps), result, tuple(extractions), residual_A, conditional)


def _split(k: int, m: int, db: FactDatabase, violations: list) -> Derivation | None:
    if k == 8 and m == 1:
        return _finish((k, m), SINGLE, [(db.mixed_eighth, Q(1))])
    if not 0 < k < 8:
        violations.append(f"{SPLIT}: needs 1 <= k <= 7 (k = {k})")
        return None
    w = Q(k, 8)
    A = Q(2 * (8 * m - k), 8 - k)
    lo, hi = ZETA_MOMENT_RANGE
    if not lo <= A <= hi:
        violations.append(f"{SPLIT}: residual zeta power A = {A} outside [{lo}, {hi}]")
        return None
    return _finish((k, m), SPLIT, [(db.mixed_eighth, w), (db.zeta_moment(A), 1 - w)], residual_A=A)


@lru_cache(maxsize=None)
def _two_factor_best(k: int, m: int, theta: Q, max_den: int):
    """Smallest (growth, w) over the weight grid, or None.

    Growth is w (1 + M(k/w)) + (1 - w)(1 + (2m/(1-w) - 4)/8), evaluated in
    closed form for every admissible grid weight.
    """
    best = None
    dlo, dhi = DELTA_MOMENT_RANGE
    zlo, zhi = ZETA_MOMENT_RANGE
    for w in farey(max_den):
        Ad, Az = k / w, 2 * m / (1 - w)
        if not (dlo <= Ad <= dhi and zlo <= Az <= zhi):
            continue
        g = w * (1 + max(Ad / 4, theta * (Ad - 2))) + (1 - w) * (1 + (Az - 4) / 8)
        if best is None or (g, w) < best:
            best = (g, w)
    return best


def _two_factor(k: int, m: int, db: FactDatabase, max_den: int, violations: list) -> Derivation | None:
    if k == 0 or m == 0:
        return None
    best = _two_factor_best(k, m, db.theta, max_den)
    if best is None:
        violations.append(
            f"{TWO_FACTOR}: no weight with denominator <= {max_den} puts k/w in "
            f"[{DELTA_MOMENT_RANGE[0]}, {DELTA_MOMENT_RANGE[1]}] and 2m/(1-w) in "
            f"[{ZETA_MOMENT_RANGE[0]}, {ZETA_MOMENT_RANGE[1]}]"
        )
        return None
    _, w = best
    steps = [(db.delta_moment(k / w), w), (db.zeta_moment(2 * m / (1 - w)), 1 - w)]
    return _finish((k, m), TWO_FACTOR, steps)


def single_fact(k: int, m: int, db: FactDatabase) -> MomentFact | None:
    """A database fact covering |Delta|^k |zeta|^(2m) on its own, if any."""
    if k == 0 and m == 0:
        return db.length
    if k == 0:
        if m == 1:
            return db.mean_square
        A = Q(2 * m)
        return db.zeta_moment(A) if ZETA_MOMENT_RANGE[0] <= A <= ZETA_MOMENT_RANGE[1] else None
    if m == 0:
        return db.delta_moment(k) if k <= DELTA_MOMENT_RANGE[1] else None
    if (k, m) == (8, 1):
        return db.mixed_eighth
    return None


def _direct(k, m, db, max_den, violations) -> list[Derivation]:
    """Derivations of (k, m) with no pointwise extraction."""
    fact = single_fact(k, m, db)
    if fact is not None:
        return [_finish((k, m), SINGLE, [(fact, Q(1))])]
    out = []
    for d in (_split(k, m, db, violations), _two_factor(k, m, db, max_den, violations)):
        if d is not None:
            out.append(d)
    return out


def _rank(d: Derivation):
    return (d.growth, d.weights, len(d.extractions))


def _candidates(k: int, m: int, db: FactDatabase, max_den: int, violations: list, hybrid: bool = True):
    out = _direct(k, m, db, max_den, violations)
    if not hybrid:
        return out
    for j in range(k + 1):
        for r in range(m + 1):
            if j == 0 and r == 0:
                continue
            rest = _direct(k - j, m - r, db, max_den, [])
            if not rest:
                continue
            best = min(rest, key=_rank)
            ext = []
            if j:
                ext.append(Extraction(db.delta_pointwise, Q(j)))
            if r:
                ext.append(Extraction(db.zeta_pointwise_fact, Q(2 * r)))
            out.append(
                _finish((k, m), HYBRID, best.steps, ext, best.residual_A)
            )
    return out


def derive_mixed_bound(
    k: int, m: int, db: FactDatabase | None = None, max_denominator: int = DEFAULT_MAX_DENOMINATOR
) -> Derivation:
    """Best unconditional exponent for int |Delta|^k |zeta|^(2m), 1 <= k <= 8, 1 <= m <= 3."""
    db = db or FactDatabase()
    if k not in K_RANGE or m not in M_RANGE:
        raise ValidityRangeError(f"(k, m) = ({k}, {m}) outside 1 <= k <= 8, 1 <= m <= 3")
    violations: list[str] = []
    cands = _candidates(k, m, db, max_denominator, violations)
    if not cands:
        raise InfeasibleError(f"no admissible derivation for (k, m) = ({k}, {m})", violations)
    return min(cands, key=_rank)


def trivial_bound(k: int, m: int, db: FactDatabase | None = None) -> Q:
    """Best exponent using pointwise bounds for one or both factors.

    (i) |Delta|^k pointwise times a zeta moment, (ii) |zeta|^(2m) pointwise
    times a Delta moment, (iii) both pointwise times T.
    """
    return trivial_derivation(k, m, db).growth


def trivial_derivation(k: int, m: int, db: FactDatabase | None = None) -> Derivation:
    db = db or FactDatabase()
    if k < 0 or m < 0 or (k == 0 and m == 0):
        raise ValueError("trivial_bound needs k, m >= 0, not both zero")
    cands, violations = [], []
    if k == 0 or m == 0:
        fact = single_fact(k, m, db)
        if fact is not None:
            cands.append(_finish((k, m), SINGLE, [(fact, Q(1))]))
    dp = Extraction(db.delta_pointwise, Q(k)) if k else None
    zp = Extraction(db.zeta_pointwise_fact, Q(2 * m)) if m else None
    if k:
        zeta_rest = single_fact(0, m, db)
        if zeta_rest is not None:
            cands.append(_finish((k, m), "trivial (i)", [(zeta_rest, Q(1))], [dp]))
        else:
            violations.append(f"trivial (i): zeta power {2 * m} outside the zeta moment range")
    if m:
        delta_rest = single_fact(k, 0, db)
        if delta_rest is not None:
            cands.append(_finish((k, m), "trivial (ii)", [(delta_rest, Q(1))], [zp]))
        else:
            violations.append(f"trivial (ii): Delta power {k} outside the Delta moment range")
    both = [e for e in (dp, zp) if e is not None]
    cands.append(_finish((k, m), "trivial (iii)", [(db.length, Q(1))], both))
    if not cands:
        raise InfeasibleError(f"no trivial strategy for (k, m) = ({k}, {m})", violations)
    return min(cands, key=_rank)


def conjectural_exponent(k: int, m: int) -> Q:
    """1 + k/4, conditional on Delta << x^(1/4+eps) and the Lindelof hypothesis."""
    if k < 1 or m < 1:
        raise ValueError("conjectural exponent is stated for k, m >= 1")
    return 1 + Q(k, 4)


CONJECTURE_CONDITION = TAG_CONJ


def conditional_bound(k: int, m: int, db: FactDatabase) -> Derivation:
    """Split as in the mixed-eighth chain but through the A0 hypothesis.

    Uses int |Delta|^A0 |zeta|^2 << T^(1 + A0/4 + eps) with weight k/A0.  The
    result is flagged conditional; it is never returned by
    :func:`derive_mixed_bound`.
    """
    fact = db.hypothesis_a0()
    a0 = db.a0
    w = Q(k) / a0
    if not 0 < w < 1:
        raise ValidityRangeError(f"k = {k} needs 0 < k/A0 < 1")
    A = (2 * m - 2 * w) / (1 - w)
    steps = [(fact, w), (db.zeta_moment(A), 1 - w)]
    d = _finish((k, m), f"conditional on A0 = {a0}", steps, residual_A=A, conditional=True)
    return d


THEOREM_PAIRS = ((1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3))


__all__ = [
    "CONJECTURE_CONDITION",
    "Derivation",
    "Extraction",
    "THEOREM_PAIRS",
    "conditional_bound",
    "conjectural_exponent",
    "derive_mixed_bound",
    "farey",
    "holder_combine",
    "single_fact",
    "target_powers",
    "trivial_bound",
    "trivial_derivation",
]
