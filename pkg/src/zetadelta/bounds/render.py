"""Text and key-value renderings of derivations and of the fact database."""
from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction as Q

from .engine import (
    SINGLE,
    Derivation,
    conjectural_exponent,
    derive_mixed_bound,
    trivial_bound,
)
from .facts import FactDatabase, MomentFact


def decimal_str(q: Q, digits: int = 10) -> str:
    """Exact decimal when the expansion terminates, else ``digits`` places with '...'."""
    q = Q(q)
    den = q.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    with localcontext() as ctx:
        ctx.prec = 60
        value = Decimal(q.numerator) / Decimal(q.denominator)
    if den == 1:
        text = format(value, "f")
        return text if "." in text else text + ".0"
    return format(value.quantize(Decimal(1).scaleb(-digits)), "f") + "..."


def _pow(x: Q) -> str:
    return str(x) if x.denominator == 1 else f"({x})"


def monomial(powers) -> str:
    parts = [f"{atom.symbol}^{_pow(p)}" for atom, p in powers]
    return " ".join(parts) if parts else "1"


def _log(fact: MomentFact) -> str:
    if fact.log_power is None:
        return " log^C T"
    if fact.log_power == 0:
        return ""
    return " log T" if fact.log_power == 1 else f" log^{_pow(fact.log_power)} T"


def bound_text(fact: MomentFact) -> str:
    eps = "+eps" if fact.has_epsilon else ""
    return f"T^{_pow(fact.growth)}{eps}{_log(fact)}"


def fact_line(fact: MomentFact) -> str:
    return f"int_0^T {monomial(fact.powers)} dt << {bound_text(fact)}   [{fact.source}]"


def _growth_sum(d: Derivation) -> str:
    terms = [f"{w}*{_pow(f.growth)}" for f, w in d.steps]
    terms += [f"{e.power}*{e.fact.exponent}" for e in d.extractions]
    return " + ".join(terms)


def render_derivation(d: Derivation) -> str:
    """Human-readable chain: split, Hölder weights, cited facts, exponent."""
    k, m = d.target
    head = f"int_0^T {monomial(d.result.powers)} dt"
    value = f"{d.growth} = {decimal_str(d.growth)}"
    if d.strategy == SINGLE and not d.extractions:
        return f"{head} << {bound_text(d.result)}   [{d.steps[0][0].source}]   ({value})"
    lines = [f"(k, m) = ({k}, {m}): {head}   [{d.strategy}]"]
    if d.conditional:
        lines.append("  CONDITIONAL: uses a hypothesis not proved in the database")
    for e in d.extractions:
        lines.append(
            f"  pointwise: {e.fact.atom.symbol}^{_pow(e.power)} << T^({e.power}*{e.fact.exponent})+eps   [{e.fact.source}]"
        )
    if len(d.steps) > 1:
        factors = " * ".join(f"({monomial(f.powers)})^({w})" for f, w in d.steps)
        lines.append(f"  split: {factors}")
        lines.append("  Hölder with weights " + ", ".join(str(w) for w in d.weights))
    for f, w in d.steps:
        line = f"    {fact_line(f)}"
        if f.validity is not None:
            line += f"   at {f.validity.param} = {f.validity.value}"
        lines.append(line)
    if d.residual_A is not None:
        lines.append(f"  residual zeta power A = {d.residual_A}")
    lines.append(f"  growth: {_growth_sum(d)} = {d.growth}")
    lines.append(f"  result: << {bound_text(d.result)}   ({value})")
    return "\n".join(lines)


def fact_dict(f: MomentFact) -> dict:
    return {
        "powers": {a.value: str(p) for a, p in f.powers},
        "growth": str(f.growth),
        "log_power": "C" if f.log_power is None else str(f.log_power),
        "epsilon": f.has_epsilon,
        "source": f.source,
        "validity": None if f.validity is None else f"{f.validity.describe()} at {f.validity.param} = {f.validity.value}",
    }


def derivation_dict(d: Derivation) -> dict:
    """Key-value tree mirroring :func:`render_derivation`."""
    return {
        "target": {"k": d.target[0], "m": d.target[1]},
        "strategy": d.strategy,
        "conditional": d.conditional,
        "steps": [{"weight": str(w), "fact": fact_dict(f)} for f, w in d.steps],
        "pointwise": [
            {"atom": e.fact.atom.value, "power": str(e.power), "exponent": str(e.fact.exponent), "source": e.fact.source}
            for e in d.extractions
        ],
        "residual_A": None if d.residual_A is None else str(d.residual_A),
        "growth": str(d.growth),
        "growth_decimal": decimal_str(d.growth),
        "result": fact_dict(d.result),
    }


def theorem_rows(pairs, db: FactDatabase | None = None) -> list[dict]:
    db = db or FactDatabase()
    rows = []
    for k, m in pairs:
        d = derive_mixed_bound(k, m, db)
        rows.append({
            "k": k,
            "m": m,
            "exponent": d.growth,
            "trivial": trivial_bound(k, m, db),
            "conjectural": conjectural_exponent(k, m),
            "derivation": d,
        })
    return rows


def render_table(rows: list[dict]) -> str:
    header = f"{'k':>2} {'m':>2}  {'exponent':<22} {'trivial':<24} {'conjectural':<12} weights"
    out = [header, "-" * len(header)]
    for r in rows:
        d = r["derivation"]
        out.append(
            f"{r['k']:>2} {r['m']:>2}  "
            f"{str(r['exponent']) + ' = ' + decimal_str(r['exponent'], 6):<22} "
            f"{str(r['trivial']) + ' = ' + decimal_str(r['trivial'], 6):<24} "
            f"{str(r['conjectural']):<12} "
            + ", ".join(str(w) for w in d.weights)
        )
    return "\n".join(out)


def render_database(db: FactDatabase) -> str:
    rows = db.rows()
    width = max(len(s) for s, _, _ in rows)
    lines = []
    for symbol, value, tag in rows:
        shown = f"{value} = {decimal_str(value, 6)}" if isinstance(value, Q) else str(value)
        lines.append(f"{symbol:<{width}}  {shown:<28} [{tag}]")
    return "\n".join(lines)


__all__ = [
    "bound_text",
    "decimal_str",
    "derivation_dict",
    "render_database",
    "render_derivation",
    "render_table",
    "theorem_rows",
]
