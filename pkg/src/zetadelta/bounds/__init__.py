"""Exact exponent bookkeeping for mixed moments of Delta and zeta."""
from .engine import (
    CONJECTURE_CONDITION,
    THEOREM_PAIRS,
    Derivation,
    Extraction,
    conditional_bound,
    conjectural_exponent,
    derive_mixed_bound,
    farey,
    holder_combine,
    single_fact,
    target_powers,
    trivial_bound,
    trivial_derivation,
)
from .facts import (
    Atom,
    FactDatabase,
    MomentFact,
    PointwiseFact,
    Validity,
    ZetaPointwise,
    m_of_A,
    m_of_A_crossover,
    zeta_moment_exponent,
)
from .render import (
    bound_text,
    decimal_str,
    derivation_dict,
    render_database,
    render_derivation,
    render_table,
    theorem_rows,
)

__all__ = [
    "CONJECTURE_CONDITION", "THEOREM_PAIRS", "Atom", "Derivation", "Extraction",
    "FactDatabase", "MomentFact", "PointwiseFact", "Validity", "ZetaPointwise",
    "bound_text", "conditional_bound", "conjectural_exponent", "decimal_str",
    "derivation_dict", "derive_mixed_bound", "farey", "holder_combine", "m_of_A",
    "m_of_A_crossover", "render_database", "render_derivation", "render_table",
    "single_fact", "target_powers", "theorem_rows", "trivial_bound",
    "trivial_derivation", "zeta_moment_exponent",
]
