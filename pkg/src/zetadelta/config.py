"""Run configuration: defaults, a flat ``key = value`` file, then command-line overrides."""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

from .bounds.facts import THETA_DEFAULT, ZETA_BOURGAIN, ZETA_CLASSIC, FactDatabase, ZetaPointwise
from .zeta.grid import MAX_STEP

_ZETA_ALIASES = {
    "classic_32_205": ZetaPointwise.CLASSIC_32_205,
    "32/205": ZetaPointwise.CLASSIC_32_205,
    "bourgain_53_342": ZetaPointwise.BOURGAIN_53_342,
    "53/342": ZetaPointwise.BOURGAIN_53_342,
}


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def parse_zeta_pointwise(text) -> ZetaPointwise:
    if isinstance(text, ZetaPointwise):
        return text
    key = str(text).strip().lower()
    if key not in _ZETA_ALIASES:
        raise ValueError(f"zeta exponent must be one of {sorted(_ZETA_ALIASES)}, got {text!r}")
    return _ZETA_ALIASES[key]


@dataclass(frozen=True)
class RunConfig:
    cache_dir: Path = Path(".cache")
    theta: Fraction = THETA_DEFAULT
    zeta_pointwise: ZetaPointwise = ZetaPointwise.CLASSIC_32_205
    h: float = 0.01
    max_T: float = 1e5
    threads: int = 1

    def __post_init__(self):
        object.__setattr__(self, "cache_dir", Path(self.cache_dir))
        object.__setattr__(self, "theta", parse_rational(self.theta))
        object.__setattr__(self, "zeta_pointwise", parse_zeta_pointwise(self.zeta_pointwise))
        object.__setattr__(self, "h", float(self.h))
        object.__setattr__(self, "max_T", float(self.max_T))
        object.__setattr__(self, "threads", int(self.threads))
        if not 0 < self.h <= MAX_STEP:
            raise ValueError(f"h must satisfy 0 < h <= {MAX_STEP}, got {self.h}")
        if not 0 < self.theta < 1:
            raise ValueError(f"theta must lie in (0, 1), got {self.theta}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    def database(self) -> FactDatabase:
        return FactDatabase(theta=self.theta, zeta_pointwise=self.zeta_pointwise)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["cache_dir"] = str(self.cache_dir)
        d["theta"] = str(self.theta)
        d["zeta_pointwise"] = self.zeta_pointwise.value
        return d

    def merged(self, overrides: dict) -> "RunConfig":
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **clean)


_KEYS = {f.name for f in fields(RunConfig)}
_ALIASES = {"zeta_exponent": "zeta_pointwise", "cache-dir": "cache_dir", "max_t": "max_T"}


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = _ALIASES.get(key, key)
        if key not in _KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def load_config(path=None, overrides: dict | None = None) -> RunConfig:
    base = RunConfig()
    if path is not None:
        base = base.merged(read_config_file(path))
    return base.merged(overrides or {})


__all__ = [
    "RunConfig",
    "ZETA_BOURGAIN",
    "ZETA_CLASSIC",
    "load_config",
    "parse_rational",
    "parse_zeta_pointwise",
    "read_config_file",
]
