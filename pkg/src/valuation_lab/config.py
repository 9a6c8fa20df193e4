from dataclasses import dataclass
import os


@dataclass(frozen=True)
class Config:
    """Resource bounds used across the library."""

    tower_depth: int = 6
    degree_bound: int = 64
    refinement_limit: int = 8
    value_precision_cap: int = 256
    hensel_precision_cap: int = 512
    probe_degree_bound: int = 16
    seed: int = 0


DEFAULT = Config()


def seed_from_env(default=0):
    raw = os.environ.get("VALUATION_LAB_SEED")
    return int(raw) if raw not in (None, "") else default
