# src/config.py
"""Bounds profiles for the verification suites, read from configs/verify_config.yaml."""

from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Tuple

import yaml

from src.errors import ConfigError

DEFAULT_CONFIG = Path(__file__).resolve().parent.parent / "configs" / "verify_config.yaml"


@dataclass(frozen=True)
class Bounds:
    name: str = "default"
    n_max: int = 3
    k_max: int = 3
    r_max: int = 3
    kn_max: int = 3
    N_max: int = 3
    l_max: int = 2
    random_pairs: int = 40
    random_triples: int = 20
    random_projections: int = 20
    samples_per_degree: int = 2
    weight_max: int = 2
    rho_n_max: int = 3
    rho_weight_max: int = 2
    nu_max: int = 25
    split_n: Tuple[int, ...] = (3, 4, 5)
    split_k_min: int = -6
    seed: int = 7
    workers: int = 1


def load_config(path: Optional[str] = None) -> dict:
    path = Path(path) if path else DEFAULT_CONFIG
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    with open(path) as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must map profile names to bounds")
    return data


def load_bounds(name: str = "default", path: Optional[str] = None) -> Bounds:
    data = load_config(path)
    if name not in data:
        raise ConfigError(f"unknown bounds profile {name!r} (have: {', '.join(sorted(data))})")
    merged = dict(data.get("default") or {})
    merged.update(data[name] or {})
    known = {f.name for f in fields(Bounds)}
    unknown = set(merged) - known
    if unknown:
        raise ConfigError(f"unknown bounds keys: {', '.join(sorted(unknown))}")
    if "split_n" in merged:
        merged["split_n"] = tuple(merged["split_n"])
    try:
        return Bounds(name=name, **{k: v for k, v in merged.items() if k != "name"})
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
