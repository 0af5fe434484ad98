"""Strict JSON run configuration for the CLI.

Unknown keys are rejected everywhere: a typo in a config file should stop
the run, not silently fall back to a default.
"""

import json
from dataclasses import dataclass, field

from .errors import ConfigError
from .quad import QuadratureSpec

__all__ = ["GridSpec", "RunConfig", "load_config"]


@dataclass(frozen=True)
class GridSpec:
    min: float
    max: float
    count: int

    def __post_init__(self):
        if not (self.max > self.min) or self.count < 2:
            raise ConfigError(f"bad grid {self.min}:{self.max}:{self.count}")

    def values(self):
        import numpy as np

        return np.linspace(self.min, self.max, self.count)

    @classmethod
    def parse(cls, text):
        """Parse 'min:max:count'."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"grid must be min:max:count, got {text!r}")
        return cls(min=float(parts[0]), max=float(parts[1]), count=int(parts[2]))


_DEFAULT_GRIDS = {
    "lambda": GridSpec(0.0, 10.0, 21),
    "r": GridSpec(0.1, 2.0, 5),
    "xi": GridSpec(5.0, 200.0, 200),
}


@dataclass(frozen=True)
class RunConfig:
    k: int = 1
    b: int = 1
    allow_octonions: bool = False
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    grids: dict = field(default_factory=lambda: dict(_DEFAULT_GRIDS))
    output_path: str = None
    output_format: str = "csv"
    seed: int = None

    def __post_init__(self):
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")

    def effective_spec(self):
        if self.seed is not None:
            return self.quadrature.with_(seed=self.seed)
        return self.quadrature


def _take(mapping, allowed, where):
    unknown = set(mapping) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where}")
    return {k: mapping[k] for k in mapping}


def load_config(path=None, text=None):
    """Load a RunConfig from a JSON file or literal text."""
    if text is None:
        if path is None:
            return RunConfig()
        with open(path) as fh:
            text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    top = _take(raw, ["algebra", "quadrature", "grids", "output", "seed"], "config root")

    kw = {}
    alg = _take(top.get("algebra", {}), ["k", "b", "allow_octonions"], "algebra")
    kw["k"] = int(alg.get("k", 1))
    kw["b"] = int(alg.get("b", 1))
    kw["allow_octonions"] = bool(alg.get("allow_octonions", False))

    qk = _take(
        top.get("quadrature", {}),
        ["nodes_1d", "panels", "truncation_radius_X", "truncation_radius_Z", "sphere_nodes", "seed"],
        "quadrature",
    )
    try:
        kw["quadrature"] = QuadratureSpec(**qk)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad quadrature spec: {exc}") from exc

    grids = dict(_DEFAULT_GRIDS)
    for name, g in _take(top.get("grids", {}), ["lambda", "r", "xi"], "grids").items():
        gg = _take(g, ["min", "max", "count"], f"grids.{name}")
        grids[name] = GridSpec(min=float(gg["min"]), max=float(gg["max"]), count=int(gg["count"]))
    kw["grids"] = grids

    out = _take(top.get("output", {}), ["path", "format"], "output")
    kw["output_path"] = out.get("path")
    kw["output_format"] = out.get("format", "csv")
    if "seed" in top and top["seed"] is not None:
        kw["seed"] = int(top["seed"])
    return RunConfig(**kw)
