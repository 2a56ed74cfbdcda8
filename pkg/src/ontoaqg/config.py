"""Run configuration shared by the CLI subcommands, plus config-file loading."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import InvalidParameterError
from .metrics import DEFAULT_FRAGMENTS, FragmentKind, MetricConfig, parse_fragments
from .qgen import QGenConfig, Strategy, parse_strategies

FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class RunConfig:
    input_paths: tuple[str, ...]
    output_path: Optional[str] = None
    format: str = "json"
    normalize: bool = False
    strategies: frozenset[Strategy] = frozenset(Strategy)
    max_distractors: int = 3
    pair_cap: int = 3
    sf_denominator: str = "populated"
    inferred_membership: bool = False
    instance_comments: bool = False
    fragments: tuple[FragmentKind, ...] = DEFAULT_FRAGMENTS

    def __post_init__(self) -> None:
        object.__setattr__(self, "input_paths", tuple(str(p) for p in self.input_paths))
        object.__setattr__(self, "strategies", frozenset(self.strategies))
        if not self.input_paths:
            raise InvalidParameterError("at least one input path is required")
        if self.format not in FORMATS:
            raise InvalidParameterError(f"format must be one of {', '.join(FORMATS)}")
        if not isinstance(self.max_distractors, int) or self.max_distractors < 1:
            raise InvalidParameterError("max-distractors must be a positive integer")
        if not isinstance(self.pair_cap, int) or self.pair_cap < 1:
            raise InvalidParameterError("pair-cap must be a positive integer")
        if self.sf_denominator not in ("populated", "all"):
            raise InvalidParameterError("sf-denominator must be 'populated' or 'all'")

    def metric_config(self) -> MetricConfig:
        return MetricConfig(self.fragments, self.sf_denominator)

    def qgen_config(self) -> QGenConfig:
        return QGenConfig(self.strategies, self.max_distractors, self.pair_cap,
                          self.instance_comments)

    def to_args(self) -> list[str]:
        """CLI arguments (after the subcommand name) that reproduce this config."""
        args = list(self.input_paths)
        if self.output_path:
            args += ["--out", self.output_path]
        args += ["--format", self.format]
        if self.normalize:
            args.append("--normalize")
        args += ["--strategies", ",".join(sorted(_strategy_cli_name(s) for s in self.strategies))]
        args += ["--max-distractors", str(self.max_distractors)]
        args += ["--pair-cap", str(self.pair_cap)]
        args += ["--sf-denominator", self.sf_denominator]
        if self.inferred_membership:
            args.append("--inferred-membership")
        if self.instance_comments:
            args.append("--instance-comments")
        args += ["--fragments", ",".join(f.value for f in self.fragments)]
        return args


def _strategy_cli_name(s: Strategy) -> str:
    from .qgen import STRATEGY_NAMES

    return next(k for k, v in STRATEGY_NAMES.items() if v is s)


# Config-file keys (after flattening dotted TOML tables) -> RunConfig field.
_KEYS = {
    "out": "output_path",
    "output": "output_path",
    "format": "format",
    "normalize": "normalize",
    "strategies": "strategies",
    "max_distractors": "max_distractors",
    "pair_cap": "pair_cap",
    "sf_denominator": "sf_denominator",
    "sf.denominator": "sf_denominator",
    "inferred_membership": "inferred_membership",
    "instance_comments": "instance_comments",
    "pc.fragments": "fragments",
}


def _flatten(data: Mapping[str, Any], prefix: str = "") -> dict[str, Any]:
    flat: dict[str, Any] = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        else:
            flat[name] = value
    return flat


def load_config_file(path: str | Path) -> dict[str, Any]:
    """Read a flat TOML config and return RunConfig keyword overrides."""
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise InvalidParameterError(f"{path}: {exc}") from None
    out: dict[str, Any] = {}
    for key, value in _flatten(raw).items():
        norm = key.replace("-", "_")
        if norm not in _KEYS:
            raise InvalidParameterError(f"{path}: unknown config key {key!r}")
        target = _KEYS[norm]
        if target == "strategies":
            value = parse_strategies(value if isinstance(value, list) else [value])
        elif target == "fragments":
            value = parse_fragments(value if isinstance(value, list) else str(value).split(","))
        elif target in ("normalize", "inferred_membership", "instance_comments"):
            if not isinstance(value, bool):
                raise InvalidParameterError(f"{path}: {key} must be true or false")
        elif target in ("max_distractors", "pair_cap"):
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidParameterError(f"{path}: {key} must be an integer")
        out[target] = value
    return out


RUN_CONFIG_FIELDS = tuple(f.name for f in fields(RunConfig))
