"""
JSON problem descriptions.

A problem names one statement, the catalog objects it runs on, and the
sampling parameters. Every validation error names the offending field.
"""

import copy
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from radialrep.core.errors import ProblemSpecError
from radialrep.core.utils import load_config

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

_OBJECT_FIELDS = ("function", "g", "region", "integrand", "constraint_set")
_KNOWN_FIELDS = {
    "schema_version", "name", "statement", "seed", "enforce_hypotheses",
    "samples", "params", "description", "expect",
} | set(_OBJECT_FIELDS)

_COUNT_KEYS = ("interior", "boundary", "count", "fields", "closure", "rank_one", "xi")


@dataclass
class ProblemSpec:
    """One verification problem."""

    name: str
    statement: str
    function: Optional[Any] = None
    g: Optional[Any] = None
    region: Optional[Any] = None
    integrand: Optional[Any] = None
    constraint_set: Optional[Any] = None
    samples: Dict[str, Any] = field(default_factory=dict)
    params: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    enforce_hypotheses: bool = True
    description: str = ""
    expect: Optional[str] = None
    source: Optional[str] = None

    @classmethod
    def from_dict(cls, data: Any, source: Optional[str] = None) -> "ProblemSpec":
        if not isinstance(data, dict):
            raise ProblemSpecError("spec", f"expected an object, got {type(data).__name__}")
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ProblemSpecError("schema_version", f"expected {SCHEMA_VERSION}, got {version!r}")
        unknown = sorted(set(data) - _KNOWN_FIELDS)
        if unknown:
            raise ProblemSpecError(unknown[0], "unknown field")
        for key in ("name", "statement"):
            if not isinstance(data.get(key), str) or not data[key]:
                raise ProblemSpecError(key, "must be a nonempty string")
        for key in ("samples", "params"):
            if not isinstance(data.get(key, {}), dict):
                raise ProblemSpecError(key, "must be an object")
        seed = data.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            raise ProblemSpecError("seed", f"must be a nonnegative integer, got {seed!r}")
        enforce = data.get("enforce_hypotheses", True)
        if not isinstance(enforce, bool):
            raise ProblemSpecError("enforce_hypotheses", "must be true or false")
        return cls(
            name=data["name"],
            statement=data["statement"],
            samples=copy.deepcopy(data.get("samples", {})),
            params=copy.deepcopy(data.get("params", {})),
            seed=seed,
            enforce_hypotheses=enforce,
            description=data.get("description", ""),
            expect=data.get("expect"),
            source=source,
            **{k: copy.deepcopy(data.get(k)) for k in _OBJECT_FIELDS},
        )

    def require(self, key: str) -> Any:
        """A catalog reference the statement cannot run without."""
        value = getattr(self, key)
        if value is None:
            raise ProblemSpecError(key, f"required by statement '{self.statement}'")
        return value

    def count(self, key: str, default: int) -> int:
        value = self.samples.get(key, default)
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ProblemSpecError(f"samples.{key}", f"must be a nonnegative integer, got {value!r}")
        return value

    def param(self, key: str, default: Any = None) -> Any:
        return self.params.get(key, default)

    def with_overrides(self, seed: Optional[int] = None, resolution_scale: int = 1) -> "ProblemSpec":
        """Copy with the seed replaced and every sample count multiplied."""
        if resolution_scale < 1:
            raise ProblemSpecError("resolution_scale", f"must be at least 1, got {resolution_scale}")
        spec = copy.deepcopy(self)
        if seed is not None:
            spec.seed = seed
        if resolution_scale != 1:
            for key in _COUNT_KEYS:
                if isinstance(spec.samples.get(key), int):
                    spec.samples[key] *= resolution_scale
            spec.params["resolution_scale"] = resolution_scale
        return spec

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "statement": self.statement,
            "seed": self.seed,
            "enforce_hypotheses": self.enforce_hypotheses,
            "samples": self.samples,
            "params": self.params,
        }
        for key in _OBJECT_FIELDS:
            if getattr(self, key) is not None:
                data[key] = getattr(self, key)
        return data


def load_problem(path: str) -> ProblemSpec:
    """Read and validate a problem file (JSON, or YAML by extension)."""
    if not os.path.exists(path):
        raise ProblemSpecError("spec", f"file not found: {path}")
    try:
        data = load_config(path)
    except Exception as e:
        raise ProblemSpecError("spec", f"cannot parse {path}: {e}") from e
    spec = ProblemSpec.from_dict(data, source=os.path.abspath(path))
    logger.debug(f"Loaded problem '{spec.name}' ({spec.statement}) from {path}")
    return spec
