"""JSON model configuration.

Example::

    {
      "claims": {"type": "hyperexponential",
                 "density_coefficients": [0.6667, 0.6667], "rates": [1, 2]},
      "lam": 1.0,
      "loading": 1.0
    }

Claim types: ``exponential`` (``rate``), ``hyperexponential`` (``weights`` and
``rates``, or ``density_coefficients`` and ``rates``), ``matrix_exponential``
(``beta``, ``B``) and ``oscillating`` (``decay``, ``phase``, ``frequency``).
Exactly one of ``c`` (premium rate) and ``loading`` must be present.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .claims import (
    ClaimDistribution,
    Exponential,
    Hyperexponential,
    MatrixExponential,
    RiskModel,
    oscillating_density,
)
from .errors import ValidationError

__all__ = ["ModelConfig", "build_claims", "load_config"]

_CLAIM_FIELDS = {
    "exponential": ({"rate"}, set()),
    "hyperexponential": ({"rates"}, {"weights", "density_coefficients"}),
    "matrix_exponential": ({"beta", "B"}, set()),
    "oscillating": (set(), {"decay", "phase", "frequency"}),
}


def _float_list(values, name):
    try:
        return [float(v) for v in values]
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name} must be a list of numbers") from exc


def _normalize_claims(spec: dict) -> dict:
    if not isinstance(spec, dict) or "type" not in spec:
        raise ValidationError("claims must be an object with a 'type' field")
    kind = spec["type"]
    if kind not in _CLAIM_FIELDS:
        raise ValidationError(f"unknown claim type {kind!r}; expected one of {sorted(_CLAIM_FIELDS)}")
    required, optional = _CLAIM_FIELDS[kind]
    keys = set(spec) - {"type"}
    missing = required - keys
    unknown = keys - required - optional
    if missing or unknown:
        raise ValidationError(f"claims[{kind}]: missing {sorted(missing)}, unknown {sorted(unknown)}")
    out: dict = {"type": kind}
    if kind == "exponential":
        out["rate"] = float(spec["rate"])
    elif kind == "hyperexponential":
        present = [k for k in ("weights", "density_coefficients") if k in spec]
        if len(present) != 1:
            raise ValidationError("hyperexponential needs exactly one of weights, density_coefficients")
        out[present[0]] = _float_list(spec[present[0]], present[0])
        out["rates"] = _float_list(spec["rates"], "rates")
    elif kind == "matrix_exponential":
        out["beta"] = _float_list(spec["beta"], "beta")
        out["B"] = [_float_list(row, "B") for row in spec["B"]]
    else:
        for key, default in (("decay", 1.0), ("phase", 2.0), ("frequency", 20.0)):
            out[key] = float(spec.get(key, default))
    return out


def build_claims(spec: dict) -> ClaimDistribution:
    spec = _normalize_claims(spec)
    kind = spec["type"]
    if kind == "exponential":
        return Exponential(spec["rate"])
    if kind == "hyperexponential":
        if "weights" in spec:
            return Hyperexponential(tuple(spec["weights"]), tuple(spec["rates"]))
        return Hyperexponential.from_density_coefficients(spec["density_coefficients"], spec["rates"])
    if kind == "matrix_exponential":
        return MatrixExponential(spec["beta"], spec["B"])
    return oscillating_density(spec["decay"], spec["phase"], spec["frequency"])


@dataclass(frozen=True)
class ModelConfig:
    claims: dict
    lam: float
    c: float | None = None
    loading: float | None = None
    diffusion: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "claims", _normalize_claims(self.claims))
        if (self.c is None) == (self.loading is None):
            raise ValidationError("specify exactly one of 'c' (premium) and 'loading'")
        object.__setattr__(self, "lam", float(self.lam))
        if self.c is not None:
            object.__setattr__(self, "c", float(self.c))
        if self.loading is not None:
            object.__setattr__(self, "loading", float(self.loading))
        object.__setattr__(self, "diffusion", float(self.diffusion))

    @classmethod
    def from_dict(cls, data: dict) -> "ModelConfig":
        if not isinstance(data, dict):
            raise ValidationError("model configuration must be a JSON object")
        allowed = {"claims", "lam", "c", "loading", "diffusion"}
        unknown = set(data) - allowed
        if unknown:
            raise ValidationError(f"unknown configuration keys: {sorted(unknown)}")
        if "claims" not in data or "lam" not in data:
            raise ValidationError("configuration needs 'claims' and 'lam'")
        return cls(
            claims=data["claims"],
            lam=data["lam"],
            c=data.get("c"),
            loading=data.get("loading"),
            diffusion=data.get("diffusion", 0.0),
        )

    @classmethod
    def from_json(cls, text: str) -> "ModelConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed JSON configuration: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        out = {"claims": dict(self.claims), "lam": self.lam}
        if self.c is not None:
            out["c"] = self.c
        else:
            out["loading"] = self.loading
        if self.diffusion:
            out["diffusion"] = self.diffusion
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def build(self) -> RiskModel:
        claims = build_claims(self.claims)
        if self.c is not None:
            return RiskModel(self.c, self.lam, claims, self.diffusion)
        return RiskModel.from_loading(claims, self.lam, self.loading, self.diffusion)


def load_config(path: str | Path) -> ModelConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read configuration {path}: {exc}") from exc
    return ModelConfig.from_json(text)
