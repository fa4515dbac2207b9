"""System configuration and dB/linear conversions shared by every module."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

_JSON_KEYS = ("n_t", "n_r", "l_t", "rho_db", "seed")


def db_to_linear(x_db: float) -> float:
    """Convert a dB value to linear scale, 10**(x/10)."""
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    """Convert a positive linear value to dB."""
    if x <= 0:
        raise ValueError(f"linear value must be positive, got {x}")
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class SystemConfig:
    """Antenna counts, selection size, SNR and seed for one simulated link.

    `rho` is the average per-receive-antenna SNR in linear units; dB only
    appears at the CLI/JSON boundary.  The derived sizes `l = min(l_t, n_r)`
    and `m = max(l_t, n_r)` are fixed at validation time and used by all
    closed forms.  Instances are immutable and safe to share across threads.
    """

    n_t: int
    n_r: int
    l_t: int
    rho: float = 1.0
    seed: int = 0
    l: int = field(init=False)
    m: int = field(init=False)

    def __post_init__(self) -> None:
        for name in ("n_t", "n_r", "l_t", "seed"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"{name} must be an integer, got {v!r}")
        if self.n_t < 1:
            raise ValueError(f"n_t must be >= 1, got {self.n_t}")
        if self.n_r < 1:
            raise ValueError(f"n_r must be >= 1, got {self.n_r}")
        if self.l_t < 1:
            raise ValueError(f"l_t must be >= 1, got {self.l_t}")
        if self.l_t > self.n_t:
            raise ValueError(f"l_t > n_t: cannot select {self.l_t} of {self.n_t} antennas")
        if not (self.seed >= 0 and self.seed < 2**64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        rho = float(self.rho)
        if not math.isfinite(rho) or rho <= 0:
            raise ValueError(f"rho must be a positive finite number, got {self.rho}")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "l", min(self.l_t, self.n_r))
        object.__setattr__(self, "m", max(self.l_t, self.n_r))

    @property
    def rho_db(self) -> float:
        return linear_to_db(self.rho)

    def updated(self, **changes) -> "SystemConfig":
        """Copy with some fields replaced; the copy is re-validated."""
        return replace(self, **changes)

    @classmethod
    def from_dict(cls, data: dict) -> "SystemConfig":
        """Build from a JSON-style dict with keys n_t, n_r, l_t, rho_db, seed.

        Unknown keys are rejected so that typos do not silently fall back to
        defaults.
        """
        unknown = set(data) - set(_JSON_KEYS)
        if unknown:
            raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
        missing = {"n_t", "n_r", "l_t"} - set(data)
        if missing:
            raise ValueError(f"missing configuration keys: {sorted(missing)}")
        return cls(
            n_t=data["n_t"],
            n_r=data["n_r"],
            l_t=data["l_t"],
            rho=db_to_linear(float(data.get("rho_db", 0.0))),
            seed=data.get("seed", 0),
        )

    @classmethod
    def from_json(cls, path: str) -> "SystemConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        """External JSON form (SNR in dB)."""
        return {
            "n_t": self.n_t,
            "n_r": self.n_r,
            "l_t": self.l_t,
            "rho_db": self.rho_db,
            "seed": self.seed,
        }
