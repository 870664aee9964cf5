"""Named bound values with explicit direction, method, and diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class BoundReport:
    """A bound in bits on a named target quantity.

    direction says which side of the target the value sits on (upper/lower)
    or 'exact' for closed forms; method is one of formula|sdp|fixed-sigma;
    relaxation marks values computed over a relaxed feasible set ("ppt").
    """

    bound: str
    targets: str
    direction: str
    bits: float
    method: str
    relaxation: str | None = None
    certificate: np.ndarray | None = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.direction not in ("upper", "lower", "exact"):
            raise ValueError(f"bad direction {self.direction!r}")
        if self.method not in ("formula", "sdp", "fixed-sigma"):
            raise ValueError(f"bad method {self.method!r}")
        if not math.isinf(self.bits) and self.bits < -1e-9:
            raise ValueError(f"bound value {self.bits} is negative")

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "targets": self.targets,
            "direction": self.direction,
            "bits": None if math.isinf(self.bits) else self.bits,
            "method": self.method,
            "relaxation": self.relaxation,
            "diagnostics": self.diagnostics,
        }
