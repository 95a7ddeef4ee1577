"""Parameter validation and Janowski Moebius-disk geometry.

The image of the unit disk under ``w = (1 + X z) / (1 + Y z)`` with
``-1 <= Y < X <= 1`` is a disk when ``Y > -1`` and the half-plane
``Re w > (1 - X) / 2`` when ``Y = -1``.  Everything in this module is a pure
function of immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

DEFAULT_CHECK_RADIUS = 1.0 - 1e-3
DEFAULT_CIRCLE_SAMPLES = 4096
IDENTITY_TOL = 1e-9
SWEEP_TOL = 1e-6


class ParameterError(ValueError):
    """Raised when a parameter tuple lies outside the admissible domain."""


@dataclass(frozen=True)
class Parameters:
    """One lemma instance ``(A, B, D, E, alpha, lambda, n, mu)``.

    ``mu`` is the fixed initial coefficient of ``p``; ``mu_prime`` is always
    derived as ``2 mu / (A - B)`` and never stored separately.
    """

    A: float
    B: float
    D: float
    E: float
    alpha: float = 1.0
    lam: float = 1.0
    n: int = 1
    mu: float = 1.0

    def __post_init__(self):
        for name in ("A", "B", "D", "E"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < -1.0 or v > 1.0:
                raise ParameterError(f"{name} must lie in [-1, 1], got {v!r}")
        if not self.B < self.A:
            raise ParameterError("B must be strictly less than A")
        if not self.E < self.D:
            raise ParameterError("E must be strictly less than D")
        if not (np.isfinite(self.alpha) and np.isfinite(self.lam)):
            raise ParameterError("alpha and lambda must be finite")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not self.mu > 0:
            raise ParameterError("mu must be positive")
        if self.mu > self.A - self.B:
            raise ParameterError(
                f"mu must not exceed A - B = {self.A - self.B!r}, got {self.mu!r}")

    @property
    def mu_prime(self) -> float:
        return 2.0 * self.mu / (self.A - self.B)

    def replace(self, **changes) -> "Parameters":
        fields = self.as_dict()
        fields.update(changes)
        return Parameters(**fields)

    def as_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "D": self.D, "E": self.E,
                "alpha": self.alpha, "lam": self.lam, "n": self.n, "mu": self.mu}

    @classmethod
    def from_mu_prime(cls, A, B, D, E, alpha=1.0, lam=1.0, n=1, mu_prime=2.0):
        """Build parameters from ``mu'`` instead of ``mu``.

        ``mu' = 2`` maps to ``mu = A - B`` exactly so the classical reduction
        (``G = 4n``, ``H = 4(n - 1)``) is not disturbed by rounding.
        """
        mu = (A - B) if mu_prime == 2.0 else mu_prime * (A - B) / 2.0
        return cls(A, B, D, E, alpha, lam, n, mu)


def validate_params(raw) -> Parameters:
    """Validate a raw tuple ``(A, B, D, E, alpha, lambda, n, mu)`` or a mapping."""
    if isinstance(raw, Parameters):
        return raw
    if isinstance(raw, dict):
        data = dict(raw)
        if "lambda" in data:
            data["lam"] = data.pop("lambda")
        return Parameters(**data)
    raw = tuple(raw)
    if len(raw) != 8:
        raise ParameterError(f"expected 8 values (A,B,D,E,alpha,lambda,n,mu), got {len(raw)}")
    A, B, D, E, alpha, lam, n, mu = raw
    return Parameters(float(A), float(B), float(D), float(E),
                      float(alpha), float(lam), n, float(mu))


class Binding(Enum):
    STARLIKE_QUOTIENT = "starlike_quotient"  # p = z f'/f, mu = n b
    DERIVATIVE = "derivative"                # p = f',      mu = (n + 1) b


@dataclass(frozen=True)
class FunctionFamily:
    """The class ``A_{n,b}`` together with how ``p`` is built from ``f``."""

    n: int
    b: float
    binding: Binding = Binding.STARLIKE_QUOTIENT

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ParameterError("n must be a positive integer")
        if self.b < 0:
            raise ParameterError("b must be nonnegative")

    @property
    def mu(self) -> float:
        if self.binding is Binding.STARLIKE_QUOTIENT:
            return self.n * self.b
        return (self.n + 1) * self.b

    def parameters(self, A, B, D, E, alpha=1.0, lam=1.0) -> Parameters:
        return Parameters(A, B, D, E, alpha, lam, self.n, self.mu)


@dataclass(frozen=True)
class DiskOrHalfPlane:
    """Either the open disk ``|w - center| < radius`` or ``Re w > boundary_re``."""

    kind: str
    center: complex = 0j
    radius: float = 0.0
    boundary_re: float = 0.0

    def __post_init__(self):
        if self.kind not in ("disk", "halfplane"):
            raise ValueError(f"unknown region kind {self.kind!r}")
        if self.kind == "disk" and not self.radius > 0:
            raise ValueError("disk radius must be positive")

    @classmethod
    def disk(cls, center, radius) -> "DiskOrHalfPlane":
        return cls("disk", complex(center), float(radius))

    @classmethod
    def halfplane(cls, boundary_re) -> "DiskOrHalfPlane":
        return cls("halfplane", boundary_re=float(boundary_re))

    @property
    def is_disk(self) -> bool:
        return self.kind == "disk"


def janowski_image(numer_coeff: float, denom_coeff: float) -> DiskOrHalfPlane:
    """Image of the unit disk under ``(1 + X z) / (1 + Y z)``."""
    X, Y = float(numer_coeff), float(denom_coeff)
    if not -1.0 <= Y < X <= 1.0:
        raise ParameterError(f"need -1 <= Y < X <= 1, got X={X!r}, Y={Y!r}")
    if Y == -1.0:
        return DiskOrHalfPlane.halfplane((1.0 - X) / 2.0)
    den = (1.0 - Y) * (1.0 + Y)  # no cancellation when |Y| is near 1
    return DiskOrHalfPlane.disk((1.0 - X * Y) / den, (X - Y) / den)


def region_contains(region: DiskOrHalfPlane, w):
    """Signed margin of ``w`` inside ``region``; positive means strictly inside.

    Vectorised over ``w``.
    """
    w = np.asarray(w)
    if region.is_disk:
        out = region.radius - np.abs(w - region.center)
    else:
        out = np.real(w) - region.boundary_re
    return float(out) if out.ndim == 0 else out


def region_inclusion_margin(outer: DiskOrHalfPlane, inner: DiskOrHalfPlane) -> float:
    """How far ``inner`` sits inside ``outer``; ``>= 0`` means contained."""
    if outer.is_disk and inner.is_disk:
        return outer.radius - inner.radius - abs(outer.center - inner.center)
    if not outer.is_disk and not inner.is_disk:
        return inner.boundary_re - outer.boundary_re
    if not outer.is_disk and inner.is_disk:
        return (inner.center.real - inner.radius) - outer.boundary_re
    return -np.inf  # a half-plane never fits in a disk


@dataclass(frozen=True)
class SubordinationVerdict:
    holds: bool
    worst_margin: float
    worst_point: complex


def circle(r: float = DEFAULT_CHECK_RADIUS, samples: int = DEFAULT_CIRCLE_SAMPLES) -> np.ndarray:
    """Equispaced points on ``|z| = r`` starting at ``z = r``."""
    theta = 2.0 * np.pi * np.arange(samples) / samples
    return r * np.exp(1j * theta)


def is_subordinate_numeric(samples: Sequence[complex], region: DiskOrHalfPlane,
                           tol: float = SWEEP_TOL,
                           points: Optional[Sequence[complex]] = None) -> SubordinationVerdict:
    """Boundary-circle containment test for subordination to a Moebius target.

    ``samples`` are values ``g(z)`` on a circle ``|z| = r``; for a convex target
    the maximum principle reduces containment of ``g(|z| <= r)`` to the circle.
    ``points`` optionally gives the ``z`` locations so the verdict can report
    where the worst margin occurs (otherwise the worst ``g`` value is reported).
    A negative ``tol`` demands a strictly positive margin.
    """
    values = np.asarray(samples, dtype=complex).ravel()
    if values.size == 0:
        raise ValueError("empty sample list")
    margins = region_contains(region, values)
    margins = np.atleast_1d(margins)
    i = int(np.argmin(margins))
    worst = float(margins[i])
    where = complex(np.asarray(points).ravel()[i]) if points is not None else complex(values[i])
    return SubordinationVerdict(bool(worst > -tol), worst, where)
