"""Differential operators and their transformed psi(r, s) coefficient systems.

Each operator ``Phi`` acts on ``p`` through the pointwise values ``p(z)`` and
``z p'(z)``.  Writing ``p`` in terms of ``q = ((A-1) + (1-B) p) / ((A+1) - (1+B) p)``
turns the hypothesis ``Phi(p) < (1+Dz)/(1+Ez)`` into ``Re psi(q, z q') > 0`` for
a rational ``psi``.  On the test set ``(r, s) = (i rho, sigma)`` the numerator
and denominator of ``psi`` are

    a + b sigma + c rho^2 + i d rho      (numerator)
    e + f sigma + g rho^2 + i h rho      (denominator, eight-coefficient form)

with the five-coefficient form sharing ``a, c, d`` between the two.

``coeff_system(..., source="printed")`` returns the coefficients exactly as
published; ``derived_coeff_system`` recomputes them by composing the Moebius
maps numerically and is kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .params import Parameters

POLE_TOL = 1e-14


class OperatorPoleError(ZeroDivisionError):
    """Raised when an operator or psi is evaluated at a pole."""


class OperatorKind(Enum):
    LINEAR_DERIV = "linear"       # 1 + alpha z p'
    INV_SQUARE = "invsq"          # 1 + z p' / p^2
    LOG_DERIV = "logderiv"        # 1 + alpha z p' / p
    SQUARE_PLUS_DERIV = "sqderiv"  # alpha p^2 + lambda z p'
    MIXED_QUADRATIC = "mixed"     # alpha p + (1 - alpha) p^2 + lambda z p'
    CONVEX_COMBO = "convex"       # (1 - alpha) p + alpha (1 + z p' / p)

    @property
    def lemma(self) -> str:
        return LEMMA_OF_KIND[self]

    @classmethod
    def from_lemma(cls, lemma: str) -> "OperatorKind":
        return KIND_OF_LEMMA[str(lemma)]


LEMMA_OF_KIND = {
    OperatorKind.LINEAR_DERIV: "2.1",
    OperatorKind.INV_SQUARE: "2.2",
    OperatorKind.LOG_DERIV: "2.3",
    OperatorKind.SQUARE_PLUS_DERIV: "2.4",
    OperatorKind.MIXED_QUADRATIC: "2.5",
    OperatorKind.CONVEX_COMBO: "2.6",
}
KIND_OF_LEMMA = {v: k for k, v in LEMMA_OF_KIND.items()}
LEMMAS = tuple(KIND_OF_LEMMA)


@dataclass(frozen=True)
class CoeffSystem:
    a: float
    b: float
    c: float
    d: float
    e: float
    f: Optional[float] = None
    g: Optional[float] = None
    h: Optional[float] = None

    @property
    def form(self) -> str:
        return "five" if self.f is None else "eight"

    def as_eight(self) -> "CoeffSystem":
        """Rewrite a five-form system with an explicit denominator."""
        if self.form == "eight":
            return self
        return CoeffSystem(self.a, self.b, self.c, self.d, self.a, self.e, self.c, self.d)

    def denominator_coeffs(self):
        s = self.as_eight()
        return s.e, s.f, s.g, s.h

    def as_tuple(self) -> tuple:
        if self.form == "five":
            return (self.a, self.b, self.c, self.d, self.e)
        return (self.a, self.b, self.c, self.d, self.e, self.f, self.g, self.h)

    def as_dict(self) -> dict:
        names = "abcde" if self.form == "five" else "abcdefgh"
        return dict(zip(names, self.as_tuple()))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.as_tuple())


@dataclass(frozen=True)
class PsiPoint:
    rho: float
    sigma: float


def _pole(x) -> bool:
    return bool(np.any(np.abs(x) < POLE_TOL))


def apply_operator(kind: OperatorKind, params: Parameters, p_value, zp_prime):
    """Evaluate ``Phi(p)(z)`` from pointwise ``p(z)`` and ``z p'(z)``."""
    p = np.asarray(p_value, dtype=complex)
    zp = np.asarray(zp_prime, dtype=complex)
    al, lam = params.alpha, params.lam
    if kind in (OperatorKind.INV_SQUARE, OperatorKind.LOG_DERIV, OperatorKind.CONVEX_COMBO) and _pole(p):
        raise OperatorPoleError("operator pole at sample")
    if kind is OperatorKind.LINEAR_DERIV:
        out = 1 + al * zp
    elif kind is OperatorKind.INV_SQUARE:
        out = 1 + zp / p**2
    elif kind is OperatorKind.LOG_DERIV:
        out = 1 + al * zp / p
    elif kind is OperatorKind.SQUARE_PLUS_DERIV:
        out = al * p**2 + lam * zp
    elif kind is OperatorKind.MIXED_QUADRATIC:
        out = al * p + (1 - al) * p**2 + lam * zp
    elif kind is OperatorKind.CONVEX_COMBO:
        out = (1 - al) * p + al * (1 + zp / p)
    else:  # pragma: no cover
        raise ValueError(kind)
    return complex(out) if out.ndim == 0 else out


def inv_square_substitution(params: Parameters) -> Parameters:
    """``p -> 1/p, A -> -B, B -> -A, alpha = -1``: maps the InvSquare case onto LinearDeriv."""
    return params.replace(A=-params.B, B=-params.A, alpha=-1.0)


def _printed(kind: OperatorKind, P: Parameters) -> CoeffSystem:
    A, B, D, E, al, lam = P.A, P.B, P.D, P.E, P.alpha, P.lam
    if kind is OperatorKind.LINEAR_DERIV:
        return CoeffSystem(
            a=(D - E) * (1 - B) ** 2,
            b=2 * al * (1 - E) * (A - B),
            c=-(D - E) * (1 + B) ** 2,
            d=2 * (D - E) * (1 - B * B),
            e=-2 * al * (1 + E) * (A - B))
    if kind is OperatorKind.LOG_DERIV:
        return CoeffSystem(
            a=(D - E) * (1 - A) * (1 - B),
            b=2 * al * (1 - E) * (A - B),
            c=-(D - E) * (1 + A) * (1 + B),
            d=2 * (D - E) * (1 - A * B),
            e=-2 * al * (1 + E) * (A - B))
    if kind is OperatorKind.SQUARE_PLUS_DERIV:
        return CoeffSystem(
            a=(D - 1) * (1 - B) ** 2 + al * (1 - E) * (1 - A) ** 2,
            b=2 * lam * (1 - E) * (A - B),
            c=-(D - 1) * (1 + B) ** 2 - al * (1 - E) * (1 + A) ** 2,
            d=2 * (D - 1) * (1 - B * B) + 2 * al * (1 - E) * (1 - A * A),
            e=(D - 1) * (1 - B) ** 2 - al * (1 + E) * (1 - A) ** 2,
            f=-2 * lam * (1 + E) * (A - B),
            g=-(D - 1) * (1 + B) ** 2 + al * (1 + E) * (1 + A) ** 2,
            h=2 * (D - 1) * (1 - B * B) - 2 * al * (1 + E) * (1 - A * A))
    if kind is OperatorKind.MIXED_QUADRATIC:
        return CoeffSystem(
            a=(D - 1) * (1 - B) ** 2 + al * (1 - E) * (1 - A) * (1 - B) + (1 - E) * (1 - al) * (1 - A) ** 2,
            b=2 * lam * (1 - E) * (A - B),
            c=-(D - 1) * (1 + B) ** 2 - al * (1 - E) * (1 + A) * (1 + B) - (1 - al) * (1 - E) * (1 + A) ** 2,
            d=2 * (D - 1) * (1 - B * B) + 2 * al * (1 - E) * (1 - A * B) + 2 * (1 - E) * (1 - al) * (1 - A * A),
            e=(D - 1) * (1 - B) ** 2 - al * (1 + E) * (1 - A) * (1 - B) - (1 + E) * (1 - al) * (1 - A) ** 2,
            f=-2 * lam * (1 + E) * (A - B),
            g=-(D - 1) * (1 + B) ** 2 + al * (1 + E) * (1 + A) * (1 + B) + (1 - al) * (1 + E) * (1 + A) ** 2,
            h=2 * (D - 1) * (1 - B * B) - 2 * al * (1 + E) * (1 - A * B) - 2 * (1 + E) * (1 - al) * (1 - A * A))
    if kind is OperatorKind.CONVEX_COMBO:
        up, dn = (D - 1) + al * (1 - E), (D - 1) - al * (1 + E)
        return CoeffSystem(
            a=(1 - A) * (1 - B) * up + (1 - al) * (1 - E) * (1 - A) ** 2,
            b=2 * al * (1 - E) * (A - B),
            c=-(1 + A) * (1 + B) * up - (1 - al) * (1 - E) * (1 + A) ** 2,
            d=2 * (1 - A * B) * up + 2 * (1 - al) * (1 - E) * (1 - A * A),
            e=(1 - A) * (1 - B) * dn - (1 - al) * (1 + E) * (1 - A) ** 2,
            f=-2 * al * (1 + E) * (A - B),
            g=-(1 + A) * (1 + B) * dn + (1 - al) * (1 + E) * (1 + A) ** 2,
            h=2 * (1 - A * B) * dn - 2 * (1 - al) * (1 + E) * (1 - A * A))
    raise ValueError(kind)


def coeff_system(kind: OperatorKind, params: Parameters, source: str = "printed") -> CoeffSystem:
    """Coefficient system of ``psi`` for ``kind``.

    InvSquare is served by the LinearDeriv system after the reciprocal
    substitution.  ``source="derived"`` delegates to :func:`derived_coeff_system`.
    """
    if source == "derived":
        return derived_coeff_system(kind, params)
    if source != "printed":
        raise ValueError(f"unknown coefficient source {source!r}")
    if kind is OperatorKind.INV_SQUARE:
        return _printed(OperatorKind.LINEAR_DERIV, inv_square_substitution(params))
    return _printed(kind, params)


# -- composition route ------------------------------------------------------

def p_from_q(q, A, B):
    """Inverse of the ``p -> q`` transform: ``p = ((1+A) q + (1-A)) / ((1+B) q + (1-B))``."""
    return ((1 + A) * q + (1 - A)) / ((1 + B) * q + (1 - B))


def transform_q(p, A, B):
    """``q = ((A-1) + (1-B) p) / ((A+1) - (1+B) p)``; ``Re q > 0`` iff ``p`` lies in the Janowski image."""
    p = np.asarray(p, dtype=complex)
    out = ((A - 1) + (1 - B) * p) / ((A + 1) - (1 + B) * p)
    return complex(out) if out.ndim == 0 else out


def _clearing_factor(kind, A, B, r):
    S = (1 + B) * r + (1 - B)
    T = (1 + A) * r + (1 - A)
    if kind in (OperatorKind.LOG_DERIV, OperatorKind.CONVEX_COMBO):
        return S * T
    return S * S


def composed_psi_parts(kind: OperatorKind, params: Parameters, r, s):
    """Numerator and denominator of psi(r, s) built by composing the maps.

    ``w = Phi(p)`` with ``p = p(q)`` and ``z p' = 2 (A-B) s / ((1+B) r + (1-B))^2``,
    then ``Re [((D-1) + (1-E) w) / ((D+1) - (1+E) w)] > 0`` is the disk condition
    for ``w``; both parts are multiplied by the factor that clears ``p``'s
    denominators.
    """
    if kind is OperatorKind.INV_SQUARE:
        return composed_psi_parts(OperatorKind.LINEAR_DERIV, inv_square_substitution(params), r, s)
    A, B, D, E = params.A, params.B, params.D, params.E
    r = np.asarray(r, dtype=complex)
    s = np.asarray(s, dtype=complex)
    S = (1 + B) * r + (1 - B)
    p = p_from_q(r, A, B)
    zp = 2 * (A - B) * s / S**2
    w = apply_operator(kind, params, p, zp)
    m = _clearing_factor(kind, A, B, r)
    return ((D - 1) + (1 - E) * w) * m, ((D + 1) - (1 + E) * w) * m


_FIT_RHO = np.array([0.5, 0.75, 1.0, 1.25, 0.5, 1.0])
_FIT_SIGMA = np.array([0.0, 0.5, -0.5, 1.0, 1.0, 0.0])


def derived_coeff_system(kind: OperatorKind, params: Parameters) -> CoeffSystem:
    """Coefficients read off :func:`composed_psi_parts` by point evaluation.

    At ``r = i rho`` both parts are ``x0 + x1 sigma + x2 rho^2 + i x3 rho``;
    they are fitted by least squares on points with ``rho != 0`` (``p`` may
    vanish at ``r = 0``).  The result is returned in five-coefficient form for
    the operators whose numerator and denominator share ``a, c, d``.
    """
    rho = _FIT_RHO
    sigma = _FIT_SIGMA
    parts = composed_psi_parts(kind, params, 1j * rho, sigma)
    design = np.column_stack([np.ones_like(rho), sigma, rho * rho])

    def read(v):
        x0, x1, x2 = np.linalg.lstsq(design, v.real, rcond=None)[0]
        x3 = float(np.mean(v.imag / rho))
        return float(x0), float(x1), float(x2), x3

    a, b, c, d = read(parts[0])
    e, f, g, h = read(parts[1])
    five_kinds = (OperatorKind.LINEAR_DERIV, OperatorKind.INV_SQUARE, OperatorKind.LOG_DERIV)
    if kind in five_kinds:
        return CoeffSystem(a, b, c, d, f)
    return CoeffSystem(a, b, c, d, e, f, g, h)


# -- psi on the test set ----------------------------------------------------

def psi_parts(coeffs: CoeffSystem, rho, sigma):
    rho = np.asarray(rho, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    e, f, g, h = coeffs.denominator_coeffs()
    num = coeffs.a + coeffs.b * sigma + coeffs.c * rho**2 + 1j * coeffs.d * rho
    den = e + f * sigma + g * rho**2 + 1j * h * rho
    return num, den


def psi_value(coeffs: CoeffSystem, point: PsiPoint) -> complex:
    num, den = psi_parts(coeffs, point.rho, point.sigma)
    if abs(den) < POLE_TOL:
        raise OperatorPoleError(f"pole on test set at rho={point.rho!r}, sigma={point.sigma!r}")
    return complex(num / den)


def re_psi_quartic(coeffs: CoeffSystem, point_or_rho, sigma=None):
    """Real part of ``num * conj(den)``: the sign of ``Re psi`` without the division.

    Accepts a :class:`PsiPoint` or vectorised ``(rho, sigma)`` arrays.
    """
    if sigma is None:
        rho, sigma = point_or_rho.rho, point_or_rho.sigma
    else:
        rho = point_or_rho
    rho = np.asarray(rho, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    t = rho * rho
    a, b, c, d = coeffs.a, coeffs.b, coeffs.c, coeffs.d
    if coeffs.form == "five":
        e = coeffs.e
        out = (a * a + a * (b + e) * sigma + b * e * sigma**2
               + (2 * a * c + d * d + c * (b + e) * sigma) * t + c * c * t * t)
    else:
        e, f, g, h = coeffs.e, coeffs.f, coeffs.g, coeffs.h
        out = (a * e + (a * f + b * e) * sigma
               + ((a * g + c * e + h * d) + (b * g + c * f) * sigma) * t
               + c * g * t * t + f * b * sigma**2)
    return float(out) if out.ndim == 0 else out


def quartic_scale(coeffs: CoeffSystem, rho, sigma):
    """Sum of monomial magnitudes of :func:`re_psi_quartic`; used to normalise it."""
    rho = np.abs(np.asarray(rho, dtype=float))
    sigma = np.abs(np.asarray(sigma, dtype=float))
    t = rho * rho
    s = coeffs.as_eight()
    a, b, c, d, e, f, g, h = (abs(v) for v in s.as_tuple())
    return (a * e + (a * f + b * e) * sigma + (a * g + c * e + h * d) * t
            + (b * g + c * f) * sigma * t + c * g * t * t + f * b * sigma**2)
