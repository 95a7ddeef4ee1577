"""Concrete analytic test functions and the implication falsification harness.

A lemma instance says: if ``p`` in ``H_{mu,n}`` has ``Phi(p)`` subordinate to
``(1+Dz)/(1+Ez)`` then ``p`` is subordinate to ``(1+Az)/(1+Bz)``.  The
harness samples polynomial ``p`` with the fixed coefficient ``c_n = mu`` and
random higher terms, checks both subordinations on circles, and classifies
the outcome.

A case is a COUNTEREXAMPLE only when the hypothesis holds on ``|z| = 1-1e-3``
with margin above ``1e-4`` and the conclusion fails on ``|z| = 0.9`` with
margin below ``-1e-4``; both targets are convex so these verdicts only get
more decisive as the radius moves the other way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .operators import OperatorKind, OperatorPoleError, apply_operator
from .params import (DEFAULT_CHECK_RADIUS, DEFAULT_CIRCLE_SAMPLES, SWEEP_TOL, Parameters,
                     SubordinationVerdict, circle, is_subordinate_numeric, janowski_image)

MAX_DEGREE = 16
MIN_MODULUS = 0.05
HYPOTHESIS_MARGIN = 1e-4
CHECK_RADII = (0.9, DEFAULT_CHECK_RADIUS)
NORMALISATION_TOL = 1e-12
SCREEN_SAMPLES = 1024
CONFIRM_SAMPLES = 16384


class SamplingError(RuntimeError):
    """Rejection sampling ran out of attempts."""


class CoefficientFileError(ValueError):
    pass


@dataclass(frozen=True)
class AnalyticSample:
    """Power-series representative ``sum c_k z^k``.

    ``family`` is ``"p"`` for members of ``H_{mu,n}`` (``c_0 = 1``) and ``"f"``
    for normalised ``f`` in ``A_{n,b}`` (``c_0 = 0``, ``c_1 = 1``).  An optional
    ``closed_form`` returning ``(g(z), z g'(z))`` overrides the polynomial
    when a truncation would be too coarse near the boundary (the Koebe
    function, say).
    """

    coefficients: Tuple[complex, ...]
    family: str
    n: int
    closed_form: Optional[Callable] = field(default=None, compare=False, repr=False)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def coeffs(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=complex)

    def evaluate(self, z):
        """``(g(z), z g'(z))`` at the points ``z``."""
        z = np.asarray(z, dtype=complex)
        if self.closed_form is not None:
            return self.closed_form(z)
        c = self.coeffs
        k = np.arange(c.size)
        return npoly.polyval(z, c), npoly.polyval(z, k * c)


def _sample(coeffs, family, n) -> AnalyticSample:
    return AnalyticSample(tuple(complex(v) for v in coeffs), family, int(n))


def p_sample(coeffs: Sequence[complex], n: int, mu: Optional[float] = None) -> AnalyticSample:
    """Wrap explicit coefficients as a member of ``H_{mu,n}`` after checking the shape."""
    c = np.asarray(coeffs, dtype=complex)
    if c.size <= n or abs(c[0] - 1) > 1e-12 or np.any(np.abs(c[1:n]) > 1e-12):
        raise ValueError("p must be 1 + mu z^n + higher terms")
    if mu is not None and abs(c[n] - mu) > 1e-12:
        raise ValueError(f"coefficient of z^{n} must equal mu={mu!r}")
    return _sample(c, "p", n)


def normalized_f(n: int, b: float, higher: Sequence[complex] = ()) -> AnalyticSample:
    """``f(z) = z + b z^{n+1} + higher[0] z^{n+2} + ...`` in ``A_{n,b}``."""
    if b < 0:
        raise ValueError("b must be nonnegative")
    c = np.zeros(n + 2 + len(higher), dtype=complex)
    c[1] = 1
    c[n + 1] = b
    c[n + 2:] = higher
    return _sample(c, "f", n)


def f_from_coefficients(coeffs: Sequence[complex], n: Optional[int] = None) -> AnalyticSample:
    """Normalised ``f`` from raw coefficients ``c_0 = 0, c_1 = 1, ...``.

    ``n`` defaults to one less than the index of the first nonzero
    coefficient after ``c_1`` (1 when there is none).
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.size < 2 or abs(c[0]) > 1e-12 or abs(c[1] - 1) > 1e-12:
        raise ValueError("f must start 0, 1")
    if n is None:
        nz = np.flatnonzero(np.abs(c[2:]) > 0)
        n = int(nz[0]) + 1 if nz.size else 1
    return _sample(c, "f", n)


def koebe() -> AnalyticSample:
    """``z/(1-z)^2`` with its exact values; coefficients are kept to degree 16."""
    def closed(z):
        return z / (1 - z) ** 2, z * (1 + z) / (1 - z) ** 3
    c = np.arange(MAX_DEGREE + 1, dtype=complex)
    return AnalyticSample(tuple(c), "f", 1, closed)


def mobius_series(A: float, B: float, degree: int) -> np.ndarray:
    """Taylor coefficients of ``(1 + A z)/(1 + B z)``: ``1, (A-B), -B(A-B), B^2(A-B), ...``."""
    k = np.arange(1, degree + 1)
    return np.concatenate([[1.0], (A - B) * (-B) ** (k - 1)])


def series_divide(num: Sequence[complex], den: Sequence[complex], degree: int) -> np.ndarray:
    """Power-series quotient ``num/den`` up to ``z^degree`` (``den[0] != 0``)."""
    num = np.zeros(degree + 1, dtype=complex) + np.pad(
        np.asarray(num, dtype=complex)[:degree + 1], (0, max(0, degree + 1 - len(num))))
    den = np.pad(np.asarray(den, dtype=complex)[:degree + 1], (0, max(0, degree + 1 - len(den))))
    if den[0] == 0:
        raise ZeroDivisionError("series denominator vanishes at the origin")
    out = np.zeros(degree + 1, dtype=complex)
    for j in range(degree + 1):
        out[j] = (num[j] - np.dot(den[1:j + 1], out[j - 1::-1][:j])) / den[0]
    return out


def series_to_p_of_f(f: AnalyticSample, degree: int) -> AnalyticSample:
    """Series of ``z f'(z)/f(z)``; its ``z^n`` coefficient is ``n b``."""
    if f.family != "f":
        raise ValueError("expected a normalised f")
    c = f.coeffs
    k = np.arange(c.size)
    # z f' / f = (sum k c_k z^(k-1)) / (f / z)
    q = series_divide((k * c)[1:], c[1:], degree)
    n = f.n
    b = c[n + 1] if c.size > n + 1 else 0
    if degree >= n and abs(q[n] - n * b) > 1e-10:
        raise AssertionError(f"initial coefficient {q[n]!r} differs from n*b = {n * b!r}")
    return _sample(q, "p", n)


def sample_p(n: int, mu: float, degree: int, amplitude: float, seed,
             r_check: float = DEFAULT_CHECK_RADIUS, max_tries: int = 200,
             min_modulus: float = MIN_MODULUS) -> AnalyticSample:
    """Random polynomial ``1 + mu z^n + sum_{k>n} c_k z^k`` with ``|c_k| <= amplitude``.

    Tails are drawn uniformly from the disk of radius ``amplitude`` and
    rejected while ``min |p| < min_modulus`` on the check circle.
    """
    if degree < n:
        raise ValueError("degree must be at least n")
    if degree > MAX_DEGREE:
        raise ValueError(f"degree is capped at {MAX_DEGREE}")
    rng = np.random.default_rng(seed)
    z = circle(r_check, 1024)
    for _ in range(max_tries):
        c = np.zeros(degree + 1, dtype=complex)
        c[0], c[n] = 1.0, mu
        m = degree - n
        if m and amplitude > 0:
            rad = amplitude * np.sqrt(rng.uniform(size=m))
            c[n + 1:] = rad * np.exp(2j * np.pi * rng.uniform(size=m))
        if np.min(np.abs(npoly.polyval(z, c))) >= min_modulus:
            return _sample(c, "p", n)
    raise SamplingError("rejection budget exhausted; lower the amplitude")


class Classification(Enum):
    SUPPORTS = "supports"
    VACUOUS = "vacuous"
    COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class ImplicationCase:
    hypothesis: SubordinationVerdict
    conclusion: SubordinationVerdict
    classification: Classification
    sample: Optional[AnalyticSample] = None

    def as_dict(self) -> dict:
        d = {"classification": self.classification.value,
             "hypothesis": _verdict_dict(self.hypothesis),
             "conclusion": _verdict_dict(self.conclusion)}
        if self.sample is not None:
            d["coefficients"] = [[v.real, v.imag] for v in self.sample.coefficients]
        return d


def _verdict_dict(v: SubordinationVerdict) -> dict:
    return {"holds": v.holds, "worst_margin": v.worst_margin,
            "worst_point": [v.worst_point.real, v.worst_point.imag]}


def test_implication(kind: OperatorKind, params: Parameters, p: AnalyticSample,
                     r_check=CHECK_RADII, samples: int = DEFAULT_CIRCLE_SAMPLES,
                     margin: float = HYPOTHESIS_MARGIN) -> ImplicationCase:
    """Classify one ``p`` for the implication ``Phi(p) < M_{D,E}  =>  p < M_{A,B}``.

    Subordination to a univalent target is ``Phi(p)(0) = 1`` plus image
    containment.  The value at the origin is fixed by the operator (it is
    ``alpha`` for ``alpha p^2 + lambda z p'``), so when it misses 1 the
    hypothesis fails for every ``p`` and the worst point reported is 0.
    """
    r_small, r_big = sorted(r_check)
    z_big = circle(r_big, samples)
    pv, zpv = p.evaluate(z_big)
    if kind in POLE_KINDS and np.min(np.abs(pv)) < 1e-12:
        raise OperatorPoleError("operator pole at sample")
    w = apply_operator(kind, params, pv, zpv)
    hyp = is_subordinate_numeric(w, janowski_image(params.D, params.E), tol=-margin, points=z_big)
    at_origin = complex(apply_operator(kind, params, 1.0, 0.0))
    if abs(at_origin - 1) > NORMALISATION_TOL:
        hyp = SubordinationVerdict(False, -abs(at_origin - 1), 0j)
    z_small = circle(r_small, samples)
    conc = is_subordinate_numeric(p.evaluate(z_small)[0], janowski_image(params.A, params.B),
                                  tol=margin, points=z_small)
    if not hyp.holds:
        cls = Classification.VACUOUS
    elif conc.holds:
        cls = Classification.SUPPORTS
    else:
        cls = Classification.COUNTEREXAMPLE
    return ImplicationCase(hyp, conc, cls, p)


test_implication.__test__ = False  # not a pytest test despite the name


POLE_KINDS = (OperatorKind.INV_SQUARE, OperatorKind.LOG_DERIV, OperatorKind.CONVEX_COMBO)


def _trial_sample(params: Parameters, rng: np.random.Generator, trial: int,
                  min_modulus: float) -> Optional[AnalyticSample]:
    """One random member of ``H_{mu,n}``; the tail family rotates with ``trial``.

    Returns ``None`` when no zero-free sample can be found (``mu`` close to 1
    puts a zero of ``1 + mu z^n`` next to the check circle).
    """
    n, mu = params.n, params.mu
    degree = int(rng.integers(n, MAX_DEGREE + 1))
    style = trial % 4
    if style == 0 or degree == n:
        amp = float(rng.uniform(0, 1)) ** 2 * mu
        try:
            return sample_p(n, mu, degree, amp, rng, max_tries=20, min_modulus=min_modulus)
        except SamplingError:
            return None
    c = np.zeros(degree + 1, dtype=complex)
    c[0], c[n] = 1.0, mu
    if style == 1:
        # geometric tail mu z^n / (1 - omega z), truncated
        omega = np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        c[n + 1:] = mu * omega ** np.arange(1, degree - n + 1)
    elif style == 2:
        # tail along z^n powers: mu z^n / (1 - beta z^n), truncated
        beta = rng.uniform(-1, 1)
        for j in range(2, degree // n + 1):
            c[j * n] = mu * beta ** (j - 1)
    else:
        j = int(rng.integers(n + 1, degree + 1))
        c[j] = rng.uniform(0, mu) * np.exp(2j * np.pi * rng.uniform())
    z = circle(DEFAULT_CHECK_RADIUS, 1024)
    if min_modulus > 0 and np.min(np.abs(npoly.polyval(z, c))) < min_modulus:
        return None
    return _sample(c, "p", n)


@dataclass
class SweepResult:
    counts: dict
    first_counterexample: Optional[ImplicationCase]
    first_counterexample_trial: Optional[int]
    cases: int

    def as_dict(self) -> dict:
        return {"counts": dict(self.counts), "cases": self.cases,
                "first_counterexample_trial": self.first_counterexample_trial,
                "first_counterexample": (self.first_counterexample.as_dict()
                                         if self.first_counterexample else None)}


def implication_sweep(kind: OperatorKind, params: Parameters, trials: int = 200, seed: int = 0,
                      stop_at_first: bool = False, samples: int = SCREEN_SAMPLES) -> SweepResult:
    """Run ``trials`` sampled ``p`` through :func:`test_implication`.

    Every trial draws from its own child of ``SeedSequence(seed)``, so results
    do not depend on evaluation order.  The zero-free rejection on the check
    circle only applies to operators that divide by ``p``.  Cases are
    screened on ``samples`` circle points and any COUNTEREXAMPLE is re-tested
    on ``CONFIRM_SAMPLES`` points before it is counted.
    """
    children = np.random.SeedSequence(seed).spawn(trials)
    counts = {c.value: 0 for c in Classification}
    counts["skipped"] = 0
    floor = MIN_MODULUS if kind in POLE_KINDS else 0.0
    first, first_i, done = None, None, 0
    for i, child in enumerate(children):
        p = _trial_sample(params, np.random.default_rng(child), i, floor)
        if p is None:
            counts["skipped"] += 1
            continue
        try:
            case = test_implication(kind, params, p, samples=samples)
        except OperatorPoleError:
            counts["skipped"] += 1
            continue
        if case.classification is Classification.COUNTEREXAMPLE:
            # screening resolution could miss a dip between samples; confirm densely
            case = test_implication(kind, params, p, samples=CONFIRM_SAMPLES)
        done += 1
        counts[case.classification.value] += 1
        if case.classification is Classification.COUNTEREXAMPLE and first is None:
            first, first_i = case, i
            if stop_at_first:
                break
    return SweepResult(counts, first, first_i, done)


def find_counterexample(kind: OperatorKind, params: Parameters, trials: int = 200,
                        seed: int = 0) -> Optional[ImplicationCase]:
    """First COUNTEREXAMPLE among ``trials`` seeded samples, or ``None``."""
    return implication_sweep(kind, params, trials, seed, stop_at_first=True).first_counterexample


def starlike_membership(f: AnalyticSample, A: float, B: float,
                        r_check: float = DEFAULT_CHECK_RADIUS,
                        samples: int = DEFAULT_CIRCLE_SAMPLES,
                        tol: float = SWEEP_TOL) -> SubordinationVerdict:
    """Numeric test of ``z f'/f < (1 + A z)/(1 + B z)`` on ``|z| = r_check``."""
    z = circle(r_check, samples)
    fv, zfv = f.evaluate(z)
    if np.min(np.abs(fv)) < 1e-14:
        raise ZeroDivisionError("f vanishes on the check circle")
    return is_subordinate_numeric(zfv / fv, janowski_image(A, B), tol=tol, points=z)


def read_coefficient_file(path, family: str = "f", n: Optional[int] = None) -> AnalyticSample:
    """Plain-text coefficients, one ``re im`` pair per line starting at ``c_0``.

    Blank lines and ``#`` comments are ignored.  For ``family="f"`` the file
    must describe a normalised function; ``n`` defaults to the index of the
    first nonzero coefficient after ``c_1``, minus one.
    """
    coeffs: List[complex] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise CoefficientFileError(f"{path}:{lineno}: expected 're im', got {line!r}")
            try:
                coeffs.append(complex(float(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise CoefficientFileError(f"{path}:{lineno}: {exc}") from None
    if not coeffs:
        raise CoefficientFileError(f"{path}: no coefficients")
    c = np.asarray(coeffs)
    if family == "f":
        try:
            return f_from_coefficients(c, n)
        except ValueError as exc:
            raise CoefficientFileError(f"{path}: {exc}") from None
    if family == "p":
        if abs(c[0] - 1) > 1e-12:
            raise CoefficientFileError(f"{path}: p must start with c_0 = 1")
        if n is None:
            nz = np.flatnonzero(np.abs(c[1:]) > 0)
            n = int(nz[0]) + 1 if nz.size else 1
        return _sample(c, "p", n)
    raise ValueError(f"unknown family {family!r}")
