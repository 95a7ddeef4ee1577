"""Brute-force admissibility oracle.

Samples ``Re psi(i rho, sigma)`` over the fixed-coefficient admissibility
region ``sigma <= -(1/2)(n + (2-mu')/(2+mu'))(1 + rho^2)`` and combines the
grid maximum with an analytic check of the behaviour at infinity.  The grid
is a regular lattice in ``(rho, tau)`` with ``sigma = bound(rho) - depth (1 +
rho^2) tau`` plus, optionally, a seeded jittered copy of every lattice point.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .operators import (POLE_TOL, CoeffSystem, OperatorKind, PsiPoint, coeff_system,
                        psi_parts, quartic_scale, re_psi_quartic)
from .params import Parameters

ORACLE_TOL = 1e-9
POLE_FRACTION_LIMIT = 0.01
THREADS_ENV = "JANOWSKI_LAB_THREADS"


class OracleDomainError(RuntimeError):
    """Too many grid points fall on poles of psi."""


@dataclass(frozen=True)
class OracleGrid:
    rho_max: float = 16.0
    rho_steps: int = 513
    sigma_depth: float = 8.0
    sigma_steps: int = 257
    seed: int = 0
    jitter: float = 0.5

    def __post_init__(self):
        if self.rho_steps < 16 or self.sigma_steps < 16:
            raise ValueError("rho_steps and sigma_steps must be at least 16")
        if self.rho_max < 4:
            raise ValueError("rho_max must be at least 4")
        if not self.sigma_depth > 0:
            raise ValueError("sigma_depth must be positive")
        if not 0 <= self.jitter <= 0.5:
            raise ValueError("jitter is a fraction of a cell in [0, 0.5]")

    def refined(self) -> "OracleGrid":
        """Grid with every cell halved; its lattice contains this one's."""
        return OracleGrid(self.rho_max, 2 * self.rho_steps - 1, self.sigma_depth,
                          2 * self.sigma_steps - 1, self.seed, self.jitter)

    def as_dict(self) -> dict:
        return {"rho_max": self.rho_max, "rho_steps": self.rho_steps,
                "sigma_depth": self.sigma_depth, "sigma_steps": self.sigma_steps,
                "seed": self.seed, "jitter": self.jitter}


@dataclass(frozen=True)
class OracleReport:
    max_value: float
    arg_point: PsiPoint
    asymptotic_ok: bool
    passed: bool
    samples_evaluated: int
    measure: str = "re_psi"
    degenerate: bool = False
    leading_max: float = 0.0

    @property
    def max_re_psi(self) -> float:
        return self.max_value

    def as_dict(self) -> dict:
        return {"measure": self.measure, "max_value": self.max_value,
                "arg_point": {"rho": self.arg_point.rho, "sigma": self.arg_point.sigma},
                "asymptotic_ok": self.asymptotic_ok, "pass": self.passed,
                "samples_evaluated": self.samples_evaluated,
                "degenerate": self.degenerate, "leading_max": self.leading_max}


def sigma_bound(n: int, mu_prime: float, rho):
    """``-(1/2)(n + (2 - mu')/(2 + mu'))(1 + rho^2)``."""
    rho = np.asarray(rho, dtype=float)
    out = -0.5 * (n + (2 - mu_prime) / (2 + mu_prime)) * (1 + rho * rho)
    return float(out) if out.ndim == 0 else out


def default_workers() -> int:
    try:
        cap = int(os.environ.get(THREADS_ENV, "1"))
    except ValueError:
        cap = 1
    return max(1, cap)


def _grid_points(n, mu_prime, grid: OracleGrid):
    rho = np.linspace(-grid.rho_max, grid.rho_max, grid.rho_steps)
    tau = np.linspace(0.0, 1.0, grid.sigma_steps)
    R, T = np.meshgrid(rho, tau, indexing="ij")
    rhos, taus = [R.ravel()], [T.ravel()]
    if grid.jitter > 0:
        rng = np.random.default_rng(grid.seed)
        drho = 2 * grid.rho_max / (grid.rho_steps - 1)
        dtau = 1.0 / (grid.sigma_steps - 1)
        jr = R.ravel() + rng.uniform(-grid.jitter, grid.jitter, R.size) * drho
        jt = T.ravel() + rng.uniform(-grid.jitter, grid.jitter, T.size) * dtau
        rhos.append(np.clip(jr, -grid.rho_max, grid.rho_max))
        taus.append(np.clip(jt, 0.0, 1.0))
    rho = np.concatenate(rhos)
    tau = np.concatenate(taus)
    sigma = sigma_bound(n, mu_prime, rho) - grid.sigma_depth * (1 + rho * rho) * tau
    return rho, sigma


def _re_psi_chunk(coeffs, rho, sigma):
    num, den = psi_parts(coeffs, rho, sigma)
    pole = np.abs(den) < POLE_TOL
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.real(num * np.conj(den)) / np.abs(den) ** 2
    return val, pole


def _quartic_chunk(coeffs, rho, sigma):
    q = re_psi_quartic(coeffs, rho, sigma)
    scale = quartic_scale(coeffs, rho, sigma)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.where(scale > 0, q / np.where(scale > 0, scale, 1.0), 0.0)
    num, den = psi_parts(coeffs, rho, sigma)
    return val, np.abs(den) < POLE_TOL


def _sweep(fn, coeffs, rho, sigma, workers):
    """Max-reduction over chunks; ties resolved by the smallest ``(rho, sigma)``."""
    workers = max(1, int(workers))
    chunks = np.array_split(np.arange(rho.size), workers)

    def run(idx):
        val, pole = fn(coeffs, rho[idx], sigma[idx])
        return idx, val, pole

    if workers == 1:
        parts = [run(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(run, chunks))
    val = np.concatenate([p[1] for p in parts])
    pole = np.concatenate([p[2] for p in parts])
    if pole.mean() > POLE_FRACTION_LIMIT:
        raise OracleDomainError("domain too thin, refine grid")
    val = np.where(pole, -np.inf, val)
    best = np.max(val)
    ties = np.flatnonzero(val == best)
    order = np.lexsort((sigma[ties], rho[ties]))
    i = ties[order[0]]
    return float(best), PsiPoint(float(rho[i]), float(sigma[i])), int(rho.size - pole.sum())


def leading_form(coeffs: CoeffSystem, n: int, mu_prime: float):
    """Dominant quadratic form of the quartic on the region's asymptotic cone.

    With ``s = -sigma -> inf`` and ``rho^2 = u s`` the region forces
    ``0 <= u <= k = 2(2+mu')/G`` and the quartic behaves like ``s^2 phi(u)``,
    ``phi(u) = fb - (bg + cf) u + cg u^2``.  Returns ``(max phi, argmax u, k)``.
    """
    s = coeffs.as_eight()
    a, b, c, d, e, f, g, h = s.as_tuple()
    G = n * (2 + mu_prime) + (2 - mu_prime)
    k = 2 * (2 + mu_prime) / G
    p2, p1, p0 = c * g, -(b * g + c * f), f * b
    cands = [0.0, k]
    if p2 < 0:
        v = -p1 / (2 * p2)
        if 0 < v < k:
            cands.append(v)
    vals = [p2 * u * u + p1 * u + p0 for u in cands]
    i = int(np.argmax(vals))
    return float(vals[i]), float(cands[i]), k


def asymptotic_check(coeffs: CoeffSystem, n: int, mu_prime: float, tol: float = ORACLE_TOL):
    """Whether the quartic is eventually non-positive on the region.

    A strictly negative leading form settles it.  When the leading form
    vanishes along some ray (for instance ``E = -1`` makes ``fb = 0``), the
    quartic itself is probed far out along the region's extreme rays.
    """
    lead, u_star, k = leading_form(coeffs, n, mu_prime)
    scale = max(abs(v) for v in coeffs.as_eight().as_tuple()) ** 2 or 1.0
    if lead > tol * scale:
        return False, lead
    if lead < -tol * scale:
        return True, lead
    for s in (1e3, 1e4, 1e5, 1e6):
        for u in {0.0, k, u_star}:
            t = max(u * s - 1.0, 0.0) if u == k else u * s
            q = re_psi_quartic(coeffs, np.sqrt(t), -s)
            scale_here = quartic_scale(coeffs, np.sqrt(t), -s)
            if scale_here > 0 and q / scale_here > tol:
                return False, lead
    return True, lead


def _report(fn, measure, coeffs, n, mu_prime, grid, workers, tol):
    if coeffs.is_zero():
        return OracleReport(0.0, PsiPoint(0.0, sigma_bound(n, mu_prime, 0.0)), False, False, 0,
                            measure, degenerate=True)
    rho, sigma = _grid_points(n, mu_prime, grid)
    best, where, count = _sweep(fn, coeffs, rho, sigma, workers or default_workers())
    ok, lead = asymptotic_check(coeffs, n, mu_prime, tol)
    return OracleReport(best, where, bool(ok), bool(best <= tol and ok), count, measure,
                        leading_max=lead)


def admissibility_of_coeffs(coeffs: CoeffSystem, n: int, mu_prime: float,
                            grid: OracleGrid = OracleGrid(), workers: Optional[int] = None,
                            tol: float = ORACLE_TOL) -> OracleReport:
    """Grid maximum of ``Re psi`` for a raw coefficient system."""
    return _report(_re_psi_chunk, "re_psi", coeffs, n, mu_prime, grid, workers, tol)


def verify_admissibility(kind: OperatorKind, params: Parameters, grid: OracleGrid = OracleGrid(),
                         workers: Optional[int] = None, source: str = "printed",
                         tol: float = ORACLE_TOL) -> OracleReport:
    """Check ``Re psi(i rho, sigma) <= 0`` over the admissibility region.

    The region uses ``mu'`` because every proof applies the admissibility
    lemma to the transformed function ``q``, whose coefficient is ``mu'``.
    """
    coeffs = coeff_system(kind, params, source)
    return admissibility_of_coeffs(coeffs, params.n, params.mu_prime, grid, workers, tol)


def quartic_negativity(coeffs: CoeffSystem, n: int, mu_prime: float,
                       grid: OracleGrid = OracleGrid(), workers: Optional[int] = None,
                       tol: float = ORACLE_TOL) -> OracleReport:
    """The same sweep on the division-free quartic, normalised by its monomial scale."""
    return _report(_quartic_chunk, "quartic", coeffs, n, mu_prime, grid, workers, tol)
