"""Closed-form sufficient conditions and the constants derived from them.

Every inequality is evaluated in exact rational arithmetic on the binary
values of the inputs (``fractions.Fraction``), so the K/L/M/N blocks, which
cancel heavily near equality, carry no rounding error.  Margins are rounded
to float only when reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict

from .operators import CoeffSystem, OperatorKind, coeff_system
from .params import Parameters

BOUNDARY_TOL = 1e-12
QUAD_AGREE_TOL = 1e-12


@dataclass(frozen=True)
class GH:
    G: float
    H: float


def _gh_exact(n, mu_prime):
    mp = Fraction(mu_prime)
    return n * (2 + mp) + (2 - mp), (n - 1) * (2 + mp) + (2 - mp)


def compute_gh(n: int, mu_prime: float) -> GH:
    """``G = n(2+mu') + (2-mu')`` and ``H = (n-1)(2+mu') + (2-mu')``."""
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    if not 0 < mu_prime <= 2:
        raise ValueError("mu' must lie in (0, 2]")
    G, H = _gh_exact(int(n), mu_prime)
    return GH(float(G), float(H))


def _exact_params(P: Parameters):
    A, B, D, E, al, lam = (Fraction(v) for v in (P.A, P.B, P.D, P.E, P.alpha, P.lam))
    mp = 2 * Fraction(P.mu) / (A - B)
    G, H = _gh_exact(P.n, mp)
    return A, B, D, E, al, lam, G, H


@dataclass(frozen=True)
class ConditionReport:
    """Verdict of one closed-form check.

    ``margin = rhs - lhs`` for ``lhs <= rhs`` conditions; ``verdict`` is the
    conjunction of all preconditions and ``margin >= 0``.  ``boundary`` marks
    ``|margin| <= 1e-12`` where the verdict is numerically inconclusive.
    """

    lemma_id: str
    preconditions: Dict[str, bool]
    lhs: float
    rhs: float
    margin: float
    verdict: bool
    paper_scope: str
    boundary: bool
    details: Dict[str, float] = field(default_factory=dict)

    @property
    def preconditions_hold(self) -> bool:
        return all(self.preconditions.values())

    def as_dict(self) -> dict:
        return {"lemma_id": self.lemma_id, "preconditions": dict(self.preconditions),
                "preconditions_hold": self.preconditions_hold,
                "main_inequality_lhs": self.lhs, "main_inequality_rhs": self.rhs,
                "margin": self.margin, "verdict": self.verdict,
                "paper_scope": self.paper_scope, "boundary": self.boundary,
                "details": dict(self.details)}


def _report(lemma_id, pre, lhs, rhs, n, details=None):
    margin = rhs - lhs
    verdict = all(pre.values()) and margin >= 0
    return ConditionReport(
        lemma_id=lemma_id, preconditions=pre, lhs=float(lhs), rhs=float(rhs),
        margin=float(margin), verdict=bool(verdict),
        paper_scope="n>1" if n > 1 else "n=1_reduction",
        boundary=abs(margin) <= BOUNDARY_TOL, details=details or {})


def check_lemma_2_1(params: Parameters) -> ConditionReport:
    A, B, D, E, al, lam, G, H = _exact_params(params)
    u = (D - E) * (1 - B) ** 2
    lhs = (u + al * E * (A - B)) ** 2 * G**2 + (D - E) ** 2 * (1 + B) ** 4 * H**2
    rhs = (al**2 * (A - B) ** 2 * G**2
           + 2 * (D - E) * (1 + B) ** 2 * (u - al * E * (A - B)) * G * H)
    return _report("2.1", {"alpha*E<0": al * E < 0}, lhs, rhs, params.n)


def check_lemma_2_2(params: Parameters) -> ConditionReport:
    A, B, D, E, al, lam, G, H = _exact_params(params)
    u = (D - E) * (1 + A) ** 2
    lhs = (u - E * (A - B)) ** 2 * G**2 + (D - E) ** 2 * (1 - A) ** 4 * H**2
    rhs = (A - B) ** 2 * G**2 + 2 * (D - E) * (1 - A) ** 2 * (u + E * (A - B)) * G * H
    return _report("2.2", {"0<E": E > 0}, lhs, rhs, params.n)


def check_lemma_2_3(params: Parameters) -> ConditionReport:
    A, B, D, E, al, lam, G, H = _exact_params(params)
    lhs = (((D - E) * (1 - A) * (1 - B) + al * E * (A - B)) ** 2 - al**2 * (A - B) ** 2) * G**2 \
        + (D - E) ** 2 * (1 + A) ** 2 * (1 + B) ** 2 * H**2
    rhs = 2 * (D - E) * ((D - E) * ((1 - A * B) ** 2 + (A - B) ** 2)
                         + al * E * (A - B) * (1 + A) * (1 + B)) * G * H
    return _report("2.3", {"alpha*E<0": al * E < 0}, lhs, rhs, params.n)


@dataclass(frozen=True)
class KLMN:
    K: float
    L: float
    M: float
    N: float
    lemma: str


def _klmn_exact(lemma: str, params: Parameters):
    A, B, D, E, al, lam, G, H = _exact_params(params)
    if lemma == "2.4":
        K = ((D - 1) * (1 + B) ** 2 - al * E * (1 + A) ** 2) ** 2 - al**2 * (1 + A) ** 4
        L = lam * (A - B) * (E * (D - 1) * (1 + B) ** 2 + al * (1 - E**2) * (1 + A) ** 2)
        M = (((D - 1) * (1 - B**2) - al * E * (1 - A**2)) ** 2
             + 4 * al * E * (D - 1) * (A - B) ** 2 - al**2 * (1 - A**2) ** 2
             - lam * (A - B) * (al * (1 - E**2) * (1 + A) ** 2 + E * (D - 1) * (1 + B) ** 2))
        N = (((D - 1) * (1 - B) ** 2 - al * E * (1 - A) ** 2) ** 2
             - (al * (1 - A) ** 2 - lam * (A - B)) ** 2
             - lam * (A - B) * (E**2 * (2 * al * (1 - A) ** 2 - lam * (A - B))
                                - 2 * E * (D - 1) * (1 - B) ** 2))
    elif lemma == "2.5":
        K = (((D - 1) * (1 + B) ** 2 - (1 - al) * E * (1 + A) ** 2) ** 2
             - (1 - al) ** 2 * (1 + A) ** 4
             - al * (1 + A) * (1 + B) * (2 * E * (1 + B) ** 2 + al * (1 - E**2) * (1 + A) * (1 + B)
                                         + 2 * (1 - al) * (1 - E**2) * (1 + A) ** 2))
        L = lam * (A - B) * (E * (D - 1) * (1 + B) ** 2 + al * (1 - E**2) * (1 + A) * (1 + B)
                             + (1 - al) * (1 - E**2) * (1 + A) ** 2)
        M = ((((D - 1) * (1 - B**2) - E * (1 - al) * (1 - A**2)) ** 2
              - (1 - al) ** 2 * (1 - A**2) ** 2
              - E * (D - 1) * (2 * (1 - B**2) * ((1 - al) * (1 - A**2) + al * (1 - A * B))
                               - (1 - al) * ((A - B) ** 2 + (1 - A * B) ** 2)
                               + lam * (A - B) * (1 + B) ** 2)
              - (1 - E**2) * (2 * al * ((1 - al) * (1 - A**2) * (1 - A * B))
                              + al**2 * ((A - B) ** 2 + (1 - A * B) ** 2)
                              + lam * (A - B) * (1 + A) * ((1 - al) * (1 + A) + al * (1 + B)))))
        # the trailing 2E(D-1)(1-B)^2 term is transcribed as printed
        N = ((((D - 1) * (1 - B) ** 2 - (1 - al) * E * (1 - A) ** 2) ** 2 - (1 - al) ** 2 * (1 - A) ** 4)
             - (1 - E**2) * ((al * (1 - A) * (1 - B) - lam * (A - B)) ** 2
                             - 2 * (1 - al) * (1 - A) ** 2 * (lam * (A - B) - al * (1 - A) * (1 - B)))
             + 2 * E * (D - 1) * (1 - B) ** 2)
    elif lemma == "2.6":
        K = ((1 + A) ** 2 * (1 + B) ** 2 * (((D - 1) - al * E) ** 2 - al**2)
             - (1 - al) * (1 + A) ** 3 * (1 - E**2) * (2 * al * (1 + B) + (1 - al) * (1 + A)))
        L = al * (E * (D - 1) * (1 + B) + (1 - E**2) * (al * (1 + B) + (1 - al) * (1 + A)))
        M = ((((D - 1) - al * E) ** 2 - al**2) * ((A - B) ** 2 + (1 - A * B) ** 2)
             - (1 + A) * (E * (D - 1) + al * (1 - E**2))
             * (2 * (1 - al) * (1 - A) * (1 - A * B) + al * (1 + B) * (A - B))
             - (1 - al) * (1 - E**2) * (1 + A) * ((1 - al) * (1 - A) * (1 - A**2) + al * (1 + A) * (A - B)))
        N = ((1 - A) ** 2 * (1 - B) ** 2 * (((D - 1) - al * E) ** 2 - al**2)
             + (E**2 - 1) * ((1 - al) * (1 - A) ** 2 - al * (A - B)) ** 2
             + 2 * (1 - A) * (1 - B) * (E * (D - 1) + al * (1 - E**2)) * (al * (A - B) - (1 - al) * (1 - A) ** 2))
    else:
        raise ValueError(f"K/L/M/N block exists for lemmas 2.4, 2.5, 2.6, not {lemma!r}")
    return K, L, M, N, G, H


def compute_klmn(lemma: str, params: Parameters) -> KLMN:
    K, L, M, N, _, _ = _klmn_exact(str(lemma), params)
    return KLMN(float(K), float(L), float(M), float(N), str(lemma))


def check_klmn_condition(lemma: str, params: Parameters) -> ConditionReport:
    """``K >= 0, L < 0, M > 0`` and ``N G^2 - 2 M G H + K H^2 <= 0``."""
    lemma = str(lemma)
    K, L, M, N, G, H = _klmn_exact(lemma, params)
    pre = {"K>=0": K >= 0, "L<0": L < 0, "M>0": M > 0}
    lhs = N * G**2 - 2 * M * G * H + K * H**2
    details = {"K": float(K), "L": float(L), "M": float(M), "N": float(N)}
    return _report(lemma, pre, lhs, Fraction(0), params.n, details)


def check_lemma(lemma: str, params: Parameters) -> ConditionReport:
    lemma = str(lemma)
    if lemma == "2.1":
        return check_lemma_2_1(params)
    if lemma == "2.2":
        return check_lemma_2_2(params)
    if lemma == "2.3":
        return check_lemma_2_3(params)
    return check_klmn_condition(lemma, params)


# -- reduction of the quartic to a quadratic in sigma -----------------------

@dataclass(frozen=True)
class QuadMaxResult:
    """Supremum of ``x s^2 + y s + z`` over ``s <= -1/2``.

    ``max_value`` is ``inf`` (and ``unbounded`` set) when the quadratic grows
    without bound to the left.  ``paper_formula_value`` is ``(4z - 2y + x)/4``,
    the value at ``s = -1/2``.
    """

    max_value: float
    argmax_sigma: float
    paper_formula_value: float
    agrees_with_paper: bool
    unbounded: bool


def half_line_quad_max(x: float, y: float, z: float) -> QuadMaxResult:
    x, y, z = float(x), float(y), float(z)
    at_half = (4 * z - 2 * y + x) / 4
    if x > 0 or (x == 0 and y < 0):
        return QuadMaxResult(math.inf, -math.inf, at_half, False, True)
    if x < 0 and -y / (2 * x) < -0.5:
        s = -y / (2 * x)
        best = z - y * y / (4 * x)
    else:
        s, best = -0.5, at_half
    agrees = abs(best - at_half) <= QUAD_AGREE_TOL * max(1.0, abs(best), abs(at_half))
    return QuadMaxResult(best, s, at_half, bool(agrees), False)


def sigma_slope(n: int, mu_prime: float) -> float:
    """``k = 2(2+mu')/G``: the region is ``rho^2 <= -k sigma - 1``."""
    G = n * (2 + mu_prime) + (2 - mu_prime)
    return 2 * (2 + mu_prime) / G


def quadratic_reduction(coeffs: CoeffSystem, n: int, mu_prime: float):
    """``(x, y, z)`` with ``Q(sigma, rho^2 = -k sigma - 1) = x sigma^2 + y sigma + z``.

    ``Q`` is :func:`~janowski_lab.operators.re_psi_quartic`; this is the
    substitution that turns the admissibility quartic into the quadratic whose
    half-line maximum the closed-form conditions bound.
    """
    k = sigma_slope(n, mu_prime)
    s = coeffs.as_eight()
    a, b, c, d, e, f, g, h = s.as_tuple()
    t0 = a * g + c * e + h * d
    t1 = b * g + c * f
    x = f * b - k * t1 + k * k * c * g
    y = a * f + b * e - t1 - k * t0 + 2 * k * c * g
    z = a * e - t0 + c * g
    return x, y, z


def _klmn_from_coeffs_exact(coeffs: CoeffSystem):
    s = coeffs.as_eight()
    a, b, c, d, e, f, g, h = (Fraction(v) for v in s.as_tuple())
    K = c * g
    L = (b * g + c * f) / 4
    M = (a * g + c * e + h * d - (b * g + c * f) / 2) / 2
    N = a * e - (a * f + b * e) / 2 + b * f / 4
    return K, L, M, N


def klmn_from_coeffs(coeffs: CoeffSystem) -> KLMN:
    """K/L/M/N read off a coefficient system rather than the printed block.

    ``K = cg``, ``L = (bg + cf)/4``, ``M = (ag + ce + hd - (bg + cf)/2)/2`` and
    ``N = ae - (af + be)/2 + bf/4``, so that ``N G^2 - 2 M G H + K H^2`` is
    ``G^2`` times the quartic at ``sigma = -1/2, rho^2 = -H/G``.
    """
    K, L, M, N = _klmn_from_coeffs_exact(coeffs)
    return KLMN(float(K), float(L), float(M), float(N), "coeffs")


def check_klmn_from_coeffs(lemma: str, params: Parameters, source: str = "printed") -> ConditionReport:
    """The K/L/M/N test with the block recomputed from the coefficient system.

    Differs from :func:`check_klmn_condition` only where the printed block
    does not follow from the printed coefficients.
    """
    lemma = str(lemma)
    kind = OperatorKind.from_lemma(lemma)
    K, L, M, N = _klmn_from_coeffs_exact(coeff_system(kind, params, source))
    *_, G, H = _exact_params(params)
    pre = {"K>=0": K >= 0, "L<0": L < 0, "M>0": M > 0}
    lhs = N * G**2 - 2 * M * G * H + K * H**2
    details = {"K": float(K), "L": float(L), "M": float(M), "N": float(N), "source": source}
    return _report(lemma, pre, lhs, Fraction(0), params.n, details)


def quad_branch(kind: OperatorKind, params: Parameters, source: str = "printed") -> QuadMaxResult:
    """Half-line maximum of the reduced quadratic for ``kind`` at ``params``."""
    x, y, z = quadratic_reduction(coeff_system(kind, params, source), params.n, params.mu_prime)
    return half_line_quad_max(x, y, z)


# -- subclass bounds --------------------------------------------------------

class DeltaKind(Enum):
    SSTAR_BRACKET_LAMBDA_THM21 = "SstarBracketLambda_thm21"
    SSTAR_ORDER_THM21 = "SstarOrder_thm21"
    SSTAR_PAREN_THM21 = "SstarParen_thm21"
    SSTAR_BRACKET_LAMBDA_THM22 = "SstarBracketLambda_thm22"
    SSTAR_ORDER_THM22_FC = "SstarOrder_thm22_Fc"
    SSTAR_ORDER_SUBORD_THM22 = "SstarOrderSubord_thm22"
    LOG_DERIV_THM28 = "LogDeriv_thm28"


class DegenerateFormula(ValueError):
    pass


def _root(radicand):
    if not radicand > 0:
        raise DegenerateFormula("formula degenerate for these (lambda, G, H)")
    return math.sqrt(radicand)


def corollary_delta(kind, lam: float, G: float, H: float) -> float:
    """Bound ``delta`` (or ``c``, or ``D``) for the selected subclass.

    ``LogDeriv_thm28`` is evaluated at ``A = 1 - lam``, which gives the
    bound for starlikeness of order ``lam``.
    """
    kind = DeltaKind(kind) if not isinstance(kind, DeltaKind) else kind
    if not 0 <= lam < 1:
        raise ValueError("lambda must lie in [0, 1)")
    l = lam
    if kind is DeltaKind.SSTAR_BRACKET_LAMBDA_THM21:
        return l * G / _root(((1 + l) ** 2 - l) ** 2 * G**2 + (1 - l) ** 4 * H**2
                             - 2 * (1 - l) ** 2 * ((1 + l) ** 2 + l) * G * H)
    if kind is DeltaKind.SSTAR_ORDER_THM21:
        return (1 - l) / 2
    if kind is DeltaKind.SSTAR_PAREN_THM21:
        if not G - H > 0:
            raise DegenerateFormula("formula degenerate for these (lambda, G, H)")
        return (1 - l) * G / (G - H)
    if kind is DeltaKind.SSTAR_BRACKET_LAMBDA_THM22:
        return l * G / _root(((1 + l) ** 2 + l) ** 2 * G**2 + (1 - l) ** 4 * H**2
                             - 2 * (1 - l) ** 2 * ((1 + l) ** 2 - l) * G * H)
    if kind is DeltaKind.SSTAR_ORDER_THM22_FC:
        den = abs((2 - l) ** 2 * G - l * l * H)
        if den == 0:
            raise DegenerateFormula("formula degenerate for these (lambda, G, H)")
        return (1 - l) * G / den
    if kind is DeltaKind.SSTAR_ORDER_SUBORD_THM22:
        return (1 - l) * G / _root((1 - l) ** 2 * (5 - 4 * l) ** 2 * G**2 + 16 * l * l * H**2
                                   - 8 * l * l * (1 - l) * (3 - 4 * l) * G * H)
    if kind is DeltaKind.LOG_DERIV_THM28:
        A = 1 - l
        return A * G / _root((1 - A) ** 2 * G**2 + (1 + A) ** 2 * H**2 - 2 * (1 + A * A) * G * H)
    raise ValueError(kind)  # pragma: no cover


# -- tracing closed-form / oracle disagreements -----------------------------

QUAD_BRANCH_FLAG = "quad_branch"
KLMN_TRANSCRIPTION_FLAG = "klmn_transcription"


def disagreement_flags(lemma: str, params: Parameters) -> tuple:
    """Known gaps between a closed-form verdict and the admissibility it claims.

    ``quad_branch``: the reduced quadratic peaks left of ``sigma = -1/2`` (or
    is unbounded), so its value at ``-1/2`` does not bound it.
    ``klmn_transcription``: the printed K/L/M/N block passes while the block
    recomputed from the printed coefficients fails.
    An oracle failure on a verdict-true tuple with no flag is unexplained.
    """
    lemma = str(lemma)
    kind = OperatorKind.from_lemma(lemma)
    flags = []
    qb = quad_branch(kind, params)
    if qb.unbounded or not qb.agrees_with_paper:
        flags.append(QUAD_BRANCH_FLAG)
    if lemma in ("2.4", "2.5", "2.6"):
        if check_lemma(lemma, params).verdict and not check_klmn_from_coeffs(lemma, params).verdict:
            flags.append(KLMN_TRANSCRIPTION_FLAG)
    return tuple(flags)
