"""Seeded random parameter tuples for sweeps.

Values are drawn uniformly from their ranges but with probability 0.3 snap
to a special value (endpoints, 0, 1/2), since the classical subclasses all
live on such values.  ``mu'`` is 2 with probability 0.3 and otherwise
uniform on ``(0.05, 2)``.
"""

from __future__ import annotations

from typing import Iterator, List

import numpy as np

from .conditions import check_lemma
from .params import ParameterError, Parameters

SPECIAL_PROB = 0.3
_SPECIALS = {
    "A": (-1.0, 0.0, 1.0, 0.5, -0.5),
    "B": (-1.0, 0.0, -0.5, 0.5),
    "D": (1.0, 0.0, 0.5),
    "E": (-1.0, 0.0, -0.5, 0.5),
    "alpha": (1.0, -1.0, 0.5),
    "lam": (1.0, -1.0, 0.5),
}
_RANGES = {"A": (-1, 1), "B": (-1, 1), "D": (-1, 1), "E": (-1, 1), "alpha": (-2, 2), "lam": (-2, 2)}


def _pick(rng, name):
    if rng.random() < SPECIAL_PROB:
        return float(rng.choice(_SPECIALS[name]))
    lo, hi = _RANGES[name]
    return float(rng.uniform(lo, hi))


def random_parameters(rng: np.random.Generator, n_values=(1, 2, 3)) -> Parameters:
    """One valid tuple; invalid draws (``B >= A`` and so on) are redrawn."""
    while True:
        vals = {k: _pick(rng, k) for k in ("A", "B", "D", "E", "alpha", "lam")}
        n = int(rng.choice(n_values))
        mp = 2.0 if rng.random() < SPECIAL_PROB else float(rng.uniform(0.05, 2.0))
        try:
            return Parameters.from_mu_prime(vals["A"], vals["B"], vals["D"], vals["E"],
                                            vals["alpha"], vals["lam"], n, mp)
        except ParameterError:
            continue


def iter_parameters(seed: int) -> Iterator[Parameters]:
    rng = np.random.default_rng(seed)
    while True:
        yield random_parameters(rng)


def verdict_tuples(lemma: str, count: int, seed: int = 0, verdict: bool = True,
                   max_draws: int = 1_000_000) -> List[Parameters]:
    """First ``count`` tuples from the seeded stream whose closed-form verdict equals ``verdict``."""
    out = []
    for i, P in enumerate(iter_parameters(seed)):
        if i >= max_draws:
            raise RuntimeError(f"only {len(out)} matching tuples in {max_draws} draws")
        if check_lemma(lemma, P).verdict == verdict:
            out.append(P)
            if len(out) == count:
                return out
    return out  # pragma: no cover
