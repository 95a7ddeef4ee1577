"""Closed-form verdicts against the brute-force admissibility oracle.

For every verdict-true tuple the oracle samples Re psi over the admissibility
region.  Where the two disagree, disagreement_flags names the known gap:
'quad_branch' when the reduced quadratic peaks left of sigma = -1/2, and
'klmn_transcription' when the printed K/L/M/N block does not follow from the
coefficient system.
"""

from collections import Counter

from janowski_lab import disagreement_flags, verify_admissibility
from janowski_lab.operators import LEMMAS, OperatorKind
from janowski_lab.oracle import OracleDomainError, OracleGrid
from janowski_lab.sampling import verdict_tuples

grid = OracleGrid(rho_steps=129, sigma_steps=65)
for lemma in LEMMAS:
    kind = OperatorKind.from_lemma(lemma)
    tally = Counter()
    for P in verdict_tuples(lemma, 15, seed=1):
        try:
            ok = verify_admissibility(kind, P, grid).passed
        except OracleDomainError:
            ok = False
        flags = "+".join(disagreement_flags(lemma, P)) or "none"
        tally[("pass" if ok else "FAIL", flags)] += 1
    print(f"{lemma} {kind.value:8s}", dict(sorted(tally.items())))
# every FAIL carries a flag; a FAIL with 'none' would be a new, unexplained gap
