"""A verdict-true tuple whose implication fails for the simplest p.

With p = 1 + mu z the operator 1 + alpha z p' = 1 + alpha mu z stays in the
half-plane Re w > 1/2 (D = 0, E = -1), yet p itself leaves the (A, B) disk,
whose rightmost point is (1 + A)/(1 + B).
"""

from janowski_lab import check_lemma
from janowski_lab.lab import p_sample, test_implication
from janowski_lab.operators import OperatorKind
from janowski_lab.params import Parameters

P = Parameters(A=0.5868133143217611, B=0.5163317551860229, D=0.0, E=-1.0,
               alpha=0.908248490886669, lam=1.0, n=1, mu=0.059937367420784586)
print("closed-form verdict:", check_lemma("2.1", P).verdict)
print("right edge of the (A, B) disk:", (1 + P.A) / (1 + P.B))
print("p(0.999) = 1 + mu * 0.999  =", 1 + P.mu * 0.999)
print("Re of 1 + alpha mu z is at least", 1 - P.alpha * P.mu, "> 1/2")

case = test_implication(OperatorKind.LINEAR_DERIV, P, p_sample([1, P.mu], 1))
print("classification:", case.classification.value)
print("conclusion margin:", case.conclusion.worst_margin)
