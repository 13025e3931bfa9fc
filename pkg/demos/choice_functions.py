"""Optimality versus maximality on a three-decision problem.

Two states, two extreme beliefs, and a hedging decision d3 that is never
the best under any single belief but is never beaten under all of them.
"""

from fractions import Fraction as F

from credalapprox import CredalSet, DecisionProblem, max_eps, opt_eps

problem = DecisionProblem(
    states=("rain", "sun"),
    decisions=("umbrella", "sunglasses", "both"),
    loss=((-1, 0), (0, -1), (F(-2, 5), F(-2, 5))),
    credal=CredalSet(((1, 0), (0, 1))),
)

for gamma in (F(0), F(1, 5), F(3, 5)):
    o = opt_eps(problem, gamma)
    m = max_eps(problem, gamma)
    print(f"gamma={str(gamma):>4}  opt={', '.join(o):32} max={', '.join(m)}")

# "both" enters the optimal set once the tolerance covers its 3/5 shortfall
