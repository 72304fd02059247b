"""Show that the linear score has no Bayes act under a Gaussian belief.

Moving forecast mass towards the mode keeps lowering the expected score,
so no minimizer exists.
"""

from __future__ import annotations

import argparse

from properization import Gaussian, bayes_act
from properization.families import FamilyDescriptor
from properization.scores import NormalizedSquaredError
from properization.verify import linear_score_descent


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--epsilon", type=float, default=0.25)
    parser.add_argument("--steps", type=int, default=6)
    args = parser.parse_args()

    demo = linear_score_descent(Gaussian(0.0, 1.0), args.epsilon, args.steps)
    print(f"linear score, mass shifted in steps of {demo.epsilon:g}")
    for k, s in enumerate(demo.scores):
        print(f"  step {k}: expected score {s:.10f}")
    print(f"strictly decreasing: {demo.strictly_decreasing}")

    result = bayes_act(NormalizedSquaredError(), Gaussian(0.0, 1.0), FamilyDescriptor.parse("P2"))
    print(f"\nnormalized squared error on P2: {result.reason}")
    for f, s in zip(result.certificate.forecasts, result.certificate.scores):
        print(f"  variance {f.sigma2:<8g} expected score {s:.6f}")


if __name__ == "__main__":
    main()
