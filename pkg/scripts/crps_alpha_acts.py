"""Print the CRPS_alpha Bayes act of a Gaussian belief at a few quantile levels.

Shows how the act sharpens (alpha > 2), reproduces the belief (alpha = 2),
flattens (1 < alpha < 2) or collapses to the median (alpha <= 1).
"""

from __future__ import annotations

import argparse
import warnings

import numpy as np

from properization import Gaussian, bayes_act
from properization.scores import CrpsAlpha
from properization.families import FamilyDescriptor
from properization.properize import DomainWarning


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--mu", type=float, default=0.0)
    parser.add_argument("--sigma2", type=float, default=1.0)
    parser.add_argument("--alphas", type=float, nargs="+", default=[0.5, 1.0, 1.5, 2.0, 3.0, 5.0])
    args = parser.parse_args()

    belief = Gaussian(args.mu, args.sigma2)
    levels = np.array([0.1, 0.25, 0.5, 0.75, 0.9])
    xs = belief.quantile(levels)
    print("alpha  " + "  ".join(f"P={u:<6.2f}" for u in levels))
    for alpha in args.alphas:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DomainWarning)
            act = bayes_act(CrpsAlpha(alpha), belief, FamilyDescriptor.parse("Pc:10")).act
        row = "  ".join(f"{float(act.cdf(x)):<8.4f}" for x in xs)
        print(f"{alpha:<5g}  {row}")


if __name__ == "__main__":
    main()
