"""Write a synthetic forecast/observation dataset for ``properize score``.

Each case draws a Gaussian (or Bernoulli) forecast from the family sampler
and an observation from a slightly different truth, so raw and properized
scores differ.
"""

from __future__ import annotations

import argparse
import csv
import json
from pathlib import Path

import numpy as np


def gaussian_cases(n: int, rng: np.random.Generator):
    for i in range(n):
        mu = float(rng.uniform(-5.0, 5.0))
        sigma2 = float(rng.uniform(0.1, 10.0))
        obs = float(rng.normal(mu + rng.normal(0.0, 0.5), np.sqrt(sigma2 * rng.lognormal(0.0, 0.3))))
        yield f"g{i:05d}", mu, sigma2, obs


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--kind", choices=("gaussian", "bernoulli"), default="gaussian")
    parser.add_argument("--out", type=Path, required=True, help=".csv or .jsonl")
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)

    if args.kind == "bernoulli":
        with args.out.open("w") as fh:
            for i in range(args.n):
                p = float(rng.uniform())
                obs = float(rng.uniform() < p)
                fh.write(json.dumps({"id": f"b{i:05d}", "forecast": {"type": "bernoulli", "p": p},
                                     "observation": obs}) + "\n")
        return
    cases = list(gaussian_cases(args.n, rng))
    if args.out.suffix == ".csv":
        with args.out.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["id", "mu", "sigma2", "obs"])
            writer.writerows(cases)
    else:
        with args.out.open("w") as fh:
            for cid, mu, sigma2, obs in cases:
                forecast = {"type": "gaussian", "mu": mu, "sigma2": sigma2}
                fh.write(json.dumps({"id": cid, "forecast": forecast, "observation": obs}) + "\n")


if __name__ == "__main__":
    main()
