"""Where does the unconstrained optimum of a symmetrized Gaussian QUBO sit?

For each instance seed, report the exact optimum cardinality (brute force up
to n=20, otherwise the best of 50 quality anneals) and the fast-schedule
histogram mean that the experiment harness would record at alpha = 0.
"""

import argparse

import numpy as np

from cardqubo.experiment import ExperimentConfig, run_experiment
from cardqubo.instances import gaussian_symmetric
from cardqubo.solvers import QUALITY, anneal_batch, brute_force


def optimum_cardinality(n, seed):
    a = gaussian_symmetric(n, seed)
    if n <= 20:
        return brute_force(a).cardinality
    return min(anneal_batch(a, QUALITY, range(50)), key=lambda r: r.cost).cardinality


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=30)
    parser.add_argument("--instances", type=int, default=20)
    parser.add_argument("--trials", type=int, default=200)
    args = parser.parse_args()

    n, band = args.n, (args.n / 2 - np.sqrt(args.n), args.n / 2 + np.sqrt(args.n))
    rows = []
    for seed in range(args.instances):
        h = run_experiment(ExperimentConfig(n=n, m_target=1, alphas=(0.0,), trials=args.trials, seed=seed))
        rows.append((seed, optimum_cardinality(n, seed), h.mean_cardinality(0.0)))
        print(f"seed={seed:3d} optimum k={rows[-1][1]:3d} histogram mean={rows[-1][2]:6.2f}")
    means = np.array([r[2] for r in rows])
    print(f"mean optimum k / n = {np.mean([r[1] for r in rows]) / n:.3f}")
    print(f"instances with histogram mean in [{band[0]:.2f}, {band[1]:.2f}]: "
          f"{np.sum((means >= band[0]) & (means <= band[1]))}/{len(rows)}")


if __name__ == "__main__":
    main()
