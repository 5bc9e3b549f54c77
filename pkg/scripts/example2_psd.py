"""Positive semi-definite (G^T G / n) histograms: N=30, M=8, 500 fast anneals per alpha."""

import argparse

from cardqubo.experiment import DEFAULT_ALPHAS, ExperimentConfig, run_experiment, write_histograms


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=500)
    parser.add_argument("--out", default="example2_psd.csv")
    args = parser.parse_args()

    config = ExperimentConfig(n=30, m_target=8, alphas=DEFAULT_ALPHAS, trials=args.trials,
                              instance="psd", seed=args.seed)
    h = run_experiment(config)
    write_histograms(h, args.out)
    for alpha in DEFAULT_ALPHAS:
        nonzero = {k: int(c) for k, c in enumerate(h.counts[alpha]) if c}
        print(f"alpha={alpha:<5g} at 8: {h.counts[alpha][8]:3d}/{args.trials}  {nonzero}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
