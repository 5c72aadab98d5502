#!/usr/bin/env python3
"""Do the information values mean anything operationally?

For each scheme: draw detection records at the true separation, run the
maximum-likelihood estimator with the brightness known, and compare the
spread of the estimates across trials with the Cramér-Rao bound 1/(n F).
An efficient estimator drives the ratio (empirical variance x n x F) to
one, so numbers near one here certify both the sampler and the Fisher
informations.  Identical seeds reproduce identical records, bit for bit.
"""

from twosource import Scene, Scheme, SimConfig, crb_report

CASES = [
    (Scheme.GAUSSIAN_MODE, 0.3, 1.0),
    (Scheme.ZERO_PHOTON, 0.3, 1.0),
    (Scheme.DIRECT, 0.5, 2.0),
]


def main():
    print(f"{'scheme':>10} {'q':>4} {'d':>4} {'F':>9} {'CRB':>11} "
          f"{'emp var':>11} {'ratio':>7} {'boundary':>9}")
    for scheme, q, d in CASES:
        config = SimConfig(
            scheme=scheme, scene=Scene(q, d), n=20_000, trials=120, seed=314
        )
        rep = crb_report(config)
        print(
            f"{scheme.value:>10} {q:4.1f} {d:4.1f} {rep.fisher_information:9.5f} "
            f"{rep.crb:11.3e} {rep.empirical_variance:11.3e} "
            f"{rep.variance_ratio:7.3f} {rep.boundary_fraction:9.4f}"
        )
    print("\nratios near 1.0 mean the estimator attains the bound at this n")


if __name__ == "__main__":
    main()
