"""Truncated-Gaussian speed sampling.

Vehicle speeds come from a Gaussian N(15, 0.7) truncated to
[13.6, 16.4] m/s, drawn by rejection from the parent Gaussian.  This
script overlays a large sample histogram on the analytic truncated
density and reports the acceptance rate of the rejection loop, which
for these parameters sits a little above 90 %.

Run:  python3 demos/01_speed_sampling.py
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from feelsim.mobility import SpeedDistribution, sample_speed

OUT = Path(__file__).parent / "output"


def phi(z):
    return math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)


def big_phi(z):
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))


def truncated_pdf(x, dist):
    sigma = math.sqrt(dist.variance)
    lo = (dist.v_min_mps - dist.mean_mps) / sigma
    hi = (dist.v_max_mps - dist.mean_mps) / sigma
    mass = big_phi(hi) - big_phi(lo)
    return phi((x - dist.mean_mps) / sigma) / (sigma * mass)


def main():
    dist = SpeedDistribution()
    rng = np.random.default_rng(2026)
    n = 100_000
    draws = np.array([sample_speed(dist, rng) for _ in range(n)])

    sigma = math.sqrt(dist.variance)
    lo = (dist.v_min_mps - dist.mean_mps) / sigma
    hi = (dist.v_max_mps - dist.mean_mps) / sigma
    acceptance = big_phi(hi) - big_phi(lo)

    print(f"samples: {n}")
    print(f"range:   [{draws.min():.3f}, {draws.max():.3f}] m/s")
    print(f"mean:    {draws.mean():.4f} m/s (truncated-Gaussian mean is 15.0)")
    print(f"parent-Gaussian acceptance probability: {acceptance:.4f}")

    xs = np.linspace(dist.v_min_mps, dist.v_max_mps, 400)
    pdf = [truncated_pdf(x, dist) for x in xs]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.hist(draws, bins=80, density=True, alpha=0.6, label="rejection samples")
    ax.plot(xs, pdf, "k-", lw=2, label="analytic truncated density")
    ax.axvline(dist.v_min_mps, color="gray", ls=":")
    ax.axvline(dist.v_max_mps, color="gray", ls=":")
    ax.set_xlabel("speed (m/s)")
    ax.set_ylabel("density")
    ax.set_title("Vehicle speed: truncated Gaussian on [13.6, 16.4] m/s")
    ax.legend()
    fig.tight_layout()

    OUT.mkdir(exist_ok=True)
    target = OUT / "speed_sampling.png"
    fig.savefig(target, dpi=120)
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
