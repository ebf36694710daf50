"""Drift-plus-penalty admission control on one server.

Runs a single server under the proposed scheme and plots the cache
backlog against its 2000 MB safety bound together with the controller's
per-slot batch count.  The signature behavior: a two-slot admission
burst fills the cache, then the count locks onto the departure rate
(~5-6 batches per slot) and the backlog rides just under the bound
until the fleet's data runs out, after which the cache drains.

Run:  python3 demos/03_queue_control.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from feelsim.simulator import SimConfig, run_server

OUT = Path(__file__).parent / "output"


def main():
    cfg = SimConfig(master_seed=3)
    rows = run_server(cfg, 0)
    slots = [r.slot for r in rows]
    backlog = [r.queue_backlog_mb for r in rows]
    n_star = [r.n_star for r in rows]

    print(f"slots simulated:        {len(rows)}")
    print(f"peak backlog:           {max(backlog):.1f} MB (bound {cfg.queue_capacity_mb:.0f})")
    print(f"total selections:       {rows[-1].cumulative_selected}")
    print(f"first two slot counts:  {n_star[:2]} (admission burst)")
    print(f"final accuracy:         {rows[-1].accuracy:.4f}")

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(9, 6.5), sharex=True)
    top.plot(slots, backlog, lw=0.8)
    top.axhline(cfg.queue_capacity_mb, color="crimson", ls="--",
                label="cache bound Q_max")
    top.set_ylabel("cache backlog (MB)")
    top.legend(loc="lower left")
    top.grid(alpha=0.3)

    bottom.plot(slots, n_star, lw=0.6)
    bottom.set_ylabel("optimal batch count n*")
    bottom.set_xlabel("slot")
    bottom.set_ylim(0, 20)
    bottom.grid(alpha=0.3)
    fig.suptitle("Proposed scheme: backlog pinned under the bound, count "
                 "locked to departures")
    fig.tight_layout()

    OUT.mkdir(exist_ok=True)
    target = OUT / "queue_control.png"
    fig.savefig(target, dpi=120)
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
