"""Figures written next to the JSON reports (``--figure PATH``)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .numeric import MartyReport  # noqa: E402


def _finish(fig, path: str) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_marty(report: MartyReport, path: str) -> str:
    """Max spherical derivative against m, plus the last member's grid."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    ms = [m for m, _, _ in report.per_parameter]
    vals = [v for _, v, _ in report.per_parameter]
    ax1.plot(ms, vals, "o-", ms=3)
    ax1.set_xlabel("m")
    ax1.set_ylabel(r"max $f^\#$ on $|z|\leq r$")
    ratio = "undefined" if report.growth_ratio is None else f"{report.growth_ratio:.3g}"
    ax1.set_title(f"{report.family}: growth ratio {ratio}")
    if report.last_grid is not None:
        r = report.grid_radius
        im = ax2.imshow(report.last_grid, origin="lower", extent=(-r, r, -r, r), cmap="viridis")
        fig.colorbar(im, ax=ax2, label=r"$f^\#$")
        ax2.set_title(f"m = {ms[-1]}")
        ax2.set_xlabel("Re z")
        ax2.set_ylabel("Im z")
    else:
        ax2.axis("off")
    return _finish(fig, path)


def plot_campaign(report_json: dict, path: str) -> str:
    """Distinct-count histogram for lemma4, pass/violation bars otherwise."""
    fig, ax = plt.subplots(figsize=(7, 4))
    stats = report_json.get("statistics", {})
    dist = stats.get("distinct_count_distribution")
    if dist:
        xs = np.array([int(k) for k in dist])
        ys = np.array(list(dist.values()))
        ax.bar(xs, ys, width=0.8)
        ax.axvline(1.5, color="red", ls="--", lw=1, label="lemma bound (>= 2)")
        ax.set_xlabel("distinct p-points of M(f)")
        ax.set_ylabel("trials")
        ax.legend()
    else:
        bad = len(report_json["violations"])
        ax.bar(["pass", "violation"], [report_json["trials_run"] - bad, bad], color=["tab:green", "tab:red"])
        ax.set_ylabel("trials")
    ax.set_title(f"{report_json['campaign_name']}: {report_json['verdict']}")
    return _finish(fig, path)
