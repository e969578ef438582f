"""Figures for a classification report, drawn with matplotlib's Agg backend."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _ranks(order, n):
    """Longest chain below each element, used as the vertical position."""
    rank = [0] * n
    for _ in range(n):
        for i in range(n):
            for j in range(n):
                if i != j and order[j][i]:
                    rank[i] = max(rank[i], rank[j] + 1)
    return rank


def plot_wact(report: dict, path) -> Path:
    elems = report["wact"]["elements"]
    n = len(elems)
    rank = _ranks(report["wact"]["order"], n)
    levels: dict[int, list[int]] = {}
    for i, r in enumerate(rank):
        levels.setdefault(r, []).append(i)
    pos = {}
    for r, members in levels.items():
        for k, i in enumerate(members):
            pos[i] = (k - (len(members) - 1) / 2, r)
    fig, ax = plt.subplots(figsize=(max(4, n * 1.2), 1.2 * (max(rank) + 2)))
    ax.margins(0.2)
    for i, j in report["wact"]["covers"]:
        (x1, y1), (x2, y2) = pos[i], pos[j]
        ax.plot([x1, x2], [y1, y2], color="0.5", zorder=1)
    orders = {c["pair"]: c["order"] for c in report.get("cohomology") or []}
    for i, (x, y) in pos.items():
        ax.scatter([x], [y], s=400, color="white", edgecolor="black", zorder=2)
        ax.text(x, y, str(i), ha="center", va="center", fontsize=9, zorder=3)
        if i in orders:
            ax.text(x + 0.12, y, f"|H2|={orders[i]}", ha="left", va="center", fontsize=8)
    ax.set_title(f"WAct({report['H']['name']}, {report['N']['name']})")
    ax.axis("off")
    out = Path(path)
    fig.savefig(out, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return out


def plot_cohomology(report: dict, path) -> Path | None:
    rows = report.get("cohomology")
    if not rows:
        return None
    idx = [c["pair"] for c in rows]
    fig, ax = plt.subplots(figsize=(max(4, len(idx) * 0.6), 3))
    w = 0.4
    ax.bar([i - w / 2 for i in idx], [c["order"] for c in rows], width=w, label="|H2|")
    ax.bar([i + w / 2 for i in idx], [c["z1_order"] for c in rows], width=w, label="|Z1|")
    ax.set_xlabel("WAct element")
    ax.set_xticks(idx)
    ax.legend()
    out = Path(path)
    fig.savefig(out, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return out


def plot_hom_matrix(report: dict, path) -> Path | None:
    m = report.get("hom_matrix")
    if not m:
        return None
    fig, ax = plt.subplots(figsize=(1 + 0.5 * len(m), 1 + 0.5 * len(m)))
    ax.imshow(m, cmap="Blues")
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            ax.text(j, i, str(v), ha="center", va="center", fontsize=8)
    ax.set_xlabel("codomain extension")
    ax.set_ylabel("domain extension")
    ax.set_title("|Hom|")
    out = Path(path)
    fig.savefig(out, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return out


def render_figures(report: dict, directory) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    made = [
        plot_wact(report, d / "wact.png"),
        plot_cohomology(report, d / "cohomology.png"),
        plot_hom_matrix(report, d / "hom_matrix.png"),
    ]
    return [p for p in made if p is not None]
