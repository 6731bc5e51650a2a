"""Optional figure rendering for run reports (opt-in via `radjump run --figures`).

Writes three PNGs next to the delimited output: a per-certificate margin
chart, the profile gallery, and the rhs-vs-epsilon sweep for the
epsilon-indexed checks.
"""

import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render_figures"]


def _margin_chart(certificates, path):
    labels, margins, colors = [], [], []
    for c in certificates:
        eps = f" eps={c.epsilon:g}" if c.epsilon is not None else ""
        labels.append(f"{c.profile_id[:6]} {c.name}{eps}")
        margins.append(c.margin)
        colors.append("#2a7" if c.passed else "#c33")
    fig, ax = plt.subplots(figsize=(8, max(3, 0.22 * len(labels))))
    y = np.arange(len(labels))
    ax.barh(y, margins, color=colors)
    ax.set_yticks(y, labels, fontsize=6)
    ax.set_xscale("symlog", linthresh=1e-10)
    ax.set_xlabel("certificate margin (symlog)")
    ax.axvline(0.0, color="k", lw=0.8)
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _profile_gallery(profiles, path):
    n = len(profiles)
    cols = min(4, max(1, n))
    rows = math.ceil(n / cols)
    fig, axes = plt.subplots(rows, cols, figsize=(3.2 * cols, 2.4 * rows), squeeze=False)
    for ax in axes.ravel()[n:]:
        ax.axis("off")
    for ax, (name, prof) in zip(axes.ravel(), profiles):
        r = np.linspace(0.0, prof.r_max, 400)
        ax.plot(r, prof.phi(r), lw=1.2)
        ax.set_title(f"{name} (d={prof.dim})", fontsize=8)
        ax.set_xlabel("r", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _eps_sweep(certificates, path):
    swept = {}
    for c in certificates:
        if c.epsilon is not None and c.name in ("FisherJump", "EntropyJump", "EntropyJumpNoReg", "LsiReg"):
            swept.setdefault((c.profile_id, c.name), []).append((c.epsilon, max(c.rhs, 1e-300)))
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for (pid, name), pts in sorted(swept.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", ms=3, lw=1,
                label=f"{pid[:6]} {name}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("epsilon")
    ax.set_ylabel("certificate rhs")
    if swept:
        ax.legend(fontsize=5, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_figures(certificates, profiles, out_dir):
    """Render the report figures; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "margins": os.path.join(out_dir, "margins.png"),
        "profiles": os.path.join(out_dir, "profiles.png"),
        "eps_sweep": os.path.join(out_dir, "eps_sweep.png"),
    }
    _margin_chart(certificates, paths["margins"])
    _profile_gallery(profiles, paths["profiles"])
    _eps_sweep(certificates, paths["eps_sweep"])
    return paths
