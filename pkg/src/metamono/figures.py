"""Diagnostic figures rendered straight to image files.

Everything here is presentation only: the delimited outputs stay the
source of truth and these renderings sit alongside them.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .quatnum import COMPONENT_NAMES


def save_component_panels(path, x, y, values, title=""):
    """2x2 panel of the four components on a cartesian grid.

    ``x`` (W,) and ``y`` (H,) are ascending axes, ``values`` is
    (H, W, 4); points outside the unit disk are blanked.
    """
    values = np.asarray(values, dtype=float)
    X, Y = np.meshgrid(np.asarray(x), np.asarray(y))
    outside = np.hypot(X, Y) > 1.0
    fig, axes = plt.subplots(2, 2, figsize=(8.0, 7.2), constrained_layout=True)
    try:
        extent = (x[0], x[-1], y[0], y[-1])
        for c, ax in enumerate(axes.ravel()):
            comp = np.array(values[..., c])
            comp[outside] = np.nan
            im = ax.imshow(comp, origin="lower", extent=extent, cmap="RdBu_r")
            ax.set_title(COMPONENT_NAMES[c])
            ax.set_aspect("equal")
            fig.colorbar(im, ax=ax, shrink=0.85)
        if title:
            fig.suptitle(title)
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
    return path


def save_gram_heatmap(path, report, title=""):
    """log10 magnitude of every Gram entry, indices on both axes."""
    mags = np.sqrt(np.sum(report.matrix ** 2, axis=-1))
    fig, ax = plt.subplots(figsize=(7.5, 6.5), constrained_layout=True)
    try:
        im = ax.imshow(np.log10(mags + 1e-17), cmap="viridis")
        labels = ["(%d,%d)" % (i.n, i.m) for i in report.indices]
        ax.set_xticks(range(len(labels)), labels, rotation=90, fontsize=7)
        ax.set_yticks(range(len(labels)), labels, fontsize=7)
        fig.colorbar(im, ax=ax, label="log10 |entry|")
        ax.set_title(title or "Gram matrix magnitudes")
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
    return path


def save_convergence(path, profiles, title=""):
    """Residual against radial cutoff, one curve per labeled profile."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8), constrained_layout=True)
    try:
        for label, profile in profiles:
            ms = [m for m, _ in profile]
            rs = [r for _, r in profile]
            ax.semilogy(ms, rs, "o-", label=label)
        ax.set_xlabel("radial cutoff M")
        ax.set_ylabel("L2 residual")
        ax.grid(True, alpha=0.3)
        ax.legend()
        ax.set_title(title or "expansion convergence")
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
    return path


def save_emergence(path, times, fractions, t_star=None, threshold=0.1, title=""):
    """High-mode fraction over time with the detection threshold."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8), constrained_layout=True)
    try:
        ax.plot(times, fractions, "o-", label="mode fraction")
        ax.axhline(threshold, color="gray", linestyle="--", label="threshold")
        if t_star is not None:
            ax.axvline(t_star, color="red", linestyle=":", label="t* = %.3g" % t_star)
        ax.set_xlabel("t")
        ax.set_ylabel("relative mode amplitude")
        ax.legend()
        ax.set_title(title or "high-mode emergence")
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
    return path
