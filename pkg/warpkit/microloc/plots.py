"""Pictures of singular directions per base point."""

import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from warpkit.microloc.wavefront import WavefrontEstimate

logger = logging.getLogger(__name__)

SUFFIXES = {".png", ".svg"}


def plot_wavefront(wf: WavefrontEstimate, path: Path, title: str = "") -> Path:
    """1D: singular (x, sign) pairs. 2D: arrows along singular covectors from each base point.

    Higher dimensions are drawn through their first two coordinates.
    """
    path = Path(path)
    if path.suffix.lower() not in SUFFIXES:
        raise ValueError(f"Plot files must end in .png or .svg, got {path.name}")
    path.parent.mkdir(parents=True, exist_ok=True)
    singular = wf.singular()
    points = np.array([e.base_point for e in wf.entries]) if wf.entries else np.zeros((0, 1))
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    if points.shape[1] == 1:
        ax.scatter(points[:, 0], np.zeros(len(points)), s=8, color="0.7", label="base points")
        xs = [e.base_point[0] for e in singular]
        signs = [e.direction[0] for e in singular]
        ax.scatter(xs, signs, marker="x", color="C3", label="singular")
        ax.set_yticks([-1, 0, 1])
        ax.set_ylabel("covector direction")
    else:
        ax.scatter(points[:, 0], points[:, 1], s=8, color="0.7", label="base points")
        if singular:
            base = np.array([e.base_point[:2] for e in singular])
            dirs = np.array([e.direction[:2] for e in singular])
            scale = 0.1 * float(np.ptp(points[:, 0]) or 1.0)
            ax.quiver(base[:, 0], base[:, 1], dirs[:, 0], dirs[:, 1], color="C3", angles="xy", scale_units="xy", scale=1 / scale)
        ax.set_aspect("equal")
        ax.set_ylabel("x_2")
    ax.set_xlabel("x_1" if points.shape[1] > 1 else "x")
    ax.set_title(title or f"{len(singular)} singular entries")
    ax.legend(loc="best", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    logger.info(f"Wrote wavefront plot {path}")
    return path
