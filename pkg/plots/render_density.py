#!/usr/bin/env python3
"""Spherical polar-plot renderer for rotator probability-density grids.

Consumes the density CSV/JSON files written by the `scarf-rotator density`
command (plus their manifest sidecars) and draws the density as a radius over
direction, one panel per input grid, so a free |Y_t^M|^2 pattern can sit next
to its perturbed counterpart. The polar angle is read from the horizontal
axis of the meridian cut, matching the shifted sphere parametrization of the
data files.

The renderer performs no physics: pixel content is a pure function of the
input grids.

Usage:
    python render_density.py free.csv perturbed.csv --out figure.png \
        --mode polar-slice --labels "b = 0" "b = 0.45"
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

MODES = ("polar-slice", "3d-spherical", "heatmap")


@dataclass
class DensityGridFile:
    theta: np.ndarray
    phi: np.ndarray
    values: np.ndarray  # (n_theta, n_phi)
    metadata: dict

    @property
    def shape(self):
        return self.values.shape


@dataclass
class PlotSpec:
    inputs: list[str]
    output: str
    mode: str = "polar-slice"
    labels: list[str] = field(default_factory=list)
    dpi: int = 150

    def __post_init__(self):
        if not 1 <= len(self.inputs) <= 2:
            raise ValueError("expected one or two input grids")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")


def _read_manifest(path: Path) -> dict:
    sidecar = path.with_name(path.name + ".manifest.json")
    if sidecar.exists():
        return json.loads(sidecar.read_text())
    return {}


def load_grid(path: str | Path) -> DensityGridFile:
    """Load a density grid from the CLI's CSV or JSON schema."""
    path = Path(path)
    manifest = _read_manifest(path)
    if path.suffix == ".csv":
        with path.open(newline="") as handle:
            reader = csv.reader(handle)
            header = next(reader)
            if header != ["theta", "phi", "density"]:
                raise ValueError(f"{path}: unexpected CSV header {header}")
            rows = [(float(a), float(b), float(c)) for a, b, c in reader]
        theta = sorted({r[0] for r in rows})
        phi = sorted({r[1] for r in rows})
        values = np.array([r[2] for r in rows]).reshape(len(theta), len(phi))
        metadata = manifest.get("metadata", {})
        return DensityGridFile(np.array(theta), np.array(phi), values, metadata)
    document = json.loads(path.read_text())
    data = document.get("data", document)
    metadata = data.get("metadata", manifest.get("metadata", {}))
    return DensityGridFile(
        np.array(data["theta"]),
        np.array(data["phi"]),
        np.array(data["values"]),
        metadata,
    )


def _panel_label(grid: DensityGridFile, override: str | None) -> str:
    if override:
        return override
    meta = grid.metadata
    if not meta:
        return "density"
    kind = "|Y|^2" if meta.get("mode") == "free" else "|psi|^2"
    return f"{kind}  t={meta.get('t')}, M={meta.get('m')}, b={meta.get('b')}"


def _draw_polar_slice(ax, grid: DensityGridFile, label: str) -> None:
    """Meridian silhouette: radius = density along the direction
    (-+cos theta, sin theta); the revolution around the vertical axis is
    symmetric since the density carries no phi dependence."""
    theta = grid.theta
    profile = grid.values[:, 0]
    for mirror in (-1.0, 1.0):
        ax.plot(mirror * profile * np.cos(theta), profile * np.sin(theta), color="#1b5e8a")
        ax.fill(
            np.concatenate([[0.0], mirror * profile * np.cos(theta), [0.0]]),
            np.concatenate([[0.0], profile * np.sin(theta), [0.0]]),
            color="#1b5e8a",
            alpha=0.25,
            linewidth=0,
        )
    ax.axhline(0.0, color="0.8", linewidth=0.5, zorder=0)
    ax.axvline(0.0, color="0.8", linewidth=0.5, zorder=0)
    ax.set_aspect("equal")
    ax.set_title(label, fontsize=9)
    ax.set_xticks([])
    ax.set_yticks([])
    for side in ax.spines.values():
        side.set_visible(False)


def _draw_heatmap(ax, grid: DensityGridFile, label: str) -> None:
    mesh = ax.pcolormesh(grid.phi, grid.theta, grid.values, shading="nearest", cmap="viridis")
    ax.set_xlabel("phi")
    ax.set_ylabel("theta")
    ax.set_title(label, fontsize=9)
    plt.colorbar(mesh, ax=ax, shrink=0.8)


def _draw_surface(ax, grid: DensityGridFile, label: str) -> None:
    theta = grid.theta[:, None]
    phi = grid.phi[None, :]
    r = grid.values
    x = r * np.cos(theta) * np.cos(phi)
    y = r * np.cos(theta) * np.sin(phi)
    z = r * np.sin(theta) * np.ones_like(phi)
    ax.plot_surface(x, y, z, rstride=2, cstride=2, cmap="viridis", linewidth=0)
    ax.set_title(label, fontsize=9)
    ax.set_box_aspect((1, 1, 1))


def render(spec: PlotSpec) -> Path:
    """Render the grids of a PlotSpec into one image file."""
    grids = [load_grid(p) for p in spec.inputs]
    if len(grids) == 2 and grids[0].shape != grids[1].shape:
        raise ValueError(
            f"side-by-side grids must share (n_theta, n_phi): "
            f"{grids[0].shape} vs {grids[1].shape}"
        )
    labels = list(spec.labels) + [None] * (len(grids) - len(spec.labels))

    subplot_kw = {"projection": "3d"} if spec.mode == "3d-spherical" else {}
    fig, axes = plt.subplots(
        1, len(grids), figsize=(4.2 * len(grids), 4.2), subplot_kw=subplot_kw
    )
    axes = np.atleast_1d(axes)
    draw = {
        "polar-slice": _draw_polar_slice,
        "heatmap": _draw_heatmap,
        "3d-spherical": _draw_surface,
    }[spec.mode]
    for ax, grid, label in zip(axes, grids, labels):
        draw(ax, grid, _panel_label(grid, label))
    fig.tight_layout()
    out = Path(spec.output)
    # fixed metadata keeps byte-identical output for identical inputs
    metadata = {"Date": None} if out.suffix == ".svg" else {"Software": "render_density"}
    fig.savefig(out, dpi=spec.dpi, metadata=metadata)
    plt.close(fig)
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("inputs", nargs="+", help="one or two density CSV/JSON files")
    parser.add_argument("--out", required=True, help="output image (.png or .svg)")
    parser.add_argument("--mode", choices=MODES, default="polar-slice")
    parser.add_argument("--labels", nargs="*", default=[])
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        spec = PlotSpec(
            inputs=args.inputs, output=args.out, mode=args.mode,
            labels=args.labels, dpi=args.dpi,
        )
        out = render(spec)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
