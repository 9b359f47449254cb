"""Renderer tests, driven entirely through the primary CLI's file interfaces.

Includes the figure-reproduction acceptance check: the free |Y_2^1|^2 grid is
theta-symmetric (asymmetry metric 0 within 1e-12) while the perturbed
|psi_2^1|^2 grid at b = 0.45 is visibly lopsided (metric > 0.01).
"""

import hashlib
import json
import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from render_density import PlotSpec, load_grid, render


def make_grid(path: Path, extra_args: list[str], fmt: str = "csv") -> Path:
    cmd = [
        "scarf-rotator", "density", "--t", "2", "--m", "1",
        "--ntheta", "121", "--nphi", "25", "--format", fmt, "--out", str(path),
    ] + extra_args
    subprocess.run(cmd, check=True, capture_output=True)
    return path


@pytest.fixture(scope="module")
def grids(tmp_path_factory):
    root = tmp_path_factory.mktemp("grids")
    free = make_grid(root / "free.csv", ["--b", "0", "--free"])
    perturbed = make_grid(root / "perturbed.csv", ["--b", "0.45"])
    return free, perturbed


def read_asymmetry(path: Path) -> float:
    manifest = json.loads(path.with_name(path.name + ".manifest.json").read_text())
    return manifest["metadata"]["asymmetry"]


class TestFigureReproduction:
    def test_free_grid_is_symmetric(self, grids):
        free, _ = grids
        assert abs(read_asymmetry(free)) < 1e-12

    def test_perturbed_grid_is_lopsided(self, grids):
        _, perturbed = grids
        assert read_asymmetry(perturbed) > 0.01

    def test_side_by_side_render(self, grids, tmp_path):
        out = render(PlotSpec(
            inputs=[str(grids[0]), str(grids[1])],
            output=str(tmp_path / "figure.png"),
            labels=["free b = 0", "perturbed b = 0.45"],
        ))
        assert out.exists()
        assert out.stat().st_size > 10_000


class TestLoader:
    def test_csv_round_trip_shape(self, grids):
        grid = load_grid(grids[1])
        assert grid.shape == (121, 25)
        assert grid.metadata["t"] == 2
        assert grid.metadata["b"] == 0.45
        assert (grid.values >= 0).all()

    def test_json_input(self, tmp_path):
        path = make_grid(tmp_path / "grid.json", ["--b", "0.2"], fmt="json")
        grid = load_grid(path)
        assert grid.shape == (121, 25)
        assert grid.metadata["m"] == 1

    def test_rejects_wrong_header(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError, match="header"):
            load_grid(bad)


class TestRenderer:
    def test_pixel_content_is_pure_function_of_input(self, grids, tmp_path):
        digests = []
        for name in ("one.png", "two.png"):
            out = render(PlotSpec(inputs=[str(grids[1])], output=str(tmp_path / name)))
            digests.append(hashlib.sha256(out.read_bytes()).hexdigest())
        assert digests[0] == digests[1]

    def test_constant_density_renders_a_sphere_silhouette(self, tmp_path):
        # isotropic input: the polar-slice silhouette is a circle, so the
        # radius spread across directions vanishes
        theta = [(-0.5 + (i + 0.5) / 40) * 3.141592653589793 for i in range(40)]
        doc = {
            "metadata": {"t": 0, "m": 0, "b": 0, "mode": "free"},
            "theta": theta,
            "phi": [0.0, 1.0, 2.0],
            "values": [[1.0, 1.0, 1.0] for _ in theta],
        }
        path = tmp_path / "const.json"
        path.write_text(json.dumps({"data": doc}))
        grid = load_grid(path)
        radii = grid.values[:, 0]
        assert max(radii) - min(radii) == 0.0
        out = render(PlotSpec(inputs=[str(path)], output=str(tmp_path / "sphere.png")))
        assert out.exists()

    def test_modes_render(self, grids, tmp_path):
        for mode in ("heatmap", "3d-spherical"):
            out = render(PlotSpec(
                inputs=[str(grids[1])], output=str(tmp_path / f"{mode}.png"), mode=mode,
            ))
            assert out.exists() and out.stat().st_size > 5_000

    def test_svg_output(self, grids, tmp_path):
        out = render(PlotSpec(inputs=[str(grids[0])], output=str(tmp_path / "fig.svg")))
        assert out.read_text().startswith("<?xml")

    def test_shape_mismatch_rejected(self, grids, tmp_path):
        # the repeated --ntheta overrides the fixture default of 121
        small = make_grid(tmp_path / "small.csv", ["--b", "0", "--free", "--ntheta", "31"])
        with pytest.raises(ValueError, match="share"):
            render(PlotSpec(
                inputs=[str(grids[0]), str(small)], output=str(tmp_path / "x.png"),
            ))

    def test_spec_validation(self, grids, tmp_path):
        with pytest.raises(ValueError, match="mode"):
            PlotSpec(inputs=[str(grids[0])], output="x.png", mode="wrong")
        with pytest.raises(ValueError, match="one or two"):
            PlotSpec(inputs=[], output="x.png")
