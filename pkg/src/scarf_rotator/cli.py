"""Command-line surface with structured JSON/CSV output and run manifests.

Every run resolves its parameters from flags, then a config file, then
defaults. Data sections are deterministic: identical command plus config
produce byte-identical data output. The manifest (which carries the
timestamp) is kept separate -- embedded as a sibling of the data section on
stdout, written as a ``<out>.manifest.json`` sidecar for file output.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, analysis, model, verify
from .model import InvalidParamsError, RotorConfig, ScarfParams, StateLabel

DEFAULT_TOLERANCES = {
    "tol_residual": 1e-10,
    "tol_ortho": 1e-10,
    "tol_similarity": 1e-10,
    "tol_isospectral": 1e-6,
}


def load_config(path: str | Path) -> dict[str, str]:
    """Parse a KEY=VALUE config file; '#' starts a comment."""
    config: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"malformed config line (expected KEY=VALUE): {raw!r}")
        key, value = line.split("=", 1)
        config[key.strip()] = value.strip()
    return config


class _Resolver:
    """Flag value if given, else config value, else default."""

    def __init__(self, args: argparse.Namespace, config: dict[str, str]):
        self.args = args
        self.config = config

    def get(self, name: str, cast, default=None):
        value = getattr(self.args, name, None)
        if value is not None:
            return value
        if name in self.config:
            return cast(self.config[name])
        return default


def _manifest(command: str, parameters: dict, order, convention) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "artifact_version": __version__,
        "quadrature_order": order,
        "convention": convention,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _emit(data, manifest: dict, out: str | None, fmt: str, csv_writer=None) -> None:
    """Write the data document; file output gets a sidecar manifest."""
    if out is None:
        if fmt == "csv":
            sys.stdout.write(csv_writer(data))
        else:
            document = {"manifest": manifest, "data": data}
            sys.stdout.write(json.dumps(document, indent=2) + "\n")
        return
    out_path = Path(out)
    manifest_path = out_path.with_name(out_path.name + ".manifest.json")
    manifest = dict(manifest, data_file=out_path.name)
    if fmt == "csv":
        out_path.write_text(csv_writer(data))
    else:
        document = {"manifest_file": manifest_path.name, "data": data}
        out_path.write_text(json.dumps(document, indent=2) + "\n")
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")


def _fmt_float(x: float) -> str:
    return repr(float(x))


def _spectrum_csv(data: dict) -> str:
    buf = io.StringIO()
    buf.write("t,energy,degeneracy,frequency\n")
    for row in data["rows"]:
        freq = "" if row["frequency"] is None else _fmt_float(row["frequency"])
        buf.write(f"{row['t']},{_fmt_float(row['energy'])},{row['degeneracy']},{freq}\n")
    return buf.getvalue()


def _density_csv(data: dict) -> str:
    buf = io.StringIO()
    buf.write("theta,phi,density\n")
    for i, theta in enumerate(data["theta"]):
        for j, phi in enumerate(data["phi"]):
            buf.write(
                f"{_fmt_float(theta)},{_fmt_float(phi)},{_fmt_float(data['values'][i][j])}\n"
            )
    return buf.getvalue()


def cmd_spectrum(res: _Resolver) -> int:
    t_max = res.get("t_max", int, 5)
    if t_max < 0:
        raise ValueError(f"t-max must be non-negative, got {t_max}")
    config = RotorConfig(
        rotational_constant=res.get("b_rot", float, 1.0),
        planck_scale=res.get("planck", float, 1.0),
    )
    rows = []
    for t in range(t_max + 1):
        rows.append(
            {
                "t": t,
                "energy": model.energy(t, config),
                "degeneracy": 2 * t + 1,
                "frequency": model.transition_frequency(t, config) if t >= 1 else None,
            }
        )
    data = {"b_rot": config.rotational_constant, "t_max": t_max, "rows": rows}
    manifest = _manifest("spectrum", {"t_max": t_max, "b_rot": config.rotational_constant}, None, None)
    _emit(data, manifest, res.get("out", str), res.get("format", str, "json"), _spectrum_csv)
    return 0


def cmd_state(res: _Resolver) -> int:
    t = res.get("t", int)
    m = res.get("m", int, 0)
    b = res.get("b", float, 0.0)
    state = StateLabel(t=t, m_quantum=m)
    params = ScarfParams(m_quantum=m, b=b)
    model.require_valid(params)
    order = res.get("order", int, model.default_order(t))
    mm = abs(m)
    data = {
        "t": t,
        "m": m,
        "n": state.n,
        "b": b,
        "energy": state.epsilon,
        "degeneracy": 2 * t + 1,
        "norm_constant": model.norm_constant(state, b, order=order),
        "endpoint_exponents": [mm + 0.5 - b, mm + 0.5 + b],
        "dirichlet_compatible": verify.dirichlet_compatible(m, b),
    }
    manifest = _manifest("state", {"t": t, "m": m, "b": b}, order, None)
    _emit(data, manifest, res.get("out", str), "json")
    return 0


def cmd_decompose(res: _Resolver) -> int:
    t = res.get("t", int)
    m = res.get("m", int, 0)
    b = res.get("b", float, 0.0)
    convention = res.get("convention", str, "paper")
    order = res.get("order", int)
    result = analysis.decompose(StateLabel(t=t, m_quantum=m), b, convention=convention, order=order)
    data = {
        "t": t,
        "m": m,
        "b": b,
        "convention": convention,
        "coefficients": {str(j): c for j, c in sorted(result.coefficients.items())},
        "residual": result.residual,
    }
    manifest = _manifest(
        "decompose", {"t": t, "m": m, "b": b}, order or model.default_order(t), convention
    )
    _emit(data, manifest, res.get("out", str), "json")
    return 0


def cmd_parity(res: _Resolver) -> int:
    t = res.get("t", int)
    m = res.get("m", int, 0)
    b = res.get("b", float, 0.0)
    order = res.get("order", int)
    report = analysis.parity_mixing(StateLabel(t=t, m_quantum=m), b, order=order)
    data = {
        "t": t,
        "m": m,
        "b": b,
        "even_fraction": report.even_fraction,
        "odd_fraction": report.odd_fraction,
        "basis": report.basis,
    }
    manifest = _manifest("parity", {"t": t, "m": m, "b": b}, order or model.default_order(t), None)
    _emit(data, manifest, res.get("out", str), "json")
    return 0


def cmd_dipole(res: _Resolver) -> int:
    t = res.get("t", int)
    m = res.get("m", int, 0)
    b = res.get("b", float, 0.0)
    measure = res.get("edm_measure", str, "absorbed")
    order = res.get("order", int)
    value = analysis.dipole_moment(StateLabel(t=t, m_quantum=m), b, order=order, measure=measure)
    data = {"t": t, "m": m, "b": b, "measure": measure, "dipole": value}
    manifest = _manifest("dipole", {"t": t, "m": m, "b": b, "measure": measure},
                         order or model.default_order(t), None)
    _emit(data, manifest, res.get("out", str), "json")
    return 0


def cmd_density(res: _Resolver) -> int:
    t = res.get("t", int)
    m = res.get("m", int, 0)
    b = res.get("b", float, 0.0)
    n_theta = res.get("ntheta", int, 181)
    n_phi = res.get("nphi", int, 91)
    mode = "free" if getattr(res.args, "free", False) else "scarf"
    form = res.get("form", str, "u")
    grid = analysis.density_map(StateLabel(t=t, m_quantum=m), b, n_theta, n_phi, mode=mode, form=form)
    metadata = {
        "t": grid.t,
        "m": grid.m_quantum,
        "b": grid.b,
        "convention": grid.convention,
        "mode": grid.mode,
        "form": form,
        "asymmetry": grid.asymmetry,
    }
    data = {
        "metadata": metadata,
        "theta": list(grid.theta_samples),
        "phi": list(grid.phi_samples),
        "values": [list(row) for row in grid.values],
    }
    manifest = _manifest("density", {"t": t, "m": m, "b": b, "ntheta": n_theta, "nphi": n_phi},
                         None, grid.convention)
    manifest["metadata"] = metadata
    _emit(data, manifest, res.get("out", str), res.get("format", str, "json"), _density_csv)
    return 0


def _verify_exit(data: dict, manifest: dict, res: _Resolver) -> int:
    _emit(data, manifest, res.get("out", str), "json")
    if not data["passed"]:
        failures = {k: v for k, v in data.items() if k.startswith(("max_", "residual", "spread"))}
        print(f"verification failed: {failures}", file=sys.stderr)
        return 1
    return 0


def cmd_verify(res: _Resolver) -> int:
    subtask = res.args.subtask
    m = res.get("m", int, 0)
    b = res.get("b_list", None) or [res.get("b", float, 0.0)]

    if subtask == "residual":
        t = res.get("t", int)
        order = res.get("order", int, 96)
        tol = res.get("tol_residual", float, DEFAULT_TOLERANCES["tol_residual"])
        report = verify.hamiltonian_residual(StateLabel(t=t, m_quantum=m), b[0], order=order)
        data = {
            "t": t, "m": m, "b": b[0], "residual": report.residual,
            "tolerance": tol, "passed": report.residual < tol,
        }
        manifest = _manifest("verify residual", {"t": t, "m": m, "b": b[0]}, order, None)
        return _verify_exit(data, manifest, res)

    if subtask == "eigen":
        levels = res.get("levels", int, 5)
        basis = res.get("basis_size", int, 64)
        order = res.get("order", int)
        kind = res.get("basis_kind", str, "adapted")
        report = verify.solve_eigen_galerkin(m, b[0], basis, levels, order=order, kind=kind)
        tol = res.get("tol_isospectral", float, DEFAULT_TOLERANCES["tol_isospectral"])
        data = {
            "m": m, "b": b[0], "basis_size": basis, "basis_kind": kind,
            "quadrature_order": report.quadrature_order,
            "eigenvalues": list(report.eigenvalues),
            "deviations": list(report.deviations),
            "max_deviation": max(report.deviations),
            "max_offdiag_overlap": report.max_offdiag_overlap,
            "converged": report.converged,
            "max_doubling_shift": report.max_doubling_shift,
            "tolerance": tol,
            "passed": report.converged and max(report.deviations) < tol * max(report.eigenvalues),
        }
        manifest = _manifest("verify eigen", {"m": m, "b": b[0], "basis_size": basis},
                             report.quadrature_order, None)
        return _verify_exit(data, manifest, res)

    if subtask == "ortho":
        t_max = res.get("t_max", int, 8)
        order = res.get("order", int)
        tol = res.get("tol_ortho", float, DEFAULT_TOLERANCES["tol_ortho"])
        deviation = verify.orthogonality_check(m, b[0], t_max, order=order)
        data = {"m": m, "b": b[0], "t_max": t_max, "max_deviation": deviation,
                "tolerance": tol, "passed": deviation < tol}
        manifest = _manifest("verify ortho", {"m": m, "b": b[0], "t_max": t_max},
                             order or model.default_order(t_max), None)
        return _verify_exit(data, manifest, res)

    if subtask == "similarity":
        j = res.get("t", int)
        order = res.get("order", int)
        tol = res.get("tol_similarity", float, DEFAULT_TOLERANCES["tol_similarity"])
        report = verify.similarity_check(j, m, b[0], order=order)
        worst = max(report.residual, report.scarf_residual or 0.0)
        data = {
            "j": j, "m": m, "b": b[0], "eigenvalue": report.eigenvalue,
            "residual": report.residual, "scarf_residual": report.scarf_residual,
            "tolerance": tol, "passed": worst < tol,
        }
        manifest = _manifest("verify similarity", {"j": j, "m": m, "b": b[0]},
                             report.quadrature_order, None)
        return _verify_exit(data, manifest, res)

    if subtask == "isospectral":
        levels = res.get("levels", int, 5)
        basis = res.get("basis_size", int, 64)
        order = res.get("order", int)
        tol = res.get("tol_isospectral", float, DEFAULT_TOLERANCES["tol_isospectral"])
        report = verify.isospectrality_report(m, b, levels, basis, order=order, tolerance=tol)
        data = {
            "m": m,
            "b_values": list(report.b_values),
            "levels": levels,
            "basis_size": basis,
            "eigenvalues": {repr(r.b): list(r.eigenvalues) for r in report.reports},
            "spreads": list(report.spreads),
            "max_spread": max(report.spreads),
            "converged": all(r.converged for r in report.reports),
            "tolerance": tol,
            "passed": report.passed,
        }
        manifest = _manifest("verify isospectral",
                             {"m": m, "b_values": list(report.b_values), "basis_size": basis},
                             report.reports[0].quadrature_order, None)
        return _verify_exit(data, manifest, res)

    raise ValueError(f"unknown verify subtask {subtask!r}")


def _parse_b_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip() != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scarf-rotator",
        description="Scarf-I-perturbed rigid rotator: spectra, wave-function "
        "analysis, and independent isospectrality verification.",
    )
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", help="KEY=VALUE config file; flags override it")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[shared], **kwargs)

    def add_common(p, *, state=True):
        if state:
            p.add_argument("--t", type=int, help="level quantum number t (J)")
            p.add_argument("--m", type=int, help="magnetic quantum number M")
            p.add_argument("--b", type=float, help="perturbation strength b")
        p.add_argument("--order", type=int, help="quadrature order override")
        p.add_argument("--out", help="output path (manifest written alongside)")

    p = add_parser("spectrum", help="level/frequency table of the rotational band")
    p.add_argument("--t-max", dest="t_max", type=int)
    p.add_argument("--b-rot", dest="b_rot", type=float, help="rotational constant")
    p.add_argument("--planck", type=float, help="Planck scale h")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = add_parser("state", help="quantum numbers and norm data of one state")
    add_common(p)
    p.set_defaults(func=cmd_state)

    p = add_parser("decompose", help="coefficients over rescaled harmonics")
    add_common(p)
    p.add_argument("--convention", choices=model.CONVENTIONS)
    p.set_defaults(func=cmd_decompose)

    p = add_parser("parity", help="even/odd fractions under theta -> -theta")
    add_common(p)
    p.set_defaults(func=cmd_parity)

    p = add_parser("dipole", help="electric-dipole expectation <sin theta>")
    add_common(p)
    p.add_argument("--edm-measure", dest="edm_measure", choices=("absorbed", "literal"))
    p.set_defaults(func=cmd_dipole)

    p = add_parser("density", help="probability-density grid over (theta, phi)")
    add_common(p)
    p.add_argument("--ntheta", type=int)
    p.add_argument("--nphi", type=int)
    p.add_argument("--free", action="store_true", help="emit the free-rotator |Y_t^M|^2")
    p.add_argument("--form", choices=("u", "phi"), help="density of U or of U/sqrt(cos)")
    p.add_argument("--format", choices=("json", "csv"))
    p.set_defaults(func=cmd_density)

    p = add_parser("verify", help="independent verification; exit 0 iff all tolerances met")
    p.add_argument("subtask", choices=("residual", "eigen", "ortho", "isospectral", "similarity"))
    add_common(p)
    p.add_argument("--b-list", dest="b_list", type=_parse_b_list,
                   help="comma-separated b values (isospectral)")
    p.add_argument("--t-max", dest="t_max", type=int)
    p.add_argument("--levels", type=int)
    p.add_argument("--basis-size", dest="basis_size", type=int)
    p.add_argument("--basis", dest="basis_kind", choices=verify.BASIS_KINDS)
    p.add_argument("--tol", dest="tol_isospectral", type=float,
                   help="tolerance for eigen/isospectral checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config) if getattr(args, "config", None) else {}
        return args.func(_Resolver(args, config))
    except InvalidParamsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
