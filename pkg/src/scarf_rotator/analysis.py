"""Physics outputs of the perturbed rotator: decomposition over rescaled
harmonics, parity-mixing fractions, electric-dipole expectations, and
probability-density grids.

Every integral is evaluated after the substitution x = sin(theta). Products of
two perturbed wave functions carry the Jacobi weight
(1-x)^(|M|-b) (1+x)^(|M|+b) exactly, so Gauss-Jacobi rules integrate them
exactly; all remaining integrands are plain polynomials handled by
Gauss-Legendre.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import model, specfun
from .model import ScarfParams, StateLabel

__all__ = [
    "DecompositionResult",
    "ParityReport",
    "DensityGrid",
    "decompose",
    "parity_mixing",
    "dipole_moment",
    "density_map",
    "theta_midpoint_grid",
]


@dataclass(frozen=True)
class DecompositionResult:
    """Coefficients c_J of a perturbed state over rescaled harmonics.

    ``convention="paper"`` expands the wave function of the exact formula over
    the unnormalized rescaled harmonics; ``"normalized"`` expands the
    unit-norm stripped state over unit-norm harmonics, so the coefficient
    vector has unit Euclidean norm.
    """

    t: int
    m_quantum: int
    b: float
    convention: str
    coefficients: dict[int, float]
    residual: float


@dataclass(frozen=True)
class ParityReport:
    """Even/odd squared-norm fractions of the normalized U under theta -> -theta.

    The split is taken on N*U itself in L2(dtheta), the Hilbert space where
    the 1D eigenproblem is self-adjoint.
    """

    t: int
    m_quantum: int
    b: float
    even_fraction: float
    odd_fraction: float
    basis: str = "parity on N*U(theta) under theta -> -theta, plain dtheta"


@dataclass(frozen=True)
class DensityGrid:
    """Sampled probability density |psi|^2 over an open (theta, phi) grid."""

    theta_samples: np.ndarray
    phi_samples: np.ndarray
    values: np.ndarray
    t: int
    m_quantum: int
    b: float
    convention: str
    mode: str
    asymmetry: float

    def __post_init__(self) -> None:
        self.theta_samples.flags.writeable = False
        self.phi_samples.flags.writeable = False
        self.values.flags.writeable = False


def _stripped_part(state: StateLabel, b: float, x: np.ndarray) -> np.ndarray:
    """Wave function with the sqrt(cos) W(theta) factor divided out:
    cos^|M|(theta) P_n^(|M|-b, |M|+b)(sin theta), as a function of x."""
    m = abs(state.m_quantum)
    return (1.0 - x * x) ** (m / 2.0) * specfun.jacobi_poly(state.n, m - b, m + b, x)


def decompose(
    state: StateLabel, b: float, convention: str = "paper", order: int | None = None
) -> DecompositionResult:
    """Expand a perturbed state over rescaled harmonics with J = |M| .. t.

    The sqrt(cos) W factor is stripped exactly; the remaining polynomial part
    is projected onto the associated Legendre functions P_J^|M|(sin theta)
    under the measure cos(theta) dtheta = dx, where the projection integrals
    are polynomial and hence exact under Gauss-Legendre.
    """
    if convention not in model.CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {model.CONVENTIONS}")
    model.require_valid(state.params(b))
    m = abs(state.m_quantum)
    if order is None:
        order = model.default_order(state.t)
    rule = specfun.gauss_legendre(order)
    x = rule.nodes
    q = _stripped_part(state, b, x)

    legendre = {j: specfun.assoc_legendre(j, m, x) for j in range(m, state.t + 1)}
    if convention == "paper":
        coeffs = {
            j: rule.integrate(q * p) / rule.integrate(p * p) for j, p in legendre.items()
        }
        reconstructed = sum(c * legendre[j] for j, c in coeffs.items())
        scaled_q = q
    else:
        q_norm = math.sqrt(rule.integrate(q * q))
        coeffs = {}
        basis_hat = {}
        for j, p in legendre.items():
            p_hat = p / math.sqrt(rule.integrate(p * p))
            basis_hat[j] = p_hat
            coeffs[j] = rule.integrate(q * p_hat) / q_norm
        reconstructed = sum(c * basis_hat[j] for j, c in coeffs.items())
        scaled_q = q / q_norm

    # psi - sum = sqrt(cos) W (q - reconstruction) e^(i M phi), and
    # cos dtheta = dx, so the dtheta norm is the W^2-weighted dx norm of the
    # stripped-part mismatch.
    w_sq = model.rescale_factor(np.arcsin(x), b) ** 2
    diff = scaled_q - reconstructed
    residual = math.sqrt(abs(rule.integrate(w_sq * diff * diff)))
    return DecompositionResult(
        t=state.t,
        m_quantum=state.m_quantum,
        b=b,
        convention=convention,
        coefficients=coeffs,
        residual=residual,
    )


def parity_mixing(state: StateLabel, b: float, order: int | None = None) -> ParityReport:
    """Even/odd fractions of the normalized eigenfunction under theta -> -theta.

    Uses f_even = (1 + S)/2 with S = <U, U(-.)>/<U, U>: the cross integral is
    a plain polynomial in x (the W factors cancel against each other), the
    norm is a Gauss-Jacobi-exact Jacobi-weight integral.
    """
    model.require_valid(state.params(b))
    m = abs(state.m_quantum)
    n = state.n
    if order is None:
        order = model.default_order(state.t)
    rule = specfun.gauss_legendre(order)
    x = rule.nodes
    cross = rule.integrate(
        (1.0 - x * x) ** m
        * specfun.jacobi_poly(n, m - b, m + b, x)
        * specfun.jacobi_poly(n, m - b, m + b, -x)
    )
    nodes, weights = specfun.gauss_jacobi(order, m - b, m + b)
    p = specfun.jacobi_poly(n, m - b, m + b, nodes)
    norm_sq = float(np.dot(weights, p * p))
    s = cross / norm_sq
    return ParityReport(
        t=state.t,
        m_quantum=state.m_quantum,
        b=b,
        even_fraction=0.5 * (1.0 + s),
        odd_fraction=0.5 * (1.0 - s),
    )


def dipole_moment(
    state: StateLabel, b: float, order: int | None = None, measure: str = "absorbed"
) -> float:
    """Electric-dipole expectation <sin theta> in the normalized state.

    ``measure="absorbed"`` (default) treats the 1D reduction as having
    absorbed the sphere Jacobian into U, i.e. a single sin(theta) under
    dtheta; this is the only reading with d_e = 0 at b = 0. ``"literal"``
    keeps the second sin(theta) factor as printed in the source integral,
    giving <sin^2 theta> instead.
    """
    if measure not in ("absorbed", "literal"):
        raise ValueError(f"unknown measure {measure!r}; expected 'absorbed' or 'literal'")
    model.require_valid(state.params(b))
    m = abs(state.m_quantum)
    if order is None:
        order = model.default_order(state.t)
    nodes, weights = specfun.gauss_jacobi(order, m - b, m + b)
    p2 = specfun.jacobi_poly(state.n, m - b, m + b, nodes) ** 2
    operator = nodes if measure == "absorbed" else nodes * nodes
    return float(np.dot(weights, p2 * operator) / np.dot(weights, p2))


def theta_midpoint_grid(n_theta: int) -> np.ndarray:
    """Symmetric midpoint grid on (-pi/2, pi/2), endpoints excluded by half a
    step; W(theta) is singular or vanishing at the endpoints for b != 0."""
    step = math.pi / n_theta
    return -math.pi / 2.0 + (np.arange(n_theta) + 0.5) * step


def _theta_profile_asymmetry(theta: np.ndarray, profile: np.ndarray) -> float:
    """Midpoint-rule integral of ||psi(theta)|^2 - |psi(-theta)|^2| dtheta.

    The grid is symmetric about 0, so reflection is an index reversal.
    """
    step = theta[1] - theta[0]
    return float(np.sum(np.abs(profile - profile[::-1])) * step)


def density_map(
    state: StateLabel,
    b: float,
    n_theta: int,
    n_phi: int,
    mode: str = "scarf",
    form: str = "u",
) -> DensityGrid:
    """Probability density |psi_t^M(theta, phi)|^2 on a regular grid.

    ``mode="scarf"`` samples the sphere-normalized perturbed state;
    ``mode="free"`` samples the sphere-normalized free harmonic |Y_t^M|^2
    (b plays no role there). ``form="phi"`` divides the cos(theta) factor
    out of the density, displaying |U/sqrt(cos)|^2 instead of |U|^2.

    The density is independent of phi for every state since |e^(i M phi)| = 1;
    the theta-profile asymmetry integral is attached as metadata.
    """
    if n_theta < 2 or n_phi < 2:
        raise ValueError(f"grid sizes must be >= 2, got n_theta={n_theta}, n_phi={n_phi}")
    if mode not in ("scarf", "free"):
        raise ValueError(f"unknown mode {mode!r}; expected 'scarf' or 'free'")
    if form not in ("u", "phi"):
        raise ValueError(f"unknown form {form!r}; expected 'u' or 'phi'")
    theta = theta_midpoint_grid(n_theta)
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi

    if mode == "free":
        m = abs(state.m_quantum)
        p = specfun.assoc_legendre(state.t, m, np.sin(theta))
        norm = model.assoc_legendre_norm(state.t, m)
        profile = p * p / (2.0 * math.pi * norm * norm)
    else:
        model.require_valid(state.params(b))
        u = model.wavefunction_u(state, b, theta)
        if form == "phi":
            u = u / np.sqrt(np.cos(theta))
        norm = model.norm_constant(state, b)
        profile = (norm * u) ** 2 / (2.0 * math.pi)

    values = np.repeat(profile[:, None], n_phi, axis=1)
    return DensityGrid(
        theta_samples=theta,
        phi_samples=phi,
        values=values,
        t=state.t,
        m_quantum=state.m_quantum,
        b=0.0 if mode == "free" else b,
        convention="normalized",
        mode=mode,
        asymmetry=_theta_profile_asymmetry(theta, profile),
    )
