"""Domain model of the free and Scarf-I-perturbed rigid rotator.

The sphere is parametrized with the polar angle theta read from the negative
y-axis, so theta runs over (-pi/2, pi/2) and Legendre-type functions take the
argument x = sin(theta). Parity acts as theta -> -theta. The 1D reduction
U(theta) = sqrt(cos(theta)) * phi(theta) turns the angular eigenproblem into a
Schroedinger equation with the trigonometric Scarf potential; its spectrum
t(t+1) is independent of the perturbation strength b, which enters the wave
functions only.

Two normalization conventions are carried throughout:

* ``"paper"``      -- unnormalized harmonics Y_J^M = exp(i M phi) P_J^|M|(sin theta);
* ``"normalized"`` -- sphere-normalized harmonics, unit L2 norm under
  cos(theta) dtheta dphi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun

__all__ = [
    "CONVENTIONS",
    "DEFAULT_CONFIG",
    "InvalidParamsError",
    "RotorConfig",
    "ScarfParams",
    "StateLabel",
    "ParamVerdict",
    "validate_params",
    "require_valid",
    "energy",
    "transition_frequency",
    "potential_v1",
    "potential_scarf",
    "perturbation_sphere",
    "rescale_factor",
    "wavefunction_u",
    "wavefunction_u_derivs",
    "w_cos_jacobi_derivs",
    "norm_constant",
    "assoc_legendre_norm",
    "rescaled_harmonic",
    "default_order",
]

CONVENTIONS = ("paper", "normalized")


class InvalidParamsError(ValueError):
    """Raised when (M, b) violate the Jacobi-orthogonality conditions."""


@dataclass(frozen=True)
class RotorConfig:
    """Rotational constant and Planck scale; dimensionless mode uses 1, 1."""

    rotational_constant: float = 1.0
    planck_scale: float = 1.0

    def __post_init__(self) -> None:
        if self.rotational_constant <= 0.0:
            raise ValueError(f"rotational constant must be > 0, got {self.rotational_constant}")
        if self.planck_scale <= 0.0:
            raise ValueError(f"planck scale must be > 0, got {self.planck_scale}")


DEFAULT_CONFIG = RotorConfig()


@dataclass(frozen=True)
class ScarfParams:
    """Perturbation strength b and magnetic quantum number M.

    Valid iff |M| - b + 1 > 0 and |M| + b + 1 > 0, the condition for the
    Jacobi weight exponents |M| -+ b to stay above -1.
    """

    m_quantum: int
    b: float

    @property
    def a(self) -> float:
        """Scarf potential parameter a = |M| - 1/2 (derived, never stored)."""
        return abs(self.m_quantum) - 0.5


@dataclass(frozen=True)
class ParamVerdict:
    valid: bool
    violations: tuple[str, ...] = ()


def validate_params(params: ScarfParams) -> ParamVerdict:
    """Check the two strict inequalities |M| -+ b + 1 > 0."""
    m = abs(params.m_quantum)
    violations = []
    if not m - params.b + 1.0 > 0.0:
        violations.append(f"|M| - b + 1 > 0 violated: {m - params.b + 1.0:g} <= 0")
    if not m + params.b + 1.0 > 0.0:
        violations.append(f"|M| + b + 1 > 0 violated: {m + params.b + 1.0:g} <= 0")
    return ParamVerdict(valid=not violations, violations=tuple(violations))


def require_valid(params: ScarfParams) -> None:
    verdict = validate_params(params)
    if not verdict.valid:
        raise InvalidParamsError(
            f"invalid (M={params.m_quantum}, b={params.b}): " + "; ".join(verdict.violations)
        )


@dataclass(frozen=True)
class StateLabel:
    """Quantum numbers (t, M) of one eigenstate; n = t - |M| is derived."""

    t: int
    m_quantum: int
    n: int = field(init=False)
    epsilon: float = field(init=False)

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ValueError(f"t must be non-negative, got {self.t}")
        if abs(self.m_quantum) > self.t:
            raise ValueError(f"|M|={abs(self.m_quantum)} exceeds t={self.t}")
        object.__setattr__(self, "n", self.t - abs(self.m_quantum))
        object.__setattr__(self, "epsilon", float(self.t * (self.t + 1)))

    def params(self, b: float) -> ScarfParams:
        return ScarfParams(m_quantum=self.m_quantum, b=b)


def energy(t: int, config: RotorConfig = DEFAULT_CONFIG) -> float:
    """Level energy B * t * (t + 1); independent of b and M by construction."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    return config.rotational_constant * t * (t + 1)


def transition_frequency(j: int, config: RotorConfig = DEFAULT_CONFIG) -> float:
    """Line frequency nu(J) = (E_J - E_{J-1}) / h = 2 B J / h for J >= 1."""
    if j < 1:
        raise ValueError(f"transition frequency needs J >= 1, got {j}")
    return (energy(j, config) - energy(j - 1, config)) / config.planck_scale


def _check_theta(theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(theta) >= math.pi / 2):
        raise ValueError("theta must lie strictly inside (-pi/2, pi/2)")
    return theta


def potential_v1(theta, m_quantum: int):
    """Free-rotator 1D potential (M^2 - 1/4) sec^2(theta) - 1/4.

    The -1/4 makes this the exact b = 0 limit of the Scarf potential, so the
    spectrum of -d^2/dtheta^2 + V1 is t(t+1).
    """
    theta = _check_theta(theta)
    sec2 = 1.0 / np.cos(theta) ** 2
    out = (m_quantum**2 - 0.25) * sec2 - 0.25
    return out if out.ndim else float(out)


def potential_scarf(theta, params: ScarfParams):
    """Trigonometric Scarf potential of the perturbed 1D problem."""
    theta = _check_theta(theta)
    a = params.a
    b = params.b
    sec = 1.0 / np.cos(theta)
    out = (b**2 + a * (a + 1.0)) * sec**2 - b * (2.0 * a + 1.0) * np.tan(theta) * sec - 0.25
    return out if out.ndim else float(out)


def perturbation_sphere(theta, params: ScarfParams):
    """Perturbation added to the squared angular momentum on the sphere:
    b^2 sec^2(theta) - 2 b M tan(theta) sec(theta) - 1/4."""
    theta = _check_theta(theta)
    b = params.b
    m = params.m_quantum
    sec = 1.0 / np.cos(theta)
    out = b**2 * sec**2 - 2.0 * b * m * np.tan(theta) * sec - 0.25
    return out if out.ndim else float(out)


def rescale_factor(theta, b: float):
    """W(theta) = ((1 + sin theta)/(1 - sin theta))^(b/2).

    Reflection maps W to its inverse, W(-theta) = 1/W(theta); this is the
    factor that destroys definite parity for b != 0.
    """
    theta = _check_theta(theta)
    s = np.sin(theta)
    out = np.exp(0.5 * b * (np.log1p(s) - np.log1p(-s)))
    return out if out.ndim else float(out)


def w_cos_jacobi_derivs(power: float, b: float, n: int, alpha: float, beta_: float, theta):
    """Value and first two theta-derivatives of
    F(theta) = W(theta; b) cos^power(theta) P_n^(alpha, beta)(sin theta).

    Derivatives are fully analytic (chain rule through W and the Jacobi
    parameter-shift identity); no finite differences.
    """
    theta = _check_theta(theta)
    s = np.sin(theta)
    c = np.cos(theta)
    sec = 1.0 / c
    tan = s * sec

    envelope = rescale_factor(theta, b) * c**power
    # logarithmic derivative of the W * cos^power envelope
    g = b * sec - power * tan
    g_prime = b * sec * tan - power * sec**2

    p = specfun.jacobi_poly(n, alpha, beta_, s)
    dp = specfun.jacobi_poly_deriv(n, alpha, beta_, s)
    d2p = specfun.jacobi_poly_deriv(n, alpha, beta_, s, order=2)
    p_t = c * dp
    p_tt = -s * dp + c * c * d2p

    f = envelope * p
    df = envelope * (g * p + p_t)
    d2f = envelope * ((g_prime + g * g) * p + 2.0 * g * p_t + p_tt)
    return f, df, d2f


def wavefunction_u(state: StateLabel, b: float, theta):
    """Unnormalized 1D eigenfunction
    U_t^|M|(theta) = W(theta) cos^(|M|+1/2)(theta) P_n^(|M|-b, |M|+b)(sin theta)."""
    require_valid(state.params(b))
    m = abs(state.m_quantum)
    theta = _check_theta(theta)
    out = (
        rescale_factor(theta, b)
        * np.cos(theta) ** (m + 0.5)
        * specfun.jacobi_poly(state.n, m - b, m + b, np.sin(theta))
    )
    return out if out.ndim else float(out)


def wavefunction_u_derivs(state: StateLabel, b: float, theta):
    """U, U', U'' (analytic) for the unnormalized eigenfunction."""
    require_valid(state.params(b))
    m = abs(state.m_quantum)
    return w_cos_jacobi_derivs(m + 0.5, b, state.n, m - b, m + b, theta)


def default_order(t_max: int) -> int:
    """Default quadrature order: margin over the largest polynomial degree."""
    return 2 * (t_max + 8)


def norm_constant(state: StateLabel, b: float, order: int | None = None) -> float:
    """N such that the integral of (N U)^2 dtheta equals 1.

    Computed with Gauss-Jacobi quadrature in x = sin(theta): U^2/cos(theta)
    is exactly the Jacobi weight (1-x)^(|M|-b) (1+x)^(|M|+b) times the squared
    Jacobi polynomial, so the rule is exact at finite order.
    """
    require_valid(state.params(b))
    m = abs(state.m_quantum)
    if order is None:
        order = default_order(state.t)
    nodes, weights = specfun.gauss_jacobi(order, m - b, m + b)
    p = specfun.jacobi_poly(state.n, m - b, m + b, nodes)
    norm_sq = float(np.dot(weights, p * p))
    return 1.0 / math.sqrt(norm_sq)


def assoc_legendre_norm(j: int, m: int, order: int | None = None) -> float:
    """L2(dx) norm of the associated Legendre function P_j^|m| on (-1, 1)."""
    if order is None:
        order = default_order(j)
    rule = specfun.gauss_legendre(order)
    p = specfun.assoc_legendre(j, m, rule.nodes)
    return math.sqrt(rule.integrate(p * p))


def rescaled_harmonic(j: int, m: int, b: float, theta, phi, convention: str = "paper"):
    """Rescaled harmonic sqrt(cos theta) W(theta) Y_j^m(theta, phi).

    ``convention="paper"`` uses the unnormalized Y of the shifted
    parametrization; ``"normalized"`` divides by the sphere norm
    sqrt(2 pi) * ||P_j^|m|||, giving unit L2 norm under dtheta dphi at b = 0.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    if abs(m) > j:
        raise ValueError(f"|m|={abs(m)} exceeds j={j}")
    require_valid(ScarfParams(m_quantum=m, b=b))
    theta = _check_theta(theta)
    phi = np.asarray(phi, dtype=float)
    radial = (
        np.sqrt(np.cos(theta))
        * rescale_factor(theta, b)
        * specfun.assoc_legendre(j, m, np.sin(theta))
    )
    if convention == "normalized":
        radial = radial / (math.sqrt(2.0 * math.pi) * assoc_legendre_norm(j, m))
    out = radial * np.exp(1j * m * phi)
    return out if out.ndim else complex(out)
