"""Special-function kernel: Jacobi polynomials, associated Legendre functions
in the sin-theta parametrization, Gauss quadrature, and log-gamma/beta helpers.

All quadrature in this package runs on the interval x = sin(theta) in (-1, 1),
so theta-integrals carry a 1/cos(theta) factor when mapped to x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "QuadratureRule",
    "jacobi_poly",
    "jacobi_poly_deriv",
    "assoc_legendre",
    "assoc_legendre_scale",
    "gauss_legendre",
    "gauss_jacobi",
    "log_gamma",
    "beta",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on (-1, 1).

    Weights sum to 2 and the rule integrates polynomials up to degree
    2*order - 1 exactly. Instances are immutable.
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        self.nodes.flags.writeable = False
        self.weights.flags.writeable = False

    def integrate(self, values: np.ndarray) -> float:
        """Weighted sum of integrand values sampled on the nodes."""
        return float(np.dot(self.weights, values))


def _check_jacobi_params(alpha: float, beta_: float) -> None:
    if alpha <= -1.0 or beta_ <= -1.0:
        raise ValueError(
            f"Jacobi parameters must exceed -1 (weight integrability); "
            f"got alpha={alpha}, beta={beta_}"
        )


def jacobi_poly(n: int, alpha: float, beta_: float, x):
    """Evaluate the Jacobi polynomial P_n^(alpha, beta) at x.

    Forward three-term recurrence in the degree, stable for the moderate
    degrees (n <= ~64) and parameters used here. Accepts scalar or array x.
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    _check_jacobi_params(alpha, beta_)
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p = ((alpha + beta_ + 2.0) * x + (alpha - beta_)) / 2.0
    for k in range(2, n + 1):
        s = 2.0 * k + alpha + beta_
        c1 = 2.0 * k * (k + alpha + beta_) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * x + alpha**2 - beta_**2)
        c3 = 2.0 * (k + alpha - 1.0) * (k + beta_ - 1.0) * s
        p, p_prev = (c2 * p - c3 * p_prev) / c1, p
    return p if p.ndim else float(p)


def jacobi_poly_deriv(n: int, alpha: float, beta_: float, x, order: int = 1):
    """Derivative d^order/dx^order of P_n^(alpha, beta) via the parameter-shift
    identity d/dx P_n^(a,b) = (n + a + b + 1)/2 * P_{n-1}^(a+1, b+1)."""
    if order < 0:
        raise ValueError(f"derivative order must be non-negative, got {order}")
    if order == 0:
        return jacobi_poly(n, alpha, beta_, x)
    if n < order:
        x = np.asarray(x, dtype=float)
        z = np.zeros_like(x)
        return z if z.ndim else 0.0
    scale = 1.0
    for k in range(order):
        scale *= (n + alpha + beta_ + 1.0 + k) / 2.0
    return scale * jacobi_poly(n - order, alpha + order, beta_ + order, x)


def jacobi_table(count: int, alpha: float, beta_: float, x: np.ndarray) -> np.ndarray:
    """Table of P_k^(alpha, beta)(x) for k = 0 .. count-1, shape (count, len(x)).

    Single vectorized run of the three-term recurrence; used by the Galerkin
    assembly where whole basis families are evaluated on quadrature nodes.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    _check_jacobi_params(alpha, beta_)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    table = np.empty((count, x.size))
    table[0] = 1.0
    if count > 1:
        table[1] = ((alpha + beta_ + 2.0) * x + (alpha - beta_)) / 2.0
    for k in range(2, count):
        s = 2.0 * k + alpha + beta_
        c1 = 2.0 * k * (k + alpha + beta_) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * x + alpha**2 - beta_**2)
        c3 = 2.0 * (k + alpha - 1.0) * (k + beta_ - 1.0) * s
        table[k] = (c2 * table[k - 1] - c3 * table[k - 2]) / c1
    return table


def assoc_legendre_scale(j: int, m: int) -> float:
    """Ratio between the associated Legendre function P_j^m (Rodrigues form,
    no Condon-Shortley phase) and (1-x^2)^(m/2) P_{j-m}^(m, m)(x).

    Equals (j+m)! / (j! 2^m); both conventions coincide for m = 0.
    """
    m = abs(m)
    scale = 1.0
    for k in range(1, m + 1):
        scale *= (j + k) / 2.0
    return scale


def assoc_legendre(j: int, m: int, x):
    """Associated Legendre function P_j^|m|(x) without Condon-Shortley phase.

    Values match the Rodrigues construction (1-x^2)^(|m|/2) d^|m|/dx^|m| P_j(x),
    e.g. P_2^1(x) = 3 x sqrt(1-x^2). In the shifted sphere parametrization the
    argument is x = sin(theta).
    """
    if j < 0:
        raise ValueError(f"degree must be non-negative, got {j}")
    m = abs(m)
    if m > j:
        raise ValueError(f"|m|={m} exceeds degree j={j}")
    x = np.asarray(x, dtype=float)
    envelope = (1.0 - x * x) ** (m / 2.0)
    out = assoc_legendre_scale(j, m) * envelope * jacobi_poly(j - m, m, m, x)
    return out if out.ndim else float(out)


def _golub_welsch(order: int, alpha: float, beta_: float):
    """Nodes/weights of the Gauss rule for weight (1-x)^alpha (1+x)^beta on
    [-1, 1], from the eigendecomposition of the Jacobi recurrence matrix."""
    if order < 1:
        raise ValueError(f"quadrature order must be positive, got {order}")
    _check_jacobi_params(alpha, beta_)
    k = np.arange(order, dtype=float)
    ab = alpha + beta_
    # k = 0 needs the cancelled form (beta - alpha)/(ab + 2): the generic
    # expression is 0/0 when alpha + beta = 0.
    diag = np.empty(order)
    diag[0] = (beta_ - alpha) / (ab + 2.0)
    if order > 1:
        kk = k[1:]
        diag[1:] = (beta_**2 - alpha**2) / ((2.0 * kk + ab) * (2.0 * kk + ab + 2.0))
    if order > 1:
        i = np.arange(1.0, order)
        s = 2.0 * i + ab
        off = np.sqrt(
            4.0 * i * (i + alpha) * (i + beta_) * (i + ab) / (s * s * (s * s - 1.0))
        )
    else:
        off = np.zeros(0)
    nodes, vecs = eigh_tridiagonal(diag, off)
    mu0 = math.exp((ab + 1.0) * math.log(2.0) + _log_beta(alpha + 1.0, beta_ + 1.0))
    weights = mu0 * vecs[0, :] ** 2
    return nodes, weights


def gauss_legendre(order: int) -> QuadratureRule:
    """Gauss-Legendre rule of the given order on (-1, 1)."""
    nodes, weights = _golub_welsch(order, 0.0, 0.0)
    return QuadratureRule(order=order, nodes=nodes, weights=weights)


def gauss_jacobi(order: int, alpha: float, beta_: float):
    """Gauss-Jacobi nodes and weights for weight (1-x)^alpha (1+x)^beta.

    Needed whenever the W(theta)^2 factor of the perturbed wave functions
    appears in an integrand: the weight absorbs it exactly, so products of
    wave functions integrate exactly at finite order.
    """
    return _golub_welsch(order, alpha, beta_)


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if x <= 0.0:
        raise ValueError(f"log_gamma requires a positive argument, got {x}")
    return math.lgamma(x)


def _log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta(a: float, b: float) -> float:
    """Euler beta function B(a, b) for a, b > 0."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"beta requires positive arguments, got a={a}, b={b}")
    return math.exp(_log_beta(a, b))
