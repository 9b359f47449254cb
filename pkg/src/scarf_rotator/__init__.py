"""Scarf-I-perturbed rigid rotator.

Closed-form eigenfunctions, spectra, parity-mixing decompositions, and
electric-dipole expectations of the rigid rotator perturbed by the
trigonometric Scarf potential, together with an independent verification
engine (quadrature residuals and a Galerkin eigensolver) for the central
claim: the perturbation leaves the spectrum untouched while destroying the
parity of every wave function.
"""

from .analysis import (
    DecompositionResult,
    DensityGrid,
    ParityReport,
    decompose,
    density_map,
    dipole_moment,
    parity_mixing,
)
from .model import (
    DEFAULT_CONFIG,
    InvalidParamsError,
    RotorConfig,
    ScarfParams,
    StateLabel,
    energy,
    norm_constant,
    potential_scarf,
    potential_v1,
    perturbation_sphere,
    rescale_factor,
    rescaled_harmonic,
    transition_frequency,
    validate_params,
    wavefunction_u,
)
from .specfun import (
    QuadratureRule,
    assoc_legendre,
    beta,
    gauss_jacobi,
    gauss_legendre,
    jacobi_poly,
    log_gamma,
)
from .verify import (
    EigReport,
    IsospectralityReport,
    ResidualReport,
    SimilarityReport,
    hamiltonian_residual,
    isospectrality_report,
    orthogonality_check,
    potential_matrix,
    similarity_check,
    solve_eigen_galerkin,
)

__version__ = "0.1.0"
