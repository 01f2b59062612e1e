"""Squeezed states of Frenkel-like two-fermion composite bosons."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    LadderSpec,
    b_dagger_matrix,
    b_matrix,
    chi_normalization,
    chi_quadrature_matrix,
    d_matrix,
    f_coefficient,
    fock_normalization,
    pi_quadrature_matrix,
)
from .exceptions import (  # noqa: E402
    CobosonError,
    DegenerateParameterError,
    DomainError,
    ResourceCapError,
    ToleranceError,
)
from .solver import (  # noqa: E402
    BogoliubovMatrix,
    SqueezedState,
    SqueezeParams,
    Tolerances,
    bogoliubov_matrix,
    bosonic_reference,
    eigensolve,
    expectation,
    phase_rotate,
    quadrature_variances,
    select_index,
    solve_symmetrized,
    spectrum,
    uncertainty_product,
)
