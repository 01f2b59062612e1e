r"""Truncated coboson Fock space for Frenkel-like composite bosons.

The basis is ``|0>, |1>, ..., |n_s>`` in ascending order, where ``n_s`` is the
number of pair states. Ladder actions are

.. math::

    B^\dagger |N\rangle = F_{N+1} |N+1\rangle, \qquad
    B |N\rangle = F_N |N-1\rangle, \qquad
    F_N = \sqrt{N (1 - (N - 1)/n_s)}

and ``F_{n_s+1} = 0`` (Pauli blocking), so the top state is annihilated by
``B^\dagger`` without any truncation artifact. All matrices returned here are
read-only numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .exceptions import DomainError

__all__ = [
    "LadderSpec",
    "f_coefficient",
    "chi_normalization",
    "fock_normalization",
    "b_matrix",
    "b_dagger_matrix",
    "d_matrix",
    "chi_quadrature_matrix",
    "pi_quadrature_matrix",
    "commutator",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _check_n_s(n_s) -> int:
    if isinstance(n_s, bool) or not isinstance(n_s, (int, np.integer)):
        raise DomainError(f"n_s must be an integer, got {n_s!r}")
    if n_s < 1:
        raise DomainError(f"n_s must be >= 1, got {n_s}")
    return int(n_s)


def f_coefficient(n: int, n_s: int) -> float:
    """Ladder coefficient ``F_n = sqrt(n (1 - (n - 1)/n_s))``.

    Defined for ``0 <= n <= n_s + 1``; both ends evaluate to exactly 0.

    >>> f_coefficient(2, 2)
    1.0
    >>> f_coefficient(3, 2)
    0.0
    """
    n_s = _check_n_s(n_s)
    if not 0 <= n <= n_s + 1:
        raise DomainError(f"n must lie in [0, {n_s + 1}], got {n}")
    # integer numerator keeps the blocked endpoint exactly zero
    return math.sqrt(n * (n_s - n + 1) / n_s)


@dataclass(frozen=True)
class LadderSpec:
    """Pair-state count and the derived ladder coefficients ``F_1 ... F_{n_s}``."""

    n_s: int
    f: NDArray[np.float64] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n_s = _check_n_s(self.n_s)
        object.__setattr__(self, "n_s", n_s)
        n = np.arange(1, n_s + 1, dtype=np.float64)
        object.__setattr__(self, "f", _frozen(np.sqrt(n * (n_s - n + 1) / n_s)))

    @property
    def dim(self) -> int:
        return self.n_s + 1


def _as_spec(spec) -> LadderSpec:
    return spec if isinstance(spec, LadderSpec) else LadderSpec(spec)


def chi_normalization(n: int, n_s: int) -> float:
    """Fock-state normalization ``chi_n = n_s! / (n_s**n (n_s - n)!)``.

    Evaluated as the telescoping product of ``F_k**2 / k``, which never forms a
    factorial and therefore does not overflow for large ``n_s``.
    """
    n_s = _check_n_s(n_s)
    if not 0 <= n <= n_s:
        raise DomainError(f"|{n}> does not exist for n_s = {n_s}")
    chi = 1.0
    for k in range(1, n + 1):
        chi *= (n_s - k + 1) / n_s
    return chi


def fock_normalization(n_s: int) -> NDArray[np.float64]:
    """All normalizations ``chi_0 ... chi_{n_s}`` as an array."""
    n_s = _check_n_s(n_s)
    k = np.arange(1, n_s + 1, dtype=np.float64)
    return _frozen(np.concatenate(([1.0], np.cumprod((n_s - k + 1) / n_s))))


def b_matrix(spec) -> NDArray[np.float64]:
    """Annihilator ``B``: entry ``(N-1, N) = F_N``."""
    spec = _as_spec(spec)
    return _frozen(np.diag(spec.f, 1))


def b_dagger_matrix(spec) -> NDArray[np.float64]:
    """Creator ``B^dagger``: entry ``(N+1, N) = F_{N+1}``."""
    spec = _as_spec(spec)
    return _frozen(np.diag(spec.f, -1))


def d_matrix(spec) -> NDArray[np.float64]:
    """Deviation operator ``D`` from ``[B, B^dagger] = 1 - D``; diagonal ``2N/n_s``."""
    spec = _as_spec(spec)
    return _frozen(np.diag(2.0 * np.arange(spec.dim) / spec.n_s))


def chi_quadrature_matrix(spec) -> NDArray[np.float64]:
    """Position-like quadrature ``(B + B^dagger)/sqrt(2)`` (real symmetric)."""
    spec = _as_spec(spec)
    off = spec.f / math.sqrt(2.0)
    return _frozen(np.diag(off, 1) + np.diag(off, -1))


def pi_quadrature_matrix(spec) -> NDArray[np.complex128]:
    """Momentum-like quadrature ``(B - B^dagger)/(sqrt(2) i)`` (Hermitian)."""
    spec = _as_spec(spec)
    off = spec.f / (math.sqrt(2.0) * 1j)
    return _frozen(np.diag(off, 1) - np.diag(off, -1))


def commutator(a, b):
    """Matrix commutator ``ab - ba``; works for dense and scipy.sparse operands."""
    return a @ b - b @ a
