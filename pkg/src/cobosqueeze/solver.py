r"""Squeezed coboson states as eigenstates of the Bogoliubov-transformed operator.

The transformed annihilator

.. math::

    \mathfrak{B}_\xi = \cosh r\, B + e^{i\varphi} \sinh r\, B^\dagger

is a zero-diagonal tridiagonal matrix with superdiagonal ``C_N = cosh(r) F_N``
and subdiagonal ``S_N = e^{i phi} sinh(r) F_N``. At ``phi = 0`` a diagonal
similarity makes it real symmetric with off-diagonals ``F_N sqrt(cosh r sinh r)``,
so its spectrum is ``sqrt(sinh 2r)`` times the spectrum of the quadrature
``chi``. Nonzero phases are reached by an exact diagonal unitary similarity
from the ``phi = 0`` solution.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import eigh_tridiagonal, solve_banded

from .algebra import (
    LadderSpec,
    _as_spec,
    chi_quadrature_matrix,
    commutator,
    d_matrix,
    pi_quadrature_matrix,
)
from .exceptions import DegenerateParameterError, DomainError, ToleranceError

__all__ = [
    "Tolerances",
    "SqueezeParams",
    "BogoliubovMatrix",
    "SqueezedState",
    "bogoliubov_matrix",
    "solve_symmetrized",
    "spectrum",
    "eigensolve",
    "phase_rotate",
    "select_index",
    "expectation",
    "quadrature_variances",
    "uncertainty_product",
    "bosonic_reference",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the solver.

    ``residual`` is relative to the Frobenius norm of the operator.
    """

    residual: float = 1e-9
    identity: float = 1e-12
    zero: float = 1e-10
    tie: float = 1e-10


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class SqueezeParams:
    """Squeezing magnitude ``r >= 0`` and phase ``phi``, reduced into ``[0, 2 pi)``."""

    r: float
    phi: float = 0.0

    def __post_init__(self):
        r, phi = float(self.r), float(self.phi)
        if not math.isfinite(r) or r < 0:
            raise DomainError(f"r must be a finite nonnegative real, got {self.r!r}")
        if not math.isfinite(phi):
            raise DomainError(f"phi must be finite, got {self.phi!r}")
        phi = math.fmod(phi, TWO_PI)
        if phi < 0:
            phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "phi", phi)

    @property
    def xi(self) -> complex:
        return self.r * cmath.exp(1j * self.phi)

    @property
    def degenerate(self) -> bool:
        return self.r == 0.0


@dataclass(frozen=True)
class BogoliubovMatrix:
    """Banded storage of the transformed annihilator.

    ``superdiag[N-1] = C_N`` sits at entry ``(N-1, N)``; ``subdiag[N-1] = S_N``
    at entry ``(N, N-1)``. The diagonal is identically zero.
    """

    spec: LadderSpec
    params: SqueezeParams
    superdiag: NDArray = field(repr=False, compare=False)
    subdiag: NDArray = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def is_real(self) -> bool:
        return self.params.phi == 0.0

    def toarray(self) -> NDArray:
        return np.diag(self.superdiag, 1) + np.diag(self.subdiag, -1)

    __array__ = toarray

    def matvec(self, x: NDArray) -> NDArray:
        y = np.zeros(self.dim, dtype=np.result_type(x, self.subdiag))
        y[:-1] += self.superdiag * x[1:]
        y[1:] += self.subdiag * x[:-1]
        return y

    def frobenius_norm(self) -> float:
        return float(math.sqrt(np.sum(np.abs(self.superdiag) ** 2) + np.sum(np.abs(self.subdiag) ** 2)))


@dataclass(frozen=True)
class SqueezedState:
    """Unit-norm eigenvector ``x`` of the transformed operator with eigenvalue ``alpha``."""

    alpha: complex
    x: NDArray = field(repr=False, compare=False)
    d: float
    n_s: int
    params: SqueezeParams
    index: int
    residual: float = 0.0


def bogoliubov_matrix(spec, params) -> BogoliubovMatrix:
    """``cosh(r) B + exp(i phi) sinh(r) B^dagger`` in banded form.

    ``params`` may be a :class:`SqueezeParams` or a bare ``r`` (``phi = 0``).
    """
    spec = _as_spec(spec)
    if not isinstance(params, SqueezeParams):
        params = SqueezeParams(params)
    c, s = math.cosh(params.r), math.sinh(params.r)
    sup = c * spec.f
    if params.phi == 0.0:
        sub = s * spec.f
    else:
        sub = cmath.exp(1j * params.phi) * s * spec.f
    sup.flags.writeable = False
    sub.flags.writeable = False
    return BogoliubovMatrix(spec, params, sup, sub)


def _require_nondegenerate(m: BogoliubovMatrix):
    if m.params.degenerate:
        raise DegenerateParameterError(
            "r = 0: the operator is nilpotent and only |0> with alpha = 0 is an eigenstate"
        )


def solve_symmetrized(m: BogoliubovMatrix) -> tuple[NDArray[np.float64], float]:
    """Eigenvalues of the real ``phi = 0`` operator via its symmetric similar form.

    Returns ``(eigenvalues, scale)`` with eigenvalues ascending and
    ``scale = sqrt(sinh 2r)``, the factor relating them to the spectrum of the
    ``chi`` quadrature.
    """
    _require_nondegenerate(m)
    if not m.is_real:
        raise DomainError("solve_symmetrized needs phi = 0; reduce with phase_rotate first")
    r = m.params.r
    off = m.spec.f * math.sqrt(math.cosh(r) * math.sinh(r))
    w = eigh_tridiagonal(np.zeros(m.dim), off, eigvals_only=True)
    return w, math.sqrt(math.sinh(2.0 * r))


def _canonical_order(values: NDArray, tie: float) -> NDArray[np.intp]:
    """Ascending real part; real parts within ``tie`` (relative) count as equal
    and are then ordered by ascending imaginary part."""
    values = np.asarray(values, dtype=complex)
    if values.size == 0:
        return np.zeros(0, dtype=np.intp)
    scale = max(1.0, float(np.max(np.abs(values))))
    by_real = np.argsort(values.real, kind="stable")
    out: list[int] = []
    cluster = [by_real[0]]
    for i in by_real[1:]:
        if values.real[i] - values.real[cluster[-1]] <= tie * scale:
            cluster.append(i)
        else:
            out.extend(sorted(cluster, key=lambda j: values.imag[j]))
            cluster = [i]
    out.extend(sorted(cluster, key=lambda j: values.imag[j]))
    return np.asarray(out, dtype=np.intp)


def _rotation_factor(phi: float) -> complex:
    return cmath.exp(0.5j * phi)


def spectrum(m: BogoliubovMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> NDArray[np.complex128]:
    """All ``n_s + 1`` eigenvalues in canonical order."""
    w0, _ = solve_symmetrized(_at_zero_phase(m))
    w = w0 * _rotation_factor(m.params.phi)
    return w[_canonical_order(w, tol.tie)]


def _at_zero_phase(m: BogoliubovMatrix) -> BogoliubovMatrix:
    if m.is_real:
        return m
    return bogoliubov_matrix(m.spec, SqueezeParams(m.params.r, 0.0))


def _residual(m: BogoliubovMatrix, x, alpha) -> float:
    return float(np.linalg.norm(m.matvec(x) - alpha * x))


def _fix_sign(x: NDArray) -> NDArray:
    nz = np.flatnonzero(x)
    if nz.size and x[nz[0]] < 0:
        x = -x
    return x


def _recurrence_vector(m: BogoliubovMatrix, alpha: float) -> NDArray | None:
    """Forward three-term recurrence ``x_{N+1} = (alpha x_N - S_N x_{N-1}) / C_{N+1}``
    seeded with ``x_0 = 1``. Returns ``None`` on overflow."""
    c, s = m.superdiag, m.subdiag
    x = np.empty(m.dim)
    x[0] = 1.0
    with np.errstate(over="ignore", invalid="ignore"):
        if m.dim > 1:
            x[1] = alpha / c[0]
        for n in range(1, m.dim - 1):
            x[n + 1] = (alpha * x[n] - s[n - 1] * x[n - 1]) / c[n]
        norm = np.linalg.norm(x)
    if not np.isfinite(norm) or norm == 0.0:
        return None
    return x / norm


def _inverse_iteration(m: BogoliubovMatrix, alpha: float, start: NDArray | None,
                       target: float, max_iter: int = 4) -> NDArray:
    n = m.dim
    fro = m.frobenius_norm()
    shift = alpha + 4.0 * np.finfo(float).eps * max(fro, abs(alpha), 1.0)
    ab = np.zeros((3, n))
    ab[0, 1:] = m.superdiag
    ab[1, :] = -shift
    ab[2, :-1] = m.subdiag
    if start is None or not np.all(np.isfinite(start)):
        start = np.ones(n)
    x = start / np.linalg.norm(start)
    for _ in range(max_iter):
        z = solve_banded((1, 1), ab, x, check_finite=False)
        x = z / np.linalg.norm(z)
        if _residual(m, x, alpha) <= target:
            break
    return x


def _real_eigenvector(m: BogoliubovMatrix, alpha: float, tol: Tolerances) -> tuple[NDArray, float]:
    target = tol.residual * m.frobenius_norm()
    x = _recurrence_vector(m, alpha)
    if x is not None:
        res = _residual(m, x, alpha)
        if res <= target:
            return _fix_sign(x), res
    x = _fix_sign(_inverse_iteration(m, alpha, x, target))
    return x, _residual(m, x, alpha)


def _make_state(m0: BogoliubovMatrix, alpha0: float, params: SqueezeParams, index: int,
                tol: Tolerances) -> SqueezedState:
    x, res = _real_eigenvector(m0, alpha0, tol)
    if res > tol.residual * m0.frobenius_norm():
        raise ToleranceError(
            f"eigenvector residual {res:.3e} exceeds tolerance for n_s={m0.spec.n_s}, r={m0.params.r}"
        )
    dvals = 2.0 * np.arange(m0.dim) / m0.spec.n_s
    d = float(np.dot(dvals, x * x))
    x.flags.writeable = False
    state = SqueezedState(complex(alpha0), x, d, m0.spec.n_s, m0.params, index, res)
    if params.phi != 0.0:
        state = _rotate_one(state, params.phi, index)
    return state


def eigensolve(m: BogoliubovMatrix, indices: Iterable[int] | None = None,
               tol: Tolerances = DEFAULT_TOLERANCES) -> list[SqueezedState]:
    """Squeezed states of ``m`` in canonical eigenvalue order.

    Eigenvalues come from the symmetric problem; each eigenvector is recovered
    in the original basis by the three-term recurrence, falling back to banded
    inverse iteration when the recurrence overflows or misses the residual
    target. ``indices`` restricts which states (canonical positions) are built.

    Raises:
        DegenerateParameterError: if ``r = 0``.
        ToleranceError: if an eigenvector cannot reach the residual target.
    """
    _require_nondegenerate(m)
    m0 = _at_zero_phase(m)
    w0, _ = solve_symmetrized(m0)
    rotated = w0 * _rotation_factor(m.params.phi)
    order = _canonical_order(rotated, tol.tie)
    wanted = range(m.dim) if indices is None else [_check_index(k, m.dim) for k in indices]
    return [_make_state(m0, float(w0[order[k]]), m.params, k, tol) for k in wanted]


def _check_index(k: int, dim: int) -> int:
    if not -dim <= k < dim:
        raise DomainError(f"state index {k} out of range for dimension {dim}")
    return k % dim


def _rotate_one(state: SqueezedState, phi: float, index: int) -> SqueezedState:
    n = np.arange(state.x.size)
    x = state.x * np.exp(0.5j * phi * n)
    x.flags.writeable = False
    params = SqueezeParams(state.params.r, state.params.phi + phi)
    return replace(state, alpha=state.alpha * _rotation_factor(phi), x=x, params=params, index=index)


def phase_rotate(states_at_phi0: Sequence[SqueezedState], phi: float,
                 tol: Tolerances = DEFAULT_TOLERANCES) -> list[SqueezedState]:
    """Map ``phi = 0`` eigenstates to eigenstates at phase ``phi``.

    ``alpha -> exp(i phi/2) alpha`` and ``x_N -> exp(i N phi/2) x_N``. The output is
    re-sorted into canonical order and re-indexed.
    """
    if any(s.params.phi != 0.0 for s in states_at_phi0):
        raise DomainError("phase_rotate expects states solved at phi = 0")
    if phi == 0.0:
        return list(states_at_phi0)
    rotated = [_rotate_one(s, phi, s.index) for s in states_at_phi0]
    order = _canonical_order(np.array([s.alpha for s in rotated]), tol.tie)
    return [replace(rotated[j], index=k) for k, j in enumerate(order)]


def select_index(m: BogoliubovMatrix, selector, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Resolve a state selector to a canonical index.

    ``selector`` is an integer ``k`` (negative counts from the end), ``"last"``
    (largest real part), ``"first"``, or ``"vacuum"`` (smallest ``|alpha|``,
    lowest index on ties).
    """
    if isinstance(selector, str):
        key = selector.strip().lower()
        if key == "last":
            return m.dim - 1
        if key == "first":
            return 0
        if key == "vacuum":
            w = spectrum(m, tol)
            mags = np.abs(w)
            return int(np.flatnonzero(mags <= mags.min() + tol.tie * max(1.0, mags.max()))[0])
        try:
            selector = int(key)
        except ValueError:
            raise DomainError(f"unknown state selector {selector!r}") from None
    if isinstance(selector, bool) or not isinstance(selector, (int, np.integer)):
        raise DomainError(f"unknown state selector {selector!r}")
    return _check_index(int(selector), m.dim)


def _vector(state) -> NDArray:
    return np.asarray(state.x if isinstance(state, SqueezedState) else state)


def expectation(state, op) -> complex:
    """``x^dagger op x``; ``state`` is a :class:`SqueezedState` or a bare vector."""
    x = _vector(state)
    op = op.toarray() if isinstance(op, BogoliubovMatrix) else np.asarray(op)
    if op.shape != (x.size, x.size):
        raise DomainError(f"operator shape {op.shape} does not match state dimension {x.size}")
    return complex(np.vdot(x, op @ x))


def _variance(x: NDArray, op: NDArray) -> float:
    ox = op @ x
    mean = np.vdot(x, ox).real
    second = np.vdot(ox, ox).real  # <op^2> = |op x|^2 for Hermitian op
    return float(second - mean * mean)


def quadrature_variances(state) -> tuple[float, float]:
    """``(var_chi, var_pi)`` from the quadrature matrices, never from closed forms."""
    x = _vector(state)
    n_s = x.size - 1
    if n_s < 1:
        raise DomainError("state vector must have length >= 2")
    return (_variance(x, chi_quadrature_matrix(n_s)), _variance(x, pi_quadrature_matrix(n_s)))


def uncertainty_product(state) -> tuple[float, float]:
    """Return ``(sqrt(var_chi var_pi), |<[chi, pi]>|/2)``.

    The bound is state dependent; for states with ``d <= 1`` it equals ``(1 - d)/2``.
    """
    x = _vector(state)
    n_s = x.size - 1
    var_chi, var_pi = quadrature_variances(x)
    comm = commutator(chi_quadrature_matrix(n_s), pi_quadrature_matrix(n_s))
    bound = abs(np.vdot(x, comm @ x)) / 2.0
    return math.sqrt(max(var_chi, 0.0) * max(var_pi, 0.0)), float(bound)


def d_expectation(state) -> float:
    x = _vector(state)
    return float(np.vdot(x, d_matrix(x.size - 1) @ x).real)


def bosonic_reference(r: float) -> tuple[float, float]:
    """Elementary-boson squeezed-vacuum variances ``(e^{-2r}/2, e^{2r}/2)``."""
    if r < 0:
        raise DomainError(f"r must be nonnegative, got {r}")
    return math.exp(-2.0 * r) / 2.0, math.exp(2.0 * r) / 2.0
