"""Brute-force two-species fermionic Fock space.

Used only to check the truncated coboson algebra against its second-quantized
definition. Modes ``0 .. n_s-1`` are the ``a`` species and ``n_s .. 2 n_s - 1``
the ``b`` species. A basis state is the integer whose bit ``i`` is the
occupation of mode ``i``. Creation on mode ``i`` carries the Jordan-Wigner sign
``(-1)**(number of occupied modes with index < i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from numpy.typing import NDArray

from .algebra import chi_normalization
from .exceptions import DomainError, ResourceCapError

__all__ = [
    "MAX_PAIR_STATES",
    "FermionSpace",
    "CompositeCreator",
    "mode_operator",
    "composite_creator",
    "oracle_fock_state",
    "oracle_fock_states",
    "oracle_d_operator",
    "project_to_coboson_sector",
    "random_phases",
]

MAX_PAIR_STATES = 8


def _popcount(a: NDArray[np.int64]) -> NDArray[np.int64]:
    # SWAR popcount, valid for values < 2**32
    a = a - ((a >> 1) & 0x55555555)
    a = (a & 0x33333333) + ((a >> 2) & 0x33333333)
    a = (a + (a >> 4)) & 0x0F0F0F0F
    return (a * 0x01010101 & 0xFFFFFFFF) >> 24


@dataclass(frozen=True)
class FermionSpace:
    """Fock space of ``2 n_s`` fermionic modes, dimension ``4**n_s``."""

    n_s: int
    states: NDArray[np.int64] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n_s = self.n_s
        if isinstance(n_s, bool) or not isinstance(n_s, (int, np.integer)) or n_s < 1:
            raise DomainError(f"n_s must be a positive integer, got {n_s!r}")
        if n_s > MAX_PAIR_STATES:
            raise ResourceCapError(
                f"fermion oracle is capped at n_s <= {MAX_PAIR_STATES} (dim 4**n_s), got {n_s}"
            )
        object.__setattr__(self, "n_s", int(n_s))
        states = np.arange(self.dim, dtype=np.int64)
        states.flags.writeable = False
        object.__setattr__(self, "states", states)

    @property
    def n_modes(self) -> int:
        return 2 * self.n_s

    @property
    def dim(self) -> int:
        return 4 ** self.n_s

    def a_mode(self, k: int) -> int:
        return k

    def b_mode(self, k: int) -> int:
        return self.n_s + k

    def vacuum(self) -> NDArray[np.complex128]:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v

    def identity(self) -> sp.csr_matrix:
        return sp.identity(self.dim, dtype=complex, format="csr")


def mode_operator(space: FermionSpace, mode: int, create: bool) -> sp.csr_matrix:
    """Creation (``create=True``) or annihilation operator on ``mode``."""
    if not 0 <= mode < space.n_modes:
        raise DomainError(f"mode {mode} out of range [0, {space.n_modes})")
    s = space.states
    bit = np.int64(1) << mode
    src = s[(s & bit) == 0]
    dst = src | bit
    sign = 1.0 - 2.0 * (_popcount(src & (bit - 1)) & 1)
    # c^dagger maps src -> dst; c is its transpose (signs are real)
    rows, cols = (dst, src) if create else (src, dst)
    return sp.coo_matrix((sign.astype(complex), (rows, cols)), shape=(space.dim, space.dim)).tocsr()


@dataclass(frozen=True)
class CompositeCreator:
    """``B^dagger = n_s**-0.5 * sum_k exp(i theta_k) a_k^dagger b_k^dagger``."""

    space: FermionSpace
    thetas: tuple[float, ...]
    matrix: sp.csr_matrix = field(repr=False, compare=False)

    @property
    def n_s(self) -> int:
        return self.space.n_s

    @property
    def annihilator(self) -> sp.csr_matrix:
        return self.matrix.conj().T.tocsr()


def composite_creator(space: FermionSpace, thetas: Sequence[float] | None = None) -> CompositeCreator:
    if thetas is None:
        thetas = (0.0,) * space.n_s
    thetas = tuple(float(t) for t in thetas)
    if len(thetas) != space.n_s:
        raise DomainError(f"expected {space.n_s} phases, got {len(thetas)}")
    total = sp.csr_matrix((space.dim, space.dim), dtype=complex)
    for k, theta in enumerate(thetas):
        pair = mode_operator(space, space.a_mode(k), True) @ mode_operator(space, space.b_mode(k), True)
        total = total + np.exp(1j * theta) * pair
    total = (total / math.sqrt(space.n_s)).tocsr()
    total.eliminate_zeros()
    return CompositeCreator(space, thetas, total)


def oracle_fock_states(creator: CompositeCreator) -> NDArray[np.complex128]:
    """Columns ``|0>, ..., |n_s>`` built as ``(B^dagger)**n |vac> / sqrt(n! chi_n)``."""
    n_s = creator.n_s
    out = np.empty((creator.space.dim, n_s + 1), dtype=complex)
    v = creator.space.vacuum()
    for n in range(n_s + 1):
        out[:, n] = v / math.sqrt(math.factorial(n) * chi_normalization(n, n_s))
        v = creator.matrix @ v
    return out


def oracle_fock_state(creator: CompositeCreator, n: int) -> NDArray[np.complex128]:
    """Unit-norm ``n``-coboson state in the full fermionic space.

    Raises:
        DomainError: ``n > n_s``, where ``(B^dagger)**n |vac>`` vanishes.
    """
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if n > creator.n_s:
        raise DomainError(f"(B^dagger)^{n}|vac> = 0 for n_s = {creator.n_s}; no such state")
    v = creator.space.vacuum()
    for _ in range(n):
        v = creator.matrix @ v
    return v / math.sqrt(math.factorial(n) * chi_normalization(n, creator.n_s))


def oracle_d_operator(space: FermionSpace) -> sp.csr_matrix:
    """``D = (1/n_s) sum_k (a_k^dagger a_k + b_k^dagger b_k)``, i.e. total number over ``n_s``."""
    occ = _popcount(space.states).astype(float) / space.n_s
    return sp.diags(occ.astype(complex), format="csr")


def project_to_coboson_sector(space: FermionSpace, creator: CompositeCreator, op) -> NDArray[np.complex128]:
    """Matrix elements ``<m| op |n>`` between oracle coboson Fock states."""
    v = oracle_fock_states(creator)
    return v.conj().T @ (op @ v)


def random_phases(n_s: int, rng: np.random.Generator) -> tuple[float, ...]:
    return tuple(rng.uniform(0.0, 2.0 * math.pi, size=n_s))
