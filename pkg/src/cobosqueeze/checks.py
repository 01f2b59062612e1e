"""Equivalence suite between the coboson-basis matrices and the fermionic oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra, oracle
from .algebra import commutator
from .exceptions import ResourceCapError

IDENTITIES = ("ladder", "chi_N", "commutator", "D-diagonal", "projection")


@dataclass(frozen=True)
class OracleReport:
    n_s_max: int
    seed: int
    draws: int
    deviations: dict[str, float]

    def passed(self, tol: float) -> bool:
        return all(v <= tol for v in self.deviations.values())


def _sparse_max_abs(m) -> float:
    m = m.tocoo()
    return float(np.max(np.abs(m.data))) if m.nnz else 0.0


def check_pair_count(n_s: int, thetas) -> dict[str, float]:
    """Maximum deviations for one pair-state count and one phase draw."""
    space = oracle.FermionSpace(n_s)
    creator = oracle.composite_creator(space, thetas)
    bd = creator.matrix
    b = creator.annihilator
    d = oracle.oracle_d_operator(space)
    fock = oracle.oracle_fock_states(creator)
    spec = algebra.LadderSpec(n_s)

    dev = dict.fromkeys(IDENTITIES, 0.0)

    proj_b = fock.conj().T @ (b @ fock)
    ladder = [abs(proj_b[n - 1, n] - algebra.f_coefficient(n, n_s)) for n in range(1, n_s + 1)]
    dev["ladder"] = max(ladder)

    v = space.vacuum()
    for n in range(n_s + 2):
        expected = math.factorial(n) * algebra.chi_normalization(n, n_s) if n <= n_s else 0.0
        got = float(np.vdot(v, v).real)
        err = abs(got - expected) / expected if expected else abs(got)
        dev["chi_N"] = max(dev["chi_N"], err)
        v = bd @ v

    one = space.identity()
    dev["commutator"] = max(
        _sparse_max_abs(commutator(b, bd) - (one - d)),
        _sparse_max_abs(commutator(d, bd) - (2.0 / n_s) * bd),
        _sparse_max_abs(commutator(d, b) + (2.0 / n_s) * b),
    )

    dvals = 2.0 * np.arange(n_s + 1) / n_s
    dev["D-diagonal"] = max(
        float(np.max(np.abs(fock.conj().T @ (d @ fock) - algebra.d_matrix(spec)))),
        float(np.max(np.abs(d @ fock - fock * dvals))),
    )

    dev["projection"] = max(
        float(np.max(np.abs(proj_b - algebra.b_matrix(spec)))),
        float(np.max(np.abs(fock.conj().T @ (bd @ fock) - algebra.b_dagger_matrix(spec)))),
        float(np.max(np.abs(fock.conj().T @ fock - np.eye(n_s + 1)))),
    )
    return dev


def run_oracle_suite(n_s_max: int, seed: int = 0, draws: int = 3) -> OracleReport:
    """Run every identity for ``n_s = 1 .. n_s_max`` over ``draws`` random phase sets."""
    if n_s_max > oracle.MAX_PAIR_STATES:
        raise ResourceCapError(
            f"n_s_max = {n_s_max} exceeds the oracle cap of {oracle.MAX_PAIR_STATES}"
        )
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(IDENTITIES, 0.0)
    for n_s in range(1, n_s_max + 1):
        for _ in range(draws):
            dev = check_pair_count(n_s, oracle.random_phases(n_s, rng))
            for k, v in dev.items():
                worst[k] = max(worst[k], v)
    return OracleReport(n_s_max, seed, draws, worst)
