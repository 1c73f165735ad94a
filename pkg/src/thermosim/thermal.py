"""Gibbs states of finite-dimensional systems and their purifications.

Energies are dimensionless and the Boltzmann constant is fixed to 1, so the
inverse temperature ``beta`` carries units of inverse energy.  ``beta = 0``
is the infinite-temperature limit; ``beta = inf`` is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite

import numpy as np

from .qcore import ConfigurationError, DensityMatrix, StateVector


@dataclass(frozen=True)
class QuditHamiltonian:
    """Ordered energy levels of one subsystem; degeneracies are allowed."""

    energies: tuple[float, ...]

    def __post_init__(self) -> None:
        energies = tuple(float(e) for e in self.energies)
        if len(energies) < 2:
            raise ConfigurationError("a Hamiltonian needs at least two levels")
        if not all(isfinite(e) for e in energies):
            raise ConfigurationError("energies must be finite")
        object.__setattr__(self, "energies", energies)

    @property
    def dim(self) -> int:
        return len(self.energies)


@dataclass(frozen=True)
class ThermalSpec:
    beta: float
    hamiltonian: QuditHamiltonian

    def __post_init__(self) -> None:
        beta = float(self.beta)
        if not isfinite(beta) or beta < 0.0:
            raise ConfigurationError(f"beta must be finite and nonnegative, got {beta}")
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class GibbsWeights:
    """Thermal occupation probabilities and the partition function.

    Weights are mathematically strictly positive, but the smallest ones can
    round to 0.0 once beta times the energy spread exceeds about 745; callers
    that require strict positivity (the post-selection protocol) check it
    themselves.
    """

    weights: tuple[float, ...]
    partition: float

    def __post_init__(self) -> None:
        w = tuple(float(x) for x in self.weights)
        if any(x < 0.0 for x in w) or abs(sum(w) - 1.0) > 1e-12:
            raise ConfigurationError("weights must be nonnegative and sum to 1")
        object.__setattr__(self, "weights", w)


def gibbs_weights(spec: ThermalSpec) -> GibbsWeights:
    """Occupation probabilities e^(-beta*E_n)/Z and the partition function Z.

    Exponentials are shifted by the minimum energy before normalization so
    the weights stay well defined for beta*E up to several hundred.
    """
    e = np.asarray(spec.hamiltonian.energies, dtype=float)
    shifted = np.exp(-spec.beta * (e - e.min()))
    total = shifted.sum()
    z = float(np.exp(-spec.beta * e.min()) * total)
    return GibbsWeights(tuple(shifted / total), z)


def thermal_density(spec: ThermalSpec) -> DensityMatrix:
    """Gibbs state, diagonal in the energy eigenbasis."""
    return DensityMatrix((spec.hamiltonian.dim,), np.diag(gibbs_weights(spec).weights))


def purify(spec: ThermalSpec, phase: float = 0.0) -> StateVector:
    """Purification of the Gibbs state on an (ancilla, system) pair.

    Returns sum_n sqrt(p_n) |n>|n> with the ancilla as the first subsystem,
    so tracing out subsystem 0 recovers ``thermal_density(spec)``.  For
    qubits a relative phase e^(i*phase) may be attached to the n=1 branch;
    for higher dimensions the phase must be 0.
    """
    d = spec.hamiltonian.dim
    phase = float(phase)
    if phase != 0.0 and d != 2:
        raise ConfigurationError("a purification phase is only supported for qubits")
    roots = np.sqrt(gibbs_weights(spec).weights).astype(np.complex128)
    if d == 2:
        roots[1] *= np.exp(1j * phase)
    amps = np.zeros(d * d, dtype=np.complex128)
    amps[np.arange(d) * (d + 1)] = roots
    return StateVector((d, d), amps)
