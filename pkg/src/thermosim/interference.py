"""Read-out circuit that turns the phi+ post-selected state into fringes.

The circuit applies CNOT (A control, B target) to the post-selected state,
discards B, applies a Hadamard to A, and reports the probability of finding
A in |0>.  For the state (a|00> + b e^(i*phi)|11>)/N this evaluates to

    P(phi) = 1/2 * (1 + 2ab/N^2 * cos(phi)),

so the fringe visibility is 2ab/N^2 with a = sqrt(p0 f0), b = sqrt(p1 f1).
:func:`circuit_probability` simulates the circuit and is the module's ground
truth; :func:`closed_form_probability` evaluates the closed form, either with
the operational factor 2 in the cross term ("corrected") or without it
("paper", kept for comparison because the two differ by exactly that factor).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import qcore
from .protocol import BellOutcome, ProtocolConfig, post_select
from .qcore import ConfigurationError
from .thermal import ThermalSpec


@dataclass(frozen=True)
class SweepSpec:
    """Grid of phase values, optionally crossed with a beta_B axis."""

    cfg: ProtocolConfig
    phi_points: tuple[float, ...]
    beta_b_values: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        phis = tuple(float(x) for x in self.phi_points)
        if not phis:
            raise ConfigurationError("phi_points must be nonempty")
        object.__setattr__(self, "phi_points", phis)
        if self.beta_b_values is not None:
            betas = tuple(float(b) for b in self.beta_b_values)
            if any(b <= 0.0 for b in betas):
                raise ConfigurationError("beta_b sweep values must be positive")
            object.__setattr__(self, "beta_b_values", betas)


def circuit_probability(cfg: ProtocolConfig) -> float:
    """Probability of measuring |0> on A after the read-out circuit.

    Full simulation: CNOT on the phi+ post-selected state, partial trace over
    B, Hadamard on A, probability of |0>.  After the CNOT the reduced state
    of A is pure, so the statistics are well defined.
    """
    state = post_select(cfg, BellOutcome.PHI_PLUS).state
    state = qcore.apply(qcore.CNOT, state, targets=(0, 1))
    rho_a = qcore.partial_trace(state, keep={0}).entries
    h = qcore.HADAMARD.entries
    prob = float((h @ rho_a @ h.conj().T)[0, 0].real)
    return min(max(prob, 0.0), 1.0)  # roundoff guard


def _cross_coefficient(cfg: ProtocolConfig) -> float:
    (p0, p1), (f0, f1) = cfg.weights()
    n_sq = p0 * f0 + p1 * f1
    return np.sqrt(p0 * f0) * np.sqrt(p1 * f1) / n_sq


def closed_form_probability(cfg: ProtocolConfig, convention: str = "corrected") -> float:
    """Closed-form fringe probability; valid only when E0' = 0 and E1 = 0.

    In that regime sqrt(p0 f0 p1 f1) equals e^(-(beta_A*E0 + beta_B*E1')/2)
    divided by Z_A Z_B, so the formula is evaluated from the Gibbs weights
    directly.  The "corrected" convention carries the factor 2 produced by
    the circuit; "paper" omits it.
    """
    if cfg.spec_a.hamiltonian.energies[1] != 0.0 or cfg.spec_b.hamiltonian.energies[0] != 0.0:
        raise ConfigurationError(
            "closed form requires the pinned levels E1 = 0 and E0' = 0"
        )
    coeff = _cross_coefficient(cfg)
    if convention == "corrected":
        return 0.5 * (1.0 + 2.0 * coeff * np.cos(cfg.phi))
    if convention == "paper":
        return 0.5 * (1.0 + coeff * np.cos(cfg.phi))
    raise ConfigurationError(f"convention must be 'paper' or 'corrected', got {convention!r}")


def sweep(spec: SweepSpec) -> list[tuple]:
    """Fringe probabilities over the grid, computed by circuit simulation.

    Rows are (phi, probability), or (phi, beta_b, probability) when a beta_B
    axis is present; the outer loop runs over beta_B, the inner over phi, and
    rows are emitted in that deterministic order.
    """
    rows: list[tuple] = []
    if spec.beta_b_values is None:
        for phi in spec.phi_points:
            rows.append((phi, circuit_probability(replace(spec.cfg, phi=phi))))
        return rows
    for beta_b in spec.beta_b_values:
        spec_b = ThermalSpec(beta_b, spec.cfg.spec_b.hamiltonian)
        for phi in spec.phi_points:
            cfg = ProtocolConfig(spec.cfg.spec_a, spec_b, phi)
            rows.append((phi, beta_b, circuit_probability(cfg)))
    return rows
