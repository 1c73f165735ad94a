"""Dense complex linear algebra over tensor products of finite-dimensional subsystems.

Basis convention, used everywhere in this package: product-basis states are
ordered lexicographically with the FIRST subsystem as the most significant
digit.  For dims (2, 2) the amplitude order is |00>, |01>, |10>, |11>; for a
four-qubit register the flat index of |abcd> is 8a + 4b + 2c + d.

All values are immutable after construction and all operations are pure
functions, so everything here is safe for unsynchronized concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

EQ_TOL = 1e-12   # tolerance for exact-algebra identities
FD_TOL = 1e-6    # tolerance for finite-difference comparisons
PSD_TOL = 1e-10  # most negative admissible density-matrix eigenvalue


class ConfigurationError(ValueError):
    """Raised when an input violates a documented structural precondition."""


def _check_dims(dims: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if not out or any(d < 2 for d in out):
        raise ConfigurationError(f"subsystem dims must all be >= 2, got {out}")
    return out


@dataclass(frozen=True, eq=False)
class StateVector:
    """Dense complex amplitude vector over a tensor product of subsystems.

    States built by the public constructors of this package (purifications,
    post-selected states, Bell states) are unit norm.  Images under general
    operators (projectors, derivative operators) need not be and may even be
    zero; use :meth:`norm` or :func:`fidelity_pure` to compare.
    """

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self) -> None:
        dims = _check_dims(self.dims)
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.size != prod(dims):
            raise ConfigurationError(
                f"amplitude count {amps.size} does not match dims {dims}"
            )
        if not np.all(np.isfinite(amps)):
            raise ConfigurationError("state amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix over subsystems."""

    dims: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self) -> None:
        dims = _check_dims(self.dims)
        mat = np.array(self.entries, dtype=np.complex128)
        d = prod(dims)
        if mat.shape != (d, d):
            raise ConfigurationError(f"expected a {d}x{d} matrix for dims {dims}")
        if not np.all(np.isfinite(mat)):
            raise ConfigurationError("density matrix entries must be finite")
        if np.max(np.abs(mat - mat.conj().T)) > EQ_TOL:
            raise ConfigurationError("density matrix must be Hermitian")
        if abs(np.trace(mat).real - 1.0) > EQ_TOL:
            raise ConfigurationError("density matrix must have unit trace")
        if np.linalg.eigvalsh(mat).min() < -PSD_TOL:
            raise ConfigurationError("density matrix must be positive semidefinite")
        mat.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "entries", mat)


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense square matrix acting on the subsystems named by ``dims``."""

    dims: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self) -> None:
        dims = _check_dims(self.dims)
        mat = np.array(self.entries, dtype=np.complex128)
        d = prod(dims)
        if mat.shape != (d, d):
            raise ConfigurationError(f"expected a {d}x{d} matrix for dims {dims}")
        if not np.all(np.isfinite(mat)):
            raise ConfigurationError("operator entries must be finite")
        mat.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "entries", mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def adjoint(self) -> "Operator":
        return Operator(self.dims, self.entries.conj().T)


def basis_state(dims: Iterable[int], index: int) -> StateVector:
    """Computational basis state with a single unit amplitude at ``index``."""
    dims = _check_dims(dims)
    amps = np.zeros(prod(dims), dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(dims, amps)


def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    """Composite state of two registers; output dims are a's followed by b's."""
    return StateVector(a.dims + b.dims, np.kron(a.amps, b.amps))


def partial_trace(state: StateVector | DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the subsystems in ``keep``.

    ``keep`` must be a nonempty proper subset of subsystem indices; the kept
    subsystems appear in their original relative order.
    """
    dims = state.dims
    n = len(dims)
    kept = sorted({int(k) for k in keep})
    if not kept or len(kept) >= n or kept[0] < 0 or kept[-1] >= n:
        raise ConfigurationError(
            f"keep must be a nonempty proper subset of subsystem indices 0..{n - 1}, got {kept}"
        )
    traced = [i for i in range(n) if i not in kept]
    kept_dims = tuple(dims[i] for i in kept)
    if isinstance(state, StateVector):
        psi = state.amps.reshape(dims)
        psi = np.transpose(psi, kept + traced).reshape(prod(kept_dims), -1)
        rho = psi @ psi.conj().T
    elif isinstance(state, DensityMatrix):
        arr = state.entries.reshape(dims + dims)
        row = list(range(n))
        col = [i if i in traced else i + n for i in range(n)]
        out = kept + [i + n for i in kept]
        rho = np.einsum(arr, row + col, out).reshape(prod(kept_dims), prod(kept_dims))
    else:
        raise ConfigurationError(f"cannot trace object of type {type(state).__name__}")
    return DensityMatrix(kept_dims, rho)


def fidelity_pure(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2; equals 1 iff the states agree up to a global phase."""
    if a.dims != b.dims:
        raise ConfigurationError(f"shape mismatch: {a.dims} vs {b.dims}")
    val = float(abs(np.vdot(a.amps, b.amps)) ** 2)
    return min(val, 1.0)  # guard against roundoff just above 1


def apply(op: Operator, state: StateVector, targets: Sequence[int]) -> StateVector:
    """Apply ``op`` to the named subsystems, identity on the rest.

    ``targets`` is ordered: the operator's most significant factor acts on
    ``targets[0]``.  The operator dimension must match the product of the
    target dimensions.  Norm is preserved only when ``op`` is unitary.
    """
    targets = [int(t) for t in targets]
    n = len(state.dims)
    if len(set(targets)) != len(targets) or any(t < 0 or t >= n for t in targets):
        raise ConfigurationError(f"invalid target subsystems {targets} for dims {state.dims}")
    d = prod(state.dims[t] for t in targets)
    if op.dim != d:
        raise ConfigurationError(
            f"operator dimension {op.dim} does not match target dimension {d}"
        )
    psi = state.amps.reshape(state.dims)
    psi = np.moveaxis(psi, targets, range(len(targets)))
    moved_shape = psi.shape
    psi = op.entries @ psi.reshape(d, -1)
    psi = np.moveaxis(psi.reshape(moved_shape), range(len(targets)), targets)
    return StateVector(state.dims, psi.reshape(-1))


_INV_SQRT2 = 1.0 / np.sqrt(2.0)

IDENTITY_2 = Operator((2,), np.eye(2))
SIGMA_X = Operator((2,), [[0.0, 1.0], [1.0, 0.0]])
SIGMA_Z = Operator((2,), [[1.0, 0.0], [0.0, -1.0]])
HADAMARD = Operator((2,), np.array([[1.0, 1.0], [1.0, -1.0]]) * _INV_SQRT2)
# control is the first target subsystem
CNOT = Operator((2, 2), [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])

PHI_PLUS = StateVector((2, 2), [_INV_SQRT2, 0.0, 0.0, _INV_SQRT2])
PHI_MINUS = StateVector((2, 2), [_INV_SQRT2, 0.0, 0.0, -_INV_SQRT2])
PSI_PLUS = StateVector((2, 2), [0.0, _INV_SQRT2, _INV_SQRT2, 0.0])
PSI_MINUS = StateVector((2, 2), [0.0, _INV_SQRT2, -_INV_SQRT2, 0.0])
