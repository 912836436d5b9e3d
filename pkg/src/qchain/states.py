"""State constructors: Bell pairs, Schmidt-form states, truncated two-mode
squeezed vacuum, and seeded random sampling.

Sampling is backed by the counter-based Philox generator so that per-sample
substreams derived from (master_seed, sample_index) are reproducible
independently of execution order or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tensor import (
    NORM_TOL,
    SubsystemLayout,
    herm_defect,
    hermitian_eigenvalues,
    require_finite,
    schmidt_decompose,
)

PSD_TOL = 1e-10
TRACE_TOL = 1e-10
DEFAULT_DEFICIT_TARGET = 1e-12
MAX_DEFAULT_CUTOFF = 128
MAX_TRUNCATION_DEFICIT = 0.01


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over a subsystem layout.

    truncation_deficit is the probability weight lost to Fock truncation
    before renormalization (0 for exact finite-dimensional states).
    """

    amplitudes: np.ndarray
    layout: SubsystemLayout
    truncation_deficit: float = 0.0

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        require_finite(amps, "amplitudes")
        if amps.shape[0] != self.layout.dim:
            raise ValueError(f"amplitude count {amps.shape[0]} != layout dimension {self.layout.dim}")
        nrm = float(np.linalg.norm(amps))
        if abs(nrm - 1.0) > NORM_TOL:
            raise ValueError(f"pure state is not normalized: |psi| = {nrm!r}")
        if self.truncation_deficit < 0:
            raise ValueError("truncation_deficit must be >= 0")
        object.__setattr__(self, "amplitudes", _freeze(amps))

    def density_matrix(self) -> "DensityMatrix":
        rho = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityMatrix(rho, self.layout, self.truncation_deficit, _trusted=True)

    def schmidt(self, **kwargs):
        return schmidt_decompose(self.amplitudes, self.layout, **kwargs)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, PSD matrix over a subsystem layout.

    Constructors inside this package produce PSD matrices by construction
    and skip the eigenvalue check; data from untrusted sources (files)
    goes through validate(). Hermiticity and trace are always enforced.
    """

    matrix: np.ndarray
    layout: SubsystemLayout
    truncation_deficit: float = 0.0
    _trusted: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        require_finite(m, "density matrix")
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != self.layout.dim:
            raise ValueError(f"density matrix shape {m.shape} incompatible with layout dim {self.layout.dim}")
        tol = 1e-10 * max(1.0, float(np.max(np.abs(m))))
        if herm_defect(m) > tol:
            raise ValueError("density matrix is not Hermitian within tolerance")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr} != 1")
        if self.truncation_deficit < 0:
            raise ValueError("truncation_deficit must be >= 0")
        object.__setattr__(self, "matrix", _freeze(m))
        if not self._trusted:
            self.validate()

    def validate(self, psd_tol: float = PSD_TOL) -> None:
        w = hermitian_eigenvalues(self.matrix)
        if w[0] < -psd_tol:
            raise ValueError(f"density matrix has negative eigenvalue {w[0]:.3e}")

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


@dataclass(frozen=True)
class TmsvsSpec:
    """Two-mode squeezed vacuum parameters: squeezing r, chi = tanh r,
    and the Fock cutoff used for truncation."""

    r: float
    chi: float
    cutoff: int

    def __post_init__(self):
        if not (0 < self.chi < 1):
            raise ValueError(f"chi must lie in (0, 1), got {self.chi}")
        if self.r <= 0:
            raise ValueError(f"squeezing parameter must be > 0, got {self.r}")
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")

    @staticmethod
    def from_r(r: float, cutoff: int | None = None) -> "TmsvsSpec":
        if r <= 0:
            raise ValueError(f"squeezing parameter must be > 0, got {r}")
        chi = math.tanh(r)
        if cutoff is None:
            cutoff = default_cutoff(chi)
        return TmsvsSpec(r=float(r), chi=chi, cutoff=int(cutoff))

    @staticmethod
    def from_chi(chi: float, cutoff: int | None = None) -> "TmsvsSpec":
        if not (0 < chi < 1):
            raise ValueError(f"chi must lie in (0, 1), got {chi}")
        r = math.atanh(chi)
        if cutoff is None:
            cutoff = default_cutoff(chi)
        return TmsvsSpec(r=r, chi=float(chi), cutoff=int(cutoff))

    @property
    def truncation_deficit(self) -> float:
        return self.chi ** (2 * (self.cutoff + 1))


def default_cutoff(chi: float, deficit_target: float = DEFAULT_DEFICIT_TARGET,
                   cap: int = MAX_DEFAULT_CUTOFF) -> int:
    """Smallest n_max with chi^(2(n_max+1)) < deficit_target, capped."""
    n = int(math.ceil(math.log(deficit_target) / (2 * math.log(chi)) - 1))
    return max(1, min(cap, n))


def cutoff_for_amplitude_tail(chi: float, tail: float) -> int:
    """Smallest n_max with chi^(n_max+1) <= tail.

    The amplitude tail chi^(n_max+1) (not the probability deficit, which is
    its square) bounds the truncation error of negativity-family values on
    a truncated two-mode squeezed state, so this is the right knob when a
    target accuracy for those measures is known.
    """
    if not (0 < tail < 1):
        raise ValueError("tail must lie in (0, 1)")
    return max(1, int(math.ceil(math.log(tail) / math.log(chi) - 1)))


def bell_state() -> PureState:
    """(|00> + |11>)/sqrt(2) on two qubits, party A = subsystem 0."""
    amps = np.zeros(4, dtype=complex)
    amps[0] = amps[3] = 1 / math.sqrt(2)
    return PureState(amps, SubsystemLayout((2, 2), (0,)))


def pure_from_schmidt(lam, dims: tuple[int, int]) -> PureState:
    """Sum_a sqrt(lam_a) |aa> in the computational basis of a dA x dB system."""
    lam = np.asarray(lam, dtype=float)
    d_a, d_b = int(dims[0]), int(dims[1])
    if lam.ndim != 1 or lam.size == 0 or lam.size > min(d_a, d_b):
        raise ValueError(f"need 1 <= len(lambda) <= min{(d_a, d_b)}, got {lam.size}")
    if np.any(lam <= 0):
        raise ValueError("Schmidt coefficients must be > 0")
    if abs(float(lam.sum()) - 1.0) > 1e-12:
        raise ValueError(f"Schmidt coefficients must sum to 1, got {lam.sum()!r}")
    amps = np.zeros((d_a, d_b), dtype=complex)
    amps[np.arange(lam.size), np.arange(lam.size)] = np.sqrt(lam)
    return PureState(amps.reshape(-1), SubsystemLayout((d_a, d_b), (0,)))


def tmsvs_truncated(spec: TmsvsSpec) -> PureState:
    """Fock-truncated two-mode squeezed vacuum, renormalized to unit norm.

    The weight lost to truncation (before renormalization) is recorded as
    truncation_deficit. Cutoffs losing more than 1% weight are refused
    rather than silently misrepresenting the state.
    """
    deficit = spec.truncation_deficit
    if deficit > MAX_TRUNCATION_DEFICIT:
        raise ValueError(
            f"cutoff {spec.cutoff} loses {deficit:.3e} probability weight for chi={spec.chi}; "
            f"increase the cutoff (limit {MAX_TRUNCATION_DEFICIT})")
    n = np.arange(spec.cutoff + 1)
    diag = math.sqrt(1 - spec.chi ** 2) * spec.chi ** n
    diag = diag / np.linalg.norm(diag)
    d = spec.cutoff + 1
    amps = np.zeros((d, d), dtype=complex)
    amps[n, n] = diag
    layout = SubsystemLayout((d, d), (0,))
    return PureState(amps.reshape(-1), layout, truncation_deficit=deficit)


def substream(master_seed: int, index: int) -> np.random.Generator:
    """Independent generator for sample `index` of a seeded scan.

    Philox is keyed on the (seed, index) pair directly, so streams do not
    depend on how many samples ran before this one.
    """
    key = np.array([np.uint64(master_seed & 0xFFFFFFFFFFFFFFFF),
                    np.uint64(index & 0xFFFFFFFFFFFFFFFF)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return substream(int(seed), 0)


def random_haar_pure(layout: SubsystemLayout, seed) -> PureState:
    """Haar-random pure state: normalized standard complex Gaussian vector."""
    rng = _as_generator(seed)
    v = rng.standard_normal(layout.dim) + 1j * rng.standard_normal(layout.dim)
    v /= np.linalg.norm(v)
    return PureState(v, layout)


def random_density_matrix(layout: SubsystemLayout, rank: int, seed) -> DensityMatrix:
    """Wishart-type random mixed state G G^dag / tr(G G^dag) with G dim x rank."""
    if not (1 <= rank <= layout.dim):
        raise ValueError(f"rank must lie in [1, {layout.dim}], got {rank}")
    rng = _as_generator(seed)
    g = rng.standard_normal((layout.dim, rank)) + 1j * rng.standard_normal((layout.dim, rank))
    rho = g @ g.conj().T
    rho /= np.real(np.trace(rho))
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(rho, layout, _trusted=True)


def apply_kraus_branches(state: DensityMatrix | PureState, kraus_ops) -> list[tuple[float, DensityMatrix]]:
    """Outcome branches (probability, renormalized post-state) of a
    generalized measurement given by full-space Kraus operators.

    The operators must satisfy sum_i K_i^dag K_i = identity.
    """
    rho = state.density_matrix() if isinstance(state, PureState) else state
    d = rho.layout.dim
    total = sum(np.asarray(k, dtype=complex).conj().T @ np.asarray(k, dtype=complex) for k in kraus_ops)
    if not np.allclose(total, np.eye(d), atol=1e-10):
        raise ValueError("Kraus operators do not resolve the identity")
    branches = []
    for k in kraus_ops:
        k = np.asarray(k, dtype=complex)
        out = k @ rho.matrix @ k.conj().T
        p = float(np.real(np.trace(out)))
        if p < 1e-14:
            continue
        out = (out + out.conj().T) / 2
        branches.append((p, DensityMatrix(out / p, rho.layout,
                                          rho.truncation_deficit, _trusted=True)))
    return branches
