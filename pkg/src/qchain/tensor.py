"""Dense complex linear algebra over multipartite Hilbert spaces.

Index convention (fixed): subsystem 0 is the slowest-varying tensor index,
i.e. a state on dims (d0, d1, ...) is stored row-major as the C-order
flattening of an array of shape (d0, d1, ...). All operations in this
package follow this convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

HERM_TOL_BASE = 1e-10
EIG_TOL = 1e-10
NORM_TOL = 1e-10
SCHMIDT_CUTOFF = 1e-12


@dataclass(frozen=True)
class SubsystemLayout:
    """Tensor factorization of a Hilbert space plus the bipartition mask.

    dims: per-subsystem dimensions, subsystem 0 slowest-varying.
    party_a: indices of the subsystems forming party A (strict, non-empty
    subset of range(len(dims))).
    """

    dims: tuple[int, ...]
    party_a: tuple[int, ...]

    def __init__(self, dims, party_a):
        dims = tuple(int(d) for d in dims)
        party_a = tuple(sorted(set(int(i) for i in party_a)))
        if len(dims) < 1 or any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must all be >= 2, got {dims}")
        if not party_a:
            raise ValueError("party A must be non-empty")
        if any(i < 0 or i >= len(dims) for i in party_a):
            raise ValueError(f"party A indices {party_a} out of range for {len(dims)} subsystems")
        if len(party_a) == len(dims):
            raise ValueError("party A must be a strict subset of the subsystems")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "party_a", party_a)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    @property
    def party_b(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.dims)) if i not in self.party_a)

    @property
    def dim_a(self) -> int:
        return int(np.prod([self.dims[i] for i in self.party_a]))

    @property
    def dim_b(self) -> int:
        return int(np.prod([self.dims[i] for i in self.party_b]))


def _check_square(m: np.ndarray, layout: SubsystemLayout | None = None) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if layout is not None and m.shape[0] != layout.dim:
        raise ValueError(f"matrix dimension {m.shape[0]} != layout dimension {layout.dim}")
    return m


def require_finite(a: np.ndarray, what: str = "array") -> np.ndarray:
    if not np.all(np.isfinite(a.view(float) if np.iscomplexobj(a) else a)):
        raise ValueError(f"{what} contains non-finite entries")
    return a


def herm_defect(m: np.ndarray) -> float:
    """Max-entry deviation of m from its own conjugate transpose."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def require_hermitian(m: np.ndarray, tol_base: float = HERM_TOL_BASE) -> np.ndarray:
    m = _check_square(m)
    tol = tol_base * max(1.0, float(np.max(np.abs(m))) if m.size else 0.0)
    defect = herm_defect(m)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian within tolerance: defect {defect:.3e} > {tol:.3e}")
    return m


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the left factor's indices are slower-varying."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_transpose(rho: np.ndarray, layout: SubsystemLayout) -> np.ndarray:
    """Transpose all party-A tensor indices of a square operator.

    Pure index bookkeeping (no arithmetic), so applying it twice returns
    the input bit-exactly. Hermiticity of the input is preserved.
    """
    rho = _check_square(rho, layout)
    n = len(layout.dims)
    t = rho.reshape(layout.dims + layout.dims)
    perm = list(range(2 * n))
    for i in layout.party_a:
        perm[i], perm[n + i] = perm[n + i], perm[i]
    return np.ascontiguousarray(t.transpose(perm)).reshape(layout.dim, layout.dim)


def hermitian_eigenvalues(m: np.ndarray, tol_base: float = HERM_TOL_BASE) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending.

    Rejects inputs whose Hermiticity defect exceeds tol_base * max(1, |m|_max).
    """
    m = require_hermitian(m, tol_base)
    require_finite(m, "matrix")
    return np.linalg.eigvalsh(m)


def hermitian_eigensystem(m: np.ndarray, tol_base: float = HERM_TOL_BASE):
    """(eigenvalues ascending, column eigenvectors) of a Hermitian matrix."""
    m = require_hermitian(m, tol_base)
    require_finite(m, "matrix")
    return np.linalg.eigh(m)


def trace_norm_hermitian(m: np.ndarray, tol_base: float = HERM_TOL_BASE) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m, tol_base))))


def partial_trace(rho: np.ndarray, layout: SubsystemLayout, keep) -> np.ndarray:
    """Trace out all subsystems not in `keep`; kept subsystems stay in order."""
    rho = _check_square(rho, layout)
    keep = sorted(set(int(i) for i in keep))
    n = len(layout.dims)
    if not keep:
        raise ValueError("keep must be non-empty")
    if any(i < 0 or i >= n for i in keep):
        raise ValueError(f"keep indices {keep} out of range")
    t = rho.reshape(layout.dims + layout.dims)
    # Contract bra/ket labels of traced subsystems.
    row = list(range(n))
    col = [n + i if i in keep else i for i in range(n)]
    out = [i for i in keep] + [n + i for i in keep]
    result = np.einsum(t, row + col, out)
    d_keep = int(np.prod([layout.dims[i] for i in keep]))
    return result.reshape(d_keep, d_keep)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """Bipartite Schmidt data: probabilities descending, orthonormal vectors.

    coefficients are the probabilities lambda_i (squared singular values);
    rank counts coefficients above the reporting cutoff, but the full
    coefficient list is kept.
    """

    coefficients: np.ndarray
    left: np.ndarray   # columns are party-A vectors
    right: np.ndarray  # columns are party-B vectors
    rank: int
    layout: SubsystemLayout = field(repr=False, default=None)


def bipartite_matrix(psi: np.ndarray, layout: SubsystemLayout) -> np.ndarray:
    """Reshape an amplitude vector to a (dim_A, dim_B) matrix, A-axes first."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape[0] != layout.dim:
        raise ValueError(f"amplitude count {psi.shape[0]} != layout dimension {layout.dim}")
    t = psi.reshape(layout.dims)
    perm = list(layout.party_a) + list(layout.party_b)
    return np.ascontiguousarray(t.transpose(perm)).reshape(layout.dim_a, layout.dim_b)


def schmidt_decompose(psi: np.ndarray, layout: SubsystemLayout,
                      norm_tol: float = NORM_TOL,
                      cutoff: float = SCHMIDT_CUTOFF) -> SchmidtDecomposition:
    """Schmidt decomposition across the layout's A|B split.

    psi must be normalized within norm_tol. Coefficients sum to 1 and come
    out descending; the reported rank drops coefficients below `cutoff`.
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    require_finite(psi, "amplitudes")
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > norm_tol:
        raise ValueError(f"state is not normalized: |psi| = {nrm!r}")
    mat = bipartite_matrix(psi, layout)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    lam = s ** 2
    rank = int(np.count_nonzero(lam > cutoff))
    return SchmidtDecomposition(coefficients=lam, left=u, right=vh.conj().T,
                                rank=rank, layout=layout)
