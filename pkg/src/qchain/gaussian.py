"""Covariance-matrix formalism for Gaussian states.

Convention: quadratures are ordered (q1, p1, ..., qN, pN), the vacuum
covariance matrix is the identity, and the stored matrix is the real
symmetric matrix of symmetrized second moments,
Gamma_sl = 2 <{R_s, R_l}/2> - 2 <R_s><R_l>. (The textbook definition
subtracts i*Lambda from 2<R_s R_l>; that term exactly cancels the
antisymmetric part of the unsymmetrized moments, which is how a real
matrix comes out.) A matrix is a legal state iff Gamma + i*Lambda >= 0,
with Lambda the direct sum of 2x2 blocks [[0, 1], [-1, 0]].

This module exists as a cross-oracle for the Fock-basis route on pure
two-mode squeezed states and as a covariance-matrix data model; mixed or
multimode negativities are out of scope. Displacements are carried but do
not affect any quantity computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

CM_SYMMETRY_TOL = 1e-10
CM_BONA_FIDE_TOL = 1e-8
CM_PURITY_TOL = 1e-6


def symplectic_form(modes: int) -> np.ndarray:
    """Direct sum of `modes` copies of [[0, 1], [-1, 0]]."""
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * modes, 2 * modes))
    for k in range(modes):
        out[2 * k:2 * k + 2, 2 * k:2 * k + 2] = j
    return out


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    gamma: np.ndarray
    displacement: np.ndarray = None
    modes: int = field(init=False)

    def __post_init__(self):
        g = np.array(self.gamma, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2 != 0:
            raise ValueError(f"covariance matrix must be square with even dimension, got {g.shape}")
        d = self.displacement
        d = np.zeros(g.shape[0]) if d is None else np.array(d, dtype=float)
        if d.shape != (g.shape[0],):
            raise ValueError(f"displacement must have length {g.shape[0]}, got {d.shape}")
        g.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "displacement", d)
        object.__setattr__(self, "modes", g.shape[0] // 2)


@dataclass(frozen=True)
class CmValidation:
    ok: bool
    symmetry_defect: float
    min_bona_fide_eigenvalue: float
    message: str


def validate_cm(cm: CovarianceMatrix,
                symmetry_tol: float = CM_SYMMETRY_TOL,
                bona_fide_tol: float = CM_BONA_FIDE_TOL) -> CmValidation:
    """Report whether Gamma is symmetric and Gamma + i*Lambda is PSD."""
    g = cm.gamma
    sym_defect = float(np.max(np.abs(g - g.T)))
    lam = symplectic_form(cm.modes)
    w = np.linalg.eigvalsh((g + g.T) / 2 + 1j * lam)
    min_eig = float(w[0])
    if sym_defect > symmetry_tol:
        return CmValidation(False, sym_defect, min_eig,
                            f"matrix is not symmetric (defect {sym_defect:.3e})")
    if min_eig < -bona_fide_tol:
        return CmValidation(False, sym_defect, min_eig,
                            f"uncertainty relation violated (min eig {min_eig:.3e})")
    return CmValidation(True, sym_defect, min_eig, "ok")


def vacuum_cm(modes: int) -> CovarianceMatrix:
    return CovarianceMatrix(np.eye(2 * modes))


def tmsvs_cm(r: float) -> CovarianceMatrix:
    """Covariance matrix of a two-mode squeezed vacuum with squeezing r.

    Diagonal blocks cosh(2r) * I, off-diagonal blocks sinh(2r) * diag(1, -1):
    the q quadratures are correlated, the p quadratures anticorrelated.
    """
    if r <= 0:
        raise ValueError(f"squeezing parameter must be > 0, got {r}")
    c, s = math.cosh(2 * r), math.sinh(2 * r)
    g = np.array([
        [c, 0.0, s, 0.0],
        [0.0, c, 0.0, -s],
        [s, 0.0, c, 0.0],
        [0.0, -s, 0.0, c],
    ])
    return CovarianceMatrix(g)


def cm_partial_transpose(cm: CovarianceMatrix, modes_a) -> CovarianceMatrix:
    """Momentum-sign flip on the party-A modes.

    Realizes the partial transpose at the covariance level; the output may
    legitimately violate the uncertainty relation, which is exactly the
    entanglement signal.
    """
    modes_a = sorted(set(int(i) for i in modes_a))
    if any(i < 0 or i >= cm.modes for i in modes_a):
        raise ValueError(f"mode indices {modes_a} out of range for {cm.modes} modes")
    f = np.ones(2 * cm.modes)
    for i in modes_a:
        f[2 * i + 1] = -1.0
    flip = np.diag(f)
    return CovarianceMatrix(flip @ cm.gamma @ flip, flip @ cm.displacement)


def symplectic_eigenvalues(gamma: np.ndarray) -> np.ndarray:
    """Positive moduli of the spectrum of i*Lambda*Gamma, descending.

    Gamma must be symmetric positive definite; each value appears once.
    """
    g = np.asarray(gamma, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2 != 0:
        raise ValueError(f"expected an even-dimensional square matrix, got {g.shape}")
    w_g = np.linalg.eigvalsh((g + g.T) / 2)
    if w_g[0] <= 0:
        raise ValueError(f"covariance matrix must be positive definite (min eig {w_g[0]:.3e})")
    modes = g.shape[0] // 2
    lam = symplectic_form(modes)
    w = np.linalg.eigvals(1j * lam @ g)
    nu = np.sort(np.abs(w))[::-1]
    # The spectrum comes in +/- pairs; keep one representative per pair.
    return nu[::2]


def cm_ratio_negativity(cm: CovarianceMatrix, modes_a=(0,),
                        purity_tol: float = CM_PURITY_TOL) -> float:
    """Ratio negativity of a pure two-mode Gaussian state from its
    covariance matrix.

    The partial-transpose trace norm of a pure two-mode Gaussian state is
    1/nu_min, with nu_min the smallest symplectic eigenvalue after the
    momentum flip; this formula is validated against the Fock-basis route
    in the test suite rather than trusted a priori. Mixed or multimode
    inputs are unsupported.
    """
    if cm.modes != 2:
        raise ValueError(f"pure-state cross-check supports exactly 2 modes, got {cm.modes}")
    det = float(np.linalg.det(cm.gamma))
    if abs(det - 1.0) > purity_tol:
        raise ValueError(f"covariance matrix is not pure (det Gamma = {det!r}); mixed states unsupported")
    report = validate_cm(cm)
    if not report.ok:
        raise ValueError(f"invalid covariance matrix: {report.message}")
    pt = cm_partial_transpose(cm, modes_a)
    nu = symplectic_eigenvalues(pt.gamma)
    nu_min = float(nu[-1])
    trace_norm = max(1.0, 1.0 / nu_min)
    n = (trace_norm - 1.0) / 2.0
    if n < 1e-10:  # same roundoff clamp as the Fock-basis route
        return 0.0
    return n / (n + 1.0)
