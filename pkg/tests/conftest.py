"""Shared independent oracles for the test suite.

These deliberately avoid the library's own code paths: eigenvalues via
characteristic-polynomial root finding, covariance matrices via ladder
operators on the dense Fock state, conversion probabilities via the
tail-sum ratio formula.
"""

from __future__ import annotations

import numpy as np
import pytest


def charpoly_coefficients(a: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial coefficients by the trace recursion
    (Faddeev-LeVerrier), highest power first."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    m = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        am = a @ m
        c = -np.trace(am) / k
        coeffs[k] = c
        m = am + c * np.eye(n)
    return coeffs


def charpoly_eigenvalues(a: np.ndarray) -> np.ndarray:
    """Real eigenvalues of a small Hermitian matrix via np.roots on the
    characteristic polynomial (companion-matrix path, not eigvalsh)."""
    roots = np.roots(charpoly_coefficients(a))
    return np.sort(roots.real)


def dense_partial_transpose(rho: np.ndarray, d_a: int, d_b: int) -> np.ndarray:
    """Textbook two-party partial transpose by reshape bookkeeping."""
    return (rho.reshape(d_a, d_b, d_a, d_b)
            .transpose(2, 1, 0, 3)
            .reshape(d_a * d_b, d_a * d_b))


def ladder_annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def moment_oracle_cm(psi_matrix: np.ndarray) -> np.ndarray:
    """Covariance matrix of a two-mode pure state from dense quadrature
    moments, vacuum-variance-one convention, ordering (q1, p1, q2, p2)."""
    psi = np.asarray(psi_matrix, dtype=complex)
    d = psi.shape[0]
    a = ladder_annihilation(d)
    q = (a + a.conj().T) / np.sqrt(2)
    p = (a - a.conj().T) / (1j * np.sqrt(2))

    def apply(op, mode):
        return op @ psi if mode == 0 else psi @ op.T

    ops = [(q, 0), (p, 0), (q, 1), (p, 1)]
    means = [np.real(np.vdot(psi, apply(op, m))) for op, m in ops]
    gamma = np.zeros((4, 4))
    for s, (op_s, m_s) in enumerate(ops):
        for l, (op_l, m_l) in enumerate(ops):
            val = np.vdot(apply(op_s, m_s), apply(op_l, m_l))
            gamma[s, l] = 2.0 * (np.real(val) - means[s] * means[l])
    return gamma


def scp_oracle(lam) -> float:
    """Maximum conversion probability to the uniform pair by the tail-sum
    ratio formula: min over k >= 1 of tail(lam, k) / tail(uniform, k)."""
    lam = sorted(lam, reverse=True)
    mu = [0.5, 0.5]
    best = 1.0
    for k in range(1, len(lam)):
        tail_lam = sum(lam[k:])
        tail_mu = sum(mu[k:]) if k < len(mu) else 0.0
        if tail_mu == 0.0:
            if tail_lam > 0:
                return 0.0
            continue
        best = min(best, tail_lam / tail_mu)
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(20260811)
