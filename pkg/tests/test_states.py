import math

import numpy as np
import pytest

from qchain.states import (
    DensityMatrix,
    PureState,
    TmsvsSpec,
    apply_kraus_branches,
    bell_state,
    cutoff_for_amplitude_tail,
    default_cutoff,
    pure_from_schmidt,
    random_density_matrix,
    random_haar_pure,
    substream,
    tmsvs_truncated,
)
from qchain.tensor import SubsystemLayout, kron, partial_trace

from conftest import charpoly_eigenvalues, dense_partial_transpose

QUBIT_PAIR = SubsystemLayout((2, 2), (0,))


def pt_negativity_oracle(state: PureState) -> float:
    """Negativity through the dense charpoly route (independent of the
    library's eigensolver and Schmidt fast paths); 4x4 only."""
    rho = np.outer(state.amplitudes, state.amplitudes.conj())
    pt = dense_partial_transpose(rho, 2, 2)
    eigs = charpoly_eigenvalues(pt)
    return (np.sum(np.abs(eigs)) - 1) / 2


class TestBell:
    def test_schmidt_coefficients(self):
        assert np.allclose(bell_state().schmidt().coefficients, [0.5, 0.5])

    def test_negativity_via_oracle(self):
        assert abs(pt_negativity_oracle(bell_state()) - 0.5) < 1e-10

    def test_ratio_negativity_value(self):
        n = pt_negativity_oracle(bell_state())
        assert abs(n / (n + 1) - 1 / 3) < 1e-10


class TestPureFromSchmidt:
    def test_product_state(self):
        st = pure_from_schmidt([1.0], (2, 2))
        assert abs(pt_negativity_oracle(st)) < 1e-12

    def test_lopsided_pair_amplitudes(self):
        st = pure_from_schmidt([0.1, 0.9], (2, 2))
        assert abs(st.amplitudes[0] - math.sqrt(0.1)) < 1e-15
        assert abs(st.amplitudes[3] - math.sqrt(0.9)) < 1e-15

    def test_uniform_qutrit(self):
        st = pure_from_schmidt([1 / 3] * 3, (3, 3))
        lam = st.schmidt().coefficients
        from qchain.measures import g_concurrence_pure
        assert abs(g_concurrence_pure(lam, 3) - 1.0) < 1e-12

    @pytest.mark.parametrize("lam,dims", [
        ([0.5, 0.6], (2, 2)),       # does not sum to 1
        ([0.5, 0.5, 0.0], (2, 2)),  # too many coefficients, zero entry
        ([1.5, -0.5], (2, 2)),      # negative entry
    ])
    def test_rejects_invalid(self, lam, dims):
        with pytest.raises(ValueError):
            pure_from_schmidt(lam, dims)

    def test_roundtrip_with_schmidt_decompose(self):
        lam = np.array([0.6, 0.3, 0.1])
        st = pure_from_schmidt(lam, (3, 3))
        back = np.sort(st.schmidt().coefficients)[::-1]
        assert np.allclose(back, lam, atol=1e-10)


class TestTmsvs:
    def test_unit_norm_and_deficit(self):
        spec = TmsvsSpec.from_r(0.8, cutoff=30)
        st = tmsvs_truncated(spec)
        assert abs(np.linalg.norm(st.amplitudes) - 1.0) < 1e-12
        chi = math.tanh(0.8)
        assert abs(st.truncation_deficit - chi ** 62) < 1e-18

    def test_ratio_negativity_within_amplitude_tail(self):
        # The truncation error of the ratio negativity is bounded by the
        # amplitude tail chi^(cutoff+1) (the probability deficit is its
        # square and underestimates the effect).
        for r, cutoff in [(1.0, 60), (0.5, 40), (1.5, 100)]:
            chi = math.tanh(r)
            st = tmsvs_truncated(TmsvsSpec.from_r(r, cutoff=cutoff))
            s = np.sum(np.sqrt(st.schmidt().coefficients)) ** 2
            value = (s - 1) / (s + 1)
            assert abs(value - chi) <= chi ** (cutoff + 1)
            assert value < chi  # truncation only ever loses entanglement

    def test_negativity_analytic_small_r(self):
        st = tmsvs_truncated(TmsvsSpec.from_r(0.5, cutoff=40))
        s = np.sum(np.sqrt(st.schmidt().coefficients)) ** 2
        assert abs((s - 1) / 2 - (math.e - 1) / 2) < 1e-9

    def test_vacuum_limit(self):
        st = tmsvs_truncated(TmsvsSpec.from_r(1e-8))
        s = np.sum(np.sqrt(st.schmidt().coefficients)) ** 2
        assert (s - 1) / 2 < 1e-7

    def test_refuses_lossy_cutoff(self):
        with pytest.raises(ValueError, match="probability weight"):
            tmsvs_truncated(TmsvsSpec.from_r(1.5, cutoff=1))

    def test_monotone_convergence_with_cutoff(self):
        # Growing the cutoff only adds entanglement, and the step from
        # cutoff c to c+10 is bounded by e^{2r} (chi^{c+1} - chi^{c+11}).
        r, chi = 1.0, math.tanh(1.0)
        values = []
        for cutoff in (30, 40, 50, 60):
            st = tmsvs_truncated(TmsvsSpec.from_r(r, cutoff=cutoff))
            s = np.sum(np.sqrt(st.schmidt().coefficients)) ** 2
            values.append((s - 1) / 2)
        assert all(b > a for a, b in zip(values, values[1:]))
        for cutoff, (a, b) in zip((30, 40, 50), zip(values, values[1:])):
            bound = math.exp(2 * r) * (chi ** (cutoff + 1) - chi ** (cutoff + 11))
            assert b - a <= bound * (1 + 1e-12)

    def test_default_cutoff_rule(self):
        spec = TmsvsSpec.from_r(0.5)
        assert spec.truncation_deficit < 1e-12
        assert default_cutoff(math.tanh(0.5) ) == spec.cutoff
        assert default_cutoff(math.tanh(1.5)) == 128  # capped

    def test_cutoff_for_amplitude_tail(self):
        chi = math.tanh(1.0)
        c = cutoff_for_amplitude_tail(chi, 1e-10)
        assert chi ** (c + 1) <= 1e-10 < chi ** c

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            TmsvsSpec.from_r(-1.0)
        with pytest.raises(ValueError):
            TmsvsSpec.from_chi(1.0)
        with pytest.raises(ValueError):
            TmsvsSpec(r=1.0, chi=math.tanh(1.0), cutoff=0)


class TestRandomStates:
    def test_haar_deterministic_under_seed(self):
        a = random_haar_pure(QUBIT_PAIR, 42)
        b = random_haar_pure(QUBIT_PAIR, 42)
        assert np.array_equal(a.amplitudes, b.amplitudes)

    def test_haar_mean_negativity_interval(self):
        # Monte-Carlo oracle pinned once: the mean two-qubit pure-state
        # negativity sits near 0.29, comfortably inside (0.2, 0.4).
        total = 0.0
        n = 10_000
        for i in range(n):
            st = random_haar_pure(QUBIT_PAIR, substream(7, i))
            lam = st.schmidt().coefficients
            total += math.sqrt(lam[0] * lam[1])
        assert 0.2 < total / n < 0.4

    def test_haar_marginal_is_maximally_mixed(self):
        n = 2000
        acc = np.zeros((2, 2), dtype=complex)
        sq_acc = np.zeros((2, 2))
        for i in range(n):
            st = random_haar_pure(QUBIT_PAIR, substream(11, i))
            rho = np.outer(st.amplitudes, st.amplitudes.conj())
            marg = partial_trace(rho, QUBIT_PAIR, keep=[0])
            acc += marg
            sq_acc += np.abs(marg) ** 2
        mean = acc / n
        std_err = np.sqrt(np.maximum(sq_acc / n - np.abs(mean) ** 2, 0)) / math.sqrt(n)
        assert np.all(np.abs(mean - np.eye(2) / 2) <= 5 * std_err + 1e-12)

    def test_rank_one_is_pure(self):
        dm = random_density_matrix(QUBIT_PAIR, rank=1, seed=3)
        assert abs(dm.purity() - 1.0) < 1e-10

    def test_full_rank_valid(self):
        dm = random_density_matrix(QUBIT_PAIR, rank=4, seed=5)
        dm.validate()
        assert abs(np.trace(dm.matrix) - 1.0) < 1e-12

    def test_separable_mixture_is_ppt(self):
        rng = substream(9, 0)
        layout = SubsystemLayout((2, 2), (0,))
        rho = np.zeros((4, 4), dtype=complex)
        for _ in range(6):
            a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            a /= np.linalg.norm(a)
            b /= np.linalg.norm(b)
            rho += kron(np.outer(a, a.conj()), np.outer(b, b.conj()))
        rho /= np.real(np.trace(rho))
        pt = dense_partial_transpose(rho, 2, 2)
        assert np.linalg.eigvalsh(pt)[0] >= -1e-10

    def test_rank_bounds(self):
        with pytest.raises(ValueError):
            random_density_matrix(QUBIT_PAIR, rank=0, seed=1)
        with pytest.raises(ValueError):
            random_density_matrix(QUBIT_PAIR, rank=5, seed=1)

    def test_substreams_are_order_independent(self):
        late = substream(123, 77).standard_normal(4)
        for i in range(5):
            substream(123, i).standard_normal(4)
        again = substream(123, 77).standard_normal(4)
        assert np.array_equal(late, again)
        assert not np.array_equal(substream(123, 1).standard_normal(4),
                                  substream(123, 2).standard_normal(4))


class TestValidation:
    def test_pure_state_norm_enforced(self):
        with pytest.raises(ValueError, match="normalized"):
            PureState(np.array([1.0, 1.0, 0, 0]), QUBIT_PAIR)

    def test_density_matrix_trace_enforced(self):
        with pytest.raises(ValueError, match="trace"):
            DensityMatrix(np.eye(4, dtype=complex), QUBIT_PAIR)

    def test_density_matrix_psd_enforced(self):
        m = np.diag([0.75, 0.75, -0.25, -0.25]).astype(complex)
        with pytest.raises(ValueError, match="negative eigenvalue"):
            DensityMatrix(m, QUBIT_PAIR)

    def test_density_matrix_hermiticity_enforced(self):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 0.2
        with pytest.raises(ValueError, match="Hermitian"):
            DensityMatrix(m, QUBIT_PAIR)

    def test_amplitudes_frozen(self):
        st = bell_state()
        with pytest.raises(ValueError):
            st.amplitudes[0] = 1.0


class TestKrausBranches:
    def test_requires_completeness(self):
        half = np.eye(4, dtype=complex) * 0.5
        with pytest.raises(ValueError, match="identity"):
            apply_kraus_branches(bell_state(), [half])

    def test_projective_measurement_on_bell(self):
        p0 = kron(np.diag([1.0, 0.0]).astype(complex), np.eye(2))
        p1 = kron(np.diag([0.0, 1.0]).astype(complex), np.eye(2))
        branches = apply_kraus_branches(bell_state(), [p0, p1])
        assert len(branches) == 2
        for p, out in branches:
            assert abs(p - 0.5) < 1e-12
            assert abs(out.purity() - 1.0) < 1e-12
