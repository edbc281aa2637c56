import numpy as np
import pytest

from qrecycle import channel
from qrecycle.channel import DampingParams, DensityMatrix

from oracles import rho_prime_entries


class TestDampingParams:
    def test_range_check(self):
        with pytest.raises(ValueError):
            DampingParams(-0.1)
        with pytest.raises(ValueError):
            DampingParams(1.5)

    def test_from_decay_time(self):
        p = DampingParams.from_decay_time(t=2.0, t1=2.0)
        assert p.gamma == pytest.approx(1.0 - np.exp(-1.0))
        assert DampingParams.from_decay_time(0.0, 1.0).gamma == 0.0


class TestDensityMatrix:
    def test_rejects_non_hermitian(self):
        m = np.eye(4, dtype=complex)
        m[0, 1] = 0.5
        with pytest.raises(ValueError, match="Hermitian"):
            DensityMatrix(m)

    def test_rejects_wrong_trace(self):
        with pytest.raises(ValueError, match="trace"):
            DensityMatrix(np.eye(4, dtype=complex))

    def test_unnormalized_flag(self):
        dm = DensityMatrix(np.eye(4, dtype=complex), normalized=False)
        assert dm.trace == pytest.approx(4.0)

    def test_rejects_negative_eigenvalue(self):
        m = np.diag([1.5, -0.5, 0.0, 0.0]).astype(complex)
        with pytest.raises(ValueError, match="PSD"):
            DensityMatrix(m)


class TestEprState:
    def test_trace_one(self):
        assert channel.epr_state().trace == pytest.approx(1.0)

    def test_projector_entries(self):
        m = channel.epr_state().mat
        expect = np.zeros((4, 4))
        expect[0, 0] = expect[0, 3] = expect[3, 0] = expect[3, 3] = 0.5
        assert np.allclose(m, expect)

    def test_self_fidelity_and_concurrence(self):
        from qrecycle.metrics import concurrence, fidelity
        epr = channel.epr_state()
        assert fidelity(epr, epr) == pytest.approx(1.0)
        assert concurrence(epr) == pytest.approx(1.0, abs=1e-10)


class TestKrausPair:
    def test_gamma_zero(self):
        e0, e1 = channel.kraus_pair(DampingParams(0.0))
        assert np.allclose(e0, np.eye(2))
        assert np.allclose(e1, 0.0)

    def test_gamma_one(self):
        e0, e1 = channel.kraus_pair(DampingParams(1.0))
        assert np.allclose(e0, np.diag([1.0, 0.0]))
        assert np.allclose(e1, [[0, 1], [0, 0]])

    def test_gamma_019(self):
        e0, _ = channel.kraus_pair(DampingParams(0.19))
        assert np.allclose(e0, np.diag([1.0, 0.9]))

    def test_completeness(self):
        for g in np.linspace(0.0, 1.0, 11):
            e0, e1 = channel.kraus_pair(DampingParams(g))
            total = e0.conj().T @ e0 + e1.conj().T @ e1
            assert np.max(np.abs(total - np.eye(2))) < 1e-12


class TestApplyChannel:
    def test_gamma_zero_is_identity(self):
        rho = channel.epr_state()
        out = channel.apply_channel(rho, DampingParams(0.0))
        assert np.allclose(out.mat, rho.mat)

    def test_gamma_one_collapses_to_00(self):
        out = channel.apply_channel(channel.epr_state(), DampingParams(1.0))
        expect = np.zeros((4, 4))
        expect[0, 0] = 1.0
        assert np.allclose(out.mat, expect, atol=1e-12)

    def test_gamma_half_entries(self):
        out = channel.apply_channel(channel.epr_state(), DampingParams(0.5))
        assert np.allclose(np.diag(out.mat).real, [0.625, 0.125, 0.125, 0.125])
        assert out.mat[0, 3] == pytest.approx(0.25)

    def test_matches_closed_form_entry_oracle(self):
        rng = np.random.default_rng(31)
        for g in rng.uniform(0.0, 1.0, size=25):
            out = channel.apply_channel(channel.epr_state(), DampingParams(g))
            assert np.max(np.abs(out.mat - rho_prime_entries(g))) < 1e-12
            assert np.max(np.abs(out.mat - channel.damped_epr_closed_form(DampingParams(g)).mat)) < 1e-12

    def test_trace_and_psd_preserved(self):
        for g in np.linspace(0.0, 1.0, 101):
            out = channel.apply_channel(channel.epr_state(), DampingParams(g))
            assert abs(out.trace - 1.0) < 1e-10
            assert np.linalg.eigvalsh(out.mat)[0] > -1e-10

    def test_rejects_unnormalized_input(self):
        dm = DensityMatrix(np.eye(4, dtype=complex), normalized=False)
        with pytest.raises(ValueError, match="normalized"):
            channel.apply_channel(dm, DampingParams(0.1))

    def test_no_filter_fidelity_curve(self):
        # baseline curve: F(rho, rho') = 1 - g + g^2/2
        from qrecycle.metrics import fidelity
        epr = channel.epr_state()
        for g in np.linspace(0.0, 1.0, 21):
            out = channel.apply_channel(epr, DampingParams(g))
            assert fidelity(epr, out) == pytest.approx(1 - g + g * g / 2, abs=1e-12)

    def test_asymmetric_entry_point(self):
        out = channel._apply_channel_asymmetric(
            channel.epr_state(), DampingParams(0.3), DampingParams(0.0))
        # Bob's arm undamped: Alice's decay |11> -> |01> puts gamma_a/2 at |01>
        assert out.mat[1, 1] == pytest.approx(0.15)
        assert out.mat[2, 2] == pytest.approx(0.0)
        assert abs(out.trace - 1.0) < 1e-12
