import math

import numpy as np
import pytest

from cswap_lab import closedform as cf
from cswap_lab.hilbert import (
    fidelity_pure,
    inner_product,
    partial_trace,
    purity,
    qubits,
)
from cswap_lab.qstates import (
    HaarSampler,
    MixedFamilyParams,
    bell,
    chi_4,
    ghz,
    ghz_w_mixture,
    haar_random,
    mixed_bell_purified,
    mixed_ghz_purified,
    mixed_w_purified,
    nested_angle_state,
    phi_plus_plus_4,
    seesaw_qudit,
    w,
)
from cswap_lab.hilbert import basis_state, concurrence_2q

SQ2 = math.sqrt(2)


class TestNamedStates:
    def test_bell_states(self):
        assert np.allclose(bell("phi_plus").amplitudes, [1 / SQ2, 0, 0, 1 / SQ2])
        assert np.allclose(bell("psi_minus").amplitudes, [0, 1 / SQ2, -1 / SQ2, 0])
        assert inner_product(bell("phi_plus"), bell("phi_minus")) == pytest.approx(0)
        with pytest.raises(ValueError):
            bell("sigma")

    def test_ghz_and_w(self):
        assert fidelity_pure(ghz(2), bell("phi_plus")) == pytest.approx(1)
        assert fidelity_pure(w(2), bell("psi_plus")) == pytest.approx(1)
        red = partial_trace(w(3).density_matrix(), [0])
        assert purity(red) == pytest.approx(5 / 9, abs=1e-12)
        with pytest.raises(ValueError):
            ghz(1)
        with pytest.raises(ValueError):
            w(1)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            MixedFamilyParams(1)
        with pytest.raises(ValueError):
            MixedFamilyParams(3, math.nan)


class TestMixedBell:
    def test_pure_at_zero_coupling(self):
        st = mixed_bell_purified(0.3, 0.0)
        rho = partial_trace(st.density_matrix(), [1, 2])
        assert purity(rho) == pytest.approx(1, abs=1e-12)

    def test_purity_expression(self):
        for theta in (0.0, 0.3, math.pi / 4):
            for delta in (0.1, 0.4, math.pi / 4):
                st = mixed_bell_purified(theta, delta)
                rho = partial_trace(st.density_matrix(), [1, 2])
                assert purity(rho) == pytest.approx(
                    cf.bell_pair_purity(theta, delta), abs=1e-12)

    def test_half_purity_corner(self):
        st = mixed_bell_purified(math.pi / 4, math.pi / 4)
        rho = partial_trace(st.density_matrix(), [1, 2])
        assert purity(rho) == pytest.approx(0.5, abs=1e-12)

    def test_no_entanglement_no_mixing(self):
        for delta in (0.0, 0.3, 1.0):
            rho = partial_trace(
                mixed_bell_purified(0.0, delta).density_matrix(), [1, 2])
            assert purity(rho) == pytest.approx(1, abs=1e-12)


class TestMixedGHZ:
    def test_reduces_to_ghz(self):
        st = mixed_ghz_purified(3, 0.0, 0.0)
        rho = partial_trace(st.density_matrix(), [1, 2, 3])
        amps = ghz(3).amplitudes
        assert np.real(amps.conj() @ rho.matrix @ amps) == pytest.approx(1)

    def test_fidelity_is_cos_squared_epsilon(self):
        for delta in (0.0, 0.4):
            for eps in (0.1, 0.3, 0.7):
                a = mixed_ghz_purified(4, delta, 0.0)
                b = mixed_ghz_purified(4, delta, eps)
                assert fidelity_pure(a, b) == pytest.approx(
                    math.cos(eps) ** 2, abs=1e-12)

    def test_purity_expression(self):
        for n in (2, 3, 5):
            for delta in (0.0, 0.25, math.pi / 4):
                rho = partial_trace(
                    mixed_ghz_purified(n, delta, 0.0).density_matrix(),
                    range(1, n + 1))
                assert purity(rho) == pytest.approx(cf.ghz_purity(delta),
                                                    abs=1e-10)
        rho = partial_trace(
            mixed_ghz_purified(3, math.pi / 4, 0.0).density_matrix(), [1, 2, 3])
        assert purity(rho) == pytest.approx(0.5, abs=1e-12)


class TestMixedW:
    def test_reduces_to_w(self):
        for n in (3, 4, 5):
            st = mixed_w_purified(n, 0.0, 0.0)
            rho = partial_trace(st.density_matrix(), range(1, n + 1))
            assert purity(rho) == pytest.approx(1, abs=1e-10)
            amps = w(n).amplitudes
            assert np.real(amps.conj() @ rho.matrix @ amps) == pytest.approx(1)

    def test_exact_purity_and_coarse_approximation(self):
        # the family's exact marginal purity, and its distance from the
        # cos^2(n delta / (n+2)) shorthand at the reference point
        n, delta = 3, 0.2
        rho = partial_trace(mixed_w_purified(n, delta, 0.0).density_matrix(),
                            range(1, n + 1))
        exact = purity(rho)
        assert exact == pytest.approx(cf.w_purity_exact(n, delta), abs=1e-12)
        assert abs(exact - cf.w_purity_approx(n, delta)) < 0.02

    def test_fidelity_identity(self):
        # the fidelity consistent with the family's closed forms; the
        # often-quoted cos^2(eps) contradicts them (see ledger notes)
        for eps in (0.1, 0.3, 0.6):
            a = mixed_w_purified(3, 0.25, 0.0)
            b = mixed_w_purified(3, 0.25, eps)
            assert fidelity_pure(a, b) == pytest.approx(
                cf.w_fidelity(3, eps), abs=1e-9)

    def test_symmetrized_variant_differs(self):
        lit = mixed_w_purified(3, 0.3, 0.1)
        sym = mixed_w_purified(3, 0.3, 0.1, symmetrized=True)
        assert fidelity_pure(lit, sym) < 1 - 1e-4

    def test_requires_three_qubits(self):
        with pytest.raises(ValueError):
            mixed_w_purified(2, 0.0, 0.0)


class TestSeesaw:
    def test_base_cases(self):
        assert fidelity_pure(seesaw_qudit(2, 2, 0.0), bell("phi_plus")) == \
            pytest.approx(1, abs=1e-12)
        qutrit = seesaw_qudit(3, 2, 0.0)
        expect = np.zeros(9)
        expect[[0, 4, 8]] = 1 / math.sqrt(3)
        assert np.allclose(qutrit.amplitudes, expect, atol=1e-12)

    def test_matches_ghz_at_d2(self):
        for n in (2, 3, 4, 5):
            assert fidelity_pure(seesaw_qudit(2, n, 0.0), ghz(n)) == \
                pytest.approx(1, abs=1e-12)

    def test_fidelity_parametrization(self):
        for D in (2, 3, 4, 5, 7):
            for delta in (0.1, 0.4, math.pi / 4):
                a = seesaw_qudit(D, 2, 0.0)
                b = seesaw_qudit(D, 2, delta)
                assert fidelity_pure(a, b) == pytest.approx(
                    cf.seesaw_fidelity(D, delta), abs=1e-12)

    def test_even_d_tilt_is_literal(self):
        # even dimensions tilt by delta directly; fidelity cos^2(delta)
        assert fidelity_pure(seesaw_qudit(4, 2, 0.0),
                             seesaw_qudit(4, 2, 0.3)) == pytest.approx(
            math.cos(0.3) ** 2, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            seesaw_qudit(1, 2, 0.0)
        with pytest.raises(ValueError):
            seesaw_qudit(3, 1, 0.0)


class TestFourQubitProbes:
    def test_phi_plus_plus(self):
        st = phi_plus_plus_4(0.0)
        two_bells = np.kron(bell("phi_plus").amplitudes,
                            bell("phi_plus").amplitudes)
        assert np.allclose(st.amplitudes, two_bells, atol=1e-12)

    def test_pair_concurrences(self):
        for delta in (0.0, 0.2, 0.6):
            st = phi_plus_plus_4(delta)
            pair = partial_trace(st.density_matrix(), [0, 1])
            vals = np.linalg.eigvalsh(pair.matrix)
            # pure pair factor: top eigenvalue 1
            assert vals[-1] == pytest.approx(1, abs=1e-12)
            vec = np.linalg.eigh(pair.matrix)[1][:, -1]
            from cswap_lab.hilbert import PureState
            c = concurrence_2q(PureState(qubits(2), vec))
            assert c == pytest.approx(abs(math.cos(2 * delta)), abs=1e-10)

    def test_chi4(self):
        st = chi_4(basis_state(qubits(2), [0, 0]))
        expect = np.kron(basis_state(qubits(2), [0, 0]).amplitudes,
                         bell("phi_plus").amplitudes)
        assert np.allclose(st.amplitudes, expect)
        with pytest.raises(ValueError):
            chi_4(bell("phi_plus"))


class TestMixture:
    def test_endpoints(self):
        assert fidelity_pure(ghz_w_mixture(4, 0.0), ghz(4)) == pytest.approx(1)
        assert fidelity_pure(ghz_w_mixture(4, math.pi / 2), w(4)) == \
            pytest.approx(1)

    def test_orthogonality_makes_weights_exact(self):
        st = ghz_w_mixture(3, 0.7)
        assert inner_product(ghz(3), st) == pytest.approx(math.cos(0.7))

    def test_needs_three_qubits(self):
        with pytest.raises(ValueError):
            ghz_w_mixture(2, 0.3)


class TestHaar:
    def test_normalization_and_determinism(self):
        s1 = HaarSampler(3, 99)
        s2 = HaarSampler(3, 99)
        for _ in range(50):
            a, b = s1.sample(), s2.sample()
            assert abs(np.linalg.norm(a.amplitudes) - 1) < 1e-12
            assert np.array_equal(a.amplitudes, b.amplitudes)

    def test_different_seeds_differ(self):
        a = HaarSampler(2, 1).sample()
        b = HaarSampler(2, 2).sample()
        assert fidelity_pure(a, b) < 1 - 1e-6

    def test_mean_marginal_purity(self):
        sampler = HaarSampler(2, 4242)
        total, count = 0.0, 2000
        for _ in range(count):
            psi = haar_random(sampler)
            rho = partial_trace(psi.density_matrix(), [0])
            total += purity(rho)
        mean = total / count
        expect = cf.haar_mean_marginal_purity(2, 2)
        # variance of two-qubit marginal purity is well under 0.1^2
        se = 0.1 / math.sqrt(count)
        assert abs(mean - expect) < 3 * se + 0.005

    def test_overlap_invariance(self):
        # mean |<phi|psi>|^2 over Haar samples is 1/2^n for any fixed phi
        n = 3
        sampler = HaarSampler(n, 777)
        phi = ghz(n)
        vals = [fidelity_pure(phi, sampler.sample()) for _ in range(2000)]
        mean, se = np.mean(vals), np.std(vals) / math.sqrt(len(vals))
        assert abs(mean - 2.0 ** -n) < 3 * se

    def test_spawned_workers_are_independent_and_deterministic(self):
        base = HaarSampler(4, 5)
        w0a = base.spawn(0).sample()
        w0b = HaarSampler(4, 5).spawn(0).sample()
        w1 = base.spawn(1).sample()
        assert np.array_equal(w0a.amplitudes, w0b.amplitudes)
        assert fidelity_pure(w0a, w1) < 1 - 1e-6


class TestNestedAngles:
    def test_explicit_construction(self):
        n = 2
        thetas = [0.3, 1.1, 0.7]
        xis = [0.0, 0.5, 1.0, 1.5]
        st = nested_angle_state(n, xis, thetas)
        expect0 = math.cos(thetas[0])
        expect3 = math.sin(thetas[0]) * math.sin(thetas[1]) * math.sin(thetas[2])
        assert abs(st.amplitudes[0]) == pytest.approx(abs(expect0), abs=1e-12)
        assert abs(st.amplitudes[3]) == pytest.approx(abs(expect3), abs=1e-12)
        assert abs(np.linalg.norm(st.amplitudes) - 1) < 1e-12

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            nested_angle_state(2, [0.0] * 3, [0.0] * 3)
