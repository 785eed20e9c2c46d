import math

import numpy as np
import pytest

from cswap_lab import closedform as cf
from cswap_lab.hilbert import (
    apply,
    fidelity_pure,
    inner_product,
    schmidt_coefficients,
    unitarity_defect,
)
from cswap_lab.optical import (
    CutoffError,
    OpticalParams,
    annihilation,
    cat,
    cat_norm_analytic,
    coherent,
    coherent_amplitudes,
    coherent_overlap_analytic,
    creation,
    default_cutoff,
    displacement,
    ecs_concurrence_analogue,
    ecs_general,
    ecs_norm_constant,
    ecs_plus,
    ecs_qudit_approx,
    ecs_qudit_norm,
    ecvs,
    mean_photon_number,
    number,
    squeeze_operator,
    squeezed_cat,
    squeezed_coherent,
    squeezed_coherent_series,
    tmsv_qudit,
    tmsv_qudit_norm,
    two_mode_squeeze_operator,
    vacuum,
)


class TestLadderOperators:
    def test_annihilation_action(self):
        a = annihilation(6)
        one = np.zeros(6)
        one[1] = 1
        assert np.allclose(a.matrix @ one, vacuum(6).amplitudes)
        assert np.allclose(a.matrix @ vacuum(6).amplitudes, 0)

    def test_number_operator(self):
        d = 7
        n_op = creation(d).matrix @ annihilation(d).matrix
        assert np.allclose(n_op, number(d).matrix)
        for n in range(d - 1):
            e = np.zeros(d)
            e[n] = 1
            assert np.allclose(n_op @ e, n * e)


class TestCoherent:
    def test_vacuum_limit(self):
        assert np.allclose(coherent(0.0, 10).amplitudes,
                           vacuum(10).amplitudes)

    def test_poisson_statistics(self):
        alpha = 1.3
        st = coherent(alpha, 50)
        mu = alpha ** 2
        probs = np.abs(st.amplitudes) ** 2
        for m in (0, 1, 2, 5, 9):
            expect = mu ** m * math.exp(-mu) / math.factorial(m)
            assert probs[m] == pytest.approx(expect, abs=1e-12)
        assert mean_photon_number(st) == pytest.approx(mu, abs=1e-10)

    def test_numeric_overlap_matches_analytic(self):
        got = inner_product(coherent(1.0, 40), coherent(-1.0, 40))
        assert got.real == pytest.approx(math.exp(-2), abs=1e-6)
        assert coherent_overlap_analytic(1.0, 1.0) == pytest.approx(1)
        assert coherent_overlap_analytic(1.0, 0.0) == pytest.approx(
            math.exp(-0.5))

    def test_overlap_grid(self):
        # truncated overlaps track the analytic form within 10x the
        # combined lost weight
        d = 60
        for a in (0.0, 0.5, 1.0, 1.5, 2.0):
            for b in (0.0, 0.5, 1.0, 1.5, 2.0):
                sa, sb = coherent(a, d), coherent(b, d)
                got = inner_product(sa, sb)
                expect = coherent_overlap_analytic(a, b)
                slack = 10 * (abs(sa.norm_deficit) + abs(sb.norm_deficit)) + 1e-12
                assert abs(got - expect) <= slack

    def test_cutoff_error(self):
        with pytest.raises(CutoffError):
            coherent(3.0, 8)

    def test_complex_amplitude_phases(self):
        alpha = 0.8 * np.exp(1j * 0.9)
        st = coherent(alpha, 40)
        direct = coherent_amplitudes(alpha, 40)
        assert np.allclose(st.amplitudes, direct / np.linalg.norm(direct))


class TestSqueezing:
    def test_zero_squeeze_is_identity(self):
        s = squeeze_operator(0.0, 30)
        assert np.allclose(s.matrix, np.eye(30), atol=1e-12)

    def test_unitarity_within_working_range(self):
        for r in (0.5, 1.0, 1.5):
            assert unitarity_defect(squeeze_operator(r, 80)) < 1e-6

    def test_vacuum_overlap(self):
        for r in (0.3, 0.9, 1.5):
            s = squeeze_operator(r, 80)
            got = abs(s.matrix[0, 0]) ** 2
            assert got == pytest.approx(1 / math.cosh(r), abs=1e-6)

    def test_displacement_inverse(self):
        d = 60
        prod = displacement(1.1, d).matrix @ displacement(-1.1, d).matrix
        assert np.max(np.abs(prod - np.eye(d))) < 1e-8

    def test_squeezed_coherent_reduces_to_coherent(self):
        st = squeezed_coherent(0.9, 0.0, 60)
        assert fidelity_pure(st, coherent(0.9, 60)) == pytest.approx(
            1, abs=1e-8)
        assert np.allclose(squeezed_coherent(0.0, 0.0, 40).amplitudes,
                           vacuum(40).amplitudes, atol=1e-12)

    def test_squeezed_vacuum_mean_photons(self):
        # convergence study: residual 2.6e-10 at (r=1, d=80), 1.7e-5 at
        # (r=1.5, d=120), 2.9e-7 at (r=1.5, d=160)
        assert abs(mean_photon_number(squeezed_coherent(0.0, 1.0, 80))
                   - math.sinh(1.0) ** 2) < 1e-8
        assert abs(mean_photon_number(squeezed_coherent(0.0, 1.5, 160))
                   - math.sinh(1.5) ** 2) < 1e-5

    def test_series_route_matches_operator_route(self):
        for alpha, r, th in [(0.7, 0.8, 0.0), (1.2, 0.5, 1.1),
                             (0.3 + 0.4j, 1.0, 2.0)]:
            xi = r * np.exp(1j * th)
            op_route = squeezed_coherent(alpha, xi, 90, allow_deficit=True)
            series = squeezed_coherent_series(alpha, xi, 90)
            assert fidelity_pure(op_route, series) == pytest.approx(
                1, abs=1e-9)

    def test_two_mode_squeeze_matches_diagonal_form(self):
        d = 25
        r = 0.6
        st = apply(two_mode_squeeze_operator(r, d),
                   __import__("cswap_lab.hilbert", fromlist=["tensor"]).tensor(
                       vacuum(d), vacuum(d)))
        ref = tmsv_qudit(r, 0.0, d, allow_deficit=True)
        assert fidelity_pure(st, ref) == pytest.approx(1, abs=1e-6)


class TestCats:
    def test_norm_against_analytic(self):
        for alpha in (0.5, 1.0, 2.0):
            for phi in (0.0, 1.0, math.pi / 2, math.pi):
                vec = coherent_amplitudes(alpha, 60) \
                    + np.exp(1j * phi) * coherent_amplitudes(-alpha, 60)
                numeric = 1 / np.linalg.norm(vec)
                assert numeric == pytest.approx(
                    cat_norm_analytic(alpha, phi), abs=1e-6)

    def test_parity_structure(self):
        even = cat(1.2, 0.0, 60)
        odd = cat(1.2, math.pi, 60)
        idx = np.arange(60)
        assert np.max(np.abs(even.amplitudes[idx % 2 == 1])) < 1e-12
        assert np.max(np.abs(odd.amplitudes[idx % 2 == 0])) < 1e-12

    def test_symmetry_up_to_phase(self):
        a = cat(1.0, 0.0, 60)
        b = cat(-1.0, 0.0, 60)
        assert fidelity_pure(a, b) == pytest.approx(1, abs=1e-12)

    def test_large_alpha_overlap_with_branch(self):
        st = cat(3.0, 0.0, 80)
        overlap = fidelity_pure(st, coherent(3.0, 80))
        assert overlap == pytest.approx(0.5, abs=1e-6)

    def test_zero_vector_guard(self):
        with pytest.raises(ValueError):
            cat(0.0, math.pi, 30)
        with pytest.raises(ValueError):
            squeezed_cat(0.0, 0.5, math.pi, 60)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            OpticalParams(r=-0.1)


class TestTwoModeFamilies:
    def test_product_amplitudes(self):
        from cswap_lab.hilbert import PureState, layout
        st = ecs_general((1, 0, 0, 0), 1.1, 50)
        expect = np.kron(coherent(1.1, 50).amplitudes,
                         coherent(1.1, 50).amplitudes)
        ref = PureState(layout(50, 50), expect, renormalize=True)
        assert fidelity_pure(st, ref) == pytest.approx(1, abs=1e-12)

    def test_all_zero_amplitudes_rejected(self):
        with pytest.raises(ValueError):
            ecs_general((0, 0, 0, 0), 1.0, 30)
        with pytest.raises(ValueError):
            ecs_concurrence_analogue((0, 0, 0, 0), 1.0)

    def test_concurrence_analogue(self):
        assert ecs_concurrence_analogue((1, 0, 0, 0), 1.0) == 0
        assert ecs_concurrence_analogue((0, 1, 1, 0), 40.0) == pytest.approx(
            1, abs=1e-12)
        # explicit Gram-matrix evaluation for the symmetric case
        g = coherent_overlap_analytic(1.0, -1.0).real
        expect = 2 * 1.0 / (2 + 2 * g ** 2)
        assert ecs_concurrence_analogue((1, 0, 0, 1), 1.0) == pytest.approx(
            expect, abs=1e-12)

    def test_norm_constant_matches_truncated_norm(self):
        amps = (0.6, 0.0, 0.0, 0.8)
        n_analytic = ecs_norm_constant(amps, 0.9)
        plus = coherent_amplitudes(0.9, 60)
        minus = coherent_amplitudes(-0.9, 60)
        vec = 0.6 * np.kron(plus, plus) + 0.8 * np.kron(minus, minus)
        assert 1 / np.linalg.norm(vec) == pytest.approx(n_analytic, abs=1e-9)

    def test_ecvs_at_zero_is_vacuum_pair(self):
        st = ecvs(0.0, 20)
        expect = np.zeros(400)
        expect[0] = 1
        assert np.allclose(st.amplitudes, expect, atol=1e-12)


class TestQuditApproximations:
    def test_tmsv_zero_squeeze(self):
        st = tmsv_qudit(0.0, 0.0, 10)
        expect = np.zeros(100)
        expect[0] = 1
        assert np.allclose(st.amplitudes, expect)

    def test_tmsv_norm_geometric_series(self):
        for r in (0.3, 0.8, 1.5):
            for D in (5, 20, 100):
                t = math.tanh(r) ** 2
                expect = math.sqrt(
                    (1 / math.cosh(r) ** 2) * (1 - t ** D) / (1 - t))
                assert tmsv_qudit_norm(r, D) == pytest.approx(expect,
                                                              abs=1e-12)
        assert tmsv_qudit_norm(0.7, 4000) == pytest.approx(1, abs=1e-12)

    def test_tmsv_schmidt_coefficients(self):
        r, D = 0.8, 60
        st = tmsv_qudit(r, 0.3, D)
        lam = schmidt_coefficients(st, [0]) ** 2
        t = math.tanh(r) ** 2
        expect = t ** np.arange(D)
        expect /= expect.sum()
        assert np.max(np.abs(np.sort(lam)[::-1] - np.sort(expect)[::-1])) \
            < 1e-10

    def test_tmsv_deficit_guard(self):
        with pytest.raises(CutoffError):
            tmsv_qudit(3.0, 0.0, 10)
        st = tmsv_qudit(3.0, 0.0, 10, allow_deficit=True)
        assert st.norm_deficit > 1e-3

    def test_ecs_qudit_normalised_in_working_range(self):
        # retained fraction stays ~1 over the working range and softens
        # toward the alpha=3 edge before collapsing beyond it
        for alpha in (0.5, 1.5, 2.0, 2.5):
            assert abs(1 - ecs_qudit_norm(alpha, 15) ** 2) < 1e-2
        assert ecs_qudit_norm(3.0, 15) > 0.95
        assert ecs_qudit_norm(4.0, 15) < 0.5
        st = ecs_qudit_approx(1.0, 15)
        assert abs(st.norm_deficit) < 1e-3

    def test_ecs_qudit_matches_fock_route(self):
        st_q = ecs_qudit_approx(1.0, 15)
        st_f = ecs_general((1, 0, 0, 1), 1.0, 15)
        assert fidelity_pure(st_q, st_f) == pytest.approx(1, abs=1e-10)

    def test_ecs_qudit_deficit_guard(self):
        with pytest.raises(CutoffError):
            ecs_qudit_approx(4.0, 6)


def test_default_cutoff_bands():
    assert default_cutoff(1.0, 0.5) == 60
    assert default_cutoff(2.0, 1.5) == 80
    assert default_cutoff(4.0, 2.0) >= 80
