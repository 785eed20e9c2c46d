import math

import numpy as np
import pytest

from cswap_lab import closedform as cf
from cswap_lab import optical
from cswap_lab.hilbert import (
    DensityMatrix,
    PureState,
    basis_state,
    layout,
    partial_trace,
    purity,
    qubits,
    tensor,
)
from cswap_lab.qstates import (
    HaarSampler,
    bell,
    chi_4,
    ghz,
    mixed_bell_purified,
    phi_plus_plus_4,
    seesaw_qudit,
    w,
)
from cswap_lab.swaptest import (
    ControlDistribution,
    SwapGroupSpec,
    bipartite_test,
    circuit_engine_fits,
    cswap_circuit_test,
    equivalence_test,
    full_entanglement_test,
    optical_equivalence_suite,
    per_site_spec,
    swap_expectation_test,
    two_party_test,
)

from conftest import both_engines, random_pure


def ket(*labels):
    return basis_state(qubits(len(labels)), list(labels))


def plus():
    return PureState(qubits(1), np.array([1, 1]) / math.sqrt(2))


class TestSpecAndDistribution:
    def test_group_validation(self):
        lay = qubits(3)
        SwapGroupSpec(lay, ((0,), (1, 2)))
        with pytest.raises(ValueError):
            SwapGroupSpec(lay, ())
        with pytest.raises(ValueError):
            SwapGroupSpec(lay, ((0,), (0, 1)))
        with pytest.raises(ValueError):
            SwapGroupSpec(lay, ((),))
        with pytest.raises(IndexError):
            SwapGroupSpec(lay, ((5,),))

    def test_covers_all(self):
        lay = qubits(3)
        assert SwapGroupSpec(lay, ((0,), (1, 2))).covers_all
        assert not SwapGroupSpec(lay, ((0,), (2,))).covers_all

    def test_distribution_invariants(self):
        d = ControlDistribution(2, [0.5, 0.25, 0.25, 0.0])
        assert d.p("00") == 0.5
        assert d.parity == pytest.approx((0.5, 0.0, 0.5))
        assert sum(p for _, p in d.items()) == pytest.approx(1.0)

    def test_clamping_band(self):
        d = ControlDistribution(1, [1.0, -1e-13])
        assert d.p("1") == 0.0
        with pytest.raises(ValueError, match="inconsistency"):
            ControlDistribution(1, [1.0, -1e-6])
        with pytest.raises(ValueError, match="sum"):
            ControlDistribution(1, [0.7, 0.2])

    def test_relabeling(self):
        d = ControlDistribution(2, [0.1, 0.2, 0.3, 0.4])
        r = d.relabeled("group_last")
        assert r.p("01") == pytest.approx(d.p("10"))
        assert r.p("11") == pytest.approx(d.p("11"))
        assert r.parity == pytest.approx(d.parity)


class TestEquivalence:
    def test_identical_and_orthogonal(self):
        assert equivalence_test(ket(0), ket(0)).p("1") == pytest.approx(0)
        assert equivalence_test(ket(0), ket(1)).p("1") == pytest.approx(0.5)

    def test_half_overlap(self):
        d = equivalence_test(ket(0), plus())
        assert d.p("1") == pytest.approx(0.25, abs=1e-12)
        # confirm by the literal three-system circuit
        spec = SwapGroupSpec(qubits(1), ((0,),))
        circ = cswap_circuit_test(ket(0), plus(), spec)
        assert circ.p("1") == pytest.approx(0.25, abs=1e-12)

    def test_haar_pairs_match_overlap_formula(self):
        for n in (1, 2, 3):
            sampler = HaarSampler(n, 11 + n)
            for _ in range(25):
                a, b = sampler.sample(), sampler.sample()
                overlap = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
                assert equivalence_test(a, b).p("1") == pytest.approx(
                    0.5 - 0.5 * overlap, abs=1e-12)

    def test_mixed_inputs(self):
        rho = DensityMatrix(layout(2), np.eye(2) / 2)
        d = equivalence_test(rho, rho)
        assert d.p("1") == pytest.approx(0.25)

    def test_layout_mismatch(self):
        with pytest.raises(ValueError):
            equivalence_test(ket(0), ket(0, 0))


class TestEngines:
    def test_identical_product_inputs(self):
        st = ket(0, 0)
        d = both_engines(st, st, per_site_spec(st.layout))
        assert d.p("00") == pytest.approx(1.0)

    def test_bell_twins(self):
        b = bell()
        d = both_engines(b, b, per_site_spec(b.layout))
        assert d.p("11") == pytest.approx(0.25, abs=1e-12)
        assert d.p("00") == pytest.approx(0.75, abs=1e-12)
        assert d.p("01") == pytest.approx(0.0, abs=1e-12)

    def test_ghz3_twins(self):
        g = ghz(3)
        d = both_engines(g, g, per_site_spec(g.layout))
        assert d.p("000") == pytest.approx(5 / 8, abs=1e-12)

    def test_engine_agreement_random(self, rng):
        from cswap_lab.swaptest import _circuit_gate_sequence
        for dims, groups in [
            ((2, 2), ((0,), (1,))),
            ((2, 2, 2), ((0, 2), (1,))),
            ((3, 2, 3), ((0, 1), (2,))),
            ((2, 2, 2, 2), ((0, 1), (2, 3))),
            ((2, 2, 2), ((1,),)),          # partial coverage
        ]:
            spec = SwapGroupSpec(layout(*dims), groups)
            for _ in range(5):
                a = random_pure(rng, dims)
                b = random_pure(rng, dims)
                d = both_engines(a, b, spec)
                gate = _circuit_gate_sequence(a, b, spec)
                assert np.max(np.abs(d.probs - gate.probs)) < 1e-12

    def test_engine_agreement_mixed(self, rng):
        pur = mixed_bell_purified(0.4, 0.3)
        rho = partial_trace(pur.density_matrix(), [1, 2])
        both_engines(rho, rho, per_site_spec(rho.layout))
        # asymmetric mixed pair
        other = partial_trace(mixed_bell_purified(0.1, 0.5).density_matrix(),
                              [1, 2])
        both_engines(rho, other, per_site_spec(rho.layout))

    def test_identical_pure_odd_parity_vanishes(self, rng):
        for dims in [(2, 2), (2, 2, 2), (3, 3)]:
            psi = random_pure(rng, dims)
            d = swap_expectation_test(psi, psi, per_site_spec(psi.layout))
            assert d.p_odd <= 1e-12

    def test_input_exchange_symmetry(self, rng):
        a = random_pure(rng, (2, 2, 2))
        b = random_pure(rng, (2, 2, 2))
        spec = SwapGroupSpec(qubits(3), ((0,), (1, 2)))
        d1 = swap_expectation_test(a, b, spec)
        d2 = swap_expectation_test(b, a, spec)
        assert np.max(np.abs(d1.probs - d2.probs)) < 1e-12

    def test_separable_across_groups_means_all_zero(self, rng):
        parts = [random_pure(rng, (2,)) for _ in range(3)]
        psi = tensor(tensor(parts[0], parts[1]), parts[2])
        d = swap_expectation_test(psi, psi, per_site_spec(psi.layout))
        assert d.p("000") == pytest.approx(1.0, abs=1e-10)

    def test_circuit_engine_cap(self):
        big = ghz(12)
        with pytest.raises(ValueError, match="cap"):
            cswap_circuit_test(big, big, per_site_spec(big.layout))

    def test_circuit_fits_helper(self):
        b = bell()
        assert circuit_engine_fits(b, b, per_site_spec(b.layout))
        g = ghz(8)
        assert not circuit_engine_fits(g, g, per_site_spec(g.layout),
                                       cap=2**10)


class TestNamedTests:
    def test_full_test_on_w3(self):
        d = full_entanglement_test(w(3), w(3))
        assert d.p("000") == pytest.approx(2 / 3, abs=1e-12)

    def test_qudit_signature(self):
        for D in (2, 3, 5, 8):
            st = seesaw_qudit(D, 2, 0.0)
            d = full_entanglement_test(st, st)
            assert d.p("11") == pytest.approx(0.5 - 1 / (2 * D), abs=1e-12)

    def test_qudit_qubit_relation(self):
        for n_prime in (2, 3, 4, 5, 6):
            g = ghz(n_prime)
            p_qubit = 1 - full_entanglement_test(g, g).p_all_zero
            st = seesaw_qudit(2 ** (n_prime - 1), 2, 0.0)
            p_qudit = full_entanglement_test(st, st).p("11")
            assert p_qubit == pytest.approx(p_qudit, abs=1e-12)

    def test_bipartite_cuts(self):
        st = phi_plus_plus_4(0.17)
        d = bipartite_test(st, st, (0, 1))
        assert d.p("00") == pytest.approx(1.0, abs=1e-12)
        # a qubit tensored on the side is separable from the rest
        st2 = tensor(bell(), ket(0))
        d2 = bipartite_test(st2, st2, (2,))
        assert d2.p("11") == pytest.approx(0.0, abs=1e-12)
        with pytest.raises(ValueError):
            bipartite_test(st, st, ())
        with pytest.raises(ValueError):
            bipartite_test(st, st, (0, 1, 2, 3))

    def test_two_party(self):
        chi = chi_4(ket(0, 0))
        d = two_party_test(chi, chi, 2, 3)
        assert d.p("11") == pytest.approx(0.25, abs=1e-12)
        assert d.p("00") == pytest.approx(0.75, abs=1e-12)
        d12 = two_party_test(chi, chi, 0, 1)
        assert d12.p("00") == pytest.approx(1.0, abs=1e-12)
        with pytest.raises(ValueError):
            two_party_test(chi, chi, 1, 1)

    def test_two_party_table_on_pair_state(self):
        st = phi_plus_plus_4(0.0)
        d = two_party_test(st, st, 0, 2)
        assert [d.p(b) for b in ("00", "01", "10", "11")] == pytest.approx(
            [9 / 16, 3 / 16, 3 / 16, 1 / 16], abs=1e-12)


class TestMixednessSignatures:
    def test_odd_parity_tracks_purity(self):
        for theta in (0.2, math.pi / 4):
            for delta in (0.1, 0.3, 0.6):
                rho = partial_trace(
                    mixed_bell_purified(theta, delta).density_matrix(), [1, 2])
                d = full_entanglement_test(rho, rho)
                assert d.p("01") + d.p("10") == pytest.approx(
                    0.5 * (1 - purity(rho)), abs=1e-9)

    def test_second_order_error_exponent(self):
        deltas = np.linspace(0.01, 0.1, 12)
        base = cf.bell_pair_probs(math.pi / 4, 0.0)["p00"]
        errs = []
        for dl in deltas:
            rho = partial_trace(
                mixed_bell_purified(math.pi / 4, dl).density_matrix(), [1, 2])
            d = full_entanglement_test(rho, rho)
            errs.append(abs(d.p("00") - base))
        slope = np.polyfit(np.log(deltas), np.log(errs), 1)[0]
        assert abs(slope - 2.0) < 0.1


class TestOpticalSuite:
    def test_identical_states_give_zero(self):
        rec = optical_equivalence_suite(optical.OpticalParams(alpha=1.0, r=0.0),
                                        d_cut=60)
        assert rec["p1_squeezed_numeric"] == pytest.approx(0, abs=1e-10)
        assert rec["p1_squeezed_analytic"] == 0

    def test_r_one_anchor(self):
        rec = optical_equivalence_suite(optical.OpticalParams(alpha=1.0, r=1.0),
                                        d_cut=80)
        expect = 0.5 - 1 / (2 * math.cosh(1))
        assert rec["p1_squeezed_analytic"] == pytest.approx(expect, abs=1e-12)
        assert rec["p1_squeezed_numeric"] == pytest.approx(expect, abs=1e-5)
        assert rec["warning"] is False or rec["warning"] == False  # noqa: E712

    def test_cat_phase_maximum_at_pi(self):
        vals = {}
        for phi2 in np.linspace(0, 2 * math.pi, 17):
            rec = optical_equivalence_suite(
                optical.OpticalParams(alpha=1.0, r=1.0, phi=0.0),
                d_cut=80, phi2=phi2)
            vals[phi2] = rec["p1_cat_numeric"]
        best = max(vals, key=vals.get)
        assert best == pytest.approx(math.pi, abs=1e-12)
        assert vals[best] == pytest.approx(0.5, abs=1e-12)

    def test_suite_record_fields(self):
        rec = optical_equivalence_suite(optical.OpticalParams(alpha=0.5, r=0.5))
        for key in ("d_cut", "deficit_coherent", "unitarity_defect",
                    "p1_cat_analytic", "p1_cat_full_angle"):
            assert key in rec
