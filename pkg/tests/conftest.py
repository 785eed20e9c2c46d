import numpy as np
import pytest

from cswap_lab import swaptest


def both_engines(a, b, spec, tol=1e-10):
    """Expectation-engine distribution, cross-checked entrywise against
    the circuit engine whenever the joint simulation fits."""
    dist = swaptest.swap_expectation_test(a, b, spec)
    if swaptest.circuit_engine_fits(a, b, spec):
        circ = swaptest.cswap_circuit_test(a, b, spec)
        assert np.max(np.abs(dist.probs - circ.probs)) <= tol
    return dist


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_pure(rng, dims):
    from cswap_lab.hilbert import PureState, SiteLayout
    d = int(np.prod(dims))
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(SiteLayout(tuple(dims)), z, renormalize=True)
