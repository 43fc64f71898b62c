import pytest

from spinchain.presets import reference_chain


@pytest.fixture(scope="session")
def chain_one():
    """Single reference resonator at rest, pump locked on the red sideband."""
    return reference_chain((0.0,))


@pytest.fixture(scope="session")
def chain_two():
    """Coupled reference pair at rest, J = kappa_ex."""
    return reference_chain((0.0, 0.0))
