import pytest

from pinchsec import NodeGeometry, SystemConfig, WiretapScenario


@pytest.fixture
def base_config():
    return SystemConfig()


@pytest.fixture
def ref_scenario(base_config):
    """Strong main link, 30 dB weaker eavesdropper, 10 m square areas."""
    return WiretapScenario(NodeGeometry(10.0, 10.0, 80.0),
                           NodeGeometry(10.0, 10.0, 50.0),
                           base_config)


@pytest.fixture
def overlap_scenario(base_config):
    """5 dB budget gap with equal areas: all three metrics sit mid-range."""
    return WiretapScenario(NodeGeometry(10.0, 10.0, 70.0),
                           NodeGeometry(10.0, 10.0, 65.0),
                           base_config)
