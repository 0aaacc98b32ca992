import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def chain_pool():
    """All canonical chains with up to 5 edges, by size."""
    from chaincalc import formula as fm

    return {n: list(fm.enumerate_chains(n)) for n in range(1, 6)}
