import hypothesis
import pytest

from fracgraph.geometry import CrackNetwork, Domain, make_crack

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")


@pytest.fixture
def domain():
    return Domain(2.0, 3.0)


@pytest.fixture
def chain_network(domain):
    """Three horizontal cracks in zone 2, tips 0.40 m apart end to end."""
    cracks = (
        make_crack(1, (0.45, 1.5), 0.3, 0),
        make_crack(2, (1.15, 1.5), 0.3, 0),
        make_crack(3, (1.85 - 0.0, 1.5), 0.3, 0),
    )
    return CrackNetwork(domain, cracks)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
