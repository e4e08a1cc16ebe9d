import os

import pytest
from hypothesis import HealthCheck, settings

from bihom.oracle import DEFAULT_SEED

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

CRITERIA = {
    1: "catalog soundness",
    2: "twist of ordinary Poisson algebras",
    3: "commutator bracket",
    4: "polarization equivalence",
    5: "polarize/depolarize round trip",
    6: "semidirect products",
    7: "direct sum and tensor product",
    8: "oracle equivalence and full search",
    9: "kernel properties",
}

_RESULTS = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def seed():
    return int(os.environ.get("BIHOM_SEED", DEFAULT_SEED))


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance criterion for the terminal summary."""
    results = request.config.stash.setdefault(_RESULTS, {})

    def record(number: int, ok: bool, detail: str = "") -> bool:
        results[number] = (bool(ok), detail)
        line = f"criterion {number} ({CRITERIA[number]}): {'PASS' if ok else 'FAIL'}"
        print(line + (f" - {detail}" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, name in CRITERIA.items():
        if number not in results:
            terminalreporter.write_line(f"criterion {number} ({name}): NOT RUN")
            continue
        ok, detail = results[number]
        line = f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(line + (f" - {detail}" if detail else ""))
