import pytest

from hdcode import genetic_local_search
from hdcode.search import DesignConfig

DESIGN_CASES = [
    (10, 3, 3),
    (10, 3, 4),
    (10, 3, 5),
    (10, 4, 3),
    (10, 5, 3),
    (10, 5, 4),
    (7, 4, 3),
]


def design_with_retry(n, k, d, seeds=range(5)):
    """First successful design over a deterministic seed list."""
    last = None
    for seed in seeds:
        last = genetic_local_search(n, k, d, DesignConfig(seed=seed))
        if last.succeeded:
            return last.best
    raise RuntimeError(f"no complete ({n},{k},{d}) codebook over seeds {list(seeds)}")


@pytest.fixture(scope="session")
def designed_books():
    """One designed codebook per benchmark instance, built once per test run."""
    return {case: design_with_retry(*case) for case in DESIGN_CASES}
