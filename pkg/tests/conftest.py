import pytest

from eigraph import factor_range


@pytest.fixture(scope="session")
def factored_100k():
    """FactoredInteger for every n in [2, 100000]; index i holds n = i + 2."""
    return list(factor_range(100_000))


def composites(factored, lo, hi, squarefree=None):
    """Composite n >= 4 in [lo, hi] from a factored list, optionally filtered."""
    for f in factored[max(lo, 4) - 2 : hi - 1]:
        if f.is_prime():
            continue
        if squarefree is not None and f.is_squarefree() != squarefree:
            continue
        yield f
