import pytest

from pinwheel.psi import PsiCache, set_default_cache


@pytest.fixture
def fresh_cache():
    """Swap in an empty default psi cache for the duration of a test."""
    cache = PsiCache()
    old = set_default_cache(cache)
    yield cache
    set_default_cache(old)
