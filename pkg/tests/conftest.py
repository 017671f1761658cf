"""Shared fixtures: integrated profiles are cached per session because the
outward integrations dominate the suite's runtime."""
import pytest

from schwym import integrate_phi


@pytest.fixture(scope="session")
def profile_cache():
    cache = {}

    def get(kappa, **kwargs):
        key = (kappa, tuple(sorted(kwargs.items())))
        if key not in cache:
            cache[key] = integrate_phi(1.0, kappa, **kwargs)
        return cache[key]

    return get
