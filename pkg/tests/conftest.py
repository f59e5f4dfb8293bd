import numpy as np
import pytest

from delayframe import models, systems


@pytest.fixture(scope="session")
def two_tone():
    """The sin(t) + sin(2t) series at dt=0.001, 10001 samples."""
    return systems.measure(systems.simulate(systems.preset("two_tone")), "x")


@pytest.fixture(scope="session")
def series_cache():
    """Lazy per-session cache of preset measurements.

    The long presets take seconds to integrate; every test that needs one
    goes through here so each is simulated at most once per run.
    """
    cache = {}

    def get(name, observable=None):
        key = (name, observable)
        if key not in cache:
            spec = systems.preset(name)
            obs = observable or systems.default_observable(spec.kind)
            cache[key] = systems.measure(systems.simulate(spec), obs)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def two_tone_models(two_tone):
    """Unforced rank-4 fits of the two-tone series, both methods."""
    out = {}
    for method in ("havok", "shavok"):
        cfg = models.FitConfig(delays=41, rank=4, method=method, forcing=False)
        out[method] = models.fit(two_tone, cfg)
    return out


@pytest.fixture()
def rng():
    return np.random.default_rng(20260814)
