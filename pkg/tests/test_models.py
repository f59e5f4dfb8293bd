import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delayframe import diagnostics, models, systems
from delayframe.embedding import TimeSeries
from delayframe.errors import DegenerateRankError, ParameterError
from delayframe.models import FitConfig, fit, fit_havok, fit_shavok


def _two_tone_segment(columns, delays=41, dt=0.001):
    spec = systems.SystemSpec(
        kind="two_tone", parameters={}, initial_state=(),
        dt=dt, samples=columns + delays - 1,
    )
    return systems.measure(systems.simulate(spec), "x")


# ---------------------------------------------------------------------------
# Configuration


def test_fit_config_validation():
    with pytest.raises(ParameterError):
        FitConfig(delays=1, rank=2)
    with pytest.raises(ParameterError):
        FitConfig(delays=10, rank=1)
    with pytest.raises(ParameterError):
        FitConfig(delays=10, rank=11)
    with pytest.raises(ParameterError):
        FitConfig(delays=10, rank=4, dt=-0.1)
    with pytest.raises(ParameterError):
        FitConfig(delays=10, rank=4, method="dmd")
    with pytest.raises(ParameterError):
        FitConfig(delays=10, rank=4, derivative_scheme="spectral")
    with pytest.raises(ParameterError):
        FitConfig(delays=10, rank=4, center_per_half=True)  # needs shavok
    with pytest.raises(ParameterError):
        FitConfig(delays=10, rank=4, method="shavok",
                  centering=False, center_per_half=True)


def test_fit_config_state_dim():
    assert FitConfig(delays=41, rank=5).state_dim == 4
    assert FitConfig(delays=41, rank=5, forcing=False).state_dim == 5


def test_dt_conflict_rejected(two_tone):
    cfg = FitConfig(delays=41, rank=4, dt=0.5, forcing=False)
    with pytest.raises(ParameterError, match="dt"):
        fit(two_tone, cfg)
    # a matching dt is accepted
    ok = FitConfig(delays=41, rank=4, dt=0.001, forcing=False)
    assert fit(two_tone, ok).dt == 0.001


def test_too_few_columns():
    x = _two_tone_segment(columns=3)
    with pytest.raises(ParameterError, match="column"):
        fit(x, FitConfig(delays=41, rank=4, forcing=False))


def test_method_dispatch(two_tone, two_tone_models):
    cfg = FitConfig(delays=41, rank=4, method="shavok", forcing=False)
    direct = fit_shavok(two_tone, cfg)
    np.testing.assert_array_equal(
        direct.a_discrete, two_tone_models["shavok"].a_discrete
    )
    with pytest.raises(ParameterError):
        fit_havok(two_tone, cfg)


# ---------------------------------------------------------------------------
# Shapes, conventions, guards


def test_unforced_model_shapes(two_tone_models):
    m = two_tone_models["havok"]
    assert m.a_discrete.shape == (4, 4)
    assert m.a_continuous.shape == (4, 4)
    assert m.b_discrete is None and m.b_continuous is None
    assert m.basis.u.shape == (41, 4)
    assert m.basis.v.shape[1] == 4
    assert m.state_dim == 4


def test_forced_model_shapes(two_tone):
    m = fit(two_tone, FitConfig(delays=41, rank=5, forcing=True))
    assert m.state_dim == 4
    assert m.a_discrete.shape == (4, 4)
    assert m.b_discrete.shape == (4,)
    assert m.b_continuous.shape == (4,)
    np.testing.assert_allclose(m.b_continuous, m.b_discrete / m.dt)


def test_basis_orthonormality(two_tone_models):
    for m in two_tone_models.values():
        u, v = m.basis.u, m.basis.v
        np.testing.assert_allclose(u.T @ u, np.eye(4), atol=1e-12)
        np.testing.assert_allclose(v.T @ v, np.eye(4), atol=1e-12)
        assert np.all(np.diff(m.basis.sigma) <= 0.0)


def test_superdiagonal_orientation(two_tone_models):
    # The band orientation convention makes curvature estimates positive.
    for m in two_tone_models.values():
        super_diag = np.diag(m.a_continuous, 1)
        assert np.all(super_diag > 0.0)


def test_model_timing(two_tone):
    m = fit(two_tone, FitConfig(delays=41, rank=4, forcing=False))
    assert m.dt == two_tone.dt
    assert m.t0 == pytest.approx(two_tone.t0 + 0.5 * 40 * two_tone.dt)


def test_speed_requires_centering(two_tone):
    m = fit(two_tone, FitConfig(delays=41, rank=4, forcing=False,
                                centering=False))
    assert m.speed is None
    c = fit(two_tone, FitConfig(delays=41, rank=4, forcing=False))
    assert c.speed == pytest.approx(153.849, abs=1e-2)


def test_rank_guard_uses_state_dimension(two_tone):
    # Two tones give numerical rank 4. Rank 5 with forcing only needs a
    # 4-dimensional state, so it must fit; without forcing it must not.
    fit(two_tone, FitConfig(delays=41, rank=5, forcing=True))
    with pytest.raises(DegenerateRankError, match="sigma"):
        fit(two_tone, FitConfig(delays=41, rank=5, forcing=False))
    with pytest.raises(DegenerateRankError):
        fit(two_tone, FitConfig(delays=41, rank=6, forcing=True))


def test_constant_signal_rejected():
    x = TimeSeries(t0=0.0, dt=0.1, values=np.zeros(100))
    with pytest.raises(DegenerateRankError, match="no variation"):
        fit(x, FitConfig(delays=11, rank=3, forcing=False))


# ---------------------------------------------------------------------------
# Dynamics quality


def test_two_tone_frequencies(two_tone_models):
    for m in two_tone_models.values():
        freqs = np.sort(np.abs(m.spectrum.eigenvalues.imag))
        np.testing.assert_allclose(freqs[:2], 1.0, atol=0.1)
        np.testing.assert_allclose(freqs[2:], 2.0, atol=0.1)


def test_model_spectrum_accessor(two_tone_models):
    m = two_tone_models["havok"]
    assert models.model_spectrum(m) is m.spectrum


def test_log_mapped_spectrum_matches_continuous(two_tone_models):
    m = two_tone_models["havok"]
    mapped = models.log_mapped_spectrum(m)
    dist = diagnostics.spectrum_distance(mapped, m.spectrum.eigenvalues)
    assert dist.mean_distance < 2e-3


def test_central_scheme_removes_damping_bias(two_tone):
    fwd = fit(two_tone, FitConfig(delays=41, rank=4, forcing=False))
    ctr = fit(two_tone, FitConfig(delays=41, rank=4, forcing=False,
                                  derivative_scheme="central"))
    # forward differencing damps each mode by about sigma*dt/2
    assert np.max(fwd.spectrum.eigenvalues.real) < -1e-4
    assert np.max(np.abs(ctr.spectrum.eigenvalues.real)) < 1e-6
    assert (diagnostics.antisymmetry_score(ctr.a_continuous)
            <= diagnostics.antisymmetry_score(fwd.a_continuous) + 1e-6)


def test_residual_small_on_clean_signal(two_tone_models):
    for m in two_tone_models.values():
        assert m.residual < 1e-6


def test_methods_converge_together():
    gaps = []
    for columns in (1001, 10001):
        x = _two_tone_segment(columns)
        h = fit(x, FitConfig(delays=41, rank=4, forcing=False))
        s = fit(x, FitConfig(delays=41, rank=4, forcing=False,
                             method="shavok"))
        gaps.append(np.linalg.norm(s.a_discrete - h.a_discrete))
    assert gaps[1] < gaps[0] / 10.0


def test_center_per_half_commutes(two_tone):
    # Centering subtracts the central row, which splits column-for-column,
    # so per-half centering reproduces the shared-center fit exactly.
    base = fit(two_tone, FitConfig(delays=41, rank=4, forcing=False,
                                   method="shavok"))
    half = fit(two_tone, FitConfig(delays=41, rank=4, forcing=False,
                                   method="shavok", center_per_half=True))
    np.testing.assert_array_equal(base.a_discrete, half.a_discrete)


# ---------------------------------------------------------------------------
# Rollouts and forcing


def test_forced_rollout_tracks_data(two_tone):
    m = fit(two_tone, FitConfig(delays=41, rank=5, forcing=True))
    f = models.forcing_signal(m)
    roll = models.reconstruct(
        m, m.basis.v[0, :m.state_dim], m.basis.v.shape[0], f.values
    )
    err = np.max(np.abs(roll - m.basis.v[:, :m.state_dim]))
    assert err < 1e-6


def test_unforced_rollout_tracks_data(two_tone_models):
    m = two_tone_models["havok"]
    roll = models.reconstruct(m, m.basis.v[0], m.basis.v.shape[0])
    err = np.max(np.abs(roll - m.basis.v))
    assert err < 1e-4


def test_reconstruct_validation(two_tone, two_tone_models):
    unforced = two_tone_models["havok"]
    forced = fit(two_tone, FitConfig(delays=41, rank=5, forcing=True))
    v0 = np.zeros(4)
    with pytest.raises(ParameterError):
        models.reconstruct(unforced, v0, 0)
    with pytest.raises(ParameterError):
        models.reconstruct(unforced, np.zeros(3), 5)
    with pytest.raises(ParameterError, match="forcing"):
        models.reconstruct(unforced, v0, 5, np.ones(4))
    with pytest.raises(ParameterError, match="forcing"):
        models.reconstruct(forced, v0, 5)
    with pytest.raises(ParameterError):
        models.reconstruct(forced, v0, 5, np.ones(3))  # needs steps-1
    out = models.reconstruct(forced, v0, 5, np.ones(4))
    assert out.shape == (5, 4)
    single = models.reconstruct(forced, v0, 1)
    np.testing.assert_array_equal(single, np.zeros((1, 4)))


def test_forcing_signal_scaling(two_tone):
    m = fit(two_tone, FitConfig(delays=41, rank=5, forcing=True))
    f = models.forcing_signal(m)
    np.testing.assert_array_equal(
        f.values, m.basis.sigma[4] * m.basis.v[:, 4]
    )
    assert f.t0 == m.t0
    assert f.dt == m.dt
    # quasi-periodic signal: the forcing channel is numerically empty
    rms_f = np.sqrt(np.mean(f.values**2))
    rms_v1 = np.sqrt(np.mean(m.basis.v[:, 0] ** 2))
    assert rms_f < 1e-3 * rms_v1


def test_forcing_signal_significant_for_chaos(series_cache):
    x = series_cache("lorenz_short")
    m = fit(x, FitConfig(delays=101, rank=5, forcing=True))
    f = models.forcing_signal(m)
    rms_f = np.sqrt(np.mean(f.values**2))
    rms_v1 = np.sqrt(np.mean(m.basis.v[:, 0] ** 2))
    assert rms_f > 1e-2 * rms_v1


def test_forcing_signal_requires_forced_model(two_tone_models):
    with pytest.raises(ParameterError):
        models.forcing_signal(two_tone_models["havok"])


# ---------------------------------------------------------------------------
# Oracle equivalence


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=2**31 - 1))
def test_havok_matches_normal_equations(seed):
    """The pseudo-inverse regression equals the textbook least squares."""
    gen = np.random.default_rng(seed)
    x = TimeSeries(t0=0.0, dt=0.05, values=gen.standard_normal(45))
    m = fit(x, FitConfig(delays=6, rank=4, centering=False, forcing=False))
    v1 = m.basis.v.T[:, :-1]
    v2 = m.basis.v.T[:, 1:]
    oracle = (v2 @ v1.T) @ np.linalg.inv(v1 @ v1.T)
    rel = np.linalg.norm(m.a_discrete - oracle) / np.linalg.norm(oracle)
    assert rel < 1e-8
