import math

import numpy as np
import pytest
from scipy.linalg import expm

from delayframe.embedding import build_hankel, center_hankel
from delayframe.errors import DegenerateInputError, ParameterError
from delayframe.geometry import (
    FrenetApparatus,
    analytic_curvatures_gram,
    central_difference,
    curvature_matrix_from_frame,
    curvatures_from_model,
    curvatures_from_singular_values,
    derivative_stack,
    discrete_orthopoly,
    frenet_frame,
    monomial_orthobasis,
)

# Reference curvature triple for sin(t) + sin(2t) delay trajectories.
KAPPA_REF = (1.205e-2, 4.46e-3, 6.62e-3)


def test_central_difference_exact_on_linear():
    v = 3.0 * np.arange(20.0) + 1.0
    d = central_difference(v, dt=0.5)
    np.testing.assert_allclose(d, 6.0, atol=1e-12)
    assert d.shape == (18,)


def test_central_difference_second_order():
    t = np.linspace(0.0, 2.0, 2001)
    errs = []
    for step in (1, 2):
        tt = t[::step]
        d = central_difference(np.sin(tt), dt=tt[1] - tt[0])
        errs.append(np.max(np.abs(d - np.cos(tt[1:-1]))))
    assert errs[1] / errs[0] > 3.5  # halving dt quarters the error


def test_central_difference_validation():
    with pytest.raises(ParameterError):
        central_difference(np.ones(2), dt=0.1)
    with pytest.raises(ParameterError):
        central_difference(np.ones(5), dt=0.0)


def test_derivative_stack_alignment():
    t = np.linspace(0.0, 6.0, 6001)
    dt = t[1] - t[0]
    d1, d2 = derivative_stack(np.sin(t), dt, 2)
    assert d1.shape == d2.shape == (len(t) - 4,)
    inner = t[2:-2]
    np.testing.assert_allclose(d1, np.cos(inner), atol=5e-7)
    np.testing.assert_allclose(d2, -np.sin(inner), atol=5e-6)


def test_derivative_stack_order_bounds():
    with pytest.raises(ParameterError):
        derivative_stack(np.ones(50), 0.1, 0)
    with pytest.raises(ParameterError):
        derivative_stack(np.ones(5), 0.1, 3)  # would leave nothing


def test_frenet_frame_orthonormal_rows(rng):
    ds = [rng.standard_normal(40) for _ in range(4)]
    app = frenet_frame(ds)
    q = np.vstack(app.frame)
    np.testing.assert_allclose(q @ q.T, np.eye(4), atol=1e-10)
    assert app.dropped == ()
    assert app.speed == pytest.approx(np.linalg.norm(ds[0]))


def test_frenet_frame_straight_line_drops_higher_terms():
    d1 = np.full(25, 2.0)
    zero = np.zeros(25)
    app = frenet_frame([d1, zero, zero])
    assert app.rank == 1
    assert app.dropped == (1, 2)
    np.testing.assert_allclose(app.frame[0], d1 / np.linalg.norm(d1))


def test_frenet_frame_zero_first_derivative():
    with pytest.raises(DegenerateInputError, match="first derivative"):
        frenet_frame([np.zeros(10), np.ones(10)])


def test_curvature_matrix_recovers_skew_generator():
    k0 = np.array([
        [0.0, 1.3, 0.0, 0.0],
        [-1.3, 0.0, 0.7, 0.0],
        [0.0, -0.7, 0.0, 0.4],
        [0.0, 0.0, -0.4, 0.0],
    ])
    gen = np.random.default_rng(3)
    q0 = np.linalg.qr(gen.standard_normal((8, 8)))[0][:, :4].T

    def frames(dt, count):
        return [
            FrenetApparatus(frame=tuple(expm(k0 * (k * dt)) @ q0), speed=1.0)
            for k in range(count)
        ]

    est = curvature_matrix_from_frame(frames(0.005, 9), 0.005)
    np.testing.assert_allclose(est.k_matrix, k0, atol=5e-5)
    np.testing.assert_allclose(est.k_matrix, -est.k_matrix.T, atol=0.0)
    # The discarded symmetric part is the O(dt) term, so it halves with dt.
    coarse = curvature_matrix_from_frame(frames(0.01, 9), 0.01)
    ratio = coarse.symmetric_residual / est.symmetric_residual
    assert 1.7 < ratio < 2.3


def test_curvature_matrix_needs_two_frames():
    app = frenet_frame([np.arange(1.0, 6.0)])
    with pytest.raises(ParameterError):
        curvature_matrix_from_frame([app], 0.1)


def test_gram_curvatures_match_reference(two_tone):
    emb = center_hankel(build_hankel(two_tone, 41))
    d1, d2, d3, d4 = derivative_stack(emb.center_row, two_tone.dt, 4)
    kappas = analytic_curvatures_gram(d1, d2, d3, d4)
    for got, ref in zip(kappas, KAPPA_REF):
        assert abs(got - ref) <= 5e-5


def test_gram_curvatures_planar_circle_degenerate():
    # A single sine traces a planar circle in function space, so the
    # third derivative is dependent and kappa_2 does not exist.
    t = np.linspace(0.0, 2.0 * np.pi, 400, endpoint=False)
    with pytest.raises(DegenerateInputError, match="kappa_2") as info:
        analytic_curvatures_gram(np.cos(t), -np.sin(t), -np.cos(t), np.sin(t))
    partial = info.value.partial
    assert len(partial) == 1
    assert partial[0] == pytest.approx(1.0 / np.linalg.norm(np.cos(t)), rel=1e-9)


def test_gram_curvatures_homogeneity(rng):
    ds = [rng.standard_normal(60) for _ in range(4)]
    base = analytic_curvatures_gram(*ds)
    scaled = analytic_curvatures_gram(*[2.0 * d for d in ds])
    for a, b in zip(base, scaled):
        assert b == pytest.approx(a / 2.0, rel=1e-9)


def test_sv_curvature_closed_form():
    # i = 2 in the coefficient expression gives a_1 = (2/3)^2 * 15/3 = 20/9.
    kappas = curvatures_from_singular_values([1.0, 1.0, 1.0])
    assert kappas[0] == pytest.approx(math.sqrt(20.0 / 9.0), rel=1e-12)


def test_sv_curvature_homogeneity():
    sigma = [5.0, 3.0, 2.0, 1.0]
    base = curvatures_from_singular_values(sigma)
    scaled = curvatures_from_singular_values([2.0 * s for s in sigma])
    for a, b in zip(base, scaled):
        assert b == pytest.approx(a / 2.0, rel=1e-12)


def test_sv_curvature_vanishing_second_sigma():
    kappas = curvatures_from_singular_values([1.0, 1e-14])
    assert kappas[0] < 1e-13


def test_sv_curvature_validation():
    with pytest.raises(ParameterError):
        curvatures_from_singular_values([1.0, -1.0])
    with pytest.raises(ParameterError):
        curvatures_from_singular_values([1.0, 2.0])
    with pytest.raises(ParameterError):
        curvatures_from_singular_values([1.0])


@pytest.mark.parametrize("delays", [11, 41, 201])
def test_orthopoly_orthonormal(delays):
    degree = min(5, (delays - 1) // 2)
    p = discrete_orthopoly(delays, degree).vectors
    np.testing.assert_allclose(p.T @ p, np.eye(degree), atol=1e-12)


def test_orthopoly_degrees_and_grid():
    basis = discrete_orthopoly(11, 3)
    assert basis.degrees == (1, 2, 3)
    assert basis.half_width == 5
    assert basis.vectors.shape == (11, 3)
    # p1 is odd, p2 is even about the grid center
    np.testing.assert_allclose(basis.vectors[::-1, 0], -basis.vectors[:, 0])
    np.testing.assert_allclose(basis.vectors[::-1, 1], basis.vectors[:, 1])


def test_orthopoly_validation():
    with pytest.raises(ParameterError):
        discrete_orthopoly(10, 3)  # even
    with pytest.raises(ParameterError, match="monomial_orthobasis"):
        discrete_orthopoly(41, 6)
    with pytest.raises(ParameterError):
        discrete_orthopoly(5, 4)  # half-width 2 < degree


def test_monomial_basis_agrees_with_closed_forms():
    a = discrete_orthopoly(41, 5).vectors
    b = monomial_orthobasis(41, 5).vectors
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_monomial_basis_high_degree():
    p = monomial_orthobasis(41, 8).vectors
    np.testing.assert_allclose(p.T @ p, np.eye(8), atol=1e-10)


def test_curvatures_from_model_reads_superdiagonal():
    a = np.array([
        [0.0, 2.0, 0.0],
        [-2.0, 0.0, 6.0],
        [0.0, -6.0, 0.0],
    ])
    est = curvatures_from_model(a, speed=2.0)
    np.testing.assert_allclose(est.k_matrix, a / 2.0)
    assert est.curvatures == (1.0, 3.0)


def test_curvatures_from_model_validates_speed():
    with pytest.raises(ParameterError):
        curvatures_from_model(np.eye(3), speed=0.0)
