import numpy as np
import pytest

from fatmash import hyperbolic as hyp
from fatmash.errors import OutsideModel

RNG = np.random.default_rng(99)


def random_ball_points(n, rmax=0.9):
    pts = RNG.normal(size=(n, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    radii = RNG.uniform(0.0, rmax, size=(n, 1)) ** (1 / 3)
    return pts * radii


def test_vertical_geodesic_uhs():
    d = hyp.hyp_dist([0.0, 0.0, 1.0], [0.0, 0.0, np.e], hyp.UPPER_HALF_SPACE)
    assert d == pytest.approx(1.0, rel=1e-12)


def test_identity_distance_zero():
    x = np.array([0.2, -0.1, 0.3])
    assert hyp.hyp_dist(x, x, hyp.BALL) == 0.0
    y = np.array([1.0, 2.0, 3.0])
    assert hyp.hyp_dist(y, y, hyp.UPPER_HALF_SPACE) == 0.0


def test_outside_model_raises():
    with pytest.raises(OutsideModel):
        hyp.hyp_dist([0.0, 0.0, 1.1], [0.0, 0.0, 0.5], hyp.BALL)
    with pytest.raises(OutsideModel):
        hyp.hyp_dist([0.0, 0.0, -0.1], [0.0, 0.0, 1.0], hyp.UPPER_HALF_SPACE)


def test_ball_uhs_conversion_isometric():
    for _ in range(100):
        x, y = random_ball_points(2)
        d_ball = hyp.hyp_dist(x, y, hyp.BALL)
        d_uhs = hyp.hyp_dist(hyp.ball_to_uhs(x), hyp.ball_to_uhs(y), hyp.UPPER_HALF_SPACE)
        assert d_uhs == pytest.approx(d_ball, rel=1e-9, abs=1e-12)


def test_hyperboloid_roundtrip_and_distance():
    for _ in range(100):
        x, y = random_ball_points(2)
        X = hyp.ball_to_hyperboloid(x)
        assert np.allclose(hyp.hyperboloid_to_ball(X), x, atol=1e-12)
        assert hyp.minkowski_dot(X, X) == pytest.approx(-1.0, abs=1e-9)
        d = hyp.dist_hyperboloid(X, hyp.ball_to_hyperboloid(y))
        assert d == pytest.approx(hyp.hyp_dist(x, y, hyp.BALL), rel=1e-9, abs=1e-12)


def _geodesic_length_by_integration(x, y, samples=2001):
    """Numerical arclength of the geodesic in ball-model coordinates.

    The path comes from the hyperboloid exponential map; the length is a
    composite-Simpson integral of the ball metric 2|dx|/(1-|x|^2), with
    the path derivative taken by central differences.
    """
    X = hyp.ball_to_hyperboloid(x)
    Y = hyp.ball_to_hyperboloid(y)
    c = -hyp.minkowski_dot(X, Y)
    if c <= 1.0 + 1e-15:
        return 0.0
    total = np.arccosh(c)
    V = Y - c * X
    V = V / np.sqrt(hyp.minkowski_dot(V, V))
    ts = np.linspace(0.0, total, samples)

    def path(t):
        return hyp.hyperboloid_to_ball(np.cosh(t) * X + np.sinh(t) * V)

    pts = np.array([path(t) for t in ts])
    h_diff = 1e-6
    deriv = np.array([(path(t + h_diff) - path(t - h_diff)) / (2 * h_diff) for t in ts])
    speed = 2.0 * np.linalg.norm(deriv, axis=1) / (1.0 - (pts**2).sum(1))
    h = ts[1] - ts[0]
    s = speed[0] + speed[-1] + 4 * speed[1:-1:2].sum() + 2 * speed[2:-1:2].sum()
    return s * h / 3.0


def test_distance_matches_integration_oracle():
    for _ in range(20):
        x, y = random_ball_points(2, rmax=0.8)
        d = hyp.hyp_dist(x, y, hyp.BALL)
        d_int = _geodesic_length_by_integration(x, y)
        assert d_int == pytest.approx(d, abs=1e-8)


def test_symmetry_and_triangle_inequality_bulk():
    pts = random_ball_points(3 * 10_000)
    a, b, c = pts[0::3], pts[1::3], pts[2::3]

    def dist(u, v):
        d2 = ((u - v) ** 2).sum(1)
        den = (1 - (u**2).sum(1)) * (1 - (v**2).sum(1))
        return np.arccosh(1 + 2 * d2 / den)

    dab, dba = dist(a, b), dist(b, a)
    dbc, dac = dist(b, c), dist(a, c)
    assert np.abs(dab - dba).max() <= 1e-10
    assert (dac <= dab + dbc + 1e-10).all()


def test_axis_frame_vertical():
    fr = hyp.AxisFrame([0.0, 0.0, -1.0], [0.0, 0.0, 1.0])
    assert np.allclose(fr.axis_point(0.0), [0, 0, 0], atol=1e-12)
    t = 0.7
    p = fr.axis_point(t)
    assert np.allclose(p[:2], 0.0, atol=1e-12)
    assert p[2] == pytest.approx(np.tanh(t / 2), rel=1e-12)


def test_axis_frame_point_radius_and_foot():
    fr = hyp.AxisFrame([0.0, 0.0, -1.0], [0.0, 0.0, 1.0])
    t, rho, theta = 0.4, 0.25, 1.1
    x = fr.point(t, rho, theta)
    foot = fr.axis_point(t)
    assert hyp.hyp_dist(x, foot, hyp.BALL) == pytest.approx(rho, rel=1e-9)
    # the foot is the nearest axis point
    for dt in np.linspace(-0.5, 0.5, 21):
        assert hyp.hyp_dist(x, fr.axis_point(t + dt), hyp.BALL) >= rho - 1e-12


def test_axis_frame_general_position_distance():
    u = np.array([0.6, 0.8, 0.0])
    v = np.array([-0.8, 0.0, 0.6])
    fr = hyp.AxisFrame(u, v)
    t, rho, theta = -0.3, 0.5, 2.0
    x = fr.point(t, rho, theta)
    assert hyp.hyp_dist(x, fr.axis_point(t), hyp.BALL) == pytest.approx(rho, rel=1e-9)


def test_rotation_preserves_axis_and_distance():
    fr = hyp.AxisFrame([0.0, 0.0, -1.0], [0.0, 0.0, 1.0])
    x = fr.point(0.3, 0.2, 0.5)
    y = fr.rotate_ball_point(x, 2 * np.pi / 5)
    assert hyp.hyp_dist(y, fr.axis_point(0.3), hyp.BALL) == pytest.approx(0.2, rel=1e-9)
    # rotating a point on the axis is a no-op
    p = fr.axis_point(-0.4)
    assert np.allclose(fr.rotate_ball_point(p, 1.0), p, atol=1e-12)
