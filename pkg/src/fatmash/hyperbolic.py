"""Hyperbolic distance, model conversions and geodesic axis frames.

Two models of hyperbolic 3-space are supported:

* ``"ball"``: the open unit ball with metric 2|dx|/(1 - |x|^2);
* ``"upper-half-space"``: points with positive last coordinate and
  metric |dx|/x_d.

Frame computations go through the hyperboloid model (Minkowski signature
-+++), where axis-invariant constructions are plain linear algebra.
"""

from __future__ import annotations

import numpy as np

from .errors import OutsideModel

BALL = "ball"
UPPER_HALF_SPACE = "upper-half-space"
MODELS = (BALL, UPPER_HALF_SPACE)

_BOUNDARY_EPS = 1e-14


def _check_model(model):
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def _inside_ball(x):
    return float(np.dot(x, x)) < 1.0 - _BOUNDARY_EPS


def _inside_uhs(x):
    return x[-1] > _BOUNDARY_EPS


def hyp_dist(x, y, model=BALL):
    """Hyperbolic distance between interior points of the given model."""
    _check_model(model)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("points must have equal dimension")
    d2 = float(np.dot(x - y, x - y))
    if model == UPPER_HALF_SPACE:
        if not (_inside_uhs(x) and _inside_uhs(y)):
            raise OutsideModel("points must have positive height")
        c = 1.0 + d2 / (2.0 * x[-1] * y[-1])
    else:
        if not (_inside_ball(x) and _inside_ball(y)):
            raise OutsideModel("points must lie strictly inside the unit ball")
        c = 1.0 + 2.0 * d2 / ((1.0 - float(np.dot(x, x))) * (1.0 - float(np.dot(y, y))))
    return float(np.arccosh(max(c, 1.0)))


# ---------------------------------------------------------------------------
# model conversions


def ball_to_uhs(x):
    """Isometry from the ball to upper half-space (an involution)."""
    x = np.asarray(x, dtype=float)
    e = np.zeros_like(x)
    e[-1] = 1.0
    w = x + e
    return 2.0 * w / float(np.dot(w, w)) - e


def uhs_to_ball(p):
    return ball_to_uhs(p)


def ball_to_hyperboloid(x):
    x = np.asarray(x, dtype=float)
    n2 = float(np.dot(x, x))
    if n2 >= 1.0:
        raise OutsideModel("point not inside the unit ball")
    s = 1.0 / (1.0 - n2)
    return np.concatenate([[(1.0 + n2) * s], 2.0 * s * x])


def hyperboloid_to_ball(X):
    X = np.asarray(X, dtype=float)
    return X[1:] / (1.0 + X[0])


def minkowski_dot(X, Y):
    return float(-X[0] * Y[0] + np.dot(X[1:], Y[1:]))


def dist_hyperboloid(X, Y):
    return float(np.arccosh(max(-minkowski_dot(X, Y), 1.0)))


# ---------------------------------------------------------------------------
# geodesic axis frames


class AxisFrame:
    """Orthonormal Lorentz frame adapted to a geodesic with given ideal ends.

    ``origin`` (timelike) is the axis point closest to the ball center,
    ``direction`` (spacelike) the unit tangent, and ``normal1/normal2``
    span the orthogonal complement.  ``point(t, rho, theta)`` realizes the
    point at arclength ``t`` along the axis, pushed hyperbolic distance
    ``rho`` in normal direction ``theta``.
    """

    def __init__(self, end_a, end_b):
        u = np.asarray(end_a, dtype=float)
        v = np.asarray(end_b, dtype=float)
        for w in (u, v):
            if abs(float(np.dot(w, w)) - 1.0) > 1e-9:
                raise ValueError("ideal endpoints must be unit vectors")
        if float(np.dot(u - v, u - v)) < 1e-18:
            raise ValueError("ideal endpoints must be distinct")
        lu = np.concatenate([[1.0], u])
        lv = np.concatenate([[1.0], v])
        q = -minkowski_dot(lu, lv)  # = 1 - u.v > 0
        scale = 1.0 / np.sqrt(2.0 * q)
        self.origin = (lu + lv) * scale
        self.direction = (lv - lu) * scale
        # complete the frame: project out origin/direction from seed vectors
        basis = [self.origin, self.direction]
        normals = []
        for k in range(1, 4):
            seed = np.zeros(4)
            seed[k] = 1.0
            w = seed.copy()
            w += minkowski_dot(w, basis[0]) * basis[0]  # timelike: +<w,T>T
            w -= minkowski_dot(w, basis[1]) * basis[1]
            for nrm in normals:
                w -= minkowski_dot(w, nrm) * nrm
            norm2 = minkowski_dot(w, w)
            if norm2 > 1e-12:
                normals.append(w / np.sqrt(norm2))
            if len(normals) == 2:
                break
        if len(normals) != 2:
            raise ValueError("failed to complete axis frame")
        self.normal1, self.normal2 = normals

    def axis_point(self, t):
        X = np.cosh(t) * self.origin + np.sinh(t) * self.direction
        return hyperboloid_to_ball(X)

    def point(self, t, rho, theta):
        """Ball-model point at axis parameter t, radius rho, angle theta."""
        P = np.cosh(t) * self.origin + np.sinh(t) * self.direction
        N = np.cos(theta) * self.normal1 + np.sin(theta) * self.normal2
        X = np.cosh(rho) * P + np.sinh(rho) * N
        return hyperboloid_to_ball(X)

    def rotation_matrix(self, angle):
        """Lorentz matrix rotating by ``angle`` about the axis."""
        T, A, N1, N2 = self.origin, self.direction, self.normal1, self.normal2
        # signature-aware reconstruction: X = -<X,T>T + <X,A>A + ...
        eta = np.diag([-1.0, 1.0, 1.0, 1.0])
        frame = np.stack([T, A, N1, N2], axis=1)  # columns
        c, s = np.cos(angle), np.sin(angle)
        rot = np.diag([1.0, 1.0, 0.0, 0.0])
        rot[2, 2] = c
        rot[2, 3] = -s
        rot[3, 2] = s
        rot[3, 3] = c
        # inverse of frame in the Minkowski sense: frame^{-1} = diag(-1,1,1,1) frame^T eta
        inv = np.diag([-1.0, 1.0, 1.0, 1.0]) @ frame.T @ eta
        return frame @ rot @ inv

    def rotate_ball_point(self, x, angle):
        X = ball_to_hyperboloid(x)
        return hyperboloid_to_ball(self.rotation_matrix(angle) @ X)


def axis_distance(frame_a: AxisFrame, frame_b: AxisFrame, extent=3.0, samples=64):
    """Approximate hyperbolic distance between two axes over a parameter window.

    Coarse sampled minimum of pointwise distances; adequate for the
    separation guards of scene building.
    """
    ts = np.linspace(-extent, extent, samples)
    pa = [frame_a.axis_point(t) for t in ts]
    pb = [frame_b.axis_point(t) for t in ts]
    best = np.inf
    for a in pa:
        for b in pb:
            best = min(best, hyp_dist(a, b, BALL))
    return best
