"""Hyperboloid model of hyperbolic n-space.

Points live on the upper sheet {x : <x,x>_M = -1, x_0 >= 1} of the unit
hyperboloid in Minkowski space R^{1,n}, where
``<x,y>_M = -x_0 y_0 + x_1 y_1 + ... + x_n y_n``.
The geodesic distance is ``d(x,y) = arccosh(-<x,y>_M)`` and the unit gradient
of the distance function d(., y) at x is ``(cosh(d) x - y)/sinh(d)``, both
closed forms in the ambient coordinates.  All operations are pure functions on
immutable values; randomness enters only through explicit seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvalidPointError, UsageError

# -<x,y>_M may fall below 1 by rounding; this band is clamped, worse is an error.
_ACOSH_CLAMP = 1e-9
_NORM_TOL = 1e-12
_TANGENT_TOL = 1e-10


def minkowski_inner(u: np.ndarray, v: np.ndarray) -> float:
    """<u, v>_M = -u_0 v_0 + sum_i u_i v_i."""
    return float(u[1:] @ v[1:] - u[0] * v[0])


@dataclass(frozen=True)
class HyperPoint:
    """A point on the upper hyperboloid sheet, renormalized on construction."""

    coords: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coords, dtype=float)
        if arr.ndim != 1 or arr.size < 3:
            raise InvalidPointError("coordinates must be a vector of length >= 3")
        if arr[0] <= 0:
            raise InvalidPointError("point must lie on the upper sheet (x0 > 0)")
        nsq = -minkowski_inner(arr, arr)
        if not nsq > 0:
            raise InvalidPointError(f"Minkowski norm square {-nsq} not negative")
        arr = arr / math.sqrt(nsq)
        # the inner product itself carries ~x0^2 * eps of rounding, so the
        # closure tolerance must scale with the point's height
        if abs(minkowski_inner(arr, arr) + 1.0) > _NORM_TOL * max(1.0, arr[0] * arr[0]):
            raise InvalidPointError("renormalization failed to reach the hyperboloid")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @property
    def dim(self) -> int:
        """Dimension n of the hyperbolic space the point lives in."""
        return self.coords.size - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, HyperPoint) and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(self.coords.tobytes())


@dataclass(frozen=True)
class TangentVector:
    """A Minkowski vector tangent to the hyperboloid at ``base``."""

    base: HyperPoint
    components: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.components, dtype=float)
        if arr.shape != self.base.coords.shape:
            raise UsageError("tangent vector dimension does not match base point")
        if abs(minkowski_inner(arr, self.base.coords)) > _TANGENT_TOL * max(1.0, float(np.abs(arr).max())):
            raise InvalidPointError("vector is not tangent to the hyperboloid at base")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "components", arr)

    def norm(self) -> float:
        """Minkowski norm; positive-definite on tangent spaces."""
        return math.sqrt(max(minkowski_inner(self.components, self.components), 0.0))


def origin(dim: int) -> HyperPoint:
    """The base point (1, 0, ..., 0) of H^dim."""
    coords = np.zeros(dim + 1)
    coords[0] = 1.0
    return HyperPoint(coords)


def distance(x: HyperPoint, y: HyperPoint) -> float:
    """Geodesic distance arccosh(-<x,y>_M); zero iff the points coincide."""
    if x.dim != y.dim:
        raise UsageError(f"dimension mismatch: {x.dim} vs {y.dim}")
    c = -minkowski_inner(x.coords, y.coords)
    if c < 1.0:
        if c < 1.0 - _ACOSH_CLAMP:
            raise InvalidPointError(f"-<x,y>_M = {c} < 1: inputs are off the hyperboloid")
        c = 1.0
    return float(np.arccosh(c))


def grad_distance(x: HyperPoint, y: HyperPoint) -> TangentVector:
    """Unit gradient of d(., y) at x, pointing away from y.

    Only defined for distinct points; the distance function is not
    differentiable at its pole.
    """
    d = distance(x, y)
    if d <= 0.0:
        raise DomainError("grad_distance is undefined at coincident points")
    comps = (math.cosh(d) * x.coords - y.coords) / math.sinh(d)
    return TangentVector(base=x, components=comps)


def sample_point(rng: np.random.Generator, dim: int, radius_bound: float) -> HyperPoint:
    """Draw a point within ``radius_bound`` of the origin, uniform in direction
    and with radius uniform on [0, radius_bound]."""
    if dim < 2:
        raise UsageError("dim must be >= 2")
    if radius_bound <= 0:
        raise UsageError("radius_bound must be positive")
    direction = rng.standard_normal(dim)
    norm = float(np.linalg.norm(direction))
    while norm < 1e-12:
        direction = rng.standard_normal(dim)
        norm = float(np.linalg.norm(direction))
    direction /= norm
    rho = float(rng.uniform(0.0, radius_bound))
    coords = np.empty(dim + 1)
    coords[0] = math.cosh(rho)
    coords[1:] = math.sinh(rho) * direction
    return HyperPoint(coords)


def random_point(dim: int, radius_bound: float, seed: int) -> HyperPoint:
    """Deterministic random point; identical seeds give identical points."""
    return sample_point(np.random.default_rng(seed), dim, radius_bound)


def tangent_frame(x: HyperPoint) -> list[TangentVector]:
    """A Minkowski-orthonormal basis of the tangent space at x.

    Gram-Schmidt on the projected ambient basis; the induced metric on the
    tangent space is positive definite, so the procedure is stable.
    """
    n = x.dim
    frame: list[np.ndarray] = []
    for i in range(n + 1):
        v = np.zeros(n + 1)
        v[i] = 1.0
        # project: v + <v,x>_M x is Minkowski-orthogonal to x
        v = v + minkowski_inner(v, x.coords) * x.coords
        for u in frame:
            v = v - minkowski_inner(v, u) * u
        nsq = minkowski_inner(v, v)
        if nsq > 1e-10:
            frame.append(v / math.sqrt(nsq))
        if len(frame) == n:
            break
    return [TangentVector(base=x, components=u) for u in frame]
