"""Embedded target geometries: the unit sphere and the hyperbolic plane.

Both targets live in R^3 and are level sets of the signed quadratic form
<x, x>_sig = sum_i sig_i * x_i^2.  The sphere S^2 uses the Euclidean
signature (+,+,+) at level +1; the hyperbolic plane is the upper sheet of
<x, x>_sig = -1 in Minkowski signature (+,+,-).  Every geometric operation
(point projection, tangent projection, complex structure, tension
correction) is written against the signed form so a single code path
serves both targets.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NonProjectable


@dataclass(frozen=True, eq=False)
class TargetManifold:
    """Embedded surface with compatible complex structure in signed R^3."""

    name: str
    signature: np.ndarray        # entries +/-1, one per ambient coordinate
    constraint_level: float      # c with <p, p>_sig = c on the manifold
    ambient_dim: int = 3

    @property
    def hyperbolic(self) -> bool:
        return self.constraint_level < 0

    def signed_dot(self, x, y):
        """Signed ambient inner product, contracted over the trailing axis."""
        return np.sum(self.signature * x * y, axis=-1)

    def signed_square(self, x):
        return self.signed_dot(x, x)

    def project_point(self, x):
        """Rescale ambient vectors onto the manifold.

        Raises NonProjectable for vectors outside the projectable cone:
        the zero vector for the sphere, anything with <x,x>_sig >= 0 or a
        non-positive last coordinate for the upper hyperboloid sheet.
        """
        x = np.asarray(x, dtype=float)
        scale_sq = self.signed_square(x) / self.constraint_level
        bad = ~(scale_sq > 0.0)
        if self.hyperbolic:
            bad = bad | ~(x[..., -1] > 0.0)
        if np.any(bad):
            raise NonProjectable(
                f"{int(np.count_nonzero(bad))} point(s) not projectable onto {self.name}"
            )
        return x / np.sqrt(scale_sq)[..., None]

    def project_tangent(self, p, v):
        """Remove the normal component of v at the on-manifold point p."""
        p = np.asarray(p, dtype=float)
        v = np.asarray(v, dtype=float)
        coeff = self.signed_dot(v, p) / self.signed_square(p)
        return v - coeff[..., None] * p

    def complex_structure(self, p, v):
        """Rotate the tangent vector v by +90 degrees in the tangent plane at p.

        Sphere: the Euclidean cross product p x v.  Hyperbolic plane: the
        Minkowski cross product, i.e. p x v with the last component
        sign-flipped.  Both satisfy J^2 = -id and preserve the induced
        metric on tangent vectors.
        """
        return self.signature * np.cross(p, v)

    def tension_correction(self, p, grad_sq):
        """Normal-curvature term making laplacian + correction tangent.

        grad_sq is the signed gradient energy density sum_a <d_a u, d_a u>_sig;
        the correction is (grad_sq / c) * p for constraint level c, i.e.
        +|grad u|^2 u on the sphere and -|grad u|^2_sig u on the hyperboloid.
        """
        grad_sq = np.asarray(grad_sq, dtype=float)
        return (grad_sq / self.constraint_level)[..., None] * np.asarray(p, dtype=float)

    def distance(self, p, q):
        """Geodesic distance between on-manifold points."""
        d = self.signed_dot(p, q)
        if self.hyperbolic:
            return np.arccosh(np.maximum(-d, 1.0))
        return np.arccos(np.clip(d, -1.0, 1.0))


SPHERE = TargetManifold(
    name="s2",
    signature=np.array([1.0, 1.0, 1.0]),
    constraint_level=1.0,
)

HYPERBOLIC_PLANE = TargetManifold(
    name="h2",
    signature=np.array([1.0, 1.0, -1.0]),
    constraint_level=-1.0,
)

_BY_NAME = {"s2": SPHERE, "h2": HYPERBOLIC_PLANE}


def make_target(name: str) -> TargetManifold:
    """Look up a built-in target by its CLI name ("s2" or "h2")."""
    try:
        return _BY_NAME[name.lower()]
    except KeyError:
        raise KeyError(f"unknown target {name!r}; choose from {sorted(_BY_NAME)}") from None
