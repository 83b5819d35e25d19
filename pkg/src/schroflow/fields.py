"""Grid-sampled maps into an embedded target, and the core geometric kernels.

A Field couples a DomainGrid, a TargetManifold and one ambient 3-vector per
node (array shape = grid.sizes + (3,)).  The kernels below are the heart of
the flow: tension field, Dirichlet energy, the Hamiltonian velocity
eps*tau(u) + J(u)tau(u), pullback covariant derivatives, and the constraint
monitor.  Everything is expressed extrinsically through the signed ambient
inner product.
"""

from dataclasses import dataclass

import numpy as np

from .grids import DomainGrid
from .targets import TargetManifold


@dataclass(frozen=True, eq=False)
class Field:
    """Map from the grid into the target, one ambient vector per node."""

    grid: DomainGrid
    target: TargetManifold
    values: np.ndarray

    def __post_init__(self):
        expected = self.grid.sizes + (self.target.ambient_dim,)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape} != {expected}")

    def with_values(self, values) -> "Field":
        return Field(self.grid, self.target, values)


# ---------------------------------------------------------------------------
# kernels (value-level variants are used in the hot flow loop)

def gradient_squared_values(grid, target, values):
    """Signed gradient energy density sum_a <d_a u, d_a u>_sig per node."""
    du = grid.gradient(values)
    return np.sum(target.signature * du * du, axis=(0, -1))


def tension_values(grid, target, values):
    """laplacian(u) plus the normal-curvature correction; tangent to O(h^2)."""
    lap = grid.laplacian(values)
    dens = gradient_squared_values(grid, target, values)
    return lap + target.tension_correction(values, dens)


def velocity_values(grid, target, values, epsilon):
    """Right-hand side eps*tau(u) + J(u)tau(u) evaluated on raw node values."""
    tau = tension_values(grid, target, values)
    jtau = target.complex_structure(values, tau)
    if epsilon:
        return epsilon * tau + jtau
    return jtau


def tension(u: Field):
    """Tension field of u, one ambient vector per node."""
    return tension_values(u.grid, u.target, u.values)


def energy(u: Field) -> float:
    """Dirichlet energy: half the integral of the signed gradient density."""
    return 0.5 * u.grid.integrate(gradient_squared_values(u.grid, u.target, u.values))


def schrodinger_velocity(u: Field, epsilon: float = 0.0):
    """Flow velocity eps*tau(u) + J(u)tau(u); tangent at each node."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    return velocity_values(u.grid, u.target, u.values, epsilon)


def covariant_derivative(u: Field, s):
    """Pullback covariant derivative of a tangent section along each axis.

    s carries any number of leading index axes followed by grid.sizes and
    the ambient axis.  The result prepends one more index axis of length
    grid.dim: out[b, ...] = tangential projection of d_b s[...].
    """
    s = np.asarray(s)
    lead = s.ndim - u.grid.dim - 1
    if lead < 0:
        raise ValueError("section must have shape (... , *sizes, ambient_dim)")
    ds = u.grid.gradient(s, offset=lead + 1)
    return u.target.project_tangent(u.values, ds)


def constraint_drift(u: Field) -> float:
    """Max node deviation of <u,u>_sig from the target constraint level."""
    return float(np.max(np.abs(u.target.signed_square(u.values) - u.target.constraint_level)))


def sup_gradient(u: Field) -> float:
    """Max over nodes of the pointwise gradient magnitude |grad u|."""
    dens = gradient_squared_values(u.grid, u.target, u.values)
    return float(np.sqrt(max(float(np.max(dens)), 0.0)))


# ---------------------------------------------------------------------------
# initial conditions

def constant_field(grid, target, point=(0.0, 0.0, 1.0)) -> Field:
    """Constant map at the projection of `point`."""
    p = target.project_point(np.asarray(point, dtype=float))
    values = np.broadcast_to(p, grid.sizes + (target.ambient_dim,)).copy()
    return Field(grid, target, values)


def great_circle(grid, target, winding: int = 1) -> Field:
    """Closed geodesic of the sphere traversed `winding` times (1-D domains)."""
    _require_sphere(target, "greatcircle")
    _require_dim(grid, 1, "greatcircle")
    x = grid.axes()[0]
    phase = 2.0 * np.pi * winding * x / grid.lengths[0]
    values = np.stack([np.cos(phase), np.sin(phase), np.zeros_like(phase)], axis=-1)
    return Field(grid, target, values)


def magnon(grid, target, k: int = 1, theta: float = np.pi / 4, t: float = 0.0,
           omega: float = 0.0) -> Field:
    """Precessing spin wave of the sphere-valued chain (1-D domains).

    The cone angle is theta, the spatial wavenumber is 2*pi*k/L, and the
    phase advances as kappa*x - omega*t.  With omega = 0 this is the usual
    t = 0 initial condition; tests pass the exact precession frequency to
    sample the solution at later times.
    """
    _require_sphere(target, "magnon")
    _require_dim(grid, 1, "magnon")
    x = grid.axes()[0]
    phase = 2.0 * np.pi * k * x / grid.lengths[0] - omega * t
    s, c = np.sin(theta), np.cos(theta)
    values = np.stack([s * np.cos(phase), s * np.sin(phase), np.full_like(phase, c)], axis=-1)
    return Field(grid, target, values)


def random_smooth(grid, target, seed: int, modes: int = 4, amp: float = 0.3,
                  base=(0.0, 0.0, 1.0)) -> Field:
    """Low-frequency trigonometric perturbation of a constant map, projected.

    Mode coefficients are drawn from the seed only, never from the grid
    size, so the same seed describes the same continuum map on every
    resolution (used by the mesh-refinement checks).
    """
    rng = np.random.default_rng(seed)
    coords = grid.meshgrid()
    perturb = np.zeros(grid.sizes + (target.ambient_dim,))
    if grid.dim == 1:
        wavenumbers = [(k,) for k in range(1, modes + 1)]
    else:
        wavenumbers = [
            (k1, k2)
            for k1 in range(0, modes + 1)
            for k2 in range(-modes, modes + 1)
            if (k1, k2) != (0, 0) and not (k1 == 0 and k2 < 0)
            and max(abs(k1), abs(k2)) <= modes
        ]
    for kvec in wavenumbers:
        decay = amp / (1.0 + float(np.dot(kvec, kvec)))
        coeff_cos = rng.normal(0.0, decay, size=target.ambient_dim)
        coeff_sin = rng.normal(0.0, decay, size=target.ambient_dim)
        phase = sum(
            2.0 * np.pi * k * x / length
            for k, x, length in zip(kvec, coords, grid.lengths)
        )
        perturb += np.cos(phase)[..., None] * coeff_cos + np.sin(phase)[..., None] * coeff_sin
    raw = np.asarray(base, dtype=float) + perturb
    return Field(grid, target, target.project_point(raw))


def bump(grid, target, amp: float = 2.5, width: float = 0.5,
         base=(0.0, 0.0, 1.0), pole=(1.0, 0.0, 0.0)) -> Field:
    """Concentrated large-gradient datum: tilt toward `pole` inside a periodic bump."""
    coords = grid.meshgrid()
    r2 = sum(
        np.sin(np.pi * (x - 0.5 * length) / length) ** 2 * (length / np.pi) ** 2
        for x, length in zip(coords, grid.lengths)
    )
    profile = amp * np.exp(-r2 / (2.0 * width * width))
    raw = np.asarray(base, dtype=float) + profile[..., None] * np.asarray(pole, dtype=float)
    return Field(grid, target, target.project_point(raw))


def _require_sphere(target, kind):
    if target.name != "s2":
        raise ValueError(f"initializer {kind!r} is only defined for the s2 target")


def _require_dim(grid, dim, kind):
    if grid.dim != dim:
        raise ValueError(f"initializer {kind!r} needs a {dim}-D domain")
