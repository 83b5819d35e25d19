"""Discrete Sobolev norms of maps and the interpolation-inequality checkers.

Two norm families coexist and must not be conflated:

* W-side: plain iterated grid derivatives D^i of the ambient components,
  measured with the Euclidean component sum.  ``w_norm(u, k)`` returns the
  norm of the first derivative Du through k further plain derivatives,
  i.e. derivative orders 1..k+1 of u.
* H-side: iterated pullback covariant derivatives of the first-derivative
  section Du, measured with the signed fiber metric.  ``h_norm(u, k)``
  covers covariant orders 0..k applied to Du.

Both families therefore start from the same first-derivative object and
w_norm(u, 0) == h_norm(u, 0) on the sphere; the H-side becomes nonlinear
in u through the tangential projections, which is exactly the gap the
polynomial-equivalence checker quantifies.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ExcludedEndpoint, ParameterImbalance, ResolutionExceeded
from .fields import Field, constraint_drift, energy, gradient_squared_values, sup_gradient


@dataclass(frozen=True)
class NormReport:
    """Per-time monitor record of a flow trajectory."""

    time: float
    energy: float
    sup_grad: float
    w_norms: tuple      # ||Du||_{W^{l,2}} for l = 0..k_max
    h_norms: tuple      # ||Du||_{H^{l,2}} for l = 0..k_max
    constraint_drift: float


def _check_resolution(grid, order):
    # one stencil application per derivative; demand order <= n/4 per axis
    limit = min(grid.sizes) / 4
    if order > limit:
        raise ResolutionExceeded(
            f"derivative order {order} exceeds n/4 = {limit:g} for sizes {grid.sizes}"
        )


def _squared_magnitude(s, weights, lead_axes):
    """Per-node squared frame magnitude of a section with `lead_axes` index axes."""
    sq = np.sum(weights * s * s, axis=-1)
    if lead_axes:
        sq = np.sum(sq, axis=tuple(range(lead_axes)))
    return sq


def plain_derivative_tower(u: Field, count: int):
    """[D^1 u, ..., D^count u]: iterated central differences of the components."""
    _check_resolution(u.grid, count)
    tower = []
    s = u.values
    for i in range(count):
        s = u.grid.gradient(s, offset=i)
        tower.append(s)
    return tower


def covariant_derivative_tower(u: Field, count: int):
    """[Du, cov(Du), ..., cov^(count-1)(Du)]: covariant tower over the base section Du."""
    _check_resolution(u.grid, count)
    tower = []
    s = u.grid.gradient(u.values)
    tower.append(s)
    for i in range(1, count):
        ds = u.grid.gradient(s, offset=i)
        s = u.target.project_tangent(u.values, ds)
        tower.append(s)
    return tower


def w_norm(u: Field, k: int) -> float:
    """Discrete ||Du||_{W^{k,2}}: plain derivative orders 1..k+1 of u."""
    if k < 0:
        raise ValueError("k must be >= 0")
    tower = plain_derivative_tower(u, k + 1)
    acc = 0.0
    for i, s in enumerate(tower):
        acc += u.grid.integrate(_squared_magnitude(s, 1.0, i + 1))
    return float(np.sqrt(max(acc, 0.0)))


def h_norm(u: Field, k: int) -> float:
    """Discrete ||Du||_{H^{k,2}}: covariant derivative orders 0..k of Du."""
    if k < 0:
        raise ValueError("k must be >= 0")
    tower = covariant_derivative_tower(u, k + 1)
    sig = u.target.signature
    acc = 0.0
    for i, s in enumerate(tower):
        acc += u.grid.integrate(_squared_magnitude(s, sig, i + 1))
    return float(np.sqrt(max(acc, 0.0)))


def measure(u: Field, time: float = 0.0, k_max=None) -> NormReport:
    """Full monitor sample: energy, sup|grad u|, both norm ladders, drift."""
    m = u.grid.dim
    if k_max is None:
        k_max = m // 2 + 2
    plain = plain_derivative_tower(u, k_max + 1)
    cov = covariant_derivative_tower(u, k_max + 1)
    sig = u.target.signature
    w_terms = [u.grid.integrate(_squared_magnitude(s, 1.0, i + 1)) for i, s in enumerate(plain)]
    h_terms = [u.grid.integrate(_squared_magnitude(s, sig, i + 1)) for i, s in enumerate(cov)]
    w_norms = tuple(float(np.sqrt(max(sum(w_terms[: l + 1]), 0.0))) for l in range(k_max + 1))
    h_norms = tuple(float(np.sqrt(max(sum(h_terms[: l + 1]), 0.0))) for l in range(k_max + 1))
    return NormReport(
        time=float(time),
        energy=energy(u),
        sup_grad=sup_gradient(u),
        w_norms=w_norms,
        h_norms=h_norms,
        constraint_drift=constraint_drift(u),
    )


# ---------------------------------------------------------------------------
# polynomial equivalence of the two norm families

def norm_equivalence_check(u: Field, k: int) -> dict:
    """Evaluate both directions of the polynomial norm comparison at order k.

    Direction one bounds the plain-derivative norm by a degree-k polynomial
    in the covariant norm; direction two is the reverse.  Returns the four
    norm quantities and the smallest constant making both inequalities hold
    for this field (0.0 for a constant map, where everything vanishes).
    Requires k > dim(M)/2.
    """
    if k <= u.grid.dim / 2:
        raise ValueError(f"order k={k} must exceed dim(M)/2 = {u.grid.dim / 2}")
    w_side = w_norm(u, k - 1)
    h_side = h_norm(u, k - 1)
    rhs_w_bound = sum(h_side ** t for t in range(1, k + 1))
    rhs_h_bound = sum(w_side ** t for t in range(1, k + 1))
    ratios = []
    for lhs, rhs in ((w_side, rhs_w_bound), (h_side, rhs_h_bound)):
        if rhs > 0.0:
            ratios.append(lhs / rhs)
        elif lhs > 0.0:
            ratios.append(np.inf)
    return {
        "lhs_22": w_side,
        "rhs_22": rhs_w_bound,
        "lhs_23": h_side,
        "rhs_23": rhs_h_bound,
        "fitted_C": float(max(ratios)) if ratios else 0.0,
    }


# ---------------------------------------------------------------------------
# multiplicative interpolation inequality for the section Du

def _inv(x):
    return 0.0 if np.isinf(x) else 1.0 / x


def validate_interpolation_parameters(m, j, n, p, q, r, a):
    """Check the dimensional-balance relation and the admissible a-range.

    Raises ParameterImbalance when the exponents fail
    1/p = j/m + a*(1/r - n/m) + (1-a)/q (to 1e-12) or fall outside their
    ranges, and ExcludedEndpoint for the forbidden a = 1, r = m/(n-j) != 1
    combination.
    """
    if not (isinstance(j, (int, np.integer)) and isinstance(n, (int, np.integer))):
        raise ParameterImbalance("derivative orders j and n must be integers")
    if not 0 <= j <= n or n < 1:
        raise ParameterImbalance(f"need 0 <= j <= n with n >= 1, got j={j}, n={n}")
    if q < 1 or r < 1:
        raise ParameterImbalance(f"integrability exponents need q, r >= 1, got q={q}, r={r}")
    if np.isinf(r):
        raise ParameterImbalance("r = inf is not supported by the discrete checker")
    if not (j / n <= a <= 1.0):
        raise ParameterImbalance(f"interpolation weight a={a} outside [j/n, 1] = [{j / n}, 1]")
    if not (p > 0):
        raise ParameterImbalance(f"target exponent p must be positive (or inf), got p={p}")
    balance = j / m + a * (_inv(r) - n / m) + (1.0 - a) * _inv(q)
    if abs(_inv(p) - balance) > 1e-12:
        raise ParameterImbalance(
            f"balance relation violated: 1/p = {_inv(p)!r} but "
            f"j/m + a(1/r - n/m) + (1-a)/q = {balance!r}"
        )
    if a == 1.0 and n > j and r == m / (n - j) and r != 1.0:
        raise ExcludedEndpoint(
            f"a = 1 with r = m/(n-j) = {r:g} != 1 is outside the inequality's validity"
        )


def _lp_of_magnitude(grid, mag, p):
    if np.isinf(p):
        return float(np.max(mag))
    return float(grid.integrate(mag ** p) ** (1.0 / p))


def interpolation_ratio(u: Field, j, n, p, q, r, a) -> dict:
    """Both sides of the interpolation inequality for the section s = Du.

    lhs = ||cov^j s||_{L^p}; rhs_without_C = ||s||_{H^{n,r}}^a * ||s||_{L^q}^(1-a).
    The ratio lhs/rhs is the per-field empirical constant; a sweep over a
    field family reports the sup ratio as the empirical C(M).
    """
    m = u.grid.dim
    validate_interpolation_parameters(m, j, n, p, q, r, a)
    tower = covariant_derivative_tower(u, n + 1)
    sig = u.target.signature
    mags = [np.sqrt(np.maximum(_squared_magnitude(s, sig, i + 1), 0.0))
            for i, s in enumerate(tower)]
    lhs = _lp_of_magnitude(u.grid, mags[j], p)
    h_acc = sum(u.grid.integrate(mag ** r) for mag in mags[: n + 1])
    h_nr = max(h_acc, 0.0) ** (1.0 / r)
    low = _lp_of_magnitude(u.grid, mags[0], q)
    rhs = (h_nr ** a) * (low ** (1.0 - a))
    if rhs > 0.0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0.0 else np.inf
    return {"lhs": lhs, "rhs_without_C": rhs, "ratio": float(ratio)}
