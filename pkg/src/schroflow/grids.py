"""Periodic uniform grids on the circle S^1 and the flat torus T^2.

Fields are stored node-collocated, row-major in axis order, with any
component axes trailing the spatial ones.  Differential operators are
second-order central stencils with periodic wrap (np.roll); integration
is the periodic trapezoid rule, which on these grids is a plain sum
times the cell volume.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DomainGrid:
    """Uniform periodic grid over a flat 1-D or 2-D torus."""

    sizes: tuple
    lengths: tuple

    def __post_init__(self):
        if not 1 <= len(self.sizes) <= 2:
            raise ValueError("only 1-D and 2-D domains are supported")
        if len(self.lengths) != len(self.sizes):
            raise ValueError("sizes and lengths must have matching dimension")
        if any(int(n) < 8 for n in self.sizes):
            raise ValueError("each axis needs at least 8 nodes")
        if any(length <= 0 for length in self.lengths):
            raise ValueError("axis periods must be positive")
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        object.__setattr__(self, "lengths", tuple(float(length) for length in self.lengths))

    @property
    def dim(self) -> int:
        return len(self.sizes)

    @property
    def spacing(self) -> tuple:
        return tuple(length / n for length, n in zip(self.lengths, self.sizes))

    @property
    def h_min(self) -> float:
        return min(self.spacing)

    @property
    def node_count(self) -> int:
        return int(np.prod(self.sizes))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    def axes(self):
        """Per-axis node coordinate arrays."""
        return [h * np.arange(n) for n, h in zip(self.sizes, self.spacing)]

    def meshgrid(self):
        return np.meshgrid(*self.axes(), indexing="ij")

    def gradient(self, f, offset: int = 0):
        """Central-difference derivative along every spatial axis.

        Spatial axes of f start at `offset` (leading axes are treated as
        index axes, e.g. tensor slots of a section).  Returns an array of
        shape (dim,) + f.shape with the derivative axis prepended.
        """
        f = np.asarray(f)
        parts = [
            (np.roll(f, -1, axis=offset + a) - np.roll(f, 1, axis=offset + a)) / (2.0 * h)
            for a, h in enumerate(self.spacing)
        ]
        return np.stack(parts)

    def laplacian(self, f, offset: int = 0):
        """Second-order periodic Laplacian, summed over spatial axes."""
        f = np.asarray(f)
        out = np.zeros_like(f, dtype=float)
        for a, h in enumerate(self.spacing):
            ax = offset + a
            out += (np.roll(f, -1, axis=ax) - 2.0 * f + np.roll(f, 1, axis=ax)) / (h * h)
        return out

    def integrate(self, f) -> float:
        """Quadrature of a scalar node field (periodic trapezoid rule)."""
        return float(np.sum(f)) * self.cell_volume


def make_grid(domain: str, sizes, lengths=None) -> DomainGrid:
    """Build a grid from a CLI-style domain spec ("s1" or "t2")."""
    domain = domain.lower()
    if isinstance(sizes, int):
        sizes = (sizes,)
    sizes = tuple(int(n) for n in sizes)
    expected = {"s1": 1, "t2": 2}.get(domain)
    if expected is None:
        raise KeyError(f"unknown domain {domain!r}; choose from ['s1', 't2']")
    if len(sizes) != expected:
        raise ValueError(f"domain {domain!r} needs {expected} axis size(s), got {len(sizes)}")
    if lengths is None:
        lengths = (2.0 * np.pi,) * expected
    elif isinstance(lengths, (int, float)):
        lengths = (float(lengths),) * expected
    else:
        lengths = tuple(float(length) for length in lengths)
    return DomainGrid(sizes=sizes, lengths=lengths)
