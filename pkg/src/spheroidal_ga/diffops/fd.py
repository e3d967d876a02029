"""Central finite differences on black-box Cartesian fields.

Gradients act from the left, grad f = sum_k e_k d_k f, so that for a
multivector field the scalar part is the divergence and the bivector part
is the curl.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..ga_core import Multivector, basis_vector

H_FIRST = 1e-5
H_SECOND = 1e-4


class StencilOutOfDomainError(ValueError):
    pass


@dataclass(frozen=True)
class FieldFn:
    """A field together with an (optional) axis-aligned domain box."""

    fn: Callable
    lower: tuple | None = None
    upper: tuple | None = None
    dim: int = 3

    def __call__(self, x):
        return self.fn(x)

    def contains(self, x: np.ndarray) -> bool:
        if self.lower is not None and np.any(x < np.asarray(self.lower)):
            return False
        if self.upper is not None and np.any(x > np.asarray(self.upper)):
            return False
        return True


def _as_array(x) -> np.ndarray:
    if isinstance(x, Multivector):
        return x.vector_components().astype(np.float64)
    return np.asarray(x, dtype=np.float64)


def _as_mv(value, dim: int) -> Multivector:
    if isinstance(value, Multivector):
        return value.to_float()
    return Multivector.scalar(float(value), dim)


def _check_stencil(f, x: np.ndarray, reach: float) -> None:
    if not isinstance(f, FieldFn):
        return
    for k in range(len(x)):
        for s in (-reach, reach):
            y = x.copy()
            y[k] += s
            if not f.contains(y):
                raise StencilOutOfDomainError(
                    f"stencil point {y.tolist()} leaves the field domain")


def partial(f, x, k: int, h: float = H_FIRST):
    x = _as_array(x)
    _check_stencil(f, x, h)
    d = np.zeros_like(x)
    d[k] = h
    return (f(x + d) - f(x - d)) * (0.5 / h)


def fd_gradient(f, x, h: float = H_FIRST) -> Multivector:
    """sum_k e_k (f(x + h e_k) - f(x - h e_k)) / 2h as a left product."""
    if h <= 0:
        raise ValueError("h must be positive")
    x = _as_array(x)
    dim = len(x)
    _check_stencil(f, x, h)
    out = Multivector.zero(dim)
    for k in range(dim):
        d = np.zeros(dim)
        d[k] = h
        dk = _as_mv(f(x + d), dim) - _as_mv(f(x - d), dim)
        out = out + basis_vector(k, dim) * dk * (0.5 / h)
    return out


_STENCILS = {
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    4: ((-2, -1 / 12), (-1, 4 / 3), (0, -5 / 2), (1, 4 / 3), (2, -1 / 12)),
}


def second_partials(f, x, h: float = H_SECOND, order: int = 2) -> list:
    """Unmixed second partials d_kk f, one per coordinate."""
    if order not in _STENCILS:
        raise ValueError("order must be 2 or 4")
    x = _as_array(x)
    stencil = _STENCILS[order]
    _check_stencil(f, x, h * max(abs(s) for s, _ in stencil))
    f0 = f(x)
    out = []
    for k in range(len(x)):
        acc = f0 * 0.0
        for s, w in stencil:
            if s == 0:
                acc = acc + f0 * w
            else:
                d = np.zeros(len(x))
                d[k] = s * h
                acc = acc + f(x + d) * w
        out.append(acc * (1.0 / (h * h)))
    return out


def fd_laplacian(f, x, h: float = H_SECOND, order: int = 2):
    """sum_k d_kk f by central second differences (works for scalar or Multivector f)."""
    if h <= 0:
        raise ValueError("h must be positive")
    parts = second_partials(f, x, h, order)
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total


def laplacian_scale(f, x, h: float = H_SECOND, order: int = 2) -> float:
    """sum_k |d_kk f|, the natural magnitude for relative Laplacian residuals."""
    total = 0.0
    for p in second_partials(f, x, h, order):
        total += p.max_abs() if isinstance(p, Multivector) else abs(float(p))
    return total
