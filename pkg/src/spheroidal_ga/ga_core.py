"""Dense multivectors of the Euclidean geometric algebras G_d, d <= 6.

A multivector stores 2**d coefficients indexed by blade bitmask: bit k set
means generator e_k is a factor, and blades are kept in ascending index
order.  Coefficients are either float64 (numerics) or exact ``Fraction``
objects (numpy object arrays); every operation preserves exactness when all
operands are exact.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 6


class DimensionMismatchError(ValueError):
    pass


class SingularElementError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def blade_sign_table(dim: int) -> tuple[tuple[int, ...], ...]:
    """sign[a][b] such that blade(a) * blade(b) = sign * blade(a ^ b)."""
    n = 1 << dim
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            # count generator pairs (i in a, j in b) with i > j; each is one transposition
            swaps = 0
            bb = b
            while bb:
                j = (bb & -bb).bit_length() - 1
                swaps += bin(a >> (j + 1)).count("1")
                bb &= bb - 1
            row.append(-1 if swaps & 1 else 1)
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def _grades(dim: int) -> np.ndarray:
    return np.array([bin(i).count("1") for i in range(1 << dim)])


@lru_cache(maxsize=None)
def _reverse_signs(dim: int) -> np.ndarray:
    g = _grades(dim)
    return np.where((g * (g - 1) // 2) % 2 == 0, 1, -1)


def _as_coeff_array(coeffs) -> np.ndarray:
    arr = np.asarray(coeffs)
    if arr.dtype == object:
        flat = arr.ravel()
        if all(isinstance(c, (int, np.integer, Fraction)) and not isinstance(c, bool) for c in flat):
            out = np.empty(arr.shape, dtype=object)
            out.ravel()[:] = [c if isinstance(c, Fraction) else Fraction(int(c)) for c in flat]
            return out
        return arr.astype(np.float64)
    if arr.dtype.kind == "c":
        raise TypeError("complex coefficients are not supported")
    return arr.astype(np.float64)


class Multivector:
    """Element of G_dim with dense blade coefficients.

    Values are immutable; arithmetic operators follow the geometric product
    (``*``), reversion (``~``), and scalar broadcasting for numbers.
    """

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs=None):
        if not 1 <= dim <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {dim}")
        if coeffs is None:
            arr = np.zeros(1 << dim)
        else:
            arr = _as_coeff_array(coeffs)
        if arr.shape != (1 << dim,):
            raise ValueError(f"expected {1 << dim} coefficients, got shape {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def scalar(cls, value, dim: int) -> "Multivector":
        exact = isinstance(value, (int, Fraction)) and not isinstance(value, bool)
        c = np.zeros(1 << dim, dtype=object if exact else np.float64)
        if exact:
            c[:] = Fraction(0)
            c[0] = Fraction(value)
        else:
            c[0] = value
        return cls(dim, c)

    @classmethod
    def zero(cls, dim: int, exact: bool = False) -> "Multivector":
        return cls.scalar(0 if exact else 0.0, dim)

    @classmethod
    def blade(cls, indices: Iterable[int], dim: int, coeff=1) -> "Multivector":
        """coeff * e_{i1} e_{i2} ... in the given (not necessarily sorted) order."""
        out = cls.scalar(coeff, dim)
        for k in indices:
            if not 0 <= k < dim:
                raise ValueError(f"generator e{k} not in G_{dim}")
            out = out * basis_vector(k, dim, exact=out.is_exact)
        return out

    @classmethod
    def vector(cls, components: Sequence) -> "Multivector":
        dim = len(components)
        exact = all(isinstance(c, (int, Fraction)) for c in components)
        c = np.zeros(1 << dim, dtype=object if exact else np.float64)
        if exact:
            c[:] = Fraction(0)
        for k, v in enumerate(components):
            c[1 << k] = Fraction(v) if exact else v
        return cls(dim, c)

    # -- queries ------------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.coeffs.dtype == object

    @property
    def scalar_value(self):
        return self.coeffs[0]

    def vector_components(self) -> np.ndarray:
        return np.array([self.coeffs[1 << k] for k in range(self.dim)],
                        dtype=object if self.is_exact else np.float64)

    def grades(self) -> set[int]:
        g = _grades(self.dim)
        return {int(g[i]) for i in np.flatnonzero(self.coeffs != 0)}

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.is_exact and tol == 0.0:
            return all(c == 0 for c in self.coeffs)
        return self.max_abs() <= tol

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs.astype(np.float64))))

    def norm(self) -> float:
        """Euclidean norm of the coefficient array (= sqrt(<A ~A>_0))."""
        return float(np.sqrt(np.sum(self.coeffs.astype(np.float64) ** 2)))

    def to_float(self) -> "Multivector":
        return Multivector(self.dim, self.coeffs.astype(np.float64))

    def allclose(self, other, atol: float = 1e-12) -> bool:
        other = _coerce(other, self.dim)
        _check_dims(self, other)
        return (self - other).max_abs() <= atol

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Multivector):
            _check_dims(self, other)
            return Multivector(self.dim, self.coeffs + other.coeffs)
        if isinstance(other, numbers.Number):
            c = self.coeffs.copy()
            c[0] = c[0] + other
            return Multivector(self.dim, c)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.dim, -self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (Multivector, numbers.Number)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, numbers.Number):
            return Multivector(self.dim, self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return Multivector(self.dim, other * self.coeffs)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Multivector):
            return self * inverse(other)
        if isinstance(other, numbers.Number):
            if self.is_exact and isinstance(other, (int, Fraction)):
                return Multivector(self.dim, self.coeffs * Fraction(1, 1) / Fraction(other))
            return Multivector(self.dim, self.coeffs / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, numbers.Number):
            return other * inverse(self)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, (int, np.integer)) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Multivector.scalar(1 if self.is_exact else 1.0, self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __invert__(self):
        return reverse(self)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.coeffs == other.coeffs))

    __hash__ = None

    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def __repr__(self):
        return f"Multivector({self.dim}, {self})"

    def __str__(self):
        return render(self)

    def to_json(self) -> list:
        return [self.dim] + [float(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "Multivector":
        dim = int(data[0])
        return cls(dim, [float(c) for c in data[1:]])


def _check_dims(a: Multivector, b: Multivector) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"G_{a.dim} vs G_{b.dim}")


def _coerce(x, dim: int) -> Multivector:
    if isinstance(x, Multivector):
        return x
    return Multivector.scalar(x, dim)


def basis_vector(k: int, dim: int, exact: bool = False) -> Multivector:
    return Multivector.blade_from_mask(1 << k, dim, exact)


def _blade_from_mask(mask: int, dim: int, exact: bool = False, coeff=1) -> Multivector:
    c = np.zeros(1 << dim, dtype=object if exact else np.float64)
    if exact:
        c[:] = Fraction(0)
        c[mask] = Fraction(coeff)
    else:
        c[mask] = coeff
    return Multivector(dim, c)


Multivector.blade_from_mask = staticmethod(_blade_from_mask)


def pseudoscalar(dim: int, exact: bool = False) -> Multivector:
    return _blade_from_mask((1 << dim) - 1, dim, exact)


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    _check_dims(a, b)
    signs = blade_sign_table(a.dim)
    exact = a.is_exact and b.is_exact
    n = 1 << a.dim
    out = [Fraction(0) if exact else 0.0] * n
    ac = a.coeffs.tolist()
    bc = b.coeffs.tolist()
    bnz = [(j, bj) for j, bj in enumerate(bc) if bj != 0]
    for i, ai in enumerate(ac):
        if ai == 0:
            continue
        row = signs[i]
        for j, bj in bnz:
            if row[j] > 0:
                out[i ^ j] += ai * bj
            else:
                out[i ^ j] -= ai * bj
    if exact:
        arr = np.empty(n, dtype=object)
        arr[:] = out
        return Multivector(a.dim, arr)
    return Multivector(a.dim, np.array(out, dtype=np.float64))


def outer_product(a: Multivector, b: Multivector) -> Multivector:
    """Wedge product extended bilinearly to all grades (disjoint blades only)."""
    _check_dims(a, b)
    signs = blade_sign_table(a.dim)
    exact = a.is_exact and b.is_exact
    n = 1 << a.dim
    out = [Fraction(0) if exact else 0.0] * n
    ac = a.coeffs.tolist()
    bc = b.coeffs.tolist()
    for i, ai in enumerate(ac):
        if ai == 0:
            continue
        for j, bj in enumerate(bc):
            if bj != 0 and not i & j:
                out[i | j] += signs[i][j] * ai * bj
    arr = np.empty(n, dtype=object) if exact else np.empty(n)
    arr[:] = out
    return Multivector(a.dim, arr)


def dot_wedge(a: Multivector, b: Multivector) -> tuple[Multivector, Multivector]:
    """Symmetric and antisymmetric halves of ab: (1/2)(ab + ba), (1/2)(ab - ba)."""
    ab = a * b
    ba = b * a
    half = Fraction(1, 2) if ab.is_exact else 0.5
    return (ab + ba) * half, (ab - ba) * half


def reverse(a: Multivector) -> Multivector:
    return Multivector(a.dim, a.coeffs * _reverse_signs(a.dim))


def grade_involution(a: Multivector) -> Multivector:
    g = _grades(a.dim)
    return Multivector(a.dim, a.coeffs * np.where(g % 2 == 0, 1, -1))


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.dim:
        raise ValueError(f"grade {k} outside 0..{a.dim}")
    mask = _grades(a.dim) == k
    c = a.coeffs.copy()
    c[~mask] = Fraction(0) if a.is_exact else 0.0
    return Multivector(a.dim, c)


def scalar_part(a: Multivector):
    return a.coeffs[0]


def inverse(a: Multivector, tol: float = 1e-300) -> Multivector:
    """Inverse of a versor-like element: a^-1 = ~a / (a ~a) when a ~a is scalar."""
    rev = reverse(a)
    n = a * rev
    s = n.coeffs[0]
    rest = n.coeffs.copy()
    rest[0] = 0
    scale = max(abs(float(s)), 1.0)
    if a.is_exact:
        non_scalar = any(c != 0 for c in rest)
    else:
        non_scalar = float(np.max(np.abs(rest))) > 1e-12 * scale
    if non_scalar:
        raise SingularElementError(f"{a} times its reverse is not a scalar")
    if s == 0 or abs(float(s)) <= tol:
        raise SingularElementError(f"{a} has vanishing norm")
    if a.is_exact:
        return rev / Fraction(s)
    return rev * (1.0 / s)


def blade_name(mask: int) -> str:
    if mask == 0:
        return ""
    return "e" + "".join(str(k) for k in range(MAX_DIM) if mask >> k & 1)


def render(a: Multivector, precision: int = 12) -> str:
    """Text form ``c + c e0 + c e12 + ...`` (zero terms omitted)."""
    terms = []
    for mask, c in enumerate(a.coeffs):
        if c == 0:
            continue
        if isinstance(c, Fraction):
            mag = abs(c)
            txt = str(mag)
        else:
            mag = abs(float(c))
            txt = f"{mag:.{precision}g}"
        sign = "-" if c < 0 else "+"
        name = blade_name(mask)
        body = txt if not name else (name if txt == "1" else f"{txt} {name}")
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
