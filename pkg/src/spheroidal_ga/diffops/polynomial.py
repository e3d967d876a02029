"""Polynomials in real variables with exact rational multivector coefficients.

Terms are stored sparsely as {(exponents, blade_mask): Fraction}; zero terms
are never kept, so equality is structural.
"""

from __future__ import annotations

import itertools
import numbers
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from ..ga_core import Multivector, blade_name, blade_sign_table, _grades

Key = tuple[tuple[int, ...], int]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return Fraction(int(v))
    raise TypeError(f"exact coefficient expected, got {type(v).__name__}")


class MvPolynomial:
    __slots__ = ("nvars", "dim", "_terms")

    def __init__(self, nvars: int, dim: int, terms: Mapping[Key, object] | None = None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = nvars
        self.dim = dim
        clean: dict[Key, Fraction] = {}
        for (exps, mask), c in (terms or {}).items():
            if len(exps) != nvars:
                raise ValueError(f"exponent tuple {exps} has wrong length")
            c = _frac(c)
            if c != 0:
                clean[(tuple(int(e) for e in exps), int(mask))] = c
        self._terms = clean

    @classmethod
    def _raw(cls, nvars: int, dim: int, terms: dict[Key, Fraction]) -> "MvPolynomial":
        # trusted internal path: keys already well-formed, values Fractions
        out = object.__new__(cls)
        out.nvars, out.dim = nvars, dim
        out._terms = {k: c for k, c in terms.items() if c}
        return out

    # -- constructors ------------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, dim: int) -> "MvPolynomial":
        return cls(nvars, dim)

    @classmethod
    def constant(cls, value, nvars: int, dim: int) -> "MvPolynomial":
        if isinstance(value, Multivector):
            return cls.from_multivector(value, nvars)
        return cls(nvars, dim, {((0,) * nvars, 0): value})

    @classmethod
    def from_multivector(cls, mv: Multivector, nvars: int,
                         exps: tuple[int, ...] | None = None) -> "MvPolynomial":
        if not mv.is_exact:
            raise TypeError("polynomial coefficients must be exact")
        exps = exps or (0,) * nvars
        return cls(nvars, mv.dim, {(exps, m): c for m, c in enumerate(mv.coeffs) if c != 0})

    @classmethod
    def variable(cls, k: int, nvars: int, dim: int) -> "MvPolynomial":
        exps = [0] * nvars
        exps[k] = 1
        return cls(nvars, dim, {(tuple(exps), 0): 1})

    @classmethod
    def monomial(cls, exps: Iterable[int], dim: int, coeff=1, mask: int = 0) -> "MvPolynomial":
        exps = tuple(exps)
        return cls(len(exps), dim, {(exps, mask): coeff})

    @classmethod
    def position(cls, dim: int) -> "MvPolynomial":
        """x = sum_k x_k e_k with one variable per generator."""
        return cls(dim, dim, {(tuple(int(j == k) for j in range(dim)), 1 << k): 1
                              for k in range(dim)})

    # -- queries -------------------------------------------------------------------

    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def coefficients(self) -> dict[tuple[int, ...], Multivector]:
        """Exponent tuple -> exact Multivector coefficient."""
        out: dict[tuple[int, ...], list] = {}
        for (exps, mask), c in self._terms.items():
            out.setdefault(exps, [Fraction(0)] * (1 << self.dim))[mask] += c
        return {e: Multivector(self.dim, np.array(v, dtype=object)) for e, v in out.items()}

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e, _ in self._terms), default=-1)

    def grades(self) -> set[int]:
        g = _grades(self.dim)
        return {int(g[m]) for _, m in self._terms}

    def grade(self, k: int) -> "MvPolynomial":
        g = _grades(self.dim)
        return MvPolynomial._raw(self.nvars, self.dim,
                                 {key: c for key, c in self._terms.items() if g[key[1]] == k})

    def blade_part(self, mask: int) -> "MvPolynomial":
        """Scalar polynomial multiplying the blade ``mask``."""
        return MvPolynomial._raw(self.nvars, self.dim,
                                 {(e, 0): c for (e, m), c in self._terms.items() if m == mask})

    def _compatible(self, other: "MvPolynomial") -> None:
        if (self.nvars, self.dim) != (other.nvars, other.dim):
            raise ValueError(f"incompatible polynomials: ({self.nvars},{self.dim}) vs "
                             f"({other.nvars},{other.dim})")

    def _lift(self, other) -> "MvPolynomial":
        if isinstance(other, MvPolynomial):
            self._compatible(other)
            return other
        if isinstance(other, Multivector):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            return MvPolynomial.from_multivector(other, self.nvars)
        return MvPolynomial.constant(other, self.nvars, self.dim)

    # -- arithmetic ------------------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return MvPolynomial._raw(self.nvars, self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return MvPolynomial._raw(self.nvars, self.dim, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def _scale(self, s) -> "MvPolynomial":
        s = _frac(s)
        return MvPolynomial._raw(self.nvars, self.dim, {k: c * s for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, numbers.Rational) and not isinstance(other, bool):
            return self._scale(other)
        other = self._lift(other)
        signs = blade_sign_table(self.dim)
        out: dict[Key, Fraction] = {}
        for (ea, ma), ca in self._terms.items():
            row = signs[ma]
            for (eb, mb), cb in other._terms.items():
                key = (tuple(a + b for a, b in zip(ea, eb)), ma ^ mb)
                v = ca * cb if row[mb] > 0 else -(ca * cb)
                out[key] = out.get(key, Fraction(0)) + v
        return MvPolynomial._raw(self.nvars, self.dim, out)

    def __rmul__(self, other):
        if isinstance(other, numbers.Rational) and not isinstance(other, bool):
            return self._scale(other)
        return self._lift(other) * self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = MvPolynomial.constant(1, self.nvars, self.dim)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MvPolynomial):
            return (self.nvars, self.dim) == (other.nvars, other.dim) and self._terms == other._terms
        if isinstance(other, (numbers.Rational, Multivector)):
            return self == self._lift(other)
        return NotImplemented

    __hash__ = None

    def conj0(self) -> "MvPolynomial":
        """e0 f e0 (e0-conjugation, coefficient-wise)."""
        e0 = MvPolynomial(self.nvars, self.dim, {((0,) * self.nvars, 1): 1})
        return e0 * self * e0

    def reverse(self) -> "MvPolynomial":
        g = _grades(self.dim)
        return MvPolynomial(self.nvars, self.dim,
                            {k: (c if (g[k[1]] // 2) % 2 == 0 else -c) for k, c in self._terms.items()})

    # -- calculus ---------------------------------------------------------------------

    def diff(self, k: int) -> "MvPolynomial":
        out: dict[Key, Fraction] = {}
        for (exps, mask), c in self._terms.items():
            if exps[k]:
                e = list(exps)
                e[k] -= 1
                key = (tuple(e), mask)
                out[key] = out.get(key, Fraction(0)) + c * exps[k]
        return MvPolynomial._raw(self.nvars, self.dim, out)

    def _vector_var(self, k: int) -> "MvPolynomial":
        return MvPolynomial(self.nvars, self.dim, {((0,) * self.nvars, 1 << k): 1})

    def gradient(self, var_to_generator: Mapping[int, int] | None = None) -> "MvPolynomial":
        """sum_k e_{g(k)} d_k f acting from the left; by default variable k pairs with e_k."""
        mapping = var_to_generator or {k: k for k in range(min(self.nvars, self.dim))}
        out = MvPolynomial.zero(self.nvars, self.dim)
        for k, g in mapping.items():
            out = out + self._vector_var(g) * self.diff(k)
        return out

    def laplacian(self, variables: Iterable[int] | None = None) -> "MvPolynomial":
        out = MvPolynomial.zero(self.nvars, self.dim)
        for k in (range(self.nvars) if variables is None else variables):
            out = out + self.diff(k).diff(k)
        return out

    def euler(self) -> "MvPolynomial":
        """x . grad f = sum_k x_k d_k f."""
        out = MvPolynomial.zero(self.nvars, self.dim)
        for k in range(self.nvars):
            out = out + MvPolynomial.variable(k, self.nvars, self.dim) * self.diff(k)
        return out

    def divide_by_variable(self, k: int) -> "MvPolynomial":
        """Exact division by x_k; raises if some term has no x_k factor."""
        out = {}
        for (exps, mask), c in self._terms.items():
            if exps[k] == 0:
                raise ArithmeticError(f"polynomial is not divisible by x_{k}")
            e = list(exps)
            e[k] -= 1
            out[(tuple(e), mask)] = c
        return MvPolynomial._raw(self.nvars, self.dim, out)

    def substitute_zero(self, k: int) -> "MvPolynomial":
        return MvPolynomial._raw(self.nvars, self.dim,
                                 {key: c for key, c in self._terms.items() if key[0][k] == 0})

    # -- evaluation and display ------------------------------------------------------

    def evaluate(self, point) -> Multivector:
        point = [float(v) for v in point]
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} values")
        out = np.zeros(1 << self.dim)
        for (exps, mask), c in self._terms.items():
            v = float(c)
            for xv, e in zip(point, exps):
                if e:
                    v *= xv ** e
            out[mask] += v
        return Multivector(self.dim, out)

    def __call__(self, *point) -> Multivector:
        if len(point) == 1 and not isinstance(point[0], numbers.Number):
            point = tuple(point[0])
        return self.evaluate(point)

    def to_string(self, names: Iterable[str] | None = None) -> str:
        names = list(names) if names is not None else [f"x{k}" for k in range(self.nvars)]
        if not self._terms:
            return "0"
        g = _grades(self.dim)
        parts = []
        for (exps, mask), c in sorted(self._terms.items(),
                                      key=lambda kv: (g[kv[0][1]], kv[0][1], [-e for e in kv[0][0]])):
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
            factors = [s for s in (mono, blade_name(mask) if mask else "") if s]
            mag = abs(c)
            body = "*".join(factors)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            parts.append(("-" if c < 0 else "+", text))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            s += f" {sign} {text}"
        return s

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"MvPolynomial({self.nvars}, {self.dim}, {self})"


def monomials(nvars: int, max_degree: int, min_degree: int = 0) -> list[tuple[int, ...]]:
    """All exponent tuples with min_degree <= total degree <= max_degree."""
    out = []
    for d in range(min_degree, max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for k in combo:
                e[k] += 1
            out.append(tuple(e))
    return out


def scalar_basis(nvars: int, dim: int, max_degree: int, min_degree: int = 0) -> list[MvPolynomial]:
    return [MvPolynomial.monomial(e, dim) for e in monomials(nvars, max_degree, min_degree)]
