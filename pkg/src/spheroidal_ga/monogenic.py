"""Paravectors, Cauchy kernels, CK extensions and the quasi-monogenic family QM[k].

A vector x of G_{n+1} corresponds to the paravector X = x e0 = x0 + sum_k x_k e_{k0};
conj(X) = e0 X e0 = e0 x. QM[k] is built at a frozen azimuth (e_p = e1,
e_p_dot = e2) in the variables (x0, x_p); the azimuthal part of the gradient
is applied exactly through d/dphi A = (K A - A K)/2 with K = e2 e1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .diffops.fd import H_FIRST, fd_gradient, partial
from .diffops.linalg import nullspace, solve
from .diffops.polynomial import MvPolynomial, monomials
from .ga_core import Multivector, basis_vector, geometric_product, inverse
from .report import Check, Report


class SingularityError(ValueError):
    pass


# -- paravector bridge -------------------------------------------------------------------------

@dataclass(frozen=True)
class Paravector:
    """X = x0 + underline, with underline = sum_k x_k e_{k0}."""

    x0: float
    underline: Multivector

    @property
    def dim(self) -> int:
        return self.underline.dim

    def value(self) -> Multivector:
        return self.underline + self.x0

    def conj(self) -> "Paravector":
        return Paravector(self.x0, -self.underline)


def _e0(dim: int, exact: bool = False) -> Multivector:
    return basis_vector(0, dim, exact)


def to_paravector(x: Multivector) -> Paravector:
    if x.grades() - {1}:
        raise ValueError("paravector bridge expects a vector")
    X = x * _e0(x.dim, x.is_exact)
    return Paravector(X.coeffs[0], X - X.coeffs[0])


def to_vector(X) -> Multivector:
    """x = X e0."""
    if isinstance(X, Paravector):
        X = X.value()
    return X * _e0(X.dim, X.is_exact)


def conj(X: Multivector) -> Multivector:
    e0 = _e0(X.dim, X.is_exact)
    return e0 * X * e0


def paravector_dot_wedge(a: Multivector, b: Multivector) -> tuple[Multivector, Multivector]:
    """a.b = (A conj(B) + B conj(A))/2 and a^b = (A conj(B) - B conj(A))/2."""
    A, B = to_paravector(a).value(), to_paravector(b).value()
    p, q = A * conj(B), B * conj(A)
    half = Fraction(1, 2) if a.is_exact and b.is_exact else 0.5
    return (p + q) * half, (p - q) * half


# -- Cauchy kernel -----------------------------------------------------------------------------

def _vec(x, dim: int | None = None) -> Multivector:
    if isinstance(x, Multivector):
        return x.to_float()
    return Multivector.vector([float(v) for v in x])


def cauchy_kernel(x, y, n: int | None = None) -> Multivector:
    """g(x) = (x - y)/|x - y|^{n+1} in G_{n+1}."""
    x, y = _vec(x), _vec(y)
    if n is None:
        n = x.dim - 1
    if x.dim != n + 1 or y.dim != n + 1:
        raise ValueError(f"points must live in G_{n + 1}")
    d = x - y
    r = d.norm()
    if r == 0.0:
        raise SingularityError("Cauchy kernel is singular at x = y")
    return d * (1.0 / r ** (n + 1))


def cauchy_kernel_paravector(x, y, n: int | None = None) -> Multivector:
    """G = ((X - Y)/|X - Y|^{n+1}) e0, evaluated through the bridge."""
    x, y = _vec(x), _vec(y)
    n = x.dim - 1 if n is None else n
    X, Y = to_paravector(x).value(), to_paravector(y).value()
    D = X - Y
    r = math.sqrt((D * conj(D)).coeffs[0])
    if r == 0.0:
        raise SingularityError("Cauchy kernel is singular at x = y")
    return D * (1.0 / r ** (n + 1)) * _e0(x.dim)


def d_X(F, x, h: float = H_FIRST, bar: bool = False) -> Multivector:
    """d_X F = d_0 F + sum_k e_{k0} d_k F (``bar`` flips the sign of the sum)."""
    x = np.asarray(x, dtype=np.float64)
    dim = len(x)
    e0 = _e0(dim)
    out = partial(F, x, 0, h)
    out = out if isinstance(out, Multivector) else Multivector.scalar(float(out), dim)
    for k in range(1, dim):
        term = basis_vector(k, dim) * e0 * partial(F, x, k, h)
        out = out - term if bar else out + term
    return out


def monogenic_residual(f, x, h: float = H_FIRST) -> tuple[float, float, float]:
    """(|grad f|, |div f|, |curl f|) by central differences."""
    g = fd_gradient(f, x, h)
    return g.max_abs(), abs(g.coeffs[0]), g.grade(2).max_abs()


# -- CK extension ---------------------------------------------------------------------------------

def _ck_base(i: int, n: int) -> MvPolynomial:
    """x_i + x0 e_{i0} as a polynomial in (x0, ..., x_n) over G_{n+1}."""
    dim = n + 1
    e_i0 = MvPolynomial.from_multivector(
        basis_vector(i, dim, True) * basis_vector(0, dim, True), dim)
    return MvPolynomial.variable(i, dim, dim) + MvPolynomial.variable(0, dim, dim) * e_i0


def ck_extension(exponents, n: int | None = None) -> MvPolynomial:
    """f(x) = sum_i (x_i + x0 e_{i0})^{k_i}, i = 1..n; each summand is monogenic."""
    exponents = list(exponents)
    n = len(exponents) if n is None else n
    if n < 2 or len(exponents) != n:
        raise ValueError("need n >= 2 and one exponent per spatial variable")
    out = MvPolynomial.zero(n + 1, n + 1)
    for i, k in enumerate(exponents, start=1):
        if k < 0:
            raise ValueError("exponents must be non-negative")
        out = out + _ck_base(i, n) ** k
    return out


def ck_worked_example() -> tuple[MvPolynomial, MvPolynomial]:
    """(-sum_i (x_i + x0 e_{i0})^2 for n = 2, and 2x0^2 - x_p^2 - 2 x0 x_p e0 built directly)."""
    dim = 3
    x0, x1, x2 = (MvPolynomial.variable(k, dim, dim) for k in range(3))
    e0 = MvPolynomial.from_multivector(basis_vector(0, dim, True), dim)
    xp = x1 * MvPolynomial.from_multivector(basis_vector(1, dim, True), dim) \
        + x2 * MvPolynomial.from_multivector(basis_vector(2, dim, True), dim)
    direct = x0 * x0 * 2 - x1 * x1 - x2 * x2 - x0 * xp * e0 * 2
    return -ck_extension((2, 2)), direct


# -- quasi-monogenic family -----------------------------------------------------------------------

DIM = 3
_K = MvPolynomial.from_multivector(basis_vector(2, DIM, True) * basis_vector(1, DIM, True), 2)
_E = [MvPolynomial.from_multivector(basis_vector(k, DIM, True), 2) for k in range(DIM)]
X0 = MvPolynomial.variable(0, 2, DIM)
XP = MvPolynomial.variable(1, 2, DIM)


def qm_base(literal: bool = False) -> MvPolynomial:
    """x0 - x_p e_{p0} = e0 x (default), or the literal x0 e0 - x_p e_{p0}."""
    e_p0 = _E[1] * _E[0]
    return (X0 * _E[0] if literal else X0) - XP * e_p0


def qm(k: int, literal: bool = False) -> MvPolynomial:
    """QM[k] = (x0 - x_p e_{p0})^k e0 at the frozen azimuth e_p = e1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return qm_base(literal) ** k * _E[0]


def d_phi(A: MvPolynomial) -> MvPolynomial:
    """Azimuthal derivative of a field written in the frame (e0, e_p, e_p_dot)."""
    return (_K * A - A * _K) * Fraction(1, 2)


def cylindrical_gradient(A: MvPolynomial) -> MvPolynomial:
    """grad A = e0 d_0 A + e_p d_p A + (e_p_dot / x_p) d_phi A, exactly."""
    out = _E[0] * A.diff(0) + _E[1] * A.diff(1)
    ang = d_phi(A)
    if not ang.is_zero():
        out = out + _E[2] * ang.divide_by_variable(1)
    return out


def qm_gradient(k: int, literal: bool = False) -> MvPolynomial:
    """Scalar part of grad QM[k], i.e. the divergence, as a polynomial in (x0, x_p)."""
    return cylindrical_gradient(qm(k, literal)).grade(0)


def qm_curl(k: int, literal: bool = False) -> MvPolynomial:
    return cylindrical_gradient(qm(k, literal)).grade(2)


def qm11_coefficients() -> list[int]:
    """Coefficients of x0^{10-2j} x_p^{2j}, j = 0..5, in div QM[11]."""
    g = qm_gradient(11)
    t = g.terms
    return [int(t.get(((10 - 2 * j, 2 * j), 0), 0)) for j in range(6)]


PRINTED_CORRECTIONS = {
    1: X0 * _E[0],
    2: X0 ** 2 * _E[0],
    3: X0 ** 3 * _E[0] - XP ** 3 * _E[1] * Fraction(1, 4),
}


@dataclass
class CorrectionResult:
    k: int
    max_degree: int
    found: bool
    correction: MvPolynomial | None
    homogeneous_dimension: int
    unknowns: int

    def to_json(self) -> dict:
        return {"k": self.k, "max_degree": self.max_degree, "correction_found": self.found,
                "correction": self.correction.to_string(["x0", "xp"]) if self.correction else None,
                "homogeneous_dimension": self.homogeneous_dimension, "unknowns": self.unknowns}


def _correction_basis(max_degree: int) -> list[MvPolynomial]:
    """alpha(x0, x_p) e0 + beta(x0, x_p) e_p with alpha even and beta odd in x_p,
    the axially symmetric vector fields that are polynomial in Cartesian x."""
    basis = []
    for a, b in monomials(2, max_degree):
        mono = MvPolynomial.monomial((a, b), DIM)
        if b % 2 == 0:
            basis.append(mono * _E[0])
        else:
            basis.append(mono * _E[1])
    return basis


def is_monogenic_completion(k: int, correction: MvPolynomial) -> bool:
    return cylindrical_gradient(qm(k) + correction).is_zero()


def qm_correction_search(k: int, max_degree: int | None = None) -> CorrectionResult:
    """Solve grad(QM[k] + c) = 0 exactly for c in the span of the correction basis."""
    max_degree = k if max_degree is None else max_degree
    if max_degree < k:
        raise ValueError("max_degree must be >= k")
    basis = _correction_basis(max_degree)
    images = [cylindrical_gradient(c) for c in basis]
    target = -cylindrical_gradient(qm(k))
    keys = sorted({key for im in images for key in im.terms} | set(target.terms))
    index = {key: i for i, key in enumerate(keys)}
    rows = [[Fraction(0)] * len(basis) for _ in keys]
    for j, im in enumerate(images):
        for key, c in im.terms.items():
            rows[index[key]][j] = c
    rhs = [target.terms.get(key, Fraction(0)) for key in keys]
    sol = solve(rows, rhs, len(basis))
    homog = len(nullspace(rows, len(basis)))
    if sol is None:
        return CorrectionResult(k, max_degree, False, None, homog, len(basis))
    corr = MvPolynomial.zero(2, DIM)
    for c, b in zip(sol, basis):
        if c:
            corr = corr + b * c
    return CorrectionResult(k, max_degree, True, corr, homog, len(basis))


def qm_residual_value(k: int, x0: float, xp: float) -> float:
    return float(qm_gradient(k).evaluate((x0, xp)).coeffs[0])


# -- hypercomplex geometric-series kernel ----------------------------------------------------

def paravector_power(P: Multivector, s: float) -> Multivector:
    """P^s for P = a + B (B a bivector with B^2 = -|B|^2), principal branch.

    Writes P = r (cos t + u sin t) with u = B/|B| and returns r^s (cos st + u sin st).
    """
    a = float(P.coeffs[0])
    B = P - a
    if B.grades() - {2}:
        raise ValueError("paravector_power needs scalar + bivector input")
    b = B.norm()
    r = math.hypot(a, b)
    if r == 0.0:
        raise SingularityError("zero paravector has no fractional power")
    t = math.atan2(b, a)
    if b == 0.0:
        if a < 0:
            raise SingularityError("negative scalar lies on the branch cut")
        return Multivector.scalar(r ** s, P.dim)
    u = B * (1.0 / b)
    return (u * math.sin(s * t) + math.cos(s * t)) * (r ** s)


def hypergeom_kernel(x, n: int | None = None) -> Multivector:
    """e0 (1 - conj X)^{-(n-1)/2} (1 - X)^{-(n+1)/2} with X = x e0."""
    x = _vec(x)
    n = x.dim - 1 if n is None else n
    if x.norm() >= 1.0:
        raise ValueError("hypergeom_kernel needs |x| < 1")
    X = to_paravector(x).value()
    one = Multivector.scalar(1.0, x.dim)
    return _e0(x.dim) * paravector_power(one - conj(X), -(n - 1) / 2) \
        * paravector_power(one - X, -(n + 1) / 2)


def hypergeom_direct(x, n: int | None = None) -> Multivector:
    """(e0 - x)/|e0 - x|^{n+1}."""
    x = _vec(x)
    n = x.dim - 1 if n is None else n
    return cauchy_kernel(_e0(x.dim), x, n)


# -- suite -----------------------------------------------------------------------------------------

def _random_vector(rng, dim, scale=1.0):
    return Multivector.vector(list(rng.uniform(-scale, scale, dim)))


def _exact_vector(rng, dim):
    return Multivector.vector([Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7)))
                               for _ in range(dim)])


def monogenic_suite(samples: int = 100, seed: int = 0, tol: float = 1e-6,
                    fd_step: float = H_FIRST, qm_max_k: int = 15,
                    ck_max_exponent: int = 4) -> Report:
    rng = np.random.default_rng(seed)
    report = Report("monogenic", info={"samples": samples, "seed": seed})

    # bridge identities, exact on rational samples
    bad = 0
    for _ in range(samples):
        for dim in (3, 4):
            a, b = _exact_vector(rng, dim), _exact_vector(rng, dim)
            A = to_paravector(a).value()
            e0 = _e0(dim, True)
            dot, wedge = paravector_dot_wedge(a, b)
            ok = (to_vector(A) == a and conj(A) == e0 * a and A * conj(A) == a * a
                  and dot == (a * b + b * a) * Fraction(1, 2)
                  and wedge == (a * b - b * a) * Fraction(1, 2))
            bad += not ok
    report.add(Check("paravector bridge: X = x e0, conj X = e0 x, X conj X = x^2, dot/wedge",
                     float(bad), 0.0, passed=bad == 0, note="exact rational samples"))

    errs = {}
    for n in (2, 3):
        dim = n + 1
        for _ in range(samples):
            y = _random_vector(rng, dim)
            x = _random_vector(rng, dim, 2.0)
            while (x - y).norm() < 0.3:
                x = _random_vector(rng, dim, 2.0)
            xa = x.vector_components().astype(np.float64)
            g = cauchy_kernel(x, y, n)
            r = (x - y).norm()
            full, div, curl = monogenic_residual(lambda v: cauchy_kernel(v, y, n), xa, fd_step)
            scale = g.max_abs() / r
            errs.setdefault(f"Cauchy kernel monogenic, div part (n={n})", []).append(div / scale)
            errs.setdefault(f"Cauchy kernel monogenic, curl part (n={n})", []).append(curl / scale)
            errs.setdefault(f"Cauchy kernel paravector form = vector form (n={n})", []).append(
                (cauchy_kernel_paravector(x, y, n) - g).max_abs() / g.max_abs())
            errs.setdefault(f"Cauchy kernel antisymmetry (n={n})", []).append(
                (cauchy_kernel(x, y, n) + cauchy_kernel(y, x, n)).max_abs())
            F = lambda v: cauchy_kernel(v, y, n)
            e0F = lambda v: _e0(dim) * cauchy_kernel(v, y, n)
            grad = fd_gradient(F, xa, fd_step)
            errs.setdefault(f"grad = d_X e0 = e0 d_Xbar (n={n})", []).append(
                max((d_X(e0F, xa, fd_step) - grad).max_abs(),
                    (_e0(dim) * d_X(F, xa, fd_step, bar=True) - grad).max_abs()) / scale)
    for name, e in errs.items():
        report.record(name, e, tol)

    bad = []
    for n in (2, 3):
        for ks in itertools.product(range(1, ck_max_exponent + 1), repeat=n):
            if not ck_extension(ks).gradient().is_zero():
                bad.append(ks)
    report.add(Check(f"CK extensions exactly monogenic, exponents up to {ck_max_exponent}",
                     float(len(bad)), 0.0, worst_sample=bad[:3] or None, passed=not bad))
    ex, direct = ck_worked_example()
    report.add(Check("CK worked example: -sum (x_i + x0 e_i0)^2 = 2x0^2 - x_p^2 - 2x0 x_p e0",
                     0.0 if ex == direct else 1.0, 0.0, passed=ex == direct))

    curl_bad = [k for k in range(1, qm_max_k + 1) if not qm_curl(k).is_zero()]
    report.add(Check(f"QM[k] exactly curl-free, k <= {qm_max_k}", float(len(curl_bad)), 0.0,
                     worst_sample=curl_bad or None, passed=not curl_bad))
    lit_bad = [k for k in range(2, 6) if not qm_curl(k, literal=True).is_zero()]
    report.add(Check("[printed] literal base x0 e0 - x_p e_p0 gives curl-free QM[k]",
                     float(len(lit_bad)), 0.0, asserted=False, worst_sample=lit_bad or None,
                     note="the literal base mixes grades; e0 x = x0 - x_p e_p0 is used",
                     passed=not lit_bad))
    for k, c in PRINTED_CORRECTIONS.items():
        res = qm_correction_search(k)
        ok = res.found and is_monogenic_completion(k, c) and is_monogenic_completion(k, res.correction)
        report.add(Check(f"QM[{k}] + {c.to_string(['x0', 'xp'])} monogenic; solver finds a correction",
                         0.0 if ok else 1.0, 0.0, worst_sample=res.to_json(), passed=ok))
    coeffs = qm11_coefficients()
    expected = [-11, 165, -462, 330, -55, 1]
    report.add(Check("div QM[11] coefficients (-11, 165, -462, 330, -55, 1)",
                     float(max(abs(a - b) for a, b in zip(coeffs, expected))), 0.0,
                     worst_sample=coeffs, passed=coeffs == expected))
    near, far = abs(qm_residual_value(11, 0.1, 0.1)), abs(qm_residual_value(11, 0.9, 0.1))
    report.add(Check("div QM[11] small near the origin: |R(0.1,0.1)| < 1e-3 |R(0.9,0.1)|",
                     near / far, 1e-3, worst_sample=(near, far)))

    herr = []
    for n in (2, 3):
        for _ in range(samples):
            x = _random_vector(rng, n + 1)
            x = x * (rng.uniform(0, 0.5) / x.norm())
            d = hypergeom_direct(x, n)
            herr.append((hypergeom_kernel(x, n) - d).max_abs() / d.max_abs())
    report.record("hypergeometric kernel = (e0 - x)/|e0 - x|^{n+1}, |x| <= 0.5", herr, 1e-9)
    return report
