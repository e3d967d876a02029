"""Euclidean symmetry operators P_a = a.grad and J_b = b^x^grad on exact polynomials.

J_b is trivector valued: b^x^grad = i (b x x).grad with i = e012, and the
vector operator J_x = i x^grad = -x cross grad.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..ga_core import Multivector, basis_vector, pseudoscalar
from ..report import Check, Report
from .linalg import nullspace
from .polynomial import MvPolynomial, monomials, scalar_basis

DIM = 3


def _vec(a: Sequence) -> tuple[Fraction, ...]:
    if len(a) != DIM:
        raise ValueError(f"expected a 3-vector, got {a}")
    return tuple(Fraction(v) for v in a)


def cross(a: Sequence, b: Sequence) -> tuple[Fraction, ...]:
    a, b = _vec(a), _vec(b)
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _const(mv: Multivector) -> MvPolynomial:
    return MvPolynomial.from_multivector(mv, DIM)


def _vector_const(a) -> MvPolynomial:
    return _const(Multivector.vector(list(_vec(a))))


def _wedge_vv(u: MvPolynomial, v: MvPolynomial) -> MvPolynomial:
    return (u * v - v * u) * Fraction(1, 2)


def _wedge_bv(B: MvPolynomial, v: MvPolynomial) -> MvPolynomial:
    # for a bivector B and a vector v, B^v is the symmetric part of the product
    return (B * v + v * B) * Fraction(1, 2)


I3 = pseudoscalar(DIM, exact=True)
X = MvPolynomial.position(DIM)
_E = [_const(basis_vector(k, DIM, exact=True)) for k in range(DIM)]


@dataclass(frozen=True)
class SymmetryOp:
    """Operator tree: P_a, J_b, J_x leaves combined by sums, compositions and
    left multiplication by constant multivectors."""

    kind: str
    vector: tuple[Fraction, ...] | None = None
    children: tuple["SymmetryOp", ...] = ()
    factor: Multivector | None = field(default=None, compare=False)

    @classmethod
    def P(cls, a) -> "SymmetryOp":
        return cls("P", _vec(a))

    @classmethod
    def J(cls, b) -> "SymmetryOp":
        return cls("J", _vec(b))

    @classmethod
    def Jx(cls) -> "SymmetryOp":
        return cls("Jx")

    @classmethod
    def identity(cls) -> "SymmetryOp":
        return cls("id")

    @classmethod
    def S(cls, a, b) -> "SymmetryOp":
        """S_{a,b} = P_a + J_b."""
        return cls.P(a) + cls.J(b)

    def __add__(self, other: "SymmetryOp") -> "SymmetryOp":
        return SymmetryOp("sum", children=(self, other))

    def __neg__(self) -> "SymmetryOp":
        return SymmetryOp("scale", children=(self,), factor=Multivector.scalar(-1, DIM))

    def __sub__(self, other: "SymmetryOp") -> "SymmetryOp":
        return self + (-other)

    def __matmul__(self, other: "SymmetryOp") -> "SymmetryOp":
        """Composition: (A @ B) f = A(B f)."""
        return SymmetryOp("compose", children=(self, other))

    def __rmul__(self, c) -> "SymmetryOp":
        if not isinstance(c, Multivector):
            c = Multivector.scalar(Fraction(c), DIM)
        return SymmetryOp("scale", children=(self,), factor=c)

    def __call__(self, f: MvPolynomial) -> MvPolynomial:
        return apply_symmetry(self, f)

    def label(self) -> str:
        if self.kind in ("P", "J"):
            return f"{self.kind}_({','.join(str(v) for v in self.vector)})"
        if self.kind == "Jx":
            return "J_x"
        if self.kind == "id":
            return "1"
        if self.kind == "sum":
            return f"({self.children[0].label()} + {self.children[1].label()})"
        if self.kind == "compose":
            return f"{self.children[0].label()} {self.children[1].label()}"
        return f"[{self.factor}] {self.children[0].label()}"


def commutator(a: SymmetryOp, b: SymmetryOp) -> SymmetryOp:
    return a @ b - b @ a


def _check(f: MvPolynomial) -> None:
    if f.nvars != DIM or f.dim != DIM:
        raise ValueError(f"symmetry operators act on 3-variable G_3 polynomials, got "
                         f"({f.nvars} vars, G_{f.dim})")


def j_coefficients(b) -> tuple[MvPolynomial, ...]:
    """T_l = b ^ x ^ e_l, so that J_b f = sum_l T_l d_l f."""
    return _j_coefficients(_vec(b))


@lru_cache(maxsize=512)
def _j_coefficients(b: tuple[Fraction, ...]) -> tuple[MvPolynomial, ...]:
    bx = _wedge_vv(_vector_const(b), X)
    return tuple(_wedge_bv(bx, _E[l]) for l in range(DIM))


@lru_cache(maxsize=1)
def jx_coefficients() -> tuple[MvPolynomial, ...]:
    """i (x ^ e_l), so that J_x f = sum_l i (x ^ e_l) d_l f."""
    i = _const(I3)
    return tuple(i * _wedge_vv(X, _E[l]) for l in range(DIM))


def apply_symmetry(op: SymmetryOp, f: MvPolynomial) -> MvPolynomial:
    _check(f)
    if op.kind == "P":
        out = MvPolynomial.zero(DIM, DIM)
        for k, a in enumerate(op.vector):
            if a:
                out = out + f.diff(k) * a
        return out
    if op.kind in ("J", "Jx"):
        coeffs = j_coefficients(op.vector) if op.kind == "J" else jx_coefficients()
        out = MvPolynomial.zero(DIM, DIM)
        for l, T in enumerate(coeffs):
            out = out + T * f.diff(l)
        return out
    if op.kind == "id":
        return f
    if op.kind == "sum":
        return apply_symmetry(op.children[0], f) + apply_symmetry(op.children[1], f)
    if op.kind == "compose":
        return apply_symmetry(op.children[0], apply_symmetry(op.children[1], f))
    if op.kind == "scale":
        return _const(op.factor) * apply_symmetry(op.children[0], f)
    raise ValueError(f"unknown operator kind {op.kind!r}")


# -- exact comparisons on monomial bases ------------------------------------------------

def _max_coeff(p: MvPolynomial) -> float:
    return float(max((abs(c) for c in p.terms.values()), default=0))


@dataclass
class BracketReport:
    name: str
    lhs: str
    rhs: str
    max_abs_error: float
    mismatches: int
    basis_size: int

    @property
    def exact(self) -> bool:
        return self.mismatches == 0


def compare_ops(lhs: SymmetryOp, rhs: SymmetryOp | None, degree: int,
                name: str = "", basis: list[MvPolynomial] | None = None) -> BracketReport:
    """Apply both operators to every monomial of degree <= ``degree``; rhs None means 0."""
    basis = basis if basis is not None else scalar_basis(DIM, DIM, degree)
    worst, bad = 0.0, 0
    for f in basis:
        d = apply_symmetry(lhs, f)
        if rhs is not None:
            d = d - apply_symmetry(rhs, f)
        if not d.is_zero():
            bad += 1
            worst = max(worst, _max_coeff(d))
    return BracketReport(name, lhs.label(), rhs.label() if rhs is not None else "0",
                         worst, bad, len(basis))


def bracket(op_a: SymmetryOp, op_b: SymmetryOp, degree: int = 4) -> dict[int, MvPolynomial]:
    """[A,B] f = A(B f) - B(A f) on each monomial f, keyed by basis position."""
    if degree < 2:
        raise ValueError("degree must be >= 2")
    c = commutator(op_a, op_b)
    return {k: apply_symmetry(c, f) for k, f in enumerate(scalar_basis(DIM, DIM, degree))}


def fit_multiple(lhs: SymmetryOp, rhs: SymmetryOp, degree: int) -> Fraction | None:
    """The rational lambda with lhs = lambda * rhs on the basis, or None if there is none."""
    lam = None
    for f in scalar_basis(DIM, DIM, degree):
        l, r = apply_symmetry(lhs, f), apply_symmetry(rhs, f)
        if r.is_zero():
            if not l.is_zero():
                return None
            continue
        if lam is None:
            key, rv = next(iter(r.terms.items()))
            lam = l.terms.get(key, Fraction(0)) / rv
        if l != r * lam:
            return None
    return lam if lam is not None else Fraction(0)


def mixed_bracket_closed_form(a, b) -> tuple[Fraction, ...]:
    """w with [J_a, P_b] = i w.grad, read off from the action on x0, x1, x2."""
    c = commutator(SymmetryOp.J(a), SymmetryOp.P(b))
    w = []
    for k in range(DIM):
        out = apply_symmetry(c, MvPolynomial.variable(k, DIM, DIM))
        w.append(out.terms.get(((0, 0, 0), 7), Fraction(0)))
        rest = out - MvPolynomial(DIM, DIM, {((0, 0, 0), 7): w[-1]})
        if not rest.is_zero():
            raise ArithmeticError("mixed bracket is not a constant-coefficient operator")
    return tuple(w)


def random_rational_vector(rng: np.random.Generator, bound: int = 5) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))
                 for _ in range(DIM))


def harmonic_basis(degree: int) -> list[MvPolynomial]:
    """Basis of homogeneous harmonic polynomials of the given degree (2*degree + 1 of them)."""
    cols = monomials(DIM, degree, degree)
    rows_idx = {e: i for i, e in enumerate(monomials(DIM, degree - 2, degree - 2))} if degree >= 2 else {}
    matrix = [[Fraction(0)] * len(cols) for _ in rows_idx]
    for j, e in enumerate(cols):
        lap = MvPolynomial.monomial(e, DIM).laplacian()
        for (exps, _), c in lap.terms.items():
            matrix[rows_idx[exps]][j] += c
    if not matrix:
        return [MvPolynomial.monomial(e, DIM) for e in cols]
    out = []
    for v in nullspace(matrix, len(cols)):
        out.append(MvPolynomial(DIM, DIM, {(e, 0): c for e, c in zip(cols, v)}))
    return out


def _exact_check(name: str, rep: BracketReport, asserted: bool = True, note: str | None = None,
                 sample=None) -> Check:
    return Check(name, rep.max_abs_error, 0.0, asserted, sample, note, passed=rep.exact)


def bracket_suite(pairs: int = 20, degree: int = 4, seed: int = 0) -> Report:
    """Exact bracket relations over random rational (a, b) pairs.

    Asserted: [P_a,P_b] = 0, [J_a,J_b] = -i J_{a x b}, [J_a,P_b] = -i P_{a x b},
    Jacobi, harmonicity preservation by S_{a,b} and centrality of i. The
    +i J_{a x b} form is reported alongside without being asserted.
    """
    rng = np.random.default_rng(seed)
    basis = scalar_basis(DIM, DIM, degree)
    i = I3
    acc: dict[str, list] = {}
    lam_jj, lam_jp, closed = set(), set(), []

    def put(name, rep, sample):
        acc.setdefault(name, []).append((rep, sample))

    harmonic = [f for d in range(degree + 1) for f in harmonic_basis(d)]
    for _ in range(pairs):
        a, b = random_rational_vector(rng), random_rational_vector(rng)
        c = random_rational_vector(rng)
        axb = cross(a, b)
        sample = (tuple(map(str, a)), tuple(map(str, b)))
        Pa, Pb, Ja, Jb = SymmetryOp.P(a), SymmetryOp.P(b), SymmetryOp.J(a), SymmetryOp.J(b)
        put("[P_a,P_b] = 0", compare_ops(commutator(Pa, Pb), None, degree, basis=basis), sample)
        jj = commutator(Ja, Jb)
        put("[J_a,J_b] = -i J_{a x b}", compare_ops(jj, -(i * SymmetryOp.J(axb)), degree, basis=basis),
            sample)
        put("[J_a,J_b] = i J_{a x b}", compare_ops(jj, i * SymmetryOp.J(axb), degree, basis=basis),
            sample)
        jp = commutator(Ja, Pb)
        put("[J_a,P_b] = -i P_{a x b}", compare_ops(jp, -(i * SymmetryOp.P(axb)), degree, basis=basis),
            sample)
        lam_jj.add(fit_multiple(jj, i * SymmetryOp.J(axb), degree))
        lam_jp.add(fit_multiple(jp, i * SymmetryOp.P(axb), degree))
        closed.append((mixed_bracket_closed_form(a, b), axb))

        A, B, C = SymmetryOp.S(a, b), SymmetryOp.J(c), SymmetryOp.P(c)
        jac = commutator(A, commutator(B, C)) + commutator(B, commutator(C, A)) \
            + commutator(C, commutator(A, B))
        put("Jacobi identity on {S_{a,b}, J_c, P_c}", compare_ops(jac, None, degree, basis=basis), sample)

        S = SymmetryOp.S(a, b)
        bad, worst = 0, 0.0
        for f in harmonic:
            lap = apply_symmetry(S, f).laplacian()
            if not lap.is_zero():
                bad += 1
                worst = max(worst, _max_coeff(lap))
        put("S_{a,b} preserves harmonicity", BracketReport("", "", "", worst, bad, len(harmonic)), sample)
        put("i commutes with S_{a,b}",
            compare_ops(i * S, S @ (i * SymmetryOp.identity()), degree, basis=basis), sample)

    report = Report("brackets", info={"pairs": pairs, "degree": degree, "seed": seed})
    notes = {
        "[J_a,J_b] = i J_{a x b}": "printed sign; with J_b = b^x^grad the exact bracket carries -i",
    }
    for name, entries in acc.items():
        bad = [(r, s) for r, s in entries if not r.exact]
        worst = max(entries, key=lambda rs: rs[0].max_abs_error)
        asserted = name not in notes
        report.add(Check(name, worst[0].max_abs_error, 0.0, asserted,
                         (bad[0][1] if bad else worst[1]), notes.get(name), passed=not bad))
    agree = all(w == tuple(-v for v in axb) for w, axb in closed)
    report.add(Check("[J_a,P_b] = i w.grad with w = -(a x b) (closed form)", 0.0 if agree else 1.0,
                     0.0, True, None, "mixed bracket read off from its action on x0, x1, x2",
                     passed=agree))
    report.info["lambda_JJ"] = sorted(str(v) for v in lam_jj)
    report.info["lambda_JP"] = sorted(str(v) for v in lam_jp)
    report.info["mixed_bracket"] = "[J_a,P_b] = -i P_{a x b}"
    return report


def jx_squared_check(degree: int = 4) -> Report:
    """Exact J_x^2 f on all monomials f of degree <= ``degree`` against candidate right-hand sides."""
    if degree < 2:
        raise ValueError("degree must be >= 2")
    Jx = SymmetryOp.Jx()
    x2 = sum((MvPolynomial.variable(k, DIM, DIM) ** 2 for k in range(DIM)),
             MvPolynomial.zero(DIM, DIM))
    i = MvPolynomial.from_multivector(I3, DIM)
    results: dict[str, list[MvPolynomial]] = {}
    for f in scalar_basis(DIM, DIM, degree):
        lhs = apply_symmetry(Jx, apply_symmetry(Jx, f))
        ef = f.euler()
        cand = x2 * f.laplacian() - ef - ef.euler()
        printed = x2 * f - ef - ef.euler()
        jxf = apply_symmetry(Jx, f)
        results.setdefault("scalar part of J_x^2 f = (x^2 lap - x.grad - (x.grad)^2) f", []).append(
            lhs.grade(0) - cand)
        results.setdefault("J_x^2 = x^2 lap - x.grad - (x.grad)^2 + i J_x", []).append(
            lhs - cand - i * jxf)
        results.setdefault("J_x^2 = x^2 lap - x.grad - (x.grad)^2 (full multivector)", []).append(
            lhs - cand)
        results.setdefault("[printed] J_x^2 = x^2 - x.grad - (x.grad)^2", []).append(lhs - printed)
    for n in range(degree + 1):
        for f in harmonic_basis(n):
            lhs = apply_symmetry(Jx, apply_symmetry(Jx, f)).grade(0)
            results.setdefault("harmonic f of degree n: <J_x^2 f>_0 = -n(n+1) f", []).append(
                lhs + f * (n * (n + 1)))
    notes = {
        "J_x^2 = x^2 lap - x.grad - (x.grad)^2 (full multivector)":
            "J_x^2 also has the bivector part i J_x f; reported, not asserted",
        "[printed] J_x^2 = x^2 - x.grad - (x.grad)^2": "printed form lacks the Laplacian on x^2",
    }
    report = Report("jx2", info={"degree": degree})
    for name, diffs in results.items():
        bad = sum(not d.is_zero() for d in diffs)
        worst = max(_max_coeff(d) for d in diffs)
        report.add(Check(name, worst, 0.0, name not in notes, f"{bad}/{len(diffs)} mismatches",
                         notes.get(name), passed=bad == 0))
    return report
