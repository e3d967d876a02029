"""Finite-difference and exact differential operators."""

from .fd import (FieldFn, StencilOutOfDomainError, fd_gradient, fd_laplacian, laplacian_scale,
                 second_partials)
from .spheroidal_ops import (cartesian_field, cartesian_gradient_from_quaternion, chart_field,
                             identity_suite_grad, laplacian_equivalence, quaternion_gradient,
                             quaternion_gradient_suite, quaternion_laplacian, spheroidal_laplacian)
from .linalg import nullspace, rref, solve
from .polynomial import MvPolynomial, monomials, scalar_basis
from .symmetry import (BracketReport, SymmetryOp, apply_symmetry, bracket, bracket_suite, commutator,
                       compare_ops, cross, fit_multiple, harmonic_basis, jx_squared_check,
                       mixed_bracket_closed_form)
