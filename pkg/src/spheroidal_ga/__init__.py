"""Geometric-algebra numerics for spheroidal coordinates, harmonics and monogenic functions."""

from .ga_core import (
    DimensionMismatchError,
    Multivector,
    SingularElementError,
    basis_vector,
    dot_wedge,
    geometric_product,
    grade_project,
    inverse,
    outer_product,
    pseudoscalar,
    reverse,
    scalar_part,
)

__version__ = "0.1.0"
from .report import Check, Report
from .spheroidal import (
    DegenerateCoordinatesError,
    DegenerateFrameError,
    SpheroidalPoint,
    cartesian,
    frames,
    invert,
    position,
)
from .projection import PlanePoint, project, stereographic, unproject
from .harmonics import HarmonicMode, eval_mode, legendre_P, legendre_Q, separated_solution
from .monogenic import cauchy_kernel, ck_extension, hypergeom_kernel, qm, qm_correction_search
from .suites import SUITES, SuiteConfig, run_suite
