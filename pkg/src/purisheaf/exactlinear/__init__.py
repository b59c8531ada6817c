"""Exact scalar, polynomial and matrix arithmetic over Q and GF(p)."""

from .field import GF, QQ, Field, Mod, parse_field
from .linalg import Echelon, kernel_of_columns, matrix_nullspace, matrix_rank, matrix_solve, rank_of
from .matrix import (RingMatrix, SolutionSet, det, invariant_factors, nullspace, ring_divide,
                     smith_normal_form, smith_normal_form_full, solve_linear)
from .poly import (LAURENT, POLY_U, POLY_V, RINGS, BUDGET, DegreeBudgetExceeded, Poly,
                   UnsupportedRing, degree_budget, gcd, inverse_mod, reciprocal, reduce_laurent, xgcd)
from .factor import factor, is_irreducible
