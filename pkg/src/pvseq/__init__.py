"""Exact linear difference equations, sequence-ring computations and
orbit checks for the map (b, B) -> (b + 1, A(b) B)."""

from .algebra import PoleError, Poly, RatFunc, ZeroPolynomial, poly_integer_roots, ratfunc_eval, ratfunc_shift
from .apset import (APSet, ap_canonicalize, ap_complement, ap_equal_mod_finite, ap_intersect,
                    ap_member, ap_union)
from .orbit import (OrbitState, RegularFunction, Subvariety, UndefinedError, UndefinedOrbit,
                    evaluate_along_orbit, evaluate_regular, orbit_defined_prefix, orbit_trace,
                    orbit_membership_set, orbit_step, parse_regular, rebase, rebase_problem,
                    sigma_action)
from .parsing import ParseError, parse_ratfunc
from .recurrence import (Equation, InsufficientData, InvalidEquation, LinSystem, SingularSystem,
                         companion_matrix, guess_recurrence, is_bell_case_equation,
                         is_bell_case_system)
from .sequences import (ExactSeq, FundMatrix, NotASolution, NotConstant, constant_transition,
                        fundamental_matrix, indicator_sequence, seq_arith, seq_shift,
                        solution_coordinates, solve_equation, start_index)
from .zeros import (Decomposition, WindowTooSmall, decompose_zero_set, pv_period_lower_bound,
                    verify_period_bound, zero_set)

__version__ = "0.1.0"
