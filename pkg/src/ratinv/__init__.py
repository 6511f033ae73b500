"""Rational invariants of rational group actions via Groebner bases."""
from .action import GroupAction, GroupSpec, infinitesimal_matrix, random_group_points, validate_action
from .errors import (ActionError, BudgetExhausted, ContextError, ExcludedLocusError,
                     InternalConsistencyError, MathematicalRejection, NotACrossSection,
                     NotExpressible, NotZeroDimensional, ParseError, RatinvError, UsageError)
from .graph import (GraphIdeal, InvariantSet, RewriteResult, generating_invariants, graph_ideal,
                    orbit_ideal_at, rewrite_invariant, rewrite_with_graph, verify_invariant)
from .groebner import (GroebnerBasis, Ideal, buchberger_reduced, eliminate, is_zero_dimensional,
                       lift_to_param_field, minimal_polynomial, normal_form, s_polynomial_audit,
                       saturate_by, specialize, standard_monomials)
from .invariantization import (divides_on_section, invariantize, invariantize_rational,
                               moving_frame_ideal, replacement_description)
from .orders import TermOrder
from .parser import load_problem, parse_poly, parse_problem, parse_ratfunc
from .poly import QQ, MPoly, PolyRing
from .ratfunc import FractionField, RatFunc, poly_gcd, substitute
from .section import (build_section, random_linear_section, rewrite_via_section, section_invariants,
                      transversality_test)

__version__ = "0.1.0"
