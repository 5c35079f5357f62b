"""Weighted Rees algebras over finite fields of positive characteristic.

Exact computations for hypersurface singularities: Hasse derivatives,
differential closure, singular loci, tau, elimination algebras, blow-up
charts and strong monomial exponents.
"""

from .blowup import Center, Chart, Divisor, ResolutionState, blowup_algebra, check_elim_commutes, lift_center, replay
from .cone import initial_ideal, tau, vertex_space
from .elimination import clean_pe_powers, elimination_algebra, is_transversal, monic_form, specialize_invariant
from .errors import ReesError
from .field import GF, FieldCtx
from .monomial import MonomialAlgebra, resolve_monomial, strong_exponent, strong_monomial_algebra
from .parse import parse_poly
from .poly import Poly, RingCtx, hasse_derivative
from .rees import ReesAlgebra, WeightedGenerator, diff_closure, sing_points
from .scenario import Scenario, run_scenario

__version__ = "0.1.0"
