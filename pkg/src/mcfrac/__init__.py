"""Multidimensional continued fractions over GF(p)((z^-1))."""

from .approx import (BestProfile, RationalApprox, approximant, best_profile_bruteforce,
                     reduce_to_S, verify_best)
from .cf import (CFQuantities, ConditionReport, ConvergentTable, MPreCF, PhiValue,
                 check_conditions, convergents, evaluate_phi, quantities)
from .errors import (DomainError, InsufficientPrecision, InternalError, InvalidCF,
                     InvalidEpsilon, MCFError)
from .poly import NEG_INF, Poly, check_prime
from .series import INF, TruncSeries, series_floor_frac
from .synthesis import (MultiSeqPrefix, complexity_profile, is_characteristic,
                        minimal_poly_bruteforce)
from .textio import ParseError, format_cf, parse_cf, parse_document, parse_poly
from .transform import (STRICT, ZERO, BaseMatrixState, EpsilonStrategy, Expansion,
                        TransformState, delta_poly_split, expand, lockstep,
                        matrix_transform_step, psi, transform_step)
from .valuation import IV_INF, IndexedVal, IvBound, indexed_valuation, iv_less, support, supp_plus

__all__ = [name for name in dir() if not name.startswith('_')]
