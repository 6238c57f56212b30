"""Roots of an irreducible integer polynomial modulo primes, normalized
to (0, 1), and constructive approximation of targets by such roots."""

from .bfset import Fraction, bf_contains, select_fraction, solve_t
from .density import DensityReport, cover_report_constructive, cover_report_enumerative, star_discrepancy
from .intpoly import IntPoly, conjugate_g, evaluate, fixed_divisor, irreducibility_witness, parse_poly
from .modarith import (
    brauer_max_run,
    dth_power_residue_test,
    dth_root_mod,
    inv_mod,
    is_prime,
    pow_mod,
    sieve_primes,
)
from .rootsmodp import RootPoint, a_f_points, roots_mod_p
from .witness import Approximation, Witness, approximate, find_witness, verify_witness, witness_sequence

__version__ = "0.1.0"
