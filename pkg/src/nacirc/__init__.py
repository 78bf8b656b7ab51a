"""Exact polynomial identity testing for nonassociative arithmetic circuits.

Randomized black-box PIT over the constructed evaluation algebras,
deterministic white-box PIT via coefficient-space linear algebra, and
deterministic black-box PIT via basis-isolating weight assignments for
low-product-depth circuits, all validated against a brute-force expansion
oracle.
"""

from .circuit import Builder, Circuit, Gate, gen_random, homogenize, parse
from .errors import NacircError
from .ffield import DEFAULT_MODULUS, FieldContext, field_new, greedy_basis
from .monomial import Monomial, MonomialCode, canon_comm, decode, encode, orders, phi_mono
from .oracle import Poly, coeff_table, eval_poly_algebra, expand
from .algebra import (
    AlgebraElem,
    a_mul,
    aprime_mul,
    c_mul,
    comm_eval_mul,
    eval_circuit,
    make_Zi,
    random_elem,
)
from .randpit import BlackBox, empirical_failure_rate, randomized_pit
from .whitebox import build_levels, whitebox_pit
from .hitting import (
    KroneckerFamily,
    WeightAssignment,
    ZCircuit,
    biwa_candidates,
    blackbox_pit_det,
    hitting_set_nonassoc,
    hitting_set_unambiguous,
    kronecker_family,
    set_multilinearize,
    verify_biwa,
)

__version__ = "0.1.0"
