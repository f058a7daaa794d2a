"""Exact counts of étale Galois covers with group Z/m ⋊ Z/n, with oracles."""

from .counting import (CoverCountReport, count_cyclic, count_special_two_primes, count_T,
                       count_total, primitive_eigenvector_count)
from .errors import BudgetError, DomainError, IntegrityError, LiftError
from .matrices import (ModMatrix, charpoly, charpoly_mod, companion_G, deck_matrix, direct_sum,
                       kron, minpoly_mod, similarity_verdict)
from .modular import (FactoredModulus, ModVector, count_primitive_vectors, crt_join, crt_split,
                      euler_phi, factorize, is_primitive_vector)
from .oracle import EigenReport, enumerate_directions, kernel_directions, verify
from .poly import (ModPoly, cyclotomic, eigenvalue_set, hensel_lift_root, linear_factor_count,
                   linear_roots_mod_p, sigma_charpoly)
from .symplectic import SymplecticBasisCert, adapt_basis, is_symplectic, standard_form

__version__ = "0.1.0"
