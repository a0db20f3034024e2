"""binomeso: cellular, mesoprimary and binomial primary decomposition of
binomial ideals over exact fields, with toral/Andean classification."""

__version__ = "0.1.0"

from .errors import (BinomesoError, BoundTooSmallError, CapabilityError,
                     InputError, NonCellularError, ResourceLimitError)
from .fields import Cyclotomic, PrimeField, QQ, Rationals, parse_field, scalar_arith
from .rings import Polynomial, Ring
from .groebner import GroebnerBasis, Ideal, groebner_basis, normal_form
from .lattice import (IntLattice, LatticeCharacter, character_extensions,
                      kernel_lattice, lattice_ideal, lattice_of_cellular,
                      smith_normal_form)
from .grading import (Grading, check_positive_grading, hilbert_function,
                      is_homogeneous, toral_classify, toral_prime_test)
from .cellular import cellular_data, cellular_decomposition
from .meso import (MesoComponent, MesoDecomposition, WitnessRecord,
                   congruence_classes, coprincipal_component,
                   essential_witnesses, is_mesoprimary, mesoprime_at,
                   mesoprimary_decomposition, monomial_part,
                   monomial_witnesses)
from .primdec import (PrimaryComponent, associated_primes, hull,
                      lattice_primary_decomposition, meso_toral_part,
                      mesoprimary_to_primary, primary_decomposition,
                      toral_part)
from .reduction import (RestrictionContext, check_nonlifting, lift_polynomial,
                        make_restriction, restrict_ideal,
                        toral_primary_component, weak_essential_witnesses,
                        weak_monomial_witnesses, witness_transfer_check)
from .problems import ProblemFile, format_problem, parse_polynomial, parse_problem
from .reports import emit_congruence_dot
from .api import run_command
