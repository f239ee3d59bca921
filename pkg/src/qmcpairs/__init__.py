"""qmcpairs: exact low-discrepancy sequences and their pair correlations.

Construction of digital sequences from finite-field generating matrices
(classic rows-from-Laurent-tails and column-by-column variants), Halton
and van der Corput sequences via the radical inverse, multi-dimensional
pair-correlation statistics under the torus sup-norm, and desk-scale
verification of the witness construction showing these sequences do not
have Poissonian pair correlations.
"""

from ._backend import BACKEND
from .fields import Field
from .genmat import (
    CBC,
    NIEDERREITER,
    GenMatrix,
    RowLengthInconclusive,
    SeqDef,
    cbc_matrix,
    mat_mul,
    niederreiter_matrix,
    nut_check,
    row_length,
    scrambler_matrix,
    tse_check,
)
from .paircorr import (
    PpcCurve,
    PpcEntry,
    count_pairs_in,
    count_pairs_leq,
    ppc_convergence,
    ppc_curve,
    torus_dist,
)
from .polys import (
    Poly,
    base_expansion,
    laurent_tail,
    monic_irreducibles,
    mul_order,
    poly_coprime,
    poly_from_string,
    poly_gcd,
    poly_irreducible,
    poly_to_string,
)
from .sequences import (
    DigitalSource,
    ExactPoint,
    HaltonSource,
    KroneckerSource,
    RandomSource,
    VdcSource,
    digital_numerators,
    digital_point,
    halton_point,
    kronecker_point,
    radical_inverse,
    truncate_point,
    vdc_point,
)
from .witness import (
    BudgetExceededError,
    DigitalWitness,
    HaltonWitness,
    InfeasibleWitnessError,
    KSearchHit,
    WitnessReport,
    digital_witness_params,
    digital_witness_verify,
    halton_k_search,
    halton_witness_params,
    halton_witness_verify,
    near_integer_search,
    prop1_check,
)

__version__ = "0.1.0"
