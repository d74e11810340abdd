"""Exact Drazin inverses over Q(i) with certified decompositions.

The hot loops (matrix product, row reduction) run in a GMP-backed Cython
extension when it is built; ``BACKEND`` names the active one.
"""

from __future__ import annotations

from ._kernels import BACKEND
from .anti_triangular import (
    Block2x2,
    anti_triangular,
    cor34_chain,
    cor37_derive,
    lem35_chain,
    lem35_converse,
    lemma32_extract,
    lemma32_forward,
    power_check_lemma31,
    thm33_chain,
    thm33_converse,
    thm36_converse,
    thm36_split,
    u_poly,
    u_sequence,
)
from .decompositions import (
    corner_characterize,
    cor23_scaler,
    euw_decompose,
    invariant_splitting,
    quasipolar,
    strongly_drazin_check,
    thm22_refine,
    thm22_witness_check,
    two_units,
)
from .drazin import (
    DrazinResult,
    additive_pq_zero,
    cline_transfer,
    commuting_product_drazin,
    drazin,
    drazin_inverse,
    spectral_idempotent,
    verify_drazin_axioms,
)
from .errors import CertificateError, DrazinError, GenerationError, HypothesisError, ParseError, ShapeError
from .exactnum import BigRational, GaussianRational, gq, gq_format, gq_parse
from .instance_gen import GenSpec, derive_seed, gen_element, gen_theorem_instance, generate, similarity_conjugate
from .matrix import (
    Matrix,
    block,
    commutes,
    determinant,
    diag,
    direct_sum,
    express_as_polynomial,
    full_rank_factorize,
    identity,
    inverse,
    is_nilpotent,
    polynomial_eval,
    rank,
    rref_decompose,
    try_inverse,
    zero,
)

__version__ = "0.1.0"
