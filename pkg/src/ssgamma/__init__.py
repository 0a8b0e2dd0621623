"""Exact twisted gamma factors of simple supercuspidal representations.

Everything is computed in exact arithmetic: p-adic rationals, cyclotomic
numbers, and Laurent polynomials in q^(1/2) and q^(-s).  The headline
computation is the local Rankin-Selberg quotient Phi*/Phi for the
simple supercuspidals of split SO_(2l+1) twisted by a tame character,
verified against the closed form and against an independent GL_(2l)
computation.
"""

from .padic import PAdicNumber, RepSet, rational_valuation
from .cyclotomic import CyclotomicNumber
from .scalars import ExactScalar, NonMonomialDivisor, ZeroDivisor
from .matrices import (
    GroupMatrix,
    CosetWitness,
    GLCosetWitness,
    coset_decompose,
    coset_decompose_gl,
    iwahori_test,
    named_element,
    embed_j,
    xbar,
)
from .characters import (
    TameCharacter,
    WhittakerSpec,
    psi_eval,
    tame_eval,
    affine_chi,
    chi_zeta,
    whittaker_eval,
)
from .integrals import (
    SectionSpec,
    IntegralConfig,
    GammaResult,
    section_eval,
    intertwine_M,
    phi_eval,
    phi_star_eval,
    gamma_so,
    gamma_gl_closed,
    jpss_gl_gamma,
    match_so_gl,
    scan_support,
    BoundaryNonvanishing,
)
from .parameter import (
    EisensteinElement,
    ParamData,
    iota_embed,
    xi_eval,
    gauss_sum,
    param_summary,
    BadResidueChar,
)

__version__ = "0.1.0"
