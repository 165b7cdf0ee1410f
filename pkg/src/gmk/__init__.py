"""p-adic iteration of the Gauss-Manin connection on Serre-Tate expansions,
with the supporting p-adic, Iwasawa and triple-product machinery."""

from .cyclotomic import CycloScalar, DirichletChar, gauss_sum
from .iteration import GradedNearly, UnivExponent, a_i_term, nabla_disk, nabla_univ, pdiviter_certificate
from .iwasawa import IwasawaSeries, WeightPoint, binom_wprime, specialize
from .nearly import FormWeight, NearlyForm, nabla, nabla_pow
from .padic import PadicScalar, PrecisionError
from .qexp import QExpansion, deplete, theta_chi_avg, theta_chi_direct
from .sympoly import SymPoly, binom_lemma_lhs, binom_lemma_rhs
from .triple import DeltaKernelSpec, TripleEigenData, TripleWeights, delta_eval, euler_E, euler_E1, triple_t
from .unramified import UnramifiedRing, UnramifiedScalar
from .weights import VectorChar, WeightChar, eval_univ_char

__all__ = [
    "CycloScalar", "DirichletChar", "gauss_sum",
    "GradedNearly", "UnivExponent", "a_i_term", "nabla_disk", "nabla_univ", "pdiviter_certificate",
    "IwasawaSeries", "WeightPoint", "binom_wprime", "specialize",
    "FormWeight", "NearlyForm", "nabla", "nabla_pow",
    "PadicScalar", "PrecisionError",
    "QExpansion", "deplete", "theta_chi_avg", "theta_chi_direct",
    "SymPoly", "binom_lemma_lhs", "binom_lemma_rhs",
    "DeltaKernelSpec", "TripleEigenData", "TripleWeights", "delta_eval", "euler_E", "euler_E1", "triple_t",
    "UnramifiedRing", "UnramifiedScalar",
    "VectorChar", "WeightChar", "eval_univ_char",
]
