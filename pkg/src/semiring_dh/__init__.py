"""Diffie-Hellman key exchange over semigroup actions on finite simple semirings."""

from . import kernels
from .actions import SemigroupAction, action_instances, fm_linear, modexp, translation, two_sided
from .matrix import (CenterPolynomial, SemiringMatrix, eval_poly, identity, mat_add, mat_mul,
                     two_sided_apply)
from .order import (CapExceeded, LandauResult, OrderProfile, extremal_matrix, landau_g,
                    massias_check, order_profile_bruteforce, scc_period)
from .protocol import (ProtocolInstance, derive_shared, generic_dh, keygen, paper_instance,
                       run_session)
from .semiring import (CongruencePartition, SemiringTable, builtin, center, generated_congruence,
                       is_simple, validate_axioms)

__version__ = "0.1.0"
BACKEND = kernels.BACKEND

__all__ = [
    "SemigroupAction", "action_instances", "fm_linear", "modexp", "translation", "two_sided",
    "CenterPolynomial", "SemiringMatrix", "eval_poly", "identity", "mat_add", "mat_mul",
    "two_sided_apply", "CapExceeded", "LandauResult", "OrderProfile", "extremal_matrix",
    "landau_g", "massias_check", "order_profile_bruteforce", "scc_period", "ProtocolInstance",
    "derive_shared", "generic_dh", "keygen", "paper_instance", "run_session",
    "CongruencePartition", "SemiringTable", "builtin", "center", "generated_congruence",
    "is_simple", "validate_axioms", "BACKEND", "__version__",
]
