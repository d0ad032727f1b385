"""Hurwitz-Lerch transcendent, companion special functions, and identity checks."""

from .lerch import (EvalResult, LerchArgs, Method, Scheme, hurwitz_zeta, hurwitz_zeta_sderiv_at0,
                    hyp2f1_1a, lerch_phi, lerch_phi_neg_int_s, lerch_phi_sderiv)
from .records import IdentityCase, IdentityReport
from .special_fn import CONSTANTS, gamma_quotient_log, log_gamma, principal_power, trigamma

__all__ = [
    "CONSTANTS", "EvalResult", "IdentityCase", "IdentityReport", "LerchArgs", "Method", "Scheme",
    "gamma_quotient_log", "hurwitz_zeta", "hurwitz_zeta_sderiv_at0", "hyp2f1_1a", "lerch_phi",
    "lerch_phi_neg_int_s", "lerch_phi_sderiv", "log_gamma", "principal_power", "trigamma",
]
