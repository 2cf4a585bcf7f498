"""Attacks on semigroup-action key exchange."""

from .generic import (BsgsResult, CountingAction, CyclicResult, EveFraction, Exhausted, NotFound,
                      SapInstance, Witness, brute_force_sap, cyclic_attack, eve_set_exact,
                      eve_set_fraction, polynomial_pairs, randomized_bsgs, wilson_interval)
from .linear import (FmInstance, LinearAttackFailure, LinearAttackResult, LinearizedAction,
                     basis_frequency, basis_probability, fm_action_break, fm_instance,
                     fm_linearized, linear_algebra_attack)
from .orbit import OrbitEstimate, exact_orbit, orbit_estimate

__all__ = [
    "BsgsResult", "CountingAction", "CyclicResult", "EveFraction", "Exhausted", "NotFound",
    "SapInstance", "Witness", "brute_force_sap", "cyclic_attack", "eve_set_exact",
    "eve_set_fraction", "polynomial_pairs", "randomized_bsgs", "wilson_interval",
    "FmInstance", "LinearAttackFailure", "LinearAttackResult", "LinearizedAction",
    "basis_frequency", "basis_probability", "fm_action_break", "fm_instance", "fm_linearized",
    "linear_algebra_attack", "OrbitEstimate", "exact_orbit", "orbit_estimate",
]
