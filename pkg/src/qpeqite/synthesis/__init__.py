"""Clifford+T synthesis and resource estimation."""
from .clifford_t import (
    GENERATORS,
    SynthesisResult,
    canonicalize,
    distance,
    inverse_word,
    t_count,
    word_matrix,
)
from .multiplexor import (
    canonicalize_gates,
    decompose_multiplexed_ry,
    gate_counts,
    multiplexed_ry_matrix,
    uar_taylor_order,
)
from .resources import ResourceReport, StageCost, fit_sk_exponent, resource_report
from .solovay_kitaev import EpsilonNet, build_epsilon_net, group_commutator_decompose, sk_synthesize
