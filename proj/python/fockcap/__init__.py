"""Capacity bounds and finite-size converses for lossy bosonic channels.

Thin re-export of the compiled core plus a couple of conveniences that are
nicer to express in python (exact big-integer ranks, bound sweeps).
"""

from ._core import (  # noqa: F401
    AdditiveApplyResult,
    ConcentrationReport,
    DensityMatrix,
    FockVector,
    GaussChannel,
    MeanConstraintReport,
    PhotonDistribution,
    QubitConverseReport,
    RankBoundReport,
    SmoothingCheck,
    SmoothingResult,
    ToleranceError,
    TruncationError,
    additive_apply,
    additive_number_dist,
    apply_to_variance,
    beamsplitter_unitary,
    cap_lower_additive,
    cap_lower_thermal,
    cap_upper_gio_additive,
    cap_upper_gio_thermal,
    cap_upper_ks_additive,
    cap_upper_ks_thermal,
    coherent_state,
    compose,
    concentration_experiment,
    converse_envelope_gio,
    converse_envelope_ks,
    displacement_operator,
    envelope_threshold_gio,
    envelope_threshold_ks,
    g,
    gentle_measurement_defect,
    log2_projector_rank,
    loss_number_dist,
    make_additive,
    make_amplifier,
    make_loss,
    make_thermal,
    mean_constraint_demo,
    min_entropy,
    min_entropy_state,
    min_output_renyi_additive,
    min_output_renyi_thermal,
    pure_density,
    qubit_converse_check,
    rank_bound_check,
    renyi_entropy,
    renyi_entropy_state,
    shannon_entropy,
    smooth_min_entropy,
    thermal_apply,
    thermal_env_dim,
    thermal_number_dist,
    thermal_state,
    trace_distance,
    vacuum_state,
    verify_renyi_smoothing,
)
from ._core import projector_rank_str as _projector_rank_str

__version__ = "0.1.0"


def projector_rank(modes: int, limit: int) -> int:
    """Exact number of occupation tuples on `modes` modes with total <= `limit`."""
    return int(_projector_rank_str(modes, limit))


def bounds_table(etas, n_ss, n_bs):
    """Sweep the thermal-channel bounds over parameter iterables.

    Returns a list of dicts, one per grid point, with the lower bound, both
    upper bounds, and their gaps.
    """
    rows = []
    for eta in etas:
        for n_s in n_ss:
            for n_b in n_bs:
                lower = cap_lower_thermal(eta, n_s, n_b)
                gio = cap_upper_gio_thermal(eta, n_s, n_b)
                ks = cap_upper_ks_thermal(eta, n_s, n_b)
                rows.append(
                    {
                        "eta": eta,
                        "n_s": n_s,
                        "n_b": n_b,
                        "lower": lower,
                        "upper_gio": gio,
                        "upper_ks": ks,
                        "gap_gio": gio - lower,
                        "gap_ks": ks - lower,
                    }
                )
    return rows
