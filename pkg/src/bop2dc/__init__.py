"""Bayesian dual-criterion phase II trial designs.

Calibrates go/consider/no-go decision thresholds against posterior
probabilities of clearing a statistical bar (theta_lrv) and a clinical bar
(theta_cmv), simulates operating characteristics for binary, continuous,
time-to-event, multiple, and co-primary endpoints, and supports single-arm
and randomized trials.
"""

from .calibrate import (
    CalibrationResult,
    ConstraintSet,
    GridSpec,
    SharedDatasets,
    build_grid,
    calibrate,
    default_scenarios,
    evaluate_point,
    make_shared_datasets,
)
from .decision import (
    Decision,
    DesignParams,
    TargetProfile,
    combine_coprimary,
    combine_multiple,
    final_decision,
    graduate_cutoff,
    interim_cutoffs,
    interim_decision,
    interim_decision_rct,
    interim_decision_three,
)
from .posterior import (
    BetaPosterior,
    BinaryPrior,
    BinaryStats,
    CategoricalPrior,
    CategoricalStats,
    ContinuousPrior,
    ContinuousStats,
    InverseGammaPosterior,
    StudentTPosterior,
    TimeToEventPrior,
    TimeToEventStats,
    tail_prob_binary,
    tail_prob_continuous,
    tail_prob_difference,
    tail_prob_linear,
    tail_prob_tte,
)
from .report import (
    DecisionTable,
    OcTable,
    decision_table_binary,
    protocol_summary,
    render_oc_table,
)
from .simulate import (
    BinaryTruth,
    CategoricalTruth,
    ContinuousTruth,
    EndpointSpec,
    MonitoredEndpoint,
    OperatingCharacteristics,
    PosteriorPaths,
    Scenario,
    TimeToEventTruth,
    TrialData,
    TrialPlan,
    TrialResult,
    binary_endpoint,
    continuous_endpoint,
    default_prior,
    estimate_oc,
    exact_oc_binary_single_arm,
    generate_trial_data,
    run_trial,
    simulate_paths,
    trial_results,
    tte_endpoint,
    two_binary_endpoints,
)

__version__ = "0.1.0"
