//! Problem files, diagnosis scenarios and plot-data emission.

mod plot;
mod problem;
mod scenario;

pub use plot::{emit_plot_data, plot_csv};
pub use problem::{load_problem, load_problem_with, save_problem, LoadOptions, Problem, ProblemFile, RuleDef, SetDef, UniverseDef};
pub use scenario::{
    run_causal_scenario, run_fault_scenario, run_scenario, Aggregate, CausalEntry, FaultEntry, Hypothesis, MemberCheck,
    RoundTrip, ScenarioConfig, ScenarioKind, ScenarioReport, AGGREGATION_LABEL, DEFAULT_MATCH_THRESHOLD,
};
