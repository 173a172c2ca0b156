//! Experiment orchestration: single runs, layer x seed sweeps, scaling
//! curves, the locality probe and report files.

mod locality;
mod report;
mod run;
mod scale;
mod sweep;

pub use locality::{locality_probe, LocalityProbe};
pub use report::{emit_layer_summary, emit_report, emit_scale_table, read_runs, summary_rows, trace_id, SUMMARY_HEADER};
pub use run::{run_on, run_single, success_metrics, ExperimentConfig, InstanceSource, Problem, RunResult, SuccessMetrics};
pub use scale::{scalability_curve, ScaleConfig, ScaleRow};
pub use sweep::{sweep, CellFailure, LayerSummary, SweepResult};
