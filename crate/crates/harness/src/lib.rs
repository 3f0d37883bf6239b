//! Ensemble experiments on hybrid Clifford circuits: parallel trajectory
//! runs, window averages, scaling fits and record export.

pub mod ensemble;
pub mod error;
pub mod experiments;
pub mod fit;
pub mod pc;
pub mod record;
pub mod spec;
pub mod stats;

pub use ensemble::{point_id, run_ensemble};
pub use error::{HarnessError, Result};
pub use fit::{fit_log_linear, fit_power_law, FitModel, FitResult};
pub use pc::{estimate_pc, Curve, PcEstimate};
pub use record::{export, import, read_records, sort_records, write_records, Format, Observable, ResultRecord};
pub use spec::{ExperimentSpec, Lengths, Stride};
pub use stats::{average_window, Aggregate, Averaging, Moments};
