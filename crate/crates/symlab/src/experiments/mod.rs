//! Randomized symmetrization process drivers, decay studies, rate fitting
//! and structured reporting.

pub mod decay;
pub mod minkowski;
pub mod rate;
pub mod report;
pub mod steiner;

pub use decay::{run_decay_suite, DecayRow, DecayTable, SingleDirectionComparison};
pub use minkowski::{
    gauge_record,
    energy_grid, process_grid, run_minkowski_ensemble, run_minkowski_process,
    run_segment_scenario, MinkowskiRunConfig, RunRecord, SeedBody,
};
pub use rate::{fit_rate, first_crossing, linear_fit, median_trajectory, RateFit, RoundsToEps};
pub use report::{
    eps_series_svg, run_records_csv, write_atomic, write_decay_csv, write_eps_svg, write_run_csv,
};
pub use steiner::{
    run_steiner_ensemble, run_steiner_process, SteinerRunConfig, SteinerRunOutcome, SteinerSeed,
};
