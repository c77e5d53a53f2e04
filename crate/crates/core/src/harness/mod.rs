//! Seeded Monte Carlo experiments, exact enumeration, figure reproduction and
//! exhaustive self-checks.

pub mod config;
pub mod exact;
pub mod experiment;
pub mod figures;
pub mod oracle;

pub use config::{ExperimentConfig, Metric};
pub use exact::{exact_expected_distance, exact_expected_distance_by_codeword};
pub use experiment::{
    attribute_error, rows_to_csv, run_experiment, run_experiment_with_workers, AggregateResult, Attribution, CsvRow,
    ErrorClass, PointResult, Totals, CSV_HEADER, WORKERS_ENV,
};
pub use figures::{figure_plans, reproduce_figure, run_plans, FigureData, FigureId, FigurePlan, Formula, Scale};
pub use oracle::{run_oracle, two_del_margin, OracleCheck, OracleReport};
