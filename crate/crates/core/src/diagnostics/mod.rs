//! Fixture spaces and family-level diagnostics.

mod fixtures;
mod report;

pub use fixtures::{exp212i, exp212ii, exp25_x, exp25_y, exp62_x, exp62_y, fixture, fixtures};
pub use report::{
    convergence_crosscheck, modulus_csv, precompactness_report, tightness_report, CrosscheckRow,
    CrosscheckTable, FamilyReport, GridValue, Thresholds, TightnessReport, Verdict,
};
