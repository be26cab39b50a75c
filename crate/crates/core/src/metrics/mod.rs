//! Couplings, relations, gluings and distances between spaces.

mod coupling;
mod eurandom;
mod gromov;
mod interval;
mod lp;
mod options;
mod prohorov;
pub mod qp;
mod relation;
mod transport;

pub use coupling::{compose_couplings, Coupling, COUPLING_TOL};
pub use eurandom::{
    eurandom, eurandom_lower, eurandom_with, ky_fan_level, mismatch_matrix, mod_eurandom,
    mod_eurandom_objective, mod_eurandom_with,
};
pub use gromov::{
    glued_prohorov, glued_wasserstein, gromov_hausdorff, gromov_hausdorff_with, gromov_prohorov,
    gromov_prohorov_with, gromov_wasserstein, gromov_wasserstein_with, relation_objective,
};
pub use interval::{CertifiedInterval, Witness};
pub use options::MetricOptions;
pub use prohorov::{prohorov, prohorov_line, prohorov_with_coupling};
pub use relation::{distortion, glue, GluedSpace, Relation};
pub use transport::transport_lp;
