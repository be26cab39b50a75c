//! Lambda-coalescents restricted to `n` individuals and their measure trees.
//!
//! Given `b` blocks, every `k`-tuple merges at rate `lambda_{b,k}`. Two
//! individuals are at distance `t` in the measure tree when they first share
//! a block at time `t`, which makes the tree an ultrametric space.

mod lambda;
mod run;

pub use lambda::{
    dust_classifier, dust_probe, k_merger_rate, lambda_rate, total_merge_rate, BetaComponent,
    DustClass, DustProbe, LambdaMeasure, RateTable,
};
pub use run::{
    coalescence_times, coalescent_to_mmspace, empirical_ball_mass_curve, mean_stderr, simulate,
    simulate_with, singleton_frequency, thin_fraction, BallMassPoint, CoalescentRun, MergeEvent,
    PartitionState,
};
