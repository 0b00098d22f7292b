//! Degree-two cohomology with `Q/Z` coefficients and the Bogomolov multiplier.

mod b0;
mod cochain;
mod schur;

pub use b0::{
    abelian_subgroups, b0, b0_over_family, b0_sylow_reduction, b0_with, bicyclic_subgroups,
    essential_members, BogomolovMultiplier, SubgroupFamily, SylowFactor, SylowVerdict,
};
pub use cochain::{boundary_matrices, CocycleVector, DEFAULT_BOUNDARY_ROW_CAP};
pub use schur::{
    bockstein, schur_multiplier, schur_multiplier_with, CohomologyCaps, SchurMultiplier,
    DEFAULT_COHOMOLOGY_CAP,
};
