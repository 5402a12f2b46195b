//! Isoperimetric quantities of Cayley graphs and the checks tying them to
//! the growth-based lower bounds.

mod bounds;
mod finite;
mod folner;
mod profile;
mod special;
mod spectral;
mod verify;

pub use bounds::{
    bound_report, csc_bound_exact, exp_growth_bound, folner_exp_floor, folner_floor_from_table,
    folner_poly_floor, inverse_growth_exact, lambda_bound, lambda_bound_exact, poly_growth_bound,
    Bound, BoundReport, LambdaBound,
};
pub use finite::EXHAUSTIVE_LIMIT;
pub use folner::{
    exponential_growth_criterion, folner_asymptotic_ratio, folner_phi, folner_value,
    FolnerOptions, FolnerOutcome, FolnerRatio, FolnerResult, GrowthCriterion,
};
pub use profile::{
    connected_profile, connected_profile_with_budget, finite_profile, infinite_profile, profile,
    profile_table, ConnectedMinimum, ConnectedProfile, ProfilePoint, Scope, DEFAULT_BUDGET,
};
pub use special::{free_outer_identity_check, loomis_whitney_check, FreeVerdict, LoomisWhitneyVerdict};
pub use spectral::{cheeger, cheeger_with_cap, laplacian_lambda1, CheegerResult, CHEEGER_CAP, LAPLACIAN_LIMIT};
pub use verify::{
    certified_table, check_subsets, family_subsets, verify_main_inequality, Check, Family,
    SizeBounds, VerifyReport, Violation,
};
