//! The U-transform `U_g(t) = sup_r (1/r)(1 - t/g(r))`, in a discrete form
//! driven by a growth table and a continuous form driven by a model.

mod continuous;
mod discrete;
mod lambert;
mod legendre;
mod tspg;

use serde::Serialize;

pub use continuous::{
    folner_lower_exp, g_inverse, inverse_exp_bound, ln_tau, rho, scan_objective, tau,
    u_continuous, u_continuous_with, u_poly_closed, u_stretched_closed, ContinuousOptions,
    GrowthModel,
};
pub use discrete::{
    strong_lower_bound, strong_lower_bound_exact, u_discrete, u_discrete_exact, u_discrete_range,
    ExactTransform,
};
pub use lambert::{lambert_f, lambert_f_ln};
pub use legendre::{legendre, LegendreResult};
pub use tspg::{tspg_check, tspg_check_with, TspgOptions, TspgReport, TspgSequence};

/// Value of a transform together with where it was found.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformResult {
    pub value: f64,
    /// Best radius found. Infinite when the supremum is only approached
    /// as r grows without bound.
    pub argmax: f64,
    /// True when the search provably contains the supremum.
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}
