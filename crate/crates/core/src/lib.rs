//! Calculus over the dual real numbers `R ⊕ R·1#` with `1#² = 0`: type-θ
//! orders, dual derivatives, type-θ Darboux integration, alternating
//! tensors, differential forms, cubical chains and a Stokes verifier.

pub mod cubes;
pub mod darboux;
pub mod dual;
pub mod error;
pub mod exterior;
pub mod expr;
pub mod forms;
pub mod sampling;
pub mod scalar;
pub mod selftest;
pub mod stokes;

pub use cubes::{Chain, CubeDomain, SingularCube};
pub use darboux::{
    darboux_sums, integral_estimate, lower_sum, make_interval, upper_sum, volume, DarbouxSums, IntegralEstimate, Mode,
    Partition, Refinement, SubRect, ThetaInterval, ThetaRectangle,
};
pub use dual::{dual_mul, nbhd_contains, theta_cmp, vec_norm, Dual, DualVec, Ordering4, Theta};
pub use error::{Error, Result};
pub use exterior::{alt, lambda_dim, tensor_product, wedge, AltTensor, Evaluate, GenTensor, MultiIndex};
pub use expr::{
    compose_maps, cr_check, eval_enclosure, jacobian, parse_expr, DualBox, DualMap, Expr, ExprMap, Interval, Node,
    Prim,
};
pub use forms::{d_of_function, wedge_forms, DiffForm};
pub use scalar::{Real, Scalar};
pub use stokes::{
    builtin_suite, integrate_over_chain, integrate_over_cube, integrate_top_form, integrate_zero_form, run_suite,
    verify_stokes, Scenario, Status, StokesReport, SuiteReport,
};

pub type Dual64 = Dual<f64>;
pub type Dual32 = Dual<f32>;
pub type DualVec64 = DualVec<f64>;
pub type Expr64 = Expr<f64>;
pub type ExprMap64 = ExprMap<f64>;
pub type DiffForm64 = DiffForm<f64>;
pub type AltTensor64 = AltTensor<f64>;
pub type SingularCube64 = SingularCube<f64>;
pub type Chain64 = Chain<f64>;
