//! Bogolyubov subspaces, Model-Test, local linear choice and the
//! Find-QuadraticAverage driver.

mod bogolyubov;
mod driver;
mod linear_parts;
mod local_choice;
mod model_test;
mod params;

pub use bogolyubov::{bogolyubov, BogolyubovParams};
pub use driver::{
    find_quadratic_average, find_quadratic_average_with, FindAverageConfig, FindAverageReport,
};
pub use linear_parts::{find_linear_parts, LinearParts, LinearPartsParams, MAX_LINEAR_PARTS_CODIM};
pub use local_choice::{
    local_linear_choice, local_symmetrize, BogolyubovRule, LocalChoiceParams, LocalChoiceResult,
};
pub use model_test::model_test;
pub use params::{paper_model_rows, paper_theta_log2, paper_theta_prime_log2, ModelParams};
