//! Linear choice map, symmetrization, integration and the Find-Quadratic driver.

mod driver;
mod integrate;
mod linear_map;
mod symmetrize;

pub use driver::{find_quadratic, find_quadratic_with, FindQuadraticConfig, FindQuadraticReport};
pub use integrate::integrate;
pub use linear_map::{find_linear_map, LinearChoiceMap, LinearMapParams};
pub use symmetrize::{symmetrize, symmetrize_on, Symmetrized};
