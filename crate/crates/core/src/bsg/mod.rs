//! The choice function `φ`, Edge-Test and BSG-Test, and parameter profiles.

mod diagnostics;
mod params;
mod phi;

pub(crate) use diagnostics::record;
pub use diagnostics::Diagnostics;
pub use params::{
    choose_bsg_params, phi_noise_floor, subinterval_count, BsgParams, PhiConfig, PhiRule,
    PracticalProfile, Profile, TParams,
};
pub use phi::PhiSampler;
pub use test::{bsg_test, edge_test};
