//! Exhaustive ground-truth routines for small `n`: sets and sumsets, exact
//! convolutions, best quadratic correlation, Gowers norms from the definition,
//! and the BSG sets `T(u, ·)`.
//!
//! Every routine refuses inputs above its documented cap.

mod convolution;
mod gowers;
mod quadratic;
mod set;
mod tset;

pub use convolution::{
    convolution_power, count_additive_quadruples, sumset, MAX_CONVOLUTION_N, MAX_QUADRUPLE_N,
};
pub use gowers::{u_norm_direct, MAX_DIRECT_WORK_LOG2};
pub use quadratic::{best_quadratic_correlation, MAX_BEST_QUADRATIC_N};
pub use set::{SetF2, MAX_SET_N};
pub use tset::{exhaustive_t_set, EdgeGraph, MAX_T_SET_N};
