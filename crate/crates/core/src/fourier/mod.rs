//! Walsh-Hadamard transform, Gowers `U^2`/`U^3` norms (exact and sampled) and
//! Goldreich-Levin, globally and relative to a subspace.

mod estimate;
mod gl;
mod norms;
mod wht;

pub use estimate::{estimate_u3, estimate_u3_capped, U3Estimate, MAX_U3_SAMPLES};
pub use gl::{
    goldreich_levin, goldreich_levin_coset_with, goldreich_levin_subspace, goldreich_levin_with,
    GlParams, LinearTerm, LinearTermList,
};
pub use norms::{exact_u3_eighth, exact_u_norm, MAX_EXACT_U3_N};
pub use wht::{derivative_spectrum, wht, wht_in_place, FourierSpectrum};
