//! Iterative decomposition `g = Σ η q̄_t + e + f` with truncated residuals,
//! Boolean rounding of bounded residuals, and finder adapters.

mod driver;
mod finder;
mod residual;
mod rounding;

pub use driver::{
    decompose, decompose_full, decompose_full_with, DecomposeConfig, Decomposition, FinderMode,
    PotentialStep, StepCoefficient, StepLog, StopReason,
};
pub use finder::{AverageFinder, Found, PhaseFinder, Rounded, TermFinder};
pub use residual::{DecompositionTerm, ResidualOracle, Term};
pub use rounding::{boolean_round_oracle, RoundedBooleanOracle};
