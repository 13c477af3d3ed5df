//! Functions on F_2^n: query oracles, truth tables, quadratic phases and
//! averages, derivatives, generators and file formats.

mod estimate;
pub mod generate;
pub mod io;
mod oracle;
mod phase;
mod table;

pub(crate) use estimate::check_unit;
pub use estimate::{estimate_correlation, hoeffding_samples, Estimate};
pub use generate::{
    make_noisy_average, make_noisy_codeword, make_noisy_codeword_exact, random_boolean,
};
pub use oracle::{Derivative, FnOracle, Oracle, QueryCounter, Scaled, Twisted};
pub use phase::{eval_quadratic_average, eval_quadratic_phase, QuadraticAverage, QuadraticPhase};
pub(crate) use table::check_enum_n;
pub use table::{correlation_exact, TableOracle, TruthTable};
