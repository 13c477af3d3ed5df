//! C ABI for `quadgl`.
//!
//! Objects cross the boundary as opaque handles created by `qgl_*_new`,
//! `qgl_*_read` or a finder and released with the matching `qgl_*_free`.
//! Every fallible call returns a [`QglStatus`]; on failure the message is
//! available from [`qgl_last_error`] until the next failing call on the same
//! thread. Randomized calls take an explicit `seed`, so equal inputs give
//! equal outputs.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use quadgl::decompose::{decompose, DecomposeConfig, Decomposition, PhaseFinder};
use quadgl::error::Error;
use quadgl::f2::PointF2;
use quadgl::fourier::{estimate_u3, exact_u_norm, wht};
use quadgl::functions::io::{read_table, write_table, AverageJson, PhaseJson, TableFormat};
use quadgl::functions::{
    correlation_exact, make_noisy_codeword_exact, QuadraticAverage, QuadraticPhase, TruthTable,
};
use quadgl::model_refine::{find_quadratic_average_with, FindAverageConfig};
use quadgl::quad_recovery::{find_quadratic_with, FindQuadraticConfig};
use quadgl::rng::stream;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QglStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    /// A finder returned no structure. Not an error in the input.
    NotFound = 4,
    Internal = 5,
}

/// A real-valued function on `F_2^n`, stored as its table of `2^n` values.
pub struct QglTable(TruthTable);

/// `(-1)^{x^T M x + <alpha, x> + c}`.
pub struct QglPhase(QuadraticPhase);

/// A quadratic average: one quadratic phase per coset of a subspace.
pub struct QglAverage(QuadraticAverage);

/// Output of [`qgl_decompose`].
pub struct QglDecomposition(Decomposition);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QglStatus {
    match e {
        Error::Io(_) | Error::Parse(_) | Error::Json(_) => QglStatus::Io,
        _ => QglStatus::InvalidArgument,
    }
}

enum Fail {
    Null(&'static str),
    Invalid(String),
    Core(Error),
    NotFound,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QglStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QglStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("{what} is null"));
            QglStatus::NullPointer
        }
        Ok(Err(Fail::Invalid(msg))) => {
            set_error(msg);
            QglStatus::InvalidArgument
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::NotFound)) => {
            set_error("no structure found".into());
            QglStatus::NotFound
        }
        Err(_) => {
            set_error("internal panic".into());
            QglStatus::Internal
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn set<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = value;
    Ok(())
}

unsafe fn path_arg<'a>(p: *const c_char) -> Result<&'a Path, Fail> {
    if p.is_null() {
        return Err(Fail::Null("path"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Path::new)
        .map_err(|_| Fail::Invalid("path is not UTF-8".into()))
}

fn point(n: usize, x: u64) -> Result<PointF2, Fail> {
    if n < 64 && x >> n != 0 {
        return Err(Fail::Invalid(format!("x = {x:#x} has bits above n = {n}")));
    }
    Ok(PointF2::from_u64(n, x))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Invalid("string contains NUL".into()))?;
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = c.into_raw();
    Ok(())
}

fn json(v: serde_json::Result<String>) -> Result<String, Fail> {
    v.map_err(|e| Fail::Core(e.into()))
}

/// Message of the last failing call on this thread, or null. Owned by the
/// library; valid until the next failing call.
#[no_mangle]
pub extern "C" fn qgl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qgl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by a `*_json` call.
#[no_mangle]
pub unsafe extern "C" fn qgl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Copies `len = 2^n` values into a new table.
#[no_mangle]
pub unsafe extern "C" fn qgl_table_new(
    n: usize,
    values: *const f64,
    len: usize,
    out: *mut *mut QglTable,
) -> QglStatus {
    guard(|| {
        if values.is_null() {
            return Err(Fail::Null("values"));
        }
        let v = std::slice::from_raw_parts(values, len).to_vec();
        put(out, QglTable(TruthTable::new(n, v)?))
    })
}

/// Reads a text or binary table file.
#[no_mangle]
pub unsafe extern "C" fn qgl_table_read(path: *const c_char, out: *mut *mut QglTable) -> QglStatus {
    guard(|| {
        let t = read_table(path_arg(path)?)?;
        put(out, QglTable(t))
    })
}

/// Writes a ±1 table; `binary != 0` selects the packed format.
#[no_mangle]
pub unsafe extern "C" fn qgl_table_write(
    table: *const QglTable,
    path: *const c_char,
    binary: i32,
) -> QglStatus {
    guard(|| {
        let t = get(table, "table")?;
        let format = if binary != 0 {
            TableFormat::Binary
        } else {
            TableFormat::Text
        };
        Ok(write_table(path_arg(path)?, &t.0, format)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn qgl_table_free(table: *mut QglTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// `n` of the table, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn qgl_table_n(table: *const QglTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.n())
}

/// `f(x)`, with the bits of `x` as coordinates.
#[no_mangle]
pub unsafe extern "C" fn qgl_table_get(table: *const QglTable, x: u64, out: *mut f64) -> QglStatus {
    guard(|| {
        let t = get(table, "table")?;
        let p = point(t.0.n(), x)?;
        set(out, t.0.at(&p))
    })
}

/// A random quadratic phase and its codeword with exactly
/// `round((1/2 - epsilon) 2^n)` flipped entries.
#[no_mangle]
pub unsafe extern "C" fn qgl_gen_noisy_phase(
    n: usize,
    epsilon: f64,
    seed: u64,
    out_table: *mut *mut QglTable,
    out_phase: *mut *mut QglPhase,
) -> QglStatus {
    guard(|| {
        if out_table.is_null() {
            return Err(Fail::Null("out_table"));
        }
        let mut rng = stream(seed, "gen", 0);
        let q = QuadraticPhase::random(n, &mut rng);
        let t = make_noisy_codeword_exact(&q, epsilon, &mut rng)?;
        put(out_table, QglTable(t))?;
        if !out_phase.is_null() {
            put(out_phase, QglPhase(q))?;
        }
        Ok(())
    })
}

/// Writes the `2^n` Fourier coefficients into `out`, indexed by `alpha`.
#[no_mangle]
pub unsafe extern "C" fn qgl_wht(table: *const QglTable, out: *mut f64, len: usize) -> QglStatus {
    guard(|| {
        let t = get(table, "table")?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        if len != t.0.len() {
            return Err(Fail::Invalid(format!(
                "out holds {len} values, need {}",
                t.0.len()
            )));
        }
        let s = wht(&t.0)?;
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(s.coeffs());
        Ok(())
    })
}

/// Exact `‖f‖_{U^3}`.
#[no_mangle]
pub unsafe extern "C" fn qgl_u3_exact(table: *const QglTable, out: *mut f64) -> QglStatus {
    guard(|| {
        let t = get(table, "table")?;
        set(out, exact_u_norm(&t.0, 3)?)
    })
}

/// Sampled `‖f‖_{U^3}` within `gamma` with probability `1 - delta`.
#[no_mangle]
pub unsafe extern "C" fn qgl_u3_estimate(
    table: *const QglTable,
    gamma: f64,
    delta: f64,
    seed: u64,
    out: *mut f64,
) -> QglStatus {
    guard(|| {
        let t = get(table, "table")?;
        let e = estimate_u3(&t.0.oracle(), gamma, delta, &mut stream(seed, "u3", 0))?;
        set(out, e.value)
    })
}

/// A quadratic phase correlating with the table, with the practical profile.
/// Returns `NotFound` on bottom.
#[no_mangle]
pub unsafe extern "C" fn qgl_find_quadratic(
    table: *const QglTable,
    epsilon: f64,
    delta: f64,
    seed: u64,
    out: *mut *mut QglPhase,
) -> QglStatus {
    guard(|| {
        let t = get(table, "table")?;
        let config = FindQuadraticConfig::practical(epsilon, delta);
        let r = find_quadratic_with(
            &t.0.oracle(),
            &config,
            None,
            &mut stream(seed, "find-quad", 0),
        )?;
        put(out, QglPhase(r.phase.ok_or(Fail::NotFound)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qgl_phase_free(phase: *mut QglPhase) {
    if !phase.is_null() {
        drop(Box::from_raw(phase));
    }
}

/// `n` of the phase, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn qgl_phase_n(phase: *const QglPhase) -> usize {
    phase.as_ref().map_or(0, |q| q.0.n())
}

/// `±1` value at `x`.
#[no_mangle]
pub unsafe extern "C" fn qgl_phase_eval(
    phase: *const QglPhase,
    x: u64,
    out: *mut i32,
) -> QglStatus {
    guard(|| {
        let q = get(phase, "phase")?;
        let p = point(q.0.n(), x)?;
        set(out, if q.0.exponent(&p) { -1 } else { 1 })
    })
}

/// Exact `E f(x) (-1)^{q(x)}`.
#[no_mangle]
pub unsafe extern "C" fn qgl_phase_correlation(
    phase: *const QglPhase,
    table: *const QglTable,
    out: *mut f64,
) -> QglStatus {
    guard(|| {
        let q = get(phase, "phase")?;
        let t = get(table, "table")?;
        set(out, correlation_exact(&t.0, &q.0.truth_table()?)?)
    })
}

/// JSON form of the phase; free with [`qgl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qgl_phase_json(
    phase: *const QglPhase,
    out: *mut *mut c_char,
) -> QglStatus {
    guard(|| {
        let q = get(phase, "phase")?;
        put_string(out, json(serde_json::to_string(&PhaseJson::from(&q.0)))?)
    })
}

/// A quadratic average correlating with the table, complexity at most
/// `max_complexity`. Returns `NotFound` on bottom.
#[no_mangle]
pub unsafe extern "C" fn qgl_find_quadratic_average(
    table: *const QglTable,
    epsilon: f64,
    delta: f64,
    max_complexity: usize,
    seed: u64,
    out: *mut *mut QglAverage,
) -> QglStatus {
    guard(|| {
        let t = get(table, "table")?;
        let config = FindAverageConfig {
            max_complexity,
            ..FindAverageConfig::practical(t.0.n(), epsilon, delta)
        };
        let mut rng = stream(seed, "find-avg", 0);
        let r = find_quadratic_average_with(&t.0.oracle(), &config, None, &mut rng)?;
        put(out, QglAverage(r.average.ok_or(Fail::NotFound)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qgl_average_free(average: *mut QglAverage) {
    if !average.is_null() {
        drop(Box::from_raw(average));
    }
}

/// Codimension of the subspace, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn qgl_average_complexity(average: *const QglAverage) -> usize {
    average.as_ref().map_or(0, |a| a.0.complexity())
}

/// Exact `E f(x) Q(x)`.
#[no_mangle]
pub unsafe extern "C" fn qgl_average_correlation(
    average: *const QglAverage,
    table: *const QglTable,
    out: *mut f64,
) -> QglStatus {
    guard(|| {
        let a = get(average, "average")?;
        let t = get(table, "table")?;
        set(out, correlation_exact(&t.0, &a.0.truth_table()?)?)
    })
}

/// JSON form of the average; free with [`qgl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qgl_average_json(
    average: *const QglAverage,
    out: *mut *mut c_char,
) -> QglStatus {
    guard(|| {
        let a = get(average, "average")?;
        put_string(out, json(serde_json::to_string(&AverageJson::from(&a.0)))?)
    })
}

/// Splits the table into quadratic phases plus a small and a uniform part,
/// with the practical settings and phase steps taken on the bounded residual.
#[no_mangle]
pub unsafe extern "C" fn qgl_decompose(
    table: *const QglTable,
    epsilon: f64,
    bound: f64,
    delta: f64,
    seed: u64,
    out: *mut *mut QglDecomposition,
) -> QglStatus {
    guard(|| {
        let t = get(table, "table")?;
        let config = DecomposeConfig::practical(epsilon, bound, delta);
        let finder = PhaseFinder::practical();
        let mut rng = stream(seed, "decompose", 0);
        let d = decompose(&t.0.oracle(), &config, &finder, &mut rng)?;
        put(out, QglDecomposition(d))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qgl_decomposition_free(d: *mut QglDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of terms, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn qgl_decomposition_k(d: *const QglDecomposition) -> usize {
    d.as_ref().map_or(0, |d| d.0.k())
}

/// `‖f‖_{U^3}` of the final bounded residual, exact or estimated.
#[no_mangle]
pub unsafe extern "C" fn qgl_decomposition_residual_u3(
    d: *const QglDecomposition,
    out: *mut f64,
) -> QglStatus {
    guard(|| set(out, get(d, "decomposition")?.0.residual_u3))
}

/// Value of the structured part `Σ c_i q_i(x)`.
#[no_mangle]
pub unsafe extern "C" fn qgl_decomposition_eval(
    d: *const QglDecomposition,
    x: u64,
    out: *mut f64,
) -> QglStatus {
    guard(|| {
        let d = get(d, "decomposition")?;
        let p = point(d.0.n, x)?;
        set(out, d.0.approximation(&p))
    })
}

/// JSON summary; free with [`qgl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qgl_decomposition_json(
    d: *const QglDecomposition,
    out: *mut *mut c_char,
) -> QglStatus {
    guard(|| {
        let d = get(d, "decomposition")?;
        put_string(out, d.0.to_json()?.to_string())
    })
}
