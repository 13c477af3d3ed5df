//! File formats: truth tables (text and binary), phase and average JSON,
//! spectrum dumps.
//!
//! Text table: line 1 `n=<int>`, line 2 a string of `2^n` characters from
//! `{+,-}` ordered by the integer encoding of `x` (`x_1` least significant).
//!
//! Binary table: 8-byte little-endian `n`, then `ceil(2^n/8)` bytes; entry `i`
//! is bit `i % 8` of byte `i / 8`, and a set bit means `-1`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::phase::{QuadraticAverage, QuadraticPhase};
use super::table::{check_enum_n, TruthTable};
use crate::error::{invalid, Error, Result};
use crate::f2::{MatrixF2, PointF2, SubspaceF2, MAX_ENUM_N};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Binary,
}

fn require_boolean(t: &TruthTable) -> Result<()> {
    if t.is_boolean() {
        Ok(())
    } else {
        Err(invalid("table files hold Boolean (±1) tables only"))
    }
}

pub fn table_to_text(t: &TruthTable) -> Result<String> {
    require_boolean(t)?;
    let mut s = format!("n={}\n", t.n());
    s.extend(t.values().iter().map(|&v| if v < 0.0 { '-' } else { '+' }));
    s.push('\n');
    Ok(s)
}

pub fn table_from_text(text: &str) -> Result<TruthTable> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let head = lines
        .next()
        .ok_or_else(|| Error::Parse("empty table file".into()))?;
    let n: usize = head
        .strip_prefix("n=")
        .ok_or_else(|| Error::Parse(format!("expected `n=<int>`, found {head:?}")))?
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad dimension: {e}")))?;
    check_enum_n("truth table", n, MAX_ENUM_N)?;
    let body = lines
        .next()
        .ok_or_else(|| Error::Parse("missing table body".into()))?;
    if lines.next().is_some() {
        return Err(Error::Parse("unexpected trailing content".into()));
    }
    if body.len() != 1 << n {
        return Err(Error::Parse(format!(
            "expected {} entries, found {}",
            1usize << n,
            body.len()
        )));
    }
    let vals = body
        .chars()
        .map(|ch| match ch {
            '+' => Ok(1.0),
            '-' => Ok(-1.0),
            other => Err(Error::Parse(format!("bad table character {other:?}"))),
        })
        .collect::<Result<Vec<f64>>>()?;
    TruthTable::new(n, vals)
}

pub fn table_to_binary(t: &TruthTable) -> Result<Vec<u8>> {
    require_boolean(t)?;
    let mut out = (t.n() as u64).to_le_bytes().to_vec();
    let mut bytes = vec![0u8; t.len().div_ceil(8)];
    for (i, &v) in t.values().iter().enumerate() {
        if v < 0.0 {
            bytes[i / 8] |= 1 << (i % 8);
        }
    }
    out.extend(bytes);
    Ok(out)
}

pub fn table_from_binary(data: &[u8]) -> Result<TruthTable> {
    if data.len() < 8 {
        return Err(Error::Parse("binary table shorter than its header".into()));
    }
    let n = u64::from_le_bytes(data[..8].try_into().expect("8 bytes")) as usize;
    check_enum_n("truth table", n, MAX_ENUM_N)?;
    let len = 1usize << n;
    let body = &data[8..];
    if body.len() != len.div_ceil(8) {
        return Err(Error::Parse(format!(
            "expected {} body bytes, found {}",
            len.div_ceil(8),
            body.len()
        )));
    }
    let vals = (0..len)
        .map(|i| {
            if (body[i / 8] >> (i % 8)) & 1 == 1 {
                -1.0
            } else {
                1.0
            }
        })
        .collect();
    TruthTable::new(n, vals)
}

/// Reads a table, detecting the text format by its `n=` prefix.
pub fn read_table(path: &Path) -> Result<TruthTable> {
    let data = fs::read(path)?;
    if data.starts_with(b"n=") {
        let text = String::from_utf8(data).map_err(|e| Error::Parse(e.to_string()))?;
        table_from_text(&text)
    } else {
        table_from_binary(&data)
    }
}

pub fn write_table(path: &Path, t: &TruthTable, format: TableFormat) -> Result<()> {
    let bytes = match format {
        TableFormat::Text => table_to_text(t)?.into_bytes(),
        TableFormat::Binary => table_to_binary(t)?,
    };
    fs::write(path, bytes)?;
    Ok(())
}

/// JSON form of a quadratic phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseJson {
    pub n: usize,
    #[serde(rename = "M")]
    pub m: Vec<String>,
    pub alpha: String,
    pub c: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetJson {
    pub y: String,
    pub l: String,
    pub c: u8,
}

/// JSON form of a quadratic average.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AverageJson {
    pub n: usize,
    #[serde(rename = "W_ortho")]
    pub w_ortho: Vec<String>,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    pub cosets: Vec<CosetJson>,
}

fn bit(b: bool) -> u8 {
    u8::from(b)
}

fn parse_bit(c: u8) -> Result<bool> {
    match c {
        0 => Ok(false),
        1 => Ok(true),
        other => Err(Error::Parse(format!(
            "sign bit must be 0 or 1, found {other}"
        ))),
    }
}

fn parse_rows(n: usize, rows: &[String]) -> Result<MatrixF2> {
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} matrix rows, found {}",
            rows.len()
        )));
    }
    MatrixF2::from_rows(
        rows.iter()
            .map(|r| PointF2::from_hex(n, r))
            .collect::<Result<_>>()?,
    )
}

impl From<&QuadraticPhase> for PhaseJson {
    fn from(q: &QuadraticPhase) -> Self {
        Self {
            n: q.n(),
            m: q.m().rows().iter().map(PointF2::to_hex).collect(),
            alpha: q.alpha().to_hex(),
            c: bit(q.c()),
        }
    }
}

impl TryFrom<&PhaseJson> for QuadraticPhase {
    type Error = Error;
    fn try_from(j: &PhaseJson) -> Result<Self> {
        let m = parse_rows(j.n, &j.m)?;
        let q = QuadraticPhase::new(
            m.clone(),
            PointF2::from_hex(j.n, &j.alpha)?,
            parse_bit(j.c)?,
        )?;
        if !m.is_strictly_upper() {
            return Err(Error::Parse("M must be strictly upper triangular".into()));
        }
        Ok(q)
    }
}

impl From<&QuadraticAverage> for AverageJson {
    fn from(q: &QuadraticAverage) -> Self {
        Self {
            n: q.n(),
            w_ortho: q
                .subspace()
                .ortho_basis()
                .iter()
                .map(PointF2::to_hex)
                .collect(),
            a: q.a().rows().iter().map(PointF2::to_hex).collect(),
            cosets: q
                .terms()
                .iter()
                .map(|(y, (l, c))| CosetJson {
                    y: y.to_hex(),
                    l: l.to_hex(),
                    c: bit(*c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&AverageJson> for QuadraticAverage {
    type Error = Error;
    fn try_from(j: &AverageJson) -> Result<Self> {
        let n = j.n;
        let ortho = j
            .w_ortho
            .iter()
            .map(|h| PointF2::from_hex(n, h))
            .collect::<Result<Vec<_>>>()?;
        let w = SubspaceF2::from_ortho(n, &ortho)?;
        let a = parse_rows(n, &j.a)?;
        let terms = j
            .cosets
            .iter()
            .map(|c| {
                Ok((
                    PointF2::from_hex(n, &c.y)?,
                    (PointF2::from_hex(n, &c.l)?, parse_bit(c.c)?),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        QuadraticAverage::new(w, a, terms)
    }
}

/// Spectrum dump: one line `hex(alpha) coefficient` per entry with
/// `|coefficient| >= min_abs`.
#[must_use]
pub fn spectrum_dump(n: usize, coeffs: &[f64], min_abs: f64) -> String {
    let mut s = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c.abs() >= min_abs {
            s.push_str(&format!(
                "{} {}\n",
                PointF2::from_u64(n, i as u64).to_hex(),
                c
            ));
        }
    }
    s
}

/// Parses a spectrum dump back into `(alpha, coefficient)` pairs.
pub fn parse_spectrum_dump(n: usize, text: &str) -> Result<Vec<(PointF2, f64)>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            let (Some(a), Some(c), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Parse(format!("bad spectrum line {l:?}")));
            };
            let c: f64 = c
                .parse()
                .map_err(|e| Error::Parse(format!("bad coefficient: {e}")))?;
            Ok((PointF2::from_hex(n, a)?, c))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::generate::random_boolean;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let t = random_boolean(5, &mut rng).unwrap();
        let s = table_to_text(&t).unwrap();
        assert!(s.starts_with("n=5\n"));
        assert_eq!(table_from_text(&s).unwrap(), t);
    }

    #[test]
    fn text_encoding_is_lsb_first() {
        let t = TruthTable::from_fn(2, |x| if x.get(0) { -1.0 } else { 1.0 }).unwrap();
        assert_eq!(table_to_text(&t).unwrap(), "n=2\n+-+-\n");
    }

    #[test]
    fn binary_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        for n in [1, 3, 9] {
            let t = random_boolean(n, &mut rng).unwrap();
            let b = table_to_binary(&t).unwrap();
            assert_eq!(b.len(), 8 + (1usize << n).div_ceil(8));
            assert_eq!(table_from_binary(&b).unwrap(), t);
        }
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(table_from_text("n=2\n+-+\n").is_err());
        assert!(table_from_text("n=2\n+-x-\n").is_err());
        assert!(table_from_text("m=2\n+-+-\n").is_err());
        assert!(table_from_binary(&[1, 0, 0]).is_err());
    }

    #[test]
    fn phase_json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(63);
        let q = QuadraticPhase::random(11, &mut rng);
        let j = PhaseJson::from(&q);
        let text = serde_json::to_string(&j).unwrap();
        let back: PhaseJson = serde_json::from_str(&text).unwrap();
        assert_eq!(QuadraticPhase::try_from(&back).unwrap(), q);
        assert!(text.contains("\"M\""));
    }

    #[test]
    fn average_json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(64);
        let q = QuadraticAverage::random(9, 3, &mut rng).unwrap();
        let j = AverageJson::from(&q);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"W_ortho\""));
        let back: AverageJson = serde_json::from_str(&text).unwrap();
        assert_eq!(QuadraticAverage::try_from(&back).unwrap(), q);
    }

    #[test]
    fn spectrum_dump_round_trip() {
        let coeffs = vec![0.5, -0.25, 0.0, 0.125];
        let text = spectrum_dump(2, &coeffs, 0.0);
        let back = parse_spectrum_dump(2, &text).unwrap();
        assert_eq!(back.len(), 4);
        assert_eq!(back[1], (PointF2::from_u64(2, 1), -0.25));
    }
}
