//! Table rows and their CSV / JSON encodings.
//!
//! Numbers are printed with 12 significant digits: fixed-point for
//! `1e-4 <= |v| < 1e12`, lowercase scientific otherwise. Output is UTF-8
//! with LF line endings and is byte-identical for identical inputs.

use std::io::{self, Write};

use entdist_core::ComparisonPoint;
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::value::RawValue;

pub const CSV_HEADER: [&str; 11] = [
    "eta", "lambda", "N", "M", "p_b", "q", "p_star", "p_prime", "p_C", "r", "ln_r",
];

const SIG_DIGITS: usize = 12;

/// One `(eta, lambda, N)` row. `r` and `ln_r` are `+inf` when
/// `eta |lambda|^2 = 0`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct OutputRow {
    pub eta: f64,
    pub lambda: f64,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "M")]
    pub m: u64,
    pub p_b: f64,
    pub q: f64,
    pub p_star: f64,
    pub p_prime: f64,
    #[serde(rename = "p_C")]
    pub p_c: f64,
    #[serde(deserialize_with = "null_as_inf")]
    pub r: f64,
    #[serde(deserialize_with = "null_as_inf")]
    pub ln_r: f64,
}

fn null_as_inf<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

impl From<&ComparisonPoint> for OutputRow {
    fn from(p: &ComparisonPoint) -> Self {
        let (r, ln_r) = p.ratio.map_or((f64::INFINITY, f64::INFINITY), |r| (r.r, r.ln_r));
        OutputRow {
            eta: p.eta,
            lambda: p.lambda,
            n: p.n,
            m: p.m,
            p_b: p.p_b,
            q: p.q,
            p_star: p.p_star,
            p_prime: p.p_prime,
            p_c: p.p_c,
            r,
            ln_r,
        }
    }
}

impl OutputRow {
    /// `r > 1`, i.e. the ratio bound alone already favours ebits.
    pub fn r_exceeds_one(&self) -> bool {
        self.ln_r > 0.0
    }

    fn csv_fields(&self) -> [String; 11] {
        [
            format_number(self.eta),
            format_number(self.lambda),
            self.n.to_string(),
            self.m.to_string(),
            format_number(self.p_b),
            format_number(self.q),
            format_number(self.p_star),
            format_number(self.p_prime),
            format_number(self.p_c),
            format_number(self.r),
            format_number(self.ln_r),
        ]
    }
}

/// Formats with 12 significant digits.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return format!("{:.*}", SIG_DIGITS - 1, 0.0);
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    // Exponent after rounding, so 9.9999999999996 counts as 1e1.
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if v.abs() < 1e-4 || exp >= 12 {
        return sci;
    }
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

fn json_number(v: f64) -> Option<Box<RawValue>> {
    v.is_finite()
        .then(|| RawValue::from_string(format_number(v)).expect("formatted float is valid JSON"))
}

#[derive(Serialize)]
struct JsonRow {
    eta: Option<Box<RawValue>>,
    lambda: Option<Box<RawValue>>,
    #[serde(rename = "N")]
    n: u32,
    #[serde(rename = "M")]
    m: u64,
    p_b: Option<Box<RawValue>>,
    q: Option<Box<RawValue>>,
    p_star: Option<Box<RawValue>>,
    p_prime: Option<Box<RawValue>>,
    #[serde(rename = "p_C")]
    p_c: Option<Box<RawValue>>,
    r: Option<Box<RawValue>>,
    ln_r: Option<Box<RawValue>>,
    r_exceeds_one: bool,
}

impl From<&OutputRow> for JsonRow {
    fn from(r: &OutputRow) -> Self {
        JsonRow {
            eta: json_number(r.eta),
            lambda: json_number(r.lambda),
            n: r.n,
            m: r.m,
            p_b: json_number(r.p_b),
            q: json_number(r.q),
            p_star: json_number(r.p_star),
            p_prime: json_number(r.p_prime),
            p_c: json_number(r.p_c),
            r: json_number(r.r),
            ln_r: json_number(r.ln_r),
            r_exceeds_one: r.r_exceeds_one(),
        }
    }
}

pub fn write_csv<W: Write>(rows: &[OutputRow], out: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.csv_fields())?;
    }
    w.flush()
}

pub fn write_json<W: Write>(rows: &[OutputRow], mut out: W) -> io::Result<()> {
    let json: Vec<JsonRow> = rows.iter().map(JsonRow::from).collect();
    serde_json::to_writer_pretty(&mut out, &json)?;
    out.write_all(b"\n")?;
    out.flush()
}

pub fn parse_csv(text: &str) -> Result<Vec<OutputRow>, csv::Error> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize().collect()
}

pub fn parse_json(text: &str) -> serde_json::Result<Vec<OutputRow>> {
    serde_json::from_str(text)
}
