//! Matrix and vector serialization.
//!
//! JSON schema: `{"semiring":"maxtimes"|"maxplus","rows":n,"cols":m,"data":[[...]]}`.
//! The max-times zero is the number `0`, the max-plus zero the string
//! `"-inf"`. Exact backends accept and emit `"p/q"` strings so that
//! parse(print(M)) round-trips exactly.
//!
//! CSV fallback: first line `semiring,maxtimes|maxplus`, then one
//! comma-separated row per line, with the `-inf` token for the max-plus zero.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{FromPrimitive, One, Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::scalar::{MaxPlusF64, MaxPlusRat, MaxTimesRat, Scalar};

/// Semiring view used for encoding on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semiring {
    MaxTimes,
    MaxPlus,
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semiring::MaxTimes => write!(f, "maxtimes"),
            Semiring::MaxPlus => write!(f, "maxplus"),
        }
    }
}

impl FromStr for Semiring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maxtimes" => Ok(Semiring::MaxTimes),
            "maxplus" => Ok(Semiring::MaxPlus),
            other => Err(Error::Parse(format!("unknown semiring {other:?}"))),
        }
    }
}

/// One parsed entry, before the backend is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum Entry {
    NegInf,
    Num(f64),
    Rat(BigRational),
}

impl Entry {
    fn parse_token(tok: &str) -> Result<Entry> {
        let tok = tok.trim();
        if tok == "-inf" {
            return Ok(Entry::NegInf);
        }
        if let Some((p, q)) = tok.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad_token(tok))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad_token(tok))?;
            if q == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {tok:?}")));
            }
            return Ok(Entry::Rat(BigRational::new(p, q)));
        }
        if let Ok(p) = BigInt::from_str(tok) {
            return Ok(Entry::Rat(BigRational::from_integer(p)));
        }
        let v: f64 = tok.parse().map_err(|_| bad_token(tok))?;
        if v.is_nan() {
            return Err(Error::Parse("NaN entry".into()));
        }
        Ok(Entry::Num(v))
    }

    fn from_json(v: &Value) -> Result<Entry> {
        match v {
            Value::Number(n) => {
                let v = n.as_f64().ok_or_else(|| bad_token(&n.to_string()))?;
                if v.is_nan() {
                    return Err(Error::Parse("NaN entry".into()));
                }
                if n.is_i64() {
                    return Ok(Entry::Rat(BigRational::from_integer(BigInt::from(
                        n.as_i64().unwrap(),
                    ))));
                }
                Ok(Entry::Num(v))
            }
            Value::String(s) => Entry::parse_token(s),
            other => Err(bad_token(&other.to_string())),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Entry::NegInf => Value::String("-inf".into()),
            Entry::Num(v) => json!(v),
            Entry::Rat(r) => rat_to_json(r),
        }
    }

    pub fn to_token(&self) -> String {
        match self {
            Entry::NegInf => "-inf".into(),
            Entry::Num(v) => format!("{v}"),
            Entry::Rat(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn bad_token(tok: &str) -> Error {
    Error::Parse(format!("invalid entry {tok:?}"))
}

fn rat_to_json(r: &BigRational) -> Value {
    if r.denom().is_one() {
        if let Some(i) = r.numer().to_i64() {
            return json!(i);
        }
    }
    if r.denom().is_one() {
        Value::String(format!("{}", r.numer()))
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

/// A parsed matrix, not yet bound to a scalar backend.
#[derive(Debug, Clone, PartialEq)]
pub struct Raw {
    pub semiring: Semiring,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Entry>>,
}

impl Raw {
    /// Parse JSON or CSV, deciding by the leading character.
    pub fn parse(text: &str) -> Result<Raw> {
        if text.trim_start().starts_with('{') {
            Raw::parse_json(text)
        } else {
            Raw::parse_csv(text)
        }
    }

    pub fn parse_json(text: &str) -> Result<Raw> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("top-level JSON object expected".into()))?;
        let semiring: Semiring = obj
            .get("semiring")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing \"semiring\"".into()))?
            .parse()?;
        let rows = get_dim(obj, "rows")?;
        let cols = get_dim(obj, "cols")?;
        let data = obj
            .get("data")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"data\" array".into()))?;
        if data.len() != rows {
            return Err(Error::Parse(format!(
                "declared {rows} rows, data has {}",
                data.len()
            )));
        }
        let mut parsed = Vec::with_capacity(rows);
        for row in data {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse("data rows must be arrays".into()))?;
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "declared {cols} cols, a row has {}",
                    row.len()
                )));
            }
            parsed.push(row.iter().map(Entry::from_json).collect::<Result<Vec<_>>>()?);
        }
        Ok(Raw { semiring, rows, cols, data: parsed })
    }

    pub fn parse_csv(text: &str) -> Result<Raw> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty CSV input".into()))?;
        let mut hdr = header.split(',').map(str::trim);
        let semiring = match (hdr.next(), hdr.next(), hdr.next()) {
            (Some("semiring"), Some(s), None) => s.parse()?,
            _ => {
                return Err(Error::Parse(
                    "CSV header must be \"semiring,maxtimes\" or \"semiring,maxplus\"".into(),
                ))
            }
        };
        let mut data: Vec<Vec<Entry>> = Vec::new();
        for line in lines {
            let row = line
                .split(',')
                .map(Entry::parse_token)
                .collect::<Result<Vec<_>>>()?;
            if let Some(first) = data.first() {
                if row.len() != first.len() {
                    return Err(Error::Parse("unequal CSV row lengths".into()));
                }
            }
            data.push(row);
        }
        if data.is_empty() {
            return Err(Error::Parse("CSV has no data rows".into()));
        }
        let (rows, cols) = (data.len(), data[0].len());
        Ok(Raw { semiring, rows, cols, data })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "semiring": self.semiring.to_string(),
            "rows": self.rows,
            "cols": self.cols,
            "data": self.data.iter()
                .map(|row| Value::Array(row.iter().map(Entry::to_json).collect()))
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = format!("semiring,{}\n", self.semiring);
        for row in &self.data {
            let toks: Vec<String> = row.iter().map(Entry::to_token).collect();
            out.push_str(&toks.join(","));
            out.push('\n');
        }
        out
    }

    /// Bind to a scalar backend.
    pub fn to_matrix<S: IoScalar>(&self) -> Result<Matrix<S>> {
        let mut rows = Vec::with_capacity(self.rows);
        for row in &self.data {
            rows.push(
                row.iter()
                    .map(|e| S::from_entry(e, self.semiring))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Matrix::from_rows(rows))
    }

    /// Interpret an n x 1 or 1 x n matrix as a vector.
    pub fn to_vector<S: IoScalar>(&self) -> Result<Vector<S>> {
        let m = self.to_matrix::<S>()?;
        if m.ncols() == 1 {
            Ok(m.col(0))
        } else if m.nrows() == 1 {
            Ok(m.row(0))
        } else {
            Err(Error::Parse(format!(
                "expected a vector, got a {}x{} matrix",
                m.nrows(), m.ncols()
            )))
        }
    }

    pub fn from_matrix<S: IoScalar>(m: &Matrix<S>, semiring: Semiring) -> Raw {
        let data = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)].to_entry(semiring)).collect())
            .collect();
        Raw { semiring, rows: m.nrows(), cols: m.ncols(), data }
    }

    pub fn from_vector<S: IoScalar>(v: &Vector<S>, semiring: Semiring) -> Raw {
        let data = v.iter().map(|x| vec![x.to_entry(semiring)]).collect();
        Raw { semiring, rows: v.len(), cols: 1, data }
    }
}

fn get_dim(obj: &serde_json::Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| Error::Parse(format!("missing or invalid \"{key}\"")))
}

/// Scalars that know how to cross the wire in either semiring view.
pub trait IoScalar: Scalar {
    fn from_entry(e: &Entry, view: Semiring) -> Result<Self>;
    fn to_entry(&self, view: Semiring) -> Entry;
}

fn entry_f64(e: &Entry) -> Option<f64> {
    match e {
        Entry::NegInf => None,
        Entry::Num(v) => Some(*v),
        Entry::Rat(r) => Some(rat_f64(r)),
    }
}

fn rat_f64(r: &BigRational) -> f64 {
    let p = r.numer().to_f64().unwrap_or(f64::MAX);
    let q = r.denom().to_f64().unwrap_or(f64::MAX);
    p / q
}

impl IoScalar for MaxPlusF64 {
    fn from_entry(e: &Entry, view: Semiring) -> Result<Self> {
        match view {
            Semiring::MaxTimes => match entry_f64(e) {
                None => Err(Error::Parse("\"-inf\" is not a max-times entry".into())),
                Some(v) if v < 0.0 => {
                    Err(Error::Parse(format!("negative max-times entry {v}")))
                }
                Some(v) => Ok(MaxPlusF64::from_maxtimes(v)),
            },
            Semiring::MaxPlus => match entry_f64(e) {
                None => Ok(MaxPlusF64::zero()),
                Some(v) => Ok(MaxPlusF64(v)),
            },
        }
    }

    fn to_entry(&self, view: Semiring) -> Entry {
        match view {
            Semiring::MaxTimes => Entry::Num(self.to_maxtimes()),
            Semiring::MaxPlus => {
                if self.is_zero() {
                    Entry::NegInf
                } else {
                    Entry::Num(self.0)
                }
            }
        }
    }
}

fn entry_rat(e: &Entry) -> Result<Option<BigRational>> {
    match e {
        Entry::NegInf => Ok(None),
        Entry::Rat(r) => Ok(Some(r.clone())),
        Entry::Num(v) => BigRational::from_f64(*v)
            .map(Some)
            .ok_or_else(|| Error::Parse(format!("non-finite entry {v}"))),
    }
}

impl IoScalar for MaxTimesRat {
    fn from_entry(e: &Entry, view: Semiring) -> Result<Self> {
        if view != Semiring::MaxTimes {
            return Err(Error::Parse(
                "exact max-times backend requires maxtimes input".into(),
            ));
        }
        match entry_rat(e)? {
            None => Err(Error::Parse("\"-inf\" is not a max-times entry".into())),
            Some(r) if r.is_negative() => {
                Err(Error::Parse(format!("negative max-times entry {r}")))
            }
            Some(r) => Ok(MaxTimesRat(r)),
        }
    }

    fn to_entry(&self, view: Semiring) -> Entry {
        match view {
            Semiring::MaxTimes => Entry::Rat(self.0.clone()),
            Semiring::MaxPlus => {
                if self.is_zero() {
                    Entry::NegInf
                } else {
                    Entry::Num(self.log_value())
                }
            }
        }
    }
}

impl IoScalar for MaxPlusRat {
    fn from_entry(e: &Entry, view: Semiring) -> Result<Self> {
        if view != Semiring::MaxPlus {
            return Err(Error::Parse(
                "exact max-plus backend requires maxplus input".into(),
            ));
        }
        Ok(MaxPlusRat(entry_rat(e)?))
    }

    fn to_entry(&self, view: Semiring) -> Entry {
        match view {
            Semiring::MaxPlus => match &self.0 {
                None => Entry::NegInf,
                Some(r) => Entry::Rat(r.clone()),
            },
            Semiring::MaxTimes => Entry::Num(self.log_value().exp()),
        }
    }
}
