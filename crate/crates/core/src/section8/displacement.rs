use num_rational::Rational64;
use serde::Serialize;

use super::family::{HWord, Section8Family};
use super::span::span_of;
use crate::error::{Error, Result};

/// Upper bound on `d(α, hα)` in the curve graph, from a split of `h` into
/// `m` pieces of length at most `n/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplacementBound {
    pub h: String,
    pub length: usize,
    pub m: usize,
    pub bound: usize,
    /// `|h|·4/(g-1) + 2`.
    #[serde(serialize_with = "ser_ratio")]
    pub linear: Rational64,
    pub span_proper: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub fn displacement_upper(h: &HWord, fam: &Section8Family) -> Result<DisplacementBound> {
    if !h.is_reduced() {
        return Err(Error::contract(format!("`{h}` is not freely reduced")));
    }
    let n = fam.n() as usize;
    let len = h.len();
    // largest integer below 2|h|/n + 1
    let m = (2 * len).div_ceil(n);
    let piece = n / 2;
    let pieces = len.div_ceil(piece);
    if pieces > m {
        return Err(Error::contract(format!(
            "`{h}` has length {len}; with n = {n} it needs {pieces} pieces of length ≤ {piece}, more than m = {m}"
        )));
    }
    let mut span_proper = true;
    for chunk in h.0.chunks(piece.max(1)) {
        let s = span_of(&HWord(chunk.to_vec()), fam)?;
        if !s.is_proper(fam.n()) {
            span_proper = false;
        }
    }
    if !span_proper {
        return Err(Error::Internal(format!("a piece of `{h}` moves α to a filling span")));
    }
    let linear = Rational64::new(4 * len as i64, n as i64) + 2;
    let bound = 2 * m;
    if Rational64::from_integer(bound as i64) > linear {
        return Err(Error::Internal(format!("bound {bound} exceeds {linear} for `{h}`")));
    }
    Ok(DisplacementBound {
        h: h.to_string(),
        length: len,
        m,
        bound,
        linear,
        span_proper,
    })
}
