use rayon::prelude::*;
use serde::Serialize;

use super::family::{HLetter, HWord, Section8Family};
use super::span::{span_of, Surface, SurfaceSet};
use crate::error::{Error, Result};

/// `X̄_k`: the `X_i` with `-k < i < k` and the `Y_j` with `-k < j < k-1`.
pub fn xbar(n: u32, k: u32) -> SurfaceSet {
    let k = i64::from(k);
    let xs = (1 - k..k).map(|i| Surface::X(residue(n, i)));
    let ys = (1 - k..k - 1).map(|j| Surface::Y(residue(n, j)));
    SurfaceSet::from_surfaces(n, xs.chain(ys))
}

/// `Ȳ_k`: the `Y_i` with `-k < i ≤ k` and the `X_j` with `-k+1 < j ≤ k`.
pub fn ybar(n: u32, k: u32) -> SurfaceSet {
    let k = i64::from(k);
    let ys = (1 - k..=k).map(|i| Surface::Y(residue(n, i)));
    let xs = (2 - k..=k).map(|j| Surface::X(residue(n, j)));
    SurfaceSet::from_surfaces(n, ys.chain(xs))
}

fn residue(n: u32, i: i64) -> u32 {
    i.rem_euclid(i64::from(n)) as u32
}

#[derive(Clone, Debug, Serialize)]
pub struct StarViolation {
    pub h: String,
    pub k: u32,
    pub contained_in: Vec<Surface>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StarReport {
    pub checked: usize,
    pub violations: Vec<StarViolation>,
    /// Words whose span is the whole surface.
    pub improper: Vec<String>,
}

impl StarReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.improper.is_empty()
    }
}

/// Checks that `hα` lies in `X̄_k` or `Ȳ_k` for every reduced `h` of length
/// at most `k_max`, with `k = max(|h|, 2)`.
pub fn verify_star(fam: &Section8Family, k_max: u32) -> Result<StarReport> {
    let n = fam.n();
    if 2 * k_max > n {
        return Err(Error::contract(format!(
            "k_max = {k_max} exceeds n/2 = {}; the star sets are no longer proper",
            f64::from(n) / 2.0
        )));
    }
    let words = fam.reduced_words(k_max as usize);
    let results: Vec<(Option<StarViolation>, Option<String>)> = words
        .par_iter()
        .map(|h| {
            let s = span_of(h, fam)?;
            let k = (h.len() as u32).max(2);
            let inside = s.contained_in.is_subset(&xbar(n, k)) || s.contained_in.is_subset(&ybar(n, k));
            let violation = (!inside).then(|| StarViolation {
                h: h.to_string(),
                k,
                contained_in: s.contained_in.surfaces(n),
            });
            let improper = (!s.is_proper(n)).then(|| h.to_string());
            Ok((violation, improper))
        })
        .collect::<Result<_>>()?;
    let mut report = StarReport {
        checked: words.len(),
        ..Default::default()
    };
    for (v, i) in results {
        report.violations.extend(v);
        report.improper.extend(i);
    }
    Ok(report)
}

/// One line of the table of base cases: the computed span of `word·α`
/// against the listed container.
#[derive(Clone, Debug, Serialize)]
pub struct BulletCheck {
    pub word: String,
    pub computed: Vec<Surface>,
    pub listed: Vec<Surface>,
    pub contained: bool,
}

/// The base cases `α`, `vα`, `wα`, `wvα`, `vwα`, `w²α`, `v²α` with
/// `w = w_1` and `v = w_2⁻¹` (or `w_1⁻¹` when `N = 1`, dropping the mixed
/// products). Lines are included only for the `n` they are stated for.
pub fn bullet_table(fam: &Section8Family) -> Result<Vec<BulletCheck>> {
    use Surface::{X, Y};
    let n = fam.n();
    let m = |i: i64| residue(n, i);
    let w = HLetter::new(1, true);
    let v = HLetter::new(fam.big_n().min(2), false);
    let mixed = fam.big_n() >= 2;
    let mut lines: Vec<(Vec<HLetter>, Vec<Surface>)> = vec![
        (vec![], vec![X(0), Y(0)]),
        (vec![v], vec![X(0), Y(0)]),
        (vec![w], vec![Y(0), X(1), Y(1)]),
    ];
    if n >= 3 && mixed {
        lines.push((vec![w, v], vec![Y(m(-1)), X(0), Y(0), X(1), Y(1)]));
        lines.push((vec![v, w], vec![X(0), Y(0), X(1), Y(1), X(2)]));
    }
    if n >= 4 {
        lines.push((vec![w, w], vec![Y(m(-1)), X(0), Y(0), X(1), Y(1), X(2), Y(2)]));
    }
    if n >= 5 {
        lines.push((vec![v, v], vec![X(m(-1)), Y(m(-1)), X(0), Y(0), X(1)]));
    }
    lines
        .into_iter()
        .map(|(letters, listed)| {
            let h = HWord(letters);
            let s = span_of(&h, fam)?;
            let listed_set = SurfaceSet::from_surfaces(n, listed.iter().copied());
            Ok(BulletCheck {
                word: h.to_string(),
                computed: s.contained_in.surfaces(n),
                contained: s.contained_in.is_subset(&listed_set),
                listed: listed_set.surfaces(n),
            })
        })
        .collect()
}

/// Span of `w_index^p α`.
pub fn power_span_proper(fam: &Section8Family, index: u32, p: usize) -> Result<bool> {
    let h = HWord::power(HLetter::new(index, true), p);
    Ok(span_of(&h, fam)?.is_proper(fam.n()))
}
