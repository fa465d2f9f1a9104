use serde::{Deserialize, Serialize};

use super::family::Section8Family;
use crate::error::{Error, Result};

/// Window lengths for the family: `b` for filling blocks, `L` for the
/// syllable order, `ℓ'` and `ℓ` for the short-filling hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyConstants {
    pub b: u64,
    pub d: u64,
    #[serde(rename = "L")]
    pub big_l: u64,
    pub ell_prime: u64,
    pub ell: u64,
}

pub fn constants(fam: &Section8Family) -> Result<FamilyConstants> {
    let n = u64::from(fam.n());
    let big_n = u64::from(fam.big_n());
    let d = fam
        .graph()
        .complement_diameter()
        .ok_or_else(|| Error::Internal("complement graph is disconnected".into()))? as u64;
    let b = 3 * big_n * n + 4 * big_n;
    let big_l = d * b;
    let ell_prime = b + 4 * big_l * big_n + 1;
    Ok(FamilyConstants {
        b,
        d,
        big_l,
        ell_prime,
        ell: ell_prime + 2 * big_n,
    })
}
