use super::family::{HWord, Section8Family, Symbol};
use crate::error::{Error, Result};
use crate::raag::NormalWord;

/// The block spelling of `h`: each `w_i` becomes `B_i M_i E_i`, each
/// `w_i⁻¹` becomes `E_{-i} M_i⁻¹ B_{-i}`, and the two `E` (or two `B`)
/// blocks meeting at a boundary merge into one.
pub fn bme_symbols(h: &HWord) -> Result<Vec<Symbol>> {
    if !h.is_reduced() {
        return Err(Error::contract(format!("`{h}` is not freely reduced")));
    }
    let mut out: Vec<Symbol> = Vec::with_capacity(3 * h.len());
    for l in &h.0 {
        let i = l.index as i32;
        let pieces = if l.positive {
            [Symbol::B(i), Symbol::M(i, false), Symbol::E(i)]
        } else {
            [Symbol::E(-i), Symbol::M(i, true), Symbol::B(-i)]
        };
        for p in pieces {
            match (out.last_mut(), p) {
                (Some(Symbol::E(a)), Symbol::E(b)) | (Some(Symbol::B(a)), Symbol::B(b)) => {
                    *a += b;
                    if *a == 0 {
                        return Err(Error::Internal(format!("blocks cancelled in `{h}`")));
                    }
                }
                _ => out.push(p),
            }
        }
    }
    Ok(out)
}

/// Normal form of `h` spelled in `B`, `M`, `E` blocks.
pub fn bme_normal_form(h: &HWord, fam: &Section8Family) -> Result<NormalWord> {
    let syllables = fam.expand(&bme_symbols(h)?);
    NormalWord::from_syllables(syllables, fam.graph())
        .map_err(|e| Error::Internal(format!("block spelling of `{h}` is not normal: {e}")))
}

/// The letter-by-letter expansion of `h` in the generators of `Γ`.
pub fn naive_expansion(h: &HWord, fam: &Section8Family) -> crate::raag::Word {
    let mut w = crate::raag::Word::empty();
    for l in &h.0 {
        let g = &fam.generators()[l.index as usize - 1];
        let piece = if l.positive { g.to_word() } else { g.inverse().to_word() };
        w = w.concat(&piece);
    }
    w
}
