use super::graph::DefiningGraph;
use super::normal::{normalize, normalize_syllables, NormalWord, Syllable};
use super::order::order_of;
use super::word::Word;
use crate::error::Result;

/// Writes `w` as `conjugator · core · conjugator⁻¹` with `core` cyclically
/// reduced: no generator has both a minimal and a distinct maximal syllable.
///
/// Each step conjugates away one such pair, dropping the syllable count.
pub fn cyclically_reduce(w: &Word, graph: &DefiningGraph) -> Result<(NormalWord, NormalWord)> {
    let core = normalize(w, graph)?;
    Ok(cyclically_reduce_normal(&core, graph))
}

pub fn cyclically_reduce_normal(w: &NormalWord, graph: &DefiningGraph) -> (NormalWord, NormalWord) {
    let mut core = w.clone();
    let mut conjugator: Vec<Syllable> = Vec::new();
    while let Some((i, j)) = find_pair(&core, graph) {
        let syl = core.syllables();
        let step = syl[i];
        let merged = Syllable::new(step.generator, step.exponent + syl[j].exponent);
        let rest = syl
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, s)| *s)
            .chain(std::iter::once(merged).filter(|s| s.exponent != 0));
        core = normalize_syllables(rest, graph);
        conjugator.push(step);
    }
    (normalize_syllables(conjugator, graph), core)
}

fn find_pair(w: &NormalWord, graph: &DefiningGraph) -> Option<(usize, usize)> {
    if w.syllable_count() < 2 {
        return None;
    }
    let order = order_of(w.syllables(), graph);
    let syl = w.syllables();
    let maximal = order.maximal();
    for i in order.minimal() {
        if let Some(&j) = maximal
            .iter()
            .find(|&&j| j != i && syl[j].generator == syl[i].generator)
        {
            return Some((i, j));
        }
    }
    None
}
