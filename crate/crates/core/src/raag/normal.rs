use serde::{Deserialize, Serialize};

use super::graph::{DefiningGraph, Gen};
use super::word::{spell_powers, Letter, Word};
use crate::error::{Error, Result};

/// A maximal power `x^e` inside a word. Its identity within a word is its
/// index in [`NormalWord::syllables`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub generator: Gen,
    pub exponent: i32,
}

impl Syllable {
    pub fn new(generator: Gen, exponent: i32) -> Self {
        Syllable { generator, exponent }
    }

    pub fn len(self) -> usize {
        self.exponent.unsigned_abs() as usize
    }
}

/// A word to which none of the moves (1) or (2) can be applied, even after
/// commuting syllables past each other. Such words are geodesic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalWord {
    syllables: Vec<Syllable>,
}

impl NormalWord {
    pub fn empty() -> Self {
        NormalWord::default()
    }

    /// Checks normality and wraps the syllables unchanged (no reordering).
    pub fn from_syllables(syllables: Vec<Syllable>, graph: &DefiningGraph) -> Result<Self> {
        if let Some(s) = syllables.iter().find(|s| !graph.contains(s.generator)) {
            return Err(Error::UnknownGenerator(s.generator.to_string()));
        }
        if !is_normal(&syllables, graph) {
            return Err(Error::contract("syllable sequence is not normal"));
        }
        Ok(NormalWord { syllables })
    }

    /// Parses and normalizes.
    pub fn parse(text: &str, graph: &DefiningGraph) -> Result<Self> {
        normalize(&Word::parse(text, graph)?, graph)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn into_syllables(self) -> Vec<Syllable> {
        self.syllables
    }

    /// Letter length, equal to the word length of the element.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.len()).sum()
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn to_word(&self) -> Word {
        self.syllables
            .iter()
            .flat_map(|s| Word::power(s.generator, s.exponent).letters)
            .collect()
    }

    /// The inverse element. Reversal preserves normality but not the
    /// canonical choice; use [`canonicalize`] where that matters.
    pub fn inverse(&self) -> NormalWord {
        NormalWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
        }
    }

    /// Largest absolute exponent, 0 for the identity.
    pub fn max_exponent(&self) -> u32 {
        self.syllables
            .iter()
            .map(|s| s.exponent.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Shortlex order: length first, then syllables compared by generator,
    /// positive before negative, then by absolute exponent.
    pub fn cmp_shortlex(&self, other: &NormalWord) -> std::cmp::Ordering {
        let key = |s: &Syllable| (s.generator, s.exponent < 0, s.exponent.unsigned_abs());
        self.len()
            .cmp(&other.len())
            .then_with(|| self.syllables.iter().map(key).cmp(other.syllables.iter().map(key)))
    }

    pub fn spell(&self, graph: &DefiningGraph) -> String {
        spell_powers(self.syllables.iter().map(|s| (s.generator, s.exponent)), graph)
    }
}

/// `true` iff no syllable has exponent zero and no two syllables with the
/// same generator are separated only by syllables commuting with it.
pub fn is_normal(syllables: &[Syllable], graph: &DefiningGraph) -> bool {
    for (i, s) in syllables.iter().enumerate() {
        if s.exponent == 0 {
            return false;
        }
        for t in &syllables[i + 1..] {
            if t.generator == s.generator {
                return false;
            }
            if !graph.commute(s.generator, t.generator) {
                break;
            }
        }
    }
    true
}

/// Inserts `x^e` at the right end of a normal syllable list, cancelling or
/// merging through commuting syllables. Keeps the list normal.
pub(crate) fn push_syllable(syllables: &mut Vec<Syllable>, x: Gen, e: i32, graph: &DefiningGraph) {
    if e == 0 {
        return;
    }
    for k in (0..syllables.len()).rev() {
        let g = syllables[k].generator;
        if g == x {
            syllables[k].exponent += e;
            if syllables[k].exponent == 0 {
                syllables.remove(k);
            }
            return;
        }
        if !graph.adjacent(g, x) {
            break;
        }
    }
    syllables.push(Syllable::new(x, e));
}

/// Brings `w` to its canonical normal form: the lexicographically least
/// element of its Min class, generators compared by declaration order.
pub fn normalize(w: &Word, graph: &DefiningGraph) -> Result<NormalWord> {
    w.check(graph)?;
    let mut syllables = Vec::new();
    for l in &w.letters {
        push_syllable(&mut syllables, l.generator, l.sign(), graph);
    }
    Ok(canonicalize_raw(syllables, graph))
}

/// Normal form of a product of syllables that are each valid over `graph`.
pub(crate) fn normalize_syllables(
    parts: impl IntoIterator<Item = Syllable>,
    graph: &DefiningGraph,
) -> NormalWord {
    let mut syllables = Vec::new();
    for s in parts {
        push_syllable(&mut syllables, s.generator, s.exponent, graph);
    }
    canonicalize_raw(syllables, graph)
}

/// Product of two normal words, in canonical form.
pub fn multiply(u: &NormalWord, v: &NormalWord, graph: &DefiningGraph) -> NormalWord {
    normalize_syllables(u.syllables.iter().chain(&v.syllables).copied(), graph)
}

/// Reorders a normal word to the canonical representative of its Min class.
pub fn canonicalize(w: &NormalWord, graph: &DefiningGraph) -> NormalWord {
    canonicalize_raw(w.syllables.clone(), graph)
}

fn canonicalize_raw(syllables: Vec<Syllable>, graph: &DefiningGraph) -> NormalWord {
    let n = syllables.len();
    if n <= 1 {
        return NormalWord { syllables };
    }
    // Kahn's algorithm on the dependence DAG, always emitting the available
    // syllable with the smallest generator. Available syllables have pairwise
    // distinct generators, so the choice is unique.
    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if depends(syllables[i].generator, syllables[j].generator, graph) {
                succ[i].push(j);
                indegree[j] += 1;
            }
        }
    }
    let mut available: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while !available.is_empty() {
        let (pos, &i) = available
            .iter()
            .enumerate()
            .min_by_key(|&(_, &i)| syllables[i].generator)
            .expect("nonempty");
        available.swap_remove(pos);
        out.push(syllables[i]);
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                available.push(j);
            }
        }
    }
    NormalWord { syllables: out }
}

#[inline]
pub(crate) fn depends(u: Gen, v: Gen, graph: &DefiningGraph) -> bool {
    !graph.adjacent(u, v)
}

/// All members of Min(σ) for the element represented by `w`, sorted.
///
/// The class can be factorially large; `budget` caps the number of words
/// produced.
pub fn min_class(w: &Word, graph: &DefiningGraph, budget: usize) -> Result<Vec<NormalWord>> {
    let normal = normalize(w, graph)?;
    min_class_of(&normal, graph, budget)
}

pub fn min_class_of(w: &NormalWord, graph: &DefiningGraph, budget: usize) -> Result<Vec<NormalWord>> {
    let syl = &w.syllables;
    let n = syl.len();
    let mut preds = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if depends(syl[i].generator, syl[j].generator, graph) {
                preds[j] += 1;
            }
        }
    }
    struct Walk<'a> {
        syl: &'a [Syllable],
        graph: &'a DefiningGraph,
        preds: Vec<usize>,
        used: Vec<bool>,
        current: Vec<Syllable>,
        out: Vec<NormalWord>,
        budget: usize,
    }
    impl Walk<'_> {
        fn go(&mut self) -> Result<()> {
            let n = self.syl.len();
            if self.current.len() == n {
                if self.out.len() == self.budget {
                    return Err(Error::Budget {
                        what: "Min-class",
                        limit: self.budget,
                        partial: self.out.len(),
                    });
                }
                self.out.push(NormalWord {
                    syllables: self.current.clone(),
                });
                return Ok(());
            }
            for i in 0..n {
                if self.used[i] || self.preds[i] != 0 {
                    continue;
                }
                self.used[i] = true;
                self.current.push(self.syl[i]);
                let gi = self.syl[i].generator;
                for j in i + 1..n {
                    if depends(gi, self.syl[j].generator, self.graph) {
                        self.preds[j] -= 1;
                    }
                }
                let r = self.go();
                for j in i + 1..n {
                    if depends(gi, self.syl[j].generator, self.graph) {
                        self.preds[j] += 1;
                    }
                }
                self.current.pop();
                self.used[i] = false;
                r?;
            }
            Ok(())
        }
    }
    let mut walk = Walk {
        syl,
        graph,
        preds,
        used: vec![false; n],
        current: Vec::with_capacity(n),
        out: Vec::new(),
        budget,
    };
    walk.go()?;
    let mut out = walk.out;
    out.sort();
    Ok(out)
}

/// Incremental canonical-form builder used by enumeration.
///
/// Appending a letter succeeds only when the result is again a canonical
/// normal word; canonical normal words are closed under taking letter
/// prefixes, so a depth-first walk over successful appends visits every
/// canonical word exactly once.
#[derive(Clone, Debug, Default)]
pub(crate) struct CanonicalBuilder {
    syllables: Vec<Syllable>,
    len: usize,
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Undo {
    Extended,
    Pushed,
}

impl CanonicalBuilder {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn try_push(&mut self, letter: Letter, graph: &DefiningGraph) -> Option<Undo> {
        let x = letter.generator;
        let e = letter.sign();
        if let Some(last) = self.syllables.last_mut() {
            if last.generator == x {
                if last.exponent.signum() != e {
                    return None;
                }
                last.exponent += e;
                self.len += 1;
                return Some(Undo::Extended);
            }
        }
        for s in self.syllables.iter().rev() {
            let g = s.generator;
            if g == x {
                return None;
            }
            if !graph.adjacent(g, x) {
                break;
            }
            if g > x {
                return None;
            }
        }
        self.syllables.push(Syllable::new(x, e));
        self.len += 1;
        Some(Undo::Pushed)
    }

    pub fn undo(&mut self, undo: Undo) {
        match undo {
            Undo::Pushed => {
                self.syllables.pop();
            }
            Undo::Extended => {
                let last = self.syllables.last_mut().expect("nonempty");
                last.exponent -= last.exponent.signum();
            }
        }
        self.len -= 1;
    }

    pub fn snapshot(&self) -> NormalWord {
        NormalWord {
            syllables: self.syllables.clone(),
        }
    }
}
