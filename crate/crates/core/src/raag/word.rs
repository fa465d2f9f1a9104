use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::graph::{DefiningGraph, Gen};
use crate::error::{Error, Result};

/// A standard generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Gen,
    pub positive: bool,
}

impl Letter {
    pub fn new(generator: Gen, positive: bool) -> Self {
        Letter { generator, positive }
    }

    pub fn sign(self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            positive: !self.positive,
        }
    }
}

/// A finite, possibly unreduced, sequence of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    /// Parses `"a b^-2 c"`. The token `ε` (or `1`, or an empty string)
    /// denotes the identity.
    pub fn parse(text: &str, graph: &DefiningGraph) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "ε" || token == "1" {
                continue;
            }
            let (label, exponent) = match token.split_once('^') {
                Some((label, exp)) => {
                    let exp: i64 = exp
                        .parse()
                        .map_err(|_| Error::input(format!("bad exponent in token `{token}`")))?;
                    if exp == 0 {
                        return Err(Error::input(format!("zero exponent in token `{token}`")));
                    }
                    if exp.unsigned_abs() > 1_000_000 {
                        return Err(Error::input(format!("exponent too large in token `{token}`")));
                    }
                    (label, exp)
                }
                None => (token, 1),
            };
            let generator = graph.lookup(label)?;
            let letter = Letter::new(generator, exponent > 0);
            letters.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
        }
        Ok(Word { letters })
    }

    /// The word `g^e` for a single generator.
    pub fn power(generator: Gen, exponent: i32) -> Self {
        let letter = Letter::new(generator, exponent > 0);
        Word {
            letters: vec![letter; exponent.unsigned_abs() as usize],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Reverses the word and inverts every letter.
    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn check(&self, graph: &DefiningGraph) -> Result<()> {
        match self.letters.iter().find(|l| !graph.contains(l.generator)) {
            Some(l) => Err(Error::UnknownGenerator(l.generator.to_string())),
            None => Ok(()),
        }
    }

    /// Text form in the parse syntax, grouping runs of equal letters.
    pub fn spell(&self, graph: &DefiningGraph) -> String {
        let runs = self.letters.chunk_by(|a, b| a == b).map(|run| {
            let exp = run.len() as i32 * run[0].sign();
            (run[0].generator, exp)
        });
        spell_powers(runs, graph)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}

pub(crate) fn spell_powers(powers: impl Iterator<Item = (Gen, i32)>, graph: &DefiningGraph) -> String {
    let mut out = String::new();
    for (g, e) in powers {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(graph.label(g));
        if e != 1 {
            let _ = write!(out, "^{e}");
        }
    }
    if out.is_empty() {
        out.push('ε');
    }
    out
}
