use std::fmt;

use crate::error::{Error, Result};
use crate::raag::{DefiningGraph, Gen, NormalWord, Syllable};
use crate::surface::SurfaceModel;

/// The genus-`n+1` family: generators `f_1..f_n` (supported on `X_i`) and
/// `g_1..g_n` (supported on `Y_i`), indices mod `n`, with subgroup
/// generators `w_1..w_N`.
#[derive(Clone, Debug)]
pub struct Section8Family {
    n: u32,
    big_n: u32,
    graph: DefiningGraph,
    model: SurfaceModel,
    generators: Vec<NormalWord>,
}

impl Section8Family {
    pub fn new(n: u32, big_n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::input("the family needs n >= 2"));
        }
        if big_n < 1 {
            return Err(Error::input("the family needs N >= 1"));
        }
        if n > 30 {
            return Err(Error::input("n > 30 is not supported"));
        }
        let labels: Vec<String> = (1..=n)
            .map(|i| format!("f{i}"))
            .chain((1..=n).map(|i| format!("g{i}")))
            .collect();
        let mut edges = Vec::new();
        for a in 0..labels.len() {
            for b in a + 1..labels.len() {
                let (a, b) = (Gen(a as u32), Gen(b as u32));
                if commutes(n, a, b) {
                    edges.push((labels[a.index()].clone(), labels[b.index()].clone()));
                }
            }
        }
        let graph = DefiningGraph::new(labels, edges)?;
        let model = SurfaceModel::full(graph.clone(), true)?;
        let mut fam = Section8Family {
            n,
            big_n,
            graph,
            model,
            generators: Vec::new(),
        };
        fam.generators = (1..=big_n as i32)
            .map(|i| NormalWord::from_syllables(fam.expand(&[Symbol::B(i), Symbol::M(i, false), Symbol::E(i)]), &fam.graph))
            .collect::<Result<_>>()?;
        Ok(fam)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of subgroup generators.
    pub fn big_n(&self) -> u32 {
        self.big_n
    }

    pub fn genus(&self) -> u32 {
        self.n + 1
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    /// `w_1..w_N` in their `B M E` spelling.
    pub fn generators(&self) -> &[NormalWord] {
        &self.generators
    }

    /// `f_i`, index taken mod `n`.
    pub fn f(&self, i: i64) -> Gen {
        Gen(self.residue(i - 1))
    }

    /// `g_i`, index taken mod `n`.
    pub fn g(&self, i: i64) -> Gen {
        Gen(self.n + self.residue(i - 1))
    }

    pub(crate) fn residue(&self, i: i64) -> u32 {
        i.rem_euclid(i64::from(self.n)) as u32
    }

    /// Syllables spelling a product of `B`, `M`, `E` symbols.
    pub fn expand(&self, symbols: &[Symbol]) -> Vec<Syllable> {
        let n = i64::from(self.n);
        let mut out = Vec::new();
        for &s in symbols {
            match s {
                Symbol::B(k) => out.extend((1..n).map(|j| Syllable::new(self.g(j), k))),
                Symbol::M(i, false) => {
                    out.push(Syllable::new(self.f(1), i));
                    out.push(Syllable::new(self.g(n), i));
                }
                Symbol::M(i, true) => {
                    out.push(Syllable::new(self.g(n), -i));
                    out.push(Syllable::new(self.f(1), -i));
                }
                Symbol::E(k) => out.extend((2..=n).map(|j| Syllable::new(self.f(j), k))),
            }
        }
        out
    }

    /// Every freely reduced word over `w_1^±..w_N^±` of length at most
    /// `max_len`, shortest first.
    pub fn reduced_words(&self, max_len: usize) -> Vec<HWord> {
        let letters: Vec<HLetter> = (1..=self.big_n)
            .flat_map(|i| [HLetter::new(i, true), HLetter::new(i, false)])
            .collect();
        let mut out = vec![HWord::default()];
        let mut start = 0;
        for _ in 0..max_len {
            let end = out.len();
            for k in start..end {
                for &l in &letters {
                    if out[k].0.last().is_some_and(|&p| p == l.inverse()) {
                        continue;
                    }
                    let mut w = out[k].clone();
                    w.0.push(l);
                    out.push(w);
                }
            }
            start = end;
        }
        out
    }
}

/// Non-edges of the coincidence graph are exactly `{f_i, g_{i-1}}` and
/// `{f_i, g_i}`.
fn commutes(n: u32, a: Gen, b: Gen) -> bool {
    let (a, b) = (a.0, b.0);
    match (a < n, b < n) {
        (true, true) | (false, false) => true,
        (true, false) => !f_meets_g(n, a, b - n),
        (false, true) => !f_meets_g(n, b, a - n),
    }
}

/// `f_{i+1}` and `g_{j+1}` fail to commute iff `j ∈ {i-1, i}` mod `n`.
pub(crate) fn f_meets_g(n: u32, i: u32, j: u32) -> bool {
    j == i || (j + 1) % n == i
}

/// A block of the `B M E` spelling; `M(i, true)` is `M_i⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    B(i32),
    M(i32, bool),
    E(i32),
}

/// `w_index` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HLetter {
    pub index: u32,
    pub positive: bool,
}

impl HLetter {
    pub fn new(index: u32, positive: bool) -> Self {
        HLetter { index, positive }
    }

    pub fn inverse(self) -> Self {
        HLetter::new(self.index, !self.positive)
    }
}

/// A word in the subgroup generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HWord(pub Vec<HLetter>);

impl HWord {
    /// Parses `"w1 w2^-1 w1^2"`; `ε` is the empty word.
    pub fn parse(text: &str, fam: &Section8Family) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "ε" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((name, e)) => (
                    name,
                    e.parse::<i32>()
                        .map_err(|_| Error::input(format!("bad exponent in `{token}`")))?,
                ),
                None => (token, 1),
            };
            let index: u32 = name
                .strip_prefix('w')
                .and_then(|i| i.parse().ok())
                .ok_or_else(|| Error::input(format!("expected a token like `w1`, got `{token}`")))?;
            if index == 0 || index > fam.big_n {
                return Err(Error::input(format!("generator w{index} is not in w1..w{}", fam.big_n)));
            }
            if exp == 0 {
                return Err(Error::input(format!("zero exponent in `{token}`")));
            }
            let l = HLetter::new(index, exp > 0);
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(HWord(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[1] != p[0].inverse())
    }

    pub fn power(l: HLetter, p: usize) -> Self {
        HWord(vec![l; p])
    }
}

impl fmt::Display for HWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let mut first = true;
        for run in self.0.chunk_by(|a, b| a == b) {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let e = run.len() as i64 * if run[0].positive { 1 } else { -1 };
            write!(f, "w{}", run[0].index)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
