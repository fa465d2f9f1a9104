//! The symbolic surface: which sets of generator supports fill.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raag::{
    cyclically_reduce_normal, multiply, normalize_syllables, DefiningGraph, Gen, GraphFile, NormalWord,
};

pub type GenSet = BTreeSet<Gen>;

/// Coincidence graph together with the minimal filling sets of generator
/// supports. A set fills iff it contains one of the minimal sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelFile", into = "ModelFile")]
pub struct SurfaceModel {
    graph: DefiningGraph,
    minimal_filling_sets: Vec<GenSet>,
    admissible: bool,
}

/// JSON form: `{"graph": {...}, "minimal_filling_sets": [[...]], "admissible": true}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub graph: GraphFile,
    pub minimal_filling_sets: Vec<Vec<String>>,
    pub admissible: bool,
}

impl SurfaceModel {
    pub fn new(graph: DefiningGraph, minimal_filling_sets: Vec<GenSet>, admissible: bool) -> Result<Self> {
        for (i, s) in minimal_filling_sets.iter().enumerate() {
            if s.len() < 2 {
                return Err(Error::input(
                    "a filling set needs at least two generators (supports are proper subsurfaces)",
                ));
            }
            if let Some(g) = s.iter().find(|g| !graph.contains(**g)) {
                return Err(Error::UnknownGenerator(g.to_string()));
            }
            for (j, t) in minimal_filling_sets.iter().enumerate() {
                if i != j && s.is_subset(t) {
                    return Err(Error::input("minimal filling sets must form an antichain"));
                }
            }
        }
        Ok(SurfaceModel {
            graph,
            minimal_filling_sets,
            admissible,
        })
    }

    /// The model in which only the full generator set fills.
    pub fn full(graph: DefiningGraph, admissible: bool) -> Result<Self> {
        let all: GenSet = graph.generators().collect();
        Self::new(graph, vec![all], admissible)
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn minimal_filling_sets(&self) -> &[GenSet] {
        &self.minimal_filling_sets
    }

    pub fn admissible(&self) -> bool {
        self.admissible
    }

    pub fn is_filling(&self, set: &GenSet) -> bool {
        self.minimal_filling_sets.iter().any(|m| m.is_subset(set))
    }
}

impl TryFrom<ModelFile> for SurfaceModel {
    type Error = Error;

    fn try_from(file: ModelFile) -> Result<Self> {
        let graph = DefiningGraph::try_from(file.graph)?;
        let sets = file
            .minimal_filling_sets
            .iter()
            .map(|set| set.iter().map(|l| graph.lookup(l)).collect::<Result<GenSet>>())
            .collect::<Result<Vec<_>>>()?;
        SurfaceModel::new(graph, sets, file.admissible)
    }
}

impl From<SurfaceModel> for ModelFile {
    fn from(m: SurfaceModel) -> Self {
        ModelFile {
            minimal_filling_sets: m
                .minimal_filling_sets
                .iter()
                .map(|s| s.iter().map(|g| m.graph.label(*g).to_string()).collect())
                .collect(),
            graph: m.graph.to_file(),
            admissible: m.admissible,
        }
    }
}

/// Generators occurring in the word.
pub fn supports(w: &NormalWord) -> GenSet {
    w.syllables().iter().map(|s| s.generator).collect()
}

/// Whether the cyclic reduction of `w` has filling support.
pub fn fills(w: &NormalWord, model: &SurfaceModel) -> bool {
    let (_, core) = cyclically_reduce_normal(w, model.graph());
    model.is_filling(&supports(&core))
}

/// The translate `φ(prefix)·X_base` of a generator support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolicSubsurface {
    pub prefix: NormalWord,
    pub base: Gen,
}

impl SymbolicSubsurface {
    /// Equality of translates: the same base, and prefixes differing by an
    /// element supported on the star of the base.
    pub fn same_as(&self, other: &SymbolicSubsurface, graph: &DefiningGraph) -> bool {
        if self.base != other.base {
            return false;
        }
        let diff = multiply(&other.prefix.inverse(), &self.prefix, graph);
        diff.syllables()
            .iter()
            .all(|s| graph.commute(s.generator, self.base))
    }
}

/// One translate per syllable: the canonical prefix before it, paired with
/// its generator.
pub fn subs(w: &NormalWord, graph: &DefiningGraph) -> Vec<SymbolicSubsurface> {
    let syl = w.syllables();
    (0..syl.len())
        .map(|i| SymbolicSubsurface {
            prefix: normalize_syllables(syl[..i].iter().copied(), graph),
            base: syl[i].generator,
        })
        .collect()
}

/// Whether two families agree as sets of translates.
pub fn same_family(a: &[SymbolicSubsurface], b: &[SymbolicSubsurface], graph: &DefiningGraph) -> bool {
    let covers = |x: &[SymbolicSubsurface], y: &[SymbolicSubsurface]| {
        x.iter().all(|s| y.iter().any(|t| s.same_as(t, graph)))
    };
    covers(a, b) && covers(b, a)
}

/// An inclusion-minimal run of syllables `start..=end` with filling support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FillingBlock {
    pub start: usize,
    pub end: usize,
}

/// All inclusion-minimal filling syllable ranges, sorted by start (and
/// hence by end).
pub fn find_filling_blocks(w: &NormalWord, model: &SurfaceModel) -> Vec<FillingBlock> {
    let syl = w.syllables();
    let n = syl.len();
    let mut counts = vec![0usize; model.graph().len()];
    let mut window = GenSet::new();
    // reach[i] = least j such that i..=j fills
    let mut reach: Vec<Option<usize>> = vec![None; n];
    let mut j = 0;
    for i in 0..n {
        while j < n && !model.is_filling(&window) {
            let g = syl[j].generator;
            counts[g.index()] += 1;
            window.insert(g);
            j += 1;
        }
        if model.is_filling(&window) {
            reach[i] = Some(j - 1);
        } else {
            break;
        }
        let g = syl[i].generator;
        counts[g.index()] -= 1;
        if counts[g.index()] == 0 {
            window.remove(&g);
        }
    }
    let mut blocks = Vec::new();
    for i in 0..n {
        let Some(end) = reach[i] else { break };
        let next = if i + 1 < n { reach[i + 1] } else { None };
        if next != Some(end) {
            blocks.push(FillingBlock { start: i, end });
        }
    }
    blocks
}

/// Whether every run of `ell` consecutive letters of `w` contains a whole
/// filling block. Vacuously true for words shorter than `ell`.
pub fn check_window_property(w: &NormalWord, ell: usize, model: &SurfaceModel) -> bool {
    let len = w.len();
    if ell == 0 || len < ell {
        return true;
    }
    let mut offset = Vec::with_capacity(w.syllable_count() + 1);
    offset.push(0);
    for s in w.syllables() {
        offset.push(offset.last().unwrap() + s.len());
    }
    let blocks = find_filling_blocks(w, model);
    let mut k = 0;
    for t in 0..=len - ell {
        while k < blocks.len() && offset[blocks[k].start] < t {
            k += 1;
        }
        match blocks.get(k) {
            Some(b) if offset[b.end + 1] <= t + ell => {}
            _ => return false,
        }
    }
    true
}

/// Largest absolute exponent of a syllable.
pub fn max_exponent(w: &NormalWord) -> u32 {
    w.max_exponent()
}
