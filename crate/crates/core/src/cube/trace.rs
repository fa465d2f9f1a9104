use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::complex::{LabeledCubeComplex, SubgroupCore};
use crate::error::{Error, Result};
use crate::raag::{normalize, CanonicalBuilder, DefiningGraph, Letter, NormalWord, Word};

/// Deterministic successor table: for each vertex and letter, the vertex
/// reached by reading that letter, if the edge exists.
#[derive(Clone, Debug)]
pub struct Tracer {
    stride: usize,
    next: Vec<Option<usize>>,
    basepoint: usize,
}

impl Tracer {
    pub fn new(complex: &LabeledCubeComplex, graph: &DefiningGraph) -> Self {
        let stride = 2 * graph.len();
        let mut next = vec![None; stride * complex.vertex_count()];
        for e in complex.edges() {
            let g = e.label.index();
            next[e.source * stride + 2 * g].get_or_insert(e.target);
            next[e.target * stride + 2 * g + 1].get_or_insert(e.source);
        }
        Tracer {
            stride,
            next,
            basepoint: complex.basepoint(),
        }
    }

    #[inline]
    pub fn step(&self, v: usize, letter: Letter) -> Option<usize> {
        let slot = 2 * letter.generator.index() + usize::from(!letter.positive);
        self.next[v * self.stride + slot]
    }

    /// Endpoint of the path reading `letters` from the basepoint.
    pub fn trace(&self, letters: &[Letter]) -> Option<usize> {
        letters.iter().try_fold(self.basepoint, |v, &l| self.step(v, l))
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }
}

/// Whether the normal form of `w` reads a closed loop at the basepoint.
///
/// Every closed loop in a complex produced by folding and square completion
/// represents an element of the subgroup, so a `true` answer is meaningful
/// even for unfinished complexes. A `false` answer decides non-membership
/// only for verified cores.
pub fn trace_closes(core: &SubgroupCore, w: &Word) -> Result<bool> {
    let normal = normalize(w, &core.graph)?;
    let tracer = Tracer::new(&core.complex, &core.graph);
    Ok(tracer.trace(&normal.to_word().letters) == Some(tracer.basepoint()))
}

/// Membership of `w` in the subgroup carried by `core`.
///
/// On a verified core the canonical normal form of a member reads a loop,
/// so tracing decides membership. On an unverified core only positive
/// answers can be given; a trace that fails to close is a contract error.
pub fn membership(core: &SubgroupCore, w: &Word) -> Result<bool> {
    let closes = trace_closes(core, w)?;
    if core.is_verified() || closes {
        Ok(closes)
    } else {
        Err(Error::contract(
            "membership cannot be refuted on a core that is not a verified local isometry",
        ))
    }
}

/// Every element of the subgroup with word length at most `max_len`, as
/// canonical normal words in shortlex order.
///
/// `budget` caps the number of search nodes.
pub fn enumerate_elements(core: &SubgroupCore, max_len: usize, budget: usize) -> Result<Vec<NormalWord>> {
    if !core.is_verified() {
        return Err(Error::contract("enumeration needs a verified core"));
    }
    enumerate_loops(core, max_len, budget)
}

/// Canonical normal words of length at most `max_len` that read closed
/// loops at the basepoint. On a verified core these are exactly the
/// subgroup elements of that length; on any folded complex they are at
/// least subgroup elements.
pub fn enumerate_loops(core: &SubgroupCore, max_len: usize, budget: usize) -> Result<Vec<NormalWord>> {
    let graph = &core.graph;
    let tracer = Tracer::new(&core.complex, graph);
    let letters: Vec<Letter> = graph
        .generators()
        .flat_map(|g| [Letter::new(g, true), Letter::new(g, false)])
        .collect();
    let nodes = AtomicUsize::new(1);
    let overflow = AtomicBool::new(false);

    let search = Search {
        graph,
        tracer: &tracer,
        letters: &letters,
        max_len,
        budget,
        nodes: &nodes,
        overflow: &overflow,
    };
    let mut found: Vec<NormalWord> = vec![NormalWord::empty()];
    if max_len > 0 {
        let parts: Vec<Vec<NormalWord>> = letters
            .par_iter()
            .map(|&first| {
                let mut out = Vec::new();
                let mut builder = CanonicalBuilder::default();
                if builder.try_push(first, graph).is_some() {
                    if let Some(v) = tracer.step(tracer.basepoint(), first) {
                        search.visit(&mut builder, v, &mut out);
                    }
                }
                out
            })
            .collect();
        found.extend(parts.into_iter().flatten());
    }
    if overflow.load(Ordering::Relaxed) {
        return Err(Error::Budget {
            what: "enumeration",
            limit: budget,
            partial: found.len(),
        });
    }
    found.sort_by(|a, b| a.cmp_shortlex(b));
    Ok(found)
}

struct Search<'a> {
    graph: &'a DefiningGraph,
    tracer: &'a Tracer,
    letters: &'a [Letter],
    max_len: usize,
    budget: usize,
    nodes: &'a AtomicUsize,
    overflow: &'a AtomicBool,
}

impl Search<'_> {
    fn visit(&self, builder: &mut CanonicalBuilder, v: usize, out: &mut Vec<NormalWord>) {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.overflow.store(true, Ordering::Relaxed);
        }
        if self.overflow.load(Ordering::Relaxed) {
            return;
        }
        if v == self.tracer.basepoint() {
            out.push(builder.snapshot());
        }
        if builder.len() == self.max_len {
            return;
        }
        for &l in self.letters {
            let Some(next) = self.tracer.step(v, l) else {
                continue;
            };
            if let Some(undo) = builder.try_push(l, self.graph) {
                self.visit(builder, next, out);
                builder.undo(undo);
            }
        }
    }
}
