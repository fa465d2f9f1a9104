use std::collections::HashMap;

use serde::Serialize;

use super::complex::{Corner, Dir, LabeledCubeComplex};
use crate::raag::{DefiningGraph, Gen};

/// One failure of the link condition for a local isometry to the
/// Salvetti complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// Two edges with the same label and orientation at one vertex.
    FoldablePair {
        vertex: usize,
        label: Gen,
        dir: Dir,
        edges: (usize, usize),
    },
    /// Two edge ends with distinct commuting labels and no square between.
    UnfilledCorner {
        vertex: usize,
        first: (usize, Dir),
        second: (usize, Dir),
    },
    /// Two squares filling the same corner.
    DuplicateCorner { vertex: usize, squares: (usize, usize) },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub violations: Vec<Violation>,
}

impl LinkReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn foldable_pairs(&self) -> usize {
        self.count(|v| matches!(v, Violation::FoldablePair { .. }))
    }

    pub fn unfilled_corners(&self) -> usize {
        self.count(|v| matches!(v, Violation::UnfilledCorner { .. }))
    }

    fn count(&self, f: impl Fn(&Violation) -> bool) -> usize {
        self.violations.iter().filter(|v| f(v)).count()
    }
}

/// Checks link injectivity and link fullness at every vertex. An empty
/// report means the label map to the Salvetti complex is a local isometry.
///
/// Squares are assumed well formed (the complex constructors enforce it).
pub fn check_local_isometry(complex: &LabeledCubeComplex, graph: &DefiningGraph) -> LinkReport {
    let mut violations = Vec::new();
    let inc = complex.incidence();

    for (v, ends) in inc.iter().enumerate() {
        for pair in ends.windows(2) {
            let (l0, d0, e0) = pair[0];
            let (l1, d1, e1) = pair[1];
            if l0 == l1 && d0 == d1 {
                violations.push(Violation::FoldablePair {
                    vertex: v,
                    label: l0,
                    dir: d0,
                    edges: (e0, e1),
                });
            }
        }
    }

    let mut corners: HashMap<Corner, usize> = HashMap::new();
    for (i, s) in complex.squares().iter().enumerate() {
        for (v, a, b) in complex.square_corners(s) {
            let key = if a <= b { (v, a, b) } else { (v, b, a) };
            if let Some(&j) = corners.get(&key) {
                violations.push(Violation::DuplicateCorner {
                    vertex: v,
                    squares: (j, i),
                });
            } else {
                corners.insert(key, i);
            }
        }
    }

    for (v, ends) in inc.iter().enumerate() {
        for (i, &(l0, d0, e0)) in ends.iter().enumerate() {
            for &(l1, d1, e1) in &ends[i + 1..] {
                if l0 == l1 || !graph.adjacent(l0, l1) {
                    continue;
                }
                let (a, b) = ((e0, d0), (e1, d1));
                let key = if a <= b { (v, a, b) } else { (v, b, a) };
                if !corners.contains_key(&key) {
                    violations.push(Violation::UnfilledCorner {
                        vertex: v,
                        first: a,
                        second: b,
                    });
                }
            }
        }
    }
    LinkReport { violations }
}
