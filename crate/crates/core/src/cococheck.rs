//! Convex-cocompactness certificates: build the core, check that every
//! short subgroup element fills, and report the resulting displacement bound.

use std::collections::{HashMap, VecDeque};

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::cube::{build_core_with, enumerate_loops, membership, BuildOptions, CoreStatus, Dir, SubgroupCore};
use crate::error::{Error, Result};
use crate::raag::{cyclically_reduce_normal, normalize, DefiningGraph, Letter, NormalWord, Word};
use crate::surface::{supports, GenSet, SurfaceModel};

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    /// Cell budget for core construction.
    pub cell_budget: usize,
    /// Search-node budget for each enumeration pass.
    pub enum_budget: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            cell_budget: 100_000,
            enum_budget: 5_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every subgroup element of length at most ℓ fills.
    Certified,
    /// A subgroup element whose cyclic reduction does not fill.
    Refuted { witness: NormalWord, reduced: NormalWord },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub model: SurfaceModel,
    pub generators: Vec<NormalWord>,
    pub core: SubgroupCore,
    /// `3(V + 1)` for the verified core.
    pub ell: Option<usize>,
    pub verdict: Verdict,
    /// Longest length for which the element list was searched completely.
    pub searched_len: usize,
    pub elements_checked: usize,
    pub support_sets: usize,
    pub max_exponent: u32,
}

impl Certificate {
    pub fn graph(&self) -> &DefiningGraph {
        self.model.graph()
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// `(slope, intercept)` of `d ≥ slope·|h| + intercept`, when certified.
    pub fn bound(&self) -> Option<(Rational64, Rational64)> {
        match (&self.verdict, self.ell) {
            (Verdict::Certified, Some(ell)) => Some((Rational64::new(1, 6 * ell as i64), Rational64::from_integer(-2))),
            _ => None,
        }
    }

    /// Process exit code: 0 certified, 1 refuted, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Certified => 0,
            Verdict::Refuted { .. } => 1,
            Verdict::Inconclusive { .. } => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let g = self.graph();
        let c = &self.core.complex;
        let verdict = match &self.verdict {
            Verdict::Certified => json!({ "kind": "certified" }),
            Verdict::Refuted { witness, reduced } => json!({
                "kind": "refuted",
                "witness": witness.spell(g),
                "cyclic_reduction": reduced.spell(g),
                "support": supports(reduced).iter().map(|x| g.label(*x)).collect::<Vec<_>>(),
            }),
            Verdict::Inconclusive { reason } => json!({ "kind": "inconclusive", "reason": reason }),
        };
        let bound = self.bound().map(|(slope, intercept)| {
            json!({
                "slope": slope.to_string(),
                "intercept": intercept.to_string(),
                "statement": format!("d(mu, h mu) >= |h|/{} - 2", slope.denom()),
            })
        });
        json!({
            "schema": "raagcc.certificate/1",
            "graph": g.to_file(),
            "model": self.model,
            "generators": self.generators.iter().map(|w| w.spell(g)).collect::<Vec<_>>(),
            "core": {
                "vertices": c.vertex_count(),
                "edges": c.edges().len(),
                "squares": c.squares().len(),
                "status": self.core.status,
                "folds": self.core.stats.folds,
                "squares_added": self.core.stats.squares_added,
            },
            "ell": self.ell,
            "verdict": verdict,
            "bound": bound,
            "diagnostics": {
                "searched_len": self.searched_len,
                "elements_checked": self.elements_checked,
                "support_sets": self.support_sets,
                "max_exponent": self.max_exponent,
            },
        })
    }
}

/// Runs the full check for the subgroup generated by `generators`.
pub fn certify(
    graph: &DefiningGraph,
    model: &SurfaceModel,
    generators: &[Word],
    options: CertifyOptions,
) -> Result<Certificate> {
    if !model.admissible() {
        return Err(Error::contract("the surface model is not declared admissible"));
    }
    if model.graph() != graph {
        return Err(Error::input("the model's coincidence graph differs from the defining graph"));
    }
    if generators.is_empty() {
        return Err(Error::input("at least one generator is required"));
    }
    let core = build_core_with(graph, generators, BuildOptions::with_budget(options.cell_budget))?;
    let generators = core.generators.clone();
    let cap = 3 * (core.complex.vertex_count() + 1);
    let verified = core.status == CoreStatus::VerifiedLocalIsometry;

    let mut scan = Scan::new(model);
    let outcome = scan.run(&core, cap, options.enum_budget);
    let verdict = match (outcome, verified) {
        (Some(witness), _) => {
            let (_, reduced) = cyclically_reduce_normal(&witness, graph);
            Verdict::Refuted { witness, reduced }
        }
        (None, true) if scan.searched == cap => Verdict::Certified,
        (None, true) => Verdict::Inconclusive {
            reason: format!(
                "enumeration budget exhausted after length {} of {cap}",
                scan.searched
            ),
        },
        (None, false) => Verdict::Inconclusive {
            reason: format!(
                "core construction exceeded the cell budget of {}; no non-filling loop of length <= {} found",
                options.cell_budget, scan.searched
            ),
        },
    };
    Ok(Certificate {
        model: model.clone(),
        generators,
        ell: verified.then_some(cap),
        verdict,
        searched_len: scan.searched,
        elements_checked: scan.checked,
        support_sets: scan.memo.len(),
        max_exponent: scan.max_exponent,
        core,
    })
}

struct Scan<'m> {
    model: &'m SurfaceModel,
    memo: HashMap<GenSet, bool>,
    searched: usize,
    checked: usize,
    max_exponent: u32,
}

impl<'m> Scan<'m> {
    fn new(model: &'m SurfaceModel) -> Self {
        Scan {
            model,
            memo: HashMap::new(),
            searched: 0,
            checked: 0,
            max_exponent: 0,
        }
    }

    /// Iterative deepening over loop lengths. Each pass is complete or
    /// discarded, so the result does not depend on thread scheduling.
    fn run(&mut self, core: &SubgroupCore, cap: usize, budget: usize) -> Option<NormalWord> {
        for len in 1..=cap {
            let Ok(found) = enumerate_loops(core, len, budget) else {
                return None;
            };
            let fresh: Vec<&NormalWord> = found.iter().filter(|w| w.len() == len).collect();
            for w in fresh {
                self.checked += 1;
                self.max_exponent = self.max_exponent.max(w.max_exponent());
                if !self.fills(w) {
                    return Some(w.clone());
                }
            }
            self.searched = len;
        }
        None
    }

    fn fills(&mut self, w: &NormalWord) -> bool {
        let (_, reduced) = cyclically_reduce_normal(w, self.model.graph());
        let support = supports(&reduced);
        if let Some(&f) = self.memo.get(&support) {
            return f;
        }
        let f = self.model.is_filling(&support);
        self.memo.insert(support, f);
        f
    }
}

/// `|h|/(6ℓ) − 2` for a member `h` of a certified subgroup.
pub fn displacement_lower_bound(cert: &Certificate, h: &Word) -> Result<Rational64> {
    let Some((slope, intercept)) = cert.bound() else {
        return Err(Error::contract("displacement bound needs a certified subgroup"));
    };
    if !membership(&cert.core, h)? {
        return Err(Error::contract("word is not a member of the subgroup"));
    }
    let len = normalize(h, cert.graph())?.len() as i64;
    Ok(slope * len + intercept)
}

/// Generators of the loop group of a verified core: one per spanning-tree
/// chord, after eliminating chords that the square relations express in
/// terms of the others.
pub fn extract_generators(core: &SubgroupCore) -> Result<Vec<NormalWord>> {
    if !core.is_verified() {
        return Err(Error::contract("generator extraction needs a verified core"));
    }
    let graph = &core.graph;
    let complex = &core.complex;
    let inc = complex.incidence();
    let n = complex.vertex_count();

    // breadth-first spanning tree; path[v] reads base → v
    let mut path: Vec<Option<Vec<Letter>>> = vec![None; n];
    let mut tree = vec![false; complex.edges().len()];
    path[complex.basepoint()] = Some(Vec::new());
    let mut queue = VecDeque::from([complex.basepoint()]);
    while let Some(v) = queue.pop_front() {
        for &(label, dir, e) in &inc[v] {
            let w = complex.edges()[e].other_end(dir);
            if path[w].is_none() {
                let mut p = path[v].clone().expect("visited");
                p.push(Letter::new(label, dir == Dir::Out));
                path[w] = Some(p);
                tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    let path: Vec<Vec<Letter>> = path.into_iter().map(|p| p.expect("connected")).collect();

    let chords: Vec<usize> = (0..tree.len()).filter(|&e| !tree[e]).collect();
    let chord_index: HashMap<usize, usize> = chords.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    let mut relators: Vec<Vec<(usize, bool)>> = complex
        .squares()
        .iter()
        .map(|s| {
            let [eu, ew2, eu2, ew] = s.edges;
            let boundary = [(eu, true), (ew2, true), (eu2, false), (ew, false)];
            let r = boundary
                .iter()
                .filter_map(|&(e, pos)| chord_index.get(&e).map(|&c| (c, pos)))
                .collect();
            reduce_cyclic(r)
        })
        .filter(|r: &Vec<(usize, bool)>| !r.is_empty())
        .collect();

    let mut eliminated = vec![false; chords.len()];
    while let Some((ri, pos)) = relators.iter().enumerate().find_map(|(ri, r)| {
        r.iter()
            .position(|&(c, _)| r.iter().filter(|&&(d, _)| d == c).count() == 1)
            .map(|pos| (ri, pos))
    }) {
        let r = relators.swap_remove(ri);
        let (c, positive) = r[pos];
        // r = A c^s B = 1, so c = A⁻¹B⁻¹ (s = 1) or c = B A (s = −1)
        let (a, b) = (&r[..pos], &r[pos + 1..]);
        let value: Vec<(usize, bool)> = if positive {
            invert(a).into_iter().chain(invert(b)).collect()
        } else {
            b.iter().chain(a).copied().collect()
        };
        let value_inv = invert(&value);
        eliminated[c] = true;
        for rel in &mut relators {
            let substituted: Vec<(usize, bool)> = rel
                .iter()
                .flat_map(|&(d, s)| match (d == c, s) {
                    (false, _) => vec![(d, s)],
                    (true, true) => value.clone(),
                    (true, false) => value_inv.clone(),
                })
                .collect();
            *rel = reduce_cyclic(substituted);
        }
        relators.retain(|r| !r.is_empty());
    }

    let mut out = Vec::new();
    for (i, &e) in chords.iter().enumerate() {
        if eliminated[i] {
            continue;
        }
        let edge = complex.edges()[e];
        let letters: Vec<Letter> = path[edge.source]
            .iter()
            .copied()
            .chain(std::iter::once(Letter::new(edge.label, true)))
            .chain(Word::new(path[edge.target].clone()).invert().letters)
            .collect();
        let w = normalize(&Word::new(letters), graph)?;
        if !w.is_empty() {
            out.push(w);
        }
    }
    Ok(out)
}

fn invert(w: &[(usize, bool)]) -> Vec<(usize, bool)> {
    w.iter().rev().map(|&(c, s)| (c, !s)).collect()
}

/// Free and cyclic reduction of a word in the chord alphabet.
fn reduce_cyclic(w: Vec<(usize, bool)>) -> Vec<(usize, bool)> {
    let mut out: Vec<(usize, bool)> = Vec::with_capacity(w.len());
    for x in w {
        match out.last() {
            Some(&(c, s)) if c == x.0 && s != x.1 => {
                out.pop();
            }
            _ => out.push(x),
        }
    }
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo].0 == out[hi - 1].0 && out[lo].1 != out[hi - 1].1 {
        lo += 1;
        hi -= 1;
    }
    out[lo..hi].to_vec()
}
