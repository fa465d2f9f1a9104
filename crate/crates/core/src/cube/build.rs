use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::check::check_local_isometry;
use super::complex::{BuildStats, CoreStatus, Dir, Edge, LabeledCubeComplex, Square, SubgroupCore};
use crate::error::{Error, Result};
use crate::raag::{normalize, DefiningGraph, Gen, NormalWord, Word};

/// Knobs for [`build_core_with`].
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Upper bound on live vertices + edges + squares.
    pub budget: usize,
    /// Process generators and missing corners in a seeded random order
    /// instead of the default one. The resulting core is the same up to
    /// isomorphism; only the diagnostics may differ.
    pub shuffle: Option<u64>,
}

impl BuildOptions {
    pub fn with_budget(budget: usize) -> Self {
        BuildOptions { budget, shuffle: None }
    }
}

/// Folds a wedge of loops reading `generators` and completes squares until
/// the label map is a local isometry or the cell budget runs out.
pub fn build_core(graph: &DefiningGraph, generators: &[Word], budget: usize) -> Result<SubgroupCore> {
    build_core_with(graph, generators, BuildOptions::with_budget(budget))
}

pub fn build_core_with(graph: &DefiningGraph, generators: &[Word], options: BuildOptions) -> Result<SubgroupCore> {
    if generators.is_empty() {
        return Err(Error::input("at least one generator is required"));
    }
    let mut builder = Builder::new(graph, options);
    let normal = builder.add_loops(generators)?;
    Ok(builder.finish(normal))
}

impl SubgroupCore {
    /// The core of the subgroup generated by this core's loops together
    /// with `words`, grown from the existing complex.
    pub fn extend(&self, words: &[Word], options: BuildOptions) -> Result<SubgroupCore> {
        let mut builder = Builder::new(&self.graph, options);
        builder.load(&self.complex);
        let mut generators = self.generators.clone();
        generators.extend(builder.add_loops(words)?);
        Ok(builder.finish(generators))
    }
}

#[derive(Clone, Copy, Debug)]
struct Corner {
    vertex: usize,
    u: (Gen, Dir),
    w: (Gen, Dir),
}

struct Builder<'g> {
    graph: &'g DefiningGraph,
    options: BuildOptions,
    rng: Option<ChaCha8Rng>,
    vparent: Vec<usize>,
    eparent: Vec<usize>,
    edges: Vec<Edge>,
    /// Edge ends at each root vertex; entries may hold non-root edge ids.
    incidence: Vec<BTreeMap<(Gen, Dir), usize>>,
    /// Squares as `(v0, u, w)` with `u < w`; `v0` may be a non-root id.
    squares: Vec<(usize, Gen, Gen)>,
    square_alive: Vec<bool>,
    /// Square ids based at each root vertex.
    squares_at: Vec<Vec<usize>>,
    live_squares: usize,
    /// Vertices whose edge ends changed since they were last scanned.
    dirty: Vec<usize>,
    is_dirty: Vec<bool>,
    pending: VecDeque<(usize, usize)>,
    live_vertices: usize,
    live_edges: usize,
    stats: BuildStats,
}

impl<'g> Builder<'g> {
    fn new(graph: &'g DefiningGraph, options: BuildOptions) -> Self {
        let mut b = Builder {
            graph,
            options,
            rng: options.shuffle.map(ChaCha8Rng::seed_from_u64),
            vparent: Vec::new(),
            eparent: Vec::new(),
            edges: Vec::new(),
            incidence: Vec::new(),
            squares: Vec::new(),
            square_alive: Vec::new(),
            squares_at: Vec::new(),
            live_squares: 0,
            dirty: Vec::new(),
            is_dirty: Vec::new(),
            pending: VecDeque::new(),
            live_vertices: 0,
            live_edges: 0,
            stats: BuildStats::default(),
        };
        b.new_vertex();
        b
    }

    fn load(&mut self, complex: &LabeledCubeComplex) {
        // builder vertex 0 is the basepoint; swap ids to keep it that way
        let bp = complex.basepoint();
        let id = |v: usize| if v == bp { 0 } else if v == 0 { bp } else { v };
        for _ in 1..complex.vertex_count() {
            self.new_vertex();
        }
        for e in complex.edges() {
            self.add_edge(id(e.source), id(e.target), e.label);
        }
        self.merge_pending();
        for s in complex.squares() {
            let (u, w) = complex.square_labels(s);
            let v0 = self.vfind(id(complex.square_base(s)));
            self.insert_square(v0, u, w);
        }
        self.stats = BuildStats::default();
    }

    fn new_vertex(&mut self) -> usize {
        self.vparent.push(self.vparent.len());
        self.incidence.push(BTreeMap::new());
        self.squares_at.push(Vec::new());
        self.is_dirty.push(false);
        self.live_vertices += 1;
        self.vparent.len() - 1
    }

    fn mark(&mut self, v: usize) {
        if !self.is_dirty[v] {
            self.is_dirty[v] = true;
            self.dirty.push(v);
        }
    }

    fn has_square(&self, root: usize, u: Gen, w: Gen) -> bool {
        self.squares_at[root]
            .iter()
            .any(|&s| self.square_alive[s] && self.squares[s].1 == u && self.squares[s].2 == w)
    }

    fn insert_square(&mut self, root: usize, u: Gen, w: Gen) -> bool {
        if self.has_square(root, u, w) {
            return false;
        }
        let id = self.squares.len();
        self.squares.push((root, u, w));
        self.square_alive.push(true);
        self.squares_at[root].push(id);
        self.live_squares += 1;
        true
    }

    fn vfind(&mut self, mut v: usize) -> usize {
        while self.vparent[v] != v {
            self.vparent[v] = self.vparent[self.vparent[v]];
            v = self.vparent[v];
        }
        v
    }

    fn efind(&mut self, mut e: usize) -> usize {
        while self.eparent[e] != e {
            self.eparent[e] = self.eparent[self.eparent[e]];
            e = self.eparent[e];
        }
        e
    }

    fn basepoint(&mut self) -> usize {
        self.vfind(0)
    }

    /// Live edge at `v` with the given end, if any.
    fn end(&mut self, v: usize, key: (Gen, Dir)) -> Option<usize> {
        let v = self.vfind(v);
        let e = *self.incidence[v].get(&key)?;
        Some(self.efind(e))
    }

    /// Endpoint of edge `e` opposite to its `dir` end.
    fn across(&mut self, e: usize, dir: Dir) -> usize {
        let other = self.edges[e].other_end(dir);
        self.vfind(other)
    }

    fn add_edge(&mut self, source: usize, target: usize, label: Gen) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { source, target, label });
        self.eparent.push(id);
        self.live_edges += 1;
        self.attach(source, (label, Dir::Out), id);
        self.attach(target, (label, Dir::In), id);
        id
    }

    fn attach(&mut self, v: usize, key: (Gen, Dir), e: usize) {
        let v = self.vfind(v);
        match self.incidence[v].get(&key).copied() {
            Some(f) => self.merge_edges(f, e),
            None => {
                self.incidence[v].insert(key, e);
                self.mark(v);
            }
        }
    }

    fn merge_edges(&mut self, f: usize, e: usize) {
        let (rf, re) = (self.efind(f), self.efind(e));
        if rf == re {
            return;
        }
        self.eparent[re] = rf;
        self.live_edges -= 1;
        self.stats.folds += 1;
        let (a, b) = (self.edges[rf], self.edges[re]);
        self.pending.push_back((a.source, b.source));
        self.pending.push_back((a.target, b.target));
    }

    fn merge_pending(&mut self) {
        while let Some((a, b)) = self.pending.pop_front() {
            let (ra, rb) = (self.vfind(a), self.vfind(b));
            if ra == rb {
                continue;
            }
            let (keep, gone) = if self.incidence[ra].len() >= self.incidence[rb].len() {
                (ra, rb)
            } else {
                (rb, ra)
            };
            self.vparent[gone] = keep;
            self.live_vertices -= 1;
            self.mark(keep);
            let moved = std::mem::take(&mut self.incidence[gone]);
            for (key, e) in moved {
                match self.incidence[keep].get(&key).copied() {
                    Some(f) => self.merge_edges(f, e),
                    None => {
                        self.incidence[keep].insert(key, e);
                    }
                }
            }
            for s in std::mem::take(&mut self.squares_at[gone]) {
                let (_, u, w) = self.squares[s];
                if !self.square_alive[s] {
                    continue;
                }
                if self.has_square(keep, u, w) {
                    self.square_alive[s] = false;
                    self.live_squares -= 1;
                } else {
                    self.squares_at[keep].push(s);
                }
            }
        }
    }

    fn add_loops(&mut self, words: &[Word]) -> Result<Vec<NormalWord>> {
        let normal = words
            .iter()
            .map(|w| normalize(w, self.graph))
            .collect::<Result<Vec<_>>>()?;
        let mut order: Vec<&NormalWord> = normal.iter().collect();
        if let Some(rng) = self.rng.as_mut() {
            order.shuffle(rng);
        }
        for w in order {
            self.add_loop(&w.to_word());
            self.merge_pending();
        }
        Ok(normal)
    }

    /// Lays down a loop reading `w` at the basepoint, following existing
    /// edges where they already match.
    fn add_loop(&mut self, w: &Word) {
        let n = w.letters.len();
        let mut cur = self.basepoint();
        for (i, l) in w.letters.iter().enumerate() {
            let dir = Dir::of_sign(l.positive);
            let last = i + 1 == n;
            if let Some(e) = self.end(cur, (l.generator, dir)) {
                self.stats.folds += 1;
                let next = self.across(e, dir);
                if last {
                    let base = self.basepoint();
                    self.pending.push_back((next, base));
                    self.merge_pending();
                }
                cur = self.vfind(next);
            } else {
                let next = if last { self.basepoint() } else { self.new_vertex() };
                if l.positive {
                    self.add_edge(cur, next, l.generator);
                } else {
                    self.add_edge(next, cur, l.generator);
                }
                self.merge_pending();
                cur = self.vfind(next);
            }
        }
    }

    fn cells(&self) -> usize {
        self.live_vertices + self.live_edges + self.live_squares
    }

    /// `v0` of the square that would fill `c`, if the walk back exists.
    fn corner_base(&mut self, c: Corner) -> Option<usize> {
        let (u, du) = c.u;
        let (w, dw) = c.w;
        let mut v = self.vfind(c.vertex);
        if du == Dir::In {
            let e = self.end(v, (u, Dir::In))?;
            v = self.across(e, Dir::In);
        }
        if dw == Dir::In {
            let e = self.end(v, (w, Dir::In))?;
            v = self.across(e, Dir::In);
        }
        Some(v)
    }

    fn is_filled(&mut self, c: Corner) -> bool {
        match self.corner_base(c) {
            Some(v0) => {
                // the walk from v0 must come back to this very corner
                let (u, w) = (c.u.0, c.w.0);
                self.has_square(v0, u, w) && self.square_has_corner(v0, c)
            }
            None => false,
        }
    }

    fn square_has_corner(&mut self, v0: usize, c: Corner) -> bool {
        let (u, du) = c.u;
        let (w, dw) = c.w;
        let mut v = v0;
        if du == Dir::In {
            match self.end(v, (u, Dir::Out)) {
                Some(e) => v = self.across(e, Dir::Out),
                None => return false,
            }
        }
        if dw == Dir::In {
            match self.end(v, (w, Dir::Out)) {
                Some(e) => v = self.across(e, Dir::Out),
                None => return false,
            }
        }
        v == self.vfind(c.vertex)
    }

    /// Unfilled corners at the vertices marked since the last scan. A filled
    /// corner stays filled under folding, so only vertices that gained edge
    /// ends need another look.
    fn missing_corners(&mut self) -> Vec<Corner> {
        let mut marked = std::mem::take(&mut self.dirty);
        for &v in &marked {
            self.is_dirty[v] = false;
        }
        let mut roots: Vec<usize> = marked.drain(..).map(|v| self.vfind(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        let mut out = Vec::new();
        for v in roots {
            let ends: Vec<(Gen, Dir)> = self.incidence[v].keys().copied().collect();
            for (i, &a) in ends.iter().enumerate() {
                for &b in &ends[i + 1..] {
                    if a.0 == b.0 || !self.graph.adjacent(a.0, b.0) {
                        continue;
                    }
                    let (u, w) = if a.0 < b.0 { (a, b) } else { (b, a) };
                    let c = Corner { vertex: v, u, w };
                    if !self.is_filled(c) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// Attaches the square spanned by corner `c`, reusing completing edges
    /// where they exist.
    fn fill(&mut self, c: Corner) {
        let (u, du) = c.u;
        let (w, dw) = c.w;
        let v = self.vfind(c.vertex);
        let eu = self.end(v, c.u).expect("corner edge");
        let ew = self.end(v, c.w).expect("corner edge");
        let p = self.across(eu, du);
        let q = self.across(ew, dw);
        let from_p = self.end(p, (w, dw));
        let from_q = self.end(q, (u, du));
        let r = match (from_p, from_q) {
            (Some(f), Some(g)) => {
                let (r1, r2) = (self.across(f, dw), self.across(g, du));
                self.pending.push_back((r1, r2));
                r1
            }
            (Some(f), None) => {
                let r = self.across(f, dw);
                self.edge_with_end(q, (u, du), r);
                r
            }
            (None, Some(g)) => {
                let r = self.across(g, du);
                self.edge_with_end(p, (w, dw), r);
                r
            }
            (None, None) => {
                let r = self.new_vertex();
                self.edge_with_end(p, (w, dw), r);
                self.edge_with_end(q, (u, du), r);
                r
            }
        };
        let v0 = match (du, dw) {
            (Dir::Out, Dir::Out) => v,
            (Dir::In, Dir::Out) => p,
            (Dir::Out, Dir::In) => q,
            (Dir::In, Dir::In) => r,
        };
        self.merge_pending();
        let v0 = self.vfind(v0);
        if self.insert_square(v0, u, w) {
            self.stats.squares_added += 1;
        }
    }

    /// Adds an edge whose `key` end sits at `at` and whose other end is `to`.
    fn edge_with_end(&mut self, at: usize, key: (Gen, Dir), to: usize) {
        match key.1 {
            Dir::Out => self.add_edge(at, to, key.0),
            Dir::In => self.add_edge(to, at, key.0),
        };
    }

    fn complete(&mut self) -> CoreStatus {
        loop {
            self.merge_pending();
            if self.cells() > self.options.budget {
                return CoreStatus::BudgetExceeded;
            }
            let mut missing = self.missing_corners();
            if missing.is_empty() {
                return CoreStatus::VerifiedLocalIsometry;
            }
            self.stats.rounds += 1;
            if let Some(rng) = self.rng.as_mut() {
                missing.shuffle(rng);
            }
            for c in missing {
                if !self.is_filled(c) {
                    self.fill(c);
                    if self.cells() > self.options.budget {
                        self.merge_pending();
                        return CoreStatus::BudgetExceeded;
                    }
                }
            }
        }
    }

    fn finish(mut self, generators: Vec<NormalWord>) -> SubgroupCore {
        let mut status = self.complete();
        let complex = self.export();
        if status == CoreStatus::VerifiedLocalIsometry {
            // construction is meant to guarantee this; never claim it unchecked
            if !check_local_isometry(&complex, self.graph).is_empty() {
                status = CoreStatus::BudgetExceeded;
            }
        }
        SubgroupCore {
            graph: self.graph.clone(),
            complex,
            status,
            generators,
            stats: self.stats,
        }
    }

    /// Compacts ids by a breadth-first walk from the basepoint that visits
    /// edge ends in `(label, Out, In)` order. The numbering depends only on
    /// the pointed labelled complex, so isomorphic results export equal.
    fn export(&mut self) -> LabeledCubeComplex {
        self.merge_pending();
        let base = self.basepoint();
        let mut vid = vec![usize::MAX; self.vparent.len()];
        let mut eid = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        let mut order = vec![base];
        vid[base] = 0;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            let ends: Vec<((Gen, Dir), usize)> = self.incidence[v].iter().map(|(&k, &e)| (k, e)).collect();
            for ((label, dir), e) in ends {
                let e = self.efind(e);
                let other = self.across(e, dir);
                if vid[other] == usize::MAX {
                    vid[other] = order.len();
                    order.push(other);
                }
                if eid[e] == usize::MAX {
                    eid[e] = edges.len();
                    let (s, t) = (self.vfind(self.edges[e].source), self.vfind(self.edges[e].target));
                    edges.push((s, t, label));
                }
            }
        }
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|(s, t, label)| Edge {
                source: vid[s],
                target: vid[t],
                label,
            })
            .collect();
        let keys: Vec<(usize, Gen, Gen)> = (0..self.squares.len())
            .filter(|&s| self.square_alive[s])
            .map(|s| self.squares[s])
            .collect();
        let mut squares = Vec::with_capacity(keys.len());
        for (v0, u, w) in keys {
            let v0 = self.vfind(v0);
            let e_u = self.end(v0, (u, Dir::Out)).expect("square edge");
            let e_w = self.end(v0, (w, Dir::Out)).expect("square edge");
            let v1 = self.across(e_u, Dir::Out);
            let v2 = self.across(e_w, Dir::Out);
            let e_w2 = self.end(v1, (w, Dir::Out)).expect("square edge");
            let e_u2 = self.end(v2, (u, Dir::Out)).expect("square edge");
            squares.push(Square {
                edges: [eid[e_u], eid[e_w2], eid[e_u2], eid[e_w]],
            });
        }
        squares.sort();
        LabeledCubeComplex::from_parts(order.len(), edges, squares, 0)
    }
}
