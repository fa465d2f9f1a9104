use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raag::{normalize, DefiningGraph, Gen, NormalWord, Word};

/// Which end of an oriented edge sits at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    /// The edge leaves the vertex.
    Out,
    /// The edge arrives at the vertex.
    In,
}

impl Dir {
    pub fn of_sign(positive: bool) -> Dir {
        if positive {
            Dir::Out
        } else {
            Dir::In
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: Gen,
}

impl Edge {
    pub fn end(&self, dir: Dir) -> usize {
        match dir {
            Dir::Out => self.source,
            Dir::In => self.target,
        }
    }

    /// The endpoint opposite to the `dir` end.
    pub fn other_end(&self, dir: Dir) -> usize {
        match dir {
            Dir::Out => self.target,
            Dir::In => self.source,
        }
    }
}

/// A square `v0 →u v1 →w v3`, `v0 →w v2 →u v3`, stored as the edge ids
/// `[v0→v1, v1→v3, v2→v3, v0→v2]`; reading the boundary gives `u w u⁻¹ w⁻¹`.
/// The first label is always the smaller generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Square {
    pub edges: [usize; 4],
}

/// A square corner: `(vertex, (edge, dir), (edge, dir))`.
pub type Corner = (usize, (usize, Dir), (usize, Dir));

/// A 2-dimensional cube complex with generator-labelled oriented edges and
/// a basepoint. Higher cubes are implied by the flag convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledCubeComplex {
    vertex_count: usize,
    edges: Vec<Edge>,
    squares: Vec<Square>,
    basepoint: usize,
}

impl LabeledCubeComplex {
    /// A single vertex, which is the basepoint.
    pub fn point() -> Self {
        LabeledCubeComplex {
            vertex_count: 1,
            edges: Vec::new(),
            squares: Vec::new(),
            basepoint: 0,
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, source: usize, target: usize, label: Gen) -> Result<usize> {
        if source >= self.vertex_count || target >= self.vertex_count {
            return Err(Error::input("edge endpoint out of range"));
        }
        self.edges.push(Edge { source, target, label });
        Ok(self.edges.len() - 1)
    }

    /// Adds the square with boundary edges `[v0→v1, v1→v3, v2→v3, v0→v2]`.
    /// The labels may be given in either order.
    pub fn add_square(&mut self, edges: [usize; 4], graph: &DefiningGraph) -> Result<usize> {
        let square = self.orient_square(edges, graph)?;
        self.squares.push(square);
        Ok(self.squares.len() - 1)
    }

    fn orient_square(&self, e: [usize; 4], graph: &DefiningGraph) -> Result<Square> {
        if e.iter().any(|&i| i >= self.edges.len()) {
            return Err(Error::input("square edge out of range"));
        }
        let [a, b, c, d] = e.map(|i| self.edges[i]);
        let (u, w) = (a.label, d.label);
        let shape_ok = a.source == d.source
            && a.target == b.source
            && d.target == c.source
            && b.target == c.target
            && c.label == u
            && b.label == w;
        if !shape_ok {
            return Err(Error::input(format!("edges {e:?} do not bound a square")));
        }
        if u == w || !graph.adjacent(u, w) {
            return Err(Error::input(format!(
                "square labels `{}` and `{}` do not commute",
                graph.label(u),
                graph.label(w)
            )));
        }
        Ok(if u < w {
            Square { edges: e }
        } else {
            Square {
                edges: [e[3], e[2], e[1], e[0]],
            }
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Labels `(u, w)` of a square, `u < w`.
    pub fn square_labels(&self, s: &Square) -> (Gen, Gen) {
        (self.edges[s.edges[0]].label, self.edges[s.edges[3]].label)
    }

    /// Corner vertex `v0` of a square, where both edges leave.
    pub fn square_base(&self, s: &Square) -> usize {
        self.edges[s.edges[0]].source
    }

    /// The four corners of a square, the `u`-end first.
    pub fn square_corners(&self, s: &Square) -> [Corner; 4] {
        let [eu, ew2, eu2, ew] = s.edges;
        let e = |i: usize| self.edges[i];
        [
            (e(eu).source, (eu, Dir::Out), (ew, Dir::Out)),
            (e(eu).target, (eu, Dir::In), (ew2, Dir::Out)),
            (e(ew).target, (eu2, Dir::Out), (ew, Dir::In)),
            (e(eu2).target, (eu2, Dir::In), (ew2, Dir::In)),
        ]
    }

    /// Incident edge ends at each vertex, sorted by `(label, dir, edge)`.
    pub fn incidence(&self) -> Vec<Vec<(Gen, Dir, usize)>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.source].push((e.label, Dir::Out, i));
            inc[e.target].push((e.label, Dir::In, i));
        }
        for ends in &mut inc {
            ends.sort();
        }
        inc
    }

    pub fn is_connected(&self) -> bool {
        let inc = self.incidence();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![self.basepoint];
        seen[self.basepoint] = true;
        while let Some(v) = stack.pop() {
            for &(_, dir, e) in &inc[v] {
                let w = self.edges[e].other_end(dir);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// The Salvetti complex: one vertex, a loop per generator, a square per
    /// edge of the graph.
    pub fn salvetti(graph: &DefiningGraph) -> Self {
        let mut c = LabeledCubeComplex::point();
        for g in graph.generators() {
            c.add_edge(0, 0, g).expect("vertex exists");
        }
        for (u, w) in graph.edges() {
            let (eu, ew) = (u.index(), w.index());
            c.add_square([eu, ew, eu, ew], graph).expect("loops bound a square");
        }
        c
    }

    /// Wedge of subdivided loops at the basepoint, one per (normalized)
    /// word, with no folding at all.
    pub fn wedge(graph: &DefiningGraph, words: &[Word]) -> Result<Self> {
        let mut c = LabeledCubeComplex::point();
        for w in words {
            let letters = normalize(w, graph)?.to_word().letters;
            let mut cur = 0;
            for (i, l) in letters.iter().enumerate() {
                let next = if i + 1 == letters.len() { 0 } else { c.add_vertex() };
                if l.positive {
                    c.add_edge(cur, next, l.generator)?;
                } else {
                    c.add_edge(next, cur, l.generator)?;
                }
                cur = next;
            }
        }
        Ok(c)
    }

    pub(crate) fn from_parts(vertex_count: usize, edges: Vec<Edge>, squares: Vec<Square>, basepoint: usize) -> Self {
        LabeledCubeComplex {
            vertex_count,
            edges,
            squares,
            basepoint,
        }
    }
}

/// Outcome of core construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoreStatus {
    VerifiedLocalIsometry,
    BudgetExceeded,
}

/// Diagnostic counters from a construction run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStats {
    /// Edge identifications, including edges reused while laying down the
    /// generator loops.
    pub folds: usize,
    pub squares_added: usize,
    pub rounds: usize,
}

/// A pointed complex with a label-preserving map to the Salvetti complex,
/// meant to be the compact core of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCore {
    pub graph: DefiningGraph,
    pub complex: LabeledCubeComplex,
    pub status: CoreStatus,
    pub generators: Vec<NormalWord>,
    pub stats: BuildStats,
}

impl SubgroupCore {
    pub fn salvetti(graph: &DefiningGraph) -> Self {
        SubgroupCore {
            graph: graph.clone(),
            complex: LabeledCubeComplex::salvetti(graph),
            status: CoreStatus::VerifiedLocalIsometry,
            generators: graph
                .generators()
                .map(|g| NormalWord::from_syllables(vec![crate::raag::Syllable::new(g, 1)], graph).expect("normal"))
                .collect(),
            stats: BuildStats::default(),
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == CoreStatus::VerifiedLocalIsometry
    }

    pub fn to_file(&self) -> CoreFile {
        let g = &self.graph;
        let c = &self.complex;
        CoreFile {
            graph: g.clone(),
            vertices: c.vertex_count,
            basepoint: c.basepoint,
            edges: c
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    source: e.source,
                    target: e.target,
                    label: g.label(e.label).to_string(),
                })
                .collect(),
            squares: c.squares.iter().map(|s| s.edges).collect(),
            status: self.status,
            generators: self.generators.iter().map(|w| w.spell(g)).collect(),
            stats: Some(self.stats),
        }
    }

    /// Rebuilds a core from its file form. Squares are re-validated, and a
    /// claimed verified status is re-checked against the link condition.
    pub fn from_file(file: CoreFile) -> Result<Self> {
        let graph = file.graph;
        if file.vertices == 0 || file.basepoint >= file.vertices {
            return Err(Error::input("basepoint out of range"));
        }
        let mut complex = LabeledCubeComplex {
            vertex_count: file.vertices,
            edges: Vec::with_capacity(file.edges.len()),
            squares: Vec::new(),
            basepoint: file.basepoint,
        };
        for e in &file.edges {
            let label = graph.lookup(&e.label)?;
            complex.add_edge(e.source, e.target, label)?;
        }
        for s in file.squares {
            complex.add_square(s, &graph)?;
        }
        if !complex.is_connected() {
            return Err(Error::input("complex is not connected"));
        }
        let generators = file
            .generators
            .iter()
            .map(|w| NormalWord::parse(w, &graph))
            .collect::<Result<Vec<_>>>()?;
        if file.status == CoreStatus::VerifiedLocalIsometry {
            let report = super::check_local_isometry(&complex, &graph);
            if !report.is_empty() {
                return Err(Error::input(format!(
                    "core claims to be verified but has {} link violations",
                    report.violations.len()
                )));
            }
        }
        Ok(SubgroupCore {
            graph,
            complex,
            status: file.status,
            generators,
            stats: file.stats.unwrap_or_default(),
        })
    }
}

/// JSON form of a [`SubgroupCore`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoreFile {
    pub graph: DefiningGraph,
    pub vertices: usize,
    pub basepoint: usize,
    pub edges: Vec<EdgeRecord>,
    pub squares: Vec<[usize; 4]>,
    pub status: CoreStatus,
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<BuildStats>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

impl Serialize for SubgroupCore {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SubgroupCore {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = CoreFile::deserialize(deserializer)?;
        SubgroupCore::from_file(file).map_err(serde::de::Error::custom)
    }
}
