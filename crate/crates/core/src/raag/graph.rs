use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a standard generator (a vertex of the defining graph).
///
/// Generators are totally ordered by their declaration order in the graph;
/// that order is the one used for canonical normal forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gen(pub u32);

impl Gen {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite simplicial graph presenting a right-angled Artin group.
///
/// Adjacent vertices are commuting generators.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct DefiningGraph {
    labels: Vec<String>,
    index: HashMap<String, Gen>,
    adjacency: Vec<Vec<bool>>,
}

/// JSON shape of a graph file: `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

impl DefiningGraph {
    pub fn new<S, E>(vertices: impl IntoIterator<Item = S>, edges: impl IntoIterator<Item = (E, E)>) -> Result<Self>
    where
        S: Into<String>,
        E: AsRef<str>,
    {
        let labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            validate_label(label)?;
            if index.insert(label.clone(), Gen(i as u32)).is_some() {
                return Err(Error::input(format!("duplicate vertex `{label}`")));
            }
        }
        let n = labels.len();
        let mut adjacency = vec![vec![false; n]; n];
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let gu = *index
                .get(u)
                .ok_or_else(|| Error::input(format!("edge endpoint `{u}` is not a vertex")))?;
            let gv = *index
                .get(v)
                .ok_or_else(|| Error::input(format!("edge endpoint `{v}` is not a vertex")))?;
            if gu == gv {
                return Err(Error::input(format!("self-loop at `{u}`")));
            }
            if adjacency[gu.index()][gv.index()] {
                return Err(Error::input(format!("duplicate edge `{u}`-`{v}`")));
            }
            adjacency[gu.index()][gv.index()] = true;
            adjacency[gv.index()][gu.index()] = true;
        }
        Ok(DefiningGraph {
            labels,
            index,
            adjacency,
        })
    }

    /// Graph with the given vertices and no edges; its group is free.
    pub fn edgeless<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(vertices, std::iter::empty::<(&str, &str)>())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.labels.len() as u32).map(Gen)
    }

    pub fn label(&self, g: Gen) -> &str {
        &self.labels[g.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gen(&self, label: &str) -> Option<Gen> {
        self.index.get(label).copied()
    }

    pub fn lookup(&self, label: &str) -> Result<Gen> {
        self.gen(label)
            .ok_or_else(|| Error::UnknownGenerator(label.to_string()))
    }

    pub fn contains(&self, g: Gen) -> bool {
        g.index() < self.labels.len()
    }

    /// `true` iff `{u, v}` is an edge.
    #[inline]
    pub fn adjacent(&self, u: Gen, v: Gen) -> bool {
        self.adjacency[u.index()][v.index()]
    }

    /// Commutation test; a generator commutes with itself.
    #[inline]
    pub fn commute(&self, u: Gen, v: Gen) -> bool {
        u == v || self.adjacent(u, v)
    }

    pub fn neighbors(&self, g: Gen) -> impl Iterator<Item = Gen> + '_ {
        self.generators().filter(move |&h| self.adjacent(g, h))
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(Gen, Gen)> {
        let mut out = Vec::new();
        for u in self.generators() {
            for v in self.generators().filter(|&v| v > u) {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Diameter of the complement graph, `None` if the complement is
    /// disconnected.
    pub fn complement_diameter(&self) -> Option<usize> {
        let n = self.len();
        let mut diameter = 0;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if v != u && !self.adjacency[u][v] && dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            for &d in &dist {
                if d == usize::MAX {
                    return None;
                }
                diameter = diameter.max(d);
            }
        }
        Some(diameter)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.labels.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [self.label(u).to_string(), self.label(v).to_string()])
                .collect(),
        }
    }
}

fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::input("empty vertex label"));
    }
    if label == "ε" || label.contains('^') || label.chars().any(char::is_whitespace) {
        return Err(Error::input(format!(
            "vertex label `{label}` may not contain whitespace or `^`, nor be `ε`"
        )));
    }
    Ok(())
}

impl TryFrom<GraphFile> for DefiningGraph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        DefiningGraph::new(file.vertices, file.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<DefiningGraph> for GraphFile {
    fn from(graph: DefiningGraph) -> Self {
        graph.to_file()
    }
}

impl fmt::Debug for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}-{}", self.label(u), self.label(v)))
            .collect();
        f.debug_struct("DefiningGraph")
            .field("vertices", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_simplicial_input() {
        assert!(DefiningGraph::new(["a", "b"], [("a", "a")]).is_err());
        assert!(DefiningGraph::new(["a", "b"], [("a", "b"), ("b", "a")]).is_err());
        assert!(DefiningGraph::new(["a", "b"], [("a", "c")]).is_err());
        assert!(DefiningGraph::new(["a", "a"], Vec::<(&str, &str)>::new()).is_err());
        assert!(DefiningGraph::edgeless(["a^2"]).is_err());
    }

    #[test]
    fn commutation_is_symmetric_and_reflexive() {
        let g = DefiningGraph::new(["a", "b", "c"], [("b", "c")]).unwrap();
        let (a, b, c) = (Gen(0), Gen(1), Gen(2));
        assert!(g.commute(b, c) && g.commute(c, b));
        assert!(g.commute(a, a));
        assert!(!g.adjacent(a, a));
        assert!(!g.commute(a, b));
    }

    #[test]
    fn json_round_trip() {
        let g = DefiningGraph::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        let back: DefiningGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(g, back);
        let bad: std::result::Result<DefiningGraph, _> =
            serde_json::from_str(r#"{"vertices": ["a"], "edges": [["a", "z"]]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn complement_diameter_of_path() {
        // complement of the path a-b-c-d is the path b-d-a-c
        let g = DefiningGraph::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        assert_eq!(g.complement_diameter(), Some(3));
        let k2 = DefiningGraph::new(["a", "b"], [("a", "b")]).unwrap();
        assert_eq!(k2.complement_diameter(), None);
    }
}
