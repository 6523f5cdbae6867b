use std::collections::HashSet;

use crate::error::{Error, Result};

pub type Weight = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Weight,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected simple graph with non-negative integer weights and an optional
/// bipartition that every edge must cross.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<Edge>,
    sides: Option<Vec<Side>>,
    pairs: HashSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize) -> Self {
        Self {
            vertices,
            edges: Vec::new(),
            sides: None,
            pairs: HashSet::new(),
        }
    }

    /// Vertices `0..left` form the left side, `left..left + right` the right side.
    pub fn bipartite(left: usize, right: usize) -> Self {
        let mut sides = vec![Side::Left; left];
        sides.resize(left + right, Side::Right);
        Self {
            vertices: left + right,
            edges: Vec::new(),
            sides: Some(sides),
            pairs: HashSet::new(),
        }
    }

    pub fn with_sides(sides: Vec<Side>) -> Self {
        Self {
            vertices: sides.len(),
            edges: Vec::new(),
            sides: Some(sides),
            pairs: HashSet::new(),
        }
    }

    /// Adds `{u, v}` and returns its edge index.
    pub fn add_edge(&mut self, u: usize, v: usize, weight: Weight) -> Result<usize> {
        if u >= self.vertices || v >= self.vertices {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) outside {} vertices",
                self.vertices
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        if let Some(sides) = &self.sides {
            if sides[u] == sides[v] {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) does not cross the bipartition"
                )));
            }
        }
        if !self.pairs.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
        }
        self.edges.push(Edge { u, v, weight });
        Ok(self.edges.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    pub fn sides(&self) -> Option<&[Side]> {
        self.sides.as_deref()
    }

    pub fn side(&self, v: usize) -> Option<Side> {
        self.sides.as_ref().map(|s| s[v])
    }

    pub fn is_bipartite_annotated(&self) -> bool {
        self.sides.is_some()
    }
}

/// A set of vertex-disjoint edges, held as sorted edge indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<usize>,
}

impl Matching {
    pub fn from_edges(graph: &Graph, mut edges: Vec<usize>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        let mut used = vec![false; graph.vertex_count()];
        for &e in &edges {
            let Some(edge) = graph.edges().get(e) else {
                return Err(Error::InvalidGraph(format!("edge index {e} out of range")));
            };
            for x in [edge.u, edge.v] {
                if std::mem::replace(&mut used[x], true) {
                    return Err(Error::InvalidGraph(format!("vertex {x} matched twice")));
                }
            }
        }
        Ok(Self { edges })
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<usize>) -> Self {
        Self { edges }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn weight(&self, graph: &Graph) -> u128 {
        self.edges.iter().map(|&e| graph.edge(e).weight as u128).sum()
    }

    /// `mate[v]` is `Some(w)` when `v` is matched to `w`.
    pub fn mates(&self, graph: &Graph) -> Vec<Option<usize>> {
        let mut mate = vec![None; graph.vertex_count()];
        for &e in &self.edges {
            let Edge { u, v, .. } = graph.edge(e);
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }
}
