//! Finite undirected graphs with optional self-loops.

mod bipartite;
mod core;
mod enumerate;
mod hom;
mod parse;

pub use self::bipartite::{is_bipartite, BipartiteCertificate};
pub use self::core::{compute_core, CoreResult, DEFAULT_CORE_MAX_VERTICES};
pub use self::enumerate::{all_graphs, canonical_form, with_loop_subsets};
pub use self::hom::{find_homomorphism, is_homomorphism};
pub use self::parse::{parse_edge_list, parse_graph, parse_graph6, to_edge_list, to_graph6, GraphFormat};

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A finite graph on vertices `0..n`. Edges are unordered pairs; `{v, v}` is a self-loop.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Cycle C_n (n >= 3).
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    /// A single vertex carrying a self-loop.
    pub fn loop_vertex() -> Self {
        let mut g = Graph::empty(1);
        g.add_edge(0, 0);
        g
    }

    /// Panics if an endpoint is out of range.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn has_self_loop(&self, v: usize) -> bool {
        self.adjacent(v, v)
    }

    /// Neighbours of `v` in ascending order (includes `v` itself when looped).
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.adjacent(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Edges as pairs `(u, v)` with `u <= v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u..self.n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Ordered pairs `(u, v)` with `u ~ v`: each non-loop edge appears in both orientations.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Smallest vertex carrying a self-loop.
    pub fn has_loop(&self) -> Option<usize> {
        (0..self.n).find(|&v| self.has_self_loop(v))
    }

    /// Induced subgraph on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i) {
                if self.adjacent(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Neighbourhood of each vertex as a bitmask. Requires `n <= 64`.
    pub(crate) fn neighbor_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs at most 64 vertices");
        (0..self.n)
            .map(|v| self.neighbors(v).fold(0u64, |m, u| m | (1 << u)))
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        Repr {
            n: self.n,
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        let r = Repr::deserialize(d)?;
        Graph::from_edges(r.n, &r.edges).map_err(serde::de::Error::custom)
    }
}
