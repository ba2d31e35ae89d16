use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use super::Graph;

/// Witness for or against bipartiteness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BipartiteCertificate {
    /// Two disjoint vertex sets covering `V` with no edge inside either.
    Partition(Vec<usize>, Vec<usize>),
    /// Closed walk `v0, v1, ..., v0` with an odd number of edges. A loop gives `(v, v)`.
    OddClosedWalk(Vec<usize>),
}

impl BipartiteCertificate {
    pub fn is_partition(&self) -> bool {
        matches!(self, BipartiteCertificate::Partition(..))
    }

    /// Re-checks the certificate against `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        match self {
            BipartiteCertificate::Partition(a, b) => {
                let mut side = vec![None; g.n()];
                for (s, part) in [(0, a), (1, b)] {
                    for &v in part.iter() {
                        if v >= g.n() || side[v].is_some() {
                            return false;
                        }
                        side[v] = Some(s);
                    }
                }
                side.iter().all(Option::is_some)
                    && g.edges().iter().all(|&(u, v)| side[u] != side[v])
            }
            BipartiteCertificate::OddClosedWalk(w) => {
                w.len() >= 2
                    && w.first() == w.last()
                    && (w.len() - 1) % 2 == 1
                    && w.iter().all(|&v| v < g.n())
                    && w.windows(2).all(|p| g.adjacent(p[0], p[1]))
            }
        }
    }
}

/// BFS 2-colouring per component. A self-loop is reported as an odd walk of length 1.
pub fn is_bipartite(g: &Graph) -> BipartiteCertificate {
    if let Some(v) = g.has_loop() {
        return BipartiteCertificate::OddClosedWalk(vec![v, v]);
    }
    let n = g.n();
    let mut colour: Vec<Option<u8>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                match colour[w] {
                    None => {
                        colour[w] = Some(1 - colour[u].unwrap());
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(c) if Some(c) == colour[u] => {
                        return BipartiteCertificate::OddClosedWalk(odd_walk(
                            &parent, &depth, u, w,
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let (a, b): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| colour[v] == Some(0));
    BipartiteCertificate::Partition(a, b)
}

/// Walk lca -> ... -> u -> w -> ... -> lca through the BFS tree, closed by the edge u-w.
fn odd_walk(parent: &[usize], depth: &[usize], u: usize, w: usize) -> Vec<usize> {
    let mut up_u = vec![u];
    let mut up_w = vec![w];
    let (mut a, mut b) = (u, w);
    while depth[a] > depth[b] {
        a = parent[a];
        up_u.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        up_w.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up_u.push(a);
        up_w.push(b);
    }
    // up_u: u .. lca, up_w: w .. lca
    let mut walk: Vec<usize> = up_u.into_iter().rev().collect();
    walk.extend(up_w);
    walk
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_graphs;

    #[test]
    fn even_cycle_partition() {
        assert_eq!(
            is_bipartite(&Graph::cycle(4)),
            BipartiteCertificate::Partition(vec![0, 2], vec![1, 3])
        );
    }

    #[test]
    fn triangle_odd_walk() {
        assert_eq!(
            is_bipartite(&Graph::complete(3)),
            BipartiteCertificate::OddClosedWalk(vec![0, 1, 2, 0])
        );
    }

    #[test]
    fn loop_is_odd_walk() {
        let mut g = Graph::empty(3);
        g.add_edge(0, 1);
        g.add_edge(2, 2);
        assert_eq!(is_bipartite(&g), BipartiteCertificate::OddClosedWalk(vec![2, 2]));
    }

    #[test]
    fn empty_graph_is_bipartite() {
        assert_eq!(
            is_bipartite(&Graph::empty(0)),
            BipartiteCertificate::Partition(vec![], vec![])
        );
    }

    #[test]
    fn certificates_validate_on_all_small_graphs() {
        for n in 0..=6 {
            for g in all_graphs(n, false) {
                let cert = is_bipartite(&g);
                assert!(cert.validate(&g), "{g:?} -> {cert:?}");
            }
        }
    }

    #[test]
    fn certificate_validation_rejects_forgeries() {
        let g = Graph::complete(3);
        assert!(!BipartiteCertificate::Partition(vec![0], vec![1, 2]).validate(&g));
        assert!(!BipartiteCertificate::OddClosedWalk(vec![0, 1, 0]).validate(&g));
    }
}
