use serde::Serialize;

use super::hom::{find_homomorphism_into, is_homomorphism};
use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_CORE_MAX_VERTICES: usize = 8;

/// A core of a graph together with a retraction onto it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreResult {
    pub core: Graph,
    /// Original indices of the core's vertices; core vertex `i` is `vertices[i]`.
    pub vertices: Vec<usize>,
    /// Homomorphism from the input onto `core`, identity on the core vertices.
    pub retraction: Vec<usize>,
}

/// Shrinks `g` by repeatedly finding an endomorphism that misses a vertex.
///
/// Vertices are tried in ascending order, so the result is deterministic. The returned
/// retraction is normalised to fix the core pointwise.
pub fn compute_core(g: &Graph, max_vertices: usize) -> Result<CoreResult> {
    if g.n() > max_vertices {
        return Err(Error::budget("core vertex", max_vertices, g.n()));
    }
    let n = g.n();
    // `alive` is the current induced subgraph, `map` a homomorphism g -> alive.
    let mut alive: Vec<usize> = (0..n).collect();
    let mut map: Vec<usize> = (0..n).collect();
    'shrink: loop {
        let current = g.induced(&alive);
        for drop in 0..alive.len() {
            let allowed = (0..alive.len())
                .filter(|&i| i != drop)
                .fold(0u64, |m, i| m | (1 << i));
            if let Some(f) = find_homomorphism_into(&current, &current, allowed) {
                let pos: Vec<usize> = {
                    let mut p = vec![usize::MAX; n];
                    for (i, &v) in alive.iter().enumerate() {
                        p[v] = i;
                    }
                    p
                };
                for m in map.iter_mut() {
                    *m = alive[f[pos[*m]]];
                }
                alive.remove(drop);
                continue 'shrink;
            }
        }
        break;
    }

    // `map` restricted to the core is an automorphism; undo it so the core is fixed pointwise.
    let k = alive.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in alive.iter().enumerate() {
        pos[v] = i;
    }
    let sigma: Vec<usize> = alive.iter().map(|&v| pos[map[v]]).collect();
    let mut sigma_inv = vec![0; k];
    for (i, &s) in sigma.iter().enumerate() {
        sigma_inv[s] = i;
    }
    let retraction: Vec<usize> = map.iter().map(|&v| sigma_inv[pos[v]]).collect();
    let core = g.induced(&alive);
    debug_assert!(is_homomorphism(g, &core, &retraction));
    Ok(CoreResult {
        core,
        vertices: alive,
        retraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_graphs, canonical_form};

    /// All endomorphisms by exhaustive enumeration of the n^n vertex maps.
    fn all_endomorphisms(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        let total = n.pow(n as u32);
        (0..total)
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let d = code % n;
                        code /= n;
                        d
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|m| is_homomorphism(g, g, m))
            .collect()
    }

    fn smallest_image(g: &Graph) -> usize {
        all_endomorphisms(g)
            .iter()
            .map(|m| {
                let mut img = m.clone();
                img.sort_unstable();
                img.dedup();
                img.len()
            })
            .min()
            .unwrap_or(0)
    }

    #[test]
    fn clique_is_its_own_core() {
        let r = compute_core(&Graph::complete(3), 8).unwrap();
        assert_eq!(r.core, Graph::complete(3));
        assert_eq!(r.retraction, vec![0, 1, 2]);
    }

    #[test]
    fn path_and_even_cycle_retract_to_edge() {
        // Oracle: the smallest endomorphism image of P3 and C4 has two vertices.
        for g in [Graph::path(3), Graph::cycle(4)] {
            assert_eq!(smallest_image(&g), 2);
            let r = compute_core(&g, 8).unwrap();
            assert_eq!(r.core, Graph::complete(2));
            assert!(is_homomorphism(&g, &r.core, &r.retraction));
        }
    }

    #[test]
    fn size_guard() {
        assert!(compute_core(&Graph::cycle(9), 8).unwrap_err().is_budget());
    }

    #[test]
    fn loop_absorbs_everything() {
        let mut g = Graph::complete(4);
        g.add_edge(1, 1);
        let r = compute_core(&g, 8).unwrap();
        assert_eq!(r.core, Graph::loop_vertex());
        assert_eq!(r.vertices, vec![1]);
    }

    #[test]
    fn cores_have_only_automorphisms() {
        for n in 0..=5 {
            for g in all_graphs(n, false) {
                let r = compute_core(&g, 8).unwrap();
                assert!(is_homomorphism(&g, &r.core, &r.retraction));
                for (i, &v) in r.vertices.iter().enumerate() {
                    assert_eq!(r.retraction[v], i, "retraction must fix the core");
                }
                let k = r.core.n();
                for m in all_endomorphisms(&r.core) {
                    let mut img = m.clone();
                    img.sort_unstable();
                    img.dedup();
                    assert_eq!(img.len(), k, "core of {g:?} has a non-surjective endomorphism");
                }
                assert_eq!(smallest_image(&g), k);
            }
        }
    }

    #[test]
    fn core_is_isomorphism_invariant() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let h = g.relabel(&[4, 2, 0, 3, 1]);
        let a = canonical_form(&compute_core(&g, 8).unwrap().core);
        let b = canonical_form(&compute_core(&h, 8).unwrap().core);
        assert_eq!(a, b);
    }
}
