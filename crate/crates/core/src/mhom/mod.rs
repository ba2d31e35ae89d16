//! Posets of multihomomorphisms `mhom(G, H)` and the coordinate flip on `mhom(K2, H)`.

mod induce;

pub use self::induce::{induce_on_mhom, verify_sub_taylor, InducedOperation, SubTaylorReport, SubTaylorViolation};
pub use crate::polysearch::SubTaylorWitness;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poset::{MonotoneMap, Poset};

pub const DEFAULT_MAX_ELEMENTS: usize = 100_000;
/// Largest source graph accepted by [`build_mhom`].
pub const MAX_SOURCE_VERTICES: usize = 3;
/// Largest target graph accepted by [`build_mhom`].
pub const MAX_TARGET_VERTICES: usize = 24;

/// A map from `V(G)` to nonempty subsets of `V(H)` (bitmasks) with `m(u) x m(v)` inside `E(H)`
/// for every edge `uv` of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multihom {
    pub values: Vec<u64>,
}

impl Multihom {
    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.values.iter().map(|&m| bits(m).collect()).collect()
    }

    /// Pointwise inclusion.
    pub fn leq(&self, other: &Multihom) -> bool {
        self.values.iter().zip(&other.values).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_valid(&self, g: &Graph, h: &Graph) -> bool {
        if self.values.len() != g.n() || self.values.iter().any(|&m| m == 0 || m >> h.n() != 0) {
            return false;
        }
        g.edges().iter().all(|&(u, v)| {
            bits(self.values[u]).all(|a| bits(self.values[v]).all(|b| h.adjacent(a, b)))
        })
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// All multihomomorphisms `G -> H` ordered by pointwise inclusion, in lexicographic bitmask
/// order.
#[derive(Clone, Debug)]
pub struct MhomPoset {
    pub g: Graph,
    pub h: Graph,
    pub elements: Vec<Multihom>,
    pub poset: Poset,
    index: HashMap<Vec<u64>, usize>,
}

impl MhomPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, values: &[u64]) -> Option<usize> {
        self.index.get(values).copied()
    }

    /// Element `({u}, {v})` of `mhom(K2, H)` for the arc `(u, v)`.
    pub fn arc_element(&self, u: usize, v: usize) -> Option<usize> {
        self.index_of(&[1 << u, 1 << v])
    }

    pub fn dump(&self) -> MhomDump {
        MhomDump {
            source: self.g.clone(),
            target: self.h.clone(),
            elements: self.elements.iter().map(Multihom::sets).collect(),
            covers: self.poset.cover_pairs(),
            flip_pairs: flip_values(self).map(|f| {
                f.iter()
                    .enumerate()
                    .filter(|&(i, &j)| i <= j)
                    .map(|(i, &j)| (i, j))
                    .collect()
            }),
        }
    }
}

/// JSON form of an [`MhomPoset`].
#[derive(Clone, Debug, Serialize)]
pub struct MhomDump {
    pub source: Graph,
    pub target: Graph,
    /// Each element as one sorted vertex list per source vertex.
    pub elements: Vec<Vec<Vec<usize>>>,
    pub covers: Vec<(usize, usize)>,
    /// `(m, flip(m))` with `m <= flip(m)`; absent unless the source is K2.
    pub flip_pairs: Option<Vec<(usize, usize)>>,
}

/// Enumerates `mhom(g, h)` by extending partial assignments vertex by vertex.
///
/// `g` must be connected with at most [`MAX_SOURCE_VERTICES`] vertices. An empty result (no
/// homomorphism `g -> h`) is an empty poset.
pub fn build_mhom(g: &Graph, h: &Graph, max_elements: usize) -> Result<MhomPoset> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Invalid("source graph must be connected and nonempty".into()));
    }
    if g.n() > MAX_SOURCE_VERTICES {
        return Err(Error::budget("source vertex", MAX_SOURCE_VERTICES, g.n()));
    }
    if h.n() > MAX_TARGET_VERTICES {
        return Err(Error::budget("target vertex", MAX_TARGET_VERTICES, h.n()));
    }
    // breadth-first order, so every later vertex has an earlier neighbour
    let mut order = vec![0];
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        for w in g.neighbors(order[i]) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    let nbr = h.neighbor_masks();
    let full = if h.n() == 64 { u64::MAX } else { (1u64 << h.n()) - 1 };
    let common = |s: u64| bits(s).fold(full, |acc, b| acc & nbr[b]);

    let mut out: Vec<Multihom> = Vec::new();
    let mut values = vec![0u64; g.n()];

    #[allow(clippy::too_many_arguments)]
    fn extend(
        depth: usize,
        order: &[usize],
        g: &Graph,
        values: &mut Vec<u64>,
        full: u64,
        common: &dyn Fn(u64) -> u64,
        out: &mut Vec<Multihom>,
        max: usize,
    ) -> Result<()> {
        if depth == order.len() {
            if out.len() >= max {
                return Err(Error::budget("multihomomorphism", max, out.len() + 1));
            }
            out.push(Multihom { values: values.clone() });
            return Ok(());
        }
        let u = order[depth];
        let mut allowed = full;
        for &w in &order[..depth] {
            if g.adjacent(u, w) {
                allowed &= common(values[w]);
            }
        }
        let needs_partner = g.degree(u) > 0;
        // nonempty submasks of `allowed`
        let mut s = allowed;
        while s != 0 {
            let ok = (!needs_partner || common(s) != 0) && (!g.has_self_loop(u) || s & !common(s) == 0);
            if ok {
                values[u] = s;
                extend(depth + 1, order, g, values, full, common, out, max)?;
            }
            s = (s - 1) & allowed;
        }
        values[u] = 0;
        Ok(())
    }

    extend(0, &order, g, &mut values, full, &common, &mut out, max_elements)?;
    out.sort();
    debug_assert!(out.iter().all(|m| m.is_valid(g, h)));
    let index = out.iter().enumerate().map(|(i, m)| (m.values.clone(), i)).collect();
    let poset = Poset::from_fn_unchecked(out.len(), |i, j| out[i].leq(&out[j]));
    Ok(MhomPoset {
        g: g.clone(),
        h: h.clone(),
        elements: out,
        poset,
        index,
    })
}

fn flip_values(mp: &MhomPoset) -> Option<Vec<usize>> {
    if mp.g != Graph::complete(2) {
        return None;
    }
    Some(
        mp.elements
            .iter()
            .map(|m| mp.index_of(&[m.values[1], m.values[0]]).expect("flip of a multihom is a multihom"))
            .collect(),
    )
}

/// The involution `m -> m . swap` of `mhom(K2, H)` and its fixed elements.
#[derive(Clone, Debug)]
pub struct Flip {
    pub map: MonotoneMap,
    pub fixed: Vec<usize>,
}

pub fn flip_map(mp: &MhomPoset) -> Result<Flip> {
    let values = flip_values(mp).ok_or_else(|| Error::Invalid("flip is defined for mhom(K2, H) only".into()))?;
    let map = MonotoneMap::new(mp.poset.clone(), mp.poset.clone(), values)?;
    let fixed = map.fixed_points();
    Ok(Flip { map, fixed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Up,
    Down,
}

/// An arc `(u, v)` of `H` joined to `(v, u)` inside `mhom(K2, H)`.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeFlipWitness {
    pub edge: (usize, usize),
    /// Element indices from `({u},{v})` to `({v},{u})`; consecutive entries are comparable and
    /// the comparisons alternate.
    pub path: Vec<usize>,
    pub steps: Vec<Step>,
}

impl EdgeFlipWitness {
    pub fn validate(&self, mp: &MhomPoset) -> bool {
        let (u, v) = self.edge;
        self.path.first().copied() == mp.arc_element(u, v)
            && self.path.last().copied() == mp.arc_element(v, u)
            && self.steps.len() + 1 == self.path.len()
            && self.steps.windows(2).all(|w| w[0] != w[1])
            && self.path.windows(2).zip(&self.steps).all(|(w, s)| match s {
                Step::Up => mp.poset.lt(w[0], w[1]),
                Step::Down => mp.poset.lt(w[1], w[0]),
            })
    }
}

/// First arc of `h` (in edge order) lying in the same component of `mhom(K2, h)` as its flip.
pub fn edge_flip_witness(h: &Graph, max_elements: usize) -> Result<Option<EdgeFlipWitness>> {
    let mp = build_mhom(&Graph::complete(2), h, max_elements)?;
    Ok(edge_flip_witness_in(&mp))
}

pub fn edge_flip_witness_in(mp: &MhomPoset) -> Option<EdgeFlipWitness> {
    let k = mp.len();
    let nbrs: Vec<Vec<usize>> = (0..k)
        .map(|x| {
            let mut v = mp.poset.upper_covers(x);
            v.extend(mp.poset.lower_covers(x));
            v.sort_unstable();
            v
        })
        .collect();
    for (u, v) in mp.h.edges() {
        let from = mp.arc_element(u, v)?;
        let to = mp.arc_element(v, u)?;
        let mut prev = vec![usize::MAX; k];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &y in &nbrs[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[to] == usize::MAX {
            continue;
        }
        let mut walk = vec![to];
        while *walk.last().unwrap() != from {
            walk.push(prev[*walk.last().unwrap()]);
        }
        walk.reverse();
        // merge runs of steps in the same direction
        let mut path = vec![walk[0]];
        let mut steps: Vec<Step> = Vec::new();
        for &y in &walk[1..] {
            let x = *path.last().unwrap();
            let s = if mp.poset.lt(x, y) { Step::Up } else { Step::Down };
            if steps.last() == Some(&s) {
                *path.last_mut().unwrap() = y;
            } else {
                path.push(y);
                steps.push(s);
            }
        }
        return Some(EdgeFlipWitness {
            edge: (u, v),
            path,
            steps,
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_graphs, is_bipartite, with_loop_subsets, BipartiteCertificate};

    fn k2() -> Graph {
        Graph::complete(2)
    }

    fn upto(n: usize, connected: bool) -> Vec<Graph> {
        (1..=n).flat_map(|k| all_graphs(k, connected)).collect()
    }

    #[test]
    fn k2_k3_has_twelve_elements() {
        let mp = build_mhom(&k2(), &Graph::complete(3), DEFAULT_MAX_ELEMENTS).unwrap();
        assert_eq!(mp.len(), 12);
        let singletons = mp.elements.iter().filter(|m| m.values.iter().all(|v| v.count_ones() == 1)).count();
        assert_eq!(singletons, 6);
        assert!(flip_map(&mp).unwrap().fixed.is_empty());
    }

    #[test]
    fn small_cases() {
        let mp = build_mhom(&k2(), &k2(), 100).unwrap();
        assert_eq!(mp.len(), 2);
        assert_eq!(mp.poset.connected_components().len(), 2);
        let f = flip_map(&mp).unwrap();
        assert_eq!(f.map.values, vec![1, 0]);
        let lp = build_mhom(&k2(), &Graph::loop_vertex(), 100).unwrap();
        assert_eq!(lp.len(), 1);
        assert_eq!(flip_map(&lp).unwrap().fixed, vec![0]);
        assert!(build_mhom(&k2(), &Graph::empty(3), 100).unwrap().is_empty());
    }

    #[test]
    fn c6_has_twenty_four_elements() {
        assert_eq!(build_mhom(&k2(), &Graph::cycle(6), 1000).unwrap().len(), 24);
    }

    /// Brute force over all subset assignments.
    fn brute(g: &Graph, h: &Graph) -> Vec<Multihom> {
        let s = 1usize << h.n();
        let mut out = Vec::new();
        let total = s.pow(g.n() as u32);
        for code in 0..total {
            let values: Vec<u64> = (0..g.n()).map(|i| ((code / s.pow(i as u32)) % s) as u64).collect();
            let m = Multihom { values };
            if m.is_valid(g, h) {
                out.push(m);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let sources = [k2(), Graph::path(3), Graph::complete(3), Graph::from_edges(2, &[(0, 1), (1, 1)]).unwrap()];
        for h in upto(4, false).iter().flat_map(with_loop_subsets).step_by(7) {
            for g in &sources {
                let mp = build_mhom(g, &h, 100_000).unwrap();
                assert_eq!(mp.elements, brute(g, &h), "{g:?} -> {h:?}");
                for i in 0..mp.len() {
                    for j in 0..mp.len() {
                        assert_eq!(mp.poset.leq(i, j), mp.elements[i].leq(&mp.elements[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn budget_and_guards() {
        assert!(build_mhom(&k2(), &Graph::complete(4), 5).unwrap_err().is_budget());
        assert!(build_mhom(&Graph::empty(2), &k2(), 5).is_err());
        assert!(flip_map(&build_mhom(&Graph::path(3), &k2(), 5).unwrap()).is_err());
    }

    #[test]
    fn flip_is_an_involutive_order_isomorphism() {
        for h in upto(4, false).iter().flat_map(with_loop_subsets) {
            let mp = build_mhom(&k2(), &h, 100_000).unwrap();
            let f = flip_map(&mp).unwrap().map.values;
            for i in 0..mp.len() {
                assert_eq!(f[f[i]], i);
                for j in 0..mp.len() {
                    assert_eq!(mp.poset.leq(i, j), mp.poset.leq(f[i], f[j]));
                }
            }
        }
    }

    #[test]
    fn fixed_element_iff_loop_small() {
        for h in upto(4, false).iter().flat_map(with_loop_subsets) {
            let mp = build_mhom(&k2(), &h, 100_000).unwrap();
            assert_eq!(!flip_map(&mp).unwrap().fixed.is_empty(), h.has_loop().is_some());
        }
    }

    #[test]
    fn edge_flip_witness_small() {
        for h in upto(5, true).into_iter().filter(|h| h.edge_count() > 0) {
            let w = edge_flip_witness(&h, 100_000).unwrap();
            let bip = matches!(is_bipartite(&h), BipartiteCertificate::Partition(..));
            assert_eq!(w.is_some(), !bip, "{h:?}");
            if let Some(w) = w {
                let mp = build_mhom(&k2(), &h, 100_000).unwrap();
                assert!(w.validate(&mp));
            }
        }
        assert!(edge_flip_witness(&Graph::cycle(4), 1000).unwrap().is_none());
        let w = edge_flip_witness(&Graph::complete(3), 1000).unwrap().unwrap();
        assert_eq!(w.edge, (0, 1));
    }

    #[test]
    fn dump_lists_flip_pairs() {
        let mp = build_mhom(&k2(), &Graph::complete(3), 1000).unwrap();
        let d = mp.dump();
        assert_eq!(d.flip_pairs.unwrap().len(), 6);
        assert_eq!(d.elements.len(), 12);
        assert!(build_mhom(&Graph::path(3), &k2(), 10).unwrap().dump().flip_pairs.is_none());
    }
}
