use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::Poset;

pub const DEFAULT_FACE_BUDGET: usize = 1_000_000;

/// A finite simplicial complex; faces are sorted vertex lists grouped by dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// `faces[d]` holds the d-dimensional faces in lexicographic order.
    faces: Vec<Vec<Vec<usize>>>,
    #[serde(skip)]
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    fn from_sets(vertex_count: usize, mut faces: Vec<Vec<Vec<usize>>>) -> Self {
        while faces.last().is_some_and(Vec::is_empty) {
            faces.pop();
        }
        for layer in faces.iter_mut() {
            layer.sort();
            layer.dedup();
        }
        let index = faces
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
            .collect();
        SimplicialComplex {
            vertex_count,
            faces,
            index,
        }
    }

    /// Downward closure of `facets` on vertices `0..vertex_count`.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            if f.len() > 20 {
                return Err(Error::Invalid("facet too large for subset closure".into()));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::Invalid(format!("vertex {v} outside 0..{vertex_count}")));
            }
            for mask in 1u32..(1 << f.len()) {
                let sub: Vec<usize> = (0..f.len()).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                all.insert(sub);
            }
        }
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        for v in 0..vertex_count {
            all.insert(vec![v]);
        }
        for f in all {
            let d = f.len() - 1;
            if faces.len() <= d {
                faces.resize(d + 1, Vec::new());
            }
            faces[d].push(f);
        }
        Ok(Self::from_sets(vertex_count, faces))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn max_dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn faces(&self, dim: usize) -> &[Vec<usize>] {
        self.faces.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn total_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// Position of a sorted face within its dimension.
    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        let d = face.len().checked_sub(1)?;
        self.index.get(d)?.get(face).copied()
    }

    /// Every subset of a face is a face.
    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().skip(1).flatten().all(|f| {
            (0..f.len()).all(|i| {
                let mut g = f.clone();
                g.remove(i);
                self.face_index(&g).is_some()
            })
        })
    }
}

/// Order complex of `p`: one face per chain. `max_dim` truncates to chains of at most
/// `max_dim + 1` elements.
pub fn order_complex(p: &Poset, max_dim: Option<usize>, face_budget: usize) -> Result<SimplicialComplex> {
    let limit = max_dim.map_or(usize::MAX, |d| d + 1);
    let above: Vec<Vec<usize>> = (0..p.len())
        .map(|x| p.up_set(x).ones().filter(|&y| y != x).collect())
        .collect();
    let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut total = 0usize;
    let mut chain = Vec::new();

    fn extend(
        chain: &mut Vec<usize>,
        candidates: &[usize],
        above: &[Vec<usize>],
        limit: usize,
        faces: &mut Vec<Vec<Vec<usize>>>,
        total: &mut usize,
        budget: usize,
    ) -> Result<()> {
        for &y in candidates {
            chain.push(y);
            *total += 1;
            if *total > budget {
                return Err(Error::budget("order complex face", budget, *total));
            }
            let d = chain.len() - 1;
            if faces.len() <= d {
                faces.resize(d + 1, Vec::new());
            }
            let mut f = chain.clone();
            f.sort_unstable();
            faces[d].push(f);
            if chain.len() < limit {
                // by transitivity everything above y is above the whole chain
                extend(chain, &above[y], above, limit, faces, total, budget)?;
            }
            chain.pop();
        }
        Ok(())
    }

    for x in 0..p.len() {
        chain.push(x);
        total += 1;
        if total > face_budget {
            return Err(Error::budget("order complex face", face_budget, total));
        }
        if faces.is_empty() {
            faces.push(Vec::new());
        }
        faces[0].push(vec![x]);
        if limit > 1 {
            extend(&mut chain, &above[x], &above, limit, &mut faces, &mut total, face_budget)?;
        }
        chain.pop();
    }
    Ok(SimplicialComplex::from_sets(p.len(), faces))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_is_discrete() {
        let c = order_complex(&Poset::antichain(3), None, 100).unwrap();
        assert_eq!(c.face_counts(), vec![3]);
    }

    #[test]
    fn chain_is_a_simplex() {
        let c = order_complex(&Poset::chain(3), None, 100).unwrap();
        assert_eq!(c.face_counts(), vec![3, 3, 1]);
        assert!(c.is_downward_closed());
        assert_eq!(c.faces(2), &[vec![0, 1, 2]]);
    }

    #[test]
    fn truncation_and_budget() {
        let c = order_complex(&Poset::chain(4), Some(1), 100).unwrap();
        assert_eq!(c.face_counts(), vec![4, 6]);
        assert!(order_complex(&Poset::chain(4), None, 10).unwrap_err().is_budget());
        assert_eq!(order_complex(&Poset::chain(4), None, 15).unwrap().total_faces(), 15);
    }

    #[test]
    fn faces_are_chains_brute_force() {
        // every subset of a random poset is a face iff it is a chain
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = crate::poset::random_poset(6, 0.4, &mut rng);
            let c = order_complex(&p, None, 10_000).unwrap();
            for mask in 1u32..64 {
                let s: Vec<usize> = (0..6).filter(|i| mask & (1 << i) != 0).collect();
                let is_chain = s.iter().all(|&a| s.iter().all(|&b| p.comparable(a, b)));
                assert_eq!(c.face_index(&s).is_some(), is_chain);
            }
        }
    }

    #[test]
    fn facet_closure() {
        let c = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(c.face_counts(), vec![3, 3]);
        assert!(c.is_downward_closed());
    }
}
