//! Finite posets, cover relations, dismantling, and monotone self-maps.

mod dismantle;
mod monotone;
mod random;
mod text;

pub use self::dismantle::{dismantle, irreducible_elements, CoverKind, DismantleTrace, Irreducible};
pub use self::monotone::{
    automorphisms, is_ramified_certified, monotone_self_maps, MonotoneMap, RamifiedCertificate,
    DEFAULT_RAMIFIED_MAX_SIZE,
};
pub use self::random::random_poset;
pub use self::text::{parse_poset, to_poset_text};

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A partial order on `0..k`, stored as up-sets and down-sets.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    k: usize,
    /// `up[x]` = { y : x <= y }
    up: Vec<FixedBitSet>,
    /// `down[x]` = { y : y <= x }
    down: Vec<FixedBitSet>,
}

impl Poset {
    /// Validates reflexivity, antisymmetry and transitivity of a row-major `k x k` relation.
    pub fn new(k: usize, leq: &[bool]) -> Result<Self> {
        if leq.len() != k * k {
            return Err(Error::InvalidPoset(format!(
                "relation has {} entries, expected {}",
                leq.len(),
                k * k
            )));
        }
        let at = |i: usize, j: usize| leq[i * k + j];
        for i in 0..k {
            if !at(i, i) {
                return Err(Error::InvalidPoset(format!("not reflexive at {i}")));
            }
            for j in 0..k {
                if i != j && at(i, j) && at(j, i) {
                    return Err(Error::InvalidPoset(format!(
                        "not antisymmetric: {i} <= {j} <= {i}"
                    )));
                }
                if at(i, j) {
                    for l in 0..k {
                        if at(j, l) && !at(i, l) {
                            return Err(Error::InvalidPoset(format!(
                                "not transitive: {i} <= {j} <= {l}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Self::from_fn_unchecked(k, at))
    }

    pub(crate) fn from_fn_unchecked(k: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut up = vec![FixedBitSet::with_capacity(k); k];
        let mut down = vec![FixedBitSet::with_capacity(k); k];
        for i in 0..k {
            for j in 0..k {
                if leq(i, j) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        Poset { k, up, down }
    }

    /// Poset generated by strict relations `i < j`, closed transitively. Fails on cycles.
    pub fn from_strict_relations(k: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; k * k];
        for i in 0..k {
            leq[i * k + i] = true;
        }
        for &(i, j) in relations {
            if i >= k || j >= k {
                return Err(Error::InvalidPoset(format!("relation {i} < {j} out of range 0..{k}")));
            }
            if i == j {
                return Err(Error::InvalidPoset(format!("strict relation {i} < {i}")));
            }
            leq[i * k + j] = true;
        }
        // Warshall closure.
        for m in 0..k {
            for i in 0..k {
                if leq[i * k + m] {
                    for j in 0..k {
                        if leq[m * k + j] {
                            leq[i * k + j] = true;
                        }
                    }
                }
            }
        }
        Poset::new(k, &leq)
    }

    pub fn chain(k: usize) -> Self {
        Self::from_fn_unchecked(k, |i, j| i <= j)
    }

    pub fn antichain(k: usize) -> Self {
        Self::from_fn_unchecked(k, |i, j| i == j)
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub(crate) fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub(crate) fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Elements `y` covering `x` (x < y with nothing strictly between), ascending.
    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.covers_within(x, true, None)
    }

    /// Elements covered by `x`, ascending.
    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.covers_within(x, false, None)
    }

    /// Covers of `x` in the subposet on `alive` (which must contain `x`).
    pub(crate) fn covers_within(&self, x: usize, upward: bool, alive: Option<&FixedBitSet>) -> Vec<usize> {
        let (toward, back) = if upward { (&self.up, &self.down) } else { (&self.down, &self.up) };
        let mut strict = toward[x].clone();
        strict.set(x, false);
        if let Some(a) = alive {
            strict.intersect_with(a);
        }
        strict
            .ones()
            .filter(|&y| {
                // nothing of `strict` lies strictly between x and y
                let mut between = strict.clone();
                between.intersect_with(&back[y]);
                between.set(y, false);
                between.is_clear()
            })
            .collect()
    }

    /// Strict relations of the cover relation (Hasse diagram), sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.k)
            .flat_map(|x| self.upper_covers(x).into_iter().map(move |y| (x, y)))
            .collect()
    }

    /// Strict relations `x < y`, sorted.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.k {
            for y in self.up[x].ones() {
                if y != x {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Induced subposet on `elements` (renumbered in the given order).
    pub fn subposet(&self, elements: &[usize]) -> Poset {
        Self::from_fn_unchecked(elements.len(), |i, j| self.leq(elements[i], elements[j]))
    }

    /// Components of the comparability graph, each sorted, ordered by smallest element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.k);
        let mut out = Vec::new();
        for s in 0..self.k {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for y in self.up[x].ones().chain(self.down[x].ones()) {
                    if !seen.contains(y) {
                        seen.insert(y);
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Length (element count) of a longest chain.
    pub fn height(&self) -> usize {
        // elements sorted so that x < y implies x before y: by down-set size
        let mut order: Vec<usize> = (0..self.k).collect();
        order.sort_by_key(|&x| self.down[x].count_ones(..));
        let mut best = vec![1usize; self.k];
        for (pos, &y) in order.iter().enumerate() {
            for &x in &order[..pos] {
                if self.lt(x, y) {
                    best[y] = best[y].max(best[x] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Row-major relation matrix.
    pub fn relation(&self) -> Vec<bool> {
        let mut out = vec![false; self.k * self.k];
        for x in 0..self.k {
            for y in self.up[x].ones() {
                out[x * self.k + y] = true;
            }
        }
        out
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(k={}, covers={:?})", self.k, self.cover_pairs())
    }
}

impl Serialize for Poset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            k: usize,
            covers: Vec<(usize, usize)>,
        }
        Repr {
            k: self.k,
            covers: self.cover_pairs(),
        }
        .serialize(s)
    }
}
