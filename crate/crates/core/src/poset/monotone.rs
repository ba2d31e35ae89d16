use serde::Serialize;

use super::{irreducible_elements, Poset};
use crate::error::{Error, Result};

pub const DEFAULT_RAMIFIED_MAX_SIZE: usize = 6;

/// An order-preserving map between two posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    pub source: Poset,
    pub target: Poset,
    pub values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Poset, target: Poset, values: Vec<usize>) -> Result<Self> {
        if values.len() != source.len() {
            return Err(Error::Invalid(format!(
                "map has {} values for a source of size {}",
                values.len(),
                source.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= target.len()) {
            return Err(Error::Invalid(format!("value {v} outside target")));
        }
        if let Some((x, y)) = source
            .strict_pairs()
            .into_iter()
            .find(|&(x, y)| !target.leq(values[x], values[y]))
        {
            return Err(Error::Invalid(format!(
                "not monotone: {x} < {y} but {} !<= {}",
                values[x], values[y]
            )));
        }
        Ok(MonotoneMap { source, target, values })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// Elements with `f(x) = x`; only meaningful for self-maps.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&x| self.values[x] == x).collect()
    }
}

/// Linear extension: x < y implies x earlier.
fn linear_extension(p: &Poset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&x| (p.down_set(x).count_ones(..), x));
    order
}

/// Backtracking over monotone maps p -> q with `values[x] in domains[x]`.
/// `visit` returns false to stop the search.
fn search_monotone(
    p: &Poset,
    q: &Poset,
    domains: &[Vec<usize>],
    injective: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let order = linear_extension(p);
    let mut values = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    fn go(
        depth: usize,
        order: &[usize],
        p: &Poset,
        q: &Poset,
        domains: &[Vec<usize>],
        injective: bool,
        values: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            return visit(values);
        }
        let x = order[depth];
        for &v in &domains[x] {
            if injective && used[v] {
                continue;
            }
            // all earlier-placed elements below x must map below v
            let ok = order[..depth].iter().all(|&w| !p.leq(w, x) || q.leq(values[w], v));
            if !ok {
                continue;
            }
            values[x] = v;
            if injective {
                used[v] = true;
            }
            let keep_going = go(depth + 1, order, p, q, domains, injective, values, used, visit);
            if injective {
                used[v] = false;
            }
            values[x] = usize::MAX;
            if !keep_going {
                return false;
            }
        }
        true
    }
    go(0, &order, p, q, domains, injective, &mut values, &mut used, visit);
}

/// Every monotone self-map of `p`, in lexicographic order of the value arrays.
pub fn monotone_self_maps(p: &Poset) -> Vec<Vec<usize>> {
    let all: Vec<Vec<usize>> = vec![(0..p.len()).collect(); p.len()];
    let mut out = Vec::new();
    search_monotone(p, p, &all, false, &mut |v| {
        out.push(v.to_vec());
        true
    });
    out.sort();
    out
}

/// Order automorphisms of `p`. For finite posets a monotone bijection has a monotone inverse.
pub fn automorphisms(p: &Poset) -> Vec<Vec<usize>> {
    let domains: Vec<Vec<usize>> = (0..p.len())
        .map(|x| {
            let (ux, dx) = (p.up_set(x).count_ones(..), p.down_set(x).count_ones(..));
            (0..p.len())
                .filter(|&y| p.up_set(y).count_ones(..) == ux && p.down_set(y).count_ones(..) == dx)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    search_monotone(p, p, &domains, true, &mut |v| {
        out.push(v.to_vec());
        true
    });
    out.sort();
    out
}

/// Is there a monotone self-map other than `f` that is pointwise comparable to `f`?
fn has_comparable_neighbour(p: &Poset, f: &[usize]) -> bool {
    for upward in [true, false] {
        let domains: Vec<Vec<usize>> = (0..p.len())
            .map(|x| {
                let set = if upward { p.up_set(f[x]) } else { p.down_set(f[x]) };
                set.ones().collect()
            })
            .collect();
        let mut found = false;
        search_monotone(p, p, &domains, false, &mut |g| {
            found = g != f;
            !found
        });
        if found {
            return true;
        }
    }
    false
}

/// Outcome of checking ramification two ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RamifiedCertificate {
    /// No irreducible elements.
    pub ramified: bool,
    /// Every automorphism is alone in its connected component of the poset of monotone self-maps.
    pub isolated_automorphisms: bool,
    /// `ramified == isolated_automorphisms`.
    pub criterion_agrees: bool,
    pub automorphism_count: usize,
}

/// Compares ramification with isolation of automorphisms among monotone self-maps.
///
/// Isolation of an automorphism `f` is decided by searching for any other monotone map
/// `g >= f` or `g <= f`; the component of `f` is a singleton exactly when none exists.
pub fn is_ramified_certified(p: &Poset, max_size: usize) -> Result<RamifiedCertificate> {
    if p.len() > max_size {
        return Err(Error::budget("poset size for self-map enumeration", max_size, p.len()));
    }
    let ramified = irreducible_elements(p).is_empty();
    let auts = automorphisms(p);
    let isolated = auts.iter().all(|f| !has_comparable_neighbour(p, f));
    Ok(RamifiedCertificate {
        ramified,
        isolated_automorphisms: isolated,
        criterion_agrees: ramified == isolated,
        automorphism_count: auts.len(),
    })
}
