use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverKind {
    UniqueUpperCover,
    UniqueLowerCover,
}

/// An irreducible element and the cover that makes it so.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Irreducible {
    pub element: usize,
    pub kind: CoverKind,
    pub witness: usize,
}

fn irreducible_within(p: &Poset, x: usize, alive: Option<&FixedBitSet>) -> Option<Irreducible> {
    let up = p.covers_within(x, true, alive);
    if up.len() == 1 {
        return Some(Irreducible {
            element: x,
            kind: CoverKind::UniqueUpperCover,
            witness: up[0],
        });
    }
    let down = p.covers_within(x, false, alive);
    if down.len() == 1 {
        return Some(Irreducible {
            element: x,
            kind: CoverKind::UniqueLowerCover,
            witness: down[0],
        });
    }
    None
}

/// Elements with exactly one upper cover or exactly one lower cover. An element with both is
/// reported once, by its upper cover.
pub fn irreducible_elements(p: &Poset) -> Vec<Irreducible> {
    (0..p.len()).filter_map(|x| irreducible_within(p, x, None)).collect()
}

/// Record of a dismantling run.
#[derive(Clone, Debug, Serialize)]
pub struct DismantleTrace {
    /// Removed elements in removal order, in the input poset's numbering.
    pub removed: Vec<Irreducible>,
    /// Surviving elements as a ramified subposet.
    pub residual: Poset,
    /// `index_map[i]` is the input element that became residual element `i`.
    pub index_map: Vec<usize>,
}

impl DismantleTrace {
    /// True if the poset dismantled to a single point.
    pub fn reaches_point(&self) -> bool {
        self.residual.len() == 1
    }
}

/// Removes the smallest-index irreducible element until none remain.
pub fn dismantle(p: &Poset) -> DismantleTrace {
    let mut alive = FixedBitSet::with_capacity(p.len());
    alive.insert_range(..);
    let mut removed = Vec::new();
    'outer: loop {
        for x in alive.ones().collect::<Vec<_>>() {
            if let Some(irr) = irreducible_within(p, x, Some(&alive)) {
                alive.set(x, false);
                removed.push(irr);
                continue 'outer;
            }
        }
        break;
    }
    let index_map: Vec<usize> = alive.ones().collect();
    DismantleTrace {
        removed,
        residual: p.subposet(&index_map),
        index_map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::random_poset;
    use rand::SeedableRng;

    #[test]
    fn chain_irreducibles() {
        let irr = irreducible_elements(&Poset::chain(3));
        assert_eq!(
            irr,
            vec![
                Irreducible { element: 0, kind: CoverKind::UniqueUpperCover, witness: 1 },
                Irreducible { element: 1, kind: CoverKind::UniqueUpperCover, witness: 2 },
                Irreducible { element: 2, kind: CoverKind::UniqueLowerCover, witness: 1 },
            ]
        );
    }

    #[test]
    fn antichain_has_none() {
        assert!(irreducible_elements(&Poset::antichain(3)).is_empty());
    }

    #[test]
    fn chain_dismantles_to_point() {
        let t = dismantle(&Poset::chain(3));
        assert!(t.reaches_point());
        assert_eq!(t.removed.len(), 2);
    }

    #[test]
    fn v_poset_dismantles_to_point() {
        // a=0 < c=2, b=1 < c=2
        let p = Poset::from_strict_relations(3, &[(0, 2), (1, 2)]).unwrap();
        let t = dismantle(&p);
        assert!(t.reaches_point());
        assert_eq!(t.index_map, vec![2]);
        assert_eq!(t.removed[0].element, 0);
        assert_eq!(t.removed[0].witness, 2);
    }

    #[test]
    fn antichain_stays() {
        let t = dismantle(&Poset::antichain(3));
        assert!(t.removed.is_empty());
        assert_eq!(t.residual.len(), 3);
    }

    /// Replays the trace, checking each removal against covers recomputed from scratch.
    fn replay(p: &Poset, t: &DismantleTrace) {
        let mut alive: Vec<usize> = (0..p.len()).collect();
        for r in &t.removed {
            let sub = p.subposet(&alive);
            let pos = alive.iter().position(|&v| v == r.element).expect("removed twice");
            let covers = match r.kind {
                CoverKind::UniqueUpperCover => sub.upper_covers(pos),
                CoverKind::UniqueLowerCover => sub.lower_covers(pos),
            };
            assert_eq!(covers.len(), 1, "removed a non-irreducible element");
            assert_eq!(alive[covers[0]], r.witness);
            alive.remove(pos);
        }
        assert_eq!(alive, t.index_map);
        assert!(irreducible_elements(&t.residual).is_empty(), "residual must be ramified");
    }

    #[test]
    fn random_dismantlings_replay() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let p = random_poset(7, 0.35, &mut rng);
            replay(&p, &dismantle(&p));
        }
    }
}
