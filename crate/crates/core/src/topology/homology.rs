use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::complex::SimplicialComplex;
use super::matrix::{smith_normal_form, IntMatrix};

/// Integral homology in one dimension: `Z^betti` plus the listed cyclic torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub dim: usize,
    pub betti: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Factors as JSON numbers when they fit in `u64`, decimal strings otherwise.
fn serialize_factors<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for f in v {
        match u64::try_from(f) {
            Ok(x) => seq.serialize_element(&x)?,
            Err(_) => seq.serialize_element(&f.to_string())?,
        }
    }
    seq.end()
}

/// Boundary `C_d -> C_{d-1}`: rows index (d-1)-faces, columns d-faces. Removing the vertex at
/// position `i` of an ascending face carries sign `(-1)^i`.
pub fn boundary_matrix(c: &SimplicialComplex, d: usize) -> IntMatrix {
    assert!(d >= 1, "boundary starts in dimension 1");
    let rows = c.faces(d - 1).len();
    let cols = c.faces(d).len();
    let mut m = IntMatrix::zeros(rows, cols);
    for (j, face) in c.faces(d).iter().enumerate() {
        for i in 0..face.len() {
            let mut sub = face.clone();
            sub.remove(i);
            let r = c.face_index(&sub).expect("complex is downward closed");
            m.set(r, j, if i % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// Boundary matrices `d = 1..=top`, checked to compose to zero.
pub fn boundaries(c: &SimplicialComplex) -> Vec<IntMatrix> {
    let top = c.max_dim().unwrap_or(0);
    let out: Vec<IntMatrix> = (1..=top).map(|d| boundary_matrix(c, d)).collect();
    for pair in out.windows(2) {
        let comp = pair[0].checked_mul(&pair[1]).expect("boundary entries are small");
        assert!(comp.is_zero(), "boundary of a boundary is nonzero");
    }
    out
}

/// Unreduced integral homology `H_0 .. H_up_to`. Dimensions above the top face are trivial.
pub fn homology(c: &SimplicialComplex, up_to: usize) -> Vec<HomologyGroup> {
    let top = c.max_dim();
    let counts = c.face_counts();
    // rank and torsion of boundary d, for d = 1 ..= up_to + 1
    let mut snf = Vec::new();
    for d in 1..=up_to + 1 {
        if top.is_some_and(|t| d <= t) {
            snf.push(Some(smith_normal_form(&boundary_matrix(c, d))));
        } else {
            snf.push(None);
        }
    }
    let rank = |d: usize| -> usize {
        if d == 0 {
            0
        } else {
            snf[d - 1].as_ref().map_or(0, |s| s.rank)
        }
    };
    (0..=up_to)
        .map(|d| {
            let n = counts.get(d).copied().unwrap_or(0);
            HomologyGroup {
                dim: d,
                betti: n - rank(d) - rank(d + 1),
                torsion: snf[d].as_ref().map_or_else(Vec::new, |s| s.torsion()),
            }
        })
        .collect()
}

/// True if the groups match a point: `H_0 = Z`, everything else zero.
pub fn is_point_homology(groups: &[HomologyGroup]) -> bool {
    groups.iter().all(|g| {
        if g.dim == 0 {
            g.betti == 1 && g.torsion.is_empty()
        } else {
            g.is_trivial()
        }
    })
}

pub fn euler_characteristic(c: &SimplicialComplex) -> i64 {
    c.face_counts()
        .iter()
        .enumerate()
        .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{random_poset, Poset};
    use crate::topology::order_complex;
    use rand::SeedableRng;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn bettis(g: &[HomologyGroup]) -> Vec<usize> {
        g.iter().map(|h| h.betti).collect()
    }

    #[test]
    fn circle() {
        let h = homology(&hollow_triangle(), 1);
        assert_eq!(bettis(&h), vec![1, 1]);
        assert!(h.iter().all(|g| g.torsion.is_empty()));
        assert_eq!(euler_characteristic(&hollow_triangle()), 0);
    }

    #[test]
    fn disk() {
        let c = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(bettis(&homology(&c, 2)), vec![1, 0, 0]);
        assert_eq!(euler_characteristic(&c), 1);
    }

    #[test]
    fn projective_plane_has_torsion() {
        // 6-vertex triangulation of RP^2
        let facets = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        let c = SimplicialComplex::from_facets(6, &facets).unwrap();
        let h = homology(&c, 2);
        assert_eq!(bettis(&h), vec![1, 0, 0]);
        assert_eq!(h[1].torsion, vec![BigUint::from(2u32)]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let p = random_poset(7, 0.4, &mut rng);
            let c = order_complex(&p, None, 100_000).unwrap();
            let b = boundaries(&c);
            for pair in b.windows(2) {
                assert!(pair[0].checked_mul(&pair[1]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn b0_counts_components() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let p = random_poset(7, 0.15, &mut rng);
            let c = order_complex(&p, None, 100_000).unwrap();
            assert_eq!(homology(&c, 0)[0].betti, p.connected_components().len());
        }
    }

    #[test]
    fn euler_equals_alternating_betti_sum() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..30 {
            let p = random_poset(7, 0.3, &mut rng);
            let c = order_complex(&p, None, 100_000).unwrap();
            let top = c.max_dim().unwrap();
            let s: i64 = homology(&c, top)
                .iter()
                .map(|g| if g.dim % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
                .sum();
            assert_eq!(s, euler_characteristic(&c));
        }
    }

    #[test]
    fn point_profile() {
        let c = order_complex(&Poset::chain(1), None, 10).unwrap();
        assert!(is_point_homology(&homology(&c, 2)));
        assert!(!is_point_homology(&homology(&hollow_triangle(), 1)));
    }
}
