use super::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Lefschetz number of the simplicial self-map induced by the vertex map `f`, computed as the
/// alternating sum of chain-level traces.
///
/// A face contributes to the trace in its dimension only when `f` maps it onto itself; its
/// contribution is the sign of the permutation `f` induces on its vertices. Faces whose image
/// collapses to lower dimension contribute nothing.
pub fn lefschetz_number(c: &SimplicialComplex, f: &[usize]) -> Result<i64> {
    if f.len() != c.vertex_count() {
        return Err(Error::Invalid(format!(
            "vertex map has {} entries for {} vertices",
            f.len(),
            c.vertex_count()
        )));
    }
    if let Some(&v) = f.iter().find(|&&v| v >= c.vertex_count()) {
        return Err(Error::Invalid(format!("vertex map value {v} out of range")));
    }
    let mut total = 0i64;
    for d in 0..=c.max_dim().unwrap_or(0) {
        let mut trace = 0i64;
        for face in c.faces(d) {
            let image: Vec<usize> = face.iter().map(|&v| f[v]).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if c.face_index(&sorted).is_none() {
                return Err(Error::NotSimplicial {
                    face: face.clone(),
                    image: sorted,
                });
            }
            if sorted.len() < image.len() || sorted != *face {
                continue;
            }
            trace += permutation_sign(&image);
        }
        total += if d % 2 == 0 { trace } else { -trace };
    }
    Ok(total)
}

/// Sign of the permutation that sorts `seq` (distinct entries).
fn permutation_sign(seq: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{random_poset, Poset};
    use crate::topology::{euler_characteristic, order_complex};
    use rand::SeedableRng;

    #[test]
    fn identity_gives_euler_characteristic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..25 {
            let p = random_poset(6, 0.35, &mut rng);
            let c = order_complex(&p, None, 100_000).unwrap();
            let id: Vec<usize> = (0..p.len()).collect();
            assert_eq!(lefschetz_number(&c, &id).unwrap(), euler_characteristic(&c));
        }
    }

    #[test]
    fn point() {
        let c = order_complex(&Poset::chain(1), None, 10).unwrap();
        assert_eq!(lefschetz_number(&c, &[0]).unwrap(), 1);
    }

    #[test]
    fn reflection_of_an_edge() {
        // swapping the ends of a 1-simplex: vertices trace 0, edge trace -1, L = 0 - (-1) = 1
        let c = SimplicialComplex::from_facets(2, &[vec![0, 1]]).unwrap();
        assert_eq!(lefschetz_number(&c, &[1, 0]).unwrap(), 1);
    }

    #[test]
    fn rotation_of_circle() {
        let c = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(lefschetz_number(&c, &[1, 2, 0]).unwrap(), 0);
    }

    #[test]
    fn collapse_and_non_simplicial() {
        let c = SimplicialComplex::from_facets(2, &[vec![0, 1]]).unwrap();
        // constant map: only vertex 0 fixed, edge degenerates
        assert_eq!(lefschetz_number(&c, &[0, 0]).unwrap(), 1);
        let disc = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![2]]).unwrap();
        assert!(matches!(lefschetz_number(&disc, &[0, 2, 2]), Err(Error::NotSimplicial { .. })));
    }
}
