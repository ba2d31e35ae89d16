use rand::Rng;

use super::Poset;

/// Random poset on `k` elements: each pair `i < j` (by index) is related with probability
/// `edge_prob`, then closed transitively. Index order is always a linear extension.
pub fn random_poset<R: Rng + ?Sized>(k: usize, edge_prob: f64, rng: &mut R) -> Poset {
    let mut rel = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if rng.random_bool(edge_prob) {
                rel.push((i, j));
            }
        }
    }
    Poset::from_strict_relations(k, &rel).expect("index-ordered relations are acyclic")
}
