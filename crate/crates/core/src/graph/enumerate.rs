use std::collections::BTreeSet;

use super::Graph;

/// Upper-triangle adjacency bits (diagonal included) after relabelling by `perm`.
fn key_under(g: &Graph, perm: &[usize]) -> u128 {
    let n = g.n();
    let mut inv = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut key = 0u128;
    for i in 0..n {
        for j in i..n {
            key = (key << 1) | g.adjacent(inv[i], inv[j]) as u128;
        }
    }
    key
}

fn for_each_perm(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_perm(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Canonical representative of the isomorphism class of `g`.
///
/// Vertices are first ordered by (loop, degree); only permutations inside those classes are
/// searched, taking the one with the largest adjacency key. Intended for graphs of at most
/// about ten vertices.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.n();
    assert!(n <= 15, "canonical_form is exhaustive and limited to 15 vertices");
    let invariant = |v: usize| (g.has_self_loop(v), g.degree(v));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(invariant(v)), v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if invariant(c[0]) == invariant(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }

    let mut best: Option<(u128, Vec<usize>)> = None;
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    fn recurse(
        g: &Graph,
        classes: &[Vec<usize>],
        chosen: &mut Vec<Vec<usize>>,
        best: &mut Option<(u128, Vec<usize>)>,
    ) {
        if chosen.len() == classes.len() {
            let sequence: Vec<usize> = chosen.iter().flatten().copied().collect();
            let mut perm = vec![0; g.n()];
            for (pos, &v) in sequence.iter().enumerate() {
                perm[v] = pos;
            }
            let key = key_under(g, &perm);
            if best.as_ref().is_none_or(|(k, _)| key > *k) {
                *best = Some((key, perm));
            }
            return;
        }
        let mut items = classes[chosen.len()].clone();
        for_each_perm(&mut items, 0, &mut |p: &[usize]| {
            chosen.push(p.to_vec());
            recurse(g, classes, chosen, best);
            chosen.pop();
        });
    }
    recurse(g, &classes, &mut chosen, &mut best);
    match best {
        Some((_, perm)) => g.relabel(&perm),
        None => g.clone(),
    }
}

/// One representative per isomorphism class of loopless graphs on exactly `n` vertices,
/// optionally restricted to connected graphs. Representatives are canonical forms, sorted.
pub fn all_graphs(n: usize, connected_only: bool) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "enumeration limited to 7 vertices");
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let mut g = Graph::empty(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                g.add_edge(u, v);
            }
        }
        if connected_only && !g.is_connected() {
            continue;
        }
        let c = canonical_form(&g);
        if seen.insert(c.edges()) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.edges().cmp(&b.edges()));
    out
}

/// `g` with self-loops added on each subset of its vertices (2^n graphs, including `g`).
pub fn with_loop_subsets(g: &Graph) -> Vec<Graph> {
    let n = g.n();
    (0u32..(1 << n))
        .map(|mask| {
            let mut h = g.clone();
            for v in 0..n {
                if mask & (1 << v) != 0 {
                    h.add_edge(v, v);
                }
            }
            h
        })
        .collect()
}
