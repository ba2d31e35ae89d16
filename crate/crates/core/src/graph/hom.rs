use super::Graph;

/// True if `map` is a homomorphism `g -> h`.
pub fn is_homomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    map.len() == g.n()
        && map.iter().all(|&x| x < h.n())
        && g.arcs().iter().all(|&(u, v)| h.adjacent(map[u], map[v]))
}

/// Some homomorphism `g -> h`, found by backtracking with forward checking. Requires `h.n() <= 64`.
pub fn find_homomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let all = if h.n() == 64 { u64::MAX } else { (1u64 << h.n()) - 1 };
    find_homomorphism_into(g, h, all)
}

/// Homomorphism `g -> h` whose image avoids every vertex outside `allowed`.
pub(crate) fn find_homomorphism_into(g: &Graph, h: &Graph, allowed: u64) -> Option<Vec<usize>> {
    let nbr = h.neighbor_masks();
    let looped = (0..h.n())
        .filter(|&v| h.has_self_loop(v))
        .fold(0u64, |m, v| m | (1 << v));
    let mut domains: Vec<u64> = (0..g.n())
        .map(|v| if g.has_self_loop(v) { allowed & looped } else { allowed })
        .collect();
    if domains.iter().any(|&d| d == 0) {
        return None;
    }
    let mut assignment = vec![usize::MAX; g.n()];
    if search(g, &nbr, &mut domains, &mut assignment) {
        Some(assignment)
    } else {
        None
    }
}

fn search(g: &Graph, nbr: &[u64], domains: &mut Vec<u64>, assignment: &mut [usize]) -> bool {
    let next = (0..g.n())
        .filter(|&v| assignment[v] == usize::MAX)
        .min_by_key(|&v| (domains[v].count_ones(), v));
    let Some(v) = next else {
        return true;
    };
    let mut options = domains[v];
    while options != 0 {
        let val = options.trailing_zeros() as usize;
        options &= options - 1;
        let saved = domains.clone();
        assignment[v] = val;
        domains[v] = 1 << val;
        let mut ok = true;
        for w in g.neighbors(v) {
            domains[w] &= nbr[val];
            if domains[w] == 0 {
                ok = false;
                break;
            }
        }
        if ok && search(g, nbr, domains, assignment) {
            return true;
        }
        *domains = saved;
        assignment[v] = usize::MAX;
    }
    false
}
