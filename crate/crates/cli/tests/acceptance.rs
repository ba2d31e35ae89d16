//! Acceptance suite: one line per criterion. Runs without the libtest harness so the lines
//! are always shown.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homtop::dichotomy::{classify, cross_validate, Complexity, Consistency, CrossOptions};
use homtop::graph::{all_graphs, compute_core, is_bipartite, with_loop_subsets, Graph};
use homtop::mhom::{build_mhom, edge_flip_witness, flip_map, verify_sub_taylor, DEFAULT_MAX_ELEMENTS};
use homtop::poset::{dismantle, is_ramified_certified, monotone_self_maps, random_poset, Poset};
use homtop::polysearch::{
    derive_taylor_witness, search_polymorphism, verify_polymorphism, IdentitySystem, PolymorphismTable,
    SearchOptions, SearchStatus, SubTaylorWitness,
};
use homtop::topology::{
    boundary_matrix, contractibility_verdict, euler_characteristic, homology, lefschetz_number, order_complex,
    smith_normal_form, HomologyGroup, IntMatrix, SimplicialComplex, Verdict, VerdictOptions,
};

/// Criteria that cannot pass as stated. Each entry's failure is checked against the recorded
/// explanation, so the suite still fails if the explanation stops holding.
const KNOWN_RED: &[u8] = &[8];

struct Outcome {
    id: u8,
    title: &'static str,
    passed: bool,
    /// For known-red criteria: whether the recorded reason for failing still holds.
    explained: bool,
    detail: String,
    elapsed: Duration,
}

fn run(id: u8, title: &'static str, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = f();
    Outcome {
        id,
        title,
        passed,
        explained: false,
        detail,
        elapsed: start.elapsed(),
    }
}

fn upto(n: usize, connected: bool) -> Vec<Graph> {
    (1..=n).flat_map(|k| all_graphs(k, connected)).collect()
}

fn k2() -> Graph {
    Graph::complete(2)
}

fn k2_k3_circle() -> (bool, String) {
    let start = Instant::now();
    let mp = build_mhom(&k2(), &Graph::complete(3), DEFAULT_MAX_ELEMENTS).unwrap();
    let c = order_complex(&mp.poset, None, 1_000_000).unwrap();
    let h = homology(&c, c.max_dim().unwrap());
    let betti: Vec<usize> = h.iter().map(|g| g.betti).collect();
    let torsion = h.iter().any(|g| !g.torsion.is_empty());
    let chi = euler_characteristic(&c);
    let flip = flip_map(&mp).unwrap();
    let lefschetz = lefschetz_number(&c, &flip.map.values).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let ok = mp.len() == 12
        && c.face_counts() == [12, 12]
        && betti == [1, 1]
        && !torsion
        && chi == 0
        && flip.fixed.is_empty()
        && lefschetz == 0
        && secs < 1.0;
    (
        ok,
        format!(
            "{} elements, faces {:?}, betti {betti:?}, torsion {torsion}, chi {chi}, {} fixed, L = {lefschetz}, {secs:.3}s",
            mp.len(),
            c.face_counts(),
            flip.fixed.len()
        ),
    )
}

fn flip_fixed_sweep() -> (bool, String) {
    let start = Instant::now();
    let mut graphs = all_graphs(5, false);
    graphs.extend(upto(4, false).iter().flat_map(with_loop_subsets));
    let bad = graphs
        .iter()
        .filter(|h| {
            let mp = build_mhom(&k2(), h, DEFAULT_MAX_ELEMENTS).unwrap();
            // oracle: an element fixed by the flip is a pair (A, A), which needs a loop
            let fixed_by_hand = mp.elements.iter().any(|m| m.values[0] == m.values[1]);
            let fixed = !flip_map(&mp).unwrap().fixed.is_empty();
            fixed != h.has_loop().is_some() || fixed != fixed_by_hand
        })
        .count();
    let secs = start.elapsed().as_secs_f64();
    (bad == 0 && secs < 120.0, format!("{} graphs, {bad} mismatches, {secs:.2}s", graphs.len()))
}

fn edge_flip_sweep() -> (bool, String) {
    let start = Instant::now();
    let graphs: Vec<Graph> = upto(5, true).into_iter().filter(|g| g.edge_count() > 0).collect();
    let mut bad = 0;
    for h in &graphs {
        let w = edge_flip_witness(h, DEFAULT_MAX_ELEMENTS).unwrap();
        let non_bipartite = !is_bipartite(h).is_partition();
        let valid = w
            .as_ref()
            .is_none_or(|w| w.validate(&build_mhom(&k2(), h, DEFAULT_MAX_ELEMENTS).unwrap()));
        if w.is_some() != non_bipartite || !valid {
            bad += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (bad == 0 && secs < 300.0, format!("{} connected graphs, {bad} mismatches, {secs:.2}s", graphs.len()))
}

fn taylor_sweep() -> (bool, String) {
    let sys = IdentitySystem::siggers4();
    let search = SearchOptions {
        time_ms: Some(60_000),
        ..SearchOptions::default()
    };
    let opts = CrossOptions {
        search: search.clone(),
        ..CrossOptions::default()
    };
    let graphs = upto(5, true);
    let (mut wrong, mut timeouts, mut inconsistent) = (0, 0, 0);
    let mut slowest = 0.0f64;
    for h in &graphs {
        let start = Instant::now();
        let core = compute_core(h, 8).unwrap().core;
        let out = search_polymorphism(&core, &sys, &search).unwrap();
        slowest = slowest.max(start.elapsed().as_secs_f64());
        let want = match classify(h).verdict {
            Complexity::NpComplete => SearchStatus::Unsat,
            Complexity::P => SearchStatus::Sat,
        };
        match out.status {
            SearchStatus::Timeout => timeouts += 1,
            s if s != want => wrong += 1,
            _ => {}
        }
        if let Some(t) = &out.table {
            if verify_polymorphism(&core, t, &sys).is_err() {
                wrong += 1;
            }
        }
        if cross_validate(h, &opts).consistency() != Consistency::Consistent {
            inconsistent += 1;
        }
    }
    (
        wrong == 0 && timeouts == 0 && inconsistent == 0,
        format!(
            "{} graphs, {wrong} wrong, {timeouts} timeouts, {inconsistent} inconsistent reports, slowest search {slowest:.3}s",
            graphs.len()
        ),
    )
}

fn bipartite_contractible() -> (bool, String) {
    let graphs: Vec<Graph> = upto(5, false).into_iter().filter(|g| is_bipartite(g).is_partition()).collect();
    let mut components = 0;
    let mut bad = 0;
    for h in &graphs {
        let core = compute_core(h, 8).unwrap().core;
        let mp = build_mhom(&k2(), &core, DEFAULT_MAX_ELEMENTS).unwrap();
        for c in contractibility_verdict(&mp.poset, &VerdictOptions::default()) {
            components += 1;
            if c.verdict != Verdict::Contractible || c.residual_size != 1 {
                bad += 1;
            }
        }
    }
    (
        bad == 0,
        format!("{} bipartite graphs, {components} components, {bad} not dismantlable", graphs.len()),
    )
}

fn search_outcomes() -> (bool, String) {
    let sys = IdentitySystem::siggers4();
    let cases = [
        ("K2", k2(), SearchStatus::Sat),
        ("K3", Graph::complete(3), SearchStatus::Unsat),
        ("C5", Graph::cycle(5), SearchStatus::Unsat),
        ("loop", Graph::loop_vertex(), SearchStatus::Sat),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, h, want) in cases {
        let start = Instant::now();
        let out = search_polymorphism(&h, &sys, &SearchOptions::default()).unwrap();
        let secs = start.elapsed().as_secs_f64();
        let verified = match &out.table {
            Some(t) => verify_polymorphism(&h, t, &sys).is_ok() && brute_force_check(&h, t),
            None => true,
        };
        ok &= out.status == want && verified && secs < 10.0;
        parts.push(format!("{name} {:?} {secs:.3}s", out.status));
    }
    (ok, parts.join(", "))
}

/// Independent check of a 4-ary table: edges over all tuple pairs and the identity directly.
fn brute_force_check(h: &Graph, t: &PolymorphismTable) -> bool {
    let n = h.n();
    let tuples: Vec<[usize; 4]> = (0..n.pow(4)).map(|i| [i / (n * n * n), i / (n * n) % n, i / n % n, i % n]).collect();
    let f = |x: &[usize; 4]| t.eval(x);
    let edges = tuples.iter().all(|x| {
        tuples
            .iter()
            .all(|y| !(0..4).all(|k| h.adjacent(x[k], y[k])) || h.adjacent(f(x), f(y)))
    });
    let ident = (0..n).all(|a| (0..n).all(|r| (0..n).all(|e| f(&[a, r, e, a]) == f(&[r, a, r, e]))));
    let idem = (0..n).all(|v| f(&[v; 4]) == v);
    edges && ident && idem
}

fn witness_coordinates() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (sys, want) in [
        (IdentitySystem::siggers4(), Vec::<usize>::new()),
        (IdentitySystem::siggers6_corrected(), vec![]),
        (IdentitySystem::siggers6_paper(), vec![3, 4]),
    ] {
        let t = search_polymorphism(&k2(), &sys, &SearchOptions::default()).unwrap().table.unwrap();
        let d = derive_taylor_witness(&sys, &t).unwrap();
        let separated = sys.arity - d.failed_coordinates.len();
        ok &= d.failed_coordinates == want && d.witness.is_some() == want.is_empty();
        parts.push(format!("{}-ary: {separated}/{} separated, failing {:?}", sys.arity, sys.arity, d.failed_coordinates));
    }
    (ok, parts.join("; "))
}

/// `e . t . r^n` for the 2-colouring `r: C6 -> K2` and the edge embedding `e: K2 -> C6`.
fn lift_to_c6(w: &SubTaylorWitness) -> SubTaylorWitness {
    let c6 = Graph::cycle(6);
    let lift = |t: &PolymorphismTable| {
        PolymorphismTable::from_fn(c6.clone(), t.arity, |x| t.eval(&x.iter().map(|v| v % 2).collect::<Vec<_>>())).unwrap()
    };
    SubTaylorWitness {
        arity: w.arity,
        patterns: w.patterns.clone(),
        t_table: lift(&w.t_table),
        s_tables: w.s_tables.iter().map(lift).collect(),
    }
}

fn sub_taylor() -> Outcome {
    let start = Instant::now();
    let sys = IdentitySystem::siggers4();
    let t = search_polymorphism(&k2(), &sys, &SearchOptions::default()).unwrap().table.unwrap();
    let w = derive_taylor_witness(&sys, &t).unwrap().witness.unwrap();
    let mk2 = build_mhom(&k2(), &k2(), 100).unwrap();
    let r2 = verify_sub_taylor(&w, &mk2, 100_000, 0).unwrap();
    let k2_ok = r2.passed() && r2.exhaustive && r2.tuples_checked == 16;

    let c6 = Graph::cycle(6);
    let mc6 = build_mhom(&k2(), &c6, DEFAULT_MAX_ELEMENTS).unwrap();
    let own = search_polymorphism(&c6, &sys, &SearchOptions::default()).unwrap();
    let (c6_ok, c6_detail) = match &own.table {
        Some(t6) => {
            let w6 = derive_taylor_witness(&sys, t6).unwrap().witness.unwrap();
            let r = verify_sub_taylor(&w6, &mc6, 100_000, 0).unwrap();
            (r.passed(), format!("C6 siggers4 table: {} violations", r.violations.len()))
        }
        None => {
            let r = verify_sub_taylor(&lift_to_c6(&w), &mc6, 100_000, 0).unwrap();
            (
                r.passed(),
                format!(
                    "C6 has no idempotent siggers4 polymorphism ({:?}); lifted K2 witness: {} violations on {} tuples + {} pairs",
                    own.status,
                    r.violations.len(),
                    r.tuples_checked,
                    r.pairs_checked
                ),
            )
        }
    };
    let verdicts = contractibility_verdict(&mc6.poset, &VerdictOptions::default());
    let circles = verdicts
        .iter()
        .filter(|c| c.verdict == Verdict::NotContractible && c.homology.as_ref().is_some_and(|h| h[1].betti == 1))
        .count();
    // a poset with a sub-Taylor polymorphism has contractible components
    let explained = k2_ok && !c6_ok && own.status == SearchStatus::Unsat && circles > 0;
    Outcome {
        id: 8,
        title: "induced sub-Taylor operations",
        passed: k2_ok && c6_ok,
        explained,
        detail: format!(
            "mhom(K2,K2) exhaustive {} tuples, {} violations; mhom(K2,C6) {} elements, {circles} of {} components are circles; {c6_detail}",
            r2.tuples_checked,
            r2.violations.len(),
            mc6.len(),
            verdicts.len()
        ),
        elapsed: start.elapsed(),
    }
}

/// Determinant by fraction-free elimination.
fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else { return 0 };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Invariant factors from the gcds of all k x k minors.
fn determinantal_factors(m: &[Vec<i64>], rows: usize, cols: usize) -> Vec<i128> {
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

fn padded_betti(h: &[HomologyGroup], len: usize) -> Vec<(usize, Vec<String>)> {
    (0..len)
        .map(|d| h.get(d).map_or((0, vec![]), |g| (g.betti, g.torsion.iter().map(|t| t.to_string()).collect())))
        .collect()
}

fn brute_force_isolated(p: &Poset) -> bool {
    let maps = monotone_self_maps(p);
    let k = p.len();
    let leq = |f: &[usize], g: &[usize]| (0..k).all(|x| p.leq(f[x], g[x]));
    maps.iter()
        .filter(|f| {
            let mut seen = vec![false; k];
            f.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
        .all(|sigma| maps.iter().all(|g| g == sigma || !(leq(g, sigma) || leq(sigma, g))))
}

/// Dense product of consecutive boundary matrices, entry by entry.
fn boundary_squares_to_zero(c: &SimplicialComplex) -> bool {
    let b: Vec<Vec<Vec<i64>>> = (1..=c.max_dim().unwrap_or(0)).map(|d| boundary_matrix(c, d).to_dense()).collect();
    b.windows(2).all(|w| {
        let (lo, hi) = (&w[0], &w[1]);
        (0..lo.len()).all(|i| (0..hi.first().map_or(0, |r| r.len())).all(|j| (0..hi.len()).map(|k| lo[i][k] * hi[k][j]).sum::<i64>() == 0))
    })
}

fn property_suites() -> (bool, String) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut complexes = 0;
    let mut failures = Vec::new();

    // boundary composition, Lefschetz of the identity, and homology under dismantling
    let mut lefschetz_checked = 0;
    for i in 0..200 {
        let k = rng.random_range(1..=7);
        let p = random_poset(k, rng.random_range(0.1..0.7), &mut rng);
        let c = order_complex(&p, None, 1_000_000).unwrap();
        if !boundary_squares_to_zero(&c) {
            failures.push(format!("boundary of poset {i}"));
        }
        complexes += 1;
        if i < 40 {
            let id: Vec<usize> = (0..k).collect();
            if lefschetz_number(&c, &id).unwrap() != euler_characteristic(&c) {
                failures.push(format!("lefschetz on poset {i}"));
            }
            lefschetz_checked += 1;
        }
        let t = dismantle(&p);
        let r = order_complex(&t.residual, None, 1_000_000).unwrap();
        if !boundary_squares_to_zero(&r) {
            failures.push(format!("boundary of residual {i}"));
        }
        complexes += 1;
        let top = c.max_dim().unwrap_or(0).max(r.max_dim().unwrap_or(0));
        if padded_betti(&homology(&c, top), top + 1) != padded_betti(&homology(&r, top), top + 1) {
            failures.push(format!("dismantling changed homology of poset {i}"));
        }
    }
    for h in [Graph::complete(3), Graph::complete(4), Graph::cycle(5), Graph::cycle(6)] {
        let mp = build_mhom(&k2(), &h, DEFAULT_MAX_ELEMENTS).unwrap();
        if !boundary_squares_to_zero(&order_complex(&mp.poset, None, 1_000_000).unwrap()) {
            failures.push(format!("boundary of mhom(K2,{h:?})"));
        }
        complexes += 1;
    }

    // ramified iff automorphisms are alone in their components
    for i in 0..200 {
        let k = rng.random_range(1..=5);
        let p = random_poset(k, rng.random_range(0.1..0.8), &mut rng);
        let cert = is_ramified_certified(&p, 6).unwrap();
        if !cert.criterion_agrees || cert.isolated_automorphisms != brute_force_isolated(&p) {
            failures.push(format!("ramified criterion on poset {i}"));
        }
    }

    // Smith normal form against determinantal divisors
    for i in 0..100 {
        let rows = rng.random_range(1..=6);
        let cols = rng.random_range(1..=6);
        let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.random_range(-6..=6)).collect()).collect();
        let s = smith_normal_form(&IntMatrix::from_rows(&m));
        let got: Vec<i128> = s.factors.iter().map(|f| u64::try_from(f).unwrap() as i128).collect();
        let chain = got.windows(2).all(|w| w[1] % w[0] == 0);
        let want = determinantal_factors(&m, rows, cols);
        let det_ok = rows != cols || {
            let d = det(&m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect::<Vec<_>>());
            let prod: i128 = if s.rank == rows { got.iter().product() } else { 0 };
            d.abs() == prod
        };
        if !chain || got != want || s.rank != want.len() || !det_ok {
            failures.push(format!("smith form of matrix {i}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (
        failures.is_empty() && secs < 120.0 && lefschetz_checked >= 20,
        format!(
            "{complexes} complexes, {lefschetz_checked} Lefschetz checks, 200 dismantlings, 200 ramified checks, 100 matrices, {} failures {:?}, {secs:.2}s",
            failures.len(),
            failures
        ),
    )
}

fn determinism() -> (bool, String) {
    let bin = env!("CARGO_BIN_EXE_homtop");
    let runs: Vec<_> = (0..2)
        .map(|_| Command::new(bin).args(["verify-paper", "--json", "--seed", "17"]).output().unwrap())
        .collect();
    let same = runs[0].stdout == runs[1].stdout;
    let ok = runs.iter().all(|o| o.status.success()) && same && !runs[0].stdout.is_empty();
    (ok, format!("{} bytes, identical {same}, exit {:?}", runs[0].stdout.len(), runs[0].status.code()))
}

fn main() -> ExitCode {
    let mut results = vec![
        run(1, "mhom(K2,K3) is a 12-element circle", k2_k3_circle),
        run(2, "flip has a fixed element iff the graph has a loop", flip_fixed_sweep),
        run(3, "an edge meets its flip iff the graph is not bipartite", edge_flip_sweep),
        run(4, "siggers4 UNSAT exactly on NP-complete cores", taylor_sweep),
        run(5, "mhom(K2, core) dismantles for bipartite graphs", bipartite_contractible),
        run(6, "siggers4 search outcomes", search_outcomes),
        run(7, "Taylor patterns per coordinate", witness_coordinates),
        sub_taylor(),
        run(9, "property suites", property_suites),
        run(10, "verify-paper --json is byte-identical", determinism),
    ];
    results.sort_by_key(|r| r.id);
    let mut unexpected = 0;
    for r in &results {
        let known = KNOWN_RED.contains(&r.id);
        let tag = match (r.passed, known) {
            (true, _) => "PASS",
            (false, true) if r.explained => "FAIL (known)",
            (false, _) => "FAIL",
        };
        println!("{tag} criterion {}: {}: {} [{:.2}s]", r.id, r.title, r.detail, r.elapsed.as_secs_f64());
        if r.passed == known || (known && !r.explained) {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria deviate from the expected results");
        ExitCode::FAILURE
    }
}
