use serde::Serialize;

use homtop::graph::{all_graphs, is_bipartite, with_loop_subsets, Graph};
use homtop::mhom::{build_mhom, edge_flip_witness_in, flip_map, verify_sub_taylor};
use homtop::polysearch::{
    derive_taylor_witness, search_polymorphism, verify_polymorphism, IdentitySystem, PolymorphismTable, SearchStatus,
};
use homtop::topology::{euler_characteristic, homology, lefschetz_number, order_complex};

use crate::commands::{emit, search_options, status_name};
use crate::{exit, Failure, Options};

#[derive(Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
struct Summary {
    checks: Vec<Check>,
    passed: bool,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

fn upto(n: usize, connected: bool) -> Vec<Graph> {
    (1..=n).flat_map(|k| all_graphs(k, connected)).collect()
}

fn k2_k3(opts: &Options) -> Result<Check, Failure> {
    let mp = build_mhom(&Graph::complete(2), &Graph::complete(3), opts.max_elements as usize)?;
    let c = order_complex(&mp.poset, None, opts.max_faces as usize)?;
    let h = homology(&c, c.max_dim().unwrap_or(0));
    let betti: Vec<usize> = h.iter().map(|g| g.betti).collect();
    let torsion_free = h.iter().all(|g| g.torsion.is_empty());
    let flip = flip_map(&mp)?;
    let lefschetz = lefschetz_number(&c, &flip.map.values)?;
    let chi = euler_characteristic(&c);
    let passed = mp.len() == 12
        && c.face_counts() == [12, 12]
        && betti == [1, 1]
        && torsion_free
        && chi == 0
        && flip.fixed.is_empty()
        && lefschetz == 0;
    Ok(check(
        "mhom-k2-k3",
        passed,
        format!(
            "{} elements, faces {:?}, betti {betti:?}, torsion-free {torsion_free}, euler {chi}, {} flip fixed elements, flip lefschetz {lefschetz}",
            mp.len(),
            c.face_counts(),
            flip.fixed.len()
        ),
    ))
}

fn flip_fixed_sweep(opts: &Options) -> Result<Check, Failure> {
    let mut graphs = all_graphs(5, false);
    graphs.extend(upto(4, false).iter().flat_map(with_loop_subsets));
    let mut bad = Vec::new();
    for h in &graphs {
        let mp = build_mhom(&Graph::complete(2), h, opts.max_elements as usize)?;
        if flip_map(&mp)?.fixed.is_empty() == h.has_loop().is_some() {
            bad.push(format!("{h:?}"));
        }
    }
    Ok(check(
        "flip-fixed-iff-loop",
        bad.is_empty(),
        format!("{} graphs, {} counterexamples {bad:?}", graphs.len(), bad.len()),
    ))
}

fn edge_flip_sweep(opts: &Options) -> Result<Check, Failure> {
    let graphs: Vec<Graph> = upto(5, true).into_iter().filter(|g| g.edge_count() > 0).collect();
    let mut bad = Vec::new();
    for h in &graphs {
        let mp = build_mhom(&Graph::complete(2), h, opts.max_elements as usize)?;
        let w = edge_flip_witness_in(&mp);
        let valid = w.as_ref().is_none_or(|w| w.validate(&mp));
        if w.is_some() == is_bipartite(h).is_partition() || !valid {
            bad.push(format!("{h:?}"));
        }
    }
    Ok(check(
        "edge-meets-flip-iff-non-bipartite",
        bad.is_empty(),
        format!("{} connected graphs, {} counterexamples {bad:?}", graphs.len(), bad.len()),
    ))
}

fn search_outcomes(opts: &Options) -> Result<Check, Failure> {
    let sys = IdentitySystem::siggers4();
    let cases = [
        ("K2", Graph::complete(2), SearchStatus::Sat),
        ("K3", Graph::complete(3), SearchStatus::Unsat),
        ("C5", Graph::cycle(5), SearchStatus::Unsat),
        ("loop", Graph::loop_vertex(), SearchStatus::Sat),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, h, want) in cases {
        let out = search_polymorphism(&h, &sys, &search_options(opts))?;
        let verified = out.table.as_ref().is_none_or(|t| verify_polymorphism(&h, t, &sys).is_ok());
        passed &= out.status == want && verified;
        parts.push(format!("{name} {}", status_name(out.status)));
    }
    Ok(check("siggers4-search", passed, parts.join(", ")))
}

fn taylor_coordinates(opts: &Options) -> Result<Check, Failure> {
    let k2 = Graph::complete(2);
    let mut parts = Vec::new();
    let mut passed = true;
    for sys in [IdentitySystem::siggers4(), IdentitySystem::siggers6_corrected()] {
        let out = search_polymorphism(&k2, &sys, &search_options(opts))?;
        let Some(t) = out.table else {
            passed = false;
            parts.push(format!("{sys}: no table"));
            continue;
        };
        let d = derive_taylor_witness(&sys, &t)?;
        passed &= d.failed_coordinates.is_empty() && d.witness.is_some();
        parts.push(format!("{sys}: failed at {:?}", d.failed_coordinates));
    }
    let printed = IdentitySystem::siggers6_paper();
    let third = PolymorphismTable::projection(k2, 6, 2)?;
    let d = derive_taylor_witness(&printed, &third)?;
    passed &= d.failed_coordinates == [3, 4];
    parts.push(format!("{printed}: failed at {:?}", d.failed_coordinates));
    Ok(check("taylor-coordinates", passed, parts.join("; ")))
}

fn sub_taylor_k2(opts: &Options) -> Result<Check, Failure> {
    let k2 = Graph::complete(2);
    let sys = IdentitySystem::siggers4();
    let out = search_polymorphism(&k2, &sys, &search_options(opts))?;
    let Some(t) = out.table else {
        return Ok(check("sub-taylor-k2", false, "no siggers4 table on K2".into()));
    };
    let Some(w) = derive_taylor_witness(&sys, &t)?.witness else {
        return Ok(check("sub-taylor-k2", false, "no witness".into()));
    };
    let mp = build_mhom(&k2, &k2, opts.max_elements as usize)?;
    let r = verify_sub_taylor(&w, &mp, opts.samples as usize, opts.seed)?;
    Ok(check(
        "sub-taylor-k2",
        r.passed() && r.exhaustive,
        format!("{} tuples, {} pairs, {} violations", r.tuples_checked, r.pairs_checked, r.violations.len()),
    ))
}

pub fn verify_paper(opts: &Options) -> Result<u8, Failure> {
    let checks = vec![
        k2_k3(opts)?,
        flip_fixed_sweep(opts)?,
        edge_flip_sweep(opts)?,
        search_outcomes(opts)?,
        taylor_coordinates(opts)?,
        sub_taylor_k2(opts)?,
    ];
    let passed = checks.iter().all(|c| c.passed);
    let summary = Summary { checks, passed };
    emit(opts, "verify-paper", &summary, || {
        let mut s = String::new();
        for c in &summary.checks {
            s += &format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        s
    })?;
    Ok(if passed { 0 } else { exit::INCONSISTENT })
}
