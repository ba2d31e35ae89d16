use std::io::Read;
use std::path::Path;

use serde::Serialize;

use homtop::dichotomy::{classify as classify_graph, Complexity, Rationale, corpus_run, graph_key, parse_corpus, CorpusEntry, CrossOptions};
use homtop::graph::{all_graphs, parse_graph, Graph};
use homtop::mhom::{build_mhom, edge_flip_witness_in, flip_map, EdgeFlipWitness};
use homtop::poset::{dismantle, is_ramified_certified, parse_poset, DEFAULT_RAMIFIED_MAX_SIZE};
use homtop::polysearch::{derive_taylor_witness, search_polymorphism, SearchOptions, SearchStatus};
use homtop::topology::{
    contractibility_verdict, euler_characteristic, homology, lefschetz_number, order_complex, ComponentReport,
    HomologyGroup, VerdictOptions,
};

use crate::{exit, Config, Failure, Options};

pub fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure {
        code: exit::INPUT,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(text)
}

fn read_graph(opts: &Options, path: &Path) -> Result<Graph, Failure> {
    let text = read_input(path)?;
    parse_graph(&text, opts.format).map_err(|e| Failure {
        code: exit::INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    config: Config<'a>,
    seed: u64,
    result: T,
}

/// Prints `result` as one JSON document, or `text` in human mode.
pub fn emit<T: Serialize>(opts: &Options, command: &'static str, result: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
    if opts.json {
        let sys = opts.identity_system()?;
        println!("{}", envelope_json(opts, command, &sys, result));
    } else {
        print!("{}", text());
    }
    Ok(())
}

pub fn envelope_json<T: Serialize>(opts: &Options, command: &'static str, sys: &homtop::polysearch::IdentitySystem, result: &T) -> String {
    let env = Envelope {
        tool: "homtop",
        version: env!("CARGO_PKG_VERSION"),
        config: config(opts, command, sys),
        seed: opts.seed,
        result,
    };
    serde_json::to_string(&env).expect("reports serialize")
}

pub fn config<'a>(opts: &Options, command: &'static str, sys: &'a homtop::polysearch::IdentitySystem) -> Config<'a> {
    Config {
        command,
        format: opts.format,
        max_elements: opts.max_elements,
        max_faces: opts.max_faces,
        identity: sys,
        budget_ms: opts.budget_ms,
        samples: opts.samples,
        jobs: opts.jobs,
    }
}

pub fn search_options(opts: &Options) -> SearchOptions {
    SearchOptions {
        time_ms: Some(opts.budget_ms),
        seed: opts.seed,
        ..SearchOptions::default()
    }
}

pub fn verdict_options(opts: &Options) -> VerdictOptions {
    VerdictOptions {
        face_budget: opts.max_faces as usize,
        ..VerdictOptions::default()
    }
}

pub fn classify(opts: &Options, input: &Path) -> Result<u8, Failure> {
    let g = read_graph(opts, input)?;
    let c = classify_graph(&g);
    emit(opts, "classify", &c, || {
        let verdict = complexity_name(c.verdict);
        let why = match c.rationale {
            Rationale::Loop => "has a loop",
            Rationale::Bipartite => "bipartite",
            Rationale::NonBipartiteLoopless => "not bipartite, no loop",
        };
        format!("{}: {verdict} ({why})\n", input.display())
    })?;
    Ok(0)
}

#[derive(Serialize)]
pub struct ComplexReport {
    pub graph: Graph,
    pub elements: usize,
    pub components: usize,
    pub face_counts: Vec<usize>,
    pub betti: Vec<usize>,
    pub homology: Vec<HomologyGroup>,
    pub euler_characteristic: i64,
    pub flip_fixed_points: Vec<usize>,
    pub flip_lefschetz: i64,
    pub edge_flip_witness: Option<EdgeFlipWitness>,
    pub component_verdicts: Vec<ComponentReport>,
    pub poset: Option<homtop::mhom::MhomDump>,
}

/// Highest homology dimension reported by `complex`.
const COMPLEX_MAX_DIM: usize = 3;

pub fn complex_report(opts: &Options, g: &Graph, dump: bool) -> Result<ComplexReport, Failure> {
    let mp = build_mhom(&Graph::complete(2), g, opts.max_elements as usize)?;
    let c = order_complex(&mp.poset, None, opts.max_faces as usize)?;
    let top = c.max_dim().unwrap_or(0);
    let h = homology(&c, top.min(COMPLEX_MAX_DIM));
    let flip = flip_map(&mp)?;
    Ok(ComplexReport {
        graph: g.clone(),
        elements: mp.len(),
        components: mp.poset.connected_components().len(),
        face_counts: c.face_counts(),
        betti: h.iter().map(|x| x.betti).collect(),
        euler_characteristic: euler_characteristic(&c),
        flip_lefschetz: lefschetz_number(&c, &flip.map.values)?,
        flip_fixed_points: flip.fixed,
        edge_flip_witness: edge_flip_witness_in(&mp),
        component_verdicts: contractibility_verdict(&mp.poset, &verdict_options(opts)),
        homology: h,
        poset: dump.then(|| mp.dump()),
    })
}

pub fn complex(opts: &Options, input: &Path, dump: bool) -> Result<u8, Failure> {
    let g = read_graph(opts, input)?;
    let r = complex_report(opts, &g, dump)?;
    emit(opts, "complex", &r, || {
        let mut s = format!(
            "mhom(K2, H): {} elements, {} components\nfaces per dimension: {:?}\nbetti: {:?}\n",
            r.elements, r.components, r.face_counts, r.betti
        );
        for g in r.homology.iter().filter(|g| !g.torsion.is_empty()) {
            s += &format!("torsion in H{}: {:?}\n", g.dim, g.torsion);
        }
        s += &format!(
            "euler characteristic: {}\nflip fixed elements: {:?}\nflip lefschetz number: {}\n",
            r.euler_characteristic, r.flip_fixed_points, r.flip_lefschetz
        );
        match &r.edge_flip_witness {
            Some(w) => s += &format!("edge {:?} meets its flip via {:?}\n", w.edge, w.path),
            None => s += "no edge meets its flip\n",
        }
        for (i, c) in r.component_verdicts.iter().enumerate() {
            s += &format!("component {i} ({} elements): {:?}\n", c.elements.len(), c.verdict);
        }
        s
    })?;
    Ok(0)
}

pub fn poly(opts: &Options, input: &Path, witness: bool) -> Result<u8, Failure> {
    let g = read_graph(opts, input)?;
    let sys = opts.identity_system()?;
    let out = search_polymorphism(&g, &sys, &search_options(opts))?;
    let derivation = match (&out.table, witness) {
        (Some(t), true) => Some(derive_taylor_witness(&sys, t)?),
        _ => None,
    };
    #[derive(Serialize)]
    struct PolyReport<'a> {
        outcome: &'a homtop::polysearch::SearchOutcome,
        derivation: Option<homtop::polysearch::TaylorDerivation>,
    }
    let report = PolyReport {
        outcome: &out,
        derivation,
    };
    emit(opts, "poly", &report, || {
        let mut s = format!(
            "{}: {} for {}\nclasses {}, constraints {}, nodes {}, propagations {}, {} ms\n",
            input.display(),
            status_name(out.status),
            sys,
            out.stats.classes,
            out.stats.constraints,
            out.stats.nodes,
            out.stats.propagations,
            out.stats.wall_ms
        );
        if let Some(d) = &report.derivation {
            if d.failed_coordinates.is_empty() {
                s += "every coordinate is separated by some identity instance\n";
            } else {
                s += &format!("no separating instance at coordinates {:?}\n", d.failed_coordinates);
            }
        }
        s
    })?;
    Ok(if out.status == SearchStatus::Timeout { exit::BUDGET } else { 0 })
}

pub fn poset(opts: &Options, input: &Path) -> Result<u8, Failure> {
    let text = read_input(input)?;
    let p = parse_poset(&text)?;
    let trace = dismantle(&p);
    let c = order_complex(&p, Some(COMPLEX_MAX_DIM + 1), opts.max_faces as usize)?;
    let top = c.max_dim().unwrap_or(0).min(COMPLEX_MAX_DIM);
    #[derive(Serialize)]
    struct PosetReport {
        size: usize,
        dismantled: Vec<homtop::poset::Irreducible>,
        residual_size: usize,
        homology: Vec<HomologyGroup>,
        components: Vec<ComponentReport>,
        ramified: Option<homtop::poset::RamifiedCertificate>,
    }
    let r = PosetReport {
        size: p.len(),
        residual_size: trace.residual.len(),
        dismantled: trace.removed,
        homology: homology(&c, top),
        components: contractibility_verdict(&p, &verdict_options(opts)),
        ramified: is_ramified_certified(&p, DEFAULT_RAMIFIED_MAX_SIZE).ok(),
    };
    emit(opts, "poset", &r, || {
        let mut s = format!(
            "{} elements, {} removed while dismantling, residual {}\nbetti: {:?}\n",
            r.size,
            r.dismantled.len(),
            r.residual_size,
            r.homology.iter().map(|g| g.betti).collect::<Vec<_>>()
        );
        for (i, c) in r.components.iter().enumerate() {
            s += &format!("component {i} ({} elements): {:?}\n", c.elements.len(), c.verdict);
        }
        s
    })?;
    Ok(0)
}

pub fn corpus(opts: &Options, input: Option<&Path>, all: Option<usize>, connected: bool) -> Result<u8, Failure> {
    let entries: Vec<CorpusEntry> = match (input, all) {
        (Some(p), None) => parse_corpus(&read_input(p)?),
        (None, Some(n)) if n <= 7 => (1..=n)
            .flat_map(|k| all_graphs(k, connected))
            .map(|g| CorpusEntry {
                id: format!("{}:{}", g.n(), graph_key(&g)),
                graph: Ok(g),
            })
            .collect(),
        (None, Some(_)) => {
            return Err(Failure {
                code: exit::USAGE,
                message: "--all supports at most 7 vertices".into(),
            })
        }
        _ => {
            return Err(Failure {
                code: exit::USAGE,
                message: "corpus needs either an input file or --all N".into(),
            })
        }
    };
    let sys = opts.identity_system()?;
    let cross = CrossOptions {
        max_elements: opts.max_elements as usize,
        identity: sys.clone(),
        search: search_options(opts),
        verdict: verdict_options(opts),
        ..CrossOptions::default()
    };
    let report = corpus_run(&entries, &cross, opts.jobs as usize)?;
    for r in &report.records {
        if r.skipped.is_some() {
            eprintln!("homtop: skipped {}: {}", r.id, r.skipped.as_deref().unwrap_or(""));
        }
    }
    if opts.json {
        for r in &report.records {
            println!("{}", serde_json::to_string(r).expect("records serialize"));
        }
        println!("{}", envelope_json(opts, "corpus", &sys, &report.summary));
    } else {
        for r in &report.records {
            match (&r.report, &r.skipped) {
                (Some(rep), _) => println!(
                    "{}\t{}\t{:?}",
                    r.id,
                    complexity_name(rep.classification.verdict),
                    r.consistency.expect("reported graphs have a consistency")
                ),
                (None, Some(why)) => println!("{}\tskipped\t{why}", r.id),
                (None, None) => {}
            }
        }
        let s = &report.summary;
        println!(
            "{} graphs: {} P, {} NP-complete, {} skipped; implications {} verified, {} refuted, {} unchecked, {} vacuous",
            s.graphs,
            s.p,
            s.np_complete,
            s.skipped,
            s.implications.verified,
            s.implications.refuted,
            s.implications.unchecked,
            s.implications.vacuous
        );
    }
    Ok(match report.exit_code() {
        2 => exit::INCONSISTENT,
        3 => exit::ONLY_UNCHECKED,
        _ => 0,
    })
}

pub fn status_name(s: SearchStatus) -> &'static str {
    match s {
        SearchStatus::Sat => "SAT",
        SearchStatus::Unsat => "UNSAT",
        SearchStatus::Timeout => "TIMEOUT",
    }
}

fn complexity_name(c: Complexity) -> &'static str {
    match c {
        Complexity::P => "P",
        Complexity::NpComplete => "NP-complete",
    }
}
