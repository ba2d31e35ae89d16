//! Tractability classification of H-colouring and its cross-check against polymorphism
//! search and the topology of `mhom(K2, core)`.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{compute_core, is_bipartite, parse_graph6, to_graph6, BipartiteCertificate, Graph, DEFAULT_CORE_MAX_VERTICES};
use crate::mhom::{build_mhom, edge_flip_witness_in, flip_map, DEFAULT_MAX_ELEMENTS};
use crate::polysearch::{search_polymorphism, IdentitySystem, SearchOptions, SearchStats, SearchStatus};
use crate::topology::{contractibility_verdict, ComponentReport, Verdict, VerdictOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Complexity {
    P,
    #[serde(rename = "NP-complete")]
    NpComplete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rationale {
    Loop,
    Bipartite,
    NonBipartiteLoopless,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub id: String,
    pub has_loop: Option<usize>,
    pub bipartite: BipartiteCertificate,
    pub verdict: Complexity,
    pub rationale: Rationale,
}

/// A stable textual key: graph6 for loopless graphs, `n:u-v,...` otherwise.
pub fn graph_key(h: &Graph) -> String {
    match to_graph6(h) {
        Ok(s) => s,
        Err(_) => {
            let edges: Vec<String> = h.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
            format!("{}:{}", h.n(), edges.join(","))
        }
    }
}

/// Parses a [`graph_key`]: graph6, or `n:u-v,...` (which may include loops `v-v`).
pub fn parse_graph_key(s: &str) -> Result<Graph> {
    let s = s.trim();
    let Some((n, rest)) = s.split_once(':') else {
        return parse_graph6(s);
    };
    let bad = |m: &str| Error::parse(1, 0, format!("{m} in {s:?}"));
    let n: usize = n.parse().map_err(|_| bad("bad vertex count"))?;
    let mut edges = Vec::new();
    for part in rest.split(',').filter(|p| !p.is_empty()) {
        let (u, v) = part.split_once('-').ok_or_else(|| bad("edge without '-'"))?;
        edges.push((u.parse().map_err(|_| bad("bad vertex"))?, v.parse().map_err(|_| bad("bad vertex"))?));
    }
    Graph::from_edges(n, &edges)
}

/// Loops first, then bipartiteness; everything else is NP-complete.
pub fn classify(h: &Graph) -> ClassificationResult {
    let has_loop = h.has_loop();
    let bipartite = is_bipartite(h);
    let (verdict, rationale) = if has_loop.is_some() {
        (Complexity::P, Rationale::Loop)
    } else if bipartite.is_partition() {
        (Complexity::P, Rationale::Bipartite)
    } else {
        (Complexity::NpComplete, Rationale::NonBipartiteLoopless)
    };
    ClassificationResult {
        id: graph_key(h),
        has_loop,
        bipartite,
        verdict,
        rationale,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossOptions {
    pub core_max_vertices: usize,
    pub max_elements: usize,
    pub identity: IdentitySystem,
    pub search: SearchOptions,
    pub verdict: VerdictOptions,
}

impl Default for CrossOptions {
    fn default() -> Self {
        CrossOptions {
            core_max_vertices: DEFAULT_CORE_MAX_VERTICES,
            max_elements: DEFAULT_MAX_ELEMENTS,
            identity: IdentitySystem::siggers4(),
            search: SearchOptions::default(),
            verdict: VerdictOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ImplicationStatus {
    Verified,
    Refuted,
    /// A budget ran out or an inconclusive verdict blocked the check.
    Unchecked,
    /// The premise does not hold.
    Vacuous,
}

#[derive(Clone, Debug, Serialize)]
pub struct Implication {
    pub name: &'static str,
    /// The statement this check instantiates.
    pub statement: &'static str,
    pub status: ImplicationStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchSummary {
    pub status: SearchStatus,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidationReport {
    pub classification: ClassificationResult,
    pub core_size: Option<usize>,
    pub core: Option<Graph>,
    pub search: Option<SearchSummary>,
    pub mhom_elements: Option<usize>,
    pub components: Option<Vec<ComponentReport>>,
    pub flip_fixed: Option<Vec<usize>>,
    pub edge_flip_witness: Option<bool>,
    pub implications: Vec<Implication>,
    /// Sub-checks that could not run, with the reason.
    pub errors: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Consistency {
    Consistent,
    Unchecked,
    Inconsistent,
}

impl CrossValidationReport {
    pub fn consistency(&self) -> Consistency {
        let st = |s| self.implications.iter().any(|i| i.status == s);
        if st(ImplicationStatus::Refuted) {
            Consistency::Inconsistent
        } else if st(ImplicationStatus::Unchecked) {
            Consistency::Unchecked
        } else {
            Consistency::Consistent
        }
    }
}

const NO_TAYLOR: &str = "Every non-bipartite graph that has a Taylor polymorphism has a self-loop; for cores, Taylor is equivalent to satisfying the chosen identity system";
const TRACTABLE_HAS_TAYLOR: &str = "If H is bipartite or contains a loop, its core is K1, K2 or a loop vertex, each of which satisfies the chosen identity system";
const CONTRACTIBLE: &str = "If H has a Taylor polymorphism, every connected component of |mhom(K2, H)| is contractible";
const FLIP_FIXED: &str = "The flip on mhom(K2, H) has a fixed point if and only if H has a self-loop";
const EDGE_FLIP: &str = "If H is not bipartite, some edge (u,v) lies in the same component of mhom(K2, H) as (v,u)";

fn implication(name: &'static str, statement: &'static str, status: ImplicationStatus) -> Implication {
    Implication { name, statement, status }
}

/// Computes the core, searches it for a polymorphism satisfying the identity system, builds
/// `mhom(K2, core)` and checks the implications linking these results.
pub fn cross_validate(h: &Graph, opts: &CrossOptions) -> CrossValidationReport {
    use ImplicationStatus::*;
    let classification = classify(h);
    let mut report = CrossValidationReport {
        classification,
        core_size: None,
        core: None,
        search: None,
        mhom_elements: None,
        components: None,
        flip_fixed: None,
        edge_flip_witness: None,
        implications: Vec::new(),
        errors: Vec::new(),
    };
    let np = report.classification.verdict == Complexity::NpComplete;
    let core = match compute_core(h, opts.core_max_vertices) {
        Ok(c) => c.core,
        Err(e) => {
            report.errors.push(format!("core: {e}"));
            for (name, st) in [
                ("no-taylor-without-loop", NO_TAYLOR),
                ("tractable-has-taylor", TRACTABLE_HAS_TAYLOR),
                ("taylor-implies-contractible", CONTRACTIBLE),
                ("flip-fixed-iff-loop", FLIP_FIXED),
                ("edge-meets-its-flip", EDGE_FLIP),
            ] {
                report.implications.push(implication(name, st, Unchecked));
            }
            return report;
        }
    };
    report.core_size = Some(core.n());

    let status = match search_polymorphism(&core, &opts.identity, &opts.search) {
        Ok(out) => {
            let s = out.status;
            report.search = Some(SearchSummary { status: s, stats: out.stats });
            Some(s)
        }
        Err(e) => {
            report.errors.push(format!("search: {e}"));
            None
        }
    };
    let (sat, unsat) = (status == Some(SearchStatus::Sat), status == Some(SearchStatus::Unsat));
    let decided = sat || unsat;
    report.implications.push(implication(
        "no-taylor-without-loop",
        NO_TAYLOR,
        match (np, decided) {
            (false, _) => Vacuous,
            (true, false) => Unchecked,
            (true, true) if unsat => Verified,
            _ => Refuted,
        },
    ));
    report.implications.push(implication(
        "tractable-has-taylor",
        TRACTABLE_HAS_TAYLOR,
        match (np, decided) {
            (true, _) => Vacuous,
            (false, false) => Unchecked,
            (false, true) if sat => Verified,
            _ => Refuted,
        },
    ));

    let mp = match build_mhom(&Graph::complete(2), &core, opts.max_elements) {
        Ok(mp) => Some(mp),
        Err(e) => {
            report.errors.push(format!("mhom: {e}"));
            None
        }
    };
    let verdicts = mp.as_ref().map(|mp| contractibility_verdict(&mp.poset, &opts.verdict));
    let contractible = match (&verdicts, status) {
        (_, Some(SearchStatus::Unsat)) => Vacuous,
        (None, _) | (_, None) | (_, Some(SearchStatus::Timeout)) => Unchecked,
        (Some(v), Some(SearchStatus::Sat)) => {
            if v.iter().any(|c| c.verdict == Verdict::NotContractible) {
                Refuted
            } else if v.iter().any(|c| c.verdict == Verdict::Unknown) {
                Unchecked
            } else {
                Verified
            }
        }
    };
    report.implications.push(implication("taylor-implies-contractible", CONTRACTIBLE, contractible));

    let flip = mp.as_ref().map(|mp| flip_map(mp).expect("source is K2"));
    report.implications.push(implication(
        "flip-fixed-iff-loop",
        FLIP_FIXED,
        match &flip {
            None => Unchecked,
            Some(f) if f.fixed.is_empty() == core.has_loop().is_none() => Verified,
            Some(_) => Refuted,
        },
    ));
    let witness = mp.as_ref().map(|mp| edge_flip_witness_in(mp).is_some());
    let non_bipartite = !report.classification.bipartite.is_partition();
    report.implications.push(implication(
        "edge-meets-its-flip",
        EDGE_FLIP,
        match (non_bipartite, witness) {
            (false, _) => Vacuous,
            (true, None) => Unchecked,
            (true, Some(true)) => Verified,
            (true, Some(false)) => Refuted,
        },
    ));

    report.mhom_elements = mp.as_ref().map(|mp| mp.len());
    report.components = verdicts;
    report.flip_fixed = flip.map(|f| f.fixed);
    report.edge_flip_witness = witness;
    report.core = Some(core);
    report
}

/// One corpus line: an id and either a parsed graph or the reason it was rejected.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub graph: std::result::Result<Graph, String>,
}

/// Reads a corpus: one graph per line as `[id] key`, where `key` is graph6 or `n:u-v,...`.
/// Blank lines and `#` comments are ignored; unreadable lines become skipped entries.
pub fn parse_corpus(text: &str) -> Vec<CorpusEntry> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                return None;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let (id, key) = match tokens.as_slice() {
                [key] => (key.to_string(), *key),
                [id, key] => (id.to_string(), *key),
                _ => {
                    return Some(CorpusEntry {
                        id: format!("line-{}", i + 1),
                        graph: Err(format!("line {}: expected `[id] graph`", i + 1)),
                    })
                }
            };
            Some(CorpusEntry {
                id,
                graph: parse_graph_key(key).map_err(|e| format!("line {}: {e}", i + 1)),
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusRecord {
    pub id: String,
    pub skipped: Option<String>,
    pub report: Option<CrossValidationReport>,
    pub consistency: Option<Consistency>,
    #[serde(skip)]
    pub wall_ms: u128,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StatusCounts {
    pub verified: usize,
    pub refuted: usize,
    pub unchecked: usize,
    pub vacuous: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CorpusSummary {
    pub graphs: usize,
    pub p: usize,
    pub np_complete: usize,
    pub skipped: usize,
    pub implications: StatusCounts,
    pub inconsistent_graphs: usize,
    pub unchecked_graphs: usize,
    #[serde(skip)]
    pub wall_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub records: Vec<CorpusRecord>,
    pub summary: CorpusSummary,
}

impl CorpusReport {
    /// 0 when consistent, 2 on any refuted implication, 3 when only unchecked ones remain.
    pub fn exit_code(&self) -> i32 {
        if self.summary.inconsistent_graphs > 0 {
            2
        } else if self.summary.unchecked_graphs > 0 {
            3
        } else {
            0
        }
    }
}

/// Classifies and cross-validates every entry on `jobs` threads; records are sorted by id.
pub fn corpus_run(entries: &[CorpusEntry], opts: &CrossOptions, jobs: usize) -> Result<CorpusReport> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let mut records: Vec<CorpusRecord> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| {
                let t = Instant::now();
                match &e.graph {
                    Err(reason) => CorpusRecord {
                        id: e.id.clone(),
                        skipped: Some(reason.clone()),
                        report: None,
                        consistency: None,
                        wall_ms: 0,
                    },
                    Ok(g) => {
                        let mut r = cross_validate(g, opts);
                        r.classification.id = e.id.clone();
                        CorpusRecord {
                            id: e.id.clone(),
                            skipped: None,
                            consistency: Some(r.consistency()),
                            report: Some(r),
                            wall_ms: t.elapsed().as_millis(),
                        }
                    }
                }
            })
            .collect()
    });
    records.sort_by(|a, b| a.id.cmp(&b.id));
    let mut s = CorpusSummary {
        graphs: records.len(),
        ..CorpusSummary::default()
    };
    for r in &records {
        let Some(rep) = &r.report else {
            s.skipped += 1;
            continue;
        };
        match rep.classification.verdict {
            Complexity::P => s.p += 1,
            Complexity::NpComplete => s.np_complete += 1,
        }
        for i in &rep.implications {
            match i.status {
                ImplicationStatus::Verified => s.implications.verified += 1,
                ImplicationStatus::Refuted => s.implications.refuted += 1,
                ImplicationStatus::Unchecked => s.implications.unchecked += 1,
                ImplicationStatus::Vacuous => s.implications.vacuous += 1,
            }
        }
        match rep.consistency() {
            Consistency::Inconsistent => s.inconsistent_graphs += 1,
            Consistency::Unchecked => s.unchecked_graphs += 1,
            Consistency::Consistent => {}
        }
    }
    s.wall_ms = start.elapsed().as_millis();
    Ok(CorpusReport { records, summary: s })
}
