use serde::Serialize;

use super::complex::{order_complex, DEFAULT_FACE_BUDGET};
use super::homology::{euler_characteristic, homology, is_point_homology, HomologyGroup};
use crate::poset::{dismantle, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Contractible,
    NotContractible,
    Unknown,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct VerdictOptions {
    /// Highest homology dimension computed.
    pub max_hom_dim: usize,
    pub face_budget: usize,
    /// Also compute the homology of the undismantled component when it fits the budget, and
    /// check it against a contractibility certificate.
    pub cross_check: bool,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions {
            max_hom_dim: 3,
            face_budget: DEFAULT_FACE_BUDGET,
            cross_check: true,
        }
    }
}

/// Analysis of one connected component.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    /// Elements of the input poset in this component.
    pub elements: Vec<usize>,
    pub verdict: Verdict,
    /// Number of irreducible elements removed while dismantling.
    pub dismantled: usize,
    pub residual_size: usize,
    /// Homology of the residual's order complex (homotopy equivalent to the component).
    pub homology: Option<Vec<HomologyGroup>>,
    /// Face counts of the residual's order complex.
    pub face_counts: Option<Vec<usize>>,
    pub euler_characteristic: Option<i64>,
    /// First dimension whose homology differs from a point's.
    pub witness_dim: Option<usize>,
    pub reason: Option<String>,
}

/// Three-valued contractibility verdict for each connected component of `p`.
///
/// A component that dismantles to a point is contractible. Otherwise the residual's homology
/// is computed up to `max_hom_dim`; any deviation from a point's homology refutes
/// contractibility, and agreement leaves the question open.
pub fn contractibility_verdict(p: &Poset, opts: &VerdictOptions) -> Vec<ComponentReport> {
    p.connected_components()
        .into_iter()
        .map(|elements| component_verdict(p.subposet(&elements), elements, opts))
        .collect()
}

fn component_verdict(comp: Poset, elements: Vec<usize>, opts: &VerdictOptions) -> ComponentReport {
    let trace = dismantle(&comp);
    let mut report = ComponentReport {
        elements,
        verdict: Verdict::Unknown,
        dismantled: trace.removed.len(),
        residual_size: trace.residual.len(),
        homology: None,
        face_counts: None,
        euler_characteristic: None,
        witness_dim: None,
        reason: None,
    };
    if trace.reaches_point() {
        report.verdict = Verdict::Contractible;
        report.homology = Some(vec![HomologyGroup {
            dim: 0,
            betti: 1,
            torsion: vec![],
        }]);
        report.face_counts = Some(vec![1]);
        report.euler_characteristic = Some(1);
        if opts.cross_check {
            if let Ok(full) = order_complex(&comp, Some(opts.max_hom_dim + 1), opts.face_budget) {
                let top = full.max_dim().unwrap_or(0).min(opts.max_hom_dim);
                let h = homology(&full, top);
                assert!(
                    is_point_homology(&h),
                    "dismantlable component has nontrivial homology: {h:?}"
                );
            }
        }
        return report;
    }
    // Faces one dimension above max_hom_dim are needed for the last rank.
    let complex = match order_complex(&trace.residual, Some(opts.max_hom_dim + 1), opts.face_budget) {
        Ok(c) => c,
        Err(e) => {
            report.reason = Some(e.to_string());
            return report;
        }
    };
    let top = complex.max_dim().unwrap_or(0).min(opts.max_hom_dim);
    let h = homology(&complex, top);
    report.face_counts = Some(complex.face_counts());
    if complex.max_dim().is_some_and(|d| d <= opts.max_hom_dim) {
        report.euler_characteristic = Some(euler_characteristic(&complex));
    }
    report.witness_dim = h
        .iter()
        .find(|g| !is_point_homology(std::slice::from_ref(g)))
        .map(|g| g.dim);
    report.verdict = if report.witness_dim.is_some() {
        Verdict::NotContractible
    } else {
        report.reason = Some(format!(
            "ramified residual of {} elements with point homology through dimension {top}",
            trace.residual.len()
        ));
        Verdict::Unknown
    };
    report.homology = Some(h);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_is_contractible() {
        let r = contractibility_verdict(&Poset::chain(4), &VerdictOptions::default());
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].verdict, Verdict::Contractible);
        assert_eq!(r[0].dismantled, 3);
    }

    #[test]
    fn crown_is_a_circle() {
        // 4-crown: minimal 0,1 below maximal 2,3; the order complex is a 4-cycle
        let p = Poset::from_strict_relations(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let r = contractibility_verdict(&p, &VerdictOptions::default());
        assert_eq!(r[0].verdict, Verdict::NotContractible);
        assert_eq!(r[0].witness_dim, Some(1));
        assert_eq!(r[0].euler_characteristic, Some(0));
    }

    #[test]
    fn antichain_components_are_points() {
        let r = contractibility_verdict(&Poset::antichain(3), &VerdictOptions::default());
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|c| c.verdict == Verdict::Contractible && c.dismantled == 0));
    }

    #[test]
    fn budget_yields_unknown() {
        let p = Poset::from_strict_relations(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let opts = VerdictOptions { face_budget: 3, ..VerdictOptions::default() };
        let r = contractibility_verdict(&p, &opts);
        assert_eq!(r[0].verdict, Verdict::Unknown);
        assert!(r[0].reason.as_deref().unwrap().contains("limit exceeded"));
    }
}
