use std::fmt;

use serde::Serialize;

use super::identity::IdentitySystem;
use super::table::PolymorphismTable;
use crate::graph::Graph;

/// The first reason a table fails to be a polymorphism satisfying a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    WrongGraph,
    Edge {
        from: Vec<usize>,
        to: Vec<usize>,
        image_from: usize,
        image_to: usize,
    },
    Idempotence {
        vertex: usize,
        image: usize,
    },
    Identity {
        identity: usize,
        /// Value of each system variable.
        assignment: Vec<usize>,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
        lhs_value: usize,
        rhs_value: usize,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::WrongGraph => write!(f, "table is defined on a different graph"),
            Counterexample::Edge { from, to, image_from, image_to } => {
                write!(f, "{from:?} ~ {to:?} but images {image_from} and {image_to} are not adjacent")
            }
            Counterexample::Idempotence { vertex, image } => {
                write!(f, "s({vertex}, .., {vertex}) = {image}")
            }
            Counterexample::Identity { identity, lhs, rhs, lhs_value, rhs_value, .. } => write!(
                f,
                "identity {identity}: s{lhs:?} = {lhs_value} but s{rhs:?} = {rhs_value}"
            ),
        }
    }
}

/// Checks edge preservation, idempotence (if required) and every identity instance.
pub fn verify_polymorphism(
    h: &Graph,
    table: &PolymorphismTable,
    sys: &IdentitySystem,
) -> std::result::Result<(), Counterexample> {
    if table.graph != *h {
        return Err(Counterexample::WrongGraph);
    }
    if let Some((from, to)) = table.edge_violation() {
        return Err(Counterexample::Edge {
            image_from: table.eval(&from),
            image_to: table.eval(&to),
            from,
            to,
        });
    }
    match identity_violation(table, sys) {
        Some(c) => Err(c),
        None => Ok(()),
    }
}

/// First failure of idempotence or of an identity, ignoring edge preservation.
pub fn identity_violation(table: &PolymorphismTable, sys: &IdentitySystem) -> Option<Counterexample> {
    let n = table.graph.n();
    if table.arity != sys.arity {
        return Some(Counterexample::WrongGraph);
    }
    if sys.idempotent {
        for v in 0..n {
            let image = table.eval(&vec![v; table.arity]);
            if image != v {
                return Some(Counterexample::Idempotence { vertex: v, image });
            }
        }
    }
    let k = sys.variables.len();
    let count = n.checked_pow(k as u32)?;
    for (idx, (l, r)) in sys.identities.iter().enumerate() {
        for code in 0..count {
            let assignment = super::table::decode(code, n, k);
            let lhs: Vec<usize> = l.iter().map(|&v| assignment[v]).collect();
            let rhs: Vec<usize> = r.iter().map(|&v| assignment[v]).collect();
            let (lv, rv) = (table.eval(&lhs), table.eval(&rhs));
            if lv != rv {
                return Some(Counterexample::Identity {
                    identity: idx,
                    assignment,
                    lhs,
                    rhs,
                    lhs_value: lv,
                    rhs_value: rv,
                });
            }
        }
    }
    None
}
