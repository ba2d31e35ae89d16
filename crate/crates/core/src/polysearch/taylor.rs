use serde::Serialize;

use super::identity::IdentitySystem;
use super::table::PolymorphismTable;
use crate::error::{Error, Result};

/// A Taylor operation `t` on a graph together with, for every coordinate `i`, two patterns
/// `alpha_i, beta_i: [n] -> {0, 1}` that differ at `i` and the binary operations
/// `s_i(x0, x1) = t(x_alpha_i) = t(x_beta_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct SubTaylorWitness {
    pub arity: usize,
    /// `(alpha_i, beta_i)` per coordinate; entry `0` selects the first argument, `1` the second.
    pub patterns: Vec<(Vec<usize>, Vec<usize>)>,
    pub t_table: PolymorphismTable,
    pub s_tables: Vec<PolymorphismTable>,
}

impl SubTaylorWitness {
    /// Checks pattern separation and that each `s_i` agrees with both sides.
    pub fn validate(&self) -> Result<()> {
        if self.patterns.len() != self.arity || self.s_tables.len() != self.arity {
            return Err(Error::Invalid("witness needs one pattern and one table per coordinate".into()));
        }
        let n = self.t_table.graph.n();
        for (i, ((a, b), s)) in self.patterns.iter().zip(&self.s_tables).enumerate() {
            if a[i] == b[i] {
                return Err(Error::Invalid(format!("patterns agree at coordinate {}", i + 1)));
            }
            for x0 in 0..n {
                for x1 in 0..n {
                    let x = [x0, x1];
                    let s_val = s.eval(&x);
                    let ta = self.t_table.eval(&a.iter().map(|&k| x[k]).collect::<Vec<_>>());
                    let tb = self.t_table.eval(&b.iter().map(|&k| x[k]).collect::<Vec<_>>());
                    if s_val != ta || s_val != tb {
                        return Err(Error::Invalid(format!(
                            "s_{} disagrees with t at ({x0}, {x1})",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TaylorDerivation {
    pub witness: Option<SubTaylorWitness>,
    /// Coordinates (1-based) where no two-variable instance of an identity separates the sides.
    pub failed_coordinates: Vec<usize>,
}

/// Two-variable substitutions of the system's identities whose sides differ at each
/// coordinate. Entry `i` is `None` when no identity separates coordinate `i`.
pub fn separating_patterns(sys: &IdentitySystem) -> Vec<Option<(Vec<usize>, Vec<usize>)>> {
    let k = sys.variables.len();
    (0..sys.arity)
        .map(|i| {
            for (l, r) in &sys.identities {
                for mask in 0u64..(1u64 << k.min(63)) {
                    let sub = |v: usize| ((mask >> v) & 1) as usize;
                    if sub(l[i]) != sub(r[i]) {
                        return Some((l.iter().map(|&v| sub(v)).collect(), r.iter().map(|&v| sub(v)).collect()));
                    }
                }
            }
            None
        })
        .collect()
}

/// Derives `alpha_i, beta_i` and the binary tables `s_i` from a table satisfying `sys`.
pub fn derive_taylor_witness(sys: &IdentitySystem, table: &PolymorphismTable) -> Result<TaylorDerivation> {
    if let Some(c) = super::verify::identity_violation(table, sys) {
        return Err(Error::Invalid(format!("table does not satisfy the system: {c}")));
    }
    let found = separating_patterns(sys);
    let failed_coordinates: Vec<usize> = (0..sys.arity).filter(|&i| found[i].is_none()).map(|i| i + 1).collect();
    if !failed_coordinates.is_empty() {
        return Ok(TaylorDerivation {
            witness: None,
            failed_coordinates,
        });
    }
    let patterns: Vec<(Vec<usize>, Vec<usize>)> = found.into_iter().flatten().collect();
    let s_tables = patterns
        .iter()
        .map(|(a, _)| {
            PolymorphismTable::from_fn(table.graph.clone(), 2, |x| {
                table.eval(&a.iter().map(|&k| x[k]).collect::<Vec<_>>())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = SubTaylorWitness {
        arity: sys.arity,
        patterns,
        t_table: table.clone(),
        s_tables,
    };
    witness.validate()?;
    Ok(TaylorDerivation {
        witness: Some(witness),
        failed_coordinates,
    })
}
