use serde::{Deserialize, Serialize};

use super::identity::IdentitySystem;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A total operation `H^n -> H` stored row-major: the first argument is the most significant
/// digit of the tuple index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolymorphismTable {
    pub graph: Graph,
    pub arity: usize,
    pub table: Vec<usize>,
}

impl PolymorphismTable {
    pub fn new(graph: Graph, arity: usize, table: Vec<usize>) -> Result<Self> {
        let size = tuple_count(graph.n(), arity)
            .ok_or_else(|| Error::Invalid("operation table too large".into()))?;
        if table.len() != size {
            return Err(Error::Invalid(format!(
                "table has {} entries, expected {size}",
                table.len()
            )));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= graph.n()) {
            return Err(Error::Invalid(format!("table value {v} is not a vertex")));
        }
        Ok(PolymorphismTable { graph, arity, table })
    }

    /// Table of `(x_1..x_n) -> op(x)`.
    pub fn from_fn(graph: Graph, arity: usize, op: impl Fn(&[usize]) -> usize) -> Result<Self> {
        let n = graph.n();
        let size = tuple_count(n, arity).ok_or_else(|| Error::Invalid("operation table too large".into()))?;
        let table = (0..size).map(|i| op(&decode(i, n, arity))).collect();
        Self::new(graph, arity, table)
    }

    /// The projection onto coordinate `coord` (0-based).
    pub fn projection(graph: Graph, arity: usize, coord: usize) -> Result<Self> {
        Self::from_fn(graph, arity, |x| x[coord])
    }

    pub fn eval(&self, args: &[usize]) -> usize {
        self.table[encode(args, self.graph.n())]
    }

    /// First pair of componentwise-adjacent tuples whose images are not adjacent.
    pub fn edge_violation(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.graph.n();
        let nbrs: Vec<Vec<usize>> = (0..n).map(|v| self.graph.neighbors(v).collect()).collect();
        for i in 0..self.table.len() {
            let x = decode(i, n, self.arity);
            if x.iter().any(|&v| nbrs[v].is_empty()) {
                continue;
            }
            let img = self.table[i];
            // odometer over y with y_k adjacent to x_k
            let mut pos = vec![0usize; self.arity];
            'odometer: loop {
                let y: Vec<usize> = (0..self.arity).map(|k| nbrs[x[k]][pos[k]]).collect();
                if !self.graph.adjacent(img, self.eval(&y)) {
                    return Some((x, y));
                }
                let mut k = self.arity;
                loop {
                    if k == 0 {
                        break 'odometer;
                    }
                    k -= 1;
                    pos[k] += 1;
                    if pos[k] < nbrs[x[k]].len() {
                        continue 'odometer;
                    }
                    pos[k] = 0;
                }
            }
        }
        None
    }

    /// Errors with the first violating tuple pair unless the table preserves edges.
    pub fn check_edge_preserving(&self) -> Result<()> {
        match self.edge_violation() {
            None => Ok(()),
            Some((from, to)) => Err(Error::NotEdgePreserving {
                image_from: self.eval(&from),
                image_to: self.eval(&to),
                from,
                to,
            }),
        }
    }

    /// Satisfies every instantiation of the identities of `sys` (and idempotence if flagged)?
    pub fn satisfies(&self, sys: &IdentitySystem) -> bool {
        super::verify::identity_violation(self, sys).is_none()
    }
}

/// `n^arity`, or `None` on overflow.
pub(crate) fn tuple_count(n: usize, arity: usize) -> Option<usize> {
    n.checked_pow(arity as u32)
}

pub(crate) fn encode(args: &[usize], n: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

pub(crate) fn decode(mut index: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for k in (0..arity).rev() {
        out[k] = index % n;
        index /= n;
    }
    out
}
