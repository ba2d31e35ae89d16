use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{bits, MhomPoset};
use crate::error::{Error, Result};
use crate::polysearch::{PolymorphismTable, SubTaylorWitness};

/// The operation `f'(m_1..m_n)(v) = { f(h_1..h_n) : h_i in m_i(v) }` on `mhom(G, H)` induced
/// by a polymorphism `f` of `H`.
#[derive(Clone, Copy, Debug)]
pub struct InducedOperation<'a> {
    table: &'a PolymorphismTable,
    mp: &'a MhomPoset,
}

impl InducedOperation<'_> {
    pub fn arity(&self) -> usize {
        self.table.arity
    }

    /// Pointwise image sets as bitmasks.
    pub fn image(&self, args: &[usize]) -> Vec<u64> {
        assert_eq!(args.len(), self.table.arity);
        let n = self.table.arity;
        (0..self.mp.g.n())
            .map(|v| {
                let sets: Vec<Vec<usize>> = args.iter().map(|&a| bits(self.mp.elements[a].values[v]).collect()).collect();
                let mut out = 0u64;
                let mut pos = vec![0usize; n];
                let mut tuple = vec![0usize; n];
                'odometer: loop {
                    for k in 0..n {
                        tuple[k] = sets[k][pos[k]];
                    }
                    out |= 1 << self.table.eval(&tuple);
                    let mut k = n;
                    loop {
                        if k == 0 {
                            break 'odometer;
                        }
                        k -= 1;
                        pos[k] += 1;
                        if pos[k] < sets[k].len() {
                            continue 'odometer;
                        }
                        pos[k] = 0;
                    }
                }
                out
            })
            .collect()
    }

    /// Index of the image element, `None` if the image sets are not a multihomomorphism.
    pub fn apply(&self, args: &[usize]) -> Option<usize> {
        self.mp.index_of(&self.image(args))
    }
}

/// Wraps `f` as an operation on `mp`, after checking it is a polymorphism of the target.
pub fn induce_on_mhom<'a>(f: &'a PolymorphismTable, mp: &'a MhomPoset) -> Result<InducedOperation<'a>> {
    if f.graph != mp.h {
        return Err(Error::Invalid("operation is defined on a different graph than the poset target".into()));
    }
    f.check_edge_preserving()?;
    Ok(InducedOperation { table: f, mp })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternSide {
    Alpha,
    Beta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SubTaylorViolation {
    /// The induced image is not an element of the poset.
    Undefined { operation: String, args: Vec<usize> },
    /// `t'(m, .., m)` is not above `m`.
    NotInflationary { element: usize, image: usize },
    /// Raising argument `position` to `raised` does not raise the value.
    NotMonotone {
        operation: String,
        args: Vec<usize>,
        position: usize,
        raised: usize,
    },
    /// `t'(x_pattern) >= s'_i(x_1, x_2)` fails.
    Pattern {
        coordinate: usize,
        side: PatternSide,
        x: (usize, usize),
        t_value: usize,
        s_value: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct SubTaylorReport {
    pub elements: usize,
    pub arity: usize,
    /// Whether all `|mp|^n` argument tuples of `t'` were checked.
    pub exhaustive: bool,
    pub tuples_checked: usize,
    pub pairs_checked: usize,
    pub seed: u64,
    pub violations: Vec<SubTaylorViolation>,
}

impl SubTaylorReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the operations induced on `mp` by `witness` form a sub-Taylor polymorphism.
///
/// `t'` is checked on every element for `t'(m, .., m) >= m`, and on argument tuples for being
/// defined and monotone: every tuple when `|mp|^n <= budget`, otherwise `budget` seeded random
/// tuples plus all diagonal tuples. The binary `s'_i` and both inequalities per coordinate are
/// checked on all pairs when `|mp|^2 <= budget`, on sampled pairs otherwise.
pub fn verify_sub_taylor(
    witness: &SubTaylorWitness,
    mp: &MhomPoset,
    budget: usize,
    seed: u64,
) -> Result<SubTaylorReport> {
    witness.validate()?;
    let t = induce_on_mhom(&witness.t_table, mp)?;
    let s = witness
        .s_tables
        .iter()
        .map(|tab| induce_on_mhom(tab, mp))
        .collect::<Result<Vec<_>>>()?;
    let k = mp.len();
    let n = witness.arity;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();

    for m in 0..k {
        match t.apply(&vec![m; n]) {
            None => violations.push(SubTaylorViolation::Undefined {
                operation: "t".into(),
                args: vec![m; n],
            }),
            Some(img) if !mp.poset.leq(m, img) => {
                violations.push(SubTaylorViolation::NotInflationary { element: m, image: img })
            }
            Some(_) => {}
        }
    }

    let exhaustive = k.checked_pow(n as u32).is_some_and(|c| c <= budget);
    let tuples: Vec<Vec<usize>> = if k == 0 {
        Vec::new()
    } else if exhaustive {
        (0..k.pow(n as u32)).map(|c| decode(c, k, n)).collect()
    } else {
        let mut v: Vec<Vec<usize>> = (0..budget).map(|_| (0..n).map(|_| rng.random_range(0..k)).collect()).collect();
        v.extend((0..k).map(|m| vec![m; n]));
        v
    };
    violations.extend(tuples.par_iter().flat_map_iter(|args| tuple_violations("t", &t, mp, args)).collect::<Vec<_>>());

    let pairs_exhaustive = k.checked_mul(k).is_some_and(|c| c <= budget);
    let pairs: Vec<(usize, usize)> = if k == 0 {
        Vec::new()
    } else if pairs_exhaustive {
        (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect()
    } else {
        (0..budget).map(|_| (rng.random_range(0..k), rng.random_range(0..k))).collect()
    };
    let pattern_violations: Vec<SubTaylorViolation> = pairs
        .par_iter()
        .flat_map_iter(|&(x1, x2)| {
            let mut out = Vec::new();
            for (i, ((alpha, beta), si)) in witness.patterns.iter().zip(&s).enumerate() {
                let name = format!("s{}", i + 1);
                out.extend(tuple_violations(&name, si, mp, &[x1, x2]));
                let Some(sv) = si.apply(&[x1, x2]) else { continue };
                let x = [x1, x2];
                for (side, pattern) in [(PatternSide::Alpha, alpha), (PatternSide::Beta, beta)] {
                    let args: Vec<usize> = pattern.iter().map(|&p| x[p]).collect();
                    if let Some(tv) = t.apply(&args) {
                        if !mp.poset.leq(sv, tv) {
                            out.push(SubTaylorViolation::Pattern {
                                coordinate: i + 1,
                                side,
                                x: (x1, x2),
                                t_value: tv,
                                s_value: sv,
                            });
                        }
                    }
                }
            }
            out
        })
        .collect();
    violations.extend(pattern_violations);

    Ok(SubTaylorReport {
        elements: k,
        arity: n,
        exhaustive,
        tuples_checked: tuples.len(),
        pairs_checked: pairs.len(),
        seed,
        violations,
    })
}

/// Definedness at `args` and monotonicity along each upper cover of each argument.
fn tuple_violations(name: &str, op: &InducedOperation<'_>, mp: &MhomPoset, args: &[usize]) -> Vec<SubTaylorViolation> {
    let Some(base) = op.apply(args) else {
        return vec![SubTaylorViolation::Undefined {
            operation: name.into(),
            args: args.to_vec(),
        }];
    };
    let mut out = Vec::new();
    let mut raised = args.to_vec();
    for pos in 0..args.len() {
        for c in mp.poset.upper_covers(args[pos]) {
            raised[pos] = c;
            if !op.apply(&raised).is_some_and(|v| mp.poset.leq(base, v)) {
                out.push(SubTaylorViolation::NotMonotone {
                    operation: name.into(),
                    args: args.to_vec(),
                    position: pos,
                    raised: c,
                });
            }
        }
        raised[pos] = args[pos];
    }
    out
}

fn decode(mut code: usize, k: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = code % k;
        code /= k;
    }
    out
}
