//! Sparse exact integer matrices and their Smith normal form.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt::Debug;

/// Integer matrix stored as sorted sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Dense constructor; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            m.data[i] = r
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, &v)| (j, v))
                .collect();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map_or(0, |p| self.data[i][p].1)
    }

    /// Sets an entry. Panics when out of range.
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!(i < self.rows && j < self.cols);
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |&(c, _)| c) {
            Ok(p) if v == 0 => {
                row.remove(p);
            }
            Ok(p) => row[p].1 = v,
            Err(p) if v != 0 => row.insert(p, (j, v)),
            Err(_) => {}
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.data[i]
    }

    /// Exact product; `None` if an entry overflows `i64`.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
            for &(k, a) in &self.data[i] {
                for &(j, b) in &other.data[k] {
                    let e = acc.entry(j).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            out.data[i] = acc.into_iter().filter(|&(_, v)| v != 0).collect();
        }
        Some(out)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Invariant factors `d1 | d2 | ... | dr` (all positive) and rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigUint>,
    pub rank: usize,
    /// True if the fixed-width pass overflowed and the computation was redone in big integers.
    pub promoted: bool,
}

impl SmithForm {
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }
}

/// Arithmetic needed by the elimination; `i64` reports overflow, `BigInt` never does.
trait Ring: Clone + Debug + PartialEq {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Ring for i64 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type Row<T> = Vec<(usize, T)>;

/// row_target - q * row_pivot, merged by column.
fn row_sub_mul<T: Ring>(target: &Row<T>, q: &T, pivot: &Row<T>) -> Option<Row<T>> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(target[i].clone());
            i += 1;
        } else if cj < ci {
            let v = T::nil().sub_mul(q, &pivot[j].1)?;
            out.push((cj, v));
            j += 1;
        } else {
            let v = target[i].1.sub_mul(q, &pivot[j].1)?;
            if !v.is_nil() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Elimination over `T`. Returns the diagonal (absolute values, unnormalised) or `None` on overflow.
fn eliminate<T: Ring>(rows: Vec<Row<T>>, ncols: usize) -> Option<Vec<BigInt>> {
    let mut rows = rows;
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r {
            col_rows[*c].insert(i);
        }
    }
    let mut active = vec![true; rows.len()];
    let mut col_done = vec![false; ncols];
    let mut diagonal: Vec<BigInt> = Vec::new();

    // Unit pivots: eliminate the column with row operations, then drop pivot row and column.
    // Column operations that would clear the rest of the pivot row touch no other row.
    for c in 0..ncols {
        let pivot = col_rows[c]
            .iter()
            .copied()
            .filter(|&r| {
                let e = rows[r].binary_search_by_key(&c, |e| e.0).expect("indexed entry");
                rows[r][e].1.is_unit()
            })
            .min_by_key(|&r| (rows[r].len(), r));
        let Some(p) = pivot else { continue };
        let pe = rows[p].binary_search_by_key(&c, |e| e.0).unwrap();
        let pv = rows[p][pe].1.clone();
        let others: Vec<usize> = col_rows[c].iter().copied().filter(|&r| r != p).collect();
        let pivot_row = rows[p].clone();
        for r in others {
            let e = rows[r].binary_search_by_key(&c, |e| e.0).unwrap();
            let q = rows[r][e].1.quot(&pv)?;
            let new = row_sub_mul(&rows[r], &q, &pivot_row)?;
            for (cc, _) in &rows[r] {
                col_rows[*cc].remove(&r);
            }
            for (cc, _) in &new {
                col_rows[*cc].insert(r);
            }
            rows[r] = new;
        }
        for (cc, _) in &rows[p] {
            col_rows[*cc].remove(&p);
        }
        active[p] = false;
        col_done[c] = true;
        diagonal.push(BigInt::one());
    }

    // Dense remainder with smallest-absolute-value pivots.
    let rest_cols: Vec<usize> = (0..ncols).filter(|&c| !col_done[c] && !col_rows[c].is_empty()).collect();
    let rest_rows: Vec<usize> = (0..rows.len()).filter(|&r| active[r] && !rows[r].is_empty()).collect();
    if !rest_cols.is_empty() {
        let cpos: std::collections::HashMap<usize, usize> =
            rest_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense: Vec<Vec<BigInt>> = rest_rows
            .iter()
            .map(|&r| {
                let mut v = vec![BigInt::zero(); rest_cols.len()];
                for (c, x) in &rows[r] {
                    if let Some(&j) = cpos.get(c) {
                        v[j] = x.to_big();
                    }
                }
                v
            })
            .collect();
        diagonal.extend(dense_diagonal(&mut dense));
    }
    Some(diagonal)
}

/// Diagonalises a dense matrix in place; returns the nonzero diagonal entries (absolute).
fn dense_diagonal(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !Zero::is_zero(&a[i][j])
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            if !Zero::is_zero(&a[i][t]) {
                let q = &a[i][t] / &a[t][t];
                for j in t..n {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                clean &= Zero::is_zero(&a[i][t]);
            }
        }
        for j in t + 1..n {
            if !Zero::is_zero(&a[t][j]) {
                let q = &a[t][j] / &a[t][t];
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                clean &= Zero::is_zero(&a[t][j]);
            }
        }
        if clean {
            out.push(a[t][t].abs());
            t += 1;
        }
        // otherwise a smaller remainder exists; reselect the pivot for the same t
    }
    out
}

/// Turns a diagonal into invariant factors with `d1 | d2 | ...` via gcd/lcm exchange.
fn normalise(mut d: Vec<BigInt>) -> Vec<BigUint> {
    d.sort();
    let r = d.len();
    for i in 0..r {
        for j in i + 1..r {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.into_iter()
        .map(|x| x.to_biguint().expect("invariant factors are positive"))
        .collect()
}

/// Smith normal form by row/column reduction, exact over the integers.
///
/// Runs on checked `i64`; on overflow the same reduction is repeated over `BigInt`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let small: Vec<Row<i64>> = m.data.clone();
    let (diag, promoted) = match eliminate(small, m.cols) {
        Some(d) => (d, false),
        None => {
            let big: Vec<Row<BigInt>> = m
                .data
                .iter()
                .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
                .collect();
            (eliminate(big, m.cols).expect("big integers do not overflow"), true)
        }
    };
    let factors = normalise(diag);
    SmithForm {
        rank: factors.len(),
        factors,
        promoted,
    }
}
