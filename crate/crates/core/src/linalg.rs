//! Exact linear algebra over Z[q, q^-1] and its fraction field.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::coeff::{LaurentScalar, RationalScalar};
use crate::error::{Error, Result};

type Row = BTreeMap<usize, RationalScalar>;

/// Coordinates with respect to a fixed basis of a free module, given as sparse vectors
/// over some key set. The basis matrix is inverted once by Gauss-Jordan elimination,
/// pivoting on units whenever one is available.
pub struct BasisSolver<K: Hash + Eq + Clone> {
    n: usize,
    col_of: HashMap<K, usize>,
    /// Row of the inverse for each key column.
    inv: Vec<Vec<(usize, LaurentScalar)>>,
}

fn pivot_cost(x: &RationalScalar) -> (usize, usize) {
    let unit = x.denom().is_one() && x.numer().is_unit();
    let span = x.numer().terms().len() + x.denom().terms().len();
    (if unit { 0 } else { 1 }, span)
}

impl<K: Hash + Eq + Clone> BasisSolver<K> {
    /// `vectors[i]` is the i-th basis vector. Fails unless the vectors form a basis of
    /// the span of their keys over the Laurent ring.
    pub fn new(vectors: &[Vec<(K, LaurentScalar)>]) -> Result<Self> {
        let n = vectors.len();
        let mut col_of: HashMap<K, usize> = HashMap::new();
        for v in vectors {
            for (k, _) in v {
                let next = col_of.len();
                col_of.entry(k.clone()).or_insert(next);
            }
        }
        if col_of.len() != n {
            return Err(Error::Falsified(format!(
                "{n} vectors span {} coordinates",
                col_of.len()
            )));
        }
        // Augmented rows [B | I]; identity columns are offset by n.
        let mut rows: Vec<Row> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut r = Row::new();
                for (k, x) in v {
                    if !x.is_zero() {
                        r.insert(col_of[k], RationalScalar::from_laurent(x.clone()));
                    }
                }
                r.insert(n + i, RationalScalar::one());
                r
            })
            .collect();
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, r) in rows.iter().enumerate() {
            for &c in r.keys().take_while(|&&c| c < n) {
                col_rows[c].push(i);
            }
        }
        let mut row_done = vec![false; n];
        let mut pivot_row_of_col = vec![usize::MAX; n];
        for _ in 0..n {
            // Cheapest pivot: a unit if possible, then short rows and short columns.
            let mut best: Option<((usize, usize, usize, usize), usize, usize)> = None;
            for (c, rs) in col_rows.iter().enumerate() {
                if pivot_row_of_col[c] != usize::MAX {
                    continue;
                }
                for &r in rs {
                    if row_done[r] {
                        continue;
                    }
                    let Some(x) = rows[r].get(&c) else { continue };
                    let (nonunit, span) = pivot_cost(x);
                    let key = (nonunit, rows[r].len() * rs.len(), span, r);
                    if best.as_ref().is_none_or(|b| key < b.0) {
                        best = Some((key, r, c));
                    }
                }
            }
            let Some((_, pr, pc)) = best else {
                return Err(Error::Falsified("basis vectors are linearly dependent".into()));
            };
            row_done[pr] = true;
            pivot_row_of_col[pc] = pr;
            let inv = RationalScalar::one().div(&rows[pr][&pc])?;
            let prow: Row = rows[pr].iter().map(|(&c, x)| (c, x * &inv)).collect();
            let targets: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
            for r in targets {
                let Some(f) = rows[r].get(&pc).cloned() else { continue };
                for (&c, x) in &prow {
                    let d = &f * x;
                    let e = rows[r].entry(c).or_insert_with(RationalScalar::zero);
                    *e = &*e - &d;
                    if e.is_zero() {
                        rows[r].remove(&c);
                    } else if c < n && !col_rows[c].contains(&r) {
                        col_rows[c].push(r);
                    }
                }
            }
            rows[pr] = prow;
            col_rows[pc] = vec![pr];
        }
        let mut inv = vec![Vec::new(); n];
        for c in 0..n {
            let r = &rows[pivot_row_of_col[c]];
            for (&j, x) in r.range(n..) {
                let y = x.to_laurent().ok_or_else(|| {
                    Error::Arithmetic(format!("inverse entry {x} is not a Laurent polynomial"))
                })?;
                inv[c].push((j - n, y));
            }
        }
        Ok(BasisSolver { n, col_of, inv })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Coordinates of a vector; fails if it has a key outside the span.
    pub fn coords<'a, I>(&self, target: I) -> Result<BTreeMap<usize, LaurentScalar>>
    where
        I: IntoIterator<Item = (&'a K, &'a LaurentScalar)>,
        K: 'a,
    {
        let mut out: BTreeMap<usize, LaurentScalar> = BTreeMap::new();
        for (k, t) in target {
            let c = *self
                .col_of
                .get(k)
                .ok_or_else(|| Error::Falsified("vector outside the span of the basis".into()))?;
            for (j, y) in &self.inv[c] {
                let e = out.entry(*j).or_insert_with(LaurentScalar::zero);
                *e += &(t * y);
            }
        }
        out.retain(|_, x| !x.is_zero());
        Ok(out)
    }
}

/// Dense matrix over the Laurent ring.
pub type Matrix = Vec<Vec<LaurentScalar>>;

pub fn zero_matrix(r: usize, c: usize) -> Matrix {
    vec![vec![LaurentScalar::zero(); c]; r]
}

pub fn identity_matrix(n: usize) -> Matrix {
    let mut m = zero_matrix(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = LaurentScalar::one();
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let r = a.len();
    let c = b.first().map_or(0, |x| x.len());
    let mut out = zero_matrix(r, c);
    for i in 0..r {
        for (k, x) in a[i].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[k][j].is_zero() {
                    out[i][j] += &(x * &b[k][j]);
                }
            }
        }
    }
    out
}

/// Rank over Q(q), by elimination with reduced fractions.
pub fn rank(m: &Matrix) -> usize {
    let mut rows: Vec<Vec<RationalScalar>> = m
        .iter()
        .map(|r| r.iter().cloned().map(RationalScalar::from_laurent).collect())
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len())
            .filter(|&r| !rows[r][c].is_zero())
            .min_by_key(|&r| pivot_cost(&rows[r][c]))
        else {
            continue;
        };
        rows.swap(rank, p);
        let inv = RationalScalar::one().div(&rows[rank][c]).expect("nonzero pivot");
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let f = &rows[r][c] * &inv;
            for j in c..cols {
                let d = &f * &rows[rank][j];
                rows[r][j] = &rows[r][j] - &d;
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `x * a = b` for a square invertible `a`, row vector `b`, over the Laurent ring.
pub fn solve_left(a: &Matrix, b: &[LaurentScalar]) -> Result<Vec<LaurentScalar>> {
    let vectors: Vec<Vec<(usize, LaurentScalar)>> = a
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect();
    let s = BasisSolver::new(&vectors)?;
    let target: Vec<(usize, LaurentScalar)> = b
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect();
    let c = s.coords(target.iter().map(|(k, x)| (k, x)))?;
    Ok((0..a.len()).map(|i| c.get(&i).cloned().unwrap_or_default()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentScalar {
        s.parse().unwrap()
    }

    #[test]
    fn solver_inverts_a_triangular_basis() {
        let vs = vec![
            vec![(0, p("1")), (1, p("q"))],
            vec![(1, p("1"))],
            vec![(0, p("q - q^-1")), (2, p("-q^2"))],
        ];
        let s = BasisSolver::new(&vs).unwrap();
        let t = [(0usize, p("2")), (1usize, p("q")), (2usize, p("q^2"))];
        let c = s.coords(t.iter().map(|(k, x)| (k, x))).unwrap();
        let mut back: BTreeMap<usize, LaurentScalar> = BTreeMap::new();
        for (i, x) in &c {
            for (k, y) in &vs[*i] {
                *back.entry(*k).or_default() += &(x * y);
            }
        }
        back.retain(|_, x| !x.is_zero());
        assert_eq!(back, t.iter().cloned().collect());
    }

    #[test]
    fn solver_needs_a_non_unit_pivot() {
        // det = (q^2 + 1) - q^2 = 1, but no entry of the first column is a unit.
        let vs = vec![vec![(0, p("q^2 + 1")), (1, p("q"))], vec![(0, p("q")), (1, p("1"))]];
        let s = BasisSolver::new(&vs).unwrap();
        let t = [(0usize, p("1"))];
        let c = s.coords(t.iter().map(|(k, x)| (k, x))).unwrap();
        assert_eq!(c[&0], p("1"));
        assert_eq!(c[&1], p("-q"));
    }

    #[test]
    fn dependent_vectors_are_rejected() {
        let vs = vec![vec![(0, p("1")), (1, p("q"))], vec![(0, p("q")), (1, p("q^2"))]];
        assert!(BasisSolver::new(&vs).is_err());
    }

    #[test]
    fn rank_examples() {
        let m = vec![vec![p("1"), p("q")], vec![p("q"), p("q^2")]];
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&identity_matrix(3)), 3);
        assert_eq!(rank(&zero_matrix(2, 2)), 0);
    }
}
