//! Matrix oracle: the superfunctor into representations of the quantum periplectic
//! superalgebra on tensor powers of its natural module V (dimension 2n).
//!
//! Basis vectors of V are indexed by a in {-n..-1, 1..n}; v_a is odd iff a < 0.
//! A basis tuple of V^{(x)k} is packed into a `u64`, four bits per tensor factor,
//! factor 1 in the lowest bits. The digit of `a` is `a + n` for negative `a` and
//! `a + n - 1` for positive `a`, so digits follow the order -n < ... < -1 < 1 < ... < n.
//!
//! Every entry produced by the generators lies in Z[q, q^-1], so evaluation works
//! over `LaurentScalar`; `RationalScalar` is used for the linear algebra on top.

use std::collections::{BTreeMap, HashMap};

use crate::coeff::{LaurentScalar, RationalScalar};
use crate::error::{Error, Result};
use crate::tanglecat::{SliceKind, TangleWord};

/// Sparse vector in V^{(x)width}.
pub type SparseVec = HashMap<u64, LaurentScalar>;

const MAX_WIDTH: usize = 16;

fn digit(key: u64, k: usize) -> usize {
    ((key >> (4 * k)) & 0xF) as usize
}

/// Packs index tuples (values in I_{n|n}) into a key.
pub fn pack(n: usize, tuple: &[i64]) -> u64 {
    tuple
        .iter()
        .enumerate()
        .map(|(k, &a)| (index_to_digit(n, a) as u64) << (4 * k))
        .sum()
}

pub fn unpack(n: usize, key: u64, width: usize) -> Vec<i64> {
    (0..width).map(|k| digit_to_index(n, digit(key, k))).collect()
}

fn index_to_digit(n: usize, a: i64) -> usize {
    if a < 0 {
        (a + n as i64) as usize
    } else {
        (a + n as i64 - 1) as usize
    }
}

fn digit_to_index(n: usize, d: usize) -> i64 {
    if d < n {
        d as i64 - n as i64
    } else {
        d as i64 - n as i64 + 1
    }
}

/// Sparse matrix of a morphism V^{(x)m} -> V^{(x)s}, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    pub n: usize,
    pub source: usize,
    pub target: usize,
    /// Column `key` holds the image of the basis tuple `key`; zero columns are omitted.
    pub columns: BTreeMap<u64, BTreeMap<u64, LaurentScalar>>,
}

impl ExactMatrix {
    pub fn rows(&self) -> usize {
        (2 * self.n).pow(self.target as u32)
    }

    pub fn cols(&self) -> usize {
        (2 * self.n).pow(self.source as u32)
    }

    pub fn nnz(&self) -> usize {
        self.columns.values().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if rhs.target != self.source || rhs.n != self.n {
            return Err(Error::InvalidInput("matrix shapes do not chain".into()));
        }
        let mut columns = BTreeMap::new();
        for (&col, v) in &rhs.columns {
            let mut acc: HashMap<u64, LaurentScalar> = HashMap::new();
            for (&mid, c) in v {
                if let Some(w) = self.columns.get(&mid) {
                    for (&row, d) in w {
                        add_to(&mut acc, row, &(c * d));
                    }
                }
            }
            let col_map = to_sorted(acc);
            if !col_map.is_empty() {
                columns.insert(col, col_map);
            }
        }
        Ok(ExactMatrix {
            n: self.n,
            source: rhs.source,
            target: self.target,
            columns,
        })
    }

    pub fn scale(&self, c: &LaurentScalar) -> ExactMatrix {
        let mut out = self.clone();
        if c.is_zero() {
            out.columns.clear();
            return out;
        }
        for col in out.columns.values_mut() {
            for x in col.values_mut() {
                *x = &*x * c;
            }
        }
        out
    }

    pub fn add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if rhs.source != self.source || rhs.target != self.target || rhs.n != self.n {
            return Err(Error::InvalidInput("matrix shapes differ".into()));
        }
        let mut out = self.clone();
        for (&col, v) in &rhs.columns {
            let entry = out.columns.entry(col).or_default();
            for (&row, x) in v {
                let e = entry.entry(row).or_insert_with(LaurentScalar::zero);
                *e += x;
                if e.is_zero() {
                    entry.remove(&row);
                }
            }
            if entry.is_empty() {
                out.columns.remove(&col);
            }
        }
        Ok(out)
    }

    pub fn identity(n: usize, width: usize) -> ExactMatrix {
        let mut columns = BTreeMap::new();
        for key in all_keys(n, width) {
            columns.insert(key, BTreeMap::from([(key, LaurentScalar::one())]));
        }
        ExactMatrix {
            n,
            source: width,
            target: width,
            columns,
        }
    }

    /// Coordinate-format dump: one `row col numerator/denominator` line per entry.
    pub fn to_coordinate_text(&self) -> String {
        let mut s = String::new();
        for (&col, v) in &self.columns {
            for (&row, x) in v {
                s.push_str(&format!(
                    "{} {} {}/1\n",
                    unpack(self.n, row, self.target)
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    unpack(self.n, col, self.source)
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    x
                ));
            }
        }
        s
    }
}

fn add_to(acc: &mut HashMap<u64, LaurentScalar>, key: u64, c: &LaurentScalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(key).or_insert_with(LaurentScalar::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&key);
    }
}

fn to_sorted(acc: HashMap<u64, LaurentScalar>) -> BTreeMap<u64, LaurentScalar> {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// All basis tuples of V^{(x)width}.
pub fn all_keys(n: usize, width: usize) -> Vec<u64> {
    let base = 2 * n;
    let mut keys = vec![0u64];
    for k in 0..width {
        let mut next = Vec::with_capacity(keys.len() * base);
        for key in &keys {
            for d in 0..base {
                next.push(key | ((d as u64) << (4 * k)));
            }
        }
        keys = next;
    }
    keys
}

/// Images of the four generators on basis vectors, as small lookup tables.
#[derive(Clone, Debug)]
pub struct GenMatrices {
    pub n: usize,
    /// `t[d1 * 2n + d2]`: image of v_a (x) v_b as a list of ((d1', d2'), coefficient).
    pub t: Vec<Vec<((usize, usize), LaurentScalar)>>,
    pub t_inv: Vec<Vec<((usize, usize), LaurentScalar)>>,
    /// The vector epsilon(1) in V (x) V.
    pub cup: Vec<((usize, usize), LaurentScalar)>,
    /// theta(v_a (x) v_b), indexed like `t`.
    pub cap: Vec<LaurentScalar>,
}

fn parity(a: i64) -> i64 {
    if a < 0 {
        1
    } else {
        0
    }
}

/// The braiding PS on v_a (x) v_b, written out term by term.
fn ps_action(n: usize, a: i64, b: i64) -> BTreeMap<(i64, i64), LaurentScalar> {
    let q = LaurentScalar::q();
    let qi = LaurentScalar::q_pow(-1);
    let one = LaurentScalar::one();
    let qd = LaurentScalar::qdiff();
    let mut out: BTreeMap<(i64, i64), LaurentScalar> = BTreeMap::new();
    let mut add = |x: i64, y: i64, c: LaurentScalar| {
        let e = out.entry((x, y)).or_insert_with(LaurentScalar::zero);
        *e += &c;
    };
    let sgn = if parity(a) * parity(b) == 1 { -1 } else { 1 };
    add(b, a, LaurentScalar::from_int(sgn));
    if a > 0 {
        let k = (a == -b) as i64 + (a == b) as i64;
        add(b, a, (&q - &one).scale_int(&k.into()));
    }
    if a < 0 {
        let k = (a == -b) as i64 - (a == b) as i64;
        add(b, a, (&qi - &one).scale_int(&k.into()));
    }
    if a > 0 && a == -b {
        add(-b, -a, qd.clone());
    }
    if a.abs() < b.abs() {
        add(a, b, qd.clone());
    }
    if a == -b {
        let s = if parity(a) == 1 { -1 } else { 1 };
        for j in 1..a.abs() {
            for jj in [j, -j] {
                add(jj, -jj, qd.scale_int(&s.into()));
            }
        }
    }
    let _ = n;
    out.retain(|_, c| !c.is_zero());
    out
}

impl GenMatrices {
    pub fn new(n: usize) -> Result<GenMatrices> {
        if n == 0 || 2 * n > 16 {
            return Err(Error::InvalidInput(format!("oracle rank n={n} out of range 1..=8")));
        }
        let base = 2 * n;
        let mut t = vec![Vec::new(); base * base];
        let mut t_inv = vec![Vec::new(); base * base];
        let mut cap = vec![LaurentScalar::zero(); base * base];
        let qd = LaurentScalar::qdiff();
        for d1 in 0..base {
            for d2 in 0..base {
                let (a, b) = (digit_to_index(n, d1), digit_to_index(n, d2));
                let img = ps_action(n, a, b);
                let mut inv_img = img.clone();
                // Skein relation: t^-1 = t - (q - q^-1) id; checked against t in the tests.
                let e = inv_img.entry((a, b)).or_insert_with(LaurentScalar::zero);
                *e -= &qd;
                inv_img.retain(|_, c| !c.is_zero());
                let conv = |m: BTreeMap<(i64, i64), LaurentScalar>| {
                    m.into_iter()
                        .map(|((x, y), c)| ((index_to_digit(n, x), index_to_digit(n, y)), c))
                        .collect::<Vec<_>>()
                };
                t[d1 * base + d2] = conv(img);
                t_inv[d1 * base + d2] = conv(inv_img);
                if a == -b {
                    cap[d1 * base + d2] = LaurentScalar::from_int(if a < 0 { -1 } else { 1 });
                }
            }
        }
        let cup = (0..base)
            .map(|d| {
                let a = digit_to_index(n, d);
                ((d, index_to_digit(n, -a)), LaurentScalar::one())
            })
            .collect();
        Ok(GenMatrices {
            n,
            t,
            t_inv,
            cup,
            cap,
        })
    }

    fn odd_prefix(&self, key: u64, len: usize) -> bool {
        let mut p = false;
        for k in 0..len {
            if digit(key, k) < self.n {
                p = !p;
            }
        }
        p
    }

    /// Applies one slice at 1-based position `i` to a vector of the given width.
    pub fn apply_slice(
        &self,
        v: &SparseVec,
        width: usize,
        kind: SliceKind,
        i: usize,
    ) -> Result<(SparseVec, usize)> {
        let base = 2 * self.n;
        let p = i - 1;
        let mut out: SparseVec = HashMap::with_capacity(v.len());
        match kind {
            SliceKind::PosCross | SliceKind::NegCross => {
                if i == 0 || i + 1 > width {
                    return Err(Error::InvalidInput("crossing out of range".into()));
                }
                let table = if kind == SliceKind::PosCross {
                    &self.t
                } else {
                    &self.t_inv
                };
                let mask = !(0xFFu64 << (4 * p));
                for (&key, c) in v {
                    let (d1, d2) = (digit(key, p), digit(key, p + 1));
                    for ((e1, e2), x) in &table[d1 * base + d2] {
                        let nk = (key & mask) | ((*e1 as u64) << (4 * p)) | ((*e2 as u64) << (4 * p + 4));
                        add_to(&mut out, nk, &(c * x));
                    }
                }
                Ok((out, width))
            }
            SliceKind::Cup => {
                if i == 0 || i > width + 1 || width + 2 > MAX_WIDTH {
                    return Err(Error::InvalidInput("cup out of range".into()));
                }
                let low_mask = (1u64 << (4 * p)) - 1;
                for (&key, c) in v {
                    let sign = self.odd_prefix(key, p);
                    let c = if sign { -c } else { c.clone() };
                    let high = (key & !low_mask) << 8;
                    for ((e1, e2), x) in &self.cup {
                        let nk = (key & low_mask)
                            | ((*e1 as u64) << (4 * p))
                            | ((*e2 as u64) << (4 * p + 4))
                            | high;
                        add_to(&mut out, nk, &(&c * x));
                    }
                }
                Ok((out, width + 2))
            }
            SliceKind::Cap => {
                if i == 0 || i + 1 > width {
                    return Err(Error::InvalidInput("cap out of range".into()));
                }
                let low_mask = (1u64 << (4 * p)) - 1;
                for (&key, c) in v {
                    let x = &self.cap[digit(key, p) * base + digit(key, p + 1)];
                    if x.is_zero() {
                        continue;
                    }
                    let sign = self.odd_prefix(key, p);
                    let nk = (key & low_mask) | ((key >> (4 * p + 8)) << (4 * p));
                    let val = c * x;
                    add_to(&mut out, nk, &if sign { -val } else { val });
                }
                Ok((out, width - 2))
            }
        }
    }

    /// Pushes a vector through all slices of a word (bottom slice first).
    pub fn apply_word(&self, v: &SparseVec, w: &TangleWord) -> Result<SparseVec> {
        let mut cur = v.clone();
        let mut width = w.m;
        for sl in &w.slices {
            let (nv, nw) = self.apply_slice(&cur, width, sl.kind, sl.pos)?;
            cur = nv;
            width = nw;
        }
        Ok(cur)
    }

    /// Matrix of a linear combination of words, all from `m` to `s`.
    pub fn eval_combination(
        &self,
        terms: &[(LaurentScalar, TangleWord)],
        m: usize,
        s: usize,
    ) -> Result<ExactMatrix> {
        for (_, w) in terms {
            if w.m != m || w.target()? != s {
                return Err(Error::InvalidInput("word does not match (m, s)".into()));
            }
        }
        let mut columns = BTreeMap::new();
        for key in all_keys(self.n, m) {
            let mut acc: SparseVec = HashMap::new();
            let start: SparseVec = HashMap::from([(key, LaurentScalar::one())]);
            for (c, w) in terms {
                for (k, x) in self.apply_word(&start, w)? {
                    add_to(&mut acc, k, &(c * &x));
                }
            }
            let col = to_sorted(acc);
            if !col.is_empty() {
                columns.insert(key, col);
            }
        }
        Ok(ExactMatrix {
            n: self.n,
            source: m,
            target: s,
            columns,
        })
    }

    pub fn eval_word(&self, w: &TangleWord) -> Result<ExactMatrix> {
        let s = w.target()?;
        self.eval_combination(&[(LaurentScalar::one(), w.clone())], w.m, s)
    }
}

/// Verdict of an oracle comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub equal: bool,
    /// True when `n` is large enough for the representation to be faithful on Hom(m, s).
    pub conclusive: bool,
}

/// Compares two combinations of words under the representation of rank `n`.
pub fn oracle_equal(
    f: &[(LaurentScalar, TangleWord)],
    g: &[(LaurentScalar, TangleWord)],
    m: usize,
    s: usize,
    n: usize,
) -> Result<OracleVerdict> {
    let gm = GenMatrices::new(n)?;
    let a = gm.eval_combination(f, m, s)?;
    let b = gm.eval_combination(g, m, s)?;
    Ok(OracleVerdict {
        equal: a == b,
        conclusive: 2 * n >= m + s,
    })
}

/// Rank over Q(q) of a family of matrices viewed as vectors.
pub fn rank_of_matrices(ms: &[ExactMatrix]) -> usize {
    let rows: Vec<BTreeMap<(u64, u64), RationalScalar>> = ms
        .iter()
        .map(|m| {
            let mut r = BTreeMap::new();
            for (&col, v) in &m.columns {
                for (&row, x) in v {
                    r.insert((col, row), RationalScalar::from_laurent(x.clone()));
                }
            }
            r
        })
        .collect();
    sparse_rank(rows)
}

/// Gaussian elimination over Q(q) on sparse rows.
pub fn sparse_rank<K: Ord + Clone>(mut rows: Vec<BTreeMap<K, RationalScalar>>) -> usize {
    let mut rank = 0;
    let mut pivots: Vec<(K, BTreeMap<K, RationalScalar>)> = Vec::new();
    for row in rows.iter_mut() {
        let mut r = std::mem::take(row);
        for (pk, prow) in &pivots {
            if let Some(c) = r.get(pk).cloned() {
                // prow is normalised to 1 at its pivot.
                for (k, x) in prow {
                    let e = r.entry(k.clone()).or_insert_with(RationalScalar::zero);
                    *e = &*e - &(&c * x);
                }
                r.retain(|_, x| !x.is_zero());
            }
        }
        if let Some((k, x)) = r.iter().next().map(|(k, x)| (k.clone(), x.clone())) {
            let inv = x.inv().expect("nonzero pivot");
            let normed: BTreeMap<K, RationalScalar> =
                r.into_iter().map(|(k2, y)| (k2, &y * &inv)).collect();
            pivots.push((k, normed));
            rank += 1;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tanglecat::TangleWord;

    fn w(m: usize, s: &str) -> TangleWord {
        TangleWord::parse_with_source(s, Some(m)).unwrap()
    }

    #[test]
    fn loop_is_zero() {
        let g = GenMatrices::new(2).unwrap();
        assert!(g.eval_word(&w(0, "U 1 ; A 1")).unwrap().is_zero());
    }

    #[test]
    fn t_inverse_is_inverse() {
        for n in [1, 2, 3] {
            let g = GenMatrices::new(n).unwrap();
            let a = g.eval_word(&w(2, "X+ 1 ; X- 1")).unwrap();
            assert_eq!(a, ExactMatrix::identity(n, 2));
            let b = g.eval_word(&w(2, "X- 1 ; X+ 1")).unwrap();
            assert_eq!(b, ExactMatrix::identity(n, 2));
        }
    }

    #[test]
    fn ps_off_diagonal_example() {
        // |a| < |b|, a != -b: (-1)^{[a][b]} v_b (x) v_a + (q - q^-1) v_a (x) v_b.
        let n = 2;
        let img = ps_action(n, -1, -2);
        assert_eq!(img.len(), 2);
        assert_eq!(img[&(-2, -1)], LaurentScalar::from_int(-1));
        assert_eq!(img[&(-1, -2)], LaurentScalar::qdiff());
    }

    #[test]
    fn snake_signs() {
        let g = GenMatrices::new(2).unwrap();
        let id = ExactMatrix::identity(2, 1);
        assert_eq!(g.eval_word(&w(1, "U 2 ; A 1")).unwrap(), id);
        assert_eq!(g.eval_word(&w(1, "U 1 ; A 2")).unwrap(), id.scale(&(-1).into()));
    }

    #[test]
    fn slice_sign_on_cap() {
        // (1 (x) cap)(v_i (x) v_a (x) v_{-a}) = (-1)^{[i]} (-1)^{[a]} v_i
        let g = GenMatrices::new(2).unwrap();
        let start: SparseVec = HashMap::from([(pack(2, &[-1, 2, -2]), LaurentScalar::one())]);
        let (out, width) = g.apply_slice(&start, 3, SliceKind::Cap, 2).unwrap();
        assert_eq!(width, 1);
        assert_eq!(out[&pack(2, &[-1])], LaurentScalar::from_int(-1));
    }
}
