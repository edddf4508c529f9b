//! Partitions, tableaux, coset representatives and residues.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::coeff::{residue_add, residue_remove, LaurentScalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    pub parts: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Partition> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    fn trimmed(mut parts: Vec<usize>) -> Partition {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.part(0);
        Partition {
            parts: (0..n)
                .map(|c| self.parts.iter().filter(|&&p| p > c).count())
                .collect(),
        }
    }

    /// Nodes in row reading order, 1-based.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (r, &p) in self.parts.iter().enumerate() {
            for c in 0..p {
                out.push(Node { row: r + 1, col: c + 1 });
            }
        }
        out
    }

    /// Dominance: every partial sum of `self` is at most that of `other`.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let n = self.parts.len().max(other.parts.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }

    pub fn to_json(&self) -> Value {
        json!(self.parts)
    }

    pub fn from_json(v: &Value) -> Result<Partition> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("partition must be a list".into()))?;
        let parts = arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|u| u as usize)
                    .ok_or_else(|| Error::Parse("partition parts must be integers".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    /// Key of a linear extension of the order on labels: larger means higher.
    fn rank_key(&self) -> (std::cmp::Reverse<usize>, &[usize]) {
        (std::cmp::Reverse(self.size()), &self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", ps.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[2,1]`, `2,1`, `(2,1)`, `[]` or `0`.
    fn from_str(s: &str) -> Result<Partition> {
        let inner = s
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')'])
            .trim();
        if inner.is_empty() || inner == "0" {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of n, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of n.
pub fn partition_count(n: usize) -> usize {
    partitions(n).len()
}

/// Labels of degree l: partitions of l - 2f for 0 <= f <= l/2, largest size first.
pub fn sigma_plus(l: usize) -> Vec<Partition> {
    (0..=l / 2).flat_map(|f| partitions(l - 2 * f)).collect()
}

pub fn in_sigma_plus(lambda: &Partition, l: usize) -> bool {
    lambda.size() <= l && (l - lambda.size()).is_multiple_of(2)
}

fn check_label(lambda: &Partition, l: usize) -> Result<()> {
    if in_sigma_plus(lambda, l) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{lambda} is not a label of degree {l}")))
    }
}

/// Cap count of a label.
pub fn level(lambda: &Partition, l: usize) -> usize {
    (l - lambda.size()) / 2
}

/// `mu ⊴ lambda`: more boxes is lower; equal sizes compare by dominance.
pub fn order_leq(mu: &Partition, lambda: &Partition, l: usize) -> Result<bool> {
    check_label(mu, l)?;
    check_label(lambda, l)?;
    Ok(order_leq_unchecked(mu, lambda))
}

pub fn order_leq_unchecked(mu: &Partition, lambda: &Partition) -> bool {
    match mu.size().cmp(&lambda.size()) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => mu.dominated_by(lambda),
    }
}

/// Partitions one node larger and one node smaller, with the node involved.
pub fn addable_removable(lambda: &Partition) -> (Vec<(Partition, Node)>, Vec<(Partition, Node)>) {
    let mut add = Vec::new();
    let mut rem = Vec::new();
    let n = lambda.parts.len();
    for r in 0..=n {
        let above = if r == 0 { usize::MAX } else { lambda.part(r - 1) };
        if lambda.part(r) < above {
            let mut p = lambda.parts.clone();
            if r == n {
                p.push(1);
            } else {
                p[r] += 1;
            }
            add.push((Partition { parts: p }, Node { row: r + 1, col: lambda.part(r) + 1 }));
        }
        if r < n && lambda.part(r) > lambda.part(r + 1) {
            let mut p = lambda.parts.clone();
            p[r] -= 1;
            rem.push((Partition::trimmed(p), Node { row: r + 1, col: lambda.part(r) }));
        }
    }
    (add, rem)
}

/// The labels of degree l - 1 adjacent to lambda: removals, then additions (when
/// lambda has caps), each block in decreasing dominance.
pub fn ra_set(lambda: &Partition, l: usize) -> Result<Vec<Partition>> {
    check_label(lambda, l)?;
    if l == 0 {
        return Ok(Vec::new());
    }
    let (add, rem) = addable_removable(lambda);
    let desc = |mut v: Vec<Partition>| {
        v.sort_by(|a, b| b.parts.cmp(&a.parts));
        v
    };
    let mut out = desc(rem.into_iter().map(|x| x.0).collect());
    if lambda.size() < l {
        out.extend(desc(add.into_iter().map(|x| x.0).collect()));
    }
    Ok(out)
}

/// A path of labels from the empty partition, one node added or removed per step.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpDownTableau {
    pub path: Vec<Partition>,
}

impl UpDownTableau {
    pub fn new(path: Vec<Partition>) -> Result<UpDownTableau> {
        if path.first().is_none_or(|p| !p.is_empty()) {
            return Err(Error::InvalidInput("an up-down tableau starts at []".into()));
        }
        for k in 1..path.len() {
            let (add, rem) = addable_removable(&path[k - 1]);
            let ok = add.iter().chain(rem.iter()).any(|(p, _)| *p == path[k]);
            if !ok || path[k].size() > k {
                return Err(Error::InvalidInput(format!(
                    "step {k} from {} to {} is not allowed",
                    path[k - 1], path[k]
                )));
            }
        }
        Ok(UpDownTableau { path })
    }

    pub fn degree(&self) -> usize {
        self.path.len() - 1
    }

    pub fn shape(&self) -> &Partition {
        self.path.last().unwrap()
    }

    /// The path with its last step dropped.
    pub fn truncated(&self) -> UpDownTableau {
        UpDownTableau {
            path: self.path[..self.path.len() - 1].to_vec(),
        }
    }

    /// Node changed at step k (1-based) and whether it was added.
    pub fn step(&self, k: usize) -> (Node, bool) {
        let (a, b) = (&self.path[k - 1], &self.path[k]);
        let added = b.size() > a.size();
        let (big, small) = if added { (b, a) } else { (a, b) };
        let r = (0..big.parts.len())
            .find(|&r| big.part(r) != small.part(r))
            .expect("consecutive shapes differ");
        (Node { row: r + 1, col: big.part(r) }, added)
    }

    pub fn to_json(&self) -> Value {
        json!(self.path.iter().map(|p| p.to_json()).collect::<Vec<_>>())
    }
}

impl fmt::Display for UpDownTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.path.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", ps.join(","))
    }
}

/// Total order on tableaux of one type extending the tableau order: compares the
/// shapes from the end of the path.
pub fn tableau_cmp(t: &UpDownTableau, s: &UpDownTableau) -> Ordering {
    for k in (0..t.path.len()).rev() {
        let o = t.path[k].rank_key().cmp(&s.path[k].rank_key());
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// `t ◁ s`: at the last step where they differ, the shape of t lies strictly below.
pub fn tableau_order(t: &UpDownTableau, s: &UpDownTableau) -> Result<bool> {
    if t.degree() != s.degree() || t.shape() != s.shape() {
        return Err(Error::InvalidInput("tableaux of different degree or type".into()));
    }
    for k in (0..t.path.len()).rev() {
        if t.path[k] != s.path[k] {
            return Ok(order_leq_unchecked(&t.path[k], &s.path[k]));
        }
    }
    Ok(false)
}

/// All up-down tableaux of type lambda, higher tableaux first.
pub fn updown_tableaux(l: usize, lambda: &Partition) -> Result<Vec<UpDownTableau>> {
    check_label(lambda, l)?;
    fn go(k: usize, suffix: &mut Vec<Partition>, out: &mut Vec<UpDownTableau>) {
        let cur = suffix.last().unwrap().clone();
        if k == 0 {
            if cur.is_empty() {
                let mut path = suffix.clone();
                path.reverse();
                out.push(UpDownTableau { path });
            }
            return;
        }
        let (add, rem) = addable_removable(&cur);
        for (p, _) in add.into_iter().chain(rem) {
            if p.size() < k {
                suffix.push(p);
                go(k - 1, suffix, out);
                suffix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(l, &mut vec![lambda.clone()], &mut out);
    out.sort_by(|a, b| tableau_cmp(b, a));
    Ok(out)
}

/// Residue sequence c_t(1), ..., c_t(l).
pub fn residues(t: &UpDownTableau) -> Vec<LaurentScalar> {
    (1..=t.degree())
        .map(|k| {
            let (node, added) = t.step(k);
            if added {
                residue_add(node.content())
            } else {
                residue_remove(node.content())
            }
        })
        .collect()
}

/// Element of D_{f,l}: `s_{2f,i_f} s_{2f-1,j_f} ... s_{2,i_1} s_{1,j_1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetRep {
    pub f: usize,
    pub l: usize,
    /// (i_k, j_k) for k = 1..f.
    pub pairs: Vec<(usize, usize)>,
    /// Simple reflections of the product, left to right.
    pub word: Vec<usize>,
}

/// `s_{i,j}` as a word of simple reflections.
pub fn s_word(i: usize, j: usize) -> Vec<usize> {
    match i.cmp(&j) {
        Ordering::Less => (i..j).collect(),
        Ordering::Equal => Vec::new(),
        Ordering::Greater => (j..i).rev().collect(),
    }
}

impl CosetRep {
    fn from_pairs(f: usize, l: usize, pairs: Vec<(usize, usize)>) -> CosetRep {
        let mut word = Vec::new();
        for k in (1..=f).rev() {
            let (i, j) = pairs[k - 1];
            word.extend(s_word(2 * k, i));
            word.extend(s_word(2 * k - 1, j));
        }
        CosetRep { f, l, pairs, word }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({"pairs": self.pairs, "word": self.word})
    }
}

impl fmt::Display for CosetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let ws: Vec<String> = self.word.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", ws.join(""))
    }
}

/// D_{f,l} with `i_1 < ... < i_f` and `2k - 1 <= j_k < i_k <= l`.
pub fn coset_reps(f: usize, l: usize) -> Result<Vec<CosetRep>> {
    if 2 * f > l {
        return Err(Error::InvalidInput(format!("2f = {} exceeds l = {l}", 2 * f)));
    }
    fn go(k: usize, f: usize, l: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<CosetRep>) {
        if k > f {
            out.push(CosetRep::from_pairs(f, l, cur.clone()));
            return;
        }
        let lo = cur.last().map_or(0, |p| p.0);
        for i in (lo + 1).max(2 * k)..=l {
            for j in 2 * k - 1..i {
                cur.push((i, j));
                go(k + 1, f, l, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(1, f, l, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Permutation of {1..n} given by a word, as images under the right action
/// (`p[k-1] = k . w`).
pub fn word_to_perm(word: &[usize], n: usize) -> Vec<usize> {
    // k . (s_a w') = (k . s_a) . w', so fold from the right.
    let mut p: Vec<usize> = (1..=n).collect();
    for &a in word.iter().rev() {
        p.swap(a - 1, a);
    }
    p
}

/// A reduced word for a permutation in the convention of `word_to_perm`.
pub fn perm_to_word(p: &[usize]) -> Vec<usize> {
    let mut p = p.to_vec();
    let mut word = Vec::new();
    while let Some(a) = (0..p.len().saturating_sub(1)).find(|&a| p[a] > p[a + 1]) {
        word.push(a + 1);
        p.swap(a, a + 1);
    }
    word
}

pub fn perm_length(p: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                n += 1;
            }
        }
    }
    n
}

/// Standard tableau with entries `offset + 1 ..= offset + |shape|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    pub shape: Partition,
    pub offset: usize,
    pub rows: Vec<Vec<usize>>,
    /// Reduced word of d(t), with `t = t^shape d(t)`; letters are shifted by `offset`.
    pub d: Vec<usize>,
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rs.join("|"))
    }
}

pub fn std_tableaux(lambda: &Partition, offset: usize) -> Vec<StandardTableau> {
    let n = lambda.size();
    let mut out = Vec::new();
    fn go(
        k: usize,
        n: usize,
        lambda: &Partition,
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if k > n {
            out.push(rows.clone());
            return;
        }
        for r in 0..lambda.parts.len() {
            let len = rows[r].len();
            let fits = len < lambda.parts[r] && (r == 0 || rows[r - 1].len() > len);
            if fits {
                rows[r].push(k);
                go(k + 1, n, lambda, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut fillings = Vec::new();
    go(1, n, lambda, &mut vec![Vec::new(); lambda.parts.len()], &mut fillings);
    for rows in fillings {
        // d maps the entry of t^lambda at each node to the entry of t there.
        let mut d = vec![0; n];
        let mut k = 0;
        for r in &rows {
            for &x in r {
                d[k] = x;
                k += 1;
            }
        }
        let word = perm_to_word(&d).into_iter().map(|a| a + offset).collect();
        out.push(StandardTableau {
            shape: lambda.clone(),
            offset,
            rows: rows
                .iter()
                .map(|r| r.iter().map(|x| x + offset).collect())
                .collect(),
            d: word,
        });
    }
    out
}

/// Removes rim 2-hooks until none is left.
pub fn two_core(lambda: &Partition) -> Partition {
    let mut p = lambda.clone();
    while let Some(q) = domino_removals(&p).into_iter().next() {
        p = q;
    }
    p
}

/// Every partition obtained by removing one rim 2-hook.
pub fn domino_removals(lambda: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    let n = lambda.parts.len();
    for r in 0..n {
        if lambda.part(r) >= lambda.part(r + 1) + 2 {
            let mut p = lambda.parts.clone();
            p[r] -= 2;
            out.push(Partition::trimmed(p));
        }
        if r + 1 < n && lambda.part(r) == lambda.part(r + 1) && lambda.part(r + 1) > lambda.part(r + 2)
        {
            let mut p = lambda.parts.clone();
            p[r] -= 1;
            p[r + 1] -= 1;
            out.push(Partition::trimmed(p));
        }
    }
    out
}

/// Number of nodes of even content minus number of nodes of odd content.
pub fn sharp(lambda: &Partition) -> i64 {
    lambda
        .nodes()
        .iter()
        .map(|n| if n.content().rem_euclid(2) == 0 { 1 } else { -1 })
        .sum()
}

/// Number of standard tableaux, by the hook length formula.
pub fn hook_dim(lambda: &Partition) -> u128 {
    let conj = lambda.conjugate();
    let mut num: u128 = (1..=lambda.size() as u128).product();
    let mut den: u128 = 1;
    for node in lambda.nodes() {
        let arm = lambda.part(node.row - 1) - node.col;
        let leg = conj.part(node.col - 1) - node.row;
        den *= (arm + leg + 1) as u128;
    }
    num /= den;
    num
}

/// |D_{f,l}| = l! / (2^f f! (l - 2f)!).
pub fn coset_count(f: usize, l: usize) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    fact(l) / (2u128.pow(f as u32) * fact(f) * fact(l - 2 * f))
}

#[cfg(test)]
mod tests {
    use std::collections::{HashMap, HashSet};

    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn order_examples() {
        assert!(order_leq(&p("[1,1]"), &p("[2]"), 2).unwrap());
        assert!(order_leq(&p("[2]"), &p("[]"), 2).unwrap());
        assert!(!order_leq(&p("[]"), &p("[2]"), 2).unwrap());
        assert!(order_leq(&p("[2,1]"), &p("[2,1]"), 3).unwrap());
        assert!(order_leq(&p("[2]"), &p("[1]"), 3).is_err());
    }

    #[test]
    fn addable_removable_examples() {
        let (a, r) = addable_removable(&p("[]"));
        assert_eq!(a.len(), 1);
        assert!(r.is_empty());
        let (a, r) = addable_removable(&p("[2,1]"));
        let a: Vec<_> = a.into_iter().map(|x| x.0).collect();
        let r: Vec<_> = r.into_iter().map(|x| x.0).collect();
        assert_eq!(a, vec![p("[3,1]"), p("[2,2]"), p("[2,1,1]")]);
        assert_eq!(r, vec![p("[1,1]"), p("[2]")]);
    }

    #[test]
    fn ra_set_examples() {
        assert_eq!(ra_set(&p("[]"), 2).unwrap(), vec![p("[1]")]);
        assert_eq!(ra_set(&p("[1]"), 3).unwrap(), vec![p("[]"), p("[2]"), p("[1,1]")]);
        assert_eq!(ra_set(&p("[3]"), 3).unwrap(), vec![p("[2]")]);
    }

    #[test]
    fn updown_examples() {
        assert_eq!(updown_tableaux(2, &p("[]")).unwrap().len(), 1);
        assert_eq!(updown_tableaux(4, &p("[]")).unwrap().len(), 3);
        assert_eq!(updown_tableaux(3, &p("[1]")).unwrap().len(), 3);
        assert!(updown_tableaux(3, &p("[2]")).is_err());
    }

    #[test]
    fn residue_examples() {
        let t = UpDownTableau::new(vec![p("[]"), p("[1]"), p("[2]")]).unwrap();
        assert_eq!(residues(&t), vec![LaurentScalar::zero(), LaurentScalar::q()]);
        let qi = LaurentScalar::monomial(-1, -1);
        let t = UpDownTableau::new(vec![p("[]"), p("[1]"), p("[1,1]")]).unwrap();
        assert_eq!(residues(&t), vec![LaurentScalar::zero(), qi.clone()]);
        let t = UpDownTableau::new(vec![p("[]"), p("[1]"), p("[]")]).unwrap();
        assert_eq!(residues(&t), vec![LaurentScalar::zero(), qi]);
    }

    #[test]
    fn coset_examples() {
        assert_eq!(coset_reps(0, 5).unwrap().len(), 1);
        assert_eq!(coset_reps(1, 4).unwrap().len(), 6);
        assert_eq!(coset_reps(2, 4).unwrap().len(), 3);
        assert!(coset_reps(3, 4).is_err());
    }

    #[test]
    fn coset_words_are_reduced_and_distinct() {
        for l in 0..=7 {
            for f in 0..=l / 2 {
                let reps = coset_reps(f, l).unwrap();
                assert_eq!(reps.len() as u128, coset_count(f, l));
                let mut seen = HashSet::new();
                for d in &reps {
                    let perm = word_to_perm(&d.word, l);
                    assert_eq!(perm_length(&perm), d.word.len(), "{d}");
                    assert!(seen.insert(perm));
                }
            }
        }
    }

    #[test]
    fn dimension_identity() {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        for l in 0..=8 {
            let total: u128 = (0..=l / 2)
                .map(|f| coset_count(f, l).pow(2) * fact(l - 2 * f))
                .sum();
            let dfact: u128 = (1..2 * l as u128).step_by(2).product();
            assert_eq!(total, dfact, "l={l}");
        }
    }

    #[test]
    fn updown_counts() {
        for l in 0..=7 {
            for lambda in sigma_plus(l) {
                let f = level(&lambda, l);
                let n = updown_tableaux(l, &lambda).unwrap().len();
                let expect = coset_reps(f, l).unwrap().len() * std_tableaux(&lambda, 2 * f).len();
                assert_eq!(n, expect, "l={l} {lambda}");
                if l > 0 {
                    let branch: usize = ra_set(&lambda, l)
                        .unwrap()
                        .iter()
                        .map(|mu| updown_tableaux(l - 1, mu).unwrap().len())
                        .sum();
                    assert_eq!(n, branch);
                }
            }
        }
    }

    #[test]
    fn updown_order_is_a_linear_extension() {
        for l in 1..=5 {
            for lambda in sigma_plus(l) {
                let ts = updown_tableaux(l, &lambda).unwrap();
                for (a, t) in ts.iter().enumerate() {
                    for s in &ts[..a] {
                        assert!(!tableau_order(s, t).unwrap(), "{s} listed before {t}");
                    }
                    assert!(!tableau_order(t, t).unwrap());
                }
            }
        }
    }

    #[test]
    fn two_core_and_sharp_examples() {
        assert_eq!(two_core(&p("[]")), p("[]"));
        assert_eq!(two_core(&p("[3]")), p("[1]"));
        assert_eq!(two_core(&p("[2,1]")), p("[2,1]"));
        assert_eq!(sharp(&p("[2]")), 0);
        assert_eq!(sharp(&p("[2,1]")), -1);
        assert_eq!(sharp(&p("[1,1,1]")), 1);
    }

    fn all_cores(lambda: &Partition, memo: &mut HashMap<Partition, HashSet<Partition>>) -> HashSet<Partition> {
        if let Some(c) = memo.get(lambda) {
            return c.clone();
        }
        let rs = domino_removals(lambda);
        let out: HashSet<Partition> = if rs.is_empty() {
            HashSet::from([lambda.clone()])
        } else {
            rs.iter().flat_map(|r| all_cores(r, memo)).collect()
        };
        memo.insert(lambda.clone(), out.clone());
        out
    }

    #[test]
    fn two_core_is_order_independent_and_matches_sharp() {
        let mut memo = HashMap::new();
        let all: Vec<Partition> = (0..=8).flat_map(partitions).collect();
        for lambda in &all {
            let cores = all_cores(lambda, &mut memo);
            assert_eq!(cores.len(), 1, "{lambda}");
            let c = two_core(lambda);
            assert!(cores.contains(&c));
            assert_eq!(two_core(&c), c);
        }
        for a in &all {
            for b in &all {
                assert_eq!(sharp(a) == sharp(b), two_core(a) == two_core(b), "{a} {b}");
            }
        }
    }

    #[test]
    fn std_tableaux_examples() {
        let ts = std_tableaux(&p("[2]"), 0);
        assert_eq!(ts.len(), 1);
        assert!(ts[0].d.is_empty());
        assert_eq!(std_tableaux(&p("[2,1]"), 0).len(), 2);
        let ts = std_tableaux(&p("[1]"), 2);
        assert_eq!(ts[0].rows, vec![vec![3]]);
        for lambda in (0..=6).flat_map(partitions) {
            assert_eq!(std_tableaux(&lambda, 0).len() as u128, hook_dim(&lambda));
        }
    }

    #[test]
    fn tableau_words_are_distinguished() {
        // Every d(t) is a shortest element of its coset S_lambda d(t).
        for lambda in (1..=5).flat_map(partitions) {
            let n = lambda.size();
            let young = young_subgroup(&lambda);
            for t in std_tableaux(&lambda, 0) {
                let d = word_to_perm(&t.d, n);
                assert_eq!(perm_length(&d), t.d.len());
                for w in &young {
                    let mut wd = w.clone();
                    wd.extend(t.d.iter());
                    let wd = word_to_perm(&wd, n);
                    assert_eq!(perm_length(&wd), perm_length(&word_to_perm(w, n)) + t.d.len());
                }
            }
        }
    }

    fn young_subgroup(lambda: &Partition) -> Vec<Vec<usize>> {
        let n = lambda.size();
        let mut gens = Vec::new();
        let mut start = 1;
        for &r in &lambda.parts {
            gens.extend(start..start + r - 1);
            start += r;
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![Vec::<usize>::new()];
        while let Some(w) = stack.pop() {
            let perm = word_to_perm(&w, n);
            if !seen.insert(perm.clone()) {
                continue;
            }
            out.push(perm_to_word(&perm));
            for &g in &gens {
                let mut x = w.clone();
                x.push(g);
                stack.push(x);
            }
        }
        out
    }

    #[test]
    fn perm_words_round_trip() {
        let p = vec![3, 1, 4, 2];
        let w = perm_to_word(&p);
        assert_eq!(word_to_perm(&w, 4), p);
        assert_eq!(w.len(), perm_length(&p));
    }

    #[test]
    fn labels() {
        assert_eq!(sigma_plus(3), vec![p("[3]"), p("[2,1]"), p("[1,1,1]"), p("[1]")]);
        for l in 0..=8 {
            let n: usize = (0..=l / 2).map(|f| partition_count(l - 2 * f)).sum();
            assert_eq!(sigma_plus(l).len(), n);
        }
    }
}
