//! Action of the generating slices on the canonical basis of Hom(0, N).
//!
//! A basis element is indexed by a perfect matching of N points. Its diagram is built
//! arc by arc, in decreasing order of left endpoints: each new arc starts as a cup on
//! the far left, above everything drawn so far, and its right arm then travels to its
//! endpoint behind all other strands. So the arc through point 0 is the backmost one.
//!
//! Slices act by recursion on that backmost arc. Strands slide freely behind cups and
//! caps, so a slice away from the back arc passes down to the smaller diagram; the few
//! local cases at the back arc's endpoints are closed formulas.
//!
//! Matchings are packed into a `u128`, five bits per point holding the 0-based partner.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::coeff::LaurentScalar;

use super::word::{Slice, SliceKind, TangleWord};

pub type Key = u128;

/// Largest number of points a packed matching can hold.
pub const MAX_POINTS: usize = 25;

const CACHE_LIMIT: usize = 1 << 18;

pub fn encode(p: &[usize]) -> Key {
    p.iter()
        .enumerate()
        .map(|(i, &x)| (x as Key) << (5 * i))
        .fold(0, |a, b| a | b)
}

pub fn decode(key: Key, n: usize) -> Vec<usize> {
    (0..n).map(|i| ((key >> (5 * i)) & 0x1F) as usize).collect()
}

/// Vector in Hom(0, width) over the matching basis.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Vector {
    pub width: usize,
    pub terms: HashMap<Key, LaurentScalar>,
}

impl Vector {
    pub fn zero(width: usize) -> Vector {
        Vector {
            width,
            terms: HashMap::new(),
        }
    }

    pub fn basis(width: usize, key: Key) -> Vector {
        Vector {
            width,
            terms: HashMap::from([(key, LaurentScalar::one())]),
        }
    }

    pub fn add_term(&mut self, key: Key, c: &LaurentScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(LaurentScalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &LaurentScalar) {
        debug_assert_eq!(self.width, other.width);
        for (&k, x) in &other.terms {
            self.add_term(k, &(x * c));
        }
    }

    pub fn scaled(&self, c: &LaurentScalar) -> Vector {
        let mut out = Vector::zero(self.width);
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn apply_slice(&self, s: Slice) -> Vector {
        let width = (self.width as isize + s.kind.width_change()) as usize;
        assert!(width <= MAX_POINTS, "{width} points exceed the engine limit {MAX_POINTS}");
        let mut out = Vector::zero(width);
        for (&k, c) in &self.terms {
            out.add_scaled(&basis_action(k, self.width, s), c);
        }
        out
    }

    pub fn apply_slices(&self, slices: &[Slice]) -> Vector {
        let mut cur = self.clone();
        for &s in slices {
            cur = cur.apply_slice(s);
        }
        cur
    }

    /// Inserts the arc `(0, b)` as the backmost arc of every term.
    fn lift(&self, b: usize) -> Vector {
        let mut out = Vector::zero(self.width + 2);
        for (&k, c) in &self.terms {
            out.add_term(encode(&join(b, &decode(k, self.width))), c);
        }
        out
    }
}

thread_local! {
    static CACHE: RefCell<HashMap<(Key, usize, Slice), Vector>> = RefCell::new(HashMap::new());
}

/// Image of one basis element under one slice (0-based positions inside).
pub fn basis_action(key: Key, width: usize, s: Slice) -> Vector {
    if let Some(v) = CACHE.with(|c| c.borrow().get(&(key, width, s)).cloned()) {
        return v;
    }
    let p = decode(key, width);
    let i = s.pos - 1;
    let v = match s.kind {
        SliceKind::PosCross => cross(&p, i, true),
        SliceKind::NegCross => cross(&p, i, false),
        SliceKind::Cup => cup(&p, i),
        SliceKind::Cap => cap(&p, i),
    };
    CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= CACHE_LIMIT {
            c.clear();
        }
        c.insert((key, width, s), v.clone());
    });
    v
}

fn act(p: &[usize], s: Slice) -> Vector {
    basis_action(encode(p), p.len(), s)
}

/// Splits off the backmost arc `(0, b)`, relabelling the rest onto N - 2 points.
fn split(p: &[usize]) -> (usize, Vec<usize>) {
    let b = p[0];
    let idx = |x: usize| if x < b { x - 1 } else { x - 2 };
    let rest = (1..p.len())
        .filter(|&x| x != b)
        .map(|x| idx(p[x]))
        .collect();
    (b, rest)
}

fn join(b: usize, rest: &[usize]) -> Vec<usize> {
    let pos = |k: usize| if k + 1 < b { k + 1 } else { k + 2 };
    let mut p = vec![0; rest.len() + 2];
    p[0] = b;
    p[b] = 0;
    for (k, &x) in rest.iter().enumerate() {
        p[pos(k)] = pos(x);
    }
    p
}

/// The matching with points `i` and `i + 1` exchanged.
fn swapped(p: &[usize], i: usize) -> Vec<usize> {
    let (a, b) = (p[i], p[i + 1]);
    let mut np = p.to_vec();
    np[i] = b;
    np[i + 1] = a;
    np[a] = i + 1;
    np[b] = i;
    np
}

fn single(p: &[usize], c: LaurentScalar) -> Vector {
    let mut v = Vector::zero(p.len());
    v.add_term(encode(p), &c);
    v
}

/// Crossing at 0-based positions (i, i+1).
fn cross(p: &[usize], i: usize, positive: bool) -> Vector {
    let b = p[0];
    let delta = LaurentScalar::qdiff();
    if i == 0 && b == 1 {
        return single(p, LaurentScalar::q_pow(if positive { 1 } else { -1 }));
    }
    if i == 0 {
        // The back arc's left leg against the strand beside it.
        let (_, rest) = split(p);
        let arm: Vec<Slice> = (2..b).map(|j| Slice::neg(j + 1)).collect();
        let mut v = act(&rest, Slice::cup(2)).apply_slices(&arm);
        let thin = single(&join(1, &rest), LaurentScalar::one()).apply_slices(&arm);
        v.add_scaled(&thin, &-(&delta * &LaurentScalar::q()));
        if !positive {
            v.add_term(encode(p), &-delta);
        }
        return v;
    }
    if i == b || i + 1 == b {
        // The arm gains (i == b) or loses one crossing behind its neighbour.
        let mut v = single(&swapped(p, i), LaurentScalar::one());
        if positive && i == b {
            v.add_term(encode(p), &delta);
        } else if !positive && i + 1 == b {
            v.add_term(encode(p), &-delta);
        }
        return v;
    }
    let (_, rest) = split(p);
    let j = if i < b { i - 1 } else { i - 2 };
    let s = if positive { Slice::pos(j + 1) } else { Slice::neg(j + 1) };
    act(&rest, s).lift(b)
}

/// Cup inserted at 0-based positions (i, i+1).
fn cup(p: &[usize], i: usize) -> Vector {
    if p.is_empty() || i == 0 {
        return single(&join(1, p), LaurentScalar::one());
    }
    let (b, rest) = split(p);
    let (j, nb) = if i <= b { (i - 1, b + 2) } else { (i - 2, b) };
    act(&rest, Slice::cup(j + 1)).lift(nb).scaled(&-LaurentScalar::one())
}

/// Cap on 0-based positions (i, i+1).
fn cap(p: &[usize], i: usize) -> Vector {
    let n = p.len();
    let b = p[0];
    let minus_q = -LaurentScalar::q();
    if i == 0 {
        if b == 1 {
            return Vector::zero(n - 2);
        }
        let (_, rest) = split(p);
        let arm: Vec<Slice> = (0..b - 2).map(|j| Slice::neg(j + 1)).collect();
        return single(&rest, minus_q).apply_slices(&arm);
    }
    if i + 1 == b {
        return cap(&swapped(p, i), i).scaled(&minus_q);
    }
    if i == b {
        if b == 1 {
            let (_, rest) = split(p);
            return single(&rest, -LaurentScalar::one());
        }
        let p1 = swapped(p, b - 1);
        let mut v = act(&p1, Slice::neg(b + 1)).apply_slice(Slice::cap(b));
        v.add_scaled(&act(&p1, Slice::cap(b + 1)), &-LaurentScalar::qdiff());
        return v;
    }
    let (_, rest) = split(p);
    let (j, nb) = if i < b { (i - 1, b - 2) } else { (i - 2, b) };
    act(&rest, Slice::cap(j + 1)).lift(nb).scaled(&-LaurentScalar::one())
}

/// Word from 0 realizing the canonical diagram of the matching `p`.
pub fn realize(p: &[usize]) -> TangleWord {
    let n = p.len();
    let mut lefts: Vec<usize> = (0..n).filter(|&x| x < p[x]).collect();
    lefts.sort_unstable_by(|u, v| v.cmp(u));
    let mut cur: Vec<usize> = Vec::new();
    let mut slices = Vec::new();
    for a in lefts {
        let b = p[a];
        cur.insert(0, b);
        cur.insert(0, a);
        slices.push(Slice::cup(1));
        let target = cur.iter().filter(|&&z| z < b).count();
        for j in 1..target {
            slices.push(Slice::neg(j + 1));
            cur.swap(j, j + 1);
        }
    }
    TangleWord { m: 0, slices }
}

/// A reduced word for the same basis element up to a unit: arcs are added in increasing
/// order of left endpoints, each as a cup at its final left position whose arm then
/// passes in front of the right legs it has to cross. Every pair of strands crosses at
/// most once.
pub fn reduced_word(p: &[usize]) -> TangleWord {
    let n = p.len();
    let mut placed: Vec<usize> = Vec::new();
    let mut slices = Vec::new();
    for a in (0..n).filter(|&x| x < p[x]) {
        let b = p[a];
        let at = placed.iter().filter(|&&z| z < a).count();
        placed.insert(at, b);
        placed.insert(at, a);
        slices.push(Slice::cup(at + 1));
        let target = placed.iter().filter(|&&z| z < b).count();
        for j in at + 1..target {
            slices.push(Slice::pos(j + 1));
            placed.swap(j, j + 1);
        }
    }
    TangleWord { m: 0, slices }
}

/// All perfect matchings of `n` points, as partner arrays, in lexicographic order of
/// their sorted pair lists.
pub fn matchings(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n % 2 == 1 {
        return out;
    }
    let mut p = vec![usize::MAX; n];
    fn rec(p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let first = match p.iter().position(|&x| x == usize::MAX) {
            None => {
                out.push(p.clone());
                return;
            }
            Some(f) => f,
        };
        for j in first + 1..p.len() {
            if p[j] == usize::MAX {
                p[first] = j;
                p[j] = first;
                rec(p, out);
                p[first] = usize::MAX;
                p[j] = usize::MAX;
            }
        }
    }
    rec(&mut p, &mut out);
    out
}

fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

/// Number of crossing pairs of arcs.
pub fn crossing_number(p: &[usize]) -> usize {
    let arcs: Vec<(usize, usize)> = (0..p.len())
        .filter(|&x| x < p[x])
        .map(|x| (x, p[x]))
        .collect();
    let mut c = 0;
    for (k, &a) in arcs.iter().enumerate() {
        for &b in &arcs[k + 1..] {
            if interleaved(a, b) {
                c += 1;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_round_trip() {
        let p = vec![3, 2, 1, 0];
        assert_eq!(decode(encode(&p), 4), p);
    }

    #[test]
    fn matchings_count() {
        assert_eq!(matchings(0).len(), 1);
        assert_eq!(matchings(4).len(), 3);
        assert_eq!(matchings(6).len(), 15);
        assert_eq!(matchings(5).len(), 0);
    }

    #[test]
    fn reduced_words_are_unit_multiples() {
        for n in [2, 4, 6, 8] {
            for p in matchings(n) {
                let v = Vector::basis(0, 0).apply_slices(&reduced_word(&p).slices);
                assert_eq!(v.terms.len(), 1, "matching {p:?}");
                assert!(v.terms[&encode(&p)].is_unit(), "matching {p:?}");
            }
        }
    }

    #[test]
    fn realize_reproduces_basis() {
        for n in [2, 4, 6, 8] {
            for p in matchings(n) {
                let w = realize(&p);
                let v = Vector::basis(0, 0).apply_slices(&w.slices);
                assert_eq!(v.terms.len(), 1, "matching {p:?}");
                assert_eq!(v.terms[&encode(&p)], LaurentScalar::one(), "matching {p:?}");
            }
        }
    }

    fn words_of(v: &Vector) -> Vec<(LaurentScalar, TangleWord)> {
        v.terms
            .iter()
            .map(|(&k, c)| (c.clone(), realize(&decode(k, v.width))))
            .collect()
    }

    #[test]
    fn slices_agree_with_oracle() {
        let g = crate::oracle::GenMatrices::new(3).unwrap();
        for n in [0, 2, 4, 6] {
            for p in matchings(n) {
                let base = realize(&p);
                let mut slices = vec![];
                for i in 1..n {
                    slices.extend([Slice::pos(i), Slice::neg(i), Slice::cap(i)]);
                }
                if n <= 4 {
                    slices.extend((1..=n + 1).map(Slice::cup));
                }
                for s in slices {
                    let v = Vector::basis(n, encode(&p)).apply_slice(s);
                    let mut w = base.clone();
                    w.slices.push(s);
                    let t = w.target().unwrap();
                    let lhs = g.eval_word(&w).unwrap();
                    let rhs = if v.is_zero() {
                        g.eval_combination(&[], 0, t).unwrap()
                    } else {
                        g.eval_combination(&words_of(&v), 0, t).unwrap()
                    };
                    assert!(lhs == rhs, "matching {p:?} slice {s:?}: {v:?}");
                }
            }
        }
    }
}
