//! The periplectic q-Brauer category: tangle words, the normal-form basis of each
//! morphism space, composition, tensor product and bending.
//!
//! A morphism f in Hom(m, s) is handled through its bent image
//! `Psi(f) = (f (x) 1_m) o gamma_m` in Hom(0, s + m), where the engine acts on a basis
//! of matchings. Point p of the bent picture is the endpoint of rank `s + m + 1 - p` in
//! the order `1 < ... < m < s' < ... < 1'` (bottom points unprimed, top points primed).
//!
//! The basis diagram D_c is the unique morphism with `Psi(D_c) = eps_m * B_c`, where
//! `gamma_m = eps_m * B_nest`; in particular the identity is a basis diagram. Each D_c
//! is a unit multiple of the reduced, totally descending word from `reduced_word`.

pub mod engine;
pub mod word;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde_json::{json, Value};

use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};

use engine::{decode, encode, matchings, reduced_word, Key, Vector};
pub use word::{Slice, SliceKind, TangleWord};

/// A perfect matching of the endpoints of an (m, s) diagram, in rank labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Connector {
    pub m: usize,
    pub s: usize,
    /// Pairs (i, j) with i < j, sorted by i.
    pub pairs: Vec<(usize, usize)>,
}

impl Connector {
    pub fn new(m: usize, s: usize, mut pairs: Vec<(usize, usize)>) -> Result<Connector> {
        let n = m + s;
        let mut seen = vec![false; n + 1];
        for pr in pairs.iter_mut() {
            if pr.0 > pr.1 {
                *pr = (pr.1, pr.0);
            }
            for x in [pr.0, pr.1] {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::InvalidInput(format!("bad connector point {x}")));
                }
                seen[x] = true;
            }
        }
        if seen.iter().skip(1).any(|b| !b) {
            return Err(Error::InvalidInput("connector is not perfect".into()));
        }
        pairs.sort_unstable();
        Ok(Connector { m, s, pairs })
    }

    fn from_bent(m: usize, s: usize, p: &[usize]) -> Connector {
        let n = m + s;
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .filter(|&x| x > p[x])
            .map(|x| (n - x, n - p[x]))
            .collect();
        pairs.sort_unstable();
        Connector { m, s, pairs }
    }

    fn to_bent(&self) -> Vec<usize> {
        let n = self.m + self.s;
        let mut p = vec![0; n];
        for &(i, j) in &self.pairs {
            p[n - i] = n - j;
            p[n - j] = n - i;
        }
        p
    }

    pub fn key(&self) -> Key {
        encode(&self.to_bent())
    }

    /// Number of pairs of strands that must cross.
    pub fn crossing_number(&self) -> usize {
        engine::crossing_number(&self.to_bent())
    }

    /// Label of a rank: bottom points as `i`, top points as `j'`.
    pub fn point_label(&self, r: usize) -> String {
        if r <= self.m {
            r.to_string()
        } else {
            format!("{}'", self.m + self.s + 1 - r)
        }
    }

    pub fn to_json(&self) -> Value {
        json!(self.pairs.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>())
    }

    pub fn from_json(m: usize, s: usize, v: &Value) -> Result<Connector> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("connector must be a list of pairs".into()))?;
        let mut pairs = Vec::new();
        for pr in arr {
            let xs = pr.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                Error::Parse("connector pair must have two entries".into())
            })?;
            let get = |x: &Value| {
                x.as_u64()
                    .map(|u| u as usize)
                    .ok_or_else(|| Error::Parse("connector point must be a positive integer".into()))
            };
            pairs.push((get(&xs[0])?, get(&xs[1])?));
        }
        Connector::new(m, s, pairs)
    }
}

impl fmt::Display for Connector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(i, j) in &self.pairs {
            write!(f, "({},{})", self.point_label(i), self.point_label(j))?;
        }
        if self.pairs.is_empty() {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A basis diagram together with a word whose value, times `scale`, equals it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalDiagram {
    pub connector: Connector,
    pub scale: LaurentScalar,
    pub word: TangleWord,
}

/// Finite linear combination of basis diagrams of Hom(m, s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub m: usize,
    pub s: usize,
    pub terms: BTreeMap<Connector, LaurentScalar>,
}

fn sign_scalar(neg: bool) -> LaurentScalar {
    LaurentScalar::from_int(if neg { -1 } else { 1 })
}

/// Nested cups with the outer cup lowest.
pub fn gamma_word(m: usize) -> TangleWord {
    TangleWord {
        m: 0,
        slices: (1..=m).map(Slice::cup).collect(),
    }
}

/// Nested caps with the innermost cap lowest.
pub fn eta_word(m: usize) -> TangleWord {
    TangleWord {
        m: 2 * m,
        slices: (1..=m).rev().map(Slice::cap).collect(),
    }
}

fn gamma_vector(m: usize) -> Vector {
    Vector::basis(0, 0).apply_slices(&gamma_word(m).slices)
}

/// The sign with `gamma_m = eps_m * B_nest`.
pub fn eps(m: usize) -> LaurentScalar {
    let v = gamma_vector(m);
    debug_assert_eq!(v.terms.len(), 1);
    v.terms.values().next().cloned().expect("gamma is a basis vector up to sign")
}

/// `(1_s (x) eta_m) o (x (x) 1_m)` for a word `x` from 0 to s + m.
fn unbend_word(x: &TangleWord, m: usize) -> TangleWord {
    let n = x.target().expect("valid word");
    let s = n - m;
    let mut slices = x.slices.clone();
    slices.extend((s + 1..=s + m).rev().map(Slice::cap));
    TangleWord { m, slices }
}

/// Scalar with `D_c = scale * unbend_word(reduced_word(c), m)`. It does not depend on c:
/// the odd cups of `reduced_word(c)` pass the m nested cups and the caps.
fn basis_scale(m: usize, s: usize) -> LaurentScalar {
    let k = (m + s) / 2;
    sign_scalar((k * (k.saturating_sub(1)) / 2 + m * k) % 2 == 1)
}

/// The same scalar read off from evaluating the unbent word; needs 3m + s points.
#[cfg(test)]
fn evaluated_scale(m: usize, p: &[usize]) -> LaurentScalar {
    let w = unbend_word(&reduced_word(p), m);
    let v = gamma_vector(m).apply_slices(&w.slices);
    let lambda = v.terms.get(&encode(p)).cloned().unwrap_or_default();
    assert!(
        v.terms.len() == 1 && lambda.is_unit(),
        "a reduced basis word must give a unit multiple of its basis vector"
    );
    &eps(m) * &lambda.unit_inverse().unwrap()
}

/// All basis diagrams of Hom(m, s), in connector order.
pub fn hom_basis(m: usize, s: usize) -> Vec<NormalDiagram> {
    if (m + s) % 2 == 1 {
        return Vec::new();
    }
    let mut out: Vec<NormalDiagram> = matchings(m + s)
        .into_iter()
        .map(|p| NormalDiagram {
            connector: Connector::from_bent(m, s, &p),
            scale: basis_scale(m, s),
            word: unbend_word(&reduced_word(&p), m),
        })
        .collect();
    out.sort_by(|a, b| a.connector.cmp(&b.connector));
    out
}

/// (m + s - 1)!! for m + s even, else 0.
pub fn hom_dim(m: usize, s: usize) -> u128 {
    let n = m + s;
    if n % 2 == 1 {
        return 0;
    }
    (1..n as u128).step_by(2).product()
}

/// Word for the basis diagram with the given connector, with its scalar.
pub fn basis_word(c: &Connector) -> (LaurentScalar, TangleWord) {
    basis_word_key(c.m, c.s, c.key())
}

type WordCache = Mutex<HashMap<(usize, usize, Key), (LaurentScalar, TangleWord)>>;

/// `basis_word` for a packed bent matching.
pub fn basis_word_key(m: usize, s: usize, key: Key) -> (LaurentScalar, TangleWord) {
    static CACHE: OnceLock<WordCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(x) = cache.lock().unwrap().get(&(m, s, key)) {
        return x.clone();
    }
    let p = decode(key, m + s);
    let x = (basis_scale(m, s), unbend_word(&reduced_word(&p), m));
    cache.lock().unwrap().insert((m, s, key), x.clone());
    x
}

/// Connector of a packed bent matching.
pub fn key_connector(m: usize, s: usize, key: Key) -> Connector {
    Connector::from_bent(m, s, &decode(key, m + s))
}

/// Parity shared by all diagrams in Hom(m, s): (s - m)/2 mod 2.
pub fn hom_parity(m: usize, s: usize) -> usize {
    ((s as isize - m as isize) / 2).rem_euclid(2) as usize
}

impl Morphism {
    pub fn zero(m: usize, s: usize) -> Morphism {
        Morphism {
            m,
            s,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(m: usize) -> Morphism {
        normal_form(&TangleWord::identity(m)).expect("identity word is valid")
    }

    pub fn basis_element(c: &Connector) -> Morphism {
        Morphism {
            m: c.m,
            s: c.s,
            terms: BTreeMap::from([(c.clone(), LaurentScalar::one())]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parity(&self) -> usize {
        hom_parity(self.m, self.s)
    }

    pub fn coeff(&self, c: &Connector) -> LaurentScalar {
        self.terms.get(c).cloned().unwrap_or_default()
    }

    fn check_same(&self, other: &Morphism) -> Result<()> {
        if self.m != other.m || self.s != other.s {
            return Err(Error::InvalidInput(format!(
                "object mismatch: Hom({},{}) vs Hom({},{})",
                self.m, self.s, other.m, other.s
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (c, x) in &other.terms {
            out.add_term(c, x);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.add(&other.scale(&LaurentScalar::from_int(-1)))
    }

    pub fn add_term(&mut self, c: &Connector, x: &LaurentScalar) {
        if x.is_zero() {
            return;
        }
        let e = self.terms.entry(c.clone()).or_insert_with(LaurentScalar::zero);
        *e += x;
        if e.is_zero() {
            self.terms.remove(c);
        }
    }

    pub fn scale(&self, c: &LaurentScalar) -> Morphism {
        let mut out = Morphism::zero(self.m, self.s);
        if c.is_zero() {
            return out;
        }
        for (k, x) in &self.terms {
            out.terms.insert(k.clone(), x * c);
        }
        out
    }

    /// Bent image `(f (x) 1_m) o gamma_m` in Hom(0, s + m).
    pub fn bent(&self) -> Vector {
        let e = eps(self.m);
        let mut v = Vector::zero(self.m + self.s);
        for (c, x) in &self.terms {
            v.add_term(c.key(), &(x * &e));
        }
        v
    }

    /// Inverse of `bent`.
    pub fn from_bent_vector(v: &Vector, m: usize, s: usize) -> Morphism {
        let e = eps(m);
        let mut out = Morphism::zero(m, s);
        for (&k, x) in &v.terms {
            let c = Connector::from_bent(m, s, &decode(k, m + s));
            out.terms.insert(c, x * &e);
        }
        out
    }

    /// Explicit words (with scalars) whose sum is this morphism.
    pub fn to_words(&self) -> Vec<(LaurentScalar, TangleWord)> {
        self.terms
            .iter()
            .map(|(c, x)| {
                let (k, w) = basis_word(c);
                (x * &k, w)
            })
            .collect()
    }

    /// Applies the slices of a word on top of this morphism.
    pub fn then_word(&self, w: &TangleWord) -> Result<Morphism> {
        if w.m != self.s {
            return Err(Error::InvalidInput("object mismatch in composition".into()));
        }
        let t = w.target()?;
        let v = self.bent().apply_slices(&w.slices);
        Ok(Morphism::from_bent_vector(&v, self.m, t))
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .terms
            .iter()
            .map(|(c, x)| json!({"connector": c.to_json(), "coeff": x.to_json()}))
            .collect::<Vec<_>>())
    }

    pub fn from_json(m: usize, s: usize, v: &Value) -> Result<Morphism> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("morphism JSON must be a list".into()))?;
        let mut out = Morphism::zero(m, s);
        for t in arr {
            let c = Connector::from_json(m, s, &t["connector"])?;
            let x = LaurentScalar::from_json(&t["coeff"])?;
            out.add_term(&c, &x);
        }
        Ok(out)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, x)| format!("({x})*D{c}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Expansion of a word in the basis of Hom(m, s).
pub fn normal_form(w: &TangleWord) -> Result<Morphism> {
    let s = w.target()?;
    if w.max_width() + w.m > engine::MAX_POINTS {
        return Err(Error::Unsupported("word too wide for the engine".into()));
    }
    let v = gamma_vector(w.m).apply_slices(&w.slices);
    Ok(Morphism::from_bent_vector(&v, w.m, s))
}

/// `g o f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if g.m != f.s {
        return Err(Error::InvalidInput(format!(
            "cannot compose Hom({},{}) after Hom({},{})",
            g.m, g.s, f.m, f.s
        )));
    }
    let base = f.bent();
    let mut acc = Vector::zero(g.s + f.m);
    for (c, x) in &g.terms {
        let (k, w) = basis_word(c);
        let img = base.apply_slices(&w.slices);
        acc.add_scaled(&img, &(x * &k));
    }
    Ok(Morphism::from_bent_vector(&acc, f.m, g.s))
}

/// `f (x) g`, with f on the left.
pub fn tensor(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    let mut out = Morphism::zero(f.m + g.m, f.s + g.s);
    for (c, x) in &f.terms {
        let (kc, wc) = basis_word(c);
        for (d, y) in &g.terms {
            let (kd, wd) = basis_word(d);
            let nf = normal_form(&wc.tensor(&wd))?;
            out = out.add(&nf.scale(&(&(x * y) * &(&kc * &kd))))?;
        }
    }
    Ok(out)
}

/// Image of a morphism under `f -> eta_s o (1_s (x) f)`, in Hom(s + m, 0).
pub fn bend(f: &Morphism) -> Result<Morphism> {
    if (f.m + f.s) % 2 == 1 {
        return Err(Error::InvalidInput("bending needs m + s even".into()));
    }
    let s = f.s;
    let mut out = Morphism::zero(s + f.m, 0);
    for (x, w) in f.to_words() {
        let mut slices = w.shifted(s).slices;
        slices.extend(eta_word(s).slices);
        let nf = normal_form(&TangleWord {
            m: s + f.m,
            slices,
        })?;
        out = out.add(&nf.scale(&x))?;
    }
    Ok(out)
}

/// Inverse direction of `bend` up to `(-1)^{s(s+1)/2}`: sends e in Hom(s + m, 0) to
/// `(-1)^{s [f]} (1_s (x) e) o (gamma_s (x) 1_m)`, where `[f]` is the parity of Hom(m, s).
pub fn unbend(e: &Morphism, s: usize) -> Result<Morphism> {
    if e.s != 0 || e.m < s {
        return Err(Error::InvalidInput("unbend expects a morphism in Hom(s + m, 0)".into()));
    }
    let m = e.m - s;
    let sign = sign_scalar((s * hom_parity(m, s)) % 2 == 1);
    let mut out = Morphism::zero(m, s);
    for (x, w) in e.to_words() {
        let mut slices = gamma_word(s).slices;
        slices.extend(w.shifted(s).slices);
        let nf = normal_form(&TangleWord { m, slices })?;
        out = out.add(&nf.scale(&(&x * &sign)))?;
    }
    Ok(out)
}

pub fn morphism_equal(f: &Morphism, g: &Morphism) -> Result<bool> {
    f.check_same(g)?;
    Ok(f == g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(m: usize, s: &str) -> Morphism {
        normal_form(&TangleWord::parse_with_source(s, Some(m)).unwrap()).unwrap()
    }

    #[test]
    fn dims() {
        assert_eq!(hom_basis(2, 0).len(), 1);
        assert_eq!(hom_basis(2, 1).len(), 0);
        assert_eq!(hom_basis(3, 1).len(), 3);
        assert_eq!(hom_dim(6, 6), 10395);
    }

    #[test]
    fn closed_form_scale_matches_evaluation() {
        for n in (0..=8).step_by(2) {
            for m in 0..=n {
                for p in matchings(n) {
                    assert_eq!(basis_scale(m, n - m), evaluated_scale(m, &p), "m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn identity_is_a_basis_diagram() {
        for m in 0..5 {
            let id = Morphism::identity(m);
            assert_eq!(id.terms.len(), 1, "m={m}");
            assert!(id.terms.values().all(|x| x.is_one()));
        }
    }

    #[test]
    fn loop_vanishes() {
        assert!(nf(0, "U 1 ; A 1").is_zero());
    }

    #[test]
    fn snakes() {
        let id = Morphism::identity(1);
        assert_eq!(nf(1, "U 2 ; A 1"), id);
        assert_eq!(nf(1, "U 1 ; A 2"), id.scale(&(-1).into()));
    }

    #[test]
    fn skein() {
        let d = nf(2, "X+ 1").sub(&nf(2, "X- 1")).unwrap();
        assert_eq!(d, Morphism::identity(2).scale(&LaurentScalar::qdiff()));
    }

    #[test]
    fn basis_words_evaluate_to_basis() {
        for (m, s) in [(0, 2), (2, 0), (1, 1), (2, 2), (3, 1), (1, 3), (0, 4), (4, 0), (3, 3)] {
            for d in hom_basis(m, s) {
                let got = normal_form(&d.word).unwrap().scale(&d.scale);
                assert_eq!(got, Morphism::basis_element(&d.connector), "({m},{s}) {}", d.connector);
            }
        }
    }

    #[test]
    fn bend_unbend_sign() {
        for (m, s) in [(1, 1), (2, 2), (0, 2), (2, 0), (3, 1), (1, 3)] {
            let sign = if (s * (s + 1) / 2) % 2 == 1 { -1 } else { 1 };
            for d in hom_basis(m, s) {
                let f = Morphism::basis_element(&d.connector);
                let back = unbend(&bend(&f).unwrap(), s).unwrap();
                assert_eq!(back, f.scale(&sign.into()), "({m},{s})");
            }
        }
    }
}
