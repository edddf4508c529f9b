//! The basis `sigma(T_d) E^f T_w T_v` and coordinates in it.
//!
//! The transition to diagrams is not unitriangular, so coordinates come from an exact
//! inverse of the transition matrix. Every term of a level-f element has at least f top
//! pairs, which makes the matrix block triangular by level. Level-f terms of elements
//! of the form `E^f h` only meet the block with `d = 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::coeff::LaurentScalar;
use crate::combin::{coset_reps, perm_to_word, CosetRep};
use crate::error::{Error, Result};
use crate::linalg::BasisSolver;
use crate::tanglecat::engine::{decode, Key};

use super::{AlgebraElement, Gen};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MBasisIndex {
    pub f: usize,
    pub d: CosetRep,
    /// Permutation of {2f+1, ..., l} as a reduced word in the letters 2f+1, ..., l-1.
    pub w: Vec<usize>,
    pub v: CosetRep,
}

impl fmt::Display for MBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.w.is_empty() {
            "1".to_string()
        } else {
            self.w.iter().map(|a| format!("s{a}")).collect::<String>()
        };
        write!(f, "f={} d={} w={} v={}", self.f, self.d, w, self.v)
    }
}

/// `(-1)^k T_{a_k}^-1 ... T_{a_1}^-1` for the word `a_1 ... a_k`.
pub fn sigma_t_word(word: &[usize]) -> (i64, Vec<Gen>) {
    let sign = if word.len().is_multiple_of(2) { 1 } else { -1 };
    (sign, word.iter().rev().map(|&a| Gen::t_inv(a)).collect())
}

pub fn e_f(f: usize) -> Vec<Gen> {
    (1..=f).map(|k| Gen::e(2 * k - 1)).collect()
}

impl MBasisIndex {
    /// Sign and generator word of the basis element.
    pub fn word(&self) -> (i64, Vec<Gen>) {
        let (sign, mut gens) = sigma_t_word(&self.d.word);
        gens.extend(e_f(self.f));
        gens.extend(self.w.iter().map(|&a| Gen::t(a)));
        gens.extend(self.v.word.iter().map(|&a| Gen::t(a)));
        (sign, gens)
    }

    /// Sign and generator word of its image under sigma.
    pub fn sigma_word(&self) -> (i64, Vec<Gen>) {
        let (sv, mut gens) = sigma_t_word(&self.v.word);
        let (sw, gw) = sigma_t_word(&self.w);
        gens.extend(gw);
        gens.extend(e_f(self.f));
        gens.extend(self.d.word.iter().map(|&a| Gen::t(a)));
        let se = if self.f.is_multiple_of(2) { 1 } else { -1 };
        (sv * sw * se, gens)
    }
}

/// All permutations of `n` letters as reduced words shifted by `offset`.
pub fn permutation_words(n: usize, offset: usize) -> Vec<Vec<usize>> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut x = p.clone();
                x.insert(pos, n);
                out.push(x);
            }
        }
        out
    }
    let mut ws: Vec<Vec<usize>> = perms(n)
        .iter()
        .map(|p| perm_to_word(p).into_iter().map(|a| a + offset).collect())
        .collect();
    ws.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    ws
}

/// Number of top pairs of a bent key.
pub fn key_level(k: Key, l: usize) -> usize {
    decode(k, 2 * l)
        .iter()
        .take(l)
        .enumerate()
        .filter(|&(i, &j)| i < j && j < l)
        .count()
}

fn has_top_of_e_f(k: Key, l: usize, f: usize) -> bool {
    let p = decode(k, 2 * l);
    (0..f).all(|i| p[2 * i] == 2 * i + 1)
}

pub struct MBasis {
    pub l: usize,
    pub entries: Vec<(MBasisIndex, AlgebraElement)>,
    /// Solvers per (level, only d = 1), with the basis positions they index.
    solvers: Mutex<HashMap<(usize, bool), Arc<(BasisSolver<Key>, Vec<usize>)>>>,
    sigmas: OnceLock<Vec<AlgebraElement>>,
}

fn signed(sign: i64, a: AlgebraElement) -> AlgebraElement {
    if sign < 0 {
        a.scale(&LaurentScalar::from_int(-1))
    } else {
        a
    }
}

/// Basis labels, level by level.
pub fn m_indices(l: usize) -> Vec<MBasisIndex> {
    let mut indices = Vec::new();
    for f in 0..=l / 2 {
        let reps = coset_reps(f, l).expect("2f <= l");
        let ws = permutation_words(l - 2 * f, 2 * f);
        for d in &reps {
            for w in &ws {
                for v in &reps {
                    indices.push(MBasisIndex {
                        f,
                        d: d.clone(),
                        w: w.clone(),
                        v: v.clone(),
                    });
                }
            }
        }
    }
    indices
}

/// Checks that at q = 1 every basis element is a signed single diagram and that these
/// diagrams are distinct. Specialisation is a ring map, so the elements are then
/// linearly independent over Q(q). Returns the number of elements.
pub fn independent_at_one(l: usize) -> Result<usize> {
    let indices = m_indices(l);
    let diagrams: Vec<Result<Key>> = indices
        .par_iter()
        .map(|ix| {
            let (_, gens) = ix.word();
            let a = AlgebraElement::from_gens_at_one(&gens, l)?;
            let live: Vec<(Key, &LaurentScalar)> = a.key_terms().map(|(&k, c)| (k, c)).collect();
            match live.as_slice() {
                [(k, c)] if c.is_unit() => Ok(*k),
                _ => Err(Error::Falsified(format!("{ix} is not a signed diagram at q = 1"))),
            }
        })
        .collect();
    let mut seen: HashMap<Key, usize> = HashMap::new();
    for (i, d) in diagrams.into_iter().enumerate() {
        if let Some(j) = seen.insert(d?, i) {
            return Err(Error::Falsified(format!(
                "{} and {} agree at q = 1",
                indices[j], indices[i]
            )));
        }
    }
    Ok(indices.len())
}

impl MBasis {
    fn build(l: usize) -> MBasis {
        let entries: Vec<(MBasisIndex, AlgebraElement)> = m_indices(l)
            .into_par_iter()
            .map(|ix| {
                let (sign, gens) = ix.word();
                let a = AlgebraElement::from_gens(&gens, l).expect("generators in range");
                (ix, signed(sign, a))
            })
            .collect();
        MBasis {
            l,
            entries,
            solvers: Mutex::new(HashMap::new()),
            sigmas: OnceLock::new(),
        }
    }

    pub fn get(l: usize) -> Arc<MBasis> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(b) = cache.lock().unwrap().get(&l) {
            return b.clone();
        }
        let b = Arc::new(MBasis::build(l));
        cache.lock().unwrap().insert(l, b.clone());
        b
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn solver(&self, f: usize, left_identity: bool) -> Result<Arc<(BasisSolver<Key>, Vec<usize>)>> {
        if let Some(s) = self.solvers.lock().unwrap().get(&(f, left_identity)) {
            return Ok(s.clone());
        }
        let positions: Vec<usize> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, (ix, _))| ix.f == f && (!left_identity || ix.d.is_identity()))
            .map(|(k, _)| k)
            .collect();
        let vectors: Vec<Vec<(Key, LaurentScalar)>> = positions
            .iter()
            .map(|&k| {
                self.entries[k]
                    .1
                    .key_terms()
                    .filter(|(&key, _)| key_level(key, self.l) == f)
                    .map(|(&key, c)| (key, c.clone()))
                    .collect()
            })
            .collect();
        let s = Arc::new((BasisSolver::new(&vectors)?, positions));
        self.solvers
            .lock()
            .unwrap()
            .insert((f, left_identity), s.clone());
        Ok(s)
    }

    /// Level-f coordinates of `a`, modulo elements of higher level. Exact when `a` has
    /// no terms of lower level.
    pub fn level_coords(&self, a: &AlgebraElement, f: usize) -> Result<BTreeMap<usize, LaurentScalar>> {
        if a.l != self.l {
            return Err(Error::InvalidInput("degree mismatch".into()));
        }
        let terms: Vec<(Key, &LaurentScalar)> = a
            .key_terms()
            .filter(|(&k, _)| key_level(k, self.l) == f)
            .map(|(&k, c)| (k, c))
            .collect();
        if terms.is_empty() {
            return Ok(BTreeMap::new());
        }
        let left_identity = terms.iter().all(|(k, _)| has_top_of_e_f(*k, self.l, f));
        let s = self.solver(f, left_identity)?;
        let (solver, positions) = &*s;
        let c = solver.coords(terms.iter().map(|(k, c)| (k, *c)))?;
        Ok(c.into_iter().map(|(i, x)| (positions[i], x)).collect())
    }

    /// Coordinates in this basis.
    pub fn coords(&self, a: &AlgebraElement) -> Result<BTreeMap<usize, LaurentScalar>> {
        let mut rest = a.clone();
        let mut out = BTreeMap::new();
        for f in 0..=self.l / 2 {
            let c = self.level_coords(&rest, f)?;
            for (k, x) in &c {
                rest.add_assign_scaled(&self.entries[*k].1, &-x.clone());
            }
            out.extend(c);
        }
        if !rest.is_zero() {
            return Err(Error::Falsified("element outside the span of the basis".into()));
        }
        Ok(out)
    }

    /// `sigma` of each basis element.
    pub fn sigma_images(&self) -> &[AlgebraElement] {
        self.sigmas.get_or_init(|| {
            self.entries
                .par_iter()
                .map(|(ix, _)| {
                    let (sign, gens) = ix.sigma_word();
                    signed(sign, AlgebraElement::from_gens(&gens, self.l).unwrap())
                })
                .collect()
        })
    }
}

/// The basis elements with their indices.
pub fn m_basis(l: usize) -> Arc<MBasis> {
    MBasis::get(l)
}

pub fn to_m_coords(a: &AlgebraElement) -> Result<BTreeMap<usize, LaurentScalar>> {
    MBasis::get(a.l).coords(a)
}

/// `a` as a sum of generator words, read off its M-basis coordinates.
pub fn word_sum(a: &AlgebraElement) -> Result<Vec<(LaurentScalar, Vec<Gen>)>> {
    let b = MBasis::get(a.l);
    Ok(b
        .coords(a)?
        .into_iter()
        .map(|(k, c)| {
            let (sign, w) = b.entries[k].0.word();
            (&c * &LaurentScalar::from_int(sign), w)
        })
        .collect())
}

/// The anti-involution with `sigma(T_i) = -T_i^-1` and `sigma(E_i) = -E_i`.
pub fn sigma(a: &AlgebraElement) -> Result<AlgebraElement> {
    let b = MBasis::get(a.l);
    let coords = b.coords(a)?;
    let images = b.sigma_images();
    let mut out = AlgebraElement::zero(a.l);
    for (k, c) in coords {
        out.add_assign_scaled(&images[k], &c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str, l: usize) -> AlgebraElement {
        AlgebraElement::parse(s, l).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(m_basis(1).len(), 1);
        assert_eq!(m_basis(2).len(), 3);
        assert_eq!(m_basis(3).len(), 15);
        assert_eq!(m_basis(4).len(), 105);
    }

    #[test]
    fn coordinates_round_trip() {
        for l in 1..=4 {
            let b = m_basis(l);
            for (k, (_, a)) in b.entries.iter().enumerate() {
                let c = b.coords(a).unwrap();
                assert_eq!(c.len(), 1);
                assert!(c[&k].is_one());
            }
            assert_eq!(independent_at_one(l).unwrap(), b.len());
        }
    }

    #[test]
    fn leading_coefficients_need_not_be_units() {
        // E1 T2 T1 has a non-unit coefficient on its most crossed diagram.
        let a = el("E1 T2 T1", 3);
        assert_eq!(a.len(), 3);
        assert!(a.key_terms().any(|(_, c)| *c == "-q^2 + 1 - q^-2".parse().unwrap()));
        let c = to_m_coords(&a).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn sigma_examples() {
        let l = 3;
        assert_eq!(sigma(&el("T1", l)).unwrap(), el("T1i", l).scale(&(-1).into()));
        assert_eq!(sigma(&AlgebraElement::one(l)).unwrap(), AlgebraElement::one(l));
        let x = el("E1 T2", l);
        let sx = sigma(&x).unwrap();
        assert_eq!(sx, el("T2i E1", l));
        assert_eq!(sigma(&sx).unwrap(), x);
        let y = el("E1 T2 T1", l);
        assert_eq!(sigma(&y).unwrap(), el("T1i T2i E1", l).scale(&(-1).into()));
    }
}
