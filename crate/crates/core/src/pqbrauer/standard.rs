//! Standard basis `C = sigma(T_w) E^f x_{s,t} T_v`, coordinates in it, reduction
//! modulo the ideal of higher cells, and Jucys-Murphy elements.
//!
//! In coordinates of the basis `sigma(T_d) E^f T_u T_v`, an element of the standard
//! basis lives in the single block (f, d = w, v) with Hecke part x_{s,t}. So the change
//! of basis is the Hecke Murphy transition, block by block.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::coeff::LaurentScalar;
use crate::combin::{
    coset_reps, in_sigma_plus, level, order_leq_unchecked, s_word, word_to_perm, CosetRep,
    Partition, StandardTableau,
};
use crate::error::{Error, Result};

use super::hecke::{HeckeElement, MurphyBasis};
use super::mbasis::MBasis;
use super::{AlgebraElement, Gen};

/// Index of a standard basis element: label lambda with `left = (w, s)` and
/// `right = (v, t)`, given as positions in `coset_reps(f, l)` and in
/// `std_tableaux(lambda, 2f)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardBasisIndex {
    pub f: usize,
    pub lambda: Partition,
    pub left: (usize, usize),
    pub right: (usize, usize),
}

impl fmt::Display for StandardBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:({},{}),({},{})",
            self.lambda, self.left.0, self.left.1, self.right.0, self.right.1
        )
    }
}

pub struct StandardBasis {
    pub l: usize,
    pub entries: Vec<(StandardBasisIndex, AlgebraElement)>,
    pub position: HashMap<StandardBasisIndex, usize>,
    reps: Vec<Vec<CosetRep>>,
    /// M-basis position of (f, d, u, v), u a permutation of the last l - 2f letters.
    m_position: HashMap<(usize, usize, Vec<usize>, usize), usize>,
    /// Inverse of `m_position`.
    m_block: Vec<(usize, usize, Vec<usize>, usize)>,
    /// Each entry as a combination of M-basis elements.
    m_terms: Vec<Vec<(usize, LaurentScalar)>>,
}

impl StandardBasis {
    fn build(l: usize) -> StandardBasis {
        let mb = MBasis::get(l);
        let reps: Vec<Vec<CosetRep>> = (0..=l / 2).map(|f| coset_reps(f, l).unwrap()).collect();
        let mut m_position = HashMap::new();
        let mut m_block = Vec::new();
        for (k, (ix, _)) in mb.entries.iter().enumerate() {
            let f = ix.f;
            let d = reps[f].iter().position(|r| *r == ix.d).unwrap();
            let v = reps[f].iter().position(|r| *r == ix.v).unwrap();
            let rel: Vec<usize> = ix.w.iter().map(|a| a - 2 * f).collect();
            let u = word_to_perm(&rel, l - 2 * f);
            m_position.insert((f, d, u.clone(), v), k);
            m_block.push((f, d, u, v));
        }
        let mut entries = Vec::new();
        for f in 0..=l / 2 {
            let hb = MurphyBasis::get(l - 2 * f);
            for (k, (lambda, s, t)) in hb.labels.iter().enumerate() {
                for w in 0..reps[f].len() {
                    for v in 0..reps[f].len() {
                        let mut a = AlgebraElement::zero(l);
                        let mut terms = Vec::new();
                        for (u, c) in &hb.elements[k].terms {
                            let pos = m_position[&(f, w, u.clone(), v)];
                            a.add_assign_scaled(&mb.entries[pos].1, c);
                            terms.push((pos, c.clone()));
                        }
                        let ix = StandardBasisIndex {
                            f,
                            lambda: lambda.clone(),
                            left: (w, *s),
                            right: (v, *t),
                        };
                        entries.push((ix, a, terms));
                    }
                }
            }
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let position = entries
            .iter()
            .enumerate()
            .map(|(k, (ix, _, _))| (ix.clone(), k))
            .collect();
        let (entries, m_terms): (Vec<_>, Vec<_>) =
            entries.into_iter().map(|(ix, a, t)| ((ix, a), t)).unzip();
        StandardBasis {
            l,
            entries,
            position,
            reps,
            m_position,
            m_block,
            m_terms,
        }
    }

    pub fn get(l: usize) -> Arc<StandardBasis> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<StandardBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(b) = cache.lock().unwrap().get(&l) {
            return b.clone();
        }
        let b = Arc::new(StandardBasis::build(l));
        cache.lock().unwrap().insert(l, b.clone());
        b
    }

    pub fn coset_reps(&self, f: usize) -> &[CosetRep] {
        &self.reps[f]
    }

    pub fn tableaux(&self, lambda: &Partition, l: usize) -> Vec<StandardTableau> {
        let f = level(lambda, l);
        MurphyBasis::get(lambda.size()).tableaux[lambda]
            .iter()
            .map(|t| shift_tableau(t, 2 * f))
            .collect()
    }

    /// Exact coordinates of `a`.
    pub fn coords(&self, a: &AlgebraElement) -> Result<BTreeMap<StandardBasisIndex, LaurentScalar>> {
        self.convert_m_coords(MBasis::get(self.l).coords(a)?)
    }

    /// Coordinates of the level-f part of `a`.
    pub fn level_coords(
        &self,
        a: &AlgebraElement,
        f: usize,
    ) -> Result<BTreeMap<StandardBasisIndex, LaurentScalar>> {
        self.convert_m_coords(MBasis::get(self.l).level_coords(a, f)?)
    }

    fn convert_m_coords(
        &self,
        m: BTreeMap<usize, LaurentScalar>,
    ) -> Result<BTreeMap<StandardBasisIndex, LaurentScalar>> {
        let mut blocks: BTreeMap<(usize, usize, usize), HeckeElement> = BTreeMap::new();
        for (k, c) in m {
            let (f, d, u, v) = &self.m_block[k];
            let n = self.l - 2 * f;
            blocks
                .entry((*f, *d, *v))
                .or_insert_with(|| HeckeElement::zero(n))
                .add_term(u.clone(), &c);
        }
        let mut out = BTreeMap::new();
        for ((f, d, v), h) in blocks {
            let hb = MurphyBasis::get(self.l - 2 * f);
            for (k, c) in hb.coords(&h)? {
                let (lambda, s, t) = &hb.labels[k];
                out.insert(
                    StandardBasisIndex {
                        f,
                        lambda: lambda.clone(),
                        left: (d, *s),
                        right: (v, *t),
                    },
                    c,
                );
            }
        }
        Ok(out)
    }

    /// Entry k as a sum of generator words.
    pub fn word_sum(&self, k: usize) -> Vec<(LaurentScalar, Vec<Gen>)> {
        let mb = MBasis::get(self.l);
        self.m_terms[k]
            .iter()
            .map(|(pos, c)| {
                let (sign, w) = mb.entries[*pos].0.word();
                (c * &LaurentScalar::from_int(sign), w)
            })
            .collect()
    }

    /// M-basis position of (f, d, u, v), mainly for tests.
    pub fn m_position(&self, f: usize, d: usize, u: &[usize], v: usize) -> Option<usize> {
        self.m_position.get(&(f, d, u.to_vec(), v)).copied()
    }
}

fn shift_tableau(t: &StandardTableau, offset: usize) -> StandardTableau {
    StandardTableau {
        shape: t.shape.clone(),
        offset,
        rows: t
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x + offset).collect())
            .collect(),
        d: t.d.iter().map(|a| a + offset).collect(),
    }
}

pub fn standard_basis(l: usize) -> Arc<StandardBasis> {
    StandardBasis::get(l)
}

pub fn to_standard_coords(
    a: &AlgebraElement,
) -> Result<BTreeMap<StandardBasisIndex, LaurentScalar>> {
    StandardBasis::get(a.l).coords(a)
}

/// Cell coordinates: pairs (left, right) of (coset, tableau) positions.
pub type CellCoords = BTreeMap<((usize, usize), (usize, usize)), LaurentScalar>;

/// The lambda-components of `a`, for `a` in the span of cells `mu` with `mu ⊵ lambda`.
/// Components on higher cells are dropped; a nonzero component on any other cell is
/// reported as a falsified invariant. Cells with more caps are higher, so only the
/// part of `a` at the level of lambda is solved for.
pub fn reduce_mod(a: &AlgebraElement, lambda: &Partition, l: usize) -> Result<CellCoords> {
    if !in_sigma_plus(lambda, l) {
        return Err(Error::InvalidInput(format!("{lambda} is not a label of degree {l}")));
    }
    if a.l != l {
        return Err(Error::InvalidInput("degree mismatch".into()));
    }
    let f = level(lambda, l);
    if let Some((_, _)) = a
        .key_terms()
        .find(|(&k, _)| super::mbasis::key_level(k, l) < f)
    {
        return Err(Error::Falsified(format!(
            "component with fewer than {f} caps, below {lambda}"
        )));
    }
    let mut out = BTreeMap::new();
    for (ix, c) in StandardBasis::get(l).level_coords(a, f)? {
        if ix.lambda == *lambda {
            out.insert((ix.left, ix.right), c);
        } else if !order_leq_unchecked(lambda, &ix.lambda) {
            return Err(Error::Falsified(format!(
                "component on {} which is not above {lambda}",
                ix.lambda
            )));
        }
    }
    Ok(out)
}

/// `T_{i,j}` as generators.
pub fn t_ij(i: usize, j: usize) -> Vec<Gen> {
    s_word(i, j).into_iter().map(Gen::t).collect()
}

/// x_i as a list of (coefficient, word) summands.
pub fn jm_words(i: usize) -> Vec<(LaurentScalar, Vec<Gen>)> {
    let mut out = Vec::new();
    for j in 1..i {
        let mut a = t_ij(j, i);
        a.extend(t_ij(i - 1, j));
        out.push((LaurentScalar::one(), a));
        out.push((LaurentScalar::q_pow(-1), bar_word(j, i)));
    }
    out
}

/// The word `T_{j,1} T_{i,2} E_1 T_{2,i} T_{1,j}`.
pub fn bar_word(j: usize, i: usize) -> Vec<Gen> {
    let mut b = t_ij(j, 1);
    b.extend(t_ij(i, 2));
    b.push(Gen::e(1));
    b.extend(t_ij(2, i));
    b.extend(t_ij(1, j));
    b
}

pub fn jm_element(i: usize, l: usize) -> Result<AlgebraElement> {
    if i == 0 || i > l {
        return Err(Error::InvalidInput(format!("JM index {i} out of range for l = {l}")));
    }
    let mut out = AlgebraElement::zero(l);
    for (c, w) in jm_words(i) {
        out.add_assign_scaled(&AlgebraElement::from_gens(&w, l)?, &c);
    }
    Ok(out)
}

/// `a * x_i`, using the summands of x_i.
pub fn right_mul_jm(a: &AlgebraElement, i: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero(a.l);
    for (c, w) in jm_words(i) {
        out.add_assign_scaled(&a.right_gens(&w), &c);
    }
    out
}

/// Checks `x_{i+1} = T_i x_i T_i + T_i + q^-1 bar(i, i+1)` for 1 <= i < l.
pub fn jm_recursion_holds(l: usize) -> Result<bool> {
    for i in 1..l {
        let xi = jm_element(i, l)?;
        let lhs = jm_element(i + 1, l)?;
        let mut rhs = xi.left_gens(&[Gen::t(i)]).right_gen(Gen::t(i));
        rhs = rhs.add(&AlgebraElement::generator(Gen::t(i), l)?);
        rhs.add_assign_scaled(
            &AlgebraElement::from_gens(&bar_word(i, i + 1), l)?,
            &LaurentScalar::q_pow(-1),
        );
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str, l: usize) -> AlgebraElement {
        AlgebraElement::parse(s, l).unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn l2_examples() {
        let b = standard_basis(2);
        assert_eq!(b.entries.len(), 3);
        let get = |lam: &str| {
            b.entries
                .iter()
                .find(|(ix, _)| ix.lambda == p(lam))
                .unwrap()
                .1
                .clone()
        };
        let x2 = AlgebraElement::one(2).add(&el("T1", 2).scale(&LaurentScalar::q()));
        assert_eq!(get("[2]"), x2);
        assert_eq!(get("[1,1]"), AlgebraElement::one(2));
        assert_eq!(get("[]"), el("E1", 2));

        let c = to_standard_coords(&AlgebraElement::one(2)).unwrap();
        assert_eq!(c.len(), 1);
        let (ix, x) = c.iter().next().unwrap();
        assert_eq!(ix.lambda, p("[1,1]"));
        assert!(x.is_one());
        let c = to_standard_coords(&el("E1", 2)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.keys().next().unwrap().lambda, p("[]"));
    }

    #[test]
    fn sizes_and_round_trip() {
        for l in 1..=4 {
            let b = standard_basis(l);
            let dfact: usize = (1..2 * l).step_by(2).product();
            assert_eq!(b.entries.len(), dfact);
            for (ix, a) in &b.entries {
                let c = to_standard_coords(a).unwrap();
                assert_eq!(c.len(), 1, "{ix}");
                assert!(c[ix].is_one());
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let l = 2;
        assert!(reduce_mod(&el("E1", l), &p("[2]"), l).unwrap().is_empty());
        let x2 = standard_basis(2).entries.iter().find(|(ix, _)| ix.lambda == p("[2]")).unwrap().1.clone();
        let r = reduce_mod(&x2, &p("[2]"), l).unwrap();
        assert_eq!(r.len(), 1);
        let prod = x2.mul(&jm_element(2, l).unwrap()).unwrap();
        let r = reduce_mod(&prod, &p("[2]"), l).unwrap();
        assert_eq!(r.values().cloned().collect::<Vec<_>>(), vec![LaurentScalar::q()]);
        assert!(reduce_mod(&AlgebraElement::one(2), &p("[2]"), 2).is_err());
        assert!(reduce_mod(&x2, &p("[1]"), 2).is_err());
    }

    #[test]
    fn jm_examples() {
        assert!(jm_element(1, 3).unwrap().is_zero());
        let x2 = el("T1", 3).add(&el("E1", 3).scale(&LaurentScalar::q_pow(-1)));
        assert_eq!(jm_element(2, 3).unwrap(), x2);
        let x3 = jm_element(3, 3).unwrap();
        assert_eq!(x2.mul(&x3).unwrap(), x3.mul(&x2).unwrap());
        assert_eq!(right_mul_jm(&x2, 3), x2.mul(&x3).unwrap());
        assert!(jm_recursion_holds(4).unwrap());
    }
}
