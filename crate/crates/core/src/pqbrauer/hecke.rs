//! The Hecke algebra H_n with basis T_w and its Murphy basis x_{s,t}.
//!
//! Permutations are image arrays under the right action (`p[k-1] = k.w`), the
//! convention of `combin::word_to_perm`. Quadratic relation `T^2 = (q - q^-1) T + 1`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::coeff::LaurentScalar;
use crate::combin::{partitions, perm_to_word, std_tableaux, Partition, StandardTableau};
use crate::error::{Error, Result};
use crate::linalg::BasisSolver;

pub type Perm = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    pub n: usize,
    pub terms: BTreeMap<Perm, LaurentScalar>,
}

fn identity_perm(n: usize) -> Perm {
    (1..=n).collect()
}

impl HeckeElement {
    pub fn zero(n: usize) -> HeckeElement {
        HeckeElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> HeckeElement {
        HeckeElement::basis(identity_perm(n))
    }

    pub fn basis(p: Perm) -> HeckeElement {
        HeckeElement {
            n: p.len(),
            terms: BTreeMap::from([(p, LaurentScalar::one())]),
        }
    }

    /// `T_{a_1} ... T_{a_k}`.
    pub fn from_word(word: &[usize], n: usize) -> HeckeElement {
        word.iter()
            .fold(HeckeElement::one(n), |h, &a| h.mul_s(a))
    }

    pub fn add_term(&mut self, p: Perm, c: &LaurentScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert_with(LaurentScalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add_scaled(&mut self, o: &HeckeElement, c: &LaurentScalar) {
        for (p, x) in &o.terms {
            self.add_term(p.clone(), &(x * c));
        }
    }

    /// `self * T_a`.
    pub fn mul_s(&self, a: usize) -> HeckeElement {
        let mut out = HeckeElement::zero(self.n);
        for (p, x) in &self.terms {
            let ia = p.iter().position(|&v| v == a).unwrap();
            let ib = p.iter().position(|&v| v == a + 1).unwrap();
            let mut ps = p.clone();
            ps.swap(ia, ib);
            out.add_term(ps, x);
            if ia > ib {
                // ws is shorter: T_w T_s = T_{ws} + (q - q^-1) T_w.
                out.add_term(p.clone(), &(x * &LaurentScalar::qdiff()));
            }
        }
        out
    }

    pub fn mul(&self, o: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero(self.n);
        for (p, x) in &o.terms {
            let h = perm_to_word(p).iter().fold(self.clone(), |h, &a| h.mul_s(a));
            out.add_scaled(&h, x);
        }
        out
    }
}

/// Simple reflections generating the Young subgroup of lambda.
pub fn young_generators(lambda: &Partition) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut start = 1;
    for &r in &lambda.parts {
        gens.extend(start..start + r - 1);
        start += r;
    }
    gens
}

/// `x_lambda = sum over the Young subgroup of q^{l(w)} T_w`.
pub fn x_lambda(lambda: &Partition) -> HeckeElement {
    let n = lambda.size();
    let mut out = HeckeElement::zero(n);
    let gens = young_generators(lambda);
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![identity_perm(n)];
    while let Some(p) = stack.pop() {
        if !seen.insert(p.clone()) {
            continue;
        }
        let len = perm_to_word(&p).len() as i64;
        out.add_term(p.clone(), &LaurentScalar::q_pow(len));
        for &g in &gens {
            let mut x = p.clone();
            x.swap(g - 1, g);
            stack.push(x);
        }
    }
    out
}

/// `x_{s,t} = T*_{d(s)} x_lambda T_{d(t)}` with `T*_{d} = T_{d^{-1}}`.
pub fn murphy(lambda: &Partition, s: &StandardTableau, t: &StandardTableau) -> HeckeElement {
    let n = lambda.size();
    let rev: Vec<usize> = s.d.iter().rev().copied().collect();
    HeckeElement::from_word(&rev, n)
        .mul(&x_lambda(lambda))
        .mul(&HeckeElement::from_word(&t.d, n))
}

/// The Murphy basis of H_n. Leading terms of different elements can coincide, so
/// coordinates come from an exact inverse of the transition matrix.
pub struct MurphyBasis {
    pub n: usize,
    /// (lambda, index of s, index of t) per basis element.
    pub labels: Vec<(Partition, usize, usize)>,
    pub tableaux: HashMap<Partition, Vec<StandardTableau>>,
    pub elements: Vec<HeckeElement>,
    solver: BasisSolver<Perm>,
}

impl MurphyBasis {
    fn build(n: usize) -> MurphyBasis {
        let mut labels = Vec::new();
        let mut elements = Vec::new();
        let mut tableaux = HashMap::new();
        for lambda in partitions(n) {
            let ts = std_tableaux(&lambda, 0);
            for (a, s) in ts.iter().enumerate() {
                for (b, t) in ts.iter().enumerate() {
                    labels.push((lambda.clone(), a, b));
                    elements.push(murphy(&lambda, s, t));
                }
            }
            tableaux.insert(lambda, ts);
        }
        let vectors: Vec<Vec<(Perm, LaurentScalar)>> = elements
            .iter()
            .map(|h| h.terms.iter().map(|(p, c)| (p.clone(), c.clone())).collect())
            .collect();
        let solver = BasisSolver::new(&vectors).expect("Murphy elements form a basis");
        MurphyBasis {
            n,
            labels,
            tableaux,
            elements,
            solver,
        }
    }

    /// Cached basis of H_n.
    pub fn get(n: usize) -> Arc<MurphyBasis> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MurphyBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(b) = cache.lock().unwrap().get(&n) {
            return b.clone();
        }
        let b = Arc::new(MurphyBasis::build(n));
        cache.lock().unwrap().insert(n, b.clone());
        b
    }

    /// Coordinates of h in the Murphy basis.
    pub fn coords(&self, h: &HeckeElement) -> Result<BTreeMap<usize, LaurentScalar>> {
        if h.n != self.n {
            return Err(Error::InvalidInput("Hecke degree mismatch".into()));
        }
        self.solver.coords(h.terms.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_and_braid() {
        let n = 3;
        let t1 = HeckeElement::from_word(&[1], n);
        let lhs = t1.mul(&t1);
        let mut rhs = t1.clone();
        rhs = HeckeElement {
            n,
            terms: rhs.terms.into_iter().map(|(p, x)| (p, &x * &LaurentScalar::qdiff())).collect(),
        };
        rhs.add_term(identity_perm(n), &LaurentScalar::one());
        assert_eq!(lhs, rhs);
        assert_eq!(
            HeckeElement::from_word(&[1, 2, 1], n),
            HeckeElement::from_word(&[2, 1, 2], n)
        );
    }

    #[test]
    fn x_two() {
        let p: Partition = "[2]".parse().unwrap();
        let x = x_lambda(&p);
        let mut expect = HeckeElement::one(2);
        expect.add_term(vec![2, 1], &LaurentScalar::q());
        assert_eq!(x, expect);
        // (1 + q T)^2 = (1 + q^2)(1 + q T)
        let sq = x.mul(&x);
        let c = LaurentScalar::from_terms(vec![(0, 1), (2, 1)]);
        let mut scaled = HeckeElement::zero(2);
        scaled.add_scaled(&x, &c);
        assert_eq!(sq, scaled);
    }

    #[test]
    fn murphy_coordinates() {
        for n in 0..=5 {
            let b = MurphyBasis::get(n);
            let fact: usize = (1..=n).product();
            assert_eq!(b.elements.len(), fact);
            for (k, h) in b.elements.iter().enumerate() {
                let c = b.coords(h).unwrap();
                assert_eq!(c.len(), 1);
                assert!(c[&k].is_one());
            }
            if n >= 3 {
                // The longest element leads both x of (3) and an x of (2,1) at n = 3.
                let w0 = vec![3, 2, 1];
                let hits = b
                    .elements
                    .iter()
                    .filter(|h| n == 3 && h.terms.contains_key(&w0))
                    .count();
                assert!(n > 3 || hits >= 2);
            }
            if n >= 4 {
                let t = HeckeElement::from_word(&[1, 2, 1, 3], n);
                let c = b.coords(&t).unwrap();
                let mut back = HeckeElement::zero(n);
                for (k, x) in &c {
                    back.add_scaled(&b.elements[*k], x);
                }
                assert_eq!(back, t);
            }
        }
    }
}
