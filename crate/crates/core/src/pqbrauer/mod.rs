//! The algebras B_{q,l} = End(l): elements, generators, products and the two bases.
//!
//! Elements are stored through their bent image in Hom(0, 2l), the same coordinates the
//! diagram engine works in. Left multiplication by a generator applies its slices to
//! the left half; right multiplication slides the generator round the bend onto the
//! right half, where T_i becomes `-X-` plus a multiple of the rotated E_i.

pub mod hecke;
pub mod mbasis;
pub mod standard;

use std::fmt;

use serde_json::Value;

use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};
use crate::tanglecat::engine::{Key, Vector};
use crate::tanglecat::{basis_word_key, eps, key_connector, Connector, Morphism, Slice, TangleWord};

pub use mbasis::{m_basis, sigma, to_m_coords, MBasisIndex};
pub use standard::{
    jm_element, jm_recursion_holds, reduce_mod, standard_basis, to_standard_coords, StandardBasisIndex,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    T,
    TInv,
    E,
}

/// A generator T_i, T_i^-1 or E_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub kind: GenKind,
    pub i: usize,
}

impl Gen {
    pub fn t(i: usize) -> Gen {
        Gen { kind: GenKind::T, i }
    }
    pub fn t_inv(i: usize) -> Gen {
        Gen { kind: GenKind::TInv, i }
    }
    pub fn e(i: usize) -> Gen {
        Gen { kind: GenKind::E, i }
    }

    /// Slices of the generator, bottom first.
    pub fn slices(&self) -> Vec<Slice> {
        match self.kind {
            GenKind::T => vec![Slice::pos(self.i)],
            GenKind::TInv => vec![Slice::neg(self.i)],
            GenKind::E => vec![Slice::cap(self.i), Slice::cup(self.i)],
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::T => write!(f, "T{}", self.i),
            GenKind::TInv => write!(f, "T{}i", self.i),
            GenKind::E => write!(f, "E{}", self.i),
        }
    }
}

/// Parses `T1 T2i E3`; the empty string is the identity word. Tokens may also be
/// glued together (`T1E2`).
pub fn parse_gens(text: &str) -> Result<Vec<Gen>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() || c == '*' || c == '.' {
            k += 1;
            continue;
        }
        if c != 'T' && c != 'E' {
            return Err(Error::Parse(format!("unexpected {c:?} in algebra word {text:?}")));
        }
        k += 1;
        let start = k;
        while k < chars.len() && chars[k].is_ascii_digit() {
            k += 1;
        }
        let i: usize = chars[start..k]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| Error::Parse(format!("missing index after {c} in {text:?}")))?;
        let inv = k < chars.len() && chars[k] == 'i';
        if inv {
            k += 1;
        }
        out.push(match (c, inv) {
            ('T', false) => Gen::t(i),
            ('T', true) => Gen::t_inv(i),
            ('E', false) => Gen::e(i),
            _ => return Err(Error::Parse(format!("E{i} has no inverse"))),
        });
    }
    Ok(out)
}

pub fn check_gens(gens: &[Gen], l: usize) -> Result<()> {
    for g in gens {
        if g.i == 0 || g.i >= l {
            return Err(Error::InvalidInput(format!("generator {g} out of range for l = {l}")));
        }
    }
    Ok(())
}

/// Element of B_{q,l}.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub l: usize,
    bent: Vector,
}

impl AlgebraElement {
    pub fn zero(l: usize) -> AlgebraElement {
        AlgebraElement {
            l,
            bent: Vector::zero(2 * l),
        }
    }

    pub fn one(l: usize) -> AlgebraElement {
        AlgebraElement {
            l,
            bent: Morphism::identity(l).bent(),
        }
    }

    pub fn from_morphism(f: &Morphism) -> Result<AlgebraElement> {
        if f.m != f.s {
            return Err(Error::InvalidInput("not an endomorphism".into()));
        }
        Ok(AlgebraElement {
            l: f.m,
            bent: f.bent(),
        })
    }

    pub fn to_morphism(&self) -> Morphism {
        Morphism::from_bent_vector(&self.bent, self.l, self.l)
    }

    pub fn bent(&self) -> &Vector {
        &self.bent
    }

    pub fn from_bent(l: usize, bent: Vector) -> AlgebraElement {
        debug_assert_eq!(bent.width, 2 * l);
        AlgebraElement { l, bent }
    }

    pub fn generator(g: Gen, l: usize) -> Result<AlgebraElement> {
        AlgebraElement::from_gens(&[g], l)
    }

    /// The product of the generators, leftmost factor first.
    pub fn from_gens(gens: &[Gen], l: usize) -> Result<AlgebraElement> {
        check_gens(gens, l)?;
        Ok(AlgebraElement::one(l).left_gens(gens))
    }

    /// The product specialised at q = 1, with coefficients collapsed after each factor.
    pub fn from_gens_at_one(gens: &[Gen], l: usize) -> Result<AlgebraElement> {
        check_gens(gens, l)?;
        let mut v = AlgebraElement::one(l).bent;
        for g in gens.iter().rev() {
            v = v.apply_slices(&g.slices());
            let mut w = Vector::zero(v.width);
            for (&k, c) in &v.terms {
                w.add_term(k, &LaurentScalar::monomial_int(c.at_one(), 0));
            }
            v = w;
        }
        Ok(AlgebraElement { l, bent: v })
    }

    pub fn parse(text: &str, l: usize) -> Result<AlgebraElement> {
        AlgebraElement::from_gens(&parse_gens(text)?, l)
    }

    pub fn is_zero(&self) -> bool {
        self.bent.is_zero()
    }

    pub fn len(&self) -> usize {
        self.bent.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Coefficients keyed by packed bent matchings.
    pub fn key_terms(&self) -> impl Iterator<Item = (&Key, &LaurentScalar)> {
        self.bent.terms.iter()
    }

    pub fn coeff_key(&self, k: Key) -> LaurentScalar {
        self.bent.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn connector(&self, k: Key) -> Connector {
        key_connector(self.l, self.l, k)
    }

    pub fn add(&self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_assign_scaled(o, &LaurentScalar::one());
        out
    }

    pub fn sub(&self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_assign_scaled(o, &LaurentScalar::from_int(-1));
        out
    }

    pub fn add_assign_scaled(&mut self, o: &AlgebraElement, c: &LaurentScalar) {
        assert_eq!(self.l, o.l, "degree mismatch");
        self.bent.add_scaled(&o.bent, c);
    }

    pub fn scale(&self, c: &LaurentScalar) -> AlgebraElement {
        AlgebraElement {
            l: self.l,
            bent: self.bent.scaled(c),
        }
    }

    /// `g_1 ... g_k * self`.
    pub fn left_gens(&self, gens: &[Gen]) -> AlgebraElement {
        let mut v = self.bent.clone();
        for g in gens.iter().rev() {
            v = v.apply_slices(&g.slices());
        }
        AlgebraElement { l: self.l, bent: v }
    }

    /// `self * g`.
    pub fn right_gen(&self, g: Gen) -> AlgebraElement {
        let p = 2 * self.l - g.i;
        let e = |v: &Vector| v.apply_slices(&[Slice::cap(p), Slice::cup(p)]);
        let v = &self.bent;
        let bent = match g.kind {
            GenKind::E => e(v),
            GenKind::T | GenKind::TInv => {
                let x = if g.kind == GenKind::T {
                    Slice::neg(p)
                } else {
                    Slice::pos(p)
                };
                let mut out = v.apply_slice(x).scaled(&LaurentScalar::from_int(-1));
                out.add_scaled(&e(v), &LaurentScalar::qdiff());
                out
            }
        };
        AlgebraElement { l: self.l, bent }
    }

    /// `self * g_1 ... g_k`.
    pub fn right_gens(&self, gens: &[Gen]) -> AlgebraElement {
        gens.iter().fold(self.clone(), |a, &g| a.right_gen(g))
    }

    pub fn mul(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        if self.l != o.l {
            return Err(Error::InvalidInput(format!(
                "degree mismatch: {} vs {}",
                self.l, o.l
            )));
        }
        let l = self.l;
        // Bent coefficients are eps_l times diagram coefficients.
        let e = eps(l);
        let mut acc = Vector::zero(2 * l);
        for (&k, x) in &self.bent.terms {
            let (s, w) = basis_word_key(l, l, k);
            let img = o.bent.apply_slices(&w.slices);
            acc.add_scaled(&img, &(&(x * &s) * &e));
        }
        Ok(AlgebraElement { l, bent: acc })
    }

    pub fn to_json(&self) -> Value {
        self.to_morphism().to_json()
    }

    pub fn from_json(l: usize, v: &Value) -> Result<AlgebraElement> {
        AlgebraElement::from_morphism(&Morphism::from_json(l, l, v)?)
    }
}

/// Every term of `a` as a word with a scalar, for evaluation elsewhere.
pub fn to_words(a: &AlgebraElement) -> Vec<(LaurentScalar, TangleWord)> {
    a.to_morphism().to_words()
}

pub fn generator(kind: GenKind, i: usize, l: usize) -> Result<AlgebraElement> {
    AlgebraElement::generator(Gen { kind, i }, l)
}

pub fn multiply(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.mul(b)
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_morphism())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str, l: usize) -> AlgebraElement {
        AlgebraElement::parse(s, l).unwrap()
    }

    fn q(k: i64) -> LaurentScalar {
        LaurentScalar::q_pow(k)
    }

    #[test]
    fn parse_words() {
        assert_eq!(parse_gens("T1 T2i E3").unwrap(), vec![Gen::t(1), Gen::t_inv(2), Gen::e(3)]);
        assert_eq!(parse_gens("T1E2").unwrap(), vec![Gen::t(1), Gen::e(2)]);
        assert!(parse_gens("").unwrap().is_empty());
        assert!(parse_gens("E1i").is_err());
        assert!(parse_gens("X1").is_err());
        assert!(AlgebraElement::parse("T3", 3).is_err());
    }

    #[test]
    fn generator_examples() {
        let l = 3;
        let one = AlgebraElement::one(l);
        assert_eq!(el("T1 T1i", l), one);
        assert!(el("E1 E1", l).is_zero());
        assert_eq!(el("T1 E1", l), el("E1", l).scale(&q(1)));
        assert_eq!(el("E1 T1", l), el("E1", l).scale(&-q(-1)));
    }

    #[test]
    fn multiply_examples() {
        let l = 3;
        assert_eq!(el("E1 E2 E1", l), el("E1", l).scale(&(-1).into()));
        let rhs = el("T2 E1", l)
            .scale(&(-1).into())
            .add(&el("E2 E1", l).scale(&LaurentScalar::qdiff()));
        assert_eq!(el("T1 E2 E1", l), rhs);
        assert_eq!(el("E2", l), el("T1 T2 E1 T2i T1i", l));
    }

    #[test]
    fn right_action_matches_products() {
        let l = 3;
        let samples = ["", "T1", "E1 T2", "T2i E1 T1", "E2 E1", "T1 T2 T1"];
        for s in samples {
            let a = el(s, l);
            for i in 1..l {
                for g in [Gen::t(i), Gen::t_inv(i), Gen::e(i)] {
                    let via_mul = a.mul(&AlgebraElement::generator(g, l).unwrap()).unwrap();
                    assert_eq!(a.right_gen(g), via_mul, "{s} * {g}");
                    let mut w = parse_gens(s).unwrap();
                    w.push(g);
                    assert_eq!(via_mul, AlgebraElement::from_gens(&w, l).unwrap());
                }
            }
        }
    }
}
