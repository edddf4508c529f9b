//! Exact coefficients: integer Laurent polynomials in `q` and their fraction field.
//!
//! Integers switch to arbitrary precision on overflow, so no computation can wrap.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};

/// Integer that stays machine-sized until an operation would overflow.
#[derive(Clone, Debug)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_neg(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_neg() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Int) -> Option<Int> {
        if d.is_zero() {
            return None;
        }
        match (self, d) {
            (Int::Small(a), Int::Small(b)) => {
                if a % b != 0 {
                    return None;
                }
                match a.checked_div(*b) {
                    Some(v) => Some(Int::Small(v)),
                    None => Some(Int::from_big(BigInt::from(*a) / BigInt::from(*b))),
                }
            }
            _ => {
                let (a, b) = (self.to_big(), d.to_big());
                let (qt, r) = a.div_rem(&b);
                if r.is_zero() {
                    Some(Int::from_big(qt))
                } else {
                    None
                }
            }
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if *a != i64::MIN && *b != i64::MIN => {
                Int::Small(a.gcd(b))
            }
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Int {
        Int::from_big(v)
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Int) -> bool {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            // Big values are always outside the i64 range, so mixed pairs differ.
            (Int::Big(a), Int::Big(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for Int {}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Int) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Int {
    fn cmp(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl std::hash::Hash for Int {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        match self {
            Int::Small(v) => v.hash(h),
            Int::Big(b) => b.hash(h),
        }
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    fn add(self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(v) = a.checked_add(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() + o.to_big())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    fn sub(self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(v) = a.checked_sub(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() - o.to_big())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    fn mul(self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(v) = a.checked_mul(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() * o.to_big())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b.clone()),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

/// An element of Z[q, q^-1], stored as exponent-sorted nonzero terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: Vec<(i64, Int)>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        LaurentScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: i64, k: i64) -> Self {
        Self::monomial_int(Int::Small(c), k)
    }

    pub fn monomial_int(c: Int, k: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentScalar { terms: vec![(k, c)] }
        }
    }

    /// `q - q^-1`.
    pub fn qdiff() -> Self {
        Self::from_terms(vec![(1, 1), (-1, -1)])
    }

    /// Builds from `(exponent, coefficient)` pairs in any order; repeated exponents add up.
    pub fn from_terms(pairs: Vec<(i64, i64)>) -> Self {
        let mut acc: BTreeMap<i64, Int> = BTreeMap::new();
        for (k, c) in pairs {
            let e = acc.entry(k).or_insert(Int::Small(0));
            *e = &*e + &Int::Small(c);
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<i64, Int>) -> Self {
        LaurentScalar {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> &[(i64, Int)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Units of Z[q, q^-1] are exactly `±q^k`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.abs().is_one()
    }

    /// Inverse of a unit `±q^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (k, c) = &self.terms[0];
        Some(Self::monomial_int(c.clone(), -k))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, k: i64) -> Int {
        match self.terms.binary_search_by_key(&k, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Int::Small(0),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale_int(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentScalar {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Value at q = 1.
    pub fn at_one(&self) -> Int {
        self.terms.iter().fold(Int::from(0), |a, (_, c)| &a + c)
    }

    /// Substitutes `q -> q^-1`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<(i64, Int)> =
            self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        LaurentScalar { terms }
    }

    /// gcd of the integer coefficients (0 for the zero scalar).
    pub fn content(&self) -> Int {
        let mut g = Int::Small(0);
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_int_exact(&self, d: &Int) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            terms.push((*e, c.div_exact(d)?));
        }
        Some(LaurentScalar { terms })
    }

    /// Exact quotient `a / b` in Z[q, q^-1].
    pub fn exact_div(&self, b: &LaurentScalar) -> Result<LaurentScalar> {
        if b.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(inv) = b.unit_inverse() {
            return Ok(self * &inv);
        }
        // Dense long division on the shifted polynomials, highest degree first.
        let a0 = self.min_exp().unwrap();
        let b0 = b.min_exp().unwrap();
        let da = (self.max_exp().unwrap() - a0) as usize;
        let db = (b.max_exp().unwrap() - b0) as usize;
        let not_div = || Error::Arithmetic(format!("{b} does not divide {self}"));
        if da < db {
            return Err(not_div());
        }
        let mut rem: Vec<Int> = vec![Int::Small(0); da + 1];
        for (e, c) in &self.terms {
            rem[(e - a0) as usize] = c.clone();
        }
        let mut bd: Vec<Int> = vec![Int::Small(0); db + 1];
        for (e, c) in &b.terms {
            bd[(e - b0) as usize] = c.clone();
        }
        let lead = bd[db].clone();
        let mut quot: Vec<Int> = vec![Int::Small(0); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = rem[k + db].clone();
            if top.is_zero() {
                continue;
            }
            let qk = top.div_exact(&lead).ok_or_else(not_div)?;
            for (j, bj) in bd.iter().enumerate() {
                if !bj.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&qk * bj);
                }
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(not_div());
        }
        let shift = a0 - b0;
        Ok(LaurentScalar {
            terms: quot
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + shift, c))
                .collect(),
        })
    }

    /// A greatest common divisor up to units and integer content: primitive, with
    /// lowest exponent 0 and positive leading coefficient. Zero if both are zero.
    pub fn gcd(&self, other: &LaurentScalar) -> LaurentScalar {
        fn dense(x: &LaurentScalar) -> Vec<BigInt> {
            let lo = x.min_exp().unwrap();
            let mut v = vec![BigInt::zero(); (x.max_exp().unwrap() - lo) as usize + 1];
            for (e, c) in &x.terms {
                v[(e - lo) as usize] = c.to_big();
            }
            v
        }
        fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
            let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            if !g.is_zero() && !g.is_one() {
                for c in v.iter_mut() {
                    *c /= &g;
                }
            }
            if v.last().is_some_and(|c| c.is_negative()) {
                for c in v.iter_mut() {
                    *c = -&*c;
                }
            }
            v
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero(),
            (true, false) => return other.gcd(other),
            (false, true) => return self.gcd(self),
            _ => {}
        }
        let mut a = primitive(dense(self));
        let mut b = primitive(dense(other));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            // Pseudo-remainder of a by b, kept primitive.
            let db = b.len() - 1;
            let lb = b[db].clone();
            let mut r = a;
            while r.len() > db && !r.is_empty() {
                let dr = r.len() - 1;
                let lr = r[dr].clone();
                for c in r.iter_mut() {
                    *c *= &lb;
                }
                for (j, bj) in b.iter().enumerate() {
                    r[dr - db + j] -= &lr * bj;
                }
                r = primitive(r);
            }
            a = b;
            b = primitive(r);
        }
        // Strip powers of q, which are units.
        let lo = a.iter().position(|c| !c.is_zero()).unwrap_or(0);
        LaurentScalar {
            terms: a[lo..]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64, Int::from_big(c.clone())))
                .collect(),
        }
    }

    /// JSON form: exponent (decimal text) mapped to integer coefficient.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in &self.terms {
            let n: Number = c.to_string().parse().expect("integer literal");
            m.insert(e.to_string(), Value::Number(n));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("scalar JSON must be an object".into()))?;
        let mut acc = BTreeMap::new();
        for (k, c) in obj {
            let e: i64 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent key {k:?}")))?;
            let n = match c {
                Value::Number(n) => n.to_string(),
                _ => return Err(Error::Parse("coefficient must be an integer".into())),
            };
            let b: BigInt = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {n}")))?;
            acc.insert(e, Int::from_big(b));
        }
        Ok(Self::from_map(acc))
    }
}

/// `(q^{2c} - 1)/(q - q^-1)` for a node of content `c` that is added.
pub fn residue_add(c: i64) -> LaurentScalar {
    let num = &LaurentScalar::q_pow(2 * c) - &LaurentScalar::one();
    num.exact_div(&LaurentScalar::qdiff())
        .expect("q - q^-1 divides q^{2c} - 1")
}

/// `(q^{2c-2} - 1)/(q - q^-1)` for a node of content `c` that is removed.
pub fn residue_remove(c: i64) -> LaurentScalar {
    residue_add(c - 1)
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_neg();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                k => format!("q^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LaurentScalar {
    type Err = Error;

    /// Parses the text form, e.g. `q^2 - q^-2`, `-3*q + 1`, `0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse scalar {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let mut acc: BTreeMap<i64, Int> = BTreeMap::new();
        let bytes: Vec<char> = t.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -1;
                }
                i += 1;
            }
            // A term runs until the next '+' or '-' that does not follow '^'.
            let start = i;
            while i < bytes.len() && !((bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '^')
            {
                i += 1;
            }
            let term: String = bytes[start..i].iter().collect();
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, mono) = match term.split_once('*') {
                Some((c, m)) => (c.to_string(), m.to_string()),
                None if term.starts_with('q') => ("1".to_string(), term.clone()),
                None => (term.clone(), String::new()),
            };
            let c: BigInt = coef.parse().map_err(|_| bad())?;
            let e: i64 = if mono.is_empty() {
                0
            } else if mono == "q" {
                1
            } else if let Some(x) = mono.strip_prefix("q^") {
                x.parse().map_err(|_| bad())?
            } else {
                return Err(bad());
            };
            let entry = acc.entry(e).or_insert(Int::Small(0));
            *entry = &*entry + &Int::from_big(c * sign);
        }
        Ok(Self::from_map(acc))
    }
}

fn merge(a: &[(i64, Int)], b: &[(i64, Int)], negate_b: bool) -> Vec<(i64, Int)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
            out.push((b[j].0, c));
            j += 1;
        } else {
            let c = if negate_b {
                &a[i].1 - &b[j].1
            } else {
                &a[i].1 + &b[j].1
            };
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<'a> Add<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, o: &LaurentScalar) -> LaurentScalar {
        LaurentScalar {
            terms: merge(&self.terms, &o.terms, false),
        }
    }
}

impl<'a> Sub<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, o: &LaurentScalar) -> LaurentScalar {
        LaurentScalar {
            terms: merge(&self.terms, &o.terms, true),
        }
    }
}

impl<'a> Mul<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, o: &LaurentScalar) -> LaurentScalar {
        if self.is_zero() || o.is_zero() {
            return LaurentScalar::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return LaurentScalar {
                terms: o.terms.iter().map(|(f, d)| (e + f, c * d)).collect(),
            };
        }
        if o.terms.len() == 1 {
            return o * self;
        }
        let lo = self.terms[0].0 + o.terms[0].0;
        let hi = self.terms.last().unwrap().0 + o.terms.last().unwrap().0;
        let mut dense = vec![Int::Small(0); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                let k = (e + f - lo) as usize;
                dense[k] = &dense[k] + &(c * d);
            }
        }
        LaurentScalar {
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + lo, c))
                .collect(),
        }
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, o: LaurentScalar) -> LaurentScalar {
        &self + &o
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, o: LaurentScalar) -> LaurentScalar {
        &self - &o
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, o: LaurentScalar) -> LaurentScalar {
        &self * &o
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, o: &LaurentScalar) {
        self.terms = merge(&self.terms, &o.terms, false);
    }
}

impl SubAssign<&LaurentScalar> for LaurentScalar {
    fn sub_assign(&mut self, o: &LaurentScalar) {
        self.terms = merge(&self.terms, &o.terms, true);
    }
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        LaurentScalar::from_int(c)
    }
}

/// An element of Q(q), kept as numerator over denominator in Z[q, q^-1].
///
/// Normalisation divides out the polynomial gcd, powers of q and the sign.
/// Equality is still decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalScalar {
    num: LaurentScalar,
    den: LaurentScalar,
}

impl RationalScalar {
    pub fn new(num: LaurentScalar, den: LaurentScalar) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_laurent(x: LaurentScalar) -> Self {
        RationalScalar {
            num: x,
            den: LaurentScalar::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentScalar::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentScalar::one())
    }

    fn normalized(num: LaurentScalar, den: LaurentScalar) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return RationalScalar { num, den };
        }
        let g = num.content().gcd(&den.content());
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_int_exact(&g).expect("content divides"),
                den.div_int_exact(&g).expect("content divides"),
            )
        };
        let s = den.min_exp().unwrap();
        if s != 0 {
            num = num.shift(-s);
            den = den.shift(-s);
        }
        if den.terms.last().unwrap().1.is_neg() {
            num = -num;
            den = -den;
        }
        if den.terms.len() > 1 {
            let g = num.gcd(&den);
            if g.terms.len() > 1 {
                let n = num.exact_div(&g).expect("gcd divides");
                let d = den.exact_div(&g).expect("gcd divides");
                return Self::normalized(n, d);
            }
        }
        if den.terms.len() == 1 {
            // den is a positive integer constant; try to absorb it.
            if let Some(n) = num.div_int_exact(&den.terms[0].1) {
                return RationalScalar {
                    num: n,
                    den: LaurentScalar::one(),
                };
            }
        }
        RationalScalar { num, den }
    }

    pub fn numer(&self) -> &LaurentScalar {
        &self.num
    }

    pub fn denom(&self) -> &LaurentScalar {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this equals, if the denominator divides out.
    pub fn to_laurent(&self) -> Option<LaurentScalar> {
        self.num.exact_div(&self.den).ok()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }
}

impl PartialEq for RationalScalar {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}
impl Eq for RationalScalar {}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a RationalScalar> for &'a RationalScalar {
    type Output = RationalScalar;
    fn add(self, o: &RationalScalar) -> RationalScalar {
        if self.den == o.den {
            return RationalScalar::normalized(&self.num + &o.num, self.den.clone());
        }
        RationalScalar::normalized(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a RationalScalar> for &'a RationalScalar {
    type Output = RationalScalar;
    fn sub(self, o: &RationalScalar) -> RationalScalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RationalScalar> for &'a RationalScalar {
    type Output = RationalScalar;
    fn mul(self, o: &RationalScalar) -> RationalScalar {
        RationalScalar::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        RationalScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl One for LaurentScalar {
    fn one() -> Self {
        LaurentScalar::one()
    }
}

impl Zero for LaurentScalar {
    fn zero() -> Self {
        LaurentScalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentScalar {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("q") + &p("q^-1"), p("q + q^-1"));
        assert_eq!(&p("q - q^-1") * &p("q + q^-1"), p("q^2 - q^-2"));
        assert!((&LaurentScalar::zero() * &p("q^3")).is_zero());
        assert_eq!(&LaurentScalar::q() * &LaurentScalar::q_pow(-1), LaurentScalar::one());
    }

    #[test]
    fn exact_division_examples() {
        let d = LaurentScalar::qdiff();
        assert_eq!(p("q^2 - 1").exact_div(&d).unwrap(), p("q"));
        assert_eq!(p("q^4 - 1").exact_div(&d).unwrap(), p("q^3 + q"));
        assert!(LaurentScalar::zero().exact_div(&LaurentScalar::q()).unwrap().is_zero());
        assert!(p("q^2 + 1").exact_div(&d).is_err());
    }

    #[test]
    fn residues() {
        assert!(residue_add(0).is_zero());
        assert_eq!(residue_add(1), p("q"));
        assert_eq!(residue_remove(0), p("-q^-1"));
        assert_eq!(residue_add(-1), p("-q^-1"));
    }

    #[test]
    fn text_round_trip() {
        for s in ["q^2 - q^-2", "-3*q + 1", "0", "q", "-q^-1", "2*q^5 - 7"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn json_round_trip() {
        let x = p("q^2 - 5*q^-2 + 3");
        let j = x.to_json();
        assert_eq!(j.to_string(), r#"{"-2":-5,"0":3,"2":1}"#);
        assert_eq!(LaurentScalar::from_json(&j).unwrap(), x);
    }

    #[test]
    fn big_coefficients_do_not_wrap() {
        let big = LaurentScalar::monomial(i64::MAX, 0);
        let s = &big + &big;
        assert_eq!(s.to_string(), "18446744073709551614");
        let back = &s - &big;
        assert_eq!(back, big);
        let sq = &big * &big;
        assert_eq!(sq.exact_div(&big).unwrap(), big);
    }

    #[test]
    fn polynomial_gcd() {
        assert_eq!(p("q^2 - 1").gcd(&p("q^3 - q")), p("q^2 - 1"));
        assert_eq!(p("q^2 - 1").gcd(&p("q^2 + 2*q + 1")), p("q + 1"));
        assert_eq!(p("2*q + 2").gcd(&p("4*q^-1 + 4")), p("q + 1"));
        assert!(p("q^2 + 1").gcd(&p("q - 1")).is_one());
        let r = RationalScalar::new(p("q^4 - 1"), p("q^3 - q")).unwrap();
        assert!(r.denom().is_one());
        assert_eq!(r.to_laurent().unwrap(), p("q + q^-1"));
        let r = RationalScalar::new(p("q^2 - 1"), p("q^2 + 2*q + 1")).unwrap();
        assert_eq!(r.denom(), &p("q + 1"));
    }

    #[test]
    fn rational_normalization() {
        let a = RationalScalar::new(p("2*q^2 - 2"), p("2*q")).unwrap();
        let b = RationalScalar::from_laurent(p("q - q^-1"));
        assert_eq!(a, b);
        assert_eq!(a.to_laurent().unwrap(), p("q - q^-1"));
        let inv = b.inv().unwrap();
        assert_eq!(&inv * &b, RationalScalar::one());
    }
}
