//! The invariant suite: every structural identity the crate relies on, as named checks
//! with explicit scales. Used by `pqb verify` and the acceptance harness.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::blocks::{
    block_report, residue_linked, show_classes, simple_label_count, simple_labels,
};
use crate::coeff::{residue_add, residue_remove, LaurentScalar};
use crate::combin::{
    coset_count, coset_reps, domino_removals, hook_dim, level, partitions, ra_set, sharp,
    sigma_plus, std_tableaux, two_core, updown_tableaux, Partition,
};
use crate::error::{Error, Result};
use crate::oracle::{rank_of_matrices, ExactMatrix, GenMatrices};
use crate::pqbrauer::mbasis::{independent_at_one, m_indices, MBasis};
use crate::pqbrauer::standard::right_mul_jm;
use crate::pqbrauer::{jm_element, reduce_mod, sigma, AlgebraElement, Gen, GenKind};
use crate::repmod::{
    branching_filtration, cell_element, cell_indices, gram_matrix, gram_matrix_with, jm_action,
    radical_rank, restriction_dims, StandardModule,
};
use crate::tanglecat::engine::{decode, reduced_word, Vector};
use crate::tanglecat::{
    compose, gamma_word, hom_basis, hom_dim, normal_form, tensor, Morphism, Slice, SliceKind,
    TangleWord,
};

/// Result of one named check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "status": if self.passed { "pass" } else { "fail" },
            "detail": self.detail,
            "seconds": (self.seconds * 1000.0).round() / 1000.0,
        })
    }
}

/// Runs `f`; `Ok(detail)` passes, any error fails with its message.
pub fn run(name: &str, f: impl FnOnce() -> Result<String>) -> Check {
    let t = Instant::now();
    let r = f();
    let seconds = t.elapsed().as_secs_f64();
    match r {
        Ok(detail) => Check { name: name.into(), passed: true, detail, seconds },
        Err(e) => Check { name: name.into(), passed: false, detail: e.to_string(), seconds },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Falsified(msg()))
    }
}

pub fn double_factorial(n: i64) -> u128 {
    let mut out: u128 = 1;
    let mut k = n;
    while k > 1 {
        out *= k as u128;
        k -= 2;
    }
    out
}

fn q(k: i64) -> LaurentScalar {
    LaurentScalar::q_pow(k)
}

fn int(c: i64) -> LaurentScalar {
    LaurentScalar::from_int(c)
}

// ---------------------------------------------------------------- coefficients

pub fn residue_identities(range: i64) -> Result<String> {
    let qd = LaurentScalar::qdiff();
    for c in -range..=range {
        ensure(&qd * &residue_add(c) == &q(2 * c) - &LaurentScalar::one(), || {
            format!("(q - q^-1) res_add({c}) != q^(2c) - 1")
        })?;
        ensure(&qd * &residue_remove(c) == &q(2 * c - 2) - &LaurentScalar::one(), || {
            format!("(q - q^-1) res_remove({c}) != q^(2c-2) - 1")
        })?;
        ensure(residue_add(c) == residue_remove(c + 1), || {
            format!("res_add({c}) != res_remove({})", c + 1)
        })?;
    }
    Ok(format!("contents {}..={range}", -range))
}

pub fn random_laurent(rng: &mut StdRng) -> LaurentScalar {
    let n = rng.gen_range(0..5);
    LaurentScalar::from_terms(
        (0..n)
            .map(|_| (rng.gen_range(-8..=8), rng.gen_range(-20i64..=20)))
            .collect(),
    )
}

pub fn ring_axioms(samples: usize, seed: u64) -> Result<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let (a, b, c) = (random_laurent(&mut rng), random_laurent(&mut rng), random_laurent(&mut rng));
        ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity at {a}, {b}, {c}"))?;
        ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || {
            format!("distributivity at {a}, {b}, {c}")
        })?;
        ensure(&a * &b == &b * &a, || format!("commutativity at {a}, {b}"))?;
    }
    Ok(format!("{samples} random triples"))
}

// ---------------------------------------------------------------- combinatorics

pub fn updown_counts(lmax: usize) -> Result<String> {
    let mut n = 0;
    for l in 0..=lmax {
        for lambda in sigma_plus(l) {
            let f = level(&lambda, l);
            let got = updown_tableaux(l, &lambda)?.len() as u128;
            let want = coset_reps(f, l)?.len() as u128 * std_tableaux(&lambda, 0).len() as u128;
            ensure(got == want, || format!("{lambda} at l={l}: {got} tableaux, expected {want}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} labels, l <= {lmax}"))
}

pub fn dimension_identity(lmax: usize) -> Result<String> {
    for l in 0..=lmax {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        let sum: u128 = (0..=l / 2)
            .map(|f| {
                let d = coset_reps(f, l).map(|r| r.len() as u128).unwrap_or(0);
                d * d * fact(l - 2 * f)
            })
            .sum();
        let want = double_factorial(2 * l as i64 - 1);
        ensure(sum == want, || format!("l={l}: sum {sum} != (2l-1)!! = {want}"))?;
    }
    Ok(format!("l <= {lmax}"))
}

pub fn branching_counts(lmax: usize) -> Result<String> {
    for l in 1..=lmax {
        for lambda in sigma_plus(l) {
            let got = updown_tableaux(l, &lambda)?.len();
            let mut sum = 0;
            for mu in ra_set(&lambda, l)? {
                sum += updown_tableaux(l - 1, &mu)?.len();
            }
            ensure(got == sum, || format!("{lambda} at l={l}: {got} != {sum}"))?;
        }
    }
    Ok(format!("l <= {lmax}"))
}

pub fn sharp_matches_core(nmax: usize) -> Result<String> {
    let all: Vec<Partition> = (0..=nmax).flat_map(partitions).collect();
    for a in &all {
        for b in &all {
            ensure((sharp(a) == sharp(b)) == (two_core(a) == two_core(b)), || {
                format!("sharp and 2-core disagree on {a}, {b}")
            })?;
        }
    }
    Ok(format!("{} partitions of size <= {nmax}", all.len()))
}

pub fn two_core_confluent(nmax: usize) -> Result<String> {
    fn cores(p: &Partition, out: &mut std::collections::BTreeSet<Partition>) {
        let next = domino_removals(p);
        if next.is_empty() {
            out.insert(p.clone());
        }
        for r in next {
            cores(&r, out);
        }
    }
    for n in 0..=nmax {
        for p in partitions(n) {
            let mut set = Default::default();
            cores(&p, &mut set);
            let c = two_core(&p);
            ensure(set.len() == 1 && set.contains(&c), || {
                format!("removal orders of {p} end in {set:?}")
            })?;
            ensure(two_core(&c) == c, || format!("2-core of {p} is not a 2-core"))?;
        }
    }
    Ok(format!("|lambda| <= {nmax}, every removal order"))
}

// ---------------------------------------------------------------- category

pub fn hom_dimensions(max: usize) -> Result<String> {
    for m in 0..=max {
        for s in 0..=max - m {
            let got = hom_basis(m, s).len() as u128;
            let want = if (m + s) % 2 == 0 {
                double_factorial((m + s) as i64 - 1)
            } else {
                0
            };
            ensure(got == want && hom_dim(m, s) == want, || {
                format!("Hom({m},{s}): {got} diagrams, expected {want}")
            })?;
        }
    }
    Ok(format!("m + s <= {max}"))
}

/// A linear relation among words with a common source and target: the terms sum to 0.
#[derive(Clone, Debug)]
pub struct WordRelation {
    pub name: String,
    pub source: usize,
    pub terms: Vec<(LaurentScalar, String)>,
}

fn wrel(name: &str, source: usize, terms: Vec<(LaurentScalar, &str)>) -> WordRelation {
    WordRelation {
        name: name.into(),
        source,
        terms: terms.into_iter().map(|(c, w)| (c, w.to_string())).collect(),
    }
}

/// Defining relations of the category and the derived local identities.
pub fn category_relations() -> Vec<WordRelation> {
    let one = LaurentScalar::one;
    let m1 = || int(-1);
    vec![
        wrel("R1 inverse", 2, vec![(one(), "X+ 1 ; X- 1"), (m1(), "I 2")]),
        wrel("R1 inverse'", 2, vec![(one(), "X- 1 ; X+ 1"), (m1(), "I 2")]),
        wrel("R1 braid", 3, vec![(one(), "X+ 1 ; X+ 2 ; X+ 1"), (m1(), "X+ 2 ; X+ 1 ; X+ 2")]),
        wrel("R2 skein", 2, vec![(one(), "X+ 1"), (m1(), "X- 1"), (-LaurentScalar::qdiff(), "I 2")]),
        wrel("R3 snake", 1, vec![(one(), "U 2 ; A 1"), (m1(), "I 1")]),
        wrel("R3 snake'", 1, vec![(one(), "U 1 ; A 2"), (one(), "I 1")]),
        wrel("R4 untwist", 0, vec![(one(), "U 1 ; X+ 1"), (-q(1), "U 1")]),
        wrel("R4 slide", 1, vec![(one(), "U 1 ; X+ 2"), (m1(), "U 2 ; X- 1")]),
        wrel("R5 loop", 0, vec![(one(), "U 1 ; A 1")]),
        wrel("cap heights", 4, vec![(one(), "A 1 | A 1"), (m1(), "A 3 ; A 1")]),
        wrel("cap heights'", 4, vec![(one(), "A 1 | A 1"), (one(), "A 1 ; A 1")]),
        wrel("cap slide", 3, vec![(one(), "X- 2 ; A 1"), (m1(), "X+ 1 ; A 2")]),
        wrel("cap untwist", 2, vec![(one(), "X- 1 ; A 1"), (q(1), "A 1")]),
        wrel("curl", 1, vec![(one(), "U 2 ; X+ 1 ; A 2"), (-q(-1), "I 1")]),
        wrel("curl'", 1, vec![(one(), "U 2 ; X- 1 ; A 2"), (-q(-1), "I 1")]),
        wrel("curl''", 1, vec![(one(), "U 1 ; X+ 2 ; A 1"), (q(1), "I 1")]),
        wrel("curl'''", 1, vec![(one(), "U 1 ; X- 2 ; A 1"), (q(1), "I 1")]),
    ]
}

fn relation_words(r: &WordRelation, pad: (usize, usize)) -> Result<Vec<(LaurentScalar, TangleWord)>> {
    r.terms
        .iter()
        .map(|(c, w)| {
            let w = TangleWord::parse_with_source(w, Some(r.source))?;
            Ok((c.clone(), w.shifted(pad.0).widened(pad.1)))
        })
        .collect()
}

fn combination_nf(terms: &[(LaurentScalar, TangleWord)]) -> Result<Morphism> {
    let (m, s) = (terms[0].1.m, terms[0].1.target()?);
    let mut acc = Morphism::zero(m, s);
    for (c, w) in terms {
        acc = acc.add(&normal_form(w)?.scale(c))?;
    }
    Ok(acc)
}

/// Every category relation, also with up to `pad` identity strands on either side.
pub fn category_relation_suite(pad: usize) -> Result<String> {
    let rels = category_relations();
    let mut n = 0;
    for r in &rels {
        for a in 0..=pad {
            for b in 0..=pad - a {
                let nf = combination_nf(&relation_words(r, (a, b))?)?;
                ensure(nf.is_zero(), || format!("{} with padding ({a},{b}) leaves {nf}", r.name))?;
                n += 1;
            }
        }
    }
    Ok(format!("{} relations, {n} instances", rels.len()))
}

/// A random word from `m` to `s` with `len` slices and widths at most `max_width`.
pub fn random_word(rng: &mut StdRng, m: usize, s: usize, len: usize, max_width: usize) -> TangleWord {
    assert_eq!((m + s) % 2, 0, "no words from {m} to {s}");
    let len = len.max(m.abs_diff(s) / 2);
    let mut width = m;
    let mut slices = Vec::new();
    for step in 0..len {
        let rem = len - step - 1;
        let mut options = Vec::new();
        for kind in [SliceKind::PosCross, SliceKind::NegCross, SliceKind::Cup, SliceKind::Cap] {
            let next = (width as isize + kind.width_change()) as usize;
            let ok_width = match kind {
                SliceKind::Cup => width + 2 <= max_width,
                _ => width >= 2,
            };
            if ok_width && next.abs_diff(s) <= 2 * rem {
                options.push(kind);
            }
        }
        if options.is_empty() {
            break;
        }
        let kind = options[rng.gen_range(0..options.len())];
        let pos = match kind {
            SliceKind::Cup => rng.gen_range(1..=width + 1),
            _ => rng.gen_range(1..width),
        };
        slices.push(Slice::new(kind, pos));
        width = (width as isize + kind.width_change()) as usize;
    }
    // Crossings may have left no room; finish with caps or cups.
    while width > s {
        slices.push(Slice::cap(1));
        width -= 2;
    }
    while width < s {
        slices.push(Slice::cup(1));
        width += 2;
    }
    TangleWord::new(m, slices).expect("generated word is well formed")
}

fn random_shape(rng: &mut StdRng, max_total: usize) -> (usize, usize) {
    loop {
        let m = rng.gen_range(0..=max_total);
        let s = rng.gen_range(0..=max_total - m);
        if (m + s) % 2 == 0 {
            return (m, s);
        }
    }
}

/// Normal forms agree with products of normal forms of a random split of the word.
pub fn confluence_audit(per_size: usize, max_total: usize, seed: u64) -> Result<String> {
    let mut n = 0;
    for total in (0..=max_total).step_by(2) {
        let mut rng = StdRng::seed_from_u64(seed ^ total as u64);
        for _ in 0..per_size {
            let m = rng.gen_range(0..=total);
            let s = total - m;
            let len = rng.gen_range(1..=8);
            let w = random_word(&mut rng, m, s, len, max_total.max(2));
            let whole = normal_form(&w)?;
            let k = rng.gen_range(0..=w.slices.len());
            let bottom = TangleWord::new(w.m, w.slices[..k].to_vec())?;
            let top = TangleWord::new(bottom.target()?, w.slices[k..].to_vec())?;
            let split = compose(&normal_form(&top)?, &normal_form(&bottom)?)?;
            ensure(whole == split, || format!("{w}: split at {k} differs"))?;
            n += 1;
        }
    }
    Ok(format!("{n} random words, m + s <= {max_total}"))
}

fn random_morphism(rng: &mut StdRng, m: usize, s: usize) -> Result<Morphism> {
    let len = rng.gen_range(0..=5);
    normal_form(&random_word(rng, m, s, len, 6))
}

/// Associativity of composition and the super interchange law on random triples.
pub fn associativity_interchange(samples: usize, seed: u64) -> Result<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let o: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=2) * 2 + rng.gen_range(0..2)).collect();
        // Objects of equal parity so that every Hom space below is nonzero.
        let p = o[0] % 2;
        let o: Vec<usize> = o.iter().map(|x| x - x % 2 + p).collect();
        let c = random_morphism(&mut rng, o[0], o[1])?;
        let b = random_morphism(&mut rng, o[1], o[2])?;
        let a = random_morphism(&mut rng, o[2], o[3])?;
        let l = compose(&compose(&a, &b)?, &c)?;
        let r = compose(&a, &compose(&b, &c)?)?;
        ensure(l == r, || format!("associativity fails on objects {o:?}"))?;

        let (x0, x1, y0, y1) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=2), 0);
        let x1 = x1 ^ ((x1 + x0) % 2);
        let y1 = y1 + (y0 % 2);
        let h = random_morphism(&mut rng, x0, x1)?;
        let f = random_morphism(&mut rng, x1, x0)?;
        let k = random_morphism(&mut rng, y0, y1)?;
        let g = random_morphism(&mut rng, y1, y0)?;
        let lhs = compose(&tensor(&f, &g)?, &tensor(&h, &k)?)?;
        let sign = if g.parity() * h.parity() % 2 == 1 { -1 } else { 1 };
        let rhs = tensor(&compose(&f, &h)?, &compose(&g, &k)?)?.scale(&int(sign));
        ensure(lhs == rhs, || format!("interchange fails on ({x0},{x1}) x ({y0},{y1})"))?;
    }
    Ok(format!("{samples} random triples"))
}

fn eval_morphism(gm: &GenMatrices, f: &Morphism) -> Result<ExactMatrix> {
    gm.eval_combination(&f.to_words(), f.m, f.s)
}

/// Oracle image of a vector of Hom(0, width), each matching written as its reduced word.
fn eval_bent(gm: &GenMatrices, v: &Vector) -> Result<ExactMatrix> {
    let mut terms = Vec::new();
    for (&k, x) in &v.terms {
        let w = reduced_word(&decode(k, v.width));
        let lambda = Vector::basis(0, 0).apply_slices(&w.slices).terms[&k].clone();
        let inv = lambda
            .unit_inverse()
            .ok_or_else(|| Error::Falsified("reduced word is not a unit multiple".into()))?;
        terms.push((x * &inv, w));
    }
    gm.eval_combination(&terms, 0, v.width)
}

/// Oracle matrices of random words agree with those of their normal forms. Both sides
/// are compared after bending to Hom(0, m + s), which is injective on matrices too.
pub fn engine_matches_oracle(samples: usize, n: usize, max_total: usize, seed: u64) -> Result<String> {
    let gm = GenMatrices::new(n)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let words: Vec<TangleWord> = (0..samples)
        .map(|_| {
            let (m, s) = random_shape(&mut rng, max_total);
            let len = rng.gen_range(1..=7);
            random_word(&mut rng, m, s, len, max_total.max(2))
        })
        .collect();
    words.par_iter().try_for_each(|w| {
        let mut slices = gamma_word(w.m).slices;
        slices.extend(w.slices.iter().copied());
        let direct = gm.eval_word(&TangleWord::new(0, slices)?)?;
        let via = eval_bent(&gm, &normal_form(w)?.bent())?;
        ensure(direct == via, || format!("oracle disagrees on {w}"))
    })?;
    Ok(format!("{samples} random words, m + s <= {max_total}, n = {n}"))
}

/// The category relations as exact matrix identities.
pub fn oracle_relations(n: usize) -> Result<String> {
    let gm = GenMatrices::new(n)?;
    for r in category_relations() {
        let ws = relation_words(&r, (0, 0))?;
        let (m, s) = (ws[0].1.m, ws[0].1.target()?);
        let mat = gm.eval_combination(&ws, m, s)?;
        ensure(mat.is_zero(), || format!("{} fails in the representation of rank {n}", r.name))?;
    }
    let t = gm.eval_word(&TangleWord::parse_with_source("X+ 1", Some(2))?)?;
    let ti = gm.eval_word(&TangleWord::parse_with_source("X- 1", Some(2))?)?;
    let id = ExactMatrix::identity(n, 2);
    ensure(t.mul(&ti)? == id && ti.mul(&t)? == id, || "t t^-1 != 1".into())?;
    ensure(t.add(&ti.scale(&int(-1)))? == id.scale(&LaurentScalar::qdiff()), || {
        "t - t^-1 != (q - q^-1) 1".into()
    })?;
    Ok(format!("n = {n}"))
}

/// The diagram basis of End(l) maps to linearly independent matrices.
pub fn oracle_faithful(lmax: usize, n: usize) -> Result<String> {
    let gm = GenMatrices::new(n)?;
    for l in 0..=lmax {
        let ms: Vec<ExactMatrix> = hom_basis(l, l)
            .iter()
            .map(|d| eval_morphism(&gm, &Morphism::basis_element(&d.connector)))
            .collect::<Result<_>>()?;
        let r = rank_of_matrices(&ms);
        ensure(r == ms.len(), || format!("l={l}: rank {r} < {}", ms.len()))?;
    }
    Ok(format!("l <= {lmax}, n = {n}"))
}

// ---------------------------------------------------------------- algebra

/// A linear relation among generator words of B_{q,l}: the terms sum to 0.
#[derive(Clone, Debug)]
pub struct GenRelation {
    pub name: String,
    pub terms: Vec<(LaurentScalar, Vec<Gen>)>,
}

fn grel(name: String, terms: Vec<(LaurentScalar, Vec<Gen>)>) -> GenRelation {
    GenRelation { name, terms }
}

/// Defining relations of B_{q,l} and their standard consequences, at every index.
pub fn algebra_relations(l: usize) -> Vec<GenRelation> {
    let (t, ti, e) = (Gen::t, Gen::t_inv, Gen::e);
    let one = LaurentScalar::one;
    let m1 = || int(-1);
    let qd = LaurentScalar::qdiff;
    let mut out = Vec::new();
    for i in 1..l {
        out.push(grel(format!("quadratic T{i}"), vec![
            (one(), vec![t(i), t(i)]),
            (-qd(), vec![t(i)]),
            (m1(), vec![]),
        ]));
        out.push(grel(format!("E{i}^2 = 0"), vec![(one(), vec![e(i), e(i)])]));
        out.push(grel(format!("E{i} T{i}"), vec![(one(), vec![e(i), t(i)]), (q(-1), vec![e(i)])]));
        out.push(grel(format!("T{i} E{i}"), vec![(one(), vec![t(i), e(i)]), (-q(1), vec![e(i)])]));
        for j in 1..l {
            if i.abs_diff(j) > 1 {
                out.push(grel(format!("T{i} T{j} commute"), vec![
                    (one(), vec![t(i), t(j)]),
                    (m1(), vec![t(j), t(i)]),
                ]));
                out.push(grel(format!("E{i} E{j} commute"), vec![
                    (one(), vec![e(i), e(j)]),
                    (m1(), vec![e(j), e(i)]),
                ]));
                out.push(grel(format!("T{i} E{j} commute"), vec![
                    (one(), vec![t(i), e(j)]),
                    (m1(), vec![e(j), t(i)]),
                ]));
            }
        }
    }
    for k in 1..l.saturating_sub(1) {
        let k1 = k + 1;
        out.push(grel(format!("braid T{k}"), vec![
            (one(), vec![t(k), t(k1), t(k)]),
            (m1(), vec![t(k1), t(k), t(k1)]),
        ]));
        out.push(grel(format!("E{k1} E{k} E{k1}"), vec![
            (one(), vec![e(k1), e(k), e(k1)]),
            (one(), vec![e(k1)]),
        ]));
        out.push(grel(format!("E{k} E{k1} E{k}"), vec![
            (one(), vec![e(k), e(k1), e(k)]),
            (one(), vec![e(k)]),
        ]));
        out.push(grel(format!("T{k} E{k1} E{k}"), vec![
            (one(), vec![t(k), e(k1), e(k)]),
            (one(), vec![t(k1), e(k)]),
            (-qd(), vec![e(k1), e(k)]),
        ]));
        out.push(grel(format!("E{k1} E{k} T{k1}"), vec![
            (one(), vec![e(k1), e(k), t(k1)]),
            (one(), vec![e(k1), t(k)]),
            (-qd(), vec![e(k1), e(k)]),
        ]));
        let i = k;
        let i1 = k1;
        out.push(grel(format!("E{i1} by conjugation"), vec![
            (one(), vec![e(i1)]),
            (m1(), vec![t(i), t(i1), e(i), ti(i1), ti(i)]),
        ]));
        out.push(grel(format!("T{i}^-1 E{i1} E{i}"), vec![
            (one(), vec![ti(i), e(i1), e(i)]),
            (one(), vec![t(i1), e(i)]),
        ]));
        out.push(grel(format!("E{i1} E{i} T{i1}^-1"), vec![
            (one(), vec![e(i1), e(i), ti(i1)]),
            (one(), vec![e(i1), t(i)]),
        ]));
        out.push(grel(format!("E{i} E{i1} T{i}"), vec![
            (one(), vec![e(i), e(i1), t(i)]),
            (m1(), vec![e(i), ti(i1)]),
        ]));
        out.push(grel(format!("T{i1} E{i} E{i1}"), vec![
            (one(), vec![t(i1), e(i), e(i1)]),
            (m1(), vec![ti(i), e(i1)]),
        ]));
        out.push(grel(format!("E{i1} T{i} E{i1}"), vec![
            (one(), vec![e(i1), t(i), e(i1)]),
            (-q(-1), vec![e(i1)]),
        ]));
        out.push(grel(format!("E{i} T{i1} E{i}"), vec![
            (one(), vec![e(i), t(i1), e(i)]),
            (q(1), vec![e(i)]),
        ]));
    }
    for i in 1..l.saturating_sub(2) {
        let (i1, i2) = (i + 1, i + 2);
        out.push(grel(format!("E{i} E{i2} T{i1} T{i}"), vec![
            (one(), vec![e(i), e(i2), t(i1), t(i)]),
            (one(), vec![e(i), e(i2), ti(i1), ti(i2)]),
        ]));
        out.push(grel(format!("T{i2} T{i1} E{i} E{i2}"), vec![
            (one(), vec![t(i2), t(i1), e(i), e(i2)]),
            (one(), vec![ti(i), ti(i1), e(i), e(i2)]),
        ]));
        out.push(grel(format!("E{i} T{i1} T{i2} T{i} T{i1} E{i}"), vec![
            (one(), vec![e(i), t(i1), t(i2), t(i), t(i1), e(i)]),
            (one(), vec![e(i), e(i2)]),
        ]));
    }
    out
}

fn gen_combination(terms: &[(LaurentScalar, Vec<Gen>)], l: usize) -> Result<AlgebraElement> {
    let mut acc = AlgebraElement::zero(l);
    for (c, w) in terms {
        acc.add_assign_scaled(&AlgebraElement::from_gens(w, l)?, c);
    }
    Ok(acc)
}

pub fn algebra_relation_suite(lmax: usize) -> Result<String> {
    let mut n = 0;
    for l in 2..=lmax {
        for r in algebra_relations(l) {
            let a = gen_combination(&r.terms, l)?;
            ensure(a.is_zero(), || format!("l={l}: {} leaves {a}", r.name))?;
            n += 1;
        }
    }
    Ok(format!("{n} relation instances, l <= {lmax}"))
}

pub fn m_basis_rank(lmax: usize) -> Result<String> {
    for l in 0..=lmax {
        let want = double_factorial(2 * l as i64 - 1);
        let n = m_indices(l).len() as u128;
        ensure(n == want, || format!("l={l}: {n} basis elements, expected {want}"))?;
        independent_at_one(l)?;
    }
    Ok(format!("l <= {lmax}"))
}

fn sigma_word(w: &[Gen]) -> (i64, Vec<Gen>) {
    let gens = w
        .iter()
        .rev()
        .map(|g| match g.kind {
            GenKind::T => Gen::t_inv(g.i),
            GenKind::TInv => Gen::t(g.i),
            GenKind::E => Gen::e(g.i),
        })
        .collect();
    let sign = if w.len() % 2 == 1 { -1 } else { 1 };
    (sign, gens)
}

fn random_gens(rng: &mut StdRng, l: usize, len: usize) -> Vec<Gen> {
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..l);
            match rng.gen_range(0..3) {
                0 => Gen::t(i),
                1 => Gen::t_inv(i),
                _ => Gen::e(i),
            }
        })
        .collect()
}

/// sigma reverses products and squares to the identity.
pub fn sigma_anti_involution(samples: usize, lmax: usize, seed: u64) -> Result<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let l = rng.gen_range(2..=lmax);
        let (la, lb) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let (wa, wb) = (random_gens(&mut rng, l, la), random_gens(&mut rng, l, lb));
        let a = AlgebraElement::from_gens(&wa, l)?;
        let b = AlgebraElement::from_gens(&wb, l)?;
        let ab = a.mul(&b)?;
        let lhs = sigma(&ab)?;
        let rhs = sigma(&b)?.mul(&sigma(&a)?)?;
        ensure(lhs == rhs, || format!("sigma(ab) != sigma(b) sigma(a) at l={l}"))?;
        let mut w = wa.clone();
        w.extend(wb.iter().copied());
        let (sign, sw) = sigma_word(&w);
        let direct = AlgebraElement::from_gens(&sw, l)?.scale(&int(sign));
        ensure(lhs == direct, || format!("sigma disagrees with its generator formula at l={l}"))?;
    }
    for l in 0..=lmax {
        let mb = MBasis::get(l);
        mb.entries.par_iter().try_for_each(|(ix, m)| {
            ensure(sigma(&sigma(m)?)? == *m, || format!("sigma^2 != 1 on {ix}"))
        })?;
    }
    Ok(format!("{samples} random pairs, sigma^2 on the basis, l <= {lmax}"))
}

/// x_i x_j = x_j x_i, and x_i commutes with the generators on the first i - 1 strands.
pub fn jm_commutativity(lmax: usize) -> Result<String> {
    for l in 1..=lmax {
        let xs: Vec<AlgebraElement> = (1..=l).map(|i| jm_element(i, l)).collect::<Result<_>>()?;
        for i in 1..=l {
            for j in i + 1..=l {
                ensure(right_mul_jm(&xs[i - 1], j) == right_mul_jm(&xs[j - 1], i), || {
                    format!("x{i} x{j} != x{j} x{i} at l={l}")
                })?;
            }
            for k in 1..i.saturating_sub(1) {
                for g in [Gen::t(k), Gen::e(k)] {
                    ensure(xs[i - 1].left_gens(&[g]) == xs[i - 1].right_gen(g), || {
                        format!("{g} does not commute with x{i} at l={l}")
                    })?;
                }
            }
        }
    }
    Ok(format!("l <= {lmax}"))
}

/// Products of generators with standard basis elements: modulo higher cells, left
/// multiplication changes only the left index, with coefficients independent of the
/// right index, and symmetrically on the right.
pub fn standard_congruence(lmax: usize) -> Result<String> {
    let mut n = 0;
    for l in 2..=lmax {
        let gens = crate::repmod::algebra_generators(l);
        for lambda in sigma_plus(l) {
            let ix = cell_indices(&lambda, l)?;
            let cells: Vec<Vec<AlgebraElement>> = ix
                .iter()
                .map(|&a| ix.iter().map(|&b| cell_element(&lambda, l, a, b)).collect())
                .collect::<Result<_>>()?;
            for &g in &gens {
                for left in [true, false] {
                    // Multiplying C_{a,b} by g on the left changes a and keeps b; the
                    // coefficients must not depend on the kept index.
                    for (oi, _) in ix.iter().enumerate() {
                        let mut first: Option<Vec<((usize, usize), LaurentScalar)>> = None;
                        for (vi, &v) in ix.iter().enumerate() {
                            let p = if left {
                                cells[oi][vi].left_gens(&[g])
                            } else {
                                cells[vi][oi].right_gen(g)
                            };
                            let mut row = Vec::new();
                            for ((x, y), coeff) in reduce_mod(&p, &lambda, l)? {
                                let (moved, kept) = if left { (x, y) } else { (y, x) };
                                ensure(kept == v, || {
                                    format!("{g} changes the wrong index of C^{lambda} at l={l}")
                                })?;
                                row.push((moved, coeff));
                            }
                            match &first {
                                None => first = Some(row),
                                Some(r) => ensure(*r == row, || {
                                    let side = if left { "left" } else { "right" };
                                    format!("{side} {g} on C^{lambda} at l={l} depends on the kept index")
                                })?,
                            }
                            n += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{n} products, l <= {lmax}"))
}

/// Products of basis elements agree with products of oracle matrices.
pub fn algebra_matches_oracle(lmax: usize, n: usize) -> Result<String> {
    let gm = GenMatrices::new(n)?;
    let mut count = 0;
    for l in 0..=lmax {
        let mb = MBasis::get(l);
        let mats: Vec<ExactMatrix> = mb
            .entries
            .par_iter()
            .map(|(_, a)| eval_morphism(&gm, &a.to_morphism()))
            .collect::<Result<_>>()?;
        let k = mb.entries.len();
        (0..k * k).into_par_iter().try_for_each(|p| {
            let (i, j) = (p / k, p % k);
            let prod = mb.entries[i].1.mul(&mb.entries[j].1)?;
            let want = mats[i].mul(&mats[j])?;
            ensure(eval_morphism(&gm, &prod.to_morphism())? == want, || {
                format!("l={l}: product {} * {} disagrees with the oracle", mb.entries[i].0, mb.entries[j].0)
            })
        })?;
        count += k * k;
    }
    Ok(format!("{count} products, l <= {lmax}, n = {n}"))
}

// ---------------------------------------------------------------- modules

pub fn murphy_cardinality(lmax: usize) -> Result<String> {
    for l in 0..=lmax {
        for lambda in sigma_plus(l) {
            // Construction inverts the transition to the Murphy elements exactly.
            let m = StandardModule::get(&lambda, l)?;
            let f = level(&lambda, l);
            let want = (coset_count(f, l) * hook_dim(&lambda)) as usize;
            let t = updown_tableaux(l, &lambda)?.len();
            ensure(m.dim() == want && t == want, || {
                format!("C({lambda}) at l={l}: dim {}, {t} tableaux, expected {want}", m.dim())
            })?;
        }
    }
    Ok(format!("l <= {lmax}"))
}

pub fn jm_triangularity(lmax: usize) -> Result<String> {
    let mut n = 0;
    for l in 1..=lmax {
        for lambda in sigma_plus(l) {
            for i in 1..=l {
                jm_action(i, &lambda, l)?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} matrices, l <= {lmax}"))
}

pub fn branching(lmax: usize) -> Result<String> {
    for l in 1..=lmax {
        for lambda in sigma_plus(l) {
            let dim = StandardModule::get(&lambda, l)?.dim();
            let layers = branching_filtration(&lambda, l)?;
            let mut sum = 0;
            for layer in &layers {
                ensure(layer.holds(), || format!("layer {} of C({lambda}) at l={l}: {layer:?}", layer.mu))?;
                sum += StandardModule::get(&layer.mu, l - 1)?.dim();
            }
            ensure(sum == dim, || format!("C({lambda}) at l={l}: dim {dim} != {sum}"))?;
        }
    }
    Ok(format!("l <= {lmax}"))
}

/// The form does not depend on the outer indices of the products defining it.
pub fn gram_consistency(lmax: usize) -> Result<String> {
    let mut n = 0;
    for l in 0..=lmax {
        for lambda in sigma_plus(l) {
            let g = gram_matrix(&lambda, l)?;
            let ix = cell_indices(&lambda, l)?;
            for &a in &ix {
                for &b in &ix {
                    ensure(gram_matrix_with(&lambda, l, a, b)? == g, || {
                        format!("form of C({lambda}) at l={l} changes with outer indices {a:?} {b:?}")
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} outer index pairs, l <= {lmax}"))
}

pub fn hecke_layer_semisimple(lmax: usize) -> Result<String> {
    for l in 0..=lmax {
        for lambda in partitions(l) {
            let r = radical_rank(&lambda, l)?;
            ensure(r == 0, || format!("C({lambda}) at l={l} has radical rank {r}"))?;
        }
    }
    Ok(format!("l <= {lmax}"))
}

pub fn restriction(lmax: usize) -> Result<String> {
    for l in 2..=lmax {
        for lambda in partitions(l - 2) {
            let r = restriction_dims(&lambda);
            ensure(r.holds(), || format!("{lambda} at l={l}: {r:?}"))?;
        }
    }
    Ok(format!("l <= {lmax}"))
}

// ---------------------------------------------------------------- blocks

pub fn block_consistency(lmax: usize) -> Result<String> {
    for l in 0..=lmax {
        block_report(l)?.check()?;
    }
    Ok(format!("l <= {lmax}"))
}

pub fn linkage_necessity(lmax: usize) -> Result<String> {
    for l in 0..=lmax {
        let labels = sigma_plus(l);
        for a in &labels {
            for b in &labels {
                if two_core(a) != two_core(b) {
                    ensure(!residue_linked(a, b, l)?.linked, || {
                        format!("{a} and {b} are linked at l={l} with different 2-cores")
                    })?;
                }
            }
        }
    }
    Ok(format!("l <= {lmax}"))
}

pub fn simple_label_counts(lmax: usize) -> Result<String> {
    for l in 0..=lmax {
        let n = simple_labels(l).len();
        ensure(n == simple_label_count(l), || format!("l={l}: {n} simple labels"))?;
    }
    Ok(format!("l <= {lmax}"))
}

/// Linkage classes next to the blocks, for reports.
pub fn linkage_summary(l: usize) -> Result<String> {
    let r = block_report(l)?;
    Ok(format!(
        "blocks {} / linkage {}",
        show_classes(&r.blocks.iter().map(|b| b.members.clone()).collect::<Vec<_>>()),
        show_classes(&r.linkage_classes)
    ))
}

// ---------------------------------------------------------------- suite

/// Options of the full suite. Each check runs at `min(l, its own scale)`.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub l: usize,
    /// Oracle rank for the random word sweep.
    pub n: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { l: 6, n: 4, seed: 1 }
    }
}

type Job = (&'static str, Box<dyn Fn() -> Result<String> + Send + Sync>);

fn jobs(o: &SuiteOptions) -> Vec<Job> {
    let l = o.l;
    let s = o.seed;
    let n = o.n;
    let at = move |cap: usize| l.min(cap);
    vec![
        ("coeff.residue_identities", Box::new(|| residue_identities(20))),
        ("coeff.ring_axioms", Box::new(move || ring_axioms(1000, s))),
        ("combin.updown_counts", Box::new(move || updown_counts(7))),
        ("combin.dimension_identity", Box::new(move || dimension_identity(8))),
        ("combin.branching_counts", Box::new(move || branching_counts(7))),
        ("combin.sharp_matches_core", Box::new(|| sharp_matches_core(8))),
        ("combin.two_core_confluent", Box::new(|| two_core_confluent(8))),
        ("tanglecat.hom_dimensions", Box::new(|| hom_dimensions(12))),
        ("tanglecat.confluence", Box::new(move || confluence_audit(500, 8, s))),
        ("tanglecat.relations", Box::new(move || category_relation_suite(at(5).saturating_sub(1)))),
        ("tanglecat.associativity_interchange", Box::new(move || associativity_interchange(100, s))),
        ("tanglecat.oracle_agreement", Box::new(move || engine_matches_oracle(200, n, 6, s))),
        ("oracle.relations_n2", Box::new(|| oracle_relations(2))),
        ("oracle.relations_n3", Box::new(|| oracle_relations(3))),
        ("oracle.faithful", Box::new(move || oracle_faithful(at(3), 3))),
        ("pqbrauer.relations", Box::new(move || algebra_relation_suite(at(5)))),
        ("pqbrauer.m_basis_rank", Box::new(move || m_basis_rank(at(6)))),
        ("pqbrauer.sigma", Box::new(move || sigma_anti_involution(200, at(4).max(2), s))),
        ("pqbrauer.jm_commute", Box::new(move || jm_commutativity(at(5)))),
        ("pqbrauer.standard_congruence", Box::new(move || standard_congruence(at(4)))),
        ("pqbrauer.oracle_agreement", Box::new(move || algebra_matches_oracle(at(3), 3))),
        ("repmod.murphy_cardinality", Box::new(move || murphy_cardinality(at(5)))),
        ("repmod.jm_triangularity", Box::new(move || jm_triangularity(at(5)))),
        ("repmod.branching", Box::new(move || branching(at(5)))),
        ("repmod.gram_consistency", Box::new(move || gram_consistency(at(4)))),
        ("repmod.hecke_layer_semisimple", Box::new(move || hecke_layer_semisimple(at(5)))),
        ("repmod.restriction", Box::new(move || restriction(at(6)))),
        ("blocks.consistency", Box::new(move || block_consistency(at(5)))),
        ("blocks.linkage_necessity", Box::new(move || linkage_necessity(at(5)))),
        ("blocks.simple_label_counts", Box::new(|| simple_label_counts(8))),
    ]
}

/// Names of all checks, in report order.
pub fn check_names() -> Vec<&'static str> {
    jobs(&SuiteOptions::default()).into_iter().map(|(n, _)| n).collect()
}

/// Runs every check in parallel; the report keeps the fixed order.
pub fn run_suite(o: &SuiteOptions) -> Vec<Check> {
    run_selected(o, |_| true)
}

/// Runs the checks whose name passes `keep`.
pub fn run_selected(o: &SuiteOptions, keep: impl Fn(&str) -> bool) -> Vec<Check> {
    let jobs: Vec<Job> = jobs(o).into_iter().filter(|(n, _)| keep(n)).collect();
    jobs.into_par_iter().map(|(name, f)| run(name, f)).collect()
}

/// Sorted (name -> pass) map, for quick lookups.
pub fn summary(checks: &[Check]) -> BTreeMap<String, bool> {
    checks.iter().map(|c| (c.name.clone(), c.passed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_in_the_engine_and_the_oracle() {
        category_relation_suite(1).unwrap();
        oracle_relations(2).unwrap();
        algebra_relation_suite(4).unwrap();
    }

    #[test]
    fn random_words_have_the_requested_shape() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let (m, s) = random_shape(&mut rng, 6);
            let len = rng.gen_range(0..8);
            let w = random_word(&mut rng, m, s, len, 6);
            assert_eq!((w.m, w.target().unwrap()), (m, s));
            assert!(w.max_width() <= 6);
        }
    }

    #[test]
    fn small_scale_suite() {
        let o = SuiteOptions { l: 2, n: 2, seed: 7 };
        for c in run_suite(&o) {
            if c.name == "blocks.consistency" {
                continue;
            }
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
