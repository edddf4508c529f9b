use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use pqb_core::coeff::{residue_add, residue_remove};
use pqb_core::combin::{domino_removals, partitions, two_core, Partition};
use pqb_core::pqbrauer::mbasis::sigma;
use pqb_core::pqbrauer::{AlgebraElement, Gen};
use pqb_core::tanglecat::{compose, normal_form, tensor, Morphism, TangleWord};
use pqb_core::verify::random_word;
use pqb_core::LaurentScalar;

fn laurent() -> impl Strategy<Value = LaurentScalar> {
    prop::collection::vec((-30i64..=30, -6i64..=6), 0..5).prop_map(|ts| {
        ts.into_iter()
            .fold(LaurentScalar::zero(), |a, (c, k)| &a + &LaurentScalar::monomial(c, k))
    })
}

fn partition() -> impl Strategy<Value = Partition> {
    (0usize..=9).prop_flat_map(|n| {
        let ps = partitions(n);
        (0..ps.len()).prop_map(move |i| ps[i].clone())
    })
}

fn gens(l: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec((0usize..3, 1..l), 0..5).prop_map(|v| {
        v.into_iter()
            .map(|(k, i)| match k {
                0 => Gen::t(i),
                1 => Gen::t_inv(i),
                _ => Gen::e(i),
            })
            .collect()
    })
}

/// A random word from m to s together with a split point.
fn word(max: usize) -> impl Strategy<Value = (TangleWord, usize)> {
    (0..=max, 0..=max, 0usize..7, any::<u64>(), any::<prop::sample::Index>()).prop_filter_map(
        "parity",
        move |(m, s, len, seed, cut)| {
            if (m + s) % 2 == 1 {
                return None;
            }
            let w = random_word(&mut StdRng::seed_from_u64(seed), m, s, len, max + 2);
            let k = cut.index(w.slices.len() + 1);
            Some((w, k))
        },
    )
}

fn split(w: &TangleWord, k: usize) -> (TangleWord, TangleWord) {
    let low = TangleWord::new(w.m, w.slices[..k].to_vec()).unwrap();
    let mid = low.target().unwrap();
    (low, TangleWord::new(mid, w.slices[k..].to_vec()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).at_one().to_big(), a.at_one().to_big() * b.at_one().to_big());
    }

    #[test]
    fn laurent_division_and_text(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a.clone());
        prop_assert_eq!(a.to_string().parse::<LaurentScalar>().unwrap(), a.clone());
        prop_assert_eq!(LaurentScalar::from_json(&a.to_json()).unwrap(), a.clone());
    }

    #[test]
    fn residues(c in -40i64..=40) {
        let qd = LaurentScalar::qdiff();
        prop_assert_eq!(&qd * &residue_add(c), &LaurentScalar::q_pow(2 * c) - &LaurentScalar::one());
        prop_assert_eq!(residue_remove(c + 1), residue_add(c));
        prop_assert_eq!(residue_add(c).at_one().to_i64(), Some(c));
    }

    #[test]
    fn partition_laws(p in partition()) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
        prop_assert_eq!(Partition::from_json(&p.to_json()).unwrap(), p.clone());
        let core = two_core(&p);
        prop_assert_eq!(core.size() % 2, p.size() % 2);
        for r in domino_removals(&p) {
            prop_assert_eq!(r.size() + 2, p.size());
            prop_assert_eq!(two_core(&r), core.clone());
        }
    }

    #[test]
    fn normal_form_respects_composition((w, k) in word(4)) {
        let (low, high) = split(&w, k);
        let whole = normal_form(&w).unwrap();
        let parts = compose(&normal_form(&high).unwrap(), &normal_form(&low).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn identities_are_units((w, _) in word(3), n in 0usize..3) {
        let f = normal_form(&w).unwrap();
        let s = w.target().unwrap();
        prop_assert_eq!(compose(&Morphism::identity(s), &f).unwrap(), f.clone());
        prop_assert_eq!(compose(&f, &Morphism::identity(w.m)).unwrap(), f.clone());
        let wide = tensor(&f, &Morphism::identity(n)).unwrap();
        let expect = normal_form(&w.tensor(&TangleWord::new(n, vec![]).unwrap())).unwrap();
        prop_assert_eq!(wide, expect);
    }

    #[test]
    fn sigma_reverses_products(a in gens(3), b in gens(3)) {
        let (x, y) = (AlgebraElement::from_gens(&a, 3).unwrap(), AlgebraElement::from_gens(&b, 3).unwrap());
        let lhs = sigma(&x.mul(&y).unwrap()).unwrap();
        let rhs = sigma(&y).unwrap().mul(&sigma(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(sigma(&sigma(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn algebra_is_associative(a in gens(4), b in gens(4), c in gens(4)) {
        let el = |g: &[Gen]| AlgebraElement::from_gens(g, 4).unwrap();
        let (x, y, z) = (el(&a), el(&b), el(&c));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.right_gens(&b), x.mul(&y).unwrap());
        prop_assert_eq!(y.left_gens(&a), x.mul(&y).unwrap());
    }
}
