use proptest::prelude::*;

use clifford_mackey::characters::{decompose, irreps, restricted_kronecker, tensor_character};
use clifford_mackey::clifford::{xi, CliffordElement, Sign, Subset};
use clifford_mackey::orbits::{orbit_of, predicted_orbit};
use clifford_mackey::spherical::{
    spherical_closed_form, spherical_value, subset_sum_lemma, SphericalQuery,
};
use clifford_mackey::{
    CliffordGroup, GaussianRational, IrrepLabel, TripleElement, TripleIrrepLabel,
};
use std::sync::Arc;

fn element(n: u32) -> impl Strategy<Value = CliffordElement> {
    (any::<bool>(), 0u32..(1 << n)).prop_map(move |(neg, bits)| {
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        CliffordElement::new(n, sign, Subset::from_bits(bits)).unwrap()
    })
}

fn degree_and<T: std::fmt::Debug, S: Strategy<Value = T>>(
    max: u32,
    f: impl Fn(u32) -> S + Clone + 'static,
) -> impl Strategy<Value = (u32, T)> {
    (0..=max).prop_flat_map(move |n| (Just(n), f(n)))
}

fn label(n: u32) -> impl Strategy<Value = IrrepLabel> {
    let all = irreps(n).unwrap();
    (0..all.len()).prop_map(move |i| all[i])
}

fn rat(x: i64, y: i64) -> GaussianRational {
    GaussianRational::from_ints(x, y)
}

proptest! {
    #[test]
    fn associativity((_, (x, y, z)) in degree_and(16, |n| (element(n), element(n), element(n)))) {
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_law((n, x) in degree_and(16, element)) {
        prop_assert!(x.multiply(&x.inverse()).unwrap().is_identity());
        prop_assert!(x.inverse().multiply(&x).unwrap().is_identity());
        prop_assert_eq!(x.inverse().inverse(), x);
        prop_assert_eq!(x.degree(), n);
    }

    #[test]
    fn conjugation_rule((_, (x, c)) in degree_and(16, |n| (element(n), element(n)))) {
        let (a, s) = (x.subset(), c.subset());
        let flips = (a.len() * s.len() + a.intersection(s).len()) % 2 == 1;
        let expected = if flips { x.negate() } else { x };
        prop_assert_eq!(x.conjugate_by(&c).unwrap(), expected);
        let composed = c.inverse().multiply(&x).unwrap().multiply(&c).unwrap();
        prop_assert_eq!(composed, expected);
    }

    #[test]
    fn commutation_sign((n, (a, b)) in degree_and(16, |n| (0u32..(1 << n), 0u32..(1 << n)))) {
        let (a, b) = (Subset::from_bits(a), Subset::from_bits(b));
        let ga = CliffordElement::gamma(n, a).unwrap();
        let gb = CliffordElement::gamma(n, b).unwrap();
        let ab = ga.multiply(&gb).unwrap();
        let ba = gb.multiply(&ga).unwrap();
        let anti = (a.len() * b.len() + a.intersection(b).len()) % 2 == 1;
        prop_assert_eq!(ab, if anti { ba.negate() } else { ba });
        prop_assert_eq!((xi(a, b) + xi(b, a)) % 2, (a.len() * b.len() + a.intersection(b).len()) % 2);
    }

    #[test]
    fn element_syntax_round_trips((n, x) in degree_and(16, element)) {
        let text = x.to_string();
        prop_assert_eq!(CliffordElement::parse(&text, n).unwrap(), x);
        prop_assert_eq!(CliffordElement::from_index(n, x.index()).unwrap(), x);
    }

    #[test]
    fn characters_are_class_functions(
        (_, (l, x, c)) in degree_and(12, |n| (label(n), element(n), element(n)))
    ) {
        let y = x.conjugate_by(&c).unwrap();
        prop_assert_eq!(l.value(&x).unwrap(), l.value(&y).unwrap());
        let minus = l.value(&x.negate()).unwrap();
        let expected = if l.is_linear() { l.value(&x).unwrap() } else { -l.value(&x).unwrap() };
        prop_assert_eq!(minus, expected);
        prop_assert_eq!(l.dual().value(&x).unwrap(), l.value(&x).unwrap().conj());
    }

    #[test]
    fn linear_characters_are_homomorphisms(
        (n, (a, x, y)) in degree_and(16, |n| (0u32..(1 << n), element(n), element(n)))
    ) {
        let l = IrrepLabel::one_dim(n, Subset::from_bits(a)).unwrap();
        let xy = x.multiply(&y).unwrap();
        prop_assert_eq!(l.value(&xy).unwrap(), l.value(&x).unwrap() * l.value(&y).unwrap());
    }

    #[test]
    fn field_axioms(a in (-9i64..9, -9i64..9), b in (-9i64..9, -9i64..9), c in (-9i64..9, -9i64..9)) {
        let (x, y, z) = (rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1));
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
        if let Some(inv) = y.inv() {
            prop_assert_eq!(x * y * inv, x);
        } else {
            prop_assert!(y.is_zero());
        }
        let shown = x.to_string();
        prop_assert_eq!(shown.parse::<GaussianRational>().unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decompositions_keep_dimensions((n, (a, b)) in degree_and(7, |n| (label(n), label(n)))) {
        let g = Arc::new(CliffordGroup::new(n).unwrap());
        let d = decompose(&tensor_character(&g, &a, &b).unwrap()).unwrap();
        prop_assert_eq!(d.dimension(), a.dim() * b.dim());
        if n >= 1 {
            let h = Arc::new(CliffordGroup::new(n - 1).unwrap());
            let r = restricted_kronecker(&g, &h, &a, &b).unwrap();
            prop_assert_eq!(r.dimension(), a.dim() * b.dim());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn predicted_orbits_large((_, (x, y)) in (6u32..=7).prop_flat_map(|n| (Just(n), (element(n), element(n))))) {
        prop_assert_eq!(predicted_orbit(&(x, y)).unwrap(), orbit_of(&(x, y)).unwrap());
    }

    #[test]
    fn spherical_closed_forms_large(
        (_, (a, b, c, g1, g2, h)) in (5u32..=6).prop_flat_map(|n| {
            (Just(n), (label(n), label(n), label(n), element(n), element(n), element(n)))
        })
    ) {
        let labels = TripleIrrepLabel::new(a, b, c).unwrap();
        let q = SphericalQuery::new(labels, TripleElement { g1, g2, h }).unwrap();
        let cf = spherical_closed_form(&q);
        prop_assert_eq!(cf.value, spherical_value(&q), "{}", q);
    }
}

// Labels drawn uniformly from all irreps rarely hit the small families, so
// sample those directly.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn spherical_closed_forms_analyzed_families(
        (_, (family, a, b, s2, s3, g1, g2, h)) in (5u32..=6).prop_flat_map(|n| {
            let spin = IrrepLabel::spinors(n).unwrap();
            let k = spin.len();
            let inner = (0u8..3, 0u32..(1 << n), 0u32..(1 << n), 0..k, 0..k, element(n), element(n), element(n))
                .prop_map(move |(f, a, b, i, j, g1, g2, h)| (f, a, b, spin[i], spin[j], g1, g2, h));
            (Just(n), inner)
        })
    ) {
        let n = g1.degree();
        let chi = |s: u32| IrrepLabel::one_dim(n, Subset::from_bits(s)).unwrap();
        let labels = match family {
            0 => TripleIrrepLabel::new(chi(a), s2, s3),
            1 => TripleIrrepLabel::new(chi(a), chi(b), s3),
            _ => TripleIrrepLabel::new(s2, s3, s2),
        }
        .unwrap();
        // Aim the points at the non-vanishing cases of χ⊠ρ⊠ρ half of the time.
        let h = if a % 2 == 0 {
            let t = if b % 2 == 0 { g2.subset() } else { g2.subset().complement(n) };
            CliffordElement::new(n, h.sign(), t).unwrap()
        } else {
            h
        };
        let q = SphericalQuery::new(labels, TripleElement { g1, g2, h }).unwrap();
        let cf = spherical_closed_form(&q);
        prop_assert!(cf.analyzed);
        prop_assert_eq!(cf.value, spherical_value(&q), "{}", q);
    }
}

#[test]
fn subset_sum_lemma_exhaustive() {
    for n in 0..=10 {
        for u in Subset::all(n) {
            assert_eq!(subset_sum_lemma(u, n).unwrap(), i64::from(u.is_empty()));
        }
    }
}
