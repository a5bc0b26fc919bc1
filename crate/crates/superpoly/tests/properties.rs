use num_bigint::BigInt;
use proptest::prelude::*;

use superpoly::laurent::{SignedMono, Substitution, YExpansion};
use superpoly::stable::{stable_homfly, stable_super};
use superpoly::Poly3;

fn poly() -> impl Strategy<Value = Poly3> {
    prop::collection::vec(((-3i64..=3, -4i64..=4, -3i64..=3), -5i64..=5), 0..6)
        .prop_map(|terms| Poly3::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn nonzero_poly() -> impl Strategy<Value = Poly3> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn signed_mono() -> impl Strategy<Value = SignedMono> {
    (prop::bool::ANY, (-2i64..=2, -2i64..=2, -2i64..=2))
        .prop_map(|(neg, e)| SignedMono::new(if neg { -1 } else { 1 }, e))
}

proptest! {
    #[test]
    fn ring_axioms(x in poly(), y in poly(), z in poly()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &x), &Poly3::zero());
        prop_assert_eq!(&x * &Poly3::one(), x.clone());
    }

    #[test]
    fn divide_round_trip(x in poly(), d in nonzero_poly()) {
        let prod = &x * &d;
        prop_assert_eq!(prod.exact_divide(&d).unwrap(), x);
    }

    #[test]
    fn substitution_is_a_ring_map(x in poly(), y in poly(), a in signed_mono(), q in signed_mono(), t in signed_mono()) {
        let s = Substitution { a, q, t };
        prop_assert_eq!((&x * &y).substitute(&s), &x.substitute(&s) * &y.substitute(&s));
        prop_assert_eq!((&x + &y).substitute(&s), &x.substitute(&s) + &y.substitute(&s));
    }

    #[test]
    fn canonical_text_round_trip(x in poly()) {
        let text = x.to_string();
        let back: Poly3 = text.parse().unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn y_rewrite_round_trip(terms in prop::collection::vec(((-3i64..=3, -3i64..=3, 0u32..=3), -4i64..=4), 0..5)) {
        let mut e = YExpansion::default();
        for ((i, j, g), c) in terms {
            if c != 0 {
                *e.coeffs.entry((i, j, g)).or_default() += c;
            }
        }
        e.coeffs.retain(|_, c| *c != BigInt::from(0));
        let p = e.reconstruct();
        let back = p.y_rewrite().unwrap();
        prop_assert_eq!(back.reconstruct(), p);
        prop_assert_eq!(back, e);
    }

    #[test]
    fn mirror_is_an_involution(x in poly()) {
        prop_assert_eq!(x.mirror().mirror(), x.clone());
        prop_assert_eq!(x.mirror(), x.substitute(&Substitution::mirror()));
    }
}

#[test]
fn stable_super_specializes_for_small_n() {
    for n in 2..=6 {
        for qmax in [0, 7, 30, 60] {
            assert_eq!(
                stable_super(n, qmax).unwrap().body.at_t_minus_one(),
                stable_homfly(n, qmax).unwrap().body,
                "n={n} qmax={qmax}"
            );
        }
    }
}
