//! Polynomial and Laurent polynomial rings over the rationals, Gröbner bases
//! and finite-dimensional quotients.

mod groebner;
mod laurent;
mod poly;
mod quotient;

pub use groebner::{groebner_basis, normal_form, saturate_by_monomial, GbLimits};
pub use laurent::LaurentPoly;
pub use poly::{divides, reduce, Monomial, MonomialOrder, Poly};
pub use quotient::{ideal_membership, laurent_quotient_basis, LaurentQuotient, Quotient, QuotientDim};

#[cfg(test)]
mod props {
    use super::*;
    use crate::linalg::rat;
    use proptest::prelude::*;

    fn poly2() -> impl Strategy<Value = Poly> {
        prop::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 0..5).prop_map(|ts| {
            Poly::from_terms(2, ts.into_iter().map(|((a, b), c)| (vec![a, b], rat(c))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn normal_form_is_linear_idempotent_multiplicative(
            gens in prop::collection::vec(poly2(), 1..3), f in poly2(), g in poly2(), c in -3i64..=3
        ) {
            let o = MonomialOrder::GrevLex;
            let gb = groebner_basis(&gens, o, GbLimits::default()).unwrap();
            let nf = |p: &Poly| normal_form(p, &gb, o);
            prop_assert_eq!(nf(&nf(&f)), nf(&f));
            let lin = &f.scale(&rat(c)) + &g;
            prop_assert_eq!(nf(&lin), &nf(&f).scale(&rat(c)) + &nf(&g));
            prop_assert_eq!(nf(&(&f * &g)), nf(&(&nf(&f) * &nf(&g))));
            for h in &gens {
                prop_assert!(nf(h).is_zero());
            }
        }

        #[test]
        fn saturation_contains_ideal(gens in prop::collection::vec(poly2(), 1..3)) {
            let sat = saturate_by_monomial(&gens, &[1, 1], GbLimits::default()).unwrap();
            for h in &gens {
                prop_assert!(normal_form(h, &sat, MonomialOrder::GrevLex).is_zero());
            }
        }
    }
}
