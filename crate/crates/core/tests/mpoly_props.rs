mod common;

use idealdec::arith::{PrimeField, Rationals, UniPoly};
use idealdec::groebner::{eliminate, Ideal};
use idealdec::factor::factor_univariate_q;
use idealdec::mpoly::{
    apply_coord_change, apply_inverse_coord_change, parse_poly, resultant, CoordChange, MultiPoly, TermOrder,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_poly;

fn poly(seed: u64, n: usize, deg: u32) -> MultiPoly<Rationals> {
    random_poly(&mut ChaCha8Rng::seed_from_u64(seed), n, deg, 4, 9)
}

fn orders() -> Vec<TermOrder> {
    vec![TermOrder::DegLex, TermOrder::DegRevLex, TermOrder::elimination([0])]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), n in 1usize..=3) {
        let (f, g, h) = (poly(a, n, 3), poly(b, n, 2), poly(c, n, 2));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &MultiPoly::one(Rationals, n), f.clone());
        prop_assert_eq!((&f * &g).total_degree(), f.total_degree() + g.total_degree());
    }

    #[test]
    fn leading_monomial_is_multiplicative(a in any::<u64>(), b in any::<u64>(), n in 1usize..=3) {
        let (f, g) = (poly(a, n, 3), poly(b, n, 3));
        for ord in orders() {
            let lm = f.leading_monomial(&ord).unwrap().mul(&g.leading_monomial(&ord).unwrap());
            prop_assert_eq!((&f * &g).leading_monomial(&ord).unwrap(), lm);
        }
    }

    #[test]
    fn exact_division_recovers_factor(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (poly(a, 3, 2), poly(b, 3, 3));
        prop_assert_eq!((&f * &g).div_exact(&g), Some(f));
    }

    #[test]
    fn coordinate_change_round_trip(a in any::<u64>(), s in any::<u64>(), bound in 1i64..=10) {
        let f = poly(a, 3, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let c = loop {
            let c = CoordChange::random(3, bound, true, &mut rng);
            if c.determinant() != 0.into() {
                break c;
            }
        };
        let g = apply_coord_change(&f, &c).unwrap();
        prop_assert_eq!(g.total_degree(), f.total_degree());
        prop_assert_eq!(apply_inverse_coord_change(&g, &c).unwrap(), f);
    }

    #[test]
    fn resultant_vanishes_on_common_roots(a in any::<u64>(), b in any::<u64>()) {
        // f and g share the factor (X - Y), so their resultant in X vanishes
        let v = ["X", "Y", "Z"];
        let common = parse_poly("X - Y", &v).unwrap();
        let f = &common * &poly(a, 3, 1);
        let g = &common * &poly(b, 3, 2);
        prop_assert!(resultant(&f, &g, 0).unwrap().is_zero());
    }

    #[test]
    fn resultant_reduces_mod_p(a in any::<u64>(), b in any::<u64>()) {
        // with leading coefficients in X kept, reduction commutes with the resultant
        let v = ["X", "Y", "Z"];
        let f = &parse_poly("X^2", &v).unwrap() + &poly(a, 3, 1);
        let g = &parse_poly("X^3", &v).unwrap() + &poly(b, 3, 2);
        let p = PrimeField::new(32003).unwrap();
        let red = |h: &MultiPoly<Rationals>| h.map_coeffs(p, |c| p.from_rational(c).unwrap());
        let r = resultant(&f, &g, 0).unwrap();
        prop_assert_eq!(resultant(&red(&f), &red(&g), 0).unwrap(), red(&r));
    }
}

/// Squarefree part of a polynomial in Y only, monic.
fn radical_in_y(f: &MultiPoly<Rationals>) -> UniPoly<Rationals> {
    let u = f.to_upoly(1).expect("only Y");
    factor_univariate_q(&u).factors.iter().fold(UniPoly::one(Rationals), |acc, (g, _)| &acc * g).monic()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resultant_and_elimination_agree(a in any::<u64>(), b in any::<u64>()) {
        // two plane curves: eliminating X from (f, g) in Q[X, Y] gives the
        // same radical as their resultant
        let v = ["X", "Y"];
        let f = &parse_poly("X^2", &v).unwrap() + &poly(a, 2, 1);
        let g = &parse_poly("X^2 + Y^2", &v).unwrap() + &poly(b, 2, 1);
        let r = resultant(&f, &g, 0).unwrap();
        prop_assume!(!r.is_zero() && !r.is_constant());
        let idl = Ideal::new(Rationals, 2, vec![f, g]).unwrap();
        let elim = eliminate(&idl, &[0]).unwrap();
        prop_assert_eq!(elim.len(), 1);
        prop_assert_eq!(radical_in_y(&elim[0]), radical_in_y(&r));
    }
}
