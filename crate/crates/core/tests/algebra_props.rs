use orbclass_core::algebra::{
    rat, symmetrize, LinearForm, Polynomial, Rational, RationalTerm, RationalTermSum,
    Variables,
};
use proptest::prelude::*;

const G: Variables = Variables::Gl2;

fn coef() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly(vars: Variables, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    let arity = vars.arity();
    prop::collection::vec((prop::collection::vec(0..=max_deg, arity), coef()), 0..5)
        .prop_map(move |terms| Polynomial::from_terms(vars, terms).unwrap())
}

fn nonzero_poly(vars: Variables, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    poly(vars, max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn form() -> impl Strategy<Value = LinearForm> {
    (-3i64..=3, -3i64..=3)
        .prop_filter("nonzero form", |(a, b)| *a != 0 || *b != 0)
        .prop_map(|(a, b)| LinearForm::from_integers(G, &[a, b]))
}

fn term() -> impl Strategy<Value = RationalTerm> {
    (coef(), poly(G, 2), prop::collection::vec((form(), 1u32..=3), 0..3)).prop_map(
        |(c, num, factors)| RationalTerm::new(c, num, factors).unwrap(),
    )
}

fn points() -> impl Strategy<Value = Vec<[Rational; 2]>> {
    prop::collection::vec((coef(), coef()).prop_map(|(a, b)| [a, b]), 10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(Variables::Torus(3), 2), b in poly(Variables::Torus(3), 2), c in poly(Variables::Torus(3), 2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_inverts_product(p in poly(G, 3), q in nonzero_poly(G, 3)) {
        let prod = &p * &q;
        prop_assert_eq!(prod.exact_divide(&q).unwrap(), p);
    }

    #[test]
    fn sum_terms_agrees_pointwise(ts in prop::collection::vec(term(), 1..4), pts in points()) {
        let s = RationalTermSum::from_terms(G, ts).unwrap();
        let combined = s.sum_terms();
        for p in pts {
            if let Some(v) = s.evaluate(&p) {
                prop_assert_eq!(combined.evaluate(&p), Some(v));
            }
        }
    }

    #[test]
    fn symmetrize_is_swap_invariant(t in term(), pts in points()) {
        let s = symmetrize(&t).unwrap().sum_terms();
        let swapped = s.swap_vars(0, 1);
        for p in pts {
            if let (Some(x), Some(y)) = (s.evaluate(&p), swapped.evaluate(&p)) {
                prop_assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn specialize_equal_is_substitution(deg in 0u32..5, coeffs in prop::collection::vec(coef(), 5), scale in coef(), t in coef()) {
        // a homogeneous polynomial of degree `deg`
        let p = Polynomial::from_terms(
            G,
            (0..=deg).zip(coeffs.iter().cycle()).map(|(i, c)| (vec![i, deg - i], c.clone())),
        )
        .unwrap();
        let (c, power) = p.specialize_equal(&scale).unwrap();
        prop_assert_eq!(power, deg);
        let at = &t * &scale;
        let direct = p.evaluate(&[at.clone(), at]);
        prop_assert_eq!(direct, c * num_traits::pow(t, power as usize));
    }

    #[test]
    fn substitution_is_a_ring_map(a in poly(G, 2), b in poly(G, 2), n in 0i64..4) {
        let images = [
            LinearForm::from_integers(G, &[1 + n, n]),
            LinearForm::from_integers(G, &[n, 1 + n]),
        ];
        let lhs = (&a * &b).substitute(&images).unwrap();
        let rhs = &a.substitute(&images).unwrap() * &b.substitute(&images).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn identity_substitution() {
    let v1 = Polynomial::var(G, 0);
    let id = [LinearForm::from_integers(G, &[1, 0]), LinearForm::from_integers(G, &[0, 1])];
    assert_eq!(v1.substitute(&id).unwrap(), v1);
}
