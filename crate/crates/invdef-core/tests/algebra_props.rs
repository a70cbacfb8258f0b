use invdef_core::algebra::{rational, Monomial, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;
use std::cmp::Ordering;

const N: usize = 3;

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, N).prop_map(|e| Monomial::from_exps(&e))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(), -6i64..7, 1i64..4), 0..6).prop_map(|ts| {
        Polynomial::from_terms(ts.into_iter().map(|(m, n, d)| (m, rational::frac(n, d))))
    })
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::GrevLex),
        prop::collection::vec(1i64..5, N).prop_map(MonomialOrder::WeightGrevLex),
        prop::collection::vec(any::<bool>(), N).prop_map(MonomialOrder::Elimination),
    ]
}

fn ring() -> Ring {
    Ring::new(&["x", "y", "z"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_a_group(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &Polynomial::zero(), a.clone());
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &Polynomial::one(N), a.clone());
        prop_assert!((&a * &Polynomial::zero()).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn degrees_add_under_products(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(
            (&a * &b).total_degree().unwrap(),
            a.total_degree().unwrap() + b.total_degree().unwrap()
        );
    }

    #[test]
    fn pow_matches_repeated_product(a in poly(), e in 0u32..4) {
        let mut acc = Polynomial::one(N);
        for _ in 0..e {
            acc = &acc * &a;
        }
        prop_assert_eq!(a.pow(e, N), acc);
    }

    #[test]
    fn format_then_parse_is_identity(a in poly()) {
        let r = ring();
        let s = r.format(&a);
        prop_assert_eq!(r.parse(&s).unwrap(), a);
    }

    #[test]
    fn homogeneous_parts_sum_back(a in poly(), w in prop::collection::vec(1i64..4, N)) {
        let parts = a.homogeneous_parts(&w);
        let mut acc = Polynomial::zero();
        for (deg, p) in &parts {
            prop_assert_eq!(p.weight(&w), Some(*deg));
            acc = &acc + p;
        }
        prop_assert_eq!(acc, a);
    }

    #[test]
    fn orders_are_total(o in order(), a in monomial(), b in monomial()) {
        let ab = o.cmp(&a, &b);
        prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }

    #[test]
    fn orders_are_transitive(o in order(), a in monomial(), b in monomial(), c in monomial()) {
        if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
            prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn orders_are_multiplicative(o in order(), a in monomial(), b in monomial(), c in monomial()) {
        prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
    }

    #[test]
    fn one_is_the_smallest_monomial(o in order(), a in monomial()) {
        prop_assert_ne!(o.cmp(&Monomial::one(N), &a), Ordering::Greater);
    }

    #[test]
    fn leading_term_of_product(o in order(), a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let la = a.leading(&o).unwrap().0.clone();
        let lb = b.leading(&o).unwrap().0.clone();
        let ab = &a * &b;
        prop_assert_eq!(&ab.leading(&o).unwrap().0, &la.mul(&lb));
    }

    #[test]
    fn monomial_division_and_lcm(a in monomial(), b in monomial()) {
        let l = a.lcm(&b);
        let g = a.gcd(&b);
        prop_assert!(a.divides(&l) && b.divides(&l));
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert_eq!(l.mul(&g), a.mul(&b));
        prop_assert_eq!(a.div(&a.mul(&b)), Some(b.clone()));
    }
}
