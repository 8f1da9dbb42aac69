use cgk_core::diffop::{CoefPoly, DiffOp, Var, VarSpace};
use cgk_core::scalars::{ParamPoly, Scalar, Symbol};
use num::BigRational;
use proptest::prelude::*;

fn symbol() -> impl Strategy<Value = Symbol> {
    prop::sample::select(Symbol::ALL.to_vec())
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((small_rational(), prop::collection::vec(symbol(), 0..3)), 0..4).prop_map(|terms| {
        terms.into_iter().fold(ParamPoly::zero(), |acc, (c, syms)| {
            let t = syms.into_iter().fold(ParamPoly::constant(c), |p, s| &p * &ParamPoly::symbol(s));
            &acc + &t
        })
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_map(|(n, d)| {
        if d.is_zero() {
            Scalar::from_poly(n)
        } else {
            Scalar::from_poly(n).checked_div(&Scalar::from_poly(d)).unwrap()
        }
    })
}

const SPACE: VarSpace = VarSpace { nx: 2, ny: 0 };

fn var() -> impl Strategy<Value = Var> {
    prop::sample::select(vec![Var::T, Var::X(0), Var::X(1)])
}

fn diffop() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(var(), 0..3), prop::collection::vec(var(), 0..3)), 0..4).prop_map(
        |terms| {
            terms.into_iter().fold(DiffOp::zero(SPACE), |acc, (c, coef, partials)| {
                let coef = CoefPoly::monomial(SPACE, &coef.iter().map(|&v| (v, 1)).collect::<Vec<_>>(), Scalar::integer(c)).unwrap();
                let partials: Vec<(Var, u32)> = partials.iter().map(|&v| (v, 1)).collect();
                acc.add(&DiffOp::term(coef, &partials).unwrap()).unwrap()
            })
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(a in scalar()) {
        prop_assert_eq!(a.canonicalize(), a.clone());
        prop_assert_eq!(a.canonicalize().canonicalize(), a.canonicalize());
        prop_assert_eq!(Scalar::parse(&a.to_text()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn composition_is_associative_and_distributive(a in diffop(), b in diffop(), c in diffop()) {
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = a.compose(&b.add(&c).unwrap()).unwrap();
        let right = a.compose(&b).unwrap().add(&a.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutator_satisfies_jacobi(a in diffop(), b in diffop(), c in diffop()) {
        let t1 = a.commutator(&b.commutator(&c).unwrap()).unwrap();
        let t2 = b.commutator(&c.commutator(&a).unwrap()).unwrap();
        let t3 = c.commutator(&a.commutator(&b).unwrap()).unwrap();
        prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
    }

    #[test]
    fn operator_text_and_json_round_trip(a in diffop()) {
        prop_assert_eq!(DiffOp::parse(&a.to_text(), SPACE).unwrap(), a.clone());
        prop_assert_eq!(DiffOp::from_json(&a.to_json(), SPACE).unwrap(), a);
    }
}
