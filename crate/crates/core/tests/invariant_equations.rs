use cgk_core::algebra::{decomposition, enumerate_generators, Extension};
use cgk_core::diffop::CoefPoly;
use cgk_core::invariants::{at_condition_root, intertwining_check, invariant_element, invariant_equation_latex, invariant_operator, onshell_multiplier};
use cgk_core::reps::var_space;
use cgk_core::{AlgebraSpec, DiffOp, Params, Var};

fn spec(d: u32, two_ell: u32, ext: Extension) -> AlgebraSpec {
    AlgebraSpec::new(d, two_ell, ext).unwrap()
}

#[test]
fn two_dimensional_elements() {
    let p = Params::symbolic();
    let s = spec(2, 3, Extension::Mass);
    let expected = DiffOp::parse("mu*(d/dt + x1*d/dx0 + y1*d/dy0) + d/dx1*d/dy1", var_space(&s)).unwrap();
    assert_eq!(invariant_element(&s, &p).unwrap(), expected);
    let s = spec(2, 4, Extension::Exotic);
    let expected = DiffOp::parse("2*theta*(d/dt + x1*d/dx0 + 2*x2*d/dx1 + y1*d/dy0) + d/dy1*d/dx2", var_space(&s)).unwrap();
    assert_eq!(invariant_element(&s, &p).unwrap(), expected);
    let s = spec(2, 2, Extension::Exotic);
    let expected = DiffOp::parse("theta*(d/dt + x1*d/dx0) - d/dy0*d/dx1", var_space(&s)).unwrap();
    assert_eq!(invariant_element(&s, &p).unwrap(), expected);
}

#[test]
fn powers_compose() {
    let s = spec(1, 3, Extension::Mass);
    let p = Params::symbolic();
    let one = invariant_operator(&s, &p, 1).unwrap();
    assert_eq!(invariant_operator(&s, &p, 2).unwrap(), one.compose(&one).unwrap());
}

#[test]
fn latex_equation() {
    let s = spec(1, 1, Extension::Mass);
    let tex = invariant_equation_latex(&s, &Params::symbolic(), 1).unwrap();
    assert_eq!(tex, "\\left( 2\\mu \\partial_{t} + \\partial_{x_{0}}^{2} \\right) \\psi = 0");
}

#[test]
fn multipliers_agree_with_intertwining() {
    for s in AlgebraSpec::extended_up_to(5) {
        let p = at_condition_root(&s, &Params::symbolic(), 1).unwrap();
        let all = enumerate_generators(&s).into_iter().all(|x| onshell_multiplier(&s, &p, x).is_ok());
        assert_eq!(all, intertwining_check(&s, &p, 1).unwrap().is_ok(), "{s}");
        assert!(all, "{s}");
        if s.d() == 1 {
            for x in decomposition(&s).unwrap().plus {
                assert!(onshell_multiplier(&s, &p, x).unwrap().is_zero(), "{s} {x}");
            }
        }
    }
}

#[test]
fn centerless_operator_kills_low_degree() {
    let s = spec(1, 2, Extension::None);
    let sp = var_space(&s);
    for q in 1..=4u32 {
        let op = invariant_operator(&s, &Params::symbolic(), q).unwrap();
        assert_eq!(op, DiffOp::partial(sp, Var::X(0), q).unwrap());
        for deg in 0..q {
            let f = CoefPoly::monomial(sp, &[(Var::X(0), deg), (Var::T, 2)], cgk_core::Scalar::one()).unwrap();
            assert!(op.apply(&f).unwrap().is_zero());
        }
        let f = CoefPoly::monomial(sp, &[(Var::X(0), q)], cgk_core::Scalar::one()).unwrap();
        assert!(!op.apply(&f).unwrap().is_zero());
    }
}
