use cgk_core::algebra::{bracket, d_grade, enumerate_generators, Extension};
use cgk_core::verma::BasisConstraint;
use cgk_core::{AlgebraSpec, Gen, ModuleVector, Params, Pol, Scalar, Symbol, VermaModule};

fn spec(d: u32, two_ell: u32, ext: Extension) -> AlgebraSpec {
    AlgebraSpec::new(d, two_ell, ext).unwrap()
}

fn basis_up_to(v: &VermaModule, level: u32) -> Vec<cgk_core::PbwMonomial> {
    (0..=level).flat_map(|p| v.level_basis(&BasisConstraint::Level(p)).unwrap()).collect()
}

#[test]
fn closed_form_matches_oracle() {
    for s in AlgebraSpec::all_up_to(5).into_iter().filter(|s| s.d() == 2) {
        let v = VermaModule::new(&s, &Params::symbolic()).unwrap();
        let level = if s.two_ell() >= 4 { 3 } else { 4 };
        for m in basis_up_to(&v, level) {
            for x in enumerate_generators(&s) {
                let oracle = v.act_generic(x, &ModuleVector::monomial(m.clone())).unwrap();
                let closed = v.act_closed_form(x, &m).unwrap();
                assert_eq!(closed, oracle, "{s} {x} on {m}");
            }
        }
    }
}

#[test]
fn closed_form_unavailable_in_one_dimension() {
    let v = VermaModule::new(&spec(1, 1, Extension::Mass), &Params::symbolic()).unwrap();
    assert!(v.act_closed_form(Gen::H, &v.vacuum_monomial()).is_err());
}

#[test]
fn mass2_creation_example() {
    let v = VermaModule::new(&spec(2, 1, Extension::Mass), &Params::symbolic()).unwrap();
    let h = v.monomial_from(&[(Gen::H, 1)]).unwrap();
    let got = v.act_generic(Gen::P(1, Pol::Plus), &ModuleVector::monomial(h.clone())).unwrap();
    assert_eq!(got, v.act_closed_form(Gen::P(1, Pol::Plus), &h).unwrap());
    // P1+ H |0> = H P1+ |0> + [P1+, H] |0> = P0+ |0>
    let p0 = v.monomial_from(&[(Gen::P(0, Pol::Plus), 1)]).unwrap();
    assert_eq!(got, ModuleVector::monomial(p0));
}

#[test]
fn oracle_is_a_representation() {
    for s in AlgebraSpec::all_up_to(5) {
        let v = VermaModule::new(&s, &Params::symbolic()).unwrap();
        let gens = enumerate_generators(&s);
        let level = if s.two_ell() >= 4 || s.d() == 2 { 2 } else { 3 };
        for m in basis_up_to(&v, level) {
            let mv = ModuleVector::monomial(m.clone());
            for (i, &x) in gens.iter().enumerate() {
                let xm = v.act_generic(x, &mv).unwrap();
                for &y in &gens[i + 1..] {
                    let ym = v.act_generic(y, &mv).unwrap();
                    let lhs = v.act_generic(x, &ym).unwrap().sub(&v.act_generic(y, &xm).unwrap());
                    let rhs = v.act_combo(&bracket(&s, x, y).unwrap(), &mv).unwrap();
                    assert_eq!(lhs, rhs, "{s} [{x},{y}] on {m}");
                }
            }
        }
    }
}

#[test]
fn weight_additivity() {
    for s in AlgebraSpec::all_up_to(5) {
        let v = VermaModule::new(&s, &Params::symbolic()).unwrap();
        for m in basis_up_to(&v, 2) {
            let base = v.weight_of(&m).get(Gen::D).unwrap().clone();
            for x in v.creation_generators() {
                let xm = v.act_generic(x, &ModuleVector::monomial(m.clone())).unwrap();
                for (n, _) in xm.terms() {
                    let diff = v.weight_of(n).get(Gen::D).unwrap() - &base;
                    assert_eq!(diff, Scalar::integer(d_grade(&s, x)), "{s} {x} on {m}");
                }
            }
        }
    }
}

#[test]
fn centerless_p1_is_not_diagonal() {
    let v = VermaModule::new(&spec(1, 2, Extension::None), &Params::symbolic()).unwrap();
    let c = v.monomial_from(&[(Gen::C, 1)]).unwrap();
    let got = v.act_generic(Gen::P(1, Pol::None), &ModuleVector::monomial(c.clone())).unwrap();
    let p2 = v.monomial_from(&[(Gen::P(2, Pol::None), 1)]).unwrap();
    let mut expected = ModuleVector::term(c, -Scalar::symbol(Symbol::Kappa));
    expected.add_term(p2, Scalar::integer(-1));
    assert_eq!(got, expected);
}
