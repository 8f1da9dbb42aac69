//! Singular vectors: closed forms, their existence conditions,
//! verification against the lowest-weight conditions, and an exhaustive
//! kernel search at fixed weight.

use std::collections::BTreeMap;

use num::{BigRational, Zero};
use serde::Serialize;

use crate::algebra::{AlgebraSpec, Family, Gen, Part, Pol};
use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::scalars::{factorial, ParamPoly, Scalar, Symbol};
use crate::verma::{BasisConstraint, ModuleVector, Params, PbwMonomial, VermaModule, Weight};

/// The normalization constant multiplying `μH` (or `θH`) in the
/// second-order singular element `𝒮`:
///
/// * d = 1 mass: `2((ℓ-½)!)²`
/// * d = 2 mass: `((ℓ-½)!)²` (with the central term of the complexified
///   basis as in [`crate::algebra::MASS_D2_CENTRAL_FACTOR`]; doubling it
///   does not annihilate, see the regression tests)
/// * d = 2 exotic: `ℓ!(ℓ-1)!`
pub fn singular_coefficient(spec: &AlgebraSpec) -> Result<BigRational> {
    let two_ell = spec.two_ell();
    let c = match spec.family() {
        Family::Mass1 => {
            let f = factorial((two_ell - 1) / 2);
            num::BigInt::from(2) * &f * &f
        }
        Family::Mass2 => {
            let f = factorial((two_ell - 1) / 2);
            &f * &f
        }
        Family::Exotic2 => {
            let ell = two_ell / 2;
            factorial(ell) * factorial(ell - 1)
        }
        Family::Centerless => return Err(Error::UnsupportedFamily("the centerless element has no H term".into())),
    };
    Ok(BigRational::from_integer(c))
}

/// `𝒮 = c·H + sign·Π P` as it acts on the module.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularElement {
    /// Full coefficient of `H` (already multiplied by μ or θ); zero for centerless.
    pub h_coeff: Scalar,
    /// The commuting creation operators in the quadratic (or linear) part.
    pub p_factors: Vec<Gen>,
    pub p_sign: i64,
}

impl SingularElement {
    pub fn new(spec: &AlgebraSpec, params: &Params) -> Result<Self> {
        Self::with_coefficient(spec, params, None)
    }

    /// Same element with the `H` normalization replaced by `coefficient` (for tests).
    pub fn with_coefficient(spec: &AlgebraSpec, params: &Params, coefficient: Option<&Scalar>) -> Result<Self> {
        let two_ell = spec.two_ell();
        let coeff = || -> Result<Scalar> {
            match coefficient {
                Some(c) => Ok(c.clone()),
                None => Ok(Scalar::rational(singular_coefficient(spec)?)),
            }
        };
        match spec.family() {
            Family::Mass1 => {
                let k = (two_ell - 1) / 2;
                Ok(SingularElement {
                    h_coeff: &coeff()? * &params.get(Symbol::Mu)?,
                    p_factors: vec![Gen::P(k, Pol::None), Gen::P(k, Pol::None)],
                    p_sign: 1,
                })
            }
            Family::Mass2 => {
                let k = (two_ell - 1) / 2;
                Ok(SingularElement {
                    h_coeff: &coeff()? * &params.get(Symbol::Mu)?,
                    p_factors: vec![Gen::P(k, Pol::Plus), Gen::P(k, Pol::Minus)],
                    p_sign: 1,
                })
            }
            Family::Exotic2 => {
                let ell = two_ell / 2;
                Ok(SingularElement {
                    h_coeff: &coeff()? * &params.get(Symbol::Theta)?,
                    p_factors: vec![Gen::P(ell - 1, Pol::Minus), Gen::P(ell, Pol::Plus)],
                    p_sign: if ell.is_multiple_of(2) { 1 } else { -1 },
                })
            }
            Family::Centerless => {
                let kappa = params.get(Symbol::Kappa)?;
                if !kappa.is_zero() {
                    return Err(Error::ConditionNotSatisfied(format!("the centerless singular vector needs kappa = 0, got {kappa}")));
                }
                Ok(SingularElement { h_coeff: Scalar::zero(), p_factors: vec![Gen::P(2, Pol::None)], p_sign: 1 })
            }
        }
    }

    /// `𝒮 · v`.
    pub fn apply(&self, module: &VermaModule, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = module.act_generic(Gen::H, v)?.scale(&self.h_coeff);
        let mut p = v.clone();
        for g in self.p_factors.iter().rev() {
            p = module.act_generic(*g, &p)?;
        }
        out.add_scaled(&p, &Scalar::integer(self.p_sign));
        Ok(out)
    }
}

/// `𝒮^q |0⟩`.
pub fn singular_closed(module: &VermaModule, q: u32) -> Result<ModuleVector> {
    let s = SingularElement::new(module.spec(), module.params())?;
    power_on_vacuum(module, &s, q)
}

/// `𝒮^q |0⟩` with a replaced normalization constant.
pub fn singular_closed_with_coefficient(module: &VermaModule, q: u32, coefficient: &Scalar) -> Result<ModuleVector> {
    let s = SingularElement::with_coefficient(module.spec(), module.params(), Some(coefficient))?;
    power_on_vacuum(module, &s, q)
}

fn power_on_vacuum(module: &VermaModule, s: &SingularElement, q: u32) -> Result<ModuleVector> {
    let mut v = module.vacuum();
    for _ in 0..q {
        v = s.apply(module, &v)?;
    }
    Ok(v)
}

/// The linear polynomial in δ whose vanishing allows a singular vector at level `q`.
pub fn singular_condition(spec: &AlgebraSpec, q: u32) -> Result<ParamPoly> {
    let delta = ParamPoly::symbol(Symbol::Delta);
    let q = q as i64;
    let two_ell = spec.two_ell() as i64;
    let constant = match spec.family() {
        // 2δ − 2(q−1) + (ℓ+½)²
        Family::Mass1 => {
            let c = BigRational::new(((two_ell + 1) * (two_ell + 1)).into(), 4.into()) - BigRational::from_integer((2 * (q - 1)).into());
            return Ok(&delta.scale(&BigRational::from_integer(2.into())) + &ParamPoly::constant(c));
        }
        // δ − q + (ℓ+½)² + 1
        Family::Mass2 => BigRational::new(((two_ell + 1) * (two_ell + 1)).into(), 4.into()) + BigRational::from_integer((1 - q).into()),
        // δ − q + ℓ(ℓ+1) + 1
        Family::Exotic2 => {
            let ell = two_ell / 2;
            BigRational::from_integer((ell * (ell + 1) + 1 - q).into())
        }
        Family::Centerless => {
            return Err(Error::UnsupportedFamily("the centerless condition is kappa = 0, not a condition on delta".into()))
        }
    };
    Ok(&delta + &ParamPoly::constant(constant))
}

/// The value of δ at which [`singular_condition`] vanishes.
pub fn condition_root(spec: &AlgebraSpec, q: u32) -> Result<BigRational> {
    let p = singular_condition(spec, q)?;
    let coeffs = p.to_univariate(Symbol::Delta);
    let c0 = coeffs[0].as_constant().unwrap_or_else(BigRational::zero);
    let c1 = coeffs[1].as_constant().expect("linear in delta with constant coefficients");
    Ok(-c0 / c1)
}

/// Expected weight of `𝒮^q|0⟩`: the lowest weight with the D-eigenvalue raised by `2q`.
pub fn predicted_weight(module: &VermaModule, q: u32) -> Weight {
    let mut w = module.lowest_weight().clone();
    let d = w.get(Gen::D).expect("D weight") + &Scalar::integer(2 * q as i64);
    w.insert(Gen::D, d);
    w
}

#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub generator: Gen,
    pub residual: ModuleVector,
}

/// Outcome of checking the lowest-weight conditions on a candidate.
#[derive(Debug, Clone, Serialize)]
pub struct SingularReport {
    pub candidate: ModuleVector,
    /// `X · v` for every X in g⁻.
    pub annihilators: Vec<Residual>,
    /// Eigenvalues of the g⁰ generators on the candidate.
    pub weight: Weight,
    /// g⁰ generators of which the candidate is not an eigenvector.
    pub not_eigen: Vec<Residual>,
    pub is_singular: bool,
}

pub fn verify_singular(module: &VermaModule, v: &ModuleVector) -> Result<SingularReport> {
    let dec = module.decomposition();
    let mut annihilators = Vec::new();
    for &x in &dec.minus {
        annihilators.push(Residual { generator: x, residual: module.act_generic(x, v)? });
    }
    let mut weight = Weight::default();
    let mut not_eigen = Vec::new();
    for &z in &dec.zero {
        let zv = module.act_generic(z, v)?;
        match zv.ratio_to(v) {
            Some(l) if !v.is_zero() => weight.insert(z, l),
            _ => not_eigen.push(Residual { generator: z, residual: zv }),
        }
    }
    let is_singular = !v.is_zero() && not_eigen.is_empty() && annihilators.iter().all(|r| r.residual.is_zero());
    Ok(SingularReport { candidate: v.clone(), annihilators, weight, not_eigen, is_singular })
}

/// Kernel found by [`search_singular`].
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub basis: Vec<PbwMonomial>,
    pub kernel: Vec<ModuleVector>,
    /// Polynomials in the symbolic parameters whose vanishing may enlarge the kernel.
    pub caveats: Vec<ParamPoly>,
}

impl Serialize for SearchResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let caveats: Vec<String> = self.caveats.iter().map(|p| p.to_text()).collect();
        serde_json::json!({
            "basis_size": self.basis.len(),
            "kernel": self.kernel.iter().map(ModuleVector::to_json).collect::<Vec<_>>(),
            "caveats": caveats,
        })
        .serialize(s)
    }
}

/// All vectors in the selected subspace that are annihilated by g⁻ and
/// are eigenvectors of g⁰ (with the eigenvalues of their weight space).
/// A level constraint is split into weight spaces, searched separately.
pub fn search_singular(module: &VermaModule, constraint: &BasisConstraint) -> Result<SearchResult> {
    let basis = module.level_basis(constraint)?;
    let mut spaces: BTreeMap<(i64, i64), Vec<PbwMonomial>> = BTreeMap::new();
    for m in &basis {
        spaces.entry((module.grade(m), module.charge(m))).or_default().push(m.clone());
    }
    let mut kernel_vectors = Vec::new();
    let mut caveats: Vec<ParamPoly> = Vec::new();
    for cols in spaces.values() {
        let (vecs, cav) = weight_space_kernel(module, cols)?;
        kernel_vectors.extend(vecs);
        for c in cav {
            if !caveats.contains(&c) {
                caveats.push(c);
            }
        }
    }
    Ok(SearchResult { basis, kernel: kernel_vectors, caveats })
}

fn weight_space_kernel(module: &VermaModule, cols: &[PbwMonomial]) -> Result<(Vec<ModuleVector>, Vec<ParamPoly>)> {
    let dec = module.decomposition();
    let central = module.spec().central();
    let mut rows: BTreeMap<(usize, PbwMonomial), Vec<Scalar>> = BTreeMap::new();
    let n = cols.len();
    let mut conditions: Vec<(Gen, bool)> = dec.minus.iter().map(|&g| (g, false)).collect();
    conditions.extend(dec.zero.iter().filter(|&&g| Some(g) != central).map(|&g| (g, true)));
    for (ci, &(g, is_zero_part)) in conditions.iter().enumerate() {
        debug_assert_eq!(dec.part_of(g) == Some(Part::Zero), is_zero_part);
        for (j, m) in cols.iter().enumerate() {
            let mv = ModuleVector::monomial(m.clone());
            let mut image = module.act_generic(g, &mv)?;
            if is_zero_part {
                let lambda = module.weight_of(m).get(g).cloned().unwrap_or_default();
                image.add_scaled(&mv, &-lambda);
            }
            for (out, c) in image.terms() {
                rows.entry((ci, out.clone())).or_insert_with(|| vec![Scalar::zero(); n])[j] = c.clone();
            }
        }
    }
    let matrix: Vec<Vec<Scalar>> = rows.into_values().collect();
    let k = kernel(&matrix, n);
    let vectors = k
        .basis
        .into_iter()
        .map(|x| {
            let mut v = ModuleVector::zero();
            for (m, c) in cols.iter().zip(x) {
                v.add_term(m.clone(), c);
            }
            v
        })
        .collect();
    Ok((vectors, k.caveats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Extension;

    fn spec(d: u32, two_ell: u32, ext: Extension) -> AlgebraSpec {
        AlgebraSpec::new(d, two_ell, ext).unwrap()
    }

    #[test]
    fn conditions() {
        assert_eq!(singular_condition(&spec(1, 1, Extension::Mass), 1).unwrap().to_text(), "2*delta+1");
        assert_eq!(singular_condition(&spec(2, 2, Extension::Exotic), 1).unwrap().to_text(), "delta+2");
        assert_eq!(singular_condition(&spec(2, 1, Extension::Mass), 2).unwrap().to_text(), "delta");
        assert!(singular_condition(&spec(1, 2, Extension::None), 1).is_err());
        assert_eq!(condition_root(&spec(1, 1, Extension::Mass), 1).unwrap(), BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    fn closed_forms_at_level_one() {
        let s = spec(1, 1, Extension::Mass);
        let m = VermaModule::new(&s, &Params::symbolic()).unwrap();
        let v = singular_closed(&m, 1).unwrap();
        let mut expected = ModuleVector::zero();
        expected.add_term(m.monomial_from(&[(Gen::H, 1)]).unwrap(), &Scalar::integer(2) * &Scalar::symbol(Symbol::Mu));
        expected.add_term(m.monomial_from(&[(Gen::P(0, Pol::None), 2)]).unwrap(), Scalar::one());
        assert_eq!(v, expected);

        let s = spec(2, 2, Extension::Exotic);
        let m = VermaModule::new(&s, &Params::symbolic()).unwrap();
        let v = singular_closed(&m, 1).unwrap();
        let mut expected = ModuleVector::zero();
        expected.add_term(m.monomial_from(&[(Gen::H, 1)]).unwrap(), Scalar::symbol(Symbol::Theta));
        expected.add_term(m.monomial_from(&[(Gen::P(0, Pol::Minus), 1), (Gen::P(1, Pol::Plus), 1)]).unwrap(), Scalar::integer(-1));
        assert_eq!(v, expected);
    }

    #[test]
    fn vacuum_is_trivially_singular() {
        let m = VermaModule::new(&spec(1, 1, Extension::Mass), &Params::symbolic()).unwrap();
        assert!(verify_singular(&m, &m.vacuum()).unwrap().is_singular);
        assert!(!verify_singular(&m, &ModuleVector::zero()).unwrap().is_singular);
    }

    #[test]
    fn centerless_needs_zero_kappa() {
        let s = spec(1, 2, Extension::None);
        let m = VermaModule::new(&s, &Params::symbolic().with_int(Symbol::Kappa, 1)).unwrap();
        assert!(matches!(singular_closed(&m, 1), Err(Error::ConditionNotSatisfied(_))));
        let m = VermaModule::new(&s, &Params::symbolic().with_int(Symbol::Kappa, 0)).unwrap();
        let v = singular_closed(&m, 3).unwrap();
        assert_eq!(v, ModuleVector::monomial(m.monomial_from(&[(Gen::P(2, Pol::None), 3)]).unwrap()));
    }
}
