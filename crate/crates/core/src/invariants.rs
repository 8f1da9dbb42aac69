//! Invariant operators `π_R(𝒮^q)` of the PDE hierarchies and the exact
//! intertwining identities that make the algebra their kinematical symmetry.

use num::BigRational;
use serde::Serialize;

use crate::algebra::{enumerate_generators, AlgebraSpec, Family, Gen};
use crate::diffop::{CoefPoly, DiffOp, Var};
use crate::error::{Error, Result};
use crate::reps::{left_action, right_action, var_space};
use crate::scalars::{ParamPoly, Scalar, Symbol};
use crate::singular::{condition_root, singular_condition, SingularElement};
use crate::verma::Params;

/// δ of the target representation of `π_R(𝒮^q)`: the source δ lowered by `2q`.
/// Fixed by the ℓ = ½, q = 1 heat-equation case and applied to every family.
pub fn shifted_delta(delta: &Scalar, q: u32) -> Scalar {
    delta - &Scalar::integer(2 * q as i64)
}

/// `π_R(𝒮)` for a single factor.
pub fn invariant_element(spec: &AlgebraSpec, params: &Params) -> Result<DiffOp> {
    let space = var_space(spec);
    if spec.family() == Family::Centerless {
        return DiffOp::partial(space, Var::X(0), 1);
    }
    let s = SingularElement::new(spec, params)?;
    let mut op = right_action(spec, Gen::H)?.scale(&s.h_coeff);
    let mut quadratic = DiffOp::one(space);
    for &g in &s.p_factors {
        quadratic = quadratic.compose(&right_action(spec, g)?)?;
    }
    op = op.add(&quadratic.scale(&Scalar::integer(s.p_sign)))?;
    Ok(op)
}

/// `π_R(𝒮^q)`, the operator of the q-th equation of the hierarchy.
pub fn invariant_operator(spec: &AlgebraSpec, params: &Params, q: u32) -> Result<DiffOp> {
    if q == 0 {
        return Err(Error::InvalidSpec("the hierarchy starts at q = 1".into()));
    }
    Ok(invariant_element(spec, params)?.pow(q))
}

/// `π_R(𝒮^q) ψ = 0` in LaTeX.
pub fn invariant_equation_latex(spec: &AlgebraSpec, params: &Params, q: u32) -> Result<String> {
    let op = invariant_operator(spec, params, q)?;
    Ok(format!("\\left( {} \\right) \\psi = 0", op.to_latex()))
}

/// `R(X)` for one generator.
#[derive(Debug, Clone, Serialize)]
pub struct IntertwiningEntry {
    pub generator: Gen,
    pub residual: DiffOp,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntertwiningReport {
    pub spec: AlgebraSpec,
    pub q: u32,
    pub delta: Scalar,
    pub shifted_delta: Scalar,
    pub entries: Vec<IntertwiningEntry>,
}

impl IntertwiningReport {
    pub fn is_ok(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }

    pub fn residual(&self, g: Gen) -> Option<&DiffOp> {
        self.entries.iter().find(|e| e.generator == g).map(|e| &e.residual)
    }
}

/// `R(X) = π_R(𝒮^q) ∘ π_L^{(δ)}(X) − π_L^{(δ′)}(X) ∘ π_R(𝒮^q)` for every generator,
/// at whatever δ the parameters carry (numeric or symbolic).
pub fn intertwining_residuals(spec: &AlgebraSpec, params: &Params, q: u32) -> Result<IntertwiningReport> {
    if spec.family() == Family::Centerless {
        return Err(Error::UnsupportedFamily("no left-action realization is given for the centerless algebra".into()));
    }
    let delta = params.get(Symbol::Delta)?;
    let shifted = shifted_delta(&delta, q);
    let target = params.clone().with(Symbol::Delta, shifted.clone());
    let s = invariant_operator(spec, params, q)?;
    let mut entries = Vec::new();
    for x in enumerate_generators(spec) {
        let lhs = s.compose(&left_action(spec, params, x)?)?;
        let rhs = left_action(spec, &target, x)?.compose(&s)?;
        let residual = lhs.sub(&rhs)?;
        entries.push(IntertwiningEntry { generator: x, ok: residual.is_zero(), residual });
    }
    Ok(IntertwiningReport { spec: *spec, q, delta, shifted_delta: shifted, entries })
}

/// Intertwining check with δ required to sit at the root of the existence condition.
pub fn intertwining_check(spec: &AlgebraSpec, params: &Params, q: u32) -> Result<IntertwiningReport> {
    let root = condition_root(spec, q)?;
    let delta = params.get(Symbol::Delta)?;
    if delta != Scalar::rational(root.clone()) {
        return Err(Error::ConditionNotSatisfied(format!("delta = {delta}, but the level-{q} condition needs delta = {root}")));
    }
    intertwining_residuals(spec, params, q)
}

/// With δ symbolic: is `R(C)` nonzero with every coefficient divisible by the condition polynomial?
#[derive(Debug, Clone)]
pub struct Sensitivity {
    pub condition: ParamPoly,
    pub residual_c: DiffOp,
    pub nonzero: bool,
    pub divisible: bool,
}

pub fn symbolic_sensitivity(spec: &AlgebraSpec, params: &Params, q: u32) -> Result<Sensitivity> {
    let condition = singular_condition(spec, q)?;
    let params = params.clone().with(Symbol::Delta, Scalar::symbol(Symbol::Delta));
    let report = intertwining_residuals(spec, &params, q)?;
    let residual_c = report.residual(Gen::C).cloned().expect("C is a generator");
    let divisible = residual_c.scalars().iter().all(|s| s.divisible_by(&condition));
    Ok(Sensitivity { condition, nonzero: !residual_c.is_zero(), divisible, residual_c })
}

/// The order-zero λ with `[π_R(𝒮), π_L(X)] = λ · π_R(𝒮)`, if one exists.
pub fn onshell_multiplier(spec: &AlgebraSpec, params: &Params, x: Gen) -> Result<CoefPoly> {
    if spec.family() == Family::Centerless {
        return Err(Error::UnsupportedFamily("no left-action realization is given for the centerless algebra".into()));
    }
    let s = invariant_element(spec, params)?;
    let k = s.commutator(&left_action(spec, params, x)?)?;
    let order = s.order();
    let (beta, c) = s
        .terms()
        .filter(|(alpha, _)| alpha.iter().sum::<u32>() == order)
        .find_map(|(alpha, coef)| coef.as_constant().filter(|c| !c.is_zero()).map(|c| (alpha.clone(), c)))
        .ok_or_else(|| Error::NoMultiplier("the principal part has no constant coefficient".into()))?;
    let lambda = k.coeff(&beta).scale(&c.recip()?);
    let remainder = k.sub(&s.mul_coefficient(&lambda)?)?;
    if !remainder.is_zero() {
        return Err(Error::NoMultiplier(format!("[S, pi_L({x})] - lambda S = {remainder}")));
    }
    Ok(lambda)
}

/// δ at the condition root for level `q`, merged into the given parameters.
pub fn at_condition_root(spec: &AlgebraSpec, params: &Params, q: u32) -> Result<Params> {
    let root: BigRational = condition_root(spec, q)?;
    Ok(params.clone().with(Symbol::Delta, Scalar::rational(root)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Extension;

    fn spec(d: u32, two_ell: u32, ext: Extension) -> AlgebraSpec {
        AlgebraSpec::new(d, two_ell, ext).unwrap()
    }

    #[test]
    fn heat_operator() {
        let s = spec(1, 1, Extension::Mass);
        let op = invariant_operator(&s, &Params::symbolic(), 1).unwrap();
        assert_eq!(op, DiffOp::parse("2*mu*d/dt + (d/dx0)^2", var_space(&s)).unwrap());
        assert!(invariant_operator(&s, &Params::symbolic(), 0).is_err());
    }

    #[test]
    fn seed_multipliers() {
        let s = spec(1, 1, Extension::Mass);
        let p = at_condition_root(&s, &Params::symbolic(), 1).unwrap();
        let sp = var_space(&s);
        assert_eq!(onshell_multiplier(&s, &p, Gen::D).unwrap(), CoefPoly::constant(sp, Scalar::integer(-2)));
        assert!(onshell_multiplier(&s, &p, Gen::H).unwrap().is_zero());
        assert_eq!(onshell_multiplier(&s, &p, Gen::C).unwrap(), CoefPoly::parse("-2*t", sp).unwrap());
    }

    #[test]
    fn seed_intertwining_and_shift_convention() {
        let s = spec(1, 1, Extension::Mass);
        let p = at_condition_root(&s, &Params::symbolic(), 1).unwrap();
        assert!(intertwining_check(&s, &p, 1).unwrap().is_ok());
        // the opposite reading δ′ = 2q − δ does not intertwine at the same δ
        let delta = p.get(Symbol::Delta).unwrap();
        let flipped = &Scalar::integer(2) - &delta;
        let op = invariant_operator(&s, &p, 1).unwrap();
        let lhs = op.compose(&left_action(&s, &p, Gen::D).unwrap()).unwrap();
        let rhs = left_action(&s, &p.clone().with(Symbol::Delta, flipped), Gen::D).unwrap().compose(&op).unwrap();
        assert!(!lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn delta_off_the_root_is_rejected() {
        let s = spec(2, 2, Extension::Exotic);
        let p = Params::symbolic().with_int(Symbol::Delta, 0);
        assert!(matches!(intertwining_check(&s, &p, 1), Err(Error::ConditionNotSatisfied(_))));
        let p = Params::symbolic().with_int(Symbol::Delta, -2);
        assert!(intertwining_check(&s, &p, 1).unwrap().is_ok());
    }
}
