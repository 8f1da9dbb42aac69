//! Differential-operator realizations: the right action of g⁺ on right
//! covariant functions and the left-action vector-field representation of
//! the whole algebra, with homomorphism audits for both.

use serde::Serialize;

use crate::algebra::{bracket, decomposition, enumerate_generators, AlgebraSpec, Family, Gen, GenCombo, Part, Pol};
use crate::diffop::{CoefPoly, DiffOp, Var, VarSpace};
use crate::error::{Error, Result};
use crate::scalars::{binomial, central_constant, factorial, Scalar, Symbol};
use crate::verma::{lowest_weight, Params};

/// Orientation of the homomorphism property: `[π(X), π(Y)] = ORIENTATION · π([X, Y])`.
/// Fixed once by the ℓ = ½ case and shared by every family and by both actions.
pub const BRACKET_ORIENTATION: i64 = 1;

/// Coordinates of the coset: `t`, `x_0 … x_{nx-1}`, `y_0 … y_{ny-1}`.
pub fn var_space(spec: &AlgebraSpec) -> VarSpace {
    let two_ell = spec.two_ell();
    match spec.family() {
        Family::Mass1 => VarSpace::new(two_ell.div_ceil(2), 0),
        Family::Mass2 => VarSpace::new(two_ell.div_ceil(2), two_ell.div_ceil(2)),
        Family::Exotic2 => VarSpace::new(two_ell / 2 + 1, two_ell / 2),
        Family::Centerless => VarSpace::new(1, 0),
    }
}

/// Accumulates `c · t^a · (coordinate) · ∂` terms.
struct Builder {
    space: VarSpace,
    op: DiffOp,
}

impl Builder {
    fn new(space: VarSpace) -> Self {
        Builder { space, op: DiffOp::zero(space) }
    }

    fn push(&mut self, c: Scalar, coef: &[(Var, u32)], partial: Option<Var>) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let coef = CoefPoly::monomial(self.space, coef, c)?;
        let partials: Vec<(Var, u32)> = partial.map(|v| (v, 1)).into_iter().collect();
        self.op = self.op.add(&DiffOp::term(coef, &partials)?)?;
        Ok(())
    }

    fn add(&mut self, other: &DiffOp) -> Result<()> {
        self.op = self.op.add(other)?;
        Ok(())
    }

    fn finish(self) -> DiffOp {
        self.op
    }
}

fn int(n: i64) -> Scalar {
    Scalar::integer(n)
}

fn big(n: num::BigInt) -> Scalar {
    Scalar::big_integer(n)
}

fn coordinate(pol: Pol, n: u32) -> Var {
    match pol {
        Pol::Minus => Var::Y(n),
        _ => Var::X(n),
    }
}

/// Right action `π_R(X)` for X in g⁺.
pub fn right_action(spec: &AlgebraSpec, x: Gen) -> Result<DiffOp> {
    let dec = decomposition(spec)?;
    if dec.part_of(x) != Some(Part::Plus) {
        return Err(Error::UnsupportedGenerator(format!("the right action is given on g+ only, not on {x}")));
    }
    let space = var_space(spec);
    let mut b = Builder::new(space);
    match (spec.family(), x) {
        (Family::Centerless, Gen::P(2, _)) => b.push(int(1), &[], Some(Var::X(0)))?,
        (Family::Centerless, _) => {
            return Err(Error::UnsupportedGenerator(format!("the right action of {x} is not available for the centerless algebra")))
        }
        (_, Gen::H) => {
            b.push(int(1), &[], Some(Var::T))?;
            for j in 1..space.nx {
                b.push(int(j as i64), &[(Var::X(j), 1)], Some(Var::X(j - 1)))?;
            }
            for j in 1..space.ny {
                b.push(int(j as i64), &[(Var::Y(j), 1)], Some(Var::Y(j - 1)))?;
            }
        }
        (_, Gen::P(n, pol)) => b.push(int(1), &[], Some(coordinate(pol, n)))?,
        _ => unreachable!("g+ holds H and creation operators only"),
    }
    Ok(b.finish())
}

/// Left-action vector field `π_L(X)`, weight constants embedded.
pub fn left_action(spec: &AlgebraSpec, params: &Params, x: Gen) -> Result<DiffOp> {
    if spec.family() == Family::Centerless {
        return Err(Error::UnsupportedFamily("no left-action realization is given for the centerless algebra".into()));
    }
    if !crate::algebra::contains(spec, x) {
        return Err(Error::UnknownGenerator(format!("{x} is not a generator of {spec}")));
    }
    let space = var_space(spec);
    let two_ell = spec.two_ell() as i64;
    let delta = params.get(Symbol::Delta)?;
    match x {
        Gen::M => Ok(DiffOp::constant(space, params.get(Symbol::Mu)?)),
        Gen::Theta => Ok(DiffOp::constant(space, -params.get(Symbol::Theta)?)),
        Gen::H => DiffOp::partial(space, Var::T, 1).map(|d| d.neg()),
        Gen::D => dilation(spec, space, &delta),
        Gen::J => {
            let mut b = Builder::new(space);
            b.push(params.get(Symbol::R)?, &[], None)?;
            for n in 0..space.nx {
                b.push(int(-1), &[(Var::X(n), 1)], Some(Var::X(n)))?;
            }
            for n in 0..space.ny {
                b.push(int(1), &[(Var::Y(n), 1)], Some(Var::Y(n)))?;
            }
            Ok(b.finish())
        }
        Gen::C => {
            let mut b = Builder::new(space);
            let t = CoefPoly::var(space, Var::T)?;
            b.add(&dilation(spec, space, &delta)?.mul_coefficient(&t)?)?;
            b.push(int(1), &[(Var::T, 2)], Some(Var::T))?;
            match spec.family() {
                Family::Mass1 => {
                    let k = space.nx - 1;
                    let f = factorial(k + 1);
                    let c = &(&params.get(Symbol::Mu)? * &big(&f * &f)) * &Scalar::ratio(1, 2);
                    b.push(c, &[(Var::X(k), 2)], None)?;
                }
                Family::Mass2 => {
                    let k = space.nx - 1;
                    let c = &params.get(Symbol::Mu)? * &big(num::BigInt::from(k + 1) * central_constant(spec, k + 1)?);
                    b.push(c, &[(Var::X(k), 1), (Var::Y(k), 1)], None)?;
                }
                Family::Exotic2 => {
                    let ell = space.ny;
                    let c = -&(&params.get(Symbol::Theta)? * &big(num::BigInt::from(ell) * central_constant(spec, ell + 1)?));
                    b.push(c, &[(Var::X(ell), 1), (Var::Y(ell - 1), 1)], None)?;
                }
                Family::Centerless => unreachable!(),
            }
            for n in 0..space.nx.saturating_sub(1) {
                b.push(int(-(two_ell - n as i64)), &[(Var::X(n), 1)], Some(Var::X(n + 1)))?;
            }
            for n in 0..space.ny.saturating_sub(1) {
                b.push(int(-(two_ell - n as i64)), &[(Var::Y(n), 1)], Some(Var::Y(n + 1)))?;
            }
            Ok(b.finish())
        }
        Gen::P(n, pol) => translation(spec, params, space, n, pol),
    }
}

/// `π_L(D) = δ − 2t∂t − Σ 2(ℓ−n)(x_n∂x_n + y_n∂y_n)`.
fn dilation(spec: &AlgebraSpec, space: VarSpace, delta: &Scalar) -> Result<DiffOp> {
    let two_ell = spec.two_ell() as i64;
    let mut b = Builder::new(space);
    b.push(delta.clone(), &[], None)?;
    b.push(int(-2), &[(Var::T, 1)], Some(Var::T))?;
    for n in 0..space.nx {
        b.push(int(-(two_ell - 2 * n as i64)), &[(Var::X(n), 1)], Some(Var::X(n)))?;
    }
    for n in 0..space.ny {
        b.push(int(-(two_ell - 2 * n as i64)), &[(Var::Y(n), 1)], Some(Var::Y(n)))?;
    }
    Ok(b.finish())
}

/// `π_L(P⁽ⁿ⁾)`: a derivative part (all n) plus a multiplicative part (annihilators only).
fn translation(spec: &AlgebraSpec, params: &Params, space: VarSpace, n: u32, pol: Pol) -> Result<DiffOp> {
    let two_ell = spec.two_ell() as i64;
    let n = n as i64;
    let own = |i: i64| coordinate(pol, i as u32);
    // index bound of the coordinates conjugate to this polarization
    let own_len = if pol == Pol::Minus { space.ny } else { space.nx } as i64;
    let mut b = Builder::new(space);
    // −Σ_j C(n, j) t^{n−j} ∂_{j}, j ≤ min(n, own_len − 1)
    for j in 0..=n.min(own_len - 1) {
        b.push(-big(binomial(n, j)), &[(Var::T, (n - j) as u32)], Some(own(j)))?;
    }
    match spec.family() {
        Family::Mass1 | Family::Mass2 => {
            let mu = params.get(Symbol::Mu)?;
            let partner = |i: i64| match (spec.family(), pol) {
                (Family::Mass1, _) => Var::X(i as u32),
                (_, Pol::Plus) => Var::Y(i as u32),
                _ => Var::X(i as u32),
            };
            // μ Σ_{j=2ℓ−n}^{ℓ−½} C(n, 2ℓ−j) I_{2ℓ−j} t^{n−2ℓ+j} (partner)_j
            for j in (two_ell - n).max(0)..space.nx as i64 {
                let c = big(binomial(n, two_ell - j) * central_constant(spec, (two_ell - j) as u32)?);
                b.push(&mu * &c, &[(Var::T, (n - two_ell + j) as u32), (partner(j), 1)], None)?;
            }
        }
        Family::Exotic2 => {
            let theta = params.get(Symbol::Theta)?;
            let ell = two_ell / 2;
            // plus:  −θ Σ_{k=0}^{n−ℓ−1} C(n,k) I_{n−k} t^k y_{2ℓ−n+k}
            // minus: +θ Σ_{k=0}^{n−ℓ}   C(n,k) I_{n−k} t^k x_{2ℓ−n+k}
            let (top, sign, partner): (i64, i64, fn(u32) -> Var) =
                if pol == Pol::Plus { (n - ell - 1, -1, Var::Y) } else { (n - ell, 1, Var::X) };
            for k in 0..=top {
                let c = big(binomial(n, k) * central_constant(spec, (n - k) as u32)?);
                let c = &(&theta * &c) * &int(sign);
                b.push(c, &[(Var::T, k as u32), (partner((two_ell - n + k) as u32), 1)], None)?;
            }
        }
        Family::Centerless => unreachable!(),
    }
    Ok(b.finish())
}

/// `π(combo)` for a linear combination of generators.
pub fn action_of_combo(space: VarSpace, combo: &GenCombo, action: &dyn Fn(Gen) -> Result<DiffOp>) -> Result<DiffOp> {
    let mut out = DiffOp::zero(space);
    for (g, c) in combo.iter() {
        out = out.add(&action(*g)?.scale(c))?;
    }
    Ok(out)
}

/// A generator pair whose image violates the homomorphism property.
#[derive(Debug, Clone, Serialize)]
pub struct RepFailure {
    pub x: Gen,
    pub y: Gen,
    /// `[π(X), π(Y)] − ORIENTATION · π([X, Y])`.
    pub residual: DiffOp,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepReport {
    pub spec: AlgebraSpec,
    pub pairs_checked: usize,
    pub failures: Vec<RepFailure>,
}

impl RepReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Homomorphism audit of `π_L` over every generator pair.
pub fn rep_check(spec: &AlgebraSpec, params: &Params) -> Result<RepReport> {
    let gens = enumerate_generators(spec);
    rep_check_with(spec, &gens, &|g| left_action(spec, params, g))
}

/// Homomorphism audit of `π_R` over pairs in g⁺ (the subalgebra it is defined on).
pub fn right_check(spec: &AlgebraSpec) -> Result<RepReport> {
    rep_check_with(spec, &right_domain(spec)?, &|g| right_action(spec, g))
}

/// Generators with a right-action image: g⁺, or only `P⁽²⁾` for the centerless algebra.
pub fn right_domain(spec: &AlgebraSpec) -> Result<Vec<Gen>> {
    if spec.family() == Family::Centerless {
        return Ok(vec![Gen::P(2, Pol::None)]);
    }
    Ok(decomposition(spec)?.plus)
}

/// Homomorphism audit of an arbitrary assignment of operators to the given generators.
pub fn rep_check_with(spec: &AlgebraSpec, gens: &[Gen], action: &dyn Fn(Gen) -> Result<DiffOp>) -> Result<RepReport> {
    let space = var_space(spec);
    let images: Vec<DiffOp> = gens.iter().map(|&g| action(g)).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut pairs = 0;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            pairs += 1;
            let lhs = images[i].commutator(&images[j])?;
            let rhs = action_of_combo(space, &bracket(spec, gens[i], gens[j])?, action)?;
            let residual = lhs.sub(&rhs.scale(&int(BRACKET_ORIENTATION)))?;
            if !residual.is_zero() {
                failures.push(RepFailure { x: gens[i], y: gens[j], residual });
            }
        }
    }
    Ok(RepReport { spec: *spec, pairs_checked: pairs, failures })
}

/// One line of the lowest-weight realization check.
#[derive(Debug, Clone, Serialize)]
pub struct RealizationEntry {
    pub generator: Gen,
    pub expected: CoefPoly,
    pub got: CoefPoly,
}

impl RealizationEntry {
    pub fn is_ok(&self) -> bool {
        self.expected == self.got
    }
}

/// `π_R(X)·1 = 0` for X ∈ g⁺ and `π_L(Z)·1 = −Λ(Z)` for Z ∈ g⁰ (the left action
/// acts on the lowest weight vector through the inverse group element).
pub fn lowest_weight_realization(spec: &AlgebraSpec, params: &Params) -> Result<Vec<RealizationEntry>> {
    let dec = decomposition(spec)?;
    let space = var_space(spec);
    let one = CoefPoly::one(space);
    let mut out = Vec::new();
    for x in right_domain(spec)? {
        let got = right_action(spec, x)?.apply(&one)?;
        out.push(RealizationEntry { generator: x, expected: CoefPoly::zero(space), got });
    }
    if spec.family() != Family::Centerless {
        let weight = lowest_weight(spec, params)?;
        for &z in &dec.zero {
            let got = left_action(spec, params, z)?.apply(&one)?;
            let expected = CoefPoly::constant(space, -weight.get(z).cloned().unwrap_or_default());
            out.push(RealizationEntry { generator: z, expected, got });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Extension;

    fn spec(d: u32, two_ell: u32, ext: Extension) -> AlgebraSpec {
        AlgebraSpec::new(d, two_ell, ext).unwrap()
    }

    #[test]
    fn right_action_examples() {
        let s = spec(1, 3, Extension::Mass);
        let sp = var_space(&s);
        assert_eq!(right_action(&s, Gen::H).unwrap(), DiffOp::parse("d/dt + x1*d/dx0", sp).unwrap());
        let s = spec(2, 1, Extension::Mass);
        assert_eq!(right_action(&s, Gen::P(0, Pol::Plus)).unwrap(), DiffOp::parse("d/dx0", var_space(&s)).unwrap());
        let s = spec(1, 2, Extension::None);
        assert_eq!(right_action(&s, Gen::P(2, Pol::None)).unwrap(), DiffOp::parse("d/dx0", var_space(&s)).unwrap());
        assert!(matches!(right_action(&s, Gen::C), Err(Error::UnsupportedGenerator(_))));
        assert!(matches!(right_action(&spec(1, 1, Extension::Mass), Gen::D), Err(Error::UnsupportedGenerator(_))));
    }

    #[test]
    fn left_action_examples() {
        let p = Params::symbolic();
        let s = spec(1, 1, Extension::Mass);
        let sp = var_space(&s);
        assert_eq!(left_action(&s, &p, Gen::D).unwrap(), DiffOp::parse("delta - 2*t*d/dt - x0*d/dx0", sp).unwrap());
        assert_eq!(left_action(&s, &p, Gen::H).unwrap(), DiffOp::parse("-d/dt", sp).unwrap());
        let s = spec(2, 2, Extension::Exotic);
        assert_eq!(left_action(&s, &p, Gen::Theta).unwrap(), DiffOp::parse("-theta", var_space(&s)).unwrap());
        assert!(matches!(left_action(&spec(1, 2, Extension::None), &p, Gen::H), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn half_integer_seed_case() {
        let s = spec(1, 1, Extension::Mass);
        let p = Params::symbolic();
        let report = rep_check(&s, &p).unwrap();
        assert!(report.is_ok(), "{:?}", report.failures);
        // [π_L(P0), π_L(P1)] = π_L(I_0 M) = I_0 μ
        let comm = left_action(&s, &p, Gen::P(0, Pol::None))
            .unwrap()
            .commutator(&left_action(&s, &p, Gen::P(1, Pol::None)).unwrap())
            .unwrap();
        let i0 = Scalar::big_integer(central_constant(&s, 0).unwrap());
        assert_eq!(comm, DiffOp::constant(var_space(&s), &i0 * &Scalar::symbol(Symbol::Mu)));
    }

    #[test]
    fn fault_injection_names_the_pair() {
        let s = spec(2, 3, Extension::Mass);
        let p = Params::symbolic();
        let gens = enumerate_generators(&s);
        let report = rep_check_with(&s, &gens, &|g| {
            let op = left_action(&s, &p, g)?;
            Ok(if g == Gen::P(3, Pol::Plus) { op.scale(&Scalar::integer(2)) } else { op })
        })
        .unwrap();
        assert!(!report.is_ok());
        assert!(report.failures.iter().any(|f| f.x == Gen::P(3, Pol::Plus) || f.y == Gen::P(3, Pol::Plus)));
    }

    #[test]
    fn right_action_audit() {
        for s in AlgebraSpec::all_up_to(5) {
            let r = right_check(&s).unwrap();
            assert!(r.is_ok(), "{s}: {:?}", r.failures);
        }
    }

    #[test]
    fn realization_matches_lowest_weight() {
        for s in AlgebraSpec::all_up_to(5) {
            for e in lowest_weight_realization(&s, &Params::symbolic()).unwrap() {
                assert!(e.is_ok(), "{s} {}: {} vs {}", e.generator, e.expected, e.got);
            }
        }
    }
}
