use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gcd::gcd;
use super::poly::{ParamPoly, Symbol, NSYM};
use crate::error::{Error, Result};

/// An exact rational function in the weight symbols.
///
/// Always kept in lowest terms with a monic denominator, so two scalars
/// are equal exactly when their fields are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: ParamPoly,
    den: ParamPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: ParamPoly::zero(), den: ParamPoly::one() }
    }

    pub fn one() -> Self {
        Scalar::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        Scalar { num: ParamPoly::integer(n), den: ParamPoly::one() }
    }

    pub fn big_integer(n: BigInt) -> Self {
        Scalar::rational(BigRational::from_integer(n))
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar { num: ParamPoly::constant(q), den: ParamPoly::one() }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::rational(BigRational::new(n.into(), d.into()))
    }

    pub fn symbol(sym: Symbol) -> Self {
        Scalar { num: ParamPoly::symbol(sym), den: ParamPoly::one() }
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Scalar { num: p, den: ParamPoly::one() }
    }

    /// Build `num / den` in canonical form.
    pub fn from_parts(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalized(num, den))
    }

    fn normalized(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            return Scalar { num: num.scale(&c.recip()), den: ParamPoly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
        };
        let lc = den.leading_coeff().recip();
        Scalar { num: num.scale(&lc), den: den.scale(&lc) }
    }

    /// `num / den` already free of common factors; only the leading coefficient is fixed.
    fn with_monic_denominator(num: ParamPoly, den: ParamPoly) -> Self {
        let lc = den.leading_coeff().recip();
        Scalar { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Re-run canonicalization; the identity on any value built through the public API.
    pub fn canonicalize(&self) -> Scalar {
        Scalar::normalized(self.num.clone(), self.den.clone())
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Replace symbols by rational values.
    pub fn substitute(&self, values: &[Option<BigRational>; NSYM]) -> Result<Scalar> {
        Scalar::from_parts(self.num.substitute(values), self.den.substitute(values))
    }

    pub fn substitute_one(&self, sym: Symbol, value: &BigRational) -> Result<Scalar> {
        let mut values: [Option<BigRational>; NSYM] = Default::default();
        values[sym.index()] = Some(value.clone());
        self.substitute(&values)
    }

    /// Whether `p` divides this scalar's numerator (the scalar must be a polynomial).
    pub fn divisible_by(&self, p: &ParamPoly) -> bool {
        self.den.is_one() && self.num.div_exact(p).is_some()
    }

    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            return self.num.to_text();
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num.to_text())
        } else {
            self.num.to_text()
        };
        let den = if self.den.num_terms() == 1 && is_bare_power(&self.den) {
            self.den.to_text()
        } else {
            format!("({})", self.den.to_text())
        };
        format!("{}/{}", num, den)
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            self.num.to_latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
        }
    }

    /// Parse the ASCII grammar, e.g. `(2*delta+1)/mu`.
    pub fn parse(s: &str) -> Result<Scalar> {
        crate::expr::parse_scalar(s)
    }
}

fn is_bare_power(p: &ParamPoly) -> bool {
    p.terms()
        .next()
        .is_some_and(|(m, c)| c.is_one() && m.0.iter().filter(|&&e| e > 0).count() == 1)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::integer(n)
    }
}

impl From<Symbol> for Scalar {
    fn from(s: Symbol) -> Self {
        Scalar::symbol(s)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::rational(q)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num + &rhs.num, den: ParamPoly::one() };
        }
        // Henrici: with g = gcd(b, d), only factors of g can cancel from
        // a(d/g) + c(b/g) against the denominator (b/g)(d/g)g.
        let g = gcd(&self.den, &rhs.den);
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return Scalar::zero();
        }
        let h = if g.is_constant() { ParamPoly::one() } else { gcd(&num, &g) };
        let num = num.div_exact(&h).expect("gcd divides");
        let den = &(&b * &d) * &g.div_exact(&h).expect("gcd divides");
        Scalar::with_monic_denominator(num, den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num * &rhs.num, den: ParamPoly::one() };
        }
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        // Henrici: cancel across the two fractions only.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let num = &self.num.div_exact(&g1).expect("gcd divides") * &rhs.num.div_exact(&g2).expect("gcd divides");
        let den = &self.den.div_exact(&g2).expect("gcd divides") * &rhs.den.div_exact(&g1).expect("gcd divides");
        Scalar::with_monic_denominator(num, den)
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a fallible variant.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta() -> Scalar {
        Scalar::symbol(Symbol::Delta)
    }
    fn mu() -> Scalar {
        Scalar::symbol(Symbol::Mu)
    }

    #[test]
    fn additive_inverse() {
        assert!((&delta() - &delta()).is_zero());
    }

    #[test]
    fn cancellation_to_canonical_form() {
        let a = &mu() / &delta();
        assert_eq!(&a * &delta(), mu());
    }

    #[test]
    fn division_cancels_common_factor() {
        let two_delta_one = &(&Scalar::integer(2) * &delta()) + &Scalar::one();
        let a = &two_delta_one / &mu();
        let q = &a / &two_delta_one;
        assert_eq!(q, Scalar::one() / mu());
        assert_eq!(q.to_text(), "1/mu");
    }

    #[test]
    fn sums_with_coprime_multivariate_denominators() {
        let p = |t: &str| Scalar::parse(t).unwrap();
        let x = p("-7/(-3*mu^2+3/2*kappa^2)");
        let y = p("(r+3*theta-3)/(theta^2-3/2*theta*kappa+1)");
        let z = p("-2*r^2/(-mu+1/2*r+1)");
        let s = &(&x + &y) + &z;
        assert_eq!(s, &x + &(&y + &z));
        assert_eq!(&(&s - &y) - &z, x);
    }

    #[test]
    fn division_by_zero_is_error() {
        assert!(matches!(delta().checked_div(&Scalar::zero()), Err(Error::DivisionByZero)));
        assert!(matches!(Scalar::from_parts(ParamPoly::one(), ParamPoly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn denominator_is_monic() {
        let a = &Scalar::one() / &(&Scalar::integer(-3) * &delta());
        assert_eq!(a.to_text(), "-1/3/delta");
        assert_eq!(Scalar::parse(&a.to_text()).unwrap(), a);
        let b = &(&Scalar::integer(2) * &delta() + Scalar::one()) / &mu();
        assert_eq!(b.to_text(), "(2*delta+1)/mu");
    }

    #[test]
    fn substitution() {
        let s = &(&Scalar::integer(2) * &delta()) + &Scalar::one();
        let v = s.substitute_one(Symbol::Delta, &BigRational::new((-1).into(), 2.into())).unwrap();
        assert!(v.is_zero());
    }
}
