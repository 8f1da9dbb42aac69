//! Sparse multivariate polynomials over ℚ in the weight symbols.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

/// Number of parameter symbols.
pub const NSYM: usize = 5;

/// The weight parameters that may appear in a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Delta,
    Mu,
    R,
    Theta,
    Kappa,
}

impl Symbol {
    pub const ALL: [Symbol; NSYM] = [Symbol::Delta, Symbol::Mu, Symbol::R, Symbol::Theta, Symbol::Kappa];

    pub fn index(self) -> usize {
        self as usize
    }

    /// ASCII name used by the text grammar.
    pub fn name(self) -> &'static str {
        match self {
            Symbol::Delta => "delta",
            Symbol::Mu => "mu",
            Symbol::R => "r",
            Symbol::Theta => "theta",
            Symbol::Kappa => "kappa",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Symbol::Delta => "\\delta",
            Symbol::Mu => "\\mu",
            Symbol::R => "r",
            Symbol::Theta => "\\theta",
            Symbol::Kappa => "\\kappa",
        }
    }

    pub fn from_name(s: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|sym| sym.name() == s)
    }
}

/// Exponent vector over the symbols, ordered graded-lexicographically
/// (total degree first, then exponents compared in symbol order δ, μ, r, θ, κ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NSYM]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NSYM])
    }

    pub fn var(sym: Symbol) -> Self {
        let mut e = [0; NSYM];
        e[sym.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            if *a < *b {
                return None;
            }
            *a -= b;
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the weight symbols with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        ParamPoly { terms }
    }

    pub fn integer(n: i64) -> Self {
        ParamPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn symbol(sym: Symbol) -> Self {
        ParamPoly::term(Monomial::var(sym), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(iter: I) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// The value if this polynomial has no symbol dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, sym: Symbol) -> u32 {
        self.terms.keys().map(|m| m.0[sym.index()]).max().unwrap_or(0)
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.terms.keys().any(|m| m.0[sym.index()] > 0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (dm, dc) = d.leading()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            rem = &rem - &d.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scale so that the leading coefficient is one.
    pub fn monic(&self) -> ParamPoly {
        match self.leading() {
            None => ParamPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Coefficients with respect to `sym`, indexed by power.
    pub fn to_univariate(&self, sym: Symbol) -> Vec<ParamPoly> {
        let i = sym.index();
        let mut out = vec![ParamPoly::zero(); self.degree_in(sym) as usize + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest.0[i] as usize;
            rest.0[i] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_univariate(sym: Symbol, coeffs: &[ParamPoly]) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let mut shift = Monomial::one();
            shift.0[sym.index()] = e as u32;
            for (m, v) in &c.terms {
                out.add_term(m.mul(&shift), v.clone());
            }
        }
        out
    }

    /// Evaluate every symbol that has a value in `values`, keeping the rest.
    pub fn substitute(&self, values: &[Option<BigRational>; NSYM]) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = *m;
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if rest.0[i] > 0 {
                        coeff *= num::pow(v.clone(), rest.0[i] as usize);
                        rest.0[i] = 0;
                    }
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// Render with the ASCII symbol names, e.g. `2*delta+1`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let factors = monomial_factors(m, |sym| sym.name().to_string(), "^");
            if factors.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let factors = monomial_factors(m, |sym| sym.latex().to_string(), "^");
            if factors.is_empty() {
                s.push_str(&rational_latex(&abs));
            } else {
                if !abs.is_one() {
                    s.push_str(&rational_latex(&abs));
                }
                s.push_str(&factors.join(" "));
            }
        }
        s
    }
}

fn monomial_factors(m: &Monomial, name: impl Fn(Symbol) -> String, pow: &str) -> Vec<String> {
    Symbol::ALL
        .iter()
        .filter(|s| m.0[s.index()] > 0)
        .map(|&s| {
            let e = m.0[s.index()];
            if e == 1 {
                name(s)
            } else {
                format!("{}{}{}", name(s), pow, e)
            }
        })
        .collect()
}

pub(crate) fn rational_latex(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        let sign = if c.is_negative() { "-" } else { "" };
        format!("{}\\frac{{{}}}{{{}}}", sign, c.numer().abs(), c.denom())
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta() -> ParamPoly {
        ParamPoly::symbol(Symbol::Delta)
    }
    fn mu() -> ParamPoly {
        ParamPoly::symbol(Symbol::Mu)
    }

    #[test]
    fn exact_division() {
        let a = &(&delta() + &ParamPoly::one()) * &(&mu() - &delta());
        let q = a.div_exact(&(&mu() - &delta())).unwrap();
        assert_eq!(q, &delta() + &ParamPoly::one());
        assert!(a.div_exact(&mu()).is_none());
    }

    #[test]
    fn univariate_roundtrip() {
        let p = &(&delta().pow(3) * &mu()) + &(&mu().pow(2) - &ParamPoly::integer(4));
        let coeffs = p.to_univariate(Symbol::Mu);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(ParamPoly::from_univariate(Symbol::Mu, &coeffs), p);
    }

    #[test]
    fn text_rendering() {
        let p = &(&delta().scale(&BigRational::from_integer(2.into())) + &ParamPoly::one()) - &mu().pow(2);
        assert_eq!(p.to_text(), "-mu^2+2*delta+1");
    }
}
