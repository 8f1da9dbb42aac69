//! Multivariate gcd over ℚ by recursive content / primitive-part
//! reduction and primitive pseudo-remainder sequences.

use num::integer::Integer;
use num::{BigInt, BigRational, One, Zero};

use super::poly::{ParamPoly, Symbol};

/// Monic gcd of `a` and `b` (zero only when both are zero).
pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return ParamPoly::one();
    }
    // A symbol occurring in only one argument divides out through its content.
    if let Some(&v) = Symbol::ALL.iter().find(|&&s| a.contains(s) != b.contains(s)) {
        return if a.contains(v) { gcd(&content(a, v), b) } else { gcd(a, &content(b, v)) };
    }
    let var = match main_symbol(a, b) {
        Some(v) => v,
        None => return ParamPoly::one(),
    };
    if !a.contains(var) {
        return gcd(a, &content(b, var));
    }
    if !b.contains(var) {
        return gcd(&content(a, var), b);
    }
    let ca = content(a, var);
    let cb = content(b, var);
    let c = gcd(&ca, &cb);
    let pa = a.to_univariate(var);
    let pb = b.to_univariate(var);
    let pa = primitive(&pa, &ca);
    let pb = primitive(&pb, &cb);
    let g = prs_gcd(pa, pb);
    let g = ParamPoly::from_univariate(var, &g);
    (&c * &g).monic()
}

/// The shared symbol of lowest degree, which keeps the remainder sequence short.
fn main_symbol(a: &ParamPoly, b: &ParamPoly) -> Option<Symbol> {
    Symbol::ALL
        .iter()
        .copied()
        .filter(|&s| a.contains(s) && b.contains(s))
        .min_by_key(|&s| a.degree_in(s).max(b.degree_in(s)))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content(p: &ParamPoly, var: Symbol) -> ParamPoly {
    let mut acc = ParamPoly::zero();
    for c in p.to_univariate(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Divide out `content`, then scale to coprime integer coefficients so the
/// rational numbers in a remainder sequence stay small.
fn primitive(coeffs: &[ParamPoly], content: &ParamPoly) -> Vec<ParamPoly> {
    let v: Vec<ParamPoly> = coeffs.iter().map(|c| c.div_exact(content).expect("content divides every coefficient")).collect();
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in v.iter().flat_map(|p| p.terms()) {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return v;
    }
    let f = BigRational::new(den, num);
    v.iter().map(|p| p.scale(&f)).collect()
}

fn univariate_content(coeffs: &[ParamPoly]) -> ParamPoly {
    let mut acc = ParamPoly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn trim(mut v: Vec<ParamPoly>) -> Vec<ParamPoly> {
    while v.last().is_some_and(ParamPoly::is_zero) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b` (both univariate, coefficients in the other symbols).
fn prem(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lb = &b[db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<ParamPoly> = r.iter().map(|c| lb * c).collect();
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            next[i + shift] = &next[i + shift] - &t;
        }
        r = trim(next);
    }
    r
}

fn prs_gcd(a: Vec<ParamPoly>, b: Vec<ParamPoly>) -> Vec<ParamPoly> {
    let (mut a, mut b) = (trim(a), trim(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            b = Vec::new();
        } else {
            let c = univariate_content(&r);
            b = primitive(&r, &c);
        }
    }
    let c = univariate_content(&a);
    primitive(&a, &c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: Symbol) -> ParamPoly {
        ParamPoly::symbol(s)
    }

    #[test]
    fn gcd_of_products() {
        let d = sym(Symbol::Delta);
        let m = sym(Symbol::Mu);
        let r = sym(Symbol::R);
        let common = &(&d * &m) + &ParamPoly::integer(3);
        let a = &common * &(&d - &r);
        let b = &common * &(&(&m * &m) + &r);
        assert_eq!(gcd(&a, &b), common.monic());
    }

    #[test]
    fn coprime_is_one() {
        let d = sym(Symbol::Delta);
        let k = sym(Symbol::Kappa);
        let a = &(&d * &d) + &ParamPoly::one();
        let b = &d + &k;
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_with_constant_content() {
        let d = sym(Symbol::Delta);
        let a = (&d + &ParamPoly::one()).scale(&num::BigRational::from_integer(6.into()));
        let b = (&(&d * &d) - &ParamPoly::one()).scale(&num::BigRational::from_integer(4.into()));
        assert_eq!(gcd(&a, &b), &d + &ParamPoly::one());
    }
}
