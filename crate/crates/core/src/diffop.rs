//! Linear differential operators with polynomial coefficients in the
//! coordinates `t, x0, x1, …, y0, …` (the Weyl algebra), kept in the
//! normal order "coefficients left of derivatives".

use std::collections::BTreeMap;
use std::fmt;

use num::BigRational;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr::{parse_expr, Evaluator, Expr};
use crate::scalars::{binomial, falling, Scalar};

/// A coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    X(u32),
    Y(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T => f.write_str("t"),
            Var::X(n) => write!(f, "x{n}"),
            Var::Y(n) => write!(f, "y{n}"),
        }
    }
}

impl Var {
    pub fn parse(s: &str) -> Option<Var> {
        if s == "t" {
            return Some(Var::T);
        }
        let (head, digits) = s.split_at(1.min(s.len()));
        let n: u32 = digits.parse().ok()?;
        match head {
            "x" => Some(Var::X(n)),
            "y" => Some(Var::Y(n)),
            _ => None,
        }
    }

    fn latex(&self) -> String {
        match self {
            Var::T => "t".into(),
            Var::X(n) => format!("x_{{{n}}}"),
            Var::Y(n) => format!("y_{{{n}}}"),
        }
    }
}

/// The coordinate set `{t, x0 … x(nx-1), y0 … y(ny-1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct VarSpace {
    pub nx: u32,
    pub ny: u32,
}

impl VarSpace {
    pub fn new(nx: u32, ny: u32) -> Self {
        VarSpace { nx, ny }
    }

    pub fn len(&self) -> usize {
        1 + self.nx as usize + self.ny as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, v: Var) -> Option<usize> {
        match v {
            Var::T => Some(0),
            Var::X(n) if n < self.nx => Some(1 + n as usize),
            Var::Y(n) if n < self.ny => Some(1 + self.nx as usize + n as usize),
            _ => None,
        }
    }

    pub fn var(&self, i: usize) -> Var {
        if i == 0 {
            Var::T
        } else if i <= self.nx as usize {
            Var::X(i as u32 - 1)
        } else {
            Var::Y((i - 1 - self.nx as usize) as u32)
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        (0..self.len()).map(|i| self.var(i)).collect()
    }

    fn slot(&self, v: Var) -> Result<usize> {
        self.index(v).ok_or(Error::VariableMismatch)
    }

    fn zero_exps(&self) -> Vec<u32> {
        vec![0; self.len()]
    }

    /// Smallest space containing every coordinate named in `e`.
    pub fn infer(e: &Expr) -> VarSpace {
        let mut s = VarSpace::new(0, 0);
        fn walk(e: &Expr, s: &mut VarSpace) {
            let mut see = |name: &str| match Var::parse(name) {
                Some(Var::X(n)) => s.nx = s.nx.max(n + 1),
                Some(Var::Y(n)) => s.ny = s.ny.max(n + 1),
                _ => {}
            };
            match e {
                Expr::Name(n) | Expr::Deriv(n) => see(n),
                Expr::Num(_) => {}
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                    walk(a, s);
                    walk(b, s);
                }
                Expr::Neg(a) | Expr::Pow(a, _) => walk(a, s),
            }
        }
        walk(e, &mut s);
        s
    }
}

fn check_space(a: &VarSpace, b: &VarSpace) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::VariableMismatch)
    }
}

/// Polynomial in the coordinates with [`Scalar`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefPoly {
    space: VarSpace,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl CoefPoly {
    pub fn zero(space: VarSpace) -> Self {
        CoefPoly { space, terms: BTreeMap::new() }
    }

    pub fn constant(space: VarSpace, c: Scalar) -> Self {
        let mut p = CoefPoly::zero(space);
        p.add_term(space.zero_exps(), c);
        p
    }

    pub fn one(space: VarSpace) -> Self {
        CoefPoly::constant(space, Scalar::one())
    }

    pub fn var(space: VarSpace, v: Var) -> Result<Self> {
        CoefPoly::monomial(space, &[(v, 1)], Scalar::one())
    }

    /// `c * Π v^e`.
    pub fn monomial(space: VarSpace, powers: &[(Var, u32)], c: Scalar) -> Result<Self> {
        let mut e = space.zero_exps();
        for &(v, k) in powers {
            e[space.slot(v)?] += k;
        }
        let mut p = CoefPoly::zero(space);
        p.add_term(e, c);
        Ok(p)
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &CoefPoly) -> Result<CoefPoly> {
        check_space(&self.space, &other.space)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> CoefPoly {
        self.scale(&Scalar::integer(-1))
    }

    pub fn scale(&self, c: &Scalar) -> CoefPoly {
        if c.is_zero() {
            return CoefPoly::zero(self.space);
        }
        CoefPoly { space: self.space, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &CoefPoly) -> Result<CoefPoly> {
        check_space(&self.space, &other.space)?;
        let mut out = CoefPoly::zero(self.space);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// `∂^gamma` of this polynomial.
    pub fn derivative(&self, gamma: &[u32]) -> CoefPoly {
        let mut out = CoefPoly::zero(self.space);
        'terms: for (e, c) in &self.terms {
            let mut factor = num::BigInt::from(1);
            let mut ne = e.clone();
            for (i, &g) in gamma.iter().enumerate() {
                if g == 0 {
                    continue;
                }
                if e[i] < g {
                    continue 'terms;
                }
                factor *= falling(e[i] as i64, g as i64);
                ne[i] -= g;
            }
            out.add_term(ne, c * &Scalar::big_integer(factor));
        }
        out
    }

    /// Replace every scalar coefficient by `f(coefficient)`.
    pub fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar>) -> Result<CoefPoly> {
        let mut out = CoefPoly::zero(self.space);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    fn monomial_text(&self, e: &[u32]) -> Vec<String> {
        e.iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { self.space.var(i).to_string() } else { format!("{}^{}", self.space.var(i), k) })
            .collect()
    }

    fn monomial_latex(&self, e: &[u32]) -> String {
        e.iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { self.space.var(i).latex() } else { format!("{}^{{{}}}", self.space.var(i).latex(), k) })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Render as ASCII text, e.g. `2*mu*x1^2 - t`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| product_text(c, self.monomial_text(e)))
            .collect();
        join_signed(parts)
    }

    pub fn to_latex(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| product_latex(c, self.monomial_latex(e)))
            .collect();
        join_signed(parts)
    }

    /// Parse a polynomial (an operator expression without derivatives).
    pub fn parse(s: &str, space: VarSpace) -> Result<CoefPoly> {
        let op = DiffOp::parse(s, space)?;
        op.as_coefficient().ok_or_else(|| Error::Parse(format!("'{s}' contains derivatives")))
    }
}

impl fmt::Display for CoefPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn join_signed(parts: Vec<String>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

/// `c * f1 * f2 * …` with the coefficient folded in when it is ±1.
fn product_text(c: &Scalar, factors: Vec<String>) -> String {
    if factors.is_empty() {
        return c.to_text();
    }
    let body = factors.join("*");
    if c.is_one() {
        return body;
    }
    if (-c).is_one() {
        return format!("-{body}");
    }
    let ct = c.to_text();
    let atomic = c.numer().num_terms() == 1 && c.is_polynomial();
    if atomic {
        format!("{ct}*{body}")
    } else {
        format!("({ct})*{body}")
    }
}

fn product_latex(c: &Scalar, body: String) -> String {
    if body.is_empty() {
        return c.to_latex();
    }
    if c.is_one() {
        return body;
    }
    if (-c).is_one() {
        return format!("-{body}");
    }
    if c.numer().num_terms() == 1 {
        format!("{} {}", c.to_latex(), body)
    } else {
        format!("\\left({}\\right) {}", c.to_latex(), body)
    }
}

/// A differential operator `Σ_α c_α(t, x, y) ∂^α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOp {
    space: VarSpace,
    terms: BTreeMap<Vec<u32>, CoefPoly>,
}

impl DiffOp {
    pub fn zero(space: VarSpace) -> Self {
        DiffOp { space, terms: BTreeMap::new() }
    }

    pub fn constant(space: VarSpace, c: Scalar) -> Self {
        DiffOp::from_coefficient(CoefPoly::constant(space, c))
    }

    pub fn one(space: VarSpace) -> Self {
        DiffOp::constant(space, Scalar::one())
    }

    pub fn from_coefficient(c: CoefPoly) -> Self {
        let space = c.space;
        let mut op = DiffOp::zero(space);
        op.add_term(space.zero_exps(), c);
        op
    }

    /// Multiplication by a coordinate.
    pub fn var(space: VarSpace, v: Var) -> Result<Self> {
        Ok(DiffOp::from_coefficient(CoefPoly::var(space, v)?))
    }

    /// `∂_v^order`.
    pub fn partial(space: VarSpace, v: Var, order: u32) -> Result<Self> {
        let mut e = space.zero_exps();
        e[space.slot(v)?] = order;
        let mut op = DiffOp::zero(space);
        op.add_term(e, CoefPoly::one(space));
        Ok(op)
    }

    /// `coef * ∂^partials`.
    pub fn term(coef: CoefPoly, partials: &[(Var, u32)]) -> Result<Self> {
        let space = coef.space;
        let mut e = space.zero_exps();
        for &(v, k) in partials {
            e[space.slot(v)?] += k;
        }
        let mut op = DiffOp::zero(space);
        op.add_term(e, coef);
        Ok(op)
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CoefPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `∂^alpha`.
    pub fn coeff(&self, alpha: &[u32]) -> CoefPoly {
        self.terms.get(alpha).cloned().unwrap_or_else(|| CoefPoly::zero(self.space))
    }

    /// Highest total derivative order (0 for the zero operator).
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|a| a.iter().sum()).max().unwrap_or(0)
    }

    /// Every scalar coefficient appearing in the operator.
    pub fn scalars(&self) -> Vec<Scalar> {
        self.terms.values().flat_map(|c| c.terms.values().cloned()).collect()
    }

    /// The multiplication operator this is, if it has no derivatives.
    pub fn as_coefficient(&self) -> Option<CoefPoly> {
        match self.terms.len() {
            0 => Some(CoefPoly::zero(self.space)),
            1 => {
                let (a, c) = self.terms.iter().next().expect("one term");
                a.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, alpha: Vec<u32>, c: CoefPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(v) => {
                let sum = v.add(&c).expect("same space");
                if sum.is_zero() {
                    self.terms.remove(&alpha);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }

    pub fn add(&self, other: &DiffOp) -> Result<DiffOp> {
        check_space(&self.space, &other.space)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffOp) -> Result<DiffOp> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffOp {
        self.scale(&Scalar::integer(-1))
    }

    pub fn scale(&self, c: &Scalar) -> DiffOp {
        let mut out = DiffOp::zero(self.space);
        for (a, p) in &self.terms {
            out.add_term(a.clone(), p.scale(c));
        }
        out
    }

    /// Left multiplication by a polynomial: `p · A`.
    pub fn mul_coefficient(&self, p: &CoefPoly) -> Result<DiffOp> {
        check_space(&self.space, &p.space)?;
        let mut out = DiffOp::zero(self.space);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), p.mul(c)?);
        }
        Ok(out)
    }

    /// `A ∘ B`, normal ordered by the Leibniz rule
    /// `∂^α b = Σ_{γ≤α} C(α,γ) (∂^γ b) ∂^{α-γ}`.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        check_space(&self.space, &other.space)?;
        let mut out = DiffOp::zero(self.space);
        for (alpha, a) in &self.terms {
            let gammas = sub_multi_indices(alpha);
            for (beta, b) in &other.terms {
                for gamma in &gammas {
                    let db = b.derivative(gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let mut mult = num::BigInt::from(1);
                    for (i, &g) in gamma.iter().enumerate() {
                        mult *= binomial(alpha[i] as i64, g as i64);
                    }
                    let coef = a.mul(&db)?.scale(&Scalar::big_integer(mult));
                    let e: Vec<u32> = (0..alpha.len()).map(|i| alpha[i] - gamma[i] + beta[i]).collect();
                    out.add_term(e, coef);
                }
            }
        }
        Ok(out)
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &DiffOp) -> Result<DiffOp> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn pow(&self, k: u32) -> DiffOp {
        let mut acc = DiffOp::one(self.space);
        for _ in 0..k {
            acc = acc.compose(self).expect("same space");
        }
        acc
    }

    /// Apply to a polynomial.
    pub fn apply(&self, p: &CoefPoly) -> Result<CoefPoly> {
        check_space(&self.space, &p.space)?;
        let mut out = CoefPoly::zero(self.space);
        for (alpha, c) in &self.terms {
            out = out.add(&c.mul(&p.derivative(alpha))?)?;
        }
        Ok(out)
    }

    /// Replace every scalar coefficient by `f(coefficient)`.
    pub fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar>) -> Result<DiffOp> {
        let mut out = DiffOp::zero(self.space);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.map_scalars(f)?);
        }
        Ok(out)
    }

    /// Parse the operator grammar, e.g. `2*mu*d/dt + (d/dx0)^2`.
    pub fn parse(s: &str, space: VarSpace) -> Result<DiffOp> {
        OpEval { space }.eval(&parse_expr(s)?)
    }

    /// Parse with the coordinate set inferred from the expression.
    pub fn parse_inferred(s: &str) -> Result<DiffOp> {
        let e = parse_expr(s)?;
        OpEval { space: VarSpace::infer(&e) }.eval(&e)
    }

    fn partials_text(&self, alpha: &[u32]) -> Vec<String> {
        alpha
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                let v = self.space.var(i);
                if k == 1 {
                    format!("d/d{v}")
                } else {
                    format!("(d/d{v})^{k}")
                }
            })
            .collect()
    }

    fn partials_latex(&self, alpha: &[u32]) -> String {
        alpha
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                let v = self.space.var(i).latex();
                if k == 1 {
                    format!("\\partial_{{{v}}}")
                } else {
                    format!("\\partial_{{{v}}}^{{{k}}}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Terms in descending derivative order, each coefficient monomial written out.
    fn rendered_terms<F, G>(&self, term: F, join: G) -> String
    where
        F: Fn(&Scalar, &[u32], &[u32]) -> String,
        G: Fn(Vec<String>) -> String,
    {
        let mut parts = Vec::new();
        for (alpha, c) in self.terms.iter().rev() {
            for (e, s) in c.terms.iter().rev() {
                parts.push(term(s, e, alpha));
            }
        }
        join(parts)
    }

    pub fn to_text(&self) -> String {
        self.rendered_terms(
            |s, e, alpha| {
                let mut factors = CoefPoly::zero(self.space).monomial_text(e);
                factors.extend(self.partials_text(alpha));
                product_text(s, factors)
            },
            join_signed,
        )
    }

    pub fn to_latex(&self) -> String {
        self.rendered_terms(
            |s, e, alpha| {
                let poly = CoefPoly::zero(self.space);
                let body = [poly.monomial_latex(e), self.partials_latex(alpha)]
                    .into_iter()
                    .filter(|p| !p.is_empty())
                    .collect::<Vec<_>>()
                    .join(" ");
                product_latex(s, body)
            },
            join_signed,
        )
    }

    /// JSON form: a list of `{"coef": string, "partials": {var: order}}`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(alpha, c)| {
                    let partials: serde_json::Map<String, Value> = alpha
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(i, &k)| (self.space.var(i).to_string(), json!(k)))
                        .collect();
                    json!({ "coef": c.to_text(), "partials": partials })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value, space: VarSpace) -> Result<DiffOp> {
        let bad = || Error::Parse("operator JSON must be a list of {coef, partials}".into());
        let mut out = DiffOp::zero(space);
        for item in v.as_array().ok_or_else(bad)? {
            let coef = CoefPoly::parse(item.get("coef").and_then(Value::as_str).ok_or_else(bad)?, space)?;
            let mut partials = Vec::new();
            for (k, order) in item.get("partials").and_then(Value::as_object).ok_or_else(bad)? {
                let var = Var::parse(k).ok_or_else(|| Error::Parse(format!("unknown variable '{k}'")))?;
                let order = order.as_u64().and_then(|o| u32::try_from(o).ok()).ok_or_else(bad)?;
                partials.push((var, order));
            }
            out = out.add(&DiffOp::term(coef, &partials)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for DiffOp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl Serialize for CoefPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

fn sub_multi_indices(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(alpha.len())];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=a).map(move |g| {
                    let mut p = prefix.clone();
                    p.push(g);
                    p
                })
            })
            .collect();
    }
    out
}

struct OpEval {
    space: VarSpace,
}

impl Evaluator for OpEval {
    type Value = DiffOp;

    fn scalar(&self, s: Scalar) -> DiffOp {
        DiffOp::constant(self.space, s)
    }

    fn name(&self, name: &str) -> Result<DiffOp> {
        if let Some(v) = Var::parse(name) {
            return DiffOp::var(self.space, v);
        }
        crate::scalars::Symbol::from_name(name)
            .map(|s| DiffOp::constant(self.space, Scalar::symbol(s)))
            .ok_or_else(|| Error::Parse(format!("unknown name '{name}'")))
    }

    fn deriv(&self, name: &str) -> Result<DiffOp> {
        let v = Var::parse(name).ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
        DiffOp::partial(self.space, v, 1)
    }

    fn add(&self, a: DiffOp, b: DiffOp) -> Result<DiffOp> {
        a.add(&b)
    }

    fn mul(&self, a: DiffOp, b: DiffOp) -> Result<DiffOp> {
        a.compose(&b)
    }

    fn neg(&self, a: DiffOp) -> DiffOp {
        a.neg()
    }

    fn div(&self, a: DiffOp, b: DiffOp) -> Result<DiffOp> {
        let d = b
            .as_coefficient()
            .and_then(|c| c.as_constant())
            .ok_or_else(|| Error::Parse("can only divide by a scalar".into()))?;
        Ok(a.scale(&d.recip()?))
    }
}

/// Rational helper used by tests and callers that build operators by hand.
pub fn rational(n: i64, d: i64) -> Scalar {
    Scalar::rational(BigRational::new(n.into(), d.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp() -> VarSpace {
        VarSpace::new(1, 0)
    }

    fn op(s: &str) -> DiffOp {
        DiffOp::parse(s, sp()).unwrap()
    }

    #[test]
    fn leibniz_base_case() {
        assert_eq!(op("d/dx0 * x0"), op("x0*d/dx0 + 1"));
        assert_eq!(op("d/dx0").commutator(&op("x0")).unwrap(), op("1"));
    }

    #[test]
    fn heat_operator_square() {
        let h = op("2*mu*d/dt + (d/dx0)^2");
        assert_eq!(
            h.compose(&h).unwrap(),
            op("4*mu^2*(d/dt)^2 + 4*mu*d/dt*(d/dx0)^2 + (d/dx0)^4")
        );
    }

    #[test]
    fn heat_commutators() {
        let h = op("2*mu*d/dt + (d/dx0)^2");
        assert!(h.commutator(&op("-d/dt")).unwrap().is_zero());
        let d = op("delta - 2*t*d/dt - x0*d/dx0");
        assert_eq!(h.commutator(&d).unwrap(), h.scale(&Scalar::integer(-2)));
    }

    #[test]
    fn application() {
        let x2 = CoefPoly::parse("x0^2", sp()).unwrap();
        assert_eq!(op("d/dx0").apply(&x2).unwrap(), CoefPoly::parse("2*x0", sp()).unwrap());
        // 2μc + 2 = 0 for the ansatz x0^2 + c t
        let kernel = CoefPoly::parse("x0^2 - t/mu", sp()).unwrap();
        assert!(op("2*mu*d/dt + (d/dx0)^2").apply(&kernel).unwrap().is_zero());
        assert!(op("d/dt").apply(&CoefPoly::zero(sp())).unwrap().is_zero());
    }

    #[test]
    fn mismatched_spaces() {
        let a = DiffOp::partial(VarSpace::new(1, 0), Var::X(0), 1).unwrap();
        let b = DiffOp::partial(VarSpace::new(2, 0), Var::X(1), 1).unwrap();
        assert!(matches!(a.compose(&b), Err(Error::VariableMismatch)));
        assert!(matches!(DiffOp::partial(sp(), Var::Y(0), 1), Err(Error::VariableMismatch)));
    }

    #[test]
    fn text_roundtrip() {
        let sp = VarSpace::new(2, 2);
        let a = DiffOp::parse("(2*delta+1)/mu*x1*y0^2*d/dt*(d/dx0)^2 - t*x1*d/dy1 + 3 - theta*x0", sp).unwrap();
        assert_eq!(DiffOp::parse(&a.to_text(), sp).unwrap(), a);
        assert_eq!(DiffOp::from_json(&a.to_json(), sp).unwrap(), a);
        let inferred = DiffOp::parse_inferred(&a.to_text()).unwrap();
        assert_eq!(inferred.space(), sp);
    }

    #[test]
    fn rendering() {
        assert_eq!(op("2*mu*d/dt + (d/dx0)^2").to_text(), "2*mu*d/dt + (d/dx0)^2");
        assert_eq!(op("delta - 2*t*d/dt - x0*d/dx0").to_text(), "-2*t*d/dt - x0*d/dx0 + delta");
        assert_eq!(op("2*mu*d/dt + (d/dx0)^2").to_latex(), "2\\mu \\partial_{t} + \\partial_{x_{0}}^{2}");
    }
}
