//! Lowest-weight Verma modules.
//!
//! A basis vector is a PBW monomial `L^h · Π P^a · Π P^b |0⟩` where `L` is
//! the lead creation operator (`H`, or `C` for the centerless family)
//! and the `P` creation operators commute among themselves. Two action
//! engines are provided: a generic normal-ordering oracle that uses only
//! the bracket table and the lowest-weight conditions, and the explicit
//! closed-form actions for the d = 2 families.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, ToPrimitive};
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{decomposition, d_grade, j_charge, Decomposition, Family, Gen, GenCombo, Part, Pol, StructureTable};
use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::scalars::{binomial, central_constant, factorial, Scalar, Symbol};

/// Exponent record of a basis monomial.
///
/// * d = 1 mass: `a[n]` is the exponent of `P^n`, `n ≤ ℓ-½`; `b` is empty.
/// * d = 2 mass: `a[n]`, `b[n]` are the exponents of `P^n+`, `P^n-`, `n ≤ ℓ-½`.
/// * d = 2 exotic: `a[n]` for `P^n+`, `n ≤ ℓ`; `b[n]` for `P^n-`, `n ≤ ℓ-1`.
/// * centerless: `h` is the exponent of `C`, `a[0]` that of `P2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PbwMonomial {
    pub h: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

/// Maps a monomial and summation index to the term it contributes, if any.
type CreationTerm<'a> = dyn Fn(&PbwMonomial, i64) -> Option<(PbwMonomial, Scalar)> + 'a;

impl PbwMonomial {
    pub fn degree(&self) -> u32 {
        self.h + self.a.iter().sum::<u32>() + self.b.iter().sum::<u32>()
    }

    pub fn is_vacuum(&self) -> bool {
        self.degree() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad monomial '{s}': {e}")))
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Finite linear combination of basis monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleVector(BTreeMap<PbwMonomial, Scalar>);

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        ModuleVector::term(m, Scalar::one())
    }

    pub fn term(m: PbwMonomial, c: Scalar) -> Self {
        let mut v = ModuleVector::zero();
        v.add_term(m, c);
        v
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.0.remove(&m);
                }
            }
            None => {
                self.0.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.0 {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::integer(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> ModuleVector {
        let mut out = ModuleVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.0.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.0.get(m).cloned().unwrap_or_default()
    }

    /// If `self = λ · other` for a scalar `λ`, return `λ`.
    pub fn ratio_to(&self, other: &ModuleVector) -> Option<Scalar> {
        if other.is_zero() {
            return self.is_zero().then(Scalar::zero);
        }
        let (m, c) = other.0.iter().next().expect("nonzero");
        let lambda = self.coeff(m).checked_div(c).ok()?;
        (*self == other.scale(&lambda)).then_some(lambda)
    }

    /// Apply `f` to every coefficient.
    pub fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar>) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (m, c) in &self.0 {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// JSON object `{monomial-json: scalar-string}`, e.g. `{"{\"h\":0,\"a\":[2],\"b\":[]}": "1"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map = self
            .0
            .iter()
            .map(|(m, c)| (serde_json::to_string(m).expect("monomials serialize"), serde_json::Value::String(c.to_text())))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ModuleVector> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("module vector JSON must be an object".into()))?;
        let mut out = ModuleVector::zero();
        for (k, c) in obj {
            let m: PbwMonomial = serde_json::from_str(k).map_err(|e| Error::Parse(format!("bad monomial key {k}: {e}")))?;
            let c = c.as_str().ok_or_else(|| Error::Parse(format!("coefficient of {k} must be a string")))?;
            out.add_term(m, Scalar::parse(c)?);
        }
        Ok(out)
    }
}

impl Serialize for ModuleVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(m, c)| format!("({c}){m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Eigenvalues of the g⁰ generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Weight(pub BTreeMap<Gen, Scalar>);

impl Weight {
    pub fn get(&self, g: Gen) -> Option<&Scalar> {
        self.0.get(&g)
    }

    pub fn insert(&mut self, g: Gen, v: Scalar) {
        self.0.insert(g, v);
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = self.0.iter().map(|(g, v)| (g.to_string(), v.to_text())).collect();
        m.serialize(s)
    }
}

/// Values of the weight symbols, each either a rational or left symbolic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Params(BTreeMap<Symbol, Scalar>);

impl Params {
    /// No values at all.
    pub fn empty() -> Self {
        Params::default()
    }

    /// Every symbol stands for itself.
    pub fn symbolic() -> Self {
        Params(Symbol::ALL.iter().map(|&s| (s, Scalar::symbol(s))).collect())
    }

    pub fn with(mut self, sym: Symbol, v: Scalar) -> Self {
        self.0.insert(sym, v);
        self
    }

    pub fn with_int(self, sym: Symbol, v: i64) -> Self {
        self.with(sym, Scalar::integer(v))
    }

    pub fn set(&mut self, sym: Symbol, v: Scalar) {
        self.0.insert(sym, v);
    }

    pub fn get(&self, sym: Symbol) -> Result<Scalar> {
        self.0.get(&sym).cloned().ok_or_else(|| Error::MissingParameter(sym.name().into()))
    }

    /// The symbols a family's lowest weight depends on.
    pub fn required(spec: &AlgebraSpec) -> Vec<Symbol> {
        match spec.family() {
            Family::Mass1 => vec![Symbol::Delta, Symbol::Mu],
            Family::Mass2 => vec![Symbol::Delta, Symbol::R, Symbol::Mu],
            Family::Exotic2 => vec![Symbol::Delta, Symbol::R, Symbol::Theta],
            Family::Centerless => vec![Symbol::Delta, Symbol::Kappa],
        }
    }

    pub fn check(&self, spec: &AlgebraSpec) -> Result<()> {
        for s in Params::required(spec) {
            self.get(s)?;
        }
        Ok(())
    }

    /// Replace a symbolic value by a rational in every entry.
    pub fn specialize(&self, sym: Symbol, value: &num::BigRational) -> Result<Params> {
        let mut out = Params::empty();
        for (k, v) in &self.0 {
            out.set(*k, v.substitute_one(sym, value)?);
        }
        Ok(out)
    }
}

/// The lowest weight of a family for given parameter values.
pub fn lowest_weight(spec: &AlgebraSpec, params: &Params) -> Result<Weight> {
    params.check(spec)?;
    let mut w = Weight::default();
    let neg = |s: Symbol| -> Result<Scalar> { Ok(-params.get(s)?) };
    w.insert(Gen::D, neg(Symbol::Delta)?);
    match spec.family() {
        Family::Mass1 => w.insert(Gen::M, neg(Symbol::Mu)?),
        Family::Mass2 => {
            w.insert(Gen::J, neg(Symbol::R)?);
            w.insert(Gen::M, neg(Symbol::Mu)?);
        }
        Family::Exotic2 => {
            w.insert(Gen::J, neg(Symbol::R)?);
            w.insert(Gen::Theta, params.get(Symbol::Theta)?);
        }
        Family::Centerless => w.insert(Gen::P(1, Pol::None), neg(Symbol::Kappa)?),
    }
    Ok(w)
}

/// Where a creation generator's exponent lives in a [`PbwMonomial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Lead,
    A(usize),
    B(usize),
}

/// Which basis monomials to select.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisConstraint {
    /// Total PBW degree.
    Level(u32),
    /// Eigenvalues of D (and optionally J).
    Weight(Weight),
}

/// A Verma module with fixed parameter values and a memoized action oracle.
#[derive(Debug)]
pub struct VermaModule {
    spec: AlgebraSpec,
    params: Params,
    table: StructureTable,
    dec: Decomposition,
    weight: Weight,
    lead: Gen,
    creations: Vec<(Gen, Slot)>,
    na: usize,
    nb: usize,
    memo: RefCell<HashMap<(Gen, PbwMonomial), ModuleVector>>,
}

impl VermaModule {
    pub fn new(spec: &AlgebraSpec, params: &Params) -> Result<Self> {
        let weight = lowest_weight(spec, params)?;
        let dec = decomposition(spec)?;
        let two_ell = spec.two_ell();
        let (lead, creations, na, nb): (Gen, Vec<(Gen, Slot)>, usize, usize) = match spec.family() {
            Family::Mass1 => {
                let k = (two_ell as usize - 1) / 2;
                (Gen::H, (0..=k).map(|n| (Gen::P(n as u32, Pol::None), Slot::A(n))).collect(), k + 1, 0)
            }
            Family::Mass2 => {
                let k = (two_ell as usize - 1) / 2;
                let mut c = Vec::new();
                for n in 0..=k {
                    c.push((Gen::P(n as u32, Pol::Plus), Slot::A(n)));
                    c.push((Gen::P(n as u32, Pol::Minus), Slot::B(n)));
                }
                (Gen::H, c, k + 1, k + 1)
            }
            Family::Exotic2 => {
                let ell = two_ell as usize / 2;
                let mut c = vec![(Gen::P(ell as u32, Pol::Plus), Slot::A(ell))];
                for n in 0..ell {
                    c.push((Gen::P(n as u32, Pol::Plus), Slot::A(n)));
                    c.push((Gen::P(n as u32, Pol::Minus), Slot::B(n)));
                }
                (Gen::H, c, ell + 1, ell)
            }
            Family::Centerless => (Gen::C, vec![(Gen::P(2, Pol::None), Slot::A(0))], 1, 0),
        };
        Ok(VermaModule {
            spec: *spec,
            params: params.clone(),
            table: StructureTable::new(spec),
            dec,
            weight,
            lead,
            creations,
            na,
            nb,
            memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.dec
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    /// The lowest weight `Λ`.
    pub fn lowest_weight(&self) -> &Weight {
        &self.weight
    }

    /// Creation generators in basis order (lead operator first).
    pub fn creation_generators(&self) -> Vec<Gen> {
        std::iter::once(self.lead).chain(self.creations.iter().map(|(g, _)| *g)).collect()
    }

    pub fn vacuum_monomial(&self) -> PbwMonomial {
        PbwMonomial { h: 0, a: vec![0; self.na], b: vec![0; self.nb] }
    }

    pub fn vacuum(&self) -> ModuleVector {
        ModuleVector::monomial(self.vacuum_monomial())
    }

    fn slot(&self, g: Gen) -> Option<Slot> {
        if g == self.lead {
            return Some(Slot::Lead);
        }
        self.creations.iter().find(|(c, _)| *c == g).map(|(_, s)| *s)
    }

    fn exponent(m: &PbwMonomial, s: Slot) -> u32 {
        match s {
            Slot::Lead => m.h,
            Slot::A(i) => m.a[i],
            Slot::B(i) => m.b[i],
        }
    }

    fn bumped(m: &PbwMonomial, s: Slot, delta: i64) -> Option<PbwMonomial> {
        let mut out = m.clone();
        let e = match s {
            Slot::Lead => &mut out.h,
            Slot::A(i) => &mut out.a[i],
            Slot::B(i) => &mut out.b[i],
        };
        let v = *e as i64 + delta;
        if v < 0 {
            return None;
        }
        *e = v as u32;
        Some(out)
    }

    /// Build a monomial from `(creation generator, exponent)` pairs.
    pub fn monomial_from(&self, factors: &[(Gen, u32)]) -> Result<PbwMonomial> {
        let mut m = self.vacuum_monomial();
        for &(g, e) in factors {
            let s = self.slot(g).ok_or_else(|| Error::UnsupportedGenerator(format!("{g} is not a creation operator")))?;
            m = Self::bumped(&m, s, e as i64).expect("nonnegative");
        }
        Ok(m)
    }

    /// Nonzero `(generator, exponent)` factors of a monomial, lead first.
    pub fn factors(&self, m: &PbwMonomial) -> Vec<(Gen, u32)> {
        std::iter::once((self.lead, Slot::Lead))
            .chain(self.creations.iter().copied())
            .map(|(g, s)| (g, Self::exponent(m, s)))
            .filter(|&(_, e)| e > 0)
            .collect()
    }

    /// `c H^h (P^n)^e … |0⟩` as plain text.
    pub fn render_text(&self, v: &ModuleVector) -> String {
        self.render(v, &|c| c.to_text(), &|g, e| if e == 1 { g.to_string() } else { format!("{g}^{e}") }, "|0>", " ")
    }

    /// The same in LaTeX.
    pub fn render_latex(&self, v: &ModuleVector) -> String {
        let gen = |g: Gen, e: u32| {
            let base = match g {
                Gen::P(n, Pol::None) => format!("P^{{({n})}}"),
                Gen::P(n, Pol::Plus) => format!("P^{{({n})}}_{{+}}"),
                Gen::P(n, Pol::Minus) => format!("P^{{({n})}}_{{-}}"),
                other => other.to_string(),
            };
            match (e, g) {
                (1, _) => base,
                (_, Gen::P(..)) => format!("\\left({base}\\right)^{{{e}}}"),
                _ => format!("{base}^{{{e}}}"),
            }
        };
        self.render(v, &|c| c.to_latex(), &gen, "\\ket{0}", " ")
    }

    fn render(
        &self,
        v: &ModuleVector,
        coef: &dyn Fn(&Scalar) -> String,
        gen: &dyn Fn(Gen, u32) -> String,
        vacuum: &str,
        sep: &str,
    ) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in v.terms().enumerate() {
            let (negative, c) = if c.to_text().starts_with('-') { (true, -c) } else { (false, c.clone()) };
            out.push_str(match (i, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            });
            if !c.is_one() {
                let t = coef(&c);
                if c.numer().num_terms() > 1 {
                    out.push_str(&format!("({t}){sep}"));
                } else {
                    out.push_str(&format!("{t}{sep}"));
                }
            }
            for (g, e) in self.factors(m) {
                out.push_str(&gen(g, e));
                out.push_str(sep);
            }
            out.push_str(vacuum);
        }
        out
    }

    /// Check a monomial has the right shape for this family.
    pub fn check_monomial(&self, m: &PbwMonomial) -> Result<()> {
        if m.a.len() != self.na || m.b.len() != self.nb {
            return Err(Error::Parse(format!(
                "monomial {m} must have {} a-entries and {} b-entries for {}",
                self.na, self.nb, self.spec
            )));
        }
        Ok(())
    }

    fn check_gen(&self, x: Gen) -> Result<()> {
        if self.dec.part_of(x).is_none() {
            return Err(Error::UnknownGenerator(x.to_string()));
        }
        Ok(())
    }

    // ---------------------------------------------------------------
    // Generic oracle
    // ---------------------------------------------------------------

    /// `X · v` computed by commutator rewriting down to the vacuum.
    pub fn act_generic(&self, x: Gen, v: &ModuleVector) -> Result<ModuleVector> {
        self.check_gen(x)?;
        let mut out = ModuleVector::zero();
        for (m, c) in v.terms() {
            self.check_monomial(m)?;
            out.add_scaled(&self.act_mono(x, m), c);
        }
        Ok(out)
    }

    /// Action of a linear combination of generators.
    pub fn act_combo(&self, x: &GenCombo, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (g, c) in x.iter() {
            out.add_scaled(&self.act_generic(*g, v)?, c);
        }
        Ok(out)
    }

    fn act_combo_mono(&self, x: &GenCombo, m: &PbwMonomial) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (g, c) in x.iter() {
            out.add_scaled(&self.act_mono(*g, m), c);
        }
        out
    }

    fn act_vec(&self, x: Gen, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.act_mono(x, m), c);
        }
        out
    }

    fn act_mono(&self, x: Gen, m: &PbwMonomial) -> ModuleVector {
        let key = (x, m.clone());
        if let Some(v) = self.memo.borrow().get(&key) {
            return v.clone();
        }
        let v = self.act_mono_uncached(x, m);
        self.memo.borrow_mut().insert(key, v.clone());
        v
    }

    fn act_mono_uncached(&self, x: Gen, m: &PbwMonomial) -> ModuleVector {
        // the lead creation operator is leftmost in every basis monomial
        if x == self.lead {
            return ModuleVector::monomial(Self::bumped(m, Slot::Lead, 1).expect("increment"));
        }
        // central elements act by their weight everywhere
        if Some(x) == self.spec.central() {
            return ModuleVector::term(m.clone(), self.weight.get(x).cloned().unwrap_or_default());
        }
        let part = self.dec.part_of(x).expect("generator checked");
        if m.h > 0 {
            // X · L · m' = L · (X · m') + [X, L] · m'
            let rest = Self::bumped(m, Slot::Lead, -1).expect("h > 0");
            let inner = self.act_mono(x, &rest);
            let mut out = self.act_vec(self.lead, &inner);
            if let Some(c) = self.table.get(x, self.lead) {
                out.add_scaled(&self.act_combo_mono(c, &rest), &Scalar::one());
            }
            return out;
        }
        if let Some(s) = self.slot(x) {
            // creation P operators commute with each other
            return ModuleVector::monomial(Self::bumped(m, s, 1).expect("increment"));
        }
        // peel off the first creation factor Y: X · Y · m'' = Y · (X · m'') + [X, Y] · m''
        let first = self.creations.iter().find(|(_, s)| Self::exponent(m, *s) > 0);
        match first {
            None => match part {
                Part::Minus => ModuleVector::zero(),
                Part::Zero => ModuleVector::term(m.clone(), self.weight.get(x).cloned().unwrap_or_default()),
                Part::Plus => unreachable!("creation operators handled above"),
            },
            Some(&(y, s)) => {
                let rest = Self::bumped(m, s, -1).expect("exponent > 0");
                let inner = self.act_mono(x, &rest);
                let mut out = self.act_vec(y, &inner);
                if let Some(c) = self.table.get(x, y) {
                    out.add_scaled(&self.act_combo_mono(c, &rest), &Scalar::one());
                }
                out
            }
        }
    }

    // ---------------------------------------------------------------
    // Closed forms (d = 2)
    // ---------------------------------------------------------------

    /// Explicit action formulas for the d = 2 families.
    pub fn act_closed_form(&self, x: Gen, m: &PbwMonomial) -> Result<ModuleVector> {
        self.check_gen(x)?;
        self.check_monomial(m)?;
        match self.spec.family() {
            Family::Mass2 => self.closed_mass2(x, m),
            Family::Exotic2 => self.closed_exotic(x, m),
            _ => Err(Error::UnsupportedFamily(format!("no closed-form action for {}", self.spec))),
        }
    }

    fn d_eigen(&self, m: &PbwMonomial) -> Scalar {
        let grade: i64 = self.grade(m);
        self.weight.get(Gen::D).expect("D weight") + &Scalar::integer(grade)
    }

    /// `Σ_{i=lo}^{hi} i! C(h,i) C(n,i) · f(i)`, the recurring creation sum.
    fn creation_sum(
        &self,
        out: &mut ModuleVector,
        m: &PbwMonomial,
        n: u32,
        lo: i64,
        hi: i64,
        f: &CreationTerm<'_>,
    ) {
        for i in lo.max(0)..=hi.min(m.h as i64) {
            let w = factorial(i as u32) * binomial(m.h as i64, i) * binomial(n as i64, i);
            if w == BigInt::from(0) {
                continue;
            }
            let mut base = m.clone();
            base.h -= i as u32;
            if let Some((mono, c)) = f(&base, i) {
                out.add_term(mono, &Scalar::big_integer(w) * &c);
            }
        }
    }

    fn closed_mass2(&self, x: Gen, m: &PbwMonomial) -> Result<ModuleVector> {
        let two_ell = self.spec.two_ell() as i64;
        let k = (two_ell - 1) / 2;
        let mu = self.params.get(Symbol::Mu)?;
        let i_const = |j: i64| Scalar::big_integer(central_constant(&self.spec, j as u32).expect("index in range"));
        let mut out = ModuleVector::zero();
        match x {
            Gen::M | Gen::D | Gen::J => {
                let w = self.weight_of(m);
                out.add_term(m.clone(), w.get(x).cloned().unwrap_or_default());
            }
            Gen::H => out.add_term(Self::bumped(m, Slot::Lead, 1).expect("inc"), Scalar::one()),
            Gen::C => {
                let kk = m.h as i64;
                if kk > 0 {
                    let c = &Scalar::integer(kk)
                        * &(&self.d_eigen(&PbwMonomial { h: 0, ..m.clone() }) + &Scalar::integer(kk - 1));
                    out.add_term(Self::bumped(m, Slot::Lead, -1).expect("h>0"), c);
                }
                let top = k as usize;
                if m.a[top] > 0 && m.b[top] > 0 {
                    let mut mm = m.clone();
                    mm.a[top] -= 1;
                    mm.b[top] -= 1;
                    let c = &(&(-&mu) * &Scalar::integer((k + 1) * m.a[top] as i64 * m.b[top] as i64)) * &i_const(k + 1);
                    out.add_term(mm, c);
                }
                for n in 0..top {
                    let coef = two_ell - n as i64;
                    if m.a[n] > 0 {
                        let mut mm = m.clone();
                        mm.a[n] -= 1;
                        mm.a[n + 1] += 1;
                        out.add_term(mm, Scalar::integer(coef * m.a[n] as i64));
                    }
                    if m.b[n] > 0 {
                        let mut mm = m.clone();
                        mm.b[n] -= 1;
                        mm.b[n + 1] += 1;
                        out.add_term(mm, Scalar::integer(coef * m.b[n] as i64));
                    }
                }
            }
            Gen::P(n, pol) => {
                let n_i = n as i64;
                let plus = pol == Pol::Plus;
                // creation part
                let lo = if n_i <= k { 0 } else { n_i - k };
                self.creation_sum(&mut out, m, n, lo, m.h as i64, &|base, i| {
                    let mut mm = base.clone();
                    let idx = (n_i - i) as usize;
                    if plus {
                        mm.a[idx] += 1
                    } else {
                        mm.b[idx] += 1
                    }
                    Some((mm, Scalar::one()))
                });
                // central part (annihilators only)
                if n_i > k {
                    self.creation_sum(&mut out, m, n, 0, n_i - k - 1, &|base, i| {
                        let idx = (two_ell - n_i + i) as usize;
                        let mut mm = base.clone();
                        let e = if plus { &mut mm.b[idx] } else { &mut mm.a[idx] };
                        if *e == 0 {
                            return None;
                        }
                        let mult = *e as i64;
                        *e -= 1;
                        Some((mm, &(&(-&mu) * &Scalar::integer(mult)) * &i_const(n_i - i)))
                    });
                }
            }
            _ => return Err(Error::UnknownGenerator(x.to_string())),
        }
        Ok(out)
    }

    fn closed_exotic(&self, x: Gen, m: &PbwMonomial) -> Result<ModuleVector> {
        let two_ell = self.spec.two_ell() as i64;
        let ell = two_ell / 2;
        let theta = self.params.get(Symbol::Theta)?;
        let i_const = |j: i64| Scalar::big_integer(central_constant(&self.spec, j as u32).expect("index in range"));
        let mut out = ModuleVector::zero();
        match x {
            Gen::Theta | Gen::D | Gen::J => {
                let w = self.weight_of(m);
                out.add_term(m.clone(), w.get(x).cloned().unwrap_or_default());
            }
            Gen::H => out.add_term(Self::bumped(m, Slot::Lead, 1).expect("inc"), Scalar::one()),
            Gen::C => {
                let hh = m.h as i64;
                if hh > 0 {
                    let c = &Scalar::integer(hh)
                        * &(&self.d_eigen(&PbwMonomial { h: 0, ..m.clone() }) + &Scalar::integer(hh - 1));
                    out.add_term(Self::bumped(m, Slot::Lead, -1).expect("h>0"), c);
                }
                let (l, l1) = (ell as usize, ell as usize - 1);
                if m.a[l] > 0 && m.b[l1] > 0 {
                    let mut mm = m.clone();
                    mm.a[l] -= 1;
                    mm.b[l1] -= 1;
                    let c = &(&theta * &Scalar::integer(ell * m.a[l] as i64 * m.b[l1] as i64)) * &i_const(ell + 1);
                    out.add_term(mm, c);
                }
                for n in 0..l {
                    if m.a[n] > 0 {
                        let mut mm = m.clone();
                        mm.a[n] -= 1;
                        mm.a[n + 1] += 1;
                        out.add_term(mm, Scalar::integer((two_ell - n as i64) * m.a[n] as i64));
                    }
                }
                for n in 0..l.saturating_sub(1) {
                    if m.b[n] > 0 {
                        let mut mm = m.clone();
                        mm.b[n] -= 1;
                        mm.b[n + 1] += 1;
                        out.add_term(mm, Scalar::integer((two_ell - n as i64) * m.b[n] as i64));
                    }
                }
            }
            Gen::P(n, pol) => {
                let n_i = n as i64;
                let plus = pol == Pol::Plus;
                // lowest i for which P^(n-i) is a creation operator
                let lo = match (plus, n_i > ell, n_i >= ell) {
                    (true, true, _) => n_i - ell,
                    (true, false, _) => 0,
                    (false, _, true) => n_i - ell + 1,
                    (false, _, false) => 0,
                };
                self.creation_sum(&mut out, m, n, lo, m.h as i64, &|base, i| {
                    let mut mm = base.clone();
                    let idx = (n_i - i) as usize;
                    if plus {
                        mm.a[idx] += 1
                    } else {
                        mm.b[idx] += 1
                    }
                    Some((mm, Scalar::one()))
                });
                let central_hi = if plus { n_i - ell - 1 } else { n_i - ell };
                let sign = if plus { 1 } else { -1 };
                self.creation_sum(&mut out, m, n, 0, central_hi, &|base, i| {
                    let idx = (two_ell - n_i + i) as usize;
                    let mut mm = base.clone();
                    let e = if plus { &mut mm.b[idx] } else { &mut mm.a[idx] };
                    if *e == 0 {
                        return None;
                    }
                    let mult = *e as i64;
                    *e -= 1;
                    Some((mm, &(&theta * &Scalar::integer(sign * mult)) * &i_const(n_i - i)))
                });
            }
            _ => return Err(Error::UnknownGenerator(x.to_string())),
        }
        Ok(out)
    }

    // ---------------------------------------------------------------
    // Weights and bases
    // ---------------------------------------------------------------

    /// D-grade of a monomial: `D`-eigenvalue minus `Λ(D)`.
    pub fn grade(&self, m: &PbwMonomial) -> i64 {
        let mut g = m.h as i64 * d_grade(&self.spec, self.lead);
        for (gen, s) in &self.creations {
            g += Self::exponent(m, *s) as i64 * d_grade(&self.spec, *gen);
        }
        g
    }

    /// J-charge of a monomial (zero for d = 1).
    pub fn charge(&self, m: &PbwMonomial) -> i64 {
        self.creations.iter().map(|(g, s)| Self::exponent(m, *s) as i64 * j_charge(*g)).sum()
    }

    /// Weight of a basis monomial. For the centerless family the `P1`
    /// entry is the diagonal part of its (non-diagonalizable) action.
    pub fn weight_of(&self, m: &PbwMonomial) -> Weight {
        let mut w = self.weight.clone();
        let d = w.get(Gen::D).expect("D weight") + &Scalar::integer(self.grade(m));
        w.insert(Gen::D, d);
        if let Some(j) = w.get(Gen::J).cloned() {
            w.insert(Gen::J, &j + &Scalar::integer(self.charge(m)));
        }
        w
    }

    /// All basis monomials meeting the constraint, in ascending order.
    pub fn level_basis(&self, constraint: &BasisConstraint) -> Result<Vec<PbwMonomial>> {
        let gens: Vec<(Gen, Slot)> = std::iter::once((self.lead, Slot::Lead)).chain(self.creations.iter().copied()).collect();
        let mut out = Vec::new();
        match constraint {
            BasisConstraint::Level(p) => {
                let mut m = self.vacuum_monomial();
                self.compositions(&gens, 0, *p, &mut m, &mut out);
            }
            BasisConstraint::Weight(w) => {
                let (grade, charge) = self.grade_target(w)?;
                let sign = d_grade(&self.spec, self.lead).signum();
                if grade * sign < 0 {
                    return Ok(out);
                }
                let graded: Vec<(Gen, Slot)> = gens.iter().copied().filter(|(g, _)| d_grade(&self.spec, *g) != 0).collect();
                let flat: Vec<(Gen, Slot)> = gens.iter().copied().filter(|(g, _)| d_grade(&self.spec, *g) == 0).collect();
                if !flat.is_empty() && charge.is_none() {
                    return Err(Error::InfiniteSelection(format!(
                        "{} has D-grade zero; constrain J as well",
                        flat.iter().map(|(g, _)| g.to_string()).collect::<Vec<_>>().join(", ")
                    )));
                }
                let mut candidates = Vec::new();
                let mut m = self.vacuum_monomial();
                self.graded(&graded, 0, grade * sign, sign, &mut m, &mut candidates);
                for mut m in candidates {
                    if let Some(j) = charge {
                        let missing = j - self.charge(&m);
                        match flat.as_slice() {
                            [] if missing != 0 => continue,
                            [] => {}
                            [(g, s)] => {
                                let q = j_charge(*g);
                                if q == 0 || missing % q != 0 || missing / q < 0 {
                                    continue;
                                }
                                m = Self::bumped(&m, *s, missing / q).expect("nonnegative");
                            }
                            _ => unreachable!("at most one grade-zero creation operator"),
                        }
                    }
                    out.push(m);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Integer D-grade (and J-charge, if given) of a target weight.
    fn grade_target(&self, w: &Weight) -> Result<(i64, Option<i64>)> {
        let diff = |g: Gen| -> Result<Option<i64>> {
            let (Some(target), Some(base)) = (w.get(g), self.weight.get(g)) else {
                return Ok(None);
            };
            let d = target - base;
            let q = d.as_rational().filter(|q| q.is_integer()).ok_or_else(|| {
                Error::InvalidSpec(format!("{g}-eigenvalue {target} is not the lowest weight shifted by an integer"))
            })?;
            Ok(Some(q.to_integer().to_i64().expect("small grade")))
        };
        let grade = diff(Gen::D)?.ok_or_else(|| Error::InfiniteSelection("the constraint must fix the D-eigenvalue".into()))?;
        Ok((grade, diff(Gen::J)?))
    }

    fn compositions(&self, gens: &[(Gen, Slot)], i: usize, left: u32, m: &mut PbwMonomial, out: &mut Vec<PbwMonomial>) {
        if i + 1 == gens.len() {
            let full = Self::bumped(m, gens[i].1, left as i64).expect("nonnegative");
            out.push(full);
            return;
        }
        for e in 0..=left {
            let mut next = Self::bumped(m, gens[i].1, e as i64).expect("nonnegative");
            self.compositions(gens, i + 1, left - e, &mut next, out);
        }
    }

    fn graded(&self, gens: &[(Gen, Slot)], i: usize, left: i64, sign: i64, m: &mut PbwMonomial, out: &mut Vec<PbwMonomial>) {
        if i == gens.len() {
            if left == 0 {
                out.push(m.clone());
            }
            return;
        }
        let g = d_grade(&self.spec, gens[i].0) * sign;
        let mut e = 0;
        while e * g <= left {
            let mut next = Self::bumped(m, gens[i].1, e).expect("nonnegative");
            self.graded(gens, i + 1, left - e * g, sign, &mut next, out);
            e += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Extension;

    fn module(d: u32, two_ell: u32, ext: Extension) -> VermaModule {
        VermaModule::new(&AlgebraSpec::new(d, two_ell, ext).unwrap(), &Params::symbolic()).unwrap()
    }

    fn sym(s: Symbol) -> Scalar {
        Scalar::symbol(s)
    }

    #[test]
    fn vacuum_weights() {
        let v = module(1, 1, Extension::Mass);
        assert_eq!(v.lowest_weight().get(Gen::D), Some(&-sym(Symbol::Delta)));
        assert_eq!(v.lowest_weight().get(Gen::M), Some(&-sym(Symbol::Mu)));
        let e = module(2, 2, Extension::Exotic);
        assert_eq!(e.lowest_weight().get(Gen::Theta), Some(&sym(Symbol::Theta)));
        assert_eq!(e.lowest_weight().get(Gen::J), Some(&-sym(Symbol::R)));
        let c = module(1, 2, Extension::None);
        assert_eq!(c.lowest_weight().get(Gen::P(1, Pol::None)), Some(&-sym(Symbol::Kappa)));
    }

    #[test]
    fn rendering() {
        let v = module(1, 1, Extension::Mass);
        let s = v.monomial_from(&[(Gen::H, 1)]).unwrap();
        let p = v.monomial_from(&[(Gen::P(0, Pol::None), 2)]).unwrap();
        let mut x = ModuleVector::term(s, &Scalar::integer(2) * &sym(Symbol::Mu));
        x.add_term(p, Scalar::integer(-1));
        assert_eq!(v.render_text(&x), "-P0^2 |0> + 2*mu H |0>");
        assert_eq!(v.render_latex(&x), "-\\left(P^{(0)}\\right)^{2} \\ket{0} + 2\\mu H \\ket{0}");
        assert_eq!(v.render_text(&v.vacuum()), "|0>");
        assert_eq!(v.factors(&v.vacuum_monomial()), vec![]);
    }

    #[test]
    fn missing_parameter() {
        let spec = AlgebraSpec::new(1, 1, Extension::Mass).unwrap();
        let p = Params::empty().with_int(Symbol::Delta, 1);
        assert!(matches!(VermaModule::new(&spec, &p), Err(Error::MissingParameter(s)) if s == "mu"));
    }

    #[test]
    fn basic_actions() {
        let v = module(1, 1, Extension::Mass);
        let h = v.act_generic(Gen::H, &v.vacuum()).unwrap();
        let h_mono = v.monomial_from(&[(Gen::H, 1)]).unwrap();
        assert_eq!(h, ModuleVector::monomial(h_mono));
        let ch = v.act_generic(Gen::C, &h).unwrap();
        assert_eq!(ch, v.vacuum().scale(&-sym(Symbol::Delta)));
    }

    #[test]
    fn level_bases() {
        let v = module(1, 1, Extension::Mass);
        let mut w = v.lowest_weight().clone();
        w.insert(Gen::D, &-sym(Symbol::Delta) + &Scalar::integer(2));
        let basis = v.level_basis(&BasisConstraint::Weight(w)).unwrap();
        let expected = vec![v.monomial_from(&[(Gen::P(0, Pol::None), 2)]).unwrap(), v.monomial_from(&[(Gen::H, 1)]).unwrap()];
        assert_eq!(basis, expected);

        let c = module(1, 2, Extension::None);
        assert_eq!(c.level_basis(&BasisConstraint::Level(2)).unwrap().len(), 3);
        assert_eq!(c.level_basis(&BasisConstraint::Level(0)).unwrap(), vec![c.vacuum_monomial()]);

        let e = module(2, 2, Extension::Exotic);
        let mut w = e.lowest_weight().clone();
        w.0.remove(&Gen::J);
        assert!(matches!(e.level_basis(&BasisConstraint::Weight(w)), Err(Error::InfiniteSelection(_))));
    }

    #[test]
    fn centerless_d_eigenvalue() {
        let c = module(1, 2, Extension::None);
        let m = c.monomial_from(&[(Gen::C, 2), (Gen::P(2, Pol::None), 1)]).unwrap();
        let d = c.act_generic(Gen::D, &ModuleVector::monomial(m.clone())).unwrap();
        let expected = -(&sym(Symbol::Delta) + &Scalar::integer(6));
        assert_eq!(d, ModuleVector::term(m.clone(), expected.clone()));
        assert_eq!(c.weight_of(&m).get(Gen::D), Some(&expected));
    }

    #[test]
    fn weight_of_mass2() {
        let v = module(2, 1, Extension::Mass);
        let m = PbwMonomial { h: 1, a: vec![1], b: vec![0] };
        assert_eq!(v.weight_of(&m).get(Gen::D), Some(&(&-sym(Symbol::Delta) + &Scalar::integer(3))));
    }

    #[test]
    fn json_roundtrip() {
        let v = module(2, 3, Extension::Mass);
        let m = PbwMonomial { h: 1, a: vec![1, 0], b: vec![0, 2] };
        let x = v.act_generic(Gen::C, &ModuleVector::monomial(m)).unwrap();
        assert_eq!(ModuleVector::from_json(&x.to_json()).unwrap(), x);
    }
}
