//! Multivariate polynomials over Q(i) in the six formal parameters
//! `alpha`, `beta`, `gamma`, `C`, `c`, `s`.
//!
//! The parameter set is fixed and global, so equality of two polynomials is
//! a straight comparison of canonical term maps. No zero coefficient is ever
//! stored.

use super::gauss::GaussRational;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The closed set of formal parameters.
///
/// `BigC` is the quantum Casimir scalar `C`, `SmallC` the classical orbit
/// constant `c`, and `S` the representation label `s`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Param {
    Alpha,
    Beta,
    Gamma,
    BigC,
    SmallC,
    S,
}

impl Param {
    pub const ALL: [Param; 6] = [
        Param::Alpha,
        Param::Beta,
        Param::Gamma,
        Param::BigC,
        Param::SmallC,
        Param::S,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Beta => "beta",
            Param::Gamma => "gamma",
            Param::BigC => "C",
            Param::SmallC => "c",
            Param::S => "s",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == name)
    }

    fn index(self) -> usize {
        match self {
            Param::Alpha => 0,
            Param::Beta => 1,
            Param::Gamma => 2,
            Param::BigC => 3,
            Param::SmallC => 4,
            Param::S => 5,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Exponent vector over the six parameters, ordered by graded lex so that
/// the maximum key of a term map is the leading term.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Exponents([u16; 6]);

impl Exponents {
    pub fn zero() -> Self {
        Exponents([0; 6])
    }

    pub fn of(param: Param, power: u16) -> Self {
        let mut e = [0; 6];
        e[param.index()] = power;
        Exponents(e)
    }

    pub fn get(&self, param: Param) -> u16 {
        self.0[param.index()]
    }

    pub fn with(&self, param: Param, power: u16) -> Self {
        let mut e = self.0;
        e[param.index()] = power;
        Exponents(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn product(&self, other: &Exponents) -> Exponents {
        let mut e = [0; 6];
        for k in 0..6 {
            e[k] = self.0[k] + other.0[k];
        }
        Exponents(e)
    }

    fn divide(&self, other: &Exponents) -> Option<Exponents> {
        let mut e = [0; 6];
        for k in 0..6 {
            e[k] = self.0[k].checked_sub(other.0[k])?;
        }
        Some(Exponents(e))
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of Q(i)[alpha, beta, gamma, C, c, s] in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamPoly {
    terms: BTreeMap<Exponents, GaussRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        ParamPoly::constant(GaussRational::one())
    }

    pub fn constant(value: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Exponents::zero(), value);
        }
        ParamPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        ParamPoly::constant(GaussRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ParamPoly::constant(GaussRational::from_ratio(num, den))
    }

    /// The imaginary unit as a constant polynomial.
    pub fn i() -> Self {
        ParamPoly::constant(GaussRational::i())
    }

    pub fn param(p: Param) -> Self {
        ParamPoly::monomial(Exponents::of(p, 1), GaussRational::one())
    }

    pub fn monomial(exponents: Exponents, coeff: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents, coeff);
        }
        ParamPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(value)` when the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<GaussRational> {
        if self.terms.is_empty() {
            return Some(GaussRational::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.is_constant() {
                return Some(c.clone());
            }
        }
        None
    }

    /// `Some((coeff, exponents))` when the polynomial is a single term.
    pub fn as_single_term(&self) -> Option<(GaussRational, Exponents)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &Exponents) -> GaussRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(GaussRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::total_degree).max()
    }

    pub fn degree_in(&self, param: Param) -> u16 {
        self.terms.keys().map(|e| e.get(param)).max().unwrap_or(0)
    }

    pub fn parameters(&self) -> BTreeSet<Param> {
        let mut out = BTreeSet::new();
        for e in self.terms.keys() {
            for p in Param::ALL {
                if e.get(p) > 0 {
                    out.insert(p);
                }
            }
        }
        out
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(Exponents, GaussRational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))
    }

    /// Scale so the graded-lex leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> ParamPoly {
        match self.leading() {
            None => ParamPoly::zero(),
            Some((_, lc)) => {
                let inv = lc.inverse().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    fn insert_term(terms: &mut BTreeMap<Exponents, GaussRational>, e: Exponents, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, factor: &GaussRational) -> ParamPoly {
        if factor.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate the bound parameters, leaving the rest formal.
    pub fn substitute(&self, bindings: &[(Param, GaussRational)]) -> ParamPoly {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut residual = *e;
            for (p, v) in bindings {
                let k = residual.get(*p);
                if k > 0 {
                    coeff = &coeff * &v.pow(k as u32);
                    residual = residual.with(*p, 0);
                }
            }
            Self::insert_term(&mut out, residual, coeff);
        }
        ParamPoly { terms: out }
    }

    /// Replace one parameter by a polynomial.
    pub fn substitute_poly(&self, param: Param, replacement: &ParamPoly) -> ParamPoly {
        let max_pow = self.degree_in(param);
        let mut powers = Vec::with_capacity(max_pow as usize + 1);
        powers.push(ParamPoly::one());
        for k in 1..=max_pow {
            let next = &powers[k as usize - 1] * replacement;
            powers.push(next);
        }
        let mut out = ParamPoly::zero();
        for (e, c) in &self.terms {
            let k = e.get(param);
            let stripped = ParamPoly::monomial(e.with(param, 0), c.clone());
            out = &out + &(&stripped * &powers[k as usize]);
        }
        out
    }

    /// Evaluate with every occurring parameter bound; `None` when a parameter
    /// is left unbound.
    pub fn eval(&self, bindings: &[(Param, GaussRational)]) -> Option<GaussRational> {
        let evaluated = self.substitute(bindings);
        evaluated.as_constant()
    }

    /// Exact division: `Some(q)` iff `self == q * divisor`.
    ///
    /// Single-divisor multivariate division with the graded-lex leading term;
    /// for one divisor the remainder vanishes exactly when the division is
    /// exact, so a divisibility failure is detected as soon as a leading term
    /// is not divisible.
    pub fn div_exact(&self, divisor: &ParamPoly) -> Option<ParamPoly> {
        let (lead_e, lead_c) = divisor.leading()?;
        let lead_c_inv = lead_c.inverse().expect("leading coefficient is nonzero");
        let mut remainder = self.clone();
        let mut quotient = ParamPoly::zero();
        while let Some((re, rc)) = remainder.leading() {
            let qe = re.divide(&lead_e)?;
            let qc = &rc * &lead_c_inv;
            let qterm = ParamPoly::monomial(qe, qc);
            remainder = &remainder - &(&qterm * divisor);
            quotient = &quotient + &qterm;
        }
        Some(quotient)
    }

    /// Largest `k` with `param^k` dividing the polynomial, and the quotient.
    /// The zero polynomial reports `(0, 0)`.
    pub fn extract_param_power(&self, param: Param) -> (u16, ParamPoly) {
        if self.is_zero() {
            return (0, ParamPoly::zero());
        }
        let k = self.terms.keys().map(|e| e.get(param)).min().unwrap_or(0);
        if k == 0 {
            return (0, self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.with(param, e.get(param) - k), c.clone()))
            .collect();
        (k, ParamPoly { terms })
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            ParamPoly::insert_term(&mut terms, *e, c.clone());
        }
        ParamPoly { terms }
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            ParamPoly::insert_term(&mut terms, *e, -c);
        }
        ParamPoly { terms }
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                ParamPoly::insert_term(&mut terms, ea.product(eb), ca * cb);
            }
        }
        ParamPoly { terms }
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

fn fmt_monomial(e: &Exponents) -> String {
    let mut parts = Vec::new();
    for p in Param::ALL {
        match e.get(p) {
            0 => {}
            1 => parts.push(p.name().to_string()),
            k => parts.push(format!("{}^{}", p.name(), k)),
        }
    }
    parts.join("*")
}

/// Split a coefficient into a display sign and magnitude text, treating a
/// mixed complex value as positive with parenthesized body.
fn fmt_coefficient(c: &GaussRational, with_monomial: bool) -> (bool, String) {
    use num_traits::Signed as _;
    let (negative, magnitude) = if c.im().is_zero() {
        (
            c.re().is_negative(),
            GaussRational::from_rational(c.re().abs()),
        )
    } else if c.re().is_zero() {
        (c.im().is_negative(), GaussRational::imaginary(c.im().abs()))
    } else {
        return (false, format!("({})", c));
    };
    let text = if with_monomial && magnitude.is_one() {
        String::new()
    } else {
        magnitude.to_string()
    };
    (negative, text)
}

impl fmt::Display for ParamPoly {
    /// Canonical text form with terms sorted by descending graded-lex
    /// exponent vector, e.g. `3*alpha^2*C - c + 2*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(e);
            let (negative, coeff_text) = fmt_coefficient(c, !mono.is_empty());
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            match (coeff_text.is_empty(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", mono)?,
                (false, true) => write!(f, "{}", coeff_text)?,
                (false, false) => write!(f, "{}*{}", coeff_text, mono)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
