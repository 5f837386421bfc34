//! The quantized algebra generated by `H`, `E+`, `E-` with the quantum
//! Casimir scalar `C`, presented as a word rewrite system whose normal forms
//! are the monomials `H^j E+^l` and `H^k E-^m`.
//!
//! The four rules are derived from the bracket axiom applied to the standard
//! triple, plus the Casimir relation with the half-symmetrized product:
//!
//! ```text
//! (R1)  E+ H   ->  H E+ + 2i E+          ([H, E+] = -2i E+)
//! (R2)  E- H   ->  H E- - 2i E-          ([H, E-] =  2i E-)
//! (R3)  E- E+  ->  E+ E- + i H           ([E+, E-] = -i H)
//! (R4)  E+ E-  ->  (C - H^2 - 2i H)/4    (Casimir, C kept formal)
//! ```
//!
//! Termination is by the lexicographic measure (opposite-sign ladder pairs,
//! minus-before-plus inversions, ladder-before-`H` inversions), asserted on
//! every rewrite in debug builds. Normal monomials form a basis
//! of the quotient algebra, so any rule-application order reduces to the
//! same canonical form; the property suite checks this on random words.

use crate::exactnum::{GaussRational, Param, ParamPoly};
use crate::expr::ExprAst;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    H,
    EPlus,
    EMinus,
}

impl Letter {
    fn is_ladder(self) -> bool {
        !matches!(self, Letter::H)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::H => write!(f, "H"),
            Letter::EPlus => write!(f, "Ep"),
            Letter::EMinus => write!(f, "Em"),
        }
    }
}

/// Finite word over the alphabet; arbitrary pre-reduction words are legal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NcWord(Vec<Letter>);

impl NcWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        NcWord(letters)
    }

    pub fn empty() -> Self {
        NcWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &NcWord) -> NcWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        NcWord(letters)
    }
}

impl fmt::Display for NcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Normal monomial `H^h_pow E+^e_pow` or `H^h_pow E-^e_pow`; when
/// `e_pow == 0` the sign flag is canonically `false`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NormalMono {
    h_pow: u32,
    e_pow: u32,
    e_minus: bool,
}

impl NormalMono {
    pub fn new(h_pow: u32, e_pow: u32, e_minus: bool) -> Self {
        NormalMono {
            h_pow,
            e_pow,
            e_minus: e_minus && e_pow > 0,
        }
    }

    pub fn identity() -> Self {
        NormalMono::new(0, 0, false)
    }

    pub fn h_pow(&self) -> u32 {
        self.h_pow
    }

    pub fn e_pow(&self) -> u32 {
        self.e_pow
    }

    pub fn is_minus_family(&self) -> bool {
        self.e_minus
    }

    pub fn degree(&self) -> u32 {
        self.h_pow + self.e_pow
    }

    pub fn word(&self) -> NcWord {
        let mut letters = vec![Letter::H; self.h_pow as usize];
        let ladder = if self.e_minus {
            Letter::EMinus
        } else {
            Letter::EPlus
        };
        letters.extend(std::iter::repeat_n(ladder, self.e_pow as usize));
        NcWord(letters)
    }
}

impl fmt::Display for NormalMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.h_pow {
            0 => {}
            1 => parts.push("H".to_string()),
            k => parts.push(format!("H^{}", k)),
        }
        let ladder = if self.e_minus { "Em" } else { "Ep" };
        match self.e_pow {
            0 => {}
            1 => parts.push(ladder.to_string()),
            k => parts.push(format!("{}^{}", ladder, k)),
        }
        if parts.is_empty() {
            write!(f, "I")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Element of the quantized algebra in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<NormalMono, ParamPoly>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        NcPoly::monomial(NormalMono::identity(), ParamPoly::one())
    }

    pub fn h() -> Self {
        NcPoly::monomial(NormalMono::new(1, 0, false), ParamPoly::one())
    }

    pub fn ep() -> Self {
        NcPoly::monomial(NormalMono::new(0, 1, false), ParamPoly::one())
    }

    pub fn em() -> Self {
        NcPoly::monomial(NormalMono::new(0, 1, true), ParamPoly::one())
    }

    pub fn letter(l: Letter) -> Self {
        match l {
            Letter::H => NcPoly::h(),
            Letter::EPlus => NcPoly::ep(),
            Letter::EMinus => NcPoly::em(),
        }
    }

    pub fn scalar(c: ParamPoly) -> Self {
        NcPoly::monomial(NormalMono::identity(), c)
    }

    pub fn monomial(mono: NormalMono, coeff: ParamPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        NcPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMono, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &NormalMono) -> ParamPoly {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(ParamPoly::zero)
    }

    /// Degree in the generators; `None` for the zero element.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(NormalMono::degree).max()
    }

    fn insert_term(terms: &mut BTreeMap<NormalMono, ParamPoly>, m: NormalMono, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, *m, c.clone());
        }
        NcPoly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, *m, -c);
        }
        NcPoly { terms }
    }

    pub fn neg(&self) -> Self {
        NcPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &ParamPoly) -> Self {
        if factor.is_zero() {
            return NcPoly::zero();
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_term(&mut terms, *m, c * factor);
        }
        NcPoly { terms }
    }

    /// Concatenate-and-reduce product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut inputs = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                inputs.push((ca * cb, ma.word().concat(&mb.word())));
            }
        }
        reduce_terms(inputs, Strategy::LeftmostInnermost)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = NcPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[a, b] = ab - ba`, reduced.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Half-symmetrized product `(a, b) = (ab + ba)/2`, reduced.
    pub fn sym(&self, other: &Self) -> Self {
        self.mul(other)
            .add(&other.mul(self))
            .scale(&ParamPoly::from_ratio(1, 2))
    }

    /// The terms as coefficient/word pairs, for re-reduction checks.
    pub fn word_terms(&self) -> Vec<(ParamPoly, NcWord)> {
        self.terms
            .iter()
            .map(|(m, c)| (c.clone(), m.word()))
            .collect()
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|(ma, _), (mb, _)| {
            (mb.degree(), mb.h_pow, !mb.e_minus, mb.e_pow).cmp(&(
                ma.degree(),
                ma.h_pow,
                !ma.e_minus,
                ma.e_pow,
            ))
        });
        for (pos, (m, c)) in sorted.into_iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            let mono = m.to_string();
            if mono == "I" {
                match c.as_single_term() {
                    Some(_) => write!(f, "{}*I", c)?,
                    None => write!(f, "({})*I", c)?,
                }
            } else if c == &ParamPoly::one() {
                write!(f, "{}", mono)?;
            } else if c.as_single_term().is_some() {
                write!(f, "{}*{}", c, mono)?;
            } else {
                write!(f, "({})*{}", c, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Rule-application order. Both orders reduce to the same normal form; the
/// pair exists so the property suite can check exactly that.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Rewrite at the leftmost reducible adjacent pair first.
    LeftmostInnermost,
    /// Rewrite at the rightmost reducible adjacent pair first.
    RightmostOutermost,
}

fn rule_for(a: Letter, b: Letter) -> Option<Vec<(ParamPoly, Vec<Letter>)>> {
    let two_i = ParamPoly::constant(GaussRational::imaginary(crate::exactnum::int(2)));
    let i = ParamPoly::i();
    match (a, b) {
        (Letter::EPlus, Letter::H) => Some(vec![
            (ParamPoly::one(), vec![Letter::H, Letter::EPlus]),
            (two_i, vec![Letter::EPlus]),
        ]),
        (Letter::EMinus, Letter::H) => Some(vec![
            (ParamPoly::one(), vec![Letter::H, Letter::EMinus]),
            (-&two_i, vec![Letter::EMinus]),
        ]),
        (Letter::EMinus, Letter::EPlus) => Some(vec![
            (ParamPoly::one(), vec![Letter::EPlus, Letter::EMinus]),
            (i, vec![Letter::H]),
        ]),
        (Letter::EPlus, Letter::EMinus) => Some(vec![
            (
                ParamPoly::param(Param::BigC).scale(&GaussRational::from_ratio(1, 4)),
                vec![],
            ),
            (ParamPoly::from_ratio(-1, 4), vec![Letter::H, Letter::H]),
            (
                ParamPoly::constant(GaussRational::imaginary(crate::exactnum::ratio(-1, 2))),
                vec![Letter::H],
            ),
        ]),
        _ => None,
    }
}

fn find_site(word: &NcWord, strategy: Strategy) -> Option<usize> {
    let letters = word.letters();
    let sites = (0..letters.len().saturating_sub(1))
        .filter(|&p| rule_for(letters[p], letters[p + 1]).is_some());
    match strategy {
        Strategy::LeftmostInnermost => sites.min(),
        Strategy::RightmostOutermost => sites.max(),
    }
}

/// Termination measure: (opposite-sign ladder pairs, minus-before-plus
/// inversions, ladder-before-H inversions). Lexicographically decreasing on
/// every rewrite.
#[cfg(debug_assertions)]
fn measure(word: &NcWord) -> (u64, u64, u64) {
    let letters = word.letters();
    let plus = letters.iter().filter(|l| **l == Letter::EPlus).count() as u64;
    let minus = letters.iter().filter(|l| **l == Letter::EMinus).count() as u64;
    let mut minus_before_plus = 0u64;
    let mut ladder_before_h = 0u64;
    for (idx, l) in letters.iter().enumerate() {
        for r in &letters[idx + 1..] {
            if *l == Letter::EMinus && *r == Letter::EPlus {
                minus_before_plus += 1;
            }
            if l.is_ladder() && *r == Letter::H {
                ladder_before_h += 1;
            }
        }
    }
    (plus * minus, minus_before_plus, ladder_before_h)
}

fn is_normal(word: &NcWord) -> bool {
    find_site(word, Strategy::LeftmostInnermost).is_none()
}

fn normal_word_to_mono(word: &NcWord) -> NormalMono {
    debug_assert!(is_normal(word));
    let letters = word.letters();
    let h_pow = letters.iter().filter(|l| **l == Letter::H).count() as u32;
    let e_pow = letters.len() as u32 - h_pow;
    let e_minus = letters
        .last()
        .map(|l| *l == Letter::EMinus)
        .unwrap_or(false);
    NormalMono::new(h_pow, e_pow, e_minus)
}

/// Reduce a formal sum of coefficient/word pairs to normal form.
///
/// Reduction is linear, so the worklist merges coefficients of identical
/// words; this keeps the frontier at one entry per distinct word instead of
/// one per rewrite path.
pub fn reduce_terms(inputs: Vec<(ParamPoly, NcWord)>, strategy: Strategy) -> NcPoly {
    let mut out: BTreeMap<NormalMono, ParamPoly> = BTreeMap::new();
    let mut work: BTreeMap<NcWord, ParamPoly> = BTreeMap::new();
    let merge = |work: &mut BTreeMap<NcWord, ParamPoly>, word: NcWord, coeff: ParamPoly| {
        if coeff.is_zero() {
            return;
        }
        match work.entry(word) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    };
    for (coeff, word) in inputs {
        merge(&mut work, word, coeff);
    }
    while let Some((word, coeff)) = work.pop_first() {
        match find_site(&word, strategy) {
            None => {
                NcPoly::insert_term(&mut out, normal_word_to_mono(&word), coeff);
            }
            Some(pos) => {
                let letters = word.letters();
                let replacements =
                    rule_for(letters[pos], letters[pos + 1]).expect("site carries a rule");
                for (rule_coeff, segment) in replacements {
                    let mut new_letters = Vec::with_capacity(letters.len() + 1);
                    new_letters.extend_from_slice(&letters[..pos]);
                    new_letters.extend_from_slice(&segment);
                    new_letters.extend_from_slice(&letters[pos + 2..]);
                    let new_word = NcWord(new_letters);
                    #[cfg(debug_assertions)]
                    debug_assert!(
                        measure(&new_word) < measure(&word),
                        "rewrite must decrease the termination measure"
                    );
                    merge(&mut work, new_word, &coeff * &rule_coeff);
                }
            }
        }
    }
    NcPoly { terms: out }
}

/// Reduce with the default (leftmost) strategy.
pub fn nc_reduce(inputs: Vec<(ParamPoly, NcWord)>) -> NcPoly {
    reduce_terms(inputs, Strategy::LeftmostInnermost)
}

/// Reduce a single word with coefficient one.
pub fn reduce_word(word: &NcWord) -> NcPoly {
    nc_reduce(vec![(ParamPoly::one(), word.clone())])
}

/// The normal monomials of degree at most `r`, `(r+1)^2` of them: the plus
/// family `H^j E+^l` with `j + l <= r` (covering the pure `H` powers) and
/// the minus family `H^k E-^m` with `k + m <= r`, `m >= 1`.
pub fn basis_enumerate(r: u32) -> Vec<NormalMono> {
    let mut out = Vec::new();
    for j in 0..=r {
        for l in 0..=(r - j) {
            out.push(NormalMono::new(j, l, false));
        }
    }
    for k in 0..=r {
        for m in 1..=(r.saturating_sub(k)) {
            out.push(NormalMono::new(k, m, true));
        }
    }
    out
}

/// The quantum Casimir combination `H^2 + 4 (E+, E-)` in normal form; the
/// Casimir relation makes it the scalar `C`.
pub fn quantum_casimir() -> NcPoly {
    NcPoly::h().pow(2).add(
        &NcPoly::ep()
            .sym(&NcPoly::em())
            .scale(&ParamPoly::from_int(4)),
    )
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuantumExprError {
    #[error("node {0} is not part of the quantum grammar")]
    ClassicalNode(&'static str),
}

/// Evaluate a quantum expression tree to a normal-form element.
pub fn eval_quantum_expr(ast: &ExprAst) -> Result<NcPoly, QuantumExprError> {
    match ast {
        ExprAst::Scalar(v) => Ok(NcPoly::scalar(ParamPoly::constant(v.clone()))),
        ExprAst::Param(p) => Ok(NcPoly::scalar(ParamPoly::param(*p))),
        ExprAst::GenH => Ok(NcPoly::h()),
        ExprAst::GenEPlus => Ok(NcPoly::ep()),
        ExprAst::GenEMinus => Ok(NcPoly::em()),
        ExprAst::Identity => Ok(NcPoly::one()),
        ExprAst::Neg(a) => Ok(eval_quantum_expr(a)?.neg()),
        ExprAst::Add(a, b) => Ok(eval_quantum_expr(a)?.add(&eval_quantum_expr(b)?)),
        ExprAst::Sub(a, b) => Ok(eval_quantum_expr(a)?.sub(&eval_quantum_expr(b)?)),
        ExprAst::Mul(a, b) => Ok(eval_quantum_expr(a)?.mul(&eval_quantum_expr(b)?)),
        ExprAst::Pow(a, k) => Ok(eval_quantum_expr(a)?.pow(*k)),
        ExprAst::Commutator(a, b) => Ok(eval_quantum_expr(a)?.commutator(&eval_quantum_expr(b)?)),
        ExprAst::Sym(a, b) => Ok(eval_quantum_expr(a)?.sym(&eval_quantum_expr(b)?)),
        ExprAst::Bracket(_, _) => Err(QuantumExprError::ClassicalNode("{,}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c_param() -> ParamPoly {
        ParamPoly::param(Param::BigC)
    }

    fn quarter(p: &ParamPoly) -> ParamPoly {
        p.scale(&GaussRational::from_ratio(1, 4))
    }

    /// (C - H^2 - 2iH)/4 as a normal-form element.
    fn ep_em_normal_form() -> NcPoly {
        NcPoly::scalar(quarter(&c_param()))
            .add(&NcPoly::monomial(
                NormalMono::new(2, 0, false),
                ParamPoly::from_ratio(-1, 4),
            ))
            .add(&NcPoly::monomial(
                NormalMono::new(1, 0, false),
                ParamPoly::constant(GaussRational::imaginary(crate::exactnum::ratio(-1, 2))),
            ))
    }

    #[test]
    fn casimir_rule_normal_form() {
        let w = NcWord::new(vec![Letter::EPlus, Letter::EMinus]);
        assert_eq!(reduce_word(&w), ep_em_normal_form());
    }

    #[test]
    fn swapped_ladder_pair() {
        // E- E+ -> (C - H^2 + 2iH)/4
        let w = NcWord::new(vec![Letter::EMinus, Letter::EPlus]);
        let expected = NcPoly::scalar(quarter(&c_param()))
            .add(&NcPoly::monomial(
                NormalMono::new(2, 0, false),
                ParamPoly::from_ratio(-1, 4),
            ))
            .add(&NcPoly::monomial(
                NormalMono::new(1, 0, false),
                ParamPoly::constant(GaussRational::imaginary(crate::exactnum::ratio(1, 2))),
            ));
        assert_eq!(reduce_word(&w), expected);
    }

    #[test]
    fn already_normal_word_is_fixed() {
        let w = NcWord::new(vec![Letter::H, Letter::EPlus]);
        assert_eq!(
            reduce_word(&w),
            NcPoly::monomial(NormalMono::new(1, 1, false), ParamPoly::one())
        );
    }

    #[test]
    fn commutator_of_h_and_ep() {
        // [H, E+] = -2i E+
        let got = NcPoly::h().commutator(&NcPoly::ep());
        let expected = NcPoly::monomial(
            NormalMono::new(0, 1, false),
            ParamPoly::constant(GaussRational::imaginary(crate::exactnum::int(-2))),
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn commutator_of_ladders() {
        // [E+, E-] = -i H
        let got = NcPoly::ep().commutator(&NcPoly::em());
        let expected = NcPoly::monomial(
            NormalMono::new(1, 0, false),
            ParamPoly::constant(GaussRational::imaginary(crate::exactnum::int(-1))),
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn sym_of_ladders_is_quarter_casimir_difference() {
        // (E+, E-) = (C - H^2)/4
        let got = NcPoly::ep().sym(&NcPoly::em());
        let expected = NcPoly::scalar(quarter(&c_param())).add(&NcPoly::monomial(
            NormalMono::new(2, 0, false),
            ParamPoly::from_ratio(-1, 4),
        ));
        assert_eq!(got, expected);
        // (H, H) = H^2
        assert_eq!(NcPoly::h().sym(&NcPoly::h()), NcPoly::h().pow(2));
    }

    #[test]
    fn quantum_casimir_reduces_to_scalar() {
        assert_eq!(quantum_casimir(), NcPoly::scalar(c_param()));
    }

    #[test]
    fn products_of_powers() {
        assert_eq!(
            NcPoly::h().pow(2).mul(&NcPoly::h().pow(3)),
            NcPoly::h().pow(5)
        );
        assert_eq!(
            NcPoly::h().mul(&NcPoly::ep()),
            NcPoly::monomial(NormalMono::new(1, 1, false), ParamPoly::one())
        );
        assert_eq!(NcPoly::ep().mul(&NcPoly::em()), ep_em_normal_form());
    }

    #[test]
    fn basis_sizes() {
        for r in 0..=8u32 {
            let basis = basis_enumerate(r);
            assert_eq!(basis.len(), ((r + 1) * (r + 1)) as usize);
            let unique: std::collections::BTreeSet<_> = basis.iter().collect();
            assert_eq!(unique.len(), basis.len());
        }
        assert_eq!(basis_enumerate(0), vec![NormalMono::identity()]);
        let r1 = basis_enumerate(1);
        assert_eq!(r1.len(), 4);
    }

    #[test]
    fn casimir_is_central_by_reduction() {
        let cas = quantum_casimir();
        for x in [NcPoly::h(), NcPoly::ep(), NcPoly::em()] {
            assert!(cas.commutator(&x).is_zero());
        }
    }
}
