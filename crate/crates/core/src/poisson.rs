//! The commutative Poisson algebra generated by the standard triple, its
//! reduction to the coordinate ring of a Casimir level set, and the grading
//! available on the nilpotent cone.
//!
//! The bracket is the Lie-Poisson bracket with structure constants
//! `{h, e+-} = +-2 e+-` and `{e+, e-} = h`, extended to polynomials by the
//! Leibniz rule. The level-set ideal is generated by `h^2 + 4 e+ e- - c`;
//! reduction eliminates every mixed `e+ e-` factor via
//! `e+ e- -> (c - h^2)/4`, which keeps pure powers of the ladder generators
//! intact.

use crate::exactnum::{GaussRational, Param, ParamPoly};
use crate::expr::ExprAst;
use crate::linalg::Matrix;
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Monomial `h^h_pow * e+^ep_pow * e-^em_pow`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CMono {
    pub h: u32,
    pub ep: u32,
    pub em: u32,
}

impl CMono {
    pub fn new(h: u32, ep: u32, em: u32) -> Self {
        CMono { h, ep, em }
    }

    pub fn one() -> Self {
        CMono::new(0, 0, 0)
    }

    pub fn degree(&self) -> u32 {
        self.h + self.ep + self.em
    }

    fn product(&self, other: &CMono) -> CMono {
        CMono::new(self.h + other.h, self.ep + other.ep, self.em + other.em)
    }

    pub fn is_mixed(&self) -> bool {
        self.ep > 0 && self.em > 0
    }
}

impl fmt::Display for CMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, pow) in [("h", self.h), ("ep", self.ep), ("em", self.em)] {
            match pow {
                0 => {}
                1 => parts.push(name.to_string()),
                k => parts.push(format!("{}^{}", name, k)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Commutative polynomial in `h`, `e+`, `e-` with parameter-polynomial
/// coefficients, in canonical form (no stored zero coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct ClassicalPoly {
    terms: BTreeMap<CMono, ParamPoly>,
}

impl ClassicalPoly {
    pub fn zero() -> Self {
        ClassicalPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        ClassicalPoly::constant(ParamPoly::one())
    }

    pub fn constant(c: ParamPoly) -> Self {
        ClassicalPoly::monomial(CMono::one(), c)
    }

    pub fn gen_h() -> Self {
        ClassicalPoly::monomial(CMono::new(1, 0, 0), ParamPoly::one())
    }

    pub fn gen_ep() -> Self {
        ClassicalPoly::monomial(CMono::new(0, 1, 0), ParamPoly::one())
    }

    pub fn gen_em() -> Self {
        ClassicalPoly::monomial(CMono::new(0, 0, 1), ParamPoly::one())
    }

    pub fn monomial(mono: CMono, coeff: ParamPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        ClassicalPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CMono, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &CMono) -> ParamPoly {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(ParamPoly::zero)
    }

    /// Degree in the generators (parameters are scalars); `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(CMono::degree).max()
    }

    /// `Some(d)` when every monomial has generator degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(CMono::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// `Some(coeff)` when the polynomial is a constant (possibly zero).
    pub fn as_constant(&self) -> Option<ParamPoly> {
        match self.terms.len() {
            0 => Some(ParamPoly::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (*m == CMono::one()).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn insert_term(terms: &mut BTreeMap<CMono, ParamPoly>, m: CMono, c: ParamPoly) {
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
        ClassicalPoly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, *m, -c);
        }
        ClassicalPoly { terms }
    }

    pub fn neg(&self) -> Self {
        ClassicalPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                Self::insert_term(&mut terms, ma.product(mb), ca * cb);
            }
        }
        ClassicalPoly { terms }
    }

    pub fn scale(&self, factor: &ParamPoly) -> Self {
        if factor.is_zero() {
            return ClassicalPoly::zero();
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_term(&mut terms, *m, c * factor);
        }
        ClassicalPoly { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = ClassicalPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to one generator.
    pub fn partial(&self, gen: Generator) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (pow, lowered) = match gen {
                Generator::H => (m.h, CMono::new(m.h.saturating_sub(1), m.ep, m.em)),
                Generator::EPlus => (m.ep, CMono::new(m.h, m.ep.saturating_sub(1), m.em)),
                Generator::EMinus => (m.em, CMono::new(m.h, m.ep, m.em.saturating_sub(1))),
            };
            if pow > 0 {
                Self::insert_term(
                    &mut terms,
                    lowered,
                    c.scale(&GaussRational::from_int(pow as i64)),
                );
            }
        }
        ClassicalPoly { terms }
    }

    /// The homogeneous component of generator degree `d`.
    pub fn component(&self, d: u32) -> Self {
        ClassicalPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Evaluate at a numeric point with every coefficient parameter bound.
    pub fn eval_point(
        &self,
        h: &GaussRational,
        ep: &GaussRational,
        em: &GaussRational,
        bindings: &[(Param, GaussRational)],
    ) -> Option<GaussRational> {
        let mut acc = GaussRational::zero();
        for (m, c) in &self.terms {
            let coeff = c.eval(bindings)?;
            let value = &(&coeff * &h.pow(m.h)) * &(&ep.pow(m.ep) * &em.pow(m.em));
            acc = &acc + &value;
        }
        Some(acc)
    }
}

impl fmt::Display for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|(ma, _), (mb, _)| {
            (mb.degree(), mb.h, mb.ep, mb.em).cmp(&(ma.degree(), ma.h, ma.ep, ma.em))
        });
        for (pos, (m, c)) in sorted.into_iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            let mono = m.to_string();
            match (c.as_single_term().is_some(), mono.as_str()) {
                (_, "1") => write!(f, "{}", c)?,
                (true, _) => {
                    if c == &ParamPoly::one() {
                        write!(f, "{}", mono)?
                    } else {
                        write!(f, "{}*{}", c, mono)?
                    }
                }
                (false, _) => write!(f, "({})*{}", c, mono)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    H,
    EPlus,
    EMinus,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::H, Generator::EPlus, Generator::EMinus];

    pub fn poly(self) -> ClassicalPoly {
        match self {
            Generator::H => ClassicalPoly::gen_h(),
            Generator::EPlus => ClassicalPoly::gen_ep(),
            Generator::EMinus => ClassicalPoly::gen_em(),
        }
    }
}

/// The Poisson bracket, computed from partial derivatives and the structure
/// constants of the standard triple:
///
/// `{f, g} = 2 e+ (f_h g_ep - f_ep g_h) - 2 e- (f_h g_em - f_em g_h)
///           + h (f_ep g_em - f_em g_ep)`.
pub fn pbracket(f: &ClassicalPoly, g: &ClassicalPoly) -> ClassicalPoly {
    let f_h = f.partial(Generator::H);
    let f_p = f.partial(Generator::EPlus);
    let f_m = f.partial(Generator::EMinus);
    let g_h = g.partial(Generator::H);
    let g_p = g.partial(Generator::EPlus);
    let g_m = g.partial(Generator::EMinus);

    let two_ep = ClassicalPoly::gen_ep().scale(&ParamPoly::from_int(2));
    let minus_two_em = ClassicalPoly::gen_em().scale(&ParamPoly::from_int(-2));

    let hp = f_h.mul(&g_p).sub(&f_p.mul(&g_h));
    let hm = f_h.mul(&g_m).sub(&f_m.mul(&g_h));
    let pm = f_p.mul(&g_m).sub(&f_m.mul(&g_p));

    two_ep
        .mul(&hp)
        .add(&minus_two_em.mul(&hm))
        .add(&ClassicalPoly::gen_h().mul(&pm))
}

/// The classical Casimir element `h^2 + 4 e+ e-`.
pub fn casimir_element() -> ClassicalPoly {
    ClassicalPoly::monomial(CMono::new(2, 0, 0), ParamPoly::one()).add(&ClassicalPoly::monomial(
        CMono::new(0, 1, 1),
        ParamPoly::from_int(4),
    ))
}

/// Value of the Casimir on the orbit: the formal parameter `c` or a bound
/// number.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CasimirBinding {
    Formal,
    Value(GaussRational),
}

impl CasimirBinding {
    pub fn zero() -> Self {
        CasimirBinding::Value(GaussRational::zero())
    }

    pub fn poly(&self) -> ParamPoly {
        match self {
            CasimirBinding::Formal => ParamPoly::param(Param::SmallC),
            CasimirBinding::Value(v) => ParamPoly::constant(v.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CasimirBinding::Value(v) if v.is_zero())
    }
}

impl fmt::Display for CasimirBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CasimirBinding::Formal => write!(f, "c"),
            CasimirBinding::Value(v) => write!(f, "{}", v),
        }
    }
}

/// Canonical representative modulo the ideal `(h^2 + 4 e+ e- - c)`: no
/// monomial carries both ladder generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitElement {
    rep: ClassicalPoly,
    binding: CasimirBinding,
}

impl OrbitElement {
    pub fn rep(&self) -> &ClassicalPoly {
        &self.rep
    }

    pub fn binding(&self) -> &CasimirBinding {
        &self.binding
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl fmt::Display for OrbitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// Reduce to the canonical representative: every `e+ e-` pair is replaced by
/// `(c - h^2)/4`. The replacement introduces no new mixed monomials, so one
/// pass per term is already a fixed point of the rewrite.
pub fn orbit_reduce(f: &ClassicalPoly, binding: &CasimirBinding) -> OrbitElement {
    let replacement = ClassicalPoly::constant(binding.poly())
        .sub(&ClassicalPoly::monomial(
            CMono::new(2, 0, 0),
            ParamPoly::one(),
        ))
        .scale(&ParamPoly::from_ratio(1, 4));
    let mut out = ClassicalPoly::zero();
    for (m, c) in f.terms() {
        let k = m.ep.min(m.em);
        let stripped = ClassicalPoly::monomial(CMono::new(m.h, m.ep - k, m.em - k), c.clone());
        out = out.add(&stripped.mul(&replacement.pow(k)));
    }
    OrbitElement {
        rep: out,
        binding: binding.clone(),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PoissonError {
    #[error("grading is only defined on the c = 0 level set (ideal is inhomogeneous otherwise)")]
    GradingUndefined,
    #[error("node {0} is not part of the classical grammar")]
    QuantumNode(&'static str),
    #[error("coefficient {0} is not a bound number")]
    UnboundCoefficient(String),
}

/// Homogeneous components of a cone element (`c = 0`), keyed by degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedDecomposition {
    components: BTreeMap<u32, ClassicalPoly>,
}

impl GradedDecomposition {
    pub fn component(&self, degree: u32) -> ClassicalPoly {
        self.components
            .get(&degree)
            .cloned()
            .unwrap_or_else(ClassicalPoly::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&u32, &ClassicalPoly)> {
        self.components.iter()
    }

    pub fn sum(&self) -> ClassicalPoly {
        self.components
            .values()
            .fold(ClassicalPoly::zero(), |acc, p| acc.add(p))
    }
}

/// Split a polynomial into homogeneous components of the cone coordinate
/// ring. Errors unless the Casimir binding is zero: on other level sets the
/// ideal is inhomogeneous and the grading does not descend.
pub fn graded_split(
    f: &ClassicalPoly,
    binding: &CasimirBinding,
) -> Result<GradedDecomposition, PoissonError> {
    if !binding.is_zero() {
        return Err(PoissonError::GradingUndefined);
    }
    let reduced = orbit_reduce(f, &CasimirBinding::zero());
    let mut components: BTreeMap<u32, ClassicalPoly> = BTreeMap::new();
    for (m, c) in reduced.rep().terms() {
        let entry = components
            .entry(m.degree())
            .or_insert_with(ClassicalPoly::zero);
        *entry = entry.add(&ClassicalPoly::monomial(*m, c.clone()));
    }
    Ok(GradedDecomposition { components })
}

/// Evaluate a classical expression tree to a polynomial.
pub fn eval_classical_expr(ast: &ExprAst) -> Result<ClassicalPoly, PoissonError> {
    match ast {
        ExprAst::Scalar(v) => Ok(ClassicalPoly::constant(ParamPoly::constant(v.clone()))),
        ExprAst::Param(p) => Ok(ClassicalPoly::constant(ParamPoly::param(*p))),
        ExprAst::GenH => Ok(ClassicalPoly::gen_h()),
        ExprAst::GenEPlus => Ok(ClassicalPoly::gen_ep()),
        ExprAst::GenEMinus => Ok(ClassicalPoly::gen_em()),
        ExprAst::Identity => Err(PoissonError::QuantumNode("I")),
        ExprAst::Neg(a) => Ok(eval_classical_expr(a)?.neg()),
        ExprAst::Add(a, b) => Ok(eval_classical_expr(a)?.add(&eval_classical_expr(b)?)),
        ExprAst::Sub(a, b) => Ok(eval_classical_expr(a)?.sub(&eval_classical_expr(b)?)),
        ExprAst::Mul(a, b) => Ok(eval_classical_expr(a)?.mul(&eval_classical_expr(b)?)),
        ExprAst::Pow(a, k) => Ok(eval_classical_expr(a)?.pow(*k)),
        ExprAst::Bracket(a, b) => Ok(pbracket(&eval_classical_expr(a)?, &eval_classical_expr(b)?)),
        ExprAst::Commutator(_, _) => Err(PoissonError::QuantumNode("[,]")),
        ExprAst::Sym(_, _) => Err(PoissonError::QuantumNode("(,)")),
    }
}

/// Outcome of one classical identity check.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub residual: OrbitElement,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Evaluate both sides, reduce on the orbit, and report the exact residual.
/// A nonzero residual is an outcome, not an error.
pub fn verify_identity(
    lhs: &ExprAst,
    rhs: &ExprAst,
    binding: &CasimirBinding,
) -> Result<IdentityCheck, PoissonError> {
    let l = eval_classical_expr(lhs)?;
    let r = eval_classical_expr(rhs)?;
    let residual = orbit_reduce(&l.sub(&r), binding);
    Ok(IdentityCheck { residual })
}

/// Report for the Casimir-centrality property suite.
#[derive(Clone, Debug)]
pub struct CentralityReport {
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CentralityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// For random polynomials `f`, check that the bracket of the Casimir element
/// with `f` reduces to zero on the orbit.
pub fn casimir_centrality_check(trials: usize, rng: &mut impl Rng) -> CentralityReport {
    let cas = casimir_element();
    let mut failures = 0;
    let mut first_failure = None;
    for _ in 0..trials {
        let f = crate::sampling::random_classical_poly(rng, 4, 6);
        let reduced = orbit_reduce(&pbracket(&cas, &f), &CasimirBinding::Formal);
        if !reduced.is_zero() {
            failures += 1;
            if first_failure.is_none() {
                first_failure = Some(format!("f = {}", f));
            }
        }
    }
    CentralityReport {
        trials,
        failures,
        first_failure,
    }
}

/// Monomial basis of the degree-`l` homogeneous component of the cone
/// coordinate ring: pure monomials `h^a e+^b` and `h^a e-^d` of degree `l`.
pub fn cone_basis(l: u32) -> Vec<CMono> {
    let mut out = Vec::new();
    for b in 0..=l {
        out.push(CMono::new(l - b, b, 0));
    }
    for d in 1..=l {
        out.push(CMono::new(l - d, 0, d));
    }
    out
}

/// Report of the adjoint-span computation for `h^l` inside the degree-`l`
/// component on the cone.
#[derive(Clone, Debug)]
pub struct CyclicityReport {
    pub l: u32,
    pub space_dim: usize,
    pub rank: usize,
}

impl CyclicityReport {
    pub fn is_cyclic(&self) -> bool {
        self.rank == self.space_dim
    }
}

fn cone_vector(p: &ClassicalPoly, basis: &[CMono]) -> Result<Vec<GaussRational>, PoissonError> {
    let mut v = Vec::with_capacity(basis.len());
    for m in basis {
        let c = p.coefficient(m);
        let value = c
            .as_constant()
            .ok_or_else(|| PoissonError::UnboundCoefficient(c.to_string()))?;
        v.push(value);
    }
    Ok(v)
}

/// Span of repeated generator brackets applied to `h^l` inside the
/// degree-`l` component on the cone (`c = 0`), by exact rank.
pub fn adjoint_cyclicity_check(l: u32) -> Result<CyclicityReport, PoissonError> {
    let basis = cone_basis(l);
    let zero = CasimirBinding::zero();
    let start = orbit_reduce(
        &ClassicalPoly::monomial(CMono::new(l, 0, 0), ParamPoly::one()),
        &zero,
    );
    let mut vectors = vec![cone_vector(start.rep(), &basis)?];
    let mut frontier = vec![start.rep().clone()];
    let mut rank = Matrix::rank_of_vectors(&vectors);
    // Each bracket round can only add vectors inside the fixed component, so
    // the loop stops as soon as a full round adds no rank.
    loop {
        let mut next_frontier = Vec::new();
        let mut grew = false;
        for w in &frontier {
            for gen in Generator::ALL {
                let candidate = orbit_reduce(&pbracket(&gen.poly(), w), &zero);
                if candidate.is_zero() {
                    continue;
                }
                let vec = cone_vector(candidate.rep(), &basis)?;
                let mut with_candidate = vectors.clone();
                with_candidate.push(vec.clone());
                let new_rank = Matrix::rank_of_vectors(&with_candidate);
                if new_rank > rank {
                    rank = new_rank;
                    vectors = with_candidate;
                    next_frontier.push(candidate.rep().clone());
                    grew = true;
                }
            }
        }
        if !grew || rank == basis.len() {
            break;
        }
        frontier = next_frontier;
    }
    Ok(CyclicityReport {
        l,
        space_dim: basis.len(),
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn reduce_formal(f: &ClassicalPoly) -> OrbitElement {
        orbit_reduce(f, &CasimirBinding::Formal)
    }

    #[test]
    fn generator_brackets() {
        let two_ep = ClassicalPoly::gen_ep().scale(&ParamPoly::from_int(2));
        assert_eq!(
            pbracket(&ClassicalPoly::gen_h(), &ClassicalPoly::gen_ep()),
            two_ep
        );
        assert_eq!(
            pbracket(&ClassicalPoly::gen_ep(), &ClassicalPoly::gen_em()),
            ClassicalPoly::gen_h()
        );
        let minus_two_em = ClassicalPoly::gen_em().scale(&ParamPoly::from_int(-2));
        assert_eq!(
            pbracket(&ClassicalPoly::gen_h(), &ClassicalPoly::gen_em()),
            minus_two_em
        );
    }

    #[test]
    fn leibniz_from_square() {
        // {h^2, e+} = 4 h e+
        let h2 = ClassicalPoly::gen_h().pow(2);
        let expected = ClassicalPoly::monomial(CMono::new(1, 1, 0), ParamPoly::from_int(4));
        assert_eq!(pbracket(&h2, &ClassicalPoly::gen_ep()), expected);
    }

    #[test]
    fn casimir_is_central_on_generators() {
        let cas = casimir_element();
        for gen in Generator::ALL {
            assert!(pbracket(&cas, &gen.poly()).is_zero());
        }
    }

    #[test]
    fn reduce_mixed_monomial() {
        // e+ e- -> (c - h^2)/4
        let mixed = ClassicalPoly::monomial(CMono::new(0, 1, 1), ParamPoly::one());
        let reduced = reduce_formal(&mixed);
        let expected = ClassicalPoly::constant(ParamPoly::param(Param::SmallC))
            .sub(&ClassicalPoly::gen_h().pow(2))
            .scale(&ParamPoly::from_ratio(1, 4));
        assert_eq!(reduced.rep(), &expected);
    }

    #[test]
    fn reduce_casimir_to_constant() {
        // h^2 + 4 e+ e- -> c
        let reduced = reduce_formal(&casimir_element());
        assert_eq!(
            reduced.rep(),
            &ClassicalPoly::constant(ParamPoly::param(Param::SmallC))
        );
    }

    #[test]
    fn single_step_reduction_matches_level_set_values() {
        // e+^2 e- reduces to e+ (c - h^2)/4; compare both at a random point
        // of the level set h^2 + 4 e+ e- = c0.
        let mixed = ClassicalPoly::monomial(CMono::new(0, 2, 1), ParamPoly::one());
        let reduced = reduce_formal(&mixed);
        let h0 = GaussRational::from_ratio(3, 2);
        let ep0 = GaussRational::from_ratio(-2, 5);
        let c0 = GaussRational::from_int(7);
        let em0 = &(&c0 - &(&h0 * &h0)) / &(&GaussRational::from_int(4) * &ep0);
        let bindings = [(Param::SmallC, c0)];
        let lhs = mixed.eval_point(&h0, &ep0, &em0, &bindings).unwrap();
        let rhs = reduced
            .rep()
            .eval_point(&h0, &ep0, &em0, &bindings)
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_split_examples() {
        // h^2 + h splits into degrees 2 and 1.
        let f = ClassicalPoly::gen_h().pow(2).add(&ClassicalPoly::gen_h());
        let split = graded_split(&f, &CasimirBinding::zero()).unwrap();
        assert_eq!(split.component(2), ClassicalPoly::gen_h().pow(2));
        assert_eq!(split.component(1), ClassicalPoly::gen_h());
        assert_eq!(split.sum(), f);

        // e+ e- reduces to -h^2/4, all in degree 2.
        let mixed = ClassicalPoly::monomial(CMono::new(0, 1, 1), ParamPoly::one());
        let split = graded_split(&mixed, &CasimirBinding::zero()).unwrap();
        let expected = ClassicalPoly::gen_h()
            .pow(2)
            .scale(&ParamPoly::from_ratio(-1, 4));
        assert_eq!(split.component(2), expected);

        // constant 5 sits in degree 0.
        let five = ClassicalPoly::constant(ParamPoly::from_int(5));
        let split = graded_split(&five, &CasimirBinding::zero()).unwrap();
        assert_eq!(split.component(0), five);

        assert_eq!(
            graded_split(&f, &CasimirBinding::Formal).unwrap_err(),
            PoissonError::GradingUndefined
        );
        assert_eq!(
            graded_split(&f, &CasimirBinding::Value(GaussRational::from_int(1))).unwrap_err(),
            PoissonError::GradingUndefined
        );
    }

    #[test]
    fn cyclicity_small_degrees() {
        let report = adjoint_cyclicity_check(2).unwrap();
        assert_eq!(report.space_dim, 5);
        assert_eq!(report.rank, 5);
        let report = adjoint_cyclicity_check(3).unwrap();
        assert_eq!(report.space_dim, 7);
        assert_eq!(report.rank, 7);
        let report = adjoint_cyclicity_check(1).unwrap();
        assert!(report.is_cyclic());
    }

    #[test]
    fn eval_point_uses_bindings() {
        let f = ClassicalPoly::constant(ParamPoly::param(Param::SmallC));
        assert_eq!(
            f.eval_point(
                &GaussRational::zero(),
                &GaussRational::zero(),
                &GaussRational::zero(),
                &[(Param::SmallC, GaussRational::new(int(2), int(0)))]
            ),
            Some(GaussRational::from_int(2))
        );
        assert_eq!(
            f.eval_point(
                &GaussRational::zero(),
                &GaussRational::zero(),
                &GaussRational::zero(),
                &[]
            ),
            None
        );
    }
}
