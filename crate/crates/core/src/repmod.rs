//! Exact weight modules and the eigenvalue recursion.
//!
//! The module truncates the ladder representation
//! `H psi_n = -i n psi_n`, `E+- psi_n = -(i/2)(s + 1 +- n) psi_{n +- 2}` to
//! `N` levels starting at the lowest index `n0 = s + 1`. The truncation sets
//! out-of-range images to zero, so every algebraic check is restricted to
//! margin-safe columns, where the truncated matrices agree exactly with the
//! untruncated operators. With `n0 = s + 1` the bottom `E-` coefficient
//! vanishes on its own, so the lowest-weight boundary is exact rather than
//! imposed.

use crate::enveloping::{basis_enumerate, Letter, NcPoly, NcWord};
use crate::exactnum::{int, GaussRational, Param, ParamPoly, Rational};
use crate::linalg::Matrix;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("a weight module needs at least 3 levels, got {0}")]
    TooFewLevels(usize),
    #[error(
        "truncation too small: {levels} levels cannot certify degree {r} (need at least {needed})"
    )]
    TruncationTooSmall {
        levels: usize,
        r: u32,
        needed: usize,
    },
    #[error("margin-{margin} interior is empty for {levels} levels")]
    EmptyInterior { margin: usize, levels: usize },
    #[error("Casimir combination is not scalar on the interior: {0}")]
    NonScalarCasimir(String),
    #[error("coefficient contains unbound parameter {0}")]
    UnboundParameter(Param),
}

/// Truncated weight module with exact ladder matrices over Q(i).
#[derive(Clone, Debug)]
pub struct WeightModule {
    s: Rational,
    base: Rational,
    levels: usize,
    h_mat: Matrix,
    ep_mat: Matrix,
    em_mat: Matrix,
}

/// Build the `N`-level truncation of the module with label `s` and lowest
/// index `n0 = s + 1`.
pub fn build_module(s: &Rational, levels: usize) -> Result<WeightModule, ModuleError> {
    if levels < 3 {
        return Err(ModuleError::TooFewLevels(levels));
    }
    let base = s + Rational::one();
    let index = |k: usize| -> Rational { &base + int(2 * k as i64) };
    let mut h_mat = Matrix::zeros(levels, levels);
    let mut ep_mat = Matrix::zeros(levels, levels);
    let mut em_mat = Matrix::zeros(levels, levels);
    for k in 0..levels {
        let n = index(k);
        h_mat.set(k, k, GaussRational::imaginary(-&n));
        if k + 1 < levels {
            // E+ psi_n = -(i/2)(s + 1 + n) psi_{n+2}
            let coeff = -(s + Rational::one() + &n) / int(2);
            ep_mat.set(k + 1, k, GaussRational::imaginary(coeff));
        }
        if k > 0 {
            // E- psi_n = -(i/2)(s + 1 - n) psi_{n-2}
            let coeff = -(s + Rational::one() - &n) / int(2);
            em_mat.set(k - 1, k, GaussRational::imaginary(coeff));
        }
    }
    Ok(WeightModule {
        s: s.clone(),
        base,
        levels,
        h_mat,
        ep_mat,
        em_mat,
    })
}

impl WeightModule {
    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Weight index of basis column `k`.
    pub fn index(&self, k: usize) -> Rational {
        &self.base + int(2 * k as i64)
    }

    pub fn letter_matrix(&self, letter: Letter) -> &Matrix {
        match letter {
            Letter::H => &self.h_mat,
            Letter::EPlus => &self.ep_mat,
            Letter::EMinus => &self.em_mat,
        }
    }

    /// Columns at least `margin` levels away from both truncation
    /// boundaries; the truncated operators are exact there for words of
    /// length up to `margin`.
    pub fn interior_columns(&self, margin: usize) -> Vec<usize> {
        if 2 * margin >= self.levels {
            return Vec::new();
        }
        (margin..self.levels - margin).collect()
    }

    /// Matrix of a word, leftmost letter acting last.
    pub fn eval_word(&self, word: &NcWord) -> Matrix {
        let mut acc = Matrix::identity(self.levels);
        for letter in word.letters() {
            acc = &acc * self.letter_matrix(*letter);
        }
        acc
    }

    /// Matrix of a normal-form element; every parameter occurring in a
    /// coefficient must be bound.
    pub fn eval_nc(
        &self,
        poly: &NcPoly,
        bindings: &[(Param, GaussRational)],
    ) -> Result<Matrix, ModuleError> {
        let mut acc = Matrix::zeros(self.levels, self.levels);
        for (mono, coeff) in poly.terms() {
            let bound = coeff.substitute(bindings);
            let value = bound.as_constant().ok_or_else(|| {
                let p = bound
                    .parameters()
                    .into_iter()
                    .next()
                    .expect("non-constant polynomial names a parameter");
                ModuleError::UnboundParameter(p)
            })?;
            acc = &acc + &self.eval_word(&mono.word()).scale(&value);
        }
        Ok(acc)
    }

    /// The scalar of the Casimir combination `H^2 + 2(E+E- + E-E+)` on the
    /// margin-1 interior, by direct matrix evaluation. Errors when the
    /// combination fails to be scalar there.
    pub fn casimir_value(&self) -> Result<GaussRational, ModuleError> {
        let interior = self.interior_columns(1);
        if interior.is_empty() {
            return Err(ModuleError::EmptyInterior {
                margin: 1,
                levels: self.levels,
            });
        }
        let h2 = &self.h_mat * &self.h_mat;
        let pm = &self.ep_mat * &self.em_mat;
        let mp = &self.em_mat * &self.ep_mat;
        let two = GaussRational::from_int(2);
        let m = &h2 + &(&(&pm + &mp) * &Matrix::identity(self.levels).scale(&two));
        let mut scalar: Option<GaussRational> = None;
        for &col in &interior {
            for row in 0..self.levels {
                let entry = m.get(row, col);
                if row == col {
                    match &scalar {
                        None => scalar = Some(entry.clone()),
                        Some(prev) if prev == entry => {}
                        Some(prev) => {
                            return Err(ModuleError::NonScalarCasimir(format!(
                                "diagonal entries differ: {} vs {}",
                                prev, entry
                            )))
                        }
                    }
                } else if !entry.is_zero() {
                    return Err(ModuleError::NonScalarCasimir(format!(
                        "off-diagonal entry at ({}, {}): {}",
                        row, col, entry
                    )));
                }
            }
        }
        Ok(scalar.expect("interior is nonempty"))
    }

    /// Parameter bindings tying the formal `C` and `s` to this module.
    pub fn standard_bindings(&self) -> Result<Vec<(Param, GaussRational)>, ModuleError> {
        Ok(vec![
            (Param::BigC, self.casimir_value()?),
            (Param::S, GaussRational::from_rational(self.s.clone())),
        ])
    }

    /// Check the derived commutation relations exactly on margin-1 columns.
    pub fn check_relations(&self) -> RelationReport {
        let interior = self.interior_columns(1);
        let two_i = GaussRational::imaginary(int(2));
        let minus_two_i = GaussRational::imaginary(int(-2));
        let minus_i = GaussRational::imaginary(int(-1));

        let comm = |a: &Matrix, b: &Matrix| &(a * b) - &(b * a);
        let h_ep = &comm(&self.h_mat, &self.ep_mat) - &self.ep_mat.scale(&minus_two_i);
        let h_em = &comm(&self.h_mat, &self.em_mat) - &self.em_mat.scale(&two_i);
        let ep_em = &comm(&self.ep_mat, &self.em_mat) - &self.h_mat.scale(&minus_i);

        let ok_on_interior = |m: &Matrix| {
            interior
                .iter()
                .all(|&col| (0..self.levels).all(|row| m.get(row, col).is_zero()))
        };
        RelationReport {
            interior_columns: interior.len(),
            h_eplus_ok: ok_on_interior(&h_ep),
            h_eminus_ok: ok_on_interior(&h_em),
            eplus_eminus_ok: ok_on_interior(&ep_em),
        }
    }

    /// Exact rank of the degree-`r` normal basis images, restricted to
    /// margin-`r` columns so the vectors are free of truncation artifacts.
    pub fn normal_basis_rank(&self, r: u32) -> Result<RankReport, ModuleError> {
        let needed = 3 * r as usize + 1;
        if self.levels < needed {
            return Err(ModuleError::TruncationTooSmall {
                levels: self.levels,
                r,
                needed,
            });
        }
        let interior = self.interior_columns(r as usize);
        let basis = basis_enumerate(r);
        let vectors: Vec<Vec<GaussRational>> = basis
            .iter()
            .map(|mono| {
                self.eval_word(&mono.word())
                    .select_columns(&interior)
                    .flatten()
            })
            .collect();
        let rank = Matrix::rank_of_vectors(&vectors);
        Ok(RankReport {
            r,
            expected: basis.len(),
            rank,
            interior_columns: interior.len(),
        })
    }
}

/// Result of the commutation-relation check.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub interior_columns: usize,
    pub h_eplus_ok: bool,
    pub h_eminus_ok: bool,
    pub eplus_eminus_ok: bool,
}

impl RelationReport {
    pub fn all_ok(&self) -> bool {
        self.h_eplus_ok && self.h_eminus_ok && self.eplus_eminus_ok
    }
}

/// Result of the basis-independence rank computation.
#[derive(Clone, Debug)]
pub struct RankReport {
    pub r: u32,
    pub expected: usize,
    pub rank: usize,
    pub interior_columns: usize,
}

impl RankReport {
    pub fn full_rank(&self) -> bool {
        self.rank == self.expected
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecursionError {
    #[error("sequence value missing at index {0}")]
    MissingIndex(Rational),
    #[error("label s = {0} must be an even positive integer for the digamma family")]
    BadLabel(i64),
    #[error("index n = {n} makes a digamma argument a nonpositive integer for s = {s}")]
    BadIndex { s: i64, n: i64 },
}

/// Eigenvalue sequence `n -> xi_n`, stored with parameter-polynomial values
/// so both numeric and formal sequences share one representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiSequence {
    values: BTreeMap<Rational, ParamPoly>,
}

impl XiSequence {
    pub fn new() -> Self {
        XiSequence {
            values: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, n: Rational, value: ParamPoly) {
        self.values.insert(n, value);
    }

    pub fn get(&self, n: &Rational) -> Option<&ParamPoly> {
        self.values.get(n)
    }

    pub fn indices(&self) -> impl Iterator<Item = &Rational> {
        self.values.keys()
    }

    pub fn from_fn(indices: &[Rational], mut f: impl FnMut(&Rational) -> ParamPoly) -> Self {
        let mut xi = XiSequence::new();
        for n in indices {
            xi.insert(n.clone(), f(n));
        }
        xi
    }
}

impl Default for XiSequence {
    fn default() -> Self {
        XiSequence::new()
    }
}

/// The polynomial family `xi_n = gamma - alpha n^2` with formal
/// `alpha`, `gamma`.
pub fn polynomial_xi(indices: &[Rational]) -> XiSequence {
    XiSequence::from_fn(indices, |n| {
        let n2 = GaussRational::from_rational(n * n);
        &ParamPoly::param(Param::Gamma) - &ParamPoly::param(Param::Alpha).scale(&n2)
    })
}

/// Harmonic number `H_m = 1 + 1/2 + ... + 1/m`, with `H_0 = 0`.
pub fn harmonic_number(m: u64) -> Rational {
    let mut acc = Rational::zero();
    for k in 1..=m {
        acc += Rational::new(1.into(), (k as i64).into());
    }
    acc
}

/// Exact digamma difference at positive integer arguments. The
/// Euler-Mascheroni constant cancels, leaving `H_{m1-1} - H_{m2-1}`.
pub fn digamma_diff(m1: u64, m2: u64) -> Rational {
    assert!(m1 >= 1 && m2 >= 1, "digamma arguments must be positive");
    harmonic_number(m1 - 1) - harmonic_number(m2 - 1)
}

/// The transcendental solution value
/// `xi_n = gamma - alpha n^2 + beta ((s^2 - 3n^2 - 1) d - 6 n s)` where `d`
/// is the exact digamma difference at `(1 + n - s)/2` and `(1 + n + s)/2`.
/// `s` must be an even positive integer and `n` in `{s+1, s+3, ...}` so both
/// arguments are positive integers.
pub fn digamma_solution(
    s: i64,
    alpha: &GaussRational,
    beta: &GaussRational,
    gamma: &GaussRational,
    n: i64,
) -> Result<GaussRational, RecursionError> {
    if s <= 0 || s % 2 != 0 {
        return Err(RecursionError::BadLabel(s));
    }
    let m1 = 1 + n - s;
    let m2 = 1 + n + s;
    if m1 <= 0 || m2 <= 0 || m1 % 2 != 0 || m2 % 2 != 0 {
        return Err(RecursionError::BadIndex { s, n });
    }
    let d = digamma_diff((m1 / 2) as u64, (m2 / 2) as u64);
    let envelope = int(s * s - 3 * n * n - 1) * d - int(6 * n * s);
    let poly_part = gamma - &(alpha * &GaussRational::from_int(n * n));
    Ok(&poly_part + &(beta * &GaussRational::from_rational(envelope)))
}

/// The digamma family as a stored sequence on the given indices.
pub fn digamma_xi(
    s: i64,
    alpha: &GaussRational,
    beta: &GaussRational,
    gamma: &GaussRational,
    indices: &[i64],
) -> Result<XiSequence, RecursionError> {
    let mut xi = XiSequence::new();
    for &n in indices {
        let value = digamma_solution(s, alpha, beta, gamma, n)?;
        xi.insert(int(n), ParamPoly::constant(value));
    }
    Ok(xi)
}

/// Exact residual of the three-term eigenvalue recursion at index `n`:
///
/// `3 xi_n - (1/8)[(s^2 - (1+n)^2)(xi_n - xi_{n+2})
///               - (s^2 - (1-n)^2)(xi_{n-2} - xi_n)] - c`.
///
/// `s` and `c` may be formal or bound; the sequence must be defined at
/// `n - 2`, `n`, `n + 2`.
pub fn recursion_residual(
    xi: &XiSequence,
    s: &ParamPoly,
    c: &ParamPoly,
    n: &Rational,
) -> Result<ParamPoly, RecursionError> {
    let fetch = |idx: Rational| -> Result<ParamPoly, RecursionError> {
        xi.get(&idx)
            .cloned()
            .ok_or(RecursionError::MissingIndex(idx))
    };
    let xi_n = fetch(n.clone())?;
    let xi_up = fetch(n + int(2))?;
    let xi_dn = fetch(n - int(2))?;
    let s2 = s * s;
    let square = |r: Rational| -> Rational { &r * &r };
    let up_factor = {
        let edge = square(Rational::one() + n);
        &s2 - &ParamPoly::constant(GaussRational::from_rational(edge))
    };
    let dn_factor = {
        let edge = square(Rational::one() - n);
        &s2 - &ParamPoly::constant(GaussRational::from_rational(edge))
    };
    let bracket = &(&up_factor * &(&xi_n - &xi_up)) - &(&dn_factor * &(&xi_dn - &xi_n));
    let lhs =
        &xi_n.scale(&GaussRational::from_int(3)) - &bracket.scale(&GaussRational::from_ratio(1, 8));
    Ok(&lhs - c)
}

/// Per-index outcome of a recursion suite.
#[derive(Clone, Debug)]
pub struct RecursionReport {
    pub s: i64,
    pub checked: Vec<i64>,
    pub nonzero: Vec<(i64, String)>,
}

impl RecursionReport {
    pub fn all_zero(&self) -> bool {
        self.nonzero.is_empty()
    }
}

/// Verify the digamma family against the recursion for all interior indices
/// `n` in `{s+3, s+5, ..., n_max}`, with `gamma` fixed by the linear
/// relation `3 gamma = alpha (s^2 - 1) + c`.
pub fn recursion_suite(
    s: i64,
    alpha: &GaussRational,
    beta: &GaussRational,
    c: &GaussRational,
    n_max: i64,
) -> Result<RecursionReport, RecursionError> {
    if s <= 0 || s % 2 != 0 {
        return Err(RecursionError::BadLabel(s));
    }
    let gamma = &(&(alpha * &GaussRational::from_int(s * s - 1)) + c) / &GaussRational::from_int(3);
    let indices: Vec<i64> = ((s + 1)..=(n_max + 2)).step_by(2).collect();
    let xi = digamma_xi(s, alpha, beta, &gamma, &indices)?;
    let s_poly = ParamPoly::constant(GaussRational::from_int(s));
    let c_poly = ParamPoly::constant(c.clone());
    let mut checked = Vec::new();
    let mut nonzero = Vec::new();
    let mut n = s + 3;
    while n <= n_max {
        let residual = recursion_residual(&xi, &s_poly, &c_poly, &int(n))?;
        checked.push(n);
        if !residual.is_zero() {
            nonzero.push((n, residual.to_string()));
        }
        n += 2;
    }
    Ok(RecursionReport {
        s,
        checked,
        nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    #[test]
    fn module_small_case_matches_ladder_action() {
        // s = 2, N = 3: H = diag(-3i, -5i, -7i).
        let m = build_module(&int(2), 3).unwrap();
        for (k, n) in [(0usize, 3i64), (1, 5), (2, 7)] {
            assert_eq!(
                m.letter_matrix(Letter::H).get(k, k),
                &GaussRational::imaginary(int(-n))
            );
        }
        // E+ psi_3 = -3i psi_5.
        assert_eq!(
            m.letter_matrix(Letter::EPlus).get(1, 0),
            &GaussRational::imaginary(int(-3))
        );
        // E- annihilates the bottom vector because its coefficient vanishes.
        for row in 0..3 {
            assert!(m.letter_matrix(Letter::EMinus).get(row, 0).is_zero());
        }
        assert!(build_module(&int(2), 2).is_err());
    }

    #[test]
    fn relations_hold_on_interior() {
        for s in [int(2), ratio(7, 3)] {
            let m = build_module(&s, 10).unwrap();
            assert!(m.check_relations().all_ok());
        }
        let minimal = build_module(&int(2), 3).unwrap();
        assert!(minimal.check_relations().all_ok());
    }

    #[test]
    fn casimir_values() {
        // C = 1 - s^2.
        for (s, expected) in [
            (int(2), int(-3)),
            (int(1), int(0)),
            (ratio(7, 3), ratio(-40, 9)),
        ] {
            let m = build_module(&s, 8).unwrap();
            assert_eq!(
                m.casimir_value().unwrap(),
                GaussRational::from_rational(expected)
            );
        }
    }

    #[test]
    fn eval_is_homomorphic_on_interior() {
        use crate::enveloping::reduce_word;
        let m = build_module(&ratio(7, 3), 12).unwrap();
        let bindings = m.standard_bindings().unwrap();
        let word = NcWord::new(vec![Letter::EPlus, Letter::EMinus, Letter::H]);
        let direct = m.eval_word(&word);
        let reduced = m.eval_nc(&reduce_word(&word), &bindings).unwrap();
        for &col in &m.interior_columns(word.len()) {
            for row in 0..m.levels() {
                assert_eq!(direct.get(row, col), reduced.get(row, col));
            }
        }
    }

    #[test]
    fn unbound_parameter_is_an_error() {
        let m = build_module(&int(2), 4).unwrap();
        let poly = NcPoly::scalar(ParamPoly::param(Param::Alpha));
        assert_eq!(
            m.eval_nc(&poly, &[]).unwrap_err(),
            ModuleError::UnboundParameter(Param::Alpha)
        );
    }

    #[test]
    fn harmonic_and_digamma_values() {
        assert_eq!(harmonic_number(0), int(0));
        assert_eq!(harmonic_number(2), ratio(3, 2));
        // Arguments 1 and 3: -(1 + 1/2) = -3/2.
        assert_eq!(digamma_diff(1, 3), ratio(-3, 2));
        // Arguments 2 and 4: 1 - (1 + 1/2 + 1/3) = -5/6.
        assert_eq!(digamma_diff(2, 4), ratio(-5, 6));
    }

    #[test]
    fn digamma_envelope_vanishes_at_bottom_for_s2() {
        // s = 2, n = 3: (4 - 27 - 1)(-3/2) - 36 = 0, so only the polynomial
        // part survives.
        let alpha = GaussRational::from_int(1);
        let beta = GaussRational::from_int(5);
        let gamma = GaussRational::from_int(1);
        let value = digamma_solution(2, &alpha, &beta, &gamma, 3).unwrap();
        assert_eq!(value, GaussRational::from_int(1 - 9));
        // beta = 0 reduces to the polynomial family everywhere.
        let poly_only = digamma_solution(2, &alpha, &GaussRational::zero(), &gamma, 7).unwrap();
        assert_eq!(poly_only, GaussRational::from_int(1 - 49));
    }

    #[test]
    fn digamma_argument_validation() {
        let one = GaussRational::from_int(1);
        assert!(matches!(
            digamma_solution(3, &one, &one, &one, 4),
            Err(RecursionError::BadLabel(3))
        ));
        assert!(matches!(
            digamma_solution(2, &one, &one, &one, 1),
            Err(RecursionError::BadIndex { .. })
        ));
    }

    #[test]
    fn constant_sequence_residual() {
        // xi == k makes the bracket telescope away: residual 3k - c.
        let indices: Vec<Rational> = (1..=9).step_by(2).map(int).collect();
        let xi = XiSequence::from_fn(&indices, |_| ParamPoly::from_int(4));
        let s = ParamPoly::param(Param::S);
        let c = ParamPoly::param(Param::SmallC);
        let residual = recursion_residual(&xi, &s, &c, &int(5)).unwrap();
        assert_eq!(
            residual,
            &ParamPoly::from_int(12) - &ParamPoly::param(Param::SmallC)
        );
    }

    #[test]
    fn linear_sequence_is_a_negative_control() {
        // xi_n = n gives residual 2n - c, nonzero for generic c.
        let indices: Vec<Rational> = (1..=9).step_by(2).map(int).collect();
        let xi = XiSequence::from_fn(&indices, |n| {
            ParamPoly::constant(GaussRational::from_rational(n.clone()))
        });
        let s = ParamPoly::constant(GaussRational::from_int(2));
        let c = ParamPoly::param(Param::SmallC);
        let residual = recursion_residual(&xi, &s, &c, &int(5)).unwrap();
        assert_eq!(
            residual,
            &ParamPoly::from_int(10) - &ParamPoly::param(Param::SmallC)
        );
    }

    #[test]
    fn missing_index_is_reported() {
        let xi = XiSequence::new();
        let s = ParamPoly::param(Param::S);
        let c = ParamPoly::param(Param::SmallC);
        assert!(matches!(
            recursion_residual(&xi, &s, &c, &int(5)),
            Err(RecursionError::MissingIndex(_))
        ));
    }
}
