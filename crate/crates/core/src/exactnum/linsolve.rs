//! Linear solving over the fraction field of the parameter ring.
//!
//! Used to eliminate ansatz coefficients and to solve single relations like
//! `3*gamma + alpha*C - c = 0` for a designated unknown. Only linear
//! occurrences of the designated unknowns are allowed; everything else rides
//! along as a formal coefficient.

use super::parampoly::{Exponents, Param, ParamPoly};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Quotient of two parameter polynomials, `den` nonzero.
///
/// Kept lightly normalized: zero numerators collapse to `0/1`, and exact
/// polynomial divisions are folded back into the numerator. Full multivariate
/// gcd reduction is deliberately not attempted.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamRatio {
    num: ParamPoly,
    den: ParamPoly,
}

impl ParamRatio {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        ParamRatio { num, den }.simplified()
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        ParamRatio {
            num: p,
            den: ParamPoly::one(),
        }
    }

    pub fn zero() -> Self {
        ParamRatio::from_poly(ParamPoly::zero())
    }

    pub fn one() -> Self {
        ParamRatio::from_poly(ParamPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ParamPoly {
        &self.den
    }

    /// `Some(poly)` when the denominator divides the numerator exactly.
    pub fn as_poly(&self) -> Option<ParamPoly> {
        self.num.div_exact(&self.den)
    }

    fn simplified(self) -> Self {
        if self.num.is_zero() {
            return ParamRatio {
                num: ParamPoly::zero(),
                den: ParamPoly::one(),
            };
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            return ParamRatio {
                num: q,
                den: ParamPoly::one(),
            };
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        ParamRatio::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        ParamRatio::new(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        ParamRatio::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division of ratios by zero");
        ParamRatio::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn neg(&self) -> Self {
        ParamRatio {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for ParamRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == ParamPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ParamRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("equation {equation} is nonlinear in designated unknown {param}")]
    NonlinearUnknown { equation: usize, param: Param },
    #[error("equation {equation} contains a product of designated unknowns")]
    UnknownProduct { equation: usize },
}

/// Binding of one unknown in a reduced row-echelon solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnknownBinding {
    /// Unknown is a free variable of the solution space.
    Free,
    /// Unknown equals `constant + sum_k coeff_k * x_k` over free unknowns `x_k`.
    Determined {
        constant: ParamRatio,
        free_terms: BTreeMap<usize, ParamRatio>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearOutcome {
    /// Row reduction produced `0 = nonzero`.
    Inconsistent {
        equation: usize,
    },
    Solved(Vec<UnknownBinding>),
}

/// Gaussian elimination of `coeffs * x = rhs` over the fraction field of the
/// parameter ring. Pivots prefer constant (parameter-free) coefficients so
/// that generic systems never divide by a polynomial that could vanish.
pub fn solve_linear_system(coeffs: &[Vec<ParamPoly>], rhs: &[ParamPoly]) -> LinearOutcome {
    assert_eq!(coeffs.len(), rhs.len(), "row count mismatch");
    let n_unknowns = coeffs.first().map(|r| r.len()).unwrap_or(0);
    let mut rows: Vec<(Vec<ParamRatio>, ParamRatio)> = coeffs
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), n_unknowns, "ragged coefficient matrix");
            (
                row.iter()
                    .map(|p| ParamRatio::from_poly(p.clone()))
                    .collect(),
                ParamRatio::from_poly(b.clone()),
            )
        })
        .collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n_unknowns];
    let mut next_row = 0;
    for col in 0..n_unknowns {
        let candidates: Vec<usize> = (next_row..rows.len())
            .filter(|&r| !rows[r].0[col].is_zero())
            .collect();
        let chosen = candidates
            .iter()
            .copied()
            .find(|&r| {
                rows[r].0[col].numerator().as_constant().is_some()
                    && rows[r].0[col].denominator().as_constant().is_some()
            })
            .or_else(|| candidates.first().copied());
        let Some(r) = chosen else { continue };
        rows.swap(next_row, r);
        let pivot = rows[next_row].0[col].clone();
        for x in rows[next_row].0.iter_mut() {
            *x = x.div(&pivot);
        }
        rows[next_row].1 = rows[next_row].1.div(&pivot);
        for other in 0..rows.len() {
            if other == next_row || rows[other].0[col].is_zero() {
                continue;
            }
            let factor = rows[other].0[col].clone();
            let (pivot_row_coeffs, pivot_rhs) = {
                let row = &rows[next_row];
                (row.0.clone(), row.1.clone())
            };
            for (x, p) in rows[other].0.iter_mut().zip(&pivot_row_coeffs) {
                *x = x.sub(&factor.mul(p));
            }
            rows[other].1 = rows[other].1.sub(&factor.mul(&pivot_rhs));
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }

    for (idx, (row, b)) in rows.iter().enumerate() {
        if row.iter().all(ParamRatio::is_zero) && !b.is_zero() {
            return LinearOutcome::Inconsistent { equation: idx };
        }
    }

    let bindings = (0..n_unknowns)
        .map(|col| match pivot_of_col[col] {
            None => UnknownBinding::Free,
            Some(r) => {
                let mut free_terms = BTreeMap::new();
                for (other, coeff) in rows[r].0.iter().enumerate() {
                    if other != col && !coeff.is_zero() {
                        free_terms.insert(other, coeff.neg());
                    }
                }
                UnknownBinding::Determined {
                    constant: rows[r].1.clone(),
                    free_terms,
                }
            }
        })
        .collect();
    LinearOutcome::Solved(bindings)
}

/// Solution of a parameter-keyed linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSolution {
    pub bindings: BTreeMap<Param, UnknownBinding>,
    pub unknowns: Vec<Param>,
}

impl ParamSolution {
    /// The binding of `p` as a ratio in the remaining parameters, when `p`
    /// is determined purely by non-designated parameters.
    pub fn value_of(&self, p: Param) -> Option<ParamRatio> {
        match self.bindings.get(&p)? {
            UnknownBinding::Determined {
                constant,
                free_terms,
            } if free_terms.is_empty() => Some(constant.clone()),
            _ => None,
        }
    }
}

/// Outcome of [`solve_linear_params`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamOutcome {
    Inconsistent { equation: usize },
    Solved(ParamSolution),
}

/// Solve a system of polynomial equations (each `== 0`) that are linear in
/// the designated unknown parameters, over the fraction field of the rest.
pub fn solve_linear_params(
    equations: &[ParamPoly],
    unknowns: &[Param],
) -> Result<ParamOutcome, SolveError> {
    let mut coeffs = Vec::with_capacity(equations.len());
    let mut rhs = Vec::with_capacity(equations.len());
    for (idx, eq) in equations.iter().enumerate() {
        let mut row = vec![ParamPoly::zero(); unknowns.len()];
        let mut constant = ParamPoly::zero();
        for (e, c) in eq.terms() {
            let unknown_degree: u32 = unknowns.iter().map(|u| e.get(*u) as u32).sum();
            match unknown_degree {
                0 => {
                    constant = &constant + &ParamPoly::monomial(*e, c.clone());
                }
                1 => {
                    let u_pos = unknowns.iter().position(|u| e.get(*u) == 1).unwrap();
                    let stripped = strip_param(e, unknowns[u_pos]);
                    row[u_pos] = &row[u_pos] + &ParamPoly::monomial(stripped, c.clone());
                }
                _ => {
                    if let Some(p) = unknowns.iter().find(|u| e.get(**u) >= 2) {
                        return Err(SolveError::NonlinearUnknown {
                            equation: idx,
                            param: *p,
                        });
                    }
                    return Err(SolveError::UnknownProduct { equation: idx });
                }
            }
        }
        coeffs.push(row);
        rhs.push(-&constant);
    }
    match solve_linear_system(&coeffs, &rhs) {
        LinearOutcome::Inconsistent { equation } => Ok(ParamOutcome::Inconsistent { equation }),
        LinearOutcome::Solved(bindings) => Ok(ParamOutcome::Solved(ParamSolution {
            bindings: unknowns.iter().copied().zip(bindings).collect(),
            unknowns: unknowns.to_vec(),
        })),
    }
}

fn strip_param(e: &Exponents, p: Param) -> Exponents {
    e.with(p, 0)
}
