//! Exact scalar arithmetic: arbitrary-precision rationals, Gaussian
//! rationals, and the parameter-polynomial coefficient ring used by every
//! other module.

mod gauss;
mod linsolve;
mod parampoly;

pub use gauss::{int, ratio, GaussRational, Rational};
pub use linsolve::{
    solve_linear_params, solve_linear_system, LinearOutcome, ParamOutcome, ParamRatio,
    ParamSolution, SolveError, UnknownBinding,
};
pub use parampoly::{Exponents, Param, ParamPoly};
