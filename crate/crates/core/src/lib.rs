//! Exact symbolic engine for quantization computations on sl(2,R) coadjoint
//! orbits.
//!
//! Everything here is exact: scalars are Gaussian rationals, coefficients are
//! multivariate polynomials over Q(i) in six formal parameters, and every
//! verification reports a residual that is either identically zero or not.
//! There is no floating point on any verification path.
//!
//! Module map:
//!
//! * [`exactnum`]: rationals, Gaussian rationals, parameter polynomials, and
//!   linear solving over their fraction field.
//! * [`linalg`]: dense exact matrices over Q(i) with rank and nullspace.
//! * [`expr`]: the classical/quantum expression grammars, parser, printer.
//! * [`poisson`]: the Poisson algebra on sl(2)*, orbit reduction modulo the
//!   Casimir level set, grading, and classical identity checks.
//! * [`enveloping`]: the quantized algebra: word rewriting to the
//!   `H^j E+^l` / `H^k E-^m` normal form, products, commutators.
//! * [`repmod`]: exact weight modules with ladder operators, Casimir
//!   evaluation, and the eigenvalue recursion with its closed-form solutions.
//! * [`quantize`]: the quantization map machinery: the forced form of Q(h^2),
//!   degree-2 extension, constraint derivation, case analysis, and the
//!   graded trivial quantization.
//! * [`identities`]: the classical identity fixtures shipped with the crate.
//! * [`sampling`]: seeded random generators shared by property suites.

pub mod enveloping;
pub mod exactnum;
pub mod expr;
pub mod identities;
pub mod linalg;
pub mod poisson;
pub mod quantize;
pub mod repmod;
pub mod sampling;
