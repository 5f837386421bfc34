//! Seeded random generators shared by the property suites and the CLI's
//! randomized checks. Everything is driven by an explicit ChaCha stream so a
//! seed pins the whole run.

use crate::enveloping::{Letter, NcWord};
use crate::exactnum::ParamPoly;
use crate::exactnum::{GaussRational, Rational};
use crate::poisson::{CMono, ClassicalPoly};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small random rational with numerator in `[-max_num, max_num]` and
/// denominator in `[1, max_den]`.
pub fn random_rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rational {
    let num = rng.gen_range(-max_num..=max_num);
    let den = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Random Gaussian rational; mostly real, occasionally with an imaginary
/// part, to keep printed counterexamples readable.
pub fn random_gauss(rng: &mut impl Rng) -> GaussRational {
    let re = random_rational(rng, 6, 3);
    if rng.gen_bool(0.25) {
        GaussRational::new(re, random_rational(rng, 6, 3))
    } else {
        GaussRational::from_rational(re)
    }
}

/// Random polynomial in the generators with numeric coefficients.
pub fn random_classical_poly(
    rng: &mut impl Rng,
    max_degree: u32,
    max_terms: usize,
) -> ClassicalPoly {
    let n_terms = rng.gen_range(1..=max_terms);
    let mut out = ClassicalPoly::zero();
    for _ in 0..n_terms {
        let degree = rng.gen_range(0..=max_degree);
        let h = rng.gen_range(0..=degree);
        let ep = rng.gen_range(0..=(degree - h));
        let em = degree - h - ep;
        let coeff = ParamPoly::constant(random_gauss(rng));
        out = out.add(&ClassicalPoly::monomial(CMono::new(h, ep, em), coeff));
    }
    out
}

/// Random homogeneous polynomial of the exact given degree.
pub fn random_homogeneous_poly(rng: &mut impl Rng, degree: u32, max_terms: usize) -> ClassicalPoly {
    let n_terms = rng.gen_range(1..=max_terms);
    let mut out = ClassicalPoly::zero();
    for _ in 0..n_terms {
        let h = rng.gen_range(0..=degree);
        let ep = rng.gen_range(0..=(degree - h));
        let em = degree - h - ep;
        let coeff = ParamPoly::constant(random_gauss(rng));
        out = out.add(&ClassicalPoly::monomial(CMono::new(h, ep, em), coeff));
    }
    out
}

/// Random word over the quantum alphabet, length in `[0, max_len]`.
pub fn random_nc_word(rng: &mut impl Rng, max_len: usize) -> NcWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => Letter::H,
            1 => Letter::EPlus,
            _ => Letter::EMinus,
        })
        .collect();
    NcWord::new(letters)
}
