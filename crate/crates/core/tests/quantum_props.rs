//! Property suites for the rewrite system and the weight modules:
//! confluence of the reduction under different strategies, the evaluation
//! homomorphism on margin-safe columns, degree filtration, the Casimir
//! closed form, and the recursion solution families.

use num_traits::One;
use rand::Rng;
use sl2q_core::enveloping::{basis_enumerate, quantum_casimir, reduce_terms, NcPoly, Strategy};
use sl2q_core::exactnum::{int, GaussRational, Param, ParamPoly, Rational};
use sl2q_core::linalg::Matrix;
use sl2q_core::repmod::{
    build_module, digamma_solution, polynomial_xi, recursion_residual, recursion_suite, XiSequence,
};
use sl2q_core::sampling::{random_gauss, random_nc_word, random_rational, rng_from_seed};

#[test]
fn reduction_is_confluent_across_strategies() {
    let mut rng = rng_from_seed(7);
    for _ in 0..1100 {
        let word = random_nc_word(&mut rng, 8);
        let left = reduce_terms(
            vec![(ParamPoly::one(), word.clone())],
            Strategy::LeftmostInnermost,
        );
        let right = reduce_terms(
            vec![(ParamPoly::one(), word.clone())],
            Strategy::RightmostOutermost,
        );
        assert_eq!(left, right, "strategies disagree on {}", word);
    }
}

#[test]
fn evaluation_commutes_with_reduction_on_interior() {
    let mut rng = rng_from_seed(8);
    let module = build_module(&sl2q_core::exactnum::ratio(7, 3), 16).unwrap();
    let bindings = module.standard_bindings().unwrap();
    for _ in 0..150 {
        let word = random_nc_word(&mut rng, 6);
        let direct = module.eval_word(&word);
        let reduced = module
            .eval_nc(&sl2q_core::enveloping::reduce_word(&word), &bindings)
            .unwrap();
        for &col in &module.interior_columns(word.len()) {
            for row in 0..module.levels() {
                assert_eq!(
                    direct.get(row, col),
                    reduced.get(row, col),
                    "word {} at ({}, {})",
                    word,
                    row,
                    col
                );
            }
        }
    }
}

fn random_nc_poly(rng: &mut impl Rng, max_degree: u32, max_terms: usize) -> NcPoly {
    let basis = basis_enumerate(max_degree);
    let n_terms = rng.gen_range(1..=max_terms);
    let mut acc = NcPoly::zero();
    for _ in 0..n_terms {
        let mono = basis[rng.gen_range(0..basis.len())];
        acc = acc.add(&NcPoly::monomial(
            mono,
            ParamPoly::constant(random_gauss(rng)),
        ));
    }
    acc
}

#[test]
fn multiplication_respects_the_filtration() {
    let mut rng = rng_from_seed(9);
    for _ in 0..200 {
        let a = random_nc_poly(&mut rng, 3, 4);
        let b = random_nc_poly(&mut rng, 3, 4);
        let product = a.mul(&b);
        if let (Some(da), Some(db), Some(dp)) = (a.degree(), b.degree(), product.degree()) {
            assert!(dp <= da + db, "deg({} * {}) = {}", a, b, dp);
        }
        for x in [NcPoly::h(), NcPoly::ep(), NcPoly::em()] {
            let comm = x.commutator(&b);
            if let (Some(db), Some(dc)) = (b.degree(), comm.degree()) {
                assert!(dc <= db, "[{}, {}] has degree {}", x, b, dc);
            }
        }
    }
}

#[test]
fn casimir_scalar_matches_closed_form_for_random_labels() {
    let mut rng = rng_from_seed(10);
    let mut seen = 0;
    while seen < 20 {
        let s = random_rational(&mut rng, 9, 4);
        let levels = rng.gen_range(5..=10);
        let module = match build_module(&s, levels) {
            Ok(m) => m,
            Err(_) => continue,
        };
        // Closed form 1 - s^2, frozen from the ladder coefficients.
        let expected = GaussRational::from_rational(Rational::one() - &s * &s);
        assert_eq!(module.casimir_value().unwrap(), expected, "s = {}", s);
        assert!(module.check_relations().all_ok(), "s = {}", s);
        seen += 1;
    }
}

#[test]
fn h_spectrum_is_the_shifted_ladder() {
    let s = sl2q_core::exactnum::ratio(5, 2);
    let module = build_module(&s, 9).unwrap();
    for k in 0..module.levels() {
        let expected = GaussRational::imaginary(-module.index(k));
        assert_eq!(
            module
                .letter_matrix(sl2q_core::enveloping::Letter::H)
                .get(k, k),
            &expected
        );
    }
}

#[test]
fn quantum_casimir_is_scalar_and_central() {
    let cas = quantum_casimir();
    assert_eq!(cas, NcPoly::scalar(ParamPoly::param(Param::BigC)));
    for x in [NcPoly::h(), NcPoly::ep(), NcPoly::em()] {
        assert!(cas.commutator(&x).is_zero());
    }
}

#[test]
fn normal_basis_rank_oracle_examples() {
    let s = sl2q_core::exactnum::ratio(7, 3);
    let module = build_module(&s, 12).unwrap();
    let report = module.normal_basis_rank(2).unwrap();
    assert_eq!(report.rank, 9);
    assert!(report.full_rank());

    let module = build_module(&s, 20).unwrap();
    let report = module.normal_basis_rank(4).unwrap();
    assert_eq!(report.rank, 25);

    let report = module.normal_basis_rank(0).unwrap();
    assert_eq!(report.rank, 1);

    assert!(build_module(&s, 6).unwrap().normal_basis_rank(2).is_err());
}

#[test]
fn recursion_residual_is_linear_in_the_sequence() {
    let mut rng = rng_from_seed(12);
    let indices: Vec<Rational> = (1..=13).step_by(2).map(int).collect();
    let s = ParamPoly::param(Param::S);
    let zero_c = ParamPoly::zero();
    for _ in 0..100 {
        let xi = XiSequence::from_fn(&indices, |_| ParamPoly::constant(random_gauss(&mut rng)));
        let eta = XiSequence::from_fn(&indices, |_| ParamPoly::constant(random_gauss(&mut rng)));
        let a = random_gauss(&mut rng);
        let b = random_gauss(&mut rng);
        let combo = XiSequence::from_fn(&indices, |n| {
            let x = xi.get(n).unwrap().scale(&a);
            let y = eta.get(n).unwrap().scale(&b);
            &x + &y
        });
        for n in [int(5), int(7), int(9)] {
            let lhs = recursion_residual(&combo, &s, &zero_c, &n).unwrap();
            let rhs_x = recursion_residual(&xi, &s, &zero_c, &n).unwrap().scale(&a);
            let rhs_y = recursion_residual(&eta, &s, &zero_c, &n).unwrap().scale(&b);
            assert_eq!(lhs, &rhs_x + &rhs_y);
        }
    }
}

#[test]
fn polynomial_family_residual_is_the_linear_relation() {
    // For xi_n = gamma - alpha n^2 the residual at every index collapses to
    // 3 gamma - alpha (s^2 - 1) - c, independent of n; it vanishes exactly
    // under the linear relation.
    let indices: Vec<Rational> = (-9..=9).map(int).collect();
    let xi = polynomial_xi(&indices);
    let s = ParamPoly::param(Param::S);
    let c = ParamPoly::param(Param::SmallC);
    let expected = &(&ParamPoly::param(Param::Gamma).scale(&GaussRational::from_int(3))
        - &(&ParamPoly::param(Param::Alpha) * &(&s.pow(2) - &ParamPoly::one())))
        - &c;
    let gamma_value = (&(&ParamPoly::param(Param::Alpha) * &(&s.pow(2) - &ParamPoly::one())) + &c)
        .scale(&GaussRational::from_ratio(1, 3));
    for n in (-7..=7).map(int) {
        let residual = recursion_residual(&xi, &s, &c, &n).unwrap();
        assert_eq!(residual, expected, "n = {}", n);
        let bound = residual.substitute_poly(Param::Gamma, &gamma_value);
        assert!(bound.is_zero());
    }
}

#[test]
fn digamma_family_solves_the_recursion_for_small_labels() {
    let mut rng = rng_from_seed(13);
    for s in [2i64, 4, 6] {
        let alpha = GaussRational::from_rational(random_rational(&mut rng, 5, 3));
        let beta = GaussRational::from_rational(random_rational(&mut rng, 5, 3));
        let c = GaussRational::from_rational(random_rational(&mut rng, 5, 3));
        let report = recursion_suite(s, &alpha, &beta, &c, s + 41).unwrap();
        assert!(report.all_zero(), "s = {}: {:?}", s, report.nonzero);
        assert!(!report.checked.is_empty());
    }
}

#[test]
fn solution_families_independent_for_labels_four_and_six() {
    // Rank 2 at three indices certifies the polynomial and transcendental
    // families are independent as sequences.
    for s in [4i64, 6] {
        let one = GaussRational::one();
        let zero = GaussRational::zero();
        let probe: Vec<i64> = vec![s + 3, s + 5, s + 7];
        let poly_row: Vec<GaussRational> = probe
            .iter()
            .map(|&n| digamma_solution(s, &one, &zero, &zero, n).unwrap())
            .collect();
        let digamma_row: Vec<GaussRational> = probe
            .iter()
            .map(|&n| digamma_solution(s, &zero, &one, &zero, n).unwrap())
            .collect();
        assert_eq!(
            Matrix::rank_of_vectors(&[poly_row.clone(), digamma_row.clone()]),
            2,
            "s = {}: rows {:?} and {:?}",
            s,
            poly_row,
            digamma_row
        );
    }
}

#[test]
fn transcendental_envelope_degenerates_at_label_two() {
    // At s = 2 the digamma envelope (s^2 - 3n^2 - 1) d - 6 n s vanishes
    // identically on the lattice: the harmonic difference telescopes to
    // -4n/(n^2 - 1) against the 3(1 - n^2) prefactor. The displayed
    // two-parameter family is effectively one-parameter there.
    let one = GaussRational::one();
    let zero = GaussRational::zero();
    for n in (3..=41).step_by(2) {
        let value = digamma_solution(2, &zero, &one, &zero, n).unwrap();
        assert!(value.is_zero(), "envelope at n = {} is {}", n, value);
    }
}

#[test]
fn casimir_rule_is_consistent_with_the_module() {
    // eval(E+ E-) equals eval((C - H^2 - 2iH)/4) on interior columns once C
    // is bound to the module's Casimir scalar, and the empty word maps to
    // the identity.
    let module = build_module(&sl2q_core::exactnum::ratio(7, 3), 10).unwrap();
    let bindings = module.standard_bindings().unwrap();
    let word = sl2q_core::enveloping::NcWord::new(vec![
        sl2q_core::enveloping::Letter::EPlus,
        sl2q_core::enveloping::Letter::EMinus,
    ]);
    let lhs = module.eval_word(&word);
    let rhs = module
        .eval_nc(&sl2q_core::enveloping::reduce_word(&word), &bindings)
        .unwrap();
    for &col in &module.interior_columns(2) {
        for row in 0..module.levels() {
            assert_eq!(lhs.get(row, col), rhs.get(row, col));
        }
    }
    assert_eq!(
        module.eval_word(&sl2q_core::enveloping::NcWord::empty()),
        Matrix::identity(10)
    );
}
