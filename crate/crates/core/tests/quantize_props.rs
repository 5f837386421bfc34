//! Property suites for the quantization map: exhaustive bracket-axiom check
//! on the degree-2 domain, stability of the forced quadratic image,
//! invariance of the constraint derivation under re-association of the
//! identity trees, and agreement of the graded trivial quantization with
//! plain module evaluation in degree one.

use sl2q_core::enveloping::NcPoly;
use sl2q_core::exactnum::{GaussRational, Param, ParamPoly};
use sl2q_core::expr::{parse, Grammar};
use sl2q_core::poisson::{pbracket, CMono, ClassicalPoly};
use sl2q_core::quantize::{
    derive_constraints, derive_qh2, extend_to_degree2, quantize_expression, trivial_quantization,
    QuantMap,
};
use sl2q_core::repmod::build_module;
use sl2q_core::sampling::{random_gauss, rng_from_seed};

fn standard_qmap() -> QuantMap {
    let derivation = derive_qh2(2).unwrap();
    extend_to_degree2(&derivation.qh2).unwrap()
}

#[test]
fn bracket_axiom_exhaustive_on_degree_two_domain() {
    // Q({m1, m2}) = i [Q(m1), Q(m2)] for every pair of domain monomials
    // whose bracket stays inside the degree-2 domain, with alpha and gamma
    // fully formal.
    let qmap = standard_qmap();
    let domain: Vec<CMono> = qmap.domain().copied().collect();
    assert_eq!(domain.len(), 10);
    let i = ParamPoly::i();
    let mut checked = 0;
    let mut skipped = 0;
    for m1 in &domain {
        for m2 in &domain {
            let f = ClassicalPoly::monomial(*m1, ParamPoly::one());
            let g = ClassicalPoly::monomial(*m2, ParamPoly::one());
            let bracket = pbracket(&f, &g);
            if bracket.degree().unwrap_or(0) > 2 {
                skipped += 1;
                continue;
            }
            let lhs = qmap.apply(&bracket).unwrap();
            let rhs = qmap
                .apply(&f)
                .unwrap()
                .commutator(&qmap.apply(&g).unwrap())
                .scale(&i);
            assert!(
                lhs.sub(&rhs).is_zero(),
                "axiom fails for {{{}, {}}}: lhs {}, rhs {}",
                m1,
                m2,
                lhs,
                rhs
            );
            checked += 1;
        }
    }
    // The only skipped pairs are degree-2 against degree-2 with a nonzero
    // (hence degree-3) bracket: 36 ordered pairs minus 6 self-brackets and
    // the 2 vanishing Casimir pairs.
    assert_eq!((checked, skipped), (72, 28));
}

#[test]
fn forced_image_is_stable_across_ansatz_degrees() {
    let reference = derive_qh2(2).unwrap();
    for r in 3..=6 {
        let derivation = derive_qh2(r).unwrap();
        assert_eq!(derivation.qh2, reference.qh2);
        assert_eq!(derivation.gamma_relation, reference.gamma_relation);
    }
}

#[test]
fn constraints_invariant_under_reassociation() {
    let qmap = standard_qmap();
    let baseline = derive_constraints(&qmap).unwrap();

    // The same identities with terms reordered, scalars moved, and the
    // bracket arguments swapped with compensating signs.
    let quad_lhs = parse("{h*ep, h*em} - 2*{em^2, ep^2}", Grammar::Classical).unwrap();
    let quad_rhs = parse("c*h", Grammar::Classical).unwrap();
    let quartic_lhs = parse(
        "3/4*{(em + ep)^2, {(ep + em)^2, h*(ep - em)}} + {(ep - em)^2, {ep^2 - em^2, h*(em + ep)}}",
        Grammar::Classical,
    )
    .unwrap();
    let quartic_rhs = parse("8*c*(h*ep - h*em)", Grammar::Classical).unwrap();

    // First confirm the variants are classically the same trees' values.
    let original_quad =
        sl2q_core::identities::identity(sl2q_core::identities::QUADRATIC_BRACKET).unwrap();
    let original_quartic =
        sl2q_core::identities::identity(sl2q_core::identities::QUARTIC_BRACKET).unwrap();
    for (variant, original) in [
        (&quad_lhs, &original_quad.lhs),
        (&quartic_lhs, &original_quartic.lhs),
        (&quartic_rhs, &original_quartic.rhs),
    ] {
        let a = sl2q_core::poisson::eval_classical_expr(variant).unwrap();
        let b = sl2q_core::poisson::eval_classical_expr(original).unwrap();
        assert!(a.sub(&b).is_zero());
    }

    // Quantizing the reassociated trees produces the same scalar equations.
    let quad_diff = quantize_expression(&quad_lhs, &qmap)
        .unwrap()
        .sub(&quantize_expression(&quad_rhs, &qmap).unwrap());
    let h_mono = sl2q_core::enveloping::NormalMono::new(1, 0, false);
    assert_eq!(
        quad_diff.coefficient(&h_mono).monic(),
        baseline.set.equations[0]
    );

    let quartic_diff = quantize_expression(&quartic_lhs, &qmap)
        .unwrap()
        .sub(&quantize_expression(&quartic_rhs, &qmap).unwrap());
    let lead = sl2q_core::enveloping::NormalMono::new(1, 1, false);
    assert_eq!(
        quartic_diff.coefficient(&lead).monic(),
        baseline.set.equations[1]
    );
}

#[test]
fn reduced_and_unreduced_mixed_monomial_routes_agree_under_the_relation() {
    // Quantizing e+ e- directly versus through its reduction
    // (c - h^2)/4 differ by exactly a quarter of the linear relation, so
    // they agree whenever the relation holds.
    let derivation = derive_qh2(2).unwrap();
    let qmap = extend_to_degree2(&derivation.qh2).unwrap();
    let direct = qmap.get(&CMono::new(0, 1, 1)).unwrap().clone();
    let c = ParamPoly::param(Param::SmallC);
    let via_reduction = NcPoly::scalar(c)
        .sub(&derivation.qh2)
        .scale(&ParamPoly::from_ratio(1, 4));
    let difference = direct.sub(&via_reduction);
    let expected = NcPoly::scalar(
        derivation
            .gamma_relation
            .scale(&GaussRational::from_ratio(1, 4)),
    );
    assert_eq!(difference, expected);
}

#[test]
fn trivial_quantization_is_module_evaluation_in_degree_one() {
    let module = build_module(&sl2q_core::exactnum::ratio(7, 3), 10).unwrap();
    let mut rng = rng_from_seed(31);
    for _ in 0..50 {
        let coeffs: Vec<GaussRational> = (0..4).map(|_| random_gauss(&mut rng)).collect();
        let f = ClassicalPoly::constant(ParamPoly::constant(coeffs[0].clone()))
            .add(&ClassicalPoly::gen_h().scale(&ParamPoly::constant(coeffs[1].clone())))
            .add(&ClassicalPoly::gen_ep().scale(&ParamPoly::constant(coeffs[2].clone())))
            .add(&ClassicalPoly::gen_em().scale(&ParamPoly::constant(coeffs[3].clone())));
        let quantized = trivial_quantization(&f, &module).unwrap();
        let nc = NcPoly::scalar(ParamPoly::constant(coeffs[0].clone()))
            .add(&NcPoly::h().scale(&ParamPoly::constant(coeffs[1].clone())))
            .add(&NcPoly::ep().scale(&ParamPoly::constant(coeffs[2].clone())))
            .add(&NcPoly::em().scale(&ParamPoly::constant(coeffs[3].clone())));
        let evaluated = module.eval_nc(&nc, &[]).unwrap();
        assert_eq!(quantized, evaluated);
    }
}

#[test]
fn quantized_double_bracket_identity_matches_qh2_substitution() {
    // Quantizing 3 h^2 - (1/2){{h^2, em}, ep} with the forced image gives
    // 3 Q(h^2) + (1/2)[[Q(h^2), E-], E+], which collapses to
    // (3 gamma + alpha C) I.
    let derivation = derive_qh2(2).unwrap();
    let qmap = extend_to_degree2(&derivation.qh2).unwrap();
    let identity =
        sl2q_core::identities::identity(sl2q_core::identities::CASIMIR_DOUBLE_BRACKET).unwrap();
    let quantized = quantize_expression(&identity.lhs, &qmap).unwrap();
    let three_gamma = ParamPoly::param(Param::Gamma).scale(&GaussRational::from_int(3));
    let alpha_c = &ParamPoly::param(Param::Alpha) * &ParamPoly::param(Param::BigC);
    let expected = NcPoly::scalar(&three_gamma + &alpha_c);
    assert_eq!(quantized, expected);
    // Against Q(rhs) = c I this is exactly the linear relation.
    let rhs = quantize_expression(&identity.rhs, &qmap).unwrap();
    assert_eq!(
        quantized.sub(&rhs),
        NcPoly::scalar(derivation.gamma_relation.clone())
    );
}
