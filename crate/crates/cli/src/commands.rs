//! Command-line surface: argument definitions and the per-command runners
//! that assemble reports from the engine.

use crate::report::{Outcome, Report};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use sl2q_core::enveloping::{reduce_terms, NcPoly, NormalMono, Strategy};
use sl2q_core::exactnum::{GaussRational, Param, ParamPoly, Rational};
use sl2q_core::identities;
use sl2q_core::linalg::Matrix;
use sl2q_core::poisson::ClassicalPoly;
use sl2q_core::quantize::{
    case_analysis, derive_constraints, derive_qh2, extend_to_degree2, trivial_q1_check,
    trivial_quantization, CasimirCase, Verdict,
};
use sl2q_core::repmod::{build_module, polynomial_xi, recursion_residual, recursion_suite};
use sl2q_core::sampling;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "sl2q",
    version,
    about = "Exact verification engine for polynomial quantizations over sl(2,R) coadjoint orbits"
)]
pub struct Cli {
    /// Output format for the run report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the randomized property suites.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify stored identities in the orbit ring.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Re-derive forced forms and constraint equations.
    Derive {
        #[command(subcommand)]
        target: DeriveTarget,
    },
    /// Run the case analysis for a given Casimir constant (`0`, `c`, or a
    /// rational value).
    Verdict {
        #[arg(long, allow_hyphen_values = true)]
        casimir: String,
    },
    /// Exact oracle and property checks.
    Check {
        #[command(subcommand)]
        target: CheckTarget,
    },
    /// Build the graded trivial quantization and test its axioms.
    Build {
        #[command(subcommand)]
        target: BuildTarget,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyTarget {
    /// All stored classical bracket identities, reduced exactly.
    ClassicalIdentities,
}

#[derive(Subcommand, Debug)]
pub enum DeriveTarget {
    /// The forced form of the quadratic image.
    Qh2 {
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// The two scalar constraint equations.
    Constraints,
}

#[derive(Subcommand, Debug)]
pub enum CheckTarget {
    /// Exact rank of the degree-r normal basis in a weight module.
    Basis {
        #[arg(long)]
        r: u32,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        s: Rational,
        #[arg(long)]
        levels: usize,
    },
    /// The eigenvalue recursion and its solution families.
    Recursion {
        #[arg(long)]
        s: i64,
        #[arg(long)]
        n_max: i64,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        alpha: Option<Rational>,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        beta: Option<Rational>,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        c: Option<Rational>,
    },
    /// Rewrite-system properties: confluence, evaluation homomorphism,
    /// Casimir centrality.
    Confluence {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum BuildTarget {
    /// The graded trivial quantization on the cone.
    TrivialQuantization {
        /// Maximum degree of the random polynomial pairs.
        #[arg(long)]
        degree: u32,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        s: Rational,
        #[arg(long)]
        levels: usize,
        /// Number of random pairs for the bracket-axiom check.
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        /// Write the module's ladder matrices to a JSON file as sparse
        /// triplets with exact rational parts.
        #[arg(long)]
        emit_module: Option<std::path::PathBuf>,
    },
}

pub fn parse_rational_arg(text: &str) -> Result<Rational, String> {
    let parse_int = |t: &str| -> Result<BigInt, String> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| format!("invalid integer '{}': {}", t, e))
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err("denominator is zero".into());
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
    }
}

pub fn execute(cli: &Cli) -> Report {
    match &cli.command {
        Command::Verify {
            target: VerifyTarget::ClassicalIdentities,
        } => verify_classical_identities(),
        Command::Derive { target } => match target {
            DeriveTarget::Qh2 { max_degree } => derive_qh2_report(*max_degree),
            DeriveTarget::Constraints => derive_constraints_report(),
        },
        Command::Verdict { casimir } => verdict_report(casimir),
        Command::Check { target } => match target {
            CheckTarget::Basis { r, s, levels } => basis_report(*r, s, *levels),
            CheckTarget::Recursion {
                s,
                n_max,
                alpha,
                beta,
                c,
            } => recursion_report(*s, *n_max, alpha, beta, c, cli.seed),
            CheckTarget::Confluence { trials } => confluence_report(*trials, cli.seed),
        },
        Command::Build {
            target:
                BuildTarget::TrivialQuantization {
                    degree,
                    s,
                    levels,
                    pairs,
                    emit_module,
                },
        } => trivial_quantization_report(
            *degree,
            s,
            *levels,
            *pairs,
            emit_module.as_deref(),
            cli.seed,
        ),
    }
}

fn fallible(result: Result<Outcome, String>) -> Outcome {
    result.unwrap_or_else(Outcome::fail)
}

fn err_text(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn verify_classical_identities() -> Report {
    let mut report = Report::new("verify classical-identities");
    for identity in identities::classical_identities() {
        report.check(&identity.id, &identity.id, || {
            fallible((|| {
                let check = identity.check().map_err(err_text)?;
                Ok(Outcome::from_residual(check.residual.to_string())
                    .with_detail(format!("{} = {}", identity.lhs_text, identity.rhs_text)))
            })())
        });
    }
    report
}

fn expected_qh2() -> NcPoly {
    NcPoly::monomial(NormalMono::new(2, 0, false), ParamPoly::param(Param::Alpha))
        .add(&NcPoly::scalar(ParamPoly::param(Param::Gamma)))
}

fn expected_gamma_relation() -> ParamPoly {
    let three_gamma = ParamPoly::param(Param::Gamma).scale(&GaussRational::from_int(3));
    let alpha_c = &ParamPoly::param(Param::Alpha) * &ParamPoly::param(Param::BigC);
    &(&three_gamma + &alpha_c) - &ParamPoly::param(Param::SmallC)
}

fn derive_qh2_report(max_degree: u32) -> Report {
    let mut report = Report::new(format!("derive qh2 --max-degree {}", max_degree));
    let derivation = match derive_qh2(max_degree) {
        Ok(d) => d,
        Err(e) => {
            report.check("derivation", "forced-h2", || Outcome::fail(err_text(e)));
            return report;
        }
    };
    report.check("commutant-dimension", "normal-basis", || {
        if derivation.commutant_dim == derivation.commutant_expected {
            Outcome::pass().with_detail(format!(
                "elements commuting with H inside degree {} span dimension {}",
                max_degree, derivation.commutant_dim
            ))
        } else {
            Outcome::fail(format!(
                "dimension {} != expected {}",
                derivation.commutant_dim, derivation.commutant_expected
            ))
        }
    });
    report.check("forced-form", "forced-h2", || {
        let diff = derivation.qh2.sub(&expected_qh2());
        Outcome::from_residual(diff.to_string())
            .with_detail(format!("image of h^2 = {}", derivation.qh2))
    });
    report.check("gamma-relation", "forced-h2", || {
        let diff = &derivation.gamma_relation - &expected_gamma_relation();
        Outcome::from_residual(diff.to_string())
            .with_detail(format!("{} = 0", derivation.gamma_relation))
    });
    report.check("higher-coefficients-vanish", "forced-h2", || {
        let expected: Vec<u32> = (1..=max_degree).filter(|k| *k != 2).collect();
        if derivation.forced_zero == expected {
            Outcome::pass().with_detail(format!(
                "ansatz coefficients of H^k forced to zero for k in {:?}",
                expected
            ))
        } else {
            Outcome::fail(format!(
                "unexpected surviving coefficients: {:?}",
                derivation.forced_zero
            ))
        }
    });
    report.check("label-form", "forced-h2", || {
        // Binding C = 1 - s^2 rewrites the relation as
        // 3 gamma - alpha (s^2 - 1) - c = 0.
        let s2 = ParamPoly::param(Param::S).pow(2);
        let substituted = derivation
            .gamma_relation
            .substitute_poly(Param::BigC, &(&ParamPoly::one() - &s2));
        let three_gamma = ParamPoly::param(Param::Gamma).scale(&GaussRational::from_int(3));
        let alpha_s = &ParamPoly::param(Param::Alpha) * &(&s2 - &ParamPoly::one());
        let expected = &(&three_gamma - &alpha_s) - &ParamPoly::param(Param::SmallC);
        let diff = &substituted - &expected;
        Outcome::from_residual(diff.to_string()).with_detail(format!("{} = 0", substituted))
    });
    report
}

fn expected_constraint_pair() -> (ParamPoly, ParamPoly) {
    let alpha = ParamPoly::param(Param::Alpha);
    let big_c = ParamPoly::param(Param::BigC);
    let small_c = ParamPoly::param(Param::SmallC);
    let first = &(&alpha.pow(2) * &(&big_c + &ParamPoly::from_int(3))) - &small_c;
    let second = &alpha * &(&(&alpha.pow(2) * &(&big_c + &ParamPoly::from_int(9))) - &small_c);
    (first, second)
}

fn derive_constraints_report() -> Report {
    let mut report = Report::new("derive constraints");
    let derivation = match derive_qh2(2)
        .map_err(err_text)
        .and_then(|d| extend_to_degree2(&d.qh2).map_err(err_text))
        .and_then(|qmap| derive_constraints(&qmap).map_err(err_text))
    {
        Ok(d) => d,
        Err(e) => {
            report.check("derivation", "obstruction-pair", || Outcome::fail(e));
            return report;
        }
    };
    let (expected1, expected2) = expected_constraint_pair();
    report.check("quadratic-support", "obstruction-pair", || {
        // Everything except the H coefficient cancelled during reduction.
        let h_mono = NormalMono::new(1, 0, false);
        let residual = derivation.quadratic_difference.sub(&NcPoly::monomial(
            h_mono,
            derivation.quadratic_difference.coefficient(&h_mono),
        ));
        Outcome::from_residual(residual.to_string())
            .with_detail("quantized quadratic identity difference is supported on H alone")
    });
    report.check("quadratic-equation", "obstruction-pair", || {
        let diff = &derivation.set.equations[0] - &expected1;
        Outcome::from_residual(diff.to_string())
            .with_detail(format!("{} = 0", derivation.set.equations[0]))
    });
    report.check("quartic-support", "obstruction-pair", || {
        let combination = NcPoly::h()
            .sym(&NcPoly::ep())
            .sub(&NcPoly::h().sym(&NcPoly::em()));
        let lead = NormalMono::new(1, 1, false);
        let residual = derivation
            .quartic_difference
            .sub(&combination.scale(&derivation.quartic_difference.coefficient(&lead)));
        Outcome::from_residual(residual.to_string())
            .with_detail("quantized quartic identity difference is a multiple of (H, E+ - E-)")
    });
    report.check("quartic-equation", "obstruction-pair", || {
        let diff = &derivation.set.equations[1] - &expected2;
        Outcome::from_residual(diff.to_string())
            .with_detail(format!("{} = 0", derivation.set.equations[1]))
    });
    report.check("side-conditions", "obstruction-pair", || {
        let names: Vec<&str> = derivation
            .set
            .side_conditions
            .iter()
            .map(|s| s.name)
            .collect();
        Outcome::pass().with_detail(format!("recorded assumptions: {}", names.join(", ")))
    });
    report
}

fn parse_casimir_case(text: &str) -> Result<CasimirCase, String> {
    if text == "c" {
        return Ok(CasimirCase::FormalNonzero);
    }
    let value = parse_rational_arg(text)?;
    if value.is_zero() {
        Ok(CasimirCase::Zero)
    } else {
        Ok(CasimirCase::NonzeroValue(GaussRational::from_rational(
            value,
        )))
    }
}

fn verdict_report(casimir: &str) -> Report {
    let mut report = Report::new(format!("verdict --casimir {}", casimir));
    let case = match parse_casimir_case(casimir) {
        Ok(case) => case,
        Err(e) => {
            report.check("arguments", "plumbing", || {
                Outcome::fail(format!("--casimir {}: {}", casimir, e))
            });
            return report;
        }
    };
    let pipeline = derive_qh2(6)
        .map_err(err_text)
        .and_then(|d| extend_to_degree2(&d.qh2).map_err(err_text))
        .and_then(|qmap| derive_constraints(&qmap).map_err(err_text));
    let derivation = match pipeline {
        Ok(d) => d,
        Err(e) => {
            report.check("derivation", "obstruction-pair", || Outcome::fail(e));
            return report;
        }
    };
    report.check("constraint-pair", "obstruction-pair", || {
        let (expected1, expected2) = expected_constraint_pair();
        let diff1 = &derivation.set.equations[0] - &expected1;
        let diff2 = &derivation.set.equations[1] - &expected2;
        if diff1.is_zero() && diff2.is_zero() {
            Outcome::pass().with_detail(format!(
                "{} = 0 and {} = 0",
                derivation.set.equations[0], derivation.set.equations[1]
            ))
        } else {
            Outcome::fail(format!("{} ; {}", diff1, diff2))
        }
    });
    let analysis = match case_analysis(&derivation.set, &case) {
        Ok(a) => a,
        Err(e) => {
            report.check("case-analysis", "case-split", || Outcome::fail(err_text(e)));
            return report;
        }
    };
    for (idx, step) in analysis.steps.iter().enumerate() {
        let id = format!("case-step-{}", idx + 1);
        report.check(&id, "case-split", || {
            Outcome::pass().with_detail(format!("{}: {}", step.title, step.detail))
        });
    }
    let expected_verdict = match case {
        CasimirCase::Zero => Verdict::ConsistentTrivial,
        _ => Verdict::Inconsistent,
    };
    report.check("verdict", "case-split", || {
        if analysis.verdict == expected_verdict {
            let detail = match analysis.verdict {
                Verdict::ConsistentTrivial => format!(
                    "consistent_trivial: alpha = {}, gamma = {}; the quadratic image vanishes",
                    analysis.alpha.clone().unwrap(),
                    analysis.gamma.clone().unwrap()
                ),
                Verdict::Inconsistent => {
                    "inconsistent: no polynomial quantization extends past degree 1".to_string()
                }
                Verdict::Undetermined => "undetermined".to_string(),
            };
            Outcome::pass().with_detail(detail)
        } else {
            Outcome::fail(format!(
                "verdict {} does not match expected {}",
                analysis.verdict, expected_verdict
            ))
        }
    });
    if analysis.verdict == Verdict::ConsistentTrivial {
        match sl2q_core::quantize::triviality_propagation(6) {
            Ok(propagation) => {
                for link in &propagation.links {
                    let id = format!("propagation-l{}", link.l);
                    report.check(&id, "graded-splitting", || {
                        if link.identity_residual_zero && link.cyclicity.is_cyclic() {
                            Outcome::pass().with_detail(format!(
                                "double-bracket identity exact; adjoint span rank {} of {}",
                                link.cyclicity.rank, link.cyclicity.space_dim
                            ))
                        } else {
                            Outcome::fail(format!(
                                "identity zero: {}, rank {}/{}",
                                link.identity_residual_zero,
                                link.cyclicity.rank,
                                link.cyclicity.space_dim
                            ))
                        }
                    });
                }
            }
            Err(e) => {
                report.check("propagation", "graded-splitting", || {
                    Outcome::fail(err_text(e))
                });
            }
        }
    }
    report
}

fn basis_report(r: u32, s: &Rational, levels: usize) -> Report {
    let mut report = Report::new(format!(
        "check basis --r {} --s {} --levels {}",
        r, s, levels
    ));
    report.check("normal-basis-rank", "normal-basis", || {
        fallible((|| {
            let module = build_module(s, levels).map_err(err_text)?;
            let rank = module.normal_basis_rank(r).map_err(err_text)?;
            let outcome = if rank.full_rank() {
                Outcome::pass()
            } else {
                Outcome::fail(format!("rank deficit {}", rank.expected - rank.rank))
            };
            Ok(outcome.with_detail(format!(
                "rank {} of {} expected, {} interior columns",
                rank.rank, rank.expected, rank.interior_columns
            )))
        })())
    });
    report
}

fn recursion_report(
    s: i64,
    n_max: i64,
    alpha: &Option<Rational>,
    beta: &Option<Rational>,
    c: &Option<Rational>,
    seed: u64,
) -> Report {
    let mut report = Report::new(format!("check recursion --s {} --n-max {}", s, n_max));
    let mut rng = sampling::rng_from_seed(seed);
    let mut pick = |given: &Option<Rational>| -> Rational {
        given
            .clone()
            .unwrap_or_else(|| sampling::random_rational(&mut rng, 7, 4))
    };
    let alpha = pick(alpha);
    let beta = pick(beta);
    let c = pick(c);

    report.check("polynomial-family-formal", "eigenvalue-recursion", || {
        // xi_n = gamma - alpha n^2 with all parameters formal: the residual
        // at every interior index is 3 gamma - alpha (s^2 - 1) - c, hence
        // zero under the linear relation.
        let indices: Vec<Rational> = ((s + 1)..=(s + 13))
            .step_by(2)
            .map(sl2q_core::exactnum::int)
            .collect();
        let xi = polynomial_xi(&indices);
        let s_poly = ParamPoly::param(Param::S);
        let c_poly = ParamPoly::param(Param::SmallC);
        let s2m1 = &s_poly.pow(2) - &ParamPoly::one();
        let gamma_value = (&(&ParamPoly::param(Param::Alpha) * &s2m1) + &c_poly)
            .scale(&GaussRational::from_ratio(1, 3));
        let mut worst = ParamPoly::zero();
        for n in ((s + 3)..=(s + 11)).step_by(2) {
            let residual =
                match recursion_residual(&xi, &s_poly, &c_poly, &sl2q_core::exactnum::int(n)) {
                    Ok(r) => r,
                    Err(e) => return Outcome::fail(err_text(e)),
                };
            let bound = residual.substitute_poly(Param::Gamma, &gamma_value);
            if !bound.is_zero() {
                worst = bound;
                break;
            }
        }
        Outcome::from_residual(worst.to_string()).with_detail(
            "gamma - alpha*n^2 solves the recursion under 3*gamma = alpha*(s^2 - 1) + c",
        )
    });

    report.check("digamma-suite", "eigenvalue-recursion", || {
        fallible((|| {
            let report = recursion_suite(
                s,
                &GaussRational::from_rational(alpha.clone()),
                &GaussRational::from_rational(beta.clone()),
                &GaussRational::from_rational(c.clone()),
                n_max,
            )
            .map_err(err_text)?;
            let outcome = if report.all_zero() {
                Outcome::pass()
            } else {
                Outcome::fail(format!("nonzero residuals at {:?}", report.nonzero))
            };
            Ok(outcome.with_detail(format!(
                "checked {} interior indices with alpha = {}, beta = {}, c = {}",
                report.checked.len(),
                alpha,
                beta,
                c
            )))
        })())
    });
    report
}

fn confluence_report(trials: usize, seed: u64) -> Report {
    let mut report = Report::new(format!("check confluence --trials {}", trials));
    let mut rng = sampling::rng_from_seed(seed);
    report.check("strategy-agreement", "rewrite-system", || {
        for k in 0..trials {
            let word = sampling::random_nc_word(&mut rng, 8);
            let left = reduce_terms(
                vec![(ParamPoly::one(), word.clone())],
                Strategy::LeftmostInnermost,
            );
            let right = reduce_terms(
                vec![(ParamPoly::one(), word.clone())],
                Strategy::RightmostOutermost,
            );
            if left != right {
                return Outcome::fail(format!("trial {}: {} reduces ambiguously", k, word));
            }
        }
        Outcome::pass().with_detail(format!(
            "{} random words of length <= 8 reduce identically under both strategies",
            trials
        ))
    });
    report.check("evaluation-homomorphism", "weight-module", || {
        fallible((|| {
            let module = build_module(&sl2q_core::exactnum::ratio(7, 3), 16).map_err(err_text)?;
            let bindings = module.standard_bindings().map_err(err_text)?;
            let word_trials = 150.min(trials.max(1));
            for _ in 0..word_trials {
                let word = sampling::random_nc_word(&mut rng, 6);
                let direct = module.eval_word(&word);
                let reduced = module
                    .eval_nc(&sl2q_core::enveloping::reduce_word(&word), &bindings)
                    .map_err(err_text)?;
                for &col in &module.interior_columns(word.len()) {
                    for row in 0..module.levels() {
                        if direct.get(row, col) != reduced.get(row, col) {
                            return Ok(Outcome::fail(format!(
                                "word {} disagrees at ({}, {})",
                                word, row, col
                            )));
                        }
                    }
                }
            }
            Ok(Outcome::pass().with_detail(format!(
                "{} random words evaluated equal before and after reduction on margin-safe columns",
                word_trials
            )))
        })())
    });
    report.check("casimir-centrality-reduction", "rewrite-system", || {
        let cas = sl2q_core::enveloping::quantum_casimir();
        for x in [NcPoly::h(), NcPoly::ep(), NcPoly::em()] {
            let comm = cas.commutator(&x);
            if !comm.is_zero() {
                return Outcome::fail(comm.to_string());
            }
        }
        Outcome::pass()
            .with_detail("H^2 + 4(E+, E-) commutes with all three letters by pure reduction")
    });
    report
}

fn trivial_quantization_report(
    degree: u32,
    s: &Rational,
    levels: usize,
    pairs: usize,
    emit_module: Option<&std::path::Path>,
    seed: u64,
) -> Report {
    let mut report = Report::new(format!(
        "build trivial-quantization --degree {} --s {} --levels {}",
        degree, s, levels
    ));
    let module = match build_module(s, levels) {
        Ok(m) => m,
        Err(e) => {
            report.check("module", "weight-module", || Outcome::fail(err_text(e)));
            return report;
        }
    };
    report.check("unit-axiom", "trivial-quantization", || {
        fallible((|| {
            let image = trivial_quantization(&ClassicalPoly::one(), &module).map_err(err_text)?;
            let diff = &image - &Matrix::identity(module.levels());
            let outcome = if diff.is_zero() {
                Outcome::pass()
            } else {
                Outcome::fail("unit image differs from the identity matrix".to_string())
            };
            Ok(outcome.with_detail("the constant 1 maps to the identity matrix exactly"))
        })())
    });
    report.check("degree-one-action", "trivial-quantization", || {
        fallible((|| {
            for (poly, letter) in [
                (ClassicalPoly::gen_h(), sl2q_core::enveloping::Letter::H),
                (
                    ClassicalPoly::gen_ep(),
                    sl2q_core::enveloping::Letter::EPlus,
                ),
                (
                    ClassicalPoly::gen_em(),
                    sl2q_core::enveloping::Letter::EMinus,
                ),
            ] {
                let image = trivial_quantization(&poly, &module).map_err(err_text)?;
                if &image != module.letter_matrix(letter) {
                    return Ok(Outcome::fail(format!(
                        "generator {} maps off the module action",
                        poly
                    )));
                }
            }
            Ok(Outcome::pass().with_detail("generators map to the module matrices"))
        })())
    });
    if let Some(path) = emit_module {
        report.check("emit-module", "plumbing", || {
            fallible((|| {
                let payload = serde_json::json!({
                    "s": s.to_string(),
                    "levels": module.levels(),
                    "h": module.letter_matrix(sl2q_core::enveloping::Letter::H).to_triplets(),
                    "ep": module.letter_matrix(sl2q_core::enveloping::Letter::EPlus).to_triplets(),
                    "em": module.letter_matrix(sl2q_core::enveloping::Letter::EMinus).to_triplets(),
                });
                let text = serde_json::to_string_pretty(&payload).expect("matrices serialize");
                std::fs::write(path, text).map_err(err_text)?;
                Ok(Outcome::pass()
                    .with_detail(format!("ladder matrices written to {}", path.display())))
            })())
        });
    }
    report.check("bracket-axiom-sample", "trivial-quantization", || {
        fallible((|| {
            let mut rng = sampling::rng_from_seed(seed);
            let q1 = trivial_q1_check(&module, pairs, degree, &mut rng).map_err(err_text)?;
            let outcome = if q1.passed() {
                Outcome::pass()
            } else {
                Outcome::fail(format!(
                    "{} of {} pairs failed; first: {}",
                    q1.failures,
                    q1.pairs,
                    q1.first_failure.clone().unwrap_or_default()
                ))
            };
            Ok(outcome.with_detail(format!(
                "{} random pairs of degree <= {} checked exactly on {} margin-{} columns",
                q1.pairs, degree, q1.interior_columns, q1.margin
            )))
        })())
    });
    report
}
