//! Classical identity fixtures.
//!
//! The printed formulas are data: they live in a versioned TOML fixture and
//! are parsed with the published classical grammar at first use, so the
//! transcription can be audited character by character.

use crate::expr::{parse, ExprAst, Grammar};
use crate::poisson::{verify_identity, CasimirBinding, IdentityCheck, PoissonError};
use serde::Deserialize;
use std::sync::OnceLock;

pub const CASIMIR_DOUBLE_BRACKET: &str = "casimir-double-bracket";
pub const QUADRATIC_BRACKET: &str = "quadratic-bracket-identity";
pub const QUARTIC_BRACKET: &str = "quartic-bracket-identity";

pub fn h_power_identity_id(l: u32) -> String {
    format!("h-power-double-bracket-l{}", l)
}

const FIXTURE_TEXT: &str = include_str!("../fixtures/identities.toml");

#[derive(Deserialize)]
struct FixtureFile {
    version: u32,
    identity: Vec<FixtureEntry>,
}

#[derive(Deserialize)]
struct FixtureEntry {
    id: String,
    note: String,
    lhs: String,
    rhs: String,
    casimir: String,
}

/// One classical identity: the verbatim fixture text plus its parsed trees
/// and the Casimir binding it holds under.
#[derive(Clone, Debug)]
pub struct ClassicalIdentity {
    pub id: String,
    pub note: String,
    pub lhs_text: String,
    pub rhs_text: String,
    pub lhs: ExprAst,
    pub rhs: ExprAst,
    pub casimir: CasimirBinding,
}

impl ClassicalIdentity {
    pub fn check(&self) -> Result<IdentityCheck, PoissonError> {
        verify_identity(&self.lhs, &self.rhs, &self.casimir)
    }
}

fn load() -> Vec<ClassicalIdentity> {
    let file: FixtureFile = toml::from_str(FIXTURE_TEXT).expect("identity fixture parses as TOML");
    assert_eq!(file.version, 1, "unknown identity fixture version");
    file.identity
        .into_iter()
        .map(|entry| {
            let lhs = parse(&entry.lhs, Grammar::Classical)
                .unwrap_or_else(|e| panic!("fixture {} lhs: {}", entry.id, e));
            let rhs = parse(&entry.rhs, Grammar::Classical)
                .unwrap_or_else(|e| panic!("fixture {} rhs: {}", entry.id, e));
            let casimir = match entry.casimir.as_str() {
                "formal" => CasimirBinding::Formal,
                "0" => CasimirBinding::zero(),
                other => panic!("fixture {}: unknown casimir binding '{}'", entry.id, other),
            };
            ClassicalIdentity {
                id: entry.id,
                note: entry.note,
                lhs_text: entry.lhs,
                rhs_text: entry.rhs,
                lhs,
                rhs,
                casimir,
            }
        })
        .collect()
}

/// All shipped classical identities, parsed once.
pub fn classical_identities() -> &'static [ClassicalIdentity] {
    static CACHE: OnceLock<Vec<ClassicalIdentity>> = OnceLock::new();
    CACHE.get_or_init(load)
}

pub fn identity(id: &str) -> Option<&'static ClassicalIdentity> {
    classical_identities().iter().find(|i| i.id == id)
}

/// Outcome of running every fixture identity through the orbit ring.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub id: String,
    pub residual: String,
    pub ok: bool,
}

pub fn run_classical_suite() -> Result<Vec<SuiteOutcome>, PoissonError> {
    classical_identities()
        .iter()
        .map(|identity| {
            let check = identity.check()?;
            Ok(SuiteOutcome {
                id: identity.id.clone(),
                residual: check.residual.to_string(),
                ok: check.holds(),
            })
        })
        .collect()
}
