//! Report structures emitted by the commands. Field order is fixed, numbers
//! round-trip exactly, and the report digest covers everything except the
//! wall time, so identical runs produce identical bytes.

use serde::Serialize;

use eqbound_core::bounds::Hypotheses;
use eqbound_core::equilibria::EquilibriumCertificate;
use eqbound_core::game::ActionProfile;
use eqbound_core::structure::CheckOutcome;

use crate::scenario::digest_of;

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub nondecreasing: CheckOutcome,
    pub submodular: CheckOutcome,
    pub validity_private: CheckOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validity_social: Option<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validity_group: Option<CheckOutcome>,
}

impl StructureReport {
    pub fn summary(&self) -> String {
        let mut parts = vec![
            format!("nondecreasing: {}", self.nondecreasing.holds),
            format!("submodular: {}", self.submodular.holds),
            format!("valid(private): {}", self.validity_private.holds),
        ];
        if let Some(v) = &self.validity_social {
            parts.push(format!("valid(social): {}", v.holds));
        }
        if let Some(v) = &self.validity_group {
            parts.push(format!("valid(group): {}", v.holds));
        }
        parts.join(", ")
    }

    pub fn hypotheses(&self) -> Hypotheses {
        Hypotheses {
            nondecreasing: Some(self.nondecreasing.holds),
            submodular: Some(self.submodular.holds),
            valid_private: Some(self.validity_private.holds),
            valid_social: self.validity_social.as_ref().map(|v| v.holds),
            valid_group: self.validity_group.as_ref().map(|v| v.holds),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureSummary {
    pub c: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax_user: Option<usize>,
    pub per_group: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquilibriumRow {
    pub profile: ActionProfile,
    pub value: f64,
    pub max_regret: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct EquilibriaReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nash: Option<Vec<EquilibriumRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub social: Option<Vec<EquilibriumRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<EquilibriumRow>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub statement: String,
    pub equilibrium_kind: String,
    pub profile: ActionProfile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub digest: String,
    pub kind: String,
    pub tolerance: f64,
    pub structure: StructureReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_social: Option<StructureReport>,
    pub omega: ActionProfile,
    pub opt: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature_note: Option<String>,
    pub equilibria: EquilibriaReport,
    pub bounds: Vec<BoundRow>,
    pub report_digest: String,
    pub wall_time_ms: u64,
}

impl RunReport {
    /// Stamps the content digest (wall time excluded) and the wall time.
    pub fn finalize(mut self, wall_time_ms: u64) -> RunReport {
        self.report_digest = String::new();
        self.wall_time_ms = 0;
        self.report_digest = digest_of(&self);
        self.wall_time_ms = wall_time_ms;
        self
    }
}

pub fn equilibrium_row(
    game: &eqbound_core::game::Game,
    cert: &EquilibriumCertificate,
) -> EquilibriumRow {
    let profile = cert
        .profile
        .to_pure(game)
        .expect("enumerated equilibria are pure");
    let value = eqbound_core::expectation::expected_social(game, &cert.profile)
        .expect("within cap");
    EquilibriumRow {
        profile,
        value,
        max_regret: cert.max_regret,
    }
}
