//! Scenario file parsing and game construction.
//!
//! A scenario file is strict UTF-8 JSON: unknown fields are rejected, and
//! the payload shape is fixed by the `kind` discriminator. The same top-level
//! envelope carries optional social ties and groups for every kind.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use eqbound_core::coverage::CoverageSystem;
use eqbound_core::game::{Game, Grouping, SocialGraph};
use eqbound_core::spectrum::{spectrum_game, SpectrumFlavor, SpectrumScenario};
use eqbound_core::table::TableSystem;
use eqbound_core::DEFAULT_TOL;

/// The on-disk scenario envelope.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub kind: String,
    pub version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Directed weighted ties `[i, m, w]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ties: Option<Vec<(usize, usize, f64)>>,
    /// Groups as lists of user indices (must be contiguous and in order).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<Vec<usize>>>,
    pub payload: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumPayload {
    pub positions: Vec<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_matrix: Option<Vec<Vec<f64>>>,
    pub delta: f64,
    pub lambda: f64,
    pub powers: Vec<f64>,
    pub vacant: Vec<Vec<u32>>,
    /// One noise value per entry of the corresponding `vacant` list.
    pub noise: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveragePayload {
    pub element_weights: Vec<f64>,
    pub covers: Vec<Vec<Vec<usize>>>,
    pub feasible: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TablePayload {
    pub acts: Vec<Vec<String>>,
    pub feasible: Vec<Vec<Vec<String>>>,
    pub gamma: BTreeMap<String, f64>,
    #[serde(default)]
    pub gamma_default: f64,
    pub alpha: Vec<BTreeMap<String, f64>>,
    #[serde(default)]
    pub alpha_default: f64,
}

/// A parsed scenario, ready to produce games.
pub struct Loaded {
    pub kind: Kind,
    pub tolerance: f64,
    pub ties: Option<SocialGraph>,
    pub grouping: Option<Grouping>,
    pub digest: String,
    pub cap: Option<u64>,
}

pub enum Kind {
    Spectrum(SpectrumScenario),
    Coverage(CoverageSystem),
    Table(TableSystem),
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Spectrum(_) => "spectrum",
            Kind::Coverage(_) => "coverage",
            Kind::Table(_) => "table",
        }
    }
}

#[derive(Debug)]
pub enum LoadError {
    Parse(String),
    Semantics(eqbound_core::Error),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Parse(m) => write!(f, "parse error: {m}"),
            LoadError::Semantics(e) => write!(f, "invalid scenario: {e}"),
        }
    }
}

impl From<eqbound_core::Error> for LoadError {
    fn from(e: eqbound_core::Error) -> Self {
        LoadError::Semantics(e)
    }
}

/// Content digest over the canonical (compact, fixed field order) encoding.
pub fn digest_of<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable");
    hex::encode(Sha256::digest(&bytes))
}

pub fn load(text: &str) -> Result<Loaded, LoadError> {
    let file: ScenarioFile =
        serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
    if file.version != 1 {
        return Err(LoadError::Parse(format!(
            "unsupported scenario version {}",
            file.version
        )));
    }
    let digest = digest_of(&file);
    let tolerance = file.tolerance.unwrap_or(DEFAULT_TOL);
    let kind = match file.kind.as_str() {
        "spectrum" => {
            let p: SpectrumPayload = serde_json::from_value(file.payload.clone())
                .map_err(|e| LoadError::Parse(e.to_string()))?;
            Kind::Spectrum(build_spectrum(p)?)
        }
        "coverage" => {
            let p: CoveragePayload = serde_json::from_value(file.payload.clone())
                .map_err(|e| LoadError::Parse(e.to_string()))?;
            let system = CoverageSystem {
                element_weights: p.element_weights,
                covers: p.covers,
                feasible: p.feasible,
            };
            system.validate()?;
            Kind::Coverage(system)
        }
        "table" => {
            let p: TablePayload = serde_json::from_value(file.payload.clone())
                .map_err(|e| LoadError::Parse(e.to_string()))?;
            let system = TableSystem {
                acts: p.acts,
                feasible: p.feasible,
                gamma: p.gamma.into_iter().collect(),
                gamma_default: p.gamma_default,
                alpha: p.alpha.into_iter().map(|m| m.into_iter().collect()).collect(),
                alpha_default: p.alpha_default,
            };
            system.validate()?;
            Kind::Table(system)
        }
        other => {
            return Err(LoadError::Parse(format!("unknown scenario kind {other:?}")));
        }
    };
    let n_users = match &kind {
        Kind::Spectrum(s) => s.n_users(),
        Kind::Coverage(s) => s.n_users(),
        Kind::Table(s) => s.n_users(),
    };
    let ties = match &file.ties {
        Some(edges) => Some(SocialGraph::new(n_users, edges)?),
        None => None,
    };
    let grouping = match &file.groups {
        Some(blocks) => Some(Grouping::from_blocks(blocks, n_users)?),
        None => None,
    };
    let cap = std::env::var("EQBOUND_MAX_OUTCOMES")
        .ok()
        .and_then(|v| v.parse::<u64>().ok());
    Ok(Loaded {
        kind,
        tolerance,
        ties,
        grouping,
        digest,
        cap,
    })
}

fn build_spectrum(p: SpectrumPayload) -> Result<SpectrumScenario, LoadError> {
    if p.noise.len() != p.vacant.len() {
        return Err(LoadError::Parse(
            "noise must list one row per user, aligned with vacant".into(),
        ));
    }
    let mut noise = Vec::with_capacity(p.vacant.len());
    for (user, (channels, row)) in p.vacant.iter().zip(&p.noise).enumerate() {
        if channels.len() != row.len() {
            return Err(LoadError::Parse(format!(
                "user {user}: {} vacant channels but {} noise values",
                channels.len(),
                row.len()
            )));
        }
        let map: BTreeMap<u32, f64> = channels.iter().copied().zip(row.iter().copied()).collect();
        noise.push(map);
    }
    let scenario = SpectrumScenario {
        positions: p.positions,
        distance_matrix: p.distance_matrix,
        delta: p.delta,
        lambda: p.lambda,
        powers: p.powers,
        vacant: p.vacant,
        noise,
        ties: None,
        partition: None,
    };
    scenario.validate()?;
    Ok(scenario)
}

impl Loaded {
    fn finish(&self, game: Game) -> Result<Game, eqbound_core::Error> {
        let mut game = game;
        if let Some(t) = &self.ties {
            game = game.with_social_graph(t.clone())?;
        }
        if let Some(g) = &self.grouping {
            game = game.with_grouping(g.clone())?;
        }
        if let Some(cap) = self.cap {
            game = game.with_enumeration_cap(cap);
        }
        Ok(game)
    }

    /// The game whose `γ` is the plain social utility (private flavor for
    /// spectrum scenarios).
    pub fn base_game(&self) -> Result<Game, eqbound_core::Error> {
        let game = match &self.kind {
            Kind::Spectrum(s) => {
                let mut s = s.clone();
                s.ties = self.ties.clone();
                s.partition = self.grouping.clone();
                spectrum_game(&s, SpectrumFlavor::Private)?
            }
            Kind::Coverage(s) => s.to_game()?,
            Kind::Table(s) => s.to_game()?,
        };
        self.finish(game)
    }

    /// The game used for social-aware analysis. For spectrum scenarios this
    /// rescales the social utility; other kinds share the base game.
    pub fn social_game(&self) -> Result<Game, eqbound_core::Error> {
        match &self.kind {
            Kind::Spectrum(s) => {
                let mut s = s.clone();
                s.ties = self.ties.clone();
                s.partition = self.grouping.clone();
                let game = spectrum_game(&s, SpectrumFlavor::SocialAware)?;
                self.finish(game)
            }
            _ => {
                if self.ties.is_none() {
                    return Err(eqbound_core::Error::MissingSocialGraph);
                }
                self.base_game()
            }
        }
    }
}
