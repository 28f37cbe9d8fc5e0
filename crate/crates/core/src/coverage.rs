//! Weighted-coverage instances: the monotone submodular workhorse family.
//!
//! Users own acts; each act covers a set of elements of a shared weighted
//! universe. `γ(X)` is the total weight covered by the union of everything
//! played, and `α_i(X) = γ(X) − γ(X_{-i})` is the marginal contribution of
//! user `i`, which makes the system valid with assumption 1 tight.

use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Act, ActSet, ActionProfile, ActionSpace, Game, GameBuilder, UtilityOracle};

/// A coverage system. Acts are indices into each user's `covers` list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageSystem {
    /// Weight per universe element; all weights must be ≥ 0.
    pub element_weights: Vec<f64>,
    /// `covers[user][act]` lists the elements that act covers.
    pub covers: Vec<Vec<Vec<usize>>>,
    /// `feasible[user]` lists actions as sets of act indices.
    pub feasible: Vec<Vec<Vec<usize>>>,
}

impl CoverageSystem {
    pub fn n_users(&self) -> usize {
        self.covers.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.covers.is_empty() {
            return Err(Error::InvalidParams("coverage system has no users".into()));
        }
        if self.feasible.len() != self.covers.len() {
            return Err(Error::InvalidParams(
                "feasible lists and covers must have one entry per user".into(),
            ));
        }
        if let Some(w) = self.element_weights.iter().find(|w| **w < 0.0 || !w.is_finite()) {
            return Err(Error::InvalidParams(format!("element weight {w} invalid")));
        }
        for (u, acts) in self.covers.iter().enumerate() {
            for act in acts {
                for &e in act {
                    if e >= self.element_weights.len() {
                        return Err(Error::InvalidParams(format!(
                            "user {u} covers unknown element {e}"
                        )));
                    }
                }
            }
            for action in &self.feasible[u] {
                for &a in action {
                    if a >= acts.len() {
                        return Err(Error::InvalidParams(format!(
                            "user {u} lists unknown act {a}"
                        )));
                    }
                }
            }
            if self.feasible[u].is_empty() {
                return Err(Error::InvalidParams(format!(
                    "user {u} has an empty action space"
                )));
            }
        }
        Ok(())
    }

    fn covered_weight(&self, profile: &ActionProfile) -> f64 {
        let mut covered = vec![false; self.element_weights.len()];
        for entry in profile.entries() {
            for act in &entry.acts {
                for &e in &self.covers[entry.user][act.0 as usize] {
                    covered[e] = true;
                }
            }
        }
        covered
            .iter()
            .zip(&self.element_weights)
            .filter(|&(c, _)| *c)
            .map(|(_, w)| w)
            .sum()
    }

    /// Builds the game with marginal-form private utilities.
    pub fn to_game(&self) -> Result<Game> {
        self.validate()?;
        let spaces = self
            .feasible
            .iter()
            .enumerate()
            .map(|(u, actions)| {
                let sets: Vec<ActSet> = actions
                    .iter()
                    .map(|a| a.iter().map(|&i| Act(i as u32)).collect())
                    .collect();
                ActionSpace::new(u, sets)
            })
            .collect::<Result<Vec<_>>>()?;
        let oracle = CoverageOracle {
            system: self.clone(),
        };
        GameBuilder::new(spaces, Arc::new(oracle)).build()
    }
}

struct CoverageOracle {
    system: CoverageSystem,
}

impl UtilityOracle for CoverageOracle {
    fn social(&self, profile: &ActionProfile) -> f64 {
        self.system.covered_weight(profile)
    }

    fn private(&self, user: usize, profile: &ActionProfile) -> f64 {
        if profile.contains_user(user) {
            self.system.covered_weight(profile)
                - self.system.covered_weight(&profile.without_user(user))
        } else {
            0.0
        }
    }
}

/// Knobs for the seeded coverage generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageGenParams {
    pub n_elements: usize,
    /// Acts per user.
    pub n_acts: usize,
    /// Feasible actions per user (singletons first, then small unions).
    pub n_actions: usize,
    /// Elements covered by each act.
    pub cover_size: usize,
    /// Weight range.
    pub weight: (f64, f64),
    /// Give every user the same feasible act-index structure.
    pub identical_spaces: bool,
    /// Allow the empty action to appear in some spaces.
    pub allow_empty_action: bool,
}

impl Default for CoverageGenParams {
    fn default() -> Self {
        CoverageGenParams {
            n_elements: 8,
            n_acts: 3,
            n_actions: 3,
            cover_size: 3,
            weight: (0.5, 2.0),
            identical_spaces: true,
            allow_empty_action: false,
        }
    }
}

/// Deterministically generates a coverage system from a seed.
pub fn generate_coverage(
    seed: u64,
    n_users: usize,
    params: &CoverageGenParams,
) -> Result<CoverageSystem> {
    if n_users == 0 || params.n_acts == 0 || params.n_actions == 0 || params.n_elements == 0 {
        return Err(Error::InvalidParams(
            "users, acts, actions, and elements must all be ≥ 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let element_weights: Vec<f64> = (0..params.n_elements)
        .map(|_| rng.random_range(params.weight.0..=params.weight.1))
        .collect();
    let covers: Vec<Vec<Vec<usize>>> = (0..n_users)
        .map(|_| {
            (0..params.n_acts)
                .map(|_| {
                    let mut es: Vec<usize> = (0..params.cover_size)
                        .map(|_| rng.random_range(0..params.n_elements))
                        .collect();
                    es.sort_unstable();
                    es.dedup();
                    es
                })
                .collect()
        })
        .collect();

    let actions_for = |rng: &mut ChaCha8Rng| -> Vec<Vec<usize>> {
        let mut actions: Vec<Vec<usize>> = Vec::new();
        // Singletons over the acts first, then random pairs.
        for a in 0..params.n_acts.min(params.n_actions) {
            actions.push(vec![a]);
        }
        while actions.len() < params.n_actions {
            let a = rng.random_range(0..params.n_acts);
            let b = rng.random_range(0..params.n_acts);
            let mut pair = vec![a, b];
            pair.sort_unstable();
            pair.dedup();
            if !actions.contains(&pair) {
                actions.push(pair);
            } else if params.allow_empty_action && !actions.contains(&Vec::new()) {
                actions.push(Vec::new());
            } else {
                break;
            }
        }
        actions
    };

    let feasible: Vec<Vec<Vec<usize>>> = if params.identical_spaces {
        let shared = actions_for(&mut rng);
        vec![shared; n_users]
    } else {
        (0..n_users).map(|_| actions_for(&mut rng)).collect()
    };

    let system = CoverageSystem {
        element_weights,
        covers,
        feasible,
    };
    system.validate()?;
    Ok(system)
}
