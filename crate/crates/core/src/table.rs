//! Lookup-table games: explicit `γ` and `α` values keyed by profile, plus a
//! default for everything unlisted. Built for adversarial, hand-crafted
//! instances (non-submodular counterexamples, games with no pure Nash, ...).
//!
//! Acts carry textual labels; a profile key is the entries sorted by user,
//! formatted `user:act+act|user:act` (an empty act-set leaves nothing after
//! the colon; the empty profile is the empty string).

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Act, ActSet, ActionProfile, ActionSpace, Game, GameBuilder, UtilityOracle};

/// A table-defined utility system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableSystem {
    /// Act labels per user; positions define the act ids.
    pub acts: Vec<Vec<String>>,
    /// Feasible actions per user, as lists of act labels.
    pub feasible: Vec<Vec<Vec<String>>>,
    /// Explicit social utility values by profile key.
    pub gamma: HashMap<String, f64>,
    /// Value of `γ` on unlisted profiles.
    pub gamma_default: f64,
    /// Explicit private utility values by profile key, one map per user.
    pub alpha: Vec<HashMap<String, f64>>,
    /// Value of `α_i` on unlisted profiles.
    pub alpha_default: f64,
}

impl TableSystem {
    pub fn n_users(&self) -> usize {
        self.acts.len()
    }

    fn act_id(&self, user: usize, label: &str) -> Result<Act> {
        self.acts[user]
            .iter()
            .position(|l| l == label)
            .map(|i| Act(i as u32))
            .ok_or_else(|| {
                Error::InvalidParams(format!("user {user} has no act labeled {label:?}"))
            })
    }

    /// Parses a profile key into a canonical [`ActionProfile`].
    pub fn parse_key(&self, key: &str) -> Result<ActionProfile> {
        let mut entries = Vec::new();
        if key.is_empty() {
            return ActionProfile::new(entries);
        }
        for part in key.split('|') {
            let (user_str, acts_str) = part.split_once(':').ok_or_else(|| {
                Error::InvalidParams(format!("profile key entry {part:?} lacks a colon"))
            })?;
            let user: usize = user_str.parse().map_err(|_| {
                Error::InvalidParams(format!("bad user index {user_str:?} in profile key"))
            })?;
            if user >= self.n_users() {
                return Err(Error::InvalidParams(format!(
                    "profile key references user {user} of {}",
                    self.n_users()
                )));
            }
            let mut set = ActSet::new();
            if !acts_str.is_empty() {
                for label in acts_str.split('+') {
                    set.insert(self.act_id(user, label)?);
                }
            }
            entries.push(crate::game::Action::new(user, set));
        }
        ActionProfile::new(entries)
    }

    /// Canonical key of a profile under this table's labels.
    pub fn key_of(&self, profile: &ActionProfile) -> String {
        profile
            .entries()
            .iter()
            .map(|e| {
                let labels: Vec<&str> = e
                    .acts
                    .iter()
                    .map(|a| self.acts[e.user][a.0 as usize].as_str())
                    .collect();
                format!("{}:{}", e.user, labels.join("+"))
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn validate(&self) -> Result<()> {
        if self.acts.is_empty() {
            return Err(Error::InvalidParams("table system has no users".into()));
        }
        if self.feasible.len() != self.acts.len() || self.alpha.len() != self.acts.len() {
            return Err(Error::InvalidParams(
                "feasible lists and alpha tables must have one entry per user".into(),
            ));
        }
        for (u, actions) in self.feasible.iter().enumerate() {
            if actions.is_empty() {
                return Err(Error::InvalidParams(format!(
                    "user {u} has an empty action space"
                )));
            }
            for action in actions {
                for label in action {
                    self.act_id(u, label)?;
                }
            }
        }
        for key in self.gamma.keys() {
            self.parse_key(key)?;
        }
        for table in &self.alpha {
            for key in table.keys() {
                self.parse_key(key)?;
            }
        }
        Ok(())
    }

    pub fn to_game(&self) -> Result<Game> {
        self.validate()?;
        let spaces = self
            .feasible
            .iter()
            .enumerate()
            .map(|(u, actions)| {
                let sets = actions
                    .iter()
                    .map(|labels| {
                        labels
                            .iter()
                            .map(|l| self.act_id(u, l))
                            .collect::<Result<ActSet>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                ActionSpace::new(u, sets)
            })
            .collect::<Result<Vec<_>>>()?;
        // Resolve string keys to profiles once, up front.
        let mut gamma = HashMap::new();
        for (k, &v) in &self.gamma {
            gamma.insert(self.parse_key(k)?, v);
        }
        let mut alpha = Vec::with_capacity(self.alpha.len());
        for table in &self.alpha {
            let mut resolved = HashMap::new();
            for (k, &v) in table {
                resolved.insert(self.parse_key(k)?, v);
            }
            alpha.push(resolved);
        }
        let oracle = TableOracle {
            gamma,
            gamma_default: self.gamma_default,
            alpha,
            alpha_default: self.alpha_default,
        };
        let ground_sets = self
            .acts
            .iter()
            .map(|labels| (0..labels.len() as u32).map(Act).collect())
            .collect();
        GameBuilder::new(spaces, Arc::new(oracle))
            .ground_sets(ground_sets)
            .build()
    }
}

struct TableOracle {
    gamma: HashMap<ActionProfile, f64>,
    gamma_default: f64,
    alpha: Vec<HashMap<ActionProfile, f64>>,
    alpha_default: f64,
}

impl UtilityOracle for TableOracle {
    fn social(&self, profile: &ActionProfile) -> f64 {
        self.gamma
            .get(profile)
            .copied()
            .unwrap_or(self.gamma_default)
    }

    fn private(&self, user: usize, profile: &ActionProfile) -> f64 {
        self.alpha[user]
            .get(profile)
            .copied()
            .unwrap_or(self.alpha_default)
    }
}

/// A 2×2 table game with per-cell `(α_0, α_1)` payoffs and `γ = α_0 + α_1`;
/// rows and columns are each user's two single-act actions. Handy for
/// hand-built counterexamples.
pub fn two_by_two(payoffs: [[(f64, f64); 2]; 2]) -> TableSystem {
    let labels = |names: [&str; 2]| names.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let mut gamma = HashMap::new();
    let mut alpha0 = HashMap::new();
    let mut alpha1 = HashMap::new();
    let row_names = ["a", "b"];
    let col_names = ["c", "d"];
    for (r, row) in payoffs.iter().enumerate() {
        for (c, &(p0, p1)) in row.iter().enumerate() {
            let key = format!("0:{}|1:{}", row_names[r], col_names[c]);
            gamma.insert(key.clone(), p0 + p1);
            alpha0.insert(key.clone(), p0);
            alpha1.insert(key, p1);
        }
    }
    TableSystem {
        acts: vec![labels(row_names), labels(col_names)],
        feasible: vec![
            vec![vec!["a".into()], vec!["b".into()]],
            vec![vec!["c".into()], vec!["d".into()]],
        ],
        gamma,
        gamma_default: 0.0,
        alpha: vec![alpha0, alpha1],
        alpha_default: 0.0,
    }
}
