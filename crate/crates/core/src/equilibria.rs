//! Equilibrium certification, exhaustive enumeration, and best-response
//! dynamics for the three deviation notions: per-user private utility (Nash),
//! per-user social group utility (social-aware), and per-group joint block
//! utility (group Nash).
//!
//! Certification accepts mixed profiles; expected utilities are affine in any
//! single deviator's mixing weights, so checking pure deviations only is
//! exact. Search (enumeration and dynamics) works over pure profiles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expectation::{expected_eta_block, expected_eta_user, expected_private};
use crate::game::{ActionProfile, Game, Grouping, MixedStrategy, StrategyProfile};
use crate::iter::CartesianIndices;

/// Which deviation notion a certificate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EquilibriumKind {
    Nash,
    SocialAware,
    GroupNash,
}

impl std::fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EquilibriumKind::Nash => write!(f, "nash"),
            EquilibriumKind::SocialAware => write!(f, "social"),
            EquilibriumKind::GroupNash => write!(f, "group"),
        }
    }
}

/// The best admissible deviation found while certifying.
#[derive(Debug, Clone, Serialize)]
pub struct Deviation {
    /// Deviating user, or group index for group certificates.
    pub decider: usize,
    /// Action indices of the deviation (one entry, or one per block member).
    pub action_indices: Vec<usize>,
    pub gain: f64,
}

/// Result of certifying one profile.
#[derive(Debug, Clone, Serialize)]
pub struct EquilibriumCertificate {
    pub kind: EquilibriumKind,
    pub profile: StrategyProfile,
    /// Largest improvement any admissible pure deviation achieves.
    pub max_regret: f64,
    pub tolerance: f64,
    /// True iff `max_regret ≤ tolerance`.
    pub valid: bool,
    pub best_deviation: Option<Deviation>,
}

fn require_complete(game: &Game, s: &StrategyProfile) -> Result<()> {
    if !s.is_complete(game.n_users()) {
        return Err(Error::IncompleteProfile {
            expected: game.n_users(),
            found: s.len(),
        });
    }
    Ok(())
}

fn certify<U>(
    game: &Game,
    kind: EquilibriumKind,
    s: &StrategyProfile,
    tol: f64,
    deciders: usize,
    utility: U,
) -> Result<EquilibriumCertificate>
where
    U: Fn(usize, &StrategyProfile) -> Result<f64>,
{
    let mut max_regret = f64::NEG_INFINITY;
    let mut best_deviation = None;
    for d in 0..deciders {
        let base = utility(d, s)?;
        for (deviated, indices) in deviations(game, kind, d, s)? {
            let gain = utility(d, &deviated)? - base;
            if gain > max_regret {
                max_regret = gain;
                best_deviation = Some(Deviation {
                    decider: d,
                    action_indices: indices,
                    gain,
                });
            }
        }
    }
    if max_regret == f64::NEG_INFINITY {
        max_regret = 0.0;
    }
    Ok(EquilibriumCertificate {
        kind,
        profile: s.clone(),
        max_regret,
        tolerance: tol,
        valid: max_regret <= tol,
        best_deviation,
    })
}

/// All pure deviations available to one decider, with their action indices.
fn deviations(
    game: &Game,
    kind: EquilibriumKind,
    decider: usize,
    s: &StrategyProfile,
) -> Result<Vec<(StrategyProfile, Vec<usize>)>> {
    let mut out = Vec::new();
    match kind {
        EquilibriumKind::Nash | EquilibriumKind::SocialAware => {
            for j in 0..game.space(decider).len() {
                let deviated = s.with_strategy(MixedStrategy::pure(
                    decider,
                    j,
                    game.space(decider).len(),
                ));
                out.push((deviated, vec![j]));
            }
        }
        EquilibriumKind::GroupNash => {
            let grouping = game.grouping().ok_or(Error::MissingGrouping)?;
            let members: Vec<usize> = grouping.users(decider).collect();
            let radices: Vec<usize> = members.iter().map(|&u| game.space(u).len()).collect();
            for combo in CartesianIndices::new(radices) {
                let mut deviated = s.clone();
                for (pos, &u) in members.iter().enumerate() {
                    deviated = deviated.with_strategy(MixedStrategy::pure(
                        u,
                        combo[pos],
                        game.space(u).len(),
                    ));
                }
                out.push((deviated, combo));
            }
        }
    }
    Ok(out)
}

/// Certifies `S` as a Nash equilibrium: no user can raise its expected
/// private utility with any unilateral deviation.
pub fn is_nash(game: &Game, s: &StrategyProfile, tol: f64) -> Result<EquilibriumCertificate> {
    require_complete(game, s)?;
    certify(game, EquilibriumKind::Nash, s, tol, game.n_users(), |i, t| {
        expected_private(game, i, t)
    })
}

/// Certifies `S` as a social-aware Nash equilibrium: deviations are judged by
/// the tie-weighted social group utility instead of the private utility.
pub fn is_social_aware_nash(
    game: &Game,
    s: &StrategyProfile,
    tol: f64,
) -> Result<EquilibriumCertificate> {
    if game.social_graph().is_none() {
        return Err(Error::MissingSocialGraph);
    }
    require_complete(game, s)?;
    certify(
        game,
        EquilibriumKind::SocialAware,
        s,
        tol,
        game.n_users(),
        |i, t| expected_eta_user(game, i, t),
    )
}

/// Certifies `S` as a group Nash equilibrium: no block can raise its block
/// utility with any joint pure deviation of its members.
pub fn is_group_nash(
    game: &Game,
    grouping: &Grouping,
    s: &StrategyProfile,
    tol: f64,
) -> Result<EquilibriumCertificate> {
    require_complete(game, s)?;
    let game = game.with_grouping(grouping.clone())?;
    certify(
        &game,
        EquilibriumKind::GroupNash,
        s,
        tol,
        grouping.len(),
        |b, t| expected_eta_block(&game, grouping, b, t),
    )
}

/// Certifies with the notion selected by `kind`, reading the grouping from
/// the game for group certificates.
pub fn certify_kind(
    game: &Game,
    kind: EquilibriumKind,
    s: &StrategyProfile,
    tol: f64,
) -> Result<EquilibriumCertificate> {
    match kind {
        EquilibriumKind::Nash => is_nash(game, s, tol),
        EquilibriumKind::SocialAware => is_social_aware_nash(game, s, tol),
        EquilibriumKind::GroupNash => {
            let grouping = game.grouping().ok_or(Error::MissingGrouping)?.clone();
            is_group_nash(game, &grouping, s, tol)
        }
    }
}

/// Outcome of best-response dynamics.
#[derive(Debug, Clone, Serialize)]
pub enum BrdOutcome {
    /// A full pass changed nothing; `rounds` counts passes including the
    /// stable one.
    Converged { profile: ActionProfile, rounds: usize },
    /// `max_rounds` passes went by without a stable pass; the history holds
    /// the start profile and the profile after each pass.
    Cycled { history: Vec<ActionProfile> },
}

/// Round-robin best-response dynamics from a pure complete feasible profile.
///
/// Deciders are users (groups for [`EquilibriumKind::GroupNash`]) in
/// ascending order. A decider moves only when some deviation strictly
/// improves its utility, and then to the lexicographically least action
/// indices attaining the best value, so certified equilibria are fixed
/// points.
pub fn best_response_dynamics(
    game: &Game,
    kind: EquilibriumKind,
    start: &ActionProfile,
    max_rounds: usize,
) -> Result<BrdOutcome> {
    if !start.is_complete(game.n_users()) {
        return Err(Error::IncompleteProfile {
            expected: game.n_users(),
            found: start.len(),
        });
    }
    let mut indices = Vec::with_capacity(game.n_users());
    for e in start.entries() {
        let idx = game.space(e.user).index_of(&e.acts).ok_or_else(|| {
            Error::StrategyShape(format!("user {} starts at an infeasible action", e.user))
        })?;
        indices.push(idx);
    }
    if kind == EquilibriumKind::SocialAware && game.social_graph().is_none() {
        return Err(Error::MissingSocialGraph);
    }
    let grouping = match kind {
        EquilibriumKind::GroupNash => {
            Some(game.grouping().ok_or(Error::MissingGrouping)?.clone())
        }
        _ => None,
    };
    let blocks: Vec<Vec<usize>> = match &grouping {
        Some(g) => (0..g.len()).map(|b| g.users(b).collect()).collect(),
        None => (0..game.n_users()).map(|u| vec![u]).collect(),
    };
    let payoff = |decider: usize, profile: &ActionProfile| -> Result<f64> {
        match kind {
            EquilibriumKind::Nash => Ok(game.alpha(decider, profile)),
            EquilibriumKind::SocialAware => game.social_group_utility(decider, profile),
            EquilibriumKind::GroupNash => {
                let g = grouping.as_ref().expect("grouping checked");
                Ok(g.users(decider).map(|j| game.alpha(j, profile)).sum())
            }
        }
    };

    let mut history = vec![game.profile_from_indices(&indices)];
    for round in 1..=max_rounds {
        let mut changed = false;
        for (decider, members) in blocks.iter().enumerate() {
            let current = game.profile_from_indices(&indices);
            let current_value = payoff(decider, &current)?;
            let radices: Vec<usize> = members.iter().map(|&u| game.space(u).len()).collect();
            let mut best: Option<(f64, Vec<usize>)> = None;
            for combo in CartesianIndices::new(radices) {
                let mut candidate = indices.clone();
                for (pos, &u) in members.iter().enumerate() {
                    candidate[u] = combo[pos];
                }
                let value = payoff(decider, &game.profile_from_indices(&candidate))?;
                if best.as_ref().map(|(v, _)| value > *v).unwrap_or(true) {
                    best = Some((value, combo));
                }
            }
            let (best_value, best_combo) = best.expect("nonempty action spaces");
            if best_value > current_value {
                for (pos, &u) in members.iter().enumerate() {
                    indices[u] = best_combo[pos];
                }
                changed = true;
            }
        }
        let profile = game.profile_from_indices(&indices);
        if !changed {
            return Ok(BrdOutcome::Converged { profile, rounds: round });
        }
        history.push(profile);
    }
    Ok(BrdOutcome::Cycled { history })
}

/// Tests every pure complete profile with the matching certifier and returns
/// the valid ones in lexicographic action-index order.
pub fn enumerate_equilibria(
    game: &Game,
    kind: EquilibriumKind,
    tol: f64,
) -> Result<Vec<EquilibriumCertificate>> {
    let radices = game.spaces().iter().map(|s| s.len()).collect::<Vec<_>>();
    let total = CartesianIndices::count_total(&radices);
    if total > game.enumeration_cap() as u128 {
        return Err(Error::ResourceLimit {
            required: total,
            cap: game.enumeration_cap(),
        });
    }
    // Fail fast when the kind needs structure the game lacks.
    match kind {
        EquilibriumKind::SocialAware if game.social_graph().is_none() => {
            return Err(Error::MissingSocialGraph)
        }
        EquilibriumKind::GroupNash if game.grouping().is_none() => {
            return Err(Error::MissingGrouping)
        }
        _ => {}
    }
    let mut out = Vec::new();
    for combo in CartesianIndices::new(radices) {
        let profile = game.profile_from_indices(&combo);
        let s = StrategyProfile::from_pure(game, &profile)?;
        let cert = certify_kind(game, kind, &s, tol)?;
        if cert.valid {
            out.push(cert);
        }
    }
    Ok(out)
}
