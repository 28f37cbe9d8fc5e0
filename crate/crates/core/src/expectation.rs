//! Exact expected utilities over mixed strategy profiles.
//!
//! Everything here enumerates the support product of the distributions
//! involved; nothing is sampled. Terms are sorted by descending absolute
//! weight and accumulated with compensated summation so margins reproduce
//! across platforms. A point-mass profile therefore evaluates to the pure
//! utility bit-exactly (single term, weight 1).

use crate::error::{Error, Result};
use crate::game::{ActionProfile, Game, StrategyProfile};
use crate::iter::CartesianIndices;

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// The randomized profile `Ω ∪ S`: every user plays its base act-set, and the
/// overlay users additionally union in an action drawn from their strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct ComposedProfile {
    base: ActionProfile,
    overlay: StrategyProfile,
}

impl ComposedProfile {
    pub fn base(&self) -> &ActionProfile {
        &self.base
    }

    pub fn overlay(&self) -> &StrategyProfile {
        &self.overlay
    }
}

/// Builds the composition `Ω ∪ S_part`. `omega` must be a complete pure
/// profile; `s_part` may cover any subset of the users. A realization assigns
/// user `j` in the overlay the act-set `σ_j ∪ x_j` with `x_j` drawn from
/// `s_j`, and every other user its `σ_j`.
pub fn compose_union(
    game: &Game,
    omega: &ActionProfile,
    s_part: &StrategyProfile,
) -> Result<ComposedProfile> {
    if !omega.is_complete(game.n_users()) {
        return Err(Error::IncompleteOmega);
    }
    validate_shape(game, s_part)?;
    Ok(ComposedProfile {
        base: omega.clone(),
        overlay: s_part.clone(),
    })
}

/// Composition over a partial base: used where a decider is dropped from the
/// context entirely (curvature-style marginals).
pub(crate) fn compose_parts(
    game: &Game,
    base: ActionProfile,
    overlay: &StrategyProfile,
) -> Result<ComposedProfile> {
    validate_shape(game, overlay)?;
    Ok(ComposedProfile {
        base,
        overlay: overlay.clone(),
    })
}

fn validate_shape(game: &Game, s: &StrategyProfile) -> Result<()> {
    for e in s.entries() {
        if e.user >= game.n_users() {
            return Err(Error::StrategyShape(format!(
                "strategy for user {} in a {}-user game",
                e.user,
                game.n_users()
            )));
        }
        if e.probs().len() != game.space(e.user).len() {
            return Err(Error::StrategyShape(format!(
                "user {} has {} feasible actions but the strategy lists {}",
                e.user,
                game.space(e.user).len(),
                e.probs().len()
            )));
        }
        e.validate()?;
    }
    Ok(())
}

/// Enumerates the weighted pure realizations of `s` and folds `f` over them.
fn expect_over<F: FnMut(&ActionProfile) -> f64>(
    game: &Game,
    s: &StrategyProfile,
    mut f: F,
) -> Result<f64> {
    validate_shape(game, s)?;
    let supports: Vec<(usize, Vec<(usize, f64)>)> = s
        .entries()
        .iter()
        .map(|e| (e.user, e.support()))
        .collect();
    let radices: Vec<usize> = supports.iter().map(|(_, sup)| sup.len()).collect();
    let total = CartesianIndices::count_total(&radices);
    let cap = game.enumeration_cap();
    if total > cap as u128 {
        return Err(Error::ResourceLimit {
            required: total,
            cap,
        });
    }

    let mut terms: Vec<(f64, f64)> = Vec::with_capacity(total as usize);
    for combo in CartesianIndices::new(radices) {
        let mut weight = 1.0;
        let mut entries = Vec::with_capacity(supports.len());
        for (pos, &(user, ref sup)) in supports.iter().enumerate() {
            let (action_idx, p) = sup[combo[pos]];
            weight *= p;
            entries.push(game.space(user).action(action_idx));
        }
        let profile = ActionProfile::new(entries).expect("distinct users by construction");
        terms.push((weight, f(&profile)));
    }
    Ok(reduce_terms(terms))
}

/// Enumerates the weighted pure realizations of a composed profile.
fn expect_over_composed<F: FnMut(&ActionProfile) -> f64>(
    game: &Game,
    c: &ComposedProfile,
    mut f: F,
) -> Result<f64> {
    validate_shape(game, &c.overlay)?;
    let supports: Vec<(usize, Vec<(usize, f64)>)> = c
        .overlay
        .entries()
        .iter()
        .map(|e| (e.user, e.support()))
        .collect();
    let radices: Vec<usize> = supports.iter().map(|(_, sup)| sup.len()).collect();
    let total = CartesianIndices::count_total(&radices);
    let cap = game.enumeration_cap();
    if total > cap as u128 {
        return Err(Error::ResourceLimit {
            required: total,
            cap,
        });
    }

    let mut terms: Vec<(f64, f64)> = Vec::with_capacity(total as usize);
    for combo in CartesianIndices::new(radices) {
        let mut weight = 1.0;
        let mut realized = c.base.clone();
        for (pos, &(user, ref sup)) in supports.iter().enumerate() {
            let (action_idx, p) = sup[combo[pos]];
            weight *= p;
            let mut united = realized.get(user).cloned().unwrap_or_default();
            united.extend(game.space(user).act_set(action_idx).iter().copied());
            realized = realized.with_action(user, united);
        }
        terms.push((weight, f(&realized)));
    }
    Ok(reduce_terms(terms))
}

fn reduce_terms(mut terms: Vec<(f64, f64)>) -> f64 {
    terms.sort_by(|a, b| b.0.abs().partial_cmp(&a.0.abs()).expect("finite weights"));
    let mut acc = Compensated::default();
    for (w, v) in terms {
        acc.add(w * v);
    }
    acc.value()
}

/// The expected social utility `γ̄(S)`.
pub fn expected_social(game: &Game, s: &StrategyProfile) -> Result<f64> {
    expect_over(game, s, |x| game.gamma(x))
}

/// The expected private utility `ᾱ_i(S)`.
pub fn expected_private(game: &Game, user: usize, s: &StrategyProfile) -> Result<f64> {
    expect_over(game, s, |x| game.alpha(user, x))
}

/// The expected social group utility `η̄_i(S)` of one user (α_i plus the
/// tie-weighted α of its neighbors).
pub fn expected_eta_user(game: &Game, user: usize, s: &StrategyProfile) -> Result<f64> {
    let graph = game.social_graph().ok_or(Error::MissingSocialGraph)?;
    let ties = graph.ties(user).to_vec();
    expect_over(game, s, |x| {
        let mut eta = game.alpha(user, x);
        for &(m, w) in &ties {
            eta += w * game.alpha(m, x);
        }
        eta
    })
}

/// The expected block utility `η̄_i(S)` of one group (sum of its members' α).
pub fn expected_eta_block(
    game: &Game,
    grouping: &crate::game::Grouping,
    block: usize,
    s: &StrategyProfile,
) -> Result<f64> {
    let users = grouping.users(block);
    expect_over(game, s, |x| users.clone().map(|j| game.alpha(j, x)).sum())
}

/// The expected social utility `γ̄(Ω ∪ S)` of a composed profile.
pub fn expected_social_composed(game: &Game, c: &ComposedProfile) -> Result<f64> {
    expect_over_composed(game, c, |x| game.gamma(x))
}

/// The expected marginal `γ̄_W(T) = γ̄(T ⊕ W) − γ̄(T)` for disjoint user sets.
pub fn expected_marginal(game: &Game, w: &StrategyProfile, t: &StrategyProfile) -> Result<f64> {
    let merged = t.concat(w)?;
    Ok(expected_social(game, &merged)? - expected_social(game, t)?)
}

/// The expected marginal `γ̄_W(T)` of appending `w` to a composed profile.
/// `w`'s users must be absent from the overlay; under the union semantics the
/// appended actions merge into those users' base act-sets.
pub fn expected_marginal_composed(
    game: &Game,
    w: &StrategyProfile,
    t: &ComposedProfile,
) -> Result<f64> {
    for user in w.users() {
        if t.overlay.contains_user(user) {
            return Err(Error::OverlappingUsers(user));
        }
    }
    let extended = ComposedProfile {
        base: t.base.clone(),
        overlay: t.overlay.concat(w)?,
    };
    Ok(expected_social_composed(game, &extended)? - expected_social_composed(game, t)?)
}
