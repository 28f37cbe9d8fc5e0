//! Database-assisted spectrum access instances: geometry, interference,
//! private/social/group utilities, the p-scaled social objective, and a
//! seeded scenario generator.
//!
//! Each user picks one channel from its vacant set; interference between two
//! users on the same channel decays with distance and applies only inside the
//! radius `δ`. Private utility is negative interference, so the social
//! utility is never positive: this family is submodular but not
//! nondecreasing whenever any noise or interference is realizable.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{
    acts, ActSet, ActionProfile, ActionSpace, Game, GameBuilder, Grouping, SocialGraph,
    UtilityOracle,
};

/// Which utility system to build from a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectrumFlavor {
    /// `α_i = −I_i`, `γ = Σ α_i`.
    Private,
    /// `γ = p · Σ α_i` with `p = min_j {1 + Σ_{i: j ∈ N_i^s} w_ij}`; per-user
    /// group utilities come from the social graph.
    SocialAware,
    /// `γ = Σ α_i`; group utilities are block sums over the partition.
    Grouped,
}

/// A spectrum-access scenario. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumScenario {
    /// Planar coordinates per user, in meters.
    pub positions: Vec<(f64, f64)>,
    /// Optional explicit distance matrix; overrides positions when present.
    pub distance_matrix: Option<Vec<Vec<f64>>>,
    /// Interference radius δ.
    pub delta: f64,
    /// Path-loss exponent λ.
    pub lambda: f64,
    /// Transmission powers P_i.
    pub powers: Vec<f64>,
    /// Vacant channel sets M_i.
    pub vacant: Vec<Vec<u32>>,
    /// Noise ω_c^i, keyed by channel, one map per user; every vacant channel
    /// must have an entry.
    pub noise: Vec<BTreeMap<u32, f64>>,
    /// Optional social ties.
    pub ties: Option<SocialGraph>,
    /// Optional partition into groups.
    pub partition: Option<Grouping>,
}

impl SpectrumScenario {
    pub fn n_users(&self) -> usize {
        self.positions.len()
    }

    /// Validates the scenario invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_users();
        if n == 0 {
            return Err(Error::InvalidParams("scenario has no users".into()));
        }
        if self.delta <= 0.0 {
            return Err(Error::InvalidParams(format!("delta {} must be > 0", self.delta)));
        }
        if self.lambda <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "lambda {} must be > 0",
                self.lambda
            )));
        }
        if self.powers.len() != n || self.vacant.len() != n || self.noise.len() != n {
            return Err(Error::InvalidParams(
                "powers, vacant sets and noise maps must all have one entry per user".into(),
            ));
        }
        if let Some(p) = self.powers.iter().find(|p| **p <= 0.0) {
            return Err(Error::InvalidParams(format!("power {p} must be > 0")));
        }
        for (i, m) in self.vacant.iter().enumerate() {
            if m.is_empty() {
                return Err(Error::InvalidParams(format!("user {i} has no vacant channel")));
            }
            for c in m {
                match self.noise[i].get(c) {
                    Some(w) if *w >= 0.0 => {}
                    Some(w) => {
                        return Err(Error::InvalidParams(format!(
                            "noise {w} for user {i} channel {c} must be ≥ 0"
                        )))
                    }
                    None => {
                        return Err(Error::InvalidParams(format!(
                            "user {i} lacks a noise entry for channel {c}"
                        )))
                    }
                }
            }
        }
        if let Some(d) = &self.distance_matrix {
            if d.len() != n || d.iter().any(|row| row.len() != n) {
                return Err(Error::InvalidParams("distance matrix must be N×N".into()));
            }
        }
        for m in 0..n {
            for i in 0..n {
                if m != i && self.distance(m, i) <= 0.0 {
                    return Err(Error::InvalidParams(format!(
                        "distance between users {m} and {i} must be > 0"
                    )));
                }
            }
        }
        if let Some(g) = &self.ties {
            if g.n_users() != n {
                return Err(Error::InvalidParams("ties sized for a different user count".into()));
            }
        }
        if let Some(g) = &self.partition {
            Grouping::from_sizes(g.sizes().to_vec(), n)?;
        }
        Ok(())
    }

    /// Distance `d_mi`, from the explicit matrix if present, else Euclidean.
    pub fn distance(&self, m: usize, i: usize) -> f64 {
        if let Some(d) = &self.distance_matrix {
            d[m][i]
        } else {
            let (xa, ya) = self.positions[m];
            let (xb, yb) = self.positions[i];
            ((xa - xb).powi(2) + (ya - yb).powi(2)).sqrt()
        }
    }
}

/// The users that can interfere with `i`: `N_i^p = {m ≠ i : d_mi ≤ δ}`.
/// The boundary `d_mi = δ` counts as interfering.
pub fn interference_neighbors(sc: &SpectrumScenario, i: usize) -> Vec<usize> {
    (0..sc.n_users())
        .filter(|&m| m != i && sc.distance(m, i) <= sc.delta)
        .collect()
}

/// Total interference experienced by user `i` under the complete profile `A`.
///
/// For singleton channel sets this is exactly
/// `Σ_{m ∈ N_i^p} P_m d_mi^{−λ} 1{a_i = a_m} + ω_{a_i}^i`; multi-channel
/// sets (which union composition produces) extend it additively per channel.
pub fn interference(sc: &SpectrumScenario, i: usize, a: &ActionProfile) -> Result<f64> {
    if !a.is_complete(sc.n_users()) {
        return Err(Error::IncompleteProfile {
            expected: sc.n_users(),
            found: a.len(),
        });
    }
    for e in a.entries() {
        if e.acts.is_empty() {
            return Err(Error::EmptyChannelSet { user: e.user });
        }
    }
    Ok(interference_partial(sc, i, a))
}

/// Interference of user `i` restricted to the users present in `a`; total
/// over arbitrary profiles so the oracles can evaluate subsequences.
fn interference_partial(sc: &SpectrumScenario, i: usize, a: &ActionProfile) -> f64 {
    let Some(own) = a.get(i) else { return 0.0 };
    let mut total = 0.0;
    for c in own {
        total += sc.noise[i].get(&c.0).copied().unwrap_or(0.0);
        for m in interference_neighbors(sc, i) {
            if let Some(other) = a.get(m) {
                if other.contains(c) {
                    total += sc.powers[m] * sc.distance(m, i).powf(-sc.lambda);
                }
            }
        }
    }
    total
}

/// The p-scaling constant `p = min_j {1 + Σ_{i: j ∈ N_i^s} w_ij}`.
pub fn p_scale(sc: &SpectrumScenario) -> Result<f64> {
    let ties = sc.ties.as_ref().ok_or(Error::MissingSocialGraph)?;
    Ok((0..sc.n_users())
        .map(|j| 1.0 + ties.incoming_weight(j))
        .fold(f64::INFINITY, f64::min))
}

struct SpectrumOracle {
    scenario: SpectrumScenario,
    gamma_scale: f64,
}

impl UtilityOracle for SpectrumOracle {
    fn social(&self, profile: &ActionProfile) -> f64 {
        let mut total = 0.0;
        for e in profile.entries() {
            total -= interference_partial(&self.scenario, e.user, profile);
        }
        self.gamma_scale * total
    }

    fn private(&self, user: usize, profile: &ActionProfile) -> f64 {
        if profile.contains_user(user) {
            -interference_partial(&self.scenario, user, profile)
        } else {
            0.0
        }
    }
}

/// Builds the game for a scenario under the requested flavor. Feasible
/// actions are the singleton channel sets of each user's vacant list,
/// ascending by channel id.
pub fn spectrum_game(sc: &SpectrumScenario, flavor: SpectrumFlavor) -> Result<Game> {
    sc.validate()?;
    let gamma_scale = match flavor {
        SpectrumFlavor::Private | SpectrumFlavor::Grouped => 1.0,
        SpectrumFlavor::SocialAware => p_scale(sc)?,
    };
    if flavor == SpectrumFlavor::Grouped && sc.partition.is_none() {
        return Err(Error::MissingGrouping);
    }
    let mut spaces = Vec::with_capacity(sc.n_users());
    for (i, m) in sc.vacant.iter().enumerate() {
        let mut channels: Vec<u32> = m.clone();
        channels.sort_unstable();
        channels.dedup();
        let feasible: Vec<ActSet> = channels.into_iter().map(|c| acts([c])).collect();
        spaces.push(ActionSpace::new(i, feasible)?);
    }
    let oracle = SpectrumOracle {
        scenario: sc.clone(),
        gamma_scale,
    };
    let mut builder = GameBuilder::new(spaces, Arc::new(oracle));
    if let Some(t) = &sc.ties {
        builder = builder.social_graph(t.clone());
    }
    if let Some(g) = &sc.partition {
        builder = builder.grouping(g.clone());
    }
    builder.build()
}

/// Outcome of evaluating the sufficient condition for assumption 3 on one
/// `(profile, user)` pair: `slack = lhs − rhs ≥ 0` means it holds there.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub slack: f64,
}

/// Evaluates the social-aware validity condition for user `i` under the
/// complete singleton-channel profile `a`:
///
/// `Σ_{n∈N_i^s} w_in α_n(A) ≥ (min_j Σ_{m∈N_j^s} w_jm) α_i(A)
///  − p Σ_{m∈N_i^p} P d_mi^{−λ} 1{a_i = a_m}`.
///
/// Requires symmetric ties and equal powers, which is the regime the scaled
/// social system is analyzed in.
pub fn social_aware_condition(
    sc: &SpectrumScenario,
    a: &ActionProfile,
    i: usize,
) -> Result<ConditionReport> {
    let ties = sc.ties.as_ref().ok_or(Error::MissingSocialGraph)?;
    if let Some((x, y)) = ties.asymmetry() {
        return Err(Error::AsymmetricTies(x, y));
    }
    let p0 = sc.powers[0];
    if sc.powers.iter().any(|&p| p != p0) {
        return Err(Error::UnequalPowers);
    }
    if !a.is_complete(sc.n_users()) {
        return Err(Error::IncompleteProfile {
            expected: sc.n_users(),
            found: a.len(),
        });
    }

    let alpha = |u: usize| -> Result<f64> { Ok(-interference(sc, u, a)?) };
    let mut lhs = 0.0;
    for &(n, w) in ties.ties(i) {
        lhs += w * alpha(n)?;
    }
    let min_weight_sum = (0..sc.n_users())
        .map(|j| ties.ties(j).iter().map(|&(_, w)| w).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    let p = 1.0 + min_weight_sum;
    let own = a.get(i).expect("complete profile");
    let mut shared = 0.0;
    for m in interference_neighbors(sc, i) {
        let other = a.get(m).expect("complete profile");
        if own.iter().any(|c| other.contains(c)) {
            shared += p0 * sc.distance(m, i).powf(-sc.lambda);
        }
    }
    let rhs = min_weight_sum * alpha(i)? - p * shared;
    let slack = lhs - rhs;
    Ok(ConditionReport {
        holds: slack >= 0.0,
        slack,
    })
}

/// Tunable ranges for the seeded generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    /// Side of the square the users are dropped into.
    pub area_side: f64,
    /// Range for the interference radius δ.
    pub delta: (f64, f64),
    /// Range for the path-loss exponent λ.
    pub lambda: (f64, f64),
    /// Range for the transmission powers.
    pub power: (f64, f64),
    /// Draw a single shared power instead of one per user.
    pub equal_powers: bool,
    /// Range for the per-channel noise.
    pub noise: (f64, f64),
    /// Make every channel vacant for every user (identical action spaces).
    pub full_vacant: bool,
    /// Probability a non-guaranteed channel is vacant when `full_vacant` is
    /// off; one channel per user is always kept.
    pub vacant_prob: f64,
    /// Probability of a social tie between each unordered pair.
    pub tie_prob: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            area_side: 10.0,
            delta: (3.0, 7.0),
            lambda: (2.0, 4.0),
            power: (0.5, 2.0),
            equal_powers: true,
            noise: (0.01, 0.25),
            full_vacant: true,
            vacant_prob: 0.6,
            tie_prob: 0.5,
        }
    }
}

/// Deterministically generates a scenario from a seed. Identical inputs give
/// bit-identical scenarios. Channels are numbered `1..=n_channels`; ties are
/// symmetric; no partition is attached (attach one with
/// [`SpectrumScenario::partition`] or [`Game::with_grouping`]).
pub fn generate_scenario(
    seed: u64,
    n_users: usize,
    n_channels: usize,
    params: &GenParams,
) -> Result<SpectrumScenario> {
    if n_users == 0 {
        return Err(Error::InvalidParams("n_users must be ≥ 1".into()));
    }
    if n_channels == 0 {
        return Err(Error::InvalidParams("n_channels must be ≥ 1".into()));
    }
    if params.area_side <= 0.0 || params.delta.0 <= 0.0 || params.lambda.0 <= 0.0 {
        return Err(Error::InvalidParams("geometry ranges must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Positions, re-drawn until every pairwise distance clears a floor so
    // d^{-λ} stays finite-ish.
    let min_distance = params.area_side * 5e-3;
    let positions = loop {
        let pts: Vec<(f64, f64)> = (0..n_users)
            .map(|_| {
                (
                    rng.random_range(0.0..params.area_side),
                    rng.random_range(0.0..params.area_side),
                )
            })
            .collect();
        let ok = (0..n_users).all(|m| {
            (m + 1..n_users).all(|i| {
                let dx = pts[m].0 - pts[i].0;
                let dy = pts[m].1 - pts[i].1;
                (dx * dx + dy * dy).sqrt() > min_distance
            })
        });
        if ok {
            break pts;
        }
    };

    let delta = rng.random_range(params.delta.0..=params.delta.1);
    let lambda = rng.random_range(params.lambda.0..=params.lambda.1);
    let powers = if params.equal_powers {
        vec![rng.random_range(params.power.0..=params.power.1); n_users]
    } else {
        (0..n_users)
            .map(|_| rng.random_range(params.power.0..=params.power.1))
            .collect()
    };

    let all_channels: Vec<u32> = (1..=n_channels as u32).collect();
    let vacant: Vec<Vec<u32>> = (0..n_users)
        .map(|_| {
            if params.full_vacant {
                all_channels.clone()
            } else {
                let keep = rng.random_range(0..n_channels);
                let mut m: Vec<u32> = all_channels
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k == keep || rng.random_range(0.0..1.0) < params.vacant_prob)
                    .map(|(_, &c)| c)
                    .collect();
                m.sort_unstable();
                m
            }
        })
        .collect();

    let noise: Vec<BTreeMap<u32, f64>> = vacant
        .iter()
        .map(|m| {
            m.iter()
                .map(|&c| (c, rng.random_range(params.noise.0..=params.noise.1)))
                .collect()
        })
        .collect();

    let mut edges = Vec::new();
    for i in 0..n_users {
        for j in (i + 1)..n_users {
            if rng.random_range(0.0..1.0) < params.tie_prob {
                let w = rng.random_range(0.0..=1.0);
                edges.push((i, j, w));
                edges.push((j, i, w));
            }
        }
    }
    let ties = Some(SocialGraph::new(n_users, &edges)?);

    let sc = SpectrumScenario {
        positions,
        distance_matrix: None,
        delta,
        lambda,
        powers,
        vacant,
        noise,
        ties,
        partition: None,
    };
    sc.validate()?;
    Ok(sc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Action;
    use crate::structure::{check_nondecreasing, check_submodular, check_validity_private};
    use crate::DEFAULT_TOL;

    /// Hand-built scenario: users on a line, exactly representable noise.
    fn line_scenario(spacing: f64, delta: f64, n: usize) -> SpectrumScenario {
        let positions = (0..n).map(|i| (i as f64 * spacing, 0.0)).collect();
        let vacant: Vec<Vec<u32>> = (0..n).map(|_| vec![1, 2]).collect();
        let noise = (0..n)
            .map(|i| {
                [(1, 0.125 * (i + 1) as f64), (2, 0.0625)]
                    .into_iter()
                    .collect()
            })
            .collect();
        SpectrumScenario {
            positions,
            distance_matrix: None,
            delta,
            lambda: 2.0,
            powers: vec![1.0; n],
            vacant,
            noise,
            ties: None,
            partition: None,
        }
    }

    fn all_same_channel(n: usize, c: u32) -> ActionProfile {
        ActionProfile::new((0..n).map(|u| Action::new(u, acts([c]))).collect()).unwrap()
    }

    #[test]
    fn neighbors_outside_radius_empty() {
        let sc = line_scenario(10.0, 5.0, 2);
        assert!(interference_neighbors(&sc, 0).is_empty());
        assert!(interference_neighbors(&sc, 1).is_empty());
    }

    #[test]
    fn neighbors_boundary_inclusive() {
        let sc = line_scenario(5.0, 5.0, 2);
        assert_eq!(interference_neighbors(&sc, 0), vec![1]);
        assert_eq!(interference_neighbors(&sc, 1), vec![0]);
    }

    #[test]
    fn neighbors_on_a_line() {
        // Spacing 0.6δ: the middle user reaches both ends, the ends only the
        // middle.
        let sc = line_scenario(3.0, 5.0, 3);
        assert_eq!(interference_neighbors(&sc, 0), vec![1]);
        assert_eq!(interference_neighbors(&sc, 1), vec![0, 2]);
        assert_eq!(interference_neighbors(&sc, 2), vec![1]);
    }

    #[test]
    fn interference_noise_only_when_isolated() {
        let sc = line_scenario(20.0, 5.0, 2);
        let a = all_same_channel(2, 1);
        assert_eq!(interference(&sc, 0, &a).unwrap(), 0.125);
        assert_eq!(interference(&sc, 1, &a).unwrap(), 0.25);
    }

    #[test]
    fn interference_single_term_formula() {
        // Two users at distance δ/2, shared channel, unit power, λ = 2, no
        // noise: I = (δ/2)^{−2}.
        let mut sc = line_scenario(2.5, 5.0, 2);
        for m in &mut sc.noise {
            for v in m.values_mut() {
                *v = 0.0;
            }
        }
        let a = all_same_channel(2, 1);
        let expected = (2.5f64).powf(-2.0);
        assert!((interference(&sc, 0, &a).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn interference_line_31_profile_noise_only() {
        // Ends are out of range of each other; profile (1, 2, 1) leaves every
        // user with its own noise only.
        let sc = line_scenario(3.0, 5.0, 3);
        let a = ActionProfile::new(vec![
            Action::new(0, acts([1])),
            Action::new(1, acts([2])),
            Action::new(2, acts([1])),
        ])
        .unwrap();
        // d(0,2) = 6 > δ = 5, so the shared channel does not couple them.
        assert_eq!(interference(&sc, 0, &a).unwrap(), 0.125);
        assert_eq!(interference(&sc, 1, &a).unwrap(), 0.0625);
        assert_eq!(interference(&sc, 2, &a).unwrap(), 0.375);
    }

    #[test]
    fn interference_rejects_empty_channel_set() {
        let sc = line_scenario(3.0, 5.0, 2);
        let a = ActionProfile::new(vec![
            Action::new(0, ActSet::new()),
            Action::new(1, acts([1])),
        ])
        .unwrap();
        assert!(matches!(
            interference(&sc, 0, &a),
            Err(Error::EmptyChannelSet { user: 0 })
        ));
    }

    #[test]
    fn multichannel_extension_restricts_to_singletons() {
        let sc = line_scenario(2.0, 5.0, 3);
        let game = spectrum_game(&sc, SpectrumFlavor::Private).unwrap();
        // On singleton profiles the oracle's α agrees with the formula.
        for combo in [[0usize, 0, 0], [0, 1, 0], [1, 1, 1], [1, 0, 1]] {
            let a = game.profile_from_indices(&combo);
            for i in 0..3 {
                assert_eq!(game.alpha(i, &a), -interference(&sc, i, &a).unwrap());
            }
        }
    }

    #[test]
    fn interference_symmetric_under_equal_powers() {
        let sc = line_scenario(2.0, 5.0, 2);
        let a = all_same_channel(2, 1);
        let contribution = |to: usize| {
            let mut sc0 = sc.clone();
            for m in &mut sc0.noise {
                for v in m.values_mut() {
                    *v = 0.0;
                }
            }
            interference(&sc0, to, &a).unwrap()
        };
        assert_eq!(contribution(0), contribution(1));
    }

    #[test]
    fn private_flavor_is_valid_and_submodular_but_not_nondecreasing() {
        let sc = line_scenario(2.0, 5.0, 3);
        let game = spectrum_game(&sc, SpectrumFlavor::Private).unwrap();
        assert!(check_validity_private(&game, DEFAULT_TOL).unwrap().holds);
        assert!(check_submodular(&game, DEFAULT_TOL).unwrap().holds);
        let mono = check_nondecreasing(&game, DEFAULT_TOL).unwrap();
        assert!(!mono.holds);
        // The least witness is Y = ∅ under an X with positive noise.
        let w = mono.witness.unwrap();
        assert!(w.y.unwrap().is_empty());
    }

    #[test]
    fn social_flavor_p_reduces_without_ties() {
        let mut sc = line_scenario(2.0, 5.0, 2);
        sc.ties = Some(SocialGraph::new(2, &[]).unwrap());
        assert_eq!(p_scale(&sc).unwrap(), 1.0);
        let social = spectrum_game(&sc, SpectrumFlavor::SocialAware).unwrap();
        let private = spectrum_game(&sc, SpectrumFlavor::Private).unwrap();
        let a = social.profile_from_indices(&[0, 1]);
        assert_eq!(social.gamma(&a), private.gamma(&a));
    }

    #[test]
    fn grouped_flavor_requires_partition() {
        let sc = line_scenario(2.0, 5.0, 2);
        assert!(matches!(
            spectrum_game(&sc, SpectrumFlavor::Grouped),
            Err(Error::MissingGrouping)
        ));
    }

    #[test]
    fn condition_zero_ties_always_holds() {
        let mut sc = line_scenario(2.0, 5.0, 2);
        sc.ties = Some(SocialGraph::new(2, &[]).unwrap());
        let a = all_same_channel(2, 1);
        for i in 0..2 {
            let rep = social_aware_condition(&sc, &a, i).unwrap();
            assert!(rep.holds, "slack {}", rep.slack);
        }
    }

    #[test]
    fn condition_full_tie_two_users() {
        let mut sc = line_scenario(2.0, 5.0, 2);
        sc.ties = Some(SocialGraph::new(2, &[(0, 1, 1.0), (1, 0, 1.0)]).unwrap());
        let a = all_same_channel(2, 1);
        // With w = 1 both sides are hand-computable:
        // lhs = α_1(A); rhs = 1·α_0(A) − 2·P d^{−λ}.
        let alpha = |u: usize| -interference(&sc, u, &a).unwrap();
        let rep = social_aware_condition(&sc, &a, 0).unwrap();
        let want = alpha(1) - (alpha(0) - 2.0 * (2.0f64).powf(-2.0));
        assert!((rep.slack - want).abs() < 1e-12);
    }

    #[test]
    fn condition_requires_symmetry_and_equal_powers() {
        let mut sc = line_scenario(2.0, 5.0, 2);
        sc.ties = Some(SocialGraph::new(2, &[(0, 1, 0.5)]).unwrap());
        let a = all_same_channel(2, 1);
        assert!(matches!(
            social_aware_condition(&sc, &a, 0),
            Err(Error::AsymmetricTies(0, 1))
        ));
        sc.ties = Some(SocialGraph::new(2, &[(0, 1, 0.5), (1, 0, 0.5)]).unwrap());
        sc.powers = vec![1.0, 2.0];
        assert!(matches!(
            social_aware_condition(&sc, &a, 0),
            Err(Error::UnequalPowers)
        ));
    }

    #[test]
    fn generator_is_deterministic() {
        let params = GenParams::default();
        let a = generate_scenario(77, 4, 3, &params).unwrap();
        let b = generate_scenario(77, 4, 3, &params).unwrap();
        assert_eq!(a, b);
        let c = generate_scenario(78, 4, 3, &params).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generator_single_channel() {
        let sc = generate_scenario(1, 3, 1, &GenParams::default()).unwrap();
        assert!(sc.vacant.iter().all(|m| m == &vec![1]));
        let game = spectrum_game(&sc, SpectrumFlavor::Private).unwrap();
        assert_eq!(game.space(0).len(), 1);
    }

    #[test]
    fn generator_rejects_bad_params() {
        assert!(generate_scenario(0, 0, 3, &GenParams::default()).is_err());
        assert!(generate_scenario(0, 3, 0, &GenParams::default()).is_err());
    }

    #[test]
    fn social_group_utility_combines_spectrum_alphas() {
        let mut sc = line_scenario(2.0, 5.0, 3);
        sc.ties = Some(
            SocialGraph::new(3, &[(0, 1, 0.5), (1, 0, 0.5), (0, 2, 0.25), (2, 0, 0.25)]).unwrap(),
        );
        let game = spectrum_game(&sc, SpectrumFlavor::SocialAware).unwrap();
        let a = all_same_channel(3, 1);
        let alpha = |u: usize| -interference(&sc, u, &a).unwrap();
        let eta0 = game.social_group_utility(0, &a).unwrap();
        assert!((eta0 - (alpha(0) + 0.5 * alpha(1) + 0.25 * alpha(2))).abs() < 1e-12);
    }

    #[test]
    fn asymmetric_noise_breaks_social_validity_with_witness() {
        // Two isolated users, full ties: the quiet user's group utility is
        // dragged below its drop loss by its noisy neighbor.
        let noise0: BTreeMap<u32, f64> = [(1, 1.0)].into();
        let noise1: BTreeMap<u32, f64> = [(1, 0.01)].into();
        let sc = SpectrumScenario {
            positions: vec![(0.0, 0.0), (100.0, 0.0)],
            distance_matrix: None,
            delta: 5.0,
            lambda: 2.0,
            powers: vec![1.0, 1.0],
            vacant: vec![vec![1], vec![1]],
            noise: vec![noise0, noise1],
            ties: Some(SocialGraph::new(2, &[(0, 1, 1.0), (1, 0, 1.0)]).unwrap()),
            partition: None,
        };
        let a = all_same_channel(2, 1);
        let rep = social_aware_condition(&sc, &a, 1).unwrap();
        assert!(!rep.holds, "slack {}", rep.slack);
        let game = spectrum_game(&sc, SpectrumFlavor::SocialAware).unwrap();
        let out = crate::structure::check_validity_social(&game, crate::DEFAULT_TOL).unwrap();
        assert!(!out.holds);
        let w = out.witness.unwrap();
        assert_eq!(w.kind, crate::structure::WitnessKind::Assumption3);
        assert_eq!(w.index, Some(1));
        let (lhs, rhs) = w.recheck(&game).unwrap();
        assert!(lhs < rhs - crate::DEFAULT_TOL);
    }

    #[test]
    fn distance_matrix_overrides_positions() {
        let mut sc = line_scenario(100.0, 5.0, 2);
        // Positions say the users are isolated; the matrix pulls them inside
        // the interference radius.
        sc.distance_matrix = Some(vec![vec![0.0, 2.0], vec![2.0, 0.0]]);
        assert_eq!(interference_neighbors(&sc, 0), vec![1]);
        let a = all_same_channel(2, 1);
        let expected = 0.125 + (2.0f64).powf(-2.0);
        assert!((interference(&sc, 0, &a).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn shared_channel_within_radius_has_positive_regret() {
        use crate::equilibria::is_nash;
        use crate::game::StrategyProfile;
        // Equal noise on both channels: sitting together is never stable.
        let noise: BTreeMap<u32, f64> = [(1, 0.125), (2, 0.125)].into();
        let sc = SpectrumScenario {
            positions: vec![(0.0, 0.0), (1.0, 0.0)],
            distance_matrix: None,
            delta: 5.0,
            lambda: 2.0,
            powers: vec![1.0, 1.0],
            vacant: vec![vec![1, 2], vec![1, 2]],
            noise: vec![noise.clone(), noise],
            ties: None,
            partition: None,
        };
        let game = spectrum_game(&sc, SpectrumFlavor::Private).unwrap();
        let both_on_1 = StrategyProfile::from_pure(&game, &all_same_channel(2, 1)).unwrap();
        let cert = is_nash(&game, &both_on_1, crate::DEFAULT_TOL).unwrap();
        assert!(!cert.valid);
        assert!(cert.max_regret > 0.0);
        // Moving to the empty channel sheds exactly the mutual interference.
        assert!((cert.max_regret - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generated_scenarios_pass_private_validity() {
        // Spot sample here; the acceptance suite runs the full sweep.
        for seed in [0, 1, 2, 3, 4] {
            let sc = generate_scenario(seed, 4, 3, &GenParams::default()).unwrap();
            let game = spectrum_game(&sc, SpectrumFlavor::Private).unwrap();
            assert!(
                check_validity_private(&game, DEFAULT_TOL).unwrap().holds,
                "seed {seed}"
            );
        }
    }
}
