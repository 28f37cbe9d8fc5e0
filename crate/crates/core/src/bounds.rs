//! Brute-force optimum and signed-margin reports for the equilibrium
//! performance guarantees of valid submodular utility systems.
//!
//! Every report is written so the guaranteed-greater side lands in `lhs`;
//! `margin = lhs − rhs ≥ −tol` therefore means the statement held. The
//! `check_*` functions refuse to stamp a margin unless the hypotheses were
//! verified and the profile certifies; the `eval_*` functions compute the raw
//! sides for informational output.

use serde::Serialize;

use crate::curvature::CurvatureValue;
use crate::equilibria::{is_group_nash, is_nash, is_social_aware_nash, EquilibriumCertificate};
use crate::error::{Error, Result};
use crate::expectation::{
    compose_parts, compose_union, expected_marginal_composed, expected_social,
};
use crate::game::{ActionProfile, Game, Grouping, StrategyProfile};
use crate::iter::CartesianIndices;
use crate::structure::{
    check_nondecreasing, check_submodular, check_validity_group, check_validity_private,
    check_validity_social,
};

/// Which guarantee a report instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Statement {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
    Thm6Star,
    Lem1,
    Lem2,
}

impl std::fmt::Display for Statement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Statement::Thm1 => "thm1",
            Statement::Thm2 => "thm2",
            Statement::Thm3 => "thm3",
            Statement::Thm4 => "thm4",
            Statement::Thm5 => "thm5",
            Statement::Thm6 => "thm6",
            Statement::Thm6Star => "thm6star",
            Statement::Lem1 => "lem1",
            Statement::Lem2 => "lem2",
        };
        write!(f, "{name}")
    }
}

/// Verdicts of the structural checks, recorded so reports can be gated.
/// `None` means a check was not run (or not applicable).
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Hypotheses {
    pub nondecreasing: Option<bool>,
    pub submodular: Option<bool>,
    pub valid_private: Option<bool>,
    pub valid_social: Option<bool>,
    pub valid_group: Option<bool>,
}

impl Hypotheses {
    /// Runs every applicable structural check on the game.
    pub fn verify(game: &Game, tol: f64) -> Result<Self> {
        let nondecreasing = Some(check_nondecreasing(game, tol)?.holds);
        let submodular = Some(check_submodular(game, tol)?.holds);
        let valid_private = Some(check_validity_private(game, tol)?.holds);
        let valid_social = match game.social_graph() {
            Some(_) => Some(check_validity_social(game, tol)?.holds),
            None => None,
        };
        let valid_group = match game.grouping() {
            Some(_) => Some(check_validity_group(game, tol)?.holds),
            None => None,
        };
        Ok(Hypotheses {
            nondecreasing,
            submodular,
            valid_private,
            valid_social,
            valid_group,
        })
    }

    fn require(&self, statement: Statement, wanted: &[(&str, Option<bool>)]) -> Result<()> {
        for (name, flag) in wanted {
            match flag {
                Some(true) => {}
                Some(false) => {
                    return Err(Error::HypothesisUnverified {
                        statement: statement.to_string(),
                        missing: format!("{name} is false on this instance"),
                    })
                }
                None => {
                    return Err(Error::HypothesisUnverified {
                        statement: statement.to_string(),
                        missing: format!("{name} was not verified"),
                    })
                }
            }
        }
        Ok(())
    }
}

fn require_certificate(statement: Statement, cert: &EquilibriumCertificate) -> Result<()> {
    if !cert.valid {
        return Err(Error::HypothesisUnverified {
            statement: statement.to_string(),
            missing: format!(
                "profile is not a certified {} equilibrium (max regret {:.3e})",
                cert.kind, cert.max_regret
            ),
        });
    }
    Ok(())
}

/// The inputs a report was computed from.
#[derive(Debug, Clone, Serialize)]
pub struct BoundInputs {
    pub omega: Option<ActionProfile>,
    pub opt: Option<f64>,
    pub strategy: StrategyProfile,
    pub curvature: Option<f64>,
    pub per_group_curvature: Option<Vec<f64>>,
    pub group_sizes: Option<Vec<usize>>,
}

/// One evaluated guarantee: `margin = lhs − rhs`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub statement: Statement,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// True iff the hypotheses and certificate were verified before stamping.
    pub verified: bool,
    pub inputs: BoundInputs,
}

impl BoundReport {
    fn new(statement: Statement, lhs: f64, rhs: f64, verified: bool, inputs: BoundInputs) -> Self {
        BoundReport {
            statement,
            lhs,
            rhs,
            margin: lhs - rhs,
            verified,
            inputs,
        }
    }
}

/// The lexicographically least (by action indices) pure complete profile
/// maximizing `γ`, and its value.
pub fn brute_force_opt(game: &Game) -> Result<(ActionProfile, f64)> {
    let radices = game.spaces().iter().map(|s| s.len()).collect::<Vec<_>>();
    let total = CartesianIndices::count_total(&radices);
    if total > game.enumeration_cap() as u128 {
        return Err(Error::ResourceLimit {
            required: total,
            cap: game.enumeration_cap(),
        });
    }
    let mut best: Option<(f64, ActionProfile)> = None;
    for combo in CartesianIndices::new(radices) {
        let profile = game.profile_from_indices(&combo);
        let value = game.gamma(&profile);
        if best.as_ref().map(|(v, _)| value > *v).unwrap_or(true) {
            best = Some((value, profile));
        }
    }
    let (value, profile) = best.expect("at least one profile");
    Ok((profile, value))
}

/// Strategy profile holding just `s`'s entry for `user`.
fn single_strategy(s: &StrategyProfile, user: usize) -> Result<StrategyProfile> {
    let entry = s.get(user).ok_or(Error::IncompleteProfile {
        expected: user + 1,
        found: s.len(),
    })?;
    StrategyProfile::new(vec![entry.clone()])
}

/// Both sides of the ½-bound for per-user deviators: `γ̄(S)` vs
/// `½ (γ̄(Ω) + Σ_i γ̄_{s_i}(S_{-i} ∪ Ω))`. Each sum term is the expected
/// marginal of user `i`'s strategy on top of everyone else composed
/// (`σ_j ∪ x_j`), with user `i` absent from the context — the same
/// decider-dropped contexts the curvature maximizes over, which is what
/// keeps the bound exact on instances whose `γ` is negative.
pub fn eval_half_bound_users(
    game: &Game,
    s: &StrategyProfile,
    omega: &ActionProfile,
) -> Result<(f64, f64)> {
    let lhs = expected_social(game, s)?;
    let mut sum = 0.0;
    for i in 0..game.n_users() {
        let composed = compose_parts(game, omega.without_user(i), &s.without_user(i))?;
        sum += expected_marginal_composed(game, &single_strategy(s, i)?, &composed)?;
    }
    let rhs = 0.5 * (game.gamma(omega) + sum);
    Ok((lhs, rhs))
}

/// Both sides of the ½-bound for block deviators: `γ̄(S)` vs
/// `½ (γ̄(Ω) + Σ_i γ̄_{s^i}(Ω ∪ S^{-i}))`, block analogue of
/// [`eval_half_bound_users`] (the whole block is absent from its context).
pub fn eval_half_bound_groups(
    game: &Game,
    grouping: &Grouping,
    s: &StrategyProfile,
    omega: &ActionProfile,
) -> Result<(f64, f64)> {
    let lhs = expected_social(game, s)?;
    let mut sum = 0.0;
    for b in 0..grouping.len() {
        let members = grouping.users(b);
        let block = s.restrict(|u| members.contains(&u));
        let keep = |u: usize| !members.contains(&u);
        let composed = compose_parts(game, omega.restrict(keep), &s.restrict(keep))?;
        sum += expected_marginal_composed(game, &block, &composed)?;
    }
    let rhs = 0.5 * (game.gamma(omega) + sum);
    Ok((lhs, rhs))
}

/// Both sides of the curvature bound: `γ̄(S)` vs `γ̄(Ω) / (1 + c)`.
pub fn eval_curvature_bound(
    game: &Game,
    s: &StrategyProfile,
    omega: &ActionProfile,
    c: f64,
) -> Result<(f64, f64)> {
    Ok((expected_social(game, s)?, game.gamma(omega) / (1.0 + c)))
}

/// Both sides of the optimum-decomposition inequality for a pure `S`:
/// `γ̄(S) + Σ_{i: σ^i ≠ s^i} γ̄_{σ^i}(S^{-i}) − Σ_{i: σ^i ≠ s^i} γ̄_{s^i}(S^{(i−1)} ∪ Ω)`
/// vs `γ̄(Ω)`. Block membership in both correction sums reads as "the block
/// plays something other than its optimal actions". The inequality needs `γ`
/// nondecreasing as well as submodular: with partially overlapping blocks the
/// derivation compares marginals of different act sets, which only order
/// correctly when marginals are nonnegative.
pub fn eval_opt_decomposition(
    game: &Game,
    grouping: &Grouping,
    s: &ActionProfile,
    omega: &ActionProfile,
) -> Result<(f64, f64)> {
    if !s.is_complete(game.n_users()) {
        return Err(Error::IncompleteProfile {
            expected: game.n_users(),
            found: s.len(),
        });
    }
    let s_strat = StrategyProfile::from_pure(game, s)?;
    let mut lhs = game.gamma(s);
    for b in 0..grouping.len() {
        let members = grouping.users(b);
        let sigma_block = omega.restrict(|u| members.contains(&u));
        let s_block = s.restrict(|u| members.contains(&u));
        if sigma_block == s_block {
            continue;
        }
        // γ̄_{σ^i}(S^{-i}): append the block's optimal actions to the rest of S.
        let rest = s.restrict(|u| !members.contains(&u));
        lhs += game.marginal(&sigma_block, &rest)?;
        // γ̄_{s^i}(S^{(i−1)} ∪ Ω): the telescoping increment from the
        // composed prefix, block actions merging onto their σ.
        let offset = grouping.offset(b);
        let prefix = s_strat.restrict(|u| u < offset);
        let composed = compose_union(game, omega, &prefix)?;
        let block_strat = s_strat.restrict(|u| members.contains(&u));
        lhs -= expected_marginal_composed(game, &block_strat, &composed)?;
    }
    Ok((lhs, game.gamma(omega)))
}

/// Both sides of the block-sum upper bound:
/// `Σ_i γ̄_{s^i}(∅)` vs `γ̄(S)`.
pub fn eval_block_sum_bound(
    game: &Game,
    grouping: &Grouping,
    s: &StrategyProfile,
) -> Result<(f64, f64)> {
    let gamma_empty = game.gamma(&ActionProfile::empty());
    let mut lhs = 0.0;
    for b in 0..grouping.len() {
        let members = grouping.users(b);
        let block = s.restrict(|u| members.contains(&u));
        lhs += expected_social(game, &block)? - gamma_empty;
    }
    Ok((lhs, expected_social(game, s)?))
}

fn base_inputs(omega: &ActionProfile, opt: f64, s: &StrategyProfile) -> BoundInputs {
    BoundInputs {
        omega: Some(omega.clone()),
        opt: Some(opt),
        strategy: s.clone(),
        curvature: None,
        per_group_curvature: None,
        group_sizes: None,
    }
}

/// Half bound for certified Nash equilibria of valid submodular systems.
pub fn check_thm1(
    game: &Game,
    s: &StrategyProfile,
    omega: &ActionProfile,
    opt: f64,
    hyp: &Hypotheses,
    tol: f64,
) -> Result<BoundReport> {
    hyp.require(
        Statement::Thm1,
        &[
            ("submodularity", hyp.submodular),
            ("private validity", hyp.valid_private),
        ],
    )?;
    require_certificate(Statement::Thm1, &is_nash(game, s, tol)?)?;
    let (lhs, rhs) = eval_half_bound_users(game, s, omega)?;
    Ok(BoundReport::new(
        Statement::Thm1,
        lhs,
        rhs,
        true,
        base_inputs(omega, opt, s),
    ))
}

/// Curvature bound for certified Nash equilibria of valid nondecreasing
/// submodular systems.
pub fn check_thm2(
    game: &Game,
    s: &StrategyProfile,
    omega: &ActionProfile,
    opt: f64,
    c: &CurvatureValue,
    hyp: &Hypotheses,
    tol: f64,
) -> Result<BoundReport> {
    hyp.require(
        Statement::Thm2,
        &[
            ("nondecreasing", hyp.nondecreasing),
            ("submodularity", hyp.submodular),
            ("private validity", hyp.valid_private),
        ],
    )?;
    require_certificate(Statement::Thm2, &is_nash(game, s, tol)?)?;
    let (lhs, rhs) = eval_curvature_bound(game, s, omega, c.value)?;
    let mut inputs = base_inputs(omega, opt, s);
    inputs.curvature = Some(c.value);
    Ok(BoundReport::new(Statement::Thm2, lhs, rhs, true, inputs))
}

/// Half bound for certified social-aware equilibria of valid submodular
/// social systems.
pub fn check_thm3(
    game: &Game,
    s: &StrategyProfile,
    omega: &ActionProfile,
    opt: f64,
    hyp: &Hypotheses,
    tol: f64,
) -> Result<BoundReport> {
    hyp.require(
        Statement::Thm3,
        &[
            ("submodularity", hyp.submodular),
            ("social validity", hyp.valid_social),
        ],
    )?;
    require_certificate(Statement::Thm3, &is_social_aware_nash(game, s, tol)?)?;
    let (lhs, rhs) = eval_half_bound_users(game, s, omega)?;
    Ok(BoundReport::new(
        Statement::Thm3,
        lhs,
        rhs,
        true,
        base_inputs(omega, opt, s),
    ))
}

/// Curvature bound for certified social-aware equilibria.
pub fn check_thm4(
    game: &Game,
    s: &StrategyProfile,
    omega: &ActionProfile,
    opt: f64,
    c: &CurvatureValue,
    hyp: &Hypotheses,
    tol: f64,
) -> Result<BoundReport> {
    hyp.require(
        Statement::Thm4,
        &[
            ("nondecreasing", hyp.nondecreasing),
            ("submodularity", hyp.submodular),
            ("social validity", hyp.valid_social),
        ],
    )?;
    require_certificate(Statement::Thm4, &is_social_aware_nash(game, s, tol)?)?;
    let (lhs, rhs) = eval_curvature_bound(game, s, omega, c.value)?;
    let mut inputs = base_inputs(omega, opt, s);
    inputs.curvature = Some(c.value);
    Ok(BoundReport::new(Statement::Thm4, lhs, rhs, true, inputs))
}

/// Half bound for certified group equilibria of valid submodular group
/// systems.
pub fn check_thm5(
    game: &Game,
    grouping: &Grouping,
    s: &StrategyProfile,
    omega: &ActionProfile,
    opt: f64,
    hyp: &Hypotheses,
    tol: f64,
) -> Result<BoundReport> {
    hyp.require(
        Statement::Thm5,
        &[
            ("submodularity", hyp.submodular),
            ("group validity", hyp.valid_group),
        ],
    )?;
    require_certificate(Statement::Thm5, &is_group_nash(game, grouping, s, tol)?)?;
    let (lhs, rhs) = eval_half_bound_groups(game, grouping, s, omega)?;
    let mut inputs = base_inputs(omega, opt, s);
    inputs.group_sizes = Some(grouping.sizes().to_vec());
    Ok(BoundReport::new(Statement::Thm5, lhs, rhs, true, inputs))
}

/// Group-curvature bound for certified group equilibria; also emits the
/// equal-action-space variant (`1/(1+c_{k*})`, `k*` the smallest block size)
/// when every user has the same action space.
pub fn check_thm6(
    game: &Game,
    grouping: &Grouping,
    s: &StrategyProfile,
    omega: &ActionProfile,
    opt: f64,
    per_group_c: &[f64],
    hyp: &Hypotheses,
    tol: f64,
) -> Result<Vec<BoundReport>> {
    hyp.require(
        Statement::Thm6,
        &[
            ("nondecreasing", hyp.nondecreasing),
            ("submodularity", hyp.submodular),
            ("group validity", hyp.valid_group),
        ],
    )?;
    require_certificate(Statement::Thm6, &is_group_nash(game, grouping, s, tol)?)?;
    if per_group_c.len() != grouping.len() {
        return Err(Error::InvalidParams(format!(
            "{} group curvatures for {} groups",
            per_group_c.len(),
            grouping.len()
        )));
    }
    let c_max = per_group_c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (lhs, rhs) = eval_curvature_bound(game, s, omega, c_max)?;
    let mut inputs = base_inputs(omega, opt, s);
    inputs.per_group_curvature = Some(per_group_c.to_vec());
    inputs.group_sizes = Some(grouping.sizes().to_vec());
    let mut reports = vec![BoundReport::new(Statement::Thm6, lhs, rhs, true, inputs.clone())];
    if game.identical_action_spaces() {
        let k_star = grouping.min_size();
        let c_star = grouping
            .sizes()
            .iter()
            .enumerate()
            .filter(|&(_, &k)| k == k_star)
            .map(|(b, _)| per_group_c[b])
            .fold(f64::NEG_INFINITY, f64::max);
        let (lhs, rhs) = eval_curvature_bound(game, s, omega, c_star)?;
        inputs.curvature = Some(c_star);
        reports.push(BoundReport::new(Statement::Thm6Star, lhs, rhs, true, inputs));
    }
    Ok(reports)
}

/// Optimum decomposition for any pure profile of a nondecreasing submodular
/// system.
pub fn check_lemma1(
    game: &Game,
    grouping: &Grouping,
    s: &ActionProfile,
    omega: &ActionProfile,
    opt: f64,
    hyp: &Hypotheses,
) -> Result<BoundReport> {
    hyp.require(
        Statement::Lem1,
        &[
            ("nondecreasing", hyp.nondecreasing),
            ("submodularity", hyp.submodular),
        ],
    )?;
    let (lhs, rhs) = eval_opt_decomposition(game, grouping, s, omega)?;
    let s_strat = StrategyProfile::from_pure(game, s)?;
    let mut inputs = base_inputs(omega, opt, &s_strat);
    inputs.group_sizes = Some(grouping.sizes().to_vec());
    Ok(BoundReport::new(Statement::Lem1, lhs, rhs, true, inputs))
}

/// Block-sum upper bound for any strategy profile of a submodular system.
pub fn check_lemma2(
    game: &Game,
    grouping: &Grouping,
    s: &StrategyProfile,
    hyp: &Hypotheses,
) -> Result<BoundReport> {
    hyp.require(Statement::Lem2, &[("submodularity", hyp.submodular)])?;
    let (lhs, rhs) = eval_block_sum_bound(game, grouping, s)?;
    let inputs = BoundInputs {
        omega: None,
        opt: None,
        strategy: s.clone(),
        curvature: None,
        per_group_curvature: None,
        group_sizes: Some(grouping.sizes().to_vec()),
    };
    Ok(BoundReport::new(Statement::Lem2, lhs, rhs, true, inputs))
}
