//! Total curvature `c` and per-group curvature `c_{k_i}` of the social
//! utility, maximized over pure complete profiles.
//!
//! Marginals are affine in every user's mixing weights, so the extremes of
//! the curvature ratio occur at vertices of the strategy polytope; maximizing
//! over pure profiles only is therefore exact.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{ActionProfile, Game, Grouping};
use crate::iter::CartesianIndices;

/// Denominators within this bound of zero are treated as zero and skipped,
/// per the side condition of the curvature maximum.
pub const DENOMINATOR_GUARD: f64 = 1e-12;

/// One curvature value together with the profile attaining it.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureValue {
    pub value: f64,
    /// `(decider, S)`: the maximizing user (or group) and pure profile; absent
    /// when no admissible pair exists, in which case `value` is 0.
    pub argmax: Option<(usize, ActionProfile)>,
}

/// Curvatures of one game under one grouping.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureReport {
    pub total: CurvatureValue,
    pub per_group: Vec<CurvatureValue>,
}

fn require_complete(game: &Game, omega: &ActionProfile) -> Result<()> {
    if !omega.is_complete(game.n_users()) {
        return Err(Error::IncompleteOmega);
    }
    Ok(())
}

fn check_profile_cap(game: &Game) -> Result<()> {
    let total = CartesianIndices::count_total(&game.spaces().iter().map(|s| s.len()).collect::<Vec<_>>());
    if total > game.enumeration_cap() as u128 {
        return Err(Error::ResourceLimit {
            required: total,
            cap: game.enumeration_cap(),
        });
    }
    Ok(())
}

/// The curvature ratio at one `(i, S)`: one minus the marginal of user `i`'s
/// action on top of everyone else's composed play `σ_j ∪ x_j`, relative to
/// the same marginal on the empty profile. `None` when the empty-profile
/// marginal vanishes. Errors when that denominator is negative beyond `tol`.
///
/// The decider is absent from the context (its own `σ_i` does not shelter
/// the ratio); a modular `γ` therefore measures 0, and full overlap 1.
pub fn curvature_at(
    game: &Game,
    omega: &ActionProfile,
    user: usize,
    s: &ActionProfile,
    tol: f64,
) -> Result<Option<f64>> {
    require_complete(game, omega)?;
    if !s.is_complete(game.n_users()) {
        return Err(Error::IncompleteProfile {
            expected: game.n_users(),
            found: s.len(),
        });
    }
    let gamma_empty = game.gamma(&ActionProfile::empty());
    let own = ActionProfile::new(vec![crate::game::Action::new(
        user,
        s.get(user).expect("complete").clone(),
    )])
    .expect("single entry");
    let denom = game.gamma(&own) - gamma_empty;
    if denom.abs() <= DENOMINATOR_GUARD {
        return Ok(None);
    }
    if denom < -tol {
        return Err(Error::NondecreasingViolated {
            index: user,
            value: denom,
        });
    }
    let context = omega.without_user(user).union_merge(&s.without_user(user));
    let numer = game.marginal(&own, &context)?;
    Ok(Some(1.0 - numer / denom))
}

/// The group-curvature ratio at one `(block, S)`: the block analogue of
/// [`curvature_at`], with the whole block absent from the context and its
/// joint actions appended at once.
pub fn group_curvature_at(
    game: &Game,
    grouping: &Grouping,
    block: usize,
    omega: &ActionProfile,
    s: &ActionProfile,
    tol: f64,
) -> Result<Option<f64>> {
    require_complete(game, omega)?;
    if !s.is_complete(game.n_users()) {
        return Err(Error::IncompleteProfile {
            expected: game.n_users(),
            found: s.len(),
        });
    }
    let gamma_empty = game.gamma(&ActionProfile::empty());
    let members = grouping.users(block);
    let block_alone = s.restrict(|u| members.contains(&u));
    let denom = game.gamma(&block_alone) - gamma_empty;
    if denom.abs() <= DENOMINATOR_GUARD {
        return Ok(None);
    }
    if denom < -tol {
        return Err(Error::NondecreasingViolated {
            index: block,
            value: denom,
        });
    }
    let keep = |u: usize| !members.contains(&u);
    let context = omega.restrict(keep).union_merge(&s.restrict(keep));
    let numer = game.marginal(&block_alone, &context)?;
    Ok(Some(1.0 - numer / denom))
}

fn maximize<F>(game: &Game, deciders: usize, ratio: F) -> Result<CurvatureValue>
where
    F: Fn(usize, &ActionProfile) -> Result<Option<f64>>,
{
    check_profile_cap(game)?;
    let mut best: Option<(f64, usize, Vec<usize>, ActionProfile)> = None;
    for combo in CartesianIndices::new(game.spaces().iter().map(|s| s.len()).collect()) {
        let s = game.profile_from_indices(&combo);
        for d in 0..deciders {
            let Some(value) = ratio(d, &s)? else { continue };
            let better = match &best {
                None => true,
                Some((bv, bd, bc, _)) => {
                    value > *bv || (value == *bv && (d, &combo) < (*bd, bc))
                }
            };
            if better {
                best = Some((value, d, combo.clone(), s.clone()));
            }
        }
    }
    Ok(match best {
        Some((value, d, _, s)) => CurvatureValue {
            value,
            argmax: Some((d, s)),
        },
        None => CurvatureValue {
            value: 0.0,
            argmax: None,
        },
    })
}

/// Total curvature: the maximum of the curvature ratio over users `i` and
/// pure complete profiles `S` with `γ_{s_i}(∅) ≠ 0`. Returns 0 with no argmax
/// when no admissible pair exists.
pub fn total_curvature(game: &Game, omega: &ActionProfile, tol: f64) -> Result<CurvatureValue> {
    require_complete(game, omega)?;
    maximize(game, game.n_users(), |i, s| {
        curvature_at(game, omega, i, s, tol)
    })
}

/// Group curvature `c_{k_block}` for one block of the grouping.
pub fn group_curvature(
    game: &Game,
    grouping: &Grouping,
    block: usize,
    omega: &ActionProfile,
    tol: f64,
) -> Result<CurvatureValue> {
    require_complete(game, omega)?;
    maximize(game, 1, |_, s| {
        group_curvature_at(game, grouping, block, omega, s, tol)
    })
    .map(|mut v| {
        if let Some((d, _)) = &mut v.argmax {
            *d = block;
        }
        v
    })
}

/// Total plus per-group curvatures in one report.
pub fn curvature_report(
    game: &Game,
    grouping: Option<&Grouping>,
    omega: &ActionProfile,
    tol: f64,
) -> Result<CurvatureReport> {
    let total = total_curvature(game, omega, tol)?;
    let per_group = match grouping {
        Some(g) => (0..g.len())
            .map(|b| group_curvature(game, g, b, omega, tol))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    Ok(CurvatureReport { total, per_group })
}

/// A violated curvature ordering.
#[derive(Debug, Clone, Serialize)]
pub struct OrderingViolation {
    /// `(larger-or-equal block, comparison target)`; the target is `None` when
    /// a group curvature exceeds the total curvature.
    pub pair: (usize, Option<usize>),
    pub lhs: f64,
    pub rhs: f64,
}

/// Verdict for the curvature-ordering relations.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureOrdering {
    pub holds: bool,
    pub total: f64,
    pub per_group: Vec<f64>,
    pub violation: Option<OrderingViolation>,
}

/// Asserts `c_{k_i} ≤ c + tol` for every group; when all action spaces are
/// identical additionally asserts `c_{k_i} ≤ c_{k_j} + tol` whenever
/// `k_i ≥ k_j`.
pub fn verify_curvature_ordering(
    game: &Game,
    grouping: &Grouping,
    omega: &ActionProfile,
    tol: f64,
) -> Result<CurvatureOrdering> {
    let report = curvature_report(game, Some(grouping), omega, tol)?;
    let total = report.total.value;
    let per_group: Vec<f64> = report.per_group.iter().map(|v| v.value).collect();

    for (b, &c_b) in per_group.iter().enumerate() {
        if c_b > total + tol {
            return Ok(CurvatureOrdering {
                holds: false,
                total,
                per_group,
                violation: Some(OrderingViolation {
                    pair: (b, None),
                    lhs: c_b,
                    rhs: total,
                }),
            });
        }
    }
    if game.identical_action_spaces() {
        for i in 0..grouping.len() {
            for j in 0..grouping.len() {
                if grouping.size(i) >= grouping.size(j) && per_group[i] > per_group[j] + tol {
                    return Ok(CurvatureOrdering {
                        holds: false,
                        total,
                        per_group: per_group.clone(),
                        violation: Some(OrderingViolation {
                            pair: (i, Some(j)),
                            lhs: per_group[i],
                            rhs: per_group[j],
                        }),
                    });
                }
            }
        }
    }
    Ok(CurvatureOrdering {
        holds: true,
        total,
        per_group,
        violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::brute_force_opt;
    use crate::game::{acts, ActSet, ActionSpace, FnOracle, GameBuilder};
    use crate::DEFAULT_TOL;
    use std::sync::Arc;

    fn coverage_oracle() -> impl Fn(&ActionProfile) -> f64 + Clone + Send + Sync {
        |x: &ActionProfile| {
            let mut union = ActSet::new();
            for e in x.entries() {
                union.extend(e.acts.iter().copied());
            }
            union.len() as f64
        }
    }

    #[test]
    fn modular_curvature_is_zero() {
        let spaces = (0..2)
            .map(|u| ActionSpace::new(u, vec![acts([2 * u as u32]), acts([2 * u as u32 + 1])]).unwrap())
            .collect::<Vec<_>>();
        let oracle = FnOracle {
            gamma: |x: &ActionProfile| x.entries().iter().map(|e| e.acts.len() as f64).sum(),
            alpha: |_: usize, _: &ActionProfile| 0.0,
        };
        let game = GameBuilder::new(spaces, Arc::new(oracle)).build().unwrap();
        let (omega, _) = brute_force_opt(&game).unwrap();
        let c = total_curvature(&game, &omega, DEFAULT_TOL).unwrap();
        assert_eq!(c.value, 0.0);
    }

    #[test]
    fn full_overlap_curvature_is_one() {
        // Both users can only cover the same single element.
        let spaces = (0..2)
            .map(|u| ActionSpace::new(u, vec![acts([1])]).unwrap())
            .collect::<Vec<_>>();
        let gamma = coverage_oracle();
        let oracle = FnOracle {
            gamma,
            alpha: |_: usize, _: &ActionProfile| 0.0,
        };
        let game = GameBuilder::new(spaces, Arc::new(oracle)).build().unwrap();
        let (omega, _) = brute_force_opt(&game).unwrap();
        let c = total_curvature(&game, &omega, DEFAULT_TOL).unwrap();
        assert_eq!(c.value, 1.0);
        // The stored argmax reproduces the value.
        let (i, s) = c.argmax.unwrap();
        let again = curvature_at(&game, &omega, i, &s, DEFAULT_TOL)
            .unwrap()
            .unwrap();
        assert!((again - c.value).abs() <= 1e-12);
    }

    #[test]
    fn weighted_coverage_matches_naive_double_loop() {
        // Three users over a small shared universe.
        let spaces = vec![
            ActionSpace::new(0, vec![acts([1]), acts([2])]).unwrap(),
            ActionSpace::new(1, vec![acts([2]), acts([3])]).unwrap(),
            ActionSpace::new(2, vec![acts([1, 3]), acts([4])]).unwrap(),
        ];
        let gamma = |x: &ActionProfile| {
            let mut total = 0.0;
            let mut union = ActSet::new();
            for e in x.entries() {
                union.extend(e.acts.iter().copied());
            }
            for a in union {
                total += match a.0 {
                    1 => 1.0,
                    2 => 2.5,
                    3 => 0.75,
                    _ => 1.25,
                };
            }
            total
        };
        let oracle = FnOracle {
            gamma,
            alpha: |_: usize, _: &ActionProfile| 0.0,
        };
        let game = GameBuilder::new(spaces, Arc::new(oracle)).build().unwrap();
        let (omega, _) = brute_force_opt(&game).unwrap();
        let fast = total_curvature(&game, &omega, DEFAULT_TOL).unwrap();

        // Independent path: raw nested loops over (i, S) with manual unions.
        let mut naive = 0.0f64;
        let mut any = false;
        for c0 in 0..2usize {
            for c1 in 0..2usize {
                for c2 in 0..2usize {
                    let s = game.profile_from_indices(&[c0, c1, c2]);
                    for i in 0..3 {
                        let single = ActionProfile::new(vec![crate::game::Action::new(
                            i,
                            s.get(i).unwrap().clone(),
                        )])
                        .unwrap();
                        let denom = gamma(&single) - gamma(&ActionProfile::empty());
                        if denom.abs() <= 1e-12 {
                            continue;
                        }
                        let all = omega.union_merge(&s);
                        let rest = omega.union_merge(&s.without_user(i));
                        let value = 1.0 - (gamma(&all) - gamma(&rest)) / denom;
                        if !any || value > naive {
                            naive = value;
                            any = true;
                        }
                    }
                }
            }
        }
        assert!(any);
        assert!((fast.value - naive).abs() <= 1e-12);
    }

    #[test]
    fn whole_population_group_collapses_to_zero() {
        // With one block holding everyone, the rest-of-the-world context is
        // empty, so every ratio is the empty-context marginal against itself.
        let spaces = (0..2)
            .map(|u| ActionSpace::new(u, vec![acts([1]), acts([u as u32 + 2])]).unwrap())
            .collect::<Vec<_>>();
        let gamma = coverage_oracle();
        let oracle = FnOracle {
            gamma,
            alpha: |_: usize, _: &ActionProfile| 0.0,
        };
        let game = GameBuilder::new(spaces, Arc::new(oracle)).build().unwrap();
        let (omega, _) = brute_force_opt(&game).unwrap();
        let grouping = Grouping::whole(2);
        let c = group_curvature(&game, &grouping, 0, &omega, DEFAULT_TOL).unwrap();
        assert_eq!(c.value, 0.0);
    }

    #[test]
    fn singleton_groups_max_equals_total_curvature() {
        let spaces = vec![
            ActionSpace::new(0, vec![acts([1]), acts([2])]).unwrap(),
            ActionSpace::new(1, vec![acts([2]), acts([3])]).unwrap(),
            ActionSpace::new(2, vec![acts([1]), acts([3])]).unwrap(),
        ];
        let gamma = coverage_oracle();
        let oracle = FnOracle {
            gamma,
            alpha: |_: usize, _: &ActionProfile| 0.0,
        };
        let game = GameBuilder::new(spaces, Arc::new(oracle)).build().unwrap();
        let (omega, _) = brute_force_opt(&game).unwrap();
        let total = total_curvature(&game, &omega, DEFAULT_TOL).unwrap();
        let grouping = Grouping::singletons(3);
        let per: Vec<f64> = (0..3)
            .map(|b| {
                group_curvature(&game, &grouping, b, &omega, DEFAULT_TOL)
                    .unwrap()
                    .value
            })
            .collect();
        let max = per.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!((max - total.value).abs() <= 1e-12);
    }

    #[test]
    fn identical_spaces_larger_groups_have_smaller_curvature() {
        // Four users with the same action space over a shared universe.
        let spaces = (0..4)
            .map(|u| ActionSpace::new(u, vec![acts([1]), acts([2])]).unwrap())
            .collect::<Vec<_>>();
        let gamma = coverage_oracle();
        let oracle = FnOracle {
            gamma,
            alpha: |_: usize, _: &ActionProfile| 0.0,
        };
        let game = GameBuilder::new(spaces, Arc::new(oracle)).build().unwrap();
        assert!(game.identical_action_spaces());
        let (omega, _) = brute_force_opt(&game).unwrap();
        let grouping = Grouping::from_sizes(vec![1, 3], 4).unwrap();
        let c1 = group_curvature(&game, &grouping, 0, &omega, DEFAULT_TOL).unwrap();
        let c3 = group_curvature(&game, &grouping, 1, &omega, DEFAULT_TOL).unwrap();
        let total = total_curvature(&game, &omega, DEFAULT_TOL).unwrap();
        assert!(c3.value <= c1.value + DEFAULT_TOL);
        assert!(c1.value <= total.value + DEFAULT_TOL);
        let ordering = verify_curvature_ordering(&game, &grouping, &omega, DEFAULT_TOL).unwrap();
        assert!(ordering.holds);
    }

    #[test]
    fn modular_orderings_are_tight() {
        let spaces = (0..3)
            .map(|u| {
                ActionSpace::new(u, vec![acts([10 * u as u32]), acts([10 * u as u32 + 1])])
                    .unwrap()
            })
            .collect::<Vec<_>>();
        let oracle = FnOracle {
            gamma: |x: &ActionProfile| x.entries().iter().map(|e| e.acts.len() as f64).sum(),
            alpha: |_: usize, _: &ActionProfile| 0.0,
        };
        let game = GameBuilder::new(spaces, Arc::new(oracle)).build().unwrap();
        let (omega, _) = brute_force_opt(&game).unwrap();
        let grouping = Grouping::from_sizes(vec![1, 2], 3).unwrap();
        let ordering = verify_curvature_ordering(&game, &grouping, &omega, DEFAULT_TOL).unwrap();
        assert!(ordering.holds);
        assert_eq!(ordering.total, 0.0);
        assert!(ordering.per_group.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn negative_denominator_raises() {
        let spaces = (0..2)
            .map(|u| ActionSpace::new(u, vec![acts([0])]).unwrap())
            .collect::<Vec<_>>();
        let oracle = FnOracle {
            gamma: |x: &ActionProfile| -(x.len() as f64),
            alpha: |_: usize, _: &ActionProfile| 0.0,
        };
        let game = GameBuilder::new(spaces, Arc::new(oracle)).build().unwrap();
        let omega = game.profile_from_indices(&[0, 0]);
        assert!(matches!(
            total_curvature(&game, &omega, DEFAULT_TOL),
            Err(Error::NondecreasingViolated { .. })
        ));
    }
}
