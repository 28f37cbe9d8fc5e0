//! Cross-module invariants checked on randomized inputs.

use std::sync::Arc;

use proptest::prelude::*;

use eqbound_core::expectation::{expected_social, expected_marginal};
use eqbound_core::game::{
    acts, ActSet, Action, ActionProfile, ActionSpace, FnOracle, Game, GameBuilder, MixedStrategy,
    StrategyProfile,
};
use eqbound_core::structure::{check_nondecreasing, check_submodular};
use eqbound_core::DEFAULT_TOL;

fn arb_act_set() -> impl Strategy<Value = ActSet> {
    proptest::collection::btree_set(0u32..6, 0..3).prop_map(|s| acts(s))
}

/// Profiles over disjoint user ranges so concatenation is always defined.
fn arb_profile(users: std::ops::Range<usize>) -> impl Strategy<Value = ActionProfile> {
    let span: Vec<usize> = users.collect();
    proptest::collection::vec(proptest::option::of(arb_act_set()), span.len()).prop_map(
        move |slots| {
            let entries = span
                .iter()
                .zip(slots)
                .filter_map(|(&u, slot)| slot.map(|s| Action::new(u, s)))
                .collect();
            ActionProfile::new(entries).expect("distinct users")
        },
    )
}

proptest! {
    #[test]
    fn concat_is_associative_with_identity(
        a in arb_profile(0..3),
        b in arb_profile(3..6),
        c in arb_profile(6..9),
    ) {
        let left = a.concat(&b).unwrap().concat(&c).unwrap();
        let right = a.concat(&b.concat(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let empty = ActionProfile::empty();
        prop_assert_eq!(&empty.concat(&a).unwrap(), &a);
        prop_assert_eq!(&a.concat(&empty).unwrap(), &a);
    }

    #[test]
    fn removal_and_reinsertion_round_trips(x in arb_profile(0..5)) {
        for user in x.users().collect::<Vec<_>>() {
            let without = x.without_user(user);
            prop_assert!(without.is_subsequence_of(&x));
            let single = ActionProfile::new(vec![Action::new(user, x.get(user).unwrap().clone())]).unwrap();
            prop_assert_eq!(&without.concat(&single).unwrap(), &x);
        }
    }

    #[test]
    fn restrictions_are_subsequences(x in arb_profile(0..6), mask in 0u64..64) {
        let y = x.restrict(|u| mask & (1 << u) != 0);
        prop_assert!(y.is_subsequence_of(&x));
        prop_assert!(x.is_subsequence_of(&x));
    }
}

/// A two-user weighted-coverage game over a shared three-element universe.
fn weighted_coverage_game(w: [f64; 3]) -> Game {
    let spaces = vec![
        ActionSpace::new(0, vec![acts([0]), acts([1]), acts([0, 1])]).unwrap(),
        ActionSpace::new(1, vec![acts([1]), acts([2])]).unwrap(),
    ];
    let gamma = move |x: &ActionProfile| {
        let mut covered = [false; 3];
        for e in x.entries() {
            for a in &e.acts {
                covered[a.0 as usize] = true;
            }
        }
        covered
            .iter()
            .zip(w.iter())
            .filter(|&(c, _)| *c)
            .map(|(_, wt)| wt)
            .sum()
    };
    let oracle = FnOracle {
        gamma,
        alpha: move |u: usize, x: &ActionProfile| {
            if x.contains_user(u) {
                gamma(x) - gamma(&x.without_user(u))
            } else {
                0.0
            }
        },
    };
    GameBuilder::new(spaces, Arc::new(oracle)).build().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expected_social_is_multilinear(
        w0 in 0.1f64..3.0,
        w1 in 0.1f64..3.0,
        w2 in 0.1f64..3.0,
        p in 0.0f64..1.0,
        j in 0usize..3,
        k in 0usize..3,
        q in 0.0f64..1.0,
    ) {
        let game = weighted_coverage_game([w0, w1, w2]);
        let other = MixedStrategy::new(1, vec![q, 1.0 - q]).unwrap();
        let at = |s0: MixedStrategy| {
            expected_social(
                &game,
                &StrategyProfile::new(vec![s0, other.clone()]).unwrap(),
            )
            .unwrap()
        };
        let va = at(MixedStrategy::pure(0, j, 3));
        let vb = at(MixedStrategy::pure(0, k, 3));
        let mut probs = vec![0.0; 3];
        probs[j] += p;
        probs[k] += 1.0 - p;
        let mid = at(MixedStrategy::new(0, probs).unwrap());
        prop_assert!((mid - (p * va + (1.0 - p) * vb)).abs() < 1e-9);
    }

    #[test]
    fn point_mass_profiles_evaluate_bit_exactly(
        w0 in 0.1f64..3.0,
        i0 in 0usize..3,
        i1 in 0usize..2,
    ) {
        let game = weighted_coverage_game([w0, 1.0, 2.0]);
        let profile = game.profile_from_indices(&[i0, i1]);
        let s = StrategyProfile::from_pure(&game, &profile).unwrap();
        prop_assert_eq!(
            expected_social(&game, &s).unwrap().to_bits(),
            game.gamma(&profile).to_bits()
        );
    }

    #[test]
    fn expected_marginal_of_monotone_gamma_nonnegative(
        q0 in 0.0f64..1.0,
        j in 0usize..3,
    ) {
        let game = weighted_coverage_game([1.0, 2.0, 0.5]);
        // Coverage is nondecreasing, so expected marginals never dip.
        let w = StrategyProfile::new(vec![MixedStrategy::pure(0, j, 3)]).unwrap();
        let t = StrategyProfile::new(vec![MixedStrategy::new(1, vec![q0, 1.0 - q0]).unwrap()]).unwrap();
        prop_assert!(expected_marginal(&game, &w, &t).unwrap() >= -DEFAULT_TOL);
    }
}

/// Relabels users `u ↦ n−1−u` in a profile.
fn reverse_profile(x: &ActionProfile, n: usize) -> ActionProfile {
    ActionProfile::new(
        x.entries()
            .iter()
            .map(|e| Action::new(n - 1 - e.user, e.acts.clone()))
            .collect(),
    )
    .unwrap()
}

/// Builds the user-reversed twin of a small coverage game and checks that
/// structural verdicts and witness values agree with the original.
#[test]
fn verdicts_invariant_under_user_reversal() {
    let n = 3;
    let forward_spaces = vec![
        ActionSpace::new(0, vec![acts([0]), acts([1])]).unwrap(),
        ActionSpace::new(1, vec![acts([1]), acts([2])]).unwrap(),
        ActionSpace::new(2, vec![acts([0, 2]), acts([3])]).unwrap(),
    ];
    let cover = |x: &ActionProfile| {
        let mut union = ActSet::new();
        for e in x.entries() {
            union.extend(e.acts.iter().copied());
        }
        union.len() as f64
    };
    let forward = GameBuilder::new(
        forward_spaces.clone(),
        Arc::new(FnOracle {
            gamma: cover,
            alpha: |_: usize, _: &ActionProfile| 0.0,
        }),
    )
    .build()
    .unwrap();

    // Reversed game: user u plays what user n−1−u played; the oracle maps
    // profiles back before scoring, so the two games are isomorphic.
    let reversed_spaces: Vec<ActionSpace> = (0..n)
        .map(|u| {
            ActionSpace::new(
                u,
                forward_spaces[n - 1 - u].iter().cloned().collect(),
            )
            .unwrap()
        })
        .collect();
    let reversed = GameBuilder::new(
        reversed_spaces,
        Arc::new(FnOracle {
            gamma: move |x: &ActionProfile| cover(&reverse_profile(x, n)),
            alpha: |_: usize, _: &ActionProfile| 0.0,
        }),
    )
    .build()
    .unwrap();

    let f_mono = check_nondecreasing(&forward, DEFAULT_TOL).unwrap();
    let r_mono = check_nondecreasing(&reversed, DEFAULT_TOL).unwrap();
    assert_eq!(f_mono.holds, r_mono.holds);

    let f_sub = check_submodular(&forward, DEFAULT_TOL).unwrap();
    let r_sub = check_submodular(&reversed, DEFAULT_TOL).unwrap();
    assert_eq!(f_sub.holds, r_sub.holds);

    // Same construction with a supermodular γ: both twins must report a
    // violation, and repeated runs must return the identical witness.
    let square = |x: &ActionProfile| {
        let k: f64 = x.entries().iter().map(|e| e.acts.len() as f64).sum();
        k * k
    };
    let forward_bad = GameBuilder::new(
        forward_spaces.clone(),
        Arc::new(FnOracle {
            gamma: square,
            alpha: |_: usize, _: &ActionProfile| 0.0,
        }),
    )
    .build()
    .unwrap();
    let reversed_bad_spaces: Vec<ActionSpace> = (0..n)
        .map(|u| ActionSpace::new(u, forward_spaces[n - 1 - u].iter().cloned().collect()).unwrap())
        .collect();
    let reversed_bad = GameBuilder::new(
        reversed_bad_spaces,
        Arc::new(FnOracle {
            gamma: move |x: &ActionProfile| square(&reverse_profile(x, n)),
            alpha: |_: usize, _: &ActionProfile| 0.0,
        }),
    )
    .build()
    .unwrap();
    let f = check_submodular(&forward_bad, DEFAULT_TOL).unwrap();
    let r = check_submodular(&reversed_bad, DEFAULT_TOL).unwrap();
    assert!(!f.holds && !r.holds);
    let again = check_submodular(&forward_bad, DEFAULT_TOL).unwrap();
    let (fw, aw) = (f.witness.unwrap(), again.witness.unwrap());
    assert_eq!(fw.x, aw.x);
    assert_eq!(fw.y, aw.y);
    assert_eq!(fw.z, aw.z);
    assert_eq!(fw.lhs, aw.lhs);
    assert_eq!(fw.rhs, aw.rhs);
}

/// The submodularity witness for a quadratic γ is hand-computable: the least
/// violating triple is X = {user 0, first action}, Y = ∅, Z = {user 1, first
/// act-set}, comparing marginals 1 vs 3.
#[test]
fn submodularity_witness_is_least_by_hand() {
    let spaces = vec![
        ActionSpace::new(0, vec![acts([0]), acts([5])]).unwrap(),
        ActionSpace::new(1, vec![acts([1]), acts([2])]).unwrap(),
        ActionSpace::new(2, vec![acts([3]), acts([4])]).unwrap(),
    ];
    let square = |x: &ActionProfile| {
        let k: f64 = x.entries().iter().map(|e| e.acts.len() as f64).sum();
        k * k
    };
    let game = GameBuilder::new(
        spaces,
        Arc::new(FnOracle {
            gamma: square,
            alpha: |_: usize, _: &ActionProfile| 0.0,
        }),
    )
    .build()
    .unwrap();
    let out = check_submodular(&game, DEFAULT_TOL).unwrap();
    assert!(!out.holds);
    let w = out.witness.unwrap();
    assert_eq!(
        w.x,
        ActionProfile::new(vec![Action::new(0, acts([0]))]).unwrap()
    );
    assert!(w.y.as_ref().unwrap().is_empty());
    assert_eq!(
        w.z,
        Some(ActionProfile::new(vec![Action::new(1, acts([1]))]).unwrap())
    );
    assert_eq!(w.lhs, 1.0);
    assert_eq!(w.rhs, 3.0);
}
