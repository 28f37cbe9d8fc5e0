//! Domain types: users, acts, actions, profiles, strategies, social ties,
//! groupings, and the game container that bundles them with utility oracles.
//!
//! Profiles are canonically sorted by user index. All types are immutable
//! after construction and oracles must be callable from multiple threads.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An atomic choice element from one user's ground set. Ids are scoped to a
/// single ground set; the same id in two ground sets denotes two distinct acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Act(pub u32);

/// A set of acts. Empty sets are legal actions.
pub type ActSet = BTreeSet<Act>;

/// Builds an [`ActSet`] from integer ids.
pub fn acts<I: IntoIterator<Item = u32>>(ids: I) -> ActSet {
    ids.into_iter().map(Act).collect()
}

/// One user's action: the set of acts it plays.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Action {
    pub user: usize,
    pub acts: ActSet,
}

impl Action {
    pub fn new(user: usize, acts: ActSet) -> Self {
        Action { user, acts }
    }
}

/// The feasible actions of one user, in a fixed author-given order. Action
/// indices into this list are the tie-breaking currency everywhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionSpace {
    pub user: usize,
    feasible: Vec<ActSet>,
}

impl ActionSpace {
    pub fn new(user: usize, feasible: Vec<ActSet>) -> Result<Self> {
        if feasible.is_empty() {
            return Err(Error::InvalidParams(format!(
                "user {user} has an empty action space"
            )));
        }
        let mut seen = BTreeSet::new();
        for a in &feasible {
            if !seen.insert(a.clone()) {
                return Err(Error::InvalidParams(format!(
                    "user {user} lists a duplicate feasible action"
                )));
            }
        }
        Ok(ActionSpace { user, feasible })
    }

    pub fn len(&self) -> usize {
        self.feasible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.feasible.is_empty()
    }

    pub fn act_set(&self, index: usize) -> &ActSet {
        &self.feasible[index]
    }

    pub fn action(&self, index: usize) -> Action {
        Action::new(self.user, self.feasible[index].clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = &ActSet> {
        self.feasible.iter()
    }

    /// Index of a feasible act-set, if listed.
    pub fn index_of(&self, acts: &ActSet) -> Option<usize> {
        self.feasible.iter().position(|a| a == acts)
    }
}

/// An assignment of act-sets to a subset of the users, sorted by user index.
/// Entries need not be feasible: union-composed profiles leave the feasible
/// lists on purpose, and the oracles must accept them.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ActionProfile {
    entries: Vec<Action>,
}

impl ActionProfile {
    pub fn empty() -> Self {
        ActionProfile::default()
    }

    /// Builds a profile from entries, sorting by user. Duplicate users are
    /// rejected.
    pub fn new(mut entries: Vec<Action>) -> Result<Self> {
        entries.sort_by_key(|e| e.user);
        for w in entries.windows(2) {
            if w[0].user == w[1].user {
                return Err(Error::OverlappingUsers(w[0].user));
            }
        }
        Ok(ActionProfile { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Action] {
        &self.entries
    }

    pub fn users(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.user)
    }

    pub fn contains_user(&self, user: usize) -> bool {
        self.entries.binary_search_by_key(&user, |e| e.user).is_ok()
    }

    pub fn get(&self, user: usize) -> Option<&ActSet> {
        self.entries
            .binary_search_by_key(&user, |e| e.user)
            .ok()
            .map(|i| &self.entries[i].acts)
    }

    /// The concatenation `self ⊕ other`, re-sorted by user index.
    pub fn concat(&self, other: &ActionProfile) -> Result<ActionProfile> {
        for e in &other.entries {
            if self.contains_user(e.user) {
                return Err(Error::OverlappingUsers(e.user));
            }
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        ActionProfile::new(entries)
    }

    /// True iff every entry of `self` appears identically in `other`.
    pub fn is_subsequence_of(&self, other: &ActionProfile) -> bool {
        self.entries
            .iter()
            .all(|e| other.get(e.user) == Some(&e.acts))
    }

    /// The profile with user `user` removed (`X_{-i}`); no-op if absent.
    pub fn without_user(&self, user: usize) -> ActionProfile {
        ActionProfile {
            entries: self
                .entries
                .iter()
                .filter(|e| e.user != user)
                .cloned()
                .collect(),
        }
    }

    /// The profile restricted to `users` (in their profile order).
    pub fn restrict<F: Fn(usize) -> bool>(&self, keep: F) -> ActionProfile {
        ActionProfile {
            entries: self
                .entries
                .iter()
                .filter(|e| keep(e.user))
                .cloned()
                .collect(),
        }
    }

    /// The profile `(X_{-i}, x_i')`: user `user` replaced (or inserted).
    pub fn with_action(&self, user: usize, acts: ActSet) -> ActionProfile {
        let mut entries: Vec<Action> = self
            .entries
            .iter()
            .filter(|e| e.user != user)
            .cloned()
            .collect();
        entries.push(Action::new(user, acts));
        entries.sort_by_key(|e| e.user);
        ActionProfile { entries }
    }

    /// Union-merges `other` into `self`: a user present in both plays the
    /// union of both act-sets. This is the set-semantics reading of appending
    /// actions for a user that already acted.
    pub fn union_merge(&self, other: &ActionProfile) -> ActionProfile {
        let mut entries = self.entries.clone();
        for e in &other.entries {
            match entries.binary_search_by_key(&e.user, |x| x.user) {
                Ok(i) => {
                    entries[i].acts.extend(e.acts.iter().copied());
                }
                Err(i) => entries.insert(i, e.clone()),
            }
        }
        ActionProfile { entries }
    }

    pub fn is_complete(&self, n_users: usize) -> bool {
        self.entries.len() == n_users && self.entries.iter().enumerate().all(|(i, e)| e.user == i)
    }
}

impl fmt::Display for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:[", e.user)?;
            for (j, a) in e.acts.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", a.0)?;
            }
            write!(f, "]")?;
        }
        write!(f, "}}")
    }
}

/// Tolerance on the simplex constraints of a mixed strategy.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// A probability distribution over one user's feasible actions, indexed in
/// action-space order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedStrategy {
    pub user: usize,
    probs: Vec<f64>,
}

impl MixedStrategy {
    pub fn new(user: usize, probs: Vec<f64>) -> Result<Self> {
        let s = MixedStrategy { user, probs };
        s.validate()?;
        Ok(s)
    }

    /// Point mass on action `index` out of `n_actions`.
    pub fn pure(user: usize, index: usize, n_actions: usize) -> Self {
        let mut probs = vec![0.0; n_actions];
        probs[index] = 1.0;
        MixedStrategy { user, probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::DegenerateDistribution {
                user: self.user,
                detail: format!("probability {p} is negative or not finite"),
            });
        }
        let sum: f64 = self.probs.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::DegenerateDistribution {
                user: self.user,
                detail: format!("probabilities sum to {sum}"),
            });
        }
        Ok(())
    }

    /// True iff exactly one probability equals 1.
    pub fn is_pure(&self) -> bool {
        self.probs.iter().filter(|&&p| p == 1.0).count() == 1
            && self.probs.iter().all(|&p| p == 0.0 || p == 1.0)
    }

    /// Action indices with strictly positive probability.
    pub fn support(&self) -> Vec<(usize, f64)> {
        self.probs
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, p)| p > 0.0)
            .collect()
    }

    /// The supported action index of a pure strategy.
    pub fn pure_index(&self) -> Option<usize> {
        if self.is_pure() {
            self.probs.iter().position(|&p| p == 1.0)
        } else {
            None
        }
    }
}

/// Strategies for a subset of the users, sorted by user index.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StrategyProfile {
    entries: Vec<MixedStrategy>,
}

impl StrategyProfile {
    pub fn empty() -> Self {
        StrategyProfile::default()
    }

    pub fn new(mut entries: Vec<MixedStrategy>) -> Result<Self> {
        entries.sort_by_key(|e| e.user);
        for w in entries.windows(2) {
            if w[0].user == w[1].user {
                return Err(Error::OverlappingUsers(w[0].user));
            }
        }
        Ok(StrategyProfile { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[MixedStrategy] {
        &self.entries
    }

    pub fn users(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.user)
    }

    pub fn contains_user(&self, user: usize) -> bool {
        self.entries.binary_search_by_key(&user, |e| e.user).is_ok()
    }

    pub fn get(&self, user: usize) -> Option<&MixedStrategy> {
        self.entries
            .binary_search_by_key(&user, |e| e.user)
            .ok()
            .map(|i| &self.entries[i])
    }

    pub fn concat(&self, other: &StrategyProfile) -> Result<StrategyProfile> {
        for e in &other.entries {
            if self.contains_user(e.user) {
                return Err(Error::OverlappingUsers(e.user));
            }
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        StrategyProfile::new(entries)
    }

    pub fn without_user(&self, user: usize) -> StrategyProfile {
        StrategyProfile {
            entries: self
                .entries
                .iter()
                .filter(|e| e.user != user)
                .cloned()
                .collect(),
        }
    }

    pub fn restrict<F: Fn(usize) -> bool>(&self, keep: F) -> StrategyProfile {
        StrategyProfile {
            entries: self
                .entries
                .iter()
                .filter(|e| keep(e.user))
                .cloned()
                .collect(),
        }
    }

    /// `(S_{-i}, s_i')`: user `strategy.user` replaced (or inserted).
    pub fn with_strategy(&self, strategy: MixedStrategy) -> StrategyProfile {
        let mut entries: Vec<MixedStrategy> = self
            .entries
            .iter()
            .filter(|e| e.user != strategy.user)
            .cloned()
            .collect();
        entries.push(strategy);
        entries.sort_by_key(|e| e.user);
        StrategyProfile { entries }
    }

    pub fn is_complete(&self, n_users: usize) -> bool {
        self.entries.len() == n_users && self.entries.iter().enumerate().all(|(i, e)| e.user == i)
    }

    pub fn is_pure(&self) -> bool {
        self.entries.iter().all(|e| e.is_pure())
    }

    /// Point-mass profile on a pure action profile. Every entry must be a
    /// feasible action of its user.
    pub fn from_pure(game: &Game, profile: &ActionProfile) -> Result<StrategyProfile> {
        let mut entries = Vec::with_capacity(profile.len());
        for e in profile.entries() {
            let space = game.space(e.user);
            let index = space.index_of(&e.acts).ok_or_else(|| {
                Error::StrategyShape(format!("user {} plays an infeasible action", e.user))
            })?;
            entries.push(MixedStrategy::pure(e.user, index, space.len()));
        }
        Ok(StrategyProfile { entries })
    }

    /// The pure action profile of a pure strategy profile.
    pub fn to_pure(&self, game: &Game) -> Option<ActionProfile> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let idx = e.pure_index()?;
            entries.push(game.space(e.user).action(idx));
        }
        Some(ActionProfile { entries })
    }
}

/// Per-user social ties `N_i^s` with weights in `[0, 1]`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SocialGraph {
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl SocialGraph {
    /// Builds a graph for `n_users` users from directed weighted edges.
    pub fn new(n_users: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut neighbors = vec![Vec::new(); n_users];
        for &(i, m, w) in edges {
            if i >= n_users || m >= n_users {
                return Err(Error::InvalidParams(format!(
                    "tie ({i}, {m}) references a user outside 0..{n_users}"
                )));
            }
            if i == m {
                return Err(Error::InvalidParams(format!("user {i} cannot tie itself")));
            }
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidParams(format!(
                    "tie weight {w} outside [0, 1]"
                )));
            }
            if neighbors[i].iter().any(|&(n, _)| n == m) {
                return Err(Error::InvalidParams(format!("duplicate tie ({i}, {m})")));
            }
            neighbors[i].push((m, w));
        }
        for list in &mut neighbors {
            list.sort_by_key(|&(n, _)| n);
        }
        Ok(SocialGraph { neighbors })
    }

    pub fn n_users(&self) -> usize {
        self.neighbors.len()
    }

    /// Outgoing ties of `user`: the members of `N_user^s` with weights.
    pub fn ties(&self, user: usize) -> &[(usize, f64)] {
        &self.neighbors[user]
    }

    /// Sum of weights on ties pointing *at* `user`.
    pub fn incoming_weight(&self, user: usize) -> f64 {
        self.neighbors
            .iter()
            .flat_map(|list| list.iter())
            .filter(|&&(m, _)| m == user)
            .map(|&(_, w)| w)
            .sum()
    }

    /// True iff every tie (i, m, w) is mirrored by (m, i, w) exactly.
    pub fn is_symmetric(&self) -> bool {
        self.neighbors.iter().enumerate().all(|(i, list)| {
            list.iter().all(|&(m, w)| {
                self.neighbors[m]
                    .iter()
                    .any(|&(back, bw)| back == i && bw == w)
            })
        })
    }

    /// First asymmetric pair, if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        for (i, list) in self.neighbors.iter().enumerate() {
            for &(m, w) in list {
                if !self.neighbors[m]
                    .iter()
                    .any(|&(back, bw)| back == i && bw == w)
                {
                    return Some((i, m));
                }
            }
        }
        None
    }
}

/// An ordered partition of the users `0..N` into contiguous blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grouping {
    sizes: Vec<usize>,
}

impl Grouping {
    /// Builds a grouping from block sizes; blocks are contiguous by
    /// construction, block `i` holding users `m_i .. m_i + k_i`.
    pub fn from_sizes(sizes: Vec<usize>, n_users: usize) -> Result<Self> {
        if sizes.iter().any(|&k| k == 0) {
            return Err(Error::InvalidParams("empty group".into()));
        }
        let total: usize = sizes.iter().sum();
        if total != n_users {
            return Err(Error::InvalidParams(format!(
                "group sizes sum to {total}, expected {n_users}"
            )));
        }
        Ok(Grouping { sizes })
    }

    /// Builds a grouping from explicit user lists, which must be contiguous
    /// ranges in order.
    pub fn from_blocks(blocks: &[Vec<usize>], n_users: usize) -> Result<Self> {
        let mut expected = 0usize;
        let mut sizes = Vec::with_capacity(blocks.len());
        for block in blocks {
            for &u in block {
                if u != expected {
                    return Err(Error::InvalidParams(format!(
                        "groups must list users 0..{n_users} contiguously in order; got user {u} where {expected} was expected"
                    )));
                }
                expected += 1;
            }
            if block.is_empty() {
                return Err(Error::InvalidParams("empty group".into()));
            }
            sizes.push(block.len());
        }
        if expected != n_users {
            return Err(Error::InvalidParams(format!(
                "groups cover {expected} users, expected {n_users}"
            )));
        }
        Ok(Grouping { sizes })
    }

    /// One block per user.
    pub fn singletons(n_users: usize) -> Self {
        Grouping {
            sizes: vec![1; n_users],
        }
    }

    /// A single block with every user.
    pub fn whole(n_users: usize) -> Self {
        Grouping {
            sizes: vec![n_users],
        }
    }

    /// Number of blocks `l`.
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Size `k_i` of a block.
    pub fn size(&self, block: usize) -> usize {
        self.sizes[block]
    }

    /// Offset `m_i` of a block.
    pub fn offset(&self, block: usize) -> usize {
        self.sizes[..block].iter().sum()
    }

    /// Users of a block, ascending.
    pub fn users(&self, block: usize) -> std::ops::Range<usize> {
        let m = self.offset(block);
        m..m + self.sizes[block]
    }

    /// Block index of a user.
    pub fn block_of(&self, user: usize) -> usize {
        let mut m = 0;
        for (b, &k) in self.sizes.iter().enumerate() {
            if user < m + k {
                return b;
            }
            m += k;
        }
        panic!("user {user} outside grouping");
    }

    /// Smallest block size `k*`.
    pub fn min_size(&self) -> usize {
        *self.sizes.iter().min().expect("nonempty grouping")
    }
}

/// Deterministic, thread-safe utility oracles. Both mappings must be total
/// over profiles whose act-sets are arbitrary subsets of the ground sets,
/// complete or not: feasibility constrains search, never evaluation.
pub trait UtilityOracle: Send + Sync {
    /// The social utility `γ`.
    fn social(&self, profile: &ActionProfile) -> f64;

    /// The private utility `α_user`.
    fn private(&self, user: usize, profile: &ActionProfile) -> f64;
}

/// Oracle built from two closures; handy for tests and table games.
pub struct FnOracle<G, A>
where
    G: Fn(&ActionProfile) -> f64 + Send + Sync,
    A: Fn(usize, &ActionProfile) -> f64 + Send + Sync,
{
    pub gamma: G,
    pub alpha: A,
}

impl<G, A> UtilityOracle for FnOracle<G, A>
where
    G: Fn(&ActionProfile) -> f64 + Send + Sync,
    A: Fn(usize, &ActionProfile) -> f64 + Send + Sync,
{
    fn social(&self, profile: &ActionProfile) -> f64 {
        (self.gamma)(profile)
    }

    fn private(&self, user: usize, profile: &ActionProfile) -> f64 {
        (self.alpha)(user, profile)
    }
}

/// A utility-system game: ground sets, feasible action spaces, the utility
/// oracles, and the optional social graph / grouping structure.
#[derive(Clone)]
pub struct Game {
    n_users: usize,
    ground_sets: Vec<ActSet>,
    spaces: Vec<ActionSpace>,
    oracle: Arc<dyn UtilityOracle>,
    order_invariant: bool,
    social_graph: Option<SocialGraph>,
    grouping: Option<Grouping>,
    enumeration_cap: u64,
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Game")
            .field("n_users", &self.n_users)
            .field("spaces", &self.spaces.iter().map(|s| s.len()).collect::<Vec<_>>())
            .field("social_graph", &self.social_graph.is_some())
            .field("grouping", &self.grouping)
            .finish()
    }
}

/// Builder for [`Game`].
pub struct GameBuilder {
    ground_sets: Vec<ActSet>,
    spaces: Vec<ActionSpace>,
    oracle: Arc<dyn UtilityOracle>,
    order_invariant: bool,
    social_graph: Option<SocialGraph>,
    grouping: Option<Grouping>,
    enumeration_cap: u64,
}

impl GameBuilder {
    pub fn new(spaces: Vec<ActionSpace>, oracle: Arc<dyn UtilityOracle>) -> Self {
        let ground_sets = spaces
            .iter()
            .map(|s| {
                let mut v = ActSet::new();
                for a in s.iter() {
                    v.extend(a.iter().copied());
                }
                v
            })
            .collect();
        GameBuilder {
            ground_sets,
            spaces,
            oracle,
            order_invariant: true,
            social_graph: None,
            grouping: None,
            enumeration_cap: crate::DEFAULT_ENUMERATION_CAP,
        }
    }

    /// Overrides the derived ground sets (they default to the union of all
    /// feasible act-sets per user).
    pub fn ground_sets(mut self, ground_sets: Vec<ActSet>) -> Self {
        self.ground_sets = ground_sets;
        self
    }

    pub fn social_graph(mut self, graph: SocialGraph) -> Self {
        self.social_graph = Some(graph);
        self
    }

    pub fn grouping(mut self, grouping: Grouping) -> Self {
        self.grouping = Some(grouping);
        self
    }

    pub fn order_invariant(mut self, flag: bool) -> Self {
        self.order_invariant = flag;
        self
    }

    pub fn enumeration_cap(mut self, cap: u64) -> Self {
        self.enumeration_cap = cap;
        self
    }

    pub fn build(self) -> Result<Game> {
        let n_users = self.spaces.len();
        if n_users == 0 {
            return Err(Error::InvalidParams("a game needs at least one user".into()));
        }
        if self.ground_sets.len() != n_users {
            return Err(Error::InvalidParams(format!(
                "{} ground sets for {} users",
                self.ground_sets.len(),
                n_users
            )));
        }
        for (i, space) in self.spaces.iter().enumerate() {
            if space.user != i {
                return Err(Error::InvalidParams(format!(
                    "action space {i} is labeled for user {}",
                    space.user
                )));
            }
            for a in space.iter() {
                if !a.is_subset(&self.ground_sets[i]) {
                    return Err(Error::InvalidParams(format!(
                        "user {i} lists a feasible action outside its ground set"
                    )));
                }
            }
        }
        if let Some(g) = &self.social_graph {
            if g.n_users() != n_users {
                return Err(Error::InvalidParams(
                    "social graph sized for a different user count".into(),
                ));
            }
        }
        if let Some(g) = &self.grouping {
            Grouping::from_sizes(g.sizes().to_vec(), n_users)?;
        }
        Ok(Game {
            n_users,
            ground_sets: self.ground_sets,
            spaces: self.spaces,
            oracle: self.oracle,
            order_invariant: self.order_invariant,
            social_graph: self.social_graph,
            grouping: self.grouping,
            enumeration_cap: self.enumeration_cap,
        })
    }
}

impl Game {
    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn space(&self, user: usize) -> &ActionSpace {
        &self.spaces[user]
    }

    pub fn spaces(&self) -> &[ActionSpace] {
        &self.spaces
    }

    pub fn ground_set(&self, user: usize) -> &ActSet {
        &self.ground_sets[user]
    }

    pub fn order_invariant(&self) -> bool {
        self.order_invariant
    }

    pub fn social_graph(&self) -> Option<&SocialGraph> {
        self.social_graph.as_ref()
    }

    pub fn grouping(&self) -> Option<&Grouping> {
        self.grouping.as_ref()
    }

    pub fn enumeration_cap(&self) -> u64 {
        self.enumeration_cap
    }

    /// Returns a copy of this game carrying `grouping`.
    pub fn with_grouping(&self, grouping: Grouping) -> Result<Game> {
        Grouping::from_sizes(grouping.sizes().to_vec(), self.n_users)?;
        let mut g = self.clone();
        g.grouping = Some(grouping);
        Ok(g)
    }

    /// Returns a copy of this game with a different enumeration cap.
    pub fn with_enumeration_cap(&self, cap: u64) -> Game {
        let mut g = self.clone();
        g.enumeration_cap = cap;
        g
    }

    /// Returns a copy of this game carrying `graph`.
    pub fn with_social_graph(&self, graph: SocialGraph) -> Result<Game> {
        if graph.n_users() != self.n_users {
            return Err(Error::InvalidParams(
                "social graph sized for a different user count".into(),
            ));
        }
        let mut g = self.clone();
        g.social_graph = Some(graph);
        Ok(g)
    }

    /// The social utility `γ(X)`.
    pub fn gamma(&self, profile: &ActionProfile) -> f64 {
        self.oracle.social(profile)
    }

    /// The private utility `α_i(X)`.
    pub fn alpha(&self, user: usize, profile: &ActionProfile) -> f64 {
        self.oracle.private(user, profile)
    }

    /// The marginal `γ_Z(Y) = γ(Y ⊕ Z) − γ(Y)`.
    pub fn marginal(&self, z: &ActionProfile, y: &ActionProfile) -> Result<f64> {
        let merged = y.concat(z)?;
        Ok(self.gamma(&merged) - self.gamma(y))
    }

    /// The social group utility `η_i(X) = α_i(X) + Σ_{m ∈ N_i^s} w_im α_m(X)`.
    pub fn social_group_utility(&self, user: usize, profile: &ActionProfile) -> Result<f64> {
        let graph = self.social_graph.as_ref().ok_or(Error::MissingSocialGraph)?;
        if !profile.is_complete(self.n_users) {
            return Err(Error::IncompleteProfile {
                expected: self.n_users,
                found: profile.len(),
            });
        }
        let mut eta = self.alpha(user, profile);
        for &(m, w) in graph.ties(user) {
            eta += w * self.alpha(m, profile);
        }
        Ok(eta)
    }

    /// The block utility of group `block`: the sum of its members' private
    /// utilities.
    pub fn block_utility(&self, block: usize, profile: &ActionProfile) -> Result<f64> {
        let grouping = self.grouping.as_ref().ok_or(Error::MissingGrouping)?;
        if !profile.is_complete(self.n_users) {
            return Err(Error::IncompleteProfile {
                expected: self.n_users,
                found: profile.len(),
            });
        }
        Ok(grouping
            .users(block)
            .map(|j| self.alpha(j, profile))
            .sum())
    }

    /// True iff every user lists the same feasible actions in the same act-id
    /// structure.
    pub fn identical_action_spaces(&self) -> bool {
        let first: BTreeSet<&ActSet> = self.spaces[0].iter().collect();
        self.spaces.iter().all(|s| {
            s.len() == self.spaces[0].len() && s.iter().collect::<BTreeSet<_>>() == first
        })
    }

    /// The complete pure profile picking `indices[i]` from each user's space.
    pub fn profile_from_indices(&self, indices: &[usize]) -> ActionProfile {
        ActionProfile {
            entries: indices
                .iter()
                .enumerate()
                .map(|(i, &j)| self.spaces[i].action(j))
                .collect(),
        }
    }

}
