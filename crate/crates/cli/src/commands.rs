//! Command implementations. Each returns the process exit code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use eqbound_core::bounds::{
    brute_force_opt, check_lemma1, check_lemma2, check_thm1, check_thm2, check_thm3, check_thm4,
    check_thm5, check_thm6, eval_block_sum_bound, eval_curvature_bound, eval_half_bound_groups,
    eval_half_bound_users, eval_opt_decomposition, BoundReport, Statement,
};
use eqbound_core::curvature::{curvature_report, CurvatureReport};
use eqbound_core::equilibria::{
    best_response_dynamics, certify_kind, enumerate_equilibria, BrdOutcome, EquilibriumKind,
};
use eqbound_core::expectation::expected_social;
use eqbound_core::game::{ActionProfile, Game, Grouping, StrategyProfile};
use eqbound_core::spectrum::{generate_scenario, GenParams};
use eqbound_core::coverage::{generate_coverage, CoverageGenParams};
use eqbound_core::structure::{
    check_nondecreasing, check_submodular, check_validity_group, check_validity_private,
    check_validity_social,
};
use eqbound_core::Error as CoreError;

use crate::report::{
    equilibrium_row, BoundRow, CurvatureSummary, EquilibriaReport, RunReport, StructureReport,
};
use crate::scenario::{
    self, digest_of, CoveragePayload, Loaded, LoadError, ScenarioFile, SpectrumPayload,
};

pub enum CliError {
    Load(LoadError),
    Core(CoreError),
    Io(std::io::Error),
    Usage(String),
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        CliError::Load(e)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Load(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

/// Exit codes: 0 success, 2 parse, 3 missing structure, 4 margin violation,
/// 5 resource limit, 1 anything else.
pub fn exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Load(_) | CliError::Usage(_) => 2,
        CliError::Core(CoreError::MissingSocialGraph) | CliError::Core(CoreError::MissingGrouping) => 3,
        CliError::Core(CoreError::ResourceLimit { .. }) => 5,
        CliError::Core(_) => 1,
        CliError::Io(_) => 1,
    }
}

pub const MARGIN_VIOLATION_EXIT: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KindArg {
    Nash,
    Social,
    Group,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Spectrum,
    Coverage,
}

fn read_scenario(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(scenario::load(&text)?)
}

/// Runs the structural verifiers on the base game, plus social validity on
/// the social-analysis game when ties are present.
fn structure_of(loaded: &Loaded, game: &Game) -> Result<StructureReport, CliError> {
    let tol = loaded.tolerance;
    let validity_social = match loaded.ties {
        Some(_) => {
            let social = loaded.social_game()?;
            Some(check_validity_social(&social, tol)?)
        }
        None => None,
    };
    let validity_group = match loaded.grouping {
        Some(_) => Some(check_validity_group(game, tol)?),
        None => None,
    };
    Ok(StructureReport {
        nondecreasing: check_nondecreasing(game, tol)?,
        submodular: check_submodular(game, tol)?,
        validity_private: check_validity_private(game, tol)?,
        validity_social,
        validity_group,
    })
}

pub fn cmd_check(path: &Path) -> Result<i32, CliError> {
    let loaded = read_scenario(path)?;
    let game = loaded.base_game()?;
    let structure = structure_of(&loaded, &game)?;
    println!("{}", structure.summary());
    #[derive(serde::Serialize)]
    struct CheckReport<'a> {
        digest: &'a str,
        kind: &'a str,
        tolerance: f64,
        structure: &'a StructureReport,
    }
    let report = CheckReport {
        digest: &loaded.digest,
        kind: loaded.kind.name(),
        tolerance: loaded.tolerance,
        structure: &structure,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(0)
}

fn game_for_kind(loaded: &Loaded, kind: EquilibriumKind) -> Result<Game, CliError> {
    match kind {
        EquilibriumKind::SocialAware => Ok(loaded.social_game()?),
        _ => Ok(loaded.base_game()?),
    }
}

fn parse_start(game: &Game, start: &Option<String>) -> Result<ActionProfile, CliError> {
    match start {
        None => Ok(game.profile_from_indices(&vec![0; game.n_users()])),
        Some(text) => {
            let indices: Vec<usize> = text
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("bad --start {text:?}")))?;
            if indices.len() != game.n_users() {
                return Err(CliError::Usage(format!(
                    "--start lists {} indices for {} users",
                    indices.len(),
                    game.n_users()
                )));
            }
            for (u, &j) in indices.iter().enumerate() {
                if j >= game.space(u).len() {
                    return Err(CliError::Usage(format!(
                        "--start index {j} out of range for user {u}"
                    )));
                }
            }
            Ok(game.profile_from_indices(&indices))
        }
    }
}

pub fn cmd_solve(
    path: &Path,
    kind: KindArg,
    dynamics: bool,
    start: &Option<String>,
    max_rounds: usize,
) -> Result<i32, CliError> {
    let loaded = read_scenario(path)?;
    let eq_kind = match kind {
        KindArg::Nash => EquilibriumKind::Nash,
        KindArg::Social => EquilibriumKind::SocialAware,
        KindArg::Group => EquilibriumKind::GroupNash,
        KindArg::All => return Err(CliError::Usage("solve needs --kind nash|social|group".into())),
    };
    let game = game_for_kind(&loaded, eq_kind)?;
    if dynamics {
        let start = parse_start(&game, start)?;
        let outcome = best_response_dynamics(&game, eq_kind, &start, max_rounds)?;
        match &outcome {
            BrdOutcome::Converged { profile, rounds } => {
                let s = StrategyProfile::from_pure(&game, profile)?;
                let cert = certify_kind(&game, eq_kind, &s, loaded.tolerance)?;
                println!(
                    "converged in {rounds} pass(es) to {profile}; certified: {} (max regret {:.3e})",
                    cert.valid, cert.max_regret
                );
                #[derive(serde::Serialize)]
                struct Converged<'a> {
                    converged: bool,
                    rounds: usize,
                    profile: &'a ActionProfile,
                    value: f64,
                    certified: bool,
                    max_regret: f64,
                }
                let row = Converged {
                    converged: true,
                    rounds: *rounds,
                    profile,
                    value: expected_social(&game, &s)?,
                    certified: cert.valid,
                    max_regret: cert.max_regret,
                };
                println!("{}", serde_json::to_string_pretty(&row).expect("serializable"));
            }
            BrdOutcome::Cycled { history } => {
                println!("no stable pass within {max_rounds} rounds; visited {} profiles", history.len());
                println!("{}", serde_json::to_string_pretty(history).expect("serializable"));
            }
        }
        return Ok(0);
    }
    let found = enumerate_equilibria(&game, eq_kind, loaded.tolerance)?;
    println!("{} certified equilibria", found.len());
    let rows: Vec<_> = found.iter().map(|c| equilibrium_row(&game, c)).collect();
    println!("{}", serde_json::to_string_pretty(&rows).expect("serializable"));
    Ok(0)
}

fn verified_row(kind: &str, profile: &ActionProfile, report: &BoundReport) -> BoundRow {
    BoundRow {
        statement: report.statement.to_string(),
        equilibrium_kind: kind.into(),
        profile: profile.clone(),
        lhs: Some(report.lhs),
        rhs: Some(report.rhs),
        margin: Some(report.margin),
        verified: true,
        note: None,
    }
}

fn informational_row(
    statement: Statement,
    kind: &str,
    profile: &ActionProfile,
    sides: Option<(f64, f64)>,
    note: String,
) -> BoundRow {
    BoundRow {
        statement: statement.to_string(),
        equilibrium_kind: kind.into(),
        profile: profile.clone(),
        lhs: sides.map(|s| s.0),
        rhs: sides.map(|s| s.1),
        margin: sides.map(|s| s.0 - s.1),
        verified: false,
        note: Some(format!("informational: {note}")),
    }
}

struct BoundsAnalysis {
    report: RunReport,
    violation: bool,
}

fn analyze_bounds(loaded: &Loaded, kinds: KindArg) -> Result<BoundsAnalysis, CliError> {
    let tol = loaded.tolerance;
    let game = loaded.base_game()?;
    let structure = structure_of(loaded, &game)?;
    let hyp = structure.hypotheses();
    let (omega, opt) = brute_force_opt(&game)?;

    let monotone_submodular =
        structure.nondecreasing.holds && structure.submodular.holds;
    let (curvature, curvature_note): (Option<CurvatureReport>, Option<String>) =
        if monotone_submodular {
            (
                Some(curvature_report(&game, loaded.grouping.as_ref(), &omega, tol)?),
                None,
            )
        } else {
            (
                None,
                Some("curvature undefined: social utility is not nondecreasing".into()),
            )
        };

    let want = |k: KindArg| kinds == KindArg::All || kinds == k;
    let mut equilibria = EquilibriaReport::default();
    let mut bounds: Vec<BoundRow> = Vec::new();
    let mut violation = false;
    let mut push = |row: BoundRow, violation: &mut bool| {
        if row.verified {
            if let Some(m) = row.margin {
                if m < -tol {
                    *violation = true;
                }
            }
        }
        bounds.push(row);
    };

    // Nash analysis on the base game.
    let nash = if want(KindArg::Nash) {
        Some(enumerate_equilibria(&game, EquilibriumKind::Nash, tol)?)
    } else {
        None
    };
    if let Some(eqs) = &nash {
        equilibria.nash = Some(eqs.iter().map(|c| equilibrium_row(&game, c)).collect());
        for cert in eqs {
            let profile = cert.profile.to_pure(&game).expect("pure");
            match check_thm1(&game, &cert.profile, &omega, opt, &hyp, tol) {
                Ok(r) => push(verified_row("nash", &profile, &r), &mut violation),
                Err(CoreError::HypothesisUnverified { missing, .. }) => {
                    let sides = eval_half_bound_users(&game, &cert.profile, &omega)?;
                    push(
                        informational_row(Statement::Thm1, "nash", &profile, Some(sides), missing),
                        &mut violation,
                    );
                }
                Err(e) => return Err(e.into()),
            }
            match &curvature {
                Some(c) => match check_thm2(&game, &cert.profile, &omega, opt, &c.total, &hyp, tol)
                {
                    Ok(r) => push(verified_row("nash", &profile, &r), &mut violation),
                    Err(CoreError::HypothesisUnverified { missing, .. }) => {
                        let sides =
                            eval_curvature_bound(&game, &cert.profile, &omega, c.total.value)?;
                        push(
                            informational_row(
                                Statement::Thm2,
                                "nash",
                                &profile,
                                Some(sides),
                                missing,
                            ),
                            &mut violation,
                        );
                    }
                    Err(e) => return Err(e.into()),
                },
                None => push(
                    informational_row(
                        Statement::Thm2,
                        "nash",
                        &profile,
                        None,
                        "hypotheses not met (curvature undefined)".into(),
                    ),
                    &mut violation,
                ),
            }
        }
    }

    // Social-aware analysis on the social game.
    let mut structure_social = None;
    if want(KindArg::Social) && (loaded.ties.is_some() || kinds == KindArg::Social) {
        let social_game = loaded.social_game()?;
        let s_structure = StructureReport {
            nondecreasing: check_nondecreasing(&social_game, tol)?,
            submodular: check_submodular(&social_game, tol)?,
            validity_private: check_validity_private(&social_game, tol)?,
            validity_social: Some(check_validity_social(&social_game, tol)?),
            validity_group: None,
        };
        let s_hyp = s_structure.hypotheses();
        let (omega_s, opt_s) = brute_force_opt(&social_game)?;
        let s_monotone = s_structure.nondecreasing.holds && s_structure.submodular.holds;
        let s_curvature = if s_monotone {
            Some(curvature_report(&social_game, None, &omega_s, tol)?)
        } else {
            None
        };
        let eqs = enumerate_equilibria(&social_game, EquilibriumKind::SocialAware, tol)?;
        equilibria.social = Some(eqs.iter().map(|c| equilibrium_row(&social_game, c)).collect());
        for cert in &eqs {
            let profile = cert.profile.to_pure(&social_game).expect("pure");
            match check_thm3(&social_game, &cert.profile, &omega_s, opt_s, &s_hyp, tol) {
                Ok(r) => push(verified_row("social", &profile, &r), &mut violation),
                Err(CoreError::HypothesisUnverified { missing, .. }) => {
                    let sides = eval_half_bound_users(&social_game, &cert.profile, &omega_s)?;
                    push(
                        informational_row(Statement::Thm3, "social", &profile, Some(sides), missing),
                        &mut violation,
                    );
                }
                Err(e) => return Err(e.into()),
            }
            match &s_curvature {
                Some(c) => {
                    match check_thm4(
                        &social_game,
                        &cert.profile,
                        &omega_s,
                        opt_s,
                        &c.total,
                        &s_hyp,
                        tol,
                    ) {
                        Ok(r) => push(verified_row("social", &profile, &r), &mut violation),
                        Err(CoreError::HypothesisUnverified { missing, .. }) => {
                            let sides = eval_curvature_bound(
                                &social_game,
                                &cert.profile,
                                &omega_s,
                                c.total.value,
                            )?;
                            push(
                                informational_row(
                                    Statement::Thm4,
                                    "social",
                                    &profile,
                                    Some(sides),
                                    missing,
                                ),
                                &mut violation,
                            );
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
                None => push(
                    informational_row(
                        Statement::Thm4,
                        "social",
                        &profile,
                        None,
                        "hypotheses not met (curvature undefined)".into(),
                    ),
                    &mut violation,
                ),
            }
        }
        structure_social = Some(s_structure);
    }

    // Group analysis on the base game.
    if want(KindArg::Group) && (loaded.grouping.is_some() || kinds == KindArg::Group) {
        let grouping = loaded
            .grouping
            .clone()
            .ok_or(CoreError::MissingGrouping)?;
        let eqs = enumerate_equilibria(&game, EquilibriumKind::GroupNash, tol)?;
        equilibria.group = Some(eqs.iter().map(|c| equilibrium_row(&game, c)).collect());
        let per_group: Option<Vec<f64>> = curvature
            .as_ref()
            .map(|c| c.per_group.iter().map(|v| v.value).collect());
        for cert in &eqs {
            let profile = cert.profile.to_pure(&game).expect("pure");
            match check_thm5(&game, &grouping, &cert.profile, &omega, opt, &hyp, tol) {
                Ok(r) => push(verified_row("group", &profile, &r), &mut violation),
                Err(CoreError::HypothesisUnverified { missing, .. }) => {
                    let sides =
                        eval_half_bound_groups(&game, &grouping, &cert.profile, &omega)?;
                    push(
                        informational_row(Statement::Thm5, "group", &profile, Some(sides), missing),
                        &mut violation,
                    );
                }
                Err(e) => return Err(e.into()),
            }
            match &per_group {
                Some(cs) => {
                    match check_thm6(
                        &game,
                        &grouping,
                        &cert.profile,
                        &omega,
                        opt,
                        cs,
                        &hyp,
                        tol,
                    ) {
                        Ok(reports) => {
                            for r in &reports {
                                push(verified_row("group", &profile, r), &mut violation);
                            }
                        }
                        Err(CoreError::HypothesisUnverified { missing, .. }) => {
                            let c_max = cs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                            let sides =
                                eval_curvature_bound(&game, &cert.profile, &omega, c_max)?;
                            push(
                                informational_row(
                                    Statement::Thm6,
                                    "group",
                                    &profile,
                                    Some(sides),
                                    missing,
                                ),
                                &mut violation,
                            );
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
                None => push(
                    informational_row(
                        Statement::Thm6,
                        "group",
                        &profile,
                        None,
                        "hypotheses not met (group curvature undefined)".into(),
                    ),
                    &mut violation,
                ),
            }
            // Lemma margins at the equilibrium.
            match check_lemma1(&game, &grouping, &profile, &omega, opt, &hyp) {
                Ok(r) => push(verified_row("group", &profile, &r), &mut violation),
                Err(CoreError::HypothesisUnverified { missing, .. }) => {
                    let sides = eval_opt_decomposition(&game, &grouping, &profile, &omega)?;
                    push(
                        informational_row(Statement::Lem1, "group", &profile, Some(sides), missing),
                        &mut violation,
                    );
                }
                Err(e) => return Err(e.into()),
            }
            match check_lemma2(&game, &grouping, &cert.profile, &hyp) {
                Ok(r) => push(verified_row("group", &profile, &r), &mut violation),
                Err(CoreError::HypothesisUnverified { missing, .. }) => {
                    let sides = eval_block_sum_bound(&game, &grouping, &cert.profile)?;
                    push(
                        informational_row(Statement::Lem2, "group", &profile, Some(sides), missing),
                        &mut violation,
                    );
                }
                Err(e) => return Err(e.into()),
            }
        }
    }

    let report = RunReport {
        digest: loaded.digest.clone(),
        kind: loaded.kind.name().into(),
        tolerance: tol,
        structure,
        structure_social,
        omega,
        opt,
        curvature: curvature.as_ref().map(|c| CurvatureSummary {
            c: c.total.value,
            argmax_user: c.total.argmax.as_ref().map(|(i, _)| *i),
            per_group: c.per_group.iter().map(|v| v.value).collect(),
        }),
        curvature_note,
        equilibria,
        bounds,
        report_digest: String::new(),
        wall_time_ms: 0,
    };
    Ok(BoundsAnalysis { report, violation })
}

pub fn cmd_bounds(path: &Path, kinds: KindArg) -> Result<i32, CliError> {
    let started = Instant::now();
    let loaded = read_scenario(path)?;
    let analysis = analyze_bounds(&loaded, kinds)?;
    let report = analysis
        .report
        .finalize(started.elapsed().as_millis() as u64);
    println!("{}", report.structure.summary());
    println!("opt: {}", report.opt);
    for row in &report.bounds {
        let label = if row.verified { "verified" } else { "informational" };
        match row.margin {
            Some(m) => println!(
                "{} [{}] {}: margin {}",
                row.statement, row.equilibrium_kind, label, m
            ),
            None => println!(
                "{} [{}] {}: {}",
                row.statement,
                row.equilibrium_kind,
                label,
                row.note.as_deref().unwrap_or("not evaluated")
            ),
        }
    }
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    if analysis.violation {
        eprintln!("verified margin below -tolerance: a proved guarantee failed on this instance");
        return Ok(MARGIN_VIOLATION_EXIT);
    }
    Ok(0)
}

pub struct GenOptions {
    pub seed: u64,
    pub users: usize,
    pub channels: usize,
    pub family: Family,
    pub unequal_powers: bool,
    pub random_vacant: bool,
    pub universe: usize,
    pub acts: usize,
    pub actions: usize,
}

pub fn build_scenario_file(opts: &GenOptions) -> Result<ScenarioFile, CliError> {
    match opts.family {
        Family::Spectrum => {
            let params = GenParams {
                equal_powers: !opts.unequal_powers,
                full_vacant: !opts.random_vacant,
                ..GenParams::default()
            };
            let sc = generate_scenario(opts.seed, opts.users, opts.channels, &params)
                .map_err(CliError::Core)?;
            let ties = sc.ties.as_ref().map(|graph| {
                (0..sc.n_users())
                    .flat_map(|i| {
                        graph
                            .ties(i)
                            .iter()
                            .map(move |&(m, w)| (i, m, w))
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
            });
            let noise_rows: Vec<Vec<f64>> = sc
                .vacant
                .iter()
                .zip(&sc.noise)
                .map(|(channels, map)| channels.iter().map(|c| map[c]).collect())
                .collect();
            let payload = SpectrumPayload {
                positions: sc.positions.clone(),
                distance_matrix: None,
                delta: sc.delta,
                lambda: sc.lambda,
                powers: sc.powers.clone(),
                vacant: sc.vacant.clone(),
                noise: noise_rows,
            };
            Ok(ScenarioFile {
                kind: "spectrum".into(),
                version: 1,
                tolerance: None,
                ties,
                groups: None,
                payload: serde_json::to_value(payload).expect("serializable"),
            })
        }
        Family::Coverage => {
            let params = CoverageGenParams {
                n_elements: opts.universe,
                n_acts: opts.acts,
                n_actions: opts.actions,
                ..CoverageGenParams::default()
            };
            let system = generate_coverage(opts.seed, opts.users, &params).map_err(CliError::Core)?;
            let payload = CoveragePayload {
                element_weights: system.element_weights.clone(),
                covers: system.covers.clone(),
                feasible: system.feasible.clone(),
            };
            Ok(ScenarioFile {
                kind: "coverage".into(),
                version: 1,
                tolerance: None,
                ties: None,
                groups: None,
                payload: serde_json::to_value(payload).expect("serializable"),
            })
        }
    }
}

pub fn cmd_gen(opts: &GenOptions, out: &Path) -> Result<i32, CliError> {
    let file = build_scenario_file(opts)?;
    let mut text = serde_json::to_string_pretty(&file).expect("serializable");
    text.push('\n');
    std::fs::write(out, &text)?;
    println!("{}", digest_of(&file));
    Ok(0)
}

pub struct SweepOptions {
    pub seeds: std::ops::Range<u64>,
    pub gen: GenOptions,
    pub partitions: Vec<Option<Vec<usize>>>,
    pub out: Option<PathBuf>,
}

pub const SWEEP_HEADER: &str = "seed,family,users,channels,partition,digest,status,opt,c,c_k_max,thm6_rhs,\
nash_count,nash_gamma_min,nash_gamma_max,social_count,social_gamma_min,social_gamma_max,\
group_count,group_gamma_min,group_gamma_max,thm1_margin_min,thm2_margin_min,thm3_margin_min,\
thm4_margin_min,thm5_margin_min,thm6_margin_min,thm6star_margin_min,lem1_margin_min,lem2_margin_min";

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn min_margin(rows: &[BoundRow], statement: &str) -> Option<f64> {
    rows.iter()
        .filter(|r| r.verified && r.statement == statement)
        .filter_map(|r| r.margin)
        .fold(None, |acc, m| Some(acc.map_or(m, |a: f64| a.min(m))))
}

fn value_span(rows: &Option<Vec<crate::report::EquilibriumRow>>) -> (String, String, String) {
    match rows {
        None => (String::new(), String::new(), String::new()),
        Some(list) => {
            let count = list.len().to_string();
            let min = list
                .iter()
                .map(|r| r.value)
                .fold(None::<f64>, |acc, v| Some(acc.map_or(v, |a| a.min(v))));
            let max = list
                .iter()
                .map(|r| r.value)
                .fold(None::<f64>, |acc, v| Some(acc.map_or(v, |a| a.max(v))));
            (count, fmt_opt(min), fmt_opt(max))
        }
    }
}

fn sweep_row(opts: &SweepOptions, seed: u64, partition: &Option<Vec<usize>>) -> String {
    let gen = GenOptions {
        seed,
        users: opts.gen.users,
        channels: opts.gen.channels,
        family: opts.gen.family,
        unequal_powers: opts.gen.unequal_powers,
        random_vacant: opts.gen.random_vacant,
        universe: opts.gen.universe,
        acts: opts.gen.acts,
        actions: opts.gen.actions,
    };
    let family = match gen.family {
        Family::Spectrum => "spectrum",
        Family::Coverage => "coverage",
    };
    let partition_text = partition
        .as_ref()
        .map(|sizes| {
            sizes
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join("+")
        })
        .unwrap_or_default();
    let channels_text = match gen.family {
        Family::Spectrum => gen.channels.to_string(),
        Family::Coverage => String::new(),
    };
    let prefix = format!(
        "{seed},{family},{users},{channels_text},{partition_text}",
        users = gen.users
    );

    let result = (|| -> Result<String, CliError> {
        let mut file = build_scenario_file(&gen)?;
        if let Some(sizes) = partition {
            let grouping = Grouping::from_sizes(sizes.clone(), gen.users)?;
            file.groups = Some((0..grouping.len()).map(|b| grouping.users(b).collect()).collect());
        }
        let text = serde_json::to_string(&file).expect("serializable");
        let loaded = scenario::load(&text)?;
        let analysis = analyze_bounds(&loaded, KindArg::All)?;
        let report = analysis.report;
        let (c, c_k_max) = match &report.curvature {
            Some(summary) => (
                Some(summary.c),
                summary
                    .per_group
                    .iter()
                    .cloned()
                    .fold(None::<f64>, |acc, v| Some(acc.map_or(v, |a| a.max(v)))),
            ),
            None => (None, None),
        };
        let thm6_rhs = c_k_max.map(|ck| report.opt / (1.0 + ck));
        let (nash_n, nash_min, nash_max) = value_span(&report.equilibria.nash);
        let (soc_n, soc_min, soc_max) = value_span(&report.equilibria.social);
        let (grp_n, grp_min, grp_max) = value_span(&report.equilibria.group);
        let mut row = String::new();
        write!(
            row,
            "{},ok,{},{},{},{}",
            report.digest,
            report.opt,
            fmt_opt(c),
            fmt_opt(c_k_max),
            fmt_opt(thm6_rhs)
        )
        .unwrap();
        for cell in [
            nash_n, nash_min, nash_max, soc_n, soc_min, soc_max, grp_n, grp_min, grp_max,
        ] {
            write!(row, ",{cell}").unwrap();
        }
        for statement in [
            "thm1", "thm2", "thm3", "thm4", "thm5", "thm6", "thm6star", "lem1", "lem2",
        ] {
            write!(row, ",{}", fmt_opt(min_margin(&report.bounds, statement))).unwrap();
        }
        Ok(row)
    })();

    match result {
        Ok(row) => format!("{prefix},{row}"),
        Err(CliError::Core(CoreError::ResourceLimit { .. })) => {
            format!("{prefix},,skipped{}", ",".repeat(22))
        }
        Err(e) => format!("{prefix},,error: {e}{}", ",".repeat(22)),
    }
}

pub fn cmd_sweep(opts: &SweepOptions) -> Result<i32, CliError> {
    let mut lines = vec![SWEEP_HEADER.to_string()];
    for seed in opts.seeds.clone() {
        for partition in &opts.partitions {
            lines.push(sweep_row(opts, seed, partition));
        }
    }
    let mut text = lines.join("\n");
    text.push('\n');
    match &opts.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}
