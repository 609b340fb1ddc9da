//! Iterated elimination of profiles that fail a player's maximin guarantee.
//!
//! Level 0 keeps every profile. At level k each player's threshold is the best
//! worst-case payoff any of their strategies still guarantees against the
//! opponents' surviving combinations; a profile survives to `S_k` only if it is
//! already in `S_{k-1}` and weakly clears every player's threshold. The
//! sequence shrinks until it repeats (fixpoint) or empties, which takes at most
//! `|Σ|` rounds. A nonempty fixpoint with a single profile is the unique
//! equilibrium; an empty level means none exists. A multi-profile fixpoint is
//! representable and monitored but is never expected on tie-free games.
//!
//! The survivor filter intersects with `S_{k-1}` explicitly rather than
//! trusting the threshold formula to imply nesting; any profile that clears the
//! thresholds from outside `S_{k-1}` would be recorded as an audit escape.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::game::{validate_game, Game, PlayerId, ProfileId, StrategyProfile, ValidationReport};

/// The no-ties precondition failed; the report lists every duplicated value.
#[derive(Debug, Error)]
#[error("game has payoff ties: {} duplicated value(s)", .report.violations.len())]
pub struct TiesError {
    pub report: ValidationReport,
}

/// A per-player maximin guarantee, or `Diverged` when computed from an empty
/// survivor set (no strategy has any surviving support).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    Value(i64),
    Diverged,
}

/// The thresholds applied when filtering `S_{level-1}` down to `S_level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximinThresholds {
    pub level: usize,
    pub values: Vec<Threshold>,
}

/// The survivor set at one elimination level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSet {
    pub level: usize,
    pub members: BTreeSet<ProfileId>,
}

impl LevelSet {
    /// Level 0: every profile of the game.
    pub fn full(game: &Game) -> LevelSet {
        LevelSet { level: 0, members: game.profile_ids().collect() }
    }
}

/// Final classification of the elimination sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The fixpoint is a single profile: the unique equilibrium.
    UniquePte(ProfileId),
    /// Some level eliminated every profile.
    NoEquilibrium,
    /// The fixpoint kept several profiles. Monitored anomaly; see module docs.
    MultipleAtFixpoint(BTreeSet<ProfileId>),
}

/// The full elimination run: survivor sets `S_0..`, the thresholds used at
/// each step, and the outcome. The stored sequence ends with two equal sets
/// (fixpoint confirmed) or an empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelTrace {
    pub levels: Vec<LevelSet>,
    pub thresholds: Vec<MaximinThresholds>,
    pub fixpoint_level: usize,
    pub outcome: Outcome,
    /// Profiles that cleared some level's thresholds from outside `S_{k-1}`,
    /// as `(level, profile)`. Expected to stay empty; see module docs.
    pub audit_escapes: Vec<(usize, ProfileId)>,
}

impl LevelTrace {
    /// Members of `S_k`; levels beyond the stored sequence repeat the last set.
    pub fn members_at(&self, k: usize) -> &BTreeSet<ProfileId> {
        let idx = k.min(self.levels.len() - 1);
        &self.levels[idx].members
    }

    pub fn is_member(&self, profile: ProfileId, k: usize) -> bool {
        self.members_at(k).contains(&profile)
    }

    /// Thresholds applied to produce `S_k` (defined for `k ≥ 1` within the run).
    pub fn thresholds_at(&self, k: usize) -> Option<&MaximinThresholds> {
        if k == 0 {
            return None;
        }
        self.thresholds.get(k - 1)
    }
}

/// `player`'s maximin guarantee over a survivor set: the max over their
/// strategies with surviving support of the min payoff among compatible
/// surviving profiles. `Diverged` iff the set is empty.
pub fn maximin_threshold(game: &Game, surviving: &LevelSet, player: PlayerId) -> Threshold {
    let mut best: Option<i64> = None;
    for strategy in 0..game.strategy_count(player) {
        let mut worst: Option<i64> = None;
        for &id in &surviving.members {
            if game.strategy_of(id, player) == strategy {
                let v = game.payoff_by_id(id, player);
                worst = Some(worst.map_or(v, |w| w.min(v)));
            }
        }
        if let Some(w) = worst {
            best = Some(best.map_or(w, |b| b.max(w)));
        }
    }
    match best {
        Some(v) => Threshold::Value(v),
        None => Threshold::Diverged,
    }
}

fn eliminate_step_full(
    game: &Game,
    previous: &LevelSet,
) -> (LevelSet, MaximinThresholds, Vec<ProfileId>) {
    let level = previous.level + 1;
    let values: Vec<Threshold> =
        game.players().map(|p| maximin_threshold(game, previous, p)).collect();
    let thresholds = MaximinThresholds { level, values };

    let clears = |id: ProfileId| -> bool {
        game.players().all(|p| match thresholds.values[p.0] {
            Threshold::Value(t) => game.payoff_by_id(id, p) >= t,
            Threshold::Diverged => false,
        })
    };

    let members: BTreeSet<ProfileId> =
        previous.members.iter().copied().filter(|&id| clears(id)).collect();
    // Audit: the threshold formula alone, applied to all of Σ, should never
    // admit a profile that is not already in the previous set.
    let escapes = if previous.members.is_empty() {
        Vec::new()
    } else {
        game.profile_ids()
            .filter(|&id| clears(id) && !previous.members.contains(&id))
            .collect()
    };
    (LevelSet { level, members }, thresholds, escapes)
}

/// One elimination round: filters `previous` by the maximin thresholds it
/// induces. The empty set maps to the empty set.
pub fn eliminate_step(game: &Game, previous: &LevelSet) -> LevelSet {
    eliminate_step_full(game, previous).0
}

/// Runs elimination to its fixpoint (or first empty level) and classifies the
/// outcome. Rejects games with payoff ties, the theory's precondition.
pub fn compute_trace(game: &Game) -> Result<LevelTrace, TiesError> {
    let report = validate_game(game);
    if !report.ok {
        return Err(TiesError { report });
    }

    let mut levels = vec![LevelSet::full(game)];
    let mut thresholds = Vec::new();
    let mut audit_escapes = Vec::new();
    loop {
        let previous = levels.last().unwrap();
        let (next, step_thresholds, escapes) = eliminate_step_full(game, previous);
        let k = next.level;
        let repeated = next.members == previous.members;
        let emptied = next.members.is_empty();
        thresholds.push(step_thresholds);
        audit_escapes.extend(escapes.into_iter().map(|id| (k, id)));
        levels.push(next);

        if repeated {
            let fixpoint_level = (k - 1).max(1);
            let fixpoint = &levels.last().unwrap().members;
            let outcome = if fixpoint.len() == 1 {
                Outcome::UniquePte(*fixpoint.iter().next().unwrap())
            } else {
                Outcome::MultipleAtFixpoint(fixpoint.clone())
            };
            return Ok(LevelTrace { levels, thresholds, fixpoint_level, outcome, audit_escapes });
        }
        if emptied {
            return Ok(LevelTrace {
                levels,
                thresholds,
                fixpoint_level: k,
                outcome: Outcome::NoEquilibrium,
                audit_escapes,
            });
        }
    }
}

/// The equilibrium outcome alone.
pub fn compute_pte(game: &Game) -> Result<Outcome, TiesError> {
    compute_trace(game).map(|trace| trace.outcome)
}

/// Whether `profile` survives to level `k`; beyond the fixpoint this is
/// membership in the fixpoint set.
pub fn is_level_k_ir(game: &Game, profile: &StrategyProfile, k: usize) -> Result<bool, TiesError> {
    let trace = compute_trace(game)?;
    Ok(trace.is_member(game.profile_id(profile), k))
}

/// All pure Nash equilibria: profiles where no player gains by a unilateral
/// strategy change.
pub fn pure_nash(game: &Game) -> BTreeSet<ProfileId> {
    game.profile_ids()
        .filter(|&id| {
            game.players().all(|player| {
                let here = game.payoff_by_id(id, player);
                (0..game.strategy_count(player)).all(|s| {
                    game.payoff_by_id(game.with_strategy(id, player, s), player) <= here
                })
            })
        })
        .collect()
}

/// True iff no other profile weakly improves every player and strictly
/// improves at least one. (Under no-ties this reduces to: no profile strictly
/// improves all players.)
pub fn is_pareto_optimal(game: &Game, profile: &StrategyProfile) -> bool {
    let here = game.profile_id(profile);
    !game.profile_ids().any(|other| {
        other != here
            && game.players().all(|p| game.payoff_by_id(other, p) >= game.payoff_by_id(here, p))
            && game.players().any(|p| game.payoff_by_id(other, p) > game.payoff_by_id(here, p))
    })
}

/// Errors from the symmetric-game analysis.
#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("symmetric analysis requires exactly two players, found {0}")]
    PlayerCount(usize),
    #[error("players have different strategy counts ({0} vs {1})")]
    StrategyCounts(usize, usize),
    #[error("payoffs are not mirror-symmetric (u_2({a},{b}) != u_1({b},{a}))")]
    Asymmetric { a: usize, b: usize },
}

/// The diagonal profile `(s,s)` maximizing the (shared) diagonal payoff of a
/// symmetric two-player game — the classic superrational choice.
pub fn hofstadter_profile(game: &Game) -> Result<StrategyProfile, SymmetryError> {
    if game.player_count() != 2 {
        return Err(SymmetryError::PlayerCount(game.player_count()));
    }
    let n = game.strategy_count(PlayerId(0));
    let m = game.strategy_count(PlayerId(1));
    if n != m {
        return Err(SymmetryError::StrategyCounts(n, m));
    }
    for a in 0..n {
        for b in 0..n {
            let ab = game.profile_id(&StrategyProfile(vec![a, b]));
            let ba = game.profile_id(&StrategyProfile(vec![b, a]));
            if game.payoff_by_id(ab, PlayerId(1)) != game.payoff_by_id(ba, PlayerId(0)) {
                return Err(SymmetryError::Asymmetric { a, b });
            }
        }
    }
    let best = (0..n)
        .max_by_key(|&s| game.payoff(&StrategyProfile(vec![s, s]), PlayerId(0)))
        .expect("at least one strategy");
    Ok(StrategyProfile(vec![best, best]))
}

/// Side-by-side solution concepts for one game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub pte: Outcome,
    pub fixpoint_level: usize,
    pub pure_nash: BTreeSet<ProfileId>,
    pub level1_ir: BTreeSet<ProfileId>,
    pub pareto_optimal: BTreeSet<ProfileId>,
    /// Present only for symmetric two-player games.
    pub hofstadter: Option<ProfileId>,
}

/// Computes every concept in [`ComparisonReport`] for one game.
pub fn compare(game: &Game) -> Result<ComparisonReport, TiesError> {
    let trace = compute_trace(game)?;
    let pareto_optimal = game
        .profile_ids()
        .filter(|&id| is_pareto_optimal(game, &game.profile(id)))
        .collect();
    let hofstadter = hofstadter_profile(game).ok().map(|p| game.profile_id(&p));
    Ok(ComparisonReport {
        pte: trace.outcome.clone(),
        fixpoint_level: trace.fixpoint_level,
        pure_nash: pure_nash(game),
        level1_ir: trace.members_at(1).clone(),
        pareto_optimal,
        hofstadter,
    })
}
