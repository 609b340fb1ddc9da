//! Finite normal-form games in ordinal payoffs.
//!
//! A [`Game`] holds player and strategy labels plus one flat payoff array per
//! player, indexed in [`Game::enumerate_profiles`] order (lexicographic by
//! player, last player fastest). Payoffs are ordinal integers; the solver's
//! precondition is that no player's payoff value repeats across any two
//! profiles ("no ties"), which [`validate_game`] checks and reports without
//! refusing to load the game.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a player, `0 .. Game::player_count()`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(pub usize);

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0 + 1)
    }
}

/// One player's strategy, identified by owner and index within that player's list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyId {
    pub player: PlayerId,
    pub index: usize,
}

/// A full strategy profile: one strategy index per player, ordered by player.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyProfile(pub Vec<usize>);

impl StrategyProfile {
    pub fn choices(&self) -> &[usize] {
        &self.0
    }

    pub fn strategy(&self, player: PlayerId) -> StrategyId {
        StrategyId { player, index: self.0[player.0] }
    }
}

/// Position of a profile in [`Game::enumerate_profiles`] order. Cheap, `Copy`,
/// and totally ordered, so sets of profiles have a canonical iteration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProfileId(pub usize);

/// Errors raised while loading or constructing a game.
#[derive(Debug, Error)]
pub enum GameError {
    #[error("invalid game JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("game must have at least one player")]
    NoPlayers,
    #[error("player {player} has an empty strategy list")]
    NoStrategies { player: usize },
    #[error("found {found} strategy lists for {expected} players")]
    StrategyListMismatch { expected: usize, found: usize },
    #[error("found {found} payoff rows for {expected} players")]
    PayoffRowMismatch { expected: usize, found: usize },
    #[error("payoff row for player {player} has {found} entries, expected {expected}")]
    PayoffLengthMismatch { player: usize, expected: usize, found: usize },
    #[error("player {player} repeats the strategy label `{label}`")]
    DuplicateStrategyLabel { player: usize, label: String },
    #[error("player {player} has no strategy labeled `{label}`")]
    UnknownStrategy { player: usize, label: String },
    #[error("profile literal `{text}` does not name one strategy per player")]
    BadProfileLiteral { text: String },
}

/// A finite normal-form game with ordinal integer payoffs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    players: Vec<String>,
    strategies: Vec<Vec<String>>,
    /// `payoffs[p][f]` is player `p`'s payoff at the profile with flat index `f`.
    payoffs: Vec<Vec<i64>>,
    /// `strides[p]` converts player `p`'s strategy index into a flat-index offset.
    strides: Vec<usize>,
}

impl Game {
    /// Builds a game from explicit labels and per-player flat payoff arrays.
    pub fn new(
        players: Vec<String>,
        strategies: Vec<Vec<String>>,
        payoffs: Vec<Vec<i64>>,
    ) -> Result<Game, GameError> {
        if players.is_empty() {
            return Err(GameError::NoPlayers);
        }
        if strategies.len() != players.len() {
            return Err(GameError::StrategyListMismatch {
                expected: players.len(),
                found: strategies.len(),
            });
        }
        for (p, list) in strategies.iter().enumerate() {
            if list.is_empty() {
                return Err(GameError::NoStrategies { player: p });
            }
            let mut seen = BTreeMap::new();
            for label in list {
                if seen.insert(label.clone(), ()).is_some() {
                    return Err(GameError::DuplicateStrategyLabel {
                        player: p,
                        label: label.clone(),
                    });
                }
            }
        }
        if payoffs.len() != players.len() {
            return Err(GameError::PayoffRowMismatch {
                expected: players.len(),
                found: payoffs.len(),
            });
        }
        let total: usize = strategies.iter().map(Vec::len).product();
        for (p, row) in payoffs.iter().enumerate() {
            if row.len() != total {
                return Err(GameError::PayoffLengthMismatch {
                    player: p,
                    expected: total,
                    found: row.len(),
                });
            }
        }
        let mut strides = vec![1usize; players.len()];
        for p in (0..players.len().saturating_sub(1)).rev() {
            strides[p] = strides[p + 1] * strategies[p + 1].len();
        }
        Ok(Game { players, strategies, payoffs, strides })
    }

    /// Builds a game with default labels (`P1..`, strategies `A`, `B`, ...).
    pub fn from_payoffs(strategy_counts: &[usize], payoffs: Vec<Vec<i64>>) -> Result<Game, GameError> {
        let players = (0..strategy_counts.len()).map(|p| format!("P{}", p + 1)).collect();
        let strategies = strategy_counts
            .iter()
            .map(|&n| (0..n).map(default_strategy_label).collect())
            .collect();
        Game::new(players, strategies, payoffs)
    }

    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        (0..self.player_count()).map(PlayerId)
    }

    pub fn strategy_count(&self, player: PlayerId) -> usize {
        self.strategies[player.0].len()
    }

    pub fn num_profiles(&self) -> usize {
        self.payoffs[0].len()
    }

    pub fn player_label(&self, player: PlayerId) -> &str {
        &self.players[player.0]
    }

    pub fn strategy_label(&self, strategy: StrategyId) -> &str {
        &self.strategies[strategy.player.0][strategy.index]
    }

    /// All profiles in flat order: lexicographic by player, last player fastest.
    pub fn enumerate_profiles(&self) -> Vec<StrategyProfile> {
        self.profile_ids().map(|id| self.profile(id)).collect()
    }

    pub fn profile_ids(&self) -> impl Iterator<Item = ProfileId> {
        (0..self.num_profiles()).map(ProfileId)
    }

    /// Flat index of a profile. Panics if a choice is out of range.
    pub fn profile_id(&self, profile: &StrategyProfile) -> ProfileId {
        assert_eq!(profile.0.len(), self.player_count(), "profile arity mismatch");
        let mut flat = 0;
        for (p, &choice) in profile.0.iter().enumerate() {
            assert!(choice < self.strategies[p].len(), "strategy index out of range");
            flat += choice * self.strides[p];
        }
        ProfileId(flat)
    }

    /// Inverse of [`Game::profile_id`].
    pub fn profile(&self, id: ProfileId) -> StrategyProfile {
        StrategyProfile(self.players().map(|p| self.strategy_of(id, p)).collect())
    }

    /// Player `p`'s strategy index within the profile `id`.
    pub fn strategy_of(&self, id: ProfileId, player: PlayerId) -> usize {
        (id.0 / self.strides[player.0]) % self.strategies[player.0].len()
    }

    /// The profile equal to `id` except that `player` switches to `strategy`.
    pub fn with_strategy(&self, id: ProfileId, player: PlayerId, strategy: usize) -> ProfileId {
        assert!(strategy < self.strategy_count(player), "strategy index out of range");
        let current = self.strategy_of(id, player);
        let stride = self.strides[player.0];
        ProfileId(id.0 - current * stride + strategy * stride)
    }

    pub fn payoff(&self, profile: &StrategyProfile, player: PlayerId) -> i64 {
        self.payoff_by_id(self.profile_id(profile), player)
    }

    pub fn payoff_by_id(&self, id: ProfileId, player: PlayerId) -> i64 {
        self.payoffs[player.0][id.0]
    }

    /// Renders a profile as `(B,X)` using the game's strategy labels.
    pub fn format_profile(&self, id: ProfileId) -> String {
        let labels: Vec<&str> = self
            .players()
            .map(|p| self.strategy_label(StrategyId { player: p, index: self.strategy_of(id, p) }))
            .collect();
        format!("({})", labels.join(","))
    }

    /// Parses a `(B,X)` literal back into a profile.
    pub fn parse_profile(&self, text: &str) -> Result<StrategyProfile, GameError> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| GameError::BadProfileLiteral { text: text.to_string() })?;
        let labels: Vec<&str> = inner.split(',').map(str::trim).collect();
        if labels.len() != self.player_count() {
            return Err(GameError::BadProfileLiteral { text: text.to_string() });
        }
        let mut choices = Vec::with_capacity(labels.len());
        for (p, label) in labels.iter().enumerate() {
            choices.push(self.resolve_strategy(PlayerId(p), label)?.index);
        }
        Ok(StrategyProfile(choices))
    }

    /// Looks up a strategy label for one player.
    pub fn resolve_strategy(&self, player: PlayerId, label: &str) -> Result<StrategyId, GameError> {
        self.strategies[player.0]
            .iter()
            .position(|l| l == label)
            .map(|index| StrategyId { player, index })
            .ok_or_else(|| GameError::UnknownStrategy { player: player.0, label: label.to_string() })
    }

    /// True for two-player games with `u_2(a,b) = u_1(b,a)` on a square strategy set.
    pub fn is_symmetric_two_player(&self) -> bool {
        if self.player_count() != 2 {
            return false;
        }
        let n = self.strategy_count(PlayerId(0));
        if self.strategy_count(PlayerId(1)) != n {
            return false;
        }
        (0..n).all(|a| {
            (0..n).all(|b| {
                self.payoffs[1][a * n + b] == self.payoffs[0][b * n + a]
            })
        })
    }
}

fn default_strategy_label(i: usize) -> String {
    if i < 26 {
        char::from(b'A' + i as u8).to_string()
    } else {
        format!("S{i}")
    }
}

/// One no-ties violation: a payoff value player `player` receives at several profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieViolation {
    pub player: PlayerId,
    pub value: i64,
    pub profiles: Vec<ProfileId>,
}

/// Result of the no-ties precondition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<TieViolation>,
}

/// Checks that no player's payoff value repeats across any two profiles.
/// Every duplicated value is listed with all profiles carrying it.
pub fn validate_game(game: &Game) -> ValidationReport {
    let mut violations = Vec::new();
    for player in game.players() {
        let mut by_value: BTreeMap<i64, Vec<ProfileId>> = BTreeMap::new();
        for id in game.profile_ids() {
            by_value.entry(game.payoff_by_id(id, player)).or_default().push(id);
        }
        for (value, profiles) in by_value {
            if profiles.len() > 1 {
                violations.push(TieViolation { player, value, profiles });
            }
        }
    }
    ValidationReport { ok: violations.is_empty(), violations }
}

/// Generates a game whose payoffs are, per player, a seeded random permutation
/// of `0 .. num_profiles`. Distinct-by-construction, so no-ties always holds,
/// and the result is a pure function of `(seed, strategy_counts)`.
pub fn generate_random_game(seed: u64, strategy_counts: &[usize]) -> Game {
    assert!(!strategy_counts.is_empty(), "need at least one player");
    assert!(strategy_counts.iter().all(|&n| n >= 1), "each player needs a strategy");
    let total: usize = strategy_counts.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let payoffs = (0..strategy_counts.len())
        .map(|_| {
            let mut row: Vec<i64> = (0..total as i64).collect();
            row.shuffle(&mut rng);
            row
        })
        .collect();
    Game::from_payoffs(strategy_counts, payoffs).expect("generated tensor is well-formed")
}

/// Generates a symmetric two-player game: `u_1` is a seeded permutation and
/// `u_2(a,b) = u_1(b,a)`. The retry loop guards the no-ties requirement on the
/// induced `u_2`; a mirrored permutation is itself duplicate-free, so the first
/// draw always passes.
pub fn generate_random_symmetric_game(seed: u64, n_strategies: usize) -> Game {
    assert!(n_strategies >= 1, "need at least one strategy");
    let n = n_strategies;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut u1: Vec<i64> = (0..(n * n) as i64).collect();
        u1.shuffle(&mut rng);
        let u2 = (0..n * n).map(|f| u1[(f % n) * n + f / n]).collect();
        let game = Game::from_payoffs(&[n, n], vec![u1, u2]).expect("square tensor");
        if validate_game(&game).ok {
            return game;
        }
    }
}

/// On-disk shape of a game file.
#[derive(Serialize, Deserialize)]
struct GameFile {
    players: Vec<String>,
    strategies: Vec<Vec<String>>,
    payoffs: Vec<Vec<i64>>,
}

/// Parses a game from JSON. Structural problems (bad syntax, dimension
/// mismatches) are errors; a no-ties violation is not — the game loads and the
/// attached [`ValidationReport`] carries the violations.
pub fn parse_game(text: &str) -> Result<(Game, ValidationReport), GameError> {
    let file: GameFile = serde_json::from_str(text).map_err(|e| GameError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let game = Game::new(file.players, file.strategies, file.payoffs)?;
    let report = validate_game(&game);
    Ok((game, report))
}

/// Serializes a game to the JSON file format. `parse_game ∘ serialize_game`
/// is the identity on well-formed games.
pub fn serialize_game(game: &Game) -> String {
    let file = GameFile {
        players: game.players.clone(),
        strategies: game.strategies.clone(),
        payoffs: game.payoffs.clone(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("game serializes");
    text.push('\n');
    text
}
