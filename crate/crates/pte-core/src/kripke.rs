//! The canonical possible-worlds structure for a game.
//!
//! Worlds form a grid `Σ × {0..max_level}`: every profile at every level. A
//! world is *logically possible* (in Λ) when its profile survives elimination
//! at its level and the level is at least 1; it is *normal* (in Ξ) when the
//! level is at least 2. Everything else is an impossible world. Three classes
//! result:
//!
//! * `Impossible` — outside Λ; atoms are read from a stored valuation table.
//! * `NonnormalPossible` — Λ without Ξ (level-1 survivors); real atom
//!   semantics, but necessity never holds and possibility always does.
//! * `Normal` — Ξ; full modal semantics.
//!
//! Epistemic accessibility is world equality. Logical accessibility is
//! class-driven: `L(w, w′) ⇔ w′ ∈ Λ ∨ w ∉ Ξ` — from a normal world exactly
//! the logically possible worlds are reachable; from anywhere else,
//! everything is.
//!
//! The closest-state function `f(w, i, s′)` — "the world reached if agent `i`
//! deviated to `s′` at `w`" — is precomputed as a table. First matching case:
//!
//! 1. at level 0, replace `i`'s coordinate and stay at level 0;
//! 2. no deviation (`s′` is already played): `w` itself;
//! 3. if the previous level's survivors can support `s′`, the survivor
//!    combination worst for `i` among them, one level down;
//! 4. otherwise replace `i`'s coordinate, one level down.
//!
//! Case 3's argmin is unique because payoffs are tie-free; the builder asserts
//! this and fails loudly on invalid input.

use std::fmt::Write as _;

use crate::elimination::{compute_trace, LevelTrace, TiesError};
use crate::game::{Game, PlayerId, ProfileId, StrategyId, StrategyProfile};

/// A point of the structure: a strategy profile at an elimination level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World {
    pub profile: ProfileId,
    pub level: usize,
}

/// The three evaluation regimes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WorldClass {
    Impossible,
    NonnormalPossible,
    Normal,
}

/// Manually assigned atom values for one impossible world. The canonical
/// assignment marks the world rational and knowledgeable, playing its own
/// profile, and omniscient exactly at its own level; other play/omniscience
/// atoms are false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpossibleWorldFacts {
    pub rat: bool,
    pub knows_strategies: bool,
    pub play: ProfileId,
    pub omn_level: usize,
}

/// The epistemic relation. Canonical structures use `Equality`; the
/// `EqualityPlus` variant adds explicit extra links and exists for
/// counterexample fixtures and fault injection.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum EpistemicRelation {
    #[default]
    Equality,
    EqualityPlus(Vec<(World, World)>),
}

impl EpistemicRelation {
    fn accessible(&self, from: World, to: World) -> bool {
        match self {
            EpistemicRelation::Equality => from == to,
            EpistemicRelation::EqualityPlus(links) => {
                from == to || links.iter().any(|&(a, b)| a == from && b == to)
            }
        }
    }
}

/// The materialized canonical structure for one game. Fields are public so
/// verification fixtures can corrupt individual table entries; production
/// code treats a built structure as immutable.
#[derive(Clone, Debug)]
pub struct CanonicalStructure {
    pub game: Game,
    pub max_level: usize,
    /// Survivor sets supplying Λ/Ξ membership per level.
    pub trace: LevelTrace,
    /// World class, indexed by [`CanonicalStructure::world_id`].
    pub class_of: Vec<WorldClass>,
    /// Closest-state table: `closest[world_id][player][strategy]`.
    pub closest: Vec<Vec<Vec<World>>>,
    /// Valuation tables, `Some` exactly for impossible worlds.
    pub impossible_valuation: Vec<Option<ImpossibleWorldFacts>>,
    pub epistemic: EpistemicRelation,
}

impl CanonicalStructure {
    pub fn world_id(&self, w: World) -> usize {
        assert!(w.level <= self.max_level, "world level out of range");
        assert!(w.profile.0 < self.game.num_profiles(), "world profile out of range");
        w.level * self.game.num_profiles() + w.profile.0
    }

    pub fn world_count(&self) -> usize {
        (self.max_level + 1) * self.game.num_profiles()
    }

    /// All worlds, level-major then profile order.
    pub fn worlds(&self) -> impl Iterator<Item = World> + '_ {
        (0..=self.max_level).flat_map(move |level| {
            self.game.profile_ids().map(move |profile| World { profile, level })
        })
    }

    pub fn class(&self, w: World) -> WorldClass {
        self.class_of[self.world_id(w)]
    }

    /// Logically possible: in Λ.
    pub fn in_lambda(&self, w: World) -> bool {
        self.class(w) != WorldClass::Impossible
    }

    /// Normal: in Ξ.
    pub fn in_xi(&self, w: World) -> bool {
        self.class(w) == WorldClass::Normal
    }

    pub fn level_of(&self, w: World) -> usize {
        w.level
    }

    pub fn profile_of(&self, w: World) -> StrategyProfile {
        self.game.profile(w.profile)
    }

    /// `L_i(w, w′)`: accessible iff the target is logically possible or the
    /// source is not normal. Class-driven, hence the same for every agent.
    pub fn logically_accessible(&self, w: World, to: World, _agent: PlayerId) -> bool {
        self.in_lambda(to) || !self.in_xi(w)
    }

    /// `K_i(w, w′)`: world equality in canonical structures.
    pub fn epistemically_accessible(&self, w: World, to: World, _agent: PlayerId) -> bool {
        self.epistemic.accessible(w, to)
    }

    /// The closest-state table entry `f(w, i, s′)`.
    pub fn closest_state(&self, w: World, deviation: StrategyId) -> World {
        self.closest[self.world_id(w)][deviation.player.0][deviation.index]
    }

    pub fn impossible_facts(&self, w: World) -> Option<&ImpossibleWorldFacts> {
        self.impossible_valuation[self.world_id(w)].as_ref()
    }

    /// Renders a world as `((B,X),2)`.
    pub fn format_world(&self, w: World) -> String {
        format!("({},{})", self.game.format_profile(w.profile), w.level)
    }

    /// Graphviz DOT rendering: one node per world labeled with profile, level,
    /// and class; edges for the closest-state function (identity entries
    /// omitted); logical accessibility summarized per class in the header.
    pub fn export_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph canonical_structure {\n");
        out.push_str("  // Edges are the closest-state function f, labeled f:<player>-><strategy>;\n");
        out.push_str("  // identity entries (no deviation) are omitted.\n");
        out.push_str("  // Logical accessibility, summarized per class: from normal worlds exactly\n");
        out.push_str("  // the logically possible worlds are accessible; from non-normal and\n");
        out.push_str("  // impossible worlds, every world is.\n");
        out.push_str("  rankdir=BT;\n");
        out.push_str("  node [shape=box];\n");
        for level in 0..=self.max_level {
            let _ = write!(out, "  {{ rank=same;");
            for profile in self.game.profile_ids() {
                let _ = write!(out, " w{}_{};", profile.0, level);
            }
            out.push_str(" }\n");
        }
        for w in self.worlds() {
            let class = match self.class(w) {
                WorldClass::Impossible => "impossible",
                WorldClass::NonnormalPossible => "non-normal",
                WorldClass::Normal => "normal",
            };
            let _ = writeln!(
                out,
                "  w{}_{} [label=\"({},{}) {}\"];",
                w.profile.0,
                w.level,
                self.game.format_profile(w.profile),
                w.level,
                class
            );
        }
        for w in self.worlds() {
            for player in self.game.players() {
                for index in 0..self.game.strategy_count(player) {
                    let target = self.closest_state(w, StrategyId { player, index });
                    if target == w {
                        continue;
                    }
                    let _ = writeln!(
                        out,
                        "  w{}_{} -> w{}_{} [label=\"f:{}->{}\"];",
                        w.profile.0,
                        w.level,
                        target.profile.0,
                        target.level,
                        self.game.player_label(player),
                        self.game.strategy_label(StrategyId { player, index })
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the canonical structure. `max_level: None` selects the automatic
/// bound, fixpoint level + 2, which is enough to certify every theorem level.
/// Rejects games with payoff ties.
pub fn build_canonical(game: &Game, max_level: Option<usize>) -> Result<CanonicalStructure, TiesError> {
    let trace = compute_trace(game)?;
    let max_level = max_level.unwrap_or(trace.fixpoint_level + 2);
    let num_profiles = game.num_profiles();
    let world_count = (max_level + 1) * num_profiles;

    let mut class_of = Vec::with_capacity(world_count);
    let mut impossible_valuation = Vec::with_capacity(world_count);
    for level in 0..=max_level {
        for profile in game.profile_ids() {
            let class = if level >= 1 && trace.is_member(profile, level) {
                if level == 1 {
                    WorldClass::NonnormalPossible
                } else {
                    WorldClass::Normal
                }
            } else {
                WorldClass::Impossible
            };
            class_of.push(class);
            impossible_valuation.push(match class {
                WorldClass::Impossible => Some(ImpossibleWorldFacts {
                    rat: true,
                    knows_strategies: true,
                    play: profile,
                    omn_level: level,
                }),
                _ => None,
            });
        }
    }

    let mut closest = Vec::with_capacity(world_count);
    for level in 0..=max_level {
        for profile in game.profile_ids() {
            let mut per_player = Vec::with_capacity(game.player_count());
            for player in game.players() {
                let current = game.strategy_of(profile, player);
                let mut per_strategy = Vec::with_capacity(game.strategy_count(player));
                for strategy in 0..game.strategy_count(player) {
                    per_strategy.push(if level == 0 {
                        World { profile: game.with_strategy(profile, player, strategy), level: 0 }
                    } else if strategy == current {
                        World { profile, level }
                    } else {
                        closest_deviation(game, &trace, profile, level, player, strategy)
                    });
                }
                per_player.push(per_strategy);
            }
            closest.push(per_player);
        }
    }

    Ok(CanonicalStructure {
        game: game.clone(),
        max_level,
        trace,
        class_of,
        closest,
        impossible_valuation,
        epistemic: EpistemicRelation::Equality,
    })
}

/// Cases 3 and 4 of the closest-state function: a genuine deviation from a
/// world above level 0.
fn closest_deviation(
    game: &Game,
    trace: &LevelTrace,
    profile: ProfileId,
    level: usize,
    player: PlayerId,
    strategy: usize,
) -> World {
    let below = level - 1;
    // Case 3: survivors one level down that contain the deviating strategy;
    // pick the one worst for the deviator.
    let mut worst: Option<(i64, ProfileId)> = None;
    let mut worst_count = 0usize;
    for &candidate in trace.members_at(below) {
        if game.strategy_of(candidate, player) == strategy {
            let v = game.payoff_by_id(candidate, player);
            match worst {
                Some((w, _)) if w < v => {}
                Some((w, _)) if w == v => worst_count += 1,
                _ => {
                    worst = Some((v, candidate));
                    worst_count = 1;
                }
            }
        }
    }
    match worst {
        Some((_, target)) => {
            assert_eq!(
                worst_count, 1,
                "closest-state argmin must be unique; the game has payoff ties"
            );
            World { profile: target, level: below }
        }
        // Case 4: no surviving support for the deviation.
        None => World { profile: game.with_strategy(profile, player, strategy), level: below },
    }
}
