//! Three-regime model checking over a canonical structure.
//!
//! * Impossible worlds hold whatever their valuation table says: the stored
//!   rationality/knowledge bits, the stored played profile, omniscience at the
//!   stored level only — plus the classical closure of those atoms under the
//!   propositional connectives. Necessity is never true there, possibility and
//!   deviation-possibility always are.
//! * Non-normal possible worlds use the real atom definitions and classical
//!   connectives, but the same fixed modal rules: `box` never, `dia` and
//!   `dia_c` always.
//! * Normal worlds get the full semantics: `box(a)` iff `a` holds at every
//!   logically accessible world for every agent, `dia` is its dual, and
//!   `dia_c(a)` iff some agent's closest-state deviation is both logically
//!   accessible and satisfies `a`.
//!
//! Results are memoized per (world, formula) and per (world, omniscience
//! level); the cache only ever reflects one immutable structure.

use std::collections::HashMap;

use super::Formula;
use crate::game::StrategyId;
use crate::kripke::{CanonicalStructure, World, WorldClass};

/// A model-checking session against one structure, carrying the memo tables.
pub struct EvalContext<'a> {
    structure: &'a CanonicalStructure,
    memo: HashMap<usize, HashMap<Formula, bool>>,
    omn_memo: HashMap<(usize, usize), bool>,
}

impl<'a> EvalContext<'a> {
    pub fn new(structure: &'a CanonicalStructure) -> Self {
        EvalContext { structure, memo: HashMap::new(), omn_memo: HashMap::new() }
    }

    pub fn structure(&self) -> &'a CanonicalStructure {
        self.structure
    }

    /// Truth of `formula` at `w`.
    pub fn eval(&mut self, w: World, formula: &Formula) -> bool {
        let wid = self.structure.world_id(w);
        if let Some(&hit) = self.memo.get(&wid).and_then(|m| m.get(formula)) {
            return hit;
        }
        let s = self.structure;
        let class = s.class(w);
        let value = match formula {
            Formula::True => true,
            Formula::Rat => match class {
                WorldClass::Impossible => s.impossible_facts(w).expect("valuation table").rat,
                _ => self.rat_definition(w),
            },
            Formula::KnowStrategies => match class {
                WorldClass::Impossible => {
                    s.impossible_facts(w).expect("valuation table").knows_strategies
                }
                _ => self.knowledge_definition(w),
            },
            Formula::Omn(k) => self.eval_omniscience(w, *k),
            Formula::Play(id) => match class {
                WorldClass::Impossible => s.impossible_facts(w).expect("valuation table").play == *id,
                _ => w.profile == *id,
            },
            Formula::PlayBy(strategy) => {
                let played = match class {
                    WorldClass::Impossible => s.impossible_facts(w).expect("valuation table").play,
                    _ => w.profile,
                };
                s.game.strategy_of(played, strategy.player) == strategy.index
            }
            Formula::Not(a) => !self.eval(w, a),
            Formula::And(a, b) => self.eval(w, a) && self.eval(w, b),
            Formula::Or(a, b) => self.eval(w, a) || self.eval(w, b),
            Formula::Implies(a, b) => !self.eval(w, a) || self.eval(w, b),
            Formula::Iff(a, b) => self.eval(w, a) == self.eval(w, b),
            Formula::Necessarily(a) => match class {
                WorldClass::Normal => self.necessity_at_normal(w, a),
                _ => false,
            },
            Formula::Possibly(a) => match class {
                // Dual of necessity: some agent has an accessible world with `a`.
                WorldClass::Normal => self.some_accessible(w, a),
                _ => true,
            },
            Formula::PossibleDeviation(a) => match class {
                WorldClass::Normal => self.some_accessible_deviation(w, a),
                _ => true,
            },
        };
        self.memo.entry(wid).or_default().insert(formula.clone(), value);
        value
    }

    /// `box` semantics: `a` at every world any agent can logically access.
    fn necessity_at_normal(&mut self, w: World, a: &Formula) -> bool {
        let worlds: Vec<World> = self.structure.worlds().collect();
        for agent in self.structure.game.players() {
            for target in &worlds {
                if self.structure.logically_accessible(w, *target, agent) && !self.eval(*target, a) {
                    return false;
                }
            }
        }
        true
    }

    fn some_accessible(&mut self, w: World, a: &Formula) -> bool {
        let worlds: Vec<World> = self.structure.worlds().collect();
        for agent in self.structure.game.players() {
            for target in &worlds {
                if self.structure.logically_accessible(w, *target, agent) && self.eval(*target, a) {
                    return true;
                }
            }
        }
        false
    }

    /// `dia_c` semantics at a normal world: agents i, j and a strategy
    /// `s′ ≠ σ_i(w)` with `L_j(w, f(w,i,s′))` and `a` at `f(w,i,s′)`.
    fn some_accessible_deviation(&mut self, w: World, a: &Formula) -> bool {
        let game = &self.structure.game;
        for player in game.players() {
            let current = game.strategy_of(w.profile, player);
            for index in 0..game.strategy_count(player) {
                if index == current {
                    continue;
                }
                let target = self.structure.closest_state(w, StrategyId { player, index });
                let accessible =
                    game.players().any(|j| self.structure.logically_accessible(w, target, j));
                if accessible && self.eval(target, a) {
                    return true;
                }
            }
        }
        false
    }

    /// Rationality at a logically possible world: no accessible closest-state
    /// deviation pays any agent strictly more than staying put. (Impossible
    /// worlds read their valuation table instead; see [`EvalContext::eval_rat`].)
    fn rat_definition(&self, w: World) -> bool {
        let s = self.structure;
        let game = &s.game;
        game.players().all(|player| {
            let here = game.payoff_by_id(w.profile, player);
            (0..game.strategy_count(player)).all(|index| {
                let target = s.closest_state(w, StrategyId { player, index });
                !s.logically_accessible(w, target, player)
                    || here >= game.payoff_by_id(target.profile, player)
            })
        })
    }

    /// Knowledge of the strategy profile: every epistemically accessible world
    /// plays the same profile, for every agent.
    fn knowledge_definition(&self, w: World) -> bool {
        let s = self.structure;
        s.game.players().all(|agent| {
            s.worlds().all(|other| {
                !s.epistemically_accessible(w, other, agent) || other.profile == w.profile
            })
        })
    }

    /// `RAT` as an operation: table lookup at impossible worlds, the deviation
    /// definition elsewhere.
    pub fn eval_rat(&mut self, w: World) -> bool {
        self.eval(w, &Formula::Rat)
    }

    /// `KS` as an operation.
    pub fn eval_knowledge(&mut self, w: World) -> bool {
        self.eval(w, &Formula::KnowStrategies)
    }

    /// Level-k logical omniscience, `k ≥ 1`. The recursive definition is the
    /// semantics; the canonical "level = k" shortcut is only ever used by the
    /// verification suite as a cross-check.
    ///
    /// * impossible worlds: true iff the valuation table's level is `k`;
    /// * `k = 1`: true iff the world is logically possible but non-normal;
    /// * `k ≥ 2`: the world is normal, every closest-state deviation satisfies
    ///   level-(k-1) omniscience, and some world with the same profile,
    ///   logically accessible for all agents, satisfies level-(k-1).
    pub fn eval_omniscience(&mut self, w: World, k: usize) -> bool {
        assert!(k >= 1, "omniscience levels start at 1");
        let wid = self.structure.world_id(w);
        if let Some(&hit) = self.omn_memo.get(&(wid, k)) {
            return hit;
        }
        let s = self.structure;
        let value = match s.class(w) {
            WorldClass::Impossible => {
                s.impossible_facts(w).expect("valuation table").omn_level == k
            }
            WorldClass::NonnormalPossible if k == 1 => true,
            WorldClass::Normal if k >= 2 => {
                self.deviations_satisfy_level(w, k - 1) && self.has_same_profile_witness(w, k - 1)
            }
            _ => false,
        };
        self.omn_memo.insert((wid, k), value);
        value
    }

    fn deviations_satisfy_level(&mut self, w: World, k: usize) -> bool {
        let game = &self.structure.game;
        for player in game.players() {
            let current = game.strategy_of(w.profile, player);
            for index in 0..game.strategy_count(player) {
                if index == current {
                    continue;
                }
                let target = self.structure.closest_state(w, StrategyId { player, index });
                if !self.eval_omniscience(target, k) {
                    return false;
                }
            }
        }
        true
    }

    fn has_same_profile_witness(&mut self, w: World, k: usize) -> bool {
        let worlds: Vec<World> = self.structure.worlds().collect();
        for candidate in worlds {
            if candidate.profile != w.profile {
                continue;
            }
            let accessible = self
                .structure
                .game
                .players()
                .all(|agent| self.structure.logically_accessible(w, candidate, agent));
            if accessible && self.eval_omniscience(candidate, k) {
                return true;
            }
        }
        false
    }

    /// Necessity of `a` at `w` as an operation (`box`).
    pub fn necessity(&mut self, w: World, a: &Formula) -> bool {
        self.eval(w, &Formula::necessarily(a.clone()))
    }

    /// Possibility of `a` at `w` as an operation (`dia`).
    pub fn possibility(&mut self, w: World, a: &Formula) -> bool {
        self.eval(w, &Formula::possibly(a.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::{Game, StrategyProfile};
    use crate::kripke::{build_canonical, EpistemicRelation};
    use crate::logic::parse_formula;

    fn world(game: &Game, literal: &[usize], level: usize) -> World {
        World { profile: game.profile_id(&StrategyProfile(literal.to_vec())), level }
    }

    /// Reference evaluator: same semantics, no memo, written as plain
    /// recursion so the memoized path has an independent mirror.
    fn naive_eval(s: &CanonicalStructure, w: World, f: &Formula) -> bool {
        match f {
            Formula::True => true,
            Formula::Rat => match s.class(w) {
                WorldClass::Impossible => s.impossible_facts(w).unwrap().rat,
                _ => s.game.players().all(|p| {
                    (0..s.game.strategy_count(p)).all(|i| {
                        let t = s.closest_state(w, StrategyId { player: p, index: i });
                        !s.logically_accessible(w, t, p)
                            || s.game.payoff_by_id(w.profile, p)
                                >= s.game.payoff_by_id(t.profile, p)
                    })
                }),
            },
            Formula::KnowStrategies => match s.class(w) {
                WorldClass::Impossible => s.impossible_facts(w).unwrap().knows_strategies,
                _ => s.game.players().all(|agent| {
                    s.worlds().all(|o| {
                        !s.epistemically_accessible(w, o, agent) || o.profile == w.profile
                    })
                }),
            },
            Formula::Omn(k) => naive_omn(s, w, *k),
            Formula::Play(id) => match s.class(w) {
                WorldClass::Impossible => s.impossible_facts(w).unwrap().play == *id,
                _ => w.profile == *id,
            },
            Formula::PlayBy(strategy) => {
                let played = match s.class(w) {
                    WorldClass::Impossible => s.impossible_facts(w).unwrap().play,
                    _ => w.profile,
                };
                s.game.strategy_of(played, strategy.player) == strategy.index
            }
            Formula::Not(a) => !naive_eval(s, w, a),
            Formula::And(a, b) => naive_eval(s, w, a) && naive_eval(s, w, b),
            Formula::Or(a, b) => naive_eval(s, w, a) || naive_eval(s, w, b),
            Formula::Implies(a, b) => !naive_eval(s, w, a) || naive_eval(s, w, b),
            Formula::Iff(a, b) => naive_eval(s, w, a) == naive_eval(s, w, b),
            Formula::Necessarily(a) => {
                s.class(w) == WorldClass::Normal
                    && s.game.players().all(|agent| {
                        s.worlds().all(|o| {
                            !s.logically_accessible(w, o, agent) || naive_eval(s, o, a)
                        })
                    })
            }
            Formula::Possibly(a) => {
                s.class(w) != WorldClass::Normal
                    || s.game.players().any(|agent| {
                        s.worlds().any(|o| {
                            s.logically_accessible(w, o, agent) && naive_eval(s, o, a)
                        })
                    })
            }
            Formula::PossibleDeviation(a) => {
                s.class(w) != WorldClass::Normal || {
                    s.game.players().any(|p| {
                        (0..s.game.strategy_count(p)).any(|i| {
                            i != s.game.strategy_of(w.profile, p) && {
                                let t = s.closest_state(w, StrategyId { player: p, index: i });
                                s.game
                                    .players()
                                    .any(|j| s.logically_accessible(w, t, j))
                                    && naive_eval(s, t, a)
                            }
                        })
                    })
                }
            }
        }
    }

    fn naive_omn(s: &CanonicalStructure, w: World, k: usize) -> bool {
        match s.class(w) {
            WorldClass::Impossible => s.impossible_facts(w).unwrap().omn_level == k,
            WorldClass::NonnormalPossible => k == 1,
            WorldClass::Normal => {
                k >= 2
                    && s.game.players().all(|p| {
                        (0..s.game.strategy_count(p)).all(|i| {
                            i == s.game.strategy_of(w.profile, p)
                                || naive_omn(
                                    s,
                                    s.closest_state(w, StrategyId { player: p, index: i }),
                                    k - 1,
                                )
                        })
                    })
                    && s.worlds().any(|o| {
                        o.profile == w.profile
                            && s.game
                                .players()
                                .all(|agent| s.logically_accessible(w, o, agent))
                            && naive_omn(s, o, k - 1)
                    })
            }
        }
    }

    #[test]
    fn nonnormal_worlds_fix_the_modalities() {
        let game = fixtures::two_round_game();
        let s = build_canonical(&game, None).unwrap();
        let mut ctx = EvalContext::new(&s);
        let w = world(&game, &[1, 1], 1); // ((B,Y),1), non-normal
        assert!(!ctx.eval(w, &Formula::necessarily(Formula::True)));
        assert!(ctx.eval(w, &Formula::possibly(Formula::not(Formula::True))));
        assert!(ctx.eval(w, &Formula::possible_deviation(Formula::not(Formula::True))));
    }

    #[test]
    fn impossible_worlds_read_their_valuation() {
        let game = fixtures::two_round_game();
        let s = build_canonical(&game, None).unwrap();
        let mut ctx = EvalContext::new(&s);
        let w = world(&game, &[0, 1], 2); // ((A,Y),2), impossible
        assert!(ctx.eval(w, &Formula::Rat));
        assert!(ctx.eval(w, &Formula::KnowStrategies));
        assert!(ctx.eval(w, &parse_formula("play(A,Y)", &game).unwrap()));
        assert!(!ctx.eval(w, &parse_formula("play(B,X)", &game).unwrap()));
        assert!(ctx.eval(w, &parse_formula("play_2(Y)", &game).unwrap()));
        assert!(ctx.eval(w, &Formula::Omn(2)));
        assert!(!ctx.eval(w, &Formula::Omn(1)));
        // Classical closure over the table.
        assert!(ctx.eval(w, &parse_formula("RAT & !play(B,X)", &game).unwrap()));
        // Fixed modal rules.
        assert!(!ctx.eval(w, &Formula::necessarily(Formula::True)));
        assert!(ctx.eval(w, &Formula::possibly(Formula::not(Formula::True))));
    }

    #[test]
    fn theorem_formula_holds_at_the_equilibrium_world() {
        let game = fixtures::two_round_game();
        let s = build_canonical(&game, None).unwrap();
        let mut ctx = EvalContext::new(&s);
        let w = world(&game, &[1, 0], 2); // ((B,X),2)
        let f = parse_formula("play(B,X) & box(RAT) & box(KS) & omn(2)", &game).unwrap();
        assert!(ctx.eval(w, &f));
    }

    #[test]
    fn rationality_reference_values() {
        let game = fixtures::two_round_game();
        let s = build_canonical(&game, None).unwrap();
        let mut ctx = EvalContext::new(&s);
        // ((B,X),2): P2's deviation to Y lands at ((B,Y),1) ∈ Λ with payoff 1 < 2.
        assert!(ctx.eval_rat(world(&game, &[1, 0], 2)));
        // Level-0 worlds: every deviation stays at level 0, outside Λ, but level-0
        // worlds are impossible anyway — table says rational.
        assert!(ctx.eval_rat(world(&game, &[0, 0], 0)));
        // Non-normal world: all deviations accessible, none improving.
        assert!(ctx.eval_rat(world(&game, &[1, 1], 1)));
    }

    #[test]
    fn corrupted_closest_entry_breaks_rationality() {
        let game = fixtures::two_round_game();
        let mut s = build_canonical(&game, None).unwrap();
        // Redirect P1's deviation A at ((B,Y),1) to the u_1-best world ((A,X),0).
        let w = world(&game, &[1, 1], 1);
        let wid = s.world_id(w);
        s.closest[wid][0][0] = world(&game, &[0, 0], 0);
        let mut ctx = EvalContext::new(&s);
        assert!(!ctx.eval_rat(w), "an accessible improving deviation violates RAT");
    }

    #[test]
    fn knowledge_fails_with_profile_crossing_links() {
        let game = fixtures::two_round_game();
        let mut s = build_canonical(&game, None).unwrap();
        let a = world(&game, &[1, 0], 2);
        let b = world(&game, &[1, 1], 1);
        s.epistemic = EpistemicRelation::EqualityPlus(vec![(a, b)]);
        let mut ctx = EvalContext::new(&s);
        assert!(!ctx.eval_knowledge(a), "K links a world playing a different profile");
        assert!(ctx.eval_knowledge(b), "only the linked source is affected");
    }

    #[test]
    fn omniscience_reference_values() {
        let game = fixtures::two_round_game();
        let s = build_canonical(&game, None).unwrap();
        let mut ctx = EvalContext::new(&s);
        assert!(ctx.eval_omniscience(world(&game, &[1, 1], 1), 1));
        assert!(ctx.eval_omniscience(world(&game, &[1, 0], 2), 2));
        // Wrong level: deviations from ((B,X),2) land at level 1, which cannot
        // carry level-2 omniscience.
        assert!(!ctx.eval_omniscience(world(&game, &[1, 0], 2), 3));
        assert!(!ctx.eval_omniscience(world(&game, &[1, 0], 2), 1));
    }

    #[test]
    fn necessity_reference_values() {
        let game = fixtures::two_round_game();
        let s = build_canonical(&game, None).unwrap();
        let mut ctx = EvalContext::new(&s);
        let normal = world(&game, &[1, 0], 2);
        assert!(ctx.necessity(normal, &Formula::Rat));
        assert!(!ctx.necessity(world(&game, &[1, 1], 1), &Formula::Rat));
        // Not every Λ world plays (B,X): ((B,Y),1) does not.
        let play_bx = parse_formula("play(B,X)", &game).unwrap();
        assert!(!ctx.necessity(normal, &play_bx));
        assert!(ctx.possibility(normal, &play_bx));
    }

    #[test]
    fn never_necessarily_necessary_rationality() {
        // With non-normal worlds present, box(box(RAT)) fails at every normal
        // world: some accessible world is non-normal, where box never holds.
        let game = fixtures::two_round_game();
        let s = build_canonical(&game, None).unwrap();
        let mut ctx = EvalContext::new(&s);
        let f = parse_formula("box(box(RAT))", &game).unwrap();
        for w in s.worlds() {
            assert!(!ctx.eval(w, &f));
        }
    }

    #[test]
    fn derived_connectives_match_their_desugarings() {
        let game = fixtures::prisoners_dilemma();
        let s = build_canonical(&game, None).unwrap();
        let mut ctx = EvalContext::new(&s);
        let a = parse_formula("play_1(C)", &game).unwrap();
        let b = Formula::Rat;
        for w in s.worlds() {
            let or = ctx.eval(w, &Formula::or(a.clone(), b.clone()));
            let or_desugared = ctx.eval(
                w,
                &Formula::not(Formula::and(Formula::not(a.clone()), Formula::not(b.clone()))),
            );
            assert_eq!(or, or_desugared);
            let implies = ctx.eval(w, &Formula::implies(a.clone(), b.clone()));
            let implies_desugared = ctx.eval(w, &Formula::or(Formula::not(a.clone()), b.clone()));
            assert_eq!(implies, implies_desugared);
            let iff = ctx.eval(w, &Formula::iff(a.clone(), b.clone()));
            let iff_both = ctx.eval(
                w,
                &Formula::and(
                    Formula::implies(a.clone(), b.clone()),
                    Formula::implies(b.clone(), a.clone()),
                ),
            );
            assert_eq!(iff, iff_both);
        }
    }

    #[test]
    fn memoized_matches_naive_on_reference_games() {
        let game = fixtures::two_round_game();
        let s = build_canonical(&game, None).unwrap();
        let formulas = [
            "RAT",
            "KS",
            "omn(1)",
            "omn(2)",
            "omn(3)",
            "play(B,X)",
            "play_2(Y)",
            "box(RAT)",
            "dia(play(B,Y))",
            "dia_c(play_1(A))",
            "box(RAT & KS) -> omn(2)",
            "box(box(RAT))",
            "!(RAT & !KS) | dia_c(true)",
        ];
        let mut ctx = EvalContext::new(&s);
        for text in formulas {
            let f = parse_formula(text, &game).unwrap();
            for w in s.worlds() {
                assert_eq!(ctx.eval(w, &f), naive_eval(&s, w, &f), "{text} at {w:?}");
            }
        }
    }

    #[test]
    fn possibility_is_dual_to_necessity() {
        let game = fixtures::two_round_game();
        let s = build_canonical(&game, None).unwrap();
        let mut ctx = EvalContext::new(&s);
        let bodies =
            ["RAT", "play(B,X)", "play_1(A)", "omn(1)", "!KS", "play(A,Y) | play(B,Y)"];
        for text in bodies {
            let a = parse_formula(text, &game).unwrap();
            for w in s.worlds() {
                let dia = ctx.eval(w, &Formula::possibly(a.clone()));
                let dual =
                    ctx.eval(w, &Formula::not(Formula::necessarily(Formula::not(a.clone()))));
                assert_eq!(dia, dual, "{text} at {w:?}");
            }
        }
    }
}
