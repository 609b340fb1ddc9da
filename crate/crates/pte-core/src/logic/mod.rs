//! The modal language and its evaluation.
//!
//! Concrete syntax (ASCII):
//!
//! ```text
//! atoms        true   RAT   KS   omn(k)   play(B,X)   play_1(A)
//! connectives  !a   a & b   a | b   a -> b   a <-> b
//! modalities   box(a)   dia(a)   dia_c(a)
//! ```
//!
//! Precedence, tightest first: `!` and the modalities, `&`, `|`, `->`
//! (right-associative), `<->`. `play(...)` names one strategy per player in
//! player order; `play_k(...)` names one strategy of the k-th player
//! (1-based). `omn(k)` is level-k bounded omniscience, `RAT` rationality,
//! `KS` "all agents know the strategy profile", `dia_c` possibility
//! restricted to worlds the closest-state function can reach (a deviation
//! being logically possible).
//!
//! Formulas are parsed against a game so strategy labels resolve at parse
//! time; see [`parse_formula`]. Rendering with [`Formula::render`] emits the
//! canonical spelling (minimal parentheses), so render ∘ parse normalizes.

mod eval;
mod parser;

pub use eval::EvalContext;
pub use parser::{parse_formula, ParseError};

use crate::game::{Game, ProfileId, StrategyId};

/// A formula of the modal language, with strategy references already resolved
/// against a game.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    /// `RAT`: no accessible deviation of any agent improves that agent.
    Rat,
    /// `KS`: every agent knows the strategy profile.
    KnowStrategies,
    /// `omn(k)`: level-k logical omniscience, `k ≥ 1`.
    Omn(usize),
    /// `play(...)`: the full profile played at the world.
    Play(ProfileId),
    /// `play_i(...)`: one agent's strategy at the world.
    PlayBy(StrategyId),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// `box(a)`: necessity — `a` at every logically accessible world, for
    /// every agent. Never holds at non-normal or impossible worlds.
    Necessarily(Box<Formula>),
    /// `dia(a)`: possibility, `!box(!a)`. Always holds outside normal worlds.
    Possibly(Box<Formula>),
    /// `dia_c(a)`: some agent's logically accessible closest-state deviation
    /// satisfies `a`. Always holds outside normal worlds.
    PossibleDeviation(Box<Formula>),
}

impl Formula {
    // Free-function constructor named after the connective, like its peers
    // below; not an `ops::Not` impl, which would invert a truth value we
    // don't have until evaluation.
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }
    pub fn necessarily(a: Formula) -> Formula {
        Formula::Necessarily(Box::new(a))
    }
    pub fn possibly(a: Formula) -> Formula {
        Formula::Possibly(Box::new(a))
    }
    pub fn possible_deviation(a: Formula) -> Formula {
        Formula::PossibleDeviation(Box::new(a))
    }

    /// Binding strength for the renderer; higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 0,
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }

    /// Canonical concrete syntax with minimal parentheses; labels are taken
    /// from `game`. `parse_formula(f.render(game), game)` returns `f` back.
    pub fn render(&self, game: &Game) -> String {
        fn child(f: &Formula, game: &Game, parent: u8, tighten: bool) -> String {
            let need = f.precedence() < parent || (tighten && f.precedence() == parent);
            if need {
                format!("({})", f.render(game))
            } else {
                f.render(game)
            }
        }
        match self {
            Formula::True => "true".into(),
            Formula::Rat => "RAT".into(),
            Formula::KnowStrategies => "KS".into(),
            Formula::Omn(k) => format!("omn({k})"),
            Formula::Play(id) => {
                let labels: Vec<&str> = game
                    .players()
                    .map(|p| {
                        game.strategy_label(StrategyId {
                            player: p,
                            index: game.strategy_of(*id, p),
                        })
                    })
                    .collect();
                format!("play({})", labels.join(","))
            }
            Formula::PlayBy(s) => {
                format!("play_{}({})", s.player.0 + 1, game.strategy_label(*s))
            }
            Formula::Not(a) => format!("!{}", child(a, game, 4, false)),
            Formula::And(a, b) => {
                format!("{} & {}", child(a, game, 3, false), child(b, game, 3, true))
            }
            Formula::Or(a, b) => {
                format!("{} | {}", child(a, game, 2, false), child(b, game, 2, true))
            }
            // `->` is right-associative: parenthesize a left implication.
            Formula::Implies(a, b) => {
                format!("{} -> {}", child(a, game, 1, true), child(b, game, 1, false))
            }
            Formula::Iff(a, b) => {
                format!("{} <-> {}", child(a, game, 0, false), child(b, game, 0, true))
            }
            Formula::Necessarily(a) => format!("box({})", a.render(game)),
            Formula::Possibly(a) => format!("dia({})", a.render(game)),
            Formula::PossibleDeviation(a) => format!("dia_c({})", a.render(game)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn render_uses_minimal_parentheses() {
        let game = fixtures::two_round_game();
        let f = Formula::implies(
            Formula::or(Formula::Rat, Formula::and(Formula::KnowStrategies, Formula::True)),
            Formula::necessarily(Formula::not(Formula::Omn(2))),
        );
        assert_eq!(f.render(&game), "RAT | KS & true -> box(!omn(2))");
    }

    #[test]
    fn render_parenthesizes_left_implication() {
        let game = fixtures::two_round_game();
        let f = Formula::implies(Formula::implies(Formula::Rat, Formula::True), Formula::Rat);
        assert_eq!(f.render(&game), "(RAT -> true) -> RAT");
        let g = Formula::implies(Formula::Rat, Formula::implies(Formula::True, Formula::Rat));
        assert_eq!(g.render(&game), "RAT -> true -> RAT");
    }
}
