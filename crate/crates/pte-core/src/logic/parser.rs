//! Recursive-descent parser for the formula syntax described in the module
//! docs. Strategy and player references are resolved against the game while
//! parsing, so errors carry both a byte offset and the offending label.

use thiserror::Error;

use super::Formula;
use crate::game::{Game, PlayerId};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(usize),
    Not,
    And,
    Or,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '!' => {
                tokens.push((i, Token::Not));
                i += 1;
            }
            '&' => {
                tokens.push((i, Token::And));
                i += 1;
            }
            '|' => {
                tokens.push((i, Token::Or));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            ',' => {
                tokens.push((i, Token::Comma));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push((i, Token::Arrow));
                    i += 2;
                } else {
                    return err(i, "expected `->`");
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    tokens.push((i, Token::DoubleArrow));
                    i += 3;
                } else {
                    return err(i, "expected `<->`");
                }
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let value: usize = text[start..i]
                    .parse()
                    .map_err(|_| ParseError { position: start, message: "integer too large".into() })?;
                tokens.push((start, Token::Int(value)));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() {
                    let c = bytes[i] as char;
                    if c.is_ascii_alphanumeric() || c == '_' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                tokens.push((start, Token::Ident(text[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character `{c}`")),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    game: &'a Game,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn advance(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token, describe: &str) -> Result<(), ParseError> {
        match self.advance() {
            Some((_, t)) if t == want => Ok(()),
            Some((p, _)) => err(p, format!("expected {describe}")),
            None => err(self.end, format!("expected {describe}")),
        }
    }

    // iff := implies (`<->` implies)*        left-associative
    fn parse_iff(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.parse_implies()?;
        while self.peek() == Some(&Token::DoubleArrow) {
            self.advance();
            let right = self.parse_implies()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    // implies := or (`->` implies)?          right-associative
    fn parse_implies(&mut self) -> Result<Formula, ParseError> {
        let left = self.parse_or()?;
        if self.peek() == Some(&Token::Arrow) {
            self.advance();
            let right = self.parse_implies()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.parse_and()?;
        while self.peek() == Some(&Token::Or) {
            self.advance();
            let right = self.parse_and()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.parse_unary()?;
        while self.peek() == Some(&Token::And) {
            self.advance();
            let right = self.parse_unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    // Negation and the modalities bind like `!`.
    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Not) => {
                self.advance();
                Ok(Formula::not(self.parse_unary()?))
            }
            Some(Token::Ident(name)) if matches!(name.as_str(), "box" | "dia" | "dia_c") => {
                let (_, token) = self.advance().unwrap();
                let inner = self.parse_unary()?;
                Ok(match token {
                    Token::Ident(n) if n == "box" => Formula::necessarily(inner),
                    Token::Ident(n) if n == "dia" => Formula::possibly(inner),
                    _ => Formula::possible_deviation(inner),
                })
            }
            _ => self.parse_primary(),
        }
    }

    fn parse_primary(&mut self) -> Result<Formula, ParseError> {
        match self.advance() {
            Some((_, Token::LParen)) => {
                let inner = self.parse_iff()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some((p, Token::Ident(name))) => self.parse_atom(p, &name),
            Some((p, _)) => err(p, "expected a formula"),
            None => err(self.end, "expected a formula"),
        }
    }

    fn parse_atom(&mut self, at: usize, name: &str) -> Result<Formula, ParseError> {
        match name {
            "true" => Ok(Formula::True),
            "RAT" => Ok(Formula::Rat),
            "KS" => Ok(Formula::KnowStrategies),
            "omn" => {
                self.expect(Token::LParen, "`(` after omn")?;
                let level = match self.advance() {
                    Some((_, Token::Int(k))) if k >= 1 => k,
                    Some((p, Token::Int(_))) => return err(p, "omniscience level must be >= 1"),
                    Some((p, _)) => return err(p, "expected an omniscience level"),
                    None => return err(self.end, "expected an omniscience level"),
                };
                self.expect(Token::RParen, "`)`")?;
                Ok(Formula::Omn(level))
            }
            "play" => {
                self.expect(Token::LParen, "`(` after play")?;
                let mut choices = Vec::new();
                loop {
                    let player = PlayerId(choices.len());
                    if player.0 >= self.game.player_count() {
                        return err(self.position(), "too many strategies in play(...)");
                    }
                    let (p, label) = self.label()?;
                    let strategy = self
                        .game
                        .resolve_strategy(player, &label)
                        .map_err(|e| ParseError { position: p, message: e.to_string() })?;
                    choices.push(strategy.index);
                    match self.advance() {
                        Some((_, Token::Comma)) => continue,
                        Some((_, Token::RParen)) => break,
                        Some((p, _)) => return err(p, "expected `,` or `)`"),
                        None => return err(self.end, "expected `,` or `)`"),
                    }
                }
                if choices.len() != self.game.player_count() {
                    return err(
                        at,
                        format!(
                            "play(...) names {} strategies but the game has {} players",
                            choices.len(),
                            self.game.player_count()
                        ),
                    );
                }
                let id = self.game.profile_id(&crate::game::StrategyProfile(choices));
                Ok(Formula::Play(id))
            }
            _ => {
                if let Some(index) = name.strip_prefix("play_") {
                    let player: usize = match index.parse::<usize>() {
                        Ok(k) if k >= 1 && k <= self.game.player_count() => k - 1,
                        Ok(_) => {
                            return err(
                                at,
                                format!(
                                    "player index out of range (game has {} players)",
                                    self.game.player_count()
                                ),
                            )
                        }
                        Err(_) => return err(at, format!("unknown atom `{name}`")),
                    };
                    self.expect(Token::LParen, "`(` after play_i")?;
                    let (p, label) = self.label()?;
                    let strategy = self
                        .game
                        .resolve_strategy(PlayerId(player), &label)
                        .map_err(|e| ParseError { position: p, message: e.to_string() })?;
                    self.expect(Token::RParen, "`)`")?;
                    Ok(Formula::PlayBy(strategy))
                } else {
                    err(at, format!("unknown atom `{name}`"))
                }
            }
        }
    }

    /// A strategy label: an identifier or a bare integer.
    fn label(&mut self) -> Result<(usize, String), ParseError> {
        match self.advance() {
            Some((p, Token::Ident(s))) => Ok((p, s)),
            Some((p, Token::Int(v))) => Ok((p, v.to_string())),
            Some((p, _)) => err(p, "expected a strategy label"),
            None => err(self.end, "expected a strategy label"),
        }
    }
}

/// Parses a formula against `game`. See the module docs for the grammar.
pub fn parse_formula(text: &str, game: &Game) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { game, tokens, pos: 0, end: text.len() };
    let formula = parser.parse_iff()?;
    if parser.pos < parser.tokens.len() {
        return err(parser.position(), "unexpected trailing input");
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::{ProfileId, StrategyId};

    #[test]
    fn parses_spec_examples() {
        let game = fixtures::two_round_game();
        assert_eq!(
            parse_formula("box(RAT) & play(B,X)", &game).unwrap(),
            Formula::and(
                Formula::necessarily(Formula::Rat),
                Formula::Play(ProfileId(2)), // (B,X)
            )
        );
        assert_eq!(
            parse_formula("dia_c(play_1(A))", &game).unwrap(),
            Formula::possible_deviation(Formula::PlayBy(StrategyId {
                player: PlayerId(0),
                index: 0,
            }))
        );
    }

    #[test]
    fn precedence_not_binds_tighter_than_and_than_or() {
        let game = fixtures::two_round_game();
        assert_eq!(
            parse_formula("!RAT & KS | true", &game).unwrap(),
            Formula::or(
                Formula::and(Formula::not(Formula::Rat), Formula::KnowStrategies),
                Formula::True,
            )
        );
    }

    #[test]
    fn implication_is_right_associative() {
        let game = fixtures::two_round_game();
        assert_eq!(
            parse_formula("RAT -> KS -> true", &game).unwrap(),
            Formula::implies(Formula::Rat, Formula::implies(Formula::KnowStrategies, Formula::True))
        );
    }

    #[test]
    fn modalities_bind_like_negation() {
        let game = fixtures::two_round_game();
        assert_eq!(
            parse_formula("box !RAT & KS", &game).unwrap(),
            Formula::and(
                Formula::necessarily(Formula::not(Formula::Rat)),
                Formula::KnowStrategies
            )
        );
    }

    #[test]
    fn rejects_bad_input_with_positions() {
        let game = fixtures::two_round_game();
        let e = parse_formula("play(B,Q)", &game).unwrap_err();
        assert_eq!(e.position, 7);
        assert!(e.message.contains("no strategy labeled `Q`"));

        let e = parse_formula("play_3(A)", &game).unwrap_err();
        assert!(e.message.contains("player index out of range"));

        let e = parse_formula("RAT &", &game).unwrap_err();
        assert_eq!(e.position, 5);

        let e = parse_formula("omn(0)", &game).unwrap_err();
        assert!(e.message.contains(">= 1"));

        let e = parse_formula("RAT KS", &game).unwrap_err();
        assert!(e.message.contains("trailing"));

        assert!(parse_formula("frob", &game).is_err());
    }

    #[test]
    fn play_requires_full_profiles() {
        let game = fixtures::two_round_game();
        assert!(parse_formula("play(B)", &game).is_err());
        assert!(parse_formula("play(B,X,B)", &game).is_err());
    }
}
