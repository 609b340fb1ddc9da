//! Small named games used across tests, docs, and the CLI examples.

use crate::game::Game;

/// Ordinal Prisoner's Dilemma. Strategies C(ooperate)/D(efect);
/// `u_1`: CC=2, CD=0, DC=3, DD=1, mirrored for player 2.
///
/// Classic landmarks: sole pure Nash profile (D,D); iterated elimination keeps
/// {(C,C),(D,D)} after one round and {(C,C)} from round two on.
pub fn prisoners_dilemma() -> Game {
    Game::new(
        vec!["P1".into(), "P2".into()],
        vec![vec!["C".into(), "D".into()], vec!["C".into(), "D".into()]],
        vec![vec![2, 0, 3, 1], vec![2, 3, 0, 1]],
    )
    .expect("well-formed fixture")
}

/// A 2x2 game whose elimination takes two nontrivial rounds before the
/// fixpoint: survivors {(B,X),(B,Y)} after round one, {(B,X)} from round two.
/// Useful because level-1 and level-2 behavior differ.
pub fn two_round_game() -> Game {
    Game::new(
        vec!["P1".into(), "P2".into()],
        vec![vec!["A".into(), "B".into()], vec!["X".into(), "Y".into()]],
        vec![vec![3, 0, 1, 2], vec![0, 3, 2, 1]],
    )
    .expect("well-formed fixture")
}
