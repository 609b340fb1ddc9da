//! Brute-force reference for the level-k survivor sets.
//!
//! This is a deliberately naive transcription of the survivor-set definition:
//!
//! ```text
//! S_0 = Σ
//! S_k = { σ ∈ S_{k-1} | ∀i: u_i(σ) ≥ max_{τ_i with support in S_{k-1}}
//!                                    min_{τ_{-i} with (τ_i,τ_{-i}) ∈ S_{k-1}} u_i(τ_i,τ_{-i}) }
//! ```
//!
//! It shares nothing with the production elimination path except payoff lookup:
//! profiles are plain index vectors, sets are sorted vectors, and the per-player
//! guarantee is rescanned from scratch for every candidate. Slow on purpose —
//! it exists so the optimized path has something independent to disagree with.

use crate::game::{Game, PlayerId, StrategyProfile};

/// Survivor sets `S_0, S_1, ...` as computed by the brute-force rescan.
/// `levels` ends with either two equal sets (fixpoint confirmed) or an empty
/// set (every profile eliminated).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleLevelSets {
    pub levels: Vec<Vec<Vec<usize>>>,
    pub fixpoint_level: usize,
}

impl OracleLevelSets {
    /// Membership of `S_k`, extending past the stored sequence by the fixpoint
    /// convention (the last set repeats forever).
    pub fn members_at(&self, k: usize) -> &[Vec<usize>] {
        let idx = k.min(self.levels.len() - 1);
        &self.levels[idx]
    }
}

/// Computes survivor sets by full rescans until the sequence repeats or empties.
pub fn oracle_level_sets(game: &Game) -> OracleLevelSets {
    let n_players = game.player_count();
    let counts: Vec<usize> = (0..n_players).map(|p| game.strategy_count(PlayerId(p))).collect();
    let u = |profile: &[usize], player: usize| -> i64 {
        game.payoff(&StrategyProfile(profile.to_vec()), PlayerId(player))
    };

    // Odometer enumeration of every profile.
    let mut all: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0usize; n_players];
    loop {
        all.push(current.clone());
        let mut pos = n_players;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < counts[pos] {
                break;
            }
            current[pos] = 0;
        }
        if current.iter().all(|&c| c == 0) {
            break;
        }
    }

    let mut levels: Vec<Vec<Vec<usize>>> = vec![all];
    loop {
        let previous = levels.last().unwrap().clone();
        let mut next: Vec<Vec<usize>> = Vec::new();
        for candidate in &previous {
            let mut keep = true;
            for player in 0..n_players {
                // max over this player's strategies present in `previous` of the
                // worst payoff among compatible surviving profiles.
                let mut guarantee: Option<i64> = None;
                for strategy in 0..counts[player] {
                    let mut worst: Option<i64> = None;
                    for other in &previous {
                        if other[player] == strategy {
                            let v = u(other, player);
                            worst = Some(match worst {
                                Some(w) if w <= v => w,
                                _ => v,
                            });
                        }
                    }
                    if let Some(w) = worst {
                        guarantee = Some(match guarantee {
                            Some(g) if g >= w => g,
                            _ => w,
                        });
                    }
                }
                let guarantee = guarantee.expect("previous set is nonempty here");
                if u(candidate, player) < guarantee {
                    keep = false;
                    break;
                }
            }
            if keep {
                next.push(candidate.clone());
            }
        }

        let reached_fixpoint = next == previous;
        let emptied = next.is_empty();
        let k = levels.len();
        levels.push(next);
        if reached_fixpoint {
            return OracleLevelSets { levels, fixpoint_level: (k - 1).max(1) };
        }
        if emptied {
            return OracleLevelSets { levels, fixpoint_level: k };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::Game;

    fn sets(o: &OracleLevelSets, k: usize) -> Vec<Vec<usize>> {
        o.members_at(k).to_vec()
    }

    #[test]
    fn prisoners_dilemma_levels() {
        let oracle = oracle_level_sets(&fixtures::prisoners_dilemma());
        // S_1 = {(C,C),(D,D)}, S_2 = {(C,C)} = fixpoint.
        assert_eq!(sets(&oracle, 1), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(sets(&oracle, 2), vec![vec![0, 0]]);
        assert_eq!(oracle.fixpoint_level, 2);
    }

    #[test]
    fn two_round_game_levels() {
        let oracle = oracle_level_sets(&fixtures::two_round_game());
        assert_eq!(sets(&oracle, 0).len(), 4);
        // S_1 = {(B,X),(B,Y)}, S_2 = {(B,X)} = fixpoint.
        assert_eq!(sets(&oracle, 1), vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(sets(&oracle, 2), vec![vec![1, 0]]);
        assert_eq!(sets(&oracle, 9), vec![vec![1, 0]]);
        assert_eq!(oracle.fixpoint_level, 2);
    }

    #[test]
    fn singleton_game_is_its_own_fixpoint() {
        let game = Game::from_payoffs(&[1, 1], vec![vec![0], vec![0]]).unwrap();
        let oracle = oracle_level_sets(&game);
        assert_eq!(oracle.levels, vec![vec![vec![0, 0]], vec![vec![0, 0]]]);
        assert_eq!(oracle.fixpoint_level, 1);
    }
}
