//! Solver and verification workbench for the Perfectly Transparent Equilibrium
//! (PTE) on finite normal-form games without payoff ties.
//!
//! The pipeline has three stages:
//!
//! 1. [`elimination`] — iterated removal of profiles below each player's
//!    maximin guarantee, down to the at-most-one surviving profile.
//! 2. [`kripke`] — the canonical possible-worlds structure for a game:
//!    a grid of (profile, level) worlds with impossible, non-normal, and
//!    normal classes, plus the closest-state (deviation) function.
//! 3. [`logic`] — a modal language (necessity, possibility, counterfactual
//!    deviation possibility, rationality, knowledge, bounded omniscience)
//!    evaluated with distinct regimes per world class.
//!
//! [`verification`] ties the stages together: a brute-force oracle for the
//! survivor sets, mechanical checks of the structural lemmas, the level-wise
//! characterization theorems, and batch sweeps over generated games.

pub mod elimination;
pub mod fixtures;
pub mod game;
pub mod kripke;
pub mod logic;
pub mod verification;

pub use elimination::{
    compare, compute_pte, compute_trace, eliminate_step, hofstadter_profile, is_level_k_ir,
    is_pareto_optimal, maximin_threshold, pure_nash, ComparisonReport, LevelSet, LevelTrace,
    MaximinThresholds, Outcome, SymmetryError, Threshold, TiesError,
};
pub use game::{
    generate_random_game, generate_random_symmetric_game, parse_game, serialize_game,
    validate_game, Game, GameError, PlayerId, ProfileId, StrategyId, StrategyProfile,
    TieViolation, ValidationReport,
};
pub use kripke::{
    build_canonical, CanonicalStructure, EpistemicRelation, ImpossibleWorldFacts, World,
    WorldClass,
};
pub use logic::{parse_formula, EvalContext, Formula, ParseError};
pub use verification::{
    check_full_support_restricted, check_lemma_agent_decisions, check_lemma_cascading,
    check_lemma_necessary_knowledge, check_lemma_necessary_rationality, check_lemma_omniscience,
    oracle_level_sets, run_sweep, run_sweep_sequential, run_symmetric_sweep,
    verify_pte_characterization, verify_theorem_level, CheckResult, Counterexample,
    OracleLevelSets, OutcomeTally, SweepReport,
};
