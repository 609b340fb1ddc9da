//! Command-line workbench around `pte-core`: solve games, inspect elimination
//! traces, evaluate modal formulas on the canonical structure, and run the
//! verification sweep.
//!
//! Exit codes are uniform across subcommands: 0 for success / a true formula /
//! a found equilibrium, 2 for a false formula / no equilibrium / failed
//! checks, 3 for a multi-profile fixpoint (`solve` only), and 1 for usage,
//! parse, or validation errors. Default (text) output is deterministic:
//! identical inputs produce byte-identical bytes.

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pte_core::elimination::{compare, compute_trace, LevelTrace, Outcome, Threshold};
use pte_core::game::{
    generate_random_game, generate_random_symmetric_game, parse_game, serialize_game, Game,
    ProfileId,
};
use pte_core::kripke::{build_canonical, CanonicalStructure, World, WorldClass};
use pte_core::logic::{parse_formula, EvalContext};
use pte_core::verification::{
    check_full_support_restricted, check_lemma_agent_decisions, check_lemma_cascading,
    check_lemma_necessary_knowledge, check_lemma_necessary_rationality, check_lemma_omniscience,
    run_sweep, run_symmetric_sweep, CheckResult, SweepReport,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "pte",
    version,
    about = "Solve and verify the unique transparent equilibrium of tie-free games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the equilibrium of one game.
    Solve(GameArgs),
    /// Print the level-by-level elimination trace.
    Trace(GameArgs),
    /// Sweep generated games through the full verification battery.
    Check(CheckArgs),
    /// Run the structural checks on one game's canonical structure.
    CheckLemmas(GameArgs),
    /// Generate a random tie-free game file.
    Generate(GenerateArgs),
    /// Compare the equilibrium against other solution concepts.
    Compare(GameArgs),
    /// Evaluate a formula at a world, e.g. `pte eval --game g.json "box(RAT)" "(B,X)@2"`.
    Eval(EvalArgs),
    /// Export the canonical structure as Graphviz DOT.
    ExportStructure(ExportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct GameArgs {
    /// Path to a game file.
    #[arg(long)]
    game: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// Inclusive seed range, e.g. `0..99` (or a single seed).
    #[arg(long, default_value = "0..99", value_parser = parse_seed_range)]
    seeds: RangeInclusive<u64>,
    /// Strategy counts per player, e.g. `3x3` or `2x2x2`; repeatable.
    #[arg(long = "shape", value_parser = parse_shape)]
    shapes: Vec<Shape>,
    /// Sweep symmetric two-player games instead (shapes must be square).
    #[arg(long)]
    symmetric: bool,
    /// Also write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Strategy counts per player, e.g. `3x3` or `2x2x2`.
    #[arg(long, value_parser = parse_shape, default_value = "3x3")]
    shape: Shape,
    /// Generate a symmetric two-player game (shape must be square).
    #[arg(long)]
    symmetric: bool,
    /// Output path (stdout if omitted).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Path to a game file.
    #[arg(long)]
    game: PathBuf,
    /// Formula, e.g. `box(RAT) & omn(2)`.
    formula: String,
    /// World literal: a profile at a level, e.g. `(B,X)@2`.
    world: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ExportArgs {
    /// Path to a game file.
    #[arg(long)]
    game: PathBuf,
    /// Cap on the level grid (default: fixpoint level + 2).
    #[arg(long)]
    max_level: Option<usize>,
    /// Output path (stdout if omitted).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

/// A validated strategy-count list, parsed from `2x3`-style literals.
#[derive(Clone, Debug)]
struct Shape(Vec<usize>);

fn parse_shape(text: &str) -> Result<Shape, String> {
    let counts: Vec<usize> = text
        .split('x')
        .map(|part| part.parse::<usize>().map_err(|_| format!("bad shape `{text}`: expected counts like 3x3")))
        .collect::<Result<_, _>>()?;
    if counts.is_empty() || counts.contains(&0) {
        return Err(format!("bad shape `{text}`: every count must be at least 1"));
    }
    Ok(Shape(counts))
}

fn parse_seed_range(text: &str) -> Result<RangeInclusive<u64>, String> {
    let err = || format!("bad seed range `{text}`: expected A..B (inclusive) or a single seed");
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| err())?;
        let b = b.trim().strip_prefix('=').unwrap_or(b.trim());
        let b: u64 = b.trim().parse().map_err(|_| err())?;
        if b < a {
            return Err(format!("bad seed range `{text}`: end is below start"));
        }
        Ok(a..=b)
    } else {
        let n: u64 = text.trim().parse().map_err(|_| err())?;
        Ok(n..=n)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Trace(args) => cmd_trace(&args),
        Command::Check(args) => cmd_check(&args),
        Command::CheckLemmas(args) => cmd_check_lemmas(&args),
        Command::Generate(args) => cmd_generate(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::Eval(args) => cmd_eval(&args),
        Command::ExportStructure(args) => cmd_export_structure(&args),
    }
}

fn load_game(path: &Path) -> Result<Game, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let (game, report) = parse_game(&text).map_err(|e| e.to_string())?;
    if !report.ok {
        let first = &report.violations[0];
        let at: Vec<String> =
            first.profiles.iter().map(|&p| game.format_profile(p)).collect();
        return Err(format!(
            "game has payoff ties ({} violation(s)); e.g. {} repeats payoff {} at {}",
            report.violations.len(),
            game.player_label(first.player),
            first.value,
            at.join(" and ")
        ));
    }
    Ok(game)
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn set_text(game: &Game, profiles: impl IntoIterator<Item = ProfileId>) -> String {
    let listed: Vec<String> = profiles.into_iter().map(|p| game.format_profile(p)).collect();
    format!("{{{}}}", listed.join(","))
}

fn outcome_text(game: &Game, trace: &LevelTrace) -> String {
    match &trace.outcome {
        Outcome::UniquePte(p) => {
            format!("PTE {} [fixpoint level {}]", game.format_profile(*p), trace.fixpoint_level)
        }
        Outcome::NoEquilibrium => format!("NONE [fixpoint level {}]", trace.fixpoint_level),
        Outcome::MultipleAtFixpoint(set) => format!(
            "MULTIPLE {} [fixpoint level {}]",
            set_text(game, set.iter().copied()),
            trace.fixpoint_level
        ),
    }
}

fn outcome_json(game: &Game, trace: &LevelTrace) -> serde_json::Value {
    match &trace.outcome {
        Outcome::UniquePte(p) => json!({
            "outcome": "pte",
            "profile": game.format_profile(*p),
            "fixpoint_level": trace.fixpoint_level,
        }),
        Outcome::NoEquilibrium => json!({
            "outcome": "none",
            "fixpoint_level": trace.fixpoint_level,
        }),
        Outcome::MultipleAtFixpoint(set) => json!({
            "outcome": "multiple",
            "profiles": set.iter().map(|&p| game.format_profile(p)).collect::<Vec<_>>(),
            "fixpoint_level": trace.fixpoint_level,
        }),
    }
}

fn outcome_exit(trace: &LevelTrace) -> ExitCode {
    match trace.outcome {
        Outcome::UniquePte(_) => ExitCode::SUCCESS,
        Outcome::NoEquilibrium => ExitCode::from(2),
        Outcome::MultipleAtFixpoint(_) => ExitCode::from(3),
    }
}

fn cmd_solve(args: &GameArgs) -> Result<ExitCode, String> {
    let game = load_game(&args.game)?;
    let trace = compute_trace(&game).map_err(|e| e.to_string())?;
    match args.format {
        Format::Text => println!("{}", outcome_text(&game, &trace)),
        Format::Json => println!("{}", outcome_json(&game, &trace)),
    }
    Ok(outcome_exit(&trace))
}

fn thresholds_text(trace: &LevelTrace, level: usize) -> String {
    match trace.thresholds_at(level) {
        None => "-".to_string(),
        Some(t) => {
            let parts: Vec<String> = t
                .values
                .iter()
                .map(|v| match v {
                    Threshold::Value(x) => x.to_string(),
                    Threshold::Diverged => "DIVERGED".to_string(),
                })
                .collect();
            format!("({})", parts.join(","))
        }
    }
}

fn cmd_trace(args: &GameArgs) -> Result<ExitCode, String> {
    let game = load_game(&args.game)?;
    let trace = compute_trace(&game).map_err(|e| e.to_string())?;
    match args.format {
        Format::Text => {
            for level in &trace.levels {
                println!(
                    "{} | thresholds={} | survivors={}",
                    level.level,
                    thresholds_text(&trace, level.level),
                    set_text(&game, level.members.iter().copied())
                );
            }
            let outcome = match &trace.outcome {
                Outcome::UniquePte(p) => format!("PTE {}", game.format_profile(*p)),
                Outcome::NoEquilibrium => "NONE".to_string(),
                Outcome::MultipleAtFixpoint(set) => {
                    format!("MULTIPLE {}", set_text(&game, set.iter().copied()))
                }
            };
            println!("outcome={outcome}");
        }
        Format::Json => {
            let levels: Vec<serde_json::Value> = trace
                .levels
                .iter()
                .map(|level| {
                    let thresholds = trace.thresholds_at(level.level).map(|t| {
                        t.values
                            .iter()
                            .map(|v| match v {
                                Threshold::Value(x) => json!(x),
                                Threshold::Diverged => json!("diverged"),
                            })
                            .collect::<Vec<_>>()
                    });
                    json!({
                        "level": level.level,
                        "thresholds": thresholds,
                        "survivors": level
                            .members
                            .iter()
                            .map(|&p| game.format_profile(p))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            println!("{}", json!({ "levels": levels, "result": outcome_json(&game, &trace) }));
        }
    }
    Ok(outcome_exit(&trace))
}

fn check_result_json(check: &CheckResult) -> serde_json::Value {
    json!({
        "name": check.name,
        "passed": check.passed,
        "counterexamples": check
            .counterexamples
            .iter()
            .map(|c| json!({ "game": c.game, "location": c.location, "detail": c.detail }))
            .collect::<Vec<_>>(),
        "notes": check.notes,
    })
}

fn report_json(report: &SweepReport) -> serde_json::Value {
    json!({
        "games": report.games,
        "outcomes": {
            "unique": report.outcomes.unique,
            "none": report.outcomes.none,
            "multiple": report.outcomes.multiple,
        },
        "checks": report.checks.iter().map(check_result_json).collect::<Vec<_>>(),
        "passed": report.all_passed(),
    })
}

fn print_check_lines(checks: &[CheckResult]) {
    for check in checks {
        println!("{} {}", if check.passed { "PASS" } else { "FAIL" }, check.name);
        for c in check.counterexamples.iter().take(5) {
            let game = if c.game.is_empty() { String::new() } else { format!("[{}] ", c.game) };
            println!("  {game}{}: {}", c.location, c.detail);
        }
        if check.counterexamples.len() > 5 {
            println!("  ... {} more", check.counterexamples.len() - 5);
        }
        for note in &check.notes {
            println!("  note: {note}");
        }
    }
}

fn cmd_check(args: &CheckArgs) -> Result<ExitCode, String> {
    let report = if args.symmetric {
        let mut sizes = Vec::new();
        for shape in &args.shapes {
            match shape.0.as_slice() {
                [a, b] if a == b => sizes.push(*a),
                _ => {
                    return Err(format!(
                        "--symmetric needs square two-player shapes, got {:?}",
                        shape.0
                    ))
                }
            }
        }
        if sizes.is_empty() {
            sizes = vec![2, 3, 4];
        }
        run_symmetric_sweep(args.seeds.clone(), &sizes)
    } else {
        let shapes: Vec<Vec<usize>> = if args.shapes.is_empty() {
            vec![vec![3, 3]]
        } else {
            args.shapes.iter().map(|s| s.0.clone()).collect()
        };
        run_sweep(args.seeds.clone(), &shapes)
    };

    if let Some(path) = &args.report {
        let body = format!("{:#}\n", report_json(&report));
        fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    match args.format {
        Format::Text => {
            println!(
                "games={} unique={} none={} multiple={}",
                report.games, report.outcomes.unique, report.outcomes.none, report.outcomes.multiple
            );
            print_check_lines(&report.checks);
            println!("result={}", if report.all_passed() { "PASS" } else { "FAIL" });
        }
        Format::Json => println!("{}", report_json(&report)),
    }
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_check_lemmas(args: &GameArgs) -> Result<ExitCode, String> {
    let game = load_game(&args.game)?;
    let structure = build_canonical(&game, None).map_err(|e| e.to_string())?;
    let checks = vec![
        check_lemma_cascading(&structure),
        check_lemma_omniscience(&structure),
        check_lemma_necessary_rationality(&structure),
        check_lemma_necessary_knowledge(&structure),
        check_lemma_agent_decisions(&structure),
        check_full_support_restricted(&structure, &game),
    ];
    let passed = checks.iter().all(|c| c.passed);
    match args.format {
        Format::Text => {
            print_check_lines(&checks);
            println!("result={}", if passed { "PASS" } else { "FAIL" });
        }
        Format::Json => println!(
            "{}",
            json!({
                "checks": checks.iter().map(check_result_json).collect::<Vec<_>>(),
                "passed": passed,
            })
        ),
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_generate(args: &GenerateArgs) -> Result<ExitCode, String> {
    let game = if args.symmetric {
        match args.shape.0.as_slice() {
            [a, b] if a == b => generate_random_symmetric_game(args.seed, *a),
            _ => {
                return Err(format!(
                    "--symmetric needs a square two-player shape, got {:?}",
                    args.shape.0
                ))
            }
        }
    } else {
        generate_random_game(args.seed, &args.shape.0)
    };
    write_output(&args.out, &serialize_game(&game))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(args: &GameArgs) -> Result<ExitCode, String> {
    let game = load_game(&args.game)?;
    let report = compare(&game).map_err(|e| e.to_string())?;
    match args.format {
        Format::Text => {
            let pte = match &report.pte {
                Outcome::UniquePte(p) => game.format_profile(*p),
                Outcome::NoEquilibrium => "NONE".to_string(),
                Outcome::MultipleAtFixpoint(set) => {
                    format!("MULTIPLE {}", set_text(&game, set.iter().copied()))
                }
            };
            println!("PTE={pte} [fixpoint level {}]", report.fixpoint_level);
            println!("pure_nash={}", set_text(&game, report.pure_nash.iter().copied()));
            println!("level1_ir={}", set_text(&game, report.level1_ir.iter().copied()));
            println!(
                "pareto_optimal={}",
                set_text(&game, report.pareto_optimal.iter().copied())
            );
            if let Some(h) = report.hofstadter {
                println!("hofstadter={}", game.format_profile(h));
            }
        }
        Format::Json => {
            let pte = match &report.pte {
                Outcome::UniquePte(p) => json!(game.format_profile(*p)),
                Outcome::NoEquilibrium => json!(null),
                Outcome::MultipleAtFixpoint(set) => {
                    json!(set.iter().map(|&p| game.format_profile(p)).collect::<Vec<_>>())
                }
            };
            println!(
                "{}",
                json!({
                    "pte": pte,
                    "fixpoint_level": report.fixpoint_level,
                    "pure_nash": report.pure_nash.iter().map(|&p| game.format_profile(p)).collect::<Vec<_>>(),
                    "level1_ir": report.level1_ir.iter().map(|&p| game.format_profile(p)).collect::<Vec<_>>(),
                    "pareto_optimal": report.pareto_optimal.iter().map(|&p| game.format_profile(p)).collect::<Vec<_>>(),
                    "hofstadter": report.hofstadter.map(|p| game.format_profile(p)),
                })
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Parses a `(B,X)@2` world literal against the game, returning the world and
/// the structure it lives in (rebuilt deeper when the level exceeds the
/// default grid).
fn resolve_world(game: &Game, literal: &str) -> Result<(CanonicalStructure, World), String> {
    let (profile_text, level_text) = literal
        .rsplit_once('@')
        .ok_or_else(|| format!("bad world literal `{literal}`: expected (labels)@level"))?;
    let profile = game
        .parse_profile(profile_text)
        .map_err(|e| format!("bad world literal `{literal}`: {e}"))?;
    let level: usize = level_text
        .trim()
        .parse()
        .map_err(|_| format!("bad world literal `{literal}`: level must be an integer"))?;
    let mut structure = build_canonical(game, None).map_err(|e| e.to_string())?;
    if level > structure.max_level {
        structure = build_canonical(game, Some(level)).map_err(|e| e.to_string())?;
    }
    Ok((structure, World { profile: game.profile_id(&profile), level }))
}

fn cmd_eval(args: &EvalArgs) -> Result<ExitCode, String> {
    let game = load_game(&args.game)?;
    let formula = parse_formula(&args.formula, &game).map_err(|e| e.to_string())?;
    let (structure, world) = resolve_world(&game, &args.world)?;
    let mut ctx = EvalContext::new(&structure);
    let value = ctx.eval(world, &formula);
    match args.format {
        Format::Text => println!("{value}"),
        Format::Json => {
            let class = match structure.class(world) {
                WorldClass::Impossible => "impossible",
                WorldClass::NonnormalPossible => "nonnormal",
                WorldClass::Normal => "normal",
            };
            println!(
                "{}",
                json!({
                    "formula": formula.render(&game),
                    "world": structure.format_world(world),
                    "class": class,
                    "value": value,
                })
            );
        }
    }
    Ok(if value { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_export_structure(args: &ExportArgs) -> Result<ExitCode, String> {
    let game = load_game(&args.game)?;
    let structure = build_canonical(&game, args.max_level).map_err(|e| e.to_string())?;
    write_output(&args.out, &structure.export_dot())?;
    Ok(ExitCode::SUCCESS)
}
