//! End-to-end tests of the `pte` binary: output formats, exit codes, and
//! determinism, driven through real files in temporary directories.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn pte() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pte"))
}

fn run(args: &[&str]) -> Output {
    pte().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn exit(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

/// The two-round reference game: P1 chooses A/B, P2 chooses X/Y, and two
/// elimination rounds are needed to reach the unique equilibrium (B,X).
const TWO_ROUND: &str = r#"{
  "players": ["P1", "P2"],
  "strategies": [["A", "B"], ["X", "Y"]],
  "payoffs": [[3, 0, 1, 2], [0, 3, 2, 1]]
}
"#;

const PRISONERS_DILEMMA: &str = r#"{
  "players": ["P1", "P2"],
  "strategies": [["C", "D"], ["C", "D"]],
  "payoffs": [[2, 0, 3, 1], [2, 3, 0, 1]]
}
"#;

const SINGLETON: &str = r#"{
  "players": ["P1", "P2"],
  "strategies": [["A"], ["X"]],
  "payoffs": [[5], [7]]
}
"#;

const TIED: &str = r#"{
  "players": ["P1", "P2"],
  "strategies": [["A", "B"], ["X", "Y"]],
  "payoffs": [[1, 1, 2, 3], [0, 1, 2, 3]]
}
"#;

fn write_game(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn game_flag(path: &Path) -> String {
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_prints_equilibrium_and_exits_zero() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    let out = run(&["solve", "--game", &game_flag(&game)]);
    assert_eq!(stdout(&out), "PTE (B,X) [fixpoint level 2]\n");
    assert_eq!(exit(&out), 0);
}

#[test]
fn solve_singleton_game_returns_its_profile() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", SINGLETON);
    let out = run(&["solve", "--game", &game_flag(&game)]);
    assert_eq!(stdout(&out), "PTE (A,X) [fixpoint level 1]\n");
    assert_eq!(exit(&out), 0);
}

#[test]
fn solve_rejects_tied_payoffs_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TIED);
    let out = run(&["solve", "--game", &game_flag(&game)]);
    assert_eq!(exit(&out), 1);
    assert!(stderr(&out).contains("ties"), "{}", stderr(&out));
}

#[test]
fn solve_reports_no_equilibrium_with_exit_two() {
    let dir = TempDir::new().unwrap();
    let game = dir.path().join("none.json");
    // Shape 2x2, seed 6 generates a matching-pennies pattern that empties out.
    let gen = run(&["generate", "--seed", "6", "--shape", "2x2", "-o", &game_flag(&game)]);
    assert_eq!(exit(&gen), 0);
    let out = run(&["solve", "--game", &game_flag(&game)]);
    assert!(stdout(&out).starts_with("NONE"), "{}", stdout(&out));
    assert_eq!(exit(&out), 2);
}

#[test]
fn solve_json_is_machine_readable() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    let out = run(&["solve", "--game", &game_flag(&game), "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["outcome"], "pte");
    assert_eq!(value["profile"], "(B,X)");
    assert_eq!(value["fixpoint_level"], 2);
}

#[test]
fn trace_prints_one_line_per_level() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    let out = run(&["trace", "--game", &game_flag(&game)]);
    let expected = "\
0 | thresholds=- | survivors={(A,X),(A,Y),(B,X),(B,Y)}
1 | thresholds=(1,1) | survivors={(B,X),(B,Y)}
2 | thresholds=(1,2) | survivors={(B,X)}
3 | thresholds=(1,2) | survivors={(B,X)}
outcome=PTE (B,X)
";
    assert_eq!(stdout(&out), expected);
    assert_eq!(exit(&out), 0);
}

#[test]
fn trace_json_includes_levels_and_result() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    let out = run(&["trace", "--game", &game_flag(&game), "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["levels"][0]["thresholds"], serde_json::Value::Null);
    assert_eq!(value["levels"][1]["thresholds"][0], 1);
    assert_eq!(value["levels"][2]["survivors"][0], "(B,X)");
    assert_eq!(value["result"]["outcome"], "pte");
}

#[test]
fn compare_reports_all_solution_concepts() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "pd.json", PRISONERS_DILEMMA);
    let out = run(&["compare", "--game", &game_flag(&game)]);
    let text = stdout(&out);
    assert!(text.contains("PTE=(C,C)"), "{text}");
    assert!(text.contains("pure_nash={(D,D)}"), "{text}");
    assert!(text.contains("hofstadter=(C,C)"), "{text}");
    assert_eq!(exit(&out), 0);
}

#[test]
fn eval_true_formula_exits_zero() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    let out = run(&["eval", "--game", &game_flag(&game), "box(RAT)", "(B,X)@2"]);
    assert_eq!(stdout(&out), "true\n");
    assert_eq!(exit(&out), 0);
}

#[test]
fn eval_nothing_is_necessary_at_nonnormal_worlds() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    let out = run(&["eval", "--game", &game_flag(&game), "box(true)", "(B,Y)@1"]);
    assert_eq!(stdout(&out), "false\n");
    assert_eq!(exit(&out), 2);
}

#[test]
fn eval_json_names_the_world_class() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    let out = run(&[
        "eval", "--game", &game_flag(&game), "--format", "json", "omn(1) & !box(RAT)", "(B,Y)@1",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["class"], "nonnormal");
    assert_eq!(value["value"], true);
    assert_eq!(value["world"], "((B,Y),1)");
}

#[test]
fn eval_accepts_worlds_beyond_the_default_grid() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    // The default grid stops at level 4; deeper worlds trigger a rebuild.
    let out = run(&["eval", "--game", &game_flag(&game), "omn(7)", "(B,X)@7"]);
    assert_eq!(stdout(&out), "true\n");
    assert_eq!(exit(&out), 0);
}

#[test]
fn eval_rejects_bad_world_literals() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    for literal in ["(B,X)", "(B,Q)@1", "(B,X)@x"] {
        let out = run(&["eval", "--game", &game_flag(&game), "RAT", literal]);
        assert_eq!(exit(&out), 1, "literal {literal}");
    }
}

#[test]
fn eval_rejects_malformed_formulas() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    let out = run(&["eval", "--game", &game_flag(&game), "box(RAT", "(B,X)@2"]);
    assert_eq!(exit(&out), 1);
    assert!(stderr(&out).contains("error"), "{}", stderr(&out));
}

#[test]
fn check_lemmas_passes_on_reference_game() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    let out = run(&["check-lemmas", "--game", &game_flag(&game)]);
    let text = stdout(&out);
    assert!(text.contains("PASS lemma-cascading-counterfactuals"), "{text}");
    assert!(text.contains("PASS full-support-restricted"), "{text}");
    assert!(text.ends_with("result=PASS\n"), "{text}");
    assert_eq!(exit(&out), 0);
}

#[test]
fn check_runs_a_sweep_and_writes_a_report() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let out = run(&[
        "check", "--seeds", "0..7", "--shape", "2x2", "--report", &game_flag(&report),
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("games=8 "), "{text}");
    assert!(text.ends_with("result=PASS\n"), "{text}");
    assert_eq!(exit(&out), 0);

    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(body["games"], 8);
    assert_eq!(body["passed"], true);
}

#[test]
fn check_output_is_byte_identical_across_runs() {
    let args = ["check", "--seeds", "0..5", "--shape", "2x2", "--shape", "2x3"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(exit(&first), 0);
}

#[test]
fn check_symmetric_includes_diagonal_consistency() {
    let out = run(&["check", "--seeds", "0..5", "--symmetric"]);
    let text = stdout(&out);
    assert!(text.contains("PASS hofstadter-consistency"), "{text}");
    assert_eq!(exit(&out), 0);
}

#[test]
fn check_rejects_non_square_symmetric_shapes() {
    let out = run(&["check", "--seeds", "0..1", "--symmetric", "--shape", "2x3"]);
    assert_eq!(exit(&out), 1);
}

#[test]
fn generate_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    run(&["generate", "--seed", "11", "--shape", "2x2x2", "-o", &game_flag(&a)]);
    run(&["generate", "--seed", "11", "--shape", "2x2x2", "-o", &game_flag(&b)]);
    assert_eq!(
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap()
    );
    let out = run(&["solve", "--game", &game_flag(&a)]);
    assert!(exit(&out) == 0 || exit(&out) == 2, "generated game must solve cleanly");
}

#[test]
fn export_structure_emits_graphviz() {
    let dir = TempDir::new().unwrap();
    let game = write_game(&dir, "g.json", TWO_ROUND);
    let out = run(&["export-structure", "--game", &game_flag(&game)]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph"), "{text}");
    assert!(text.contains("((B,X),2)"), "{text}");
    assert_eq!(exit(&out), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(exit(&run(&["bogus"])), 1);
    assert_eq!(exit(&run(&["solve"])), 1);
    assert_eq!(exit(&run(&["check", "--seeds", "9..2"])), 1);
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(exit(&out), 0);
    assert!(stdout(&out).contains("solve"));
}
