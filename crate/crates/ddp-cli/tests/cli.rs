//! End-to-end runs of the `ddp` binary: exit codes, output formats, and
//! round-trips between commands.

use std::process::{Command, Output};

fn ddp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddp"))
        .args(args)
        .output()
        .expect("the binary should run")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("terminated by signal")
}

#[test]
fn verify_separates_good_sequences_from_bad() {
    let good = ddp(&["verify", "Z12", "--seq", "0,11,7,4,2,9,3,8,10,1,5,6"]);
    assert_eq!(code(&good), 0, "{}", stderr(&good));
    assert!(stdout(&good).contains("verdict: valid"));

    let bad = ddp(&["verify", "Z4", "--seq", "0,1,2,3"]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("verdict:"));
    assert!(!stdout(&bad).contains("verdict: valid"));
}

#[test]
fn verify_reads_sequences_from_files() {
    let path = std::env::temp_dir().join(format!("ddp-cli-test-{}.txt", std::process::id()));
    std::fs::write(&path, "0\n11\n7\n4\n2\n9\n3\n8\n10\n1\n5\n6\n").unwrap();
    let run = ddp(&["verify", "Z12", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    assert!(stdout(&run).contains("verdict: valid"));
}

#[test]
fn verify_checks_the_normal_form_when_asked() {
    let normal = ddp(&["verify", "Z7", "--seq", "0 6 1 5 2 4 3", "--slonimsky"]);
    assert_eq!(code(&normal), 0, "{}", stderr(&normal));
    assert!(stdout(&normal).contains("verdict: valid"));

    // the same sequence repeats divisors, so the plain check refuses it
    let plain = ddp(&["verify", "Z7", "--seq", "0 6 1 5 2 4 3"]);
    assert_eq!(code(&plain), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&ddp(&["verify", "Z4"])), 2, "a sequence is required");
    assert_eq!(code(&ddp(&["count", "Zx"])), 2, "bad descriptor");
    assert_eq!(code(&ddp(&["verify", "Z4", "--seq", "0,banana"])), 2);
    assert_eq!(code(&ddp(&["oeis", "--max-n", "18"])), 2, "beyond the cap");
}

#[test]
fn nonexistence_exits_three() {
    let run = ddp(&["construct", "Z9"]);
    assert_eq!(code(&run), 3);
    assert!(stderr(&run).contains("no distinct-divisor sequencing"));
}

#[test]
fn exhausted_budgets_exit_four() {
    let count = ddp(&["count", "Z18", "--budget", "0.05"]);
    assert_eq!(code(&count), 4);
    assert!(stdout(&count).contains("partial"));

    let list = ddp(&["enumerate", "Z18", "--budget", "0.05"]);
    assert_eq!(code(&list), 4);
    assert!(stderr(&list).contains("budget exhausted"));
}

#[test]
fn counts_are_the_same_on_any_thread_count() {
    for threads in ["1", "4"] {
        let run = ddp(&["count", "Z10", "--threads", threads]);
        assert_eq!(code(&run), 0);
        assert_eq!(stdout(&run).trim(), "count: 288");
    }
}

#[test]
fn count_emits_a_full_json_record() {
    let run = ddp(&["count", "Z10", "--json"]);
    assert_eq!(code(&run), 0);
    let record: serde_json::Value = serde_json::from_str(stdout(&run).trim()).unwrap();
    assert_eq!(record["command"], "count");
    assert_eq!(record["group"], "Z10");
    assert_eq!(record["order"], 10);
    assert_eq!(record["count"], "288");
    assert_eq!(record["exact"], true);
    assert!(record["ms"].is_u64());
    assert!(record.get("sequence").is_none(), "absent fields stay absent");
}

#[test]
fn constructed_sequences_verify_through_the_cli() {
    let build = ddp(&["construct", "Z12", "--json"]);
    assert_eq!(code(&build), 0, "{}", stderr(&build));
    let record: serde_json::Value = serde_json::from_str(stdout(&build).trim()).unwrap();
    let sequence: Vec<String> = record["sequence"]
        .as_array()
        .expect("constructed records carry the sequence")
        .iter()
        .map(|v| v.to_string())
        .collect();
    assert_eq!(sequence.len(), 12);
    assert_eq!(record["divisors"].as_array().unwrap().len(), 11);

    let check = ddp(&["verify", "Z12", "--seq", &sequence.join(",")]);
    assert_eq!(code(&check), 0, "{}", stderr(&check));
}

#[test]
fn enumerate_lists_orderings_lexicographically() {
    let run = ddp(&["enumerate", "Z6"]);
    assert_eq!(code(&run), 0);
    let listing = stdout(&run);
    assert_eq!(
        listing.lines().collect::<Vec<_>>(),
        vec!["0 1 5 2 4 3", "0 2 1 4 5 3", "0 4 5 2 1 3", "0 5 1 4 2 3"]
    );

    let capped = ddp(&["enumerate", "Z6", "--max", "2"]);
    assert_eq!(stdout(&capped).lines().count(), 2);

    let json = ddp(&["enumerate", "Z4", "--json"]);
    let records: Vec<serde_json::Value> = stdout(&json)
        .lines()
        .map(|line| serde_json::from_str(line).unwrap())
        .collect();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["command"], "enumerate");
    assert_eq!(records[0]["sequence"], serde_json::json!([0, 1, 3, 2]));
    assert_eq!(records[1]["sequence"], serde_json::json!([0, 3, 1, 2]));
}

#[test]
fn oeis_prints_order_count_pairs() {
    let run = ddp(&["oeis", "--max-n", "8"]);
    assert_eq!(code(&run), 0);
    let listing = stdout(&run);
    assert_eq!(
        listing.lines().collect::<Vec<_>>(),
        vec!["2 1", "4 2", "6 4", "8 24"]
    );
}

#[test]
fn bound_reports_the_closed_form() {
    let run = ddp(&["bound", "--m", "2", "--odd", "3"]);
    assert_eq!(code(&run), 0);
    assert_eq!(stdout(&run).trim(), "bound: 12");
}

#[test]
fn prime_method_builds_the_semidirect_family() {
    let run = ddp(&["construct", "7", "--method", "prime", "--json"]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let record: serde_json::Value = serde_json::from_str(stdout(&run).trim()).unwrap();
    assert_eq!(record["order"], 42);
    assert_eq!(record["sequence"].as_array().unwrap().len(), 42);

    let rejected = ddp(&["construct", "13", "--method", "prime"]);
    assert_eq!(code(&rejected), 2, "13 ≡ 1 (mod 4) is out of range");
}

#[test]
fn auto_construction_searches_when_no_closed_form_applies() {
    // SD(7,3;2) has an odd-order quotient, so the semidirect closed form
    // is out; auto mode must fall back to search and still succeed
    let run = ddp(&["construct", "SD(7,3;2)"]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    assert!(stdout(&run).contains("order 21"));
}

#[test]
fn group_info_reports_structure() {
    let z12 = ddp(&["group", "info", "Z12", "--json"]);
    assert_eq!(code(&z12), 0);
    let record: serde_json::Value = serde_json::from_str(stdout(&z12).trim()).unwrap();
    assert_eq!(record["info"]["abelian"], true);
    assert_eq!(record["info"]["involutions"], 1);
    assert_eq!(record["info"]["center_order"], 12);
    assert_eq!(record["info"]["nilpotent"], true);

    let d5 = ddp(&["group", "info", "D5", "--json"]);
    let record: serde_json::Value = serde_json::from_str(stdout(&d5).trim()).unwrap();
    assert_eq!(record["info"]["abelian"], false);
    assert_eq!(record["info"]["involutions"], 5);
    assert_eq!(record["info"]["nilpotent"], false);
}

#[test]
fn order_limit_env_var_overrides_the_cap() {
    let refused = Command::new(env!("CARGO_BIN_EXE_ddp"))
        .args(["group", "info", "Z30"])
        .env("DDP_ORDER_LIMIT", "20")
        .output()
        .unwrap();
    assert_eq!(code(&refused), 2);
    assert!(stderr(&refused).contains("exceeds the limit 20"));

    let allowed = ddp(&["group", "info", "Z30"]);
    assert_eq!(code(&allowed), 0);
}
