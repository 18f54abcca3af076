//! End-to-end tests of the `rcf` binary: output strings, report
//! formats, and exit codes.

use std::process::Command;

/// Run the binary, returning (stdout, stderr, exit code).
fn rcf(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_rcf"))
        .args(args)
        .output()
        .expect("failed to spawn rcf");
    (
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        String::from_utf8(out.stderr).expect("stderr is UTF-8"),
        out.status.code().expect("process exited normally"),
    )
}

#[test]
fn eval_golden_value_at_thirty_digits() {
    let (stdout, _, code) = rcf(&["eval", "rr", "--r", "4", "--digits", "30"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "0.284079043840412296028291832393\n");
}

#[test]
fn eval_routes_agree_to_all_printed_digits() {
    let mut outputs = Vec::new();
    for route in ["direct", "oracle", "closed"] {
        let (stdout, stderr, code) = rcf(&[
            "eval", "h", "--r", "1", "--digits", "40", "--route", route,
        ]);
        assert_eq!(code, 0, "route {route}: {stderr}");
        outputs.push(stdout);
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
    assert!(outputs[0].starts_with("0.19891236737965800691"));
}

#[test]
fn eval_accepts_exact_rationals() {
    let (stdout, _, code) = rcf(&["eval", "v", "--r", "1/4", "--digits", "20"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "0.47759294284851753249\n");
}

#[test]
fn eval_by_nome_matches_eval_by_r() {
    // q = 0.01 directly vs r = (ln 100 / π)² — same point, two spellings.
    let (by_q, _, code_q) = rcf(&["eval", "s", "--q", "0.01", "--digits", "30"]);
    assert_eq!(code_q, 0);
    let r = (100f64.ln() / std::f64::consts::PI).powi(2);
    let (by_r, _, code_r) = rcf(&["eval", "s", "--r", &format!("{r:.17}"), "--digits", "30"]);
    assert_eq!(code_r, 0);
    // r passes through a 17-digit decimal, so agreement is limited by
    // that round-trip, not by the working precision.
    assert_eq!(by_q[..12], by_r[..12]);
}

#[test]
fn eval_output_parses_back() {
    let (stdout, _, code) = rcf(&["eval", "q", "--r", "2", "--digits", "50"]);
    assert_eq!(code, 0);
    let value: f64 = stdout.trim().parse().expect("output is a decimal number");
    assert!((value - 0.108482674602039823).abs() < 1e-15);
}

#[test]
fn eval_rejects_out_of_range_nome() {
    let (_, stderr, code) = rcf(&["eval", "rr", "--q", "1.2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"), "stderr: {stderr}");
}

#[test]
fn eval_requires_exactly_one_input() {
    let (_, _, code) = rcf(&["eval", "rr"]);
    assert_eq!(code, 2);
    let (_, _, code) = rcf(&["eval", "rr", "--r", "1", "--q", "0.1"]);
    assert_eq!(code, 2);
}

#[test]
fn eval_rejects_unknown_fraction() {
    let (_, stderr, code) = rcf(&["eval", "zz", "--r", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown fraction"));
}

#[test]
fn eval_enforces_digit_budget() {
    let (_, stderr, code) = rcf(&["eval", "rr", "--r", "1", "--digits", "200"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("digits"));
    // A bigger precision makes the same digit count legal.
    let (_, _, code) = rcf(&["eval", "rr", "--r", "1", "--digits", "200", "--prec", "1024"]);
    assert_eq!(code, 0);
}

#[test]
fn modulus_prints_singular_data() {
    let (stdout, _, code) = rcf(&["modulus", "--r", "2", "--digits", "25"]);
    assert_eq!(code, 0);
    // k₂ = √2 - 1.
    assert!(stdout.contains("k     = 0.4142135623730950488016887"));
    assert!(stdout.contains("K(k)"));
    assert!(stdout.contains("K(k')"));
}

#[test]
fn solve_reports_tangent_double_root() {
    let (stdout, _, code) = rcf(&["solve", "eq17", "--r", "1", "--digits", "30"]);
    assert_eq!(code, 0);
    // (2+√5)/5.
    assert!(stdout.contains("root     = 0.847213595499957939281834733746"));
    assert!(stdout.contains("double root"));
}

#[test]
fn solve_simple_root_away_from_tangency() {
    let (stdout, _, code) = rcf(&["solve", "eq17", "--r", "2", "--digits", "30"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("root     = 0.954561556178407950374283114520"));
    assert!(!stdout.contains("double root"));
}

#[test]
fn solve_rejects_unknown_equation() {
    let (_, stderr, code) = rcf(&["solve", "eq99", "--r", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown equation"));
}

#[test]
fn verify_json_succeeds_on_clean_suite() {
    let (stdout, _, code) = rcf(&["verify", "--suite", "s_", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"fail\": 0"));
    assert!(stdout.contains("s_thm51"));
    assert!(stdout.contains("\"precision_bits\": 256"));
}

#[test]
fn verify_csv_has_header() {
    let (stdout, _, code) = rcf(&["verify", "--suite", "h_evals", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("id,params,residual,tolerance,status\n"));
    assert_eq!(stdout.lines().count(), 3, "header + two grid rows");
}

#[test]
fn verify_empty_filter_is_success() {
    let (_, _, code) = rcf(&["verify", "--suite", "no_such_prefix"]);
    assert_eq!(code, 0);
}

#[test]
fn table_emits_csv_rows() {
    let (stdout, _, code) = rcf(&[
        "table",
        "--fraction",
        "v",
        "--r-list",
        "1/4,1,2",
        "--format",
        "csv",
        "--digits",
        "30",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "fraction,r,direct,oracle,closed,max_rel_diff");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("v,1,0.335809333736367191313108567251,"));
}

#[test]
fn table_rejects_bad_list_entry() {
    let (_, _, code) = rcf(&["table", "--fraction", "v", "--r-list", "1,,2"]);
    assert_eq!(code, 2);
}
