use umbral_cli::{render_verify, run, Format, Outcome};
use umbral_core::verify::{EntryReport, Failure, VerifyConfig};

fn umbral(args: &[&str]) -> Outcome {
    run(std::iter::once("umbral").chain(args.iter().copied()))
}

#[test]
fn bell_numbers_to_order_seven() {
    let out = umbral(&["bell", "--order", "7"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "1 1 2 5 15 52 203 877\n");
}

#[test]
fn fmn_table_csv() {
    let out = umbral(&["fmn-table", "--max-m", "3", "--max-n", "5", "--format", "csv"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().any(|l| l == "1,0,1,4,9,16,25"), "{}", out.stdout);
    assert!(out.stdout.contains("0,1/2,3/2,5/2"));
}

#[test]
fn fmn_table_json_uses_strings() {
    let out = umbral(&["fmn-table", "--max-m", "0", "--max-n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["rows"][1]["values"][0], "1/2");
}

#[test]
fn umbral_sequence_of_exp_minus_one() {
    let out = umbral(&["umbral-seq", "--B", "exp(t)-1", "--n", "2"]);
    assert_eq!(out.stdout, "x + x^2\n");
    let out = umbral(&["umbral-seq", "--B", "exp(t)-1", "--n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["0", "1", "3", "1"]));
}

#[test]
fn theta_shift_and_pair() {
    assert_eq!(umbral(&["theta", "--B", "exp(t)-1", "--p", "0,0,1"]).stdout, "x + x^2\n");
    // default m = -1 is the ordinary umbral shift
    assert_eq!(umbral(&["shift", "--B", "exp(t)-1", "--p", "0,1,1"]).stdout, "x + 3*x^2 + x^3\n");
    assert_eq!(umbral(&["shift", "--B", "exp(t)-1", "--m", "1", "--p", "0,1,1"]).stdout, "4*x\n");
    assert_eq!(umbral(&["shift", "--B", "t", "--m", "0", "--p", "0,0,1"]).stdout, "5/2*x^2\n");
    assert_eq!(umbral(&["pair", "--A", "exp(t)", "--p", "1,2,3"]).stdout, "6\n");
    assert_eq!(umbral(&["pair", "--A", "-t", "--p", "-1/2,4"]).stdout, "-4\n");
    let csv = umbral(&["pair", "--A", "1/(1-t)", "--p", "0,0,1", "--format", "csv"]);
    assert_eq!(csv.stdout, "pairing\n2\n");
}

#[test]
fn verify_single_tag_passes() {
    let out = umbral(&["verify", "--id", "FAA", "--order", "12"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("PASS FAA"));
    assert!(out.stdout.contains("1/1 entries passed"));
}

#[test]
fn verify_json_report() {
    let out = umbral(&["verify", "--id", "sheffer-ts", "--order", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["entries"][0]["tag"], "SHEFFER-TS");
    assert_eq!(v["entries"][0]["citation"], "particularly simple recursion");
}

#[test]
fn failing_report_exits_one_and_names_the_coefficient() {
    let report = EntryReport {
        tag: "FAA",
        citation: "c",
        conjecture: false,
        passed: false,
        checks: 3,
        first_failure: Some(Failure {
            context: "sample 2".into(),
            coefficient: "w^1 x^3".into(),
            lhs: "1/2".into(),
            rhs: "1".into(),
        }),
        notes: vec![],
    };
    let (code, text) = render_verify(std::slice::from_ref(&report), &VerifyConfig::default(), Format::Text);
    assert_eq!(code, 1);
    assert!(text.contains("FAIL FAA"));
    assert!(text.contains("coefficient of w^1 x^3: lhs 1/2 != rhs 1"));
    let (code, csv) = render_verify(&[report], &VerifyConfig::default(), Format::Csv);
    assert_eq!(code, 1);
    assert!(csv.lines().nth(1).unwrap().starts_with("FAA,false,3,"));
}

#[test]
fn usage_errors_exit_two_with_grammar() {
    for args in [
        vec!["frobnicate"],
        vec!["bell", "--format", "xml"],
        vec!["umbral-seq", "--B", "t/(1-t", "--n", "2"],
        vec!["umbral-seq", "--B", "2t", "--n", "2"],
        vec!["theta", "--B", "t", "--p", "1,x"],
        vec!["umbral-seq", "--B", "1+t", "--n", "2"],
        vec!["verify", "--id", "NOPE"],
    ] {
        let out = umbral(&args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stderr.contains("factor := "), "{args:?}: {}", out.stderr);
        assert!(out.stderr.contains("--order"), "{args:?}");
        assert!(out.stdout.is_empty());
    }
    let out = umbral(&["umbral-seq", "--B", "t/(1-t", "--n", "2"]);
    assert!(out.stderr.contains("offset 6"), "{}", out.stderr);
}

#[test]
fn help_is_not_an_error() {
    let out = umbral(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("fmn-table"));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.csv");
    let out = umbral(&["bell", "--order", "3", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "n,bell\n0,1\n1,1\n2,2\n3,5\n");
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "--id", "ALL", "--order", "4", "--seed", "11", "--format", "json"];
    assert_eq!(umbral(&args), umbral(&args));
}
