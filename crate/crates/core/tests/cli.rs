use std::process::{Command, Output};

fn abelsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelsq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_prefixes() {
    let o = abelsq(&["generate", "--word", "fib", "--length", "15"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "abaababaabaabab");
}

#[test]
fn count_thue_morse_orders_csv() {
    let o = abelsq(&[
        "count",
        "--word",
        "tm",
        "--orders",
        "1..6",
        "--method",
        "recurrence",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let values: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(values, ["2", "4", "4", "10", "8", "24"]);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "count",
        "--word",
        "fib",
        "--lengths",
        "1..40",
        "--method",
        "interval-formula",
    ];
    assert_eq!(stdout(&abelsq(&args)), stdout(&abelsq(&args)));
}

#[test]
fn json_report_for_a_file() {
    let dir = std::env::temp_dir().join(format!("abelsq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w.txt");
    std::fs::write(&path, "aabaabaa\n").unwrap();
    let file = format!("file:{}", path.display());
    let o = abelsq(&[
        "--format",
        "json",
        "count",
        "--word",
        &file,
        "--lengths",
        "all",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 6);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(
        abelsq(&["count", "--word", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(
        abelsq(&["verify", "--suite", "none-such"]).status.code(),
        Some(2)
    );
    assert_eq!(abelsq(&["frobnicate"]).status.code(), Some(2));
    let capped = abelsq(&[
        "--prefix-cap",
        "16",
        "count",
        "--word",
        "tm",
        "--lengths",
        "1..40",
    ]);
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn discrepancy_and_verify() {
    let o = abelsq(&["discrepancy", "--N", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("N,N*D_N,bound\n"));
    let v = abelsq(&["verify", "--suite", "power-bound"]);
    assert_eq!(v.status.code(), Some(0));
}
