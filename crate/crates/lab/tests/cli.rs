use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn binsparse(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binsparse"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str, args: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let out = binsparse(args);
    assert_eq!(out.status.code(), Some(0), "{args}");
    let want = fs::read_to_string(&path).unwrap();
    let got = stdout(&out);
    if got != want {
        for (i, (a, b)) in got.lines().zip(want.lines()).enumerate() {
            if a != b {
                panic!("{name} differs at line {}:\n got: {a}\nwant: {b}", i + 1);
            }
        }
        panic!("{name} differs in length: {} vs {} lines", got.lines().count(), want.lines().count());
    }
}

#[test]
fn gen_prints_canonical_text() {
    let out = binsparse("gen --m 3 --n 4");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "11 + 4*z^1 + 1*z^4\n");
    let out = binsparse("gen --rule geom --n-range 0..2");
    assert_eq!(stdout(&out), "1*z^1\n1*z^1 + 1*z^2\n1*z^1 + 2*z^2 + 1*z^4\n");
}

#[test]
fn verify_suite_passes() {
    let out = binsparse("verify --m-range 1..3 --n-range 0..10");
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains(" 0 fail"));
}

#[test]
fn quadratic_annulus_sweep_passes() {
    let out = binsparse("roots --m 2 --n-range 3..12 --tol 1e-10 --format csv");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.starts_with("roots,roots.annulus,") && r.contains(",pass,")));
}

#[test]
fn usage_errors_exit_64() {
    for args in ["", "gen --n 3", "gen --m 2 --n 3..1", "roots --m 2 --n 3 --tol 0", "nope", "gen --m 2 --n 3 --format xml"] {
        assert_eq!(binsparse(args).status.code(), Some(64), "{args:?}");
    }
    assert_eq!(binsparse("--help").status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = "roots --m 3 --n 9..10 --format json --seed 7";
    let a = binsparse(args);
    let b = binsparse(args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let first = &v.as_array().unwrap()[0];
    assert_eq!(first["section"], "roots");
    assert_eq!(first["root_report"]["solution"]["roots"].as_array().unwrap().len(), 84);
}

#[test]
fn writes_to_out_path() {
    let dir = std::env::temp_dir().join(format!("binsparse-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = binsparse(&format!("concavity --m 2 --n 3 --k-range 1..1 --format csv --out {}", path.display()));
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body = fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("section,id,params,status,witness,m,n,count,period_detected,"));
    let missing = binsparse("gen --m 2 --n 3 --out /nonexistent/dir/x.txt");
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/dir/x.txt"));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn golden_conjecture_table() {
    golden("conjectures_text.txt", "conjectures --m-range 2..3 --n-range 1..8");
}

#[test]
fn golden_roots_csv() {
    golden("roots_m2.csv", "roots --m 2 --n-range 3..6 --format csv");
}

#[test]
fn golden_gen_json() {
    golden("gen_m3.json", "gen --m 3 --n-range 3..5 --format json");
}
