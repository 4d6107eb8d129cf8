use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn seplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seplab"))
        .args(args)
        .env_remove("SEPLAB_PRECISION_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn gen_symbolic_and_instantiated() {
    let o = seplab(&["gen", "p", "1", "--symbolic"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "[-1, 1 + 1*n]");

    let o = seplab(&["gen", "q", "2", "--n", "5"]);
    assert_eq!(stdout(&o).trim(), "[1, -6, 1]");

    // p_3 = (1+x) p_2 + x^2 p_1 with p_2 = -1 + n x + n x^2; at n = 0 this is -1 - x - x^2 + x^3
    let o = seplab(&["gen", "p", "3", "--n", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "[-1, -1, -1, 1]");

    let o = seplab(&["gen", "K", "--n", "5"]);
    assert_eq!(stdout(&o).trim(), "[7, -41, 1]");
}

#[test]
fn gen_rejects_bad_parameters() {
    assert_eq!(code(&seplab(&["gen", "P", "2", "--n", "10"])), 1);
    assert_eq!(code(&seplab(&["gen", "nope", "3"])), 1);
    assert_eq!(code(&seplab(&["gen", "q", "3", "--n", "10"])), 1);
}

#[test]
fn verify_exit_codes() {
    let o = seplab(&["verify", "all", "--dmax", "12"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("PASS")).count(), 8);

    assert_eq!(code(&seplab(&["verify", "eq2", "--dmax", "1"])), 0);

    let o = seplab(&["verify", "eq2", "--dmax", "6", "--inject-fault", "p:3:1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness"));
}

#[test]
fn verify_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    let o = seplab(&["verify", "qcong", "--dmax", "8", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["id"], "qcong");
    assert_eq!(v[0]["pass"], true);
}

#[test]
fn sweep_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.csv");
    let o = seplab(&["sweep", "--family", "P", "--d", "4..6", "--n", "10,100,1000", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,d,n,degree,height,sep_lo,sep_hi,e_lo,e_hi,target,bound_satisfied,precision_bits"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    for chunk in rows.chunks(3) {
        let e: Vec<f64> = chunk.iter().map(|r| r[7].parse().unwrap()).collect();
        assert!(e[0] < e[1] && e[1] < e[2], "{e:?}");
    }
    let meta: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("p.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["rows"], 9);
    assert_eq!(meta["failed_rows"], 0);
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for name in ["a.json", "b.json"] {
        let out = dir.path().join(name);
        let o = seplab(&[
            "sweep", "--family", "Q", "--d", "6", "--n", "1000", "--format", "json", "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let v: Value = serde_json::from_slice(&outputs[0]).unwrap();
    assert_eq!(v[0]["bound_satisfied"], "yes");
}

#[test]
fn sweep_validation_errors() {
    assert_eq!(code(&seplab(&["sweep", "--family", "P", "--d", "4", "--n", ""])), 1);
    assert_eq!(code(&seplab(&["sweep", "--family", "P", "--d", "4", "--n", "10", "--prec-start", "32"])), 1);
    assert_eq!(code(&seplab(&["sweep", "--family", "P", "--d", "", "--n", "10"])), 1);
}

#[test]
fn precision_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_seplab"))
        .args(["sweep", "--family", "P", "--d", "6", "--n", "10000"])
        .env("SEPLAB_PRECISION_CAP", "64")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    let row = csv.lines().nth(1).unwrap();
    assert!(row.ends_with(",PrecisionExhausted,"), "{row}");

    let o = Command::new(env!("CARGO_BIN_EXE_seplab"))
        .args(["sweep", "--family", "P", "--d", "4", "--n", "10"])
        .env("SEPLAB_PRECISION_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn certify_exit_codes() {
    let o = seplab(&["certify", "p", "3", "--n", "100"]);
    assert_eq!(code(&o), 0);
    let cert: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["verdict"]["kind"], "Irreducible");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("poly.txt");
    // (x - 1)(x^2 + 1) = -1 + x - x^2 + x^3
    fs::write(&file, "-1 1 -1 1\n").unwrap();
    let o = seplab(&["certify", "--file", file.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let cert: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["verdict"]["kind"], "Reducible");

    let o = seplab(&["certify", "r", "5", "--n", "10", "--budget", "0"]);
    assert_eq!(code(&o), 3);
    let cert: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["verdict"]["kind"], "Inconclusive");
    assert_eq!(cert["rational_roots"].as_array().unwrap().len(), 0);

    assert_eq!(code(&seplab(&["certify", "p", "3"])), 1);
}

#[test]
fn cluster_reports() {
    let o = seplab(&["cluster", "--delta", "4", "--h", "0", "--n", "100"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["k"], 3);
    assert_eq!(v["degree"], 8);
    assert!(v["exponent_lo"].as_f64().unwrap() > 4.55);

    let o = seplab(&["cluster", "--delta", "4", "--h", "1", "--n", "100"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["degree"], 13);
    assert_eq!(v["k"], 4);

    let o = seplab(&["cluster", "--delta", "4", "--h", "0", "--n", "100", "--pad", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["degree"], 10);

    assert_eq!(code(&seplab(&["cluster", "--delta", "4", "--h", "0", "--n", "100", "--k", "4"])), 1);
}

#[test]
fn help_and_unknown_commands() {
    assert_eq!(code(&seplab(&["--help"])), 0);
    assert_eq!(code(&seplab(&["bogus"])), 1);
    assert_eq!(code(&seplab(&[])), 1);
}
