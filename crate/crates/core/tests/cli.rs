use std::path::Path;
use std::process::{Command, Output};

fn khs_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_khs"));
    cmd.args(args)
        .env_remove("KHS_CACHE")
        .env_remove("KHS_KV_BOUND")
        .env_remove("KHS_CP_MODE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn khs(args: &[&str]) -> Output {
    khs_env(args, &[])
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    assert!(!o.status.success(), "expected failure, got {}", String::from_utf8_lossy(&o.stdout));
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn group_queries() {
    assert_eq!(stdout(&khs(&["group", "KS", "14"])).trim(), "(Z/2)^2 ⊕ Z/4 ⊕ Z/3 ⊕ Z/9");
    assert_eq!(stdout(&khs(&["group", "TCZ", "-1", "--prime", "3"])).trim(), "Z");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&khs(&["group", "TCZ", "1", "-p", "5", "-f", "json"]))).unwrap();
    assert_eq!(json["free_rank"]["known"], 1);
    assert_eq!(stdout(&khs(&["group", "KZ", "22", "-p", "691"])).trim(), "Z/691");
    assert_eq!(stdout(&khs(&["group", "j", "11", "-p", "3"])).trim(), "Z/9");
    assert_eq!(stdout(&khs(&["group", "c", "10", "-p", "3"])).trim(), "Z/3");
    assert_eq!(stdout(&khs(&["group", "S", "0", "-p", "3"])).trim(), "Z");
    assert_eq!(stdout(&khs(&["group", "TCS", "3", "-p", "3"])).trim(), "Z ⊕ Z/3");
    assert!(stdout(&khs(&["group", "CPbar", "14", "-p", "3"])).contains("Z/9"));
    assert_eq!(stdout(&khs(&["group", "KS", "11", "-p", "3", "-f", "latex"])).trim(), "\\mathbb{Z}/9\\times\\mathbb{Z}/3");
}

#[test]
fn group_errors() {
    assert!(stderr(&khs(&["group", "KS", "23"])).contains("2-primary stem table"));
    assert!(stderr(&khs(&["group", "KS", "40", "-p", "3"])).contains("coker J"));
    assert!(stderr(&khs(&["group", "j", "3"])).contains("--prime"));
    assert!(stderr(&khs(&["group", "KS", "3", "-p", "9"])).contains("not prime"));
    assert!(!khs(&["group", "XY", "3"]).status.success());
}

#[test]
fn kv_gloss_is_printed() {
    let out = stdout(&khs(&["group", "KS", "8"]));
    assert!(out.contains("K_8(Z)"));
    assert!(out.contains("note: finite; conjectured to be 0"));
}

#[test]
fn tables() {
    let md = stdout(&khs(&["table", "--max-n", "22", "--format", "markdown"]));
    let rows: Vec<&str> = md.lines().skip(2).collect();
    assert_eq!(rows.len(), 23);
    assert!(rows[22].contains("Z/691"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&khs(&["table", "--max-n", "4", "--format", "json"]))).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 5);
    assert!(!khs(&["table", "--max-n", "30"]).status.success());
    let tex = stdout(&khs(&["table", "--max-n", "22", "-f", "latex"]));
    assert!(tex.starts_with("\\begin{tabular}") && tex.trim_end().ends_with("\\end{tabular}"));
    assert_eq!(
        stdout(&khs(&["table", "-j", "1"])),
        stdout(&khs(&["table", "-j", "4"]))
    );
}

#[test]
fn scans() {
    let out = stdout(&khs(&["scan-irregular", "--max-p", "40"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 11);
    assert_eq!(lines.last().unwrap(), &"37 irregular 32");
    assert!(lines[..10].iter().all(|l| l.ends_with(" regular")));
    assert_eq!(stdout(&khs(&["scan-irregular", "--max-p", "3"])), "3 regular\n");
    let big = stdout(&khs(&["scan-irregular", "--max-p", "700", "-j", "3"]));
    assert!(big.lines().any(|l| l == "691 irregular 12,200"));
    assert_eq!(big, stdout(&khs(&["scan-irregular", "--max-p", "700", "-j", "1"])));
    let json = stdout(&khs(&["scan-irregular", "--max-p", "40", "-f", "json"]));
    for line in json.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
    assert!(!khs(&["scan-irregular", "--max-p", "2"]).status.success());
}

#[test]
fn cp_reports() {
    let out = stdout(&khs(&["report-cp", "--prime", "3"]));
    assert!(out.lines().any(|l| l.trim_start().starts_with("14 ")));
    assert!(stdout(&khs(&["report-cp", "--prime", "5"])).contains("no calibration data"));
    assert!(stderr(&khs(&["report-cp", "--prime", "4"])).contains("4 is not prime"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&khs(&["report-cp", "-p", "3", "--json"]))).unwrap();
    assert_eq!(json["entries"][0]["degree"], 14);
}

#[test]
fn configuration_precedence() {
    let literal = stdout(&khs_env(&["table"], &[("KHS_CP_MODE", "literal")]));
    assert!(literal.contains("literal cp mode"));
    let flag = stdout(&khs_env(&["--cp-mode", "calibrated", "table"], &[("KHS_CP_MODE", "literal")]));
    assert!(!flag.contains("literal cp mode"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("khs.toml");
    std::fs::write(&file, "verified_kv_bound = 100\noutput_format = \"json\"\n").unwrap();
    let f = file.to_str().unwrap();
    let out = stdout(&khs(&["--config", f, "group", "KZ", "8", "-p", "691"]));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["torsion"]["kind"], "unknown");
    let out = stdout(&khs_env(&["--config", f, "group", "KZ", "8", "-p", "691", "-f", "ascii"], &[("KHS_KV_BOUND", "1000")]));
    assert_eq!(out.trim(), "0");
    let shown = stdout(&khs_env(&["--config", f, "--kv-bound", "7", "show-config"], &[("KHS_KV_BOUND", "1000")]));
    assert!(shown.contains("verified_kv_bound = 7"));
    assert!(!khs_env(&["table"], &[("KHS_KV_BOUND", "lots")]).status.success());
    assert!(!khs(&["--config", "/nonexistent/khs.toml", "table"]).status.success());
}

fn cache_lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path).unwrap().lines().map(str::to_string).collect()
}

#[test]
fn bernoulli_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bernoulli.tsv");
    let p = path.to_str().unwrap();
    stdout(&khs_env(&["cache", "--fill", "30"], &[("KHS_CACHE", p)]));
    let lines = cache_lines(&path);
    assert_eq!(lines.len(), 31);
    assert_eq!(lines[1], "1\t-1\t2");
    assert_eq!(lines[12], "12\t-691\t2730");

    let before = cache_lines(&path);
    stdout(&khs(&["--cache", p, "table", "--max-n", "4"]));
    assert!(cache_lines(&path).len() >= before.len());

    std::fs::write(&path, "0\t1\t1\n1\t1\t2\n").unwrap();
    assert!(stderr(&khs(&["--cache", p, "table"])).contains("structural checks"));
    assert!(!khs(&["cache", "--fill", "3"]).status.success());
}
