use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("golden").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn forge(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tanaka-forge"));
    c.args(args).env_remove("TANAKA_FORGE_THREADS");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn run_config(command: &str, config: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![command, "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    forge(&args, &[])
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// A decimal literal such as `0.5` that is not part of an identifier.
fn has_float(text: &str) -> Option<String> {
    let b = text.as_bytes();
    for i in 1..b.len().saturating_sub(1) {
        if b[i] == b'.' && b[i - 1].is_ascii_digit() && b[i + 1].is_ascii_digit() {
            let mut s = i - 1;
            while s > 0 && b[s - 1].is_ascii_digit() {
                s -= 1;
            }
            if s == 0 || !(b[s - 1].is_ascii_alphanumeric() || b[s - 1] == b'_' || b[s - 1] == b'.') {
                return Some(text[s..(i + 4).min(text.len())].to_string());
            }
        }
    }
    None
}

fn check(name: &str) -> (Output, serde_json::Value) {
    let out = scratch(name);
    let o = run_config("check", &configs().join(format!("{name}.json")), &out, &[]);
    let report = std::fs::read_to_string(out.join("admissibility.json")).map(|s| serde_json::from_str(&s).unwrap());
    (o, report.unwrap_or(serde_json::Value::Null))
}

#[test]
fn gamma30_has_exactly_one_structure() {
    let (o, r) = check("su12_gamma30");
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let s = r["modules"][0]["structures"].as_array().unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s[0]["degrees"]["(3,0)"], -1);
}

#[test]
fn gamma21_has_none() {
    let (o, r) = check("su12_gamma21");
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(r["modules"][0]["structures"].as_array().unwrap().is_empty());
}

#[test]
fn doubled_j_is_rejected() {
    let (o, _) = check("su12_bad_j");
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("expected ±1"), "{}", stderr(&o));
}

#[test]
fn malformed_config_reports_line_and_field() {
    let dir = scratch("malformed");
    let p = write_config(&dir, "bad.json", "{\n  \"schema\": 1,\n  \"algebra\": {\"type\": \"A2\", \"E\": [\"1\", \"1\"], \"J\": [\"1\", -1]}\n}\n");
    let o = run_config("check", &p, &dir, &[]);
    assert_eq!(code(&o), 1);
    let e = stderr(&o);
    assert!(e.contains("algebra.J[1]") && e.contains("line 3"), "{e}");
    let p = write_config(&dir, "trailing.json", "{\"schema\": 1,}");
    assert_eq!(code(&run_config("check", &p, &dir, &[])), 1);
    assert_eq!(code(&run_config("check", &dir.join("missing.json"), &dir, &[])), 1);
}

#[test]
fn command_mismatch_and_bad_arguments_are_input_errors() {
    let dir = scratch("mismatch");
    assert_eq!(code(&run_config("prolong", &configs().join("su12_gamma30.json"), &dir, &[])), 1);
    assert_eq!(code(&forge(&["frobnicate", "--config", "x"], &[])), 1);
    assert_eq!(code(&forge(&["check"], &[])), 1);
}

#[test]
fn prolong_reports_and_exit_codes() {
    let dir = scratch("prolong");
    let o = run_config("prolong", &configs().join("sl2_antihermitian.json"), &dir, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&read(&dir.join("prolongation.json"))).unwrap();
    assert_eq!(r["total_dim"], 15);
    assert_eq!(r["classification"], "semisimple");

    let o = run_config("prolong", &configs().join("sl2_l4.json"), &dir, &[]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_str(&read(&dir.join("prolongation.json"))).unwrap();
    assert_eq!(r["total_dim"], 16);
    assert_eq!(r["classification"], "proper");
    assert_eq!(r["k_values"][0], "1/2");
}

#[test]
fn truncation_is_a_nonzero_exit() {
    let dir = scratch("truncated");
    let o = run_config("prolong", &configs().join("sl2_antihermitian.json"), &dir, &["--max-degree", "1"]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&read(&dir.join("prolongation.json"))).unwrap();
    assert_eq!(r["truncated"], true);
}

#[test]
fn ambiguous_structure_lists_choices() {
    let dir = scratch("ambiguous");
    let p = write_config(
        &dir,
        "amb.json",
        r#"{"schema": 1, "algebra": {"type": "A2", "E": ["1", "1"], "J": ["1", "-1"]}, "modules": [{"highest_weight": [1, 0]}]}"#,
    );
    let o = run_config("prolong", &p, &dir, &[]);
    assert_eq!(code(&o), 1);
    let e = stderr(&o);
    assert!(e.contains("[0] shift") && e.contains("[1] shift"), "{e}");
    let o = run_config("prolong", &p, &dir, &["--structure", "1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(code(&run_config("prolong", &p, &dir, &["--structure", "2"])), 1);
}

#[test]
fn nilpotent_table_input() {
    use tanaka_prolong::presets::sl2_antihermitian;
    let m = tanaka_prolong::assemble_m(&sl2_antihermitian().unwrap()).unwrap();
    let table = m.table.clone().with_complex_structure(m.j.clone()).to_json();
    let cfg = serde_json::json!({"schema": 1, "command": "prolong", "label": "m", "nilpotent": table});
    let dir = scratch("nilpotent");
    let p = write_config(&dir, "m.json", &cfg.to_string());
    let o = run_config("prolong", &p, &dir, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&read(&dir.join("prolongation.json"))).unwrap();
    assert_eq!(r["total_dim"], 15);
    assert_eq!(r["classification"], "semisimple");
}

fn classify_admissible(extra: &[&str], env: &[(&str, &str)], name: &str) -> (Vec<Vec<i64>>, String) {
    let dir = scratch(name);
    let cfg = configs().join("su12_scan.json");
    let mut args = vec!["classify", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = forge(&args, env);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = read(&dir.join("classification.json"));
    let r: serde_json::Value = serde_json::from_str(&text).unwrap();
    (serde_json::from_value(r["admissible"].clone()).unwrap(), text)
}

#[test]
fn classify_bounds() {
    assert_eq!(classify_admissible(&["--bound", "1"], &[], "bound1").0, vec![vec![1, 0], vec![0, 1]]);
    let (w, text) = classify_admissible(&["--bound", "0"], &[], "bound0");
    assert!(w.is_empty());
    let r: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(r["entries"].as_array().unwrap().is_empty());
}

#[test]
fn classify_skips_modules_above_the_cap() {
    let dir = scratch("cap");
    let p = write_config(
        &dir,
        "cap.json",
        r#"{"schema": 1, "algebra": {"type": "A2", "E": ["1", "1"], "J": ["1", "-1"]}, "bounds": {"max_weight_sum": 3, "max_module_dim": 10}}"#,
    );
    let o = run_config("classify", &p, &dir, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&read(&dir.join("classification.json"))).unwrap();
    let skipped: Vec<Vec<i64>> = serde_json::from_value(r["skipped"].clone()).unwrap();
    assert_eq!(skipped, vec![vec![2, 1], vec![1, 2]]);
}

#[test]
fn thread_count_does_not_change_the_report() {
    let (_, one) = classify_admissible(&[], &[("TANAKA_FORGE_THREADS", "1")], "threads1");
    let (_, four) = classify_admissible(&[], &[("TANAKA_FORGE_THREADS", "4")], "threads4");
    assert_eq!(one, four);
    let dir = scratch("threads_bad");
    let cfg = configs().join("su12_scan.json");
    let o = forge(&["classify", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()], &[("TANAKA_FORGE_THREADS", "zero")]);
    assert_eq!(code(&o), 1);
}

fn count(svg: &str, class: &str) -> usize {
    svg.matches(&format!("class=\"{class}\"")).count()
}

fn render(name: &str, svg: &str) -> (String, String) {
    let dir = scratch(name);
    let o = run_config("render", &configs().join(format!("{name}.json")), &dir, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let ascii = svg.replace(".svg", ".txt");
    (read(&dir.join(svg)), read(&dir.join(ascii)))
}

#[test]
fn render_standard_module() {
    let (svg, ascii) = render("render_gamma10", "gamma10.svg");
    assert_eq!(count(&svg, "weight"), 3);
    assert_eq!(count(&svg, "degree"), 3);
    assert_eq!(count(&svg, "mark"), 2);
    assert_eq!(count(&svg, "multiplicity"), 0);
    assert_eq!(ascii.lines().filter(|l| l.contains('*')).count(), 2);
}

#[test]
fn render_adjoint_module() {
    let (svg, _) = render("render_gamma11", "gamma11.svg");
    assert_eq!(count(&svg, "weight"), 7);
    assert_eq!(count(&svg, "multiplicity"), 1);
    assert!(svg.contains(">×2</text>"));
    assert_eq!(count(&svg, "mark"), 2);
    assert!(count(&svg, "forbidden") > 0);
}

#[test]
fn render_empty_module() {
    let (svg, ascii) = render("render_empty", "diagram.svg");
    assert!(svg.starts_with("<svg ") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(count(&svg, "weight"), 0);
    assert_eq!(svg.matches("<g ").count(), svg.matches("</g>").count());
    assert!(ascii.contains("no weights"));
}

#[test]
fn render_rank_three_falls_back_to_the_table() {
    let dir = scratch("rank3");
    let p = write_config(
        &dir,
        "a3.json",
        r#"{"schema": 1, "algebra": {"type": "A3", "E": ["1", "0", "1"], "J": ["1", "0", "-1"]}, "modules": [{"highest_weight": [1, 0, 0]}]}"#,
    );
    let o = run_config("render", &p, &dir, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("warning"));
    assert!(!dir.join("diagram.svg").exists());
    assert!(read(&dir.join("diagram.txt")).contains("(1,0,0)"));
}

/// Every shipped config, run twice: identical bytes and no decimal literals.
#[test]
fn outputs_are_deterministic_and_exact() {
    let mut names: Vec<PathBuf> = std::fs::read_dir(configs()).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    for cfg in names {
        let text = read(&cfg);
        let command = serde_json::from_str::<serde_json::Value>(&text).unwrap()["command"].as_str().unwrap().to_string();
        let stem = cfg.file_stem().unwrap().to_str().unwrap().to_string();
        let a = scratch(&format!("det_a_{stem}"));
        let b = scratch(&format!("det_b_{stem}"));
        let oa = run_config(&command, &cfg, &a, &[]);
        let ob = run_config(&command, &cfg, &b, &[]);
        assert_eq!(code(&oa), code(&ob));
        let mut files: Vec<PathBuf> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        for f in files {
            let x = read(&f);
            let y = read(&b.join(f.file_name().unwrap()));
            assert_eq!(x, y, "{} differs between runs", f.display());
            assert_eq!(has_float(&x), None, "{} contains a decimal literal", f.display());
        }
    }
}

#[test]
fn float_detector() {
    assert_eq!(has_float("x 0.5 y").as_deref(), Some("0.5 y"));
    assert_eq!(has_float("\"g0[3]\" 1/2 (1,0)"), None);
    assert_eq!(has_float("label V.(1,0) and w3.org"), None);
    assert!(has_float("[1.25, 2]").is_some());
}
