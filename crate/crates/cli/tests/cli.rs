use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use blowup_cli::{run_script, to_json, RunOptions, TraceDocument};
use blowup_core::resolve::{replay_trace, ResolutionTrace};
use blowup_core::{PrimeField, Rationals, RingContext};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn scripts() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "bl"))
        .collect();
    v.sort();
    v
}

fn blowup(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_blowup"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

/// Text output followed by the exit code, as stored in `.out` files.
fn rendered(script: &str) -> (String, String) {
    let out = run_script(script, RunOptions::default());
    (format!("{}exit {}\n", out.text, out.exit_code), to_json(&out.document))
}

#[test]
fn golden_outputs_match() {
    let bless = std::env::var_os("BLESS").is_some();
    let mut mismatches = Vec::new();
    for path in scripts() {
        let script = fs::read_to_string(&path).unwrap();
        let (text, json) = rendered(&script);
        for (ext, got) in [("out", &text), ("json", &json)] {
            let want_path = path.with_extension(ext);
            if bless {
                fs::write(&want_path, got).unwrap();
                continue;
            }
            let want = fs::read_to_string(&want_path).unwrap_or_default();
            if &want != got {
                mismatches.push(want_path.display().to_string());
            }
        }
    }
    assert!(mismatches.is_empty(), "golden mismatch: {mismatches:?}");
}

#[test]
fn binary_exit_codes() {
    let ok = blowup(&[], Some("ring Q[x,y]\nrees --center x,y\n"));
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "(x*u2 - y*u1)\n");
    let bad = blowup(&[], Some("ring Q[x,y]\npoly f = x^\norder\n"));
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error[script]: line 2, column"));
    assert!(bad.stdout.is_empty());
    let domain = blowup(&[], Some("ring Q[x,y]\npoly f = x^2\ntransform --kind controlled --control 5 --center x,y\n"));
    assert_eq!(domain.status.code(), Some(2));
    let limit = blowup(&[], Some("ring Q[x,y]\npoly f = x^2 - y^5\nresolve-curve --max-steps 1\n"));
    assert_eq!(limit.status.code(), Some(3));
    let missing = blowup(&["/nonexistent/script.bl"], None);
    assert_eq!(missing.status.code(), Some(2));
    let unknown = blowup(&[], Some("ring Q[x]\npoly f = x\nfrobnicate\n"));
    assert_eq!(unknown.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&unknown.stderr).contains("panicked"));
}

#[test]
fn json_goes_to_stdout_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("trace.json");
    let script = "ring Q[x,y,z]\npoly f = x^2 + y*z\nresolve-h0\n";
    let out = blowup(&["--json", "--out", file.to_str().unwrap()], Some(script));
    assert_eq!(out.status.code(), Some(0));
    let written = fs::read_to_string(&file).unwrap();
    assert_eq!(written.as_bytes(), out.stdout.as_slice());
    let doc: TraceDocument = serde_json::from_str(&written).unwrap();
    assert_eq!(doc.version, 1);
    assert!(doc.timings.is_none());
    let timed = blowup(&["--json", "--timings"], Some(script));
    let doc: TraceDocument = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(doc.timings.is_some());
}

#[test]
fn error_documents_carry_codes() {
    let out = run_script("ring Fp 9[x]\npoly f = x\norder\n", RunOptions::default());
    let err = out.document.error.unwrap();
    assert_eq!(err.code, "script");
    assert!(err.message.contains("prime"));
    let out = run_script(
        "ring Q[x,y]\npoly f = x^2 + y^3\ntransform --kind controlled --control 3 --center x,y\n",
        RunOptions::default(),
    );
    assert_eq!(out.document.error.unwrap().code, "domain");
}

fn replays(script: &str) -> bool {
    let out = run_script(script, RunOptions::default());
    let json = to_json(&out.document);
    let doc: TraceDocument = serde_json::from_str(&json).unwrap();
    assert_eq!(doc, out.document);
    let trace: ResolutionTrace = serde_json::from_value(doc.result).unwrap();
    let ring = doc.ring.unwrap();
    if ring.field == "Q" {
        let r = RingContext::new(Rationals, &ring.vars).unwrap();
        replay_trace(&r, &trace).unwrap()
    } else {
        let p: u32 = ring.field.trim_start_matches('F').trim_start_matches('p').trim().parse().unwrap();
        let r = RingContext::new(PrimeField::new(p).unwrap(), &ring.vars).unwrap();
        replay_trace(&r, &trace).unwrap()
    }
}

#[test]
fn resolution_documents_replay() {
    for script in [
        "ring Q[x,y]\npoly f = x^2 - y^3\nresolve-curve\n",
        "ring Q[x,y]\npoly f = x^2 - y^3\nresolve-curve --smooth\n",
        "ring Q[x,y]\npoly f = y^2 - x^5\nresolve-curve\n",
        "ring Q[x,y,z]\npoly f = x^2 + y*z\nresolve-h0\n",
        "ring Q[x,y,z]\npoly f = x^2 + y^2 + z^3\nresolve-h0\n",
        "ring Q[x,y]\npoly m = x^2*y^3\nresolve-monomial\n",
        "ring Q[x,y,z]\npoly m = x^3*y^2*z\nresolve-monomial --control 2\n",
        "ring F3[x,y]\npoly f = x^2 - y^3\nresolve-curve\n",
    ] {
        assert!(replays(script), "{script}");
    }
}

#[test]
fn runs_are_deterministic() {
    for path in scripts() {
        let script = fs::read_to_string(&path).unwrap();
        assert_eq!(rendered(&script), rendered(&script), "{}", path.display());
    }
}
