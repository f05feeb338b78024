#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

/// Golden cases: name, arguments, optional stdin fixture, expected exit code.
pub const GOLDEN: &[(&str, &[&str], Option<&str>, i32)] = &[
    ("examples_list", &["examples"], None, 0),
    ("examples_terminal", &["examples", "terminal", "--bound", "2"], None, 0),
    ("examples_rig_z2", &["examples", "rig_z2"], None, 0),
    ("validate_rig_z2", &["validate", "example:rig_z2", "--bound", "2"], None, 0),
    ("validate_corrupted", &["validate", "-"], Some("corrupted_z2.json"), 1),
    ("check_cartesian_terminal", &["check-cartesian", "terminal", "--bound", "2"], None, 0),
    ("check_cartesian_fault", &["check-cartesian", "example:fault_nullary", "--bound", "2"], None, 1),
    ("products_prodcat2", &["products", "example:prodcat2", "--equivalence", "--bound", "2"], None, 0),
    ("products_terminal", &["products", "terminal", "--bound", "2"], None, 0),
    ("burnside_rig_z2", &["burnside", "example:rig_z2", "--bound", "2"], None, 0),
    ("base_change_tot", &["base-change", "example:terminal", "--along", "tot", "--bound", "2"], None, 0),
    ("unknown_kind", &["validate", "-"], Some("unknown_kind.json"), 2),
    ("bad_payload", &["validate", "-"], Some("bad_payload.json"), 2),
];

pub fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

pub struct Run {
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
    pub code: i32,
}

pub fn run(args: &[&str], stdin: Option<&[u8]>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_multicat"))
        .args(args)
        .env_remove("MULTICAT_BOUND")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    {
        let mut pipe = child.stdin.take().expect("stdin is piped");
        if let Some(input) = stdin {
            pipe.write_all(input).expect("stdin accepts input");
        }
    }
    let out = child.wait_with_output().expect("binary finishes");
    Run {
        stdout: out.stdout,
        stderr: out.stderr,
        code: out.status.code().unwrap_or(-1),
    }
}

pub fn run_golden(args: &[&str], fixture: Option<&str>) -> Run {
    let input = fixture.map(|f| std::fs::read(dir("fixtures").join(f)).expect("fixture exists"));
    run(args, input.as_deref())
}
