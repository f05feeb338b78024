mod common;

use common::{dir, run, run_golden, GOLDEN};
use serde_json::Value;

/// Compare against tests/golden; `MULTICAT_UPDATE_GOLDEN=1` rewrites the files.
#[test]
fn golden_outputs() {
    let update = std::env::var_os("MULTICAT_UPDATE_GOLDEN").is_some();
    for (name, args, fixture, code) in GOLDEN {
        let r = run_golden(args, *fixture);
        assert_eq!(r.code, *code, "{name}: {}", String::from_utf8_lossy(&r.stderr));
        let path = dir("golden").join(format!("{name}.json"));
        if update {
            std::fs::create_dir_all(dir("golden")).unwrap();
            std::fs::write(&path, &r.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert!(r.stdout == want, "{name} differs from {}", path.display());
    }
}

#[test]
fn errors_are_json_with_a_kind() {
    for (fixture, kind) in [("unknown_kind.json", "unknown-kind"), ("bad_payload.json", "schema-mismatch")] {
        let r = run_golden(&["validate", "-"], Some(fixture));
        let v: Value = serde_json::from_slice(&r.stdout).unwrap();
        assert_eq!(v["error"]["kind"], kind);
        assert_eq!(r.code, 2);
    }
    let r = run(&["validate", "/no/such/file"], None);
    assert_eq!(r.code, 2);
    let v: Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "io");
}

#[test]
fn corrupted_tables_name_the_triple() {
    let r = run_golden(&["validate", "-"], Some("corrupted_z2.json"));
    assert_eq!(r.code, 1);
    let v: Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    let first = &v["violations"][0];
    assert_eq!(first["law"], "associativity");
    // outer ∘ inner ∘ innermost
    assert_eq!(first["instance"].as_str().unwrap().matches('∘').count(), 2, "{first}");
}

#[test]
fn examples_round_trip_through_stdin() {
    for name in ["terminal", "rig_z2", "prodcat2", "cmon_zero"] {
        let doc = run(&["examples", name, "--bound", "2"], None);
        assert_eq!(doc.code, 0);
        let r = run(&["check-cartesian", "-"], Some(&doc.stdout));
        assert_eq!(r.code, 0, "{name}: {}", String::from_utf8_lossy(&r.stdout));
        let v: Value = serde_json::from_slice(&r.stdout).unwrap();
        assert_eq!(v["bound"], 2);
    }
}

#[test]
fn free_cartesian_documents_reload() {
    // at bound 2 some composite apexes outgrow the table
    assert_eq!(run(&["free-cartesian", "terminal", "--bound", "2"], None).code, 3);
    let d = run(&["free-cartesian", "terminal", "--bound", "1"], None);
    assert_eq!(d.code, 0);
    let v: Value = serde_json::from_slice(&d.stdout).unwrap();
    assert_eq!(v["kind"], "cart_structure");
    let r = run(&["check-cartesian", "-"], Some(&d.stdout));
    assert_eq!(r.code, 0, "{}", String::from_utf8_lossy(&r.stdout));
}

#[test]
fn gamma_documents_attach_to_hosts() {
    let tmp = std::env::temp_dir().join(format!("multicat-gamma-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let rig = run(&["examples", "rig_z2"], None);
    let rig_path = tmp.join("z2.json");
    std::fs::write(&rig_path, &rig.stdout).unwrap();
    let gamma_path = tmp.join("gamma.json");
    std::fs::write(&gamma_path, format!(r#"{{"gamma": "rig:{}"}}"#, rig_path.display())).unwrap();
    let host = run(&["examples", "fault_nullary", "--bound", "2"], None);
    // the faulty table is replaced by the rig's own rule
    let r = run(&["check-cartesian", "-", "--gamma", gamma_path.to_str().unwrap()], Some(&host.stdout));
    assert_eq!(r.code, 0, "{}", String::from_utf8_lossy(&r.stdout));
    std::fs::write(&gamma_path, r#"{"gamma": "unique"}"#).unwrap();
    let r = run(&["check-cartesian", "terminal", "--bound", "2", "--gamma", gamma_path.to_str().unwrap()], None);
    assert_eq!(r.code, 0);
    std::fs::remove_dir_all(&tmp).unwrap();
}

#[test]
fn bound_comes_from_flag_then_env_then_document() {
    let doc = run(&["examples", "terminal", "--bound", "2"], None);
    let r = run(&["validate", "-", "--bound", "1"], Some(&doc.stdout));
    let v: Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["bound"], 1);
    let r = run(&["validate", "-"], Some(&doc.stdout));
    let v: Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["bound"], 2);
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_multicat"))
        .args(["validate", "terminal"])
        .env("MULTICAT_BOUND", "1")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bound"], 1);
}

#[test]
fn text_format_is_plain() {
    let r = run(&["--format", "text", "validate", "terminal", "--bound", "2"], None);
    let s = String::from_utf8(r.stdout).unwrap();
    assert!(s.contains("status pass"), "{s}");
    assert!(serde_json::from_str::<Value>(&s).is_err());
}

#[test]
fn models_are_checked_against_theories() {
    use multicat_core::cartesian::{from_rig, Model};
    use multicat_core::multicat::Rig;
    use multicat_core::{DocKind, WorkbenchDoc};

    let r = Rig::zmod(2);
    let cs = from_rig(&r, 2).unwrap();
    let tmp = std::env::temp_dir().join(format!("multicat-model-{}.json", std::process::id()));
    let theory = run(&["examples", "rig_z2", "--bound", "2"], None);
    let good = Model::rig_module(&cs, &r.additive(), |s, a| r.times(s, a).to_string()).unwrap();
    let bad = Model::rig_module(&cs, &r.additive(), |_, a| a.to_string()).unwrap();
    for (model, code) in [(good, 0), (bad, 1)] {
        std::fs::write(&tmp, WorkbenchDoc::new(DocKind::Model, &model, 2).unwrap().to_json()).unwrap();
        let out = run(&["check-model", "-", tmp.to_str().unwrap()], Some(&theory.stdout));
        assert_eq!(out.code, code, "{}", String::from_utf8_lossy(&out.stdout));
    }
    let r = run(&["check-model", "terminal", "-"], Some(br#"{"version":"1.0.0","kind":"rig","payload":{},"arity_bound":1}"#));
    assert_eq!(r.code, 2);
    std::fs::remove_file(&tmp).unwrap();
}
