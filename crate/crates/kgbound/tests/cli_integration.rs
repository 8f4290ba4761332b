//! End-to-end checks of the binary: exit-code contract, artifact layout,
//! strict mode, and the catalog command.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_kgbound")
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kgbound_cli_{tag}_{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn config_errors_exit_2() {
    let dir = workdir("badcfg");
    let cfg = dir.join("job.json");

    // unknown key
    fs::write(
        &cfg,
        r#"{"version":1,"command":"spectrum","mass":1.0,
            "potential":{"type":"coulomb","z_alpha":0.2},
            "n_max":1,"ell_max":0,"bogus":true}"#,
    )
    .unwrap();
    let out = Command::new(bin()).args(["--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    // zero Hulthen deformation, message names the constraint
    fs::write(
        &cfg,
        r#"{"version":1,"command":"spectrum","mass":1.0,
            "potential":{"type":"hulthen","v0":0.1,"s0":0.0,"delta":0.2,"q_def":0.0},
            "n_max":0,"ell_max":0}"#,
    )
    .unwrap();
    let out = Command::new(bin()).args(["--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("deformation parameter q must be nonzero"),
        "{stderr}"
    );

    // missing file
    let out = Command::new(bin())
        .args(["--config", "/nonexistent/job.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_errors_exit_3() {
    let dir = workdir("nofind");
    let cfg = dir.join("job.json");
    // a free Mie potential binds nothing
    fs::write(
        &cfg,
        r#"{"version":1,"command":"solve","mass":1.0,
            "potential":{"type":"mie","v0":0.0,"a":2.0},
            "n":0,"ell":0}"#,
    )
    .unwrap();
    let out = Command::new(bin())
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    assert!(!dir.join("solve.csv").exists(), "no partial files on failure");
}

#[test]
fn wavefunction_job_writes_csv() {
    let dir = workdir("wavefn");
    let cfg = dir.join("job.json");
    fs::write(
        &cfg,
        r#"{"version":1,"command":"wavefunction","mass":1.0,
            "potential":{"type":"coulomb","z_alpha":0.2},
            "n":1,"ell":0}"#,
    )
    .unwrap();
    let out = Command::new(bin())
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(dir.join("wavefunction.csv")).unwrap();
    assert!(text.starts_with("r,R\n"));
    assert!(text.lines().count() > 1000);
    // 17 significant digits
    let first = text.lines().nth(1).unwrap();
    let r_field = first.split(',').next().unwrap();
    assert!(r_field.contains('e') && r_field.len() >= 20, "{r_field}");
}

#[test]
fn spectrum_reports_missing_states_without_failing() {
    let dir = workdir("missing");
    let cfg = dir.join("job.json");
    // the Hulthen reference set has no (1, 1) state
    fs::write(
        &cfg,
        r#"{"version":1,"command":"spectrum","mass":1.0,
            "potential":{"type":"hulthen","v0":0.12,"s0":0.05,"delta":0.25,"q_def":1.0},
            "n_max":1,"ell_max":1}"#,
    )
    .unwrap();
    let out = Command::new(bin())
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("missing state"), "{stderr}");

    // strict mode promotes the warning to a compute error
    let out = Command::new(bin())
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&dir)
        .arg("--strict")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{out:?}");
}

#[test]
fn list_potentials_prints_catalog() {
    let dir = workdir("catalog");
    let cfg = dir.join("job.json");
    fs::write(&cfg, r#"{"version":1,"command":"list-potentials"}"#).unwrap();
    let out = Command::new(bin()).arg("--config").arg(&cfg).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    for name in ["coulomb", "woods_saxon", "poschl_teller", "KGBOUND_THREADS"] {
        assert!(stdout.contains(name), "catalog missing {name}");
    }
}

#[test]
fn thread_cap_env_is_validated() {
    let dir = workdir("threads");
    let cfg = dir.join("job.json");
    fs::write(
        &cfg,
        r#"{"version":1,"command":"spectrum","mass":1.0,
            "potential":{"type":"coulomb","z_alpha":0.2},
            "n_max":1,"ell_max":0}"#,
    )
    .unwrap();
    let out = Command::new(bin())
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&dir)
        .env("KGBOUND_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    let out = Command::new(bin())
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&dir)
        .env("KGBOUND_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
}
