use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use hodgelab_ffi::*;

fn icosphere(level: u32) -> *mut HlMesh {
    let mut m = ptr::null_mut();
    assert_eq!(hl_mesh_icosphere(level, 1.0, &mut m), HlStatus::Ok);
    assert!(!m.is_null());
    m
}

fn last_error() -> String {
    let p = hl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn mesh_lifecycle_and_counts() {
    let m = icosphere(2);
    let (mut v, mut e, mut f) = (0, 0, 0);
    unsafe {
        assert_eq!(hl_mesh_counts(m, &mut v, &mut e, &mut f), HlStatus::Ok);
        assert_eq!((v, e, f), (162, 480, 320));
        let mut xyz = vec![0.0; 3 * v];
        assert_eq!(hl_mesh_vertices(m, xyz.as_mut_ptr(), xyz.len()), HlStatus::Ok);
        for p in xyz.chunks(3) {
            assert!(((p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt() - 1.0).abs() < 1e-12);
        }
        assert_eq!(hl_mesh_vertices(m, xyz.as_mut_ptr(), 5), HlStatus::InvalidArgument);
        hl_mesh_free(m);
        hl_mesh_free(ptr::null_mut());
    }
}

#[test]
fn errors_carry_messages() {
    let mut m = ptr::null_mut();
    assert_eq!(hl_mesh_icosphere(9, 1.0, &mut m), HlStatus::LevelTooHigh);
    assert!(m.is_null());
    assert!(last_error().contains("resource guard"));
    assert_eq!(hl_mesh_spheroid(2, -1.0, 2.0, &mut m), HlStatus::InvalidArgument);
    assert_eq!(hl_mesh_icosphere(1, 1.0, ptr::null_mut()), HlStatus::NullPointer);
    let mut rho = 0.0;
    unsafe {
        assert_eq!(
            hl_mesh_curvature(ptr::null(), &mut rho, ptr::null_mut(), ptr::null_mut()),
            HlStatus::NullPointer
        );
    }
    let m = icosphere(1);
    let mut ev = [0.0; 2];
    unsafe {
        assert_eq!(
            hl_spectrum(m, 3, 2, 1, 0.0, ev.as_mut_ptr(), ptr::null_mut()),
            HlStatus::InvalidArgument
        );
        assert!(last_error().contains("form degree"));
        hl_mesh_free(m);
    }
}

#[test]
fn spectrum_and_curvature() {
    let m = icosphere(3);
    let mut ev = [0.0; 9];
    let mut res = [0.0; 9];
    let (mut rho, mut p, mut total) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(
            hl_spectrum(m, 0, 9, 7, 1e-8, ev.as_mut_ptr(), res.as_mut_ptr()),
            HlStatus::Ok
        );
        assert_eq!(hl_mesh_curvature(m, &mut rho, &mut p, &mut total), HlStatus::Ok);
        hl_mesh_free(m);
    }
    assert!(ev[0].abs() < 1e-8);
    assert!(ev[1..4].iter().all(|l| (l - 2.0).abs() < 0.01));
    assert!(ev[4..].iter().all(|l| (l - 6.0).abs() < 0.06));
    assert!(res.iter().all(|r| *r < 1e-6));
    assert!((rho - 1.0).abs() < 0.01 && (p - 1.0).abs() < 0.01);
    assert!((total - 4.0 * std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn verify_returns_json() {
    let mut m = ptr::null_mut();
    assert_eq!(hl_mesh_spheroid(3, 1.0, 2.0, &mut m), HlStatus::Ok);
    let cfg = CString::new(r#"{"eigenpairs": 8}"#).unwrap();
    let mut json = ptr::null_mut();
    let mut passed = false;
    unsafe {
        assert_eq!(hl_verify(m, cfg.as_ptr(), &mut json, &mut passed), HlStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        hl_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["mesh"]["kind"], "spheroid");
        assert_eq!(v["pass"], passed);
        let bad = CString::new("{").unwrap();
        assert_eq!(hl_verify(m, bad.as_ptr(), &mut json, ptr::null_mut()), HlStatus::Config);
        hl_mesh_free(m);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(hl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// The committed header declares every exported function.
#[test]
fn header_covers_exports() {
    let src = std::fs::read_to_string(crate_dir().join("src/lib.rs")).unwrap();
    let header = std::fs::read_to_string(crate_dir().join("include/hodgelab.h")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .filter_map(|rest| rest.split('(').next())
        .collect();
    assert!(exports.len() >= 10);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let deps = exe.parent()?;
    [deps, deps.parent()?]
        .iter()
        .map(|d| d.join("libhodgelab_ffi.a"))
        .find(|lib| lib.exists())
}

/// Compiles and runs a C program against the header and static library.
#[test]
fn c_smoke_program() {
    let Some(lib) = static_lib() else {
        panic!("static library not found next to the test binary");
    };
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("hodgelab_smoke");
    let dir = crate_dir();
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("C compiler available");
    assert!(status.success(), "C compile failed");
    let run = Command::new(Path::new(&out)).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(
        run.status.success(),
        "{stdout} {}",
        String::from_utf8_lossy(&run.stderr)
    );
    let lambda: f64 = stdout
        .trim()
        .strip_prefix("V=162 E=480 F=320 lambda1=")
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| panic!("unexpected output {stdout:?}"));
    assert!((lambda - 2.0).abs() < 1e-3, "{lambda}");
}
