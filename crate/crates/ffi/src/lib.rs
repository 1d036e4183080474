//! C ABI over the `hodgelab` core.
//!
//! Every fallible entry point returns an [`HlStatus`]; on failure a message
//! is available from [`hl_last_error`] on the calling thread. Meshes are
//! opaque handles released with [`hl_mesh_free`]; strings returned by the
//! library are released with [`hl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hodgelab::config::RunConfig;
use hodgelab::curvature::ricci_bounds;
use hodgelab::exterior::DecOperators;
use hodgelab::mesh::{SurfaceSpec, TriangleMesh};
use hodgelab::spectral::SolverOptions;
use hodgelab::verify::{oneform_spectrum, run_suite, scalar_spectrum};
use hodgelab::Error;

/// Result codes; zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LevelTooHigh = 3,
    InvalidMesh = 4,
    NonPositiveMass = 5,
    NoConvergence = 6,
    Config = 7,
    Panic = 8,
    Internal = 9,
}

/// Opaque surface mesh.
pub struct HlMesh {
    spec: SurfaceSpec,
    mesh: TriangleMesh,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> HlStatus {
    match e {
        Error::LevelTooHigh(_) => HlStatus::LevelTooHigh,
        Error::InvalidSurface(_) | Error::SizeMismatch { .. } | Error::Precondition(_) | Error::ZeroForm => {
            HlStatus::InvalidArgument
        }
        Error::InvalidMesh(_) | Error::OffSurface(_) => HlStatus::InvalidMesh,
        Error::NonPositiveMass(_) => HlStatus::NonPositiveMass,
        Error::NoConvergence { .. } | Error::Unresolved(_) => HlStatus::NoConvergence,
        Error::Config(_) => HlStatus::Config,
        Error::Stage { source, .. } => status_of(source),
        _ => HlStatus::Internal,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guarded(f: impl FnOnce() -> Result<(), (HlStatus, String)>) -> HlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HlStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside hodgelab");
            HlStatus::Panic
        }
    }
}

fn lib(e: Error) -> (HlStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (HlStatus, String) {
    (HlStatus::NullPointer, format!("{what} is null"))
}

fn build(spec: SurfaceSpec, out: *mut *mut HlMesh) -> HlStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let mesh = spec.build().map_err(lib)?;
        // SAFETY: checked non-null; the caller owns the pointee slot.
        unsafe { *out = Box::into_raw(Box::new(HlMesh { spec, mesh })) };
        Ok(())
    })
}

/// Builds a subdivided icosphere of the given radius.
#[no_mangle]
pub extern "C" fn hl_mesh_icosphere(level: u32, radius: f64, out: *mut *mut HlMesh) -> HlStatus {
    build(
        SurfaceSpec::Icosphere {
            level: level as usize,
            radius,
        },
        out,
    )
}

/// Builds the spheroid `(x² + y²)/a² + z²/c² = 1`.
#[no_mangle]
pub extern "C" fn hl_mesh_spheroid(level: u32, a: f64, c: f64, out: *mut *mut HlMesh) -> HlStatus {
    build(
        SurfaceSpec::Spheroid {
            level: level as usize,
            a,
            c,
        },
        out,
    )
}

/// Releases a mesh; null is ignored.
///
/// # Safety
/// `mesh` must come from a mesh constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hl_mesh_free(mesh: *mut HlMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

/// Writes vertex, edge and face counts.
///
/// # Safety
/// `mesh` must be a live handle; output pointers must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn hl_mesh_counts(
    mesh: *const HlMesh,
    vertices: *mut usize,
    edges: *mut usize,
    faces: *mut usize,
) -> HlStatus {
    guarded(|| {
        let m = mesh.as_ref().ok_or_else(|| null("mesh"))?;
        for (p, v) in [
            (vertices, m.mesh.num_vertices()),
            (edges, m.mesh.num_edges()),
            (faces, m.mesh.num_faces()),
        ] {
            if let Some(p) = p.as_mut() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// Copies vertex coordinates as `x0 y0 z0 x1 ...` into `out`, which must
/// hold `3 * vertices` doubles.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hl_mesh_vertices(mesh: *const HlMesh, out: *mut f64, len: usize) -> HlStatus {
    guarded(|| {
        let m = mesh.as_ref().ok_or_else(|| null("mesh"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let need = 3 * m.mesh.num_vertices();
        if len < need {
            return Err((
                HlStatus::InvalidArgument,
                format!("buffer holds {len} doubles, need {need}"),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(out, need);
        for (chunk, p) in dst.chunks_exact_mut(3).zip(m.mesh.vertices()) {
            chunk.copy_from_slice(&[p.x, p.y, p.z]);
        }
        Ok(())
    })
}

/// Curvature extrema `rho`, `P` and the angle-defect total.
///
/// # Safety
/// `mesh` must be a live handle; output pointers must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn hl_mesh_curvature(
    mesh: *const HlMesh,
    rho: *mut f64,
    p_max: *mut f64,
    defect_sum: *mut f64,
) -> HlStatus {
    guarded(|| {
        let m = mesh.as_ref().ok_or_else(|| null("mesh"))?;
        let b = ricci_bounds(&m.mesh, 2).map_err(lib)?;
        for (p, v) in [(rho, b.rho), (p_max, b.p_max), (defect_sum, b.defect_sum)] {
            if let Some(p) = p.as_mut() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// Lowest `count` eigenvalues of the Hodge Laplacian on `form`-forms
/// (0 or 1), ascending, with their relative residuals. `residuals` may be
/// null. `tol <= 0` selects the default solver tolerance.
///
/// # Safety
/// `eigenvalues` (and `residuals` when non-null) must hold `count` doubles.
#[no_mangle]
pub unsafe extern "C" fn hl_spectrum(
    mesh: *const HlMesh,
    form: u8,
    count: usize,
    seed: u64,
    tol: f64,
    eigenvalues: *mut f64,
    residuals: *mut f64,
) -> HlStatus {
    guarded(|| {
        let m = mesh.as_ref().ok_or_else(|| null("mesh"))?;
        if eigenvalues.is_null() {
            return Err(null("eigenvalues"));
        }
        if count == 0 {
            return Err((HlStatus::InvalidArgument, "count must be at least 1".into()));
        }
        let mut opts = SolverOptions {
            seed,
            ..SolverOptions::default()
        };
        if tol > 0.0 {
            opts.tol = tol;
        }
        let ops = DecOperators::new(&m.mesh).map_err(lib)?;
        let result = match form {
            0 => scalar_spectrum(&ops, count, &opts),
            1 => oneform_spectrum(&ops, count, &opts),
            _ => return Err((HlStatus::InvalidArgument, format!("form degree {form} is not 0 or 1"))),
        }
        .map_err(lib)?;
        if result.eigenvalues.len() < count {
            return Err((
                HlStatus::InvalidArgument,
                format!("only {} eigenpairs exist on this mesh", result.eigenvalues.len()),
            ));
        }
        std::slice::from_raw_parts_mut(eigenvalues, count).copy_from_slice(&result.eigenvalues[..count]);
        if let Some(r) = residuals.as_mut() {
            std::slice::from_raw_parts_mut(r, count).copy_from_slice(&result.residuals[..count]);
        }
        Ok(())
    })
}

/// Runs the verification suite on the handle's surface and returns the
/// JSON report. `config_json` may be null for defaults; its surface is
/// replaced by the mesh's. `passed` (optional) receives the overall verdict.
///
/// # Safety
/// `config_json` must be null or NUL-terminated UTF-8; `out_json` must be
/// valid. Free the result with [`hl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_verify(
    mesh: *const HlMesh,
    config_json: *const c_char,
    out_json: *mut *mut c_char,
    passed: *mut bool,
) -> HlStatus {
    guarded(|| {
        let m = mesh.as_ref().ok_or_else(|| null("mesh"))?;
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let mut cfg = if config_json.is_null() {
            RunConfig::default()
        } else {
            let text = CStr::from_ptr(config_json)
                .to_str()
                .map_err(|e| (HlStatus::Config, format!("config is not UTF-8: {e}")))?;
            RunConfig::from_json(text).map_err(lib)?
        };
        cfg.surface = m.spec.clone();
        let report = run_suite(&cfg).map_err(lib)?;
        let json = CString::new(report.to_json()).map_err(|e| (HlStatus::Internal, e.to_string()))?;
        *out_json = json.into_raw();
        if let Some(p) = passed.as_mut() {
            *p = report.pass;
        }
        Ok(())
    })
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn hl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
