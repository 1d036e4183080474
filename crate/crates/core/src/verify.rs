//! The verification suite: bound checks, attainment, discrete identity
//! residuals, multiplicity counts and the assembled report.

use std::f64::consts::PI;
use std::time::{SystemTime, UNIX_EPOCH};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::config::RunConfig;
use crate::curvature::{angle_defect_curvature, curvature_bounds, ellipsoid_curvature_exact, ricci_edge_weights};
use crate::error::{Error, Result};
use crate::exterior::DecOperators;
use crate::fields::{builtin_fields, AnalyticField, FieldKind};
use crate::mesh::{SurfaceSpec, TriangleMesh};
use crate::sparse::SparseOperator;
use crate::spectral::{
    dual_norm, eigenform_residual, rayleigh_quotient, solve_lowest_with, weak_eigenform_residual, SolverOptions,
    SpectrumResult,
};
use crate::sphere_oracle::{
    covariant_derivatives, generalized_tanno_residual, laplace_eigenvalue, lichnerowicz_residual, obata_residual,
    tanno_residual_auto, theorem_bounds, yano_identity_residual, BoundMode, HarmonicPoly, OracleForm, SphereContext,
};

/// Coarsest level at which resolution-dependent checks are meaningful.
pub const MIN_RESOLVED_LEVEL: usize = 3;
/// Sample points per exact-oracle check.
pub const ORACLE_POINTS: usize = 100;
/// Machine-precision threshold for exact identities.
pub const ORACLE_EXACT: f64 = 1e-12;
/// Lower threshold for residuals that must be visibly nonzero.
pub const ORACLE_DISCRIMINATING: f64 = 0.1;
/// Discrete Yano residual expected for first-order gradients.
pub const DISCRETE_DISCRIMINATING: f64 = 0.3;
/// Relative slack on spheroid curvature extrema against the exact values.
pub const CURVATURE_ORACLE_REL: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldClass {
    Killing,
    Gradient,
    Mixed,
}

/// Killing when only `dω` is visible, gradient when only `δω` is.
pub fn classify_field(norm_dstar: f64, norm_d: f64, tol: f64) -> FieldClass {
    if norm_dstar < tol && tol <= norm_d {
        FieldClass::Killing
    } else if norm_d < tol && tol <= norm_dstar {
        FieldClass::Gradient
    } else {
        FieldClass::Mixed
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attainment {
    Lower,
    Upper,
    Both,
    Interior,
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundOutcome {
    pub mode: BoundMode,
    pub lambda_hat: f64,
    pub lower: f64,
    pub upper_printed: f64,
    pub upper_rederived: Option<f64>,
    pub satisfied_printed: bool,
    pub satisfied_rederived: Option<bool>,
    /// `lower ≤ upper_printed`.
    pub consistent_printed: bool,
    /// Against the rederived upper bound where one exists.
    pub attainment: Attainment,
    pub tolerance: f64,
}

impl BoundOutcome {
    /// Satisfaction against the bound pair used for pass/fail.
    pub fn satisfied(&self) -> bool {
        self.satisfied_rederived.unwrap_or(self.satisfied_printed)
    }
}

fn within(lambda: f64, lower: f64, upper: f64, tol: f64) -> bool {
    lower * (1.0 - tol) <= lambda && lambda <= upper * (1.0 + tol)
}

/// Tolerances are relative: `λ̂ ∈ [lower(1 − tol), upper(1 + tol)]`, and an
/// endpoint `b` is attained when `|λ̂ − b| ≤ tol · b`.
pub fn check_bounds(lambda_hat: f64, rho: f64, p: f64, n: usize, mode: BoundMode, tol: f64) -> Result<BoundOutcome> {
    if !(lambda_hat > 0.0) {
        return Err(Error::Precondition(format!(
            "eigenvalue estimate must be positive, got {lambda_hat}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition("bound tolerance must be positive".into()));
    }
    let b = theorem_bounds(n, rho, p, mode)?;
    let satisfied_printed = within(lambda_hat, b.lower, b.upper, tol);
    let satisfied_rederived = b.upper_rederived.map(|u| within(lambda_hat, b.lower, u, tol));
    let upper = b.effective_upper();
    let attainment = if !satisfied_rederived.unwrap_or(satisfied_printed) {
        Attainment::None
    } else {
        let at_lower = (lambda_hat - b.lower).abs() <= tol * b.lower;
        let at_upper = (lambda_hat - upper).abs() <= tol * upper;
        match (at_lower, at_upper) {
            (true, true) => Attainment::Both,
            (true, false) => Attainment::Lower,
            (false, true) => Attainment::Upper,
            (false, false) => Attainment::Interior,
        }
    };
    Ok(BoundOutcome {
        mode,
        lambda_hat,
        lower: b.lower,
        upper_printed: b.upper,
        upper_rederived: b.upper_rederived,
        satisfied_printed,
        satisfied_rederived,
        consistent_printed: b.consistent,
        attainment,
        tolerance: tol,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `Δω = 2Ric*ω + (2/(n+1)) dδω`, satisfied by projective Killing forms.
    Yano,
    /// `Δω = 2Ric*ω − (1 − 2/n) dδω`, satisfied by conformal Killing forms.
    Lichnerowicz,
}

impl Identity {
    /// Coefficient `c` in `Δω = 2Ric*ω + c dδω` for intrinsic dimension `n`.
    pub fn coefficient(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            Identity::Yano => 2.0 / (n + 1.0),
            Identity::Lichnerowicz => -(1.0 - 2.0 / n),
        }
    }
}

/// Weak-form operators for evaluating identity residuals on a surface mesh.
pub struct IdentityContext {
    laplacian: SparseOperator,
    mass: SparseOperator,
    grad_div: SparseOperator,
    ricci: Vec<f64>,
}

impl IdentityContext {
    /// `k` holds per-vertex Gaussian curvature.
    pub fn new(mesh: &TriangleMesh, ops: &DecOperators, k: &[f64]) -> Result<Self> {
        let (laplacian, mass) = ops.laplacian1()?;
        Ok(IdentityContext {
            laplacian,
            mass,
            grad_div: ops.grad_div(),
            ricci: ricci_edge_weights(mesh, k)?,
        })
    }

    /// `‖Aω − 2⋆1 Ric*ω − c Gω‖ / ‖Aω‖` in the dual norm of `A + λ̂⋆1`,
    /// with `A` the weak Hodge Laplacian, `G` its weak `dδ` part and `λ̂`
    /// the Rayleigh quotient of `ω`.
    pub fn residual(&self, omega: &[f64], which: Identity) -> Result<f64> {
        let (lhs, shift, den) = self.reference(omega)?;
        self.relative(omega, &lhs, shift, den, which)
    }

    /// Both identities, sharing the normalization solve.
    pub fn residuals(&self, omega: &[f64]) -> Result<IdentityResiduals> {
        let (lhs, shift, den) = self.reference(omega)?;
        Ok(IdentityResiduals {
            yano: self.relative(omega, &lhs, shift, den, Identity::Yano)?,
            lichnerowicz: self.relative(omega, &lhs, shift, den, Identity::Lichnerowicz)?,
        })
    }

    fn reference(&self, omega: &[f64]) -> Result<(Vec<f64>, f64, f64)> {
        if omega.len() != self.ricci.len() {
            return Err(Error::SizeMismatch {
                expected: self.ricci.len(),
                got: omega.len(),
            });
        }
        let lambda = rayleigh_quotient(&self.laplacian, &self.mass, omega)?;
        let shift = if lambda > 0.0 { lambda } else { 1.0 };
        let lhs = self.laplacian.mul_vec(omega);
        let den = dual_norm(&self.laplacian, &self.mass, shift, &lhs)?;
        if !(den > 0.0) {
            return Err(Error::ZeroForm);
        }
        Ok((lhs, shift, den))
    }

    fn relative(&self, omega: &[f64], lhs: &[f64], shift: f64, den: f64, which: Identity) -> Result<f64> {
        let c = which.coefficient(2);
        let gd = self.grad_div.mul_vec(omega);
        let m = self.mass.diagonal();
        let r: Vec<f64> = (0..omega.len())
            .map(|e| lhs[e] - 2.0 * m[e] * self.ricci[e] * omega[e] - c * gd[e])
            .collect();
        Ok(dual_norm(&self.laplacian, &self.mass, shift, &r)? / den)
    }
}

/// Relative weak-form residual of an identity for a 1-cochain on a surface
/// mesh, with `Ric*` from fitted curvature.
pub fn discrete_identity_residual(mesh: &TriangleMesh, omega: &[f64], which: Identity) -> Result<f64> {
    let ops = DecOperators::new(mesh)?;
    let k = curvature_bounds(mesh)?;
    IdentityContext::new(mesh, &ops, &k.per_vertex_k)?.residual(omega, which)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityRecord {
    pub name: String,
    pub count: usize,
    pub bound: usize,
    pub equality: bool,
    pub pass: bool,
    pub detail: String,
}

/// Splits a cluster of 1-form eigenvectors into exact and coexact parts:
/// eigenvalues of `Vᵀ G V / λ` are 1 on exact and 0 on coexact forms.
fn exact_count(spec: &SpectrumResult, members: &[usize], grad_div: &SparseOperator, value: f64) -> Result<usize> {
    let v = DMatrix::from_fn(spec.eigenvectors.nrows(), members.len(), |r, c| {
        spec.eigenvectors[(r, members[c])]
    });
    let gv = grad_div.mul_block(&v);
    let m = v.transpose() * gv;
    let m = (&m + m.transpose()) * (0.5 / value);
    let eig = SymmetricEigen::new(m).eigenvalues;
    if let Some(bad) = eig.iter().find(|&&f| (0.1..0.9).contains(&f)) {
        return Err(Error::Unresolved(format!(
            "cluster at {value:.4} mixes exact and coexact forms (fraction {bad:.3})"
        )));
    }
    Ok(eig.iter().filter(|&&f| f >= 0.5).count())
}

/// Compares cluster dimensions of the 1-form spectrum on a sphere mesh with
/// the algebra dimension bounds `(n+1)(n+2)/2` (conformal) and `n(n+2)`
/// (projective).
///
/// The first cluster holds Killing and first-order gradient forms; the
/// projective count adds the exact part of the second cluster to the
/// Killing part of the first.
pub fn multiplicity_check(spec: &SpectrumResult, ops: &DecOperators, n: usize) -> Result<Vec<MultiplicityRecord>> {
    if n != 2 {
        return Err(Error::Unsupported(format!(
            "multiplicity check is defined for surfaces, got n = {n}"
        )));
    }
    if spec.eigenvectors.nrows() != ops.num_edges() {
        return Err(Error::SizeMismatch {
            expected: ops.num_edges(),
            got: spec.eigenvectors.nrows(),
        });
    }
    let [first, second] = match spec.groups.as_slice() {
        [a, b, ..] => [a, b],
        _ => {
            return Err(Error::Unresolved(format!(
                "found {} eigenvalue group(s), need 2",
                spec.groups.len()
            )))
        }
    };
    let expected_ratio = 2.0 * (n + 1) as f64 / n as f64;
    let ratio = second.value / first.value;
    if !first.value.is_finite() || first.value <= 0.0 || (ratio / expected_ratio - 1.0).abs() > 0.1 {
        return Err(Error::Unresolved(format!(
            "cluster ratio {ratio:.3} differs from {expected_ratio:.3}"
        )));
    }
    let grad_div = ops.grad_div();
    let exact_first = exact_count(spec, &first.members, &grad_div, first.value)?;
    let exact_second = exact_count(spec, &second.members, &grad_div, second.value)?;
    let killing = first.multiplicity - exact_first;

    let conformal_bound = (n + 1) * (n + 2) / 2;
    let projective_bound = n * (n + 2);
    let projective = exact_second + killing;
    let record = |name: &str, count: usize, bound: usize, detail: String| MultiplicityRecord {
        name: name.into(),
        count,
        bound,
        equality: count == bound,
        pass: count <= bound,
        detail,
    };
    Ok(vec![
        record(
            "conformal",
            first.multiplicity,
            conformal_bound,
            format!(
                "{killing} Killing + {exact_first} gradient forms at λ ≈ {:.6}",
                first.value
            ),
        ),
        record(
            "projective",
            projective,
            projective_bound,
            format!(
                "{killing} Killing + {exact_second} gradient forms at λ ≈ {:.6}",
                second.value
            ),
        ),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Info,
    Skipped,
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MeshSummary {
    pub kind: String,
    pub surface: String,
    pub level: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureSummary {
    pub rho: f64,
    #[serde(rename = "P")]
    pub p_max: f64,
    pub defect_sum: f64,
    /// Extrema of angle defect over mixed area, for comparison.
    pub defect_rho: f64,
    #[serde(rename = "defect_P")]
    pub defect_p_max: f64,
    /// Closed-form extrema of `K` over the mesh vertices.
    pub exact_min: f64,
    pub exact_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupSummary {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SpectrumSummary {
    pub eigenvalues: Vec<f64>,
    pub residuals: Vec<f64>,
    pub groups: Vec<GroupSummary>,
    pub iterations: usize,
}

impl From<&SpectrumResult> for SpectrumSummary {
    fn from(s: &SpectrumResult) -> Self {
        SpectrumSummary {
            eigenvalues: s.eigenvalues.clone(),
            residuals: s.residuals.clone(),
            groups: s
                .groups
                .iter()
                .map(|g| GroupSummary {
                    value: g.value,
                    multiplicity: g.multiplicity,
                })
                .collect(),
            iterations: s.iterations,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Spectra {
    pub scalar: Option<SpectrumSummary>,
    pub oneform: Option<SpectrumSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityResiduals {
    pub yano: f64,
    pub lichnerowicz: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldRecord {
    pub name: String,
    pub family: String,
    #[serde(rename = "lambda")]
    pub lambda_hat: f64,
    /// Weak residual in the dual norm of `A + λ̂B`.
    pub eigenform_residual: f64,
    /// Strong residual `‖Aω − λ̂Bω‖_{B⁻¹} / ‖ω‖_B`; stalls at the sampling
    /// consistency error, reported for reference.
    pub eigenform_residual_strong: f64,
    pub dstar_norm: f64,
    pub d_norm: f64,
    #[serde(rename = "class")]
    pub class: FieldClass,
    pub expected_class: Option<FieldClass>,
    pub bounds: Vec<BoundOutcome>,
    pub bounds_skipped: Option<String>,
    pub identities: IdentityResiduals,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Below,
    Above,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleRecord {
    pub check: String,
    pub n: usize,
    pub radius: f64,
    /// Worst case over sample points: max for `below`, min for `above`.
    pub value: f64,
    pub expect: Expect,
    pub threshold: f64,
    pub mandatory: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub mesh: MeshSummary,
    pub curvature: Option<CurvatureSummary>,
    pub spectra: Spectra,
    pub fields: Vec<FieldRecord>,
    pub oracle: Vec<OracleRecord>,
    pub multiplicity: Vec<MultiplicityRecord>,
    pub checks: Vec<CheckRecord>,
    pub seed: u64,
    pub pass: bool,
    /// Seconds since the Unix epoch; excluded from reproducibility checks.
    pub timestamp: u64,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn field(&self, name: &str) -> Option<&FieldRecord> {
        self.fields.iter().find(|f| f.name == name)
    }

    /// Text table of the `checks` entries of the JSON report.
    pub fn table(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        render_table(&value)
    }
}

/// Renders the `checks` array of a serialized report.
pub fn render_table(report: &serde_json::Value) -> String {
    let rows: Vec<(String, String, String)> = report["checks"]
        .as_array()
        .map(|checks| {
            checks
                .iter()
                .map(|c| {
                    let s = |k: &str| c[k].as_str().unwrap_or_default().to_string();
                    (s("name"), s("status").to_uppercase(), s("detail"))
                })
                .collect()
        })
        .unwrap_or_default();
    let labels: Vec<String> = rows
        .iter()
        .map(|(name, status, _)| format!("{name}: {status}"))
        .collect();
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0).max(13);
    let mut out = format!("{:<width$}  detail\n", "check: status");
    for (label, (_, _, detail)) in labels.iter().zip(&rows) {
        out.push_str(&format!("{label:<width$}  {detail}\n"));
    }
    let pass = report["pass"].as_bool().unwrap_or(false);
    out.push_str(&format!("overall: {}\n", if pass { "PASS" } else { "FAIL" }));
    out
}

struct Recorder<'a> {
    report: &'a mut VerificationReport,
}

impl Recorder<'_> {
    fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.report.checks.push(CheckRecord {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    fn verdict(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    fn unresolved(&mut self, name: impl Into<String>) {
        self.push(name, Status::Skipped, "insufficient resolution");
    }
}

fn rel_err(x: f64, target: f64) -> f64 {
    (x - target).abs() / target.abs()
}

/// Runs every stage in order. Stage failures are recorded in the report
/// (and fail it) rather than returned; only an invalid config is an error.
pub fn run_suite(cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut report = VerificationReport {
        mesh: MeshSummary::default(),
        curvature: None,
        spectra: Spectra::default(),
        fields: Vec::new(),
        oracle: Vec::new(),
        multiplicity: Vec::new(),
        checks: Vec::new(),
        seed: cfg.seed,
        pass: false,
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    let outcome = populate(cfg, &mut Recorder { report: &mut report });
    if let Err(e) = outcome {
        report.checks.push(CheckRecord {
            name: "pipeline".into(),
            status: Status::Fail,
            detail: e.to_string(),
        });
    }
    report.pass = report.checks.iter().all(|c| c.status != Status::Fail);
    Ok(report)
}

pub fn solver_options(cfg: &RunConfig) -> SolverOptions {
    SolverOptions {
        tol: cfg.tolerances.solver_tol,
        seed: cfg.seed,
        rel_gap: cfg.tolerances.group_rel_gap,
        ..SolverOptions::default()
    }
}

/// Scalar spectrum with the constants deflated.
pub fn scalar_spectrum(ops: &DecOperators, m: usize, opts: &SolverOptions) -> Result<SpectrumResult> {
    let (a, b) = ops.laplacian0();
    let opts = SolverOptions {
        deflate: vec![vec![1.0; ops.num_vertices()]],
        ..opts.clone()
    };
    solve_lowest_with(&a, &b, m.min(ops.num_vertices()), &opts)
}

pub fn oneform_spectrum(ops: &DecOperators, m: usize, opts: &SolverOptions) -> Result<SpectrumResult> {
    let (a, b) = ops.laplacian1()?;
    solve_lowest_with(&a, &b, m.min(ops.num_edges()), opts)
}

fn populate(cfg: &RunConfig, rec: &mut Recorder<'_>) -> Result<()> {
    let surface = &cfg.surface;
    let tol = &cfg.tolerances;
    let resolved = surface.level() >= MIN_RESOLVED_LEVEL;
    let radius = surface.sphere_radius();
    let n = 2;

    // Mesh.
    let mesh = surface.build().map_err(|e| e.at("mesh"))?;
    let validation = mesh.validate();
    rec.report.mesh = MeshSummary {
        kind: surface.kind_name().into(),
        surface: surface.to_string(),
        level: surface.level(),
        vertices: mesh.num_vertices(),
        edges: mesh.num_edges(),
        faces: mesh.num_faces(),
        euler: mesh.euler_characteristic(),
        valid: validation.passed(),
    };
    let failures: Vec<String> = validation
        .failures()
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    rec.verdict(
        "mesh validation",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "V={} E={} F={}",
                mesh.num_vertices(),
                mesh.num_edges(),
                mesh.num_faces()
            )
        } else {
            failures.join("; ")
        },
    );
    if !failures.is_empty() {
        return Err(Error::InvalidMesh(failures.join("; ")).at("mesh"));
    }

    // Curvature.
    let curv = curvature_bounds(&mesh).map_err(|e| e.at("curvature"))?;
    let defect = angle_defect_curvature(&mesh).map_err(|e| e.at("curvature"))?;
    let [a, b, c] = surface.semi_axes();
    let exact: Vec<f64> = mesh
        .vertices()
        .iter()
        .map(|p| ellipsoid_curvature_exact(a, b, c, p))
        .collect::<Result<_>>()
        .map_err(|e| e.at("curvature"))?;
    let exact_min = exact.iter().copied().fold(f64::INFINITY, f64::min);
    let exact_max = exact.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    rec.report.curvature = Some(CurvatureSummary {
        rho: curv.rho,
        p_max: curv.p_max,
        defect_sum: curv.defect_sum,
        defect_rho: defect.rho,
        defect_p_max: defect.p_max,
        exact_min,
        exact_max,
    });
    let gb = 2.0 * PI * mesh.euler_characteristic() as f64;
    rec.verdict(
        "gauss-bonnet",
        (curv.defect_sum - gb).abs() < 1e-10,
        format!("defect sum {:.15} vs {gb:.15}", curv.defect_sum),
    );
    let curvature_tol = if radius.is_some() {
        tol.bound_rel
    } else {
        CURVATURE_ORACLE_REL
    };
    if resolved {
        let ok = rel_err(curv.rho, exact_min) <= curvature_tol && rel_err(curv.p_max, exact_max) <= curvature_tol;
        rec.verdict(
            "curvature extrema",
            ok,
            format!(
                "rho {:.6} vs {exact_min:.6}, P {:.6} vs {exact_max:.6} (rel tol {curvature_tol})",
                curv.rho, curv.p_max
            ),
        );
    } else {
        rec.unresolved("curvature extrema");
    }

    // Operators and spectra.
    let ops = DecOperators::new(&mesh).map_err(|e| e.at("operators"))?;
    let (a1, b1) = ops.laplacian1().map_err(|e| e.at("operators"))?;
    let opts = solver_options(cfg);
    let scalar = scalar_spectrum(&ops, cfg.scalar_eigenpairs, &opts).map_err(|e| e.at("scalar spectrum"))?;
    rec.report.spectra.scalar = Some(SpectrumSummary::from(&scalar));
    let oneform = solve_lowest_with(&a1, &b1, cfg.eigenpairs.min(ops.num_edges()), &opts)
        .map_err(|e| e.at("one-form spectrum"))?;
    rec.report.spectra.oneform = Some(SpectrumSummary::from(&oneform));

    match radius {
        Some(r) if resolved => {
            let alpha = 1.0 / (r * r);
            let ctx = SphereContext::new(n, r)?;
            let mu1 = laplace_eigenvalue(1, &ctx);
            let mu2 = laplace_eigenvalue(2, &ctx);
            let group_check =
                |groups: &[crate::spectral::EigenGroup], i: usize, target: f64, mult: usize, rel: f64| match groups
                    .get(i)
                {
                    Some(g) => (
                        rel_err(g.value, target) <= rel && g.multiplicity == mult,
                        format!("{:.6} x{} vs {target} x{mult} (rel tol {rel})", g.value, g.multiplicity),
                    ),
                    None => (false, format!("group {i} missing")),
                };
            let (ok, d) = group_check(&scalar.groups, 1, mu1, n + 1, 0.005);
            rec.verdict("scalar spectrum: first cluster", ok, d);
            let (ok, d) = group_check(&scalar.groups, 2, mu2, 5, 0.01);
            rec.verdict("scalar spectrum: second cluster", ok, d);
            let (ok, d) = group_check(&oneform.groups, 0, mu1, 2 * (n + 1), 0.01);
            rec.verdict("one-form spectrum: first cluster", ok, d);
            let (ok, d) = group_check(&oneform.groups, 1, mu2, 10, 0.015);
            rec.verdict("one-form spectrum: second cluster", ok, d);
            let lowest = oneform.eigenvalues.first().copied().unwrap_or(f64::NAN);
            rec.verdict(
                "one-form spectrum: no harmonic forms",
                lowest >= alpha,
                format!("lowest eigenvalue {lowest:.6} (threshold {alpha})"),
            );
        }
        Some(_) => rec.unresolved("spectrum targets"),
        None => rec.push(
            "spectrum targets",
            Status::Info,
            "no closed-form spectrum for this surface",
        ),
    }

    // Fields.
    let fields: Vec<(String, AnalyticField)> = if cfg.fields.is_empty() {
        builtin_fields(surface).map_err(|e| e.at("fields"))?
    } else {
        cfg.fields
            .iter()
            .map(|f| Ok((f.name.clone(), AnalyticField::new(f.kind.clone(), surface.clone())?)))
            .collect::<Result<_>>()
            .map_err(|e| e.at("fields"))?
    };
    let identities = IdentityContext::new(&mesh, &ops, &curv.per_vertex_k).map_err(|e| e.at("identities"))?;
    let mut printed_violations = 0;
    let mut projective_records = 0;
    for (name, field) in &fields {
        let record =
            field_record(name, field, &mesh, &ops, &a1, &b1, &identities, &curv, cfg).map_err(|e| e.at("fields"))?;
        check_field(rec, &record, field.kind(), radius.is_some(), resolved, tol.identity_tol);
        for b in record.bounds.iter().filter(|b| b.mode == BoundMode::Projective) {
            projective_records += 1;
            if !b.satisfied_printed {
                printed_violations += 1;
            }
        }
        rec.report.fields.push(record);
    }
    if let Ok(bounds) = theorem_bounds(n, curv.rho, curv.p_max, BoundMode::Projective) {
        if !bounds.consistent || printed_violations > 0 {
            let evaluated = if projective_records == 0 {
                "no projective records were evaluated".to_string()
            } else {
                format!("{printed_violations} of {projective_records} projective records violate it")
            };
            rec.push(
                "projective upper (printed)",
                Status::Inconsistent,
                format!(
                    "2(n-1)P/(n+1) = {:.6} is below the lower bound 2rho = {:.6}; {evaluated}; \
                     rederived 2(n+1)P/(n-1) = {:.6} used",
                    bounds.upper,
                    bounds.lower,
                    bounds.effective_upper()
                ),
            );
        }
    }
    rec.push(
        "lichnerowicz identity at n = 2",
        Status::Info,
        "coefficient (1 - 2/n) vanishes; residual reduces to |Δω - 2Ric*ω|",
    );

    // Exact oracle.
    let oracle = oracle_battery(cfg.seed);
    summarize_oracle(rec, &oracle);
    rec.report.oracle = oracle;

    // Multiplicities.
    match radius {
        Some(_) if resolved => {
            let records = multiplicity_check(&oneform, &ops, n).map_err(|e| e.at("multiplicity"))?;
            for r in &records {
                rec.verdict(
                    format!("multiplicity: {}", r.name),
                    r.pass,
                    format!(
                        "{} {} {} ({})",
                        r.count,
                        if r.equality { "=" } else { "<=" },
                        r.bound,
                        r.detail
                    ),
                );
            }
            rec.report.multiplicity = records;
        }
        Some(_) => rec.unresolved("multiplicity"),
        None => rec.push(
            "multiplicity",
            Status::Info,
            "dimension bounds are checked on spheres only",
        ),
    }
    Ok(())
}

fn bound_modes(kind: &FieldKind) -> &'static [BoundMode] {
    match kind {
        FieldKind::KillingRotation { .. } => &[BoundMode::Conformal, BoundMode::Projective],
        FieldKind::ConformalGradient { .. } => &[BoundMode::Conformal],
        FieldKind::ProjectiveGradient { .. } => &[BoundMode::Projective],
        FieldKind::Modulated { .. } => &[],
    }
}

fn expected_class(kind: &FieldKind) -> Option<FieldClass> {
    match kind {
        FieldKind::KillingRotation { .. } => Some(FieldClass::Killing),
        FieldKind::ConformalGradient { .. } | FieldKind::ProjectiveGradient { .. } => Some(FieldClass::Gradient),
        FieldKind::Modulated { .. } => None,
    }
}

#[allow(clippy::too_many_arguments)]
fn field_record(
    name: &str,
    field: &AnalyticField,
    mesh: &TriangleMesh,
    ops: &DecOperators,
    a1: &SparseOperator,
    b1: &SparseOperator,
    identities: &IdentityContext,
    curv: &crate::curvature::CurvatureBounds,
    cfg: &RunConfig,
) -> Result<FieldRecord> {
    let omega = field.sample_oneform(mesh)?;
    let w = omega.values();
    let lambda_hat = rayleigh_quotient(a1, b1, w)?;
    let residual = weak_eigenform_residual(a1, b1, w)?;
    let strong = eigenform_residual(a1, b1, w)?;
    let (dstar_norm, d_norm) = ops.codifferential_norm(w)?;
    let class = classify_field(dstar_norm, d_norm, cfg.tolerances.class_tol);
    let on_sphere = cfg.surface.sphere_radius().is_some();

    let (bounds, bounds_skipped) = if residual > cfg.tolerances.eigenform_tol {
        (Vec::new(), Some("hypothesis Δω = λω violated".to_string()))
    } else if bound_modes(field.kind()).is_empty() {
        (Vec::new(), Some("not a Killing-type field".to_string()))
    } else if !(curv.rho > 0.0) {
        (
            Vec::new(),
            Some(format!("bounds need rho > 0; estimated rho = {:.4e}", curv.rho)),
        )
    } else {
        let b = bound_modes(field.kind())
            .iter()
            .map(|&mode| check_bounds(lambda_hat, curv.rho, curv.p_max, 2, mode, cfg.tolerances.bound_rel))
            .collect::<Result<Vec<_>>>()?;
        (b, None)
    };
    Ok(FieldRecord {
        name: name.into(),
        family: field.kind().family().into(),
        lambda_hat,
        eigenform_residual: residual,
        eigenform_residual_strong: strong,
        dstar_norm,
        d_norm,
        class,
        expected_class: if on_sphere { expected_class(field.kind()) } else { None },
        bounds,
        bounds_skipped,
        identities: identities.residuals(w)?,
    })
}

fn check_field(
    rec: &mut Recorder<'_>,
    f: &FieldRecord,
    kind: &FieldKind,
    sphere: bool,
    resolved: bool,
    identity_tol: f64,
) {
    let name = &f.name;
    if !resolved {
        rec.unresolved(format!("field {name}"));
        return;
    }
    if let Some(expected) = f.expected_class {
        rec.verdict(
            format!("field {name}: class"),
            f.class == expected,
            format!(
                "{:?} (expected {:?}); |d*w| {:.2e}, |dw| {:.2e}",
                f.class, expected, f.dstar_norm, f.d_norm
            ),
        );
    }
    let eigen_detail = format!(
        "eigenform residual {:.3e}, lambda {:.6}",
        f.eigenform_residual, f.lambda_hat
    );
    match (&f.bounds_skipped, sphere) {
        (Some(reason), _) if reason.starts_with("hypothesis") => {
            let status = if sphere { Status::Fail } else { Status::Info };
            rec.push(
                format!("field {name}: not an eigenform"),
                status,
                format!("{eigen_detail}; bounds skipped: {reason}"),
            );
        }
        (Some(reason), _) => rec.push(format!("field {name}: bounds"), Status::Info, reason.clone()),
        (None, _) => {
            for b in &f.bounds {
                let mode = match b.mode {
                    BoundMode::Conformal => "conformal",
                    BoundMode::Projective => "projective",
                };
                // On a round sphere every Killing-type eigenform is extremal.
                let attained = !sphere || !matches!(b.attainment, Attainment::Interior | Attainment::None);
                let upper = b.upper_rederived.unwrap_or(b.upper_printed);
                rec.verdict(
                    format!("field {name}: {mode} bounds"),
                    b.satisfied() && attained,
                    format!(
                        "{:.4} <= {:.6} <= {:.4}, attainment {:?}",
                        b.lower, b.lambda_hat, upper, b.attainment
                    ),
                );
            }
        }
    }
    if sphere {
        let yano = f.identities.yano;
        match kind {
            FieldKind::KillingRotation { .. } | FieldKind::ProjectiveGradient { .. } => rec.verdict(
                format!("field {name}: yano identity"),
                yano < identity_tol,
                format!("residual {yano:.3e} < {identity_tol}"),
            ),
            FieldKind::ConformalGradient { .. } => rec.verdict(
                format!("field {name}: yano identity"),
                yano > DISCRETE_DISCRIMINATING,
                format!("residual {yano:.3e} > {DISCRETE_DISCRIMINATING} (not projective Killing)"),
            ),
            FieldKind::Modulated { .. } => {}
        }
    }
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(dim, |_, _| StandardNormal.sample(rng));
        let n: f64 = v.norm();
        if n > 1e-3 {
            return v / n;
        }
    }
}

fn random_traceless(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<f64> {
    let m = DMatrix::from_fn(dim, dim, |_, _| StandardNormal.sample(rng));
    let s = (&m + m.transpose()) * 0.5;
    let t = s.trace() / dim as f64;
    let q = s - DMatrix::identity(dim, dim) * t;
    let n = q.norm();
    q / n
}

fn random_skew(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<f64> {
    let m = DMatrix::from_fn(dim, dim, |_, _| StandardNormal.sample(rng));
    let a = (&m - m.transpose()) * 0.5;
    let n = a.norm();
    a / n
}

/// Dimensions and radii covered by the exact oracle.
pub const ORACLE_DIMENSIONS: [usize; 3] = [2, 3, 5];
pub const ORACLE_RADII: [f64; 2] = [1.0, 2.0];

/// Worst-case exact residuals over random points of `S^n(r)` for every
/// identity, each against its expected outcome.
pub fn oracle_battery(seed: u64) -> Vec<OracleRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in ORACLE_DIMENSIONS {
        for r in ORACLE_RADII {
            let ctx = SphereContext::new(n, r).expect("valid sphere");
            let dim = n + 1;
            let lin = HarmonicPoly::linear(random_unit(&mut rng, dim));
            let quad = HarmonicPoly::quadratic(random_traceless(&mut rng, dim)).expect("traceless");
            let skew = OracleForm::Rotation(random_skew(&mut rng, dim));
            let grad1 = OracleForm::Gradient(lin.clone());
            let grad2 = OracleForm::Gradient(quad.clone());
            let points: Vec<DVector<f64>> = (0..ORACLE_POINTS).map(|_| random_unit(&mut rng, dim) * r).collect();

            let mut add =
                |check: &str, expect: Expect, threshold: f64, mandatory: bool, f: &dyn Fn(&DVector<f64>) -> f64| {
                    let values = points.iter().map(f);
                    let value = match expect {
                        Expect::Below => values.fold(0.0, f64::max),
                        Expect::Above => values.fold(f64::INFINITY, f64::min),
                    };
                    let pass = match expect {
                        Expect::Below => value < threshold,
                        Expect::Above => value > threshold,
                    };
                    out.push(OracleRecord {
                        check: check.into(),
                        n,
                        radius: r,
                        value,
                        expect,
                        threshold,
                        mandatory,
                        pass,
                    });
                };
            let exact = ORACLE_EXACT;
            let disc = ORACLE_DISCRIMINATING;
            let nan = |r: Result<f64>| r.unwrap_or(f64::NAN);
            for (label, f) in [("l=1", &lin), ("l=2", &quad)] {
                add(&format!("laplacian trace {label}"), Expect::Below, exact, true, &|x| {
                    let d = covariant_derivatives(f, &ctx, x).expect("on sphere");
                    let mu = laplace_eigenvalue(f.degree(), &ctx);
                    (d.hess.trace() + mu * d.value).abs() / (mu * d.value.abs()).max(d.df.norm() * ctx.alpha())
                });
            }
            add("obata l=1", Expect::Below, exact, true, &|x| {
                nan(obata_residual(&lin, &ctx, x))
            });
            add("tanno k=alpha l=2", Expect::Below, exact, true, &|x| {
                nan(tanno_residual_auto(&quad, &ctx, x))
            });
            add("tanno k=alpha l=1", Expect::Below, exact, false, &|x| {
                nan(tanno_residual_auto(&lin, &ctx, x))
            });
            let gt = |f: &HarmonicPoly, x: &DVector<f64>, positive: bool| {
                generalized_tanno_residual(f, &ctx, x)
                    .map(|g| if positive { g.positive } else { g.negative })
                    .unwrap_or(f64::NAN)
            };
            add("generalized tanno +phi l=2", Expect::Below, exact, true, &|x| {
                gt(&quad, x, true)
            });
            add("generalized tanno -phi l=2", Expect::Above, disc, false, &|x| {
                gt(&quad, x, false)
            });
            add("generalized tanno +phi l=1", Expect::Below, exact, false, &|x| {
                gt(&lin, x, true)
            });
            add("generalized tanno -phi l=1", Expect::Below, exact, false, &|x| {
                gt(&lin, x, false)
            });
            add("yano killing", Expect::Below, exact, true, &|x| {
                nan(yano_identity_residual(&skew, &ctx, x))
            });
            add("yano l=2", Expect::Below, exact, true, &|x| {
                nan(yano_identity_residual(&grad2, &ctx, x))
            });
            add("yano l=1", Expect::Above, disc, true, &|x| {
                nan(yano_identity_residual(&grad1, &ctx, x))
            });
            add("lichnerowicz killing", Expect::Below, exact, true, &|x| {
                nan(lichnerowicz_residual(&skew, &ctx, x))
            });
            add("lichnerowicz l=1", Expect::Below, exact, true, &|x| {
                nan(lichnerowicz_residual(&grad1, &ctx, x))
            });
            add("lichnerowicz l=2", Expect::Above, disc, true, &|x| {
                nan(lichnerowicz_residual(&grad2, &ctx, x))
            });
        }
    }
    out
}

fn summarize_oracle(rec: &mut Recorder<'_>, records: &[OracleRecord]) {
    let mut names: Vec<&str> = Vec::new();
    for r in records {
        if !names.contains(&r.check.as_str()) {
            names.push(&r.check);
        }
    }
    for name in names {
        let group: Vec<&OracleRecord> = records.iter().filter(|r| r.check == name).collect();
        let all_pass = group.iter().all(|r| r.pass);
        let worst = match group[0].expect {
            Expect::Below => group.iter().map(|r| r.value).fold(0.0, f64::max),
            Expect::Above => group.iter().map(|r| r.value).fold(f64::INFINITY, f64::min),
        };
        let relation = match group[0].expect {
            Expect::Below => "<",
            Expect::Above => ">",
        };
        let detail = format!("worst {worst:.3e} (expected {relation} {:e})", group[0].threshold);
        let status = match (group[0].mandatory, all_pass) {
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
            (false, _) => Status::Info,
        };
        rec.push(format!("oracle: {name}"), status, detail);
    }
}

/// Fields and their exact eigenvalue on a sphere, for convergence studies.
pub fn sphere_target(surface: &SurfaceSpec, form: u8, cluster: usize) -> Result<f64> {
    let r = surface
        .sphere_radius()
        .ok_or_else(|| Error::Unsupported("convergence targets are known on spheres only".into()))?;
    let ctx = SphereContext::new(2, r)?;
    match (form, cluster) {
        (0 | 1, 1) => Ok(laplace_eigenvalue(1, &ctx)),
        (0 | 1, 2) => Ok(laplace_eigenvalue(2, &ctx)),
        _ => Err(Error::Precondition(format!(
            "no target for form {form}, cluster {cluster}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        assert_eq!(classify_field(1e-6, 0.8, 1e-3), FieldClass::Killing);
        assert_eq!(classify_field(0.9, 1e-7, 1e-3), FieldClass::Gradient);
        assert_eq!(classify_field(0.5, 0.5, 1e-3), FieldClass::Mixed);
        assert_eq!(classify_field(1e-6, 1e-6, 1e-3), FieldClass::Mixed);
    }

    #[test]
    fn bound_examples() {
        let c = check_bounds(2.0, 1.0, 1.0, 2, BoundMode::Conformal, 0.02).unwrap();
        assert!(c.satisfied_printed && c.consistent_printed);
        assert_eq!(c.attainment, Attainment::Both);

        let p = check_bounds(6.0, 1.0, 1.0, 2, BoundMode::Projective, 0.02).unwrap();
        assert!(!p.satisfied_printed && !p.consistent_printed);
        assert_eq!(p.satisfied_rederived, Some(true));
        assert_eq!(p.attainment, Attainment::Upper);

        let k = check_bounds(2.0, 1.0, 1.0, 2, BoundMode::Projective, 0.02).unwrap();
        assert_eq!(k.attainment, Attainment::Lower);
        let mid = check_bounds(4.0, 1.0, 1.0, 2, BoundMode::Projective, 0.02).unwrap();
        assert_eq!(mid.attainment, Attainment::Interior);
        let out = check_bounds(7.0, 1.0, 1.0, 2, BoundMode::Projective, 0.02).unwrap();
        assert_eq!(out.attainment, Attainment::None);

        assert!(check_bounds(2.0, 2.0, 1.0, 2, BoundMode::Conformal, 0.02).is_err());
        assert!(check_bounds(0.0, 1.0, 1.0, 2, BoundMode::Conformal, 0.02).is_err());
    }

    #[test]
    fn identity_coefficients() {
        assert_eq!(Identity::Yano.coefficient(2), 2.0 / 3.0);
        assert_eq!(Identity::Lichnerowicz.coefficient(2), 0.0);
        assert_eq!(Identity::Lichnerowicz.coefficient(4), -0.5);
    }

    #[test]
    fn oracle_battery_outcomes() {
        let records = oracle_battery(7);
        assert!(records.iter().filter(|r| r.mandatory).all(|r| r.pass), "{records:#?}");
        // First eigenfunctions never satisfy the third-order system.
        assert!(records
            .iter()
            .filter(|r| r.check == "tanno k=alpha l=1")
            .all(|r| r.value > 0.1));
    }

    #[test]
    fn table_renders_checks() {
        let value = serde_json::json!({
            "checks": [{"name": "a", "status": "inconsistent", "detail": "x"}],
            "pass": true
        });
        let t = render_table(&value);
        assert!(t.contains("a: INCONSISTENT"));
        assert!(t.ends_with("overall: PASS\n"));
    }
}
