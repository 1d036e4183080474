//! Exact covariant calculus on round spheres `S^n(r) ⊂ R^{n+1}`.
//!
//! Test functions are restrictions of harmonic homogeneous polynomials of
//! degree `ℓ ≤ 2`, so every derivative is available in closed form. Tensors
//! are returned in ambient coordinates, projected onto the tangent space.
//! In a third derivative `T[z][x][y]` the first slot is the derivative
//! direction: `T(Z; X, Y) = (∇_Z ∇² f)(X, Y)`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on `|x| = r` for evaluation points.
const ON_SPHERE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereContext {
    n: usize,
    r: f64,
}

impl SphereContext {
    pub fn new(n: usize, r: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!(
                "sphere dimension must be at least 2, got {n}"
            )));
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Precondition(format!("sphere radius must be positive, got {r}")));
        }
        Ok(SphereContext { n, r })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    /// Sectional curvature `1/r²`.
    pub fn alpha(&self) -> f64 {
        1.0 / (self.r * self.r)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n + 1
    }

    fn check_point(&self, x: &DVector<f64>) -> Result<()> {
        if x.len() != self.ambient_dim() {
            return Err(Error::SizeMismatch {
                expected: self.ambient_dim(),
                got: x.len(),
            });
        }
        let defect = x.norm() - self.r;
        if defect.abs() > ON_SPHERE_TOL * self.r.max(1.0) {
            return Err(Error::OffSurface(defect));
        }
        Ok(())
    }

    fn projector(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let nrm = x / self.r;
        DMatrix::identity(self.ambient_dim(), self.ambient_dim()) - &nrm * nrm.transpose()
    }

    /// Orthonormal tangent frame at `x` as the columns of an `(n+1) × n`
    /// matrix, from the Householder reflection taking `x/r` to the last axis.
    pub fn tangent_frame(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        self.check_point(x)?;
        let dim = self.ambient_dim();
        let mut v = x / self.r;
        v[dim - 1] -= 1.0;
        let h = if v.norm() < 1e-12 {
            DMatrix::identity(dim, dim)
        } else {
            DMatrix::identity(dim, dim) - 2.0 * &v * v.transpose() / v.norm_squared()
        };
        Ok(h.columns(0, self.n).into_owned())
    }
}

/// `f = c + a·x + xᵀQx`, harmonic and homogeneous of one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicPoly {
    degree: usize,
    constant: f64,
    linear: DVector<f64>,
    quadratic: DMatrix<f64>,
}

impl HarmonicPoly {
    pub fn constant(dim: usize, c: f64) -> Self {
        HarmonicPoly {
            degree: 0,
            constant: c,
            linear: DVector::zeros(dim),
            quadratic: DMatrix::zeros(dim, dim),
        }
    }

    pub fn linear(a: DVector<f64>) -> Self {
        let dim = a.len();
        HarmonicPoly {
            degree: 1,
            constant: 0.0,
            linear: a,
            quadratic: DMatrix::zeros(dim, dim),
        }
    }

    /// `Q` must be symmetric and traceless.
    pub fn quadratic(q: DMatrix<f64>) -> Result<Self> {
        if !q.is_square() {
            return Err(Error::Precondition("Q must be square".into()));
        }
        let scale = q.abs().max().max(1.0);
        if (&q - q.transpose()).abs().max() > 1e-12 * scale {
            return Err(Error::Precondition("Q must be symmetric".into()));
        }
        if q.trace().abs() > 1e-12 * scale {
            return Err(Error::Precondition(format!(
                "xᵀQx is harmonic only for traceless Q (trace {})",
                q.trace()
            )));
        }
        Ok(HarmonicPoly {
            degree: 2,
            constant: 0.0,
            linear: DVector::zeros(q.nrows()),
            quadratic: q,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.linear.len()
    }

    pub fn value(&self, x: &DVector<f64>) -> f64 {
        self.constant + self.linear.dot(x) + x.dot(&(&self.quadratic * x))
    }

    /// Ambient gradient `∂F`.
    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.linear + 2.0 * (&self.quadratic * x)
    }

    /// Ambient Hessian `∂²F`.
    fn hessian(&self) -> DMatrix<f64> {
        2.0 * &self.quadratic
    }

    /// Same polynomial in rotated coordinates: `f ∘ Rᵀ`.
    pub fn rotated(&self, rot: &DMatrix<f64>) -> Self {
        HarmonicPoly {
            degree: self.degree,
            constant: self.constant,
            linear: rot * &self.linear,
            quadratic: rot * &self.quadratic * rot.transpose(),
        }
    }
}

/// `μ = ℓ(ℓ + n − 1)α`, the eigenvalue of `Δ = −div grad` on degree-`ℓ`
/// spherical harmonics.
pub fn laplace_eigenvalue(degree: usize, ctx: &SphereContext) -> f64 {
    (degree * (degree + ctx.n - 1)) as f64 * ctx.alpha()
}

/// Third-order tensor with `(n+1)³` entries, row-major in `[z][x][y]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    dim: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    fn zeros(dim: usize) -> Self {
        Tensor3 {
            dim,
            data: vec![0.0; dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, z: usize, x: usize, y: usize) -> f64 {
        self.data[(z * self.dim + x) * self.dim + y]
    }

    fn set(&mut self, z: usize, x: usize, y: usize, v: f64) {
        self.data[(z * self.dim + x) * self.dim + y] = v;
    }

    /// `T(Z; X, Y)` for ambient vectors.
    pub fn apply(&self, z: &DVector<f64>, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        let mut acc = 0.0;
        for a in 0..self.dim {
            for b in 0..self.dim {
                for c in 0..self.dim {
                    acc += self.get(a, b, c) * z[a] * x[b] * y[c];
                }
            }
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct Derivatives {
    pub value: f64,
    pub df: DVector<f64>,
    pub hess: DMatrix<f64>,
    pub third: Tensor3,
}

/// `df`, `∇²f` and `∇³f` at a point of the sphere.
///
/// With `N = x/r`, `P = I − NNᵀ` and ambient derivatives `F₁ = ∂F`, `F₂ = ∂²F`:
///
/// * `df = P F₁`
/// * `∇²f = P F₂ P − (N·F₁ / r) P`
/// * `∇³f(Z; X, Y) = −r⁻² [u(Z) g(X,Y) + g(Z,X) v(Y) + g(Z,Y) v(X)]`
///   with `u = P(F₁ + F₂x)` and `v = P F₂ x`; the ambient third derivative
///   vanishes for `ℓ ≤ 2`.
pub fn covariant_derivatives(f: &HarmonicPoly, ctx: &SphereContext, x: &DVector<f64>) -> Result<Derivatives> {
    ctx.check_point(x)?;
    if f.ambient_dim() != ctx.ambient_dim() {
        return Err(Error::SizeMismatch {
            expected: ctx.ambient_dim(),
            got: f.ambient_dim(),
        });
    }
    let dim = ctx.ambient_dim();
    let p = ctx.projector(x);
    let f1 = f.gradient(x);
    let f2 = f.hessian();
    let normal = x / ctx.r;

    let df = &p * &f1;
    let hess = &p * &f2 * &p - (normal.dot(&f1) / ctx.r) * &p;
    let f2x = &f2 * x;
    let u = &p * (&f1 + &f2x);
    let v = &p * &f2x;
    let inv_r2 = ctx.alpha();
    let mut third = Tensor3::zeros(dim);
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let t = u[a] * p[(b, c)] + p[(a, b)] * v[c] + p[(a, c)] * v[b];
                third.set(a, b, c, -inv_r2 * t);
            }
        }
    }
    Ok(Derivatives {
        value: f.value(x),
        df,
        hess,
        third,
    })
}

fn frame_vectors(frame: &DMatrix<f64>) -> Vec<DVector<f64>> {
    frame.column_iter().map(|c| c.into_owned()).collect()
}

/// Frobenius norm of `∇²f + (μ/n) f g`, relative to
/// `max(|f|, |df|)`; applies to `ℓ = 1`.
pub fn obata_residual(f: &HarmonicPoly, ctx: &SphereContext, x: &DVector<f64>) -> Result<f64> {
    if f.degree() != 1 {
        return Err(Error::Precondition(format!(
            "the concircular equation concerns degree-1 harmonics, got degree {}",
            f.degree()
        )));
    }
    let d = covariant_derivatives(f, ctx, x)?;
    let mu = laplace_eigenvalue(1, ctx);
    let frame = frame_vectors(&ctx.tangent_frame(x)?);
    let mut sum = 0.0;
    for (i, ei) in frame.iter().enumerate() {
        for (j, ej) in frame.iter().enumerate() {
            let g = if i == j { 1.0 } else { 0.0 };
            let r = ei.dot(&(&d.hess * ej)) + mu / ctx.n as f64 * d.value * g;
            sum += r * r;
        }
    }
    Ok(relative(sum.sqrt(), d.value.abs().max(d.df.norm())))
}

fn relative(residual: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        residual / scale
    } else if residual == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Norm of `∇³f(Z;X,Y) + 2φ(Z)g(X,Y) + φ(X)g(Z,Y) + φ(Y)g(Z,X)` summed over
/// frame triples, relative to `|df|`.
fn third_order_residual(d: &Derivatives, frame: &[DVector<f64>], phi: &DVector<f64>) -> f64 {
    let phi_e: Vec<f64> = frame.iter().map(|e| phi.dot(e)).collect();
    let mut sum = 0.0;
    for (a, ea) in frame.iter().enumerate() {
        for (b, eb) in frame.iter().enumerate() {
            for (c, ec) in frame.iter().enumerate() {
                let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
                let terms = 2.0 * phi_e[a] * delta(b, c) + phi_e[b] * delta(a, c) + phi_e[c] * delta(a, b);
                let r = d.third.apply(ea, eb, ec) + terms;
                sum += r * r;
            }
        }
    }
    // Frobenius norm, so the value does not depend on the frame.
    relative(sum.sqrt(), d.df.norm())
}

/// Tanno's equation `∇³f(Z;X,Y) + k[2df(Z)g(X,Y) + df(X)g(Z,Y) + df(Y)g(Z,X)] = 0`.
pub fn tanno_residual(f: &HarmonicPoly, ctx: &SphereContext, x: &DVector<f64>, k: f64) -> Result<f64> {
    let d = covariant_derivatives(f, ctx, x)?;
    let frame = frame_vectors(&ctx.tangent_frame(x)?);
    Ok(third_order_residual(&d, &frame, &(k * &d.df)))
}

/// Tanno residual with `k = α`.
pub fn tanno_residual_auto(f: &HarmonicPoly, ctx: &SphereContext, x: &DVector<f64>) -> Result<f64> {
    tanno_residual(f, ctx, x, ctx.alpha())
}

/// Residuals of the generalized equation with `φ = ± dΔf / (2(n+1))`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GeneralizedTanno {
    /// `φ = +dΔf / (2(n+1))`.
    pub positive: f64,
    /// `φ = −dΔf / (2(n+1))`.
    pub negative: f64,
}

pub fn generalized_tanno_residual(f: &HarmonicPoly, ctx: &SphereContext, x: &DVector<f64>) -> Result<GeneralizedTanno> {
    let d = covariant_derivatives(f, ctx, x)?;
    let frame = frame_vectors(&ctx.tangent_frame(x)?);
    // dΔf = μ df for a spherical harmonic; computed here from the trace of
    // the third derivative so the check does not assume it.
    let dlap = laplacian_differential(&d, &frame);
    let phi = dlap / (2.0 * (ctx.n + 1) as f64);
    Ok(GeneralizedTanno {
        positive: third_order_residual(&d, &frame, &phi),
        negative: third_order_residual(&d, &frame, &(-phi)),
    })
}

/// `d(Δf) = −Σᵢ ∇³f(·; eᵢ, eᵢ)` as an ambient tangent vector.
fn laplacian_differential(d: &Derivatives, frame: &[DVector<f64>]) -> DVector<f64> {
    let mut out = DVector::zeros(d.third.dim());
    for z in frame {
        let s: f64 = frame.iter().map(|e| d.third.apply(z, e, e)).sum();
        out -= s * z;
    }
    out
}

/// One-forms with closed-form expressions on the sphere.
#[derive(Clone, Debug)]
pub enum OracleForm {
    /// `ω = df`.
    Gradient(HarmonicPoly),
    /// `ω = g(Ax, ·)` for skew `A`, dual to a Killing field.
    Rotation(DMatrix<f64>),
}

/// Pointwise pieces of a one-form: `ω`, `Δω`, `dδω` and `Ric*ω`.
struct FormPieces {
    omega: DVector<f64>,
    hodge: DVector<f64>,
    dcodiff: DVector<f64>,
    ricci: DVector<f64>,
}

fn form_pieces(form: &OracleForm, ctx: &SphereContext, x: &DVector<f64>) -> Result<FormPieces> {
    let frame = frame_vectors(&ctx.tangent_frame(x)?);
    let ric = (ctx.n - 1) as f64 * ctx.alpha();
    match form {
        OracleForm::Gradient(f) => {
            let d = covariant_derivatives(f, ctx, x)?;
            // dω = 0, so Δω = dδω = d(Δf).
            let dd = laplacian_differential(&d, &frame);
            Ok(FormPieces {
                ricci: ric * &d.df,
                omega: d.df,
                hodge: dd.clone(),
                dcodiff: dd,
            })
        }
        OracleForm::Rotation(a) => {
            if a.nrows() != ctx.ambient_dim() || !a.is_square() {
                return Err(Error::SizeMismatch {
                    expected: ctx.ambient_dim(),
                    got: a.nrows(),
                });
            }
            if (a + a.transpose()).abs().max() > 1e-12 * a.abs().max().max(1.0) {
                return Err(Error::Precondition("rotation generator must be skew".into()));
            }
            ctx.check_point(x)?;
            let p = ctx.projector(x);
            let omega = &p * (a * x);
            // β = dω is the restriction of the constant skew form T = −2A
            // (β(X,Y) = Xᵀ T Y); its covariant derivative comes only from
            // the second fundamental form II(Z,X) = −g(Z,X) x / r², giving
            // δβ(Y) = −Σᵢ (∇_{eᵢ}β)(eᵢ, Y) = r⁻² Σᵢ [xᵀT Y + eᵢᵀT x eᵢ·Y].
            let t = -2.0 * a;
            let tx = &t * x;
            let xt = t.transpose() * x;
            let mut codiff = DVector::zeros(ctx.ambient_dim());
            for e in &frame {
                codiff += &p * &xt * ctx.alpha();
                codiff += e * (e.dot(&tx) * ctx.alpha());
            }
            // δω = −tr(P A P) vanishes identically for skew A, so dδω = 0.
            Ok(FormPieces {
                ricci: ric * &omega,
                omega,
                hodge: codiff,
                dcodiff: DVector::zeros(ctx.ambient_dim()),
            })
        }
    }
}

/// `|Δω − 2Ric*ω − (2/(n+1)) dδω| / (α |ω|)`.
pub fn yano_identity_residual(form: &OracleForm, ctx: &SphereContext, x: &DVector<f64>) -> Result<f64> {
    let p = form_pieces(form, ctx, x)?;
    let c = 2.0 / (ctx.n + 1) as f64;
    let r = &p.hodge - 2.0 * &p.ricci - c * &p.dcodiff;
    Ok(relative(r.norm() / ctx.alpha(), p.omega.norm()))
}

/// `|Δω − 2Ric*ω + (1 − 2/n) dδω| / (α |ω|)`.
pub fn lichnerowicz_residual(form: &OracleForm, ctx: &SphereContext, x: &DVector<f64>) -> Result<f64> {
    let p = form_pieces(form, ctx, x)?;
    let c = 1.0 - 2.0 / ctx.n as f64;
    let r = &p.hodge - 2.0 * &p.ricci + c * &p.dcodiff;
    Ok(relative(r.norm() / ctx.alpha(), p.omega.norm()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    Conformal,
    Projective,
}

/// Eigenvalue interval for Killing-type forms given `ρ ≤ Ric ≤ P`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundSet {
    pub lower: f64,
    /// Upper bound in the form it is usually quoted.
    pub upper: f64,
    /// Independently rederived upper bound, where the quoted one is suspect.
    pub upper_rederived: Option<f64>,
    /// Whether `lower ≤ upper` holds for the quoted pair.
    pub consistent: bool,
}

impl BoundSet {
    /// The upper bound actually used for classification.
    pub fn effective_upper(&self) -> f64 {
        self.upper_rederived.unwrap_or(self.upper)
    }
}

/// Conformal: `nρ/(n−1) ≤ λ ≤ 2P`. Projective: `2ρ ≤ λ`, with the quoted
/// upper bound `2(n−1)P/(n+1)` and the rederived `2(n+1)P/(n−1)`.
pub fn theorem_bounds(n: usize, rho: f64, p: f64, mode: BoundMode) -> Result<BoundSet> {
    if n < 2 {
        return Err(Error::Precondition(format!("dimension must be at least 2, got {n}")));
    }
    if !(rho > 0.0) || !(p >= rho) || !p.is_finite() {
        return Err(Error::Precondition(format!(
            "need 0 < rho <= P, got rho = {rho}, P = {p}"
        )));
    }
    let nf = n as f64;
    let (lower, upper, upper_rederived) = match mode {
        BoundMode::Conformal => (nf * rho / (nf - 1.0), 2.0 * p, None),
        BoundMode::Projective => (
            2.0 * rho,
            2.0 * (nf - 1.0) * p / (nf + 1.0),
            Some(2.0 * (nf + 1.0) * p / (nf - 1.0)),
        ),
    };
    Ok(BoundSet {
        lower,
        upper,
        upper_rederived,
        consistent: lower <= upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(dim);
        v[i] = 1.0;
        v
    }

    fn q2() -> DMatrix<f64> {
        DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0])
    }

    #[test]
    fn eigenvalue_table() {
        let s2 = SphereContext::new(2, 1.0).unwrap();
        assert_eq!(laplace_eigenvalue(1, &s2), 2.0);
        assert_eq!(laplace_eigenvalue(2, &s2), 6.0);
        let s3 = SphereContext::new(3, 2.0).unwrap();
        assert_eq!(laplace_eigenvalue(1, &s3), 0.75);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SphereContext::new(1, 1.0).is_err());
        assert!(SphereContext::new(2, 0.0).is_err());
        let ctx = SphereContext::new(2, 1.0).unwrap();
        let f = HarmonicPoly::linear(e(3, 2));
        assert!(matches!(
            covariant_derivatives(&f, &ctx, &DVector::from_vec(vec![1.0, 1.0, 0.0])),
            Err(Error::OffSurface(_))
        ));
        let traced = DMatrix::identity(3, 3);
        assert!(HarmonicPoly::quadratic(traced).is_err());
        assert!(obata_residual(&HarmonicPoly::quadratic(q2()).unwrap(), &ctx, &e(3, 0)).is_err());
    }

    #[test]
    fn tensors_are_tangential() {
        let ctx = SphereContext::new(2, 1.5).unwrap();
        let x = DVector::from_vec(vec![0.6, 0.0, 0.8]) * 1.5;
        let d = covariant_derivatives(&HarmonicPoly::quadratic(q2()).unwrap(), &ctx, &x).unwrap();
        let n = &x / 1.5;
        assert!(d.df.dot(&n).abs() < 1e-14);
        assert!((&d.hess * &n).norm() < 1e-14);
        let t = ctx.tangent_frame(&x).unwrap();
        assert!((t.transpose() * &t - DMatrix::identity(2, 2)).norm() < 1e-14);
        assert!((t.transpose() * &n).norm() < 1e-14);
    }

    #[test]
    fn hessian_trace_is_minus_laplacian() {
        let ctx = SphereContext::new(2, 1.0).unwrap();
        let x = DVector::from_vec(vec![0.0, 0.6, 0.8]);
        let f = HarmonicPoly::quadratic(q2()).unwrap();
        let d = covariant_derivatives(&f, &ctx, &x).unwrap();
        assert!((d.hess.trace() + laplace_eigenvalue(2, &ctx) * d.value).abs() < 1e-13);
    }

    #[test]
    fn north_pole_examples() {
        let ctx = SphereContext::new(2, 1.0).unwrap();
        let pole = e(3, 2);
        let z = HarmonicPoly::linear(e(3, 2));
        assert!(obata_residual(&z, &ctx, &pole).unwrap() < 1e-14);
        let x = DVector::from_vec(vec![0.6, 0.0, 0.8]);
        let g = generalized_tanno_residual(&HarmonicPoly::quadratic(q2()).unwrap(), &ctx, &x).unwrap();
        assert!(g.positive < 1e-12, "{g:?}");
        assert!(g.negative > 1.0);
    }

    #[test]
    fn constant_function_is_trivial() {
        let ctx = SphereContext::new(3, 1.0).unwrap();
        let c = HarmonicPoly::constant(4, 2.5);
        let g = generalized_tanno_residual(&c, &ctx, &e(4, 1)).unwrap();
        assert_eq!(g.positive, 0.0);
        assert_eq!(tanno_residual_auto(&c, &ctx, &e(4, 1)).unwrap(), 0.0);
    }

    #[test]
    fn bound_values() {
        let b = theorem_bounds(2, 1.0, 1.0, BoundMode::Projective).unwrap();
        assert_eq!((b.lower, b.upper, b.upper_rederived), (2.0, 2.0 / 3.0, Some(6.0)));
        assert!(!b.consistent);
        let b = theorem_bounds(3, 2.0, 2.0, BoundMode::Projective).unwrap();
        assert_eq!((b.lower, b.upper, b.upper_rederived), (4.0, 2.0, Some(8.0)));
        let c = theorem_bounds(2, 1.0, 1.0, BoundMode::Conformal).unwrap();
        assert_eq!((c.lower, c.upper), (2.0, 2.0));
        assert!(c.consistent);
        assert!(theorem_bounds(2, 0.0, 1.0, BoundMode::Conformal).is_err());
        assert!(theorem_bounds(2, 2.0, 1.0, BoundMode::Conformal).is_err());
    }

    #[test]
    fn yano_and_lichnerowicz_on_killing_forms() {
        let ctx = SphereContext::new(2, 1.0).unwrap();
        let a = DMatrix::from_row_slice(3, 3, &[0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let x = DVector::from_vec(vec![0.6, 0.0, 0.8]);
        let form = OracleForm::Rotation(a);
        assert!(yano_identity_residual(&form, &ctx, &x).unwrap() < 1e-13);
        assert!(lichnerowicz_residual(&form, &ctx, &x).unwrap() < 1e-13);
    }
}
