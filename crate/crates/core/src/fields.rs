//! Analytic tangent vector fields on the built-in surfaces and their
//! sampling into edge cochains.
//!
//! Every field is given by an ambient formula and projected onto the
//! tangent plane of the surface: rotations `axis × x`, gradients of linear
//! functions `d · x`, gradients of traceless quadratics `xᵀQx`, and the
//! non-conformal control field `(w · x) d`.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{star0_diagonal, Cochain};
use crate::mesh::{Point, SurfaceSpec, TriangleMesh};

/// Tolerance on the implicit surface equation for evaluation points.
const ON_SURFACE_TOL: f64 = 1e-10;

/// 4-point Gauss–Legendre nodes and weights on `[0, 1]`.
const GAUSS4: [(f64, f64); 4] = [
    (0.069_431_844_202_973_71, 0.173_927_422_568_726_93),
    (0.330_009_478_207_571_9, 0.326_072_577_431_273_07),
    (0.669_990_521_792_428_1, 0.326_072_577_431_273_07),
    (0.930_568_155_797_026_3, 0.173_927_422_568_726_93),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldKind {
    KillingRotation {
        axis: [f64; 3],
    },
    ConformalGradient {
        direction: [f64; 3],
    },
    ProjectiveGradient {
        q: [[f64; 3]; 3],
    },
    /// `(weight · x) · grad(direction · x)`; neither Killing nor conformal.
    Modulated {
        weight: [f64; 3],
        direction: [f64; 3],
    },
}

impl FieldKind {
    pub fn family(&self) -> &'static str {
        match self {
            FieldKind::KillingRotation { .. } => "killing_rotation",
            FieldKind::ConformalGradient { .. } => "conformal_gradient",
            FieldKind::ProjectiveGradient { .. } => "projective_gradient",
            FieldKind::Modulated { .. } => "modulated",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticField {
    kind: FieldKind,
    surface: SurfaceSpec,
}

fn normalized(v: [f64; 3], what: &str) -> Result<[f64; 3]> {
    let p = Point::from(v);
    let n = p.norm();
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::Precondition(format!("{what} must be a nonzero finite vector")));
    }
    let u = p / n;
    Ok([u.x, u.y, u.z])
}

impl AnalyticField {
    /// Normalizes axes and directions; `Q` must be symmetric and traceless.
    pub fn new(kind: FieldKind, surface: SurfaceSpec) -> Result<Self> {
        let kind = match kind {
            FieldKind::KillingRotation { axis } => FieldKind::KillingRotation {
                axis: normalized(axis, "rotation axis")?,
            },
            FieldKind::ConformalGradient { direction } => FieldKind::ConformalGradient {
                direction: normalized(direction, "gradient direction")?,
            },
            FieldKind::ProjectiveGradient { q } => {
                let m = Matrix3::from_fn(|i, j| q[i][j]);
                if (m - m.transpose()).abs().max() > 1e-12 {
                    return Err(Error::Precondition("Q must be symmetric".into()));
                }
                if m.trace().abs() >= 1e-12 {
                    return Err(Error::Precondition(format!(
                        "Q must be traceless (trace {})",
                        m.trace()
                    )));
                }
                FieldKind::ProjectiveGradient { q }
            }
            FieldKind::Modulated { weight, direction } => FieldKind::Modulated {
                weight,
                direction: normalized(direction, "gradient direction")?,
            },
        };
        surface.check()?;
        Ok(AnalyticField { kind, surface })
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn surface(&self) -> &SurfaceSpec {
        &self.surface
    }

    /// Ambient vector before tangential projection.
    fn ambient(&self, x: &Point) -> Point {
        match &self.kind {
            FieldKind::KillingRotation { axis } => Point::from(*axis).cross(x),
            FieldKind::ConformalGradient { direction } => Point::from(*direction),
            FieldKind::ProjectiveGradient { q } => 2.0 * Matrix3::from_fn(|i, j| q[i][j]) * x,
            FieldKind::Modulated { weight, direction } => Point::from(*weight).dot(x) * Point::from(*direction),
        }
    }

    fn tangent_at(&self, x: &Point) -> Point {
        let n = self.surface.normal(x);
        let v = self.ambient(x);
        v - n * n.dot(&v)
    }

    /// Tangent vector of the field at a surface point.
    pub fn evaluate(&self, x: &Point) -> Result<Point> {
        let defect = self.surface.implicit_defect(x);
        if defect.abs() > ON_SURFACE_TOL {
            return Err(Error::OffSurface(defect));
        }
        Ok(self.tangent_at(x))
    }

    fn check_mesh(&self, mesh: &TriangleMesh) -> Result<()> {
        if let Some(worst) = mesh
            .vertices()
            .iter()
            .map(|p| self.surface.implicit_defect(p).abs())
            .find(|d| *d > ON_SURFACE_TOL)
        {
            return Err(Error::Precondition(format!(
                "mesh does not lie on the field surface {} (defect {worst:e})",
                self.surface
            )));
        }
        Ok(())
    }

    /// `∫ ω` along the surface curve over canonical edge `(i, j)`: the chord
    /// projected radially in the unit-sphere parameter domain.
    fn edge_integral(&self, p: &Point, q: &Point) -> f64 {
        let u0 = self.surface.unscale_point(p);
        let du = self.surface.unscale_point(q) - u0;
        GAUSS4
            .iter()
            .map(|&(t, w)| {
                let c = u0 + du * t;
                let len = c.norm();
                let unit = c / len;
                let dunit = (du - unit * unit.dot(&du)) / len;
                let x = self.surface.scale_point(&unit);
                let dx = self.surface.scale_point(&dunit);
                w * self.tangent_at(&x).dot(&dx)
            })
            .sum()
    }

    /// The 1-cochain of the dual form `ω(X) = g(ξ, X)`.
    pub fn sample_oneform(&self, mesh: &TriangleMesh) -> Result<Cochain> {
        self.check_mesh(mesh)?;
        let v = mesh.vertices();
        let values = mesh
            .edges()
            .iter()
            .map(|&[i, j]| self.edge_integral(&v[i], &v[j]))
            .collect();
        Cochain::new(mesh, 1, values)
    }

    /// Vertex samples of the potential when the field is a gradient.
    pub fn potential(&self, x: &Point) -> Option<f64> {
        match &self.kind {
            FieldKind::ConformalGradient { direction } => Some(Point::from(*direction).dot(x)),
            FieldKind::ProjectiveGradient { q } => Some(x.dot(&(Matrix3::from_fn(|i, j| q[i][j]) * x))),
            _ => None,
        }
    }

    pub fn conformal_killing_residual(&self, mesh: &TriangleMesh) -> Result<f64> {
        self.face_residual(mesh, true)
    }

    pub fn killing_residual(&self, mesh: &TriangleMesh) -> Result<f64> {
        self.face_residual(mesh, false)
    }

    /// Area-weighted RMS over faces of `‖sym J − (tr J / 2) I‖` (conformal)
    /// or `‖sym J‖` (Killing), where `J` is the in-plane Jacobian of the
    /// linear interpolant of the field on each flat triangle; divided by
    /// the RMS of the field.
    fn face_residual(&self, mesh: &TriangleMesh, trace_free: bool) -> Result<f64> {
        self.check_mesh(mesh)?;
        let verts = mesh.vertices();
        let field: Vec<Point> = verts.iter().map(|p| self.tangent_at(p)).collect();
        let mass = star0_diagonal(mesh);
        let field_ms =
            field.iter().zip(&mass).map(|(v, m)| m * v.norm_squared()).sum::<f64>() / mass.iter().sum::<f64>();
        if !(field_ms > 0.0) {
            return Err(Error::ZeroForm);
        }

        let mut acc = 0.0;
        let mut area = 0.0;
        for (f, face) in mesh.faces().iter().enumerate() {
            let [p0, p1, p2] = face.map(|i| verts[i]);
            let e1 = (p1 - p0).normalize();
            let normal = (p1 - p0).cross(&(p2 - p0)).normalize();
            let e2 = normal.cross(&e1);
            let local = |p: Point| nalgebra::Vector2::new(p.dot(&e1), p.dot(&e2));
            let dq = nalgebra::Matrix2::from_columns(&[local(p1 - p0), local(p2 - p0)]);
            let [v0, v1, v2] = face.map(|i| local(field[i]));
            let dv = nalgebra::Matrix2::from_columns(&[v1 - v0, v2 - v0]);
            let inv = dq
                .try_inverse()
                .ok_or_else(|| Error::InvalidMesh(format!("degenerate face {f}")))?;
            let j = dv * inv;
            let mut s = (j + j.transpose()) * 0.5;
            if trace_free {
                let half_trace = 0.5 * j.trace();
                s[(0, 0)] -= half_trace;
                s[(1, 1)] -= half_trace;
            }
            let a = mesh.face_area(f);
            acc += a * s.norm_squared();
            area += a;
        }
        Ok((acc / area).sqrt() / field_ms.sqrt())
    }
}

/// The eleven reference fields of a surface: three rotations, three
/// first-order gradients and five traceless quadratic gradients.
pub fn builtin_fields(surface: &SurfaceSpec) -> Result<Vec<(String, AnalyticField)>> {
    let axes = [("x", [1.0, 0.0, 0.0]), ("y", [0.0, 1.0, 0.0]), ("z", [0.0, 0.0, 1.0])];
    let mut out = Vec::with_capacity(11);
    for (name, axis) in axes {
        out.push((
            format!("rot_{name}"),
            AnalyticField::new(FieldKind::KillingRotation { axis }, surface.clone())?,
        ));
    }
    for (name, direction) in axes {
        out.push((
            format!("grad1_{name}"),
            AnalyticField::new(FieldKind::ConformalGradient { direction }, surface.clone())?,
        ));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let s6 = 1.0 / 6f64.sqrt();
    let quadratics = [
        ("xy", [[0.0, h, 0.0], [h, 0.0, 0.0], [0.0, 0.0, 0.0]]),
        ("xz", [[0.0, 0.0, h], [0.0, 0.0, 0.0], [h, 0.0, 0.0]]),
        ("yz", [[0.0, 0.0, 0.0], [0.0, 0.0, h], [0.0, h, 0.0]]),
        ("xx_yy", [[h, 0.0, 0.0], [0.0, -h, 0.0], [0.0, 0.0, 0.0]]),
        ("zz", [[-s6, 0.0, 0.0], [0.0, -s6, 0.0], [0.0, 0.0, 2.0 * s6]]),
    ];
    for (name, q) in quadratics {
        out.push((
            format!("grad2_{name}"),
            AnalyticField::new(FieldKind::ProjectiveGradient { q }, surface.clone())?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::d0;
    use crate::mesh::build_icosphere;

    fn unit() -> SurfaceSpec {
        SurfaceSpec::unit_sphere(0)
    }

    #[test]
    fn evaluation_examples() {
        let rot = AnalyticField::new(FieldKind::KillingRotation { axis: [0.0, 0.0, 1.0] }, unit()).unwrap();
        assert_eq!(
            rot.evaluate(&Point::new(1.0, 0.0, 0.0)).unwrap(),
            Point::new(0.0, 1.0, 0.0)
        );
        let grad = AnalyticField::new(
            FieldKind::ConformalGradient {
                direction: [0.0, 0.0, 1.0],
            },
            unit(),
        )
        .unwrap();
        assert_eq!(grad.evaluate(&Point::new(0.0, 0.0, 1.0)).unwrap(), Point::zeros());
        let v = grad.evaluate(&Point::new(1.0, 0.0, 0.0)).unwrap();
        assert!((v - Point::new(0.0, 0.0, 1.0)).norm() < 1e-15);
        assert!(matches!(
            grad.evaluate(&Point::new(1.0, 1.0, 0.0)),
            Err(Error::OffSurface(_))
        ));
    }

    #[test]
    fn constructor_normalizes_and_validates() {
        let rot = AnalyticField::new(FieldKind::KillingRotation { axis: [0.0, 0.0, 3.0] }, unit()).unwrap();
        assert_eq!(rot.kind(), &FieldKind::KillingRotation { axis: [0.0, 0.0, 1.0] });
        assert!(AnalyticField::new(FieldKind::KillingRotation { axis: [0.0; 3] }, unit()).is_err());
        let traced = [[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]];
        assert!(AnalyticField::new(FieldKind::ProjectiveGradient { q: traced }, unit()).is_err());
        let skew = [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]];
        assert!(AnalyticField::new(FieldKind::ProjectiveGradient { q: skew }, unit()).is_err());
    }

    #[test]
    fn zero_field_samples_to_zero() {
        let m = build_icosphere(1, 1.0).unwrap();
        let zero = AnalyticField::new(
            FieldKind::ProjectiveGradient { q: [[0.0; 3]; 3] },
            SurfaceSpec::unit_sphere(1),
        )
        .unwrap();
        assert!(zero.sample_oneform(&m).unwrap().values().iter().all(|&v| v == 0.0));
        assert!(matches!(zero.killing_residual(&m), Err(Error::ZeroForm)));
    }

    #[test]
    fn gradient_cochain_matches_potential_differences() {
        let m = build_icosphere(3, 1.0).unwrap();
        for (_, field) in builtin_fields(&SurfaceSpec::unit_sphere(3)).unwrap() {
            let Some(_) = field.potential(&Point::zeros()) else {
                continue;
            };
            let f: Vec<f64> = m.vertices().iter().map(|p| field.potential(p).unwrap()).collect();
            let exact = d0(&m).mul_vec(&f);
            let sampled = field.sample_oneform(&m).unwrap();
            let err = exact
                .iter()
                .zip(sampled.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(err < 1e-6, "{err}");
        }
    }

    #[test]
    fn mesh_must_match_surface() {
        let m = build_icosphere(1, 2.0).unwrap();
        let rot = AnalyticField::new(FieldKind::KillingRotation { axis: [0.0, 0.0, 1.0] }, unit()).unwrap();
        assert!(rot.sample_oneform(&m).is_err());
    }

    #[test]
    fn builtin_count() {
        let fields = builtin_fields(&unit()).unwrap();
        assert_eq!(fields.len(), 11);
        let families: Vec<&str> = fields.iter().map(|(_, f)| f.kind().family()).collect();
        assert_eq!(families.iter().filter(|f| **f == "killing_rotation").count(), 3);
        assert_eq!(families.iter().filter(|f| **f == "conformal_gradient").count(), 3);
        assert_eq!(families.iter().filter(|f| **f == "projective_gradient").count(), 5);
    }
}
