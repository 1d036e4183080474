//! Oriented closed triangle meshes approximating round spheres and
//! spheroids of revolution.
//!
//! Edges are stored in canonical form `(lo, hi)` with `lo < hi`, sorted
//! lexicographically; the canonical orientation of an edge runs from `lo`
//! to `hi`. Every other module indexes 1-cochains by this ordering.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = Vector3<f64>;

/// Deepest subdivision accepted by the generators.
pub const MAX_LEVEL: usize = 8;

/// Which built-in surface to generate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SurfaceSpec {
    Icosphere {
        level: usize,
        radius: f64,
    },
    /// Spheroid of revolution with semi-axes `(a, a, c)`.
    Spheroid {
        level: usize,
        a: f64,
        c: f64,
    },
}

impl SurfaceSpec {
    pub fn unit_sphere(level: usize) -> Self {
        SurfaceSpec::Icosphere { level, radius: 1.0 }
    }

    pub fn level(&self) -> usize {
        match *self {
            SurfaceSpec::Icosphere { level, .. } | SurfaceSpec::Spheroid { level, .. } => level,
        }
    }

    pub fn with_level(&self, level: usize) -> Self {
        let mut out = self.clone();
        match &mut out {
            SurfaceSpec::Icosphere { level: l, .. } | SurfaceSpec::Spheroid { level: l, .. } => *l = level,
        }
        out
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SurfaceSpec::Icosphere { .. } => "icosphere",
            SurfaceSpec::Spheroid { .. } => "spheroid",
        }
    }

    /// Semi-axes `(a, b, c)` of the ellipsoid the surface samples.
    pub fn semi_axes(&self) -> [f64; 3] {
        match *self {
            SurfaceSpec::Icosphere { radius, .. } => [radius; 3],
            SurfaceSpec::Spheroid { a, c, .. } => [a, a, c],
        }
    }

    /// Radius when the surface is a round sphere (spheroid with `a == c` included).
    pub fn sphere_radius(&self) -> Option<f64> {
        match *self {
            SurfaceSpec::Icosphere { radius, .. } => Some(radius),
            SurfaceSpec::Spheroid { a, c, .. } if a == c => Some(a),
            SurfaceSpec::Spheroid { .. } => None,
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.level() > MAX_LEVEL {
            return Err(Error::LevelTooHigh(self.level()));
        }
        for axis in self.semi_axes() {
            if !(axis > 0.0 && axis.is_finite()) {
                return Err(Error::InvalidSurface(format!(
                    "radius and semi-axes must be positive, got {axis}"
                )));
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<TriangleMesh> {
        match *self {
            SurfaceSpec::Icosphere { level, radius } => build_icosphere(level, radius),
            SurfaceSpec::Spheroid { level, a, c } => build_spheroid(level, a, c),
        }
    }

    /// Maps a point of the unit sphere onto this surface.
    pub fn scale_point(&self, unit: &Point) -> Point {
        let [a, b, c] = self.semi_axes();
        Point::new(a * unit.x, b * unit.y, c * unit.z)
    }

    /// Inverse of [`SurfaceSpec::scale_point`].
    pub fn unscale_point(&self, p: &Point) -> Point {
        let [a, b, c] = self.semi_axes();
        Point::new(p.x / a, p.y / b, p.z / c)
    }

    /// Outward unit normal at a point of the surface.
    pub fn normal(&self, p: &Point) -> Point {
        let [a, b, c] = self.semi_axes();
        Point::new(p.x / (a * a), p.y / (b * b), p.z / (c * c)).normalize()
    }

    /// Signed defect of the implicit equation `x²/a² + y²/b² + z²/c² − 1`.
    pub fn implicit_defect(&self, p: &Point) -> f64 {
        self.unscale_point(p).norm_squared() - 1.0
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceSpec::Icosphere { level, radius } => {
                write!(f, "icosphere(level={level}, radius={radius})")
            }
            SurfaceSpec::Spheroid { level, a, c } => {
                write!(f, "spheroid(level={level}, a={a}, c={c})")
            }
        }
    }
}

/// A triangulated surface with derived edge incidence.
///
/// A constructed mesh is immutable. Construction never fails: defects such
/// as out-of-range indices or non-manifold edges are reported by
/// [`TriangleMesh::validate`].
#[derive(Clone, Debug)]
pub struct TriangleMesh {
    vertices: Vec<Point>,
    faces: Vec<[usize; 3]>,
    edges: Vec<[usize; 2]>,
    edge_faces: Vec<Vec<usize>>,
    /// Per face, its three boundary edges `(a,b), (b,c), (c,a)` as
    /// `(edge index, +1 | -1)`; the sign is +1 when the face traverses the
    /// edge in its canonical direction.
    face_edges: Vec<[(usize, f64); 3]>,
}

impl TriangleMesh {
    pub fn new(vertices: Vec<Point>, faces: Vec<[usize; 3]>) -> Self {
        let nv = vertices.len();
        let well_formed = |f: &[usize; 3]| f.iter().all(|&i| i < nv) && f[0] != f[1] && f[1] != f[2] && f[0] != f[2];

        let mut keys: Vec<[usize; 2]> = faces
            .iter()
            .filter(|f| well_formed(f))
            .flat_map(|f| [[f[0], f[1]], [f[1], f[2]], [f[2], f[0]]].map(|[i, j]| [i.min(j), i.max(j)]))
            .collect();
        keys.sort_unstable();
        keys.dedup();
        let index: HashMap<[usize; 2], usize> = keys.iter().enumerate().map(|(k, e)| (*e, k)).collect();

        let mut edge_faces = vec![Vec::with_capacity(2); keys.len()];
        let mut face_edges = Vec::with_capacity(faces.len());
        for (fi, f) in faces.iter().enumerate() {
            if !well_formed(f) {
                face_edges.push([(usize::MAX, 0.0); 3]);
                continue;
            }
            let local = [[f[0], f[1]], [f[1], f[2]], [f[2], f[0]]].map(|[i, j]| {
                let e = index[&[i.min(j), i.max(j)]];
                edge_faces[e].push(fi);
                (e, if i < j { 1.0 } else { -1.0 })
            });
            face_edges.push(local);
        }

        TriangleMesh {
            vertices,
            faces,
            edges: keys,
            edge_faces,
            face_edges,
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge_faces(&self) -> &[Vec<usize>] {
        &self.edge_faces
    }

    pub fn face_edges(&self) -> &[[(usize, f64); 3]] {
        &self.face_edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn face_area(&self, f: usize) -> f64 {
        let [a, b, c] = self.faces[f].map(|i| self.vertices[i]);
        0.5 * (b - a).cross(&(c - a)).norm()
    }

    pub fn total_area(&self) -> f64 {
        (0..self.num_faces()).map(|f| self.face_area(f)).sum()
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edges
            .iter()
            .map(|&[i, j]| (self.vertices[j] - self.vertices[i]).norm())
            .fold(0.0, f64::max)
    }

    /// Interior angle of face `f` at each of its three corners.
    pub fn corner_angles(&self, f: usize) -> [f64; 3] {
        let [a, b, c] = self.faces[f].map(|i| self.vertices[i]);
        [
            angle_between(&(b - a), &(c - a)),
            angle_between(&(c - b), &(a - b)),
            angle_between(&(a - c), &(b - c)),
        ]
    }

    /// Checks every structural invariant and reports each outcome.
    pub fn validate(&self) -> ValidationOutcome {
        let mut checks = Vec::new();
        let nv = self.num_vertices();

        let bad_index = self.faces.iter().filter(|f| f.iter().any(|&i| i >= nv)).count();
        checks.push(Check::new(
            "indices in range",
            bad_index == 0,
            format!("{bad_index} faces reference missing vertices"),
        ));
        let repeated = self
            .faces
            .iter()
            .filter(|f| f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
            .count();
        checks.push(Check::new(
            "distinct face vertices",
            repeated == 0,
            format!("{repeated} faces repeat a vertex"),
        ));

        let over = self.edge_faces.iter().filter(|fs| fs.len() > 2).count();
        checks.push(Check::new(
            "edge manifold",
            over == 0,
            format!("{over} edge with >2 incident faces"),
        ));
        let boundary = self.edge_faces.iter().filter(|fs| fs.len() < 2).count();
        checks.push(Check::new(
            "closed",
            boundary == 0,
            format!("{boundary} boundary edges"),
        ));

        // Two faces sharing an edge must traverse it in opposite directions.
        let mut inconsistent = 0;
        for (e, fs) in self.edge_faces.iter().enumerate() {
            if fs.len() != 2 {
                continue;
            }
            let sign = |f: usize| {
                self.face_edges[f]
                    .iter()
                    .find(|(ei, _)| *ei == e)
                    .map(|&(_, s)| s)
                    .unwrap_or(0.0)
            };
            if sign(fs[0]) + sign(fs[1]) != 0.0 {
                inconsistent += 1;
            }
        }
        checks.push(Check::new(
            "orientation",
            inconsistent == 0,
            format!("inconsistent orientation on {inconsistent} edges"),
        ));

        let areas: Vec<f64> = (0..self.num_faces())
            .filter(|&f| self.faces[f].iter().all(|&i| i < nv))
            .map(|f| self.face_area(f))
            .collect();
        let mean = areas.iter().sum::<f64>() / areas.len().max(1) as f64;
        let degenerate = areas.iter().filter(|&&a| !(a > 1e-12 * mean)).count();
        checks.push(Check::new(
            "non-degenerate faces",
            degenerate == 0 && !areas.is_empty(),
            format!("{degenerate} degenerate triangles"),
        ));

        let chi = self.euler_characteristic();
        let genus = if chi <= 2 && (2 - chi) % 2 == 0 {
            Some((2 - chi) / 2)
        } else {
            None
        };
        checks.push(Check::new(
            "euler formula",
            genus.is_some(),
            format!("V - E + F = {chi} is not 2 - 2g"),
        ));

        ValidationOutcome {
            checks,
            euler: chi,
            genus,
        }
    }

    /// Returns the mesh or the first failed invariant as an error.
    pub fn ensure_valid(&self) -> Result<()> {
        let outcome = self.validate();
        let first = outcome.failures().next().map(|c| c.detail.clone());
        match first {
            Some(detail) => Err(Error::InvalidMesh(detail)),
            None => Ok(()),
        }
    }

    /// Writes the mesh in OFF text format.
    pub fn write_off<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "OFF")?;
        writeln!(out, "{} {} 0", self.num_vertices(), self.num_faces())?;
        for v in &self.vertices {
            writeln!(out, "{} {} {}", v.x, v.y, v.z)?;
        }
        for f in &self.faces {
            writeln!(out, "3 {} {} {}", f[0], f[1], f[2])?;
        }
        Ok(())
    }

    pub fn export_off(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_off(&mut buf).expect("writing to a Vec cannot fail");
        buf
    }
}

fn angle_between(u: &Point, v: &Point) -> f64 {
    u.cross(v).norm().atan2(u.dot(v))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        let detail = if passed { "ok".to_string() } else { detail };
        Check { name, passed, detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationOutcome {
    pub checks: Vec<Check>,
    pub euler: i64,
    pub genus: Option<i64>,
}

impl ValidationOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "valid, genus {}", self.genus.unwrap_or(-1))
        } else {
            let msgs: Vec<&str> = self.failures().map(|c| c.detail.as_str()).collect();
            write!(f, "invalid: {}", msgs.join("; "))
        }
    }
}

/// Unit icosahedron with vertices at both poles.
fn icosahedron() -> (Vec<Point>, Vec<[usize; 3]>) {
    let h = 1.0 / 5f64.sqrt();
    let rho = 2.0 * h;
    let step = std::f64::consts::PI / 5.0;

    let mut vertices = vec![Point::new(0.0, 0.0, 1.0)];
    for k in 0..5 {
        let t = 2.0 * step * k as f64;
        vertices.push(Point::new(rho * t.cos(), rho * t.sin(), h).normalize());
    }
    for k in 0..5 {
        let t = 2.0 * step * k as f64 + step;
        vertices.push(Point::new(rho * t.cos(), rho * t.sin(), -h).normalize());
    }
    vertices.push(Point::new(0.0, 0.0, -1.0));

    let up = |k: usize| 1 + k % 5;
    let low = |k: usize| 6 + k % 5;
    let mut faces = Vec::with_capacity(20);
    for k in 0..5 {
        faces.push([0, up(k), up(k + 1)]);
        faces.push([up(k), low(k), up(k + 1)]);
        faces.push([up(k + 1), low(k), low(k + 1)]);
        faces.push([11, low(k + 1), low(k)]);
    }
    // Orient counterclockwise as seen from outside.
    for f in &mut faces {
        let [a, b, c] = f.map(|i| vertices[i]);
        if (b - a).cross(&(c - a)).dot(&(a + b + c)) < 0.0 {
            f.swap(1, 2);
        }
    }
    (vertices, faces)
}

/// Midpoint subdivision of a unit-sphere triangulation, projecting new
/// vertices back onto the unit sphere.
fn subdivide(vertices: &mut Vec<Point>, faces: &[[usize; 3]]) -> Vec<[usize; 3]> {
    let mut midpoints: HashMap<(usize, usize), usize> = HashMap::with_capacity(faces.len() * 3 / 2);
    let mut mid = |i: usize, j: usize, vertices: &mut Vec<Point>| {
        *midpoints.entry((i.min(j), i.max(j))).or_insert_with(|| {
            vertices.push((0.5 * (vertices[i] + vertices[j])).normalize());
            vertices.len() - 1
        })
    };
    let mut out = Vec::with_capacity(faces.len() * 4);
    for &[a, b, c] in faces {
        let ab = mid(a, b, vertices);
        let bc = mid(b, c, vertices);
        let ca = mid(c, a, vertices);
        out.push([a, ab, ca]);
        out.push([b, bc, ab]);
        out.push([c, ca, bc]);
        out.push([ab, bc, ca]);
    }
    out
}

fn unit_icosphere(level: usize) -> Result<(Vec<Point>, Vec<[usize; 3]>)> {
    if level > MAX_LEVEL {
        return Err(Error::LevelTooHigh(level));
    }
    let (mut vertices, mut faces) = icosahedron();
    for _ in 0..level {
        faces = subdivide(&mut vertices, &faces);
    }
    Ok((vertices, faces))
}

/// Icosahedron subdivided `level` times with all vertices on the sphere of
/// the given radius.
pub fn build_icosphere(level: usize, radius: f64) -> Result<TriangleMesh> {
    let spec = SurfaceSpec::Icosphere { level, radius };
    spec.check()?;
    let (unit, faces) = unit_icosphere(level)?;
    let vertices = unit.iter().map(|p| p * radius).collect();
    Ok(TriangleMesh::new(vertices, faces))
}

/// Unit icosphere mapped by `(x, y, z) ↦ (a x, a y, c z)`, followed by
/// Delaunay edge flips.
///
/// The axis scaling stretches equatorial triangles; for `c/a` around 2 and
/// beyond, pairs sharing a near-meridian edge become obtuse enough that the
/// cotangent weight of that edge turns negative. Flipping such edges keeps
/// every vertex in place and every count unchanged.
pub fn build_spheroid(level: usize, a: f64, c: f64) -> Result<TriangleMesh> {
    let spec = SurfaceSpec::Spheroid { level, a, c };
    spec.check()?;
    let (unit, faces) = unit_icosphere(level)?;
    let vertices = unit.iter().map(|p| spec.scale_point(p)).collect();
    Ok(delaunay_flip(TriangleMesh::new(vertices, faces)))
}

/// Rotates `face` so that it starts with the directed edge `i → j`.
fn starting_with(face: [usize; 3], i: usize, j: usize) -> Option<[usize; 3]> {
    (0..3)
        .map(|r| [face[r], face[(r + 1) % 3], face[(r + 2) % 3]])
        .find(|f| f[0] == i && f[1] == j)
}

/// Flips edges whose opposite angles sum to more than π until none remain.
fn delaunay_flip(mut mesh: TriangleMesh) -> TriangleMesh {
    const MAX_PASSES: usize = 100;
    for _ in 0..MAX_PASSES {
        let mut faces = mesh.faces.clone();
        let mut touched = vec![false; faces.len()];
        let mut edges: std::collections::HashSet<[usize; 2]> = mesh.edges.iter().copied().collect();
        let mut flipped = false;
        for (e, &[i, j]) in mesh.edges.iter().enumerate() {
            let [f1, f2] = match mesh.edge_faces[e].as_slice() {
                &[f1, f2] => [f1, f2],
                _ => continue,
            };
            if touched[f1] || touched[f2] {
                continue;
            }
            let oriented =
                |a: usize, b: usize| Some((a, b, starting_with(faces[a], i, j)?, starting_with(faces[b], j, i)?));
            let Some((fi, fl, first, second)) = oriented(f1, f2).or_else(|| oriented(f2, f1)) else {
                continue;
            };
            let (k, l) = (first[2], second[2]);
            let key = [k.min(l), k.max(l)];
            if k == l || edges.contains(&key) {
                continue;
            }
            let cot = |apex: usize| {
                let u = mesh.vertices[i] - mesh.vertices[apex];
                let v = mesh.vertices[j] - mesh.vertices[apex];
                u.dot(&v) / u.cross(&v).norm()
            };
            if cot(k) + cot(l) >= 0.0 {
                continue;
            }
            faces[fi] = [i, l, k];
            faces[fl] = [l, j, k];
            touched[f1] = true;
            touched[f2] = true;
            edges.remove(&[i, j]);
            edges.insert(key);
            flipped = true;
        }
        if !flipped {
            break;
        }
        mesh = TriangleMesh::new(mesh.vertices, faces);
    }
    mesh
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosahedron_counts() {
        let m = build_icosphere(0, 1.0).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (12, 30, 20));
        for v in m.vertices() {
            assert!((v.norm() - 1.0).abs() <= 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn spheroid_flips_restore_positive_weights() {
        for level in 0..=4 {
            let m = build_spheroid(level, 1.0, 2.0).unwrap();
            assert!(m.validate().passed());
            assert_eq!(m.num_edges(), 30 * 4usize.pow(level as u32));
            assert_eq!(
                crate::exterior::count_nonpositive(&crate::exterior::star1_diagonal(&m)),
                0
            );
        }
        let unflipped = {
            let (unit, faces) = unit_icosphere(3).unwrap();
            let spec = SurfaceSpec::Spheroid {
                level: 3,
                a: 1.0,
                c: 2.0,
            };
            TriangleMesh::new(unit.iter().map(|p| spec.scale_point(p)).collect(), faces)
        };
        assert!(crate::exterior::count_nonpositive(&crate::exterior::star1_diagonal(&unflipped)) > 0);
    }

    #[test]
    fn closed_form_counts() {
        for level in 0..=4 {
            let m = build_icosphere(level, 1.0).unwrap();
            let p = 4usize.pow(level as u32);
            assert_eq!(m.num_vertices(), 10 * p + 2);
            assert_eq!(m.num_edges(), 30 * p);
            assert_eq!(m.num_faces(), 20 * p);
            assert_eq!(m.euler_characteristic(), 2);
            assert!(m.validate().passed(), "{}", m.validate());
        }
    }

    #[test]
    fn radii_match_request() {
        let m = build_icosphere(3, 2.5).unwrap();
        for v in m.vertices() {
            assert!((v.norm() / 2.5 - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn refinement_shrinks_edges() {
        let lengths: Vec<f64> = (0..5)
            .map(|s| build_icosphere(s, 1.0).unwrap().max_edge_length())
            .collect();
        assert!(lengths.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn level_guard() {
        assert!(matches!(build_icosphere(9, 1.0), Err(Error::LevelTooHigh(9))));
        assert!(matches!(build_spheroid(9, 1.0, 2.0), Err(Error::LevelTooHigh(9))));
        assert!(build_icosphere(1, 0.0).is_err());
        assert!(build_spheroid(1, 1.0, -2.0).is_err());
    }

    #[test]
    fn spheroid_degenerates_to_sphere() {
        let s = build_spheroid(3, 1.0, 1.0).unwrap();
        let i = build_icosphere(3, 1.0).unwrap();
        assert_eq!(s.vertices(), i.vertices());
        assert_eq!(s.faces(), i.faces());
    }

    #[test]
    fn spheroid_scales_pole() {
        let s = build_spheroid(0, 1.0, 2.0).unwrap();
        assert!(s.vertices().contains(&Point::new(0.0, 0.0, 2.0)));
        let s2 = build_spheroid(2, 1.0, 2.0).unwrap();
        assert_eq!(s2.num_vertices(), 162);
        assert!(s2.validate().passed());
    }

    #[test]
    fn flipped_face_is_detected() {
        let m = build_icosphere(1, 1.0).unwrap();
        let mut faces = m.faces().to_vec();
        faces[3].swap(0, 1);
        let bad = TriangleMesh::new(m.vertices().to_vec(), faces);
        let outcome = bad.validate();
        assert!(!outcome.passed());
        assert!(outcome
            .failures()
            .any(|c| c.detail.contains("inconsistent orientation")));
    }

    #[test]
    fn duplicated_face_is_detected() {
        let m = build_icosphere(1, 1.0).unwrap();
        let mut faces = m.faces().to_vec();
        faces.push(faces[0]);
        let bad = TriangleMesh::new(m.vertices().to_vec(), faces);
        assert!(bad
            .validate()
            .failures()
            .any(|c| c.detail.contains("edge with >2 incident faces")));
    }

    #[test]
    fn out_of_range_and_degenerate_are_reported() {
        let m = build_icosphere(0, 1.0).unwrap();
        let mut faces = m.faces().to_vec();
        faces[0] = [0, 1, 99];
        let bad = TriangleMesh::new(m.vertices().to_vec(), faces);
        assert!(!bad.validate().passed());

        let mut verts = m.vertices().to_vec();
        let [a, b, _] = m.faces()[0];
        verts[b] = verts[a];
        let flat = TriangleMesh::new(verts, m.faces().to_vec());
        assert!(flat.validate().failures().any(|c| c.name == "non-degenerate faces"));
    }

    #[test]
    fn off_header() {
        let m = build_icosphere(0, 1.0).unwrap();
        let text = String::from_utf8(m.export_off()).unwrap();
        assert!(text.starts_with("OFF\n12 20 0\n"));
        let s = build_spheroid(0, 1.0, 2.0).unwrap();
        let text = String::from_utf8(s.export_off()).unwrap();
        assert!(text.lines().any(|l| l == "0 0 2"));
    }
}
