//! Discrete exterior calculus on triangle meshes: coboundaries, diagonal
//! Hodge stars and weak-form Hodge Laplacians on 0- and 1-cochains.
//!
//! Cochain values are integrals over oriented simplices, so `d1 · d0 = 0`
//! holds exactly. The Hodge stars are diagonal: barycentric vertex areas
//! for 0-forms, cotangent weights for 1-forms and inverse face areas for
//! 2-forms.

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;
use crate::sparse::{dot, weighted_norm, SparseOperator};

/// A discrete k-form on a mesh (k = 0, 1, 2).
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    degree: u8,
    values: Vec<f64>,
}

impl Cochain {
    pub fn new(mesh: &TriangleMesh, degree: u8, values: Vec<f64>) -> Result<Self> {
        let expected = match degree {
            0 => mesh.num_vertices(),
            1 => mesh.num_edges(),
            2 => mesh.num_faces(),
            _ => return Err(Error::Precondition(format!("cochain degree {degree} not in 0..=2"))),
        };
        if values.len() != expected {
            return Err(Error::SizeMismatch {
                expected,
                got: values.len(),
            });
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Precondition(format!("non-finite cochain value at index {bad}")));
        }
        Ok(Cochain { degree, values })
    }

    pub fn zeros(mesh: &TriangleMesh, degree: u8) -> Result<Self> {
        let n = match degree {
            0 => mesh.num_vertices(),
            1 => mesh.num_edges(),
            _ => mesh.num_faces(),
        };
        Self::new(mesh, degree, vec![0.0; n])
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Coboundary on 0-cochains: `(d0 f)(i, j) = f(j) − f(i)` on canonical edges.
pub fn d0(mesh: &TriangleMesh) -> SparseOperator {
    let triplets = mesh
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(e, &[i, j])| [(e, i, -1.0), (e, j, 1.0)]);
    SparseOperator::from_triplets(mesh.num_edges(), mesh.num_vertices(), triplets)
}

/// Coboundary on 1-cochains; signs record agreement of the canonical edge
/// direction with the face orientation.
pub fn d1(mesh: &TriangleMesh) -> SparseOperator {
    let triplets = mesh
        .face_edges()
        .iter()
        .enumerate()
        .flat_map(|(f, local)| local.map(|(e, s)| (f, e, s)));
    SparseOperator::from_triplets(mesh.num_faces(), mesh.num_edges(), triplets)
}

/// Barycentric lumped vertex areas.
pub fn star0_diagonal(mesh: &TriangleMesh) -> Vec<f64> {
    let mut area = vec![0.0; mesh.num_vertices()];
    for (f, face) in mesh.faces().iter().enumerate() {
        let third = mesh.face_area(f) / 3.0;
        for &v in face {
            area[v] += third;
        }
    }
    area
}

/// Cotangent weights `(cot α + cot β) / 2` per canonical edge.
pub fn star1_diagonal(mesh: &TriangleMesh) -> Vec<f64> {
    let verts = mesh.vertices();
    let mut w = vec![0.0; mesh.num_edges()];
    for (f, face) in mesh.faces().iter().enumerate() {
        let local = mesh.face_edges()[f];
        // Local edge k joins corners k and k+1 and is opposite corner k+2.
        for k in 0..3 {
            let apex = verts[face[(k + 2) % 3]];
            let u = verts[face[k]] - apex;
            let v = verts[face[(k + 1) % 3]] - apex;
            let cot = u.dot(&v) / u.cross(&v).norm();
            w[local[k].0] += 0.5 * cot;
        }
    }
    w
}

/// Inverse face areas.
pub fn star2_diagonal(mesh: &TriangleMesh) -> Vec<f64> {
    (0..mesh.num_faces()).map(|f| 1.0 / mesh.face_area(f)).collect()
}

pub fn star0(mesh: &TriangleMesh) -> Result<SparseOperator> {
    mesh.ensure_valid()?;
    Ok(SparseOperator::from_diagonal(&star0_diagonal(mesh)))
}

pub fn star1(mesh: &TriangleMesh) -> Result<SparseOperator> {
    mesh.ensure_valid()?;
    Ok(SparseOperator::from_diagonal(&star1_diagonal(mesh)))
}

pub fn count_nonpositive(diag: &[f64]) -> usize {
    diag.iter().filter(|&&w| !(w > 0.0)).count()
}

/// All first-order operators of a validated mesh.
#[derive(Clone, Debug)]
pub struct DecOperators {
    pub d0: SparseOperator,
    pub d1: SparseOperator,
    pub star0: Vec<f64>,
    pub star1: Vec<f64>,
    pub star2: Vec<f64>,
    edges: Vec<[usize; 2]>,
    face_edges: Vec<[(usize, f64); 3]>,
    num_vertices: usize,
}

impl DecOperators {
    pub fn new(mesh: &TriangleMesh) -> Result<Self> {
        mesh.ensure_valid()?;
        Ok(DecOperators {
            d0: d0(mesh),
            d1: d1(mesh),
            star0: star0_diagonal(mesh),
            star1: star1_diagonal(mesh),
            star2: star2_diagonal(mesh),
            edges: mesh.edges().to_vec(),
            face_edges: mesh.face_edges().to_vec(),
            num_vertices: mesh.num_vertices(),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn nonpositive_star1(&self) -> usize {
        count_nonpositive(&self.star1)
    }

    /// Weak scalar Laplacian `d0ᵀ ⋆1 d0` and lumped mass `⋆0`.
    pub fn laplacian0(&self) -> (SparseOperator, SparseOperator) {
        let n = self.num_vertices;
        let triplets = self
            .edges
            .iter()
            .zip(&self.star1)
            .flat_map(|(&[i, j], &w)| [(i, i, w), (j, j, w), (i, j, -w), (j, i, -w)]);
        let a = SparseOperator::from_triplets(n, n, triplets).symmetrized();
        (a, SparseOperator::from_diagonal(&self.star0))
    }

    /// Weak Hodge Laplacian on 1-forms `d1ᵀ ⋆2 d1 + ⋆1 d0 ⋆0⁻¹ d0ᵀ ⋆1` with
    /// mass `⋆1`.
    pub fn laplacian1(&self) -> Result<(SparseOperator, SparseOperator)> {
        let bad = self.nonpositive_star1();
        if bad > 0 {
            return Err(Error::NonPositiveMass(bad));
        }
        let ne = self.num_edges();
        let mut triplets = self.curl_curl_triplets();
        triplets.extend(self.grad_div_triplets());
        let a = SparseOperator::from_triplets(ne, ne, triplets).symmetrized();
        Ok((a, SparseOperator::from_diagonal(&self.star1)))
    }

    /// Weak `d*d` part on 1-forms: `d1ᵀ ⋆2 d1`.
    pub fn curl_curl(&self) -> SparseOperator {
        let ne = self.num_edges();
        SparseOperator::from_triplets(ne, ne, self.curl_curl_triplets()).symmetrized()
    }

    /// Weak `dd*` part on 1-forms: `⋆1 d0 ⋆0⁻¹ d0ᵀ ⋆1`.
    pub fn grad_div(&self) -> SparseOperator {
        let ne = self.num_edges();
        SparseOperator::from_triplets(ne, ne, self.grad_div_triplets()).symmetrized()
    }

    fn curl_curl_triplets(&self) -> Vec<(usize, usize, f64)> {
        let mut t = Vec::with_capacity(9 * self.face_edges.len());
        for (local, &s2) in self.face_edges.iter().zip(&self.star2) {
            for &(ea, sa) in local {
                for &(eb, sb) in local {
                    t.push((ea, eb, sa * sb * s2));
                }
            }
        }
        t
    }

    fn grad_div_triplets(&self) -> Vec<(usize, usize, f64)> {
        // Signed edge incidence per vertex: d0[e, v].
        let mut incident: Vec<Vec<(usize, f64)>> = vec![Vec::new(); self.num_vertices];
        for (e, &[i, j]) in self.edges.iter().enumerate() {
            incident[i].push((e, -1.0));
            incident[j].push((e, 1.0));
        }
        let mut t = Vec::new();
        for (v, inc) in incident.iter().enumerate() {
            let inv = 1.0 / self.star0[v];
            for &(ea, sa) in inc {
                for &(eb, sb) in inc {
                    t.push((ea, eb, self.star1[ea] * sa * inv * sb * self.star1[eb]));
                }
            }
        }
        t
    }

    fn check_oneform(&self, omega: &[f64]) -> Result<()> {
        if omega.len() != self.num_edges() {
            return Err(Error::SizeMismatch {
                expected: self.num_edges(),
                got: omega.len(),
            });
        }
        Ok(())
    }

    /// Discrete codifferential `⋆0⁻¹ d0ᵀ ⋆1 ω` as a vertex function.
    pub fn codifferential(&self, omega: &[f64]) -> Result<Vec<f64>> {
        self.check_oneform(omega)?;
        let weighted: Vec<f64> = omega.iter().zip(&self.star1).map(|(w, s)| w * s).collect();
        let div = self.d0.transpose().mul_vec(&weighted);
        Ok(div.iter().zip(&self.star0).map(|(d, a)| d / a).collect())
    }

    /// `‖ω‖` in the `⋆1` inner product.
    pub fn oneform_norm(&self, omega: &[f64]) -> f64 {
        weighted_norm(omega, &self.star1)
    }

    /// Relative norms `(‖d*ω‖, ‖dω‖) / ‖ω‖`.
    pub fn codifferential_norm(&self, omega: &[f64]) -> Result<(f64, f64)> {
        self.check_oneform(omega)?;
        let base = self.oneform_norm(omega);
        if !(base > 0.0) {
            return Err(Error::ZeroForm);
        }
        let x = self.codifferential(omega)?;
        let y = self.d1.mul_vec(omega);
        Ok((
            weighted_norm(&x, &self.star0) / base,
            weighted_norm(&y, &self.star2) / base,
        ))
    }

    /// `⟨a, b⟩` in the `⋆1` inner product.
    pub fn oneform_inner(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).zip(&self.star1).map(|((x, y), w)| w * x * y).sum()
    }

    pub fn vertex_inner(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).zip(&self.star0).map(|((x, y), w)| w * x * y).sum()
    }
}

pub fn laplacian0(mesh: &TriangleMesh) -> Result<(SparseOperator, SparseOperator)> {
    Ok(DecOperators::new(mesh)?.laplacian0())
}

pub fn laplacian1(mesh: &TriangleMesh) -> Result<(SparseOperator, SparseOperator)> {
    DecOperators::new(mesh)?.laplacian1()
}

pub fn codifferential_norm(mesh: &TriangleMesh, omega: &Cochain) -> Result<(f64, f64)> {
    if omega.degree() != 1 {
        return Err(Error::Precondition("codifferential_norm expects a 1-cochain".into()));
    }
    DecOperators::new(mesh)?.codifferential_norm(omega.values())
}

/// Galerkin energy `Σ_edges w_ij (v_j − v_i)²`.
pub fn dirichlet_energy(ops: &DecOperators, v: &[f64]) -> f64 {
    let g = ops.d0.mul_vec(v);
    dot(&g, &g.iter().zip(&ops.star1).map(|(x, w)| x * w).collect::<Vec<_>>())
}
