//! Lowest eigenpairs of the symmetric generalized problem `A x = λ B x`
//! with `B` diagonal and positive.
//!
//! The solver is a blocked LOBPCG iteration: each step performs a
//! Rayleigh–Ritz projection onto the span of the current iterates, their
//! preconditioned residuals and the previous search directions. Every basis
//! block is B-orthonormalized with SVQB (scaled eigen-based
//! orthonormalization), which drops numerically dependent directions.
//! Known kernel vectors can be deflated so the iteration only sees their
//! B-orthogonal complement.
//!
//! Eigenvectors inside a degenerate cluster are unique only up to a
//! rotation of the cluster; compare subspaces, not individual vectors.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sparse::{dot, SparseOperator};

pub const DEFAULT_SEED: u64 = 0x5eed_0001;
pub const DEFAULT_REL_GAP: f64 = 0.02;
const GAP_FLOOR: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Target for `‖A x − λ B x‖ / ‖B x‖` on every requested pair.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// Extra block columns beyond the requested count.
    pub padding: usize,
    /// Known eigenvectors to deflate (e.g. constants for the scalar
    /// Laplacian). They are reported as part of the spectrum.
    pub deflate: Vec<Vec<f64>>,
    pub rel_gap: f64,
    /// Inner conjugate-gradient steps per preconditioner application;
    /// zero selects plain Jacobi scaling.
    pub inner_steps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-6,
            max_iter: 3000,
            seed: DEFAULT_SEED,
            padding: 5,
            deflate: Vec::new(),
            rel_gap: DEFAULT_REL_GAP,
            inner_steps: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SpectrumResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `i` pairs with `eigenvalues[i]`; columns are B-orthonormal.
    pub eigenvectors: DMatrix<f64>,
    pub residuals: Vec<f64>,
    pub groups: Vec<EigenGroup>,
    pub iterations: usize,
}

impl SpectrumResult {
    pub fn eigenvector(&self, i: usize) -> Vec<f64> {
        self.eigenvectors.column(i).iter().copied().collect()
    }

    /// Writes `index,eigenvalue,residual,group`.
    pub fn to_csv(&self) -> String {
        let mut group_of = vec![0; self.eigenvalues.len()];
        for (g, group) in self.groups.iter().enumerate() {
            for &i in &group.members {
                group_of[i] = g;
            }
        }
        let mut out = String::from("index,eigenvalue,residual,group\n");
        for (i, (lam, res)) in self.eigenvalues.iter().zip(&self.residuals).enumerate() {
            out.push_str(&format!("{i},{lam:.12e},{res:.3e},{}\n", group_of[i]));
        }
        out
    }
}

fn diagonal_mass(b: &SparseOperator) -> Result<Vec<f64>> {
    if !b.is_diagonal() {
        return Err(Error::Precondition("mass operator must be diagonal".into()));
    }
    let d = b.diagonal();
    if d.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::Precondition("B not SPD: nonpositive mass entry".into()));
    }
    Ok(d)
}

pub fn solve_lowest(a: &SparseOperator, b: &SparseOperator, m: usize, tol: f64) -> Result<SpectrumResult> {
    solve_lowest_with(
        a,
        b,
        m,
        &SolverOptions {
            tol,
            ..SolverOptions::default()
        },
    )
}

pub fn solve_lowest_with(
    a: &SparseOperator,
    b: &SparseOperator,
    m: usize,
    opts: &SolverOptions,
) -> Result<SpectrumResult> {
    let n = a.rows();
    if a.cols() != n || b.rows() != n || b.cols() != n {
        return Err(Error::Precondition("A and B must be square and of equal size".into()));
    }
    if m == 0 || m > n {
        return Err(Error::Precondition(format!(
            "requested {m} eigenpairs of a {n}-dimensional problem"
        )));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Precondition("solver tolerance must be positive".into()));
    }
    let mass = diagonal_mass(b)?;
    let mut solver = Lobpcg::new(a, mass, opts)?;
    let kernel = solver.kernel.clone();
    let n_kernel = kernel.ncols().min(m);
    let wanted = m - n_kernel;

    let mut values = Vec::with_capacity(m);
    let mut vectors = Vec::with_capacity(m);
    for c in 0..n_kernel {
        let x: DVector<f64> = kernel.column(c).into_owned();
        values.push(solver.rayleigh(&x));
        vectors.push(x);
    }
    let mut iterations = 0;
    if wanted > 0 {
        let (vals, vecs, iters) = solver.run(wanted)?;
        iterations = iters;
        values.extend(vals);
        vectors.extend(vecs.column_iter().map(|c| c.into_owned()));
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let eigenvectors = DMatrix::from_columns(&order.iter().map(|&i| vectors[i].clone()).collect::<Vec<_>>());
    let residuals = (0..m)
        .map(|i| solver.residual(&eigenvectors.column(i).into_owned(), eigenvalues[i]))
        .collect();
    let groups = group_multiplicities(&eigenvalues, opts.rel_gap);
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors,
        residuals,
        groups,
        iterations,
    })
}

struct Lobpcg<'a> {
    a: &'a SparseOperator,
    mass: Vec<f64>,
    precond: Vec<f64>,
    diag: Vec<f64>,
    /// B-orthonormal deflation basis.
    kernel: DMatrix<f64>,
    opts: SolverOptions,
}

impl<'a> Lobpcg<'a> {
    fn new(a: &'a SparseOperator, mass: Vec<f64>, opts: &SolverOptions) -> Result<Self> {
        let n = a.rows();
        let diag = a.diagonal();
        let precond = diag.iter().map(|&d| if d > 0.0 { 1.0 / d } else { 1.0 }).collect();
        let mut solver = Lobpcg {
            a,
            mass,
            precond,
            diag,
            kernel: DMatrix::zeros(n, 0),
            opts: opts.clone(),
        };
        if !opts.deflate.is_empty() {
            for v in &opts.deflate {
                if v.len() != n {
                    return Err(Error::SizeMismatch {
                        expected: n,
                        got: v.len(),
                    });
                }
            }
            let cols: Vec<DVector<f64>> = opts.deflate.iter().map(|v| DVector::from_column_slice(v)).collect();
            let y = DMatrix::from_columns(&cols);
            solver.kernel = solver.orthonormalize(y);
        }
        Ok(solver)
    }

    fn apply_mass(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = x.clone();
        for mut col in out.column_iter_mut() {
            for (v, w) in col.iter_mut().zip(&self.mass) {
                *v *= w;
            }
        }
        out
    }

    /// `x − Y (Yᵀ B x)` for a B-orthonormal `Y`.
    fn project_out(&self, y: &DMatrix<f64>, x: &mut DMatrix<f64>) {
        if y.ncols() == 0 || x.ncols() == 0 {
            return;
        }
        let coef = gram(&self.apply_mass(y), x);
        *x -= y * coef;
    }

    /// SVQB B-orthonormalization, applied twice; dependent directions are
    /// dropped.
    fn orthonormalize(&self, u: DMatrix<f64>) -> DMatrix<f64> {
        let t = self.svqb(&u);
        let u = u * t;
        let t = self.svqb(&u);
        u * t
    }

    /// Transform `T` such that `U T` is B-orthonormal, dropping directions
    /// whose scaled Gram eigenvalue falls below `1e-12` of the largest.
    fn svqb(&self, u: &DMatrix<f64>) -> DMatrix<f64> {
        if u.ncols() == 0 {
            return DMatrix::zeros(0, 0);
        }
        let gram = gram(u, &self.apply_mass(u));
        let scale: Vec<f64> = (0..gram.nrows())
            .map(|i| {
                let g = gram[(i, i)];
                if g > 0.0 {
                    1.0 / g.sqrt()
                } else {
                    0.0
                }
            })
            .collect();
        let g = DMatrix::from_fn(gram.nrows(), gram.ncols(), |i, j| {
            0.5 * (gram[(i, j)] + gram[(j, i)]) * scale[i] * scale[j]
        });
        let eig = SymmetricEigen::new(g);
        let top = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
        let keep: Vec<usize> = (0..eig.eigenvalues.len())
            .filter(|&k| eig.eigenvalues[k] > 1e-12 * top)
            .collect();
        DMatrix::from_fn(u.ncols(), keep.len(), |r, c| {
            let k = keep[c];
            scale[r] * eig.eigenvectors[(r, k)] / eig.eigenvalues[k].sqrt()
        })
    }

    /// Largest deviation of `UᵀBU` from the identity.
    fn orthonormality_defect(&self, u: &DMatrix<f64>) -> f64 {
        let g = gram(u, &self.apply_mass(u));
        let mut worst: f64 = 0.0;
        for i in 0..g.nrows() {
            for j in 0..g.ncols() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - target).abs());
            }
        }
        worst
    }

    /// Approximate `(A + σB)⁻¹ r` by a fixed number of Jacobi-preconditioned
    /// CG steps; zero steps reduces to the Jacobi scaling `diag(A)⁻¹ r`.
    fn precondition(&self, r: &[f64], shift: f64) -> Vec<f64> {
        let steps = self.opts.inner_steps;
        if steps == 0 {
            return r.iter().zip(&self.precond).map(|(v, p)| v * p).collect();
        }
        shifted_cg(self.a, &self.diag, &self.mass, shift, r, 0.0, steps).0
    }

    fn rayleigh(&self, x: &DVector<f64>) -> f64 {
        let ax = self.a.mul_vec(x.as_slice());
        let num: f64 = ax.iter().zip(x.iter()).map(|(p, q)| p * q).sum();
        let den: f64 = x.iter().zip(&self.mass).map(|(v, w)| w * v * v).sum();
        num / den
    }

    fn residual(&self, x: &DVector<f64>, lambda: f64) -> f64 {
        let ax = self.a.mul_vec(x.as_slice());
        let mut r2 = 0.0;
        let mut bx2 = 0.0;
        for i in 0..ax.len() {
            let bx = self.mass[i] * x[i];
            r2 += (ax[i] - lambda * bx).powi(2);
            bx2 += bx * bx;
        }
        (r2 / bx2).sqrt()
    }

    fn run(&mut self, wanted: usize) -> Result<(Vec<f64>, DMatrix<f64>, usize)> {
        let n = self.a.rows();
        let kernel = self.kernel.clone();
        let free = n - kernel.ncols();
        let k = (wanted + self.opts.padding).min(free);
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        let mut x = DMatrix::from_fn(n, k, |_, _| StandardNormal.sample(&mut rng));
        self.project_out(&kernel, &mut x);
        x = self.orthonormalize(x);
        if x.ncols() < wanted {
            return Err(Error::Precondition("starting block is rank deficient".into()));
        }
        let k = x.ncols();
        let ax = self.a.mul_block(&x);
        let (mut lambda, coef) = self.rayleigh_ritz(&x, &ax, k);
        x = &x * coef;

        // Previous search directions and their images under A.
        let mut dirs: Option<(DMatrix<f64>, DMatrix<f64>)> = None;
        let mut residuals = vec![f64::INFINITY; k];

        for iter in 0..self.opts.max_iter {
            if self.orthonormality_defect(&x) > 1e-10 {
                x = self.orthonormalize(x);
                let ax = self.a.mul_block(&x);
                let (vals, coef) = self.rayleigh_ritz(&x, &ax, k);
                lambda = vals;
                x = &x * coef;
                dirs = None;
            }
            let ax = self.a.mul_block(&x);
            let bx = self.apply_mass(&x);
            let mut r = ax.clone();
            for c in 0..k {
                let mut col = r.column_mut(c);
                col.axpy(-lambda[c], &bx.column(c), 1.0);
                residuals[c] = col.norm() / bx.column(c).norm();
            }
            if residuals[..wanted].iter().all(|&res| res < self.opts.tol) {
                let vals = lambda[..wanted].to_vec();
                let vecs = x.columns(0, wanted).into_owned();
                return Ok((vals, vecs, iter));
            }
            let active: Vec<usize> = (0..k).filter(|&c| residuals[c] >= self.opts.tol).collect();

            let shift = lambda.iter().copied().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            let mut w = DMatrix::zeros(n, active.len());
            for (c, &col) in active.iter().enumerate() {
                let z = self.precondition(r.column(col).as_slice(), shift);
                w.column_mut(c).copy_from_slice(&z);
            }
            self.project_out(&kernel, &mut w);
            self.project_out(&x, &mut w);
            let t = self.svqb(&w);
            w *= t;
            self.project_out(&x, &mut w);
            let t = self.svqb(&w);
            w *= t;
            let aw = self.a.mul_block(&w);

            let mut blocks = vec![(x.clone(), ax.clone()), (w.clone(), aw.clone())];
            if let Some((prev, aprev)) = dirs.take() {
                let mut p = DMatrix::from_fn(n, active.len(), |i, c| prev[(i, active[c])]);
                let mut ap = DMatrix::from_fn(n, active.len(), |i, c| aprev[(i, active[c])]);
                for _ in 0..2 {
                    for (basis, abasis) in [(&x, &ax), (&w, &aw)] {
                        let c = gram(&self.apply_mass(basis), &p);
                        p -= basis * &c;
                        ap -= abasis * &c;
                    }
                    let t = self.svqb(&p);
                    p *= &t;
                    ap *= &t;
                }
                if p.ncols() > 0 {
                    blocks.push((p, ap));
                }
            }
            let cols: usize = blocks.iter().map(|(b, _)| b.ncols()).sum();
            let mut basis = DMatrix::zeros(n, cols);
            let mut abasis = DMatrix::zeros(n, cols);
            let mut offset = 0;
            for (b, ab) in &blocks {
                basis.columns_mut(offset, b.ncols()).copy_from(b);
                abasis.columns_mut(offset, ab.ncols()).copy_from(ab);
                offset += b.ncols();
            }

            let (vals, coef) = self.rayleigh_ritz(&basis, &abasis, k);
            // New search directions: the part of the update outside span(X).
            let tail = coef.rows(k, cols - k);
            let p = basis.columns(k, cols - k) * tail;
            let ap = abasis.columns(k, cols - k) * tail;
            dirs = Some((p, ap));
            lambda = vals;
            x = &basis * coef;
        }
        let worst = residuals[..wanted].iter().copied().fold(0.0, f64::max);
        Err(Error::NoConvergence {
            iterations: self.opts.max_iter,
            worst_residual: worst,
            residuals: residuals[..wanted].to_vec(),
        })
    }

    /// Lowest `k` Ritz pairs on a B-orthonormal basis with known image
    /// `A · basis`; returns the values and the coefficients in the basis.
    fn rayleigh_ritz(&self, basis: &DMatrix<f64>, abasis: &DMatrix<f64>, k: usize) -> (Vec<f64>, DMatrix<f64>) {
        let g = gram(basis, abasis);
        let g = DMatrix::from_fn(g.nrows(), g.ncols(), |i, j| 0.5 * (g[(i, j)] + g[(j, i)]));
        let eig = SymmetricEigen::new(g);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let k = k.min(order.len());
        let vals: Vec<f64> = order[..k].iter().map(|&i| eig.eigenvalues[i]).collect();
        let coef = DMatrix::from_fn(eig.eigenvectors.nrows(), k, |r, c| eig.eigenvectors[(r, order[c])]);
        (vals, coef)
    }
}

/// `aᵀ b` through a transposed copy so the product hits the blocked GEMM
/// kernel.
fn gram(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.transpose() * b
}

/// Merges consecutive sorted eigenvalues whose relative gap is below
/// `rel_gap`.
pub fn group_multiplicities(eigenvalues: &[f64], rel_gap: f64) -> Vec<EigenGroup> {
    let mut groups: Vec<EigenGroup> = Vec::new();
    for (i, &lam) in eigenvalues.iter().enumerate() {
        let merge = i > 0 && {
            let prev = eigenvalues[i - 1];
            let scale = prev.abs().max(lam.abs()).max(GAP_FLOOR);
            (lam - prev).abs() / scale < rel_gap
        };
        match groups.last_mut() {
            Some(g) if merge => g.members.push(i),
            _ => groups.push(EigenGroup {
                value: lam,
                multiplicity: 1,
                members: vec![i],
            }),
        }
    }
    for g in &mut groups {
        g.multiplicity = g.members.len();
        g.value = g.members.iter().map(|&i| eigenvalues[i]).sum::<f64>() / g.multiplicity as f64;
    }
    groups
}

/// Jacobi-preconditioned CG on `(A + σ·diag(m)) x = r`, stopping when the
/// residual falls below `rel_tol · ‖r‖` or after `max_steps`. Returns the
/// iterate and whether the tolerance was met.
fn shifted_cg(
    a: &SparseOperator,
    diag: &[f64],
    mass: &[f64],
    shift: f64,
    r: &[f64],
    rel_tol: f64,
    max_steps: usize,
) -> (Vec<f64>, bool) {
    let n = r.len();
    let jacobi: Vec<f64> = diag.iter().zip(mass).map(|(d, m)| 1.0 / (d + shift * m)).collect();
    let target = rel_tol * dot(r, r).sqrt();
    let mut x = vec![0.0; n];
    let mut res = r.to_vec();
    let mut z: Vec<f64> = res.iter().zip(&jacobi).map(|(v, p)| v * p).collect();
    let mut dir = z.clone();
    let mut rz = dot(&res, &z);
    let mut q = vec![0.0; n];
    for _ in 0..max_steps {
        if dot(&res, &res).sqrt() <= target {
            return (x, true);
        }
        a.mul_vec_into(&dir, &mut q);
        for i in 0..n {
            q[i] += shift * mass[i] * dir[i];
        }
        let curv = dot(&dir, &q);
        if !(curv > 0.0) || rz == 0.0 {
            break;
        }
        let step = rz / curv;
        for i in 0..n {
            x[i] += step * dir[i];
            res[i] -= step * q[i];
            z[i] = res[i] * jacobi[i];
        }
        let rz_next = dot(&res, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..n {
            dir[i] = z[i] + beta * dir[i];
        }
    }
    let done = dot(&res, &res).sqrt() <= target;
    (x, done)
}

/// `sqrt(rᵀ (A + σB)⁻¹ r)`: the norm of a weak-form residual measured
/// against test vectors in the energy norm of `A + σB`. Unlike the `B⁻¹`
/// norm it does not amplify grid-scale consistency errors.
pub fn dual_norm(a: &SparseOperator, b: &SparseOperator, shift: f64, r: &[f64]) -> Result<f64> {
    let mass = diagonal_mass(b)?;
    if r.len() != a.rows() || a.rows() != a.cols() {
        return Err(Error::SizeMismatch {
            expected: a.rows(),
            got: r.len(),
        });
    }
    if !(shift > 0.0) {
        return Err(Error::Precondition("dual norm shift must be positive".into()));
    }
    if r.iter().all(|&v| v == 0.0) {
        return Ok(0.0);
    }
    let max_steps = 20 * r.len().max(100);
    let (y, converged) = shifted_cg(a, &a.diagonal(), &mass, shift, r, 1e-9, max_steps);
    if !converged {
        return Err(Error::NoConvergence {
            iterations: max_steps,
            worst_residual: f64::NAN,
            residuals: Vec::new(),
        });
    }
    Ok(dot(r, &y).max(0.0).sqrt())
}

fn check_vector(a: &SparseOperator, b: &SparseOperator, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != a.cols() {
        return Err(Error::SizeMismatch {
            expected: a.cols(),
            got: x.len(),
        });
    }
    let mass = diagonal_mass(b)?;
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroForm);
    }
    Ok(mass)
}

/// `xᵀAx / xᵀBx`.
pub fn rayleigh_quotient(a: &SparseOperator, b: &SparseOperator, x: &[f64]) -> Result<f64> {
    check_vector(a, b, x)?;
    Ok(a.quadratic_form(x) / b.quadratic_form(x))
}

/// `‖A x − λ̂ B x‖_{B⁻¹} / ‖x‖_B` with `λ̂` the Rayleigh quotient; zero
/// exactly for eigenvectors.
pub fn eigenform_residual(a: &SparseOperator, b: &SparseOperator, x: &[f64]) -> Result<f64> {
    let mass = check_vector(a, b, x)?;
    let lambda = rayleigh_quotient(a, b, x)?;
    let ax = a.mul_vec(x);
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..x.len() {
        let r = ax[i] - lambda * mass[i] * x[i];
        num += r * r / mass[i];
        den += mass[i] * x[i] * x[i];
    }
    Ok((num / den).sqrt())
}

/// `‖A x − λ̂ B x‖ / ‖A x‖` in the dual norm of `A + λ̂B`; zero exactly
/// for eigenvectors and convergent under refinement for sampled smooth
/// eigenforms, where the `B⁻¹` version stalls at the consistency error.
pub fn weak_eigenform_residual(a: &SparseOperator, b: &SparseOperator, x: &[f64]) -> Result<f64> {
    let mass = check_vector(a, b, x)?;
    let lambda = rayleigh_quotient(a, b, x)?;
    let ax = a.mul_vec(x);
    let r: Vec<f64> = ax
        .iter()
        .zip(mass.iter().zip(x))
        .map(|(v, (m, xi))| v - lambda * m * xi)
        .collect();
    let shift = if lambda > 0.0 { lambda } else { 1.0 };
    let den = dual_norm(a, b, shift, &ax)?;
    if den == 0.0 {
        return Ok(0.0);
    }
    Ok(dual_norm(a, b, shift, &r)? / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_pencil() {
        let a = SparseOperator::from_diagonal(&[2.0; 8]);
        let b = SparseOperator::from_diagonal(&[2.0; 8]);
        let s = solve_lowest(&a, &b, 3, 1e-10).unwrap();
        for v in &s.eigenvalues {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bounds_checked() {
        let a = SparseOperator::identity(5);
        let b = SparseOperator::identity(5);
        assert!(matches!(solve_lowest(&a, &b, 6, 1e-8), Err(Error::Precondition(_))));
        assert!(matches!(solve_lowest(&a, &b, 0, 1e-8), Err(Error::Precondition(_))));
        let bad = SparseOperator::from_diagonal(&[1.0, 1.0, 0.0, 1.0, 1.0]);
        assert!(solve_lowest(&a, &bad, 2, 1e-8).is_err());
    }

    #[test]
    fn diagonal_spectrum_in_order() {
        let d: Vec<f64> = (0..40).map(|i| ((i * 7) % 40) as f64 + 1.0).collect();
        let a = SparseOperator::from_diagonal(&d);
        let b = SparseOperator::identity(40);
        let s = solve_lowest(&a, &b, 4, 1e-9).unwrap();
        for (i, v) in s.eigenvalues.iter().enumerate() {
            assert!((v - (i + 1) as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn grouping_examples() {
        let g = group_multiplicities(&[0.0, 1.99, 2.00, 2.01, 6.1], 0.02);
        let sizes: Vec<usize> = g.iter().map(|g| g.multiplicity).collect();
        assert_eq!(sizes, vec![1, 3, 1]);
        assert_eq!(group_multiplicities(&[3.0; 5], 0.02).len(), 1);
        assert!(group_multiplicities(&[], 0.02).is_empty());
    }

    #[test]
    fn quotient_errors_on_zero() {
        let a = SparseOperator::identity(3);
        assert!(matches!(rayleigh_quotient(&a, &a, &[0.0; 3]), Err(Error::ZeroForm)));
        assert!(matches!(eigenform_residual(&a, &a, &[0.0; 3]), Err(Error::ZeroForm)));
    }
}
