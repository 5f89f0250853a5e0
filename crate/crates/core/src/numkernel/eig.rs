use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError, DEFAULT_TOL, MAX_SWEEPS};

/// Eigenpairs of a Hermitian matrix, values ascending, eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct EigDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigDecomposition {
    /// `‖V Λ V† − M‖_max`.
    pub fn reconstruction_residual(&self, m: &ComplexMatrix) -> f64 {
        let lambda: Vec<Complex64> = self.values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let rebuilt = &(&self.vectors * &ComplexMatrix::diagonal(&lambda)) * &self.vectors.adjoint();
        (&rebuilt - m).max_abs()
    }
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
pub fn hermitian_eig(m: &ComplexMatrix, tol: f64) -> Result<EigDecomposition, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let residual = m.hermiticity_residual();
    if residual >= tol {
        return Err(LinalgError::NonHermitian { residual });
    }
    let n = m.rows();
    let mut a = m.clone();
    // exact Hermitian copy: real diagonal, mirrored upper triangle
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= 1e-15 * scale || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NoConvergence { sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(EigDecomposition { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One two-sided Jacobi rotation zeroing `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let beta = b.norm();
    if beta == 0.0 {
        return;
    }
    let n = a.rows();
    let phase = b / beta;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = 0.5 * (2.0 * beta).atan2(aqq - app);
    let (s, c) = theta.sin_cos();
    // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    for k in 0..n {
        let x = a[(k, p)];
        let y = a[(k, q)];
        a[(k, p)] = x * c + y * g_qp;
        a[(k, q)] = x * s + y * g_qq;
    }
    for k in 0..n {
        let x = a[(p, k)];
        let y = a[(q, k)];
        a[(p, k)] = x * c + y * g_qp.conj();
        a[(q, k)] = x * s + y * g_qq.conj();
    }
    let new_pp = app * c * c - 2.0 * beta * c * s + aqq * s * s;
    let new_qq = app * s * s + 2.0 * beta * c * s + aqq * c * c;
    a[(p, p)] = Complex64::new(new_pp, 0.0);
    a[(q, q)] = Complex64::new(new_qq, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let x = v[(k, p)];
        let y = v[(k, q)];
        v[(k, p)] = x * c + y * g_qp;
        v[(k, q)] = x * s + y * g_qq;
    }
}

/// Spectral exponential `exp(−iθH)`.
pub fn unitary_from_hermitian(h: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eig(h, DEFAULT_TOL)?;
    let n = h.rows();
    let phases: Vec<Complex64> = eig.values.iter().map(|&lam| Complex64::from_polar(1.0, -theta * lam)).collect();
    let scaled = ComplexMatrix::from_fn(n, n, |i, j| eig.vectors[(i, j)] * phases[j]);
    Ok(&scaled * &eig.vectors.adjoint())
}

/// Eigenphases in (−π, π] (ascending) and orthonormal eigenvectors of a unitary.
#[derive(Clone, Debug)]
pub struct UnitaryEig {
    pub phases: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl UnitaryEig {
    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, Vec<Complex64>)> + '_ {
        (0..self.len()).map(move |i| (self.phases[i], self.vector(i)))
    }

    /// `max_i ‖U v_i − e^{iφ_i} v_i‖_∞`.
    pub fn residual(&self, u: &ComplexMatrix) -> f64 {
        let mut worst = 0.0f64;
        for (phi, v) in self.iter() {
            let uv = u.apply(&v);
            let lam = Complex64::from_polar(1.0, phi);
            for (x, y) in uv.iter().zip(&v) {
                worst = worst.max((x - lam * y).norm());
            }
        }
        worst
    }
}

const UNITARY_TOL: f64 = 1e-8;
const CLUSTER_TOL: f64 = 1e-6;

/// Diagonalizes a unitary through its commuting Hermitian parts
/// `C = (U+U†)/2` and `S = (U−U†)/2i`.
pub fn unitary_eig(u: &ComplexMatrix) -> Result<UnitaryEig, LinalgError> {
    if !u.is_square() {
        return Err(LinalgError::NotSquare { rows: u.rows(), cols: u.cols() });
    }
    let residual = u.unitarity_residual();
    if !(residual < UNITARY_TOL) {
        return Err(LinalgError::NonUnitary { residual });
    }
    let n = u.rows();
    let ud = u.adjoint();
    let cos_part = (u + &ud).scale(Complex64::new(0.5, 0.0));
    let sin_part = (u - &ud).scale(Complex64::new(0.0, -0.5));

    let eig_c = hermitian_eig(&cos_part, DEFAULT_TOL)?;
    let mut vectors = eig_c.vectors;
    refine_clusters(&mut vectors, &eig_c.values, &sin_part, &cos_part)?;

    let mut phases = Vec::with_capacity(n);
    for j in 0..n {
        let col = vectors.column(j);
        let uv = u.apply(&col);
        let lam: Complex64 = col.iter().zip(&uv).map(|(a, b)| a.conj() * b).sum();
        phases.push(wrap_phase(lam.arg()));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| phases[i].total_cmp(&phases[j]));
    let sorted = ComplexMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    let out = UnitaryEig { phases: order.iter().map(|&i| phases[i]).collect(), vectors: sorted };
    let check = out.residual(u);
    if check > 1e-7 {
        return Err(LinalgError::NoConvergence { sweeps: MAX_SWEEPS });
    }
    Ok(out)
}

/// Re-diagonalizes near-degenerate clusters of `values` with `primary`,
/// then sub-clusters degenerate in `primary` with `secondary`.
fn refine_clusters(
    vectors: &mut ComplexMatrix,
    values: &[f64],
    primary: &ComplexMatrix,
    secondary: &ComplexMatrix,
) -> Result<(), LinalgError> {
    for cluster in clusters(values) {
        if cluster.len() < 2 {
            continue;
        }
        let q = ComplexMatrix::from_fn(vectors.rows(), cluster.len(), |r, c| vectors[(r, cluster[c])]);
        let qd = q.adjoint();
        let sub = &(&qd * primary) * &q;
        let eig = hermitian_eig(&sub, 1e-8)?;
        let mut rotated = &q * &eig.vectors;

        // second stage: degenerate in `primary` too
        for inner in clusters(&eig.values) {
            if inner.len() < 2 {
                continue;
            }
            let q2 = ComplexMatrix::from_fn(rotated.rows(), inner.len(), |r, c| rotated[(r, inner[c])]);
            let sub2 = &(&q2.adjoint() * secondary) * &q2;
            let eig2 = hermitian_eig(&sub2, 1e-8)?;
            let r2 = &q2 * &eig2.vectors;
            for (c, &col) in inner.iter().enumerate() {
                rotated.set_column(col, &r2.column(c));
            }
        }
        for (c, &col) in cluster.iter().enumerate() {
            vectors.set_column(col, &rotated.column(c));
        }
    }
    Ok(())
}

/// Groups ascending values into runs whose consecutive gaps are below `CLUSTER_TOL`.
fn clusters(values: &[f64]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &x) in values.iter().enumerate() {
        match out.last_mut() {
            Some(run) if x - values[*run.last().unwrap()] < CLUSTER_TOL => run.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

/// Maps an angle into (−π, π].
pub fn wrap_phase(phi: f64) -> f64 {
    let mut x = phi.rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::pauli::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input_is_returned_unchanged() {
        let m = ComplexMatrix::diagonal(&[c(0.1, 0.0), c(-0.1, 0.0)]);
        let e = hermitian_eig(&m, 1e-10).unwrap();
        assert_eq!(e.values, vec![-0.1, 0.1]);
        assert!((e.vectors[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((e.vectors[(0, 1)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sigma_y_spectrum() {
        let e = hermitian_eig(&sigma_y(), 1e-10).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        assert!(e.reconstruction_residual(&sigma_y()) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(hermitian_eig(&m, 1e-10), Err(LinalgError::NonHermitian { .. })));
        let r = ComplexMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eig(&r, 1e-10), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn exponential_examples() {
        let zero = ComplexMatrix::zeros(3, 3);
        let u = unitary_from_hermitian(&zero, 0.7).unwrap();
        assert!((&u - &ComplexMatrix::identity(3)).max_abs() < 1e-15);

        let u = unitary_from_hermitian(&sigma_z(), PI / 2.0).unwrap();
        let expect = ComplexMatrix::diagonal(&[c(0.0, -1.0), c(0.0, 1.0)]);
        assert!((&u - &expect).max_abs() < 1e-14);

        let u = unitary_from_hermitian(&sigma_y(), PI).unwrap();
        let expect = ComplexMatrix::identity(2).scale(c(-1.0, 0.0));
        assert!((&u - &expect).max_abs() < 1e-14);
    }

    #[test]
    fn unitary_eig_examples() {
        let e = unitary_eig(&ComplexMatrix::identity(4)).unwrap();
        assert!(e.phases.iter().all(|p| p.abs() < 1e-15));

        let d = ComplexMatrix::diagonal(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let e = unitary_eig(&d).unwrap();
        assert!((e.phases[0] + PI / 2.0).abs() < 1e-14);
        assert!((e.phases[1] - PI / 2.0).abs() < 1e-14);

        let u = unitary_from_hermitian(&sigma_y(), 1.3).unwrap();
        let e = unitary_eig(&u).unwrap();
        assert!((e.phases[0] + 1.3).abs() < 1e-12);
        assert!((e.phases[1] - 1.3).abs() < 1e-12);
        assert!(e.residual(&u) < 1e-12);
    }

    #[test]
    fn unitary_eig_separates_degenerate_cosines() {
        // phases ±0.4 twice over: cos-part fully degenerate in pairs
        let h = ComplexMatrix::diagonal(&[c(0.4, 0.0), c(-0.4, 0.0), c(0.4, 0.0), c(-0.4, 0.0)]);
        let mix = unitary_from_hermitian(
            &ComplexMatrix::from_fn(4, 4, |i, j| c(((i + 2 * j) % 3) as f64 * 0.1, (i as f64 - j as f64) * 0.05))
                .pipe_hermitian(),
            0.9,
        )
        .unwrap();
        let h_mixed = &(&mix * &h) * &mix.adjoint();
        let u = unitary_from_hermitian(&h_mixed, 1.0).unwrap();
        let e = unitary_eig(&u).unwrap();
        assert!(e.residual(&u) < 1e-10);
        let expect = [-0.4, -0.4, 0.4, 0.4];
        for (p, x) in e.phases.iter().zip(expect) {
            assert!((p - x).abs() < 1e-10, "{p} vs {x}");
        }
    }

    #[test]
    fn rejects_non_unitary() {
        let m = ComplexMatrix::identity(2).scale(c(1.1, 0.0));
        assert!(matches!(unitary_eig(&m), Err(LinalgError::NonUnitary { .. })));
    }

    #[test]
    fn wrap_phase_range() {
        assert!((wrap_phase(-PI) - PI).abs() < 1e-15);
        assert!((wrap_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_phase(0.25), 0.25);
    }

    trait PipeHermitian {
        fn pipe_hermitian(self) -> ComplexMatrix;
    }

    impl PipeHermitian for ComplexMatrix {
        fn pipe_hermitian(self) -> ComplexMatrix {
            (&self + &self.adjoint()).scale(c(0.5, 0.0))
        }
    }
}
