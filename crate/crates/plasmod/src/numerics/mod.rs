//! Self-contained complex scalar and small dense matrix kernel.
//!
//! Everything here is desk-scale: matrices are bounded at 64×64, solves use
//! LU with partial pivoting, eigenvalues of real matrices come from a
//! Hessenberg reduction followed by Francis double-shift QR, and polynomial
//! roots are companion-matrix eigenvalues. All operations are pure functions
//! of their inputs.

mod eig;
mod quadrature;

pub use eig::{eig_real, EigenPair};
pub use quadrature::gauss_legendre;
pub(crate) use quadrature::integrate as quadrature_integrate;

use num_complex::Complex64;

use crate::error::invalid;
use crate::{Error, Result};

/// Hard bound on matrix dimensions.
pub const MAX_DIM: usize = 64;

/// Relative pivot threshold below which a solve is declared singular.
pub const PIVOT_REL_TOL: f64 = 1e-14;

/// Dense row-major complex matrix, at most [`MAX_DIM`] in either dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl SmallMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_dims(rows, cols)?;
        if entries.len() != rows * cols {
            return Err(invalid(format!(
                "entry count {} does not match {}x{}",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(SmallMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        check_dims(rows, cols).expect("dimensions within bounds");
        SmallMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SmallMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds an `rows x cols` matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = SmallMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a real matrix entry by entry.
    pub fn from_real_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        SmallMatrix::from_fn(rows, cols, |i, j| Complex64::new(f(i, j), 0.0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn transpose(&self) -> SmallMatrix {
        SmallMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Matrix-matrix product.
    pub fn mul(&self, other: &SmallMatrix) -> SmallMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must match");
        SmallMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * other[(k, j)]).sum()
        })
    }

    /// Determinant via LU; returns zero for exactly singular input.
    pub fn determinant(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(invalid("determinant requires a square matrix"));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let mut piv = k;
            let mut best = a[(k, k)].norm();
            for i in k + 1..n {
                let mag = a[(i, k)].norm();
                if mag > best {
                    best = mag;
                    piv = i;
                }
            }
            if best == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if piv != k {
                a.swap_rows(piv, k);
                det = -det;
            }
            det *= a[(k, k)];
            for i in k + 1..n {
                let factor = a[(i, k)] / a[(k, k)];
                for j in k + 1..n {
                    let upd = a[(k, j)];
                    a[(i, j)] -= factor * upd;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for SmallMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SmallMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 || rows > MAX_DIM || cols > MAX_DIM {
        return Err(invalid(format!(
            "matrix dimensions {}x{} outside 1..={}",
            rows, cols, MAX_DIM
        )));
    }
    Ok(())
}

/// Solves `A x = b` by LU with partial pivoting.
///
/// Fails with [`Error::SingularMatrix`] when a pivot magnitude drops below
/// `1e-14 * ||A||_inf`.
pub fn solve_linear(a: &SmallMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(invalid("solve_linear requires a square matrix"));
    }
    if b.len() != a.rows {
        return Err(invalid(format!(
            "right-hand side length {} does not match dimension {}",
            b.len(),
            a.rows
        )));
    }
    let threshold = PIVOT_REL_TOL * a.inf_norm();
    let lu = LuFactors::compute(a, threshold, PivotPolicy::Fail)?;
    Ok(lu.solve(b))
}

enum PivotPolicy {
    /// Error out on pivots below the threshold.
    Fail,
    /// Replace tiny pivots by the threshold (inverse-iteration use).
    Relax,
}

/// LU factorization with row pivoting of a square matrix.
struct LuFactors {
    n: usize,
    lu: SmallMatrix,
    perm: Vec<usize>,
}

impl LuFactors {
    fn compute(a: &SmallMatrix, threshold: f64, policy: PivotPolicy) -> Result<LuFactors> {
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut piv = k;
            let mut best = lu[(k, k)].norm();
            for i in k + 1..n {
                let mag = lu[(i, k)].norm();
                if mag > best {
                    best = mag;
                    piv = i;
                }
            }
            if best < threshold {
                match policy {
                    PivotPolicy::Fail => {
                        return Err(Error::SingularMatrix {
                            pivot: best,
                            threshold,
                        })
                    }
                    PivotPolicy::Relax => {
                        // keep the row order, nudge the pivot off zero
                        lu[(k, k)] = Complex64::new(threshold.max(f64::MIN_POSITIVE), 0.0);
                        piv = k;
                    }
                }
            }
            if piv != k {
                lu.swap_rows(piv, k);
                perm.swap(piv, k);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in k + 1..n {
                    let upd = lu[(k, j)];
                    lu[(i, j)] -= factor * upd;
                }
            }
        }
        Ok(LuFactors { n, lu, perm })
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                let lij = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= lij * xj;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let uij = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= uij * xj;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }
}

/// Solves a shifted system with tiny pivots relaxed instead of rejected.
/// Used by inverse iteration where (A - lambda I) is singular by design.
pub(crate) fn solve_relaxed(
    a: &SmallMatrix,
    b: &[Complex64],
    floor: f64,
) -> Result<Vec<Complex64>> {
    let lu = LuFactors::compute(a, floor, PivotPolicy::Relax)?;
    Ok(lu.solve(b))
}

/// Roots of a real polynomial, highest-degree coefficient first, via the
/// eigenvalues of its companion matrix. Roots come back sorted by ascending
/// real part, then imaginary part.
pub fn poly_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    if coeffs.is_empty() {
        return Err(invalid("empty coefficient list"));
    }
    let max_coeff = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if max_coeff == 0.0 || coeffs[0].abs() < 1e-14 * max_coeff {
        return Err(Error::DegenerateLeadingCoefficient(coeffs[0]));
    }
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }
    if degree > 16 {
        return Err(invalid(format!("degree {} exceeds 16", degree)));
    }
    // Monic normalization, then the Frobenius companion: ones on the
    // subdiagonal, -c_i (coefficient of x^i) in the last column.
    let monic: Vec<f64> = coeffs.iter().map(|c| c / coeffs[0]).collect();
    let companion = SmallMatrix::from_real_fn(degree, degree, |i, j| {
        if j == degree - 1 {
            -monic[degree - i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let mut roots = eig::real_eigenvalues(&companion)?;
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

/// Horner evaluation of a real-coefficient polynomial at a complex point.
pub fn poly_eval(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Least-squares slope of ln(y) against ln(x) over positive points.
/// Used by the resonance scans to estimate blow-up exponents.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = logs.len() as f64;
    if logs.len() < 2 {
        return f64::NAN;
    }
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn residual_inf(a: &SmallMatrix, x: &[Complex64], b: &[Complex64]) -> f64 {
        a.mul_vec(x)
            .iter()
            .zip(b)
            .map(|(ax, bi)| (ax - bi).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn solve_identity() {
        let a = SmallMatrix::identity(4);
        let b = vec![c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)];
        let x = solve_linear(&a, &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_diagonal() {
        let a = SmallMatrix::from_real_fn(2, 2, |i, j| {
            if i == j {
                2.0 * (i as f64 + 1.0) * 1.0
            } else {
                0.0
            }
        });
        // diag(2, 4)
        let b = vec![c(2.0, 0.0), c(8.0, 0.0)];
        let x = solve_linear(&a, &b).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((x[1] - c(2.0, 0.0)).norm() < 1e-15);
    }

    /// Independent 4x4 oracle: block elimination on 2x2 blocks with
    /// hand-coded 2x2 inverses (no pivoting, no LU).
    fn block_elimination_4x4(m: &SmallMatrix, rhs: &[Complex64]) -> Vec<Complex64> {
        type M2 = [[Complex64; 2]; 2];
        let blk = |r: usize, c: usize| -> M2 {
            [
                [m[(2 * r, 2 * c)], m[(2 * r, 2 * c + 1)]],
                [m[(2 * r + 1, 2 * c)], m[(2 * r + 1, 2 * c + 1)]],
            ]
        };
        let inv2 = |a: M2| -> M2 {
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            [
                [a[1][1] / det, -a[0][1] / det],
                [-a[1][0] / det, a[0][0] / det],
            ]
        };
        let mul2 = |a: M2, b: M2| -> M2 {
            let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                }
            }
            out
        };
        let sub2 = |a: M2, b: M2| -> M2 {
            [
                [a[0][0] - b[0][0], a[0][1] - b[0][1]],
                [a[1][0] - b[1][0], a[1][1] - b[1][1]],
            ]
        };
        let mulv = |a: M2, v: [Complex64; 2]| -> [Complex64; 2] {
            [
                a[0][0] * v[0] + a[0][1] * v[1],
                a[1][0] * v[0] + a[1][1] * v[1],
            ]
        };
        // [A B; C D] [x1; x2] = [b1; b2], Schur complement on A
        let (a, b, c, d) = (blk(0, 0), blk(0, 1), blk(1, 0), blk(1, 1));
        let a_inv = inv2(a);
        let b1 = [rhs[0], rhs[1]];
        let b2 = [rhs[2], rhs[3]];
        let schur = sub2(d, mul2(c, mul2(a_inv, b)));
        let rhs2 = {
            let t = mulv(mul2(c, a_inv), b1);
            [b2[0] - t[0], b2[1] - t[1]]
        };
        let x2 = mulv(inv2(schur), rhs2);
        let x1 = {
            let t = mulv(b, x2);
            mulv(a_inv, [b1[0] - t[0], b1[1] - t[1]])
        };
        vec![x1[0], x1[1], x2[0], x2[1]]
    }

    #[test]
    fn solve_shell_matrix_at_lambda_zero() {
        // P with lambda1 = 0 for the 4:5:9:10 structure equals -K entrywise.
        let r = [4.0f64, 5.0, 9.0, 10.0];
        let q = |a: usize, b: usize| (r[a] / r[b]).powi(3);
        let k_rows = [
            [0.0, 1.0, 1.0, 1.0],
            [2.0 * q(0, 1), 1.0, -1.0, -1.0],
            [-2.0 * q(0, 2), -2.0 * q(1, 2), 0.0, 1.0],
            [2.0 * q(0, 3), 2.0 * q(1, 3), 2.0 * q(2, 3), 1.0],
        ];
        let p = SmallMatrix::from_real_fn(4, 4, |i, j| -k_rows[i][j]);
        let e = vec![c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)];
        let x = solve_linear(&p, &e).unwrap();
        let oracle = block_elimination_4x4(&p, &e);
        for (xi, oi) in x.iter().zip(&oracle) {
            assert!((xi - oi).norm() < 1e-12, "{} vs {}", xi, oi);
        }
        let norm_b = e.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(residual_inf(&p, &x, &e) <= 1e-12 * (1.0 + norm_b));
    }

    #[test]
    fn solve_rejects_singular() {
        let a = SmallMatrix::from_real_fn(2, 2, |_, _| 1.0);
        let b = vec![c(1.0, 0.0), c(1.0, 0.0)];
        match solve_linear(&a, &b) {
            Err(Error::SingularMatrix { .. }) => {}
            other => panic!("expected SingularMatrix, got {:?}", other),
        }
    }

    #[test]
    fn solve_complex_system_residual() {
        let a = SmallMatrix::from_fn(3, 3, |i, j| {
            c(
                (1 + i * 3 + j) as f64 * 0.37 - ((i * j) as f64).sin(),
                0.29 * (i as f64 - j as f64),
            )
        });
        let b = vec![c(1.0, 2.0), c(-0.5, 0.25), c(3.0, -1.0)];
        let x = solve_linear(&a, &b).unwrap();
        let norm_b = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(residual_inf(&a, &x, &b) <= 1e-12 * (1.0 + norm_b));
    }

    #[test]
    fn poly_roots_double_root() {
        let roots = poly_roots(&[1.0, -2.0, 1.0]).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!((r - c(1.0, 0.0)).norm() < 1e-7, "root {}", r);
            assert!(poly_eval(&[1.0, -2.0, 1.0], *r).norm() <= 1e-8 * 2.0);
        }
    }

    #[test]
    fn poly_roots_plus_minus_one() {
        let roots = poly_roots(&[1.0, 0.0, -1.0]).unwrap();
        assert!((roots[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((roots[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn poly_roots_table_quartic() {
        // Resonance quartic for the 3:4:7:8 radii; roots per the mode table.
        let (r1, r2, r3, r4) = (27.0f64, 64.0, 343.0, 512.0); // cubes
        let c1 = 2.0 * r1 / r2 - 2.0 * r1 / r3 + 2.0 * r1 / r4 + 2.0 * r2 / r3 - 2.0 * r2 / r4
            + 2.0 * r3 / r4;
        let c2 = 1.0 - c1;
        let c0 = 4.0 * (r1 / r2) * (r3 / r4);
        let coeffs = [1.0, -2.0, c2, c1, c0];
        let roots = poly_roots(&coeffs).unwrap();
        let expected = [-0.8237, -0.5013, 1.5013, 1.8237];
        for (r, e) in roots.iter().zip(expected) {
            assert!(r.im.abs() < 1e-10);
            assert!((r.re - e).abs() < 5e-4, "{} vs {}", r.re, e);
            assert!(poly_eval(&coeffs, *r).norm() <= 1e-8 * 4.0);
        }
    }

    #[test]
    fn poly_roots_degenerate_leading() {
        match poly_roots(&[1e-20, 1.0, 2.0]) {
            Err(Error::DegenerateLeadingCoefficient(_)) => {}
            other => panic!("expected DegenerateLeadingCoefficient, got {:?}", other),
        }
    }

    #[test]
    fn poly_roots_degree_cap() {
        let coeffs = vec![1.0; 18];
        assert!(poly_roots(&coeffs).is_err());
    }

    #[test]
    fn determinant_of_known_matrix() {
        let a = SmallMatrix::from_real_fn(2, 2, |i, j| [[3.0, 1.0], [4.0, 2.0]][i][j]);
        let det = a.determinant().unwrap();
        assert!((det - c(2.0, 0.0)).norm() < 1e-14);
        let singular = SmallMatrix::from_real_fn(2, 2, |_, _| 1.0);
        assert_eq!(singular.determinant().unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn dimension_bounds_enforced() {
        assert!(SmallMatrix::new(0, 1, vec![]).is_err());
        assert!(SmallMatrix::new(65, 1, vec![c(0.0, 0.0); 65]).is_err());
        assert!(SmallMatrix::new(2, 2, vec![c(0.0, 0.0); 3]).is_err());
    }
}
