//! Real nonsymmetric eigendecomposition for small dense matrices.
//!
//! Householder reduction to upper Hessenberg form followed by the Francis
//! double-shift QR iteration (the classic EISPACK `hqr` scheme) yields the
//! eigenvalues; eigenvectors come from shifted inverse iteration against the
//! original matrix. Suitable for well-conditioned matrices up to the crate's
//! 64x64 bound.

use num_complex::Complex64;

use super::{solve_relaxed, SmallMatrix};
use crate::error::invalid;
use crate::{Error, Result};

/// Iteration budget per eigenvalue in the QR stage.
const QR_ITER_BUDGET: usize = 60;

/// An eigenvalue with a unit eigenvector.
///
/// Vectors have unit Euclidean length and the first component whose modulus
/// exceeds `1e-12` of the largest is rotated to be real and positive.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: Vec<Complex64>,
}

/// Full eigendecomposition of a real square matrix.
///
/// Pairs are sorted by ascending real part, then imaginary part. Each pair
/// satisfies `||A v - lambda v||_inf <= 1e-9 * ||A||_inf`; failure to reach
/// that bound reports [`Error::NoConvergence`].
pub fn eig_real(a: &SmallMatrix) -> Result<Vec<EigenPair>> {
    if !a.is_square() {
        return Err(invalid("eig_real requires a square matrix"));
    }
    if !a.is_real() {
        return Err(invalid("eig_real requires exactly real entries"));
    }
    let anorm = a.inf_norm();
    let values = real_eigenvalues(a)?;
    let mut pairs = Vec::with_capacity(values.len());
    for value in values {
        let vector = inverse_iteration(a, value, anorm)?;
        pairs.push(EigenPair { value, vector });
    }
    pairs.sort_by(|p, q| {
        p.value
            .re
            .total_cmp(&q.value.re)
            .then(p.value.im.total_cmp(&q.value.im))
    });
    Ok(pairs)
}

/// Eigenvalues only (unsorted), shared with the companion-matrix root finder.
pub(crate) fn real_eigenvalues(a: &SmallMatrix) -> Result<Vec<Complex64>> {
    if !a.is_square() || !a.is_real() {
        return Err(invalid("real_eigenvalues requires a real square matrix"));
    }
    let n = a.rows();
    // 1-based working copy; row/column 0 is unused padding so the QR stage
    // can follow the classical index conventions verbatim.
    let mut h = vec![0.0f64; (n + 1) * (n + 1)];
    for i in 0..n {
        for j in 0..n {
            h[(i + 1) * (n + 1) + (j + 1)] = a[(i, j)].re;
        }
    }
    hessenberg(&mut h, n);
    hqr(&mut h, n)
}

/// Householder reduction to upper Hessenberg form (1-based storage).
fn hessenberg(h: &mut [f64], n: usize) {
    let ld = n + 1;
    let idx = |i: usize, j: usize| i * ld + j;
    if n < 3 {
        return;
    }
    let mut v = vec![0.0f64; n + 1];
    for k in 1..=n - 2 {
        // eliminate column k below the subdiagonal
        let mut scale = 0.0;
        for i in k + 1..=n {
            scale += h[idx(i, k)].abs();
        }
        if scale == 0.0 {
            continue;
        }
        let mut sigma = 0.0;
        for i in k + 1..=n {
            v[i] = h[idx(i, k)] / scale;
            sigma += v[i] * v[i];
        }
        let mut alpha = sigma.sqrt();
        if v[k + 1] > 0.0 {
            alpha = -alpha;
        }
        let beta = sigma - alpha * v[k + 1];
        v[k + 1] -= alpha;
        if beta == 0.0 {
            continue;
        }
        // A <- (I - v v^T / beta) A
        for j in 1..=n {
            let mut s = 0.0;
            for i in k + 1..=n {
                s += v[i] * h[idx(i, j)];
            }
            s /= beta;
            for i in k + 1..=n {
                h[idx(i, j)] -= s * v[i];
            }
        }
        // A <- A (I - v v^T / beta)
        for i in 1..=n {
            let mut s = 0.0;
            for j in k + 1..=n {
                s += h[idx(i, j)] * v[j];
            }
            s /= beta;
            for j in k + 1..=n {
                h[idx(i, j)] -= s * v[j];
            }
        }
        h[idx(k + 1, k)] = alpha * scale;
        for i in k + 2..=n {
            h[idx(i, k)] = 0.0;
        }
    }
}

fn sign_of(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (1-based storage).
/// Destroys `h`; returns the eigenvalues.
fn hqr(h: &mut [f64], n: usize) -> Result<Vec<Complex64>> {
    let ld = n + 1;
    let idx = |i: usize, j: usize| i * ld + j;
    let mut eigenvalues: Vec<Complex64> = Vec::with_capacity(n);

    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += h[idx(i, j)].abs();
        }
    }
    if anorm == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }

    let mut nn = n;
    let mut t = 0.0;
    while nn >= 1 {
        let mut its = 0usize;
        loop {
            // look for a negligible subdiagonal element
            let mut l = 1;
            for cand in (2..=nn).rev() {
                let mut s = h[idx(cand - 1, cand - 1)].abs() + h[idx(cand, cand)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if h[idx(cand, cand - 1)].abs() <= f64::EPSILON * s {
                    h[idx(cand, cand - 1)] = 0.0;
                    l = cand;
                    break;
                }
            }
            let mut x = h[idx(nn, nn)];
            if l == nn {
                // one real root found
                eigenvalues.push(Complex64::new(x + t, 0.0));
                nn -= 1;
                break;
            }
            let mut y = h[idx(nn - 1, nn - 1)];
            let mut w = h[idx(nn, nn - 1)] * h[idx(nn - 1, nn)];
            if l == nn - 1 {
                // a 2x2 block delivers two roots
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + sign_of(z, p);
                    let first = x + z;
                    let second = if z != 0.0 { x - w / z } else { first };
                    eigenvalues.push(Complex64::new(first, 0.0));
                    eigenvalues.push(Complex64::new(second, 0.0));
                } else {
                    eigenvalues.push(Complex64::new(x + p, z));
                    eigenvalues.push(Complex64::new(x + p, -z));
                }
                nn -= 2;
                break;
            }
            // no root yet: one double QR sweep
            if its == QR_ITER_BUDGET {
                return Err(Error::NoConvergence(QR_ITER_BUDGET));
            }
            if its > 0 && its.is_multiple_of(10) {
                // exceptional shift
                t += x;
                for i in 1..=nn {
                    h[idx(i, i)] -= x;
                }
                let s = h[idx(nn, nn - 1)].abs() + h[idx(nn - 1, nn - 2)].abs();
                y = 0.75 * s;
                x = y;
                w = -0.4375 * s * s;
            }
            its += 1;

            // find two consecutive small subdiagonal elements
            let mut m = nn - 2;
            let (mut p, mut q, mut r) = loop {
                let z = h[idx(m, m)];
                let rr = x - z;
                let ss = y - z;
                let mut p = (rr * ss - w) / h[idx(m + 1, m)] + h[idx(m, m + 1)];
                let mut q = h[idx(m + 1, m + 1)] - z - rr - ss;
                let mut r = h[idx(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break (p, q, r);
                }
                let u = h[idx(m, m - 1)].abs() * (q.abs() + r.abs());
                let v =
                    p.abs() * (h[idx(m - 1, m - 1)].abs() + z.abs() + h[idx(m + 1, m + 1)].abs());
                if u <= f64::EPSILON * v {
                    break (p, q, r);
                }
                m -= 1;
            };
            for i in m + 2..=nn {
                h[idx(i, i - 2)] = 0.0;
                if i != m + 2 {
                    h[idx(i, i - 3)] = 0.0;
                }
            }
            // double QR step on rows l..nn, columns l..nn
            for k in m..=nn - 1 {
                if k != m {
                    p = h[idx(k, k - 1)];
                    q = h[idx(k + 1, k - 1)];
                    r = if k != nn - 1 {
                        h[idx(k + 2, k - 1)]
                    } else {
                        0.0
                    };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign_of((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        h[idx(k, k - 1)] = -h[idx(k, k - 1)];
                    }
                } else {
                    h[idx(k, k - 1)] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                // row modification
                for j in k..=nn {
                    let mut pp = h[idx(k, j)] + q * h[idx(k + 1, j)];
                    if k != nn - 1 {
                        pp += r * h[idx(k + 2, j)];
                        h[idx(k + 2, j)] -= pp * z;
                    }
                    h[idx(k + 1, j)] -= pp * y;
                    h[idx(k, j)] -= pp * x;
                }
                // column modification
                let mmin = nn.min(k + 3);
                for i in l..=mmin {
                    let mut pp = x * h[idx(i, k)] + y * h[idx(i, k + 1)];
                    if k != nn - 1 {
                        pp += z * h[idx(i, k + 2)];
                        h[idx(i, k + 2)] -= pp * r;
                    }
                    h[idx(i, k + 1)] -= pp * q;
                    h[idx(i, k)] -= pp;
                }
            }
        }
    }
    Ok(eigenvalues)
}

fn normalize2(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
}

fn residual_inf(a: &SmallMatrix, lambda: Complex64, v: &[Complex64]) -> f64 {
    a.mul_vec(v)
        .iter()
        .zip(v)
        .map(|(av, vi)| (av - lambda * vi).norm())
        .fold(0.0, f64::max)
}

/// Shifted inverse iteration for one eigenvalue of a real matrix.
fn inverse_iteration(a: &SmallMatrix, lambda: Complex64, anorm: f64) -> Result<Vec<Complex64>> {
    let n = a.rows();
    let mut shifted = a.clone();
    for i in 0..n {
        shifted[(i, i)] -= lambda;
    }
    let scale = anorm.max(lambda.norm()).max(1e-30);
    let floor = f64::EPSILON * scale;
    let accept = 1e-11 * scale;
    let contract = 1e-9 * anorm.max(1e-30);

    let mut best_res = f64::INFINITY;
    let mut best: Vec<Complex64> = Vec::new();
    for start in 0..=n {
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| {
                if start == 0 || i == start - 1 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        normalize2(&mut v);
        for _ in 0..4 {
            let mut w = solve_relaxed(&shifted, &v, floor)?;
            normalize2(&mut w);
            v = w;
            let res = residual_inf(a, lambda, &v);
            if res < best_res {
                best_res = res;
                best = v.clone();
            }
            if res <= accept {
                canonicalize_phase(&mut v);
                return Ok(v);
            }
        }
    }
    if best_res <= contract {
        canonicalize_phase(&mut best);
        Ok(best)
    } else {
        Err(Error::NoConvergence(QR_ITER_BUDGET))
    }
}

/// Rotates the vector so its first significant component is real positive.
fn canonicalize_phase(v: &mut [Complex64]) {
    let max_mag = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max_mag == 0.0 {
        return;
    }
    if let Some(lead) = v.iter().find(|z| z.norm() > 1e-12 * max_mag).copied() {
        let phase = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}
