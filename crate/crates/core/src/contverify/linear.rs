//! Linear maps on even-dimensional real spaces, odd spheres, and matrix spaces.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{check_samples, CheckReport, ContError, InverseAmbiguousMap, SamplePlan, TOL_EXACT, TOL_SOLVE};

/// Largest accepted trace, relative to `n * max(1, max |a_ij|)`.
pub const TRACE_TOL: f64 = 1e-12;

fn euclid(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn rotate_pairs(v: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(v.len());
    for pair in v.chunks(2) {
        out.push(pair[1]);
        out.push(-pair[0]);
    }
    out
}

/// `(x1, x2, ..., x_{2m-1}, x_{2m}) -> (x2, -x1, ..., x_{2m}, -x_{2m-1})`.
pub fn r2n_linear_map(v: &[f64]) -> Result<Vec<f64>, ContError> {
    if v.is_empty() || v.len() % 2 == 1 {
        return Err(ContError::OddDimension(v.len()));
    }
    Ok(rotate_pairs(v))
}

/// The same map restricted to the unit sphere of `R^{2m}`.
pub fn sphere_map(v: &[f64]) -> Result<Vec<f64>, ContError> {
    if v.is_empty() || v.len() % 2 == 1 {
        return Err(ContError::EvenSphereRejected(v.len().saturating_sub(1)));
    }
    let norm = euclid(v);
    if !((norm - 1.0).abs() <= TOL_EXACT) {
        return Err(ContError::NotOnSphere(norm));
    }
    Ok(rotate_pairs(v))
}

/// `A -> iA` on `M_n(C)`.
pub fn matrix_additive_complex_map(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.map(|z| z * Complex64::i())
}

/// Coordinates of a trace-zero matrix: off-diagonal entries in row-major
/// order, then the partial sums `a_11 + ... + a_kk` for `k < n`.
pub fn trace0_coords(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(a[(i, j)]);
            }
        }
    }
    let mut acc = 0.0;
    for k in 0..n - 1 {
        acc += a[(k, k)];
        out.push(acc);
    }
    out
}

/// Inverse of [`trace0_coords`].
pub fn trace0_from_coords(n: usize, c: &[f64]) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(n, n);
    let mut it = c.iter();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                a[(i, j)] = *it.next().unwrap();
            }
        }
    }
    let sums: Vec<f64> = it.copied().collect();
    let mut prev = 0.0;
    for k in 0..n - 1 {
        a[(k, k)] = sums[k] - prev;
        prev = sums[k];
    }
    a[(n - 1, n - 1)] = -prev;
    a
}

/// Rotates consecutive coordinate pairs of a trace-zero real matrix, `n` odd.
pub fn trace0_real_map(a: &DMatrix<f64>) -> Result<DMatrix<f64>, ContError> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return Err(ContError::NotSquare);
    }
    if n.is_multiple_of(2) {
        return Err(ContError::EvenN(n));
    }
    let tr = a.trace();
    let scale = a.iter().fold(1.0f64, |m, x| m.max(x.abs())) * n as f64;
    if !(tr.abs() <= TRACE_TOL * scale) {
        return Err(ContError::NonzeroTrace(tr));
    }
    Ok(trace0_from_coords(n, &rotate_pairs(&trace0_coords(a))))
}

fn max_entry_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    max_abs_diff(a.as_slice(), b.as_slice())
}

fn uniform_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-1.0..1.0)).collect()
}

pub struct R2nLinearMap {
    pub dim: usize,
}

impl InverseAmbiguousMap for R2nLinearMap {
    type Point = Vec<f64>;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        uniform_vec(rng, self.dim)
    }

    fn apply(&self, v: &Vec<f64>) -> Result<Vec<f64>, ContError> {
        r2n_linear_map(v)
    }

    fn inverse(&self, v: &Vec<f64>) -> Vec<f64> {
        v.iter().map(|x| -x).collect()
    }

    fn distance(&self, a: &Vec<f64>, b: &Vec<f64>) -> f64 {
        max_abs_diff(a, b)
    }
}

/// Uniform point on the unit sphere of `R^ambient`.
pub fn sample_sphere(rng: &mut ChaCha8Rng, ambient: usize) -> Vec<f64> {
    loop {
        let v = uniform_vec(rng, ambient);
        let n = euclid(&v);
        if n > 0.1 && n <= 1.0 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

pub struct SphereMap {
    pub ambient: usize,
}

impl InverseAmbiguousMap for SphereMap {
    type Point = Vec<f64>;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        sample_sphere(rng, self.ambient)
    }

    fn apply(&self, v: &Vec<f64>) -> Result<Vec<f64>, ContError> {
        sphere_map(v)
    }

    fn inverse(&self, v: &Vec<f64>) -> Vec<f64> {
        v.iter().map(|x| -x).collect()
    }

    fn distance(&self, a: &Vec<f64>, b: &Vec<f64>) -> f64 {
        max_abs_diff(a, b)
    }
}

/// `| |f(v)| - |v| |` on `R^dim`, or on the sphere when `on_sphere`.
pub fn check_norm_preserved(dim: usize, on_sphere: bool, plan: &SamplePlan) -> Result<CheckReport, ContError> {
    check_samples(
        plan,
        TOL_EXACT,
        |rng| if on_sphere { sample_sphere(rng, dim) } else { uniform_vec(rng, dim) },
        |v| {
            let w = if on_sphere { sphere_map(v)? } else { r2n_linear_map(v)? };
            Ok((euclid(&w) - euclid(v)).abs())
        },
    )
}

pub struct MatrixComplexMap {
    pub n: usize,
}

impl InverseAmbiguousMap for MatrixComplexMap {
    type Point = DMatrix<Complex64>;

    fn sample(&self, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn apply(&self, a: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>, ContError> {
        Ok(matrix_additive_complex_map(a))
    }

    fn inverse(&self, a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        -a
    }

    fn distance(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

/// `|tr f(A) - i tr A|`.
pub fn check_trace_scaling(n: usize, plan: &SamplePlan) -> Result<CheckReport, ContError> {
    let map = MatrixComplexMap { n };
    check_samples(plan, TOL_EXACT, |rng| map.sample(rng), |a| {
        let fa = matrix_additive_complex_map(a);
        Ok((fa.trace() - a.trace() * Complex64::i()).norm())
    })
}

pub struct Trace0RealMap {
    pub n: usize,
}

impl InverseAmbiguousMap for Trace0RealMap {
    type Point = DMatrix<f64>;

    fn sample(&self, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
        let c = uniform_vec(rng, self.n * self.n - 1);
        trace0_from_coords(self.n, &c)
    }

    fn apply(&self, a: &DMatrix<f64>) -> Result<DMatrix<f64>, ContError> {
        trace0_real_map(a)
    }

    fn inverse(&self, a: &DMatrix<f64>) -> DMatrix<f64> {
        -a
    }

    fn distance(&self, a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        max_entry_diff(a, b)
    }
}

/// `|tr f(A)|` on sampled trace-zero matrices.
pub fn check_trace_zero_preserved(n: usize, plan: &SamplePlan) -> Result<CheckReport, ContError> {
    let map = Trace0RealMap { n };
    check_samples(plan, TOL_SOLVE, |rng| map.sample(rng), |a| Ok(trace0_real_map(a)?.trace().abs()))
}
