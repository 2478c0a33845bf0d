//! Real matrix groups: the ping-pong map on `GL_n(R)`, the 2x2 self-inverse
//! family, and the finite-difference differential of inversion.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::{DMatrix, Matrix2};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{check_samples, CheckReport, ContError, InverseAmbiguousMap, SamplePlan};

pub type RealMatrix = DMatrix<f64>;

/// Default lower bound on `|det A|` for sampled and accepted matrices.
pub const DET_FLOOR: f64 = 1e-3;

/// `-A` when `det A > 0`, `-A^-1` when `det A < 0`; `n` odd.
pub fn gl_pingpong_map(a: &RealMatrix, det_floor: f64) -> Result<RealMatrix, ContError> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return Err(ContError::NotSquare);
    }
    if n.is_multiple_of(2) {
        return Err(ContError::EvenN(n));
    }
    let det = a.determinant();
    if !(det.abs() >= det_floor) {
        return Err(ContError::NearSingular(det.abs()));
    }
    if det > 0.0 {
        Ok(-a)
    } else {
        let inv = a.clone().try_inverse().ok_or(ContError::NearSingular(det.abs()))?;
        Ok(-inv)
    }
}

fn max_entry_diff(a: &RealMatrix, b: &RealMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Entries uniform in `[-1, 1]`, redrawn while `|det| < DET_FLOOR`.
pub fn sample_invertible(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    loop {
        let m = DMatrix::<f64>::from_fn(n, n, |_, _| rng.random_range(-1.0..=1.0));
        if m.determinant().abs() >= DET_FLOOR {
            return m;
        }
    }
}

/// Orthogonal factor of a random matrix, columns signed so that `R` has a
/// positive diagonal.
pub fn sample_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    let qr = sample_invertible(rng, n).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub struct GlPingpongMap {
    pub n: usize,
    pub det_floor: f64,
}

impl GlPingpongMap {
    pub fn new(n: usize) -> Self {
        GlPingpongMap { n, det_floor: DET_FLOOR }
    }
}

impl InverseAmbiguousMap for GlPingpongMap {
    type Point = RealMatrix;

    fn sample(&self, rng: &mut ChaCha8Rng) -> RealMatrix {
        sample_invertible(rng, self.n)
    }

    fn apply(&self, a: &RealMatrix) -> Result<RealMatrix, ContError> {
        gl_pingpong_map(a, self.det_floor)
    }

    fn inverse(&self, a: &RealMatrix) -> RealMatrix {
        a.clone().try_inverse().unwrap_or_else(|| DMatrix::from_element(self.n, self.n, f64::NAN))
    }

    fn distance(&self, a: &RealMatrix, b: &RealMatrix) -> f64 {
        max_entry_diff(a, b)
    }
}

pub struct OrthogonalPingpongMap {
    pub n: usize,
}

impl OrthogonalPingpongMap {
    pub fn new(n: usize) -> Self {
        OrthogonalPingpongMap { n }
    }
}

impl InverseAmbiguousMap for OrthogonalPingpongMap {
    type Point = RealMatrix;

    fn sample(&self, rng: &mut ChaCha8Rng) -> RealMatrix {
        sample_orthogonal(rng, self.n)
    }

    fn apply(&self, a: &RealMatrix) -> Result<RealMatrix, ContError> {
        gl_pingpong_map(a, DET_FLOOR)
    }

    fn inverse(&self, a: &RealMatrix) -> RealMatrix {
        a.transpose()
    }

    fn distance(&self, a: &RealMatrix, b: &RealMatrix) -> f64 {
        max_entry_diff(a, b)
    }
}

/// 1 on a sample whose determinant sign is not flipped, else 0.
pub fn check_determinant_swap(map: &GlPingpongMap, plan: &SamplePlan) -> Result<CheckReport, ContError> {
    check_samples(plan, 0.0, |rng| map.sample(rng), |a| {
        let fa = map.apply(a)?;
        let flipped = fa.determinant().signum() == -a.determinant().signum();
        Ok(if flipped { 0.0 } else { 1.0 })
    })
}

/// `max |f(A) f(A)^T - I|` over sampled orthogonal `A`.
pub fn check_stays_orthogonal(map: &OrthogonalPingpongMap, plan: &SamplePlan) -> Result<CheckReport, ContError> {
    let id = DMatrix::identity(map.n, map.n);
    check_samples(plan, super::TOL_SOLVE, |rng| map.sample(rng), |a| {
        let fa = map.apply(a)?;
        Ok(max_entry_diff(&(&fa * fa.transpose()), &id))
    })
}

/// `[[a, b], [(1 - a^2)/b, -a]]`, a square root of the identity with det -1.
pub fn gl2_selfinv_family(a: f64, b: f64) -> Result<Matrix2<f64>, ContError> {
    if b == 0.0 || !b.is_finite() {
        return Err(ContError::ZeroB);
    }
    Ok(Matrix2::new(a, b, (1.0 - a * a) / b, -a))
}

/// Integer polynomial in one variable, lowest degree first.
type Poly = Vec<i64>;

fn poly_sub(p: &[i64], q: &[i64]) -> Poly {
    let mut out = alloc::vec![0; p.len().max(q.len())];
    for (i, c) in p.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in q.iter().enumerate() {
        out[i] -= c;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// Solves `A^2 = I`, `det A > 0` over `2x2` real matrices `[[a, b], [c, d]]`.
///
/// `A^2 = I` reads `a^2 + bc = 1`, `d^2 + bc = 1`, `b(a + d) = 0`, `c(a + d) = 0`.
/// If `a + d != 0` then `b = c = 0` and `a, d` are signs. If `a + d = 0` the
/// solutions are `d = -a`, `bc = 1 - a^2`, and `det` is a polynomial in `a`
/// whose sign decides the whole branch. Returns the isolated solutions; a
/// branch of positive determinant with free parameters would be reported as
/// `None`.
pub fn gl2_selfinv_positive_det() -> Option<Vec<[[i64; 2]; 2]>> {
    let mut found = Vec::new();
    for a in [-1i64, 1] {
        for d in [-1i64, 1] {
            if a + d != 0 && a * d > 0 {
                found.push([[a, 0], [0, d]]);
            }
        }
    }
    // det = a * d - bc with d = -a and bc = 1 - a^2
    let ad: Poly = alloc::vec![0, 0, -1];
    let bc: Poly = alloc::vec![1, 0, -1];
    let det = poly_sub(&ad, &bc);
    let constant_negative = det.len() == 1 && det[0] < 0;
    if !constant_negative {
        return None;
    }
    Some(found)
}

/// Largest entry of `(inv(I + h e_ij) - I)/h + e_ij` over all `i, j`, and the
/// direction attaining it. Any `h > 0` below `1/2` is allowed.
pub fn inversion_differential_deviation(n: usize, h: f64) -> Result<(f64, (usize, usize)), ContError> {
    if n == 0 {
        return Err(ContError::NotSquare);
    }
    if !(h > 0.0 && h < 0.5) {
        return Err(ContError::BadStep(h));
    }
    let id = DMatrix::<f64>::identity(n, n);
    let mut worst = (-1.0, (0, 0));
    for i in 0..n {
        for j in 0..n {
            let mut m = id.clone();
            m[(i, j)] += h;
            let inv = m.try_inverse().ok_or(ContError::BadStep(h))?;
            let mut d = (inv - &id) / h;
            d[(i, j)] += 1.0;
            let dev = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if dev > worst.0 {
                worst = (dev, (i, j));
            }
        }
    }
    Ok(worst)
}

/// Finite-difference check that inversion has differential `-I` at the
/// identity; passes iff the deviation is at most `10 h`.
pub fn inversion_differential_check(n: usize, h: f64) -> Result<CheckReport, ContError> {
    if !(h > 0.0 && h <= 1e-4) {
        return Err(ContError::BadStep(h));
    }
    let (dev, (i, j)) = inversion_differential_deviation(n, h)?;
    let tol = 10.0 * h;
    Ok(CheckReport {
        passed: dev <= tol,
        max_error: dev,
        worst_input: format!("e_{}{}", i + 1, j + 1),
        samples: n * n,
        seed: 0,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contverify::sample_rng;

    #[test]
    fn pingpong_diag_example() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(alloc::vec![2.0, 1.0, 1.0]));
        let fa = gl_pingpong_map(&a, DET_FLOOR).unwrap();
        assert_eq!(fa, -&a);
        let ffa = gl_pingpong_map(&fa, DET_FLOOR).unwrap();
        let expect = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(alloc::vec![0.5, 1.0, 1.0]));
        assert!(max_entry_diff(&ffa, &expect) < 1e-15);
    }

    #[test]
    fn pingpong_errors() {
        assert_eq!(gl_pingpong_map(&DMatrix::identity(2, 2), DET_FLOOR), Err(ContError::EvenN(2)));
        let s = DMatrix::from_element(3, 3, 1.0);
        assert!(matches!(gl_pingpong_map(&s, DET_FLOOR), Err(ContError::NearSingular(_))));
    }

    #[test]
    fn orthogonal_samples_are_orthogonal() {
        let q = sample_orthogonal(&mut sample_rng(3, 0), 5);
        let id = DMatrix::identity(5, 5);
        assert!(max_entry_diff(&(&q * q.transpose()), &id) < 1e-12);
    }

    #[test]
    fn selfinv_family() {
        let swap = gl2_selfinv_family(0.0, 1.0).unwrap();
        assert_eq!(swap, Matrix2::new(0.0, 1.0, 1.0, 0.0));
        assert_eq!(gl2_selfinv_family(0.3, 0.0), Err(ContError::ZeroB));
        for k in 0..50 {
            let a = -2.0 + 0.08 * k as f64;
            let b = 0.37 - 0.05 * k as f64;
            let m = gl2_selfinv_family(a, b).unwrap();
            let sq = m * m - Matrix2::identity();
            assert!(sq.amax() <= 1e-12, "{a} {b}");
            assert!((m.determinant() + 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn positive_det_solver_matches_rational_oracle() {
        let solved = gl2_selfinv_positive_det().unwrap();
        assert_eq!(solved, alloc::vec![[[-1, 0], [0, -1]], [[1, 0], [0, 1]]]);
        // Oracle: A = M/2 with M integral, entries in [-3, 3] step 1/2.
        let mut oracle = Vec::new();
        for m in 0..13i64.pow(4) {
            let e = [m % 13 - 6, m / 13 % 13 - 6, m / 169 % 13 - 6, m / 2197 - 6];
            let (a, b, c, d) = (e[0], e[1], e[2], e[3]);
            let sq = [a * a + b * c, a * b + b * d, c * a + d * c, c * b + d * d];
            if sq == [4, 0, 0, 4] && a * d - b * c > 0 {
                oracle.push([[a / 2, b / 2], [c / 2, d / 2]]);
            }
        }
        oracle.sort();
        assert_eq!(oracle, solved);
    }

    #[test]
    fn differential_examples() {
        let r = inversion_differential_check(2, 1e-6).unwrap();
        assert!(r.passed && r.max_error <= 1e-5, "{r:?}");
        let (d1, _) = inversion_differential_deviation(1, 1e-6).unwrap();
        assert!((d1 - 1e-6).abs() < 1e-9);
        assert_eq!(inversion_differential_check(2, 1e-3), Err(ContError::BadStep(1e-3)));
        assert_eq!(inversion_differential_check(2, 0.0), Err(ContError::BadStep(0.0)));
        let (big, _) = inversion_differential_deviation(3, 1e-3).unwrap();
        let (small, _) = inversion_differential_deviation(3, 1e-6).unwrap();
        let ratio = big / small;
        assert!(ratio > 1000.0 / 3.0 && ratio < 3000.0, "{ratio}");
    }

    #[test]
    fn differential_matches_closed_form_on_diagonal() {
        // inverse of I + t e_ii is I - t/(t+1) e_ii
        let t = 1e-5;
        let mut m = DMatrix::<f64>::identity(3, 3);
        m[(1, 1)] += t;
        let inv = m.try_inverse().unwrap();
        let mut closed = DMatrix::<f64>::identity(3, 3);
        closed[(1, 1)] -= t / (t + 1.0);
        assert!(max_entry_diff(&inv, &closed) < 1e-15);
    }
}
