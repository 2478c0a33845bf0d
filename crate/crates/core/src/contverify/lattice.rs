//! Lattices in `C` and the quotient tori `C / Lambda`.

use alloc::format;
use alloc::string::String;

use core::f64::consts::TAU;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::torus::circular_distance;
use super::{CheckReport, ContError, InverseAmbiguousMap};

/// A lattice `Z w1 + Z w2` with R-independent generators.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    w1: Complex64,
    w2: Complex64,
}

impl LatticeSpec {
    /// Generators given as `(re, im)` pairs.
    pub fn new(w1: (f64, f64), w2: (f64, f64)) -> Result<Self, ContError> {
        let w1 = Complex64::new(w1.0, w1.1);
        let w2 = Complex64::new(w2.0, w2.1);
        let cross = w1.re * w2.im - w1.im * w2.re;
        if !cross.is_finite() || cross.abs() <= 1e-12 * w1.norm() * w2.norm() {
            return Err(ContError::DegenerateLattice);
        }
        Ok(LatticeSpec { w1, w2 })
    }

    pub fn w1(&self) -> Complex64 {
        self.w1
    }

    pub fn w2(&self) -> Complex64 {
        self.w2
    }

    /// Real coordinates `(c1, c2)` with `z = c1 w1 + c2 w2`.
    pub fn coords(&self, z: Complex64) -> (f64, f64) {
        let det = self.w1.re * self.w2.im - self.w2.re * self.w1.im;
        let c1 = (z.re * self.w2.im - self.w2.re * z.im) / det;
        let c2 = (self.w1.re * z.im - z.re * self.w1.im) / det;
        (c1, c2)
    }

    pub fn point(&self, c1: f64, c2: f64) -> Complex64 {
        self.w1 * c1 + self.w2 * c2
    }
}

/// `c1 w1 + c2 w2 -> -c2 w1 + c1 w2`.
pub fn lattice_map(l: &LatticeSpec, z: Complex64) -> Complex64 {
    let (c1, c2) = l.coords(z);
    l.point(-c2, c1)
}

fn frac(x: f64) -> f64 {
    let r = x - libm::floor(x);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Fractional coordinates of `z` modulo the lattice, in `[0, 1)^2`.
pub fn lattice_reduce(l: &LatticeSpec, z: Complex64) -> (f64, f64) {
    let (c1, c2) = l.coords(z);
    (frac(c1), frac(c2))
}

pub struct LatticeMap {
    pub lattice: LatticeSpec,
}

impl InverseAmbiguousMap for LatticeMap {
    type Point = Complex64;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Complex64 {
        Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0))
    }

    fn apply(&self, z: &Complex64) -> Result<Complex64, ContError> {
        Ok(lattice_map(&self.lattice, *z))
    }

    fn inverse(&self, z: &Complex64) -> Complex64 {
        -z
    }

    fn distance(&self, a: &Complex64, b: &Complex64) -> f64 {
        (a - b).norm()
    }
}

/// The induced map on `C / Lambda`, in fractional coordinates.
pub struct LatticeQuotientMap {
    pub lattice: LatticeSpec,
}

impl InverseAmbiguousMap for LatticeQuotientMap {
    type Point = (f64, f64);

    fn sample(&self, rng: &mut ChaCha8Rng) -> (f64, f64) {
        (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0))
    }

    fn apply(&self, p: &(f64, f64)) -> Result<(f64, f64), ContError> {
        let z = self.lattice.point(p.0, p.1);
        Ok(lattice_reduce(&self.lattice, lattice_map(&self.lattice, z)))
    }

    fn inverse(&self, p: &(f64, f64)) -> (f64, f64) {
        lattice_reduce(&self.lattice, -self.lattice.point(p.0, p.1))
    }

    fn distance(&self, a: &(f64, f64), b: &(f64, f64)) -> f64 {
        let d1 = circular_distance(a.0 * TAU, b.0 * TAU) / TAU;
        let d2 = circular_distance(a.1 * TAU, b.1 * TAU) / TAU;
        d1.max(d2)
    }
}

/// Checks `f(n1 w1 + n2 w2) = -n2 w1 + n1 w2` with integer coordinates for all
/// `|n1|, |n2| <= range`. The error is the largest distance of a recovered
/// coordinate from its expected integer.
pub fn lattice_preserved(l: &LatticeSpec, range: i64, seed: u64) -> CheckReport {
    let mut max_error = 0.0f64;
    let mut worst = String::new();
    let mut count = 0;
    for n1 in -range..=range {
        for n2 in -range..=range {
            count += 1;
            let image = lattice_map(l, l.point(n1 as f64, n2 as f64));
            let (c1, c2) = l.coords(image);
            let err = (c1 + n2 as f64).abs().max((c2 - n1 as f64).abs());
            let err = if err.is_nan() { f64::INFINITY } else { err };
            if err > max_error || worst.is_empty() {
                max_error = max_error.max(err);
                worst = format!("({n1}, {n2})");
            }
        }
    }
    CheckReport {
        passed: max_error <= super::TOL_SOLVE,
        max_error,
        worst_input: worst,
        samples: count,
        seed,
        tol: super::TOL_SOLVE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat() -> LatticeSpec {
        LatticeSpec::new((1.0, 0.0), (0.3, 1.1)).unwrap()
    }

    #[test]
    fn degenerate_lattices_rejected() {
        assert_eq!(LatticeSpec::new((1.0, 0.0), (2.0, 0.0)), Err(ContError::DegenerateLattice));
        assert_eq!(LatticeSpec::new((0.0, 0.0), (0.0, 1.0)), Err(ContError::DegenerateLattice));
    }

    #[test]
    fn generators_map_as_expected() {
        let l = lat();
        assert!((lattice_map(&l, l.w1()) - l.w2()).norm() < 1e-12);
        assert!((lattice_map(&l, l.w2()) + l.w1()).norm() < 1e-12);
    }

    #[test]
    fn coordinates_round_trip() {
        let l = lat();
        let z = Complex64::new(2.7, -1.9);
        let (c1, c2) = l.coords(z);
        assert!((l.point(c1, c2) - z).norm() < 1e-12);
    }

    #[test]
    fn lattice_is_preserved() {
        let r = lattice_preserved(&lat(), 10, 0);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.samples, 441);
        let skew = LatticeSpec::new((2.0, 0.5), (-0.7, 3.0)).unwrap();
        assert!(lattice_preserved(&skew, 10, 0).passed);
    }

    #[test]
    fn reduction_is_in_unit_square() {
        let l = lat();
        for z in [Complex64::new(-3.3, 7.1), Complex64::new(0.0, 0.0), Complex64::new(1e3, -1e3)] {
            let (a, b) = lattice_reduce(&l, z);
            assert!((0.0..1.0).contains(&a) && (0.0..1.0).contains(&b));
        }
    }
}
