//! Tori `T^k = (R/2piZ)^k` and the circle-times-Z2 group.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{check_samples, CheckReport, ContError, Describe, InverseAmbiguousMap, SamplePlan};

/// Reduces an angle into `[0, 2pi)`.
pub fn reduce_angle(x: f64) -> f64 {
    let r = x - TAU * libm::floor(x / TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance on the circle of circumference `2pi`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = reduce_angle(a - b);
    if d > PI {
        TAU - d
    } else {
        d
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    angles: Vec<f64>,
}

impl TorusPoint {
    pub fn new(angles: Vec<f64>) -> Self {
        TorusPoint {
            angles: angles.into_iter().map(reduce_angle).collect(),
        }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn dim(&self) -> usize {
        self.angles.len()
    }

    pub fn inverse(&self) -> TorusPoint {
        TorusPoint::new(self.angles.iter().map(|a| -a).collect())
    }

    /// Largest coordinatewise circular distance.
    pub fn distance(&self, other: &TorusPoint) -> f64 {
        self.angles
            .iter()
            .zip(&other.angles)
            .map(|(a, b)| circular_distance(*a, *b))
            .fold(0.0, f64::max)
    }
}

impl Describe for TorusPoint {
    fn describe(&self) -> String {
        alloc::format!("{:?}", self.angles)
    }
}

/// `(theta, phi) -> (phi, -theta)` on `T^2`.
pub fn torus2_map(p: &TorusPoint) -> Result<TorusPoint, ContError> {
    if p.dim() != 2 {
        return Err(ContError::DimMismatch {
            expected: 2,
            got: p.dim(),
        });
    }
    Ok(TorusPoint::new(alloc::vec![p.angles[1], -p.angles[0]]))
}

/// The `T^2` map applied to consecutive coordinate pairs of `T^{2m}`.
pub fn torus_even_map(p: &TorusPoint) -> Result<TorusPoint, ContError> {
    if p.dim() == 0 || p.dim() % 2 == 1 {
        return Err(ContError::OddDimension(p.dim()));
    }
    let mut out = Vec::with_capacity(p.dim());
    for pair in p.angles.chunks(2) {
        out.push(pair[1]);
        out.push(-pair[0]);
    }
    Ok(TorusPoint::new(out))
}

pub struct TorusMap {
    pub dim: usize,
}

impl InverseAmbiguousMap for TorusMap {
    type Point = TorusPoint;

    fn sample(&self, rng: &mut ChaCha8Rng) -> TorusPoint {
        TorusPoint::new((0..self.dim).map(|_| rng.random_range(0.0..TAU)).collect())
    }

    fn apply(&self, x: &TorusPoint) -> Result<TorusPoint, ContError> {
        if self.dim == 2 {
            torus2_map(x)
        } else {
            torus_even_map(x)
        }
    }

    fn inverse(&self, x: &TorusPoint) -> TorusPoint {
        x.inverse()
    }

    fn distance(&self, a: &TorusPoint, b: &TorusPoint) -> f64 {
        a.distance(b)
    }
}

/// An element of `S^1 x Z2`: an angle and a bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleZ2Point {
    pub angle: f64,
    pub bit: u8,
}

/// Penalty added to the distance when the Z2 components differ.
pub const BIT_MISMATCH_PENALTY: f64 = 4.0;

/// `(theta, 0) -> (theta, 1)`, `(theta, 1) -> (-theta, 0)`.
pub fn circle_z2_map(p: CircleZ2Point) -> Result<CircleZ2Point, ContError> {
    match p.bit {
        0 => Ok(CircleZ2Point {
            angle: reduce_angle(p.angle),
            bit: 1,
        }),
        1 => Ok(CircleZ2Point {
            angle: reduce_angle(-p.angle),
            bit: 0,
        }),
        b => Err(ContError::BadBit(b)),
    }
}

impl Describe for CircleZ2Point {
    fn describe(&self) -> String {
        alloc::format!("({:?}, {})", self.angle, self.bit)
    }
}

pub struct CircleZ2Map;

impl InverseAmbiguousMap for CircleZ2Map {
    type Point = CircleZ2Point;

    fn sample(&self, rng: &mut ChaCha8Rng) -> CircleZ2Point {
        CircleZ2Point {
            angle: rng.random_range(0.0..TAU),
            bit: rng.random_range(0..2u8),
        }
    }

    fn apply(&self, x: &CircleZ2Point) -> Result<CircleZ2Point, ContError> {
        circle_z2_map(*x)
    }

    fn inverse(&self, x: &CircleZ2Point) -> CircleZ2Point {
        CircleZ2Point {
            angle: reduce_angle(-x.angle),
            bit: x.bit,
        }
    }

    fn distance(&self, a: &CircleZ2Point, b: &CircleZ2Point) -> f64 {
        let penalty = if a.bit == b.bit { 0.0 } else { BIT_MISMATCH_PENALTY };
        circular_distance(a.angle, b.angle) + penalty
    }
}

/// Every sample must have its bit flipped by one application.
pub fn check_bit_swap(plan: &SamplePlan) -> Result<CheckReport, ContError> {
    check_samples(plan, 0.0, |rng| CircleZ2Map.sample(rng), |x| {
        let y = circle_z2_map(*x)?;
        Ok(if y.bit == x.bit { 1.0 } else { 0.0 })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn torus2_example() {
        let p = TorusPoint::new(vec![0.3, 1.1]);
        let q = torus2_map(&p).unwrap();
        assert!(circular_distance(q.angles()[0], 1.1) < 1e-15);
        assert!(circular_distance(q.angles()[1], -0.3) < 1e-15);
        let r = torus2_map(&q).unwrap();
        assert!(r.distance(&p.inverse()) < 1e-12);
    }

    #[test]
    fn torus_dimension_errors() {
        assert_eq!(
            torus2_map(&TorusPoint::new(vec![0.1; 3])),
            Err(ContError::DimMismatch { expected: 2, got: 3 })
        );
        assert_eq!(torus_even_map(&TorusPoint::new(vec![0.1; 3])), Err(ContError::OddDimension(3)));
        assert!(torus_even_map(&TorusPoint::new(vec![0.1; 6])).is_ok());
    }

    #[test]
    fn angles_wrap() {
        assert!(reduce_angle(-1e-18) < TAU);
        assert_eq!(reduce_angle(TAU), 0.0);
        assert!((circular_distance(0.01, TAU - 0.01) - 0.02).abs() < 1e-12);
    }

    #[test]
    fn circle_z2_examples() {
        let p = CircleZ2Point { angle: 0.5, bit: 0 };
        let q = circle_z2_map(p).unwrap();
        assert_eq!(q.bit, 1);
        let r = circle_z2_map(q).unwrap();
        assert_eq!(r.bit, 0);
        assert!(circular_distance(r.angle, -0.5) < 1e-12);
        assert_eq!(circle_z2_map(CircleZ2Point { angle: 0.0, bit: 2 }), Err(ContError::BadBit(2)));
    }

    #[test]
    fn bit_swap_holds() {
        let plan = SamplePlan::new(300, 9, 1e-12).unwrap();
        assert!(check_bit_swap(&plan).unwrap().passed);
    }
}
