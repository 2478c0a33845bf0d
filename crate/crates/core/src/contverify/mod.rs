//! Numerical checks for the continuous constructions.
//!
//! Each construction is a map `f` on some space with a group inverse (or the
//! antipodal map, for spheres). [`check_square_law`] samples points from a
//! seeded stream and measures `dist(f(f(x)), x^-1)`; [`check_fourth_power`]
//! measures `dist(f^4(x), x)`. Sample `i` is always drawn from stream `i` of
//! a ChaCha8 generator keyed by the plan's seed, so reports depend only on
//! `(seed, count)`.

pub mod lattice;
pub mod linear;
pub mod matrix;
pub mod registry;
pub mod torus;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use nalgebra::{DMatrix, Scalar};
use num_complex::Complex64;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub use lattice::LatticeSpec;

/// Tolerance for maps built from coordinate permutations and sign flips.
pub const TOL_EXACT: f64 = 1e-12;
/// Tolerance for maps that solve a small linear system.
pub const TOL_SOLVE: f64 = 1e-9;
/// Tolerance for maps that invert matrices.
pub const TOL_INVERSION: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContError {
    #[error("expected {expected} coordinates, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("dimension {0} is odd; the map pairs coordinates")]
    OddDimension(usize),
    #[error("lattice generators are not R-linearly independent")]
    DegenerateLattice,
    #[error("Z2 component must be 0 or 1, got {0}")]
    BadBit(u8),
    #[error("vector has norm {0}, not 1")]
    NotOnSphere(f64),
    #[error("S^{0} is even-dimensional; no map with f(f(z)) = -z exists")]
    EvenSphereRejected(usize),
    #[error("matrix size {0} is even; this map needs odd n")]
    EvenN(usize),
    #[error("matrix is not square or has size 0")]
    NotSquare,
    #[error("trace {0} is not zero")]
    NonzeroTrace(f64),
    #[error("|det| = {0} is below the floor")]
    NearSingular(f64),
    #[error("b must be nonzero")]
    ZeroB,
    #[error("finite-difference step {0} outside (0, 1e-4]")]
    BadStep(f64),
    #[error("sample plan needs count >= 1 and tol > 0")]
    BadPlan,
    #[error("unknown construction {0:?}")]
    UnknownConstruction(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplePlan {
    pub count: usize,
    pub seed: u64,
    pub tol: f64,
}

impl SamplePlan {
    pub fn new(count: usize, seed: u64, tol: f64) -> Result<Self, ContError> {
        if count == 0 || !(tol > 0.0) {
            return Err(ContError::BadPlan);
        }
        Ok(Self { count, seed, tol })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub max_error: f64,
    /// The sample that produced `max_error`.
    pub worst_input: String,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

/// Text rendering of a sample point for [`CheckReport::worst_input`].
pub trait Describe {
    fn describe(&self) -> String;
}

impl Describe for Vec<f64> {
    fn describe(&self) -> String {
        format!("{self:?}")
    }
}

impl Describe for [f64; 2] {
    fn describe(&self) -> String {
        format!("{self:?}")
    }
}

impl Describe for (f64, f64) {
    fn describe(&self) -> String {
        format!("{self:?}")
    }
}

impl Describe for Complex64 {
    fn describe(&self) -> String {
        format!("{} + {}i", self.re, self.im)
    }
}

impl<T: Scalar + Debug> Describe for DMatrix<T> {
    fn describe(&self) -> String {
        let rows: Vec<String> = self
            .row_iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| format!("{x:?}")).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// The generator for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// A candidate inverse ambiguous map together with the structure needed to
/// test it.
pub trait InverseAmbiguousMap {
    type Point: Describe;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Point;
    fn apply(&self, x: &Self::Point) -> Result<Self::Point, ContError>;
    /// Group inverse (negation for vector spaces, antipode for spheres).
    fn inverse(&self, x: &Self::Point) -> Self::Point;
    fn distance(&self, a: &Self::Point, b: &Self::Point) -> f64;
}

/// Running maximum that keeps the first worst sample; NaN counts as infinite.
struct Worst {
    err: f64,
    input: String,
}

impl Worst {
    fn new() -> Self {
        Worst {
            err: -1.0,
            input: String::new(),
        }
    }

    fn offer(&mut self, err: f64, input: impl FnOnce() -> String) {
        let err = if err.is_nan() { f64::INFINITY } else { err };
        if err > self.err {
            self.err = err;
            self.input = input();
        }
    }

    fn report(self, plan: &SamplePlan, tol: f64) -> CheckReport {
        CheckReport {
            passed: self.err <= tol,
            max_error: self.err,
            worst_input: self.input,
            samples: plan.count,
            seed: plan.seed,
            tol,
        }
    }
}

/// Generic sampled check of `err(x)` against `tol`.
pub fn check_samples<P: Describe>(
    plan: &SamplePlan,
    tol: f64,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> P,
    mut err: impl FnMut(&P) -> Result<f64, ContError>,
) -> Result<CheckReport, ContError> {
    let mut worst = Worst::new();
    for i in 0..plan.count {
        let x = sample(&mut sample_rng(plan.seed, i));
        let e = err(&x)?;
        worst.offer(e, || x.describe());
    }
    Ok(worst.report(plan, tol))
}

/// `max dist(f(f(x)), x^-1)` over the plan, passing at `plan.tol`.
pub fn check_square_law<M: InverseAmbiguousMap>(map: &M, plan: &SamplePlan) -> Result<CheckReport, ContError> {
    check_samples(plan, plan.tol, |rng| map.sample(rng), |x| {
        let ffx = map.apply(&map.apply(x)?)?;
        Ok(map.distance(&ffx, &map.inverse(x)))
    })
}

/// `max dist(f^4(x), x)` over the plan, passing at `4 * plan.tol`.
pub fn check_fourth_power<M: InverseAmbiguousMap>(map: &M, plan: &SamplePlan) -> Result<CheckReport, ContError> {
    check_samples(plan, 4.0 * plan.tol, |rng| map.sample(rng), |x| {
        let mut y = map.apply(x)?;
        for _ in 0..3 {
            y = map.apply(&y)?;
        }
        Ok(map.distance(&y, x))
    })
}

/// A named auxiliary property check run alongside the two laws.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub report: CheckReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub construction: String,
    pub passed: bool,
    pub square_law: CheckReport,
    pub fourth_power: CheckReport,
    pub properties: Vec<PropertyCheck>,
}

/// The named constructions, with their parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Construction {
    Torus2,
    TorusEven { dim: usize },
    Lattice(LatticeSpec),
    LatticeQuotient(LatticeSpec),
    CircleZ2,
    R2nLinear { dim: usize },
    Sphere { ambient: usize },
    MatrixComplex { n: usize },
    Trace0Real { n: usize },
    GlPingpong { n: usize },
    OrthogonalPingpong { n: usize },
}

impl Construction {
    pub const NAMES: [&'static str; 11] = [
        "torus2",
        "torus-even",
        "lattice",
        "lattice-quotient",
        "circle-z2",
        "r2n-linear",
        "sphere",
        "matrix-complex",
        "trace0-real",
        "gl-pingpong",
        "orthogonal-pingpong",
    ];

    /// Builds a construction by CLI name. `n` is the number of coordinates
    /// (torus, vector, sphere ambient space) or the matrix size; `lattice`
    /// defaults to generators `1` and `0.3 + 1.1i`.
    pub fn from_name(name: &str, n: Option<usize>, lattice: Option<LatticeSpec>) -> Result<Self, ContError> {
        let lattice = match lattice {
            Some(l) => l,
            None => LatticeSpec::new((1.0, 0.0), (0.3, 1.1))?,
        };
        let c = match name {
            "torus2" => Construction::Torus2,
            "torus-even" => Construction::TorusEven { dim: n.unwrap_or(4) },
            "lattice" => Construction::Lattice(lattice),
            "lattice-quotient" => Construction::LatticeQuotient(lattice),
            "circle-z2" => Construction::CircleZ2,
            "r2n-linear" => Construction::R2nLinear { dim: n.unwrap_or(4) },
            "sphere" => Construction::Sphere { ambient: n.unwrap_or(4) },
            "matrix-complex" => Construction::MatrixComplex { n: n.unwrap_or(3) },
            "trace0-real" => Construction::Trace0Real { n: n.unwrap_or(3) },
            "gl-pingpong" => Construction::GlPingpong { n: n.unwrap_or(3) },
            "orthogonal-pingpong" => Construction::OrthogonalPingpong { n: n.unwrap_or(3) },
            other => return Err(ContError::UnknownConstruction(String::from(other))),
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), ContError> {
        match *self {
            Construction::TorusEven { dim } | Construction::R2nLinear { dim } if dim == 0 || dim % 2 == 1 => {
                Err(ContError::OddDimension(dim))
            }
            Construction::Sphere { ambient } if ambient == 0 || ambient % 2 == 1 => {
                Err(ContError::EvenSphereRejected(ambient.saturating_sub(1)))
            }
            Construction::Trace0Real { n } | Construction::GlPingpong { n } | Construction::OrthogonalPingpong { n }
                if n % 2 == 0 =>
            {
                Err(ContError::EvenN(n))
            }
            Construction::MatrixComplex { n: 0 } => Err(ContError::NotSquare),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Construction::Torus2 => "torus2",
            Construction::TorusEven { .. } => "torus-even",
            Construction::Lattice(_) => "lattice",
            Construction::LatticeQuotient(_) => "lattice-quotient",
            Construction::CircleZ2 => "circle-z2",
            Construction::R2nLinear { .. } => "r2n-linear",
            Construction::Sphere { .. } => "sphere",
            Construction::MatrixComplex { .. } => "matrix-complex",
            Construction::Trace0Real { .. } => "trace0-real",
            Construction::GlPingpong { .. } => "gl-pingpong",
            Construction::OrthogonalPingpong { .. } => "orthogonal-pingpong",
        }
    }

    pub fn default_tol(&self) -> f64 {
        match self {
            Construction::Lattice(_) | Construction::LatticeQuotient(_) | Construction::Trace0Real { .. } => TOL_SOLVE,
            Construction::GlPingpong { .. } | Construction::OrthogonalPingpong { .. } => TOL_INVERSION,
            _ => TOL_EXACT,
        }
    }

    /// Runs both laws and the construction's property checks.
    pub fn run(&self, plan: &SamplePlan) -> Result<ConstructionReport, ContError> {
        self.validate()?;
        let (square_law, fourth_power, properties) = match self {
            Construction::Torus2 => laws(&torus::TorusMap { dim: 2 }, plan)?,
            Construction::TorusEven { dim } => laws(&torus::TorusMap { dim: *dim }, plan)?,
            Construction::Lattice(l) => {
                let (a, b, mut props) = laws(&lattice::LatticeMap { lattice: l.clone() }, plan)?;
                props.push(prop("lattice_preserved", lattice::lattice_preserved(l, 10, plan.seed)));
                (a, b, props)
            }
            Construction::LatticeQuotient(l) => laws(&lattice::LatticeQuotientMap { lattice: l.clone() }, plan)?,
            Construction::CircleZ2 => {
                let (a, b, mut props) = laws(&torus::CircleZ2Map, plan)?;
                props.push(prop("bit_swapped", torus::check_bit_swap(plan)?));
                (a, b, props)
            }
            Construction::R2nLinear { dim } => {
                let (a, b, mut props) = laws(&linear::R2nLinearMap { dim: *dim }, plan)?;
                props.push(prop("norm_preserved", linear::check_norm_preserved(*dim, false, plan)?));
                (a, b, props)
            }
            Construction::Sphere { ambient } => {
                let (a, b, mut props) = laws(&linear::SphereMap { ambient: *ambient }, plan)?;
                props.push(prop("norm_preserved", linear::check_norm_preserved(*ambient, true, plan)?));
                (a, b, props)
            }
            Construction::MatrixComplex { n } => {
                let (a, b, mut props) = laws(&linear::MatrixComplexMap { n: *n }, plan)?;
                props.push(prop("trace_scaled_by_i", linear::check_trace_scaling(*n, plan)?));
                (a, b, props)
            }
            Construction::Trace0Real { n } => {
                let (a, b, mut props) = laws(&linear::Trace0RealMap { n: *n }, plan)?;
                props.push(prop("trace_zero_preserved", linear::check_trace_zero_preserved(*n, plan)?));
                (a, b, props)
            }
            Construction::GlPingpong { n } => {
                let map = matrix::GlPingpongMap::new(*n);
                let (a, b, mut props) = laws(&map, plan)?;
                props.push(prop("determinant_sign_swapped", matrix::check_determinant_swap(&map, plan)?));
                (a, b, props)
            }
            Construction::OrthogonalPingpong { n } => {
                let map = matrix::OrthogonalPingpongMap::new(*n);
                let (a, b, mut props) = laws(&map, plan)?;
                props.push(prop("stays_orthogonal", matrix::check_stays_orthogonal(&map, plan)?));
                (a, b, props)
            }
        };
        let passed = square_law.passed && fourth_power.passed && properties.iter().all(|p| p.report.passed);
        Ok(ConstructionReport {
            construction: String::from(self.name()),
            passed,
            square_law,
            fourth_power,
            properties,
        })
    }
}

fn prop(name: &str, report: CheckReport) -> PropertyCheck {
    PropertyCheck {
        name: String::from(name),
        report,
    }
}

type Laws = (CheckReport, CheckReport, Vec<PropertyCheck>);

fn laws<M: InverseAmbiguousMap>(map: &M, plan: &SamplePlan) -> Result<Laws, ContError> {
    Ok((check_square_law(map, plan)?, check_fourth_power(map, plan)?, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_validation() {
        assert_eq!(SamplePlan::new(0, 1, 1e-9), Err(ContError::BadPlan));
        assert_eq!(SamplePlan::new(1, 1, 0.0), Err(ContError::BadPlan));
        assert_eq!(SamplePlan::new(1, 1, f64::NAN), Err(ContError::BadPlan));
        assert!(SamplePlan::new(1, 1, 1e-9).is_ok());
    }

    #[test]
    fn sample_streams_are_independent_of_count() {
        use rand::Rng;
        let a: f64 = sample_rng(42, 7).random();
        let b: f64 = sample_rng(42, 7).random();
        let c: f64 = sample_rng(42, 8).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn every_named_construction_passes_at_its_default_tolerance() {
        for name in Construction::NAMES {
            let c = Construction::from_name(name, None, None).unwrap();
            let plan = SamplePlan::new(500, 11, c.default_tol()).unwrap();
            let r = c.run(&plan).unwrap();
            assert!(r.passed, "{name}: {r:?}");
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let c = Construction::from_name("gl-pingpong", Some(3), None).unwrap();
        let plan = SamplePlan::new(200, 5, 1e-6).unwrap();
        assert_eq!(c.run(&plan).unwrap(), c.run(&plan).unwrap());
    }

    #[test]
    fn parameter_errors() {
        assert_eq!(Construction::from_name("torus-even", Some(3), None), Err(ContError::OddDimension(3)));
        assert_eq!(Construction::from_name("sphere", Some(3), None), Err(ContError::EvenSphereRejected(2)));
        assert_eq!(Construction::from_name("trace0-real", Some(2), None), Err(ContError::EvenN(2)));
        assert_eq!(Construction::from_name("gl-pingpong", Some(4), None), Err(ContError::EvenN(4)));
        assert!(matches!(Construction::from_name("klein", None, None), Err(ContError::UnknownConstruction(_))));
    }

    #[test]
    fn a_wrong_map_fails_the_square_law() {
        // identity on R^2 is not inverse ambiguous
        struct Identity;
        impl InverseAmbiguousMap for Identity {
            type Point = [f64; 2];
            fn sample(&self, rng: &mut ChaCha8Rng) -> [f64; 2] {
                use rand::Rng;
                [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]
            }
            fn apply(&self, x: &[f64; 2]) -> Result<[f64; 2], ContError> {
                Ok(*x)
            }
            fn inverse(&self, x: &[f64; 2]) -> [f64; 2] {
                [-x[0], -x[1]]
            }
            fn distance(&self, a: &[f64; 2], b: &[f64; 2]) -> f64 {
                libm::hypot(a[0] - b[0], a[1] - b[1])
            }
        }
        let plan = SamplePlan::new(100, 3, 1e-12).unwrap();
        let r = check_square_law(&Identity, &plan).unwrap();
        assert!(!r.passed);
        assert!(r.max_error > 0.1);
        assert!(!r.worst_input.is_empty());
        assert!(check_fourth_power(&Identity, &plan).unwrap().passed);
    }
}
