//! Short Weierstrass curves `y^2 = x^3 + ax + b` over `F_q` with `p >= 5`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::finfield::{FieldElement, FieldError, FieldSpec};
use crate::iafun::ExistenceVerdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("curve is singular: discriminant -16(4a^3 + 27b^2) vanishes")]
    SingularCurve,
    #[error("characteristic {0} is not supported (need p >= 5)")]
    CharTooSmall(u32),
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A smooth curve `y^2 = x^3 + ax + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    field: FieldSpec,
    a: FieldElement,
    b: FieldElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: FieldElement, y: FieldElement },
}

/// Point counts split by how they arise in the x-scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveCensus {
    pub total: u64,
    /// Distinct roots of `g(X) = X^3 + aX + b` in `F_q`.
    pub roots_of_g: u64,
    /// Number of `s` with `g(s)` a nonzero square.
    pub nq: u64,
    pub self_inv: u64,
    pub non_self_inv: u64,
}

impl CurveSpec {
    pub fn new(field: FieldSpec, a: FieldElement, b: FieldElement) -> Result<Self, CurveError> {
        if field.p() < 5 {
            return Err(CurveError::CharTooSmall(field.p()));
        }
        if !field.contains(&a) || !field.contains(&b) {
            return Err(FieldError::FieldMismatch {
                p: field.p(),
                n: field.degree(),
            }
            .into());
        }
        let curve = CurveSpec { field, a, b };
        if curve.discriminant().is_zero() {
            return Err(CurveError::SingularCurve);
        }
        Ok(curve)
    }

    /// Integer coefficients, reduced into the prime subfield.
    pub fn from_integers(field: FieldSpec, a: i64, b: i64) -> Result<Self, CurveError> {
        let (a, b) = (field.from_int(a), field.from_int(b));
        Self::new(field, a, b)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    /// `-16(4a^3 + 27b^2)` in `F_q`.
    pub fn discriminant(&self) -> FieldElement {
        let f = &self.field;
        let a3 = f.mul_raw(&f.mul_raw(&self.a, &self.a), &self.a);
        let b2 = f.mul_raw(&self.b, &self.b);
        let inner = f.add_raw(&f.mul_raw(&f.from_int(4), &a3), &f.mul_raw(&f.from_int(27), &b2));
        f.mul_raw(&f.from_int(-16), &inner)
    }

    /// `g(x) = x^3 + ax + b`.
    pub fn rhs(&self, x: &FieldElement) -> FieldElement {
        let f = &self.field;
        let x2 = f.mul_raw(x, x);
        let t = f.add_raw(&x2, &self.a);
        f.add_raw(&f.mul_raw(&t, x), &self.b)
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                self.field.contains(x)
                    && self.field.contains(y)
                    && self.field.mul_raw(y, y) == self.rhs(x)
            }
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: self.field.neg_raw(y),
            },
        }
    }

    /// Chord-and-tangent addition with `Infinity` as identity.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint, CurveError> {
        if !self.contains(p) || !self.contains(q) {
            return Err(CurveError::PointNotOnCurve);
        }
        Ok(self.add_raw(p, q))
    }

    pub(crate) fn add_raw(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        if x1 == x2 && f.add_raw(y1, y2).is_zero() {
            return CurvePoint::Infinity;
        }
        let slope = if x1 == x2 {
            // doubling; y1 != 0 here
            let num = f.add_raw(&f.mul_raw(&f.from_int(3), &f.mul_raw(x1, x1)), &self.a);
            f.mul_raw(&num, &f.inv_raw(&f.add_raw(y1, y1)))
        } else {
            f.mul_raw(&f.sub_raw(y2, y1), &f.inv_raw(&f.sub_raw(x2, x1)))
        };
        let x3 = f.sub_raw(&f.sub_raw(&f.mul_raw(&slope, &slope), x1), x2);
        let y3 = f.sub_raw(&f.mul_raw(&slope, &f.sub_raw(x1, &x3)), y1);
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// For each field index `v`, the indices `y` with `y^2 = v`, ascending.
    fn square_roots_table(&self) -> Vec<Vec<u32>> {
        let f = &self.field;
        let mut roots = vec![Vec::new(); f.order() as usize];
        for (i, y) in f.elements().enumerate() {
            roots[f.index_of(&f.mul_raw(&y, &y)) as usize].push(i as u32);
        }
        roots
    }

    /// Affine points as `(x index, y index)` pairs in canonical order.
    pub(crate) fn affine_indices(&self) -> Vec<(u32, u32)> {
        let f = &self.field;
        let roots = self.square_roots_table();
        let mut out = Vec::new();
        for (xi, x) in f.elements().enumerate() {
            let v = f.index_of(&self.rhs(&x));
            for &yi in &roots[v as usize] {
                out.push((xi as u32, yi));
            }
        }
        out
    }

    /// Every point: `Infinity` first, then affine points by `(x, y)` in
    /// canonical field order.
    pub fn points(&self) -> Vec<CurvePoint> {
        let f = &self.field;
        core::iter::once(CurvePoint::Infinity)
            .chain(self.affine_indices().into_iter().map(|(x, y)| CurvePoint::Affine {
                x: f.from_index(x),
                y: f.from_index(y),
            }))
            .collect()
    }

    pub fn roots_of_g(&self) -> Vec<FieldElement> {
        self.field.elements().filter(|x| self.rhs(x).is_zero()).collect()
    }

    pub fn census(&self) -> CurveCensus {
        let f = &self.field;
        let mut roots = 0u64;
        let mut nq = 0u64;
        for x in f.elements() {
            let g = self.rhs(&x);
            if g.is_zero() {
                roots += 1;
            } else if f.is_nonzero_square(&g) {
                nq += 1;
            }
        }
        CurveCensus {
            total: 1 + roots + 2 * nq,
            roots_of_g: roots,
            nq,
            self_inv: 1 + roots,
            non_self_inv: 2 * nq,
        }
    }

    /// An inverse ambiguous function exists iff `|N_q|` is even. Three roots
    /// of `g` make the 2-torsion a subgroup of order 4, which forces this.
    pub fn decide_existence(&self) -> ExistenceVerdict {
        let c = self.census();
        let exists = c.nq.is_multiple_of(2);
        assert!(
            c.roots_of_g != 3 || exists,
            "three roots of g must give an even |N_q| ({self})"
        );
        let reason = format!(
            "|N_q| = {} is {}; non-self-invertible points = 2|N_q| = {}",
            c.nq,
            if exists { "even" } else { "odd" },
            c.non_self_inv
        );
        ExistenceVerdict {
            exists,
            s_count: c.self_inv,
            non_s_count: c.non_self_inv,
            reason,
        }
    }

    /// Coefficient text for [`Display`]: an integer when it lies in the
    /// prime subfield, otherwise `[c0,c1,...]`.
    fn coeff_text(&self, e: &FieldElement) -> alloc::string::String {
        if e.coeffs()[1..].iter().all(|&c| c == 0) {
            format!("{}", e.coeffs()[0])
        } else {
            format!("[{}]", self.field.format(e))
        }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = if self.field.degree() == 1 {
            format!("{}", self.field.p())
        } else {
            format!("{}^{}", self.field.p(), self.field.degree())
        };
        write!(f, "E({q};a={},b={})", self.coeff_text(&self.a), self.coeff_text(&self.b))
    }
}
