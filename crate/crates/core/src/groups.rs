//! Finite groups presented behaviourally: product, inverse and a canonical
//! enumeration `0..order` in which index 0 is always the identity.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ecurve::{CurvePoint, CurveSpec};
use crate::finfield::{FieldElement, FieldSpec};

/// Largest order any handle may have.
pub const MAX_GROUP_ORDER: usize = 1 << 26;
/// Largest degree for `S_n` and `A_n`.
pub const MAX_PERM_DEGREE: u8 = 8;
/// Largest user-supplied Cayley table.
pub const MAX_TABLE_ORDER: usize = 4096;
/// Up to this order table associativity is checked on all triples.
pub const EXHAUSTIVE_ASSOC_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("group order must be at least 1")]
    Empty,
    #[error("group order exceeds the supported maximum")]
    OrderTooLarge,
    #[error("permutation degree {0} exceeds the maximum of 8")]
    DegreeTooLarge(u8),
    #[error("Cayley table has {len} entries, expected {expected}")]
    TableShape { len: usize, expected: usize },
    #[error("Cayley table entry ({row}, {col}) = {value} is not an element")]
    NotClosed { row: usize, col: usize, value: usize },
    #[error("element 0 is not a two-sided identity")]
    IdentityNotFirst,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
}

/// Index of an element under its group's canonical enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A validated multiplication table with the identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    label: String,
}

impl CayleyTable {
    /// Validates closure, identity at 0, inverses and associativity
    /// (all triples up to order 64, Light's test over a generating set above).
    pub fn new(order: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::OrderTooLarge);
        }
        if table.len() != order * order {
            return Err(GroupError::TableShape {
                len: table.len(),
                expected: order * order,
            });
        }
        for (k, &v) in table.iter().enumerate() {
            if v >= order {
                return Err(GroupError::NotClosed {
                    row: k / order,
                    col: k % order,
                    value: v,
                });
            }
        }
        let table: Vec<u32> = table.into_iter().map(|v| v as u32).collect();
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        if (0..order).any(|x| at(0, x) != x || at(x, 0) != x) {
            return Err(GroupError::IdentityNotFirst);
        }
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| at(a, b) == 0 && at(b, a) == 0)
                .ok_or(GroupError::NoInverse(a))?;
            inverses.push(inv as u32);
        }
        if order <= EXHAUSTIVE_ASSOC_ORDER {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            for g in generating_set(order, &at) {
                for a in 0..order {
                    let ag = at(a, g);
                    for c in 0..order {
                        if at(ag, c) != at(a, at(g, c)) {
                            return Err(GroupError::NotAssociative(a, g, c));
                        }
                    }
                }
            }
        }
        Ok(CayleyTable {
            order,
            table,
            inverses,
            label: String::from("cayley"),
        })
    }

    /// Name used when the handle is printed.
    pub fn with_label(mut self, label: &str) -> Self {
        self.label = String::from(label);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    /// Trusted construction for built-in fixtures.
    fn from_fn(order: usize, label: &str, op: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(op(a, b) as u32);
            }
        }
        let inverses = (0..order)
            .map(|a| (0..order).find(|&b| table[a * order + b] == 0).expect("group fixture") as u32)
            .collect();
        CayleyTable {
            order,
            table,
            inverses,
            label: String::from(label),
        }
    }
}

/// Greedy generating set of the magma: add the least element outside the
/// current closure until the closure is everything.
fn generating_set(order: usize, at: &impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut inside = vec![false; order];
    let mut members: Vec<usize> = Vec::new();
    while members.len() < order {
        let g = (0..order).find(|&x| !inside[x]).expect("closure incomplete");
        gens.push(g);
        inside[g] = true;
        members.push(g);
        // close under products with everything already inside
        let mut frontier = 0;
        while frontier < members.len() {
            let x = members[frontier];
            frontier += 1;
            let mut k = 0;
            while k < members.len() {
                let y = members[k];
                for z in [at(x, y), at(y, x)] {
                    if !inside[z] {
                        inside[z] = true;
                        members.push(z);
                    }
                }
                k += 1;
            }
        }
    }
    gens
}

#[derive(Debug)]
enum Repr {
    Cyclic(usize),
    Product {
        factors: Vec<GroupHandle>,
        order: usize,
    },
    Perm {
        degree: u8,
        alternating: bool,
        perms: Vec<[u8; 8]>,
    },
    Vector {
        field: FieldSpec,
        dim: u32,
        order: usize,
    },
    Table(CayleyTable),
    Curve {
        curve: CurveSpec,
        affine: Vec<(u32, u32)>,
    },
}

/// Shape of a group handle.
#[derive(Debug, Clone, Copy)]
pub enum GroupKind<'a> {
    Cyclic(usize),
    DirectProduct(&'a [GroupHandle]),
    Symmetric(u8),
    Alternating(u8),
    VectorSpaceAdd { field: &'a FieldSpec, dim: u32 },
    CayleyTable(&'a CayleyTable),
    EllipticCurve(&'a CurveSpec),
}

/// A finite group. Cheap to clone; immutable after construction.
#[derive(Debug, Clone)]
pub struct GroupHandle(Arc<Repr>);

/// The self-invertible set `S(G) = { x : x*x = e }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvolutionProfile {
    pub members: Vec<ElementId>,
    pub s_count: u64,
    pub non_s_count: u64,
}

impl GroupHandle {
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::OrderTooLarge);
        }
        Ok(Self(Arc::new(Repr::Cyclic(n))))
    }

    /// Direct product ordered lexicographically, first factor most significant.
    pub fn product(factors: Vec<GroupHandle>) -> Result<Self, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::Empty);
        }
        let mut order = 1usize;
        for f in &factors {
            order = order
                .checked_mul(f.order())
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or(GroupError::OrderTooLarge)?;
        }
        Ok(Self(Arc::new(Repr::Product { factors, order })))
    }

    pub fn symmetric(n: u8) -> Result<Self, GroupError> {
        Self::permutations(n, false)
    }

    pub fn alternating(n: u8) -> Result<Self, GroupError> {
        Self::permutations(n, true)
    }

    fn permutations(degree: u8, alternating: bool) -> Result<Self, GroupError> {
        if degree > MAX_PERM_DEGREE {
            return Err(GroupError::DegreeTooLarge(degree));
        }
        let mut cur: [u8; 8] = [0, 1, 2, 3, 4, 5, 6, 7];
        let n = degree as usize;
        let mut perms = Vec::new();
        loop {
            if !alternating || is_even(&cur[..n]) {
                perms.push(cur);
            }
            if !next_permutation(&mut cur[..n]) {
                break;
            }
        }
        Ok(Self(Arc::new(Repr::Perm {
            degree,
            alternating,
            perms,
        })))
    }

    /// `(F_q)^dim` under addition; coordinates ordered lexicographically,
    /// first coordinate most significant.
    pub fn vector_space(field: FieldSpec, dim: u32) -> Result<Self, GroupError> {
        if dim == 0 {
            return Err(GroupError::Empty);
        }
        let mut order = 1usize;
        for _ in 0..dim {
            order = order
                .checked_mul(field.order() as usize)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or(GroupError::OrderTooLarge)?;
        }
        Ok(Self(Arc::new(Repr::Vector { field, dim, order })))
    }

    pub fn cayley(table: CayleyTable) -> Self {
        Self(Arc::new(Repr::Table(table)))
    }

    /// `E(F_q)`: `O` first, then affine points by `(x, y)`.
    pub fn elliptic(curve: CurveSpec) -> Self {
        let affine = curve.affine_indices();
        Self(Arc::new(Repr::Curve { curve, affine }))
    }

    /// Dihedral group of order `2n`: index `k < n` is `r^k`, index `n + k`
    /// is `s r^k`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if 2 * n > MAX_TABLE_ORDER {
            return Err(GroupError::OrderTooLarge);
        }
        let label = format!("D{n}");
        let table = CayleyTable::from_fn(2 * n, &label, |x, y| {
            let (fx, kx) = (x >= n, x % n);
            let (fy, ky) = (y >= n, y % n);
            match (fx, fy) {
                (false, false) => (kx + ky) % n,
                (false, true) => n + (ky + n - kx) % n,
                (true, false) => n + (kx + ky) % n,
                (true, true) => (ky + n - kx) % n,
            }
        });
        Ok(Self::cayley(table))
    }

    /// Quaternion group ordered `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // unit 0..4 = 1, i, j, k; index = 2 * unit + sign
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let table = CayleyTable::from_fn(8, "Q8", |x, y| {
            let (u, neg) = UNIT[x / 2][y / 2];
            let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
            2 * u + sign as usize
        });
        Self::cayley(table)
    }

    pub fn kind(&self) -> GroupKind<'_> {
        match &*self.0 {
            Repr::Cyclic(n) => GroupKind::Cyclic(*n),
            Repr::Product { factors, .. } => GroupKind::DirectProduct(factors),
            Repr::Perm {
                degree,
                alternating: false,
                ..
            } => GroupKind::Symmetric(*degree),
            Repr::Perm { degree, .. } => GroupKind::Alternating(*degree),
            Repr::Vector { field, dim, .. } => GroupKind::VectorSpaceAdd { field, dim: *dim },
            Repr::Table(t) => GroupKind::CayleyTable(t),
            Repr::Curve { curve, .. } => GroupKind::EllipticCurve(curve),
        }
    }

    pub fn order(&self) -> usize {
        match &*self.0 {
            Repr::Cyclic(n) => *n,
            Repr::Product { order, .. } => *order,
            Repr::Perm { perms, .. } => perms.len(),
            Repr::Vector { order, .. } => *order,
            Repr::Table(t) => t.order,
            Repr::Curve { affine, .. } => affine.len() + 1,
        }
    }

    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    /// All elements in canonical order.
    pub fn enumerate(&self) -> impl Iterator<Item = ElementId> {
        (0..self.order()).map(ElementId)
    }

    fn check(&self, a: ElementId) -> Result<usize, GroupError> {
        if a.0 < self.order() {
            Ok(a.0)
        } else {
            Err(GroupError::IndexOutOfRange {
                index: a.0,
                order: self.order(),
            })
        }
    }

    pub fn op(&self, a: ElementId, b: ElementId) -> Result<ElementId, GroupError> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(ElementId(self.mul_idx(a, b)))
    }

    pub fn inv(&self, a: ElementId) -> Result<ElementId, GroupError> {
        let a = self.check(a)?;
        Ok(ElementId(self.inv_idx(a)))
    }

    /// Product on raw indices; callers guarantee both are in range.
    pub(crate) fn mul_idx(&self, a: usize, b: usize) -> usize {
        match &*self.0 {
            Repr::Cyclic(n) => {
                let s = a + b;
                if s >= *n {
                    s - n
                } else {
                    s
                }
            }
            Repr::Product { factors, .. } => {
                let mut out = 0;
                let mut scale = 1;
                let (mut a, mut b) = (a, b);
                for f in factors.iter().rev() {
                    let m = f.order();
                    out += f.mul_idx(a % m, b % m) * scale;
                    scale *= m;
                    a /= m;
                    b /= m;
                }
                out
            }
            Repr::Perm { degree, perms, .. } => {
                let (pa, pb) = (&perms[a], &perms[b]);
                let mut c = [0, 1, 2, 3, 4, 5, 6, 7];
                for i in 0..*degree as usize {
                    c[i] = pa[pb[i] as usize];
                }
                perm_index(perms, &c)
            }
            Repr::Vector { field, .. } => {
                let p = field.p() as usize;
                let (mut a, mut b) = (a, b);
                let (mut out, mut scale) = (0, 1);
                while a > 0 || b > 0 {
                    let d = a % p + b % p;
                    out += if d >= p { d - p } else { d } * scale;
                    scale *= p;
                    a /= p;
                    b /= p;
                }
                out
            }
            Repr::Table(t) => t.product(a, b),
            Repr::Curve { curve, affine } => {
                let s = curve.add_raw(&curve_point(curve, affine, a), &curve_point(curve, affine, b));
                curve_index(curve, affine, &s)
            }
        }
    }

    pub(crate) fn inv_idx(&self, a: usize) -> usize {
        match &*self.0 {
            Repr::Cyclic(n) => (n - a) % n,
            Repr::Product { factors, .. } => {
                let (mut out, mut scale, mut a) = (0, 1, a);
                for f in factors.iter().rev() {
                    let m = f.order();
                    out += f.inv_idx(a % m) * scale;
                    scale *= m;
                    a /= m;
                }
                out
            }
            Repr::Perm { degree, perms, .. } => {
                let pa = &perms[a];
                let mut c = [0, 1, 2, 3, 4, 5, 6, 7];
                for i in 0..*degree as usize {
                    c[pa[i] as usize] = i as u8;
                }
                perm_index(perms, &c)
            }
            Repr::Vector { field, .. } => {
                let p = field.p() as usize;
                let (mut a, mut out, mut scale) = (a, 0, 1);
                while a > 0 {
                    out += (p - a % p) % p * scale;
                    scale *= p;
                    a /= p;
                }
                out
            }
            Repr::Table(t) => t.inverses[a] as usize,
            Repr::Curve { curve, affine } => {
                if a == 0 {
                    return 0;
                }
                let (x, y) = affine[a - 1];
                let f = curve.field();
                let ny = f.index_of(&f.neg_raw(&f.from_index(y)));
                1 + affine.binary_search(&(x, ny)).expect("negated point lies on the curve")
            }
        }
    }

    pub fn self_invertible_set(&self) -> InvolutionProfile {
        let members: Vec<ElementId> = (0..self.order())
            .filter(|&x| self.inv_idx(x) == x)
            .map(ElementId)
            .collect();
        let s_count = members.len() as u64;
        InvolutionProfile {
            members,
            s_count,
            non_s_count: self.order() as u64 - s_count,
        }
    }

    /// Factor handles of a direct product (a single-element slice otherwise).
    pub fn factors(&self) -> &[GroupHandle] {
        match &*self.0 {
            Repr::Product { factors, .. } => factors,
            _ => core::slice::from_ref(self),
        }
    }

    /// Component indices of a direct-product element.
    pub fn split(&self, a: ElementId) -> Vec<ElementId> {
        let factors = self.factors();
        let mut out = vec![ElementId(0); factors.len()];
        let mut a = a.0;
        for (slot, f) in out.iter_mut().zip(factors).rev() {
            *slot = ElementId(a % f.order());
            a /= f.order();
        }
        out
    }

    /// Inverse of [`split`](Self::split).
    pub fn join(&self, parts: &[ElementId]) -> ElementId {
        let idx = self
            .factors()
            .iter()
            .zip(parts)
            .fold(0, |acc, (f, p)| acc * f.order() + p.0);
        ElementId(idx)
    }

    /// Coordinates of a vector-space element (first coordinate first).
    pub fn vector_coords(&self, a: ElementId) -> Option<Vec<FieldElement>> {
        let Repr::Vector { field, dim, .. } = &*self.0 else {
            return None;
        };
        let q = field.order() as usize;
        let mut out = Vec::with_capacity(*dim as usize);
        let mut a = a.0;
        for _ in 0..*dim {
            out.push(field.from_index((a % q) as u32));
            a /= q;
        }
        out.reverse();
        Some(out)
    }

    /// Index of a coordinate vector; `None` for other kinds or wrong length.
    pub fn vector_index(&self, coords: &[FieldElement]) -> Option<ElementId> {
        let Repr::Vector { field, dim, .. } = &*self.0 else {
            return None;
        };
        if coords.len() != *dim as usize || coords.iter().any(|c| !field.contains(c)) {
            return None;
        }
        let q = field.order() as usize;
        Some(ElementId(
            coords.iter().fold(0, |acc, c| acc * q + field.index_of(c) as usize),
        ))
    }

    /// The point behind an element of a curve group.
    pub fn curve_point(&self, a: ElementId) -> Option<CurvePoint> {
        match &*self.0 {
            Repr::Curve { curve, affine } if a.0 <= affine.len() => Some(curve_point(curve, affine, a.0)),
            _ => None,
        }
    }

    /// One-line permutation of an element of `S_n` / `A_n`.
    pub fn permutation(&self, a: ElementId) -> Option<Vec<u8>> {
        match &*self.0 {
            Repr::Perm { degree, perms, .. } => perms.get(a.0).map(|p| p[..*degree as usize].to_vec()),
            _ => None,
        }
    }

    /// Human-readable rendering of an element.
    pub fn describe(&self, a: ElementId) -> String {
        match &*self.0 {
            Repr::Cyclic(_) | Repr::Table(_) => format!("{}", a.0),
            Repr::Product { factors, .. } => {
                let parts: Vec<String> = self
                    .split(a)
                    .iter()
                    .zip(factors)
                    .map(|(p, f)| f.describe(*p))
                    .collect();
                format!("({})", parts.join(","))
            }
            Repr::Perm { .. } => format!("{:?}", self.permutation(a).unwrap_or_default()),
            Repr::Vector { field, .. } => {
                let parts: Vec<String> = self
                    .vector_coords(a)
                    .unwrap_or_default()
                    .iter()
                    .map(|c| field.format(c))
                    .collect();
                format!("<{}>", parts.join(";"))
            }
            Repr::Curve { curve, affine } => match curve_point(curve, affine, a.0) {
                CurvePoint::Infinity => String::from("O"),
                CurvePoint::Affine { x, y } => {
                    format!("({};{})", curve.field().format(&x), curve.field().format(&y))
                }
            },
        }
    }
}

impl PartialEq for GroupHandle {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Repr::Cyclic(a), Repr::Cyclic(b)) => a == b,
            (Repr::Product { factors: a, .. }, Repr::Product { factors: b, .. }) => a == b,
            (
                Repr::Perm {
                    degree: d1,
                    alternating: a1,
                    ..
                },
                Repr::Perm {
                    degree: d2,
                    alternating: a2,
                    ..
                },
            ) => d1 == d2 && a1 == a2,
            (Repr::Vector { field: f1, dim: d1, .. }, Repr::Vector { field: f2, dim: d2, .. }) => {
                f1 == f2 && d1 == d2
            }
            (Repr::Table(a), Repr::Table(b)) => a.table == b.table,
            (Repr::Curve { curve: a, .. }, Repr::Curve { curve: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl Eq for GroupHandle {}

/// Spec-string rendering: `Z12`, `Z2xZ4`, `S5`, `A4`, `V(3^2,2)`,
/// `E(7;a=1,b=0)`, and the table label for Cayley tables.
impl fmt::Display for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Repr::Cyclic(n) => write!(f, "Z{n}"),
            Repr::Product { factors, .. } => {
                for (i, g) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            Repr::Perm {
                degree,
                alternating,
                ..
            } => write!(f, "{}{degree}", if *alternating { "A" } else { "S" }),
            Repr::Vector { field, dim, .. } => {
                if field.degree() == 1 {
                    write!(f, "V({},{dim})", field.p())
                } else {
                    write!(f, "V({}^{},{dim})", field.p(), field.degree())
                }
            }
            Repr::Table(t) => f.write_str(&t.label),
            Repr::Curve { curve, .. } => write!(f, "{curve}"),
        }
    }
}

fn perm_index(perms: &[[u8; 8]], p: &[u8; 8]) -> usize {
    perms.binary_search(p).expect("closed under composition")
}

fn curve_point(curve: &CurveSpec, affine: &[(u32, u32)], idx: usize) -> CurvePoint {
    if idx == 0 {
        return CurvePoint::Infinity;
    }
    let (x, y) = affine[idx - 1];
    let f = curve.field();
    CurvePoint::Affine {
        x: f.from_index(x),
        y: f.from_index(y),
    }
}

fn curve_index(curve: &CurveSpec, affine: &[(u32, u32)], p: &CurvePoint) -> usize {
    match p {
        CurvePoint::Infinity => 0,
        CurvePoint::Affine { x, y } => {
            let f = curve.field();
            let key = (f.index_of(x), f.index_of(y));
            1 + affine.binary_search(&key).expect("sum lies on the curve")
        }
    }
}

fn is_even(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Lexicographic successor in place; `false` once `p` is the last permutation.
fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("pivot has a successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// The fixed list of small groups (order at most 24) used for oracle
/// comparisons: `Z_1..Z_24`, four abelian products, `S_3`, `S_4`, `A_4`,
/// `D_4` and `Q_8`.
pub fn small_catalog() -> Vec<GroupHandle> {
    let z = |n| GroupHandle::cyclic(n).expect("valid order");
    let zz = |a, b| GroupHandle::product(vec![z(a), z(b)]).expect("valid order");
    let mut out: Vec<GroupHandle> = (1..=24).map(z).collect();
    out.extend([zz(2, 2), zz(2, 4), zz(2, 6), zz(3, 3)]);
    out.push(GroupHandle::symmetric(3).expect("degree 3"));
    out.push(GroupHandle::symmetric(4).expect("degree 4"));
    out.push(GroupHandle::alternating(4).expect("degree 4"));
    out.push(GroupHandle::dihedral(4).expect("order 8"));
    out.push(GroupHandle::quaternion());
    out
}

/// A broad catalog of groups of order at most `max_order`: cyclic groups,
/// two-factor cyclic products, symmetric and alternating groups, dihedral
/// groups, `Q_8` and additive vector spaces over small fields.
pub fn catalog(max_order: usize) -> Vec<GroupHandle> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(GroupHandle::cyclic(n).expect("bounded"));
    }
    for a in 2..=12usize {
        for b in a..=max_order / a {
            if b > 64 && a > 2 {
                break;
            }
            let g = GroupHandle::product(vec![GroupHandle::cyclic(a).unwrap(), GroupHandle::cyclic(b).unwrap()]);
            out.push(g.expect("bounded"));
        }
    }
    for d in 1..=MAX_PERM_DEGREE {
        let s = GroupHandle::symmetric(d).expect("bounded");
        if s.order() <= max_order {
            out.push(s);
        }
        let a = GroupHandle::alternating(d).expect("bounded");
        if a.order() <= max_order {
            out.push(a);
        }
    }
    for n in 3..=max_order / 2 {
        out.push(GroupHandle::dihedral(n).expect("bounded"));
    }
    if max_order >= 8 {
        out.push(GroupHandle::quaternion());
    }
    for q in 2..=max_order as u64 {
        let Some((p, n)) = crate::finfield::prime_power(q) else { continue };
        let field = FieldSpec::new(p, n).expect("small prime power");
        let mut dim = 1;
        while (q as usize).pow(dim) <= max_order {
            out.push(GroupHandle::vector_space(field.clone(), dim).expect("bounded"));
            dim += 1;
        }
    }
    out
}
