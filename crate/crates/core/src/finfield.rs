//! Exact arithmetic in finite fields `F_{p^n}`.
//!
//! Elements are little-endian coefficient vectors over `F_p`, reduced modulo a
//! fixed monic irreducible polynomial. Every element also has a canonical
//! integer index `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`; enumeration order,
//! modulus selection and "least element" searches all follow that index.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {p}^{n} exceeds the supported maximum of 2^20")]
    Overflow { p: u64, n: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element does not belong to F_{p}^{n}")]
    FieldMismatch { p: u32, n: u32 },
    #[error("modulus is not a monic polynomial of degree {0}")]
    NotMonic(u32),
    #[error("modulus is reducible over F_{0}")]
    Reducible(u32),
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// Deterministic primality by trial division (inputs are at most 2^20 here).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `Some((p, n))` when `q = p^n` for a prime `p` and `n >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = q;
    let mut n = 0;
    while m.is_multiple_of(p) {
        m /= p;
        n += 1;
    }
    (m == 1).then_some((p, n))
}

/// Polynomials over `F_p` as little-endian coefficient vectors with no
/// trailing zeros (the zero polynomial is the empty vector).
mod poly {
    use alloc::vec;
    use alloc::vec::Vec;

    pub(super) fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub(super) fn inv_mod(a: u32, p: u32) -> u32 {
        pow_mod(a, p - 2, p)
    }

    pub(super) fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
        let p64 = p as u64;
        let mut base = a as u64 % p64;
        let mut acc = 1u64 % p64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p64;
            }
            base = base * base % p64;
            e >>= 1;
        }
        acc as u32
    }

    pub(super) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let mut out = vec![0u32; len];
        for (i, slot) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *slot = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }

    pub(super) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p64 = p as u64;
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` divided by the nonzero polynomial `m`.
    pub(super) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        let p64 = p as u64;
        while r.len() > dm {
            let dr = r.len() - 1;
            let factor = r[dr] as u64 * lead_inv % p64;
            let shift = dr - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = factor * c as u64 % p64;
                r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub(super) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub(super) fn pow_poly_mod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut base = rem(a, m, p);
        let mut acc = rem(&[1], m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub(super) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Rabin's test: a monic `f` of degree `n` is irreducible iff
    /// `X^(p^n) = X mod f` and `gcd(X^(p^(n/r)) - X, f) = 1` for every
    /// prime `r | n`.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = [0u32, 1];
        // frob[k] = X^(p^k) mod f
        let mut frob = Vec::with_capacity(n + 1);
        let mut cur = rem(&x, f, p);
        frob.push(cur.clone());
        for _ in 0..n {
            cur = pow_poly_mod(&cur, p as u64, f, p);
            frob.push(cur.clone());
        }
        if sub(&frob[n], &x, p).iter().any(|&c| c != 0) {
            return false;
        }
        let mut m = n;
        let mut r = 2;
        while m > 1 {
            if m.is_multiple_of(r) {
                while m.is_multiple_of(r) {
                    m /= r;
                }
                let g = gcd(f, &sub(&frob[n / r], &x, p), p);
                if g.len() != 1 {
                    return false;
                }
            }
            r += 1;
        }
        true
    }
}

/// A finite field `F_{p^n}` with its fixed modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: u32,
    /// Monic, little-endian, length `n + 1`.
    modulus: Vec<u32>,
}

/// An element of some `F_{p^n}`: `n` coefficients in `[0, p)`, low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

fn checked_order(p: u64, n: u32) -> Result<u32, FieldError> {
    let mut q: u64 = 1;
    for _ in 0..n {
        q = q.saturating_mul(p);
        if q > MAX_FIELD_ORDER {
            return Err(FieldError::Overflow { p, n });
        }
    }
    Ok(q as u32)
}

impl FieldSpec {
    /// The field of order `p^n` with the least monic irreducible modulus
    /// (least under the canonical integer index of its lower coefficients).
    /// For `n = 1` the modulus is `X`.
    pub fn new(p: u64, n: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n == 0 {
            return Err(FieldError::DegreeZero);
        }
        let q = checked_order(p, n)?;
        let p32 = p as u32;
        let n_us = n as usize;
        // Lower coefficients run over all q residue vectors in index order.
        for idx in 0..q {
            let mut modulus = digits(idx, p32, n_us);
            modulus.push(1);
            if poly::is_irreducible(&modulus, p32) {
                return Ok(FieldSpec {
                    p: p32,
                    n,
                    q,
                    modulus,
                });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    /// A field with an explicitly supplied monic modulus (little-endian).
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(FieldError::DegreeZero);
        }
        let n = (modulus.len() - 1) as u32;
        let q = checked_order(p, n)?;
        let p32 = p as u32;
        if modulus[modulus.len() - 1] != 1 || modulus.iter().any(|&c| c >= p32) {
            return Err(FieldError::NotMonic(n));
        }
        if !poly::is_irreducible(modulus, p32) {
            return Err(FieldError::Reducible(p32));
        }
        Ok(FieldSpec {
            p: p32,
            n,
            q,
            modulus: modulus.to_vec(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.n as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    /// The class of `X`. `None` for prime fields, where it would be `0`.
    pub fn x(&self) -> Option<FieldElement> {
        if self.n < 2 {
            return None;
        }
        let mut e = self.zero();
        e.coeffs[1] = 1;
        Some(e)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = v.rem_euclid(self.p as i64) as u32;
        e
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        let e = FieldElement {
            coeffs: coeffs.to_vec(),
        };
        self.check(&e)?;
        Ok(e)
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.coeffs.len() == self.n as usize && a.coeffs.iter().all(|&c| c < self.p)
    }

    fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch {
                p: self.p,
                n: self.n,
            })
        }
    }

    /// Canonical index `sum c_i p^i`.
    pub fn index_of(&self, a: &FieldElement) -> u32 {
        a.coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    /// Inverse of [`index_of`](Self::index_of); `idx` must be below `q`.
    pub fn from_index(&self, idx: u32) -> FieldElement {
        debug_assert!(idx < self.q);
        FieldElement {
            coeffs: digits(idx, self.p, self.n as usize),
        }
    }

    /// All `q` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, &self.neg_raw(b)))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.neg_raw(a))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_raw(a, b))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        // a^(q-2) = a^-1 in the multiplicative group of order q - 1.
        Ok(self.pow_raw(a, self.q as u64 - 2))
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.pow_raw(a, e))
    }

    pub(crate) fn add_raw(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub(crate) fn neg_raw(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub(crate) fn sub_raw(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add_raw(a, &self.neg_raw(b))
    }

    pub(crate) fn mul_raw(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.n == 1 {
            let v = a.coeffs[0] as u64 * b.coeffs[0] as u64 % self.p as u64;
            return FieldElement {
                coeffs: vec![v as u32],
            };
        }
        let r = poly::mul_mod(&a.coeffs, &b.coeffs, &self.modulus, self.p);
        self.from_poly(r)
    }

    pub(crate) fn pow_raw(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            base = self.mul_raw(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv_raw(&self, a: &FieldElement) -> FieldElement {
        self.pow_raw(a, self.q as u64 - 2)
    }

    fn from_poly(&self, mut r: Vec<u32>) -> FieldElement {
        r.resize(self.n as usize, 0);
        FieldElement { coeffs: r }
    }

    /// True iff `a != 0` and `a = b^2` for some `b`. Odd `q` uses Euler's
    /// criterion; in characteristic 2 squaring is a bijection.
    pub fn is_nonzero_square(&self, a: &FieldElement) -> bool {
        if !self.contains(a) || a.is_zero() {
            return false;
        }
        if self.p == 2 {
            return true;
        }
        self.pow_raw(a, (self.q as u64 - 1) / 2) == self.one()
    }

    /// Same predicate as [`is_nonzero_square`](Self::is_nonzero_square) by
    /// squaring every element of the field.
    pub fn is_nonzero_square_by_scan(&self, a: &FieldElement) -> bool {
        if !self.contains(a) || a.is_zero() {
            return false;
        }
        self.elements().any(|b| self.mul_raw(&b, &b) == *a)
    }

    /// The least `alpha` with `alpha^2 = -1`, or `None` when `q = 3 mod 4`.
    pub fn sqrt_of_minus_one(&self) -> Option<FieldElement> {
        if self.p == 2 {
            return Some(self.one());
        }
        if self.q % 4 == 3 {
            return None;
        }
        let minus_one = self.neg_raw(&self.one());
        self.elements().find(|a| self.mul_raw(a, a) == minus_one)
    }

    /// Text encoding: bare integer for prime fields, otherwise the
    /// comma-separated coefficients low degree first (`"2,1"` is `2 + X`).
    pub fn format(&self, a: &FieldElement) -> String {
        let mut out = String::new();
        for (i, c) in a.coeffs.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            fmt::write(&mut out, format_args!("{c}")).expect("writing to a String");
        }
        out
    }

    /// Parses the [`format`](Self::format) encoding. A prime-field value may
    /// be any integer, including negative ones; it is reduced mod `p`.
    pub fn parse(&self, s: &str) -> Result<FieldElement, FieldError> {
        let bad = || FieldError::Parse(String::from(s));
        let parts: Vec<&str> = s.trim().split(',').map(str::trim).collect();
        if self.n == 1 && parts.len() == 1 {
            let v: i64 = parts[0].parse().map_err(|_| bad())?;
            return Ok(self.from_int(v));
        }
        if parts.len() != self.n as usize {
            return Err(bad());
        }
        let coeffs = parts
            .iter()
            .map(|t| t.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        self.element(&coeffs).map_err(|_| bad())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.n)
        }
    }
}

/// Base-`p` digits of `idx`, least significant first, padded to `len`.
fn digits(mut idx: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut() {
        *slot = idx % p;
        idx /= p;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Test-only oracle: a monic polynomial is irreducible iff no monic
    /// polynomial of degree 1..=n/2 divides it.
    fn irreducible_by_division(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        for d in 1..=n / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut g = digits(idx as u32, p, d);
                g.push(1);
                if poly::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 5);
    }

    #[test]
    fn least_modulus_examples() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f8 = FieldSpec::new(2, 3).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn modulus_selection_matches_brute_force_scan() {
        for &(p, n) in &[(2u32, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (2, 6)] {
            let spec = FieldSpec::new(p as u64, n).unwrap();
            let q = p.pow(n);
            let expected = (0..q)
                .map(|idx| {
                    let mut m = digits(idx, p, n as usize);
                    m.push(1);
                    m
                })
                .find(|m| irreducible_by_division(m, p))
                .unwrap();
            assert_eq!(spec.modulus(), expected.as_slice(), "p={p} n={n}");
        }
    }

    #[test]
    fn rabin_agrees_with_division_on_all_small_monics() {
        for &(p, n) in &[(2u32, 4u32), (3, 3), (3, 4), (5, 3)] {
            for idx in 0..p.pow(n) {
                let mut m = digits(idx, p, n as usize);
                m.push(1);
                assert_eq!(poly::is_irreducible(&m, p), irreducible_by_division(&m, p), "{m:?} mod {p}");
            }
        }
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(FieldSpec::new(4, 1), Err(FieldError::NotPrime(4)));
        assert_eq!(FieldSpec::new(5, 0), Err(FieldError::DegreeZero));
        assert!(matches!(FieldSpec::new(2, 21), Err(FieldError::Overflow { .. })));
        assert!(FieldSpec::new(2, 20).is_ok());
        assert_eq!(
            FieldSpec::with_modulus(3, &[0, 0, 1]),
            Err(FieldError::Reducible(3))
        );
    }

    #[test]
    fn prime_field_arithmetic_examples() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.inv(&f.from_int(3)).unwrap(), f.from_int(5));
        assert_eq!(f.add(&f.from_int(6), &f.from_int(1)).unwrap(), f.zero());
        assert_eq!(f.inv(&f.zero()), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn x_squared_is_minus_one_in_f9() {
        let f = FieldSpec::new(3, 2).unwrap();
        let x = f.x().unwrap();
        assert_eq!(f.mul(&x, &x).unwrap(), f.from_int(2));
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let f7 = FieldSpec::prime(7).unwrap();
        let f9 = FieldSpec::new(3, 2).unwrap();
        let err = f7.add(&f7.one(), &f9.one()).unwrap_err();
        assert_eq!(err, FieldError::FieldMismatch { p: 7, n: 1 });
        assert!(f7.element(&[7]).is_err());
    }

    #[test]
    fn square_examples() {
        let f = FieldSpec::prime(7).unwrap();
        assert!(f.is_nonzero_square(&f.from_int(2)));
        assert!(!f.is_nonzero_square(&f.from_int(3)));
        assert!(!f.is_nonzero_square(&f.zero()));
    }

    #[test]
    fn sqrt_minus_one_examples() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.sqrt_of_minus_one(), Some(f5.from_int(2)));
        let f13 = FieldSpec::prime(13).unwrap();
        assert_eq!(f13.sqrt_of_minus_one(), Some(f13.from_int(5)));
        assert_eq!(FieldSpec::prime(7).unwrap().sqrt_of_minus_one(), None);
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f4.sqrt_of_minus_one(), Some(f4.one()));
        // q = 9 = 1 mod 4 even though p = 3 mod 4.
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.sqrt_of_minus_one(), f9.x());
    }

    #[test]
    fn enumeration_order() {
        let f3 = FieldSpec::prime(3).unwrap();
        let e: Vec<_> = f3.elements().map(|a| f3.format(&a)).collect();
        assert_eq!(e, ["0", "1", "2"]);
        let f4 = FieldSpec::new(2, 2).unwrap();
        let e: Vec<_> = f4.elements().collect();
        assert_eq!(e, [f4.zero(), f4.one(), f4.x().unwrap(), f4.add_raw(&f4.one(), &f4.x().unwrap())]);
        assert_eq!(FieldSpec::new(3, 2).unwrap().elements().count(), 9);
    }

    #[test]
    fn text_encoding() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        let e = f9.parse("2,1").unwrap();
        assert_eq!(e.coeffs(), &[2, 1]);
        assert_eq!(f9.format(&e), "2,1");
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.parse("-1").unwrap(), f7.from_int(6));
        assert_eq!(f7.format(&f7.from_int(6)), "6");
        assert!(f9.parse("1").is_err());
        assert!(f9.parse("3,0").is_err());
    }

    #[test]
    fn euler_fast_path_matches_scan_up_to_121() {
        for q in 2..=121u64 {
            let Some((p, n)) = prime_power(q) else { continue };
            let f = FieldSpec::new(p, n).unwrap();
            let mut count = 0;
            for a in f.elements() {
                let fast = f.is_nonzero_square(&a);
                assert_eq!(fast, f.is_nonzero_square_by_scan(&a), "q={q} a={a:?}");
                count += fast as u32;
            }
            if q % 2 == 1 {
                assert_eq!(count as u64, (q - 1) / 2, "q={q}");
            }
        }
    }

    #[test]
    fn every_nonzero_element_has_an_inverse_in_small_fields() {
        for &(p, n) in &[(2u64, 3u32), (3, 2), (5, 2), (7, 1), (2, 4)] {
            let f = FieldSpec::new(p, n).unwrap();
            for a in f.elements().skip(1) {
                let inv = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &inv).unwrap(), f.one());
            }
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn field() -> impl Strategy<Value = FieldSpec> {
            prop::sample::select(alloc::vec![(2u64, 1u32), (2, 4), (3, 3), (5, 2), (7, 1), (13, 2), (101, 1)])
                .prop_map(|(p, n)| FieldSpec::new(p, n).unwrap())
        }

        fn field_and_triple() -> impl Strategy<Value = (FieldSpec, FieldElement, FieldElement, FieldElement)> {
            field().prop_flat_map(|f| {
                let q = f.order();
                (Just(f), 0..q, 0..q, 0..q)
                    .prop_map(|(f, a, b, c)| {
                        let (a, b, c) = (f.from_index(a), f.from_index(b), f.from_index(c));
                        (f, a, b, c)
                    })
            })
        }

        proptest! {
            #[test]
            fn field_axioms((f, a, b, c) in field_and_triple()) {
                let add = |x: &FieldElement, y: &FieldElement| f.add(x, y).unwrap();
                let mul = |x: &FieldElement, y: &FieldElement| f.mul(x, y).unwrap();
                prop_assert_eq!(add(&a, &add(&b, &c)), add(&add(&a, &b), &c));
                prop_assert_eq!(mul(&a, &mul(&b, &c)), mul(&mul(&a, &b), &c));
                prop_assert_eq!(add(&a, &b), add(&b, &a));
                prop_assert_eq!(mul(&a, &b), mul(&b, &a));
                prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
                prop_assert_eq!(add(&a, &f.zero()), a.clone());
                prop_assert_eq!(mul(&a, &f.one()), a.clone());
                prop_assert_eq!(add(&a, &f.neg(&a).unwrap()), f.zero());
                if !a.is_zero() {
                    prop_assert_eq!(mul(&a, &f.inv(&a).unwrap()), f.one());
                    prop_assert!(f.is_nonzero_square(&mul(&a, &a)));
                }
            }

            #[test]
            fn index_round_trip((f, a, _b, _c) in field_and_triple()) {
                prop_assert_eq!(f.from_index(f.index_of(&a)), a.clone());
                prop_assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
            }

            #[test]
            fn sqrt_minus_one_squares_to_minus_one(f in field()) {
                if let Some(alpha) = f.sqrt_of_minus_one() {
                    prop_assert_eq!(f.mul(&alpha, &alpha).unwrap(), f.neg(&f.one()).unwrap());
                } else {
                    prop_assert_eq!(f.order() % 4, 3);
                }
            }
        }
    }
}
