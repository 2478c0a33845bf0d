//! Inverse ambiguous functions: bijections `f` on a group with
//! `f(f(x)) = x^-1`.
//!
//! The crate decides existence on finite groups, builds explicit witnesses,
//! verifies candidate tables, counts points on short Weierstrass curves over
//! finite fields, and checks the continuous constructions (tori, lattices,
//! real and complex vector spaces, matrix groups) numerically on seeded
//! samples. It is `no_std` and only needs `alloc`.

#![no_std]
extern crate alloc;

pub mod contverify;
pub mod ecurve;
pub mod finfield;
pub mod groups;
pub mod iafun;
