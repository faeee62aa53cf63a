//! Exact toolkit for bilinear matrix-multiplication schemes.
//!
//! A *scheme* for format `(n, m, p)` is an ordered list of rank-one terms
//! `A ⊗ B ⊗ C` whose sum equals the matrix-multiplication tensor
//! `Σ a_{i,j} ⊗ b_{j,k} ⊗ c_{k,i}`. Every such list is simultaneously a
//! certificate (checkable through the Brent equations) and an algorithm:
//! one ring multiplication per term, so the term count — the *rank* of the
//! scheme — is the multiplication count of the algorithm it encodes.
//!
//! This crate holds the data model and everything that operates on it:
//!
//! - [`scheme`] — schemes, reference generators, the known-rank registry;
//! - [`verify`] — the exact Brent-equation verifier;
//! - [`algebra`] — Kronecker and direct-sum composition, cyclic rotation,
//!   reduction of coefficients mod p;
//! - [`flip`] / [`walk`] — flip-graph moves and seeded random-walk search;
//! - [`exec`] — compilation into a straight-line program and exact
//!   evaluation over user-supplied (possibly noncommutative) rings.
//!
//! All arithmetic is exact: coefficients live in `Z` or in a prime field
//! `Z_p` held in canonical residue form. The crate is `no_std` with `alloc`;
//! file formats, bundled scheme data, and the command-line front end live in
//! the companion `bms-cli` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod exec;
pub mod flip;
pub mod known;
pub mod matrix;
pub mod ring;
pub mod scheme;
pub mod verify;
pub mod walk;

pub use matrix::CoeffMatrix;
pub use ring::RingSpec;
pub use scheme::{RankOneTerm, Scheme, StructureError};
pub use verify::VerificationReport;
