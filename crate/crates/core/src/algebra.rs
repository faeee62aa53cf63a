//! Rank-preserving and rank-arithmetic scheme transformations: Kronecker
//! composition, block direct sums along any dimension, cyclic rotation, and
//! reduction of integer coefficients mod p.
//!
//! Each operation carries its correctness certificate for free: the output
//! is an ordinary scheme, so the Brent verifier can (and the tests do)
//! certify every construction instead of trusting the block-matrix algebra.

use alloc::vec::Vec;
use core::fmt;

use crate::ring::{RingError, RingSpec};
use crate::scheme::{RankOneTerm, Scheme};

/// Which dimension a direct sum splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitAxis {
    /// Split the output rows: `(n_s, m, p) ⊞ (n_t, m, p) → (n_s + n_t, m, p)`.
    Rows,
    /// Split the shared middle dimension: `(n, m_s, p) ⊞ (n, m_t, p) → (n, m_s + m_t, p)`.
    Middle,
    /// Split the output columns: `(n, m, p_s) ⊞ (n, m, p_t) → (n, m, p_s + p_t)`.
    Cols,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// The two operands live over different rings.
    RingMismatch,
    /// Operand formats do not agree on the non-split dimensions.
    FormatMismatch {
        left: (usize, usize, usize),
        right: (usize, usize, usize),
    },
    /// Composition requires at least one term on each side.
    EmptyOperand,
    /// `mod_reduce` requires an integer-coefficient scheme.
    NotIntegerRing,
    /// The reduction modulus is not usable.
    BadModulus(RingError),
    /// Coefficient arithmetic left the `i64` range.
    Overflow,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::RingMismatch => write!(f, "operand rings differ"),
            AlgebraError::FormatMismatch { left, right } => write!(
                f,
                "operand formats {left:?} and {right:?} do not agree on the non-split dimensions"
            ),
            AlgebraError::EmptyOperand => write!(f, "both operands must have at least one term"),
            AlgebraError::NotIntegerRing => {
                write!(f, "mod-p reduction applies to integer-coefficient schemes only")
            }
            AlgebraError::BadModulus(e) => write!(f, "bad modulus: {e}"),
            AlgebraError::Overflow => write!(f, "coefficient arithmetic overflowed i64"),
        }
    }
}

impl core::error::Error for AlgebraError {}

/// Kronecker composition: a scheme for `(n_s·n_t, m_s·m_t, p_s·p_t)` of rank
/// `rank(s) · rank(t)`.
///
/// Every output term is the factor-wise Kronecker product of one term of `s`
/// with one term of `t`; indices use block form with `s` as the outer index,
/// consistently across the three factors and across the term list (terms of
/// `s` enumerate outermost).
pub fn kronecker(s: &Scheme, t: &Scheme) -> Result<Scheme, AlgebraError> {
    if s.ring() != t.ring() {
        return Err(AlgebraError::RingMismatch);
    }
    let ring = s.ring();
    let mut terms = Vec::with_capacity(s.rank() * t.rank());
    for ts in s.terms() {
        for tt in t.terms() {
            terms.push(RankOneTerm::new(
                ts.a().kron(tt.a(), ring).ok_or(AlgebraError::Overflow)?,
                ts.b().kron(tt.b(), ring).ok_or(AlgebraError::Overflow)?,
                ts.c().kron(tt.c(), ring).ok_or(AlgebraError::Overflow)?,
            ));
        }
    }
    // Kronecker factors of nonzero matrices stay nonzero over Z and over any
    // prime field, so no zero terms can appear here.
    Ok(Scheme::from_parts(
        s.n() * t.n(),
        s.m() * t.m(),
        s.p() * t.p(),
        ring,
        terms,
    ))
}

/// Block (direct-sum) composition along `axis`: rank adds, and `s` occupies
/// the low-index block of every split dimension.
pub fn direct_sum(s: &Scheme, t: &Scheme, axis: SplitAxis) -> Result<Scheme, AlgebraError> {
    if s.ring() != t.ring() {
        return Err(AlgebraError::RingMismatch);
    }
    if s.rank() == 0 || t.rank() == 0 {
        return Err(AlgebraError::EmptyOperand);
    }
    let mismatch = AlgebraError::FormatMismatch {
        left: s.format(),
        right: t.format(),
    };
    let (n, m, p) = match axis {
        SplitAxis::Rows => {
            if s.m() != t.m() || s.p() != t.p() {
                return Err(mismatch);
            }
            (s.n() + t.n(), s.m(), s.p())
        }
        SplitAxis::Middle => {
            if s.n() != t.n() || s.p() != t.p() {
                return Err(mismatch);
            }
            (s.n(), s.m() + t.m(), s.p())
        }
        SplitAxis::Cols => {
            if s.n() != t.n() || s.m() != t.m() {
                return Err(mismatch);
            }
            (s.n(), s.m(), s.p() + t.p())
        }
    };

    // Embeds one operand's term into the combined format. `low` selects the
    // low-index block (the `s` side).
    let embed = |term: &RankOneTerm, low: bool| -> RankOneTerm {
        let (ra, ca, rb, cb, rc, cc) = match axis {
            // A gains rows, C gains columns (C is p×n), B passes through.
            SplitAxis::Rows => {
                let off = if low { 0 } else { s.n() };
                (off, 0, 0, 0, 0, off)
            }
            // A gains columns, B gains rows, C passes through.
            SplitAxis::Middle => {
                let off = if low { 0 } else { s.m() };
                (0, off, off, 0, 0, 0)
            }
            // B gains columns, C gains rows, A passes through.
            SplitAxis::Cols => {
                let off = if low { 0 } else { s.p() };
                (0, 0, 0, off, off, 0)
            }
        };
        RankOneTerm::new(
            term.a().embed(n, m, ra, ca),
            term.b().embed(m, p, rb, cb),
            term.c().embed(p, n, rc, cc),
        )
    };

    let mut terms = Vec::with_capacity(s.rank() + t.rank());
    terms.extend(s.terms().iter().map(|term| embed(term, true)));
    terms.extend(t.terms().iter().map(|term| embed(term, false)));
    Ok(Scheme::from_parts(n, m, p, s.ring(), terms))
}

/// Cyclic rotation: maps each term `(A, B, C)` to `(B, C, A)`, turning a
/// scheme for `(n, m, p)` into one for `(m, p, n)`.
///
/// Term order is preserved, so `rotate` applied three times is the identity,
/// including term order.
pub fn rotate(s: &Scheme) -> Scheme {
    let terms = s
        .terms()
        .iter()
        .map(|t| RankOneTerm::new(t.b().clone(), t.c().clone(), t.a().clone()))
        .collect();
    Scheme::from_parts(s.m(), s.p(), s.n(), s.ring(), terms)
}

/// Reduces an integer-coefficient scheme mod a prime `p`.
///
/// Terms whose reduction has an all-zero factor are dropped, so the rank may
/// decrease. A scheme valid over `Z` stays valid over every `Z_p`.
pub fn mod_reduce(s: &Scheme, p: u64) -> Result<Scheme, AlgebraError> {
    if s.ring().is_prime_field() {
        return Err(AlgebraError::NotIntegerRing);
    }
    let ring = RingSpec::prime_field(p).map_err(AlgebraError::BadModulus)?;
    let (n, m, pp) = s.format();
    Ok(Scheme::new(n, m, pp, ring, s.terms().to_vec())
        .expect("reduction preserves shapes"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::CoeffMatrix;
    use alloc::vec;

    extern crate alloc;

    fn z() -> RingSpec {
        RingSpec::integers()
    }

    #[test]
    fn kron_strassen_squared_is_rank_49() {
        let s = Scheme::strassen(z());
        let k = kronecker(&s, &s).unwrap();
        assert_eq!(k.format(), (4, 4, 4));
        assert_eq!(k.rank(), 49);
        assert!(k.verify().unwrap().valid);
    }

    #[test]
    fn kron_with_scalar_identity() {
        let s = Scheme::strassen(z());
        let id = Scheme::standard(1, 1, 1, z());
        let left = kronecker(&id, &s).unwrap();
        let right = kronecker(&s, &id).unwrap();
        assert_eq!(left.format(), s.format());
        // Identity composition reproduces the scheme up to term order; here
        // the order is even preserved exactly.
        assert_eq!(left.terms(), s.terms());
        assert_eq!(right.terms(), s.terms());
    }

    #[test]
    fn kron_ring_mismatch() {
        let a = Scheme::strassen(z());
        let b = Scheme::strassen(RingSpec::prime_field(2).unwrap());
        assert_eq!(kronecker(&a, &b).unwrap_err(), AlgebraError::RingMismatch);
    }

    #[test]
    fn direct_sum_rows() {
        let a = Scheme::standard(2, 3, 3, z());
        let b = Scheme::standard(1, 3, 3, z());
        let d = direct_sum(&a, &b, SplitAxis::Rows).unwrap();
        assert_eq!(d.format(), (3, 3, 3));
        assert_eq!(d.rank(), a.rank() + b.rank());
        assert!(d.verify().unwrap().valid);
    }

    #[test]
    fn direct_sum_middle() {
        let a = Scheme::standard(2, 2, 3, z());
        let b = Scheme::standard(2, 1, 3, z());
        let d = direct_sum(&a, &b, SplitAxis::Middle).unwrap();
        assert_eq!(d.format(), (2, 3, 3));
        assert!(d.verify().unwrap().valid);
    }

    #[test]
    fn direct_sum_cols() {
        let a = Scheme::strassen(z());
        let b = Scheme::standard(2, 2, 1, z());
        let d = direct_sum(&a, &b, SplitAxis::Cols).unwrap();
        assert_eq!(d.format(), (2, 2, 3));
        assert_eq!(d.rank(), 7 + 4);
        assert!(d.verify().unwrap().valid);
    }

    #[test]
    fn direct_sum_guards() {
        let a = Scheme::standard(2, 2, 2, z());
        let b = Scheme::standard(2, 3, 2, z());
        assert!(matches!(
            direct_sum(&a, &b, SplitAxis::Rows).unwrap_err(),
            AlgebraError::FormatMismatch { .. }
        ));
        let empty = Scheme::new(2, 2, 2, z(), vec![]).unwrap();
        assert_eq!(
            direct_sum(&a, &empty, SplitAxis::Rows).unwrap_err(),
            AlgebraError::EmptyOperand
        );
    }

    #[test]
    fn rotate_cycles_format_and_is_involution_cubed() {
        let s = Scheme::standard(2, 3, 4, z());
        let r1 = rotate(&s);
        assert_eq!(r1.format(), (3, 4, 2));
        assert!(r1.verify().unwrap().valid);
        let r3 = rotate(&rotate(&r1));
        assert_eq!(r3, s);
    }

    #[test]
    fn rotate_strassen() {
        let r = rotate(&Scheme::strassen(z()));
        assert_eq!(r.format(), (2, 2, 2));
        assert_eq!(r.rank(), 7);
        assert!(r.verify().unwrap().valid);
    }

    #[test]
    fn mod_reduce_unit_coefficients_untouched() {
        let s = Scheme::standard(2, 2, 2, z());
        let r = mod_reduce(&s, 5).unwrap();
        assert_eq!(r.rank(), 8);
        assert_eq!(r.ring(), RingSpec::prime_field(5).unwrap());
        for (a, b) in s.terms().iter().zip(r.terms()) {
            assert_eq!(a.a().entries(), b.a().entries());
        }
        assert!(r.verify().unwrap().valid);
    }

    #[test]
    fn mod_reduce_drops_terms_that_vanish() {
        // One term whose A factor is all ±2 vanishes mod 2.
        let ring = z();
        let t1 = RankOneTerm::new(
            CoeffMatrix::new(1, 1, vec![2]).unwrap(),
            CoeffMatrix::new(1, 1, vec![1]).unwrap(),
            CoeffMatrix::new(1, 1, vec![1]).unwrap(),
        );
        let t2 = RankOneTerm::new(
            CoeffMatrix::new(1, 1, vec![1]).unwrap(),
            CoeffMatrix::new(1, 1, vec![1]).unwrap(),
            CoeffMatrix::new(1, 1, vec![1]).unwrap(),
        );
        let s = Scheme::new(1, 1, 1, ring, vec![t1, t2]).unwrap();
        assert_eq!(s.rank(), 2);
        let r = mod_reduce(&s, 2).unwrap();
        assert_eq!(r.rank(), 1);
        assert!(r.verify().unwrap().valid);
    }

    #[test]
    fn mod_reduce_guards() {
        let s = Scheme::standard(2, 2, 2, RingSpec::prime_field(3).unwrap());
        assert_eq!(mod_reduce(&s, 2).unwrap_err(), AlgebraError::NotIntegerRing);
        let s = Scheme::standard(2, 2, 2, z());
        assert!(matches!(
            mod_reduce(&s, 6).unwrap_err(),
            AlgebraError::BadModulus(RingError::NotPrime(6))
        ));
    }
}
