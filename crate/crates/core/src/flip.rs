//! Flip-graph moves: the identity-preserving rewrites between schemes and
//! the rank-decreasing merge of terms sharing two factors.
//!
//! Two terms that share one factor position exactly, say
//! `A_i ⊗ B_i ⊗ C` and `A_j ⊗ B_j ⊗ C`, can exchange mass without changing
//! the tensor sum:
//!
//! ```text
//!   (A_i - A_j) ⊗ B_i ⊗ C  +  A_j ⊗ (B_i + B_j) ⊗ C
//! ```
//!
//! (the same pattern shifted cyclically when the shared factor sits at A or
//! B). Two terms sharing *two* factor positions merge into one, which is how
//! walks lose rank. Both rewrites are certified per application by the Brent
//! verifier in the test suite rather than taken on faith.
//!
//! Factor sharing means exact equality of canonical coefficient vectors, not
//! equality up to scale; over `Z_2`, the primary search field, the two
//! notions coincide.

use alloc::vec::Vec;
use core::fmt;

use crate::matrix::CoeffMatrix;
use crate::scheme::{RankOneTerm, Scheme};

/// Factor position within a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorPosition {
    A,
    B,
    C,
}

/// Which of the two terms donates its non-shared mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlipDirection {
    /// `term_i` donates.
    Forward,
    /// `term_j` donates.
    Backward,
}

/// One admissible flip: a pair of distinct terms (`term_i < term_j`) whose
/// factors at `shared` are exactly equal, plus a direction.
///
/// The derived ordering is the deterministic enumeration order:
/// lexicographic by `(term_i, term_j, shared, direction)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlipMove {
    pub term_i: usize,
    pub term_j: usize,
    pub shared: FactorPosition,
    pub direction: FlipDirection,
}

/// Rejected flip application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipError {
    /// The move is not admissible for this scheme.
    Inadmissible,
    /// Coefficient arithmetic left the `i64` range (only possible over `Z`).
    Overflow,
}

impl fmt::Display for FlipError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlipError::Inadmissible => write!(f, "flip move is not admissible for this scheme"),
            FlipError::Overflow => write!(f, "coefficient arithmetic overflowed i64"),
        }
    }
}

impl core::error::Error for FlipError {}

fn factor(term: &RankOneTerm, pos: FactorPosition) -> &CoeffMatrix {
    match pos {
        FactorPosition::A => term.a(),
        FactorPosition::B => term.b(),
        FactorPosition::C => term.c(),
    }
}

/// Enumerates all admissible flips of `s`, in lexicographic
/// `(term_i, term_j, shared, direction)` order.
pub fn enumerate_flips(s: &Scheme) -> Vec<FlipMove> {
    let terms = s.terms();
    let mut moves = Vec::new();
    for i in 0..terms.len() {
        for j in (i + 1)..terms.len() {
            for shared in [FactorPosition::A, FactorPosition::B, FactorPosition::C] {
                if factor(&terms[i], shared) == factor(&terms[j], shared) {
                    for direction in [FlipDirection::Forward, FlipDirection::Backward] {
                        moves.push(FlipMove {
                            term_i: i,
                            term_j: j,
                            shared,
                            direction,
                        });
                    }
                }
            }
        }
    }
    moves
}

/// Applies one flip. The tensor sum is unchanged; the rank is unchanged
/// unless a rewritten term acquires an all-zero factor, in which case it is
/// dropped.
pub fn apply_flip(s: &Scheme, mv: FlipMove) -> Result<Scheme, FlipError> {
    let terms = s.terms();
    if mv.term_i >= mv.term_j || mv.term_j >= terms.len() {
        return Err(FlipError::Inadmissible);
    }
    if factor(&terms[mv.term_i], mv.shared) != factor(&terms[mv.term_j], mv.shared) {
        return Err(FlipError::Inadmissible);
    }
    let (donor, receiver) = match mv.direction {
        FlipDirection::Forward => (mv.term_i, mv.term_j),
        FlipDirection::Backward => (mv.term_j, mv.term_i),
    };
    let ring = s.ring();
    let d = &terms[donor];
    let r = &terms[receiver];

    // Cyclic pattern: with shared factor X, the donor subtracts at the
    // position after X and the receiver sums at the position after that.
    let (new_donor, new_receiver) = match mv.shared {
        FactorPosition::C => (
            RankOneTerm::new(
                d.a().sub(r.a(), ring).ok_or(FlipError::Overflow)?,
                d.b().clone(),
                d.c().clone(),
            ),
            RankOneTerm::new(
                r.a().clone(),
                d.b().add(r.b(), ring).ok_or(FlipError::Overflow)?,
                r.c().clone(),
            ),
        ),
        FactorPosition::A => (
            RankOneTerm::new(
                d.a().clone(),
                d.b().sub(r.b(), ring).ok_or(FlipError::Overflow)?,
                d.c().clone(),
            ),
            RankOneTerm::new(
                r.a().clone(),
                r.b().clone(),
                d.c().add(r.c(), ring).ok_or(FlipError::Overflow)?,
            ),
        ),
        FactorPosition::B => (
            RankOneTerm::new(
                d.a().clone(),
                d.b().clone(),
                d.c().sub(r.c(), ring).ok_or(FlipError::Overflow)?,
            ),
            RankOneTerm::new(
                d.a().add(r.a(), ring).ok_or(FlipError::Overflow)?,
                r.b().clone(),
                r.c().clone(),
            ),
        ),
    };

    let mut out = Vec::with_capacity(terms.len());
    for (idx, term) in terms.iter().enumerate() {
        let t = if idx == donor {
            new_donor.clone()
        } else if idx == receiver {
            new_receiver.clone()
        } else {
            term.clone()
        };
        if !t.has_zero_factor() {
            out.push(t);
        }
    }
    let (n, m, p) = s.format();
    Ok(Scheme::from_parts(n, m, p, ring, out))
}

/// Exhaustively merges term pairs sharing two factor positions and drops the
/// zero terms that arise; idempotent at its fixpoint, never increases rank,
/// never changes the tensor sum.
///
/// Deterministic: pairs are scanned in lexicographic order and the scan
/// restarts after every merge.
pub fn reduce(s: &Scheme) -> Scheme {
    let ring = s.ring();
    let mut terms = s.terms().to_vec();
    'scan: loop {
        for i in 0..terms.len() {
            for j in (i + 1)..terms.len() {
                let (ti, tj) = (&terms[i], &terms[j]);
                let share_a = ti.a() == tj.a();
                let share_b = ti.b() == tj.b();
                let share_c = ti.c() == tj.c();
                let merged = if share_a && share_b {
                    let c = ti.c().add(tj.c(), ring).expect("coefficient overflow in reduce");
                    RankOneTerm::new(ti.a().clone(), ti.b().clone(), c)
                } else if share_a && share_c {
                    let b = ti.b().add(tj.b(), ring).expect("coefficient overflow in reduce");
                    RankOneTerm::new(ti.a().clone(), b, ti.c().clone())
                } else if share_b && share_c {
                    let a = ti.a().add(tj.a(), ring).expect("coefficient overflow in reduce");
                    RankOneTerm::new(a, ti.b().clone(), ti.c().clone())
                } else {
                    continue;
                };
                terms.remove(j);
                if merged.has_zero_factor() {
                    terms.remove(i);
                } else {
                    terms[i] = merged;
                }
                continue 'scan;
            }
        }
        break;
    }
    let (n, m, p) = s.format();
    Scheme::from_parts(n, m, p, ring, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;
    use alloc::vec;

    extern crate alloc;

    fn z() -> RingSpec {
        RingSpec::integers()
    }

    #[test]
    fn standard_222_flips_include_the_c_shared_pair() {
        let s = Scheme::standard(2, 2, 2, z());
        let moves = enumerate_flips(&s);
        // Terms 0 and 1 are a11⊗b11⊗c11 and a12⊗b21⊗c11: they share C.
        let fwd = FlipMove {
            term_i: 0,
            term_j: 1,
            shared: FactorPosition::C,
            direction: FlipDirection::Forward,
        };
        let bwd = FlipMove {
            direction: FlipDirection::Backward,
            ..fwd
        };
        assert!(moves.contains(&fwd));
        assert!(moves.contains(&bwd));
        // Enumeration order is the derived lexicographic order.
        let mut sorted = moves.clone();
        sorted.sort();
        assert_eq!(moves, sorted);
    }

    #[test]
    fn no_flips_without_shared_factors() {
        let s = Scheme::standard(2, 2, 2, z());
        // Terms 0 and 7 (a11b11c11, a22b22c22) share nothing.
        let two = Scheme::new(2, 2, 2, z(), vec![s.terms()[0].clone(), s.terms()[7].clone()])
            .unwrap();
        assert!(enumerate_flips(&two).is_empty());
        let single = Scheme::new(2, 2, 2, z(), vec![s.terms()[0].clone()]).unwrap();
        assert!(enumerate_flips(&single).is_empty());
    }

    #[test]
    fn flip_preserves_validity_and_rank() {
        let s = Scheme::standard(2, 2, 2, z());
        let mv = FlipMove {
            term_i: 0,
            term_j: 1,
            shared: FactorPosition::C,
            direction: FlipDirection::Forward,
        };
        let flipped = apply_flip(&s, mv).unwrap();
        assert_eq!(flipped.rank(), 8);
        assert!(flipped.verify().unwrap().valid);
        // Both directions stay valid.
        let bwd = apply_flip(&s, FlipMove { direction: FlipDirection::Backward, ..mv }).unwrap();
        assert!(bwd.verify().unwrap().valid);
    }

    #[test]
    fn inadmissible_moves_are_rejected() {
        let s = Scheme::standard(2, 2, 2, z());
        // Terms 0 and 7 share nothing.
        let mv = FlipMove {
            term_i: 0,
            term_j: 7,
            shared: FactorPosition::A,
            direction: FlipDirection::Forward,
        };
        assert_eq!(apply_flip(&s, mv).unwrap_err(), FlipError::Inadmissible);
        // Reversed indices are not a valid encoding.
        let mv = FlipMove {
            term_i: 1,
            term_j: 0,
            shared: FactorPosition::C,
            direction: FlipDirection::Forward,
        };
        assert_eq!(apply_flip(&s, mv).unwrap_err(), FlipError::Inadmissible);
        // Out of range.
        let mv = FlipMove {
            term_i: 0,
            term_j: 99,
            shared: FactorPosition::C,
            direction: FlipDirection::Forward,
        };
        assert_eq!(apply_flip(&s, mv).unwrap_err(), FlipError::Inadmissible);
    }

    #[test]
    fn reduce_merges_a_split_term() {
        // Split one Strassen term (A, b11+b22, C) into (A, b11, C) + (A, b22, C):
        // still valid, rank 8, and the two pieces share A and C.
        let s = Scheme::strassen(z());
        let t0 = &s.terms()[0];
        let mut terms = s.terms().to_vec();
        terms[0] = RankOneTerm::new(
            t0.a().clone(),
            CoeffMatrix::new(2, 2, vec![1, 0, 0, 0]).unwrap(),
            t0.c().clone(),
        );
        terms.push(RankOneTerm::new(
            t0.a().clone(),
            CoeffMatrix::new(2, 2, vec![0, 0, 0, 1]).unwrap(),
            t0.c().clone(),
        ));
        let split = Scheme::new(2, 2, 2, z(), terms).unwrap();
        assert_eq!(split.rank(), 8);
        assert!(split.verify().unwrap().valid);

        let reduced = reduce(&split);
        assert_eq!(reduced.rank(), 7);
        assert!(reduced.verify().unwrap().valid);
        // Idempotent at the fixpoint.
        assert_eq!(reduce(&reduced), reduced);
    }

    #[test]
    fn reduce_cancels_opposite_terms() {
        // T and T' with equal A, B and opposite C sum to zero: both drop.
        let t0 = Scheme::standard(2, 2, 2, z()).terms()[0].clone();
        let neg_c = CoeffMatrix::new(2, 2, vec![-1, 0, 0, 0]).unwrap();
        let t1 = RankOneTerm::new(t0.a().clone(), t0.b().clone(), neg_c);
        let pair = Scheme::new(2, 2, 2, z(), vec![t0, t1]).unwrap();
        assert_eq!(reduce(&pair).rank(), 0);

        // Padding a valid scheme with such a cancelling pair reduces back to
        // the original rank and stays valid.
        let s = Scheme::standard(2, 2, 2, z());
        let mut terms = s.terms().to_vec();
        let t0 = terms[0].clone();
        terms.push(t0.clone());
        terms.push(RankOneTerm::new(
            t0.a().clone(),
            t0.b().clone(),
            CoeffMatrix::new(2, 2, vec![-1, 0, 0, 0]).unwrap(),
        ));
        let padded = Scheme::new(2, 2, 2, z(), terms).unwrap();
        assert_eq!(padded.rank(), 10);
        assert!(padded.verify().unwrap().valid);
        let reduced = reduce(&padded);
        assert_eq!(reduced.rank(), 8);
        assert!(reduced.verify().unwrap().valid);
    }

    #[test]
    fn reduce_leaves_standard_alone() {
        let s = Scheme::standard(2, 2, 2, z());
        assert_eq!(reduce(&s), s);
    }

    /// A flip can create the two-shared pair that reduce then merges: this
    /// valid rank-8 scheme over Z_2 (reached by a short walk from the
    /// standard algorithm) has no pair sharing two factors, but flipping the
    /// shared A of terms 2 and 6 leaves terms 2 and 3 sharing both B and C.
    #[test]
    fn flip_can_enable_a_reduction() {
        let z2 = RingSpec::prime_field(2).unwrap();
        const TERMS: [[[i64; 4]; 3]; 8] = [
            [[1, 1, 0, 0], [1, 0, 0, 0], [1, 0, 1, 0]],
            [[0, 1, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0]],
            [[1, 0, 1, 0], [1, 0, 0, 1], [0, 0, 1, 1]],
            [[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 1]],
            [[0, 1, 0, 1], [0, 0, 1, 1], [0, 1, 0, 0]],
            [[0, 1, 0, 0], [1, 0, 1, 0], [1, 1, 0, 0]],
            [[1, 0, 1, 0], [1, 1, 0, 0], [0, 0, 0, 1]],
            [[0, 0, 1, 1], [0, 0, 0, 1], [0, 1, 0, 1]],
        ];
        let terms = TERMS
            .iter()
            .map(|[a, b, c]| {
                RankOneTerm::new(
                    CoeffMatrix::new(2, 2, a.to_vec()).unwrap(),
                    CoeffMatrix::new(2, 2, b.to_vec()).unwrap(),
                    CoeffMatrix::new(2, 2, c.to_vec()).unwrap(),
                )
            })
            .collect();
        let s = Scheme::new(2, 2, 2, z2, terms).unwrap();
        assert!(s.verify().unwrap().valid);
        assert_eq!(reduce(&s), s, "no pair shares two factors before the flip");

        let mv = FlipMove {
            term_i: 2,
            term_j: 6,
            shared: FactorPosition::A,
            direction: FlipDirection::Forward,
        };
        let flipped = apply_flip(&s, mv).unwrap();
        assert_eq!(flipped.rank(), 8);
        assert!(flipped.verify().unwrap().valid);
        let (t2, t3) = (&flipped.terms()[2], &flipped.terms()[3]);
        assert_eq!(t2.b(), t3.b());
        assert_eq!(t2.c(), t3.c());

        let reduced = reduce(&flipped);
        assert_eq!(reduced.rank(), 7, "reduce merges the new pair");
        assert!(reduced.verify().unwrap().valid);
    }
}
