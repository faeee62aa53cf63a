//! Schemes: ordered lists of rank-one terms targeting the
//! matrix-multiplication tensor, plus the two reference generators.

use alloc::vec::Vec;
use core::fmt;

use crate::matrix::CoeffMatrix;
use crate::ring::RingSpec;

/// Structural rejection of a matrix or scheme.
///
/// Distinct from an *invalid* scheme: a structurally sound scheme may still
/// fail the Brent equations, which is a verification result, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureError {
    /// A matrix dimension is zero.
    EmptyShape { rows: usize, cols: usize },
    /// Entry vector length does not match `rows × cols`.
    EntryCount { rows: usize, cols: usize, got: usize },
    /// A format dimension is zero.
    BadFormat { n: usize, m: usize, p: usize },
    /// A term's factor shapes do not match the scheme format.
    TermShape { term: usize },
    /// Exact integer arithmetic left the `i64` range.
    Overflow,
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::EmptyShape { rows, cols } => {
                write!(f, "matrix shape {rows}x{cols} has an empty dimension")
            }
            StructureError::EntryCount { rows, cols, got } => {
                write!(f, "expected {rows}x{cols} = {} entries, got {got}", rows * cols)
            }
            StructureError::BadFormat { n, m, p } => {
                write!(f, "format ({n},{m},{p}) has a zero dimension")
            }
            StructureError::TermShape { term } => {
                write!(f, "term {term} has factor shapes that do not match the format")
            }
            StructureError::Overflow => write!(f, "coefficient arithmetic overflowed i64"),
        }
    }
}

impl core::error::Error for StructureError {}

/// One rank-one summand `A ⊗ B ⊗ C`.
///
/// For a scheme of format `(n, m, p)` the factor shapes are `n×m`, `m×p` and
/// `p×n`. Note the third factor is `p×n`, not `n×p`: the target tensor's
/// third leg indexes `c_{k,i}`, and appendix-style listings print it that
/// way, so transcription is position-for-position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankOneTerm {
    a: CoeffMatrix,
    b: CoeffMatrix,
    c: CoeffMatrix,
}

impl RankOneTerm {
    pub fn new(a: CoeffMatrix, b: CoeffMatrix, c: CoeffMatrix) -> Self {
        RankOneTerm { a, b, c }
    }

    pub fn a(&self) -> &CoeffMatrix {
        &self.a
    }

    pub fn b(&self) -> &CoeffMatrix {
        &self.b
    }

    pub fn c(&self) -> &CoeffMatrix {
        &self.c
    }

    /// A term with an all-zero factor contributes the zero tensor.
    pub fn has_zero_factor(&self) -> bool {
        self.a.is_zero() || self.b.is_zero() || self.c.is_zero()
    }

    fn canon(&self, ring: RingSpec) -> RankOneTerm {
        RankOneTerm {
            a: self.a.canon(ring),
            b: self.b.canon(ring),
            c: self.c.canon(ring),
        }
    }
}

/// A bilinear matrix-multiplication scheme.
///
/// Immutable after construction; the rank is the term count. Constructors
/// canonicalize every coefficient for the ring and drop terms that have an
/// all-zero factor (such terms only inflate the rank).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scheme {
    n: usize,
    m: usize,
    p: usize,
    ring: RingSpec,
    terms: Vec<RankOneTerm>,
}

impl Scheme {
    /// Builds a scheme, validating shapes, canonicalizing coefficients and
    /// silently dropping zero terms. Use [`Scheme::new_reporting`] when the
    /// caller needs to know which terms were dropped.
    pub fn new(
        n: usize,
        m: usize,
        p: usize,
        ring: RingSpec,
        terms: Vec<RankOneTerm>,
    ) -> Result<Self, StructureError> {
        Self::new_reporting(n, m, p, ring, terms).map(|(s, _)| s)
    }

    /// Like [`Scheme::new`], also returning the original indices of dropped
    /// zero terms.
    pub fn new_reporting(
        n: usize,
        m: usize,
        p: usize,
        ring: RingSpec,
        terms: Vec<RankOneTerm>,
    ) -> Result<(Self, Vec<usize>), StructureError> {
        if n == 0 || m == 0 || p == 0 {
            return Err(StructureError::BadFormat { n, m, p });
        }
        let mut kept = Vec::with_capacity(terms.len());
        let mut dropped = Vec::new();
        for (idx, term) in terms.into_iter().enumerate() {
            if term.a.shape() != (n, m) || term.b.shape() != (m, p) || term.c.shape() != (p, n) {
                return Err(StructureError::TermShape { term: idx });
            }
            let term = term.canon(ring);
            if term.has_zero_factor() {
                dropped.push(idx);
            } else {
                kept.push(term);
            }
        }
        Ok((
            Scheme {
                n,
                m,
                p,
                ring,
                terms: kept,
            },
            dropped,
        ))
    }

    /// The classical algorithm: `n·m·p` elementary tensors
    /// `a_{i,j} ⊗ b_{j,k} ⊗ c_{k,i}`, enumerated with `i` outermost, then
    /// `k`, then `j` — the order in which such listings are conventionally
    /// written, so consecutive terms share their `C` factor.
    pub fn standard(n: usize, m: usize, p: usize, ring: RingSpec) -> Self {
        assert!(n > 0 && m > 0 && p > 0, "format dimensions must be positive");
        let mut terms = Vec::with_capacity(n * m * p);
        for i in 0..n {
            for k in 0..p {
                for j in 0..m {
                    terms.push(RankOneTerm::new(
                        CoeffMatrix::unit(n, m, i, j),
                        CoeffMatrix::unit(m, p, j, k),
                        CoeffMatrix::unit(p, n, k, i),
                    ));
                }
            }
        }
        Scheme::new(n, m, p, ring, terms).expect("standard scheme is structurally valid")
    }

    /// Strassen's seven-term scheme for format `(2,2,2)`, with coefficients
    /// in `{-1, 0, 1}` mapped into the requested ring.
    pub fn strassen(ring: RingSpec) -> Self {
        // Rows of each factor, written out per term: A (2x2), B (2x2), C (2x2, k-by-i).
        const TERMS: [[[i64; 4]; 3]; 7] = [
            // (a11+a22) (b11+b22) (c11+c22)
            [[1, 0, 0, 1], [1, 0, 0, 1], [1, 0, 0, 1]],
            // (a21+a22) (b11) (c12-c22)
            [[0, 0, 1, 1], [1, 0, 0, 0], [0, 1, 0, -1]],
            // (a11) (b12-b22) (c21+c22)
            [[1, 0, 0, 0], [0, 1, 0, -1], [0, 0, 1, 1]],
            // (a22) (b21-b11) (c11+c12)
            [[0, 0, 0, 1], [-1, 0, 1, 0], [1, 1, 0, 0]],
            // (a11+a12) (b22) (c21-c11)
            [[1, 1, 0, 0], [0, 0, 0, 1], [-1, 0, 1, 0]],
            // (a21-a11) (b11+b12) (c22)
            [[-1, 0, 1, 0], [1, 1, 0, 0], [0, 0, 0, 1]],
            // (a12-a22) (b21+b22) (c11)
            [[0, 1, 0, -1], [0, 0, 1, 1], [1, 0, 0, 0]],
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
        Scheme::new(2, 2, 2, ring, terms).expect("strassen scheme is structurally valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn format(&self) -> (usize, usize, usize) {
        (self.n, self.m, self.p)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn terms(&self) -> &[RankOneTerm] {
        &self.terms
    }

    /// The rank of this representation: its term count.
    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    /// A copy with term `idx` removed. Useful for ablation checks: deleting
    /// any term of a valid scheme must break verification.
    pub fn without_term(&self, idx: usize) -> Scheme {
        assert!(idx < self.terms.len());
        let mut terms = self.terms.clone();
        terms.remove(idx);
        Scheme {
            n: self.n,
            m: self.m,
            p: self.p,
            ring: self.ring,
            terms,
        }
    }

    /// Internal constructor for operations that already guarantee shapes,
    /// canonical form and absence of zero terms.
    pub(crate) fn from_parts(
        n: usize,
        m: usize,
        p: usize,
        ring: RingSpec,
        terms: Vec<RankOneTerm>,
    ) -> Scheme {
        debug_assert!(terms.iter().all(|t| {
            t.a.shape() == (n, m)
                && t.b.shape() == (m, p)
                && t.c.shape() == (p, n)
                && !t.has_zero_factor()
        }));
        Scheme { n, m, p, ring, terms }
    }
}
