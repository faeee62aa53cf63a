//! Exact verification of a scheme against the matrix-multiplication tensor.
//!
//! A scheme of format `(n, m, p)` is valid precisely when its terms satisfy
//! the Brent equations: for every `(i, i') ∈ [n]²`, `(j, j') ∈ [m]²`,
//! `(k, k') ∈ [p]²`,
//!
//! ```text
//!   Σ_r  A_r[i,j] · B_r[j',k] · C_r[k',i']  =  [i=i'] [j=j'] [k=k']
//! ```
//!
//! with all arithmetic in the scheme's ring. That is `n²m²p²` equations;
//! the full report evaluates every one of them.

use alloc::vec;

use crate::scheme::{Scheme, StructureError};

/// Index of one Brent equation, in the order `(i, i', j, j', k, k')`.
pub type BrentIndex = (usize, usize, usize, usize, usize, usize);

/// Outcome of a full verification pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// True iff no equation is violated.
    pub valid: bool,
    /// Number of violated equations out of `n²m²p²`.
    pub violated: u64,
    /// The lexicographically smallest violated equation index, if any.
    pub first_violation: Option<BrentIndex>,
}

impl Scheme {
    /// Checks all `n²m²p²` Brent equations and reports the violation count.
    ///
    /// Deterministic: equations are scanned in lexicographic
    /// `(i, i', j, j', k, k')` order and `first_violation` is the smallest
    /// failing index. The only error is coefficient overflow, which can only
    /// occur over `Z`.
    pub fn verify(&self) -> Result<VerificationReport, StructureError> {
        self.brent_scan(false)
    }

    /// Early-exit validity check: stops at the first violated equation.
    ///
    /// Same validity answer as [`Scheme::verify`], but the violation count is
    /// not part of the contract.
    pub fn verify_quick(&self) -> Result<bool, StructureError> {
        Ok(self.brent_scan(true)?.valid)
    }

    fn brent_scan(&self, early_exit: bool) -> Result<VerificationReport, StructureError> {
        let (n, m, p) = self.format();
        let ring = self.ring();
        let one = ring.one();
        let terms = self.terms();
        let r = terms.len();

        // Hoisted per-term factor values: av depends on (i, j), ab on (i, j, j', k).
        let mut av = vec![0i64; r];
        let mut ab = vec![0i64; r];

        let mut violated: u64 = 0;
        let mut first_violation = None;

        for i in 0..n {
            for i2 in 0..n {
                for j in 0..m {
                    for (t, term) in terms.iter().enumerate() {
                        av[t] = term.a().get(i, j);
                    }
                    for j2 in 0..m {
                        for k in 0..p {
                            for (t, term) in terms.iter().enumerate() {
                                ab[t] = if av[t] == 0 {
                                    0
                                } else {
                                    ring.mul(av[t], term.b().get(j2, k))
                                        .ok_or(StructureError::Overflow)?
                                };
                            }
                            for k2 in 0..p {
                                let mut acc = 0i64;
                                for (t, term) in terms.iter().enumerate() {
                                    if ab[t] == 0 {
                                        continue;
                                    }
                                    let prod = ring
                                        .mul(ab[t], term.c().get(k2, i2))
                                        .ok_or(StructureError::Overflow)?;
                                    acc = ring.add(acc, prod).ok_or(StructureError::Overflow)?;
                                }
                                let want = if i == i2 && j == j2 && k == k2 { one } else { 0 };
                                if acc != want {
                                    violated += 1;
                                    if first_violation.is_none() {
                                        first_violation = Some((i, i2, j, j2, k, k2));
                                    }
                                    if early_exit {
                                        return Ok(VerificationReport {
                                            valid: false,
                                            violated,
                                            first_violation,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        Ok(VerificationReport {
            valid: violated == 0,
            violated,
            first_violation,
        })
    }
}
