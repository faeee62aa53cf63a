//! Coefficient rings: the integers `Z` and prime fields `Z_p`.
//!
//! Coefficients are always stored as `i64` in canonical form — arbitrary
//! signed integers for `Z`, residues in `[0, p)` for `Z_p` — so equality of
//! coefficients (and of whole factors, which the flip moves depend on) is
//! plain bitwise equality. All ring operations are exact; integer overflow
//! is detected, never wrapped.

use core::fmt;

/// Largest admissible prime-field modulus.
///
/// Canonical residues are below the modulus, so with `p ≤ 2^31 - 1` the
/// product of two residues fits an `i64` and modular arithmetic needs no
/// widening.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// The exact coefficient ring of a scheme: `Z`, or `Z_p` for a small prime p.
///
/// Construct with [`RingSpec::integers`] or [`RingSpec::prime_field`]; the
/// latter checks primality by trial division, so a value of this type always
/// names a real ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSpec {
    modulus: Option<u64>,
}

/// Rejected ring construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingError {
    /// The requested modulus is not a prime number.
    NotPrime(u64),
    /// The requested modulus exceeds [`MAX_MODULUS`].
    ModulusTooLarge(u64),
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            RingError::ModulusTooLarge(p) => {
                write!(f, "modulus {p} exceeds the maximum {MAX_MODULUS}")
            }
        }
    }
}

impl core::error::Error for RingError {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl RingSpec {
    /// The ring of integers.
    pub const fn integers() -> Self {
        RingSpec { modulus: None }
    }

    /// The prime field `Z_p`. Fails if `p` is not prime or is too large.
    pub fn prime_field(p: u64) -> Result<Self, RingError> {
        if p > MAX_MODULUS {
            return Err(RingError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(RingSpec { modulus: Some(p) })
    }

    /// The field modulus, or `None` for `Z`.
    pub fn modulus(self) -> Option<u64> {
        self.modulus
    }

    pub fn is_prime_field(self) -> bool {
        self.modulus.is_some()
    }

    /// Canonical form of a coefficient: the identity on `Z`, the residue in
    /// `[0, p)` on `Z_p`.
    pub fn canon(self, v: i64) -> i64 {
        match self.modulus {
            None => v,
            Some(p) => v.rem_euclid(p as i64),
        }
    }

    /// Exact sum of two canonical coefficients. `None` signals `i64`
    /// overflow, which can only happen over `Z`.
    pub fn add(self, a: i64, b: i64) -> Option<i64> {
        match self.modulus {
            None => a.checked_add(b),
            Some(p) => Some((a + b) % p as i64),
        }
    }

    /// Exact difference of two canonical coefficients.
    pub fn sub(self, a: i64, b: i64) -> Option<i64> {
        match self.modulus {
            None => a.checked_sub(b),
            Some(p) => Some((a - b).rem_euclid(p as i64)),
        }
    }

    /// Exact product of two canonical coefficients.
    pub fn mul(self, a: i64, b: i64) -> Option<i64> {
        match self.modulus {
            None => a.checked_mul(b),
            Some(p) => Some(a * b % p as i64),
        }
    }

    /// Additive inverse in canonical form.
    pub fn neg(self, a: i64) -> Option<i64> {
        match self.modulus {
            None => a.checked_neg(),
            Some(p) => Some((-a).rem_euclid(p as i64)),
        }
    }

    /// The multiplicative unit (canonical in every supported ring).
    pub fn one(self) -> i64 {
        1
    }

    /// Whether a canonical coefficient is the unit or its negative. Used for
    /// operation counting: scaling by `±1` is an addition or subtraction,
    /// anything else is a genuine scalar multiplication.
    pub fn is_pm_one(self, v: i64) -> bool {
        match self.modulus {
            None => v == 1 || v == -1,
            Some(2) => v == 1,
            Some(p) => v == 1 || v == p as i64 - 1,
        }
    }
}

impl fmt::Display for RingSpec {
    // Rendered with the same tokens the file format uses: "Z" / "Zp <p>".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "Z"),
            Some(p) => write!(f, "Zp {p}"),
        }
    }
}
