//! Executing schemes: compilation into a straight-line bilinear program,
//! exact evaluation over user-supplied coefficient rings (commutativity is
//! never assumed), and the naive-multiplication oracle.
//!
//! A program computes, for an `n×m` matrix `X` and an `m×p` matrix `Y` over
//! a ring `R`:
//!
//! ```text
//!   P_t = (Σ_{i,j} a_{i,j}^{(t)} · X[i,j]) · (Σ_{j,k} b_{j,k}^{(t)} · Y[j,k])
//!   Z[i,k] = Σ_t c_{k,i}^{(t)} · P_t
//! ```
//!
//! The left operand of every product is built from `X` entries only and the
//! right from `Y` entries only, which is what makes the algorithm sound over
//! noncommutative rings. Scheme coefficients never become ring elements:
//! they act on `R` through the integers (signed repeated addition), with
//! prime-field coefficients acting via their canonical lift in `[0, p)`.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::ring::RingSpec;
use crate::scheme::Scheme;

/// A sparse linear form: `(slot, coefficient)` pairs with ascending slots.
pub type LinForm = Vec<(usize, i64)>;

/// A scheme compiled to a straight-line program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearProgram {
    n: usize,
    m: usize,
    p: usize,
    ring: RingSpec,
    /// One form per product, over the `n·m` slots of `X` (row-major).
    left: Vec<LinForm>,
    /// One form per product, over the `m·p` slots of `Y` (row-major).
    right: Vec<LinForm>,
    /// One form per output entry (row-major over `n·p`), over the products.
    output: Vec<LinForm>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecError {
    /// An input slice does not match the program's format.
    ShapeMismatch { expected: usize, got: usize },
}

impl fmt::Display for ExecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExecError::ShapeMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
        }
    }
}

impl core::error::Error for ExecError {}

/// A coefficient ring supplied by the caller. Multiplication is *not*
/// assumed commutative.
pub trait RingAdapter {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Integer-scalar action `k · x`, by default signed double-and-add.
    fn scalar_mul(&self, k: i64, x: &Self::Elem) -> Self::Elem {
        if k == 0 {
            return self.zero();
        }
        let mut remaining = k.unsigned_abs();
        let mut base = x.clone();
        let mut acc: Option<Self::Elem> = None;
        while remaining > 0 {
            if remaining & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => self.add(&a, &base),
                });
            }
            remaining >>= 1;
            if remaining > 0 {
                base = self.add(&base, &base);
            }
        }
        let total = acc.expect("k is nonzero");
        if k < 0 {
            self.neg(&total)
        } else {
            total
        }
    }
}

/// Plain signed 64-bit integers; overflow panics rather than wraps.
#[derive(Debug, Clone, Copy, Default)]
pub struct I64Ring;

impl RingAdapter for I64Ring {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("i64 overflow in ring addition")
    }
    fn neg(&self, a: &i64) -> i64 {
        a.checked_neg().expect("i64 overflow in ring negation")
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("i64 overflow in ring multiplication")
    }
    fn scalar_mul(&self, k: i64, x: &i64) -> i64 {
        k.checked_mul(*x).expect("i64 overflow in scalar action")
    }
}

/// The prime field `Z_p` with elements as canonical residues.
#[derive(Debug, Clone, Copy)]
pub struct PrimeFieldRing {
    modulus: i64,
}

impl PrimeFieldRing {
    /// `p` must be a prime below `2^31`; use [`RingSpec::prime_field`] to
    /// validate user input first.
    pub fn new(p: u64) -> Self {
        let spec = RingSpec::prime_field(p).expect("modulus must be a small prime");
        PrimeFieldRing {
            modulus: spec.modulus().unwrap() as i64,
        }
    }
}

impl RingAdapter for PrimeFieldRing {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        (a + b) % self.modulus
    }
    fn neg(&self, a: &i64) -> i64 {
        (-a).rem_euclid(self.modulus)
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a * b % self.modulus
    }
    fn scalar_mul(&self, k: i64, x: &i64) -> i64 {
        k.rem_euclid(self.modulus) * x % self.modulus
    }
}

/// Square `dim × dim` matrices over `i64` (or over `Z_p` when a modulus is
/// given), stored row-major. Noncommutative for `dim ≥ 2` — the standard
/// stress test for operand-side purity.
#[derive(Debug, Clone, Copy)]
pub struct MatrixRing {
    dim: usize,
    modulus: Option<i64>,
}

impl MatrixRing {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0);
        MatrixRing { dim, modulus: None }
    }

    pub fn mod_p(dim: usize, p: u64) -> Self {
        assert!(dim > 0);
        let spec = RingSpec::prime_field(p).expect("modulus must be a small prime");
        MatrixRing {
            dim,
            modulus: Some(spec.modulus().unwrap() as i64),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn canon(&self, v: i64) -> i64 {
        match self.modulus {
            None => v,
            Some(p) => v.rem_euclid(p),
        }
    }
}

impl RingAdapter for MatrixRing {
    type Elem = Vec<i64>;

    fn zero(&self) -> Vec<i64> {
        vec![0; self.dim * self.dim]
    }

    fn add(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.canon(x.checked_add(y).expect("matrix entry overflow")))
            .collect()
    }

    fn neg(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|&x| self.canon(-x)).collect()
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        let d = self.dim;
        let mut out = vec![0i64; d * d];
        for i in 0..d {
            for k in 0..d {
                let mut acc = 0i64;
                for j in 0..d {
                    let prod = a[i * d + j]
                        .checked_mul(b[j * d + k])
                        .expect("matrix entry overflow");
                    acc = self.canon(acc.checked_add(prod).expect("matrix entry overflow"));
                }
                out[i * d + k] = acc;
            }
        }
        out
    }
}

/// Compiles a scheme into its straight-line program.
///
/// Structural validity suffices; correctness of the evaluated program over a
/// ring is inherited from the scheme's validity over a compatible ring.
pub fn compile(s: &Scheme) -> BilinearProgram {
    let (n, m, p) = s.format();
    let r = s.rank();
    let mut left = Vec::with_capacity(r);
    let mut right = Vec::with_capacity(r);
    for term in s.terms() {
        let mut lf = LinForm::new();
        for i in 0..n {
            for j in 0..m {
                let v = term.a().get(i, j);
                if v != 0 {
                    lf.push((i * m + j, v));
                }
            }
        }
        let mut rf = LinForm::new();
        for j in 0..m {
            for k in 0..p {
                let v = term.b().get(j, k);
                if v != 0 {
                    rf.push((j * p + k, v));
                }
            }
        }
        left.push(lf);
        right.push(rf);
    }
    let mut output = Vec::with_capacity(n * p);
    for i in 0..n {
        for k in 0..p {
            let mut of = LinForm::new();
            for (t, term) in s.terms().iter().enumerate() {
                let v = term.c().get(k, i);
                if v != 0 {
                    of.push((t, v));
                }
            }
            output.push(of);
        }
    }
    BilinearProgram {
        n,
        m,
        p,
        ring: s.ring(),
        left,
        right,
        output,
    }
}

impl BilinearProgram {
    pub fn format(&self) -> (usize, usize, usize) {
        (self.n, self.m, self.p)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    /// The number of ring multiplications the program performs — the rank of
    /// the source scheme.
    pub fn multiplication_count(&self) -> usize {
        self.left.len()
    }

    pub fn left_forms(&self) -> &[LinForm] {
        &self.left
    }

    pub fn right_forms(&self) -> &[LinForm] {
        &self.right
    }

    pub fn output_forms(&self) -> &[LinForm] {
        &self.output
    }

    /// Evaluates the program on row-major `X` (`n·m` entries) and `Y`
    /// (`m·p` entries), returning the row-major `n·p` product.
    pub fn evaluate<R: RingAdapter>(
        &self,
        x: &[R::Elem],
        y: &[R::Elem],
        ring: &R,
    ) -> Result<Vec<R::Elem>, ExecError> {
        if x.len() != self.n * self.m {
            return Err(ExecError::ShapeMismatch {
                expected: self.n * self.m,
                got: x.len(),
            });
        }
        if y.len() != self.m * self.p {
            return Err(ExecError::ShapeMismatch {
                expected: self.m * self.p,
                got: y.len(),
            });
        }
        let eval_form = |form: &LinForm, slots: &[R::Elem]| {
            let mut acc = ring.zero();
            for &(slot, coeff) in form {
                acc = ring.add(&acc, &ring.scalar_mul(coeff, &slots[slot]));
            }
            acc
        };
        let products: Vec<R::Elem> = self
            .left
            .iter()
            .zip(&self.right)
            .map(|(lf, rf)| ring.mul(&eval_form(lf, x), &eval_form(rf, y)))
            .collect();
        Ok(self.output.iter().map(|of| eval_form(of, &products)).collect())
    }

    /// Renders the program as a deterministic, language-neutral straight-line
    /// listing with 1-based indices, followed by operation counts.
    pub fn pseudocode(&self) -> String {
        let r = self.multiplication_count();
        let mut out = String::new();
        out.push_str(&format!(
            "bilinear-program v1 {} {} {} {}\n",
            self.n, self.m, self.p, r
        ));

        let mut additions: u64 = 0;
        let mut scalar_muls: u64 = 0;
        let mut count_form = |form: &LinForm| {
            if !form.is_empty() {
                additions += form.len() as u64 - 1;
            }
            scalar_muls += form.iter().filter(|&&(_, c)| !self.ring.is_pm_one(c)).count() as u64;
        };

        for t in 0..r {
            count_form(&self.left[t]);
            count_form(&self.right[t]);
            let lhs = render_form(&self.left[t], |slot| {
                format!("X[{},{}]", slot / self.m + 1, slot % self.m + 1)
            });
            let rhs = render_form(&self.right[t], |slot| {
                format!("Y[{},{}]", slot / self.p + 1, slot % self.p + 1)
            });
            out.push_str(&format!("P_{} = ({lhs}) * ({rhs})\n", t + 1));
        }
        for i in 0..self.n {
            for k in 0..self.p {
                let form = &self.output[i * self.p + k];
                count_form(form);
                let rhs = render_form(form, |t| format!("P_{}", t + 1));
                out.push_str(&format!("Z[{},{}] = {rhs}\n", i + 1, k + 1));
            }
        }
        out.push_str(&format!("# multiplications: {r}\n"));
        out.push_str(&format!("# additions: {additions}\n"));
        out.push_str(&format!("# scalar multiplications: {scalar_muls}\n"));
        out
    }
}

fn render_form(form: &LinForm, operand: impl Fn(usize) -> String) -> String {
    if form.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (idx, &(slot, coeff)) in form.iter().enumerate() {
        let magnitude = coeff.unsigned_abs();
        if idx == 0 {
            if coeff < 0 {
                out.push('-');
            }
        } else if coeff < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if magnitude != 1 {
            out.push_str(&format!("{magnitude}*"));
        }
        out.push_str(&operand(slot));
    }
    out
}

/// The classical triple loop — the oracle [`BilinearProgram::evaluate`] is
/// checked against. Left factors always come from `X`, right from `Y`.
pub fn naive_multiply<R: RingAdapter>(
    x: &[R::Elem],
    y: &[R::Elem],
    n: usize,
    m: usize,
    p: usize,
    ring: &R,
) -> Result<Vec<R::Elem>, ExecError> {
    if x.len() != n * m {
        return Err(ExecError::ShapeMismatch {
            expected: n * m,
            got: x.len(),
        });
    }
    if y.len() != m * p {
        return Err(ExecError::ShapeMismatch {
            expected: m * p,
            got: y.len(),
        });
    }
    let mut out = Vec::with_capacity(n * p);
    for i in 0..n {
        for k in 0..p {
            let mut acc = ring.zero();
            for j in 0..m {
                acc = ring.add(&acc, &ring.mul(&x[i * m + j], &y[j * p + k]));
            }
            out.push(acc);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    extern crate alloc;

    fn z() -> RingSpec {
        RingSpec::integers()
    }

    #[test]
    fn compile_counts_match_rank() {
        assert_eq!(compile(&Scheme::strassen(z())).multiplication_count(), 7);
        assert_eq!(
            compile(&Scheme::standard(2, 2, 2, z())).multiplication_count(),
            8
        );
    }

    #[test]
    fn standard_outputs_have_unit_support() {
        let prog = compile(&Scheme::standard(2, 2, 2, z()));
        for form in prog.output_forms() {
            assert_eq!(form.len(), 2);
            assert!(form.iter().all(|&(_, c)| c == 1));
        }
    }

    #[test]
    fn strassen_on_integers() {
        let prog = compile(&Scheme::strassen(z()));
        let x = [1i64, 2, 3, 4];
        let y = [5i64, 6, 7, 8];
        let got = prog.evaluate(&x, &y, &I64Ring).unwrap();
        assert_eq!(got, vec![19, 22, 43, 50]);
        assert_eq!(
            naive_multiply(&x, &y, 2, 2, 2, &I64Ring).unwrap(),
            vec![19, 22, 43, 50]
        );
    }

    #[test]
    fn zero_input_gives_zero_output() {
        let prog = compile(&Scheme::strassen(z()));
        let x = [0i64; 4];
        let y = [5i64, 6, 7, 8];
        assert_eq!(prog.evaluate(&x, &y, &I64Ring).unwrap(), vec![0; 4]);
    }

    #[test]
    fn naive_1x1_is_a_single_multiplication() {
        let got = naive_multiply(&[3i64], &[4i64], 1, 1, 1, &I64Ring).unwrap();
        assert_eq!(got, vec![12]);
    }

    #[test]
    fn matrix_ring_is_noncommutative() {
        let ring = MatrixRing::new(2);
        let a = vec![0i64, 1, 0, 0];
        let b = vec![0i64, 0, 1, 0];
        let ab = ring.mul(&a, &b);
        let ba = ring.mul(&b, &a);
        assert_ne!(ab, ba);
        // And naive multiplication respects operand sides: swapping the
        // inputs of a 1×1 product changes the result.
        let xy = naive_multiply(core::slice::from_ref(&a), core::slice::from_ref(&b), 1, 1, 1, &ring).unwrap();
        let yx = naive_multiply(core::slice::from_ref(&b), core::slice::from_ref(&a), 1, 1, 1, &ring).unwrap();
        assert_ne!(xy, yx);
    }

    #[test]
    fn evaluate_matches_naive_on_matrix_entries() {
        let prog = compile(&Scheme::strassen(z()));
        let ring = MatrixRing::new(2);
        let mut rng = crate::walk::SplitMix64::new(77);
        let mut rand_mat = || -> Vec<Vec<i64>> {
            (0..4)
                .map(|_| (0..4).map(|_| rng.below(19) as i64 - 9).collect())
                .collect()
        };
        for _ in 0..25 {
            let x = rand_mat();
            let y = rand_mat();
            let fast = prog.evaluate(&x, &y, &ring).unwrap();
            let slow = naive_multiply(&x, &y, 2, 2, 2, &ring).unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn operand_sides_are_pure() {
        for s in [Scheme::strassen(z()), Scheme::standard(3, 4, 2, z())] {
            let prog = compile(&s);
            let (n, m, p) = prog.format();
            for form in prog.left_forms() {
                assert!(form.iter().all(|&(slot, _)| slot < n * m));
            }
            for form in prog.right_forms() {
                assert!(form.iter().all(|&(slot, _)| slot < m * p));
            }
            for form in prog.output_forms() {
                assert!(form.iter().all(|&(t, _)| t < prog.multiplication_count()));
            }
        }
    }

    #[test]
    fn pseudocode_strassen_first_line() {
        let text = compile(&Scheme::strassen(z())).pseudocode();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("bilinear-program v1 2 2 2 7"));
        assert_eq!(
            lines.next(),
            Some("P_1 = (X[1,1] + X[2,2]) * (Y[1,1] + Y[2,2])")
        );
        assert!(text.contains("# multiplications: 7\n"));
    }

    #[test]
    fn pseudocode_trivial_program() {
        let text = compile(&Scheme::standard(1, 1, 1, z())).pseudocode();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "bilinear-program v1 1 1 1 1");
        assert_eq!(lines[1], "P_1 = (X[1,1]) * (Y[1,1])");
        assert_eq!(lines[2], "Z[1,1] = P_1");
        assert_eq!(lines[3], "# multiplications: 1");
        assert_eq!(lines[4], "# additions: 0");
        assert_eq!(lines[5], "# scalar multiplications: 0");
    }

    #[test]
    fn scalar_action_default_is_signed_repeated_addition() {
        // Exercise the default double-and-add path through MatrixRing.
        let ring = MatrixRing::new(2);
        let x = vec![1i64, 2, 3, 4];
        assert_eq!(ring.scalar_mul(3, &x), vec![3, 6, 9, 12]);
        assert_eq!(ring.scalar_mul(-2, &x), vec![-2, -4, -6, -8]);
        assert_eq!(ring.scalar_mul(0, &x), vec![0, 0, 0, 0]);
    }

    #[test]
    fn shape_mismatch_is_detected() {
        let prog = compile(&Scheme::strassen(z()));
        assert!(matches!(
            prog.evaluate(&[1i64, 2, 3], &[1, 2, 3, 4], &I64Ring),
            Err(ExecError::ShapeMismatch { expected: 4, got: 3 })
        ));
    }
}
