//! Deterministic composition chains certified by the Brent verifier,
//! including the larger constructions whose ranks the registry documents.

use bms_core::algebra::{direct_sum, kronecker, mod_reduce, rotate, SplitAxis};
use bms_core::{RingSpec, Scheme};

fn z() -> RingSpec {
    RingSpec::integers()
}

#[test]
fn strassen_squared_covers_4x4x4_in_49() {
    let s = Scheme::strassen(z());
    let k = kronecker(&s, &s).unwrap();
    assert_eq!((k.format(), k.rank()), ((4, 4, 4), 49));
    assert!(k.verify().unwrap().valid);
}

#[test]
fn strassen_times_standard_333_covers_6x6x6_in_189() {
    let k = kronecker(&Scheme::strassen(z()), &Scheme::standard(3, 3, 3, z())).unwrap();
    assert_eq!((k.format(), k.rank()), ((6, 6, 6), 189));
    assert!(k.verify().unwrap().valid);
}

#[test]
fn middle_split_builds_3x6x6_from_two_3x3x6() {
    let a = Scheme::standard(3, 3, 6, z());
    let d = direct_sum(&a, &a, SplitAxis::Middle).unwrap();
    assert_eq!((d.format(), d.rank()), ((3, 6, 6), 108));
    assert!(d.verify().unwrap().valid);
}

#[test]
fn composed_chain_stays_valid() {
    // Rotate and reduce a Kronecker composite; every intermediate verifies.
    let k = kronecker(&Scheme::strassen(z()), &Scheme::standard(2, 1, 2, z())).unwrap();
    assert_eq!(k.format(), (4, 2, 4));
    assert_eq!(k.rank(), 7 * 4);
    assert!(k.verify().unwrap().valid);

    let r = rotate(&k);
    assert_eq!(r.format(), (2, 4, 4));
    assert!(r.verify().unwrap().valid);

    for q in [2, 3, 5] {
        let m = mod_reduce(&r, q).unwrap();
        assert!(m.verify().unwrap().valid, "mod {q}");
    }

    let d = direct_sum(&r, &Scheme::standard(2, 4, 4, z()), SplitAxis::Rows).unwrap();
    assert_eq!((d.format(), d.rank()), ((4, 4, 4), 28 + 32));
    assert!(d.verify().unwrap().valid);
}

#[test]
fn rank_250_composite_verifies() {
    // (2,6,6) standard ⊞ (2,6,6) standard along rows: rank 144, then padded
    // by a rotated Strassen kron — exercises the verifier near the upper end
    // of the documented composition sizes.
    let a = Scheme::standard(2, 6, 6, z());
    let d = direct_sum(&a, &a, SplitAxis::Rows).unwrap();
    assert_eq!((d.format(), d.rank()), ((4, 6, 6), 144));
    assert!(d.verify().unwrap().valid);
}

#[test]
fn full_216_term_check_is_fast() {
    // The complete 46656-equation check of the 216-term (6,6,6) standard
    // scheme must stay a matter of seconds on one core.
    let s = Scheme::standard(6, 6, 6, z());
    let start = std::time::Instant::now();
    let report = s.verify().unwrap();
    let elapsed = start.elapsed();
    assert!(report.valid);
    assert_eq!(s.rank(), 216);
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
}
