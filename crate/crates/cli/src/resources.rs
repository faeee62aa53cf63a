//! Bundled reference data, embedded at compile time.
//!
//! The two rank-56 schemes are transcribed position-for-position from their
//! published listings (with overbar minus signs rendered as ordinary leading
//! minus signs) and are certified by the Brent verifier in the test suite.
//! The files keep the listing's term order; canonical order only appears on
//! re-serialization.

/// Rank-56 scheme for format (2,6,6) over Z.
pub const SCHEME_2X6X6_R56: &str = include_str!("../resources/2x6x6_r56.bms");

/// Rank-56 scheme for format (3,4,6) over Z.
pub const SCHEME_3X4X6_R56: &str = include_str!("../resources/3x4x6_r56.bms");

/// Strassen's rank-7 scheme for format (2,2,2) over Z.
pub const SCHEME_STRASSEN: &str = include_str!("../resources/strassen.bms");

/// The known-rank table for formats (n,m,6), tab-separated with a header row:
/// `n m p naive best star ours`.
pub const KNOWN_RANKS_NM6_TSV: &str = include_str!("../resources/known_ranks_nm6.tsv");

/// Every bundled scheme file, by name.
pub fn bundled_schemes() -> [(&'static str, &'static str); 3] {
    [
        ("2x6x6_r56.bms", SCHEME_2X6X6_R56),
        ("3x4x6_r56.bms", SCHEME_3X4X6_R56),
        ("strassen.bms", SCHEME_STRASSEN),
    ]
}
