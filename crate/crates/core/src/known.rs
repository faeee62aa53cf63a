//! Registry of known multiplication counts for the formats `(n, m, 6)` with
//! `2 ≤ n ≤ m ≤ 6`: the naive rank `6nm`, the best published rank, and the
//! rank reached by flip-graph search.

/// One registry row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownRankEntry {
    pub format: (usize, usize, usize),
    /// Multiplications of the classical algorithm: `n·m·p`.
    pub naive: u32,
    /// Best published rank for the format.
    pub best: u32,
    /// True when the best-rank scheme uses fractional coefficients and is
    /// therefore restricted to certain characteristics.
    pub best_is_char_restricted: bool,
    /// Rank reached by random flip-graph walks from the standard algorithm.
    pub ours: u32,
}

/// The fifteen `(n, m, 6)` rows, `2 ≤ n ≤ m ≤ 6`, ordered by naive rank.
///
/// Note `ours < best` at `(2,6,6)`: the walk result improved on the
/// previously best published rank there.
pub const KNOWN_RANKS_NM6: [KnownRankEntry; 15] = [
    entry((2, 2, 6), 24, 21, false, 21),
    entry((2, 3, 6), 36, 30, false, 30),
    entry((2, 4, 6), 48, 39, false, 39),
    entry((3, 3, 6), 54, 40, true, 42),
    entry((2, 5, 6), 60, 48, false, 48),
    entry((3, 4, 6), 72, 56, true, 56),
    entry((2, 6, 6), 72, 57, false, 56),
    entry((3, 5, 6), 90, 70, true, 71),
    entry((4, 4, 6), 96, 73, true, 74),
    entry((3, 6, 6), 108, 80, true, 85),
    entry((4, 5, 6), 120, 93, false, 93),
    entry((4, 6, 6), 144, 105, false, 116),
    entry((5, 5, 6), 150, 116, false, 116),
    entry((5, 6, 6), 180, 137, true, 144),
    entry((6, 6, 6), 216, 160, true, 164),
];

const fn entry(
    format: (usize, usize, usize),
    naive: u32,
    best: u32,
    star: bool,
    ours: u32,
) -> KnownRankEntry {
    KnownRankEntry {
        format,
        naive,
        best,
        best_is_char_restricted: star,
        ours,
    }
}

/// Looks up the registry row for a format. Absence is a value: formats
/// outside the fifteen `(n, m, 6)` rows return `None`.
pub fn known_ranks(format: (usize, usize, usize)) -> Option<KnownRankEntry> {
    KNOWN_RANKS_NM6.iter().copied().find(|e| e.format == format)
}
