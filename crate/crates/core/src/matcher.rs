//! Hash-then-verify matching, the brute-force oracle, and multi-pattern search.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::hash::{HashWord, ShiftAddHash};
use crate::{Error, Result};

/// Verified match offsets of one pattern in one text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchResult {
    text_len: usize,
    pattern_len: usize,
    offsets: Vec<usize>,
}

impl MatchResult {
    /// `offsets` must be strictly increasing and every offset must be a valid
    /// window start. Callers in this crate guarantee both.
    pub(crate) fn from_sorted(text_len: usize, pattern_len: usize, offsets: Vec<usize>) -> Self {
        debug_assert!(offsets.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(offsets.last().is_none_or(|&x| x + pattern_len <= text_len));
        MatchResult {
            text_len,
            pattern_len,
            offsets,
        }
    }

    pub fn empty(text_len: usize, pattern_len: usize) -> Self {
        Self::from_sorted(text_len, pattern_len, Vec::new())
    }

    pub fn text_len(&self) -> usize {
        self.text_len
    }

    pub fn pattern_len(&self) -> usize {
        self.pattern_len
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn into_offsets(self) -> Vec<usize> {
        self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Number of candidate windows, `n - m + 1` (zero when `m > n`).
    pub fn window_count(&self) -> usize {
        (self.text_len + 1).saturating_sub(self.pattern_len)
    }

    /// One flag per window offset, set where a match starts.
    pub fn to_bitmap(&self) -> Vec<bool> {
        let mut bits = vec![false; self.window_count()];
        for &x in &self.offsets {
            bits[x] = true;
        }
        bits
    }
}

/// Per-search counters for the hash gate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Windows whose hash was computed.
    pub windows: u64,
    /// Windows whose hash equalled a pattern hash.
    pub hash_hits: u64,
    /// Hash hits rejected by byte comparison.
    pub false_hits: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.windows += other.windows;
        self.hash_hits += other.hash_hits;
        self.false_hits += other.false_hits;
    }
}

/// Hashes the window at `x` from scratch and verifies it against `pattern` on
/// hash equality. This is the per-window kernel shared by every hashed engine.
#[inline(always)]
pub(crate) fn probe<W: HashWord>(
    text: &[u8],
    pattern: &[u8],
    target: ShiftAddHash<W>,
    x: usize,
    stats: &mut SearchStats,
) -> bool {
    let window = &text[x..x + pattern.len()];
    stats.windows += 1;
    if ShiftAddHash::<W>::of(window) != target {
        return false;
    }
    stats.hash_hits += 1;
    if window == pattern {
        true
    } else {
        stats.false_hits += 1;
        false
    }
}

pub fn search_naive(text: &[u8], pattern: &[u8]) -> Result<MatchResult> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let (n, m) = (text.len(), pattern.len());
    let mut offsets = Vec::new();
    if m <= n {
        for x in 0..n - m + 1 {
            if (0..m).all(|i| text[x + i] == pattern[i]) {
                offsets.push(x);
            }
        }
    }
    Ok(MatchResult::from_sorted(n, m, offsets))
}

pub fn search_sequential(text: &[u8], pattern: &[u8]) -> Result<MatchResult> {
    search_sequential_with::<u64>(text, pattern, &mut SearchStats::default())
}

/// Single-threaded hash-then-verify scan over every window `0..=n-m`.
pub fn search_sequential_with<W: HashWord>(
    text: &[u8],
    pattern: &[u8],
    stats: &mut SearchStats,
) -> Result<MatchResult> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let (n, m) = (text.len(), pattern.len());
    let mut offsets = Vec::new();
    if m <= n {
        let target = ShiftAddHash::<W>::of(pattern);
        for x in 0..n - m + 1 {
            if probe(text, pattern, target, x, stats) {
                offsets.push(x);
            }
        }
    }
    Ok(MatchResult::from_sorted(n, m, offsets))
}

/// Distinct non-empty patterns grouped by length, with a per-length hash index.
#[derive(Clone, Debug)]
pub struct PatternSet<W: HashWord = u64> {
    patterns: Vec<Vec<u8>>,
    by_length: BTreeMap<usize, Vec<usize>>,
    hash_index: BTreeMap<usize, HashMap<ShiftAddHash<W>, Vec<usize>>>,
}

impl<W: HashWord> PatternSet<W> {
    /// Builds the set, collapsing byte-identical duplicates. Pattern indices
    /// follow first-appearance order.
    pub fn new<I, P>(patterns: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[u8]>,
    {
        let mut set = PatternSet {
            patterns: Vec::new(),
            by_length: BTreeMap::new(),
            hash_index: BTreeMap::new(),
        };
        let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
        for p in patterns {
            let p = p.as_ref();
            if p.is_empty() {
                return Err(Error::EmptyPattern);
            }
            if seen.contains_key(p) {
                continue;
            }
            let idx = set.patterns.len();
            seen.insert(p.to_vec(), idx);
            set.patterns.push(p.to_vec());
            set.by_length.entry(p.len()).or_default().push(idx);
            set.hash_index
                .entry(p.len())
                .or_default()
                .entry(ShiftAddHash::of(p))
                .or_default()
                .push(idx);
        }
        if set.patterns.is_empty() {
            return Err(Error::EmptyPatternSet);
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn pattern(&self, idx: usize) -> &[u8] {
        &self.patterns[idx]
    }

    pub fn patterns(&self) -> impl Iterator<Item = &[u8]> {
        self.patterns.iter().map(Vec::as_slice)
    }

    /// Distinct pattern lengths in ascending order.
    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_length.keys().copied()
    }

    pub fn indices_of_length(&self, m: usize) -> &[usize] {
        self.by_length.get(&m).map_or(&[], Vec::as_slice)
    }

    /// Pattern indices of length `m` whose hash equals `hash`.
    pub fn candidates(&self, m: usize, hash: ShiftAddHash<W>) -> &[usize] {
        self.hash_index
            .get(&m)
            .and_then(|t| t.get(&hash))
            .map_or(&[], Vec::as_slice)
    }
}

pub fn search_multi(text: &[u8], patterns: &PatternSet) -> Vec<(usize, MatchResult)> {
    search_multi_with(text, patterns, &mut SearchStats::default())
}

/// One sliding pass per distinct pattern length; each window hash is looked up
/// in that length's index and every candidate is byte-verified. Results are
/// returned in pattern-index order.
pub fn search_multi_with<W: HashWord>(
    text: &[u8],
    patterns: &PatternSet<W>,
    stats: &mut SearchStats,
) -> Vec<(usize, MatchResult)> {
    let n = text.len();
    let mut found: Vec<Vec<usize>> = vec![Vec::new(); patterns.len()];
    for m in patterns.lengths() {
        if m > n {
            continue;
        }
        for x in 0..n - m + 1 {
            let window = &text[x..x + m];
            stats.windows += 1;
            for &idx in patterns.candidates(m, ShiftAddHash::of(window)) {
                stats.hash_hits += 1;
                if window == patterns.pattern(idx) {
                    found[idx].push(x);
                } else {
                    stats.false_hits += 1;
                }
            }
        }
    }
    found
        .into_iter()
        .enumerate()
        .map(|(idx, offsets)| {
            let m = patterns.pattern(idx).len();
            (idx, MatchResult::from_sorted(n, m, offsets))
        })
        .collect()
}
