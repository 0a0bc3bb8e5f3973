//! Grid/block/thread work decomposition executed on CPU workers.
//!
//! A launch is a 3-D grid of blocks, each holding `block_dim` threads. Every
//! thread flattens its coordinate to a window offset
//!
//! ```text
//! block_id = bx + by * gx + gx * gy * bz
//! x        = block_id * block_dim + thread_idx
//! ```
//!
//! and probes that window if `x <= n - m`. The flattened coordinate space is
//! cut into one contiguous range per worker, so each worker's offsets come
//! out ascending and the merge is a concatenation.

use std::fmt;
use std::thread;

use serde::Serialize;

use crate::hash::{HashWord, ShiftAddHash};
use crate::matcher::{probe, MatchResult, SearchStats};
use crate::{Error, HashValue, Result};

/// Hardware ceiling on threads per block.
pub const MAX_BLOCK_DIM: u32 = 1024;
/// Default per-axis cap on grid dimensions; larger launches spill into y, then z.
pub const DEFAULT_AXIS_CAP: u32 = 65535;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Dim3 {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Dim3 {
    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        Dim3 { x, y, z }
    }

    pub fn volume(self) -> u64 {
        self.x as u64 * self.y as u64 * self.z as u64
    }
}

impl fmt::Display for Dim3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LaunchConfig {
    grid: Dim3,
    block_dim: u32,
    total_threads: u64,
}

impl LaunchConfig {
    pub fn new(grid: Dim3, block_dim: u32) -> Result<Self> {
        if block_dim == 0 || block_dim > MAX_BLOCK_DIM {
            return Err(Error::BlockDim(block_dim));
        }
        if grid.x == 0 || grid.y == 0 || grid.z == 0 {
            return Err(Error::GridDim((grid.x, grid.y, grid.z)));
        }
        Ok(LaunchConfig {
            grid,
            block_dim,
            total_threads: grid.volume() * block_dim as u64,
        })
    }

    pub fn grid(&self) -> Dim3 {
        self.grid
    }

    pub fn block_dim(&self) -> u32 {
        self.block_dim
    }

    pub fn total_threads(&self) -> u64 {
        self.total_threads
    }

    /// Inverse of [`offset_of`]: the coordinate whose flattened index is `linear`.
    pub fn coord_of(&self, linear: u64) -> Result<ThreadCoord> {
        if linear >= self.total_threads {
            return Err(Error::CoordOutOfRange(format!("linear index {linear}")));
        }
        let bd = self.block_dim as u64;
        let (gx, gy) = (self.grid.x as u64, self.grid.y as u64);
        let block_id = linear / bd;
        Ok(ThreadCoord {
            block_idx: Dim3::new(
                (block_id % gx) as u32,
                (block_id / gx % gy) as u32,
                (block_id / (gx * gy)) as u32,
            ),
            thread_idx: (linear % bd) as u32,
        })
    }

    /// All coordinates in flattened order.
    pub fn coords(&self) -> impl Iterator<Item = ThreadCoord> + '_ {
        let mut cursor = Cursor::at(*self, ThreadCoord::default());
        (0..self.total_threads).map(move |_| {
            let c = cursor.coord;
            cursor.advance();
            c
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ThreadCoord {
    pub block_idx: Dim3,
    pub thread_idx: u32,
}

impl ThreadCoord {
    pub const fn new(block_idx: Dim3, thread_idx: u32) -> Self {
        ThreadCoord {
            block_idx,
            thread_idx,
        }
    }

    fn within(&self, cfg: &LaunchConfig) -> bool {
        let (b, g) = (self.block_idx, cfg.grid);
        b.x < g.x && b.y < g.y && b.z < g.z && self.thread_idx < cfg.block_dim
    }
}

impl fmt::Display for ThreadCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(block {}, thread {})", self.block_idx, self.thread_idx)
    }
}

#[inline(always)]
fn flatten(coord: &ThreadCoord, cfg: &LaunchConfig) -> u64 {
    let (b, g) = (coord.block_idx, cfg.grid);
    let block_id = b.x as u64 + b.y as u64 * g.x as u64 + g.x as u64 * g.y as u64 * b.z as u64;
    block_id * cfg.block_dim as u64 + coord.thread_idx as u64
}

/// Window offset examined by the thread at `coord`.
pub fn offset_of(coord: ThreadCoord, cfg: &LaunchConfig) -> Result<u64> {
    if !coord.within(cfg) {
        return Err(Error::CoordOutOfRange(coord.to_string()));
    }
    Ok(flatten(&coord, cfg))
}

pub fn plan_launch(n: usize, m: usize, block_dim: u32) -> Result<LaunchConfig> {
    plan_launch_capped(n, m, block_dim, DEFAULT_AXIS_CAP)
}

/// Smallest 1-D grid of `block_dim`-thread blocks covering the `n - m + 1`
/// windows. When the x axis would exceed `axis_cap` blocks, x is pinned at
/// the cap and the remainder moves to y, then z.
pub fn plan_launch_capped(
    n: usize,
    m: usize,
    block_dim: u32,
    axis_cap: u32,
) -> Result<LaunchConfig> {
    if block_dim == 0 || block_dim > MAX_BLOCK_DIM {
        return Err(Error::BlockDim(block_dim));
    }
    if m > n {
        return Err(Error::PatternLongerThanText { m, n });
    }
    let windows = (n - m) as u64 + 1;
    let blocks = windows.div_ceil(block_dim as u64);
    let cap = axis_cap.max(1) as u64;
    let grid = if blocks <= cap {
        Dim3::new(blocks as u32, 1, 1)
    } else if blocks <= cap * cap {
        Dim3::new(cap as u32, blocks.div_ceil(cap) as u32, 1)
    } else {
        let gz = blocks.div_ceil(cap * cap);
        if gz > cap {
            return Err(Error::GridTooLarge {
                windows,
                cap: axis_cap,
            });
        }
        Dim3::new(cap as u32, cap as u32, gz as u32)
    };
    LaunchConfig::new(grid, block_dim)
}

/// Pattern hash computed once on the calling thread and shared by all workers.
pub fn hash_pattern_host(pattern: &[u8]) -> Result<HashValue> {
    host_hash(pattern)
}

fn host_hash<W: HashWord>(pattern: &[u8]) -> Result<ShiftAddHash<W>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(ShiftAddHash::of(pattern))
}

pub fn search_parallel(
    text: &[u8],
    pattern: &[u8],
    cfg: &LaunchConfig,
    workers: usize,
) -> Result<MatchResult> {
    search_parallel_with::<u64>(text, pattern, cfg, workers, &mut SearchStats::default())
}

/// Runs one kernel instance per thread coordinate of `cfg`, spread over
/// `workers` scoped threads in contiguous flattened ranges.
pub fn search_parallel_with<W: HashWord>(
    text: &[u8],
    pattern: &[u8],
    cfg: &LaunchConfig,
    workers: usize,
    stats: &mut SearchStats,
) -> Result<MatchResult> {
    let target = host_hash::<W>(pattern)?;
    if workers == 0 {
        return Err(Error::ZeroWorkers);
    }
    let (n, m) = (text.len(), pattern.len());
    if m > n {
        return Ok(MatchResult::empty(n, m));
    }
    let windows = (n - m) as u64 + 1;
    if cfg.total_threads() < windows {
        return Err(Error::UndersizedLaunch {
            threads: cfg.total_threads(),
            windows,
        });
    }
    let last = n - m;
    let chunk = cfg.total_threads().div_ceil(workers as u64);

    let parts: Vec<(Vec<usize>, SearchStats)> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| w * chunk)
            .take_while(|&start| start < cfg.total_threads())
            .map(|start| {
                let end = (start + chunk).min(cfg.total_threads());
                s.spawn(move || run_range(text, pattern, target, cfg, start, end, last))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });

    let mut offsets = Vec::with_capacity(parts.iter().map(|p| p.0.len()).sum());
    for (part, part_stats) in parts {
        offsets.extend(part);
        stats.merge(&part_stats);
    }
    Ok(MatchResult::from_sorted(n, m, offsets))
}

fn run_range<W: HashWord>(
    text: &[u8],
    pattern: &[u8],
    target: ShiftAddHash<W>,
    cfg: &LaunchConfig,
    start: u64,
    end: u64,
    last: usize,
) -> (Vec<usize>, SearchStats) {
    let mut found = Vec::new();
    let mut stats = SearchStats::default();
    let Ok(first) = cfg.coord_of(start) else {
        return (found, stats);
    };
    let mut cursor = Cursor::at(*cfg, first);
    let mut linear = start;
    while linear < end {
        let t0 = cursor.coord.thread_idx as u64;
        let t1 = (cfg.block_dim as u64).min(t0 + (end - linear));
        let block_base = flatten(&ThreadCoord::new(cursor.coord.block_idx, 0), cfg);
        for t in t0..t1 {
            let x = block_base + t;
            if x > last as u64 {
                // offsets grow along the flattened order, so the rest of
                // this range is padding as well
                return (found, stats);
            }
            if probe(text, pattern, target, x as usize, &mut stats) {
                found.push(x as usize);
            }
        }
        linear += t1 - t0;
        cursor.next_block();
    }
    (found, stats)
}

/// Steps through coordinates in flattened order without dividing per step.
struct Cursor {
    cfg: LaunchConfig,
    coord: ThreadCoord,
}

impl Cursor {
    fn at(cfg: LaunchConfig, coord: ThreadCoord) -> Self {
        Cursor { cfg, coord }
    }

    #[inline(always)]
    fn advance(&mut self) {
        let c = &mut self.coord;
        c.thread_idx += 1;
        if c.thread_idx < self.cfg.block_dim {
            return;
        }
        self.next_block();
    }

    /// Moves to thread 0 of the following block.
    #[inline(always)]
    fn next_block(&mut self) {
        let c = &mut self.coord;
        c.thread_idx = 0;
        c.block_idx.x += 1;
        if c.block_idx.x < self.cfg.grid.x {
            return;
        }
        c.block_idx.x = 0;
        c.block_idx.y += 1;
        if c.block_idx.y < self.cfg.grid.y {
            return;
        }
        c.block_idx.y = 0;
        c.block_idx.z += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash_full;

    fn cfg(g: (u32, u32, u32), bd: u32) -> LaunchConfig {
        LaunchConfig::new(Dim3::new(g.0, g.1, g.2), bd).unwrap()
    }

    #[test]
    fn offset_examples() {
        let zero = ThreadCoord::new(Dim3::new(0, 0, 0), 0);
        assert_eq!(offset_of(zero, &cfg((7, 3, 2), 64)).unwrap(), 0);
        let c = ThreadCoord::new(Dim3::new(1, 2, 0), 3);
        assert_eq!(offset_of(c, &cfg((4, 4, 1), 256)).unwrap(), 2307);
        let c = ThreadCoord::new(Dim3::new(0, 0, 1), 0);
        assert_eq!(offset_of(c, &cfg((4, 4, 2), 32)).unwrap(), 512);
    }

    #[test]
    fn offset_rejects_foreign_coords() {
        let c = cfg((4, 4, 1), 256);
        for bad in [
            ThreadCoord::new(Dim3::new(4, 0, 0), 0),
            ThreadCoord::new(Dim3::new(0, 4, 0), 0),
            ThreadCoord::new(Dim3::new(0, 0, 1), 0),
            ThreadCoord::new(Dim3::new(0, 0, 0), 256),
        ] {
            assert!(matches!(offset_of(bad, &c), Err(Error::CoordOutOfRange(_))));
        }
    }

    #[test]
    fn config_validation() {
        assert_eq!(
            LaunchConfig::new(Dim3::new(1, 1, 1), 0),
            Err(Error::BlockDim(0))
        );
        assert_eq!(
            LaunchConfig::new(Dim3::new(1, 1, 1), 1025),
            Err(Error::BlockDim(1025))
        );
        assert!(LaunchConfig::new(Dim3::new(1, 0, 1), 32).is_err());
        assert_eq!(cfg((2, 3, 4), 32).total_threads(), 768);
    }

    #[test]
    fn plan_examples() {
        let c = plan_launch(1000, 7, 256).unwrap();
        assert_eq!(c.grid(), Dim3::new(4, 1, 1));
        assert_eq!(c.total_threads(), 1024);

        let c = plan_launch(50, 50, 32).unwrap();
        assert_eq!(c.grid(), Dim3::new(1, 1, 1));
        assert_eq!(c.total_threads(), 32);

        let c = plan_launch(10_000_000, 7, 32).unwrap();
        assert_eq!(c.grid(), Dim3::new(65535, 5, 1));
        assert!(c.total_threads() >= 9_999_994);
    }

    #[test]
    fn plan_spills_into_z() {
        let c = plan_launch_capped(10, 1, 1, 4).unwrap();
        assert_eq!(c.grid(), Dim3::new(4, 3, 1));
        let c = plan_launch_capped(60, 1, 1, 4).unwrap();
        assert_eq!(c.grid(), Dim3::new(4, 4, 4));
        // 100 blocks need z = ceil(100 / 16) = 7 > 4
        assert_eq!(
            plan_launch_capped(100, 1, 1, 4),
            Err(Error::GridTooLarge {
                windows: 100,
                cap: 4
            })
        );
    }

    #[test]
    fn plan_errors() {
        assert_eq!(plan_launch(10, 2, 0), Err(Error::BlockDim(0)));
        assert_eq!(plan_launch(10, 2, 2048), Err(Error::BlockDim(2048)));
        assert_eq!(
            plan_launch(2, 3, 32),
            Err(Error::PatternLongerThanText { m: 3, n: 2 })
        );
    }

    #[test]
    fn coord_of_inverts_offset_of() {
        let c = cfg((3, 2, 2), 5);
        for linear in 0..c.total_threads() {
            let coord = c.coord_of(linear).unwrap();
            assert_eq!(offset_of(coord, &c).unwrap(), linear);
        }
        assert!(c.coord_of(c.total_threads()).is_err());
        let walked: Vec<_> = c.coords().collect();
        let direct: Vec<_> = (0..c.total_threads())
            .map(|i| c.coord_of(i).unwrap())
            .collect();
        assert_eq!(walked, direct);
    }

    #[test]
    fn host_hash_values() {
        assert_eq!(hash_pattern_host(b"ab").unwrap(), hash_full(b"ab"));
        assert_eq!(hash_pattern_host(b"a").unwrap().word(), 97);
        assert_eq!(hash_pattern_host(b"ba").unwrap().word(), 293);
        assert_eq!(hash_pattern_host(b""), Err(Error::EmptyPattern));
    }

    #[test]
    fn parallel_examples() {
        let c = plan_launch(4, 2, 32).unwrap();
        for w in [1, 8] {
            let r = search_parallel(b"abab", b"ab", &c, w).unwrap();
            assert_eq!(r.offsets(), [0, 2]);
        }
        let c = plan_launch(5, 2, 1).unwrap();
        let mut stats = SearchStats::default();
        let r = search_parallel_with::<u64>(b"acXba", b"ac", &c, 4, &mut stats).unwrap();
        assert_eq!(r.offsets(), [0]);
        assert_eq!(stats.false_hits, 1);
        assert_eq!(stats.windows, 4);
    }

    #[test]
    fn parallel_errors() {
        let c = plan_launch(4, 2, 1).unwrap();
        assert_eq!(
            search_parallel(b"abab", b"", &c, 1),
            Err(Error::EmptyPattern)
        );
        assert_eq!(
            search_parallel(b"abab", b"ab", &c, 0),
            Err(Error::ZeroWorkers)
        );
        assert_eq!(
            search_parallel(b"abababab", b"ab", &c, 2),
            Err(Error::UndersizedLaunch {
                threads: 3,
                windows: 7
            })
        );
        // m > n is an empty search, whatever the config
        assert!(search_parallel(b"a", b"ab", &c, 2).unwrap().is_empty());
    }

    #[test]
    fn padded_config_matches_tight_config() {
        let text = b"abracadabra abracadabra";
        let tight = plan_launch(text.len(), 4, 1).unwrap();
        let padded = cfg((4, 4, 4), 1024);
        let a = search_parallel(text, b"abra", &tight, 3).unwrap();
        let b = search_parallel(text, b"abra", &padded, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.offsets(), [0, 7, 12, 19]);
    }

    #[test]
    fn more_workers_than_threads() {
        let c = plan_launch(3, 1, 1).unwrap();
        let r = search_parallel(b"aba", b"a", &c, 16).unwrap();
        assert_eq!(r.offsets(), [0, 2]);
    }
}
