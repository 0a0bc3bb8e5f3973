//! Multi-pattern exact string matching with shift-add Rabin hashing.
//!
//! Every candidate window is hashed independently with `h = (h << 1) + byte`
//! and only byte-verified when its hash equals the pattern hash. Three engines
//! share that kernel:
//!
//! * [`search_naive`], a direct byte-comparison oracle,
//! * [`search_sequential`] / [`search_multi`], the single-threaded matcher,
//! * [`search_parallel`], which walks a grid/block/thread coordinate space
//!   ([`LaunchConfig`], [`ThreadCoord`]) across a pool of CPU workers.
//!
//! The hash word is generic over [`HashWord`] (any unsigned primitive with
//! wrapping arithmetic). The crate-level aliases fix it to `u64`, which is
//! what the non-`_with` entry points use.
//!
//! [`datagen`] builds reproducible DNA corpora and [`bench`] times the
//! engines against each other.

pub mod bench;
pub mod datagen;
mod error;
pub mod hash;
pub mod matcher;
pub mod parallel;

pub use error::{Error, Result};
pub use hash::{hash_full, hash_window, roll, HashWord, ShiftAddHash};
pub use matcher::{
    search_multi, search_multi_with, search_naive, search_sequential, search_sequential_with,
    MatchResult, SearchStats,
};
pub use parallel::{
    hash_pattern_host, offset_of, plan_launch, plan_launch_capped, search_parallel,
    search_parallel_with, Dim3, LaunchConfig, ThreadCoord, DEFAULT_AXIS_CAP, MAX_BLOCK_DIM,
};

/// Window hash over a 64-bit word.
pub type HashValue = ShiftAddHash<u64>;
/// Window hash over a 32-bit word. Collides far more often than [`HashValue`].
pub type HashValue32 = ShiftAddHash<u32>;
/// Pattern set indexed by 64-bit window hashes.
pub type PatternSet = matcher::PatternSet<u64>;
