use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, ValueEnum};

use gridrk::PatternSet;

/// Parses a byte count with an optional KB/MB/GB suffix (powers of 1024).
pub fn parse_size(s: &str) -> Result<usize> {
    let t = s.trim();
    let upper = t.to_ascii_uppercase();
    let (digits, shift) = [
        ("GB", 30),
        ("MB", 20),
        ("KB", 10),
        ("G", 30),
        ("M", 20),
        ("K", 10),
        ("B", 0),
    ]
    .iter()
    .find_map(|(suffix, shift)| upper.strip_suffix(suffix).map(|d| (d.trim(), *shift)))
    .unwrap_or((upper.as_str(), 0));
    ensure!(!digits.is_empty(), "size `{s}` has no digits");
    let n: usize = digits
        .parse()
        .with_context(|| format!("invalid size `{s}`"))?;
    n.checked_mul(1usize << shift)
        .with_context(|| format!("size `{s}` overflows"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineKind {
    Naive,
    Seq,
    Par,
}

impl EngineKind {
    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Naive => "naive",
            EngineKind::Seq => "seq",
            EngineKind::Par => "par",
        }
    }
}

#[derive(Clone, Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PatternArgs {
    /// Single pattern, taken as raw bytes
    #[arg(long)]
    pub pattern: Option<String>,
    /// Newline-delimited pattern file; blank lines are rejected
    #[arg(long, value_name = "PATH")]
    pub pattern_file: Option<PathBuf>,
}

impl PatternArgs {
    pub fn check_inputs(&self) -> Result<()> {
        if let Some(p) = &self.pattern_file {
            check_readable(p)?;
        }
        Ok(())
    }

    pub fn load(&self) -> Result<PatternSet> {
        let patterns = match (&self.pattern, &self.pattern_file) {
            (Some(p), _) => vec![p.as_bytes().to_vec()],
            (None, Some(path)) => {
                let raw = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
                split_pattern_lines(&raw)?
            }
            (None, None) => bail!("one of --pattern or --pattern-file is required"),
        };
        Ok(PatternSet::new(patterns)?)
    }
}

/// One pattern per line. A trailing newline is allowed; CR before LF is dropped.
pub fn split_pattern_lines(raw: &[u8]) -> Result<Vec<Vec<u8>>> {
    let body = raw.strip_suffix(b"\n").unwrap_or(raw);
    if body.is_empty() {
        bail!("pattern file contains no patterns");
    }
    body.split(|&b| b == b'\n')
        .enumerate()
        .map(|(i, line)| {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            ensure!(!line.is_empty(), "blank line {} in pattern file", i + 1);
            Ok(line.to_vec())
        })
        .collect()
}

#[derive(Clone, Debug, Args)]
pub struct EngineArgs {
    /// Worker threads for the parallel engine [default: available cores]
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    /// Threads per block for the parallel engine
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u32).range(1..=1024))]
    pub block_dim: u32,
}

impl EngineArgs {
    pub fn workers(&self) -> usize {
        self.workers
            .map_or_else(gridrk::bench::worker_capacity, |w| w as usize)
    }
}

pub fn check_readable(path: &Path) -> Result<()> {
    fs::File::open(path)
        .map(drop)
        .with_context(|| format!("cannot read {}", path.display()))
}
