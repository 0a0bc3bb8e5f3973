use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};

use gridrk::bench::{sweep, Axis, BenchReport, PatternSource, SweepConfig};
use gridrk::datagen::{generate, DnaSpec};
use gridrk::{
    plan_launch, search_multi, search_naive, search_parallel, search_sequential, MatchResult,
    PatternSet,
};

use crate::args::{check_readable, parse_size, EngineArgs, EngineKind};
use crate::{
    BenchArgs, GenArgs, PatternSourceArg, ReportFormat, SearchArgs, VerifyArgs, EXIT_NO_MATCH,
    EXIT_OK,
};

pub(crate) fn gen(a: &GenArgs, out: &mut dyn Write) -> Result<u8> {
    let spec = DnaSpec {
        seed: a.seed,
        length: a.size,
        alphabet: a.alphabet.as_bytes().to_vec(),
    };
    let bytes = generate(&spec)?;
    fs::write(&a.out, &bytes).with_context(|| format!("writing {}", a.out.display()))?;
    writeln!(
        out,
        "wrote {} bytes to {} (seed {})",
        bytes.len(),
        a.out.display(),
        a.seed
    )?;
    Ok(EXIT_OK)
}

/// Per-pattern results of one engine, in pattern-index order.
pub fn run_engine(
    engine: EngineKind,
    text: &[u8],
    patterns: &PatternSet,
    engine_args: &EngineArgs,
) -> Result<Vec<(usize, MatchResult)>> {
    let per_pattern = |f: &dyn Fn(&[u8]) -> gridrk::Result<MatchResult>| {
        (0..patterns.len())
            .map(|i| Ok((i, f(patterns.pattern(i))?)))
            .collect::<Result<Vec<_>>>()
    };
    match engine {
        EngineKind::Naive => per_pattern(&|p| search_naive(text, p)),
        EngineKind::Seq if patterns.len() == 1 => per_pattern(&|p| search_sequential(text, p)),
        EngineKind::Seq => Ok(search_multi(text, patterns)),
        EngineKind::Par => {
            let workers = engine_args.workers();
            per_pattern(&|p| {
                if p.len() > text.len() {
                    return Ok(MatchResult::empty(text.len(), p.len()));
                }
                let cfg = plan_launch(text.len(), p.len(), engine_args.block_dim)?;
                search_parallel(text, p, &cfg, workers)
            })
        }
    }
}

/// `(offset, pattern index)` pairs in listing order.
fn listing(results: &[(usize, MatchResult)]) -> Vec<(usize, usize)> {
    let mut all: Vec<(usize, usize)> = results
        .iter()
        .flat_map(|(idx, r)| r.offsets().iter().map(move |&x| (x, *idx)))
        .collect();
    all.sort_unstable();
    all
}

fn write_listing(out: &mut dyn Write, results: &[(usize, MatchResult)]) -> Result<usize> {
    let all = listing(results);
    for (x, idx) in &all {
        writeln!(out, "MATCH {idx} {x}")?;
    }
    Ok(all.len())
}

fn read_text(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

pub(crate) fn search(a: &SearchArgs, out: &mut dyn Write) -> Result<u8> {
    check_readable(&a.text)?;
    a.patterns.check_inputs()?;
    let patterns = a.patterns.load()?;
    let text = read_text(&a.text)?;
    let results = run_engine(a.engine, &text, &patterns, &a.engine_args)?;
    let total = write_listing(out, &results)?;
    writeln!(out, "TOTAL {total}")?;
    Ok(if total > 0 { EXIT_OK } else { EXIT_NO_MATCH })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub engine: &'static str,
    pub pattern: usize,
    /// Offsets the reference found and the engine did not.
    pub missing: Vec<usize>,
    /// Offsets the engine reported and the reference did not.
    pub extra: Vec<usize>,
}

/// Differences between `candidate` and `reference`, pattern by pattern.
pub fn compare_engines(
    engine: &'static str,
    reference: &[(usize, MatchResult)],
    candidate: &[(usize, MatchResult)],
) -> Vec<Discrepancy> {
    let mut diffs = Vec::new();
    for ((idx, want), (_, got)) in reference.iter().zip(candidate) {
        if want == got {
            continue;
        }
        let (w, g) = (want.offsets(), got.offsets());
        diffs.push(Discrepancy {
            engine,
            pattern: *idx,
            missing: w
                .iter()
                .filter(|x| g.binary_search(x).is_err())
                .copied()
                .collect(),
            extra: g
                .iter()
                .filter(|x| w.binary_search(x).is_err())
                .copied()
                .collect(),
        });
    }
    if reference.len() != candidate.len() {
        diffs.push(Discrepancy {
            engine,
            pattern: reference.len().min(candidate.len()),
            missing: Vec::new(),
            extra: Vec::new(),
        });
    }
    diffs
}

pub(crate) fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    check_readable(&a.text)?;
    a.patterns.check_inputs()?;
    let patterns = a.patterns.load()?;
    let text = read_text(&a.text)?;

    let naive = run_engine(EngineKind::Naive, &text, &patterns, &a.engine_args)?;
    let total: usize = naive.iter().map(|(_, r)| r.len()).sum();
    writeln!(out, "naive: {total} matches")?;
    let mut diffs = Vec::new();
    for engine in [EngineKind::Seq, EngineKind::Par] {
        let r = run_engine(engine, &text, &patterns, &a.engine_args)?;
        let n: usize = r.iter().map(|(_, r)| r.len()).sum();
        writeln!(out, "{}: {n} matches", engine.name())?;
        diffs.extend(compare_engines(engine.name(), &naive, &r));
    }
    if a.list {
        write_listing(out, &naive)?;
    }
    if diffs.is_empty() {
        writeln!(
            out,
            "PASS {total} matches across {} pattern(s)",
            patterns.len()
        )?;
        return Ok(EXIT_OK);
    }
    for d in &diffs {
        writeln!(
            out,
            "FAIL {} pattern {}: missing {:?} extra {:?}",
            d.engine, d.pattern, d.missing, d.extra
        )?;
    }
    Ok(EXIT_NO_MATCH)
}

pub(crate) fn bench(a: &BenchArgs, out: &mut dyn Write) -> Result<u8> {
    let axis: Axis = a.axis.parse()?;
    let values = if a.values.is_empty() {
        axis.default_values()
    } else {
        a.values
            .iter()
            .map(|v| match axis {
                Axis::FileSize => Ok(parse_size(v)? as u64),
                _ => v
                    .trim()
                    .parse::<u64>()
                    .with_context(|| format!("invalid axis value `{v}`")),
            })
            .collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() {
        bail!("--values is empty");
    }
    let mut cfg = SweepConfig::new(axis, values, DnaSpec::dna(a.seed, a.size));
    cfg.pattern_length = a.pattern_len;
    cfg.pattern_source = match a.pattern_source {
        PatternSourceArg::Sampled => PatternSource::Sampled {
            seed: a.seed ^ 0x5EED,
        },
        PatternSourceArg::Generated => PatternSource::Generated {
            seed: a.seed ^ 0x5EED,
        },
    };
    cfg.reps = a.reps;
    cfg.workers = a.engine_args.workers();
    cfg.block_dim = a.engine_args.block_dim;

    let report = sweep(&cfg)?;
    print_table(out, &report)?;
    let write_csv = |path: &Path| -> Result<()> {
        let f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        report.write_csv(f)?;
        Ok(())
    };
    let write_json = |path: &Path| -> Result<()> {
        fs::write(path, report.to_json()? + "\n")
            .with_context(|| format!("writing {}", path.display()))
    };
    let written = match a.format {
        Some(ReportFormat::Csv) => {
            write_csv(&a.out)?;
            vec![a.out.clone()]
        }
        Some(ReportFormat::Json) => {
            write_json(&a.out)?;
            vec![a.out.clone()]
        }
        None => {
            let (csv, json) = (a.out.with_extension("csv"), a.out.with_extension("json"));
            write_csv(&csv)?;
            write_json(&json)?;
            vec![csv, json]
        }
    };
    for p in written {
        writeln!(out, "wrote {}", p.display())?;
    }
    Ok(EXIT_OK)
}

fn print_table(out: &mut dyn Write, report: &BenchReport) -> Result<()> {
    let env = &report.environment;
    writeln!(
        out,
        "# axis={} corpus={}B seed={} pattern_len={} reps={} workers={} block_dim={} capacity={}",
        report.axis,
        env.corpus.length,
        env.corpus.seed,
        env.pattern_length,
        env.reps,
        env.workers,
        env.block_dim,
        env.worker_capacity
    )?;
    writeln!(
        out,
        "{:>12} {:>12} {:>12} {:>10} {:>10}",
        report.axis.name(),
        "t_seq_ms",
        "t_par_ms",
        "speedup",
        "matches"
    )?;
    for r in &report.rows {
        writeln!(
            out,
            "{:>12} {:>12.3} {:>12.3} {:>10.4} {:>10}",
            r.axis_value, r.t_seq_ms, r.t_par_ms, r.speedup, r.matches
        )?;
    }
    Ok(())
}
