//! JSON Lines persistence and the parallel scan driver.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;

use isoscan_core::numtheory::prime_stream;
use isoscan_core::scanner::{classify_prime, CurvePair, PrimeRecord};
use rayon::prelude::*;

use crate::error::{CliError, Result};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_BLOCK: usize = 4096;

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub n: usize,
    pub seed: u64,
    /// 0 means one worker per core.
    pub threads: usize,
    pub block_size: usize,
}

impl ScanConfig {
    pub fn new(n: usize) -> ScanConfig {
        ScanConfig { n, seed: DEFAULT_SEED, threads: 0, block_size: DEFAULT_BLOCK }
    }
}

pub fn to_line(r: &PrimeRecord) -> String {
    serde_json::to_string(r).expect("records serialize")
}

pub fn parse_line(line: &str) -> Result<PrimeRecord> {
    Ok(serde_json::from_str(line)?)
}

pub fn read_records(path: &Path) -> Result<Vec<PrimeRecord>> {
    let f = File::open(path).map_err(|e| CliError::validation(format!("cannot open {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_line(&line).map_err(|e| CliError::validation(format!("{}:{}: {e}", path.display(), i + 1)))?);
    }
    Ok(out)
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))
}

/// Classify the next `n` good primes after `start`, block by block, handing
/// each block to `sink` in increasing order of `p`.
pub fn scan_blocks(
    pair: &CurvePair,
    start: u64,
    cfg: &ScanConfig,
    mut sink: impl FnMut(&[PrimeRecord]) -> Result<()>,
) -> Result<()> {
    let pool = pool(cfg.threads)?;
    let mut primes = prime_stream(start.max(3)).filter(|&p| pair.is_good(p));
    let mut left = cfg.n;
    while left > 0 {
        let block: Vec<u64> = primes.by_ref().take(left.min(cfg.block_size.max(1))).collect();
        left -= block.len();
        let recs = pool.install(|| {
            block.par_iter().map(|&p| classify_prime(pair, p, cfg.seed)).collect::<isoscan_core::error::Result<Vec<_>>>()
        })?;
        sink(&recs)?;
    }
    Ok(())
}

/// The first `cfg.n` good primes, in memory.
pub fn scan_parallel(pair: &CurvePair, cfg: &ScanConfig) -> Result<Vec<PrimeRecord>> {
    let mut all = Vec::with_capacity(cfg.n);
    scan_blocks(pair, 3, cfg, |b| {
        all.extend_from_slice(b);
        Ok(())
    })?;
    Ok(all)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ScanOutcome {
    /// Records already in the file.
    pub resumed: usize,
    pub written: usize,
}

/// Drop a trailing partial line left by an interrupted run; returns the
/// complete records.
fn recover(file: &mut File, path: &Path) -> Result<Vec<PrimeRecord>> {
    let mut text = String::new();
    file.read_to_string(&mut text)?;
    let keep = text.rfind('\n').map_or(0, |i| i + 1);
    if keep < text.len() {
        file.set_len(keep as u64)?;
    }
    text[..keep]
        .lines()
        .enumerate()
        .map(|(i, l)| parse_line(l).map_err(|e| CliError::validation(format!("{}:{}: {e}", path.display(), i + 1))))
        .collect()
}

/// Scan into a JSON Lines file, continuing after the last record already in
/// it. Since each record depends only on the pair, `p` and the seed, a
/// resumed file is identical to one written in a single run.
pub fn scan_to_file(pair: &CurvePair, cfg: &ScanConfig, path: &Path) -> Result<ScanOutcome> {
    let mut file = OpenOptions::new().read(true).append(true).create(true).open(path)?;
    let done = recover(&mut file, path)?;
    if done.len() > cfg.n {
        return Err(CliError::validation(format!("{} already holds {} records, more than --n {}", path.display(), done.len(), cfg.n)));
    }
    if let Some(r) = done.iter().find(|r| !pair.is_good(r.p)) {
        return Err(CliError::validation(format!("{} has a record for p = {}, which is bad for this pair", path.display(), r.p)));
    }
    let start = done.last().map_or(3, |r| r.p + 1);
    file.seek(SeekFrom::End(0))?;
    let mut w = BufWriter::new(file);
    let mut written = 0;
    let rest = ScanConfig { n: cfg.n - done.len(), ..cfg.clone() };
    scan_blocks(pair, start, &rest, |block| {
        for r in block {
            writeln!(w, "{}", to_line(r))?;
        }
        w.flush()?;
        written += block.len();
        Ok(())
    })?;
    Ok(ScanOutcome { resumed: done.len(), written })
}
