//! Corpus runner: every check instantiated over every graph of a graph6
//! file, with reports in corpus order whatever the worker count.

mod checks;
mod report;
mod spec;

use std::collections::BTreeMap;
use std::io;
use std::path::Path;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::corpus::{read_lines, CorpusLine};
use crate::cycles::DEFAULT_BUDGET;

pub use checks::check_line;
pub use report::{Attestation, CheckId, Outcome, Report, Required, Stats, Witness};
pub use spec::{linear_forests, parse_set_spec, Directive, SetSpec, SpecError};

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub check: CheckId,
    pub set: SetSpec,
    /// Node expansions per instantiation.
    pub budget: u64,
    pub jobs: usize,
}

impl RunConfig {
    pub fn new(check: CheckId) -> RunConfig {
        RunConfig {
            check,
            set: check.default_set(),
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub graphs: usize,
    pub reports: usize,
    pub counts: BTreeMap<Outcome, usize>,
    /// sha256 over the reports with `wall_us` zeroed.
    pub hash: String,
}

impl Summary {
    pub fn count(&self, o: Outcome) -> usize {
        self.counts.get(&o).copied().unwrap_or(0)
    }

    pub fn exit_code(&self) -> i32 {
        if self.count(Outcome::FalsificationEvent) > 0 {
            3
        } else if self.count(Outcome::Counterexample) > 0 {
            2
        } else {
            0
        }
    }
}

const CHUNK: usize = 1024;

/// Runs `cfg` over `lines`, handing each report to `sink` in order.
pub fn run_lines<F>(lines: &[CorpusLine], cfg: &RunConfig, mut sink: F) -> io::Result<Summary>
where
    F: FnMut(&Report) -> io::Result<()>,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(io::Error::other)?;
    let mut hasher = Sha256::new();
    let mut summary = Summary {
        graphs: lines.len(),
        ..Summary::default()
    };
    for chunk in lines.chunks(CHUNK) {
        let done: Vec<Vec<Report>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|l| check_line(l, cfg.check, &cfg.set, cfg.budget))
                .collect()
        });
        for r in done.iter().flatten() {
            let mut timeless = r.clone();
            timeless.stats.wall_us = 0;
            hasher.update(serde_json::to_vec(&timeless).map_err(io::Error::other)?);
            hasher.update(b"\n");
            *summary.counts.entry(r.outcome).or_default() += 1;
            summary.reports += 1;
            sink(r)?;
        }
    }
    summary.hash = hex::encode(hasher.finalize());
    Ok(summary)
}

/// Runs `cfg` over a graph6 file (gzipped if it ends in `.gz`).
pub fn run_file<F>(path: impl AsRef<Path>, cfg: &RunConfig, sink: F) -> io::Result<Summary>
where
    F: FnMut(&Report) -> io::Result<()>,
{
    run_lines(&read_lines(path)?, cfg, sink)
}

/// Runs over in-memory lines and keeps the reports.
pub fn collect(lines: &[CorpusLine], cfg: &RunConfig) -> (Vec<Report>, Summary) {
    let mut out = Vec::new();
    let summary = run_lines(lines, cfg, |r| {
        out.push(r.clone());
        Ok(())
    })
    .expect("an in-memory sink does not fail");
    (out, summary)
}

pub fn lines_of<'a>(texts: impl IntoIterator<Item = &'a str>) -> Vec<CorpusLine> {
    texts
        .into_iter()
        .enumerate()
        .map(|(i, t)| CorpusLine {
            line: i + 1,
            text: t.to_string(),
        })
        .collect()
}
