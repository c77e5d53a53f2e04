use std::fmt::Write as _;
use std::ops::Add;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, Metric};
use crate::channels::ChannelConfig;
use crate::codes::{Code, CodeSampler};
use crate::decoders::{decode, DecodeContext};
use crate::error::{Error, Result};
use crate::rng::{channel_stream, stream_rng, CODEWORD_STREAM};
use crate::supersequences::DEFAULT_CAP;
use crate::word::{indel_distance, Word};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "INDELML_WORKERS";

/// Fixed CSV header shared by every emitter.
pub const CSV_HEADER: &str = "metric,q,n,p,t,code,decoder,value,stderr,trials,seed";

/// Error class of one trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorClass {
    /// Output is a strict subsequence (or supersequence) of `c`: symbols lost outright.
    Run,
    /// Output has length `n` but differs from `c`.
    Alternating,
    /// Both a length change and a length-preserving error.
    Other,
}

/// Decomposition of `d_L(output, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Attribution {
    pub class: Option<ErrorClass>,
    pub distance: usize,
    /// `| |output| - |c| |`.
    pub run_part: usize,
    /// `distance - run_part`.
    pub alt_part: usize,
}

/// Splits the decoding error into a length-change part and a length-preserving part.
///
/// For two deletion traces a same-run double deletion shortens the output by
/// one symbol, while an alternating ambiguity swaps a segment and costs two
/// without changing the length.
pub fn attribute_error(c: &Word, output: &Word) -> Attribution {
    let distance = indel_distance(c, output);
    let run_part = c.len().abs_diff(output.len());
    let alt_part = distance - run_part;
    let class = match (distance, run_part, alt_part) {
        (0, _, _) => None,
        (_, _, 0) => Some(ErrorClass::Run),
        (_, 0, _) => Some(ErrorClass::Alternating),
        _ => Some(ErrorClass::Other),
    };
    Attribution { class, distance, run_part, alt_part }
}

/// Order-independent integer totals for one grid point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub trials: u64,
    pub distance: u64,
    pub distance_sq: u128,
    pub failures: u64,
    pub run: u64,
    pub run_sq: u128,
    pub alt: u64,
    pub alt_sq: u128,
    pub class_run: u64,
    pub class_alternating: u64,
    pub class_other: u64,
    pub truncated: u64,
}

impl Add for Totals {
    type Output = Totals;
    fn add(self, o: Totals) -> Totals {
        Totals {
            trials: self.trials + o.trials,
            distance: self.distance + o.distance,
            distance_sq: self.distance_sq + o.distance_sq,
            failures: self.failures + o.failures,
            run: self.run + o.run,
            run_sq: self.run_sq + o.run_sq,
            alt: self.alt + o.alt,
            alt_sq: self.alt_sq + o.alt_sq,
            class_run: self.class_run + o.class_run,
            class_alternating: self.class_alternating + o.class_alternating,
            class_other: self.class_other + o.class_other,
            truncated: self.truncated + o.truncated,
        }
    }
}

impl Totals {
    fn single(a: &Attribution, truncated: bool) -> Totals {
        let sq = |v: usize| (v as u128) * (v as u128);
        Totals {
            trials: 1,
            distance: a.distance as u64,
            distance_sq: sq(a.distance),
            failures: u64::from(a.distance > 0),
            run: a.run_part as u64,
            run_sq: sq(a.run_part),
            alt: a.alt_part as u64,
            alt_sq: sq(a.alt_part),
            class_run: u64::from(a.class == Some(ErrorClass::Run)),
            class_alternating: u64::from(a.class == Some(ErrorClass::Alternating)),
            class_other: u64::from(a.class == Some(ErrorClass::Other)),
            truncated: u64::from(truncated),
        }
    }
}

/// Mean and standard error of `sum / trials`, scaled by `1 / scale`.
fn mean_stderr(sum: u64, sum_sq: u128, trials: u64, scale: f64) -> (f64, f64) {
    let t = trials as f64;
    let mean = sum as f64 / t;
    if trials < 2 {
        return (mean / scale, 0.0);
    }
    let var = ((sum_sq as f64) - t * mean * mean).max(0.0) / (t - 1.0);
    (mean / scale, (var / t).sqrt() / scale)
}

/// Measurements at one grid point.
#[derive(Clone, Debug, Serialize)]
pub struct PointResult {
    pub channel: ChannelConfig,
    pub totals: Totals,
    pub wall_time: Duration,
}

impl PointResult {
    /// `(value, standard error)` of a metric for word length `n`.
    pub fn metric(&self, m: Metric, n: usize) -> (f64, f64) {
        let t = &self.totals;
        let nf = n as f64;
        match m {
            Metric::LevenshteinRate => mean_stderr(t.distance, t.distance_sq, t.trials, nf),
            Metric::RunComponent => mean_stderr(t.run, t.run_sq, t.trials, nf),
            Metric::AltComponent => mean_stderr(t.alt, t.alt_sq, t.trials, nf),
            Metric::FailureRate => {
                let f = t.failures as f64 / t.trials as f64;
                (f, (f * (1.0 - f) / t.trials as f64).sqrt())
            }
        }
    }

    /// Probability reported in CSV rows (0 for `k-Del`).
    pub fn p(&self) -> f64 {
        self.channel.p().unwrap_or(0.0)
    }
}

/// One line of the fixed CSV schema.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CsvRow {
    pub metric: String,
    pub q: u8,
    pub n: usize,
    pub p: f64,
    pub t: usize,
    pub code: String,
    pub decoder: String,
    pub value: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

impl CsvRow {
    pub fn to_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.metric, self.q, self.n, self.p, self.t, self.code, self.decoder, self.value, self.stderr, self.trials, self.seed
        )
    }
}

/// Renders rows under [`CSV_HEADER`].
pub fn rows_to_csv(rows: &[CsvRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.to_line());
    }
    out
}

/// Outcome of [`run_experiment`].
#[derive(Clone, Debug, Serialize)]
pub struct AggregateResult {
    pub config: ExperimentConfig,
    pub code_label: String,
    pub points: Vec<PointResult>,
}

impl AggregateResult {
    pub fn rows(&self) -> Vec<CsvRow> {
        let c = &self.config;
        let mut rows = Vec::new();
        for pt in &self.points {
            for &m in &c.metrics {
                let (value, stderr) = pt.metric(m, c.n);
                rows.push(CsvRow {
                    metric: m.name().into(),
                    q: c.q,
                    n: c.n,
                    p: pt.p(),
                    t: c.t,
                    code: self.code_label.clone(),
                    decoder: c.decoder.to_string(),
                    value,
                    stderr,
                    trials: pt.totals.trials,
                    seed: c.master_seed,
                });
            }
        }
        rows
    }

    /// CSV in the fixed schema; wall times are excluded so reruns are byte-identical.
    pub fn to_csv(&self) -> String {
        rows_to_csv(&self.rows())
    }
}

/// Worker count from [`WORKERS_ENV`], if set.
pub fn workers_from_env() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok().and_then(|v| v.trim().parse().ok()).filter(|&w| w > 0)
}

/// Runs every grid point of `config` on the worker count from [`WORKERS_ENV`].
pub fn run_experiment(config: &ExperimentConfig) -> Result<AggregateResult> {
    run_experiment_with_workers(config, workers_from_env())
}

/// Runs every grid point; `workers = None` uses rayon's default pool.
///
/// Each trial draws its codeword and traces from streams keyed by
/// `(master_seed, trial index, stream)`, and totals are integers, so results
/// do not depend on the worker count.
pub fn run_experiment_with_workers(config: &ExperimentConfig, workers: Option<usize>) -> Result<AggregateResult> {
    config.validate()?;
    let code = config.code.instantiate(config.n, config.q)?;
    let sampler = CodeSampler::new(code)?;
    let run = || -> Result<Vec<PointResult>> {
        config.grid().into_iter().map(|channel| run_point(config, &sampler, channel)).collect()
    };
    let points = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(AggregateResult { config: config.clone(), code_label: code.label(), points })
}

fn run_point(config: &ExperimentConfig, sampler: &CodeSampler, channel: ChannelConfig) -> Result<PointResult> {
    let start = Instant::now();
    let totals = (0..config.trials_per_point)
        .into_par_iter()
        .map(|trial| run_trial(config, sampler, channel, trial))
        .try_reduce(Totals::default, |a, b| Ok(a + b))?;
    Ok(PointResult { channel, totals, wall_time: start.elapsed() })
}

fn run_trial(config: &ExperimentConfig, sampler: &CodeSampler, channel: ChannelConfig, trial: u64) -> Result<Totals> {
    let seed = config.master_seed;
    let c = sampler.sample(&mut stream_rng(seed, trial, CODEWORD_STREAM));
    let traces = (0..config.t)
        .map(|ch| channel.transmit(&c, &mut stream_rng(seed, trial, channel_stream(ch))))
        .collect::<Result<Vec<Word>>>()?;
    let code: &Code = sampler.code();
    let ctx = DecodeContext {
        n: Some(config.n),
        code: Some(code),
        k: match channel {
            ChannelConfig::Kdel { k } => Some(k),
            _ => None,
        },
        cap: config.cap.unwrap_or(DEFAULT_CAP),
    };
    let out = decode(&config.decoder, &traces, &ctx)?;
    Ok(Totals::single(&attribute_error(&c, &out.word), out.truncated))
}
