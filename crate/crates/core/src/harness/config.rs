use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channels::ChannelConfig;
use crate::codes::CodeConfig;
use crate::decoders::DecoderKind;
use crate::error::{Error, Result};

/// Quantities reported per grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Mean `d_L(output, c) / n`.
    LevenshteinRate,
    /// Fraction of trials with `output != c`.
    FailureRate,
    /// Mean `| |output| - n | / n`: symbols lost (or gained) outright.
    RunComponent,
    /// Mean `(d_L - | |output| - n |) / n`: the remaining, length-preserving part.
    AltComponent,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::LevenshteinRate, Metric::FailureRate, Metric::RunComponent, Metric::AltComponent];

    pub fn name(&self) -> &'static str {
        match self {
            Metric::LevenshteinRate => "levenshtein_rate",
            Metric::FailureRate => "failure_rate",
            Metric::RunComponent => "run_component",
            Metric::AltComponent => "alt_component",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown metric {s:?}")))
    }
}

fn default_t() -> usize {
    2
}

fn default_q() -> u8 {
    2
}

fn default_metrics() -> Vec<Metric> {
    Metric::ALL.to_vec()
}

/// Monte Carlo experiment description (JSON).
///
/// ```json
/// {"channel":{"kind":"del"},"t":2,"n":150,"q":2,"code":{"code":"all"},
///  "decoder":"mld2del","p_grid":[0.01,0.02],"trials_per_point":20000,"master_seed":1}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub channel: ChannelConfig,
    #[serde(default = "default_t")]
    pub t: usize,
    pub n: usize,
    #[serde(default = "default_q")]
    pub q: u8,
    #[serde(default)]
    pub code: CodeConfig,
    pub decoder: DecoderKind,
    /// Probabilities to sweep; ignored for `k-Del`.
    #[serde(default)]
    pub p_grid: Vec<f64>,
    pub trials_per_point: u64,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_metrics")]
    pub metrics: Vec<Metric>,
    /// Candidate enumeration cap for the two-trace decoders.
    #[serde(default)]
    pub cap: Option<usize>,
}

impl ExperimentConfig {
    /// Parses and validates a JSON config.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.trials_per_point == 0 {
            return bad("trials_per_point must be at least 1".into());
        }
        if !(1..=2).contains(&self.t) {
            return bad(format!("t must be 1 or 2, got {}", self.t));
        }
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.decoder.traces() != self.t {
            return bad(format!("decoder {} needs t = {}", self.decoder, self.decoder.traces()));
        }
        if let ChannelConfig::Ins { q, .. } = self.channel {
            if q != self.q {
                return bad(format!("insertion alphabet {q} differs from q = {}", self.q));
            }
        }
        match (&self.decoder, &self.channel) {
            (DecoderKind::Mld2Del, ChannelConfig::Ins { .. }) => return bad("mld2del needs a deletion channel".into()),
            (DecoderKind::Mld2Ins, ChannelConfig::Del { .. } | ChannelConfig::Kdel { .. }) => {
                return bad("mld2ins needs an insertion channel".into())
            }
            _ => {}
        }
        match self.channel {
            ChannelConfig::Kdel { k } if k > self.n => return bad(format!("k = {k} exceeds n = {}", self.n)),
            ChannelConfig::Kdel { .. } => {}
            _ => {
                if self.p_grid.is_empty() {
                    return bad("p_grid must not be empty".into());
                }
                if let Some(p) = self.p_grid.iter().find(|p| !(0.0..1.0).contains(*p)) {
                    return bad(format!("grid probability {p} outside [0, 1)"));
                }
            }
        }
        self.code.instantiate(self.n, self.q).map(|_| ())
    }

    /// Channel realisations, one per grid point.
    pub fn grid(&self) -> Vec<ChannelConfig> {
        match self.channel {
            ChannelConfig::Kdel { .. } => vec![self.channel],
            ChannelConfig::Ins { .. } => {
                self.p_grid.iter().map(|&p| ChannelConfig::Ins { p, q: self.q }).collect()
            }
            ChannelConfig::Del { .. } => self.p_grid.iter().map(|&p| self.channel.with_p(p)).collect(),
        }
    }
}
