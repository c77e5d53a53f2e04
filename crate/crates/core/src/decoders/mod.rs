//! Decoder family: lazy, embedding-number (`EN^m`), ML over a code, the
//! two-trace degraded ML decoders (`ML^D`) and the exact `ML*` decoders for the
//! 1- and 2-deletion channels.
//!
//! Ties are broken by minimal length first, then lexicographically smallest word.

mod en;
mod mld;
mod mlstar;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use en::{decode_en, EN_EXACT_BALL};
pub use mld::{
    decode_ml_code, decode_mld_two_del, decode_mld_two_del_in_code, decode_mld_two_ins, MlCodeOutput, MldOptions,
    MldOutput, MAX_CODE_SLACK,
};
pub use mlstar::{
    brute_force_ml_star, ml_star_1del, ml_star_2del, objective_f, two_del_condition, BruteForceOutcome, ObjectiveValue,
    BRUTE_FORCE_BUDGET,
};

use crate::codes::Code;
use crate::error::{domain, Error, Result};
use crate::supersequences::DEFAULT_CAP;
use crate::word::Word;

/// The decoder to apply to channel outputs.
///
/// Text forms: `lazy`, `en:<m>`, `mlcode`, `mld2del`, `mld2ins`, `mlstar1`,
/// `mlstar2`, `brute` or `brute:<lo>-<hi>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum DecoderKind {
    Lazy,
    En(usize),
    MlCode,
    Mld2Del,
    Mld2Ins,
    MlStar1Del,
    MlStar2Del,
    /// Length window; defaults to `[|y|, |y| + k + 1]`.
    BruteForceMlStar(Option<RangeInclusive<usize>>),
}

impl DecoderKind {
    /// Number of traces the decoder consumes.
    pub fn traces(&self) -> usize {
        match self {
            DecoderKind::Mld2Del | DecoderKind::Mld2Ins => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderKind::Lazy => f.write_str("lazy"),
            DecoderKind::En(m) => write!(f, "en:{m}"),
            DecoderKind::MlCode => f.write_str("mlcode"),
            DecoderKind::Mld2Del => f.write_str("mld2del"),
            DecoderKind::Mld2Ins => f.write_str("mld2ins"),
            DecoderKind::MlStar1Del => f.write_str("mlstar1"),
            DecoderKind::MlStar2Del => f.write_str("mlstar2"),
            DecoderKind::BruteForceMlStar(None) => f.write_str("brute"),
            DecoderKind::BruteForceMlStar(Some(r)) => write!(f, "brute:{}-{}", r.start(), r.end()),
        }
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown decoder {s:?}"));
        Ok(match s.trim() {
            "lazy" => DecoderKind::Lazy,
            "mlcode" => DecoderKind::MlCode,
            "mld2del" => DecoderKind::Mld2Del,
            "mld2ins" => DecoderKind::Mld2Ins,
            "mlstar1" => DecoderKind::MlStar1Del,
            "mlstar2" => DecoderKind::MlStar2Del,
            "brute" => DecoderKind::BruteForceMlStar(None),
            other => {
                if let Some(m) = other.strip_prefix("en:") {
                    DecoderKind::En(m.parse().map_err(|_| bad())?)
                } else if let Some(r) = other.strip_prefix("brute:") {
                    let (lo, hi) = r.split_once('-').ok_or_else(bad)?;
                    let lo: usize = lo.parse().map_err(|_| bad())?;
                    let hi: usize = hi.parse().map_err(|_| bad())?;
                    DecoderKind::BruteForceMlStar(Some(lo..=hi))
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl TryFrom<String> for DecoderKind {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<DecoderKind> for String {
    fn from(d: DecoderKind) -> String {
        d.to_string()
    }
}

/// Side information a decoder may need.
#[derive(Clone, Copy, Debug)]
pub struct DecodeContext<'a> {
    /// Transmitted length, when known.
    pub n: Option<usize>,
    /// Code the transmitted word belongs to; `None` or `Code::All` means unrestricted.
    pub code: Option<&'a Code>,
    /// Deletion count of a `k-Del` channel (brute-force window).
    pub k: Option<usize>,
    pub cap: usize,
}

impl Default for DecodeContext<'_> {
    fn default() -> Self {
        Self { n: None, code: None, k: None, cap: DEFAULT_CAP }
    }
}

/// Output of [`decode`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub word: Word,
    /// A candidate enumeration hit its cap.
    pub truncated: bool,
}

impl From<Word> for Decoded {
    fn from(word: Word) -> Self {
        Decoded { word, truncated: false }
    }
}

/// Returns the input unchanged.
pub fn decode_lazy(y: &Word) -> Word {
    y.clone()
}

/// Dispatches `kind` on the given traces.
pub fn decode(kind: &DecoderKind, traces: &[Word], ctx: &DecodeContext<'_>) -> Result<Decoded> {
    if traces.len() != kind.traces() {
        return domain(format!("decoder {kind} expects {} trace(s), got {}", kind.traces(), traces.len()));
    }
    let y = &traces[0];
    let restricted = ctx.code.filter(|c| !c.is_all());
    Ok(match kind {
        DecoderKind::Lazy => decode_lazy(y).into(),
        DecoderKind::En(m) => decode_en(y, *m)?.into(),
        DecoderKind::MlCode => {
            let code = ctx.code.ok_or_else(|| Error::Config("mlcode needs a code".into()))?;
            decode_ml_code(y, &code.enumerate()?)?.word.into()
        }
        DecoderKind::Mld2Del => {
            let opts = MldOptions { n: ctx.n, cap: ctx.cap };
            let out = match restricted {
                Some(code) => decode_mld_two_del_in_code(y, &traces[1], code, ctx.cap)?,
                None => decode_mld_two_del(y, &traces[1], &opts)?,
            };
            Decoded { word: out.word, truncated: out.truncated }
        }
        DecoderKind::Mld2Ins => {
            let out = decode_mld_two_ins(y, &traces[1], &MldOptions { n: ctx.n, cap: ctx.cap })?;
            Decoded { word: out.word, truncated: out.truncated }
        }
        DecoderKind::MlStar1Del => ml_star_1del(y).into(),
        DecoderKind::MlStar2Del => ml_star_2del(y)?.into(),
        DecoderKind::BruteForceMlStar(window) => {
            let k = match (ctx.k, ctx.n) {
                (Some(k), _) => k,
                (None, Some(n)) if n >= y.len() => n - y.len(),
                _ => return Err(Error::Config("brute force needs k or n".into())),
            };
            let lengths = window.clone().unwrap_or(y.len()..=y.len() + k + 1);
            brute_force_ml_star(y, k, lengths, restricted)?.word.into()
        }
    })
}
