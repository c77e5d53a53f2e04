use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::exact::exact_expected_distance;
use crate::codes::Code;
use crate::combinatorics::{binomial, deletion_ball, embedding_number, for_each_supersequence};
use crate::count::EmbeddingCount;
use crate::decoders::{decode_en, two_del_condition, DecoderKind};
use crate::error::{domain, Error, Result};
use crate::rng::stream_rng;
use crate::supersequences::{enumerate_scs, DEFAULT_CAP};
use crate::word::{indel_distance, is_subsequence, Word};

/// Exhaustive self-checks exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleCheck {
    /// Lazy and `EN^n` expected distances on `1-Del`.
    OneDel,
    /// Sign of the 2-deletion lazy-vs-EN comparison against the closed-form condition.
    TwoDel,
    /// SCS enumeration against a brute-force filter.
    Scs,
    /// Embedding numbers against subset enumeration.
    Emb,
}

impl FromStr for OracleCheck {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "1del" => OracleCheck::OneDel,
            "2del" => OracleCheck::TwoDel,
            "scs" => OracleCheck::Scs,
            "emb" => OracleCheck::Emb,
            _ => return Err(Error::Parse(format!("unknown oracle check {s:?} (expected 1del, 2del, scs or emb)"))),
        })
    }
}

impl fmt::Display for OracleCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleCheck::OneDel => "1del",
            OracleCheck::TwoDel => "2del",
            OracleCheck::Scs => "scs",
            OracleCheck::Emb => "emb",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub check: OracleCheck,
    pub n: usize,
    pub cases: u64,
    pub mismatches: u64,
    /// First mismatch or a summary of the computed values.
    pub detail: String,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={}: {} ({} cases, {} mismatches) {}",
            self.check,
            self.n,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases,
            self.mismatches,
            self.detail
        )
    }
}

pub fn run_oracle(check: OracleCheck, n: usize) -> Result<OracleReport> {
    match check {
        OracleCheck::OneDel => one_del(n),
        OracleCheck::TwoDel => two_del(n),
        OracleCheck::Scs => scs(n),
        OracleCheck::Emb => emb(n),
    }
}

fn report(check: OracleCheck, n: usize, cases: u64, mismatches: u64, detail: String) -> OracleReport {
    OracleReport { check, n, cases, mismatches, detail }
}

fn one_del(n: usize) -> Result<OracleReport> {
    if !(2..=20).contains(&n) {
        return domain("1del oracle needs 2 <= n <= 20");
    }
    let code = Code::All { n, q: 2 };
    let lazy = exact_expected_distance(&DecoderKind::Lazy, 1, &code)?;
    let en = exact_expected_distance(&DecoderKind::En(n), 1, &code)?;
    let target = BigRational::new(BigInt::from(1), BigInt::from(n));
    let mismatches = u64::from(lazy != target);
    let rel = if en > target { ">" } else if en == target { "=" } else { "<" };
    Ok(report(OracleCheck::OneDel, n, 1, mismatches, format!("lazy={lazy} en={en} (EN {rel} 1/n)")))
}

/// `sum_{c in I_2(y)} Emb(c; y) (d_L(EN^{n-1}(y), c) - 2)`; non-negative means lazy is no worse.
pub fn two_del_margin(y: &Word) -> Result<i128> {
    let en = decode_en(y, y.len() + 1)?;
    let mut total = 0i128;
    for_each_supersequence(y.symbols(), y.q(), 2, |c| {
        let c = Word::from_raw(c.to_vec(), y.q());
        let emb = embedding_number(&c, y).to_u128().expect("at most C(n, 2)") as i128;
        total += emb * (indel_distance(&en, &c) as i128 - 2);
    });
    Ok(total)
}

fn two_del(n: usize) -> Result<OracleReport> {
    if !(3..=22).contains(&n) {
        return domain("2del oracle needs 3 <= n <= 22");
    }
    let len = n - 2;
    let results = (0..1u64 << len)
        .into_par_iter()
        .map(|idx| {
            let y = Word::from_index(idx, len, 2);
            let margin = two_del_margin(&y)?;
            let ok = (margin >= 0) == (two_del_condition(&y) >= 0);
            Ok(if ok { None } else { Some(y) })
        })
        .collect::<Result<Vec<_>>>()?;
    let bad: Vec<Word> = results.into_iter().flatten().collect();
    let detail = bad.first().map_or_else(String::new, |y| format!("first violation y={y}"));
    Ok(report(OracleCheck::TwoDel, n, 1 << len, bad.len() as u64, detail))
}

fn brute_scs(y1: &Word, y2: &Word) -> Vec<Word> {
    let q = y1.q();
    for len in y1.len().max(y2.len()).. {
        let found: Vec<Word> = Word::all(len, q).filter(|w| is_subsequence(y1, w) && is_subsequence(y2, w)).collect();
        if !found.is_empty() {
            return found;
        }
    }
    unreachable!("y1 y2 is a common supersequence")
}

fn scs(n: usize) -> Result<OracleReport> {
    if n > 10 {
        return domain("scs oracle needs n <= 10");
    }
    // exhaustive for short words, seeded sample for the rest
    let mut pairs = Vec::new();
    let exhaustive = n.min(4);
    for l1 in 0..=exhaustive {
        for l2 in 0..=exhaustive {
            for a in Word::all(l1, 2) {
                for b in Word::all(l2, 2) {
                    pairs.push((a.clone(), b));
                }
            }
        }
    }
    let mut rng = stream_rng(n as u64, 0, 0);
    for _ in 0..if n > exhaustive { 400 } else { 0 } {
        let draw = |rng: &mut crate::rng::TraceRng| {
            let len = rng.gen_range(exhaustive + 1..=n);
            Word::from_index(rng.gen_range(0..1u64 << len), len, 2)
        };
        pairs.push((draw(&mut rng), draw(&mut rng)));
    }
    let mismatches: Vec<(Word, Word)> = pairs
        .par_iter()
        .filter_map(|(a, b)| {
            let got = enumerate_scs(a, b, None, DEFAULT_CAP).ok()?;
            (got.candidates != brute_scs(a, b)).then(|| (a.clone(), b.clone()))
        })
        .collect();
    let detail = mismatches.first().map_or_else(String::new, |(a, b)| format!("first mismatch ({a}, {b})"));
    Ok(report(OracleCheck::Scs, n, pairs.len() as u64, mismatches.len() as u64, detail))
}

/// Number of index subsets of `x` spelling `y`.
fn subset_count(x: &Word, y: &Word) -> u64 {
    let n = x.len();
    (0..1u64 << n)
        .filter(|m| m.count_ones() as usize == y.len())
        .filter(|&m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| x.symbols()[i]).eq(y.symbols().iter().copied()))
        .count() as u64
}

fn emb(n: usize) -> Result<OracleReport> {
    if n > 12 {
        return domain("emb oracle needs n <= 12");
    }
    let (cases, mismatches) = (0..1u64 << n)
        .into_par_iter()
        .map(|idx| {
            let x = Word::from_index(idx, n, 2);
            let mut cases = 0u64;
            let mut bad = 0u64;
            for t in 0..=n {
                let ball = deletion_ball(&x, t).expect("t <= n");
                let mut sum = EmbeddingCount::ZERO;
                for y in &ball {
                    let e = embedding_number(&x, y);
                    cases += 1;
                    bad += u64::from(e != EmbeddingCount::from(subset_count(&x, y)));
                    sum = sum + e;
                }
                cases += 1;
                bad += u64::from(sum.to_biguint() != binomial(n, t));
            }
            (cases, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(report(OracleCheck::Emb, n, cases, mismatches, String::new()))
}
