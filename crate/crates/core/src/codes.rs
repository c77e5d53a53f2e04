//! Varshamov-Tenengolts and shifted VT codes.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::word::Word;

/// Largest length for which codes are listed exhaustively.
pub const MAX_ENUMERATION_LEN: usize = 24;

/// `VT_a(n) = { x in Sigma_2^n : sum_i i x_i = a (mod n+1) }`, positions 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VtParams {
    pub n: usize,
    pub a: usize,
}

/// `SVT_{a,b}(n, P) = { x : sum_i i x_i = a (mod P), sum_i x_i = b (mod 2) }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvtParams {
    pub n: usize,
    pub a: usize,
    #[serde(rename = "P")]
    pub p: usize,
    pub b: u8,
}

impl VtParams {
    pub fn new(n: usize, a: usize) -> Result<Self> {
        if a > n {
            return domain(format!("VT residue {a} must lie in [0, {n}]"));
        }
        Ok(Self { n, a })
    }
}

impl SvtParams {
    pub fn new(n: usize, a: usize, p: usize, b: u8) -> Result<Self> {
        if p < 2 || p > n + 1 || a >= p || b > 1 {
            return domain(format!("invalid SVT parameters n={n} a={a} P={p} b={b}"));
        }
        Ok(Self { n, a, p, b })
    }

    /// `ceil(log2 n) + 2`, capped at `n + 1`.
    pub fn default_modulus(n: usize) -> usize {
        let log = if n <= 1 { 0 } else { (usize::BITS - (n - 1).leading_zeros()) as usize };
        (log + 2).min(n + 1).max(2)
    }
}

/// `sum_i i x_i` with 1-based positions.
pub fn vt_checksum(x: &[u8]) -> usize {
    x.iter().enumerate().map(|(i, &s)| (i + 1) * s as usize).sum()
}

fn require_binary(x: &Word) -> Result<()> {
    if x.q() == 2 {
        Ok(())
    } else {
        domain("VT codes are binary")
    }
}

fn require_len(x: &Word, n: usize) -> Result<()> {
    if x.len() == n {
        Ok(())
    } else {
        domain(format!("expected length {n}, got {}", x.len()))
    }
}

pub fn vt_is_member(x: &Word, params: &VtParams) -> Result<bool> {
    require_binary(x)?;
    require_len(x, params.n)?;
    Ok(vt_checksum(x.symbols()) % (params.n + 1) == params.a)
}

pub fn svt_is_member(x: &Word, params: &SvtParams) -> Result<bool> {
    require_binary(x)?;
    require_len(x, params.n)?;
    Ok(svt_member_of(x.symbols(), params))
}

fn svt_member_of(x: &[u8], params: &SvtParams) -> bool {
    let weight: usize = x.iter().map(|&s| s as usize).sum();
    vt_checksum(x) % params.p == params.a && weight % 2 == params.b as usize
}

/// Levenshtein's algebraic single-deletion decoder.
///
/// With `w = wt(y)` and deficiency `D = (a - checksum(y)) mod (n+1)`: if `D <= w`
/// a 0 was lost and is restored with exactly `D` ones to its right; otherwise a
/// 1 was lost and is restored with exactly `D - w - 1` zeros to its left.
pub fn vt_decode_1del(y: &Word, params: &VtParams) -> Result<Word> {
    require_binary(y)?;
    if params.n == 0 || y.len() != params.n - 1 {
        return domain(format!("expected a trace of length {}", params.n.saturating_sub(1)));
    }
    let m = params.n + 1;
    let s = y.symbols();
    let weight = s.iter().filter(|&&b| b == 1).count();
    let deficiency = (params.a + m - vt_checksum(s) % m) % m;
    if deficiency <= weight {
        // leftmost gap with `deficiency` ones to its right
        let mut ones_right = weight;
        let mut g = 0;
        while ones_right > deficiency {
            ones_right -= s[g] as usize;
            g += 1;
        }
        return Ok(y.with_insertion(g, 0));
    }
    let zeros_left = deficiency - weight - 1;
    let (mut seen, mut g) = (0, 0);
    while seen < zeros_left {
        seen += usize::from(s[g] == 0);
        g += 1;
    }
    Ok(y.with_insertion(g, 1))
}

/// Search decoder: the unique member of `I_1(y) ∩ VT_a(n)`.
pub fn vt_decode_1del_search(y: &Word, params: &VtParams) -> Result<Word> {
    require_binary(y)?;
    if params.n == 0 || y.len() != params.n - 1 {
        return domain(format!("expected a trace of length {}", params.n.saturating_sub(1)));
    }
    let m = params.n + 1;
    unique_member(single_insertions(y, 0..=y.len()), |c| vt_checksum(c.symbols()) % m == params.a)
}

/// Decodes a deletion known to have hit a position in `[window_start, window_start + P)`.
pub fn svt_decode_1del(y: &Word, params: &SvtParams, window_start: usize) -> Result<Word> {
    require_binary(y)?;
    if params.n == 0 || y.len() != params.n - 1 {
        return domain(format!("expected a trace of length {}", params.n.saturating_sub(1)));
    }
    let end = (window_start + params.p).min(params.n);
    if window_start >= end {
        return domain(format!("window start {window_start} outside the word"));
    }
    unique_member(single_insertions(y, window_start..=end - 1), |c| svt_member_of(c.symbols(), params))
}

fn single_insertions(y: &Word, gaps: std::ops::RangeInclusive<usize>) -> Vec<Word> {
    let mut out: Vec<Word> = gaps.flat_map(|g| [0u8, 1].map(|s| y.with_insertion(g, s))).collect();
    out.sort();
    out.dedup();
    out
}

fn unique_member(cands: Vec<Word>, member: impl Fn(&Word) -> bool) -> Result<Word> {
    let mut hits = cands.into_iter().filter(|c| member(c));
    match (hits.next(), hits.next()) {
        (Some(c), None) => Ok(c),
        (None, _) => Err(Error::DecodeFailure("no consistent codeword".into())),
        (Some(_), Some(_)) => Err(Error::DecodeFailure("several consistent codewords".into())),
    }
}

/// Code selection as written in experiment configs:
/// `{"code":"all"}`, `{"code":"vt","a":0}`, `{"code":"svt","a":0,"P":10,"b":0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "code", rename_all = "lowercase")]
pub enum CodeConfig {
    #[default]
    All,
    Vt {
        #[serde(default)]
        a: usize,
    },
    Svt {
        #[serde(default)]
        a: usize,
        #[serde(rename = "P", default)]
        p: Option<usize>,
        #[serde(default)]
        b: u8,
    },
}

impl CodeConfig {
    pub fn instantiate(&self, n: usize, q: u8) -> Result<Code> {
        match *self {
            CodeConfig::All => Ok(Code::All { n, q }),
            CodeConfig::Vt { a } => {
                binary_q(q)?;
                Ok(Code::Vt(VtParams::new(n, a)?))
            }
            CodeConfig::Svt { a, p, b } => {
                binary_q(q)?;
                let p = p.unwrap_or_else(|| SvtParams::default_modulus(n));
                Ok(Code::Svt(SvtParams::new(n, a, p, b)?))
            }
        }
    }
}

fn binary_q(q: u8) -> Result<()> {
    if q == 2 {
        Ok(())
    } else {
        Err(Error::Config("VT and SVT codes need q = 2".into()))
    }
}

/// A concrete code of length `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Code {
    All { n: usize, q: u8 },
    Vt(VtParams),
    Svt(SvtParams),
}

impl Code {
    pub fn n(&self) -> usize {
        match self {
            Code::All { n, .. } => *n,
            Code::Vt(p) => p.n,
            Code::Svt(p) => p.n,
        }
    }

    pub fn q(&self) -> u8 {
        match self {
            Code::All { q, .. } => *q,
            _ => 2,
        }
    }

    pub fn is_all(&self) -> bool {
        matches!(self, Code::All { .. })
    }

    pub fn contains(&self, x: &[u8]) -> bool {
        if x.len() != self.n() {
            return false;
        }
        match self {
            Code::All { q, .. } => x.iter().all(|&s| s < *q),
            Code::Vt(p) => vt_checksum(x) % (p.n + 1) == p.a,
            Code::Svt(p) => svt_member_of(x, p),
        }
    }

    /// Short label used in CSV output.
    pub fn label(&self) -> String {
        match self {
            Code::All { .. } => "all".into(),
            Code::Vt(p) => format!("vt(a={})", p.a),
            Code::Svt(p) => format!("svt(a={};P={};b={})", p.a, p.p, p.b),
        }
    }

    /// All members in lexicographic order.
    pub fn enumerate(&self) -> Result<Vec<Word>> {
        let n = self.n();
        if n > MAX_ENUMERATION_LEN {
            return Err(Error::Infeasible(format!("enumeration limited to n <= {MAX_ENUMERATION_LEN}")));
        }
        let q = self.q();
        Ok(Word::all(n, q).filter(|w| self.contains(w.symbols())).collect())
    }

    /// Uniform random member by rejection sampling.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        let n = self.n();
        let q = self.q();
        let mut buf = vec![0u8; n];
        loop {
            if q == 2 {
                let mut bits = 0u64;
                for (i, slot) in buf.iter_mut().enumerate() {
                    if i % 64 == 0 {
                        bits = rng.next_u64();
                    }
                    *slot = (bits & 1) as u8;
                    bits >>= 1;
                }
            } else {
                buf.iter_mut().for_each(|s| *s = rng.gen_range(0..q));
            }
            if self.contains(&buf) {
                return Word::from_raw(buf, q);
            }
        }
    }
}

/// Draws codewords uniformly, from a cached list when small enough.
#[derive(Clone, Debug)]
pub struct CodeSampler {
    code: Code,
    members: Option<Vec<Word>>,
}

impl CodeSampler {
    pub fn new(code: Code) -> Result<Self> {
        let members = if !code.is_all() && code.n() <= MAX_ENUMERATION_LEN {
            let m = code.enumerate()?;
            if m.is_empty() {
                return Err(Error::Config(format!("code {} is empty", code.label())));
            }
            Some(m)
        } else {
            None
        };
        Ok(Self { code, members })
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        match &self.members {
            Some(m) => m[rng.gen_range(0..m.len())].clone(),
            None => self.code.sample(rng),
        }
    }
}
