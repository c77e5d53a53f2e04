//! q-ary words, run decomposition, alternation predicates and indel distance.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest alphabet with a single-character text form (`0-9a-z`).
pub const MAX_Q: u8 = 36;

/// A finite word over the alphabet `{0, .., q-1}`.
///
/// Ordering is lexicographic on the symbol sequence, so among words of equal
/// length `Ord` is the usual dictionary order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    symbols: Vec<u8>,
    q: u8,
}

impl Word {
    pub fn new(symbols: Vec<u8>, q: u8) -> Result<Self> {
        check_q(q)?;
        if let Some(&s) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::SymbolOutOfRange { symbol: s, q });
        }
        Ok(Self { symbols, q })
    }

    /// Caller guarantees every symbol is below `q` and `q` is supported.
    pub(crate) fn from_raw(symbols: Vec<u8>, q: u8) -> Self {
        debug_assert!(symbols.iter().all(|&s| s < q));
        Self { symbols, q }
    }

    pub fn binary(symbols: &[u8]) -> Result<Self> {
        Self::new(symbols.to_vec(), 2)
    }

    pub fn empty(q: u8) -> Self {
        Self { symbols: Vec::new(), q }
    }

    pub fn zeros(len: usize, q: u8) -> Self {
        Self { symbols: vec![0; len], q }
    }

    /// Parses `"01001"`-style text; `a..z` encode symbols 10..35.
    pub fn parse(text: &str, q: u8) -> Result<Self> {
        check_q(q)?;
        let text = text.trim();
        let body = if text == "ε" || text == "-" { "" } else { text };
        let symbols = body
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad character {c:?} in {text:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(symbols, q)
    }

    /// The word of length `len` whose base-`q` digits (most significant first) spell `index`.
    pub fn from_index(mut index: u64, len: usize, q: u8) -> Self {
        let mut symbols = vec![0u8; len];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % q as u64) as u8;
            index /= q as u64;
        }
        Self { symbols, q }
    }

    /// All `q^len` words of length `len` in lexicographic order.
    pub fn all(len: usize, q: u8) -> impl Iterator<Item = Word> {
        let total = (q as u64).checked_pow(len as u32).expect("word space too large");
        (0..total).map(move |i| Word::from_index(i, len, q))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != 0).count()
    }

    pub fn runs(&self) -> RunProfile {
        runs(self)
    }

    /// Copy with symbol `s` inserted so that it lands at index `pos`.
    pub fn with_insertion(&self, pos: usize, s: u8) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.extend_from_slice(&self.symbols[..pos]);
        v.push(s);
        v.extend_from_slice(&self.symbols[pos..]);
        Word::from_raw(v, self.q)
    }

    /// Copy with the symbol at index `pos` removed.
    pub fn with_deletion(&self, pos: usize) -> Word {
        let mut v = self.symbols.clone();
        v.remove(pos);
        Word::from_raw(v, self.q)
    }
}

fn check_q(q: u8) -> Result<()> {
    if (2..=MAX_Q).contains(&q) {
        Ok(())
    } else {
        Err(Error::BadAlphabet(q as u32))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("ε");
        }
        for &s in &self.symbols {
            let c = std::char::from_digit(s as u32, 36).expect("symbol below 36");
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self}, q={})", self.q)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Binary unless a larger symbol appears, in which case `q` is the smallest fitting alphabet.
    fn from_str(s: &str) -> Result<Self> {
        let w = Word::parse(s, MAX_Q)?;
        let q = w.symbols.iter().copied().max().map_or(2, |m| (m + 1).max(2));
        Ok(Word::from_raw(w.symbols, q))
    }
}

/// Maximal runs of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunProfile {
    pub run_lengths: Vec<usize>,
    pub run_symbols: Vec<u8>,
    /// Number of runs.
    pub r: usize,
    /// Index of the first run of maximal length (0 for the empty word).
    pub longest_idx: usize,
    /// Maximal run length (0 for the empty word).
    pub r_max: usize,
}

impl RunProfile {
    /// Rebuilds the word described by this profile.
    pub fn reconstruct(&self, q: u8) -> Word {
        let mut v = Vec::with_capacity(self.run_lengths.iter().sum());
        for (&len, &s) in self.run_lengths.iter().zip(&self.run_symbols) {
            v.extend(std::iter::repeat(s).take(len));
        }
        Word::from_raw(v, q)
    }

    /// Start index of every run.
    pub fn starts(&self) -> Vec<usize> {
        let mut acc = 0;
        self.run_lengths
            .iter()
            .map(|&l| {
                let s = acc;
                acc += l;
                s
            })
            .collect()
    }
}

pub fn runs(w: &Word) -> RunProfile {
    runs_of(w.symbols())
}

pub(crate) fn runs_of(symbols: &[u8]) -> RunProfile {
    let mut run_lengths = Vec::new();
    let mut run_symbols = Vec::new();
    for &s in symbols {
        match run_symbols.last() {
            Some(&last) if last == s => *run_lengths.last_mut().unwrap() += 1,
            _ => {
                run_symbols.push(s);
                run_lengths.push(1);
            }
        }
    }
    let (mut longest_idx, mut r_max) = (0, 0);
    for (i, &l) in run_lengths.iter().enumerate() {
        if l > r_max {
            r_max = l;
            longest_idx = i;
        }
    }
    RunProfile { r: run_lengths.len(), run_lengths, run_symbols, longest_idx, r_max }
}

/// Greedy two-pointer test that `y` is a subsequence of `x`.
pub fn is_subsequence(y: &Word, x: &Word) -> bool {
    is_subsequence_of(y.symbols(), x.symbols())
}

pub(crate) fn is_subsequence_of(y: &[u8], x: &[u8]) -> bool {
    let mut it = x.iter();
    y.iter().all(|s| it.any(|t| t == s))
}

/// True iff `w` cycles through all `q` symbols in one fixed order.
///
/// For `q = 2` this is "every run has length 1".
pub fn is_alternating(w: &Word) -> bool {
    let s = w.symbols();
    let q = w.q() as usize;
    let head = &s[..s.len().min(q)];
    let mut seen = vec![false; q];
    for &c in head {
        if std::mem::replace(&mut seen[c as usize], true) {
            return false;
        }
    }
    (q..s.len()).all(|i| s[i] == s[i - q])
}

/// True iff `w` has the form `ABAB..` over at most two symbols.
pub fn is_two_symbol_alternating(w: &Word) -> bool {
    let s = w.symbols();
    s.windows(2).all(|p| p[0] != p[1]) && (2..s.len()).all(|i| s[i] == s[i - 2])
}

/// Indel (Levenshtein without substitutions) distance `|x| + |y| - 2 LCS(x, y)`.
pub fn indel_distance(x: &Word, y: &Word) -> usize {
    let q = x.q().max(y.q());
    indel_distance_of(x.symbols(), y.symbols(), q)
}

pub(crate) fn indel_distance_of(x: &[u8], y: &[u8], q: u8) -> usize {
    x.len() + y.len() - 2 * lcs_bit_parallel(x, y, q)
}

/// Bit-parallel LCS length (Allison-Dix / Hyyro), `O(|x| |y| / 64)` time and
/// `O(q min(|x|, |y|) / 64)` memory.
pub(crate) fn lcs_bit_parallel(x: &[u8], y: &[u8], q: u8) -> usize {
    let (pat, text) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let m = pat.len();
    if m == 0 {
        return 0;
    }
    let blocks = m.div_ceil(64);
    let mut masks = vec![0u64; q as usize * blocks];
    for (i, &s) in pat.iter().enumerate() {
        masks[s as usize * blocks + i / 64] |= 1u64 << (i % 64);
    }
    let mut v = vec![!0u64; blocks];
    for &c in text {
        let mask = &masks[c as usize * blocks..(c as usize + 1) * blocks];
        let mut carry = 0u64;
        for (vb, &mb) in v.iter_mut().zip(mask) {
            let u = *vb & mb;
            let (s1, c1) = vb.overflowing_add(u);
            let (s2, c2) = s1.overflowing_add(carry);
            carry = (c1 | c2) as u64;
            *vb = s2 | (*vb & !mb);
        }
    }
    let tail = m % 64;
    v.iter()
        .enumerate()
        .map(|(b, &vb)| {
            let valid = if b + 1 == blocks && tail != 0 { (1u64 << tail) - 1 } else { !0 };
            (!vb & valid).count_ones() as usize
        })
        .sum()
}
