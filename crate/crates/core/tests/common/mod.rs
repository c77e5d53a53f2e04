//! Brute-force reference implementations shared by the integration tests.
//! Each one is written independently of the library's algorithms.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// All words of length `len` over `0..q`, lexicographic.
pub fn all_words(len: usize, q: u8) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..q).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// Quadratic LCS table.
pub fn lcs(a: &[u8], b: &[u8]) -> usize {
    let mut t = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            t[i][j] = if a[i - 1] == b[j - 1] { t[i - 1][j - 1] + 1 } else { t[i - 1][j].max(t[i][j - 1]) };
        }
    }
    t[a.len()][b.len()]
}

pub fn indel(a: &[u8], b: &[u8]) -> usize {
    a.len() + b.len() - 2 * lcs(a, b)
}

pub fn is_subseq(y: &[u8], x: &[u8]) -> bool {
    let mut it = x.iter();
    y.iter().all(|s| it.any(|t| t == s))
}

/// `Emb(x; y)` for every `y`, by walking all `2^|x|` index subsets.
pub fn subset_embeddings(x: &[u8]) -> BTreeMap<Vec<u8>, u64> {
    let n = x.len();
    let mut out = BTreeMap::new();
    for mask in 0u32..1 << n {
        let y: Vec<u8> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| x[i]).collect();
        *out.entry(y).or_insert(0) += 1;
    }
    out
}

/// `Emb(x; y)` by the textbook unbanded DP.
pub fn emb(x: &[u8], y: &[u8]) -> u128 {
    let mut t = vec![vec![0u128; y.len() + 1]; x.len() + 1];
    for row in t.iter_mut() {
        row[0] = 1;
    }
    for i in 1..=x.len() {
        for j in 1..=y.len() {
            t[i][j] = t[i - 1][j] + if x[i - 1] == y[j - 1] { t[i - 1][j - 1] } else { 0 };
        }
    }
    t[x.len()][y.len()]
}

/// `I_t(x)` by repeated single insertions.
pub fn insertions(x: &[u8], t: usize, q: u8) -> BTreeSet<Vec<u8>> {
    let mut cur: BTreeSet<Vec<u8>> = [x.to_vec()].into();
    for _ in 0..t {
        let mut next = BTreeSet::new();
        for w in &cur {
            for pos in 0..=w.len() {
                for s in 0..q {
                    let mut v = w.clone();
                    v.insert(pos, s);
                    next.insert(v);
                }
            }
        }
        cur = next;
    }
    cur
}

/// `D_t(x)` by repeated single deletions.
pub fn deletions(x: &[u8], t: usize) -> BTreeSet<Vec<u8>> {
    let mut cur: BTreeSet<Vec<u8>> = [x.to_vec()].into();
    for _ in 0..t {
        let mut next = BTreeSet::new();
        for w in &cur {
            for pos in 0..w.len() {
                let mut v = w.clone();
                v.remove(pos);
                next.insert(v);
            }
        }
        cur = next;
    }
    cur
}

/// Shortest common supersequences by filtering all words of increasing length.
pub fn brute_scs(a: &[u8], b: &[u8], q: u8) -> Vec<Vec<u8>> {
    for len in a.len().max(b.len()).. {
        let found: Vec<Vec<u8>> = all_words(len, q).into_iter().filter(|w| is_subseq(a, w) && is_subseq(b, w)).collect();
        if !found.is_empty() {
            return found;
        }
    }
    unreachable!()
}

/// Longest common subsequences by filtering subsequences of `a`.
pub fn brute_lcs(a: &[u8], b: &[u8]) -> Vec<Vec<u8>> {
    let subs = subset_embeddings(a);
    let common: Vec<&Vec<u8>> = subs.keys().filter(|w| is_subseq(w, b)).collect();
    let best = common.iter().map(|w| w.len()).max().unwrap_or(0);
    common.into_iter().filter(|w| w.len() == best).cloned().collect()
}

/// Two-trace deletion `ML^D`: max `Emb(x;a) Emb(x;b)` over the SCS set, ties to the smallest word.
pub fn brute_mld_del(a: &[u8], b: &[u8], q: u8) -> Vec<u8> {
    let mut best: Option<(u128, Vec<u8>)> = None;
    for w in brute_scs(a, b, q) {
        let s = emb(&w, a) * emb(&w, b);
        if best.as_ref().map_or(true, |(bs, _)| s > *bs) {
            best = Some((s, w));
        }
    }
    best.unwrap().1
}

/// Two-trace insertion `ML^D`: max `Emb(a;x) Emb(b;x)` over the LCS set.
pub fn brute_mld_ins(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut best: Option<(u128, Vec<u8>)> = None;
    for w in brute_lcs(a, b) {
        let s = emb(a, &w) * emb(b, &w);
        if best.as_ref().map_or(true, |(bs, _)| s > *bs) {
            best = Some((s, w));
        }
    }
    best.unwrap().1
}

/// Run lengths of a word.
pub fn run_lengths(x: &[u8]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, s) in x.iter().enumerate() {
        if i > 0 && x[i - 1] == *s {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
        }
    }
    out
}

/// Longest run length averaged over `{0,1}^n`, as a reduced fraction `(num, den)`.
pub fn tau_brute(n: usize) -> (u128, u128) {
    let mut total = 0u128;
    for w in 0u64..1 << n {
        let mut best = 0;
        let mut cur = 0;
        for i in 0..n {
            if i > 0 && (w >> i & 1) == (w >> (i - 1) & 1) {
                cur += 1;
            } else {
                cur = 1;
            }
            best = best.max(cur);
        }
        total += best as u128;
    }
    let den = 1u128 << n;
    let g = gcd(total, den);
    (total / g, den / g)
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Tiny deterministic generator for sampled cases.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    pub fn word(&mut self, len: usize, q: u8) -> Vec<u8> {
        (0..len).map(|_| self.below(q as u64) as u8).collect()
    }
}
