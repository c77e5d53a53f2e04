use std::ops::RangeInclusive;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::en::decode_en;
use crate::codes::Code;
use crate::combinatorics::{embedding_number_of, for_each_supersequence};
use crate::error::{domain, Error, Result};
use crate::word::{indel_distance_of, runs, Word};

/// Upper bound on `(#candidate words) * |I_k(y)|` accepted by [`brute_force_ml_star`].
pub const BRUTE_FORCE_BUDGET: u128 = 20_000_000_000;

/// `f_y(x)` for `k-Del`, scaled to the integer `sum_{c in I_k(y) ∩ C} d_L(x, c) Emb(c; y)`.
///
/// The true objective is this value divided by `n C(n, k)` with `n = |y| + k`;
/// the factor is shared by all candidates, so minimizers coincide.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectiveValue(pub BigUint);

pub fn objective_f(y: &Word, x: &Word, k: usize, code: Option<&Code>) -> Result<ObjectiveValue> {
    if let Some(c) = code {
        if c.n() != y.len() + k {
            return domain("code length must equal |y| + k");
        }
    }
    let q = y.q().max(x.q());
    let mut total = BigUint::default();
    for_each_supersequence(y.symbols(), y.q(), k, |c| {
        if code.map_or(true, |code| code.contains(c)) {
            let d = indel_distance_of(x.symbols(), c, q);
            total += embedding_number_of(c, y.symbols()).to_biguint() * BigUint::from(d);
        }
    });
    Ok(ObjectiveValue(total))
}

/// Result of the exhaustive `ML*` search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceOutcome {
    pub word: Word,
    /// Scaled objective (see [`ObjectiveValue`]).
    pub score: u128,
    /// Number of words attaining the minimum.
    pub minimizers: usize,
}

impl BruteForceOutcome {
    pub fn unique(&self) -> bool {
        self.minimizers == 1
    }
}

struct Candidates {
    n: usize,
    q: usize,
    /// `masks[c * q + s]`: positions of symbol `s` in candidate `c`.
    masks: Vec<u64>,
    weights: Vec<u128>,
}

#[derive(Clone)]
struct Best {
    score: u128,
    word: Vec<u8>,
    ties: usize,
}

impl Best {
    fn better(a: Option<Best>, b: Option<Best>) -> Option<Best> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(match a.score.cmp(&b.score) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal => {
                    let ties = a.ties + b.ties;
                    let mut w = if (a.word.len(), &a.word) <= (b.word.len(), &b.word) { a } else { b };
                    w.ties = ties;
                    w
                }
            }),
        }
    }
}

/// Global minimizer of `f_y` over all words with length in `lengths`.
///
/// Ties go to the shortest word, then the lexicographically smallest. The
/// search walks the prefix tree of candidates and updates bit-parallel LCS
/// states against every `c in I_k(y)` incrementally.
pub fn brute_force_ml_star(
    y: &Word,
    k: usize,
    lengths: RangeInclusive<usize>,
    code: Option<&Code>,
) -> Result<BruteForceOutcome> {
    let (lo, hi) = (*lengths.start(), *lengths.end());
    if lo > hi || lo < y.len() || hi > y.len() + k + 1 {
        return domain(format!("length window [{lo}, {hi}] must lie in [|y|, |y| + k + 1]"));
    }
    let n = y.len() + k;
    let q = y.q();
    if n > 64 || hi > 64 {
        return Err(Error::Infeasible("brute force limited to lengths <= 64".into()));
    }
    let mut cands = Candidates { n, q: q as usize, masks: Vec::new(), weights: Vec::new() };
    for_each_supersequence(y.symbols(), q, k, |c| {
        if code.map_or(true, |code| code.contains(c)) {
            let mut m = vec![0u64; q as usize];
            for (i, &s) in c.iter().enumerate() {
                m[s as usize] |= 1 << i;
            }
            cands.masks.extend(m);
            cands.weights.push(embedding_number_of(c, y.symbols()).to_u128().expect("n <= 64"));
        }
    });
    let nodes: u128 = (0..=hi as u32).map(|l| (q as u128).saturating_pow(l)).sum();
    if nodes.saturating_mul(cands.weights.len().max(1) as u128) > BRUTE_FORCE_BUDGET {
        return Err(Error::Infeasible(format!("window [{lo}, {hi}] with q={q} exceeds the search budget")));
    }
    let full = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
    let split = lo.min(4);
    let prefixes = (q as u64).pow(split as u32);
    let best = (0..prefixes)
        .into_par_iter()
        .map(|idx| {
            let prefix = Word::from_index(idx, split, q).into_symbols();
            let mut state = vec![full; cands.weights.len()];
            for &s in &prefix {
                step(&cands, &mut state, s, full);
            }
            let mut buf = prefix;
            let mut best = None;
            dfs(&cands, &state, &mut buf, lo, hi, full, &mut best);
            best
        })
        .reduce(|| None, Best::better)
        .expect("window is nonempty");
    Ok(BruteForceOutcome { word: Word::from_raw(best.word, q), score: best.score, minimizers: best.ties })
}

#[inline]
fn step(c: &Candidates, state: &mut [u64], s: u8, full: u64) {
    for (i, v) in state.iter_mut().enumerate() {
        let m = c.masks[i * c.q + s as usize];
        let u = *v & m;
        *v = (v.wrapping_add(u) | (*v & !m)) & full;
    }
}

fn dfs(c: &Candidates, state: &[u64], buf: &mut Vec<u8>, lo: usize, hi: usize, full: u64, best: &mut Option<Best>) {
    let len = buf.len();
    if len >= lo {
        // d_L(x, c) = |x| + n - 2 LCS, LCS = n - popcount(V)
        let score: u128 = state
            .iter()
            .zip(&c.weights)
            .map(|(v, &w)| w * (len + 2 * v.count_ones() as usize - c.n) as u128)
            .sum();
        let cand = Best { score, word: buf.clone(), ties: 1 };
        *best = Best::better(best.take(), Some(cand));
    }
    if len == hi {
        return;
    }
    let mut next = state.to_vec();
    for s in 0..c.q as u8 {
        next.copy_from_slice(state);
        step(c, &mut next, s, full);
        buf.push(s);
        dfs(c, &next, buf, lo, hi, full, best);
        buf.pop();
    }
}

/// `ML*` for the 1-deletion channel: the lazy decoder.
///
/// Optimality is established for `n = |y| + 1 >= 17`; shorter inputs log a warning.
pub fn ml_star_1del(y: &Word) -> Word {
    if y.len() + 1 < 17 {
        log::warn!("ml_star_1del: lazy optimality is only established for n >= 17 (n = {})", y.len() + 1);
    }
    y.clone()
}

/// `2n^2 - 4 n r_i - 6n + r_i^2 + 3 r_i + r + 1` with `n = |y| + 2`, `r` the
/// number of runs of `y` and `r_i` its longest run length.
pub fn two_del_condition(y: &Word) -> i64 {
    let p = runs(y);
    let n = y.len() as i64 + 2;
    let (ri, r) = (p.r_max as i64, p.r as i64);
    2 * n * n - 4 * n * ri - 6 * n + ri * ri + 3 * ri + r + 1
}

/// `ML*` for the 2-deletion channel: lazy when [`two_del_condition`] is
/// non-negative, otherwise `EN^{n-1}`.
pub fn ml_star_2del(y: &Word) -> Result<Word> {
    if y.q() != 2 {
        return domain("ml_star_2del is defined for binary words");
    }
    if two_del_condition(y) >= 0 {
        Ok(y.clone())
    } else {
        decode_en(y, y.len() + 1)
    }
}
