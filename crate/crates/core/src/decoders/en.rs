use num_bigint::BigUint;

use crate::combinatorics::{embedding_number_of, for_each_supersequence, insertion_ball_size};
use crate::error::{domain, Result};
use crate::word::{runs, Word};

/// Largest insertion ball searched exhaustively by [`decode_en`].
pub const EN_EXACT_BALL: u64 = 1 << 17;

/// `EN^m`: a length-`m` supersequence of `y` with maximal `Emb(x; y)`.
///
/// The candidate is built by prolonging runs. One extra symbol is always
/// placed optimally this way. With two or more extra symbols prolonging can
/// lose (`0101 -> 010101` has `Emb` 5, every prolongation 4), so when
/// `I_{m-|y|}(y)` has at most [`EN_EXACT_BALL`] words it is searched and a
/// strictly better word replaces the prolongation (first in lexicographic
/// order). Larger balls keep the prolongation.
///
/// Extra symbols are placed greedily: each goes to the run whose factor
/// `C(r + e, e)` grows by the largest ratio `(r + e + 1) / (e + 1)`; ties
/// prefer a run already prolonged, then the earliest run. For `m = |y| + 1`
/// this prolongs the first longest run; for `m = |y| + 2` it prolongs the first
/// longest run `r_i` twice when `r_i >= 2 r_j` and otherwise `r_i` and the first
/// other run of maximal length `r_j` once each. An empty `y` yields `0^m`.
pub fn decode_en(y: &Word, m: usize) -> Result<Word> {
    if m < y.len() {
        return domain(format!("target length {m} shorter than input length {}", y.len()));
    }
    let profile = runs(y);
    if profile.r == 0 {
        return Ok(Word::zeros(m, y.q()));
    }
    let mut extra = vec![0usize; profile.r];
    for _ in y.len()..m {
        let mut best = 0;
        for s in 1..profile.r {
            // ratio (r_s + e_s + 1) / (e_s + 1) compared exactly
            let lhs = (profile.run_lengths[s] + extra[s] + 1) * (extra[best] + 1);
            let rhs = (profile.run_lengths[best] + extra[best] + 1) * (extra[s] + 1);
            if lhs > rhs || (lhs == rhs && extra[s] > 0 && extra[best] == 0) {
                best = s;
            }
        }
        extra[best] += 1;
    }
    let mut out = Vec::with_capacity(m);
    for ((&len, &sym), &e) in profile.run_lengths.iter().zip(&profile.run_symbols).zip(&extra) {
        out.extend(std::iter::repeat(sym).take(len + e));
    }
    let extra = m - y.len();
    if extra >= 2 && insertion_ball_size(y.len(), extra, y.q()) <= BigUint::from(EN_EXACT_BALL) {
        let mut best = embedding_number_of(&out, y.symbols());
        let mut better = None;
        for_each_supersequence(y.symbols(), y.q(), extra, |c| {
            let e = embedding_number_of(c, y.symbols());
            if e > best {
                best = e;
                better = Some(c.to_vec());
            }
        });
        if let Some(c) = better {
            out = c;
        }
    }
    Word::new(out, y.q())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(decode_en(&w("00110"), 6).unwrap(), w("000110"));
        assert_eq!(decode_en(&w("00110"), 5).unwrap(), w("00110"));
        assert_eq!(decode_en(&w("011"), 5).unwrap(), w("01111"));
        assert_eq!(decode_en(&w("01"), 4).unwrap(), w("0011"));
        assert_eq!(decode_en(&w("0000"), 6).unwrap(), w("000000"));
        assert_eq!(decode_en(&Word::empty(2), 3).unwrap(), w("000"));
        assert!(decode_en(&w("011"), 2).is_err());
    }

    #[test]
    fn searches_beyond_prolongation() {
        assert_eq!(decode_en(&w("0101"), 6).unwrap(), w("010101"));
        assert_eq!(decode_en(&w("01"), 4).unwrap(), w("0011"));
    }

    #[test]
    fn second_longest_tie_takes_first() {
        // runs 2,3,2: longest is index 1, first second-longest is index 0
        assert_eq!(decode_en(&w("0011100"), 9).unwrap(), w("000111100"));
    }
}
