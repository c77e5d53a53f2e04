//! LCS/SCS lengths and enumeration of all shortest common supersequences and
//! longest common subsequences of two words.
//!
//! Both enumerations walk a suffix-LCS table. A prefix of a candidate is
//! identified by its greedy (leftmost) match state `(i, j)` in the two inputs,
//! which is unique per prefix, so every distinct word is produced exactly once
//! and in lexicographic order without a visited set.

use crate::combinatorics::next_occurrence;
use crate::error::{domain, Result};
use crate::word::Word;

/// Default enumeration cap.
pub const DEFAULT_CAP: usize = 1_000_000;

/// All shortest common supersequences of two words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScsResult {
    pub length: usize,
    pub candidates: Vec<Word>,
    pub truncated: bool,
}

/// All longest common subsequences of two words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcsResult {
    pub length: usize,
    pub candidates: Vec<Word>,
    pub truncated: bool,
}

const NEG: i32 = -(1 << 28);

/// `T[i][j] = LCS(a[i..], b[j..])`, optionally restricted to `|i - j| <= band`.
/// Cells outside the band read as `NEG`.
pub(crate) struct SuffixLcs<'a> {
    a: &'a [u8],
    b: &'a [u8],
    band: Option<usize>,
    width: usize,
    data: Vec<i32>,
}

impl<'a> SuffixLcs<'a> {
    pub(crate) fn new(a: &'a [u8], b: &'a [u8], band: Option<usize>) -> Self {
        let (n1, n2) = (a.len(), b.len());
        let band = band.filter(|&w| w < n1.max(n2));
        let width = match band {
            Some(w) => 2 * w + 1,
            None => n2 + 1,
        };
        let mut t = SuffixLcs { a, b, band, width, data: vec![NEG; (n1 + 1) * width] };
        for i in (0..=n1).rev() {
            let (lo, hi) = t.cols(i);
            for j in (lo..=hi).rev() {
                let v = if i == n1 || j == n2 {
                    0
                } else if a[i] == b[j] {
                    t.get(i + 1, j + 1) + 1
                } else {
                    t.get(i + 1, j).max(t.get(i, j + 1))
                };
                let k = t.index(i, j);
                t.data[k] = v.max(NEG);
            }
        }
        t
    }

    /// Builds a banded table and falls back to the full table when the band
    /// could have excluded an optimal path.
    pub(crate) fn new_exact(a: &'a [u8], b: &'a [u8], band: Option<usize>) -> Self {
        if band.is_some() {
            let t = Self::new(a, b, band);
            if t.band_is_exact() {
                return t;
            }
        }
        Self::new(a, b, None)
    }

    fn cols(&self, i: usize) -> (usize, usize) {
        match self.band {
            Some(w) => (i.saturating_sub(w), (i + w).min(self.b.len())),
            None => (0, self.b.len()),
        }
    }

    fn index(&self, i: usize, j: usize) -> usize {
        let base = match self.band {
            Some(w) => i as isize - w as isize,
            None => 0,
        };
        i * self.width + (j as isize - base) as usize
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> i32 {
        if let Some(w) = self.band {
            if i.abs_diff(j) > w {
                return NEG;
            }
        }
        if j > self.b.len() {
            return NEG;
        }
        self.data[self.index(i, j)]
    }

    pub(crate) fn lcs(&self) -> Option<usize> {
        let v = self.get(0, 0);
        (v >= 0).then_some(v as usize)
    }

    /// Any optimal path visits only cells with `|i - j| <= max(|a|, |b|) - LCS`.
    fn band_is_exact(&self) -> bool {
        match (self.band, self.lcs()) {
            (None, _) => true,
            (Some(w), Some(l)) => w >= self.a.len().max(self.b.len()) - l,
            (Some(_), None) => false,
        }
    }

    /// SCS length of the suffixes, `None` when unreachable inside the band.
    #[inline]
    pub(crate) fn scs_rem(&self, i: usize, j: usize) -> Option<usize> {
        let v = self.get(i, j);
        (v >= 0).then(|| (self.a.len() - i) + (self.b.len() - j) - v as usize)
    }

    pub(crate) fn scs(&self) -> Option<usize> {
        self.scs_rem(0, 0)
    }
}

/// Length of a longest common subsequence.
pub fn lcs_length(y1: &Word, y2: &Word) -> usize {
    SuffixLcs::new(y1.symbols(), y2.symbols(), None).lcs().expect("full table")
}

/// Length of a shortest common supersequence, `|y1| + |y2| - LCS`.
pub fn scs_length(y1: &Word, y2: &Word) -> usize {
    y1.len() + y2.len() - lcs_length(y1, y2)
}

/// Enumerates all distinct shortest common supersequences (lexicographic).
///
/// `band` restricts the DP to `|i - j| <= band`; with `band >= d1 + d2`
/// (`d_i = n - |y_i|`) the result equals the unbanded one. A band too narrow
/// to certify optimality is widened automatically.
pub fn enumerate_scs(y1: &Word, y2: &Word, band: Option<usize>, cap: usize) -> Result<ScsResult> {
    if cap == 0 {
        return domain("enumeration cap must be at least 1");
    }
    let q = y1.q().max(y2.q());
    let table = SuffixLcs::new_exact(y1.symbols(), y2.symbols(), band);
    let length = table.scs().expect("exact table reaches the corner");
    let mut candidates = Vec::new();
    let truncated = for_each_scs(&table, |w| {
        if candidates.len() == cap {
            return false;
        }
        candidates.push(Word::from_raw(w.to_vec(), q));
        true
    });
    Ok(ScsResult { length, candidates, truncated })
}

/// Calls `f` on each SCS in lexicographic order; `f` returns `false` to stop.
/// Returns `true` when stopped early.
pub(crate) fn for_each_scs(t: &SuffixLcs<'_>, mut f: impl FnMut(&[u8]) -> bool) -> bool {
    let mut buf = Vec::with_capacity(t.scs().unwrap_or(0));
    scs_dfs(t, 0, 0, &mut buf, &mut f)
}

fn scs_dfs(t: &SuffixLcs<'_>, i: usize, j: usize, buf: &mut Vec<u8>, f: &mut impl FnMut(&[u8]) -> bool) -> bool {
    let (n1, n2) = (t.a.len(), t.b.len());
    if i == n1 && j == n2 {
        return !f(buf);
    }
    let rem = t.scs_rem(i, j).expect("visited cells are reachable");
    let s1 = (i < n1).then(|| t.a[i]);
    let s2 = (j < n2).then(|| t.b[j]);
    let mut opts = [s1, s2];
    opts.sort();
    let mut last = None;
    for s in opts.into_iter().flatten() {
        if last == Some(s) {
            continue;
        }
        last = Some(s);
        let i2 = i + usize::from(s1 == Some(s));
        let j2 = j + usize::from(s2 == Some(s));
        if t.scs_rem(i2, j2) == Some(rem - 1) {
            buf.push(s);
            let stop = scs_dfs(t, i2, j2, buf, f);
            buf.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

/// Calls `f` on each common supersequence of length exactly `len`
/// (lexicographic); `f` returns `false` to stop. Returns `true` when stopped early.
pub(crate) fn for_each_common_supersequence(
    t: &SuffixLcs<'_>,
    q: u8,
    len: usize,
    mut f: impl FnMut(&[u8]) -> bool,
) -> bool {
    match t.scs() {
        Some(s) if s <= len => {}
        _ => return false,
    }
    let mut buf = Vec::with_capacity(len);
    cs_dfs(t, q, len, 0, 0, &mut buf, &mut f)
}

fn cs_dfs(
    t: &SuffixLcs<'_>,
    q: u8,
    len: usize,
    i: usize,
    j: usize,
    buf: &mut Vec<u8>,
    f: &mut impl FnMut(&[u8]) -> bool,
) -> bool {
    if buf.len() == len {
        return !f(buf);
    }
    let room = len - buf.len() - 1;
    for s in 0..q {
        let i2 = i + usize::from(i < t.a.len() && t.a[i] == s);
        let j2 = j + usize::from(j < t.b.len() && t.b[j] == s);
        if matches!(t.scs_rem(i2, j2), Some(r) if r <= room) {
            buf.push(s);
            let stop = cs_dfs(t, q, len, i2, j2, buf, f);
            buf.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

/// Enumerates all distinct longest common subsequences (lexicographic).
pub fn enumerate_lcs(y1: &Word, y2: &Word, cap: usize) -> Result<LcsResult> {
    enumerate_lcs_banded(y1, y2, None, cap)
}

/// [`enumerate_lcs`] over a banded table; `band >= e1 + e2` (`e_i = |y_i| - n`) is exact.
pub fn enumerate_lcs_banded(y1: &Word, y2: &Word, band: Option<usize>, cap: usize) -> Result<LcsResult> {
    if cap == 0 {
        return domain("enumeration cap must be at least 1");
    }
    let q = y1.q().max(y2.q());
    let table = SuffixLcs::new_exact(y1.symbols(), y2.symbols(), band);
    let length = table.lcs().expect("exact table reaches the corner");
    let mut candidates = Vec::new();
    let truncated = for_each_lcs(&table, q, |w| {
        if candidates.len() == cap {
            return false;
        }
        candidates.push(Word::from_raw(w.to_vec(), q));
        true
    });
    Ok(LcsResult { length, candidates, truncated })
}

/// Calls `f` on each LCS in lexicographic order; returns `true` when stopped early.
pub(crate) fn for_each_lcs(t: &SuffixLcs<'_>, q: u8, mut f: impl FnMut(&[u8]) -> bool) -> bool {
    let n1 = next_occurrence(t.a, q);
    let n2 = next_occurrence(t.b, q);
    let mut buf = Vec::with_capacity(t.lcs().unwrap_or(0));
    lcs_dfs(t, q as usize, &n1, &n2, 0, 0, &mut buf, &mut f)
}

#[allow(clippy::too_many_arguments)]
fn lcs_dfs(
    t: &SuffixLcs<'_>,
    q: usize,
    n1: &[u32],
    n2: &[u32],
    i: usize,
    j: usize,
    buf: &mut Vec<u8>,
    f: &mut impl FnMut(&[u8]) -> bool,
) -> bool {
    let rem = t.get(i, j);
    if rem == 0 {
        return !f(buf);
    }
    for s in 0..q {
        let (i2, j2) = (n1[i * q + s] as usize, n2[j * q + s] as usize);
        if i2 < t.a.len() && j2 < t.b.len() && t.get(i2 + 1, j2 + 1) == rem - 1 {
            buf.push(s as u8);
            let stop = lcs_dfs(t, q, n1, n2, i2 + 1, j2 + 1, buf, f);
            buf.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    fn strs(v: &[Word]) -> Vec<String> {
        v.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn lengths() {
        assert_eq!(lcs_length(&w("010"), &w("001")), 2);
        assert_eq!(lcs_length(&w("0110"), &w("0110")), 4);
        assert_eq!(lcs_length(&w("00"), &w("11")), 0);
        assert_eq!(scs_length(&w("01"), &w("10")), 3);
        assert_eq!(scs_length(&w("00"), &w("11")), 4);
    }

    #[test]
    fn scs_examples() {
        let r = enumerate_scs(&w("01"), &w("10"), None, DEFAULT_CAP).unwrap();
        assert_eq!((r.length, strs(&r.candidates), r.truncated), (3, vec!["010".into(), "101".into()], false));
        let r = enumerate_scs(&w("00"), &w("00"), None, DEFAULT_CAP).unwrap();
        assert_eq!(strs(&r.candidates), ["00"]);
        let r = enumerate_scs(&w("010"), &w("001"), None, DEFAULT_CAP).unwrap();
        assert_eq!(strs(&r.candidates), ["0010", "0101"]);
    }

    #[test]
    fn scs_cap_sets_truncated() {
        let r = enumerate_scs(&w("0101"), &w("1010"), None, 1).unwrap();
        assert_eq!(r.candidates.len(), 1);
        assert!(r.truncated);
        assert!(enumerate_scs(&w("0"), &w("1"), None, 0).is_err());
    }

    #[test]
    fn narrow_band_is_widened() {
        let a = w("000111");
        let b = w("111000");
        let full = enumerate_scs(&a, &b, None, DEFAULT_CAP).unwrap();
        let narrow = enumerate_scs(&a, &b, Some(1), DEFAULT_CAP).unwrap();
        assert_eq!(full, narrow);
    }

    #[test]
    fn lcs_examples() {
        let r = enumerate_lcs(&w("010"), &w("001"), DEFAULT_CAP).unwrap();
        assert_eq!((r.length, strs(&r.candidates)), (2, vec!["00".into(), "01".into()]));
        let r = enumerate_lcs(&w("0110"), &w("0110"), DEFAULT_CAP).unwrap();
        assert_eq!(strs(&r.candidates), ["0110"]);
        let r = enumerate_lcs(&w("00"), &w("11"), DEFAULT_CAP).unwrap();
        assert_eq!((r.length, r.candidates.len(), r.candidates[0].is_empty()), (0, 1, true));
    }

    #[test]
    fn common_supersequences_of_fixed_length() {
        let (a, b) = (w("01"), w("10"));
        let t = SuffixLcs::new(a.symbols(), b.symbols(), None);
        let mut got = Vec::new();
        for_each_common_supersequence(&t, 2, 4, |s| {
            got.push(Word::from_raw(s.to_vec(), 2).to_string());
            true
        });
        let expect: Vec<String> = Word::all(4, 2)
            .filter(|x| crate::word::is_subsequence(&a, x) && crate::word::is_subsequence(&b, x))
            .map(|x| x.to_string())
            .collect();
        assert_eq!(got, expect);
    }
}
