//! Embedding numbers, deletion/insertion balls and maximal-run statistics.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{CheckedAdd, One, Zero};

use crate::count::EmbeddingCount;
use crate::error::{domain, Result};
use crate::word::{runs_of, Word};

/// `Emb(x; y)`: number of index sets `I` with `x_I = y`.
pub fn embedding_number(x: &Word, y: &Word) -> EmbeddingCount {
    embedding_number_of(x.symbols(), y.symbols())
}

pub(crate) fn embedding_number_of(x: &[u8], y: &[u8]) -> EmbeddingCount {
    if y.len() > x.len() {
        return EmbeddingCount::ZERO;
    }
    match emb_dp::<u128>(x, y) {
        Some(v) => v.into(),
        None => emb_dp::<BigUint>(x, y).expect("BigUint addition cannot overflow").into(),
    }
}

/// `u128` embedding number, `None` on overflow.
pub(crate) fn embedding_number_u128(x: &[u8], y: &[u8]) -> Option<u128> {
    if y.len() > x.len() {
        return Some(0);
    }
    emb_dp::<u128>(x, y)
}

// Prefix DP restricted to cells with 0 <= i - j <= |x| - |y|; other cells cannot reach the corner.
fn emb_dp<T: Clone + Zero + One + CheckedAdd>(x: &[u8], y: &[u8]) -> Option<T> {
    let m = y.len();
    let d = x.len() - m;
    let mut e = vec![T::zero(); m + 1];
    e[0] = T::one();
    for i in 1..=x.len() {
        let lo = i.saturating_sub(d).max(1);
        let hi = i.min(m);
        for j in (lo..=hi).rev() {
            if x[i - 1] == y[j - 1] {
                e[j] = e[j].checked_add(&e[j - 1])?;
            }
        }
    }
    Some(e[m].clone())
}

/// `C(n, k)` exactly.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub(crate) fn binomial_u128(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `D_t(x)`: all distinct subsequences of length `|x| - t`, lexicographically sorted.
pub fn deletion_ball(x: &Word, t: usize) -> Result<Vec<Word>> {
    if t > x.len() {
        return domain(format!("deletion radius {t} exceeds word length {}", x.len()));
    }
    let mut out = Vec::new();
    for_each_subsequence(x.symbols(), x.q(), x.len() - t, |s| out.push(Word::from_raw(s.to_vec(), x.q())));
    Ok(out)
}

/// `I_t(x)`: all distinct supersequences of length `|x| + t` over `x`'s alphabet, sorted.
pub fn insertion_ball(x: &Word, t: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_supersequence(x.symbols(), x.q(), t, |s| out.push(Word::from_raw(s.to_vec(), x.q())));
    out
}

/// Visits each distinct length-`len` subsequence of `x` once, in lexicographic order.
///
/// A prefix is tracked by its leftmost embedding, which is unique per prefix.
pub fn for_each_subsequence(x: &[u8], q: u8, len: usize, mut f: impl FnMut(&[u8])) {
    if len > x.len() {
        return;
    }
    let next = next_occurrence(x, q);
    let mut buf = Vec::with_capacity(len);
    sub_dfs(x.len(), q as usize, &next, len, 0, &mut buf, &mut f);
}

fn sub_dfs(n: usize, q: usize, next: &[u32], len: usize, i: usize, buf: &mut Vec<u8>, f: &mut impl FnMut(&[u8])) {
    if buf.len() == len {
        f(buf);
        return;
    }
    let need = len - buf.len();
    for s in 0..q {
        let j = next[i * q + s] as usize;
        if j < n && need <= n - j {
            buf.push(s as u8);
            sub_dfs(n, q, next, len, j + 1, buf, f);
            buf.pop();
        }
    }
}

/// `next[i * q + s]` = smallest `j >= i` with `x[j] = s`, or `|x|`.
pub(crate) fn next_occurrence(x: &[u8], q: u8) -> Vec<u32> {
    let q = q as usize;
    let n = x.len();
    let mut next = vec![n as u32; (n + 1) * q];
    for i in (0..n).rev() {
        let (head, tail) = next.split_at_mut((i + 1) * q);
        head[i * q..].copy_from_slice(&tail[..q]);
        head[i * q + x[i] as usize] = i as u32;
    }
    next
}

/// Visits each distinct supersequence of `x` with `extra` more symbols once, in lexicographic order.
///
/// A prefix is tracked by the length of its greedy match against `x`.
pub fn for_each_supersequence(x: &[u8], q: u8, extra: usize, mut f: impl FnMut(&[u8])) {
    let total = x.len() + extra;
    let mut buf = Vec::with_capacity(total);
    super_dfs(x, q, total, 0, &mut buf, &mut f);
}

fn super_dfs(x: &[u8], q: u8, total: usize, j: usize, buf: &mut Vec<u8>, f: &mut impl FnMut(&[u8])) {
    if buf.len() == total {
        f(buf);
        return;
    }
    let room = total - buf.len() - 1;
    for s in 0..q {
        let j2 = j + usize::from(j < x.len() && x[j] == s);
        if x.len() - j2 <= room {
            buf.push(s);
            super_dfs(x, q, total, j2, buf, f);
            buf.pop();
        }
    }
}

/// `|I_t(x)| = sum_{i=0}^{t} C(n+t, i) (q-1)^i`, independent of the content of `x`.
pub fn insertion_ball_size(n: usize, t: usize, q: u8) -> BigUint {
    let base = BigUint::from(q as u32 - 1);
    (0..=t).map(|i| binomial(n + t, i) * base.pow(i as u32)).sum()
}

/// Length of the longest run of a symbol slice (0 when empty).
pub fn max_run(symbols: &[u8]) -> usize {
    runs_of(symbols).r_max
}

/// `tau(Sigma_2^n)`: exact mean longest-run length over all binary words of length `n`.
///
/// Counts words whose runs are all at most `r` through compositions of `n`
/// into parts of size at most `r`.
pub fn tau_of_space(n: usize) -> Result<BigRational> {
    if n == 0 {
        return domain("tau_of_space needs n >= 1");
    }
    let space = BigUint::one() << n;
    // sum_w maxrun(w) = sum_{r=0}^{n-1} #{w : maxrun(w) > r}
    let mut total = BigUint::zero();
    for r in 0..n {
        let bounded = if r == 0 { BigUint::zero() } else { compositions_bounded(n, r) << 1u32 };
        total += &space - bounded;
    }
    Ok(BigRational::new(total.into(), space.into()))
}

// Compositions of n with every part in 1..=r.
fn compositions_bounded(n: usize, r: usize) -> BigUint {
    let mut c: Vec<BigUint> = Vec::with_capacity(n + 1);
    c.push(BigUint::one());
    let mut window = BigUint::one();
    for m in 1..=n {
        let v = window.clone();
        window += &v;
        if m >= r {
            window -= &c[m - r];
        }
        c.push(v);
    }
    c.pop().unwrap()
}

/// Exhaustive counterpart of [`tau_of_space`], limited to `n <= 26`.
pub fn tau_of_space_exhaustive(n: usize) -> Result<BigRational> {
    if n == 0 || n > 26 {
        return domain(format!("exhaustive tau needs 1 <= n <= 26, got {n}"));
    }
    let mut total: u64 = 0;
    for idx in 0u64..(1u64 << n) {
        let mut best = 0u32;
        let mut cur = 1u32;
        for b in 1..n {
            if (idx >> b) & 1 == (idx >> (b - 1)) & 1 {
                cur += 1;
            } else {
                best = best.max(cur);
                cur = 1;
            }
        }
        total += best.max(cur) as u64;
    }
    Ok(BigRational::new(BigUint::from(total).into(), (BigUint::one() << n).into()))
}
