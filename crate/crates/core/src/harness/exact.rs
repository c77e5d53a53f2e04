use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::codes::Code;
use crate::combinatorics::{binomial, binomial_u128, embedding_number_u128, for_each_subsequence, for_each_supersequence};
use crate::decoders::{decode, DecodeContext, DecoderKind};
use crate::error::{domain, Error, Result};
use crate::word::{indel_distance_of, Word};

/// Largest `q^(n-k) * C(n, k)`-style work estimate accepted by the enumerators.
pub const EXACT_BUDGET: u128 = 1 << 30;

fn guard(decoder: &DecoderKind, n: usize, k: usize, q: u8) -> Result<()> {
    if decoder.traces() != 1 {
        return Err(Error::Config(format!("decoder {decoder} needs two traces; exact evaluation uses k-Del")));
    }
    if n == 0 || k > n {
        return domain(format!("need 0 <= k <= n and n >= 1, got n = {n}, k = {k}"));
    }
    let outputs = (q as u128).checked_pow((n - k) as u32).unwrap_or(u128::MAX);
    let ball = binomial_u128(n, k)
        .and_then(|b| (q as u128).checked_pow(k as u32).and_then(|p| b.checked_mul(p)))
        .unwrap_or(u128::MAX);
    if outputs.saturating_mul(ball) > EXACT_BUDGET {
        return Err(Error::Infeasible(format!("exact enumeration for n = {n}, k = {k}, q = {q} exceeds the budget")));
    }
    Ok(())
}

fn ratio(num: u128, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn ctx(code: &Code, k: usize) -> DecodeContext<'_> {
    DecodeContext { n: Some(code.n()), code: Some(code), k: Some(k), ..DecodeContext::default() }
}

/// Exact expected normalized distance `E[d_L(D(y), c)] / n` for `k-Del`
/// with `c` uniform over `code`.
///
/// For the full space the sum runs over channel outputs `y` and the
/// supersequences `c in I_k(y)`, so each output is decoded once.
pub fn exact_expected_distance(decoder: &DecoderKind, k: usize, code: &Code) -> Result<BigRational> {
    if !code.is_all() {
        return exact_expected_distance_by_codeword(decoder, k, code);
    }
    let (n, q) = (code.n(), code.q());
    guard(decoder, n, k, q)?;
    let outputs = (q as u64).pow((n - k) as u32);
    let ctx = ctx(code, k);
    let num = (0..outputs)
        .into_par_iter()
        .map(|idx| {
            let y = Word::from_index(idx, n - k, q);
            let out = decode(decoder, std::slice::from_ref(&y), &ctx)?.word;
            let mut s = 0u128;
            for_each_supersequence(y.symbols(), q, k, |c| {
                let emb = embedding_number_u128(c, y.symbols()).expect("bounded by C(n, k)");
                s += emb * indel_distance_of(out.symbols(), c, q) as u128;
            });
            Ok(s)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let den = BigUint::from(q).pow(n as u32) * binomial(n, k) * BigUint::from(n);
    Ok(ratio(num, den))
}

/// Same quantity as [`exact_expected_distance`], summed codeword by codeword
/// over `y in D_k(c)`.
pub fn exact_expected_distance_by_codeword(decoder: &DecoderKind, k: usize, code: &Code) -> Result<BigRational> {
    let (n, q) = (code.n(), code.q());
    guard(decoder, n, k, q)?;
    let words = code.enumerate()?;
    if words.is_empty() {
        return domain(format!("code {} is empty", code.label()));
    }
    let ctx = ctx(code, k);
    let num = words
        .par_iter()
        .map(|c| {
            let mut s = 0u128;
            let mut err = None;
            for_each_subsequence(c.symbols(), q, n - k, |y| {
                if err.is_some() {
                    return;
                }
                let y = Word::from_raw(y.to_vec(), q);
                match decode(decoder, std::slice::from_ref(&y), &ctx) {
                    Ok(out) => {
                        let emb = embedding_number_u128(c.symbols(), y.symbols()).expect("bounded by C(n, k)");
                        s += emb * indel_distance_of(out.word.symbols(), c.symbols(), q) as u128;
                    }
                    Err(e) => err = Some(e),
                }
            });
            err.map_or(Ok(s), Err)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let den = BigUint::from(words.len()) * binomial(n, k) * BigUint::from(n);
    Ok(ratio(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::VtParams;

    fn all(n: usize) -> Code {
        Code::All { n, q: 2 }
    }

    #[test]
    fn lazy_small_cases() {
        for n in 2..=9 {
            let v = exact_expected_distance(&DecoderKind::Lazy, 1, &all(n)).unwrap();
            assert_eq!(v, BigRational::new(1.into(), BigInt::from(n)));
        }
    }

    #[test]
    fn routes_agree() {
        for kind in [DecoderKind::Lazy, DecoderKind::En(7), DecoderKind::MlStar2Del] {
            let a = exact_expected_distance(&kind, 2, &all(7)).unwrap();
            let b = exact_expected_distance_by_codeword(&kind, 2, &all(7)).unwrap();
            assert_eq!(a, b, "{kind}");
        }
    }

    #[test]
    fn vt_ml_decoder_is_exact() {
        let code = Code::Vt(VtParams::new(8, 0).unwrap());
        let v = exact_expected_distance(&DecoderKind::MlCode, 1, &code).unwrap();
        assert_eq!(v, BigRational::from_integer(0.into()));
    }

    #[test]
    fn guards() {
        assert!(exact_expected_distance(&DecoderKind::Mld2Del, 1, &all(5)).is_err());
        assert!(exact_expected_distance(&DecoderKind::Lazy, 1, &all(40)).is_err());
        assert!(exact_expected_distance(&DecoderKind::Lazy, 6, &all(5)).is_err());
    }
}
