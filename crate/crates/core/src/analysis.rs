//! Closed-form error approximations for two deletion or insertion channels,
//! coded success bounds, and the exact 1-deletion lazy/EN figures.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::combinatorics::tau_of_space;
use crate::error::{domain, Result};

/// Approximate error figures per symbol.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoChannelFormulas {
    pub q: u8,
    pub p: f64,
    pub n: usize,
    pub p_run: f64,
    pub p_alt: f64,
    /// `p_run + p_alt`.
    pub p_err_approx: f64,
    /// `exp(-p_err_approx * n)`: success probability of the whole word.
    pub p_fail_bound: f64,
}

fn check(q: u8, p: f64) -> Result<()> {
    if q < 2 {
        return domain(format!("alphabet size {q} < 2"));
    }
    if !(0.0..1.0).contains(&p) {
        return domain(format!("probability {p} outside [0, 1)"));
    }
    Ok(())
}

fn assemble(q: u8, p: f64, n: usize, p_run: f64, p_alt: f64) -> TwoChannelFormulas {
    let p_err_approx = p_run + p_alt;
    TwoChannelFormulas { q, p, n, p_run, p_alt, p_err_approx, p_fail_bound: (-p_err_approx * n as f64).exp() }
}

/// Two `Del(p)` channels: `P_run = (q+1)/(q-1) p^2`, `P_alt = 2 p^2`.
pub fn two_del_formulas(q: u8, p: f64, n: usize) -> Result<TwoChannelFormulas> {
    check(q, p)?;
    let qf = q as f64;
    Ok(assemble(q, p, n, (qf + 1.0) / (qf - 1.0) * p * p, 2.0 * p * p))
}

/// Two `Ins(p)` channels: `P_run = (q+1)/(q(q-1)) p^2`, `P_alt = (2/q) p^2`.
pub fn two_ins_formulas(q: u8, p: f64, n: usize) -> Result<TwoChannelFormulas> {
    check(q, p)?;
    let qf = q as f64;
    Ok(assemble(q, p, n, (qf + 1.0) / (qf * (qf - 1.0)) * p * p, 2.0 / qf * p * p))
}

/// Which code the success bound refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeFamily {
    Uncoded,
    Vt,
    Svt,
}

/// Lower bound on the word success probability of `ML^D` over two `Del(p)` channels.
///
/// With `R = 1 - P_run`, `A = 1 - P_alt`: uncoded `R^n A^n`; SVT adds
/// `R^n n P_alt A^(n-1)`; VT further adds `n P_run R^(n-1) A^n`.
pub fn coded_fail_bounds(q: u8, p: f64, n: usize, family: CodeFamily) -> Result<f64> {
    let f = two_del_formulas(q, p, n)?;
    let (r, a) = (1.0 - f.p_run, 1.0 - f.p_alt);
    let nf = n as f64;
    let rn = r.powf(nf);
    let an = a.powf(nf);
    let none = rn * an;
    let one_alt = rn * nf * f.p_alt * a.powf(nf - 1.0);
    let one_run = nf * f.p_run * r.powf(nf - 1.0) * an;
    Ok(match family {
        CodeFamily::Uncoded => none,
        CodeFamily::Svt => none + one_alt,
        CodeFamily::Vt => none + one_alt + one_run,
    })
}

/// `(1/n, (2/n)(1 - tau(Sigma_2^n)/n))`: the lazy decoder's exact expected
/// normalized distance on the 1-deletion channel and the lower bound for `EN^n`.
pub fn lazy_and_en_1del_analysis(n: usize) -> Result<(BigRational, BigRational)> {
    if n < 2 {
        return domain("n must be at least 2");
    }
    let nr = BigRational::from_integer(BigInt::from(n));
    let one = BigRational::from_integer(BigInt::from(1));
    let tau = tau_of_space(n)?;
    let lazy = &one / &nr;
    let en = BigRational::from_integer(BigInt::from(2)) / &nr * (one - tau / &nr);
    Ok((lazy, en))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1e-300)
    }

    #[test]
    fn deletion_examples() {
        let f = two_del_formulas(2, 0.02, 150).unwrap();
        assert!(close(f.p_run, 1.2e-3));
        assert!(close(f.p_err_approx, 2.0e-3));
        let f = two_del_formulas(4, 0.02, 150).unwrap();
        assert!(close(f.p_err_approx, 11.0 / 3.0 * 4e-4));
        assert!(two_del_formulas(1, 0.1, 5).is_err());
    }

    #[test]
    fn insertion_examples() {
        let f = two_ins_formulas(2, 0.02, 150).unwrap();
        assert!(close(f.p_err_approx, 1.0e-3));
    }

    #[test]
    fn coded_bounds_ordering() {
        for fam in [CodeFamily::Uncoded, CodeFamily::Vt, CodeFamily::Svt] {
            assert_eq!(coded_fail_bounds(2, 0.0, 100, fam).unwrap(), 1.0);
        }
        let u = coded_fail_bounds(2, 0.03, 450, CodeFamily::Uncoded).unwrap();
        let s = coded_fail_bounds(2, 0.03, 450, CodeFamily::Svt).unwrap();
        let v = coded_fail_bounds(2, 0.03, 450, CodeFamily::Vt).unwrap();
        assert!(v >= s && s >= u);
    }

    #[test]
    fn lazy_en_examples() {
        let (lazy, en) = lazy_and_en_1del_analysis(3).unwrap();
        assert_eq!(lazy, BigRational::new(1.into(), 3.into()));
        assert_eq!(en, BigRational::new(2.into(), 9.into()));
        let (lazy, en) = lazy_and_en_1del_analysis(17).unwrap();
        assert!(en > lazy);
    }
}
