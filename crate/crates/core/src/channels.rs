//! Samplers and exact conditional probabilities for `Del(p)`, `Ins(p)` and `k-Del`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, embedding_number};
use crate::error::{domain, Result};
use crate::word::Word;

/// Channel model, serialized as `{"kind":"del","p":0.02}`, `{"kind":"ins","p":0.02,"q":2}`
/// or `{"kind":"kdel","k":1}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChannelConfig {
    Del {
        #[serde(default)]
        p: f64,
    },
    Ins {
        #[serde(default)]
        p: f64,
        #[serde(default = "default_q")]
        q: u8,
    },
    Kdel {
        k: usize,
    },
}

fn default_q() -> u8 {
    2
}

impl ChannelConfig {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ChannelConfig::Del { p } | ChannelConfig::Ins { p, .. } if !(0.0..=1.0).contains(&p) => {
                domain(format!("probability {p} outside [0, 1]"))
            }
            ChannelConfig::Ins { q, .. } if q < 2 => domain("insertion alphabet must have q >= 2"),
            _ => Ok(()),
        }
    }

    /// Same channel with probability `p` (no effect on `k-Del`).
    pub fn with_p(self, p: f64) -> Self {
        match self {
            ChannelConfig::Del { .. } => ChannelConfig::Del { p },
            ChannelConfig::Ins { q, .. } => ChannelConfig::Ins { p, q },
            other => other,
        }
    }

    pub fn p(&self) -> Option<f64> {
        match *self {
            ChannelConfig::Del { p } | ChannelConfig::Ins { p, .. } => Some(p),
            ChannelConfig::Kdel { .. } => None,
        }
    }

    pub fn transmit<R: Rng + ?Sized>(&self, x: &Word, rng: &mut R) -> Result<Word> {
        self.validate()?;
        match *self {
            ChannelConfig::Del { p } => Ok(transmit_del(x, p, rng)),
            ChannelConfig::Ins { p, q } => Ok(transmit_ins(x, p, q, rng)),
            ChannelConfig::Kdel { k } => transmit_kdel(x, k, rng),
        }
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            ChannelConfig::Del { .. } => "del",
            ChannelConfig::Ins { .. } => "ins",
            ChannelConfig::Kdel { .. } => "kdel",
        }
    }
}

/// Keeps each symbol independently with probability `1 - p`.
///
/// # Panics
/// If `p` is outside `[0, 1]`.
pub fn transmit_del<R: Rng + ?Sized>(x: &Word, p: f64, rng: &mut R) -> Word {
    let kept = x.symbols().iter().copied().filter(|_| !rng.gen_bool(p)).collect();
    Word::from_raw(kept, x.q())
}

/// At each of the `|x| + 1` gaps inserts one uniform symbol of `Sigma_q` with probability `p`.
///
/// # Panics
/// If `p` is outside `[0, 1]`.
pub fn transmit_ins<R: Rng + ?Sized>(x: &Word, p: f64, q: u8, rng: &mut R) -> Word {
    let q_out = q.max(x.q());
    let mut out = Vec::with_capacity(x.len() + 4);
    for g in 0..=x.len() {
        if rng.gen_bool(p) {
            out.push(rng.gen_range(0..q));
        }
        if let Some(&s) = x.symbols().get(g) {
            out.push(s);
        }
    }
    Word::from_raw(out, q_out)
}

/// Deletes a uniformly random `k`-subset of positions.
pub fn transmit_kdel<R: Rng + ?Sized>(x: &Word, k: usize, rng: &mut R) -> Result<Word> {
    if k > x.len() {
        return domain(format!("cannot delete {k} symbols from a word of length {}", x.len()));
    }
    let mut drop = vec![false; x.len()];
    for i in rand::seq::index::sample(rng, x.len(), k) {
        drop[i] = true;
    }
    let kept = x.symbols().iter().zip(&drop).filter(|(_, &d)| !d).map(|(&s, _)| s).collect();
    Ok(Word::from_raw(kept, x.q()))
}

/// `coefficient * p^p_exp * (1-p)^keep_exp / q^q_exp`, kept symbolic so that
/// comparisons at a fixed `p` need no floating-point cancellation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialProb {
    pub coefficient: BigUint,
    pub p_exp: usize,
    pub keep_exp: usize,
    pub q_exp: usize,
    pub q: u8,
}

impl MonomialProb {
    fn zero(q: u8) -> Self {
        MonomialProb { coefficient: BigUint::default(), p_exp: 0, keep_exp: 0, q_exp: 0, q }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient == BigUint::default()
    }

    pub fn eval(&self, p: f64) -> f64 {
        let c = self.coefficient.to_f64().unwrap_or(f64::INFINITY);
        c * p.powi(self.p_exp as i32) * (1.0 - p).powi(self.keep_exp as i32) / (self.q as f64).powi(self.q_exp as i32)
    }

    pub fn eval_exact(&self, p: &BigRational) -> BigRational {
        let one = BigRational::one();
        let keep = &one - p;
        let q = BigRational::from_integer(BigInt::from(self.q));
        BigRational::from_integer(BigInt::from(self.coefficient.clone()))
            * num_traits::pow(p.clone(), self.p_exp)
            * num_traits::pow(keep, self.keep_exp)
            / num_traits::pow(q, self.q_exp)
    }
}

/// `Pr_Del(p){y | x} = Emb(x;y) p^{|x|-|y|} (1-p)^{|y|}`.
pub fn cond_prob_del(x: &Word, y: &Word) -> MonomialProb {
    if y.len() > x.len() {
        return MonomialProb::zero(x.q());
    }
    MonomialProb {
        coefficient: embedding_number(x, y).to_biguint(),
        p_exp: x.len() - y.len(),
        keep_exp: y.len(),
        q_exp: 0,
        q: x.q(),
    }
}

/// `Pr_Ins(p){y | x} = N(y;x) (p/q)^{|y|-|x|} (1-p)^{|x|+1-(|y|-|x|)}`.
///
/// `N(y;x)` counts embeddings of `x` in `y` that leave at most one inserted
/// symbol in each gap, the only patterns the sampler can produce. It equals
/// `Emb(y;x)` whenever `|y| - |x| <= 1`.
pub fn cond_prob_ins(x: &Word, y: &Word, q: u8) -> MonomialProb {
    if y.len() < x.len() || y.len() - x.len() > x.len() + 1 {
        return MonomialProb::zero(q);
    }
    let e = y.len() - x.len();
    MonomialProb {
        coefficient: gap_restricted_embeddings(y.symbols(), x.symbols()),
        p_exp: e,
        keep_exp: x.len() + 1 - e,
        q_exp: e,
        q,
    }
}

/// `Pr_{k-Del}{y | x} = Emb(x;y) / C(|x|, k)` with `k = |x| - |y|`.
pub fn cond_prob_kdel(x: &Word, y: &Word) -> Result<BigRational> {
    if y.len() > x.len() {
        return domain("k-Del output cannot be longer than its input");
    }
    let k = x.len() - y.len();
    Ok(BigRational::new(
        BigInt::from(embedding_number(x, y).to_biguint()),
        BigInt::from(binomial(x.len(), k)),
    ))
}

/// Embeddings of `x` in `y` whose unmatched positions never share a gap.
pub(crate) fn gap_restricted_embeddings(y: &[u8], x: &[u8]) -> BigUint {
    // state[j][f]: j symbols of x matched, f = current gap already holds an insertion
    let m = x.len();
    let mut state = vec![[BigUint::default(), BigUint::default()]; m + 1];
    state[0][0] = BigUint::one();
    for &s in y {
        let mut next = vec![[BigUint::default(), BigUint::default()]; m + 1];
        for j in 0..=m {
            let [free, used] = &state[j];
            if j < m && x[j] == s {
                next[j + 1][0] += free + used;
            }
            next[j][1] += free;
        }
        state = next;
    }
    let [free, used] = &state[m];
    free + used
}
