use crate::codes::Code;
use crate::combinatorics::embedding_number_of;
use crate::count::EmbeddingCount;
use crate::error::{domain, Result};
use crate::supersequences::{for_each_common_supersequence, for_each_lcs, for_each_scs, SuffixLcs, DEFAULT_CAP};
use crate::word::Word;

/// Largest gap between the code length and the SCS length for which the
/// code-aware decoder searches non-shortest common supersequences.
pub const MAX_CODE_SLACK: usize = 1;

/// Options for the two-trace decoders.
#[derive(Clone, Copy, Debug)]
pub struct MldOptions {
    /// Transmitted length; enables the banded DP.
    pub n: Option<usize>,
    pub cap: usize,
}

impl Default for MldOptions {
    fn default() -> Self {
        Self { n: None, cap: DEFAULT_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MldOutput {
    pub word: Word,
    /// Winning likelihood product.
    pub score: EmbeddingCount,
    /// Candidates examined.
    pub candidates: usize,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MlCodeOutput {
    pub word: Word,
    pub score: EmbeddingCount,
    /// Every codeword had `Emb(c; y) = 0`.
    pub zero_likelihood: bool,
}

/// Running argmax; candidates arrive in lexicographic order, so keeping the
/// first strict maximum breaks ties toward the smallest word.
struct Best {
    word: Option<Vec<u8>>,
    score: EmbeddingCount,
    seen: usize,
}

impl Best {
    fn new() -> Self {
        Best { word: None, score: EmbeddingCount::ZERO, seen: 0 }
    }

    fn offer(&mut self, w: &[u8], score: EmbeddingCount) {
        self.seen += 1;
        if self.word.is_none() || score > self.score {
            self.word = Some(w.to_vec());
            self.score = score;
        }
    }

    fn finish(self, q: u8, truncated: bool) -> Option<MldOutput> {
        let word = self.word?;
        Some(MldOutput { word: Word::from_raw(word, q), score: self.score, candidates: self.seen, truncated })
    }
}

/// `argmax_{c in C} Emb(c; y)`, ties to the lexicographically smallest codeword.
pub fn decode_ml_code(y: &Word, code: &[Word]) -> Result<MlCodeOutput> {
    let Some(first) = code.first() else {
        return domain("code must be nonempty");
    };
    if code.iter().any(|c| c.len() != first.len()) {
        return domain("codewords must share one length");
    }
    let mut best: Option<(&Word, EmbeddingCount)> = None;
    for c in code {
        let e = embedding_number_of(c.symbols(), y.symbols());
        let better = match &best {
            None => true,
            Some((bw, bs)) => e > *bs || (e == *bs && c < *bw),
        };
        if better {
            best = Some((c, e));
        }
    }
    let (word, score) = best.expect("nonempty code");
    Ok(MlCodeOutput { word: word.clone(), zero_likelihood: score.is_zero(), score })
}

fn del_band(n: Option<usize>, y1: &Word, y2: &Word) -> Option<usize> {
    n.filter(|&n| n >= y1.len() && n >= y2.len()).map(|n| (n - y1.len()) + (n - y2.len()))
}

fn ins_band(n: Option<usize>, y1: &Word, y2: &Word) -> Option<usize> {
    n.filter(|&n| n <= y1.len() && n <= y2.len()).map(|n| (y1.len() - n) + (y2.len() - n))
}

fn cap_guard(cap: usize) -> Result<()> {
    if cap == 0 {
        domain("enumeration cap must be at least 1")
    } else {
        Ok(())
    }
}

/// `ML^D` for two deletion traces: the shortest common supersequence `x`
/// maximizing `Emb(x; y1) Emb(x; y2)`.
pub fn decode_mld_two_del(y1: &Word, y2: &Word, opts: &MldOptions) -> Result<MldOutput> {
    cap_guard(opts.cap)?;
    let q = y1.q().max(y2.q());
    let table = SuffixLcs::new_exact(y1.symbols(), y2.symbols(), del_band(opts.n, y1, y2));
    let mut best = Best::new();
    let truncated = for_each_scs(&table, |w| {
        if best.seen == opts.cap {
            return false;
        }
        let score = &embedding_number_of(w, y1.symbols()) * &embedding_number_of(w, y2.symbols());
        best.offer(w, score);
        true
    });
    Ok(best.finish(q, truncated).expect("two words always have a common supersequence"))
}

/// `ML^D` for two insertion traces: the longest common subsequence `x`
/// maximizing `Emb(y1; x) Emb(y2; x)`.
pub fn decode_mld_two_ins(y1: &Word, y2: &Word, opts: &MldOptions) -> Result<MldOutput> {
    cap_guard(opts.cap)?;
    let q = y1.q().max(y2.q());
    let table = SuffixLcs::new_exact(y1.symbols(), y2.symbols(), ins_band(opts.n, y1, y2));
    let mut best = Best::new();
    let truncated = for_each_lcs(&table, q, |w| {
        if best.seen == opts.cap {
            return false;
        }
        let score = &embedding_number_of(y1.symbols(), w) * &embedding_number_of(y2.symbols(), w);
        best.offer(w, score);
        true
    });
    Ok(best.finish(q, truncated).expect("the empty word is always common"))
}

/// `ML^D` restricted to a code of length `n`.
///
/// Candidates are the codewords among the common supersequences of length
/// `n`: the SCS set when the SCS has length `n`, and the length-`n` common
/// supersequences when it is shorter by at most [`MAX_CODE_SLACK`]. Without a
/// codeword candidate the unrestricted `ML^D` output is returned.
pub fn decode_mld_two_del_in_code(y1: &Word, y2: &Word, code: &Code, cap: usize) -> Result<MldOutput> {
    cap_guard(cap)?;
    let n = code.n();
    let q = y1.q().max(y2.q());
    let table = SuffixLcs::new_exact(y1.symbols(), y2.symbols(), del_band(Some(n), y1, y2));
    let scs = table.scs().expect("exact table reaches the corner");
    let mut best = Best::new();
    let mut visited = 0usize;
    let mut visit = |w: &[u8]| {
        if visited == cap {
            return false;
        }
        visited += 1;
        if code.contains(w) {
            let score = &embedding_number_of(w, y1.symbols()) * &embedding_number_of(w, y2.symbols());
            best.offer(w, score);
        }
        true
    };
    let truncated = if scs == n {
        for_each_scs(&table, &mut visit)
    } else if scs < n && n - scs <= MAX_CODE_SLACK {
        for_each_common_supersequence(&table, q, n, &mut visit)
    } else {
        false
    };
    match best.finish(q, truncated) {
        Some(out) => Ok(out),
        None => {
            let mut out = decode_mld_two_del(y1, y2, &MldOptions { n: Some(n), cap })?;
            out.truncated |= truncated;
            Ok(out)
        }
    }
}
