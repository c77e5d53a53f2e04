//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use indelml::channels::ChannelConfig;
use indelml::codes::{vt_decode_1del, vt_decode_1del_search, Code, CodeConfig, VtParams};
use indelml::combinatorics::{
    binomial, deletion_ball, embedding_number, insertion_ball, insertion_ball_size, tau_of_space,
};
use indelml::decoders::{brute_force_ml_star, ml_star_2del, two_del_condition, DecoderKind};
use indelml::harness::{
    exact_expected_distance, figure_plans, run_experiment, AggregateResult, ExperimentConfig, FigureId, Metric,
    Scale,
};
use indelml::supersequences::{enumerate_scs, DEFAULT_CAP};
use indelml::{EmbeddingCount, Word};

use common::*;

const GRID: [f64; 4] = [0.01, 0.02, 0.03, 0.05];
const N: usize = 150;
const TRIALS: u64 = 20_000;
const SEED: u64 = 2024;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn del_config(q: u8) -> ExperimentConfig {
    ExperimentConfig {
        channel: ChannelConfig::Del { p: 0.0 },
        t: 2,
        n: N,
        q,
        code: CodeConfig::All,
        decoder: DecoderKind::Mld2Del,
        p_grid: GRID.to_vec(),
        trials_per_point: TRIALS,
        master_seed: SEED,
        metrics: Metric::ALL.to_vec(),
        cap: None,
    }
}

/// Checks `lo * f <= measured <= hi * f` at every point; returns the worst ratio summary.
fn ratio_band(res: &AggregateResult, metric: Metric, formula: impl Fn(u8, f64) -> f64, label: &str) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for pt in &res.points {
        let p = pt.p();
        let (value, _) = pt.metric(metric, res.config.n);
        let f = formula(res.config.q, p);
        let r = value / f;
        let inside = (0.4..=1.1).contains(&r);
        ok &= inside;
        parts.push(format!("p={p}:{r:.3}{}", if inside { "" } else { "!" }));
    }
    (ok, format!("{label} q={} ratios [{}]", res.config.q, parts.join(" ")))
}

fn fig1_runs() -> Vec<AggregateResult> {
    [2u8, 4].into_iter().map(|q| run_experiment(&del_config(q)).expect("valid config")).collect()
}

fn criterion_1(runs: &[AggregateResult]) -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for r in runs {
        let (o, d) = ratio_band(r, Metric::LevenshteinRate, |q, p| (3.0 * q as f64 - 1.0) / (q as f64 - 1.0) * p * p, "rate/formula");
        ok &= o;
        details.push(d);
    }
    check(ok, details.join("; "))
}

fn criterion_2(runs: &[AggregateResult]) -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for r in runs {
        let (o1, d1) = ratio_band(r, Metric::RunComponent, |q, p| (q as f64 + 1.0) / (q as f64 - 1.0) * p * p, "run");
        let (o2, d2) = ratio_band(r, Metric::AltComponent, |_, p| 2.0 * p * p, "alt");
        ok &= o1 && o2;
        details.push(d1);
        details.push(d2);
    }
    check(ok, details.join("; "))
}

fn criterion_3() -> Outcome {
    let cfg = ExperimentConfig {
        channel: ChannelConfig::Ins { p: 0.0, q: 2 },
        decoder: DecoderKind::Mld2Ins,
        ..del_config(2)
    };
    let res = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let (ok, d) = ratio_band(&res, Metric::LevenshteinRate, |_, p| 2.5 * p * p, "ins rate/formula");
    check(ok, d)
}

fn criterion_4() -> Outcome {
    let plans = figure_plans(FigureId::Fig3, Scale::Desk, SEED);
    let mut success: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut labels = Vec::new();
    for plan in &plans {
        let res = run_experiment(&plan.config).map_err(|e| e.to_string())?;
        labels.push(res.code_label.clone());
        success.push(
            res.points
                .iter()
                .map(|pt| {
                    let (f, se) = pt.metric(Metric::FailureRate, N);
                    (1.0 - f, se)
                })
                .collect(),
        );
    }
    // plans are ordered uncoded, VT, SVT
    let (unc, vt, svt) = (&success[0], &success[1], &success[2]);
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, &p) in GRID.iter().enumerate() {
        let geq = |a: (f64, f64), b: (f64, f64)| a.0 - b.0 >= -3.0 * (a.1 * a.1 + b.1 * b.1).sqrt();
        let bound = (-5.0 * p * p * N as f64).exp() * 0.95;
        let good = geq(vt[i], svt[i]) && geq(svt[i], unc[i]) && unc[i].0 >= bound;
        ok &= good;
        parts.push(format!(
            "p={p}: vt={:.4} svt={:.4} uncoded={:.4} bound={:.4}{}",
            vt[i].0,
            svt[i].0,
            unc[i].0,
            bound,
            if good { "" } else { " !" }
        ));
    }
    check(ok, format!("{} | {}", labels.join(","), parts.join("; ")))
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for n in 5..=20 {
        let v = exact_expected_distance(&DecoderKind::Lazy, 1, &Code::All { n, q: 2 }).map_err(|e| e.to_string())?;
        if v != BigRational::new(BigInt::from(1), BigInt::from(n)) {
            bad.push(format!("n={n}: {v}"));
        }
    }
    check(bad.is_empty(), if bad.is_empty() { "lazy = 1/n for n = 5..20".into() } else { bad.join("; ") })
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [17usize, 18] {
        let v = exact_expected_distance(&DecoderKind::En(n), 1, &Code::All { n, q: 2 }).map_err(|e| e.to_string())?;
        let lazy = BigRational::new(BigInt::from(1), BigInt::from(n));
        ok &= v > lazy;
        let approx = v.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
            / v.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        parts.push(format!("n={n}: EN={approx:.6} vs 1/n={:.6}", 1.0 / n as f64));
    }
    check(ok, parts.join("; "))
}

/// `EN^{|y|+1}`: the first longest run prolonged by one, checked against the
/// embedding-number maximum over `I_1(y)`.
fn en_plus_one(y: &[u8]) -> Vec<u8> {
    let runs = run_lengths(y);
    let longest = *runs.iter().max().unwrap();
    let idx = runs.iter().position(|&r| r == longest).unwrap();
    let start: usize = runs[..idx].iter().sum();
    let mut out = y.to_vec();
    out.insert(start, y[start]);
    let best = insertions(y, 1, 2).iter().map(|c| emb(c, y)).max().unwrap();
    assert_eq!(emb(&out, y), best, "prolonging the longest run maximizes Emb");
    out
}

fn criterion_7() -> Outcome {
    let mut total = 0usize;
    let mut violations = Vec::new();
    for n in 8..=14usize {
        let mut bad = 0usize;
        let mut first = None;
        for y in all_words(n - 2, 2) {
            let en = en_plus_one(&y);
            let margin: i128 = insertions(&y, 2, 2)
                .iter()
                .map(|c| emb(c, &y) as i128 * (indel(&en, c) as i128 - 2))
                .sum();
            let runs = run_lengths(&y);
            let (ni, ri, r) = (n as i64, *runs.iter().max().unwrap() as i64, runs.len() as i64);
            let poly = 2 * ni * ni - 4 * ni * ri - 6 * ni + ri * ri + 3 * ri + r + 1;
            let yw = Word::binary(&y).unwrap();
            assert_eq!(two_del_condition(&yw), poly, "library polynomial");
            let expected = if poly >= 0 { y.clone() } else { en.clone() };
            assert_eq!(ml_star_2del(&yw).unwrap().symbols(), &expected[..], "library ML* follows the polynomial");
            if (margin >= 0) != (poly >= 0) {
                bad += 1;
                first.get_or_insert_with(|| {
                    format!("{} (sum={margin}, poly={poly})", y.iter().map(|s| s.to_string()).collect::<String>())
                });
            }
            total += 1;
        }
        if bad > 0 {
            violations.push(format!("n={n}: {bad} e.g. y={}", first.unwrap()));
        }
    }
    check(violations.is_empty(), format!("{total} outputs checked; violations: [{}]", violations.join("; ")))
}

fn criterion_8() -> Outcome {
    let mut cases = 0usize;
    let mut len_bad = Vec::new();
    let mut eq_bad = Vec::new();
    let mut unique = 0usize;
    for n in 2..=12usize {
        for y in Word::all(n - 2, 2) {
            let out = brute_force_ml_star(&y, 2, n - 2..=n + 1, None).map_err(|e| e.to_string())?;
            cases += 1;
            if out.word.len() > n - 1 {
                len_bad.push(format!("{}->{}", if y.is_empty() { "ε".into() } else { y.to_string() }, out.word));
            }
            if out.unique() {
                unique += 1;
                if out.word != ml_star_2del(&y).map_err(|e| e.to_string())? {
                    eq_bad.push(y.to_string());
                }
            }
        }
    }
    let detail = format!(
        "{cases} outputs, {unique} unique minimizers; length violations {} (first {:?}); mismatches with ml_star_2del {} (first {:?})",
        len_bad.len(),
        len_bad.first(),
        eq_bad.len(),
        eq_bad.first()
    );
    check(len_bad.is_empty() && eq_bad.is_empty(), detail)
}

fn criterion_9() -> Outcome {
    let mut mismatches = 0u64;
    let mut checks = 0u64;
    // embedding numbers and deletion-ball sums
    for n in 0..=10usize {
        let ys: Vec<Vec<u8>> = (0..=n).flat_map(|l| all_words(l, 2)).collect();
        for x in all_words(n, 2) {
            let reference = subset_embeddings(&x);
            let xw = Word::binary(&x).unwrap();
            for y in &ys {
                let expected = reference.get(y).copied().unwrap_or(0);
                checks += 1;
                if embedding_number(&xw, &Word::binary(y).unwrap()) != EmbeddingCount::from(expected) {
                    mismatches += 1;
                }
            }
            for t in 0..=n {
                let ball = deletion_ball(&xw, t).unwrap();
                let sum: EmbeddingCount = ball.iter().map(|y| embedding_number(&xw, y)).sum();
                let want: BTreeSet<Vec<u8>> = deletions(&x, t);
                checks += 2;
                mismatches += u64::from(sum.to_biguint() != binomial_ref(n, t));
                mismatches += u64::from(ball.iter().map(|w| w.symbols().to_vec()).collect::<BTreeSet<_>>() != want);
            }
        }
    }
    let emb_summary = format!("emb/ball checks {checks}");
    // insertion balls against the closed form
    let mut ins_checks = 0u64;
    for q in 2..=4u8 {
        for n in 0..=8usize {
            for x in all_words(n, q) {
                let xw = Word::new(x.clone(), q).unwrap();
                for t in 0..=2usize {
                    let closed: u64 = (0..=t).map(|i| small_binomial(n + t, i) * (q as u64 - 1).pow(i as u32)).sum();
                    let got = insertion_ball(&xw, t).len() as u64;
                    ins_checks += 1;
                    if got != closed || insertion_ball_size(n, t, q) != BigUint::from(closed) {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    // SCS: exhaustive up to length 5, sampled up to length 8
    let mut scs_checks = 0u64;
    let mut pairs = Vec::new();
    for l1 in 0..=5 {
        for l2 in 0..=5 {
            for a in all_words(l1, 2) {
                for b in all_words(l2, 2) {
                    pairs.push((a.clone(), b));
                }
            }
        }
    }
    let mut rng = SplitMix(99);
    for _ in 0..1500 {
        let l1 = 6 + rng.below(3) as usize;
        let l2 = rng.below(9) as usize;
        let (a, b) = (rng.word(l1, 2), rng.word(l2, 2));
        if rng.below(2) == 0 {
            pairs.push((a, b));
        } else {
            pairs.push((b, a));
        }
    }
    for (a, b) in &pairs {
        let got = enumerate_scs(&Word::binary(a).unwrap(), &Word::binary(b).unwrap(), None, DEFAULT_CAP).unwrap();
        let got: Vec<Vec<u8>> = got.candidates.iter().map(|w| w.symbols().to_vec()).collect();
        scs_checks += 1;
        if got != brute_scs(a, b, 2) {
            mismatches += 1;
        }
    }
    check(
        mismatches == 0,
        format!("{emb_summary}, insertion-ball checks {ins_checks}, scs pairs {scs_checks}; mismatches {mismatches}"),
    )
}

fn small_binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn binomial_ref(n: usize, k: usize) -> BigUint {
    let lib = binomial(n, k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    assert_eq!(lib, acc);
    acc
}

fn criterion_10() -> Outcome {
    let mut decodes = 0u64;
    let mut bad = 0u64;
    for n in 2..=12usize {
        for a in 0..=n {
            let params = VtParams::new(n, a).unwrap();
            for c in all_words(n, 2) {
                let cs: usize = c.iter().enumerate().map(|(i, &s)| (i + 1) * s as usize).sum();
                if cs % (n + 1) != a {
                    continue;
                }
                for y in deletions(&c, 1) {
                    let y = Word::binary(&y).unwrap();
                    let alg = vt_decode_1del(&y, &params).ok();
                    let search = vt_decode_1del_search(&y, &params).ok();
                    decodes += 1;
                    let ok = alg.as_ref().map(|w| w.symbols()) == Some(&c[..]) && alg == search;
                    bad += u64::from(!ok);
                }
            }
        }
    }
    let mut tau_bad = Vec::new();
    for n in 2..=24usize {
        let tau = tau_of_space(n).unwrap();
        let tau_f = tau.numer().to_string().parse::<f64>().unwrap() / tau.denom().to_string().parse::<f64>().unwrap();
        if tau_f > 2.0 * (n as f64).log2() {
            tau_bad.push(format!("n={n} tau={tau_f:.3}"));
        }
        if n <= 16 {
            let (num, den) = tau_brute(n);
            if tau != BigRational::new(BigInt::from(num), BigInt::from(den)) {
                tau_bad.push(format!("n={n} DP {tau} != enumeration {num}/{den}"));
            }
        }
    }
    check(
        bad == 0 && tau_bad.is_empty(),
        format!("{decodes} VT decodes, {bad} failures; tau issues: [{}]", tau_bad.join("; ")),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed = 0;
    let mut report = |id: usize, title: &str, t: Instant, outcome: Outcome| {
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {id:>2} PASS [{title}] ({secs:.1}s) {d}"),
            Err(d) => {
                failed += 1;
                println!("criterion {id:>2} FAIL [{title}] ({secs:.1}s) {d}")
            }
        }
    };
    let t = Instant::now();
    let runs = fig1_runs();
    report(1, "two-deletion Levenshtein rate, q in {2,4}", t, criterion_1(&runs));
    report(2, "run / alternating components", Instant::now(), criterion_2(&runs));
    let t = Instant::now();
    report(3, "two-insertion Levenshtein rate", t, criterion_3());
    let t = Instant::now();
    report(4, "coded success ordering and lower bound", t, criterion_4());
    let t = Instant::now();
    report(5, "exact lazy law on 1-Del", t, criterion_5());
    let t = Instant::now();
    report(6, "lazy beats EN^n at n = 17, 18", t, criterion_6());
    let t = Instant::now();
    report(7, "2-deletion condition oracle", t, criterion_7());
    let t = Instant::now();
    report(8, "brute-force ML* window", t, criterion_8());
    let t = Instant::now();
    report(9, "combinatorial oracles", t, criterion_9());
    let t = Instant::now();
    report(10, "VT correction and tau bound", t, criterion_10());
    println!("acceptance: {} of 10 criteria passed in {:.1}s", 10 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
