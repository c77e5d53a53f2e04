use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Metric};
use super::experiment::{rows_to_csv, run_experiment, AggregateResult, CsvRow};
use crate::analysis::{coded_fail_bounds, two_del_formulas, two_ins_formulas, CodeFamily};
use crate::channels::ChannelConfig;
use crate::codes::CodeConfig;
use crate::decoders::DecoderKind;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    /// Levenshtein error rate of `ML^D` over two `Del(p)` traces, `q in {2, 4}`.
    Fig1,
    /// Run and alternating components of the same experiment.
    Fig2,
    /// Failure rate over two `Del(p)` traces: uncoded, VT and SVT.
    Fig3,
    /// Two `Ins(p)` traces, binary.
    Fig5,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [FigureId::Fig1, FigureId::Fig2, FigureId::Fig3, FigureId::Fig5];

    pub fn name(&self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig5 => "fig5",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown figure {s:?} (expected fig1, fig2, fig3 or fig5)")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// `n = 150`, 20k trials, four grid points.
    #[default]
    Desk,
    /// `n = 450` (deletions) or `500` (insertions), 200k trials, `p = 0.005..0.05`.
    Full,
}

impl FromStr for Scale {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Scale::Desk),
            "full" => Ok(Scale::Full),
            _ => Err(Error::Parse(format!("unknown scale {s:?} (expected desk or full)"))),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Desk => "desk",
            Scale::Full => "full",
        })
    }
}

pub const DESK_GRID: [f64; 4] = [0.01, 0.02, 0.03, 0.05];
pub const DESK_N: usize = 150;
pub const DESK_TRIALS: u64 = 20_000;
pub const FULL_DEL_N: usize = 450;
pub const FULL_INS_N: usize = 500;
pub const FULL_TRIALS: u64 = 200_000;

/// `0.005, 0.010, ..., 0.050`.
pub fn full_grid() -> Vec<f64> {
    (1..=10).map(|i| i as f64 * 0.005).collect()
}

/// Closed-form curve attached to a measured series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Formula {
    DelTotal,
    DelRun,
    DelAlt,
    InsTotal,
    InsRun,
    InsAlt,
    /// `1 - ` the coded success lower bound.
    CodedFailure(CodeFamily),
}

impl Formula {
    pub fn eval(&self, q: u8, p: f64, n: usize) -> Result<f64> {
        Ok(match self {
            Formula::DelTotal => two_del_formulas(q, p, n)?.p_err_approx,
            Formula::DelRun => two_del_formulas(q, p, n)?.p_run,
            Formula::DelAlt => two_del_formulas(q, p, n)?.p_alt,
            Formula::InsTotal => two_ins_formulas(q, p, n)?.p_err_approx,
            Formula::InsRun => two_ins_formulas(q, p, n)?.p_run,
            Formula::InsAlt => two_ins_formulas(q, p, n)?.p_alt,
            Formula::CodedFailure(f) => 1.0 - coded_fail_bounds(q, p, n, *f)?,
        })
    }
}

/// One experiment of a figure and the series it feeds.
#[derive(Clone, Debug)]
pub struct FigurePlan {
    pub config: ExperimentConfig,
    pub series: Vec<(Metric, Formula)>,
}

fn base_config(channel: ChannelConfig, decoder: DecoderKind, n: usize, q: u8, scale: Scale, seed: u64) -> ExperimentConfig {
    let (grid, trials) = match scale {
        Scale::Desk => (DESK_GRID.to_vec(), DESK_TRIALS),
        Scale::Full => (full_grid(), FULL_TRIALS),
    };
    ExperimentConfig {
        channel,
        t: 2,
        n,
        q,
        code: CodeConfig::All,
        decoder,
        p_grid: grid,
        trials_per_point: trials,
        master_seed: seed,
        metrics: Vec::new(),
        cap: None,
    }
}

/// Experiments behind a figure.
pub fn figure_plans(id: FigureId, scale: Scale, seed: u64) -> Vec<FigurePlan> {
    let del_n = if scale == Scale::Desk { DESK_N } else { FULL_DEL_N };
    let ins_n = if scale == Scale::Desk { DESK_N } else { FULL_INS_N };
    let del = |q: u8| base_config(ChannelConfig::Del { p: 0.0 }, DecoderKind::Mld2Del, del_n, q, scale, seed);
    let plan = |mut config: ExperimentConfig, series: Vec<(Metric, Formula)>| {
        config.metrics = series.iter().map(|s| s.0).collect();
        FigurePlan { config, series }
    };
    match id {
        FigureId::Fig1 => [2, 4]
            .into_iter()
            .map(|q| plan(del(q), vec![(Metric::LevenshteinRate, Formula::DelTotal)]))
            .collect(),
        FigureId::Fig2 => [2, 4]
            .into_iter()
            .map(|q| plan(del(q), vec![(Metric::RunComponent, Formula::DelRun), (Metric::AltComponent, Formula::DelAlt)]))
            .collect(),
        FigureId::Fig3 => [
            (CodeConfig::All, CodeFamily::Uncoded),
            (CodeConfig::Vt { a: 0 }, CodeFamily::Vt),
            (CodeConfig::Svt { a: 0, p: None, b: 0 }, CodeFamily::Svt),
        ]
        .into_iter()
        .map(|(code, fam)| {
            plan(ExperimentConfig { code, ..del(2) }, vec![(Metric::FailureRate, Formula::CodedFailure(fam))])
        })
        .collect(),
        FigureId::Fig5 => {
            let cfg = base_config(ChannelConfig::Ins { p: 0.0, q: 2 }, DecoderKind::Mld2Ins, ins_n, 2, scale, seed);
            vec![plan(
                cfg,
                vec![
                    (Metric::LevenshteinRate, Formula::InsTotal),
                    (Metric::RunComponent, Formula::InsRun),
                    (Metric::AltComponent, Formula::InsAlt),
                ],
            )]
        }
    }
}

/// One measured point with its formula value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub metric: Metric,
    pub code: String,
    pub q: u8,
    pub n: usize,
    pub p: f64,
    pub measured: f64,
    pub stderr: f64,
    pub formula: f64,
    pub trials: u64,
    pub seed: u64,
    pub decoder: String,
}

impl SeriesPoint {
    pub fn series(&self) -> String {
        format!("{} {} q={}", self.metric, self.code, self.q)
    }
}

/// Measured and formula series of one figure.
#[derive(Clone, Debug, Serialize)]
pub struct FigureData {
    pub id: FigureId,
    pub scale: Scale,
    pub points: Vec<SeriesPoint>,
    #[serde(skip)]
    pub results: Vec<AggregateResult>,
}

pub const WIDE_HEADER: &str = "series,metric,code,q,n,p,measured_rate,stderr,formula_rate,trials,seed";

impl FigureData {
    /// Fixed-schema rows: one per measurement plus a `formula_<metric>` row.
    pub fn long_rows(&self) -> Vec<CsvRow> {
        let mut rows = Vec::with_capacity(2 * self.points.len());
        for pt in &self.points {
            let row = |metric: String, value: f64, stderr: f64| CsvRow {
                metric,
                q: pt.q,
                n: pt.n,
                p: pt.p,
                t: 2,
                code: pt.code.clone(),
                decoder: pt.decoder.clone(),
                value,
                stderr,
                trials: pt.trials,
                seed: pt.seed,
            };
            rows.push(row(pt.metric.name().into(), pt.measured, pt.stderr));
            rows.push(row(format!("formula_{}", pt.metric), pt.formula, 0.0));
        }
        rows
    }

    pub fn to_long_csv(&self) -> String {
        rows_to_csv(&self.long_rows())
    }

    /// One row per point with measurement and formula side by side.
    pub fn to_wide_csv(&self) -> String {
        let mut out = String::from(WIDE_HEADER);
        out.push('\n');
        for pt in &self.points {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                pt.series(),
                pt.metric,
                pt.code,
                pt.q,
                pt.n,
                pt.p,
                pt.measured,
                pt.stderr,
                pt.formula,
                pt.trials,
                pt.seed
            );
        }
        out
    }

    /// Line chart: measured series solid with markers, formulas dashed.
    pub fn to_svg(&self) -> String {
        let mut groups: Vec<(String, Vec<&SeriesPoint>)> = Vec::new();
        for pt in &self.points {
            let key = pt.series();
            match groups.iter_mut().find(|g| g.0 == key) {
                Some(g) => g.1.push(pt),
                None => groups.push((key, vec![pt])),
            }
        }
        svg::line_chart(
            &format!("{} ({} scale)", self.id, self.scale),
            "p",
            &groups
                .iter()
                .map(|(name, pts)| svg::Series {
                    name: name.clone(),
                    measured: pts.iter().map(|p| (p.p, p.measured)).collect(),
                    formula: pts.iter().map(|p| (p.p, p.formula)).collect(),
                })
                .collect::<Vec<_>>(),
        )
    }
}

/// Runs the experiments of a figure with the given plans.
pub fn run_plans(id: FigureId, scale: Scale, plans: &[FigurePlan]) -> Result<FigureData> {
    let mut points = Vec::new();
    let mut results = Vec::new();
    for plan in plans {
        let res = run_experiment(&plan.config)?;
        let c = &res.config;
        for pt in &res.points {
            let p = pt.p();
            for &(metric, formula) in &plan.series {
                let (measured, stderr) = pt.metric(metric, c.n);
                points.push(SeriesPoint {
                    metric,
                    code: res.code_label.clone(),
                    q: c.q,
                    n: c.n,
                    p,
                    measured,
                    stderr,
                    formula: formula.eval(c.q, p, c.n)?,
                    trials: pt.totals.trials,
                    seed: c.master_seed,
                    decoder: c.decoder.to_string(),
                });
            }
        }
        results.push(res);
    }
    Ok(FigureData { id, scale, points, results })
}

/// Runs a figure's experiments at the given scale.
pub fn reproduce_figure(id: FigureId, scale: Scale, seed: u64) -> Result<FigureData> {
    run_plans(id, scale, &figure_plans(id, scale, seed))
}

mod svg {
    use std::fmt::Write as _;

    pub struct Series {
        pub name: String,
        pub measured: Vec<(f64, f64)>,
        pub formula: Vec<(f64, f64)>,
    }

    const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
    const W: f64 = 640.0;
    const H: f64 = 420.0;
    const M: f64 = 60.0;

    pub fn line_chart(title: &str, xlabel: &str, series: &[Series]) -> String {
        let pts = || series.iter().flat_map(|s| s.measured.iter().chain(&s.formula));
        let xmax = pts().map(|p| p.0).fold(0.0, f64::max).max(1e-12);
        let ymax = pts().map(|p| p.1).fold(0.0, f64::max).max(1e-12) * 1.05;
        let sx = |x: f64| M + x / xmax * (W - 2.0 * M);
        let sy = |y: f64| H - M - y / ymax * (H - 2.0 * M);
        let path = |v: &[(f64, f64)]| {
            v.iter()
                .enumerate()
                .map(|(i, &(x, y))| format!("{}{:.2},{:.2}", if i == 0 { 'M' } else { 'L' }, sx(x), sy(y)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut s = String::new();
        let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#);
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, title);
        let _ = writeln!(s, r#"<path d="M{M},{} L{},{} M{M},{} L{M},{M}" stroke="black" fill="none"/>"#, H - M, W - M, H - M, H - M);
        for i in 0..=4 {
            let (x, y) = (xmax * i as f64 / 4.0, ymax * i as f64 / 4.0);
            let _ = writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="middle">{:.3}</text>"#, sx(x), H - M + 18.0, x);
            let _ = writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end">{:.2e}</text>"#, M - 6.0, sy(y) + 4.0, y);
        }
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, W / 2.0, H - 16.0, xlabel);
        for (i, ser) in series.iter().enumerate() {
            let c = COLORS[i % COLORS.len()];
            let _ = writeln!(s, r#"<path d="{}" stroke="{c}" fill="none" stroke-width="2"/>"#, path(&ser.measured));
            let _ = writeln!(s, r#"<path d="{}" stroke="{c}" fill="none" stroke-dasharray="5,4"/>"#, path(&ser.formula));
            for &(x, y) in &ser.measured {
                let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{c}"/>"#, sx(x), sy(y));
            }
            let ly = M + 16.0 * i as f64;
            let _ = writeln!(s, r#"<text x="{}" y="{ly}" fill="{c}">{} (dashed: formula)</text>"#, M + 10.0, ser.name);
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse() {
        for id in FigureId::ALL {
            assert_eq!(id.name().parse::<FigureId>().unwrap(), id);
        }
        assert!("fig4".parse::<FigureId>().is_err());
        assert_eq!("full".parse::<Scale>().unwrap(), Scale::Full);
    }

    #[test]
    fn plans_match_scales() {
        let p = figure_plans(FigureId::Fig3, Scale::Desk, 1);
        assert_eq!(p.len(), 3);
        assert!(p.iter().all(|f| f.config.n == DESK_N && f.config.validate().is_ok()));
        let p = figure_plans(FigureId::Fig5, Scale::Full, 1);
        assert_eq!((p[0].config.n, p[0].config.p_grid.len()), (FULL_INS_N, 10));
        assert_eq!(figure_plans(FigureId::Fig1, Scale::Full, 1)[0].config.n, FULL_DEL_N);
    }

    #[test]
    fn small_figure_emits_both_forms() {
        let mut plans = figure_plans(FigureId::Fig1, Scale::Desk, 3);
        for p in &mut plans {
            p.config.n = 30;
            p.config.trials_per_point = 40;
            p.config.p_grid = vec![0.05];
        }
        let fig = run_plans(FigureId::Fig1, Scale::Desk, &plans).unwrap();
        let long = fig.to_long_csv();
        assert_eq!(long.lines().count(), 1 + 4);
        assert!(long.lines().nth(2).unwrap().starts_with("formula_levenshtein_rate,2,30,0.05"));
        let wide = fig.to_wide_csv();
        assert!(wide.starts_with(WIDE_HEADER));
        assert_eq!(wide.lines().count(), 3);
        assert!(fig.to_svg().contains("<svg"));
    }
}
