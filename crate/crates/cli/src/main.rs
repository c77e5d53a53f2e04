use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use log::info;

use indelml::analysis::{coded_fail_bounds, two_del_formulas, two_ins_formulas, CodeFamily};
use indelml::codes::{Code, CodeConfig};
use indelml::decoders::{decode, DecodeContext, DecoderKind};
use indelml::harness::{
    reproduce_figure, run_experiment, run_oracle, ExperimentConfig, FigureId, OracleCheck, Scale, WORKERS_ENV,
};
use indelml::supersequences::DEFAULT_CAP;
use indelml::Word;

#[derive(Parser)]
#[command(name = "indelml", version, about = "Decoders and error analysis for deletion and insertion channels")]
#[command(after_help = format!("Worker threads for Monte Carlo runs are read from {WORKERS_ENV}."))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo experiment described by a JSON config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Regenerate the data behind a figure (fig1, fig2, fig3, fig5).
    ReproduceFigure {
        figure: FigureId,
        #[arg(long, default_value = "desk")]
        scale: Scale,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit one row per grid point with measured and formula columns.
        #[arg(long)]
        wide: bool,
        /// Also write an SVG chart to this path.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Exhaustive self-check: 1del, 2del, scs or emb.
    OracleCheck {
        check: OracleCheck,
        #[arg(long)]
        n: usize,
    },
    /// Tabulate the closed-form approximations over a grid.
    Analyze {
        /// Probabilities as a list `0.01,0.02` or a range `start:stop:step`.
        #[arg(long, default_value = "0.005:0.05:0.005")]
        grid: String,
        #[arg(long, value_delimiter = ',', default_value = "150")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        q: Vec<u8>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode one or two traces given as digit strings.
    Decode {
        /// lazy, en:<m>, mlcode, mld2del, mld2ins, mlstar1, mlstar2, brute or brute:<lo>-<hi>.
        #[arg(long)]
        decoder: DecoderKind,
        #[arg(long, default_value_t = 2)]
        q: u8,
        /// Transmitted length.
        #[arg(long)]
        n: Option<usize>,
        /// Deletions of a k-Del channel.
        #[arg(long)]
        k: Option<usize>,
        /// all, vt:<a> or svt:<a>:<b>[:<P>]; requires --n.
        #[arg(long, default_value = "all")]
        code: String,
        #[arg(required = true)]
        traces: Vec<String>,
    },
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let (start, stop, step): (f64, f64, f64) = (parts[0].parse()?, parts[1].parse()?, parts[2].parse()?);
        if step <= 0.0 || stop < start {
            bail!("bad range {text:?}");
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize;
        return Ok((0..=count).map(|i| start + i as f64 * step).collect());
    }
    text.split(',').map(|v| v.trim().parse::<f64>().with_context(|| format!("bad probability {v:?}"))).collect()
}

fn parse_code(text: &str) -> Result<CodeConfig> {
    let fields: Vec<&str> = text.split(':').collect();
    Ok(match fields.as_slice() {
        ["all"] => CodeConfig::All,
        ["vt", a] => CodeConfig::Vt { a: a.parse()? },
        ["svt", a, b] => CodeConfig::Svt { a: a.parse()?, p: None, b: b.parse()? },
        ["svt", a, b, p] => CodeConfig::Svt { a: a.parse()?, p: Some(p.parse()?), b: b.parse()? },
        _ => bail!("unknown code {text:?} (expected all, vt:<a> or svt:<a>:<b>[:<P>])"),
    })
}

fn analyze(grid: &[f64], ns: &[usize], qs: &[u8]) -> Result<String> {
    let mut out = String::from("channel,q,n,p,p_run,p_alt,p_err_approx,success_bound,vt_success_bound,svt_success_bound\n");
    for &q in qs {
        for &n in ns {
            for &p in grid {
                let d = two_del_formulas(q, p, n)?;
                let vt = coded_fail_bounds(q, p, n, CodeFamily::Vt)?;
                let svt = coded_fail_bounds(q, p, n, CodeFamily::Svt)?;
                out += &format!(
                    "del,{q},{n},{p},{},{},{},{},{vt},{svt}\n",
                    d.p_run, d.p_alt, d.p_err_approx, d.p_fail_bound
                );
                let i = two_ins_formulas(q, p, n)?;
                out += &format!("ins,{q},{n},{p},{},{},{},{},,\n", i.p_run, i.p_alt, i.p_err_approx, i.p_fail_bound);
            }
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Simulate { config, out, seed } => {
            let text = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let mut cfg = ExperimentConfig::from_json(&text)?;
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            let result = run_experiment(&cfg)?;
            for pt in &result.points {
                info!("p = {}: {:.2?}", pt.p(), pt.wall_time);
            }
            write_output(out.as_deref(), &result.to_csv())?;
        }
        Command::ReproduceFigure { figure, scale, seed, out, wide, plot } => {
            let data = reproduce_figure(figure, scale, seed)?;
            let csv = if wide { data.to_wide_csv() } else { data.to_long_csv() };
            write_output(out.as_deref(), &csv)?;
            if let Some(path) = plot {
                fs::write(&path, data.to_svg()).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::OracleCheck { check, n } => {
            let report = run_oracle(check, n)?;
            println!("{report}");
            return Ok(report.passed());
        }
        Command::Analyze { grid, n, q, out } => {
            write_output(out.as_deref(), &analyze(&parse_grid(&grid)?, &n, &q)?)?;
        }
        Command::Decode { decoder, q, n, k, code, traces } => {
            let traces = traces.iter().map(|t| Word::parse(t, q)).collect::<indelml::Result<Vec<_>>>()?;
            let code_cfg = parse_code(&code)?;
            let code: Option<Code> = match (&code_cfg, n) {
                (CodeConfig::All, _) => None,
                (_, Some(n)) => Some(code_cfg.instantiate(n, q)?),
                (_, None) => bail!("--code {code} needs --n"),
            };
            let ctx = DecodeContext { n, code: code.as_ref(), k, cap: DEFAULT_CAP };
            let decoded = decode(&decoder, &traces, &ctx)?;
            println!("{}", decoded.word);
            if decoded.truncated {
                eprintln!("warning: candidate enumeration truncated at {DEFAULT_CAP}");
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
