use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mqms_core::analysis::{self, RecurrenceSpec};
use mqms_core::harness::{run_benchmark, write_csv, BenchConfig};
use mqms_core::{gen_input, Algorithm, Distribution, HybridConfig, InputSpec, Mode, UndersamplingConfig};

/// Benchmark harness for median-of-medians QuickMergesort.
#[derive(Parser)]
#[command(name = "mqms", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sort generated inputs and report comparisons, moves and time as CSV.
    Bench(BenchArgs),
    /// Like `bench`, under the worst-case simulation.
    Worstcase(BenchArgs),
    /// Print the analytic bound constants.
    Analyze {
        /// Also evaluate the uMQMS bound at this undersampling factor.
        #[arg(long)]
        theta: Option<String>,
    },
    /// Print a generated input, one value per line.
    Gen {
        #[arg(long, default_value = "random")]
        dist: String,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Comparisons,
    Time,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated algorithms, or `all`.
    #[arg(long, default_value = "umqms")]
    algo: String,
    /// Undersampling factor p/q for umqms and the hqms escalation step.
    #[arg(long)]
    theta: Option<String>,
    /// Balance threshold p/q for hqms.
    #[arg(long)]
    delta: Option<String>,
    /// Comma-separated distributions: random, merge, mo3killer, equal, few:D.
    #[arg(long, default_value = "random")]
    dist: String,
    /// Comma-separated input sizes.
    #[arg(long, default_value = "65536")]
    n: String,
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    #[arg(long, value_enum, default_value = "comparisons")]
    mode: ModeArg,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Repeat each measurement until this many bytes have been sorted.
    #[arg(long, default_value_t = 0)]
    min_bytes: u64,
    /// Enable the worst-case simulation (implied by `worstcase`).
    #[arg(long)]
    worst_case: bool,
}

fn split(list: &str) -> impl Iterator<Item = &str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_fraction(s: &str) -> Result<(u32, u32)> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    Ok((p.trim().parse().context("bad numerator")?, q.trim().parse().context("bad denominator")?))
}

impl BenchArgs {
    fn config(&self, worst_case: bool) -> Result<BenchConfig> {
        let theta: UndersamplingConfig = match &self.theta {
            Some(t) => t.parse()?,
            None => UndersamplingConfig::DEFAULT,
        };
        let mut hybrid = match &self.delta {
            Some(d) => {
                let (p, q) = parse_fraction(d).with_context(|| format!("invalid --delta {d:?}"))?;
                HybridConfig::new(p, q)?
            }
            None => HybridConfig::default(),
        };
        hybrid.theta = theta;
        let names: Vec<&str> = if self.algo.trim().eq_ignore_ascii_case("all") {
            Algorithm::NAMES.to_vec()
        } else {
            split(&self.algo).collect()
        };
        let worst_case = worst_case || self.worst_case;
        let mut algorithms = Vec::new();
        for name in names {
            let algo = match name.parse::<Algorithm>()? {
                Algorithm::Umqms(_) => Algorithm::Umqms(theta),
                Algorithm::Hqms(_) => Algorithm::Hqms(hybrid),
                a => a,
            };
            let simulated = matches!(algo, Algorithm::Bmqms | Algorithm::Mqms | Algorithm::Umqms(_));
            // `all` under the simulation means all simulated variants.
            if worst_case && !simulated && self.algo.trim().eq_ignore_ascii_case("all") {
                continue;
            }
            algorithms.push(algo);
        }
        let distributions = split(&self.dist).map(str::parse).collect::<Result<Vec<Distribution>, _>>()?;
        let sizes = split(&self.n)
            .map(|s| s.parse::<usize>().with_context(|| format!("invalid size {s:?}")))
            .collect::<Result<Vec<_>>>()?;
        if algorithms.is_empty() || distributions.is_empty() || sizes.is_empty() {
            bail!("need at least one algorithm, distribution and size");
        }
        Ok(BenchConfig {
            algorithms,
            distributions,
            sizes,
            seeds: self.seeds.max(1),
            mode: match self.mode {
                ModeArg::Comparisons => Mode::Comparisons,
                ModeArg::Time => Mode::Time,
            },
            worst_case,
            min_bytes: self.min_bytes,
        })
    }

    fn run(&self, worst_case: bool) -> Result<()> {
        let rows = run_benchmark(&self.config(worst_case)?)?;
        match &self.csv {
            Some(path) => {
                let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
                write_csv(&rows, BufWriter::new(file))?;
            }
            None => write_csv(&rows, io::stdout().lock())?,
        }
        Ok(())
    }
}

fn analyze(theta: Option<&str>) -> Result<()> {
    let mut out = io::stdout().lock();
    let mom = analysis::linear_coefficient(&RecurrenceSpec::repeated_step())?;
    writeln!(out, "median-of-medians (repeated step): {:.6} n, remainder O(n^{:.4})", mom.coefficient, mom.zeta)?;
    let b = analysis::q_coefficient(0.5, analysis::bmqms_level_cost());
    let m = analysis::q_coefficient(0.5, analysis::mqms_level_cost());
    writeln!(out, "bMQMS worst case: n log n + {b:.4} n")?;
    writeln!(out, "MQMS worst case:  n log n + {m:.4} n")?;
    let opt = analysis::find_theta_opt();
    writeln!(out, "optimal theta:    {opt:.6}")?;
    let t = match theta {
        Some(s) => s.parse::<UndersamplingConfig>()?.theta(),
        None => UndersamplingConfig::DEFAULT.theta(),
    };
    let at_half = analysis::g(0.5, t)?;
    let at_low = analysis::g(1.0 / (5.0 * t), t)?;
    writeln!(
        out,
        "uMQMS({t:.4}) worst case: n log n + {:.4} n (alpha = 1/2: {at_half:.4}, alpha = 1/(5 theta): {at_low:.4})",
        at_half.max(at_low)
    )?;
    Ok(())
}

fn gen(dist: &str, n: usize, seed: u64) -> Result<()> {
    let v = gen_input(&InputSpec::new(dist.parse()?, n, seed));
    let mut out = BufWriter::new(io::stdout().lock());
    for x in v {
        writeln!(out, "{x}")?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Bench(args) => args.run(false),
        Command::Worstcase(args) => args.run(true),
        Command::Analyze { theta } => analyze(theta.as_deref()),
        Command::Gen { dist, n, seed } => gen(&dist, n, seed),
    }
}
