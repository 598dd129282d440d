use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use treasure_hunt::agent::Navigation;
use treasure_hunt::codec::AdviceString;
use treasure_hunt::generators::{comb_terrain, random_regular_terrain, regular_lb_terrain, CombParams};
use treasure_hunt::harness::{
    hunt_scenario, load_scenario, render_svg, run_bench, run_scenario, save_scenario, write_bench_csv, RunResult,
    Scenario, ScenarioMeta, SvgOptions,
};
use treasure_hunt::oracle::make_advice;

#[derive(Parser)]
#[command(name = "thunt", version, about = "Advice-guided treasure hunt in polygonal terrains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the oracle's advice string for a scenario.
    Advise { scenario: PathBuf },
    /// Hunt with a given advice string and print the audited report.
    Hunt {
        scenario: PathBuf,
        #[arg(long)]
        advice: String,
        /// Write the agent's run (trajectory, target, tiling) as JSON.
        #[arg(long)]
        trajectory_out: Option<PathBuf>,
    },
    /// Advise, hunt and audit in one pass.
    Run {
        scenario: PathBuf,
        #[arg(long)]
        trajectory_out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Write a scenario file for one of the terrain families.
    Generate {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Draw a scenario and a run as SVG. Without --trajectory the oracle's
    /// advice is used to produce one.
    Render {
        scenario: PathBuf,
        #[arg(long)]
        trajectory: Option<PathBuf>,
        #[arg(long)]
        tiling: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the seeded random suite and write one CSV row per seed.
    Bench {
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        first: u64,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Comb polygon with one open corridor.
    Comb {
        #[arg(long = "A", alias = "a")]
        a: u32,
        /// Corridor width; 2^-A when omitted.
        #[arg(long)]
        x: Option<f64>,
        #[arg(long, default_value_t = 1)]
        i: u64,
    },
    /// Square with gadget pockets; the treasure is one of the pocket centres.
    Lb {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 0)]
        candidate: usize,
    },
    /// Seeded random regular terrain.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        obstacles: usize,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        #[arg(long, default_value_t = 20.0)]
        extent: f64,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn report(r: &RunResult, trajectory_out: Option<&Path>) -> Result<ExitCode> {
    if let Some(p) = trajectory_out {
        emit(Some(p), &serde_json::to_string_pretty(&r.outcome.navigation)?)?;
    }
    println!("{}", serde_json::to_string_pretty(&r.report)?);
    if r.report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failed checks: {}", r.report.checks.failures().join(", "));
        Ok(ExitCode::from(2))
    }
}

fn generate(family: Family) -> Result<Scenario> {
    Ok(match family {
        Family::Comb { a, x, i } => {
            let c = comb_terrain(CombParams { a, i, x })?;
            let meta = ScenarioMeta { fatness: 2.0, strict: false, sample_step: None };
            Scenario::new(c.terrain, c.start, c.treasure, meta)?
        }
        Family::Lb { k, lambda, candidate } => {
            let lb = regular_lb_terrain(k, lambda)?;
            let Some(&q) = lb.candidates.get(candidate) else {
                bail!("candidate {candidate} out of range (0..{})", lb.candidates.len());
            };
            Scenario::new(lb.terrain, lb.start, q, ScenarioMeta::default())?
        }
        Family::Random { seed, obstacles, c, extent } => {
            let r = random_regular_terrain(seed, obstacles, c, extent)?;
            let meta = ScenarioMeta { fatness: c, strict: true, sample_step: None };
            Scenario::new(r.terrain, r.start, r.treasure, meta)?
        }
    })
}

fn main() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Advise { scenario } => {
            let s = load_scenario(&scenario)?;
            println!("{}", make_advice(s.terrain(), s.start(), s.treasure())?.bits);
        }
        Command::Hunt { scenario, advice, trajectory_out } => {
            let s = load_scenario(&scenario)?;
            let bits: AdviceString = advice.parse().context("advice must be a string of 0 and 1")?;
            return report(&hunt_scenario(&s, &bits)?, trajectory_out.as_deref());
        }
        Command::Run { scenario, trajectory_out, svg } => {
            let s = load_scenario(&scenario)?;
            let r = run_scenario(&s)?;
            if let Some(p) = svg {
                emit(Some(&p), &render_svg(&s, Some(&r.outcome.navigation), SvgOptions::default()))?;
            }
            return report(&r, trajectory_out.as_deref());
        }
        Command::Generate { family, out } => {
            let s = generate(family)?;
            match out {
                Some(p) => save_scenario(&s, &p)?,
                None => emit(None, &s.to_toml()?)?,
            }
        }
        Command::Render { scenario, trajectory, tiling, out } => {
            let s = load_scenario(&scenario)?;
            let nav: Navigation = match trajectory {
                Some(p) => serde_json::from_str(&fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?)
                    .context("trajectory file is not a run record")?,
                None => run_scenario(&s)?.outcome.navigation,
            };
            emit(out.as_deref(), &render_svg(&s, Some(&nav), SvgOptions { tiling }))?;
        }
        Command::Bench { seeds, first, c, out } => {
            let list: Vec<u64> = (first..first + seeds).collect();
            let rows = run_bench(&list, c)?;
            let mut buf = Vec::new();
            write_bench_csv(&rows, &mut buf)?;
            emit(out.as_deref(), &String::from_utf8(buf)?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
