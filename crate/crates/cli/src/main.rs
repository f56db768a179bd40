//! `vrsphere`: covering radii, Vietoris-Rips complexes, homology,
//! connectivity certificates, and interval reports from one entry point.
//!
//! Every run writes its outputs plus a `manifest.json` (argument echo, tool
//! version, wall time) into the output directory; stdout carries a
//! human-readable summary. Exit codes: 0 success, 1 computation error,
//! 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use vrsphere::accept;
use vrsphere::bounds::{interval_table, render_report, s1_interval_table, ReportFormat};
use vrsphere::complex::build_vr;
use vrsphere::conic::{conic_check, rigidity_experiment, ConicConfig, ConicMode};
use vrsphere::covering::{known_cov, solve_cov, SolveConfig};
use vrsphere::geometry::{sample_space, Ambient, FinitePointCloud, SampleStrategy};
use vrsphere::homology::betti;
use vrsphere::oddmap::{verify_oddmap, OddMapSpec};

#[derive(Parser)]
#[command(name = "vrsphere", version, about = "covering radii and Vietoris-Rips connectivity on spheres")]
struct Cli {
    /// Root seed; per-subcommand child seeds are derived from it.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Output directory for result files and the run manifest.
    #[arg(long, global = true, env = "VRSPHERE_OUT_DIR", default_value = "vrsphere-out")]
    out_dir: PathBuf,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a covering-radius instance, or tabulate all known rows.
    Cover {
        /// Ambient space: s1, s2, s3, rp1, rp2, rp3.
        #[arg(long)]
        ambient: String,
        /// Number of balls.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Solve every k with a known value and emit a comparison CSV.
        #[arg(long)]
        table: bool,
        /// Use the fast low-accuracy configuration.
        #[arg(long)]
        quick: bool,
    },
    /// Build a Vietoris-Rips complex on a generated sample.
    Vr(SampleArgs),
    /// Reduced Z/2 Betti numbers of a Vietoris-Rips complex.
    Homology(SampleArgs),
    /// Check the (2k+2)-conic condition on a generated sample.
    Conic {
        #[command(flatten)]
        sample: SampleArgs,
        /// Connectivity level k (tuples have 2k+2 points).
        #[arg(long, default_value_t = 1)]
        level: usize,
        /// exhaustive or sampled.
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
    },
    /// Verify the odd-map construction statistically.
    Oddmap {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Covering scale delta; the map lives on vr(S^n, pi - delta).
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 400)]
        cloud_size: usize,
    },
    /// Perturb a sample and test persistence of its conic certificate.
    Rigidity {
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(long, default_value_t = 1)]
        level: usize,
        /// Perturbation bound; defaults to 0.9 times the certified margin.
        #[arg(long)]
        nu: Option<f64>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Exact connectivity-interval tables (theorem rows, plus the S^1 table).
    Intervals {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        kmax: usize,
        /// csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Render the interval report (csv, svg, or json) to a file.
    Report {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        kmax: usize,
        #[arg(long, default_value = "svg")]
        format: String,
    },
    /// Run the acceptance suite and print a pass/fail table.
    Accept {
        /// Only "primary" exists.
        #[arg(long, default_value = "primary")]
        suite: String,
        /// Comma-separated criterion ids; default all.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<usize>,
    },
}

#[derive(Args)]
struct SampleArgs {
    /// Ambient space: s1, s2, s3, rp1, rp2, rp3.
    #[arg(long)]
    ambient: String,
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// uniform-random, evenly-spaced-circle, fibonacci-s2, or grid.
    #[arg(long, default_value = "grid")]
    strategy: String,
    /// Scale r; accepts a plain radian value or a multiple of pi like "0.8pi".
    #[arg(long)]
    scale: String,
    /// Top simplex dimension.
    #[arg(long, default_value_t = 3)]
    cap: usize,
}

fn parse_ambient(s: &str) -> Result<Ambient, String> {
    Ambient::parse(s)
        .filter(|a| a.is_geodesic())
        .ok_or_else(|| format!("unknown ambient {s:?} (expected s1..s3 or rp1..rp3)"))
}

fn parse_scale(s: &str) -> Result<f64, String> {
    let (body, factor) = match s.strip_suffix("pi") {
        Some(body) => (body, std::f64::consts::PI),
        None => (s, 1.0),
    };
    let body = if body.is_empty() { "1" } else { body };
    body.parse::<f64>()
        .map(|v| v * factor)
        .map_err(|_| format!("bad scale {s:?}"))
}

/// Deterministic child seed for a named random stream.
fn child_seed(root: u64, stream: &str) -> u64 {
    let mut h = root ^ 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x1000_0000_01b3);
    }
    h
}

impl SampleArgs {
    fn build(&self, root_seed: u64) -> Result<(FinitePointCloud, f64), String> {
        let ambient = parse_ambient(&self.ambient)?;
        let strategy = SampleStrategy::parse(&self.strategy)
            .ok_or_else(|| format!("unknown strategy {:?}", self.strategy))?;
        let cloud = sample_space(ambient, self.count, strategy, child_seed(root_seed, "sample"))
            .map_err(|e| e.to_string())?;
        Ok((cloud, parse_scale(&self.scale)?))
    }
}

#[derive(Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    argv: Vec<String>,
    root_seed: u64,
    wall_secs: f64,
    outputs: Vec<String>,
}

struct Run {
    out_dir: PathBuf,
    outputs: Vec<String>,
}

impl Run {
    fn new(out_dir: &PathBuf) -> Result<Self, String> {
        std::fs::create_dir_all(out_dir).map_err(|e| format!("cannot create {out_dir:?}: {e}"))?;
        Ok(Run {
            out_dir: out_dir.clone(),
            outputs: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, content: &str) -> Result<(), String> {
        let path = self.out_dir.join(name);
        std::fs::write(&path, content).map_err(|e| format!("cannot write {path:?}: {e}"))?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), String> {
        let json = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        self.write(name, &(json + "\n"))
    }

    fn finish(self, seed: u64, started: Instant) -> Result<(), String> {
        let manifest = Manifest {
            tool: "vrsphere",
            version: env!("CARGO_PKG_VERSION"),
            argv: std::env::args().collect(),
            root_seed: seed,
            wall_secs: started.elapsed().as_secs_f64(),
            outputs: self.outputs.clone(),
        };
        let json = serde_json::to_string_pretty(&manifest).map_err(|e| e.to_string())?;
        let path = self.out_dir.join("manifest.json");
        std::fs::write(&path, json + "\n").map_err(|e| format!("cannot write {path:?}: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let run = match Run::new(&cli.out_dir) {
        Ok(run) => run,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match execute(&cli, run, started) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn execute(cli: &Cli, mut run: Run, started: Instant) -> Result<ExitCode, String> {
    let seed = cli.seed;
    let mut exit = ExitCode::SUCCESS;
    match &cli.cmd {
        Cmd::Cover { ambient, k, table, quick } => {
            let ambient = parse_ambient(ambient)?;
            let mut cfg = if *quick {
                SolveConfig::quick(ambient)
            } else {
                SolveConfig::default_for(ambient)
            };
            cfg.seed = child_seed(seed, "cover");
            if *table {
                let mut csv = String::from("k,known,tight,certified,gap\n");
                for k in 1..=16usize {
                    let Some(v) = known_cov(ambient, k) else { continue };
                    let sol = solve_cov(ambient, k, &cfg).map_err(|e| e.to_string())?;
                    let line = format!(
                        "{k},{:.9},{},{:.9},{:+.3e}\n",
                        v.value,
                        v.tight,
                        sol.radius_certified,
                        sol.radius_certified - v.value
                    );
                    print!("{line}");
                    csv.push_str(&line);
                }
                run.write(&format!("cover_table_{ambient}.csv"), &csv)?;
            } else {
                let sol = solve_cov(ambient, *k, &cfg).map_err(|e| e.to_string())?;
                println!(
                    "cov_{ambient}({k}) <= {:.6} (achieved {:.6} + mesh {:.2e}, {:?})",
                    sol.radius_certified, sol.radius_achieved, sol.grid_mesh, sol.status
                );
                run.write_json(&format!("cover_{ambient}_{k}.json"), &sol)?;
            }
        }
        Cmd::Vr(sample) => {
            let (cloud, r) = sample.build(seed)?;
            let cx = build_vr(&cloud, r, sample.cap).map_err(|e| e.to_string())?;
            println!(
                "vr({}, {:.4}) on {} points: f-vector {:?}",
                sample.ambient,
                r,
                cloud.len(),
                cx.f_vector()
            );
            run.write(&format!("vr_{}.txt", sample.ambient), &cx.to_text())?;
            run.write_json("f_vector.json", &cx.f_vector())?;
        }
        Cmd::Homology(sample) => {
            let (cloud, r) = sample.build(seed)?;
            let cx = build_vr(&cloud, r, sample.cap).map_err(|e| e.to_string())?;
            let profile = betti(&cx).map_err(|e| e.to_string())?;
            println!(
                "reduced betti {:?} (connectivity {})",
                profile.reduced_betti, profile.connectivity
            );
            run.write_json("betti.json", &profile)?;
        }
        Cmd::Conic { sample, level, mode, budget } => {
            let (cloud, r) = sample.build(seed)?;
            let mode = match mode.as_str() {
                "exhaustive" => ConicMode::Exhaustive,
                "sampled" => ConicMode::Sampled,
                other => return Err(format!("unknown mode {other:?}")),
            };
            let config = ConicConfig {
                mode,
                tuple_budget: *budget,
                seed: child_seed(seed, "conic"),
            };
            let cert = conic_check(&cloud, r, *level, &config).map_err(|e| e.to_string())?;
            println!(
                "conic level {level} at r={r:.4}: {} ({} tuples)",
                if cert.witness_found_for_all { "PASS" } else { "fail" },
                cert.tuples_checked
            );
            if let Some(t) = &cert.failing_tuple {
                println!("first failing tuple: {t:?}");
            }
            run.write_json("conic.json", &cert)?;
        }
        Cmd::Oddmap { n, k, delta, trials, cloud_size } => {
            let spec = OddMapSpec::with_known_centers(*n, *k, *delta).map_err(|e| e.to_string())?;
            let cloud = sample_space(
                Ambient::Sphere { n: *n },
                *cloud_size,
                SampleStrategy::UniformRandom,
                child_seed(seed, "oddmap-cloud"),
            )
            .map_err(|e| e.to_string())?;
            let report = verify_oddmap(&cloud, &spec, *trials, child_seed(seed, "oddmap"))
                .map_err(|e| e.to_string())?;
            println!(
                "{} trials: min prenorm {:.3e}, odd defect {:.3e}, {} violations",
                report.trials, report.min_prenorm, report.max_odd_defect,
                report.well_definedness_violations
            );
            run.write_json("oddmap.json", &report)?;
        }
        Cmd::Rigidity { sample, level, nu, trials } => {
            let (cloud, r) = sample.build(seed)?;
            let rigidity_seed = child_seed(seed, "rigidity");
            let nu = match nu {
                Some(v) => *v,
                None => {
                    let probe = rigidity_experiment(&cloud, r, *level, 0.0, 0, rigidity_seed)
                        .map_err(|e| e.to_string())?;
                    0.9 * probe.margin
                }
            };
            let report = rigidity_experiment(&cloud, r, *level, nu, *trials, rigidity_seed)
                .map_err(|e| e.to_string())?;
            println!(
                "rho {:.4}, margin {:.4}, nu {:.4} ({}), persisted {}/{}",
                report.rho,
                report.margin,
                report.nu,
                if report.within_hypothesis { "within hypothesis" } else { "outside hypothesis" },
                report.persisted,
                report.trials
            );
            run.write_json("rigidity.json", &report)?;
        }
        Cmd::Intervals { n, kmax, format } => {
            let rows = interval_table(*n, *kmax).map_err(|e| e.to_string())?;
            for row in &rows {
                println!(
                    "n={} k={}: delta in [{:.6}, {:.6}) tight=({}, {}){}",
                    row.n, row.k, row.delta_lo, row.delta_hi, row.lo_tight, row.hi_tight,
                    if row.invalid { " INVALID" } else { "" }
                );
            }
            let fmt = match format.as_str() {
                "csv" => ReportFormat::Csv,
                "json" => ReportFormat::Json,
                other => return Err(format!("intervals supports csv or json, got {other:?}")),
            };
            let rendered = render_report(*n, *kmax, fmt).map_err(|e| e.to_string())?;
            run.write(&format!("intervals_n{n}.{format}"), &rendered)?;
            if *n == 1 {
                run.write_json("s1_interval_table.json", &s1_interval_table(*kmax))?;
            }
        }
        Cmd::Report { n, kmax, format } => {
            let fmt = ReportFormat::parse(format)
                .ok_or_else(|| format!("report supports csv, svg, or json, got {format:?}"))?;
            let rendered = render_report(*n, *kmax, fmt).map_err(|e| e.to_string())?;
            let name = format!("report_n{n}.{format}");
            run.write(&name, &rendered)?;
            println!("wrote {}", run.out_dir.join(&name).display());
        }
        Cmd::Accept { suite, criteria } => {
            if suite != "primary" {
                return Err(format!("unknown suite {suite:?} (only \"primary\" exists)"));
            }
            let ids: Vec<usize> = if criteria.is_empty() {
                accept::criterion_ids().collect()
            } else {
                criteria.clone()
            };
            let mut reports = Vec::new();
            let mut all_pass = true;
            for id in ids {
                let report = accept::run_criterion(id);
                println!("{report}");
                for d in &report.details {
                    if d.starts_with("[FAIL]") {
                        println!("    {d}");
                    }
                }
                all_pass &= report.passed;
                reports.push(report);
            }
            run.write_json("accept.json", &reports)?;
            println!("suite: {}", if all_pass { "PASS" } else { "FAIL" });
            if !all_pass {
                exit = ExitCode::from(1);
            }
        }
    }
    run.finish(seed, started)?;
    Ok(exit)
}
