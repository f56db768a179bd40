//! The acceptance suite: one runner per criterion, shared between the
//! integration test target and the CLI `accept` subcommand. Each runner
//! returns a structured report with per-assertion detail lines so a failure
//! says exactly which measurement missed which tolerance.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bounds::{interval_table, render_report, s1_exact, s1_interval_table, ReportFormat, S1Conn};
use crate::complex::build_vr;
use crate::conic::{claim1_threshold, conic_check, rigidity_experiment, ConicConfig, CovSource};
use crate::covering::{known_cov, solve_cov, SolveConfig};
use crate::geometry::{sample_space, Ambient, FinitePointCloud, SampleStrategy};
use crate::homology::{betti, bruteforce, homological_connectivity, Connectivity};
use crate::oddmap::{verify_oddmap, OddMapError, OddMapSpec};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
    pub elapsed_secs: f64,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {:2} ({}): {} [{:.1}s]",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed_secs
        )
    }
}

/// Accumulates labeled assertions; any failed check fails the criterion.
struct Checker {
    details: Vec<String>,
    ok: bool,
}

impl Checker {
    fn new() -> Self {
        Checker {
            details: Vec::new(),
            ok: true,
        }
    }

    fn check(&mut self, cond: bool, label: String) {
        self.details
            .push(format!("[{}] {label}", if cond { "ok" } else { "FAIL" }));
        self.ok &= cond;
    }

    fn note(&mut self, label: String) {
        self.details.push(format!("[--] {label}"));
    }
}

pub fn criterion_ids() -> std::ops::RangeInclusive<usize> {
    1..=10
}

pub fn run_criterion(id: usize) -> CriterionReport {
    let start = Instant::now();
    let (name, body): (&str, fn(&mut Checker)) = match id {
        1 => ("circle closed forms", c1),
        2 => ("table tight values", c2),
        3 => ("table non-tight bounds", c3),
        4 => ("homology oracle", c4),
        5 => ("brute-force equivalence", c5),
        6 => ("conic soundness", c6),
        7 => ("odd map", c7),
        8 => ("interval tables", c8),
        9 => ("rigidity persistence", c9),
        10 => ("continuum claims coverage", c10),
        _ => panic!("criterion ids run 1..=10, got {id}"),
    };
    let mut c = Checker::new();
    body(&mut c);
    CriterionReport {
        id,
        name: name.to_string(),
        passed: c.ok,
        details: c.details,
        elapsed_secs: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all() -> Vec<CriterionReport> {
    criterion_ids().map(run_criterion).collect()
}

// ---------------------------------------------------------------------------

fn c1(c: &mut Checker) {
    let t = Instant::now();
    for m in 1..=12usize {
        let v = known_cov(Ambient::Sphere { n: 1 }, m).unwrap();
        c.check(v.value == PI / m as f64 && v.tight, format!("known cov_S1({m}) = pi/{m} exactly"));
    }
    for k in 1..=12usize {
        let v = known_cov(Ambient::Projective { n: 1 }, k).unwrap();
        c.check(
            v.value == PI / (2.0 * k as f64) && v.tight,
            format!("known cov_RP1({k}) = pi/{} exactly", 2 * k),
        );
    }
    let cfg = SolveConfig::default_for(Ambient::Sphere { n: 1 });
    for k in 1..=12usize {
        match solve_cov(Ambient::Sphere { n: 1 }, k, &cfg) {
            Ok(sol) => {
                let err = (sol.radius_achieved - PI / k as f64).abs();
                c.check(
                    err <= 1e-6 + sol.grid_mesh,
                    format!("solve_cov(S^1, {k}) error {err:.2e} <= 1e-6 + mesh {:.2e}", sol.grid_mesh),
                );
            }
            Err(e) => c.check(false, format!("solve_cov(S^1, {k}) errored: {e}")),
        }
    }
    let secs = t.elapsed().as_secs_f64();
    c.check(secs < 10.0, format!("total runtime {secs:.1}s < 10s"));
}

fn c2(c: &mut Checker) {
    let instances = [
        (Ambient::Sphere { n: 2 }, 4usize),
        (Ambient::Sphere { n: 2 }, 6),
        (Ambient::Sphere { n: 2 }, 12),
        (Ambient::Projective { n: 2 }, 3),
        (Ambient::Projective { n: 2 }, 6),
    ];
    for (ambient, k) in instances {
        let known = known_cov(ambient, k).unwrap();
        let t = Instant::now();
        match solve_cov(ambient, k, &SolveConfig::default_for(ambient)) {
            Ok(sol) => {
                let gap = (sol.radius_certified - known.value).abs();
                let secs = t.elapsed().as_secs_f64();
                c.check(
                    gap <= 2e-3,
                    format!(
                        "{ambient} k={k}: certified {:.6} within 2e-3 of {:.6} (gap {gap:.2e})",
                        sol.radius_certified, known.value
                    ),
                );
                c.check(secs <= 60.0, format!("{ambient} k={k}: runtime {secs:.1}s <= 60s"));
            }
            Err(e) => c.check(false, format!("{ambient} k={k}: solver errored: {e}")),
        }
    }
}

fn c3(c: &mut Checker) {
    let instances = [
        (Ambient::Sphere { n: 2 }, 8usize),
        (Ambient::Sphere { n: 2 }, 10),
        (Ambient::Sphere { n: 2 }, 16),
        (Ambient::Projective { n: 2 }, 4),
        (Ambient::Projective { n: 2 }, 5),
        (Ambient::Projective { n: 2 }, 7),
    ];
    for (ambient, k) in instances {
        let known = known_cov(ambient, k).unwrap();
        match solve_cov(ambient, k, &SolveConfig::default_for(ambient)) {
            Ok(sol) => c.check(
                sol.radius_certified <= known.value + 5e-3,
                format!(
                    "{ambient} k={k}: certified {:.6} <= published {:.6} + 5e-3",
                    sol.radius_certified, known.value
                ),
            ),
            Err(e) => c.check(false, format!("{ambient} k={k}: solver errored: {e}")),
        }
    }
}

fn circle(count: usize) -> FinitePointCloud {
    sample_space(Ambient::Sphere { n: 1 }, count, SampleStrategy::EvenlySpacedCircle, 0).unwrap()
}

/// The three oracle instances shared by criteria 4 and 6:
/// (cloud, scale, cap, expected reduced Betti numbers).
fn oracle_instances() -> Vec<(FinitePointCloud, f64, usize, Vec<usize>)> {
    vec![
        (circle(4), PI / 2.0 + 0.01, 2, vec![0, 1]),
        (circle(6), TAU / 3.0 + 0.01, 3, vec![0, 0, 1]),
        (circle(20), TAU * 0.37, 4, vec![0, 0, 0, 1]),
    ]
}

fn c4(c: &mut Checker) {
    let t = Instant::now();
    for (cloud, r, cap, expected) in oracle_instances() {
        let profile = build_vr(&cloud, r, cap)
            .map_err(|e| e.to_string())
            .and_then(|cx| betti(&cx).map_err(|e| e.to_string()));
        match profile {
            Ok(p) => c.check(
                p.reduced_betti == expected,
                format!(
                    "{} points at r={r:.4}: reduced betti {:?} == {:?}",
                    cloud.len(),
                    p.reduced_betti,
                    expected
                ),
            ),
            Err(e) => c.check(false, format!("betti failed: {e}")),
        }
    }
    let secs = t.elapsed().as_secs_f64();
    c.check(secs < 30.0, format!("runtime {secs:.1}s < 30s"));
}

fn c5(c: &mut Checker) {
    let mut mismatches = 0usize;
    let mut compared = 0usize;
    for i in 0..50u64 {
        let ambient = if i % 2 == 0 {
            Ambient::Sphere { n: 1 }
        } else {
            Ambient::Sphere { n: 2 }
        };
        let count = 4 + (i as usize * 3) % 7; // 4..=10
        let cloud = sample_space(ambient, count, SampleStrategy::UniformRandom, 1_000 + i).unwrap();
        let diam = cloud.diameter();
        let cap = 5usize.min(count - 1).max(2);
        for j in 1..=20usize {
            let r = diam * 1.05 * j as f64 / 20.0;
            let oracle = bruteforce::reduced_betti(&cloud, r, cap);
            let fast = betti(&build_vr(&cloud, r, cap).unwrap()).unwrap();
            compared += 1;
            if fast.reduced_betti != oracle {
                mismatches += 1;
                c.check(
                    false,
                    format!(
                        "cloud {i} scale {r:.4}: reduction {:?} != oracle {:?}",
                        fast.reduced_betti, oracle
                    ),
                );
            }
        }
    }
    c.check(
        mismatches == 0,
        format!("{compared} (cloud, scale) pairs agree with the dense oracle exactly"),
    );
}

fn c6(c: &mut Checker) {
    let config = ConicConfig::default();

    // soundness on the criterion-4 instances, levels 0..=2
    for (cloud, r, _, _) in oracle_instances() {
        for k in 0..=2usize {
            if cloud.len() < 2 * k + 2 {
                continue;
            }
            let cert = match conic_check(&cloud, r, k, &config) {
                Ok(cert) => cert,
                Err(e) => {
                    c.check(false, format!("conic_check errored: {e}"));
                    continue;
                }
            };
            if !cert.witness_found_for_all {
                continue;
            }
            let profile = betti(&build_vr(&cloud, r, k + 2).unwrap()).unwrap();
            let sound = match homological_connectivity(&profile) {
                Connectivity::Value(v) => v >= k as i64,
                Connectivity::AtLeast(v) => v >= k as i64,
            };
            c.check(
                sound,
                format!(
                    "{}-point instance r={r:.4}: conic level {k} <= connectivity {}",
                    cloud.len(),
                    profile.connectivity
                ),
            );
        }
    }

    // soundness on dense random circle samples
    let mut checked = 0usize;
    let mut unsound = 0usize;
    for s in 0..20u64 {
        let count = 40 + (s as usize * 7) % 21; // 40..=60
        let cloud =
            sample_space(Ambient::Sphere { n: 1 }, count, SampleStrategy::UniformRandom, 77 + s)
                .unwrap();
        for frac in [0.55, 0.70, 0.80, 0.88, 0.93] {
            let r = PI * frac;
            let passing: Vec<usize> = (0..=1usize)
                .filter(|&k| conic_check(&cloud, r, k, &config).unwrap().witness_found_for_all)
                .collect();
            if passing.is_empty() {
                continue;
            }
            // one homology computation covers both levels
            let profile = betti(&build_vr(&cloud, r, 3).unwrap()).unwrap();
            for k in passing {
                let sound = match homological_connectivity(&profile) {
                    Connectivity::Value(v) => v >= k as i64,
                    Connectivity::AtLeast(v) => v >= k as i64,
                };
                checked += 1;
                if !sound {
                    unsound += 1;
                    c.check(
                        false,
                        format!("sample {s} r={r:.4}: conic level {k} but connectivity {}", profile.connectivity),
                    );
                }
            }
        }
    }
    c.check(
        unsound == 0,
        format!("{checked} passing dense-sample certificates all below homological connectivity"),
    );

    // claim 1 thresholds against the exact S^1 oracle
    for k in 1..=3usize {
        let thr = claim1_threshold(1, k, &CovSource::Known).unwrap();
        let expected = PI - PI / (2 * k + 2) as f64;
        c.check(
            (thr.r_star - expected).abs() < 1e-12,
            format!("claim1_threshold(1, {k}) = pi - pi/{}", 2 * k + 2),
        );
        let consistent = (1..=40).all(|i| {
            let r = thr.r_star + (PI - thr.r_star) * i as f64 / 41.0;
            match s1_exact(r).conn {
                S1Conn::Finite(v) => v >= k as i64,
                S1Conn::Infinite => true,
            }
        });
        c.check(
            consistent,
            format!("conn(vr(S^1, r)) >= {k} for sampled r above the threshold"),
        );
    }
}

fn c7(c: &mut Checker) {
    let t = Instant::now();
    let instances: [(usize, usize, f64, usize); 2] = [
        (1, 3, PI / 3.0 + 0.01, 400),
        (2, 3, 2.0 * 0.5 * (-1.0f64 / 3.0).acos() + 0.01, 600),
    ];
    for (n, k, delta, cloud_size) in instances {
        let spec = match OddMapSpec::with_known_centers(n, k, delta) {
            Ok(s) => s,
            Err(e) => {
                c.check(false, format!("spec (n={n}, k={k}) rejected: {e}"));
                continue;
            }
        };
        let cloud =
            sample_space(Ambient::Sphere { n }, cloud_size, SampleStrategy::UniformRandom, 5 + n as u64)
                .unwrap();
        match verify_oddmap(&cloud, &spec, 10_000, 42) {
            Ok(report) => {
                c.check(
                    report.min_prenorm > 0.0,
                    format!("n={n}: min prenorm {:.3e} > 0", report.min_prenorm),
                );
                c.check(
                    report.max_odd_defect < 1e-12,
                    format!("n={n}: odd defect {:.3e} < 1e-12", report.max_odd_defect),
                );
                c.check(
                    report.well_definedness_violations == 0,
                    format!("n={n}: zero well-definedness violations"),
                );
                c.check(report.failures.is_empty(), format!("n={n}: no trial failures"));
            }
            Err(e) => c.check(false, format!("verify_oddmap (n={n}) errored: {e}")),
        }
        // lowering delta below twice the covering radius must trip the gate
        let gate = OddMapSpec::with_known_centers(n, k, delta - 0.02);
        c.check(
            matches!(gate, Err(OddMapError::CoverageGateFailed { .. })),
            format!("n={n}: coverage gate fails at delta - 0.02"),
        );
    }
    let secs = t.elapsed().as_secs_f64();
    c.check(secs < 60.0, format!("runtime {secs:.1}s < 60s"));
}

fn c8(c: &mut Checker) {
    let rows = s1_interval_table(15);
    for row in &rows {
        c.check(
            row.containment,
            format!("S^1 table k={}: exact interval inside theorem interval (rational-pi)", row.k),
        );
    }

    // n = 1 report rows are the closed forms
    let table = interval_table(1, 7).unwrap();
    for row in &table {
        let k = row.k;
        let ok = (row.delta_lo - PI / (2 * k + 2) as f64).abs() < 1e-15
            && (row.delta_hi - PI / k as f64).abs() < 1e-12
            && row.lo_tight
            && row.hi_tight;
        c.check(ok, format!("report n=1 k={k}: [pi/{}, pi/{k})", 2 * k + 2));
    }
    let csv = render_report(1, 7, ReportFormat::Csv).unwrap();
    c.check(csv.lines().count() == 8, "report n=1 csv has 7 rows".to_string());

    // n = 2 report rows match the tabulated covering values
    let table = interval_table(2, 7).unwrap();
    for row in &table {
        let k = row.k;
        let lo = known_cov(Ambient::Sphere { n: 2 }, 2 * k + 2).unwrap();
        let hi = known_cov(Ambient::Projective { n: 2 }, k).unwrap();
        let ok = (row.delta_lo - lo.value).abs() < 1e-6
            && (row.delta_hi - 2.0 * hi.value).abs() < 1e-6
            && row.lo_tight == lo.tight
            && row.hi_tight == hi.tight;
        c.check(
            ok,
            format!(
                "report n=2 k={k}: endpoints within 1e-6, flags ({}, {})",
                row.lo_tight, row.hi_tight
            ),
        );
    }
}

fn c9(c: &mut Checker) {
    let cloud = circle(60);
    let r = 0.8 * PI;
    // first pass with no perturbation just to learn the margin
    let margin = match rigidity_experiment(&cloud, r, 1, 0.0, 0, 0) {
        Ok(report) => report.margin,
        Err(e) => {
            c.check(false, format!("baseline rigidity run errored: {e}"));
            return;
        }
    };
    c.check(margin > 0.0, format!("rigidity margin {margin:.4} > 0"));
    let nu = 0.9 * margin;
    match rigidity_experiment(&cloud, r, 1, nu, 20, 2024) {
        Ok(report) => {
            c.check(
                report.within_hypothesis,
                format!("nu = 0.9 * margin = {nu:.4} is inside the stability hypothesis"),
            );
            c.check(
                report.persisted == 20 && report.failures.is_empty(),
                format!("certificate persisted on {}/20 perturbation seeds", report.persisted),
            );
        }
        Err(e) => c.check(false, format!("rigidity experiment errored: {e}")),
    }
}

fn c10(c: &mut Checker) {
    c.note(
        "continuum statements (connectivity of vr(S^n, r) for n >= 2) are not computable at \
         desk scale; they are covered by the finite certificates, oracle equivalences, and \
         coverage gates exercised in criteria 1-9 and the property suite"
            .to_string(),
    );
    let probe = crate::bounds::infinite_change_probe(1, PI / 4.0, 15).unwrap();
    c.check(
        probe.note.contains("not a proof"),
        "infinite-change probe is labeled finite evidence".to_string(),
    );
    c.check(
        !probe.rows.is_empty(),
        "probe exhibits intervals forcing unbounded connectivity".to_string(),
    );
}
