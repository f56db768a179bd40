//! Connectivity-interval tables.
//!
//! The central contract: if `conn(vr(S^n, pi - delta)) = k - 1` then
//! `cov_{S^n}(2k+2) <= delta < 2 cov_{RP^n}(k)`. This module assembles those
//! intervals from the covering module, derives integer connectivity brackets
//! from covering numbers, provides the exact `S^1` homotopy oracle, and
//! emits CSV/SVG/JSON reports. Circle endpoints are handled symbolically as
//! rational multiples of pi so containment checks are exact.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conic::CovSource;
use crate::covering::{known_cov, num_cover, solve_cov, CoveringError, NumCoverStatus, SolveConfig};
use crate::geometry::Ambient;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("no covering value on record for {ambient} with k = {k}")]
    MissingValue { ambient: String, k: usize },
    #[error("interval tables support n in 1..=3, got {0}")]
    UnsupportedDimension(usize),
    #[error("k must be >= 1")]
    ZeroK,
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

/// An exact rational multiple of pi, `(num/den) * pi`, kept reduced with a
/// positive denominator. Comparisons are integer cross-multiplications, so
/// endpoint containment checks carry no float fuzz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiFrac {
    pub num: i64,
    pub den: i64,
}

impl PiFrac {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let (mut num, mut den) = (num * sign, den * sign);
        let g = gcd(num.unsigned_abs(), den.unsigned_abs());
        if g > 1 {
            num /= g as i64;
            den /= g as i64;
        }
        PiFrac { num, den }
    }

    pub const ZERO: PiFrac = PiFrac { num: 0, den: 1 };
    pub const PI: PiFrac = PiFrac { num: 1, den: 1 };

    pub fn to_f64(self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }

    pub fn scale(self, num: i64, den: i64) -> Self {
        PiFrac::new(self.num * num, self.den * den)
    }
}

impl PartialOrd for PiFrac {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PiFrac {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for PiFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "pi"),
            (n, 1) => write!(f, "{n}pi"),
            (1, d) => write!(f, "pi/{d}"),
            (n, d) => write!(f, "{n}pi/{d}"),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Table,
    SolverUpperBound,
}

impl Provenance {
    fn as_str(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Table => "table",
            Provenance::SolverUpperBound => "solver-upper-bound",
        }
    }
}

/// One row of the table: if `conn(vr(S^n, pi - delta)) = k - 1`, then
/// `delta` lies in `[delta_lo, delta_hi)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConnectivityInterval {
    pub n: usize,
    pub k: usize,
    /// `cov_{S^n}(2k+2)`.
    pub delta_lo: f64,
    /// `2 cov_{RP^n}(k)`.
    pub delta_hi: f64,
    pub lo_exact: Option<String>,
    pub hi_exact: Option<String>,
    pub lo_provenance: Provenance,
    pub hi_provenance: Provenance,
    /// When false the endpoint is a published or solver upper bound, not an
    /// exact value.
    pub lo_tight: bool,
    pub hi_tight: bool,
    /// Set when `delta_lo >= delta_hi`; such rows are emitted, never
    /// silently dropped.
    pub invalid: bool,
}

fn cov_endpoint(
    ambient: Ambient,
    k: usize,
    source: &CovSource,
) -> Result<(f64, Option<String>, Provenance, bool), BoundsError> {
    match source {
        CovSource::Known => {
            let v = known_cov(ambient, k).ok_or(BoundsError::MissingValue {
                ambient: ambient.to_string(),
                k,
            })?;
            let provenance = match ambient {
                Ambient::Sphere { n: 1 } | Ambient::Projective { n: 1 } => Provenance::ClosedForm,
                _ => Provenance::Table,
            };
            Ok((v.value, v.expr, provenance, v.tight))
        }
        CovSource::Solved(cfg) => {
            let sol = solve_cov(ambient, k, cfg)?;
            Ok((
                sol.radius_certified,
                None,
                Provenance::SolverUpperBound,
                false,
            ))
        }
    }
}

/// The Theorem interval for `(n, k)`. Solver-sourced left endpoints are
/// conservative: an upper bound on `cov_{S^n}(2k+2)` shifts `delta_lo` up
/// and shrinks the interval, which is flagged via provenance rather than
/// asserted exact.
pub fn theorem_interval(
    n: usize,
    k: usize,
    source: &CovSource,
) -> Result<ConnectivityInterval, BoundsError> {
    if k == 0 {
        return Err(BoundsError::ZeroK);
    }
    if !(1..=3).contains(&n) {
        return Err(BoundsError::UnsupportedDimension(n));
    }
    let (delta_lo, lo_exact, lo_provenance, lo_tight) =
        cov_endpoint(Ambient::Sphere { n }, 2 * k + 2, source)?;
    let (hi_cov, hi_cov_exact, hi_provenance, hi_tight) =
        cov_endpoint(Ambient::Projective { n }, k, source)?;
    let delta_hi = 2.0 * hi_cov;
    let hi_exact = match (n, hi_cov_exact) {
        // 2 * pi/(2k) collapses to pi/k
        (1, _) => Some(PiFrac::new(1, k as i64).to_string()),
        (_, Some(e)) => Some(format!("2*({e})")),
        _ => None,
    };
    Ok(ConnectivityInterval {
        n,
        k,
        delta_lo,
        delta_hi,
        lo_exact,
        hi_exact,
        lo_provenance,
        hi_provenance,
        lo_tight,
        hi_tight,
        invalid: delta_lo >= delta_hi,
    })
}

/// Integer bracket on `conn(vr(S^n, pi - delta))` from covering numbers:
/// `ceil(numCover_{S^n}(delta) / 2) - 2 <= conn <= numCover_{RP^n}(delta/2) - 2`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Corollary1Bounds {
    pub n: usize,
    pub delta: f64,
    pub lower: Option<i64>,
    /// The lower bound needs the exact covering number; a heuristic (upper
    /// bound) covering number leaves it uncertified.
    pub lower_certified: bool,
    pub upper: Option<i64>,
    /// The upper bound stays valid even from a heuristic covering number
    /// (`numCover <= k` keeps `conn <= k - 2`).
    pub upper_certified: bool,
}

pub fn corollary1_bounds(
    n: usize,
    delta: f64,
    k_max: usize,
    config: &SolveConfig,
) -> Result<Corollary1Bounds, BoundsError> {
    if !(1..=3).contains(&n) {
        return Err(BoundsError::UnsupportedDimension(n));
    }
    let sphere = num_cover(Ambient::Sphere { n }, delta, k_max, config)?;
    let projective = num_cover(Ambient::Projective { n }, delta / 2.0, k_max, config)?;

    let (lower, lower_certified) = match (sphere.k, sphere.status) {
        (Some(k), NumCoverStatus::Exact) => (Some((k as i64 + 1) / 2 - 2), true),
        (Some(k), _) => (Some((k as i64 + 1) / 2 - 2), false),
        (None, _) => (None, false),
    };
    let (upper, upper_certified) = match (projective.k, projective.status) {
        (Some(k), _) => (Some(k as i64 - 2), true),
        (None, _) => (None, false),
    };
    Ok(Corollary1Bounds {
        n,
        delta,
        lower,
        lower_certified,
        upper,
        upper_certified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "dim")]
pub enum S1HomotopyType {
    /// `vr(S^1, r)` is homotopy equivalent to `S^{2k+1}`.
    Sphere(usize),
    Contractible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum S1Conn {
    Finite(i64),
    Infinite,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct S1Exact {
    pub r: f64,
    pub homotopy_type: S1HomotopyType,
    pub conn: S1Conn,
}

/// Exact homotopy type of `vr(S^1, r)`: for
/// `2 pi k / (2k+1) < r <= 2 pi (k+1) / (2k+3)` the complex is an odd sphere
/// `S^{2k+1}` (so `conn = 2k`); for `r >= pi` it is contractible. The
/// partition intervals are left-open.
pub fn s1_exact(r: f64) -> S1Exact {
    assert!(r > 0.0, "scale must be positive");
    use std::f64::consts::{PI, TAU};
    if r >= PI {
        return S1Exact {
            r,
            homotopy_type: S1HomotopyType::Contractible,
            conn: S1Conn::Infinite,
        };
    }
    let mut k = 0usize;
    while !(r <= TAU * (k + 1) as f64 / (2 * k + 3) as f64) {
        k += 1;
    }
    S1Exact {
        r,
        homotopy_type: S1HomotopyType::Sphere(2 * k + 1),
        conn: S1Conn::Finite(2 * k as i64),
    }
}

/// One row of the exact-versus-theorem comparison on `S^1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct S1IntervalRow {
    pub k: usize,
    /// `[pi/(k+2), pi/k)` for odd `k`; the empty set for even `k`.
    pub exact: Option<(PiFrac, PiFrac)>,
    /// `[pi/(2k+2), pi/k)`.
    pub theorem: (PiFrac, PiFrac),
    /// Exact-interval containment in the theorem interval, checked in
    /// rational-pi arithmetic.
    pub containment: bool,
    /// The two right endpoints coincide exactly (tightness at `pi/k`).
    pub right_endpoints_equal: bool,
}

pub fn s1_interval_table(k_max: usize) -> Vec<S1IntervalRow> {
    (1..=k_max)
        .map(|k| {
            let theorem = (PiFrac::new(1, 2 * k as i64 + 2), PiFrac::new(1, k as i64));
            let exact = (k % 2 == 1)
                .then(|| (PiFrac::new(1, k as i64 + 2), PiFrac::new(1, k as i64)));
            let containment = match &exact {
                // empty set is contained in anything
                None => true,
                Some((lo, hi)) => *lo >= theorem.0 && *hi <= theorem.1,
            };
            let right_endpoints_equal = exact.as_ref().map_or(false, |(_, hi)| *hi == theorem.1);
            S1IntervalRow {
                k,
                exact,
                theorem,
                containment,
                right_endpoints_equal,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Svg,
    Json,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Self::Csv),
            "svg" => Some(Self::Svg),
            "json" => Some(Self::Json),
            _ => None,
        }
    }
}

/// All theorem intervals for `k = 1..=k_max` from the known-value database.
pub fn interval_table(n: usize, k_max: usize) -> Result<Vec<ConnectivityInterval>, BoundsError> {
    (1..=k_max)
        .map(|k| theorem_interval(n, k, &CovSource::Known))
        .collect()
}

/// Render the interval table in the requested format. CSV columns:
/// `n, k, delta_lo, lo_exact_expr, lo_provenance, delta_hi, hi_exact_expr,
/// hi_provenance, r_lo, r_hi, flags` with the `r` interval `(pi-hi, pi-lo]`.
pub fn render_report(
    n: usize,
    k_max: usize,
    format: ReportFormat,
) -> Result<String, BoundsError> {
    let rows = interval_table(n, k_max)?;
    Ok(match format {
        ReportFormat::Json => serde_json::to_string_pretty(&rows)?,
        ReportFormat::Csv => {
            let mut out = String::from(
                "n,k,delta_lo,lo_exact_expr,lo_provenance,delta_hi,hi_exact_expr,hi_provenance,r_lo,r_hi,flags\n",
            );
            for row in &rows {
                let mut flags = Vec::new();
                if !row.lo_tight {
                    flags.push("lo-bound-only");
                }
                if !row.hi_tight {
                    flags.push("hi-bound-only");
                }
                if row.invalid {
                    flags.push("invalid");
                }
                out.push_str(&format!(
                    "{},{},{:.9},{},{},{:.9},{},{},{:.9},{:.9},{}\n",
                    row.n,
                    row.k,
                    row.delta_lo,
                    row.lo_exact.as_deref().unwrap_or(""),
                    row.lo_provenance.as_str(),
                    row.delta_hi,
                    row.hi_exact.as_deref().unwrap_or(""),
                    row.hi_provenance.as_str(),
                    std::f64::consts::PI - row.delta_hi,
                    std::f64::consts::PI - row.delta_lo,
                    flags.join("+"),
                ));
            }
            out
        }
        ReportFormat::Svg => render_svg(&rows),
    })
}

/// Write the rendered report to `path`.
pub fn emit_report(
    n: usize,
    k_max: usize,
    format: ReportFormat,
    path: &std::path::Path,
) -> Result<(), BoundsError> {
    std::fs::write(path, render_report(n, k_max, format)?)?;
    Ok(())
}

/// One bar per `k` over the delta axis; closed left endpoints are solid,
/// open right endpoints hollow, non-tight endpoints drawn in red.
fn render_svg(rows: &[ConnectivityInterval]) -> String {
    use std::f64::consts::PI;
    let width = 960.0;
    let row_h = 40.0;
    let height = row_h * rows.len() as f64;
    let margin = 60.0;
    let x = |delta: f64| margin + (width - 2.0 * margin) * delta / PI;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    );
    for (i, row) in rows.iter().enumerate() {
        let y = row_h * i as f64 + row_h / 2.0;
        let (x0, x1) = (x(row.delta_lo), x(row.delta_hi.min(PI)));
        let lo_color = if row.lo_tight { "#1f4e9c" } else { "#c42828" };
        let hi_color = if row.hi_tight { "#1f4e9c" } else { "#c42828" };
        svg.push_str(&format!(
            "  <text x=\"8\" y=\"{:.1}\" font-size=\"13\" dominant-baseline=\"middle\">k={}</text>\n",
            y, row.k
        ));
        if row.invalid {
            svg.push_str(&format!(
                "  <text x=\"{margin}\" y=\"{y:.1}\" font-size=\"12\" fill=\"#c42828\" \
                 dominant-baseline=\"middle\">invalid (delta_lo &gt;= delta_hi)</text>\n"
            ));
            continue;
        }
        svg.push_str(&format!(
            "  <line x1=\"{x0:.2}\" y1=\"{y:.1}\" x2=\"{x1:.2}\" y2=\"{y:.1}\" \
             stroke=\"#444\" stroke-width=\"3\"/>\n"
        ));
        // closed left endpoint: solid; open right endpoint: hollow
        svg.push_str(&format!(
            "  <circle cx=\"{x0:.2}\" cy=\"{y:.1}\" r=\"5\" fill=\"{lo_color}\"/>\n"
        ));
        svg.push_str(&format!(
            "  <circle cx=\"{x1:.2}\" cy=\"{y:.1}\" r=\"5\" fill=\"white\" \
             stroke=\"{hi_color}\" stroke-width=\"2\"/>\n"
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Finite evidence for the infinitely-many-changes phenomenon: the theorem
/// intervals whose left endpoint enters `delta in (0, eps)`, and the forced
/// connectivity lower bound there, which grows without bound as `delta`
/// shrinks. Explicitly labeled evidence, not proof.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InfiniteChangeProbe {
    pub n: usize,
    pub eps: f64,
    pub rows: Vec<ConnectivityInterval>,
    /// For any target `K`: `conn > K` is forced once
    /// `delta < pi / (2K + 4)` (from the covering-number lower bound on
    /// `S^1`); `None` for `n >= 2` where only the tabulated rows speak.
    pub delta_for_conn_exceeding: Option<Vec<(i64, f64)>>,
    pub note: String,
}

pub fn infinite_change_probe(
    n: usize,
    eps: f64,
    k_max: usize,
) -> Result<InfiniteChangeProbe, BoundsError> {
    assert!(eps > 0.0, "eps must be positive");
    let rows: Vec<ConnectivityInterval> = interval_table(n, k_max)?
        .into_iter()
        .filter(|row| row.delta_lo < eps)
        .collect();
    let delta_for_conn_exceeding = (n == 1).then(|| {
        (0..=6)
            .map(|target| (target, std::f64::consts::PI / (2 * target + 4) as f64))
            .collect()
    });
    Ok(InfiniteChangeProbe {
        n,
        eps,
        rows,
        delta_for_conn_exceeding,
        note: "finite evidence for the continuum statement, not a proof".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn pifrac_arithmetic_and_rendering() {
        assert_eq!(PiFrac::new(2, 8), PiFrac::new(1, 4));
        assert!(PiFrac::new(1, 3) > PiFrac::new(1, 4));
        assert_eq!(PiFrac::new(1, 4).to_f64(), PI / 4.0);
        assert_eq!(PiFrac::new(1, 4).to_string(), "pi/4");
        assert_eq!(PiFrac::new(3, 4).to_string(), "3pi/4");
        assert_eq!(PiFrac::new(1, 1).to_string(), "pi");
        assert_eq!(PiFrac::ZERO.to_string(), "0");
        assert_eq!(PiFrac::new(1, 2).scale(2, 1), PiFrac::new(1, 1));
    }

    #[test]
    fn theorem_intervals_on_the_circle() {
        let i = theorem_interval(1, 1, &CovSource::Known).unwrap();
        assert_eq!(i.delta_lo, PI / 4.0);
        assert_eq!(i.delta_hi, PI);
        assert_eq!(i.lo_exact.as_deref(), Some("pi/4"));
        assert_eq!(i.hi_exact.as_deref(), Some("pi"));
        assert!(i.lo_tight && i.hi_tight && !i.invalid);

        let i = theorem_interval(1, 3, &CovSource::Known).unwrap();
        assert_eq!(i.delta_lo, PI / 8.0);
        assert!((i.delta_hi - PI / 3.0).abs() < 1e-15);
        assert_eq!(i.hi_exact.as_deref(), Some("pi/3"));
    }

    #[test]
    fn theorem_intervals_on_the_two_sphere() {
        let i = theorem_interval(2, 1, &CovSource::Known).unwrap();
        assert!((i.delta_lo - (1.0f64 / 3.0).acos()).abs() < 1e-15);
        assert_eq!(i.delta_hi, PI);
        assert_eq!(i.lo_provenance, Provenance::Table);
        assert!(i.lo_tight);

        let i = theorem_interval(2, 6, &CovSource::Known).unwrap();
        assert!((i.delta_lo - 0.609782).abs() < 1e-9);
        assert!(i.lo_tight);
        assert!((i.delta_hi - 2.0 * 0.652358).abs() < 1e-6);
        assert!(i.hi_tight);
        assert!(!i.invalid);
    }

    #[test]
    fn missing_values_error() {
        assert!(matches!(
            theorem_interval(2, 8, &CovSource::Known),
            Err(BoundsError::MissingValue { .. })
        ));
        assert!(matches!(
            theorem_interval(3, 1, &CovSource::Known),
            Err(BoundsError::MissingValue { .. })
        ));
    }

    #[test]
    fn s1_oracle_examples() {
        let e = s1_exact(2.0);
        assert_eq!(e.homotopy_type, S1HomotopyType::Sphere(1));
        assert_eq!(e.conn, S1Conn::Finite(0));

        let e = s1_exact(2.2);
        assert_eq!(e.homotopy_type, S1HomotopyType::Sphere(3));
        assert_eq!(e.conn, S1Conn::Finite(2));

        let e = s1_exact(3.2);
        assert_eq!(e.homotopy_type, S1HomotopyType::Contractible);
        assert_eq!(e.conn, S1Conn::Infinite);

        // left endpoints belong to the previous interval
        let boundary = 2.0 * PI / 3.0;
        assert_eq!(s1_exact(boundary).homotopy_type, S1HomotopyType::Sphere(1));
        assert_eq!(
            s1_exact(boundary + 1e-12).homotopy_type,
            S1HomotopyType::Sphere(3)
        );
    }

    #[test]
    fn s1_table_containment_is_exact() {
        let rows = s1_interval_table(15);
        for row in &rows {
            assert!(row.containment, "k={}", row.k);
            if row.k % 2 == 1 {
                let (lo, hi) = row.exact.unwrap();
                assert_eq!(lo, PiFrac::new(1, row.k as i64 + 2));
                assert_eq!(hi, PiFrac::new(1, row.k as i64));
                assert!(row.right_endpoints_equal);
            } else {
                assert!(row.exact.is_none());
            }
        }
    }

    #[test]
    fn corollary_bounds_match_worked_examples() {
        let cfg = SolveConfig::quick(Ambient::Sphere { n: 1 });
        let b = corollary1_bounds(1, PI / 3.0 + 0.01, 64, &cfg).unwrap();
        assert_eq!(b.lower, Some(0));
        assert_eq!(b.upper, Some(1));
        assert!(b.lower_certified && b.upper_certified);

        let b = corollary1_bounds(1, PI / 5.0 + 0.001, 64, &cfg).unwrap();
        assert_eq!(b.lower, Some(1));
        assert_eq!(b.upper, Some(3));
    }

    #[test]
    fn consistency_triangle_on_the_circle() {
        let cfg = SolveConfig::quick(Ambient::Sphere { n: 1 });
        for i in 1..=200 {
            let r = PI * i as f64 / 201.0;
            let truth = match s1_exact(r).conn {
                S1Conn::Finite(c) => c,
                S1Conn::Infinite => continue,
            };
            let b = corollary1_bounds(1, PI - r, 4_000, &cfg).unwrap();
            let lower = b.lower.expect("closed form always resolves");
            let upper = b.upper.expect("closed form always resolves");
            assert!(
                lower <= truth && truth <= upper,
                "r={r}: {lower} <= {truth} <= {upper} violated"
            );
        }
    }

    #[test]
    fn interval_endpoints_monotone_in_k() {
        for n in [1usize, 2] {
            let k_max = if n == 1 { 12 } else { 7 };
            let rows = interval_table(n, k_max).unwrap();
            for w in rows.windows(2) {
                assert!(w[1].delta_lo <= w[0].delta_lo + 1e-12);
                assert!(w[1].delta_hi <= w[0].delta_hi + 1e-12);
            }
        }
    }

    #[test]
    fn csv_report_shape_and_flags() {
        let csv = render_report(2, 7, ReportFormat::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 8);
        assert!(lines[0].starts_with("n,k,delta_lo"));
        // k=3 row: lo is the 0.840193 bound, hi is the tight octahedron value
        let row3: Vec<&str> = lines[3].split(',').collect();
        assert_eq!(row3[1], "3");
        assert!(row3[10].contains("lo-bound-only"));
        assert!(!row3[10].contains("hi-bound-only"));
    }

    #[test]
    fn json_report_round_trips() {
        let json = render_report(1, 5, ReportFormat::Json).unwrap();
        let rows: Vec<ConnectivityInterval> = serde_json::from_str(&json).unwrap();
        assert_eq!(rows.len(), 5);
        let again = serde_json::to_string_pretty(&rows).unwrap();
        assert_eq!(json, again);
    }

    #[test]
    fn svg_report_has_a_bar_per_row() {
        let svg = render_report(1, 4, ReportFormat::Svg).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<line").count(), 4);
        assert_eq!(svg.matches("height=\"160\"").count(), 1);
    }

    #[test]
    fn probe_lists_small_delta_rows() {
        let probe = infinite_change_probe(1, PI / 4.0, 15).unwrap();
        // delta_lo = pi/(2k+2) < pi/4 for k >= 2
        assert!(probe.rows.iter().all(|r| r.delta_lo < PI / 4.0));
        assert!(probe.rows.iter().any(|r| r.k == 15));
        assert!(probe.rows.len() >= 13);
        let probe = infinite_change_probe(2, 0.7, 7).unwrap();
        assert!(probe.rows.iter().any(|r| r.k == 6));
        assert!(probe.rows.iter().all(|r| r.delta_lo < 0.7));
        let full = infinite_change_probe(1, PI + 1.0, 6).unwrap();
        assert_eq!(full.rows.len(), 6);
    }
}
