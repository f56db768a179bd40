//! Known covering radii: closed forms on the circle ambients and the
//! published bounds for `S^2` and `RP^2`. Tight entries are exact values;
//! the rest are published upper bounds and are never asserted as equalities.

use serde::{Deserialize, Serialize};

use crate::geometry::Ambient;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnownCoveringValue {
    pub ambient: Ambient,
    pub k: usize,
    pub value: f64,
    pub tight: bool,
    pub source: String,
    /// Exact expression when one is known, e.g. "pi/4" or "arccos(1/3)".
    pub expr: Option<String>,
}

fn entry(
    ambient: Ambient,
    k: usize,
    value: f64,
    tight: bool,
    source: &str,
    expr: Option<&str>,
) -> KnownCoveringValue {
    KnownCoveringValue {
        ambient,
        k,
        value,
        tight,
        source: source.to_string(),
        expr: expr.map(str::to_string),
    }
}

/// Known value of `cov_X(k)` (k balls), when one is on record.
pub fn known_cov(ambient: Ambient, k: usize) -> Option<KnownCoveringValue> {
    use std::f64::consts::PI;
    if k == 0 {
        return None;
    }
    match ambient {
        Ambient::Sphere { n: 1 } => Some(entry(
            ambient,
            k,
            PI / k as f64,
            true,
            "evenly spaced arc centers",
            Some(&format!("pi/{k}")),
        )),
        Ambient::Projective { n: 1 } => Some(entry(
            ambient,
            k,
            PI / (2.0 * k as f64),
            true,
            "evenly spaced arc centers on the half circle",
            Some(&format!("pi/{}", 2 * k)),
        )),
        Ambient::Sphere { n: 2 } => {
            let icosa = ((5.0 + 2.0 * 5.0_f64.sqrt()) / 15.0).sqrt().acos();
            let (value, tight, source, expr): (f64, bool, &str, Option<&str>) = match k {
                4 => (
                    (1.0_f64 / 3.0).acos(),
                    true,
                    "L. Toth (tetrahedron)",
                    Some("arccos(1/3)"),
                ),
                6 => (
                    0.5 * (-1.0_f64 / 3.0).acos(),
                    true,
                    "L. Toth (octahedron)",
                    Some("arccos(-1/3)/2"),
                ),
                8 => (0.840193, false, "Tarnai-Gaspar", None),
                10 => (0.738411, true, "Tarnai-Gaspar", None),
                12 => (
                    icosa,
                    true,
                    "Schutte (icosahedron)",
                    Some("arccos(sqrt((5+2*sqrt(5))/15))"),
                ),
                14 => (0.609782, true, "Tarnai-Gaspar", None),
                16 => (0.574193, false, "Tarnai-Gaspar", None),
                _ => return None,
            };
            Some(entry(ambient, k, value, tight, source, expr))
        }
        Ambient::Projective { n: 2 } => {
            let icosa = ((5.0 + 2.0 * 5.0_f64.sqrt()) / 15.0).sqrt().acos();
            let (value, tight, source, expr): (f64, bool, &str, Option<&str>) = match k {
                1 => (PI / 2.0, true, "single ball", Some("pi/2")),
                2 => (PI / 2.0, true, "two balls", Some("pi/2")),
                3 => (
                    0.5 * (-1.0_f64 / 3.0).acos(),
                    true,
                    "Fowler-Tarnai (octahedron)",
                    Some("arccos(-1/3)/2"),
                ),
                4 => (0.857072, false, "Fowler-Tarnai", None),
                5 => (0.801530, false, "Fowler-Tarnai", None),
                6 => (
                    icosa,
                    true,
                    "Fowler-Tarnai (icosahedron)",
                    Some("arccos(sqrt((5+2*sqrt(5))/15))"),
                ),
                7 => (0.631914, false, "Fowler-Tarnai", None),
                _ => return None,
            };
            Some(entry(ambient, k, value, tight, source, expr))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn circle_closed_forms() {
        let v = known_cov(Ambient::Sphere { n: 1 }, 4).unwrap();
        assert_eq!(v.value, PI / 4.0);
        assert!(v.tight);
        let w = known_cov(Ambient::Projective { n: 1 }, 3).unwrap();
        assert_eq!(w.value, PI / 6.0);
        assert!(w.tight);
    }

    #[test]
    fn table_values() {
        let t = known_cov(Ambient::Sphere { n: 2 }, 4).unwrap();
        assert!((t.value - 1.230959).abs() < 1e-6);
        assert!(t.tight);
        let i = known_cov(Ambient::Projective { n: 2 }, 6).unwrap();
        assert!((i.value - 0.652358).abs() < 1e-6);
        assert!(i.tight);
        let nt = known_cov(Ambient::Projective { n: 2 }, 4).unwrap();
        assert!((nt.value - 0.857072).abs() < 1e-12);
        assert!(!nt.tight);
        assert!(known_cov(Ambient::Sphere { n: 2 }, 5).is_none());
        assert!(known_cov(Ambient::Sphere { n: 3 }, 4).is_none());
    }

    #[test]
    fn values_within_ambient_diameter() {
        for k in 1..=20 {
            for ambient in [
                Ambient::Sphere { n: 1 },
                Ambient::Sphere { n: 2 },
                Ambient::Projective { n: 1 },
                Ambient::Projective { n: 2 },
            ] {
                if let Some(v) = known_cov(ambient, k) {
                    assert!(v.value > 0.0 && v.value <= ambient.diameter().unwrap() + 1e-12);
                }
            }
        }
    }
}
