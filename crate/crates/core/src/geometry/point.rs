use serde::{Deserialize, Serialize};

use super::GeometryError;

/// Unit-vector representative of a point on `S^n`, stored as `n+1` direction
/// cosines. Normalized on construction; the antipode is coordinate negation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.len() < 2 {
            return Err(GeometryError::TooFewCoordinates(coords.len()));
        }
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(GeometryError::ZeroVector);
        }
        let coords = coords.into_iter().map(|c| c / norm).collect();
        Ok(Self { coords })
    }

    /// Sphere dimension `n` (one less than the coordinate count).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn antipode(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Point at angle `theta` on `S^1`.
    pub fn circle(theta: f64) -> Self {
        Self {
            coords: vec![theta.cos(), theta.sin()],
        }
    }

    /// Walk geodesic distance `t` from `self` in unit tangent direction `u`.
    /// `u` must be unit and orthogonal to `self`; the result is renormalized.
    pub fn geodesic_step(&self, u: &[f64], t: f64) -> Self {
        let (c, s) = (t.cos(), t.sin());
        let coords: Vec<f64> = self
            .coords
            .iter()
            .zip(u)
            .map(|(p, q)| p * c + q * s)
            .collect();
        // renormalize to keep the construction invariant exact
        Self::new(coords).expect("geodesic step preserves unit norm")
    }
}

/// Point of `RP^n`, stored via the canonical-sign unit representative: the
/// first coordinate of absolute value above 1e-12 is positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    rep: SpherePoint,
}

impl ProjectivePoint {
    pub fn new(rep: SpherePoint) -> Self {
        Self {
            rep: canonicalize(rep),
        }
    }

    pub fn from_coords(coords: Vec<f64>) -> Result<Self, GeometryError> {
        Ok(Self::new(SpherePoint::new(coords)?))
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn rep(&self) -> &SpherePoint {
        &self.rep
    }

    /// The two antipodal lifts `(x, -x)` of this point to `S^n`.
    pub fn lift(&self) -> (SpherePoint, SpherePoint) {
        (self.rep.clone(), self.rep.antipode())
    }
}

fn canonicalize(p: SpherePoint) -> SpherePoint {
    let flip = p
        .coords()
        .iter()
        .find(|c| c.abs() > 1e-12)
        .map(|c| *c < 0.0)
        .unwrap_or(false);
    if flip {
        p.antipode()
    } else {
        p
    }
}

#[inline]
fn clamped_acos(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).acos()
}

/// Geodesic distance on `S^n`, in radians; the sphere has diameter pi.
pub fn sphere_dist(u: &SpherePoint, v: &SpherePoint) -> Result<f64, GeometryError> {
    if u.dim() != v.dim() {
        return Err(GeometryError::DimensionMismatch(u.dim(), v.dim()));
    }
    Ok(clamped_acos(u.dot(v)))
}

/// Quotient metric on `RP^n`, in radians; the projective space has diameter pi/2.
pub fn proj_dist(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<f64, GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch(p.dim(), q.dim()));
    }
    Ok(clamped_acos(p.rep.dot(&q.rep).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn sphere_dist_identity_antipode_orthogonal() {
        let u = SpherePoint::new(vec![1.0, 0.0]).unwrap();
        let v = SpherePoint::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(sphere_dist(&u, &u).unwrap(), 0.0);
        assert!((sphere_dist(&u, &u.antipode()).unwrap() - PI).abs() < 1e-15);
        assert!((sphere_dist(&u, &v).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn sphere_dist_dimension_mismatch() {
        let u = SpherePoint::new(vec![1.0, 0.0]).unwrap();
        let v = SpherePoint::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert!(sphere_dist(&u, &v).is_err());
    }

    #[test]
    fn normalization_applied() {
        let u = SpherePoint::new(vec![3.0, 4.0]).unwrap();
        let norm: f64 = u.coords().iter().map(|c| c * c).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn proj_dist_basics() {
        let p = ProjectivePoint::from_coords(vec![1.0, 0.0]).unwrap();
        let q = ProjectivePoint::from_coords(vec![0.0, 1.0]).unwrap();
        assert_eq!(proj_dist(&p, &p).unwrap(), 0.0);
        assert!((proj_dist(&p, &q).unwrap() - FRAC_PI_2).abs() < 1e-15);
        // antipodes are identified
        let r = ProjectivePoint::from_coords(vec![-1.0, 0.0]).unwrap();
        assert_eq!(proj_dist(&p, &r).unwrap(), 0.0);
        assert_eq!(p.rep().coords(), r.rep().coords());
    }

    #[test]
    fn canonicalization_idempotent() {
        let raw = SpherePoint::new(vec![-0.3, 0.7, -0.648]).unwrap();
        let p = ProjectivePoint::new(raw.clone());
        let q = ProjectivePoint::new(raw.antipode());
        assert_eq!(p.rep().coords(), q.rep().coords());
        let again = ProjectivePoint::new(p.rep().clone());
        assert_eq!(p.rep().coords(), again.rep().coords());
    }

    #[test]
    fn proj_dist_is_min_over_sign_lifts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let b: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let (Ok(u), Ok(v)) = (SpherePoint::new(a), SpherePoint::new(b)) else {
                continue;
            };
            let p = ProjectivePoint::new(u.clone());
            let q = ProjectivePoint::new(v.clone());
            let d = sphere_dist(&u, &v).unwrap();
            let expect = d.min(std::f64::consts::PI - d);
            assert!((proj_dist(&p, &q).unwrap() - expect).abs() < 1e-12);
        }
    }
}
