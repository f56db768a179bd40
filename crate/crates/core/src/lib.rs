//! Covering radii, Vietoris--Rips complexes, and connectivity certificates on
//! spheres and projective spaces.
//!
//! The crate is organized around a pipeline: sample a finite metric space from
//! `S^n` or `RP^n` ([`geometry`]), solve and certify covering problems
//! ([`covering`]), build strict-`<` Vietoris--Rips flag complexes ([`complex`]),
//! compute reduced `Z/2` homology ([`homology`]), derive connectivity lower
//! bounds from ball-intersection certificates ([`conic`]), verify the odd-map
//! upper-bound construction ([`oddmap`]), and assemble everything into
//! connectivity-interval tables ([`bounds`]).

pub mod accept;
pub mod bounds;
pub mod complex;
pub mod conic;
pub mod covering;
pub mod geometry;
pub mod homology;
pub mod oddmap;

pub use bounds::ConnectivityInterval;
pub use complex::VRComplex;
pub use conic::ConicCertificate;
pub use covering::CoveringSolution;
pub use homology::BettiProfile;
pub use geometry::{Ambient, FinitePointCloud, ProjectivePoint, SpherePoint};

