//! Probe (test) vectors that the indicators are evaluated against.
//!
//! For array data the probe at direction (u, v) is the conjugated steering
//! vector `exp(+i k (x u + y v))` per element; the conjugation is baked in
//! here so a single indicator code path serves both applications. For
//! scattering data the probe is the fundamental solution sampled on the
//! measurement surface. Probes are generated unnormalized; indicators
//! normalize on entry.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forward::{fundamental_solution, ArrayGeometry, MeasurementSurface};
use crate::num::ComplexVector;

/// The candidate unknown a probe encodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbeTarget {
    /// Direction cosines (u, v).
    Direction { u: f64, v: f64 },
    /// Spatial sampling point.
    Point([f64; 3]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeVector {
    pub vector: ComplexVector,
    pub target: ProbeTarget,
    normalized: bool,
}

impl ProbeVector {
    /// Wrap an explicit test vector (used for custom probes and tests).
    pub fn from_vector(vector: ComplexVector, target: ProbeTarget) -> Self {
        Self {
            vector,
            target,
            normalized: false,
        }
    }

    pub fn len(&self) -> usize {
        self.vector.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vector.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Unit-norm copy; errors on the zero vector.
    pub fn normalized(&self) -> Result<ProbeVector> {
        if self.normalized {
            return Ok(self.clone());
        }
        let n = self.vector.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector("cannot normalize zero probe".into()));
        }
        Ok(ProbeVector {
            vector: self.vector.scale(Complex64::new(1.0 / n, 0.0)),
            target: self.target,
            normalized: true,
        })
    }
}

/// Conjugated steering vector for the array at direction cosines (u, v):
/// entry `exp(+i k (mx dx u + my dy v))` in the same flattening order as
/// [`crate::forward::synth_aoa`] columns.
pub fn aoa_probe(geom: &ArrayGeometry, u: f64, v: f64) -> ProbeVector {
    let k = geom.wavenumber;
    let entries = geom
        .positions()
        .map(|(x, y)| Complex64::from_polar(1.0, k * (x * u + y * v)))
        .collect();
    ProbeVector {
        vector: ComplexVector::from_entries_unchecked(entries),
        target: ProbeTarget::Direction { u, v },
        normalized: false,
    }
}

/// Fundamental solution sampled at each surface point for the candidate
/// location z. Errors if z coincides with a surface point.
pub fn scattering_probe(
    surface: &MeasurementSurface,
    z: [f64; 3],
    wavenumber: f64,
) -> Result<ProbeVector> {
    let mut entries = Vec::with_capacity(surface.len());
    for &p in surface.points() {
        entries.push(fundamental_solution(p, z, wavenumber, surface.dimension)?);
    }
    Ok(ProbeVector {
        vector: ComplexVector::from_entries_unchecked(entries),
        target: ProbeTarget::Point(z),
        normalized: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{synth_aoa, Source, SourceSet};
    use crate::num::hankel1_0;

    #[test]
    fn broadside_probe_is_all_ones() {
        let geom = ArrayGeometry::new(1.0, 1.0, 3, 2, 2.0).unwrap();
        let p = aoa_probe(&geom, 0.0, 0.0);
        assert_eq!(p.len(), 6);
        for e in p.vector.entries() {
            assert!((e - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn probe_entries_are_pure_phases() {
        let geom = ArrayGeometry::new(0.7, 1.3, 4, 3, 1.9).unwrap();
        let p = aoa_probe(&geom, 0.3, -0.8);
        for e in p.vector.entries() {
            assert!((e.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn negated_direction_conjugates_probe() {
        let geom = ArrayGeometry::new(0.7, 1.3, 4, 3, 1.9).unwrap();
        let p = aoa_probe(&geom, 0.3, -0.8);
        let q = aoa_probe(&geom, -0.3, 0.8);
        for (a, b) in p.vector.entries().iter().zip(q.vector.entries()) {
            assert!((a.conj() - b).norm() < 1e-14);
        }
    }

    #[test]
    fn normalized_probe_has_unit_norm() {
        let geom = ArrayGeometry::new(0.7, 1.3, 5, 2, 1.9).unwrap();
        let p = aoa_probe(&geom, 0.5, 0.1).normalized().unwrap();
        assert!((p.vector.norm() - 1.0).abs() <= 1e-12);
        assert!(p.is_normalized());
    }

    #[test]
    fn equidistant_surface_gives_constant_probe() {
        // Four points at distance 1 from z, k = 1, 3-d.
        let surface = MeasurementSurface::from_points(
            vec![
                [1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, 0.0, 1.0],
            ],
            3,
        )
        .unwrap();
        let p = scattering_probe(&surface, [0.0, 0.0, 0.0], 1.0).unwrap();
        let expected = Complex64::from_polar(1.0 / (4.0 * std::f64::consts::PI), 1.0);
        for e in p.vector.entries() {
            assert!((e - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn probe_is_translation_invariant() {
        let surface = MeasurementSurface::full_circle([0.0, 0.0], 4.0, 9).unwrap();
        let shifted = MeasurementSurface::full_circle([2.5, -1.0], 4.0, 9).unwrap();
        let z = [0.4, 0.9, 0.0];
        let zs = [2.9, -0.1, 0.0];
        let p = scattering_probe(&surface, z, 8.0).unwrap();
        let q = scattering_probe(&shifted, zs, 8.0).unwrap();
        for (a, b) in p.vector.entries().iter().zip(q.vector.entries()) {
            assert!((a - b).norm() <= 1e-12 * a.norm());
        }
    }

    #[test]
    fn circle_probe_matches_entrywise_oracle() {
        let k = 8.0;
        let surface = MeasurementSurface::full_circle([0.0, 0.0], 4.0, 25).unwrap();
        let z = [0.0, 1.5, 0.0];
        let p = scattering_probe(&surface, z, k).unwrap();
        for (e, pt) in p.vector.entries().iter().zip(surface.points()) {
            let r = ((pt[0] - z[0]).powi(2) + (pt[1] - z[1]).powi(2)).sqrt();
            let oracle = Complex64::new(0.0, 0.25) * hankel1_0(k * r).unwrap();
            assert!((e - oracle).norm() <= 1e-10 * oracle.norm());
        }
    }

    #[test]
    fn probe_on_surface_point_errors() {
        let surface = MeasurementSurface::full_circle([0.0, 0.0], 4.0, 8).unwrap();
        let on_surface = surface.points()[3];
        assert!(scattering_probe(&surface, on_surface, 8.0).is_err());
    }

    #[test]
    fn beamforming_argmax_sits_at_true_direction() {
        // Single noiseless source; the squared column-space correlation
        // `|L phi_hat|^2` must be globally maximal at the true (u0, v0)
        // over a 101 x 101 grid that contains it.
        let geom = ArrayGeometry::new(1.0, 1.0, 6, 6, 2.0).unwrap();
        let (u0, v0) = (0.3, -0.2); // grid points of the 101-point axes
        let src = SourceSet::new(
            vec![Source {
                u: u0,
                v: v0,
                amplitude: Complex64::new(1.0, 0.0),
            }],
            8,
            0.5,
        )
        .unwrap();
        let data = synth_aoa(&geom, &src);
        let mut best = (f64::MIN, 0.0, 0.0);
        for iu in 0..101 {
            let u = -1.0 + 2.0 * iu as f64 / 100.0;
            for iv in 0..101 {
                let v = -1.0 + 2.0 * iv as f64 / 100.0;
                let probe = aoa_probe(&geom, u, v).normalized().unwrap();
                let val = data.matrix.matvec(&probe.vector).unwrap().norm_sq();
                if val > best.0 {
                    best = (val, u, v);
                }
            }
        }
        assert!((best.1 - u0).abs() < 1e-12 && (best.2 - v0).abs() < 1e-12);
    }
}
