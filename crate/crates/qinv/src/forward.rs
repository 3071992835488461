//! Synthetic forward models and noise injection.
//!
//! Two data sources are implemented: narrowband array snapshots for
//! angle-of-arrival estimation, and single-scattering (Born) near-field
//! matrices for point scatterers probed from a multistatic surface. Both
//! produce a [`DataMatrix`] that the indicator machinery consumes; a third
//! source (CSV import of externally simulated or measured data) lives in
//! [`crate::io`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::num::{hankel1_0, ComplexMatrix, Prng};

/// Uniform rectangular receiver array in the z = 0 plane.
///
/// Element (mx, my) sits at `(mx * spacing_x, my * spacing_y)` for
/// `mx in 0..count_x`, `my in 0..count_y`. Flattening is row-major over
/// (mx, my): column index `mx * count_y + my`. Probe vectors must match this
/// order exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayGeometry {
    pub spacing_x: f64,
    pub spacing_y: f64,
    pub count_x: usize,
    pub count_y: usize,
    /// Wavenumber of the incident narrowband signal (rad / length unit).
    pub wavenumber: f64,
}

impl ArrayGeometry {
    pub fn new(
        spacing_x: f64,
        spacing_y: f64,
        count_x: usize,
        count_y: usize,
        wavenumber: f64,
    ) -> Result<Self> {
        if count_x < 1 || count_y < 1 {
            return Err(Error::InvalidArgument("array counts must be >= 1".into()));
        }
        if !(spacing_x > 0.0) || !(spacing_y > 0.0) {
            return Err(Error::InvalidArgument("array spacings must be > 0".into()));
        }
        if !(wavenumber > 0.0) {
            return Err(Error::InvalidArgument("wavenumber must be > 0".into()));
        }
        Ok(Self {
            spacing_x,
            spacing_y,
            count_x,
            count_y,
            wavenumber,
        })
    }

    pub fn element_count(&self) -> usize {
        self.count_x * self.count_y
    }

    /// Element positions in flattening order.
    pub fn positions(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.count_x).flat_map(move |mx| {
            (0..self.count_y)
                .map(move |my| (mx as f64 * self.spacing_x, my as f64 * self.spacing_y))
        })
    }
}

/// One far-field source: direction cosines and a complex amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Source {
    pub u: f64,
    pub v: f64,
    pub amplitude: Complex64,
}

/// Far-field sources plus the time sampling of the snapshots.
///
/// The time signature is `s_j(t_l) = exp(-i l dt u_j)`, which is linearly
/// independent across distinct u values.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceSet {
    sources: Vec<Source>,
    pub time_samples: usize,
    pub time_step: f64,
}

impl SourceSet {
    pub fn new(sources: Vec<Source>, time_samples: usize, time_step: f64) -> Result<Self> {
        if sources.is_empty() {
            return Err(Error::InvalidArgument("source set is empty".into()));
        }
        if time_samples < 1 || !(time_step > 0.0) {
            return Err(Error::InvalidArgument("invalid time sampling".into()));
        }
        for (j, s) in sources.iter().enumerate() {
            if s.u.abs() > 1.0 || s.v.abs() > 1.0 {
                return Err(Error::InvalidArgument(format!(
                    "source {} direction cosines ({}, {}) outside [-1, 1]^2",
                    j, s.u, s.v
                )));
            }
            if s.amplitude.norm() == 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "source {} has zero amplitude",
                    j
                )));
            }
        }
        for a in 0..sources.len() {
            for b in (a + 1)..sources.len() {
                if sources[a].u == sources[b].u && sources[a].v == sources[b].v {
                    return Err(Error::InvalidArgument(format!(
                        "sources {} and {} share the direction ({}, {})",
                        a, b, sources[a].u, sources[a].v
                    )));
                }
            }
        }
        Ok(Self {
            sources,
            time_samples,
            time_step,
        })
    }

    /// Draw `count` sources with u uniform in [-1, 1], v = 0, unit amplitude.
    pub fn random_1d(count: usize, seed: u64, time_samples: usize, time_step: f64) -> Result<Self> {
        let mut rng = Prng::seed(seed);
        let sources = (0..count)
            .map(|_| Source {
                u: rng.uniform_in(-1.0, 1.0),
                v: 0.0,
                amplitude: Complex64::new(1.0, 0.0),
            })
            .collect();
        Self::new(sources, time_samples, time_step)
    }

    pub fn sources(&self) -> &[Source] {
        &self.sources
    }
}

/// Shape descriptor for a multistatic transceiver layout.
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceShape {
    /// Uniform angles starting at 0, no duplicate endpoint.
    FullCircle { center: [f64; 2], radius: f64 },
    /// Angles span [pi, 2 pi] inclusive (below the x-axis).
    HalfCircle { center: [f64; 2], radius: f64 },
    /// Angles span [5 pi/4, 7 pi/4] inclusive (arc centered on (0, -r)).
    QuarterCircle { center: [f64; 2], radius: f64 },
    /// Explicit point list.
    Points,
}

/// Ordered transceiver positions in R^2 or R^3.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSurface {
    points: Vec<[f64; 3]>,
    pub dimension: usize,
    pub shape: SurfaceShape,
}

impl MeasurementSurface {
    pub fn full_circle(center: [f64; 2], radius: f64, count: usize) -> Result<Self> {
        Self::arc(
            center,
            radius,
            count,
            0.0,
            2.0 * std::f64::consts::PI,
            false,
            SurfaceShape::FullCircle { center, radius },
        )
    }

    pub fn half_circle(center: [f64; 2], radius: f64, count: usize) -> Result<Self> {
        Self::arc(
            center,
            radius,
            count,
            std::f64::consts::PI,
            2.0 * std::f64::consts::PI,
            true,
            SurfaceShape::HalfCircle { center, radius },
        )
    }

    pub fn quarter_circle(center: [f64; 2], radius: f64, count: usize) -> Result<Self> {
        Self::arc(
            center,
            radius,
            count,
            1.25 * std::f64::consts::PI,
            1.75 * std::f64::consts::PI,
            true,
            SurfaceShape::QuarterCircle { center, radius },
        )
    }

    fn arc(
        center: [f64; 2],
        radius: f64,
        count: usize,
        start: f64,
        end: f64,
        include_end: bool,
        shape: SurfaceShape,
    ) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidArgument("surface radius must be > 0".into()));
        }
        if count < 1 || (include_end && count < 2) {
            return Err(Error::InvalidArgument("surface needs enough points".into()));
        }
        let denom = if include_end {
            (count - 1) as f64
        } else {
            count as f64
        };
        let points = (0..count)
            .map(|p| {
                let theta = start + (end - start) * p as f64 / denom;
                [
                    center[0] + radius * theta.cos(),
                    center[1] + radius * theta.sin(),
                    0.0,
                ]
            })
            .collect();
        let s = Self {
            points,
            dimension: 2,
            shape,
        };
        s.check_distinct()?;
        Ok(s)
    }

    pub fn from_points(points: Vec<[f64; 3]>, dimension: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("surface has no points".into()));
        }
        if dimension != 2 && dimension != 3 {
            return Err(Error::InvalidArgument(
                "surface dimension must be 2 or 3".into(),
            ));
        }
        if dimension == 2 && points.iter().any(|p| p[2] != 0.0) {
            return Err(Error::InvalidArgument(
                "2-d surface points must have zero third coordinate".into(),
            ));
        }
        let s = Self {
            points,
            dimension,
            shape: SurfaceShape::Points,
        };
        s.check_distinct()?;
        Ok(s)
    }

    fn check_distinct(&self) -> Result<()> {
        for a in 0..self.points.len() {
            for b in (a + 1)..self.points.len() {
                if distance(self.points[a], self.points[b]) == 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "surface points {} and {} coincide",
                        a, b
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Point scatterer: a position and a complex contrast weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scatterer {
    pub position: [f64; 3],
    pub contrast: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScattererSet {
    scatterers: Vec<Scatterer>,
}

impl ScattererSet {
    pub fn new(scatterers: Vec<Scatterer>) -> Result<Self> {
        if scatterers.is_empty() {
            return Err(Error::InvalidArgument("scatterer set is empty".into()));
        }
        for (j, s) in scatterers.iter().enumerate() {
            if s.contrast.norm() == 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "scatterer {} has zero contrast",
                    j
                )));
            }
        }
        for a in 0..scatterers.len() {
            for b in (a + 1)..scatterers.len() {
                if distance(scatterers[a].position, scatterers[b].position) == 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "scatterers {} and {} coincide",
                        a, b
                    )));
                }
            }
        }
        Ok(Self { scatterers })
    }

    /// Draw `count` unit-contrast scatterers uniformly in the planar box
    /// `[x0, x1] x [y0, y1]`.
    pub fn random_in_box(count: usize, seed: u64, x: (f64, f64), y: (f64, f64)) -> Result<Self> {
        let mut rng = Prng::seed(seed);
        let scatterers = (0..count)
            .map(|_| Scatterer {
                position: [rng.uniform_in(x.0, x.1), rng.uniform_in(y.0, y.1), 0.0],
                contrast: Complex64::new(1.0, 0.0),
            })
            .collect();
        Self::new(scatterers)
    }

    pub fn scatterers(&self) -> &[Scatterer] {
        &self.scatterers
    }
}

/// Where a data matrix came from. Set exactly once at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Aoa,
    Born,
    External,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Aoa => "aoa",
            Provenance::Born => "born",
            Provenance::External => "external",
        }
    }
}

/// Complex measurement matrix plus axis metadata.
///
/// Indicators act on the column space: probe vectors and test functions have
/// length `matrix.cols()`.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    pub matrix: ComplexMatrix,
    pub row_label: String,
    pub row_coords: Vec<f64>,
    pub col_label: String,
    pub col_coords: Vec<f64>,
    provenance: Provenance,
    pub wavenumber: Option<f64>,
}

impl DataMatrix {
    pub fn new(
        matrix: ComplexMatrix,
        row_label: impl Into<String>,
        row_coords: Vec<f64>,
        col_label: impl Into<String>,
        col_coords: Vec<f64>,
        provenance: Provenance,
        wavenumber: Option<f64>,
    ) -> Result<Self> {
        if row_coords.len() != matrix.rows() || col_coords.len() != matrix.cols() {
            return Err(Error::DimensionMismatch(
                "axis coordinate lists must match matrix dimensions".into(),
            ));
        }
        Ok(Self {
            matrix,
            row_label: row_label.into(),
            row_coords,
            col_label: col_label.into(),
            col_coords,
            provenance,
            wavenumber,
        })
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }
}

/// Narrowband snapshot matrix: rows are time samples, columns are array
/// elements in flattening order. Entry (l, m) is
/// `sum_j alpha_j s_j(t_l) exp(-i k (x_m u_j + y_m v_j))`.
pub fn synth_aoa(geom: &ArrayGeometry, src: &SourceSet) -> DataMatrix {
    let rows = src.time_samples;
    let cols = geom.element_count();
    let k = geom.wavenumber;
    let positions: Vec<(f64, f64)> = geom.positions().collect();

    let mut entries = Vec::with_capacity(rows * cols);
    for l in 0..rows {
        let t = l as f64 * src.time_step;
        for &(x, y) in &positions {
            let mut acc = Complex64::new(0.0, 0.0);
            for s in src.sources() {
                let sig = Complex64::from_polar(1.0, -t * s.u);
                let phase = Complex64::from_polar(1.0, -k * (x * s.u + y * s.v));
                acc += s.amplitude * sig * phase;
            }
            entries.push(acc);
        }
    }
    let matrix = ComplexMatrix::from_entries(rows, cols, entries)
        .expect("finite superposition of unit phasors");
    let row_coords = (0..rows).map(|l| l as f64 * src.time_step).collect();
    let col_coords = (0..cols).map(|m| m as f64).collect();
    DataMatrix::new(
        matrix,
        "time",
        row_coords,
        "element",
        col_coords,
        Provenance::Aoa,
        Some(k),
    )
    .expect("coordinate lengths match by construction")
}

/// Free-space Helmholtz fundamental solution:
/// `(i/4) H0^(1)(k |x - z|)` in 2-d, `exp(i k |x - z|) / (4 pi |x - z|)` in 3-d.
pub fn fundamental_solution(
    x: [f64; 3],
    z: [f64; 3],
    wavenumber: f64,
    dimension: usize,
) -> Result<Complex64> {
    if !(wavenumber > 0.0) {
        return Err(Error::InvalidArgument("wavenumber must be > 0".into()));
    }
    let r = distance(x, z);
    if r == 0.0 {
        return Err(Error::Singular(
            "fundamental solution evaluated at its source point".into(),
        ));
    }
    match dimension {
        2 => {
            let h = hankel1_0(wavenumber * r)?;
            Ok(Complex64::new(0.0, 0.25) * h)
        }
        3 => {
            let scale = 1.0 / (4.0 * std::f64::consts::PI * r);
            Ok(Complex64::from_polar(scale, wavenumber * r))
        }
        d => Err(Error::InvalidArgument(format!(
            "fundamental solution dimension must be 2 or 3, got {}",
            d
        ))),
    }
}

/// Born-approximation near-field matrix over the surface points:
/// entry (x, y) is `-k^2 sum_j m_j Phi_k(x, z_j) conj(Phi_k(y, z_j))`
/// (rows index receivers, columns index sources).
pub fn synth_born(
    scatterers: &ScattererSet,
    surface: &MeasurementSurface,
    wavenumber: f64,
) -> Result<DataMatrix> {
    if let SurfaceShape::FullCircle { center, radius } = surface.shape {
        for (j, s) in scatterers.scatterers().iter().enumerate() {
            let d = ((s.position[0] - center[0]).powi(2)
                + (s.position[1] - center[1]).powi(2)
                + s.position[2].powi(2))
            .sqrt();
            if d >= radius {
                return Err(Error::InvalidArgument(format!(
                    "scatterer {} lies outside the measurement circle",
                    j
                )));
            }
        }
    }

    let p = surface.len();
    let js = scatterers.scatterers();
    // Phi_k(x_p, z_j), evaluated once per (surface point, scatterer) pair.
    let mut phi = vec![vec![Complex64::new(0.0, 0.0); p]; js.len()];
    for (j, s) in js.iter().enumerate() {
        for (q, &point) in surface.points().iter().enumerate() {
            phi[j][q] = fundamental_solution(point, s.position, wavenumber, surface.dimension)
                .map_err(|_| {
                    Error::Singular(format!(
                        "scatterer {} coincides with surface point {}",
                        j, q
                    ))
                })?;
        }
    }

    let k2 = wavenumber * wavenumber;
    let mut entries = Vec::with_capacity(p * p);
    for x in 0..p {
        for y in 0..p {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, s) in js.iter().enumerate() {
                acc += phi[j][x] * phi[j][y].conj() * s.contrast;
            }
            entries.push(acc * (-k2));
        }
    }
    let matrix = ComplexMatrix::from_entries(p, p, entries)?;
    let coords: Vec<f64> = (0..p).map(|i| i as f64).collect();
    DataMatrix::new(
        matrix,
        "receiver",
        coords.clone(),
        "source",
        coords,
        Provenance::Born,
        Some(wavenumber),
    )
}

/// Additive complex Gaussian noise calibrated to a signal-to-noise ratio:
/// `sigma = |f|_F / sqrt(N snr)` over the N = rows x cols entries, each entry
/// perturbed by `sigma (eps_re + i eps_im)` with independent standard
/// normals drawn row-major from the generator. `snr = f64::INFINITY` is the
/// documented "noise off" sentinel and returns the input unchanged.
pub fn add_noise(data: &DataMatrix, snr: f64, rng: &mut Prng) -> DataMatrix {
    if snr.is_infinite() {
        return data.clone();
    }
    assert!(snr > 0.0, "snr must be positive or the infinity sentinel");
    let n = (data.rows() * data.cols()) as f64;
    let sigma = data.matrix.frobenius_norm() / (n * snr).sqrt();
    let mut noisy = data.clone();
    for i in 0..data.rows() {
        for j in 0..data.cols() {
            let (re, im) = rng.gaussian_pair();
            noisy.matrix[(i, j)] += Complex64::new(sigma * re, sigma * im);
        }
    }
    noisy
}

pub(crate) fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}
