//! Grid sweep machinery: evaluate one indicator over a sampling grid,
//! extract peaks, measure timing.
//!
//! The sweep is data-parallel with a hard determinism contract: per-point
//! work is pure, shared precomputations are built before the sweep, and
//! results are gathered by index, so the value array is bit-identical for
//! any worker count.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forward::{ArrayGeometry, DataMatrix, MeasurementSurface, Provenance};
use crate::indicators::{IndicatorEngine, IndicatorSpec};
use crate::steering::{aoa_probe, scattering_probe, ProbeVector};

/// One rectilinear axis: `count` points from `min` to `max` inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidArgument(
                "axis needs at least 2 points".into(),
            ));
        }
        if !(min < max) {
            return Err(Error::InvalidArgument(format!(
                "axis min {} must be below max {}",
                min, max
            )));
        }
        Ok(Self { min, max, count })
    }

    pub fn value(&self, i: usize) -> f64 {
        self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64
    }

    /// Grid spacing (one cell).
    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }
}

/// Rectilinear candidate grid, 1-d or 2-d, flattened row-major over
/// (axis 0, axis 1).
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingGrid {
    axes: Vec<AxisSpec>,
}

impl SamplingGrid {
    pub fn new_1d(min: f64, max: f64, count: usize) -> Result<Self> {
        Ok(Self {
            axes: vec![AxisSpec::new(min, max, count)?],
        })
    }

    pub fn new_2d(x: AxisSpec, y: AxisSpec) -> Self {
        Self { axes: vec![x, y] }
    }

    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, i: usize) -> &AxisSpec {
        &self.axes[i]
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinates of flattened point `idx`; the second component is 0 for
    /// 1-d grids.
    pub fn point(&self, idx: usize) -> [f64; 2] {
        match self.axes.len() {
            1 => [self.axes[0].value(idx), 0.0],
            _ => {
                let ny = self.axes[1].count;
                [self.axes[0].value(idx / ny), self.axes[1].value(idx % ny)]
            }
        }
    }

    /// Indices of the full neighbor stencil (2 in 1-d, 8 in 2-d), or None
    /// for boundary points that lack a full stencil.
    fn full_stencil(&self, idx: usize) -> Option<Vec<usize>> {
        match self.axes.len() {
            1 => {
                let n = self.axes[0].count;
                if idx == 0 || idx + 1 >= n {
                    None
                } else {
                    Some(vec![idx - 1, idx + 1])
                }
            }
            _ => {
                let ny = self.axes[1].count;
                let nx = self.axes[0].count;
                let ix = idx / ny;
                let iy = idx % ny;
                if ix == 0 || iy == 0 || ix + 1 >= nx || iy + 1 >= ny {
                    return None;
                }
                let mut out = Vec::with_capacity(8);
                for dx in -1i64..=1 {
                    for dy in -1i64..=1 {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        let jx = (ix as i64 + dx) as usize;
                        let jy = (iy as i64 + dy) as usize;
                        out.push(jx * ny + jy);
                    }
                }
                Some(out)
            }
        }
    }

    /// Restrict to the points inside a closed window `[x0, x1] x [y0, y1]`
    /// (the y bounds are ignored for 1-d grids). Errors if fewer than two
    /// points per axis survive.
    pub fn crop(&self, window: [f64; 4]) -> Result<(SamplingGrid, Vec<usize>)> {
        let keep_x: Vec<usize> = (0..self.axes[0].count)
            .filter(|&i| {
                let v = self.axes[0].value(i);
                v >= window[0] && v <= window[1]
            })
            .collect();
        if keep_x.len() < 2 {
            return Err(Error::InvalidArgument(
                "crop leaves too few x points".into(),
            ));
        }
        let x_axis = AxisSpec::new(
            self.axes[0].value(keep_x[0]),
            self.axes[0].value(*keep_x.last().unwrap()),
            keep_x.len(),
        )?;
        if self.axes.len() == 1 {
            let grid = SamplingGrid { axes: vec![x_axis] };
            return Ok((grid, keep_x));
        }
        let keep_y: Vec<usize> = (0..self.axes[1].count)
            .filter(|&i| {
                let v = self.axes[1].value(i);
                v >= window[2] && v <= window[3]
            })
            .collect();
        if keep_y.len() < 2 {
            return Err(Error::InvalidArgument(
                "crop leaves too few y points".into(),
            ));
        }
        let y_axis = AxisSpec::new(
            self.axes[1].value(keep_y[0]),
            self.axes[1].value(*keep_y.last().unwrap()),
            keep_y.len(),
        )?;
        let ny = self.axes[1].count;
        let mut indices = Vec::with_capacity(keep_x.len() * keep_y.len());
        for &ix in &keep_x {
            for &iy in &keep_y {
                indices.push(ix * ny + iy);
            }
        }
        Ok((
            SamplingGrid {
                axes: vec![x_axis, y_axis],
            },
            indices,
        ))
    }
}

/// Recipe for turning grid points into probe vectors.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbeKind {
    /// Grid points are direction cosines (u, v); 1-d grids fix v = 0.
    Aoa(ArrayGeometry),
    /// Grid points are spatial candidates (x, y, 0).
    Scattering {
        surface: MeasurementSurface,
        wavenumber: f64,
    },
}

impl ProbeKind {
    fn probe(&self, point: [f64; 2]) -> Result<ProbeVector> {
        match self {
            ProbeKind::Aoa(geom) => Ok(aoa_probe(geom, point[0], point[1])),
            ProbeKind::Scattering {
                surface,
                wavenumber,
            } => scattering_probe(surface, [point[0], point[1], 0.0], *wavenumber),
        }
    }

    fn matches(&self, provenance: Provenance) -> bool {
        match self {
            ProbeKind::Aoa(_) => provenance == Provenance::Aoa,
            ProbeKind::Scattering { .. } => {
                provenance == Provenance::Born || provenance == Provenance::External
            }
        }
    }
}

/// Indicator values over a grid plus per-point diagnostic flags and wall
/// time.
#[derive(Debug, Clone)]
pub struct IndicatorField {
    pub grid: SamplingGrid,
    pub values: Vec<f64>,
    pub spec: IndicatorSpec,
    /// Bit 0 non-psd, bit 1 infeasible-cap, bit 2 stalled.
    pub flags: Vec<u8>,
    pub wall_seconds: f64,
    pub seconds_per_point: f64,
}

impl IndicatorField {
    pub fn from_values(grid: SamplingGrid, values: Vec<f64>, spec: IndicatorSpec) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch("field length vs grid size".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("field value".into()));
        }
        let flags = vec![0u8; values.len()];
        Ok(Self {
            grid,
            values,
            spec,
            flags,
            wall_seconds: 0.0,
            seconds_per_point: 0.0,
        })
    }

    pub fn min_max(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in &self.values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }

    /// Field restricted to a crop window (values copied by index).
    pub fn crop(&self, window: [f64; 4]) -> Result<IndicatorField> {
        let (grid, indices) = self.grid.crop(window)?;
        let values = indices.iter().map(|&i| self.values[i]).collect();
        let flags = indices.iter().map(|&i| self.flags[i]).collect();
        Ok(IndicatorField {
            grid,
            values,
            spec: self.spec.clone(),
            flags,
            wall_seconds: self.wall_seconds,
            seconds_per_point: self.seconds_per_point,
        })
    }
}

/// Sweep `spec` over the grid. `parallelism` <= 1 runs serially; any other
/// value runs on a pool of that many workers with identical output.
pub fn evaluate_field(
    data: &DataMatrix,
    grid: &SamplingGrid,
    spec: &IndicatorSpec,
    probe_kind: &ProbeKind,
    parallelism: usize,
) -> Result<IndicatorField> {
    if !probe_kind.matches(data.provenance()) {
        return Err(Error::ProbeMismatch(format!(
            "{} data needs the matching probe kind",
            data.provenance().as_str()
        )));
    }
    let expected_len = match probe_kind {
        ProbeKind::Aoa(geom) => geom.element_count(),
        ProbeKind::Scattering { surface, .. } => surface.len(),
    };
    if expected_len != data.cols() {
        return Err(Error::DimensionMismatch(format!(
            "probe length {} vs {} data columns",
            expected_len,
            data.cols()
        )));
    }

    let engine = IndicatorEngine::new(data, spec.clone())?;
    let n = grid.len();
    let started = Instant::now();
    let eval_one = |idx: usize| -> Result<(f64, u8)> {
        let probe = probe_kind.probe(grid.point(idx))?;
        let value = engine.evaluate(&probe)?;
        Ok((value.value, value.flag_bits()))
    };

    let results: Vec<(f64, u8)> = if parallelism <= 1 {
        let mut out = Vec::with_capacity(n);
        for idx in 0..n {
            out.push(eval_one(idx)?);
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parallelism)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {}", e)))?;
        pool.install(|| {
            (0..n)
                .into_par_iter()
                .map(eval_one)
                .collect::<Result<Vec<_>>>()
        })?
    };
    let wall = started.elapsed().as_secs_f64();

    let (values, flags): (Vec<f64>, Vec<u8>) = results.into_iter().unzip();
    Ok(IndicatorField {
        grid: grid.clone(),
        values,
        spec: spec.clone(),
        flags,
        wall_seconds: wall,
        seconds_per_point: wall / n as f64,
    })
}

/// One strict local maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub index: usize,
    pub position: [f64; 2],
    pub value: f64,
}

/// Peaks sorted descending by value.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakSet {
    pub peaks: Vec<Peak>,
}

impl PeakSet {
    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }
}

/// Strict local maxima over the full neighbor stencil (2 neighbors in 1-d,
/// 8 in 2-d; boundary points are not eligible) whose height above the global
/// minimum reaches `min_prominence x (max - min)`. Top `max_count` by value.
pub fn find_peaks(field: &IndicatorField, max_count: usize, min_prominence: f64) -> PeakSet {
    find_peaks_in(&field.grid, &field.values, max_count, min_prominence)
}

/// [`find_peaks`] on a raw value array.
pub fn find_peaks_in(
    grid: &SamplingGrid,
    values: &[f64],
    max_count: usize,
    min_prominence: f64,
) -> PeakSet {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let range = hi - lo;
    if range <= 0.0 {
        return PeakSet { peaks: Vec::new() };
    }
    let threshold = lo + min_prominence * range;

    let mut peaks: Vec<Peak> = Vec::new();
    for idx in 0..values.len() {
        let stencil = match grid.full_stencil(idx) {
            Some(s) => s,
            None => continue,
        };
        let v = values[idx];
        if v < threshold {
            continue;
        }
        if stencil.iter().all(|&j| values[j] < v) {
            peaks.push(Peak {
                index: idx,
                position: grid.point(idx),
                value: v,
            });
        }
    }
    peaks.sort_by(|a, b| {
        b.value
            .partial_cmp(&a.value)
            .unwrap()
            .then(a.index.cmp(&b.index))
    });
    peaks.truncate(max_count);
    PeakSet { peaks }
}

/// Wall time per spec, each swept single-threaded over the grid once.
/// Absolute numbers are machine-bound; only orderings are meaningful.
pub fn timing_report(
    data: &DataMatrix,
    grid: &SamplingGrid,
    specs: &[(String, IndicatorSpec)],
    probe_kind: &ProbeKind,
) -> Result<Vec<(String, f64)>> {
    if specs.is_empty() {
        return Err(Error::InvalidArgument("timing_report needs specs".into()));
    }
    let mut out = Vec::with_capacity(specs.len());
    for (label, spec) in specs {
        let field = evaluate_field(data, grid, spec, probe_kind, 1)?;
        out.push((label.clone(), field.wall_seconds));
    }
    Ok(out)
}
