//! Declarative experiment runner: config in, field/peak/heatmap/timing
//! files plus a manifest out.
//!
//! Output resolution order for the directory: CLI override, config
//! `[output] directory`, the `QINV_OUT_DIR` environment variable, then
//! `qinv_out`. All files are written atomically; the manifest is written
//! last and records a SHA-256 checksum per emitted file. On failure every
//! file written so far is removed.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use crate::config::{
    ExperimentConfig, ModelConfig, OutputFormat, ProbeGeometryConfig, ScattererSpec, SourceSpec,
    SurfaceConfig,
};
use crate::error::{Error, Result};
use crate::forward::{
    add_noise, synth_aoa, synth_born, ArrayGeometry, DataMatrix, MeasurementSurface, Scatterer,
    ScattererSet, Source, SourceSet,
};
use crate::grid::{evaluate_field, find_peaks, AxisSpec, ProbeKind, SamplingGrid};
use crate::io;
use crate::num::Prng;

/// Peak extraction parameters used for `peaks` outputs.
pub const PEAKS_MAX_COUNT: usize = 16;
pub const PEAKS_MIN_PROMINENCE: f64 = 0.1;

/// Command-line overrides applied on top of the config.
#[derive(Debug, Clone, Default)]
pub struct RunOverrides {
    pub out_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    /// File name (inside the output directory) for a CSV export of the
    /// analyzed data matrix, noise included.
    pub export_data: Option<String>,
}

/// What a run produced: one checksum per emitted file, stage timings, and
/// the canonical config echo.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub name: String,
    pub version: String,
    pub seed: u64,
    pub stage_seconds: Vec<(String, f64)>,
    /// (relative file name, sha256 hex) in emission order.
    pub outputs: Vec<(String, String)>,
    pub config_echo: String,
}

impl RunManifest {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("experiment: {}\n", self.name));
        out.push_str(&format!("qinv_version: {}\n", self.version));
        out.push_str(&format!("seed: {}\n", self.seed));
        for (stage, secs) in &self.stage_seconds {
            out.push_str(&format!("stage_seconds: {} {:.6}\n", stage, secs));
        }
        for (file, digest) in &self.outputs {
            out.push_str(&format!("output: {} sha256={}\n", file, digest));
        }
        out.push_str("config:\n");
        for line in self.config_echo.lines() {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

/// Synthesized (or loaded) data plus the probe recipe it pairs with.
pub struct PreparedData {
    pub data: DataMatrix,
    pub probe_kind: ProbeKind,
    pub seed: u64,
}

fn surface_from_config(cfg: &SurfaceConfig) -> Result<MeasurementSurface> {
    match cfg {
        SurfaceConfig::Circle {
            radius,
            center,
            transceivers,
        } => MeasurementSurface::full_circle(*center, *radius, *transceivers),
        SurfaceConfig::HalfCircle {
            radius,
            center,
            transceivers,
        } => MeasurementSurface::half_circle(*center, *radius, *transceivers),
        SurfaceConfig::QuarterCircle {
            radius,
            center,
            transceivers,
        } => MeasurementSurface::quarter_circle(*center, *radius, *transceivers),
        SurfaceConfig::Points(points) => {
            MeasurementSurface::from_points(points.iter().map(|p| [p[0], p[1], 0.0]).collect(), 2)
        }
    }
}

fn geometry_from_parts(
    elements_x: usize,
    elements_y: usize,
    spacing_x: f64,
    spacing_y: f64,
    wavenumber: f64,
) -> Result<ArrayGeometry> {
    ArrayGeometry::new(spacing_x, spacing_y, elements_x, elements_y, wavenumber)
}

/// Build the clean data matrix and probe recipe for a config, then apply
/// noise. The effective noise seed is the override when present, else the
/// config's.
pub fn prepare_data(config: &ExperimentConfig, overrides: &RunOverrides) -> Result<PreparedData> {
    let seed = overrides.seed.unwrap_or(config.noise.seed);
    let (clean, probe_kind) = match &config.model {
        ModelConfig::Aoa(a) => {
            let geom = geometry_from_parts(
                a.elements_x,
                a.elements_y,
                a.spacing_x,
                a.spacing_y,
                a.wavenumber,
            )?;
            let sources = match &a.sources {
                SourceSpec::Explicit(list) => SourceSet::new(
                    list.iter()
                        .map(|s| Source {
                            u: s[0],
                            v: s[1],
                            amplitude: Complex64::new(s[2], s[3]),
                        })
                        .collect(),
                    a.time_samples,
                    a.time_step,
                )?,
                SourceSpec::Random { count, seed } => {
                    SourceSet::random_1d(*count, *seed, a.time_samples, a.time_step)?
                }
            };
            (synth_aoa(&geom, &sources), ProbeKind::Aoa(geom))
        }
        ModelConfig::Born(b) => {
            let surface = surface_from_config(&b.surface)?;
            let scatterers = match &b.scatterers {
                ScattererSpec::Explicit(list) => ScattererSet::new(
                    list.iter()
                        .map(|s| Scatterer {
                            position: [s[0], s[1], 0.0],
                            contrast: Complex64::new(s[2], s[3]),
                        })
                        .collect(),
                )?,
                ScattererSpec::Random {
                    count,
                    seed,
                    bounds,
                } => ScattererSet::random_in_box(
                    *count,
                    *seed,
                    (bounds[0], bounds[1]),
                    (bounds[2], bounds[3]),
                )?,
            };
            let data = synth_born(&scatterers, &surface, b.wavenumber)?;
            (
                data,
                ProbeKind::Scattering {
                    surface,
                    wavenumber: b.wavenumber,
                },
            )
        }
        ModelConfig::LoadCsv(l) => {
            let data = io::read_data_csv(&l.path)?;
            let probe_kind = match &l.probe {
                ProbeGeometryConfig::Aoa {
                    elements_x,
                    elements_y,
                    spacing_x,
                    spacing_y,
                    wavenumber,
                } => ProbeKind::Aoa(geometry_from_parts(
                    *elements_x,
                    *elements_y,
                    *spacing_x,
                    *spacing_y,
                    *wavenumber,
                )?),
                ProbeGeometryConfig::Scattering {
                    surface,
                    wavenumber,
                } => {
                    let k = wavenumber.or(data.wavenumber).ok_or_else(|| {
                        Error::InvalidArgument(
                            "no wavenumber in config or CSV header for scattering probes".into(),
                        )
                    })?;
                    ProbeKind::Scattering {
                        surface: surface_from_config(surface)?,
                        wavenumber: k,
                    }
                }
            };
            (data, probe_kind)
        }
    };

    let data = match config.noise.snr {
        Some(snr) => add_noise(&clean, snr, &mut Prng::seed(seed)),
        None => clean,
    };
    Ok(PreparedData {
        data,
        probe_kind,
        seed,
    })
}

pub fn grid_from_config(config: &ExperimentConfig) -> Result<SamplingGrid> {
    let x = AxisSpec::new(config.grid.x.0, config.grid.x.1, config.grid.x.2)?;
    match config.grid.y {
        Some(y) => Ok(SamplingGrid::new_2d(x, AxisSpec::new(y.0, y.1, y.2)?)),
        None => SamplingGrid::new_1d(config.grid.x.0, config.grid.x.1, config.grid.x.2),
    }
}

/// Run a validated config end to end. Writes every requested output
/// atomically, the manifest last; on any failure the files written so far
/// are removed and the error is returned.
pub fn run_experiment(config: &ExperimentConfig, overrides: &RunOverrides) -> Result<RunManifest> {
    let out_dir = resolve_out_dir(config, overrides);
    std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
    let mut written: Vec<PathBuf> = Vec::new();
    match run_inner(config, overrides, &out_dir, &mut written) {
        Ok(manifest) => Ok(manifest),
        Err(e) => {
            for path in written {
                let _ = std::fs::remove_file(path);
            }
            Err(e)
        }
    }
}

fn run_inner(
    config: &ExperimentConfig,
    overrides: &RunOverrides,
    out_dir: &Path,
    written: &mut Vec<PathBuf>,
) -> Result<RunManifest> {
    let threads = overrides.threads.unwrap_or(1).max(1);
    let mut stage_seconds: Vec<(String, f64)> = Vec::new();
    let mut outputs: Vec<(String, String)> = Vec::new();

    let started = Instant::now();
    let prepared = prepare_data(config, overrides)?;
    let grid = grid_from_config(config)?;
    stage_seconds.push(("prepare".into(), started.elapsed().as_secs_f64()));

    let mut emit = |name: String, bytes: &[u8], written: &mut Vec<PathBuf>| -> Result<()> {
        let path = out_dir.join(&name);
        io::write_atomic(&path, bytes)?;
        written.push(path);
        outputs.push((name, sha256_hex(bytes)));
        Ok(())
    };

    if let Some(name) = &overrides.export_data {
        let text = io::data_csv_string(&prepared.data);
        emit(name.clone(), text.as_bytes(), written)?;
    }

    for indicator in &config.indicators {
        let started = Instant::now();
        let field = evaluate_field(
            &prepared.data,
            &grid,
            &indicator.spec,
            &prepared.probe_kind,
            threads,
        )?;
        let view = match config.output.crop {
            Some(window) => field.crop(window)?,
            None => field,
        };
        stage_seconds.push((
            format!("evaluate:{}", indicator.label),
            started.elapsed().as_secs_f64(),
        ));

        for format in &config.output.formats {
            match format {
                OutputFormat::Csv => {
                    let text = io::field_csv_string(&view, config.output.log_scale);
                    emit(format!("{}.csv", indicator.label), text.as_bytes(), written)?;
                }
                OutputFormat::Pgm => {
                    let bytes = io::pgm_bytes(&view, config.output.log_scale)?;
                    emit(format!("{}.pgm", indicator.label), &bytes, written)?;
                }
                OutputFormat::Peaks => {
                    let peaks = find_peaks(&view, PEAKS_MAX_COUNT, PEAKS_MIN_PROMINENCE);
                    let text = io::peaks_csv_string(&peaks, view.grid.dimension());
                    emit(
                        format!("{}_peaks.csv", indicator.label),
                        text.as_bytes(),
                        written,
                    )?;
                }
                OutputFormat::Timing => {} // handled once below
            }
        }
    }

    if config.output.formats.contains(&OutputFormat::Timing) {
        let started = Instant::now();
        let specs: Vec<(String, crate::indicators::IndicatorSpec)> = config
            .indicators
            .iter()
            .map(|i| (i.label.clone(), i.spec.clone()))
            .collect();
        let report =
            crate::grid::timing_report(&prepared.data, &grid, &specs, &prepared.probe_kind)?;
        let mut text = String::from("label,method,wall_seconds\n");
        for ((label, secs), indicator) in report.iter().zip(&config.indicators) {
            text.push_str(&format!(
                "{},{},{:.6}\n",
                label,
                indicator.spec.method_name(),
                secs
            ));
        }
        emit("timing.csv".into(), text.as_bytes(), written)?;
        stage_seconds.push(("timing".into(), started.elapsed().as_secs_f64()));
    }

    let manifest = RunManifest {
        name: config.name.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: prepared.seed,
        stage_seconds,
        outputs,
        config_echo: crate::config::serialize_config(config),
    };
    let manifest_path = out_dir.join("manifest.txt");
    io::write_atomic(&manifest_path, manifest.to_text().as_bytes())?;
    written.push(manifest_path);
    Ok(manifest)
}

pub fn resolve_out_dir(config: &ExperimentConfig, overrides: &RunOverrides) -> PathBuf {
    if let Some(dir) = &overrides.out_dir {
        return dir.clone();
    }
    if let Some(dir) = &config.output.directory {
        return dir.clone();
    }
    if let Some(dir) = std::env::var_os("QINV_OUT_DIR") {
        return PathBuf::from(dir);
    }
    PathBuf::from("qinv_out")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{:02x}", b));
    }
    out
}
