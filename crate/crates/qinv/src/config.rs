//! Declarative experiment configs: a line-based section/key-value format.
//!
//! ```text
//! name = fig3
//!
//! [model.aoa]              # exactly one [model.*] section
//! elements_x = 20
//! spacing_x = 2.631578947368421
//! time_samples = 20
//! time_step = 2.631578947368421
//! random_sources = 8
//! source_seed = 7
//!
//! [noise]
//! snr = 300000             # number or 'off'
//! seed = 1
//!
//! [indicator]              # repeatable
//! label = kdsm8
//! method = kdsm
//! sparsity = 8
//!
//! [output]
//! formats = csv peaks
//! ```
//!
//! `#` starts a comment; values with several fields are whitespace
//! separated. Parsing validates everything it can see and reports *all*
//! problems, each with its line number; run-time concerns (file existence,
//! geometry/data consistency) stay in the runner.

use std::path::PathBuf;

use crate::error::ConfigError;
use crate::indicators::{IndicatorSpec, LossMode, ToleranceMode};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub model: ModelConfig,
    pub noise: NoiseConfig,
    pub grid: GridConfig,
    pub indicators: Vec<IndicatorConfig>,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelConfig {
    Aoa(AoaModelConfig),
    Born(BornModelConfig),
    LoadCsv(LoadCsvConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AoaModelConfig {
    pub elements_x: usize,
    pub elements_y: usize,
    pub spacing_x: f64,
    pub spacing_y: f64,
    pub wavenumber: f64,
    pub time_samples: usize,
    pub time_step: f64,
    pub sources: SourceSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SourceSpec {
    /// Each entry: u, v, amplitude (re, im).
    Explicit(Vec<[f64; 4]>),
    /// u uniform in [-1, 1], v = 0, unit amplitudes.
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceConfig {
    Circle {
        radius: f64,
        center: [f64; 2],
        transceivers: usize,
    },
    HalfCircle {
        radius: f64,
        center: [f64; 2],
        transceivers: usize,
    },
    QuarterCircle {
        radius: f64,
        center: [f64; 2],
        transceivers: usize,
    },
    Points(Vec<[f64; 2]>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BornModelConfig {
    pub wavenumber: f64,
    pub dimension: usize,
    pub surface: SurfaceConfig,
    pub scatterers: ScattererSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScattererSpec {
    /// Each entry: x, y, contrast (re, im).
    Explicit(Vec<[f64; 4]>),
    /// Unit contrasts drawn uniformly in the box [x0, x1] x [y0, y1].
    Random {
        count: usize,
        seed: u64,
        bounds: [f64; 4],
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProbeGeometryConfig {
    Aoa {
        elements_x: usize,
        elements_y: usize,
        spacing_x: f64,
        spacing_y: f64,
        wavenumber: f64,
    },
    Scattering {
        surface: SurfaceConfig,
        /// Falls back to the CSV header's wavenumber when absent.
        wavenumber: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadCsvConfig {
    pub path: PathBuf,
    pub probe: ProbeGeometryConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseConfig {
    /// None means noise off.
    pub snr: Option<f64>,
    pub seed: u64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self { snr: None, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub x: (f64, f64, usize),
    /// Present exactly for 2-d grids.
    pub y: Option<(f64, f64, usize)>,
}

impl GridConfig {
    pub fn dimension(&self) -> usize {
        if self.y.is_some() {
            2
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorConfig {
    pub label: String,
    pub spec: IndicatorSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Pgm,
    Peaks,
    Timing,
}

impl OutputFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Pgm => "pgm",
            OutputFormat::Peaks => "peaks",
            OutputFormat::Timing => "timing",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub directory: Option<PathBuf>,
    pub formats: Vec<OutputFormat>,
    pub log_scale: bool,
    pub crop: Option<[f64; 4]>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            directory: None,
            formats: vec![OutputFormat::Csv],
            log_scale: false,
            crop: None,
        }
    }
}

// ---------------------------------------------------------------------------
// Tokenizer

struct Entry {
    line: usize,
    key: String,
    value: String,
}

struct Section {
    line: usize,
    name: String,
    entries: Vec<Entry>,
}

fn tokenize(text: &str) -> (Vec<Entry>, Vec<Section>, Vec<ConfigError>) {
    let mut errors = Vec::new();
    let mut top = Vec::new();
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            match rest.strip_suffix(']') {
                Some(name) if !name.trim().is_empty() => sections.push(Section {
                    line,
                    name: name.trim().to_string(),
                    entries: Vec::new(),
                }),
                _ => errors.push(ConfigError::new(line, "malformed section header")),
            }
            continue;
        }
        match trimmed.split_once('=') {
            Some((key, value)) if !key.trim().is_empty() => {
                let entry = Entry {
                    line,
                    key: key.trim().to_string(),
                    value: value.trim().to_string(),
                };
                match sections.last_mut() {
                    Some(section) => section.entries.push(entry),
                    None => top.push(entry),
                }
            }
            _ => errors.push(ConfigError::new(line, "expected 'key = value'")),
        }
    }
    (top, sections, errors)
}

// ---------------------------------------------------------------------------
// Section reader

struct Reader {
    entries: Vec<Entry>,
    used: Vec<bool>,
}

impl Reader {
    fn new(entries: Vec<Entry>) -> Self {
        let used = vec![false; entries.len()];
        Self { entries, used }
    }

    /// Single-valued key; duplicates are reported.
    fn scalar(&mut self, key: &str, errors: &mut Vec<ConfigError>) -> Option<(usize, String)> {
        let mut found: Option<(usize, String)> = None;
        for (i, e) in self.entries.iter().enumerate() {
            if e.key == key {
                self.used[i] = true;
                if found.is_some() {
                    errors.push(ConfigError::new(e.line, format!("duplicate key '{}'", key)));
                } else {
                    found = Some((e.line, e.value.clone()));
                }
            }
        }
        found
    }

    /// Repeatable key, in order.
    fn repeated(&mut self, key: &str) -> Vec<(usize, String)> {
        let mut out = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            if e.key == key {
                self.used[i] = true;
                out.push((e.line, e.value.clone()));
            }
        }
        out
    }

    /// Report every key nobody consumed.
    fn finish(self, context: &str, errors: &mut Vec<ConfigError>) {
        for (e, used) in self.entries.iter().zip(&self.used) {
            if !used {
                errors.push(ConfigError::new(
                    e.line,
                    format!("unknown key '{}' in {}", e.key, context),
                ));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Value parsers (all collect instead of failing fast)

fn parse_f64(line: usize, key: &str, value: &str, errors: &mut Vec<ConfigError>) -> Option<f64> {
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() => Some(v),
        _ => {
            errors.push(ConfigError::new(
                line,
                format!("'{}' must be a finite number, got '{}'", key, value),
            ));
            None
        }
    }
}

fn parse_positive_f64(
    line: usize,
    key: &str,
    value: &str,
    errors: &mut Vec<ConfigError>,
) -> Option<f64> {
    let v = parse_f64(line, key, value, errors)?;
    if v > 0.0 {
        Some(v)
    } else {
        errors.push(ConfigError::new(
            line,
            format!("'{}' must be positive, got {}", key, v),
        ));
        None
    }
}

fn parse_usize(
    line: usize,
    key: &str,
    value: &str,
    errors: &mut Vec<ConfigError>,
) -> Option<usize> {
    match value.parse::<usize>() {
        Ok(v) => Some(v),
        Err(_) => {
            errors.push(ConfigError::new(
                line,
                format!("'{}' must be a nonnegative integer, got '{}'", key, value),
            ));
            None
        }
    }
}

fn parse_u64(line: usize, key: &str, value: &str, errors: &mut Vec<ConfigError>) -> Option<u64> {
    match value.parse::<u64>() {
        Ok(v) => Some(v),
        Err(_) => {
            errors.push(ConfigError::new(
                line,
                format!(
                    "'{}' must be a 64-bit unsigned integer, got '{}'",
                    key, value
                ),
            ));
            None
        }
    }
}

fn parse_bool(line: usize, key: &str, value: &str, errors: &mut Vec<ConfigError>) -> Option<bool> {
    match value {
        "true" => Some(true),
        "false" => Some(false),
        _ => {
            errors.push(ConfigError::new(
                line,
                format!("'{}' must be true or false, got '{}'", key, value),
            ));
            None
        }
    }
}

fn parse_f64_list(
    line: usize,
    key: &str,
    value: &str,
    expected: usize,
    errors: &mut Vec<ConfigError>,
) -> Option<Vec<f64>> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    if parts.len() != expected {
        errors.push(ConfigError::new(
            line,
            format!(
                "'{}' expects {} whitespace-separated numbers, got {}",
                key,
                expected,
                parts.len()
            ),
        ));
        return None;
    }
    let mut out = Vec::with_capacity(expected);
    for p in parts {
        match p.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            _ => {
                errors.push(ConfigError::new(
                    line,
                    format!("'{}' has a non-numeric field '{}'", key, p),
                ));
                return None;
            }
        }
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// Parsing

/// Parse and validate. Returns the config with defaults filled, or every
/// problem found (not just the first).
pub fn parse_config(text: &str) -> Result<ExperimentConfig, Vec<ConfigError>> {
    let (top, sections, mut errors) = tokenize(text);

    // Top-level: only `name`.
    let mut name = None;
    let mut top_reader = Reader::new(top);
    if let Some((line, value)) = top_reader.scalar("name", &mut errors) {
        if value.is_empty() {
            errors.push(ConfigError::new(line, "'name' must not be empty"));
        } else {
            name = Some(value);
        }
    }
    top_reader.finish("the top level", &mut errors);
    if name.is_none() && errors.iter().all(|e| !e.message.contains("'name'")) {
        errors.push(ConfigError::new(0, "missing required top-level key 'name'"));
    }

    let mut model: Option<ModelConfig> = None;
    let mut model_line = 0usize;
    let mut noise: Option<NoiseConfig> = None;
    let mut grid: Option<GridConfig> = None;
    let mut indicators: Vec<IndicatorConfig> = Vec::new();
    let mut output: Option<OutputConfig> = None;

    for section in sections {
        let reader = Reader::new(section.entries);
        match section.name.as_str() {
            "model.aoa" | "model.born" | "model.load_csv" => {
                if model.is_some() {
                    errors.push(ConfigError::new(
                        section.line,
                        "more than one forward-model section",
                    ));
                    continue;
                }
                model_line = section.line;
                let parsed =
                    match section.name.as_str() {
                        "model.aoa" => {
                            parse_aoa_model(reader, section.line, &mut errors).map(ModelConfig::Aoa)
                        }
                        "model.born" => parse_born_model(reader, section.line, &mut errors)
                            .map(ModelConfig::Born),
                        _ => parse_load_csv(reader, section.line, &mut errors)
                            .map(ModelConfig::LoadCsv),
                    };
                model = parsed;
            }
            "noise" => {
                if noise.is_some() {
                    errors.push(ConfigError::new(section.line, "duplicate [noise] section"));
                    continue;
                }
                noise = parse_noise(reader, &mut errors);
            }
            "grid" => {
                if grid.is_some() {
                    errors.push(ConfigError::new(section.line, "duplicate [grid] section"));
                    continue;
                }
                grid = parse_grid(reader, section.line, &mut errors);
            }
            "indicator" => {
                if let Some(ind) = parse_indicator(reader, section.line, &mut errors) {
                    indicators.push(ind);
                }
            }
            "output" => {
                if output.is_some() {
                    errors.push(ConfigError::new(section.line, "duplicate [output] section"));
                    continue;
                }
                output = parse_output(reader, &mut errors);
            }
            other => {
                errors.push(ConfigError::new(
                    section.line,
                    format!("unknown section '[{}]'", other),
                ));
            }
        }
    }

    if model.is_none() && model_line == 0 {
        errors.push(ConfigError::new(
            0,
            "missing forward-model section ([model.aoa], [model.born], or [model.load_csv])",
        ));
    }
    if indicators.is_empty() {
        errors.push(ConfigError::new(
            0,
            "at least one [indicator] section is required",
        ));
    }

    // Default labels, then uniqueness.
    for i in 0..indicators.len() {
        for j in (i + 1)..indicators.len() {
            if indicators[i].label == indicators[j].label {
                errors.push(ConfigError::new(
                    0,
                    format!(
                        "indicator label '{}' used more than once",
                        indicators[i].label
                    ),
                ));
            }
        }
    }

    let output = output.unwrap_or_default();
    let grid = match (grid, &model) {
        (Some(g), _) => Some(g),
        (None, Some(m)) => Some(default_grid(m)),
        (None, None) => None,
    };

    // Cross checks that need the resolved grid.
    if let Some(g) = &grid {
        if g.dimension() == 1 && output.formats.contains(&OutputFormat::Pgm) {
            errors.push(ConfigError::new(
                0,
                "pgm output requires a 2-d grid; use csv for 1-d fields",
            ));
        }
        if let Some(c) = output.crop {
            if g.dimension() == 2 && !(c[2] < c[3]) {
                errors.push(ConfigError::new(0, "crop y bounds must satisfy y0 < y1"));
            }
        }
    }
    // The quadratic loss needs square data; square-ness is a run-time
    // property for load_csv, but synthesized array snapshots are only square
    // when time_samples equals the element count, which is checkable here.
    if let (Some(ModelConfig::Aoa(a)), false) = (&model, indicators.is_empty()) {
        let square = a.time_samples == a.elements_x * a.elements_y;
        if !square {
            for ind in &indicators {
                let quadratic = matches!(
                    ind.spec,
                    IndicatorSpec::Dsm {
                        loss: LossMode::Quadratic
                    } | IndicatorSpec::KDsm {
                        loss: LossMode::Quadratic,
                        ..
                    } | IndicatorSpec::ErrDsm {
                        loss: LossMode::Quadratic,
                        ..
                    } | IndicatorSpec::InfCrit {
                        loss: LossMode::Quadratic
                    }
                );
                if quadratic {
                    errors.push(ConfigError::new(
                        0,
                        format!(
                            "indicator '{}' uses loss = 1 but the snapshot matrix is not square",
                            ind.label
                        ),
                    ));
                }
            }
        }
    }

    if !errors.is_empty() {
        return Err(errors);
    }
    Ok(ExperimentConfig {
        name: name.expect("validated above"),
        model: model.expect("validated above"),
        noise: noise.unwrap_or_default(),
        grid: grid.expect("model present implies a grid"),
        indicators,
        output,
    })
}

fn default_grid(model: &ModelConfig) -> GridConfig {
    match model {
        ModelConfig::Aoa(a) => {
            let planar = a.elements_y > 1
                || matches!(&a.sources, SourceSpec::Explicit(list) if list.iter().any(|s| s[1] != 0.0));
            if planar {
                GridConfig {
                    x: (-1.0, 1.0, 201),
                    y: Some((-1.0, 1.0, 201)),
                }
            } else {
                GridConfig {
                    x: (-1.0, 1.0, 400),
                    y: None,
                }
            }
        }
        ModelConfig::Born(_) | ModelConfig::LoadCsv(_) => GridConfig {
            x: (-2.0, 2.0, 200),
            y: Some((-2.0, 2.0, 200)),
        },
    }
}

fn parse_surface(
    reader: &mut Reader,
    section_line: usize,
    errors: &mut Vec<ConfigError>,
) -> Option<SurfaceConfig> {
    let kind = reader.scalar("surface", errors);
    let radius = reader.scalar("radius", errors);
    let center = reader.scalar("center", errors);
    let transceivers = reader.scalar("transceivers", errors);
    let points = reader.repeated("point");

    let kind = match kind {
        Some((line, v)) => (line, v),
        None => {
            errors.push(ConfigError::new(
                section_line,
                "missing required key 'surface' (circle | half_circle | quarter_circle | points)",
            ));
            return None;
        }
    };

    if kind.1 == "points" {
        for (key, present) in [("radius", &radius), ("transceivers", &transceivers)] {
            if let Some((line, _)) = present {
                errors.push(ConfigError::new(
                    *line,
                    format!("'{}' is not allowed when surface = points", key),
                ));
            }
        }
        let mut list = Vec::new();
        for (line, value) in &points {
            if let Some(v) = parse_f64_list(*line, "point", value, 2, errors) {
                list.push([v[0], v[1]]);
            }
        }
        if list.is_empty() {
            errors.push(ConfigError::new(
                kind.0,
                "surface = points needs at least one 'point = x y' line",
            ));
            return None;
        }
        return Some(SurfaceConfig::Points(list));
    }

    for (line, _) in &points {
        errors.push(ConfigError::new(
            *line,
            "'point' lines are only allowed when surface = points",
        ));
    }
    let radius = radius
        .and_then(|(line, v)| parse_positive_f64(line, "radius", &v, errors))
        .or_else(|| {
            errors.push(ConfigError::new(kind.0, "missing required key 'radius'"));
            None
        })?;
    let center = match center {
        Some((line, v)) => {
            let c = parse_f64_list(line, "center", &v, 2, errors)?;
            [c[0], c[1]]
        }
        None => [0.0, 0.0],
    };
    let transceivers = transceivers
        .and_then(|(line, v)| parse_usize(line, "transceivers", &v, errors))
        .or_else(|| {
            errors.push(ConfigError::new(
                kind.0,
                "missing required key 'transceivers'",
            ));
            None
        })?;
    if transceivers < 2 {
        errors.push(ConfigError::new(
            kind.0,
            "'transceivers' must be at least 2",
        ));
        return None;
    }

    match kind.1.as_str() {
        "circle" => Some(SurfaceConfig::Circle {
            radius,
            center,
            transceivers,
        }),
        "half_circle" => Some(SurfaceConfig::HalfCircle {
            radius,
            center,
            transceivers,
        }),
        "quarter_circle" => Some(SurfaceConfig::QuarterCircle {
            radius,
            center,
            transceivers,
        }),
        other => {
            errors.push(ConfigError::new(
                kind.0,
                format!(
                    "surface '{}' not one of circle, half_circle, quarter_circle, points",
                    other
                ),
            ));
            None
        }
    }
}

fn parse_aoa_geometry(
    reader: &mut Reader,
    section_line: usize,
    errors: &mut Vec<ConfigError>,
) -> Option<(usize, usize, f64, f64, f64)> {
    let elements_x = match reader.scalar("elements_x", errors) {
        Some((line, v)) => parse_usize(line, "elements_x", &v, errors).filter(|&n| {
            if n < 1 {
                errors.push(ConfigError::new(line, "'elements_x' must be at least 1"));
            }
            n >= 1
        }),
        None => {
            errors.push(ConfigError::new(
                section_line,
                "missing required key 'elements_x'",
            ));
            None
        }
    };
    let elements_y = match reader.scalar("elements_y", errors) {
        Some((line, v)) => parse_usize(line, "elements_y", &v, errors).filter(|&n| {
            if n < 1 {
                errors.push(ConfigError::new(line, "'elements_y' must be at least 1"));
            }
            n >= 1
        }),
        None => Some(1),
    };
    let spacing_x = match reader.scalar("spacing_x", errors) {
        Some((line, v)) => parse_positive_f64(line, "spacing_x", &v, errors),
        None => {
            errors.push(ConfigError::new(
                section_line,
                "missing required key 'spacing_x'",
            ));
            None
        }
    };
    let spacing_y = match reader.scalar("spacing_y", errors) {
        Some((line, v)) => parse_positive_f64(line, "spacing_y", &v, errors),
        None => Some(1.0),
    };
    let wavenumber = match reader.scalar("wavenumber", errors) {
        Some((line, v)) => parse_positive_f64(line, "wavenumber", &v, errors),
        None => Some(1.0),
    };
    Some((
        elements_x?,
        elements_y?,
        spacing_x?,
        spacing_y?,
        wavenumber?,
    ))
}

fn parse_aoa_model(
    mut reader: Reader,
    section_line: usize,
    errors: &mut Vec<ConfigError>,
) -> Option<AoaModelConfig> {
    let geom = parse_aoa_geometry(&mut reader, section_line, errors);
    let time_samples = match reader.scalar("time_samples", errors) {
        Some((line, v)) => parse_usize(line, "time_samples", &v, errors).filter(|&n| {
            if n < 1 {
                errors.push(ConfigError::new(line, "'time_samples' must be at least 1"));
            }
            n >= 1
        }),
        None => {
            errors.push(ConfigError::new(
                section_line,
                "missing required key 'time_samples'",
            ));
            None
        }
    };
    let time_step = match reader.scalar("time_step", errors) {
        Some((line, v)) => parse_positive_f64(line, "time_step", &v, errors),
        None => {
            errors.push(ConfigError::new(
                section_line,
                "missing required key 'time_step'",
            ));
            None
        }
    };

    let explicit = reader.repeated("source");
    let random_count = reader.scalar("random_sources", errors);
    let random_seed = reader.scalar("source_seed", errors);
    let sources = parse_source_spec(explicit, random_count, random_seed, section_line, errors);
    reader.finish("[model.aoa]", errors);

    let (elements_x, elements_y, spacing_x, spacing_y, wavenumber) = geom?;
    Some(AoaModelConfig {
        elements_x,
        elements_y,
        spacing_x,
        spacing_y,
        wavenumber,
        time_samples: time_samples?,
        time_step: time_step?,
        sources: sources?,
    })
}

fn parse_source_spec(
    explicit: Vec<(usize, String)>,
    random_count: Option<(usize, String)>,
    random_seed: Option<(usize, String)>,
    section_line: usize,
    errors: &mut Vec<ConfigError>,
) -> Option<SourceSpec> {
    match (&explicit[..], &random_count) {
        ([], None) => {
            errors.push(ConfigError::new(
                section_line,
                "need 'source' lines or 'random_sources'",
            ));
            None
        }
        ([], Some((line, v))) => {
            let count = parse_usize(*line, "random_sources", v, errors)?;
            if count == 0 {
                errors.push(ConfigError::new(
                    *line,
                    "'random_sources' must be at least 1",
                ));
                return None;
            }
            let seed = match random_seed {
                Some((sline, sv)) => parse_u64(sline, "source_seed", &sv, errors)?,
                None => {
                    errors.push(ConfigError::new(
                        *line,
                        "'random_sources' requires 'source_seed'",
                    ));
                    return None;
                }
            };
            Some(SourceSpec::Random { count, seed })
        }
        (_, Some((line, _))) => {
            errors.push(ConfigError::new(
                *line,
                "'random_sources' conflicts with explicit 'source' lines",
            ));
            None
        }
        (_, None) => {
            if let Some((line, _)) = random_seed {
                errors.push(ConfigError::new(
                    line,
                    "'source_seed' needs 'random_sources'",
                ));
            }
            let mut list = Vec::new();
            let mut ok = true;
            for (line, value) in &explicit {
                match parse_f64_list(*line, "source", value, 4, errors) {
                    Some(v) => {
                        if v[0].abs() > 1.0 || v[1].abs() > 1.0 {
                            errors.push(ConfigError::new(
                                *line,
                                "source direction cosines must lie in [-1, 1]",
                            ));
                            ok = false;
                        }
                        if v[2] == 0.0 && v[3] == 0.0 {
                            errors
                                .push(ConfigError::new(*line, "source amplitude must be nonzero"));
                            ok = false;
                        }
                        list.push([v[0], v[1], v[2], v[3]]);
                    }
                    None => ok = false,
                }
            }
            if ok {
                Some(SourceSpec::Explicit(list))
            } else {
                None
            }
        }
    }
}

fn parse_born_model(
    mut reader: Reader,
    section_line: usize,
    errors: &mut Vec<ConfigError>,
) -> Option<BornModelConfig> {
    let wavenumber = match reader.scalar("wavenumber", errors) {
        Some((line, v)) => parse_positive_f64(line, "wavenumber", &v, errors),
        None => {
            errors.push(ConfigError::new(
                section_line,
                "missing required key 'wavenumber'",
            ));
            None
        }
    };
    let dimension = match reader.scalar("dimension", errors) {
        Some((line, v)) => parse_usize(line, "dimension", &v, errors).filter(|&d| {
            if d != 2 && d != 3 {
                errors.push(ConfigError::new(line, "'dimension' must be 2 or 3"));
            }
            d == 2 || d == 3
        }),
        None => Some(2),
    };
    let surface = parse_surface(&mut reader, section_line, errors);

    let explicit = reader.repeated("scatterer");
    let random_count = reader.scalar("random_scatterers", errors);
    let random_seed = reader.scalar("scatterer_seed", errors);
    let random_box = reader.scalar("scatterer_box", errors);
    let scatterers = match (&explicit[..], &random_count) {
        ([], None) => {
            errors.push(ConfigError::new(
                section_line,
                "need 'scatterer' lines or 'random_scatterers'",
            ));
            None
        }
        ([], Some((line, v))) => {
            let count = parse_usize(*line, "random_scatterers", v, errors).filter(|&c| {
                if c == 0 {
                    errors.push(ConfigError::new(
                        *line,
                        "'random_scatterers' must be at least 1",
                    ));
                }
                c > 0
            });
            let seed = match &random_seed {
                Some((sline, sv)) => parse_u64(*sline, "scatterer_seed", sv, errors),
                None => {
                    errors.push(ConfigError::new(
                        *line,
                        "'random_scatterers' requires 'scatterer_seed'",
                    ));
                    None
                }
            };
            let bounds = match &random_box {
                Some((bline, bv)) => parse_f64_list(*bline, "scatterer_box", bv, 4, errors)
                    .filter(|b| {
                        let ok = b[0] < b[1] && b[2] < b[3];
                        if !ok {
                            errors.push(ConfigError::new(
                                *bline,
                                "'scatterer_box' must satisfy x0 < x1 and y0 < y1",
                            ));
                        }
                        ok
                    })
                    .map(|b| [b[0], b[1], b[2], b[3]]),
                None => Some([-1.5, 1.5, -1.5, 1.5]),
            };
            match (count, seed, bounds) {
                (Some(count), Some(seed), Some(bounds)) => Some(ScattererSpec::Random {
                    count,
                    seed,
                    bounds,
                }),
                _ => None,
            }
        }
        (_, Some((line, _))) => {
            errors.push(ConfigError::new(
                *line,
                "'random_scatterers' conflicts with explicit 'scatterer' lines",
            ));
            None
        }
        (_, None) => {
            for (key, present) in [
                ("scatterer_seed", &random_seed),
                ("scatterer_box", &random_box),
            ] {
                if let Some((line, _)) = present {
                    errors.push(ConfigError::new(
                        *line,
                        format!("'{}' needs 'random_scatterers'", key),
                    ));
                }
            }
            let mut list = Vec::new();
            let mut ok = true;
            for (line, value) in &explicit {
                match parse_f64_list(*line, "scatterer", value, 4, errors) {
                    Some(v) => {
                        if v[2] == 0.0 && v[3] == 0.0 {
                            errors.push(ConfigError::new(
                                *line,
                                "scatterer contrast must be nonzero",
                            ));
                            ok = false;
                        }
                        list.push([v[0], v[1], v[2], v[3]]);
                    }
                    None => ok = false,
                }
            }
            if ok {
                Some(ScattererSpec::Explicit(list))
            } else {
                None
            }
        }
    };
    reader.finish("[model.born]", errors);

    Some(BornModelConfig {
        wavenumber: wavenumber?,
        dimension: dimension?,
        surface: surface?,
        scatterers: scatterers?,
    })
}

fn parse_load_csv(
    mut reader: Reader,
    section_line: usize,
    errors: &mut Vec<ConfigError>,
) -> Option<LoadCsvConfig> {
    let path = match reader.scalar("path", errors) {
        Some((line, v)) => {
            if v.is_empty() {
                errors.push(ConfigError::new(line, "'path' must not be empty"));
                None
            } else {
                Some(PathBuf::from(v))
            }
        }
        None => {
            errors.push(ConfigError::new(
                section_line,
                "missing required key 'path'",
            ));
            None
        }
    };
    let probe = match reader.scalar("probe", errors) {
        Some((_, v)) if v == "aoa" => parse_aoa_geometry(&mut reader, section_line, errors).map(
            |(elements_x, elements_y, spacing_x, spacing_y, wavenumber)| ProbeGeometryConfig::Aoa {
                elements_x,
                elements_y,
                spacing_x,
                spacing_y,
                wavenumber,
            },
        ),
        Some((_, v)) if v == "scattering" => {
            let wavenumber = reader
                .scalar("wavenumber", errors)
                .and_then(|(line, v)| parse_positive_f64(line, "wavenumber", &v, errors));
            parse_surface(&mut reader, section_line, errors).map(|surface| {
                ProbeGeometryConfig::Scattering {
                    surface,
                    wavenumber,
                }
            })
        }
        Some((line, v)) => {
            errors.push(ConfigError::new(
                line,
                format!("'probe' must be aoa or scattering, got '{}'", v),
            ));
            None
        }
        None => {
            errors.push(ConfigError::new(
                section_line,
                "missing required key 'probe'",
            ));
            None
        }
    };
    reader.finish("[model.load_csv]", errors);
    Some(LoadCsvConfig {
        path: path?,
        probe: probe?,
    })
}

fn parse_noise(mut reader: Reader, errors: &mut Vec<ConfigError>) -> Option<NoiseConfig> {
    let snr = match reader.scalar("snr", errors) {
        Some((_, v)) if v == "off" => Some(None),
        Some((line, v)) => parse_positive_f64(line, "snr", &v, errors).map(Some),
        None => Some(None),
    };
    let seed = match reader.scalar("seed", errors) {
        Some((line, v)) => parse_u64(line, "seed", &v, errors),
        None => Some(0),
    };
    reader.finish("[noise]", errors);
    Some(NoiseConfig {
        snr: snr?,
        seed: seed?,
    })
}

fn parse_grid(
    mut reader: Reader,
    section_line: usize,
    errors: &mut Vec<ConfigError>,
) -> Option<GridConfig> {
    let dimension = match reader.scalar("dimension", errors) {
        Some((line, v)) => parse_usize(line, "dimension", &v, errors).filter(|&d| {
            if d != 1 && d != 2 {
                errors.push(ConfigError::new(line, "'dimension' must be 1 or 2"));
            }
            d == 1 || d == 2
        })?,
        None => {
            errors.push(ConfigError::new(
                section_line,
                "missing required key 'dimension'",
            ));
            return None;
        }
    };

    let axis = |prefix: &str,
                reader: &mut Reader,
                errors: &mut Vec<ConfigError>|
     -> Option<(f64, f64, usize)> {
        let min = reader
            .scalar(&format!("{}_min", prefix), errors)
            .and_then(|(line, v)| parse_f64(line, &format!("{}_min", prefix), &v, errors));
        let max = reader
            .scalar(&format!("{}_max", prefix), errors)
            .and_then(|(line, v)| parse_f64(line, &format!("{}_max", prefix), &v, errors));
        let count = reader
            .scalar(&format!("{}_count", prefix), errors)
            .and_then(|(line, v)| parse_usize(line, &format!("{}_count", prefix), &v, errors));
        match (min, max, count) {
            (Some(lo), Some(hi), Some(n)) => {
                if !(lo < hi) {
                    errors.push(ConfigError::new(
                        section_line,
                        format!("{}-axis needs min < max", prefix),
                    ));
                    return None;
                }
                if n < 2 {
                    errors.push(ConfigError::new(
                        section_line,
                        format!("{}-axis needs at least 2 points", prefix),
                    ));
                    return None;
                }
                Some((lo, hi, n))
            }
            _ => {
                errors.push(ConfigError::new(
                    section_line,
                    format!("{}-axis needs {0}_min, {0}_max, {0}_count", prefix),
                ));
                None
            }
        }
    };

    let x = axis("x", &mut reader, errors);
    let y = if dimension == 2 {
        axis("y", &mut reader, errors).map(Some)
    } else {
        for key in ["y_min", "y_max", "y_count"] {
            if let Some((line, _)) = reader.scalar(key, errors) {
                errors.push(ConfigError::new(
                    line,
                    format!("'{}' is not allowed on a 1-d grid", key),
                ));
            }
        }
        Some(None)
    };
    reader.finish("[grid]", errors);
    Some(GridConfig { x: x?, y: y? })
}

fn parse_indicator(
    mut reader: Reader,
    section_line: usize,
    errors: &mut Vec<ConfigError>,
) -> Option<IndicatorConfig> {
    let method = match reader.scalar("method", errors) {
        Some(m) => m,
        None => {
            errors.push(ConfigError::new(
                section_line,
                "missing required key 'method'",
            ));
            // Drain remaining keys silently; without a method nothing else
            // can be judged.
            return None;
        }
    };

    let label = reader.scalar("label", errors).map(|(_, v)| v);
    let loss = reader.scalar("loss", errors);
    let sparsity = reader.scalar("sparsity", errors);
    let tolerance = reader.scalar("tolerance", errors);
    let tolerance_mode = reader.scalar("tolerance_mode", errors);
    let cap = reader.scalar("cap", errors);
    let subspace_dim = reader.scalar("subspace_dim", errors);
    let regularization = reader.scalar("regularization", errors);
    reader.finish("[indicator]", errors);

    let forbid = |key: &str, value: &Option<(usize, String)>, errors: &mut Vec<ConfigError>| {
        if let Some((line, _)) = value {
            errors.push(ConfigError::new(
                *line,
                format!("'{}' is not a parameter of method '{}'", key, method.1),
            ));
        }
    };

    let parse_loss =
        |loss: &Option<(usize, String)>, errors: &mut Vec<ConfigError>| -> Option<LossMode> {
            match loss {
                Some((line, v)) => match v.as_str() {
                    "0" => Some(LossMode::Residual),
                    "1" => Some(LossMode::Quadratic),
                    _ => {
                        errors.push(ConfigError::new(*line, "'loss' must be 0 or 1"));
                        None
                    }
                },
                None => Some(LossMode::Residual),
            }
        };

    let spec = match method.1.as_str() {
        "dsm" | "infcrit" => {
            forbid("sparsity", &sparsity, errors);
            forbid("tolerance", &tolerance, errors);
            forbid("tolerance_mode", &tolerance_mode, errors);
            forbid("cap", &cap, errors);
            forbid("subspace_dim", &subspace_dim, errors);
            forbid("regularization", &regularization, errors);
            let loss = parse_loss(&loss, errors)?;
            if method.1 == "dsm" {
                Some(IndicatorSpec::Dsm { loss })
            } else {
                Some(IndicatorSpec::InfCrit { loss })
            }
        }
        "kdsm" => {
            forbid("tolerance", &tolerance, errors);
            forbid("tolerance_mode", &tolerance_mode, errors);
            forbid("cap", &cap, errors);
            forbid("subspace_dim", &subspace_dim, errors);
            forbid("regularization", &regularization, errors);
            let loss = parse_loss(&loss, errors);
            let sparsity = match &sparsity {
                Some((line, v)) => parse_usize(*line, "sparsity", v, errors),
                None => {
                    errors.push(ConfigError::new(
                        section_line,
                        "method kdsm requires 'sparsity'",
                    ));
                    None
                }
            };
            Some(IndicatorSpec::KDsm {
                loss: loss?,
                sparsity: sparsity?,
            })
        }
        "errdsm" => {
            forbid("sparsity", &sparsity, errors);
            forbid("subspace_dim", &subspace_dim, errors);
            forbid("regularization", &regularization, errors);
            let loss = parse_loss(&loss, errors);
            let tolerance = match &tolerance {
                Some((line, v)) => parse_f64(*line, "tolerance", v, errors).filter(|&t| {
                    if t < 0.0 {
                        errors.push(ConfigError::new(*line, "'tolerance' must be nonnegative"));
                    }
                    t >= 0.0
                }),
                None => {
                    errors.push(ConfigError::new(
                        section_line,
                        "method errdsm requires 'tolerance'",
                    ));
                    None
                }
            };
            let mode = match &tolerance_mode {
                Some((line, v)) => match v.as_str() {
                    "absolute" => Some(ToleranceMode::Absolute),
                    "relative" => Some(ToleranceMode::Relative),
                    _ => {
                        errors.push(ConfigError::new(
                            *line,
                            "'tolerance_mode' must be absolute or relative",
                        ));
                        None
                    }
                },
                None => {
                    errors.push(ConfigError::new(
                        section_line,
                        "method errdsm requires 'tolerance_mode' (absolute | relative)",
                    ));
                    None
                }
            };
            let cap = match &cap {
                Some((line, v)) => parse_usize(*line, "cap", v, errors).filter(|&c| {
                    if c < 1 {
                        errors.push(ConfigError::new(*line, "'cap' must be at least 1"));
                    }
                    c >= 1
                }),
                None => {
                    errors.push(ConfigError::new(
                        section_line,
                        "method errdsm requires 'cap'",
                    ));
                    None
                }
            };
            Some(IndicatorSpec::ErrDsm {
                loss: loss?,
                tolerance: tolerance?,
                tolerance_mode: mode?,
                cap: cap?,
            })
        }
        "capon" => {
            forbid("loss", &loss, errors);
            forbid("sparsity", &sparsity, errors);
            forbid("tolerance", &tolerance, errors);
            forbid("tolerance_mode", &tolerance_mode, errors);
            forbid("cap", &cap, errors);
            forbid("subspace_dim", &subspace_dim, errors);
            let reg = match &regularization {
                Some((line, v)) => parse_f64(*line, "regularization", v, errors)
                    .filter(|&r| {
                        if r < 0.0 {
                            errors.push(ConfigError::new(
                                *line,
                                "'regularization' must be nonnegative",
                            ));
                        }
                        r >= 0.0
                    })
                    .map(Some),
                None => Some(None),
            };
            Some(IndicatorSpec::Capon {
                regularization: reg?,
            })
        }
        "music" => {
            forbid("loss", &loss, errors);
            forbid("sparsity", &sparsity, errors);
            forbid("tolerance", &tolerance, errors);
            forbid("tolerance_mode", &tolerance_mode, errors);
            forbid("cap", &cap, errors);
            forbid("regularization", &regularization, errors);
            let dim = match &subspace_dim {
                Some((line, v)) => parse_usize(*line, "subspace_dim", v, errors),
                None => {
                    errors.push(ConfigError::new(
                        section_line,
                        "method music requires 'subspace_dim'",
                    ));
                    None
                }
            };
            Some(IndicatorSpec::Music { subspace_dim: dim? })
        }
        other => {
            errors.push(ConfigError::new(
                method.0,
                format!(
                    "method '{}' not one of dsm, kdsm, errdsm, infcrit, capon, music",
                    other
                ),
            ));
            None
        }
    };

    let spec = spec?;
    let label = label.unwrap_or_else(|| method.1.clone());
    if label.is_empty() || label.contains(|c: char| c.is_whitespace() || c == '/') {
        errors.push(ConfigError::new(
            section_line,
            format!("label '{}' must be nonempty without spaces or '/'", label),
        ));
        return None;
    }
    Some(IndicatorConfig { label, spec })
}

fn parse_output(mut reader: Reader, errors: &mut Vec<ConfigError>) -> Option<OutputConfig> {
    let directory = reader
        .scalar("directory", errors)
        .map(|(_, v)| PathBuf::from(v));
    let formats = match reader.scalar("formats", errors) {
        Some((line, v)) => {
            let mut out = Vec::new();
            for tok in v.split_whitespace() {
                let f = match tok {
                    "csv" => Some(OutputFormat::Csv),
                    "pgm" => Some(OutputFormat::Pgm),
                    "peaks" => Some(OutputFormat::Peaks),
                    "timing" => Some(OutputFormat::Timing),
                    _ => {
                        errors.push(ConfigError::new(
                            line,
                            format!("unknown format '{}' (csv | pgm | peaks | timing)", tok),
                        ));
                        None
                    }
                };
                if let Some(f) = f {
                    if !out.contains(&f) {
                        out.push(f);
                    }
                }
            }
            if out.is_empty() {
                errors.push(ConfigError::new(
                    line,
                    "'formats' must list at least one format",
                ));
                None
            } else {
                Some(out)
            }
        }
        None => Some(vec![OutputFormat::Csv]),
    };
    let log_scale = match reader.scalar("log_scale", errors) {
        Some((line, v)) => parse_bool(line, "log_scale", &v, errors),
        None => Some(false),
    };
    let crop = match reader.scalar("crop", errors) {
        Some((line, v)) => parse_f64_list(line, "crop", &v, 4, errors)
            .filter(|c| {
                let ok = c[0] < c[1];
                if !ok {
                    errors.push(ConfigError::new(line, "crop x bounds must satisfy x0 < x1"));
                }
                ok
            })
            .map(|c| Some([c[0], c[1], c[2], c[3]])),
        None => Some(None),
    };
    Some(OutputConfig {
        directory,
        formats: formats?,
        log_scale: log_scale?,
        crop: crop?,
    })
}

// ---------------------------------------------------------------------------
// Serialization (canonical form; parse(serialize(c)) == c)

pub fn serialize_config(config: &ExperimentConfig) -> String {
    let mut out = String::new();
    let push_kv = |out: &mut String, key: &str, value: String| {
        out.push_str(key);
        out.push_str(" = ");
        out.push_str(&value);
        out.push('\n');
    };

    push_kv(&mut out, "name", config.name.clone());
    out.push('\n');

    match &config.model {
        ModelConfig::Aoa(a) => {
            out.push_str("[model.aoa]\n");
            serialize_aoa_geometry(
                &mut out,
                a.elements_x,
                a.elements_y,
                a.spacing_x,
                a.spacing_y,
                a.wavenumber,
            );
            push_kv(&mut out, "time_samples", a.time_samples.to_string());
            push_kv(&mut out, "time_step", fmt_f64(a.time_step));
            match &a.sources {
                SourceSpec::Explicit(list) => {
                    for s in list {
                        push_kv(
                            &mut out,
                            "source",
                            format!(
                                "{} {} {} {}",
                                fmt_f64(s[0]),
                                fmt_f64(s[1]),
                                fmt_f64(s[2]),
                                fmt_f64(s[3])
                            ),
                        );
                    }
                }
                SourceSpec::Random { count, seed } => {
                    push_kv(&mut out, "random_sources", count.to_string());
                    push_kv(&mut out, "source_seed", seed.to_string());
                }
            }
        }
        ModelConfig::Born(b) => {
            out.push_str("[model.born]\n");
            push_kv(&mut out, "wavenumber", fmt_f64(b.wavenumber));
            push_kv(&mut out, "dimension", b.dimension.to_string());
            serialize_surface(&mut out, &b.surface);
            match &b.scatterers {
                ScattererSpec::Explicit(list) => {
                    for s in list {
                        push_kv(
                            &mut out,
                            "scatterer",
                            format!(
                                "{} {} {} {}",
                                fmt_f64(s[0]),
                                fmt_f64(s[1]),
                                fmt_f64(s[2]),
                                fmt_f64(s[3])
                            ),
                        );
                    }
                }
                ScattererSpec::Random {
                    count,
                    seed,
                    bounds,
                } => {
                    push_kv(&mut out, "random_scatterers", count.to_string());
                    push_kv(&mut out, "scatterer_seed", seed.to_string());
                    push_kv(
                        &mut out,
                        "scatterer_box",
                        format!(
                            "{} {} {} {}",
                            fmt_f64(bounds[0]),
                            fmt_f64(bounds[1]),
                            fmt_f64(bounds[2]),
                            fmt_f64(bounds[3])
                        ),
                    );
                }
            }
        }
        ModelConfig::LoadCsv(l) => {
            out.push_str("[model.load_csv]\n");
            push_kv(&mut out, "path", l.path.display().to_string());
            match &l.probe {
                ProbeGeometryConfig::Aoa {
                    elements_x,
                    elements_y,
                    spacing_x,
                    spacing_y,
                    wavenumber,
                } => {
                    push_kv(&mut out, "probe", "aoa".into());
                    serialize_aoa_geometry(
                        &mut out,
                        *elements_x,
                        *elements_y,
                        *spacing_x,
                        *spacing_y,
                        *wavenumber,
                    );
                }
                ProbeGeometryConfig::Scattering {
                    surface,
                    wavenumber,
                } => {
                    push_kv(&mut out, "probe", "scattering".into());
                    if let Some(k) = wavenumber {
                        push_kv(&mut out, "wavenumber", fmt_f64(*k));
                    }
                    serialize_surface(&mut out, surface);
                }
            }
        }
    }
    out.push('\n');

    out.push_str("[noise]\n");
    match config.noise.snr {
        Some(snr) => push_kv(&mut out, "snr", fmt_f64(snr)),
        None => push_kv(&mut out, "snr", "off".into()),
    }
    push_kv(&mut out, "seed", config.noise.seed.to_string());
    out.push('\n');

    out.push_str("[grid]\n");
    push_kv(&mut out, "dimension", config.grid.dimension().to_string());
    push_kv(&mut out, "x_min", fmt_f64(config.grid.x.0));
    push_kv(&mut out, "x_max", fmt_f64(config.grid.x.1));
    push_kv(&mut out, "x_count", config.grid.x.2.to_string());
    if let Some(y) = config.grid.y {
        push_kv(&mut out, "y_min", fmt_f64(y.0));
        push_kv(&mut out, "y_max", fmt_f64(y.1));
        push_kv(&mut out, "y_count", y.2.to_string());
    }
    out.push('\n');

    for ind in &config.indicators {
        out.push_str("[indicator]\n");
        push_kv(&mut out, "label", ind.label.clone());
        push_kv(&mut out, "method", ind.spec.method_name().into());
        match &ind.spec {
            IndicatorSpec::Dsm { loss } | IndicatorSpec::InfCrit { loss } => {
                push_kv(&mut out, "loss", loss.index().to_string());
            }
            IndicatorSpec::KDsm { loss, sparsity } => {
                push_kv(&mut out, "loss", loss.index().to_string());
                push_kv(&mut out, "sparsity", sparsity.to_string());
            }
            IndicatorSpec::ErrDsm {
                loss,
                tolerance,
                tolerance_mode,
                cap,
            } => {
                push_kv(&mut out, "loss", loss.index().to_string());
                push_kv(&mut out, "tolerance", fmt_f64(*tolerance));
                push_kv(
                    &mut out,
                    "tolerance_mode",
                    match tolerance_mode {
                        ToleranceMode::Absolute => "absolute".into(),
                        ToleranceMode::Relative => "relative".into(),
                    },
                );
                push_kv(&mut out, "cap", cap.to_string());
            }
            IndicatorSpec::Capon { regularization } => {
                if let Some(r) = regularization {
                    push_kv(&mut out, "regularization", fmt_f64(*r));
                }
            }
            IndicatorSpec::Music { subspace_dim } => {
                push_kv(&mut out, "subspace_dim", subspace_dim.to_string());
            }
        }
        out.push('\n');
    }

    out.push_str("[output]\n");
    if let Some(dir) = &config.output.directory {
        push_kv(&mut out, "directory", dir.display().to_string());
    }
    push_kv(
        &mut out,
        "formats",
        config
            .output
            .formats
            .iter()
            .map(|f| f.as_str())
            .collect::<Vec<_>>()
            .join(" "),
    );
    push_kv(&mut out, "log_scale", config.output.log_scale.to_string());
    if let Some(c) = config.output.crop {
        push_kv(
            &mut out,
            "crop",
            format!(
                "{} {} {} {}",
                fmt_f64(c[0]),
                fmt_f64(c[1]),
                fmt_f64(c[2]),
                fmt_f64(c[3])
            ),
        );
    }
    out
}

fn serialize_aoa_geometry(
    out: &mut String,
    elements_x: usize,
    elements_y: usize,
    spacing_x: f64,
    spacing_y: f64,
    wavenumber: f64,
) {
    out.push_str(&format!("elements_x = {}\n", elements_x));
    out.push_str(&format!("elements_y = {}\n", elements_y));
    out.push_str(&format!("spacing_x = {}\n", fmt_f64(spacing_x)));
    out.push_str(&format!("spacing_y = {}\n", fmt_f64(spacing_y)));
    out.push_str(&format!("wavenumber = {}\n", fmt_f64(wavenumber)));
}

fn serialize_surface(out: &mut String, surface: &SurfaceConfig) {
    match surface {
        SurfaceConfig::Circle {
            radius,
            center,
            transceivers,
        }
        | SurfaceConfig::HalfCircle {
            radius,
            center,
            transceivers,
        }
        | SurfaceConfig::QuarterCircle {
            radius,
            center,
            transceivers,
        } => {
            let kind = match surface {
                SurfaceConfig::Circle { .. } => "circle",
                SurfaceConfig::HalfCircle { .. } => "half_circle",
                _ => "quarter_circle",
            };
            out.push_str(&format!("surface = {}\n", kind));
            out.push_str(&format!("radius = {}\n", fmt_f64(*radius)));
            out.push_str(&format!(
                "center = {} {}\n",
                fmt_f64(center[0]),
                fmt_f64(center[1])
            ));
            out.push_str(&format!("transceivers = {}\n", transceivers));
        }
        SurfaceConfig::Points(points) => {
            out.push_str("surface = points\n");
            for p in points {
                out.push_str(&format!("point = {} {}\n", fmt_f64(p[0]), fmt_f64(p[1])));
            }
        }
    }
}

/// Shortest representation that round-trips the f64 exactly.
fn fmt_f64(v: f64) -> String {
    format!("{}", v)
}
