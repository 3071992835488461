//! Built-in demos: the Dirichlet-kernel resolution study and the shipped
//! example configs.
//!
//! `fig3`, `fig6`, and `table1` run the example configs embedded from
//! `configs/`; `fig2` generates `|D_50(x) + D_50(x - a)|` curves directly
//! (it has no forward model, so it bypasses the experiment runner).

use std::path::Path;

use crate::config::parse_config;
use crate::error::{Error, Result};
use crate::grid::{find_peaks_in, SamplingGrid};
use crate::io;
use crate::num::dirichlet_kernel;
use crate::runner::{run_experiment, sha256_hex, RunOverrides};

pub const FIG3_CONFIG: &str = include_str!("../configs/fig3.conf");
pub const FIG5_HALF_CONFIG: &str = include_str!("../configs/fig5_half.conf");
pub const FIG5_QUARTER_CONFIG: &str = include_str!("../configs/fig5_quarter.conf");
pub const FIG6_CONFIG: &str = include_str!("../configs/fig6.conf");
pub const TABLE1_CONFIG: &str = include_str!("../configs/table1.conf");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemoName {
    Fig2,
    Fig3,
    Fig6,
    Table1,
}

impl DemoName {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "fig2" => Some(DemoName::Fig2),
            "fig3" => Some(DemoName::Fig3),
            "fig6" => Some(DemoName::Fig6),
            "table1" => Some(DemoName::Table1),
            _ => None,
        }
    }
}

/// The kernel-pair magnitude `|D_n(x) + D_n(x - shift)|` sampled on
/// `points` points of [-pi, pi].
pub fn dirichlet_pair_curve(
    n: usize,
    shift: f64,
    points: usize,
) -> Result<(SamplingGrid, Vec<f64>)> {
    let grid = SamplingGrid::new_1d(-std::f64::consts::PI, std::f64::consts::PI, points)?;
    let values = (0..points)
        .map(|i| {
            let x = grid.point(i)[0];
            (dirichlet_kernel(n, x) + dirichlet_kernel(n, x - shift)).norm()
        })
        .collect();
    Ok((grid, values))
}

/// The four kernel-separation cases: shift 1/2, 1/4, 1/8, 1/16.
pub const FIG2_SHIFTS: [(u32, f64); 4] = [(2, 0.5), (4, 0.25), (8, 0.125), (16, 0.0625)];

/// Run a demo into `out_dir`. Returns (file name, sha256) pairs.
pub fn run_demo(
    name: DemoName,
    out_dir: &Path,
    threads: Option<usize>,
    seed: Option<u64>,
) -> Result<Vec<(String, String)>> {
    match name {
        DemoName::Fig2 => run_fig2(out_dir),
        DemoName::Fig3 => run_config_demo(FIG3_CONFIG, out_dir, threads, seed),
        DemoName::Fig6 => run_config_demo(FIG6_CONFIG, out_dir, threads, seed),
        DemoName::Table1 => run_config_demo(TABLE1_CONFIG, out_dir, threads, seed),
    }
}

fn run_fig2(out_dir: &Path) -> Result<Vec<(String, String)>> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut outputs = Vec::new();
    for (denom, shift) in FIG2_SHIFTS {
        let (grid, values) = dirichlet_pair_curve(50, shift, 2001)?;
        let mut text = String::from("x,magnitude\n");
        for (i, v) in values.iter().enumerate() {
            text.push_str(&format!("{:.16e},{:.16e}\n", grid.point(i)[0], v));
        }
        let name = format!("dirichlet_shift_1_{}.csv", denom);
        io::write_atomic(&out_dir.join(&name), text.as_bytes())?;
        outputs.push((name, sha256_hex(text.as_bytes())));

        let peaks = find_peaks_in(&grid, &values, 8, 0.3);
        let mut text = String::from("x,magnitude\n");
        for p in &peaks.peaks {
            text.push_str(&format!("{:.16e},{:.16e}\n", p.position[0], p.value));
        }
        let name = format!("dirichlet_shift_1_{}_peaks.csv", denom);
        io::write_atomic(&out_dir.join(&name), text.as_bytes())?;
        outputs.push((name, sha256_hex(text.as_bytes())));
    }
    Ok(outputs)
}

fn run_config_demo(
    text: &str,
    out_dir: &Path,
    threads: Option<usize>,
    seed: Option<u64>,
) -> Result<Vec<(String, String)>> {
    let config = parse_config(text).map_err(Error::Config)?;
    let overrides = RunOverrides {
        out_dir: Some(out_dir.to_path_buf()),
        threads,
        seed,
        export_data: None,
    };
    let manifest = run_experiment(&config, &overrides)?;
    Ok(manifest.outputs)
}
