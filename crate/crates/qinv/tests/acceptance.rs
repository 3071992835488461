//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `--nocapture` to see them). Tolerances and thresholds are
//! pinned here, not configurable.

use std::time::Instant;

use num_complex::Complex64;
use qinv::config::{parse_config, ModelConfig, SourceSpec};
use qinv::demo::{dirichlet_pair_curve, FIG2_SHIFTS};
use qinv::forward::{synth_aoa, ArrayGeometry, DataMatrix, Provenance, SourceSet};
use qinv::grid::{evaluate_field, find_peaks, find_peaks_in, PeakSet, SamplingGrid};
use qinv::indicators::{capon, dsm, errdsm, infcrit, kdsm, IndicatorSpec, LossMode, ToleranceMode};
use qinv::num::{svd, ComplexMatrix, ComplexVector, Prng};
use qinv::runner::{grid_from_config, prepare_data, run_experiment, RunOverrides};
use qinv::sparse::{brute_force_sparse, omp_k, SparseProblem};
use qinv::steering::aoa_probe;

fn random_matrix(rng: &mut Prng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let (a, b) = rng.gaussian_pair();
        Complex64::new(a, b)
    })
    .unwrap()
}

fn random_vector(rng: &mut Prng, n: usize) -> ComplexVector {
    ComplexVector::from_entries(
        (0..n)
            .map(|_| {
                let (a, b) = rng.gaussian_pair();
                Complex64::new(a, b)
            })
            .collect(),
    )
    .unwrap()
}

fn wrap_external(matrix: ComplexMatrix) -> DataMatrix {
    let rows = (0..matrix.rows()).map(|i| i as f64).collect();
    let cols = (0..matrix.cols()).map(|i| i as f64).collect();
    DataMatrix::new(matrix, "row", rows, "col", cols, Provenance::External, None).unwrap()
}

/// Count of truths with a peak within `cells` grid cells (per axis).
fn matched_1d(truths: &[f64], peaks: &PeakSet, cell: f64, cells: f64) -> usize {
    truths
        .iter()
        .filter(|&&t| {
            peaks
                .peaks
                .iter()
                .any(|p| (p.position[0] - t).abs() <= cells * cell + 1e-12)
        })
        .count()
}

fn matched_2d(truths: &[[f64; 2]], peaks: &PeakSet, cell: f64, cells: f64) -> usize {
    truths
        .iter()
        .filter(|t| {
            peaks.peaks.iter().any(|p| {
                (p.position[0] - t[0]).abs() <= cells * cell + 1e-12
                    && (p.position[1] - t[1]).abs() <= cells * cell + 1e-12
            })
        })
        .count()
}

#[test]
fn acceptance_1_dirichlet_kernel_separation() {
    let started = Instant::now();
    let counts: Vec<usize> = FIG2_SHIFTS
        .iter()
        .map(|&(_, shift)| {
            let (grid, values) = dirichlet_pair_curve(50, shift, 2001).unwrap();
            find_peaks_in(&grid, &values, 10, 0.3).len()
        })
        .collect();
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "runtime {:.3}s exceeds 1s", elapsed);
    // Known failure at shift 1/8: the coherent kernel pair lifts its first
    // side lobes to 0.317 of the range, above the 0.3 bar, so four peaks
    // qualify instead of two. See fig2_reference_peak_counts for the pinned
    // true behavior of the curve (the two dominant peaks do sit at 0 and
    // the shift, i.e. the sources are separated).
    assert_eq!(
        counts,
        vec![2, 2, 2, 1],
        "prominence-0.3 peak counts for shifts 1/2, 1/4, 1/8, 1/16"
    );
    println!(
        "ACCEPTANCE 1 (dirichlet kernel separation): PASS ({:.3}s)",
        elapsed
    );
}

/// Reference behavior of the kernel-pair curves, pinned by independent
/// derivation: peak counts at the 0.3 bar are [2, 2, 4, 1] (the 1/8 side
/// lobes reach 0.3173 of range), the counts at a 0.35 bar are [2, 2, 2, 1],
/// and for every separated shift the two dominant peaks sit within one grid
/// cell of 0 and the shift.
#[test]
fn fig2_reference_peak_counts() {
    let mut counts_03 = Vec::new();
    let mut counts_035 = Vec::new();
    for &(_, shift) in &FIG2_SHIFTS {
        let (grid, values) = dirichlet_pair_curve(50, shift, 2001).unwrap();
        counts_03.push(find_peaks_in(&grid, &values, 10, 0.3).len());
        counts_035.push(find_peaks_in(&grid, &values, 10, 0.35).len());
        if shift > 0.1 {
            // Interference repels the apparent maxima from the true source
            // positions by up to ~0.023 at shift 1/8; a 0.03 bound (a
            // quarter of the main-lobe half width) pins them.
            let top2 = find_peaks_in(&grid, &values, 2, 0.3);
            let mut xs: Vec<f64> = top2.peaks.iter().map(|p| p.position[0]).collect();
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert!(xs[0].abs() <= 0.03, "main peak near 0, got {}", xs[0]);
            assert!(
                (xs[1] - shift).abs() <= 0.03,
                "main peak near shift, got {}",
                xs[1]
            );
        }
    }
    assert_eq!(counts_03, vec![2, 2, 4, 1]);
    assert_eq!(counts_035, vec![2, 2, 2, 1]);
}

#[test]
fn acceptance_2_aoa_indicator_ladder() {
    let started = Instant::now();
    let config = parse_config(qinv::demo::FIG3_CONFIG).unwrap();
    let prepared = prepare_data(&config, &RunOverrides::default()).unwrap();
    let grid = grid_from_config(&config).unwrap();
    assert_eq!(grid.len(), 400);
    let cell = grid.axis(0).step();

    // Reconstruct the true directions from the config's source seed.
    let truths: Vec<f64> = match &config.model {
        ModelConfig::Aoa(a) => match &a.sources {
            SourceSpec::Random { count, seed } => {
                SourceSet::random_1d(*count, *seed, a.time_samples, a.time_step)
                    .unwrap()
                    .sources()
                    .iter()
                    .map(|s| s.u)
                    .collect()
            }
            SourceSpec::Explicit(list) => list.iter().map(|s| s[0]).collect(),
        },
        _ => unreachable!("fig3 is an array model"),
    };
    assert_eq!(truths.len(), 8);

    let eval = |spec: IndicatorSpec| {
        evaluate_field(&prepared.data, &grid, &spec, &prepared.probe_kind, 1).unwrap()
    };
    let kdsm8 = eval(IndicatorSpec::KDsm {
        loss: LossMode::Residual,
        sparsity: 8,
    });
    let peaks_kdsm = find_peaks(&kdsm8, 16, 0.1);
    assert!(
        peaks_kdsm.len() >= 8,
        "(a) kdsm(8) found only {} prominence-0.1 peaks",
        peaks_kdsm.len()
    );
    let matched_kdsm = matched_1d(&truths, &peaks_kdsm, cell, 1.0);
    assert_eq!(
        matched_kdsm, 8,
        "(a) only {}/8 true directions within one cell of a kdsm(8) peak",
        matched_kdsm
    );

    let beam = eval(IndicatorSpec::Dsm {
        loss: LossMode::Residual,
    });
    let matched_dsm = matched_1d(&truths, &find_peaks(&beam, 16, 0.1), cell, 1.0);
    assert!(
        matched_dsm < matched_kdsm,
        "(b) dsm matched {} truths, not strictly fewer than kdsm's {}",
        matched_dsm,
        matched_kdsm
    );

    let dense = eval(IndicatorSpec::InfCrit {
        loss: LossMode::Residual,
    });
    let peaks_inf = find_peaks(&dense, 16, 0.1);
    for &t in &truths {
        let near_kdsm = peaks_kdsm
            .peaks
            .iter()
            .find(|p| (p.position[0] - t).abs() <= cell + 1e-12)
            .expect("matched above");
        let near_inf = peaks_inf
            .peaks
            .iter()
            .find(|p| (p.position[0] - t).abs() <= cell + 1e-12)
            .unwrap_or_else(|| panic!("(c) no infcrit peak within one cell of truth {}", t));
        assert!(
            (near_kdsm.position[0] - near_inf.position[0]).abs() <= cell + 1e-12,
            "(c) kdsm and infcrit peaks disagree near truth {}",
            t
        );
    }

    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "runtime {:.1}s exceeds 30s", elapsed);
    println!(
        "ACCEPTANCE 2 (aoa ladder, dsm matched {}/8, kdsm(8) matched 8/8): PASS ({:.1}s)",
        matched_dsm, elapsed
    );
}

#[test]
fn acceptance_3_born_circle_localization() {
    let started = Instant::now();
    let config = parse_config(qinv::demo::FIG6_CONFIG).unwrap();
    let prepared = prepare_data(&config, &RunOverrides::default()).unwrap();
    let grid = grid_from_config(&config).unwrap();
    assert_eq!(grid.len(), 200 * 200);
    let cell = grid.axis(0).step();
    let truths = [[0.0, 1.5], [1.0, 0.0], [-1.0, -1.0]];

    for spec in [
        IndicatorSpec::Dsm {
            loss: LossMode::Residual,
        },
        IndicatorSpec::KDsm {
            loss: LossMode::Residual,
            sparsity: 5,
        },
    ] {
        let name = spec.method_name();
        let field = evaluate_field(&prepared.data, &grid, &spec, &prepared.probe_kind, 1).unwrap();
        let top3 = find_peaks(&field, 3, 0.1);
        assert_eq!(top3.len(), 3, "{}: expected 3 peaks", name);
        let matched = matched_2d(&truths, &top3, cell, 1.0);
        assert_eq!(
            matched, 3,
            "{}: only {}/3 truths within one cell (0.02) of the top-3 peaks",
            name, matched
        );
    }

    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "runtime {:.1}s exceeds 5 min", elapsed);
    println!(
        "ACCEPTANCE 3 (born circle localization): PASS ({:.1}s)",
        elapsed
    );
}

#[test]
fn acceptance_4_limited_aperture_localization() {
    let started = Instant::now();
    let mut matched_counts = Vec::new();
    for (text, sparsity, needed) in [
        (qinv::demo::FIG5_HALF_CONFIG, 6usize, 4usize),
        (qinv::demo::FIG5_QUARTER_CONFIG, 5, 2),
    ] {
        let config = parse_config(text).unwrap();
        let prepared = prepare_data(&config, &RunOverrides::default()).unwrap();
        let grid = grid_from_config(&config).unwrap();
        let cell = grid.axis(0).step();

        // Reconstruct the scatterer truths from the config's seed.
        let truths: Vec<[f64; 2]> = match &config.model {
            ModelConfig::Born(b) => match &b.scatterers {
                qinv::config::ScattererSpec::Random {
                    count,
                    seed,
                    bounds,
                } => qinv::forward::ScattererSet::random_in_box(
                    *count,
                    *seed,
                    (bounds[0], bounds[1]),
                    (bounds[2], bounds[3]),
                )
                .unwrap()
                .scatterers()
                .iter()
                .map(|s| [s.position[0], s.position[1]])
                .collect(),
                qinv::config::ScattererSpec::Explicit(list) => {
                    list.iter().map(|s| [s[0], s[1]]).collect()
                }
            },
            _ => unreachable!("fig5 is a born model"),
        };
        assert_eq!(truths.len(), 5);

        let spec = IndicatorSpec::KDsm {
            loss: LossMode::Residual,
            sparsity,
        };
        let field = evaluate_field(&prepared.data, &grid, &spec, &prepared.probe_kind, 1).unwrap();
        let peaks = find_peaks(&field, 16, 0.1);
        let matched = matched_2d(&truths, &peaks, cell, 2.0);
        assert!(
            matched >= needed,
            "{}: matched {}/5 scatterers within 2 cells, needed {}",
            config.name,
            matched,
            needed
        );
        matched_counts.push((config.name.clone(), matched));
    }
    let elapsed = started.elapsed().as_secs_f64();
    println!(
        "ACCEPTANCE 4 (limited aperture, {:?}): PASS ({:.1}s)",
        matched_counts, elapsed
    );
}

#[test]
fn acceptance_5_greedy_matches_brute_force_oracle() {
    let started = Instant::now();
    let mut rng = Prng::seed(0x5eed);
    // 200 orthonormal-dictionary instances: identical supports, residuals
    // agreeing to 1e-10.
    for case in 0..200 {
        let dim = 8 + (rng.next_u64() % 9) as usize; // 8..=16
        let atoms = 4 + (rng.next_u64() % (dim as u64 - 3)) as usize;
        let sparsity = 1 + (rng.next_u64() % 3) as usize; // 1..=3
        let sparsity = sparsity.min(atoms);
        let q = svd(&random_matrix(&mut rng, dim, dim)).unwrap().u;
        let dict = ComplexMatrix::from_fn(dim, atoms, |i, j| q[(i, j)]).unwrap();
        // Well-separated coefficient magnitudes plus faint dense noise keep
        // the optimal support unambiguous.
        let mut target = ComplexVector::zeros(dim);
        for (rank, atom) in (0..sparsity).enumerate() {
            let mag = 3.0 - 0.7 * rank as f64;
            let phase = rng.uniform_in(0.0, std::f64::consts::TAU);
            let coeff = Complex64::from_polar(mag, phase);
            for i in 0..dim {
                target[i] += dict[(i, atom * (atoms / sparsity).max(1) % atoms)] * coeff;
            }
        }
        let noise = random_vector(&mut rng, dim).scale(Complex64::new(1e-4, 0.0));
        let target = target.add(&noise).unwrap();

        let problem = SparseProblem::from_dictionary(dict, target).unwrap();
        let greedy = omp_k(&problem, sparsity);
        let brute = brute_force_sparse(&problem, sparsity).unwrap();
        let mut gs = greedy.support.clone();
        let mut bs = brute.support.clone();
        gs.sort_unstable();
        bs.sort_unstable();
        assert_eq!(gs, bs, "case {}: support mismatch", case);
        assert!(
            (greedy.residual_norm - brute.residual_norm).abs() <= 1e-10,
            "case {}: residuals {} vs {}",
            case,
            greedy.residual_norm,
            brute.residual_norm
        );
    }
    // General dictionaries: greedy can be worse, never better.
    for _ in 0..100 {
        let dict = random_matrix(&mut rng, 10, 12);
        let target = random_vector(&mut rng, 10);
        let problem = SparseProblem::from_dictionary(dict, target).unwrap();
        let greedy = omp_k(&problem, 3);
        let brute = brute_force_sparse(&problem, 3).unwrap();
        assert!(greedy.residual_norm >= brute.residual_norm - 1e-12);
    }
    println!(
        "ACCEPTANCE 5 (greedy vs brute-force oracle): PASS ({:.1}s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn acceptance_6_nesting_and_monotonicity() {
    let started = Instant::now();
    let mut rng = Prng::seed(0xca11);
    for case in 0..50 {
        let rows = 6 + (rng.next_u64() % 5) as usize;
        let cols = 5 + (rng.next_u64() % 4) as usize;
        let data = wrap_external(random_matrix(&mut rng, rows, cols));
        let geom = ArrayGeometry::new(1.0, 1.0, cols, 1, 1.1).unwrap();
        let probe = aoa_probe(&geom, rng.uniform_in(-1.0, 1.0), 0.0);

        let dense = infcrit(&data, &probe, LossMode::Residual).unwrap().value;
        let base = dsm(&data, &probe, LossMode::Residual).unwrap().value;
        let mut prev = -f64::INFINITY;
        for k in (0..=cols).rev() {
            let v = kdsm(&data, &probe, LossMode::Residual, k).unwrap().value;
            assert!(
                dense <= v + 1e-10,
                "case {}: infcrit {} above kdsm({}) {}",
                case,
                dense,
                k,
                v
            );
            assert!(
                v >= prev - 1e-10,
                "case {}: kdsm not nonincreasing in k at {}",
                case,
                k
            );
            prev = v;
        }
        let zero = kdsm(&data, &probe, LossMode::Residual, 0).unwrap().value;
        assert_eq!(
            zero.to_bits(),
            base.to_bits(),
            "case {}: kdsm(0) != dsm",
            case
        );

        let mut last_support = f64::INFINITY;
        for step in 0..8 {
            let delta = base * step as f64 / 7.0;
            let v = errdsm(
                &data,
                &probe,
                LossMode::Residual,
                delta,
                ToleranceMode::Absolute,
                cols,
            )
            .unwrap()
            .value;
            assert!(
                v <= last_support,
                "case {}: errdsm support grew as tolerance rose",
                case
            );
            last_support = v;
        }
    }
    println!(
        "ACCEPTANCE 6 (nesting and monotonicity, 50 cases): PASS ({:.1}s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn acceptance_7_capon_agrees_with_infimum_criterion() {
    let started = Instant::now();
    let mut rng = Prng::seed(0x0c0a);
    for case in 0..50 {
        let n = 5 + (rng.next_u64() % 6) as usize;
        // Condition number below 3: singular values in [1, 3).
        let dec = svd(&random_matrix(&mut rng, n, n)).unwrap();
        let mut scaled = dec.u.clone();
        for j in 0..n {
            let s = 1.0 + 2.0 * j as f64 / n as f64;
            for i in 0..n {
                scaled[(i, j)] *= Complex64::new(s, 0.0);
            }
        }
        let well = scaled.matmul(&dec.v.hermitian_transpose()).unwrap();
        let data = wrap_external(well);
        let geom = ArrayGeometry::new(1.0, 1.0, n, 1, 0.9).unwrap();
        let probe = aoa_probe(&geom, rng.uniform_in(-1.0, 1.0), 0.0);

        let closed = capon(&data, &probe, 0.0).unwrap().value;
        let dense = infcrit(&data, &probe, LossMode::Residual).unwrap().value;
        assert!(
            (closed - dense).abs() <= 1e-8 * dense,
            "case {}: capon {} vs infcrit {}",
            case,
            closed,
            dense
        );
    }
    println!(
        "ACCEPTANCE 7 (capon / infimum-criterion agreement, 50 cases): PASS ({:.1}s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn acceptance_8_timing_orderings() {
    let started = Instant::now();
    let delta = 50.0 / 19.0;
    let geom = ArrayGeometry::new(delta, 1.0, 100, 1, 1.0).unwrap();
    let sources = SourceSet::random_1d(8, 43, 100, delta).unwrap();
    let data = synth_aoa(&geom, &sources);
    let grid = SamplingGrid::new_1d(-1.0, 1.0, 400).unwrap();
    let probe_kind = qinv::grid::ProbeKind::Aoa(geom);
    let specs = vec![
        (
            "dsm".to_string(),
            IndicatorSpec::Dsm {
                loss: LossMode::Residual,
            },
        ),
        (
            "kdsm4".to_string(),
            IndicatorSpec::KDsm {
                loss: LossMode::Residual,
                sparsity: 4,
            },
        ),
        (
            "kdsm8".to_string(),
            IndicatorSpec::KDsm {
                loss: LossMode::Residual,
                sparsity: 8,
            },
        ),
        (
            "infcrit".to_string(),
            IndicatorSpec::InfCrit {
                loss: LossMode::Residual,
            },
        ),
    ];
    let report = qinv::grid::timing_report(&data, &grid, &specs, &probe_kind).unwrap();
    let t: Vec<f64> = report.iter().map(|(_, s)| *s).collect();
    assert!(t[0] < t[1], "dsm {} not faster than kdsm4 {}", t[0], t[1]);
    assert!(t[1] < t[2], "kdsm4 {} not faster than kdsm8 {}", t[1], t[2]);
    assert!(t[0] < t[3], "dsm {} not faster than infcrit {}", t[0], t[3]);
    println!(
        "ACCEPTANCE 8 (timing orderings dsm {:.3}s < kdsm4 {:.3}s < kdsm8 {:.3}s, dsm < infcrit {:.3}s): PASS ({:.1}s)",
        t[0],
        t[1],
        t[2],
        t[3],
        started.elapsed().as_secs_f64()
    );
}

/// Independent Hankel oracle: fixed-budget ascending series below 12, fixed
/// truncation-order asymptotic expansion above.
fn hankel_oracle(x: f64) -> Complex64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    if x <= 12.0 {
        let q = 0.25 * x * x;
        let mut j0 = 0.0;
        let mut s0 = 0.0;
        let mut factorial_sq = 1.0;
        let mut qm = 1.0;
        let mut harmonic = 0.0;
        for m in 0..60u32 {
            if m > 0 {
                factorial_sq *= (m * m) as f64;
                qm *= q;
                harmonic += 1.0 / m as f64;
            }
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            j0 += sign * qm / factorial_sq;
            s0 += -sign * harmonic * qm / factorial_sq;
        }
        let y0 = std::f64::consts::FRAC_2_PI * (((0.5 * x).ln() + EULER_GAMMA) * j0 + s0);
        Complex64::new(j0, y0)
    } else {
        let kmax = ((2.0 * x) as u32).min(30);
        let mut coeff = 1.0;
        let mut acc = Complex64::new(1.0, 0.0);
        for k in 1..=kmax {
            let odd = (2 * k - 1) as f64;
            coeff *= -odd * odd / (8.0 * k as f64);
            let ik = match k % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
            acc += ik * (coeff / x.powi(k as i32));
        }
        let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
        Complex64::from_polar(amp, x - std::f64::consts::FRAC_PI_4) * acc
    }
}

#[test]
fn acceptance_9_numerics_floor_and_determinism() {
    let started = Instant::now();

    // Hankel function vs the independent oracle on 500 points of (0, 100].
    let mut rng = Prng::seed(0xbe55e1);
    for _ in 0..500 {
        let x = rng.uniform_in(1e-3, 100.0);
        let h = qinv::num::hankel1_0(x).unwrap();
        let oracle = hankel_oracle(x);
        assert!(
            (h - oracle).norm() <= 1e-10 * oracle.norm(),
            "hankel mismatch at x = {}",
            x
        );
    }

    // SVD reconstruction on 100 random matrices up to 64 x 64.
    for _ in 0..100 {
        let rows = 1 + (rng.next_u64() % 64) as usize;
        let cols = 1 + (rng.next_u64() % 64) as usize;
        let a = random_matrix(&mut rng, rows, cols);
        let dec = svd(&a).unwrap();
        let k = dec.singular_values.len();
        let mut us = dec.u.clone();
        for j in 0..k {
            for i in 0..rows {
                us[(i, j)] *= Complex64::new(dec.singular_values[j], 0.0);
            }
        }
        let err = us
            .matmul(&dec.v.hermitian_transpose())
            .unwrap()
            .sub(&a)
            .unwrap()
            .frobenius_norm();
        assert!(
            err <= 1e-10 * dec.singular_values[0].max(1e-300),
            "svd reconstruction {}x{} error {}",
            rows,
            cols,
            err
        );
    }

    // Determinism: the config-driven runs repeated (and with a different
    // worker count) produce byte-identical output files.
    for text in [qinv::demo::FIG3_CONFIG, qinv::demo::FIG6_CONFIG] {
        let config = parse_config(text).unwrap();
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let run = |dir: &std::path::Path, threads: usize| {
            run_experiment(
                &config,
                &RunOverrides {
                    out_dir: Some(dir.to_path_buf()),
                    threads: Some(threads),
                    seed: None,
                    export_data: None,
                },
            )
            .unwrap()
        };
        let a = run(dir_a.path(), 1);
        let b = run(dir_b.path(), 4);
        assert_eq!(a.outputs, b.outputs, "{}: manifests disagree", config.name);
        for (name, _) in &a.outputs {
            let bytes_a = std::fs::read(dir_a.path().join(name)).unwrap();
            let bytes_b = std::fs::read(dir_b.path().join(name)).unwrap();
            assert_eq!(
                bytes_a, bytes_b,
                "{}: {} differs between runs",
                config.name, name
            );
        }
    }

    println!(
        "ACCEPTANCE 9 (numerics floor and determinism): PASS ({:.1}s)",
        started.elapsed().as_secs_f64()
    );
}
