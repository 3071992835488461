//! Dirichlet kernel and Bessel/Hankel functions of order zero and one.
//!
//! The Bessel evaluations are self-contained: ascending power series
//! (A&S 9.1.10-9.1.13) for x <= 12 and the Hankel large-argument expansion
//! (A&S 9.2.3) with adaptive truncation for x > 12. The crossover sits at 12
//! rather than the usual 8 because the plain asymptotic tail only reaches
//! ~exp(-2x) relative accuracy at its optimal truncation, which first drops
//! below the 1e-10 target near x = 12.

use num_complex::Complex64;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_ASYMPTOTIC_CROSSOVER: f64 = 12.0;

/// `D_N(x) = sum_{k=0}^{N-1} exp(i k x)`, evaluated in closed form
/// `exp(i (N-1) x / 2) sin(N x / 2) / sin(x / 2)` away from x = 0 (mod 2 pi)
/// and as N at those points.
pub fn dirichlet_kernel(n: usize, x: f64) -> Complex64 {
    assert!(n >= 1, "dirichlet_kernel requires n >= 1");
    let half = 0.5 * x;
    let denom = half.sin();
    if denom.abs() < 1e-13 {
        return Complex64::new(n as f64, 0.0);
    }
    let ratio = (n as f64 * half).sin() / denom;
    Complex64::from_polar(1.0, (n as f64 - 1.0) * half) * ratio
}

/// Hankel function of the first kind, order zero: `J0(x) + i Y0(x)`.
/// Errors for x <= 0 (logarithmic singularity at the origin).
pub fn hankel1_0(x: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::Singular(format!(
            "hankel1_0 requires x > 0, got {}",
            x
        )));
    }
    if x <= SERIES_ASYMPTOTIC_CROSSOVER {
        let (j0, j1) = bessel_j01_series(x);
        let (y0, _) = bessel_y01_series(x, j0, j1);
        Ok(Complex64::new(j0, y0))
    } else {
        Ok(hankel_asymptotic(0, x))
    }
}

/// Bessel function of the first kind, order zero. Even in x.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_ASYMPTOTIC_CROSSOVER {
        bessel_j01_series(ax).0
    } else {
        hankel_asymptotic(0, ax).re
    }
}

/// Bessel function of the first kind, order one. Odd in x.
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let j1 = if ax <= SERIES_ASYMPTOTIC_CROSSOVER {
        bessel_j01_series(ax).1
    } else {
        hankel_asymptotic(1, ax).re
    };
    if x < 0.0 {
        -j1
    } else {
        j1
    }
}

/// Bessel function of the second kind, order zero. Requires x > 0.
pub fn bessel_y0(x: f64) -> f64 {
    assert!(x > 0.0, "bessel_y0 requires x > 0");
    if x <= SERIES_ASYMPTOTIC_CROSSOVER {
        let (j0, j1) = bessel_j01_series(x);
        bessel_y01_series(x, j0, j1).0
    } else {
        hankel_asymptotic(0, x).im
    }
}

/// Bessel function of the second kind, order one. Requires x > 0.
pub fn bessel_y1(x: f64) -> f64 {
    assert!(x > 0.0, "bessel_y1 requires x > 0");
    if x <= SERIES_ASYMPTOTIC_CROSSOVER {
        let (j0, j1) = bessel_j01_series(x);
        bessel_y01_series(x, j0, j1).1
    } else {
        hankel_asymptotic(1, x).im
    }
}

/// Ascending series for J0 and J1 (A&S 9.1.10).
fn bessel_j01_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    // J0 = sum (-1)^m q^m / (m!)^2
    let mut term = 1.0;
    let mut j0 = 1.0;
    for m in 1..200 {
        term *= -q / ((m * m) as f64);
        j0 += term;
        if term.abs() < 1e-18 * j0.abs().max(1e-30) {
            break;
        }
    }
    // J1 = (x/2) sum (-1)^m q^m / (m! (m+1)!)
    let mut term = 1.0;
    let mut s = 1.0;
    for m in 1..200 {
        term *= -q / ((m * (m + 1)) as f64);
        s += term;
        if term.abs() < 1e-18 * s.abs().max(1e-30) {
            break;
        }
    }
    (j0, 0.5 * x * s)
}

/// Ascending series for Y0 and Y1 (A&S 9.1.11, 9.1.13), given J0 and J1.
fn bessel_y01_series(x: f64, j0: f64, j1: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let log_half_x = (0.5 * x).ln();
    let two_over_pi = std::f64::consts::FRAC_2_PI;

    // Y0 = (2/pi) [ (ln(x/2) + gamma) J0 + sum_{m>=1} (-1)^{m+1} H_m q^m / (m!)^2 ]
    let mut mag = 1.0; // q^m / (m!)^2
    let mut harmonic = 0.0;
    let mut s0 = 0.0;
    for m in 1..200 {
        mag *= q / ((m * m) as f64);
        harmonic += 1.0 / m as f64;
        let term = if m % 2 == 1 { mag } else { -mag } * harmonic;
        s0 += term;
        if mag * harmonic < 1e-18 * s0.abs().max(1e-30) {
            break;
        }
    }
    let y0 = two_over_pi * ((log_half_x + EULER_GAMMA) * j0 + s0);

    // Y1 = (2/pi)(ln(x/2) + gamma) J1 - 2/(pi x)
    //      - (1/pi) sum_{m>=0} (-1)^m (H_m + H_{m+1}) (x/2)^{2m+1} / (m! (m+1)!)
    let mut mag = 0.5 * x; // (x/2)^{2m+1} / (m! (m+1)!)
    let mut h_m = 0.0;
    let mut h_m1 = 1.0;
    let mut s1 = mag * (h_m + h_m1);
    for m in 1..200 {
        mag *= q / ((m * (m + 1)) as f64);
        h_m += 1.0 / m as f64;
        h_m1 += 1.0 / (m + 1) as f64;
        let term = if m % 2 == 0 { mag } else { -mag } * (h_m + h_m1);
        s1 += term;
        if mag * (h_m + h_m1) < 1e-18 * s1.abs().max(1e-30) {
            break;
        }
    }
    let y1 =
        two_over_pi * (log_half_x + EULER_GAMMA) * j1 - two_over_pi / x - s1 / std::f64::consts::PI;
    (y0, y1)
}

/// Hankel large-argument expansion (A&S 9.2.3):
/// `H_nu^(1)(x) ~ sqrt(2/(pi x)) e^{i(x - nu pi/2 - pi/4)} sum_k i^k a_k(nu) / x^k`
/// with `a_k(nu) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (8 j)`.
/// Truncated adaptively at the smallest term (the series is divergent).
fn hankel_asymptotic(nu: u32, x: f64) -> Complex64 {
    let four_nu_sq = (4 * nu * nu) as f64;
    let mut coeff = 1.0; // a_k(nu)
    let mut acc = Complex64::new(1.0, 0.0);
    let mut prev_mag = 1.0;
    let mut ik = Complex64::new(0.0, 1.0); // i^k
    for k in 1..40u32 {
        let odd = (2 * k - 1) as f64;
        coeff *= (four_nu_sq - odd * odd) / (8.0 * k as f64);
        let mag = coeff.abs() / x.powi(k as i32);
        if mag >= prev_mag || mag < 1e-18 {
            break;
        }
        acc += ik * (coeff / x.powi(k as i32));
        ik *= Complex64::new(0.0, 1.0);
        prev_mag = mag;
    }
    let phase = x - nu as f64 * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
    let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
    Complex64::from_polar(amp, phase) * acc
}
