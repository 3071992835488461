//! Indicator functionals evaluated at one probe.
//!
//! All indicators act on the column space of the data matrix: the probe and
//! every test vector g have length `data.cols()`, and the probe is
//! unit-normalized on entry. The family:
//!
//! * `dsm` - the loss at the normalized probe itself (beamforming for array
//!   data, direct sampling for scattering data).
//! * `kdsm` - minimum of the loss over perturbations `phi_hat + Pi h` with
//!   `|h|_0 <= k`, solved greedily; k = 0 reduces to `dsm` and large k
//!   approaches `infcrit`.
//! * `errdsm` - smallest support size whose loss reaches a tolerance;
//!   candidates show up as maxima because the tolerance is unreachable at
//!   true unknowns and the solve runs to its cap.
//! * `infcrit` - the unconstrained minimum over the probe's orthogonal
//!   complement (dense least squares).
//! * `capon` - closed-form minimizer through `(L^H L + reg I)^{-1}`.
//! * `music` - pseudo-spectrum from the SVD noise subspace.
//!
//! [`IndicatorEngine`] carries the per-sweep precomputations (`L^H L`, the
//! SVD, the Cholesky factor) shared read-only across grid workers; the free
//! functions build a one-off engine and are the reference entry points.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forward::DataMatrix;
use crate::num::{lstsq_min_norm, svd, ComplexMatrix, ComplexVector};
use crate::sparse::{omp_err, omp_k, SparseProblem, SparseSolveReport, Termination};
use crate::steering::ProbeVector;

/// Which loss the indicator minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LossMode {
    /// `|L g|^2` (any shape).
    Residual,
    /// `|g^H L g|^2` (square data only).
    Quadratic,
}

impl LossMode {
    pub fn index(&self) -> u8 {
        match self {
            LossMode::Residual => 0,
            LossMode::Quadratic => 1,
        }
    }

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            0 => Ok(LossMode::Residual),
            1 => Ok(LossMode::Quadratic),
            _ => Err(Error::InvalidArgument(format!(
                "loss mode {} not in {{0, 1}}",
                i
            ))),
        }
    }
}

/// How the error-constrained tolerance is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToleranceMode {
    /// Compare the loss against the tolerance directly.
    Absolute,
    /// Multiply the tolerance by the probe's own `dsm` value first.
    Relative,
}

/// Indicator selection plus the parameters that method requires.
#[derive(Debug, Clone, PartialEq)]
pub enum IndicatorSpec {
    Dsm {
        loss: LossMode,
    },
    KDsm {
        loss: LossMode,
        sparsity: usize,
    },
    ErrDsm {
        loss: LossMode,
        tolerance: f64,
        tolerance_mode: ToleranceMode,
        cap: usize,
    },
    InfCrit {
        loss: LossMode,
    },
    Capon {
        /// Regularization floor added to `L^H L`; `None` picks the default
        /// `1e-10 *` its largest eigenvalue.
        regularization: Option<f64>,
    },
    Music {
        subspace_dim: usize,
    },
}

impl IndicatorSpec {
    /// Short machine-friendly name used in CSV headers and file names.
    pub fn slug(&self) -> String {
        match self {
            IndicatorSpec::Dsm { loss } => format!("dsm{}", loss.index()),
            IndicatorSpec::KDsm { loss, sparsity } => format!("kdsm{}_k{}", loss.index(), sparsity),
            IndicatorSpec::ErrDsm { loss, cap, .. } => format!("errdsm{}_cap{}", loss.index(), cap),
            IndicatorSpec::InfCrit { loss } => format!("infcrit{}", loss.index()),
            IndicatorSpec::Capon { .. } => "capon".to_string(),
            IndicatorSpec::Music { subspace_dim } => format!("music_d{}", subspace_dim),
        }
    }

    pub fn method_name(&self) -> &'static str {
        match self {
            IndicatorSpec::Dsm { .. } => "dsm",
            IndicatorSpec::KDsm { .. } => "kdsm",
            IndicatorSpec::ErrDsm { .. } => "errdsm",
            IndicatorSpec::InfCrit { .. } => "infcrit",
            IndicatorSpec::Capon { .. } => "capon",
            IndicatorSpec::Music { .. } => "music",
        }
    }
}

/// Saturation ceiling for the MUSIC pseudo-spectrum when the probe lies in
/// the signal subspace.
pub const MUSIC_CEILING: f64 = 1e20;

/// One indicator evaluation: a nonnegative finite value plus diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorValue {
    pub value: f64,
    /// Quadratic-path Gram failed its positive semi-definiteness check.
    pub non_psd: bool,
    /// Error-constrained solve ran to its cap without reaching tolerance.
    pub infeasible_cap: bool,
    /// Greedy solve stalled on numerically zero correlations.
    pub stalled: bool,
}

impl IndicatorValue {
    fn plain(value: f64) -> Self {
        Self {
            value,
            non_psd: false,
            infeasible_cap: false,
            stalled: false,
        }
    }

    pub fn flag_bits(&self) -> u8 {
        (self.non_psd as u8) | ((self.infeasible_cap as u8) << 1) | ((self.stalled as u8) << 2)
    }
}

/// `|L g|^2` for mode 0, `|g^H L g|^2` for mode 1 (square data only).
pub fn loss(data: &DataMatrix, g: &ComplexVector, mode: LossMode) -> Result<f64> {
    if g.len() != data.cols() {
        return Err(Error::DimensionMismatch(format!(
            "test vector length {} vs {} data columns",
            g.len(),
            data.cols()
        )));
    }
    match mode {
        LossMode::Residual => Ok(data.matrix.matvec(g)?.norm_sq()),
        LossMode::Quadratic => {
            if !data.matrix.is_square() {
                return Err(Error::DimensionMismatch(
                    "quadratic loss requires square data".into(),
                ));
            }
            let lg = data.matrix.matvec(g)?;
            // (g, L g) conjugates g.
            let form = lg.inner(g)?;
            Ok(form.norm_sqr())
        }
    }
}

/// Per-sweep shared state for one (data, spec) pair.
pub struct IndicatorEngine<'a> {
    data: &'a DataMatrix,
    spec: IndicatorSpec,
    pre: Precompute,
}

enum Precompute {
    /// Nothing beyond the data itself.
    Bare,
    /// `A = L^H L` for the residual-mode solver paths.
    ColumnGram(ComplexMatrix),
    /// Cholesky factor of `A + reg I` plus the reg actually used.
    Capon { factor: Cholesky, reg: f64 },
    /// Leading right-singular-vector block (cols x subspace_dim).
    Music { signal: ComplexMatrix },
}

impl<'a> IndicatorEngine<'a> {
    pub fn new(data: &'a DataMatrix, spec: IndicatorSpec) -> Result<Self> {
        let pre = match &spec {
            IndicatorSpec::Dsm { loss } | IndicatorSpec::InfCrit { loss } => {
                check_quadratic_shape(data, *loss)?;
                Precompute::Bare
            }
            IndicatorSpec::KDsm { loss, .. } | IndicatorSpec::ErrDsm { loss, .. } => {
                check_quadratic_shape(data, *loss)?;
                match loss {
                    LossMode::Residual => Precompute::ColumnGram(column_gram(data)?),
                    LossMode::Quadratic => Precompute::Bare,
                }
            }
            IndicatorSpec::Capon { regularization } => {
                let a = column_gram(data)?;
                let reg = match regularization {
                    Some(r) if *r >= 0.0 => *r,
                    Some(r) => {
                        return Err(Error::InvalidArgument(format!(
                            "capon regularization must be nonnegative, got {}",
                            r
                        )))
                    }
                    None => 1e-10 * largest_eigenvalue(&a),
                };
                let mut shifted = a;
                for i in 0..shifted.rows() {
                    shifted[(i, i)] += Complex64::new(reg, 0.0);
                }
                let factor = Cholesky::new(&shifted).ok_or_else(|| {
                    Error::Singular(
                        "capon normal matrix is singular; supply a positive regularization floor"
                            .into(),
                    )
                })?;
                Precompute::Capon { factor, reg }
            }
            IndicatorSpec::Music { subspace_dim } => {
                let d = *subspace_dim;
                let limit = data.rows().min(data.cols());
                if d < 1 || d >= limit {
                    return Err(Error::InvalidArgument(format!(
                        "music subspace_dim {} not in 1..{}",
                        d, limit
                    )));
                }
                let dec = svd(&data.matrix)?;
                let signal = ComplexMatrix::from_fn(data.cols(), d, |i, j| dec.v[(i, j)])?;
                Precompute::Music { signal }
            }
        };
        Ok(Self { data, spec, pre })
    }

    pub fn spec(&self) -> &IndicatorSpec {
        &self.spec
    }

    /// The regularization actually applied by a capon engine (the supplied
    /// value, or the computed default floor).
    pub fn capon_regularization(&self) -> Option<f64> {
        match &self.pre {
            Precompute::Capon { reg, .. } => Some(*reg),
            _ => None,
        }
    }

    pub fn evaluate(&self, probe: &ProbeVector) -> Result<IndicatorValue> {
        let phi = probe.normalized()?;
        if phi.len() != self.data.cols() {
            return Err(Error::DimensionMismatch(format!(
                "probe length {} vs {} data columns",
                phi.len(),
                self.data.cols()
            )));
        }
        match &self.spec {
            IndicatorSpec::Dsm { loss: mode } => {
                Ok(IndicatorValue::plain(loss(self.data, &phi.vector, *mode)?))
            }
            IndicatorSpec::KDsm {
                loss: mode,
                sparsity,
            } => self.eval_kdsm(&phi.vector, *mode, *sparsity),
            IndicatorSpec::ErrDsm {
                loss: mode,
                tolerance,
                tolerance_mode,
                cap,
            } => self.eval_errdsm(&phi.vector, *mode, *tolerance, *tolerance_mode, *cap),
            IndicatorSpec::InfCrit { loss: mode } => self.eval_infcrit(&phi.vector, *mode),
            IndicatorSpec::Capon { .. } => self.eval_capon(&phi.vector),
            IndicatorSpec::Music { .. } => self.eval_music(&phi.vector),
        }
    }

    /// Dictionary `L Pi` (column j is `L e_j - (L phi) conj(phi_j)`) and
    /// target `-L phi_hat`.
    fn dictionary_and_target(&self, phi: &ComplexVector) -> Result<(ComplexMatrix, ComplexVector)> {
        let l = &self.data.matrix;
        let t = l.matvec(phi)?; // L phi_hat
        let n = l.cols();
        let mut dict = ComplexMatrix::zeros(l.rows(), n);
        for i in 0..l.rows() {
            for j in 0..n {
                dict[(i, j)] = l[(i, j)] - t[i] * phi[j].conj();
            }
        }
        Ok((dict, t.scale(Complex64::new(-1.0, 0.0))))
    }

    /// Residual-mode sparse problem, with Gram/correlation derived from the
    /// shared `L^H L` by a rank-two update.
    fn residual_problem(&self, phi: &ComplexVector) -> Result<SparseProblem> {
        let n = self.data.cols();
        let (dict, target) = self.dictionary_and_target(phi)?;
        let problem = SparseProblem::from_dictionary(dict, target)?;

        if let Precompute::ColumnGram(a) = &self.pre {
            // G = Pi A Pi = A - phi w^H - w phi^H + s phi phi^H with
            // w = A phi, s = phi^H A phi; p = -(w - s phi).
            let w = a.matvec(phi)?;
            let s = w.inner(phi)?; // phi^H A phi conj'd into the right slot
            let s = Complex64::new(s.re, 0.0); // Hermitian A: real quadratic form
            let mut gram = a.clone();
            for i in 0..n {
                for j in 0..n {
                    gram[(i, j)] +=
                        phi[i] * (s * phi[j].conj() - w[j].conj()) - w[i] * phi[j].conj();
                }
            }
            let mut corr = ComplexVector::zeros(n);
            for i in 0..n {
                corr[i] = phi[i] * s - w[i];
            }
            problem.with_precomputed_gram(gram, corr)
        } else {
            Ok(problem)
        }
    }

    /// Gram `herm(Pi L Pi)`, correlation `-Pi L phi_hat`, and constant
    /// `Re(phi^H L phi)` for the quadratic-mode sparse paths.
    fn quadratic_problem(&self, phi: &ComplexVector) -> Result<SparseProblem> {
        let l = &self.data.matrix;
        if !l.is_square() {
            return Err(Error::DimensionMismatch(
                "quadratic indicator requires square data".into(),
            ));
        }
        let n = l.cols();
        let t = l.matvec(phi)?; // L phi
        let r = l.hermitian_transpose().matvec(phi)?; // L^H phi
        let s = t.inner(phi)?; // phi^H L phi

        // Pi L Pi = L - phi r^H - t phi^H + s phi phi^H
        let mut m = l.clone();
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += phi[i] * (s * phi[j].conj() - r[j].conj()) - t[i] * phi[j].conj();
            }
        }
        let mut gram = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                gram[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            }
        }
        let mut corr = ComplexVector::zeros(n);
        for i in 0..n {
            corr[i] = phi[i] * s - t[i];
        }
        SparseProblem::from_quadratic(gram, corr, s.re)
    }

    fn eval_kdsm(
        &self,
        phi: &ComplexVector,
        mode: LossMode,
        sparsity: usize,
    ) -> Result<IndicatorValue> {
        if sparsity == 0 {
            // Identical computation path as dsm, bit for bit.
            return Ok(IndicatorValue::plain(loss(self.data, phi, mode)?));
        }
        match mode {
            LossMode::Residual => {
                let problem = self.residual_problem(phi)?;
                let report = omp_k(&problem, sparsity);
                Ok(report_value(report.objective, &report))
            }
            LossMode::Quadratic => {
                let problem = self.quadratic_problem(phi)?;
                let report = omp_k(&problem, sparsity);
                let g = perturbed_probe(phi, &report);
                let value = loss(self.data, &g, LossMode::Quadratic)?;
                Ok(report_value(value, &report))
            }
        }
    }

    fn eval_errdsm(
        &self,
        phi: &ComplexVector,
        mode: LossMode,
        tolerance: f64,
        tolerance_mode: ToleranceMode,
        cap: usize,
    ) -> Result<IndicatorValue> {
        if tolerance < 0.0 || cap < 1 {
            return Err(Error::InvalidArgument(
                "errdsm needs tolerance >= 0 and cap >= 1".into(),
            ));
        }
        let delta = match tolerance_mode {
            ToleranceMode::Absolute => tolerance,
            ToleranceMode::Relative => tolerance * loss(self.data, phi, mode)?,
        };
        // The solver compares on the residual-norm scale; the loss is its
        // square for both modes.
        let solver_tol = delta.sqrt();
        let report = match mode {
            LossMode::Residual => omp_err(&self.residual_problem(phi)?, solver_tol, cap),
            LossMode::Quadratic => omp_err(&self.quadratic_problem(phi)?, solver_tol, cap),
        };
        Ok(report_value(report.support.len() as f64, &report))
    }

    fn eval_infcrit(&self, phi: &ComplexVector, mode: LossMode) -> Result<IndicatorValue> {
        match mode {
            LossMode::Residual => {
                let (dict, target) = self.dictionary_and_target(phi)?;
                let h = lstsq_min_norm(&dict, &target, 1e-12)?;
                let residual = dict.matvec(&h)?.sub(&target)?;
                Ok(IndicatorValue::plain(residual.norm_sq()))
            }
            LossMode::Quadratic => {
                let problem = self.quadratic_problem(phi)?;
                let (gram, corr) = problem.quadratic_parts();
                let h = lstsq_min_norm(gram, corr, 1e-12)?;
                let g = apply_projector(phi, &h);
                Ok(IndicatorValue {
                    value: loss(self.data, &g, LossMode::Quadratic)?,
                    non_psd: problem.non_psd(),
                    infeasible_cap: false,
                    stalled: false,
                })
            }
        }
    }

    fn eval_capon(&self, phi: &ComplexVector) -> Result<IndicatorValue> {
        let factor = match &self.pre {
            Precompute::Capon { factor, .. } => factor,
            _ => unreachable!("capon engine carries its factorization"),
        };
        let x = factor.solve(phi);
        // phi^H x, real and positive for a positive-definite normal matrix.
        let denom = x.inner(phi)?.re;
        if denom <= 0.0 {
            return Err(Error::Singular(
                "capon denominator vanished; supply a positive regularization floor".into(),
            ));
        }
        let g = x.scale(Complex64::new(1.0 / denom, 0.0));
        Ok(IndicatorValue::plain(loss(
            self.data,
            &g,
            LossMode::Residual,
        )?))
    }

    fn eval_music(&self, phi: &ComplexVector) -> Result<IndicatorValue> {
        let signal = match &self.pre {
            Precompute::Music { signal } => signal,
            _ => unreachable!("music engine carries its subspace"),
        };
        // |P_noise phi|^2 = 1 - |V_s^H phi|^2 for unit phi.
        let mut captured = 0.0;
        for j in 0..signal.cols() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..signal.rows() {
                acc += signal[(i, j)].conj() * phi[i];
            }
            captured += acc.norm_sqr();
        }
        let leak = (1.0 - captured).max(0.0);
        let value = if leak < 1.0 / MUSIC_CEILING {
            MUSIC_CEILING
        } else {
            1.0 / leak
        };
        Ok(IndicatorValue::plain(value))
    }
}

fn report_value(value: f64, report: &SparseSolveReport) -> IndicatorValue {
    IndicatorValue {
        value,
        non_psd: report.non_psd,
        infeasible_cap: report.termination == Termination::InfeasibleCap,
        stalled: report.termination == Termination::Stalled,
    }
}

/// `g = phi_hat + Pi h` with h given sparsely by a solve report.
fn perturbed_probe(phi: &ComplexVector, report: &SparseSolveReport) -> ComplexVector {
    let mut h = ComplexVector::zeros(phi.len());
    for (idx, &atom) in report.support.iter().enumerate() {
        h[atom] = report.coefficients[idx];
    }
    apply_projector(phi, &h)
}

/// `phi + (h - phi (phi^H h))` for unit phi.
fn apply_projector(phi: &ComplexVector, h: &ComplexVector) -> ComplexVector {
    let mut overlap = Complex64::new(0.0, 0.0);
    for (p, hv) in phi.entries().iter().zip(h.entries()) {
        overlap += p.conj() * hv;
    }
    let mut g = phi.clone();
    for i in 0..phi.len() {
        g[i] += h[i] - phi[i] * overlap;
    }
    g
}

fn check_quadratic_shape(data: &DataMatrix, mode: LossMode) -> Result<()> {
    if mode == LossMode::Quadratic && !data.matrix.is_square() {
        return Err(Error::DimensionMismatch(
            "quadratic loss requires square data".into(),
        ));
    }
    Ok(())
}

fn column_gram(data: &DataMatrix) -> Result<ComplexMatrix> {
    let lh = data.matrix.hermitian_transpose();
    lh.matmul(&data.matrix)
}

/// Largest eigenvalue of a Hermitian PSD matrix by power iteration from a
/// fixed start vector (deterministic).
fn largest_eigenvalue(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    if n == 0 {
        return 0.0;
    }
    let mut v = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    let mut lambda = 0.0;
    for _ in 0..50 {
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for (j, vj) in v.iter().enumerate() {
                w[i] += a[(i, j)] * vj;
            }
        }
        let nrm = w.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
        if nrm == 0.0 {
            return 0.0;
        }
        lambda = nrm;
        for e in &mut w {
            *e /= nrm;
        }
        v = w;
    }
    lambda
}

/// Cholesky factor (L L^H) of a Hermitian positive-definite matrix.
/// Pivots at or below `1e-12 x` the largest diagonal entry count as
/// singular (rank-deficient PSD inputs round to tiny positive pivots).
struct Cholesky {
    l: ComplexMatrix,
}

impl Cholesky {
    fn new(a: &ComplexMatrix) -> Option<Self> {
        let n = a.rows();
        let scale = (0..n).map(|i| a[(i, i)].re).fold(0.0, f64::max);
        let pivot_floor = 1e-12 * scale;
        let mut l = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let mut d = a[(k, k)].re;
            for j in 0..k {
                d -= l[(k, j)].norm_sqr();
            }
            if d <= pivot_floor {
                return None;
            }
            let dk = d.sqrt();
            l[(k, k)] = Complex64::new(dk, 0.0);
            for i in (k + 1)..n {
                let mut acc = a[(i, k)];
                for j in 0..k {
                    acc -= l[(i, j)] * l[(k, j)].conj();
                }
                l[(i, k)] = acc / dk;
            }
        }
        Some(Self { l })
    }

    fn solve(&self, b: &ComplexVector) -> ComplexVector {
        let n = self.l.rows();
        // Forward substitution L y = b.
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = b[i];
            for j in 0..i {
                acc -= self.l[(i, j)] * y[j];
            }
            y[i] = acc / self.l[(i, i)];
        }
        // Back substitution L^H x = y.
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in (i + 1)..n {
                acc -= self.l[(j, i)].conj() * x[j];
            }
            x[i] = acc / self.l[(i, i)];
        }
        ComplexVector::from_entries_unchecked(x)
    }
}

// Reference entry points; each builds a one-off engine so the math is the
// same code path the grid sweep uses.

pub fn dsm(data: &DataMatrix, probe: &ProbeVector, mode: LossMode) -> Result<IndicatorValue> {
    IndicatorEngine::new(data, IndicatorSpec::Dsm { loss: mode })?.evaluate(probe)
}

pub fn kdsm(
    data: &DataMatrix,
    probe: &ProbeVector,
    mode: LossMode,
    sparsity: usize,
) -> Result<IndicatorValue> {
    IndicatorEngine::new(
        data,
        IndicatorSpec::KDsm {
            loss: mode,
            sparsity,
        },
    )?
    .evaluate(probe)
}

pub fn errdsm(
    data: &DataMatrix,
    probe: &ProbeVector,
    mode: LossMode,
    tolerance: f64,
    tolerance_mode: ToleranceMode,
    cap: usize,
) -> Result<IndicatorValue> {
    IndicatorEngine::new(
        data,
        IndicatorSpec::ErrDsm {
            loss: mode,
            tolerance,
            tolerance_mode,
            cap,
        },
    )?
    .evaluate(probe)
}

pub fn infcrit(data: &DataMatrix, probe: &ProbeVector, mode: LossMode) -> Result<IndicatorValue> {
    IndicatorEngine::new(data, IndicatorSpec::InfCrit { loss: mode })?.evaluate(probe)
}

pub fn capon(data: &DataMatrix, probe: &ProbeVector, reg: f64) -> Result<IndicatorValue> {
    IndicatorEngine::new(
        data,
        IndicatorSpec::Capon {
            regularization: Some(reg),
        },
    )?
    .evaluate(probe)
}

pub fn music(
    data: &DataMatrix,
    probe: &ProbeVector,
    subspace_dim: usize,
) -> Result<IndicatorValue> {
    IndicatorEngine::new(data, IndicatorSpec::Music { subspace_dim })?.evaluate(probe)
}
