//! Greedy sparse least squares in the batch-OMP style, plus a brute-force
//! oracle for tests.
//!
//! A problem is either a dictionary/target pair (minimize `|D h - b|`) or a
//! Gram/correlation pair for the quadratic-form indicator path, where the
//! same greedy loop runs on `G = herm(Pi L Pi)` and `p = -Pi L phi_hat`
//! without any dictionary. The batch path precomputes `G = D^H D` and
//! `p = D^H b` once and updates correlations as `p - G[:, S] gamma`, which is
//! the product the per-grid-point sweep shares; the naive path recomputes
//! `D^H r` from an explicit residual every iteration. Both must agree, and a
//! test pins that.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::num::{lstsq_min_norm, ComplexMatrix, ComplexVector};

/// Atoms whose norm falls at or below this fraction of the largest atom are
/// excluded from selection (the projector always has one null direction).
const EXCLUDE_REL_TOL: f64 = 1e-12;

/// Correlations at or below `1e-12 * |target|` stall the greedy loop.
const STALL_REL_TOL: f64 = 1e-12;

/// Rank tolerance for the small support refits.
const REFIT_RANK_TOL: f64 = 1e-12;

/// Sparse solve input: dictionary columns are atoms.
#[derive(Debug, Clone)]
pub struct SparseProblem {
    dictionary: Option<ComplexMatrix>,
    target: Option<ComplexVector>,
    gram: Option<ComplexMatrix>,
    correlation: Option<ComplexVector>,
    /// Constant term of the objective: `|b|^2`, or the quadratic form value
    /// at h = 0 for Gram-only problems.
    constant: f64,
    atom_norms: Vec<f64>,
    excluded: Vec<bool>,
    non_psd: bool,
    n_atoms: usize,
}

impl SparseProblem {
    /// Dictionary/target problem solved by the naive path (explicit residual
    /// recomputation each iteration).
    pub fn from_dictionary(dictionary: ComplexMatrix, target: ComplexVector) -> Result<Self> {
        if dictionary.rows() != target.len() {
            return Err(Error::DimensionMismatch(format!(
                "dictionary {}x{} vs target {}",
                dictionary.rows(),
                dictionary.cols(),
                target.len()
            )));
        }
        let n_atoms = dictionary.cols();
        let atom_norms: Vec<f64> = (0..n_atoms).map(|j| dictionary.column(j).norm()).collect();
        let excluded = mark_excluded(&atom_norms);
        let constant = target.norm_sq();
        Ok(Self {
            dictionary: Some(dictionary),
            target: Some(target),
            gram: None,
            correlation: None,
            constant,
            atom_norms,
            excluded,
            non_psd: false,
            n_atoms,
        })
    }

    /// Switch to the batch path by precomputing `G = D^H D` and `p = D^H b`.
    pub fn with_gram(mut self) -> Result<Self> {
        let d = self
            .dictionary
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("with_gram needs a dictionary".into()))?;
        let b = self
            .target
            .as_ref()
            .expect("dictionary problems carry a target");
        let dh = d.hermitian_transpose();
        self.gram = Some(dh.matmul(d)?);
        self.correlation = Some(dh.matvec(b)?);
        Ok(self)
    }

    /// Batch path with an externally computed Gram and correlation (the grid
    /// sweep derives them by rank-two updates of a shared `L^H L`).
    pub fn with_precomputed_gram(
        mut self,
        gram: ComplexMatrix,
        correlation: ComplexVector,
    ) -> Result<Self> {
        if gram.rows() != self.n_atoms || gram.cols() != self.n_atoms {
            return Err(Error::DimensionMismatch("gram size".into()));
        }
        if correlation.len() != self.n_atoms {
            return Err(Error::DimensionMismatch("correlation size".into()));
        }
        #[cfg(debug_assertions)]
        if let (Some(d), Some(b)) = (&self.dictionary, &self.target) {
            // Contract: the supplied Gram matches the dictionary. Spot-check
            // one row and one correlation entry.
            if self.n_atoms > 0 {
                let col0 = d.column(0);
                for j in 0..self.n_atoms {
                    let direct = d.column(j).inner(&col0).unwrap();
                    debug_assert!(
                        (gram[(0, j)] - direct).norm() <= 1e-12 * (1.0 + direct.norm()),
                        "precomputed gram mismatch at (0, {})",
                        j
                    );
                }
                let direct = b.inner(&col0).unwrap();
                debug_assert!((correlation[0] - direct).norm() <= 1e-12 * (1.0 + direct.norm()));
            }
        }
        self.gram = Some(gram);
        self.correlation = Some(correlation);
        Ok(self)
    }

    /// Quadratic-form problem: greedy loop driven purely by a (nominally
    /// Hermitian positive semi-definite) Gram matrix and correlation vector.
    /// `constant` is the objective value at h = 0. If the Gram's smallest
    /// eigenvalue falls below `-1e-8 *` its largest, the solve proceeds
    /// anyway and the report carries a `non_psd` flag.
    pub fn from_quadratic(
        gram: ComplexMatrix,
        correlation: ComplexVector,
        constant: f64,
    ) -> Result<Self> {
        if !gram.is_square() || gram.rows() != correlation.len() {
            return Err(Error::DimensionMismatch("quadratic problem sizes".into()));
        }
        let n_atoms = gram.rows();
        let atom_norms: Vec<f64> = (0..n_atoms).map(|j| gram[(j, j)].re.abs().sqrt()).collect();
        let excluded = mark_excluded(&atom_norms);
        let non_psd = !is_positive_semidefinite(&gram);
        Ok(Self {
            dictionary: None,
            target: None,
            gram: Some(gram),
            correlation: Some(correlation),
            constant,
            atom_norms,
            excluded,
            non_psd,
            n_atoms,
        })
    }

    pub fn atom_count(&self) -> usize {
        self.n_atoms
    }

    pub fn non_psd(&self) -> bool {
        self.non_psd
    }

    /// Gram matrix and correlation vector of a quadratic-form problem.
    /// Panics for dictionary problems built without a Gram.
    pub fn quadratic_parts(&self) -> (&ComplexMatrix, &ComplexVector) {
        (
            self.gram.as_ref().expect("problem carries a gram"),
            self.correlation
                .as_ref()
                .expect("problem carries a correlation"),
        )
    }

    fn usable_atoms(&self) -> usize {
        self.excluded.iter().filter(|&&e| !e).count()
    }

    /// Scale used by the stall test: `|b|` (or its quadratic analogue).
    fn target_scale(&self) -> f64 {
        self.constant.abs().sqrt()
    }
}

fn mark_excluded(atom_norms: &[f64]) -> Vec<bool> {
    let max_norm = atom_norms.iter().cloned().fold(0.0, f64::max);
    atom_norms
        .iter()
        .map(|&n| n <= EXCLUDE_REL_TOL * max_norm)
        .collect()
}

/// Why a greedy solve stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Requested sparsity (or the usable atom count) reached.
    KReached,
    /// Objective dropped to the requested tolerance.
    TolReached,
    /// All remaining correlations are numerically zero.
    Stalled,
    /// Tolerance never reached within the iteration cap.
    InfeasibleCap,
}

#[derive(Debug, Clone)]
pub struct SparseSolveReport {
    /// Selected atom indices in selection order.
    pub support: Vec<usize>,
    /// Coefficients on the support, same order.
    pub coefficients: Vec<Complex64>,
    /// `|D h - b|` at exit (or `sqrt(|objective|)` for quadratic problems).
    pub residual_norm: f64,
    /// Exit objective: squared residual, or the quadratic surrogate value.
    pub objective: f64,
    /// Objective after 0, 1, 2, ... selections.
    pub trace: Vec<f64>,
    pub termination: Termination,
    /// Set when the quadratic-path Gram failed the PSD check.
    pub non_psd: bool,
}

enum StopRule {
    Sparsity(usize),
    Tolerance { tol: f64, cap: usize },
}

/// Sparsity-constrained greedy solve: select at most `sparsity` atoms by
/// largest norm-scaled correlation, refitting coefficients by least squares
/// on the support after every selection. A sparsity beyond the usable atom
/// count truncates to the atom count.
pub fn omp_k(problem: &SparseProblem, sparsity: usize) -> SparseSolveReport {
    greedy(problem, StopRule::Sparsity(sparsity))
}

/// Error-constrained greedy solve: same loop, stopping as soon as the
/// objective is at or below `tol` (compared on the residual-norm scale). If
/// `cap` selections pass without reaching it, the report says so.
pub fn omp_err(problem: &SparseProblem, tol: f64, cap: usize) -> SparseSolveReport {
    greedy(problem, StopRule::Tolerance { tol, cap })
}

fn greedy(problem: &SparseProblem, rule: StopRule) -> SparseSolveReport {
    let n = problem.n_atoms;
    let stall_floor = STALL_REL_TOL * problem.target_scale();

    let mut support: Vec<usize> = Vec::new();
    let mut coefficients: Vec<Complex64> = Vec::new();
    let mut in_support = vec![false; n];
    let mut objective = problem.constant;
    let mut trace = vec![objective];

    let limit = match rule {
        StopRule::Sparsity(k) => k.min(problem.usable_atoms()),
        StopRule::Tolerance { cap, .. } => cap.min(problem.usable_atoms()),
    };

    let termination = loop {
        if let StopRule::Tolerance { tol, .. } = rule {
            if objective.abs().sqrt() <= tol {
                break Termination::TolReached;
            }
        }
        if support.len() >= limit {
            break match rule {
                StopRule::Sparsity(_) => Termination::KReached,
                StopRule::Tolerance { .. } => Termination::InfeasibleCap,
            };
        }

        // Correlations of the unselected atoms with the current residual.
        let corr = correlations(problem, &support, &coefficients);
        let mut best: Option<(usize, f64)> = None;
        for j in 0..n {
            if in_support[j] || problem.excluded[j] {
                continue;
            }
            let score = corr[j].norm() / problem.atom_norms[j];
            if best.map_or(true, |(_, s)| score > s) {
                best = Some((j, score));
            }
        }
        let (pick, score) = match best {
            Some(b) => b,
            None => break Termination::Stalled,
        };
        if score <= stall_floor {
            break Termination::Stalled;
        }

        support.push(pick);
        in_support[pick] = true;
        coefficients = refit(problem, &support);
        objective = objective_at(problem, &support, &coefficients);
        trace.push(objective);
    };

    SparseSolveReport {
        residual_norm: objective.abs().sqrt(),
        objective,
        support,
        coefficients,
        trace,
        termination,
        non_psd: problem.non_psd,
    }
}

/// Residual correlations per atom. Batch path: `p - G[:, S] gamma`; naive
/// path: `D^H r` with the residual formed explicitly.
fn correlations(
    problem: &SparseProblem,
    support: &[usize],
    coefficients: &[Complex64],
) -> Vec<Complex64> {
    if let (Some(gram), Some(p)) = (&problem.gram, &problem.correlation) {
        let mut corr: Vec<Complex64> = p.entries().to_vec();
        for (s_idx, &atom) in support.iter().enumerate() {
            let gamma = coefficients[s_idx];
            for (row, c) in corr.iter_mut().enumerate() {
                *c -= gram[(row, atom)] * gamma;
            }
        }
        corr
    } else {
        let d = problem
            .dictionary
            .as_ref()
            .expect("no gram means dictionary");
        let r = residual(problem, support, coefficients);
        (0..problem.n_atoms)
            .map(|j| {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..d.rows() {
                    acc += d[(i, j)].conj() * r[i];
                }
                acc
            })
            .collect()
    }
}

fn residual(
    problem: &SparseProblem,
    support: &[usize],
    coefficients: &[Complex64],
) -> ComplexVector {
    let d = problem
        .dictionary
        .as_ref()
        .expect("residual needs a dictionary");
    let b = problem.target.as_ref().expect("residual needs a target");
    let mut r = b.clone();
    for (s_idx, &atom) in support.iter().enumerate() {
        let gamma = coefficients[s_idx];
        for i in 0..d.rows() {
            r[i] -= d[(i, atom)] * gamma;
        }
    }
    r
}

/// Least-squares refit on the support. Dictionary problems solve
/// `min |D_S gamma - b|` directly; Gram-only problems solve the support
/// block of the normal equations `G_SS gamma = p_S`. Both via SVD-truncated
/// minimum-norm least squares, which handles the projector's null direction.
fn refit(problem: &SparseProblem, support: &[usize]) -> Vec<Complex64> {
    if let Some(d) = &problem.dictionary {
        let b = problem
            .target
            .as_ref()
            .expect("dictionary problems carry a target");
        let sub = ComplexMatrix::from_fn(d.rows(), support.len(), |i, s| d[(i, support[s])])
            .expect("finite submatrix");
        let gamma = lstsq_min_norm(&sub, b, REFIT_RANK_TOL).expect("small refit solve");
        gamma.entries().to_vec()
    } else {
        let g = problem.gram.as_ref().expect("gram-only problem");
        let p = problem.correlation.as_ref().expect("gram-only problem");
        let t = support.len();
        let sub = ComplexMatrix::from_fn(t, t, |a, b| g[(support[a], support[b])])
            .expect("finite gram block");
        let rhs =
            ComplexVector::from_entries(support.iter().map(|&j| p[j]).collect()).expect("finite");
        let gamma = lstsq_min_norm(&sub, &rhs, REFIT_RANK_TOL).expect("small refit solve");
        gamma.entries().to_vec()
    }
}

/// Objective at the current iterate: explicit `|D h - b|^2` (ascending index
/// order) when a dictionary exists, otherwise the quadratic surrogate
/// `c0 - 2 Re(gamma^H p_S) + gamma^H G_SS gamma`.
fn objective_at(problem: &SparseProblem, support: &[usize], coefficients: &[Complex64]) -> f64 {
    if problem.dictionary.is_some() {
        residual(problem, support, coefficients).norm_sq()
    } else {
        let g = problem.gram.as_ref().expect("gram-only problem");
        let p = problem.correlation.as_ref().expect("gram-only problem");
        let mut linear = Complex64::new(0.0, 0.0);
        for (s_idx, &atom) in support.iter().enumerate() {
            linear += coefficients[s_idx].conj() * p[atom];
        }
        let mut quad = Complex64::new(0.0, 0.0);
        for (a_idx, &a) in support.iter().enumerate() {
            for (b_idx, &b) in support.iter().enumerate() {
                quad += coefficients[a_idx].conj() * g[(a, b)] * coefficients[b_idx];
            }
        }
        problem.constant - 2.0 * linear.re + quad.re
    }
}

/// Exhaustive oracle over all supports of size `<= sparsity`, guarded to
/// at most 16 atoms and sparsity 3. Ties break toward the support that
/// enumerates first (smaller size, then lexicographic order).
pub fn brute_force_sparse(problem: &SparseProblem, sparsity: usize) -> Result<SparseSolveReport> {
    let n = problem.n_atoms;
    if n > 16 || sparsity > 3 {
        return Err(Error::InvalidArgument(format!(
            "brute_force_sparse guard: {} atoms, sparsity {} (max 16 / 3)",
            n, sparsity
        )));
    }
    if problem.dictionary.is_none() {
        return Err(Error::InvalidArgument(
            "brute_force_sparse needs a dictionary problem".into(),
        ));
    }

    let mut best_support: Vec<usize> = Vec::new();
    let mut best_coefficients: Vec<Complex64> = Vec::new();
    let mut best_objective = problem.constant;

    for size in 1..=sparsity.min(n) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if combo.iter().all(|&j| !problem.excluded[j]) {
                let coeffs = refit(problem, &combo);
                let obj = objective_at(problem, &combo, &coeffs);
                if obj < best_objective {
                    best_objective = obj;
                    best_support = combo.clone();
                    best_coefficients = coeffs;
                }
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }

    Ok(SparseSolveReport {
        residual_norm: best_objective.abs().sqrt(),
        objective: best_objective,
        trace: vec![problem.constant, best_objective],
        support: best_support,
        coefficients: best_coefficients,
        termination: Termination::KReached,
        non_psd: problem.non_psd,
    })
}

/// Advance to the next lexicographic `combo.len()`-combination of `0..n`.
/// Returns false when the enumeration is exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let size = combo.len();
    for i in (0..size).rev() {
        if combo[i] != i + n - size {
            combo[i] += 1;
            for j in (i + 1)..size {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Hermitian PSD check: power-iteration estimate of the largest eigenvalue,
/// then a pivoted Cholesky attempt on `G + 1e-8 lambda_max I`.
fn is_positive_semidefinite(g: &ComplexMatrix) -> bool {
    let n = g.rows();
    if n == 0 {
        return true;
    }
    // Largest eigenvalue magnitude by power iteration from a fixed start.
    let mut v = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    let mut lambda = 0.0;
    for _ in 0..30 {
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for (j, vj) in v.iter().enumerate() {
                w[i] += g[(i, j)] * vj;
            }
        }
        let nrm = w.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
        if nrm == 0.0 {
            return true; // zero matrix is PSD
        }
        lambda = nrm;
        for e in &mut w {
            *e /= nrm;
        }
        v = w;
    }
    let shift = 1e-8 * lambda;
    let floor = 1e-14 * lambda.max(1.0);

    // Cholesky of G + shift I; a pivot below -floor means indefinite beyond
    // the allowed margin. Near-zero pivots zero out their column
    // (semi-definite case).
    let mut l = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for k in 0..n {
        let mut d = g[(k, k)].re + shift;
        for j in 0..k {
            d -= l[k][j].norm_sqr();
        }
        if d < -floor {
            return false;
        }
        if d <= floor {
            // treat as zero pivot
            continue;
        }
        let dk = d.sqrt();
        l[k][k] = Complex64::new(dk, 0.0);
        for i in (k + 1)..n {
            let mut acc = g[(i, k)];
            for j in 0..k {
                acc -= l[i][j] * l[k][j].conj();
            }
            l[i][k] = acc / dk;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{svd, Prng};

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

    /// Unitary columns from the SVD of a random square matrix.
    fn random_orthonormal(rng: &mut Prng, dim: usize, atoms: usize) -> ComplexMatrix {
        let u = svd(&random_matrix(rng, dim, dim)).unwrap().u;
        ComplexMatrix::from_fn(dim, atoms, |i, j| u[(i, j)]).unwrap()
    }

    #[test]
    fn sparsity_zero_returns_target_norm() {
        let mut rng = Prng::seed(1);
        let d = random_matrix(&mut rng, 6, 4);
        let b = random_vector(&mut rng, 6);
        let problem = SparseProblem::from_dictionary(d, b.clone()).unwrap();
        let report = omp_k(&problem, 0);
        assert!(report.support.is_empty());
        assert!((report.residual_norm - b.norm()).abs() <= 1e-14 * b.norm());
        assert_eq!(report.termination, Termination::KReached);
    }

    #[test]
    fn recovers_single_scaled_atom() {
        let mut rng = Prng::seed(2);
        let d = random_matrix(&mut rng, 8, 5);
        let b = d.column(3).scale(Complex64::new(2.5, 0.0));
        let problem = SparseProblem::from_dictionary(d, b).unwrap();
        let report = omp_k(&problem, 2);
        assert_eq!(report.support[0], 3);
        assert!((report.coefficients[0] - Complex64::new(2.5, 0.0)).norm() <= 1e-10);
        assert!(report.residual_norm <= 1e-12);
    }

    #[test]
    fn recovers_two_sparse_combination_on_orthonormal_dictionary() {
        let mut rng = Prng::seed(3);
        let d = random_orthonormal(&mut rng, 8, 8);
        let mut b = ComplexVector::zeros(8);
        for i in 0..8 {
            b[i] = d[(i, 2)] * Complex64::new(3.0, 1.0) + d[(i, 6)] * Complex64::new(-1.5, 0.5);
        }
        let problem = SparseProblem::from_dictionary(d, b).unwrap();
        let greedy = omp_k(&problem, 2);
        assert!(greedy.residual_norm <= 1e-10);
        let mut support = greedy.support.clone();
        support.sort_unstable();
        assert_eq!(support, vec![2, 6]);

        let brute = brute_force_sparse(&problem, 2).unwrap();
        let mut brute_support = brute.support.clone();
        brute_support.sort_unstable();
        assert_eq!(brute_support, vec![2, 6]);
        assert!((brute.residual_norm - greedy.residual_norm).abs() <= 1e-10);
    }

    #[test]
    fn err_mode_with_loose_tolerance_selects_nothing() {
        let mut rng = Prng::seed(4);
        let d = random_matrix(&mut rng, 6, 4);
        let b = random_vector(&mut rng, 6);
        let tol = b.norm() * 1.01;
        let problem = SparseProblem::from_dictionary(d, b).unwrap();
        let report = omp_err(&problem, tol, 4);
        assert!(report.support.is_empty());
        assert_eq!(report.termination, Termination::TolReached);
    }

    #[test]
    fn err_mode_full_rank_square_reaches_lstsq_residual() {
        let mut rng = Prng::seed(5);
        let d = random_matrix(&mut rng, 5, 5);
        let b = random_vector(&mut rng, 5);
        let problem = SparseProblem::from_dictionary(d.clone(), b.clone()).unwrap();
        let report = omp_err(&problem, 0.0, 5);
        assert!(
            report.residual_norm <= 1e-10,
            "residual {}",
            report.residual_norm
        );
        // Compare with the dense minimum-norm solve on the full support.
        let x = lstsq_min_norm(&d, &b, 1e-12).unwrap();
        let dense = d.matvec(&x).unwrap().sub(&b).unwrap().norm();
        assert!((report.residual_norm - dense).abs() <= 1e-10);
    }

    #[test]
    fn err_mode_unreachable_tolerance_hits_cap() {
        let mut rng = Prng::seed(6);
        // Overdetermined, inconsistent: infimum over every support stays
        // positive, so a below-infimum tolerance runs to the cap.
        let d = random_matrix(&mut rng, 8, 3);
        let b = random_vector(&mut rng, 8);
        let problem = SparseProblem::from_dictionary(d, b).unwrap();
        let report = omp_err(&problem, 1e-13, 2);
        assert_eq!(report.termination, Termination::InfeasibleCap);
        assert_eq!(report.support.len(), 2);
    }

    #[test]
    fn brute_force_guard_and_trivial_case() {
        let mut rng = Prng::seed(7);
        let d = random_matrix(&mut rng, 4, 17);
        let b = random_vector(&mut rng, 4);
        let problem = SparseProblem::from_dictionary(d, b.clone()).unwrap();
        assert!(brute_force_sparse(&problem, 2).is_err());

        let d = random_matrix(&mut rng, 4, 6);
        let problem = SparseProblem::from_dictionary(d, b.clone()).unwrap();
        let report = brute_force_sparse(&problem, 0).unwrap();
        assert!((report.residual_norm - b.norm()).abs() <= 1e-14 * b.norm());
    }

    #[test]
    fn brute_force_never_worse_than_greedy() {
        let mut rng = Prng::seed(8);
        for _ in 0..20 {
            let d = random_matrix(&mut rng, 6, 6);
            let b = random_vector(&mut rng, 6);
            let problem = SparseProblem::from_dictionary(d, b).unwrap();
            let brute = brute_force_sparse(&problem, 2).unwrap();
            let greedy = omp_k(&problem, 2);
            assert!(brute.residual_norm <= greedy.residual_norm + 1e-12);
        }
    }

    #[test]
    fn brute_force_enumeration_matches_direct_count() {
        // 6 atoms, sparsity 2: supports of size 0, 1, 2 = 1 + 6 + 15. The
        // oracle must find the same minimum as an independent enumeration.
        let mut rng = Prng::seed(9);
        let d = random_matrix(&mut rng, 5, 6);
        let b = random_vector(&mut rng, 5);
        let problem = SparseProblem::from_dictionary(d.clone(), b.clone()).unwrap();
        let brute = brute_force_sparse(&problem, 2).unwrap();

        let mut best = b.norm_sq();
        let mut count = 1;
        for i in 0..6 {
            let support = vec![i];
            let coeffs = refit(&problem, &support);
            best = best.min(objective_at(&problem, &support, &coeffs));
            count += 1;
        }
        for i in 0..6 {
            for j in (i + 1)..6 {
                let support = vec![i, j];
                let coeffs = refit(&problem, &support);
                best = best.min(objective_at(&problem, &support, &coeffs));
                count += 1;
            }
        }
        assert_eq!(count, 1 + 6 + 15);
        assert!((brute.objective - best).abs() <= 1e-12 * best.max(1.0));
    }

    #[test]
    fn trace_is_nonincreasing_and_monotone_in_sparsity() {
        let mut rng = Prng::seed(10);
        for _ in 0..10 {
            let d = random_matrix(&mut rng, 10, 7);
            let b = random_vector(&mut rng, 10);
            let problem = SparseProblem::from_dictionary(d, b).unwrap();
            let r4 = omp_k(&problem, 4);
            for w in r4.trace.windows(2) {
                assert!(w[1] <= w[0] + 1e-12);
            }
            let r3 = omp_k(&problem, 3);
            assert!(r4.residual_norm <= r3.residual_norm + 1e-12);
        }
    }

    #[test]
    fn err_support_size_nonincreasing_in_tolerance() {
        let mut rng = Prng::seed(11);
        let d = random_matrix(&mut rng, 10, 8);
        let b = random_vector(&mut rng, 10);
        let problem = SparseProblem::from_dictionary(d, b.clone()).unwrap();
        let mut last = usize::MAX;
        for step in 0..10 {
            let tol = b.norm() * step as f64 / 9.0;
            let report = omp_err(&problem, tol, 8);
            assert!(report.support.len() <= last);
            last = report.support.len();
        }
    }

    #[test]
    fn excluded_atoms_never_selected() {
        let mut rng = Prng::seed(12);
        let mut d = random_matrix(&mut rng, 6, 5);
        for i in 0..6 {
            d[(i, 2)] = Complex64::new(0.0, 0.0);
        }
        let b = random_vector(&mut rng, 6);
        let problem = SparseProblem::from_dictionary(d, b).unwrap();
        let report = omp_k(&problem, 5);
        assert!(!report.support.contains(&2));
    }

    #[test]
    fn batch_and_naive_paths_agree() {
        let mut rng = Prng::seed(13);
        for _ in 0..25 {
            let d = random_matrix(&mut rng, 9, 7);
            let b = random_vector(&mut rng, 9);
            let naive = SparseProblem::from_dictionary(d.clone(), b.clone()).unwrap();
            let batch = SparseProblem::from_dictionary(d, b)
                .unwrap()
                .with_gram()
                .unwrap();
            for k in [1usize, 3, 5] {
                let rn = omp_k(&naive, k);
                let rb = omp_k(&batch, k);
                assert_eq!(rn.support, rb.support);
                assert!((rn.residual_norm - rb.residual_norm).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn quadratic_path_matches_dictionary_path_for_psd_gram() {
        // For G = D^H D and p = D^H b the quadratic surrogate equals
        // |D h - b|^2 - |b|^2 + c0; with c0 = |b|^2 both paths minimize the
        // same thing and select the same atoms.
        let mut rng = Prng::seed(14);
        let d = random_matrix(&mut rng, 8, 6);
        let b = random_vector(&mut rng, 8);
        let dict = SparseProblem::from_dictionary(d.clone(), b.clone()).unwrap();
        let dh = d.hermitian_transpose();
        let quad = SparseProblem::from_quadratic(
            dh.matmul(&d).unwrap(),
            dh.matvec(&b).unwrap(),
            b.norm_sq(),
        )
        .unwrap();
        assert!(!quad.non_psd());
        let rd = omp_k(&dict, 3);
        let rq = omp_k(&quad, 3);
        assert_eq!(rd.support, rq.support);
        assert!((rd.objective - rq.objective).abs() <= 1e-8);
    }

    #[test]
    fn indefinite_gram_sets_flag() {
        let mut g = ComplexMatrix::identity(3);
        g[(2, 2)] = Complex64::new(-1.0, 0.0);
        let p = ComplexVector::zeros(3);
        let problem = SparseProblem::from_quadratic(g, p, 0.0).unwrap();
        assert!(problem.non_psd());

        let g = ComplexMatrix::identity(3);
        let p = ComplexVector::zeros(3);
        let problem = SparseProblem::from_quadratic(g, p, 0.0).unwrap();
        assert!(!problem.non_psd());
    }
}
