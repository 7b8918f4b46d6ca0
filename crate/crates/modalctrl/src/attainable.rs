//! Attainable-set experiments on spectral truncations.
//!
//! The first `n` modes of a [`ModalSystem`] define a finite realization
//! `(A, B)` with `A` block-diagonal in Jordan blocks and `B` the stacked
//! coupling rows. The attainable set of that realization at horizon `t` is
//! the range of the controllability Gramian
//!
//! ```text
//! G(t) = ∫_0^t e^{As} B Bᴴ e^{Aᴴs} ds,
//! ```
//!
//! integrated by Gauss–Legendre panels with the exact Jordan exponential per
//! node and verified by panel doubling. Subspaces are compared with the gap
//! metric (sine of the largest principal angle).
//!
//! The closure-independence experiment computes attainable subspaces over a
//! horizon list and checks that (a) dimensions are non-decreasing in `t` and
//! (b) every pair of horizons above `T + ν` spans the same subspace up to a
//! gap tolerance. This evidences truncation-stable behavior above the
//! threshold; the infinite-dimensional closure statement itself is not a
//! finite computation and is not claimed.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::linalg::hermitian_eigen_desc;
use crate::quad::gauss_legendre;
use crate::spectral::ModalSystem;
use crate::{Complex64, Error, Result};

/// Finite `(A, B)` realization of the first `n` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedRealization {
    a: DMatrix<Complex64>,
    b: DMatrix<Complex64>,
    // (row offset, chain length, eigenvalue) per Jordan chain
    chains: Vec<(usize, usize, Complex64)>,
    modes_used: usize,
}

impl TruncatedRealization {
    /// Assembles the block-diagonal `A` and stacked `B` of the leading `n`
    /// modes.
    pub fn from_system(system: &ModalSystem, n: usize) -> Result<Self> {
        if n == 0 || n > system.mode_count() {
            return Err(Error::invalid(format!(
                "mode count {} out of range 1..={}",
                n,
                system.mode_count()
            )));
        }
        let d = system.state_dim(n);
        let r = system.input_dim();
        let mut a = DMatrix::zeros(d, d);
        let mut b = DMatrix::zeros(d, r);
        let mut off = 0;
        let mut chains = Vec::new();
        for mode in system.modes().iter().take(n) {
            let beta = mode.block_dim();
            a.view_mut((off, off), (beta, beta))
                .copy_from(&mode.mode_matrix());
            b.view_mut((off, 0), (beta, r))
                .copy_from(mode.input_coupling());
            let mut inner = off;
            for &len in mode.chain_lengths() {
                chains.push((inner, len, mode.lambda()));
                inner += len;
            }
            off += beta;
        }
        Ok(TruncatedRealization {
            a,
            b,
            chains,
            modes_used: n,
        })
    }

    pub fn state_dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn input_dim(&self) -> usize {
        self.b.ncols()
    }

    pub fn modes_used(&self) -> usize {
        self.modes_used
    }

    pub fn a_matrix(&self) -> &DMatrix<Complex64> {
        &self.a
    }

    pub fn b_matrix(&self) -> &DMatrix<Complex64> {
        &self.b
    }

    /// `e^{As}` assembled from the exact per-chain Jordan exponentials.
    pub fn state_exponential(&self, s: f64) -> Result<DMatrix<Complex64>> {
        let d = self.state_dim();
        let mut m = DMatrix::zeros(d, d);
        for &(off, len, lambda) in &self.chains {
            let block = crate::spectral::make_jordan_block(lambda, len)?;
            m.view_mut((off, off), (len, len))
                .copy_from(&block.exponential(s)?);
        }
        Ok(m)
    }

    /// Largest `|λ|` across the realization, used to scale quadrature panels.
    fn max_abs_lambda(&self) -> f64 {
        self.chains
            .iter()
            .map(|&(_, _, lambda)| lambda.norm())
            .fold(0.0, f64::max)
    }

    /// Controllability Gramian `G(t)` by panelled Gauss–Legendre quadrature.
    ///
    /// The initial panel count is `max(16, ⌈4·t·max|λ|⌉)`; panels are doubled
    /// until the relative Frobenius change drops below `1e−10`, and the
    /// result is symmetrized to fold rounding noise.
    pub fn gramian(&self, t: f64, quad: &GramianQuad) -> Result<DMatrix<Complex64>> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::invalid("horizon must be positive and finite"));
        }
        let mut panels = quad
            .initial_panels
            .unwrap_or_else(|| ((4.0 * t * self.max_abs_lambda()).ceil() as usize).max(16));
        let mut current = self.gramian_fixed(t, panels, quad.nodes_per_panel)?;
        for _ in 0..quad.max_doublings {
            let refined = self.gramian_fixed(t, panels * 2, quad.nodes_per_panel)?;
            let diff = (&refined - &current).norm();
            let scale = refined.norm().max(f64::MIN_POSITIVE);
            current = refined;
            panels *= 2;
            if diff <= quad.rel_tol * scale {
                let sym = (&current + current.adjoint()) * Complex::new(0.5, 0.0);
                return Ok(sym);
            }
        }
        Err(Error::GramianQuadrature {
            panels,
            rel_change: {
                let refined = self.gramian_fixed(t, panels * 2, quad.nodes_per_panel)?;
                (&refined - &current).norm() / refined.norm().max(f64::MIN_POSITIVE)
            },
        })
    }

    fn gramian_fixed(&self, t: f64, panels: usize, nodes: usize) -> Result<DMatrix<Complex64>> {
        let d = self.state_dim();
        let (xs, ws) = gauss_legendre(nodes);
        let mut acc = DMatrix::<Complex64>::zeros(d, d);
        let width = t / panels as f64;
        for p in 0..panels {
            let left = p as f64 * width;
            let mid = left + 0.5 * width;
            for (x, w) in xs.iter().zip(&ws) {
                let s = mid + 0.5 * width * x;
                let propagated = self.state_exponential(s)? * &self.b;
                let term = &propagated * propagated.adjoint();
                acc += term * Complex::new(w * 0.5 * width, 0.0);
            }
        }
        Ok(acc)
    }

    /// Orthonormal basis of the numerical range of `G(t)`.
    pub fn attainable_subspace(
        &self,
        t: f64,
        rank_tol: f64,
        quad: &GramianQuad,
    ) -> Result<SubspaceBasis> {
        let g = self.gramian(t, quad)?;
        SubspaceBasis::from_gramian(&g, rank_tol)
    }
}

/// Quadrature policy for [`TruncatedRealization::gramian`].
#[derive(Debug, Clone)]
pub struct GramianQuad {
    /// Override for the initial panel count (default: scale with `t·max|λ|`).
    pub initial_panels: Option<usize>,
    pub nodes_per_panel: usize,
    /// Relative Frobenius tolerance for the doubling check.
    pub rel_tol: f64,
    pub max_doublings: usize,
}

impl Default for GramianQuad {
    fn default() -> Self {
        GramianQuad {
            initial_panels: None,
            nodes_per_panel: 8,
            rel_tol: 1e-10,
            max_doublings: 6,
        }
    }
}

/// Orthonormal basis for a Gramian range, with the full Gramian spectrum
/// retained so the rank decision stays auditable.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    basis: DMatrix<Complex64>,
    gramian_spectrum: Vec<f64>,
    rank_tol: f64,
}

impl SubspaceBasis {
    /// Extracts eigenvectors with eigenvalue above `rank_tol · λ_max`. A zero
    /// Gramian yields an empty basis (a legitimate outcome for zero
    /// coupling).
    pub fn from_gramian(g: &DMatrix<Complex64>, rank_tol: f64) -> Result<Self> {
        if g.nrows() != g.ncols() {
            return Err(Error::invalid("gramian must be square"));
        }
        let (values, vectors) = hermitian_eigen_desc(g)?;
        let max = values.first().copied().unwrap_or(0.0);
        let dim = if max <= 0.0 {
            0
        } else {
            values.iter().filter(|&&v| v > rank_tol * max).count()
        };
        let selected = vectors.columns(0, dim).clone_owned();
        // re-orthonormalize: eigenvectors of clustered eigenvalues can lose
        // orthogonality at the 1e−12 level we promise
        let basis = if dim > 0 {
            let qr = selected.qr();
            qr.q().columns(0, dim).clone_owned()
        } else {
            selected
        };
        Ok(SubspaceBasis {
            basis,
            gramian_spectrum: values,
            rank_tol,
        })
    }

    /// Orthonormal columns spanning the subspace.
    pub fn basis(&self) -> &DMatrix<Complex64> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Eigenvalues of the generating Gramian, non-increasing.
    pub fn gramian_spectrum(&self) -> &[f64] {
        &self.gramian_spectrum
    }

    pub fn rank_tol(&self) -> f64 {
        self.rank_tol
    }

    /// Builds a basis directly from (not necessarily orthonormal) spanning
    /// columns.
    ///
    /// Rank comes from the singular values; the orthonormal columns come
    /// from a column-pivoted QR, whose Householder basis keeps exactly-zero
    /// rows exactly zero (left singular vectors carry √ε-level noise there).
    pub fn from_columns(columns: &DMatrix<Complex64>, rank_tol: f64) -> Result<Self> {
        let mut sv = crate::linalg::singular_values_desc(columns);
        let smax = sv.first().copied().unwrap_or(0.0);
        let dim = if smax == 0.0 {
            0
        } else {
            sv.iter().filter(|&&s| s > rank_tol * smax).count()
        };
        let qr = columns.clone().col_piv_qr();
        let basis = qr.q().columns(0, dim).clone_owned();
        // squared singular values of the columns are the eigenvalues of the
        // Gramian the columns would generate
        for s in &mut sv {
            *s *= *s;
        }
        Ok(SubspaceBasis {
            basis,
            gramian_spectrum: sv,
            rank_tol,
        })
    }
}

/// Gap between two subspaces: the sine of the largest principal angle,
/// `σ_max((I − UUᴴ)V)`, clipped to [0, 1]. Subspaces of different dimension
/// are at gap 1 by convention.
pub fn subspace_distance(u: &SubspaceBasis, v: &SubspaceBasis) -> f64 {
    if u.dim() != v.dim() {
        return 1.0;
    }
    if u.dim() == 0 {
        return 0.0;
    }
    let uh_v = u.basis.adjoint() * &v.basis;
    let residual = &v.basis - &u.basis * uh_v;
    let sv = crate::linalg::singular_values_desc(&residual);
    sv.first().copied().unwrap_or(0.0).clamp(0.0, 1.0)
}

/// Verdict for one horizon pair in the independence experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct PairVerdict {
    /// Indices into the horizon list.
    pub pair: (usize, usize),
    pub distance: f64,
    pub dims: (usize, usize),
    /// Both horizons exceed `T + ν`.
    pub above_threshold: bool,
    pub verdict: PairOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairOutcome {
    /// Both horizons above the threshold and the gap is below tolerance.
    Pass,
    /// Both horizons above the threshold but the gap exceeds tolerance.
    Fail,
    /// At least one horizon at or below `T + ν`: the criterion is silent.
    Undetermined,
}

/// Results of the closure-independence experiment.
#[derive(Debug, Clone)]
pub struct IndependenceReport {
    pub horizons: Vec<f64>,
    pub dimensions: Vec<usize>,
    /// Symmetric gap matrix with zero diagonal.
    pub distances: DMatrix<f64>,
    /// `T + ν` for the system examined.
    pub threshold_time: f64,
    pub pairs: Vec<PairVerdict>,
    /// Subspace dimension never decreased along the horizon list.
    pub monotone_dimensions: bool,
    /// Modes included in the truncation.
    pub modes_used: usize,
}

impl IndependenceReport {
    /// True when no above-threshold pair failed and dimensions are monotone.
    pub fn passed(&self) -> bool {
        self.monotone_dimensions && self.pairs.iter().all(|p| p.verdict != PairOutcome::Fail)
    }
}

/// Options for [`closure_independence_experiment`].
#[derive(Debug, Clone)]
pub struct IndependenceOptions {
    pub rank_tol: f64,
    /// Gap tolerance for pairs above the threshold.
    pub distance_tol: f64,
    pub quad: GramianQuad,
}

impl Default for IndependenceOptions {
    fn default() -> Self {
        IndependenceOptions {
            rank_tol: 1e-8,
            distance_tol: 1e-6,
            quad: GramianQuad::default(),
        }
    }
}

/// Computes attainable subspaces for every horizon on the `n`-mode
/// truncation and compares them pairwise.
pub fn closure_independence_experiment(
    system: &ModalSystem,
    horizons: &[f64],
    n: usize,
    options: &IndependenceOptions,
) -> Result<IndependenceReport> {
    if horizons.is_empty() {
        return Err(Error::invalid("need at least one horizon"));
    }
    if horizons.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(Error::invalid("horizons must be positive and finite"));
    }
    if horizons.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("horizons must be strictly increasing"));
    }
    let realization = TruncatedRealization::from_system(system, n)?;
    // horizons are independent; fan out across TOOL_THREADS workers
    let bases = crate::parallel::par_map(horizons, |&t| {
        realization.attainable_subspace(t, options.rank_tol, &options.quad)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let dimensions: Vec<usize> = bases.iter().map(|b| b.dim()).collect();
    let monotone_dimensions = dimensions.windows(2).all(|w| w[0] <= w[1]);
    let threshold_time = system.expansion_time() + system.minimality_interval();

    let m = horizons.len();
    let mut distances = DMatrix::zeros(m, m);
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let d = subspace_distance(&bases[i], &bases[j]);
            distances[(i, j)] = d;
            distances[(j, i)] = d;
            let above = horizons[i] > threshold_time && horizons[j] > threshold_time;
            let verdict = if !above {
                PairOutcome::Undetermined
            } else if d <= options.distance_tol {
                PairOutcome::Pass
            } else {
                PairOutcome::Fail
            };
            pairs.push(PairVerdict {
                pair: (i, j),
                distance: d,
                dims: (dimensions[i], dimensions[j]),
                above_threshold: above,
                verdict,
            });
        }
    }
    Ok(IndependenceReport {
        horizons: horizons.to_vec(),
        dimensions,
        distances,
        threshold_time,
        pairs,
        monotone_dimensions,
        modes_used: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::SpectralMode;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex::new(re, im)
    }

    fn simple_mode(lam: Complex64, coupling: Complex64) -> SpectralMode {
        SpectralMode::new(lam, vec![1], DMatrix::from_row_slice(1, 1, &[coupling])).unwrap()
    }

    #[test]
    fn realize_single_mode() {
        let sys =
            ModalSystem::new(vec![simple_mode(c(-1.0, 0.0), c(1.0, 0.0))], 1, 0.0, 1.0).unwrap();
        let real = TruncatedRealization::from_system(&sys, 1).unwrap();
        assert_eq!(real.state_dim(), 1);
        assert_eq!(real.a_matrix()[(0, 0)], c(-1.0, 0.0));
        assert_eq!(real.b_matrix()[(0, 0)], c(1.0, 0.0));
    }

    #[test]
    fn realize_lays_out_blocks_in_order() {
        let modes = vec![
            simple_mode(c(-1.0, 0.0), c(1.0, 0.0)),
            SpectralMode::new(
                c(0.0, 2.0),
                vec![2],
                DMatrix::from_row_slice(2, 1, &[c(0.0, 0.0), c(1.0, 0.0)]),
            )
            .unwrap(),
        ];
        let sys = ModalSystem::new(modes, 1, 0.0, 1.0).unwrap();
        let real = TruncatedRealization::from_system(&sys, 2).unwrap();
        assert_eq!(real.state_dim(), 3);
        assert_eq!(real.a_matrix()[(0, 0)], c(-1.0, 0.0));
        assert_eq!(real.a_matrix()[(1, 1)], c(0.0, 2.0));
        assert_eq!(real.a_matrix()[(1, 2)], c(1.0, 0.0));
        assert_eq!(real.a_matrix()[(2, 2)], c(0.0, 2.0));
        assert_eq!(real.a_matrix()[(2, 1)], c(0.0, 0.0));
        assert_eq!(real.b_matrix()[(2, 0)], c(1.0, 0.0));
    }

    #[test]
    fn out_of_range_truncation_errors() {
        let sys =
            ModalSystem::new(vec![simple_mode(c(-1.0, 0.0), c(1.0, 0.0))], 1, 0.0, 1.0).unwrap();
        assert!(TruncatedRealization::from_system(&sys, 0).is_err());
        assert!(TruncatedRealization::from_system(&sys, 2).is_err());
    }

    #[test]
    fn integrator_gramian_is_the_horizon() {
        // a = 0, b = 1: G(t) = t
        let sys =
            ModalSystem::new(vec![simple_mode(c(0.0, 0.0), c(1.0, 0.0))], 1, 0.0, 1.0).unwrap();
        let real = TruncatedRealization::from_system(&sys, 1).unwrap();
        for t in [0.5, 1.0, 3.0] {
            let g = real.gramian(t, &GramianQuad::default()).unwrap();
            assert!((g[(0, 0)] - c(t, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn stable_scalar_gramian_matches_closed_form() {
        // a = −1, b = 1: G(t) = (1 − e^{−2t})/2
        let sys =
            ModalSystem::new(vec![simple_mode(c(-1.0, 0.0), c(1.0, 0.0))], 1, 0.0, 1.0).unwrap();
        let real = TruncatedRealization::from_system(&sys, 1).unwrap();
        for t in [0.5, 1.0, 3.0] {
            let g = real.gramian(t, &GramianQuad::default()).unwrap();
            let want = (1.0 - (-2.0 * t).exp()) / 2.0;
            assert!(
                (g[(0, 0)] - c(want, 0.0)).norm() < 1e-12,
                "t = {t}: {} vs {want}",
                g[(0, 0)]
            );
        }
    }

    #[test]
    fn jordan_block_gramian_is_polynomial() {
        // Λ = [[0,1],[0,0]], B = (0;1): e^{As}B = (s;1) and
        // G(t) = [[t³/3, t²/2], [t²/2, t]]
        let mode = SpectralMode::new(
            c(0.0, 0.0),
            vec![2],
            DMatrix::from_row_slice(2, 1, &[c(0.0, 0.0), c(1.0, 0.0)]),
        )
        .unwrap();
        let sys = ModalSystem::new(vec![mode], 1, 0.0, 1.0).unwrap();
        let real = TruncatedRealization::from_system(&sys, 1).unwrap();
        let t = 1.7;
        let g = real.gramian(t, &GramianQuad::default()).unwrap();
        assert!((g[(0, 0)] - c(t * t * t / 3.0, 0.0)).norm() < 1e-12);
        assert!((g[(0, 1)] - c(t * t / 2.0, 0.0)).norm() < 1e-12);
        assert!((g[(1, 1)] - c(t, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn gramian_is_hermitian_psd() {
        let modes = vec![
            simple_mode(c(-0.5, 2.0), c(1.0, -1.0)),
            simple_mode(c(-1.0, -3.0), c(0.3, 0.7)),
            simple_mode(c(0.1, 0.5), c(0.0, 1.0)),
        ];
        let sys = ModalSystem::new(modes, 1, 0.0, 1.0).unwrap();
        let real = TruncatedRealization::from_system(&sys, 3).unwrap();
        let g = real.gramian(2.0, &GramianQuad::default()).unwrap();
        assert!((&g - g.adjoint()).norm() == 0.0);
        let (values, _) = hermitian_eigen_desc(&g).unwrap();
        let max = values[0];
        assert!(values.iter().all(|&v| v >= -1e-12 * max));
    }

    #[test]
    fn full_rank_subspace_for_controllable_scalar() {
        let sys =
            ModalSystem::new(vec![simple_mode(c(0.0, 0.0), c(1.0, 0.0))], 1, 0.0, 1.0).unwrap();
        let real = TruncatedRealization::from_system(&sys, 1).unwrap();
        let basis = real
            .attainable_subspace(0.7, 1e-8, &GramianQuad::default())
            .unwrap();
        assert_eq!(basis.dim(), 1);
    }

    #[test]
    fn zero_coupling_block_is_excluded_from_the_range() {
        let modes = vec![
            simple_mode(c(-1.0, 0.0), c(1.0, 0.0)),
            simple_mode(c(-2.0, 0.0), c(0.0, 0.0)),
        ];
        let sys = ModalSystem::new(modes, 1, 0.0, 1.0).unwrap();
        let real = TruncatedRealization::from_system(&sys, 2).unwrap();
        let basis = real
            .attainable_subspace(1.0, 1e-8, &GramianQuad::default())
            .unwrap();
        assert_eq!(basis.dim(), 1);
        // the uncoupled coordinate carries no component
        assert!(basis.basis()[(1, 0)].norm() < 1e-12);
    }

    #[test]
    fn identical_bases_have_zero_distance() {
        let cols = DMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let u = SubspaceBasis::from_columns(&cols, 1e-12).unwrap();
        let v = SubspaceBasis::from_columns(&cols, 1e-12).unwrap();
        assert_eq!(subspace_distance(&u, &v), 0.0);
    }

    #[test]
    fn orthogonal_lines_have_distance_one() {
        let e1 = DMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let e2 = DMatrix::from_row_slice(2, 1, &[c(0.0, 0.0), c(1.0, 0.0)]);
        let u = SubspaceBasis::from_columns(&e1, 1e-12).unwrap();
        let v = SubspaceBasis::from_columns(&e2, 1e-12).unwrap();
        assert!((subspace_distance(&u, &v) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_line_is_at_forty_five_degrees() {
        let e1 = DMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let diag = DMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(1.0, 0.0)]);
        let u = SubspaceBasis::from_columns(&e1, 1e-12).unwrap();
        let v = SubspaceBasis::from_columns(&diag, 1e-12).unwrap();
        let want = (std::f64::consts::FRAC_PI_4).sin();
        assert!((subspace_distance(&u, &v) - want).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_reports_unit_distance() {
        let one = DMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let two =
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let u = SubspaceBasis::from_columns(&one, 1e-12).unwrap();
        let v = SubspaceBasis::from_columns(&two, 1e-12).unwrap();
        assert_eq!(subspace_distance(&u, &v), 1.0);
    }

    #[test]
    fn controllable_ode_is_horizon_independent() {
        let modes = vec![
            simple_mode(c(-1.0, 0.0), c(1.0, 0.0)),
            simple_mode(c(-2.0, 0.0), c(1.0, 0.0)),
            simple_mode(c(-3.0, 0.0), c(0.5, 0.0)),
        ];
        let sys = ModalSystem::new(modes, 1, 0.0, 0.5).unwrap();
        let report =
            closure_independence_experiment(&sys, &[1.0, 2.0], 3, &IndependenceOptions::default())
                .unwrap();
        assert_eq!(report.dimensions, vec![3, 3]);
        assert!(report.monotone_dimensions);
        assert!(report.distances[(0, 1)] < 1e-8);
        assert!(report.passed());
        assert!(report.pairs.iter().all(|p| p.verdict == PairOutcome::Pass));
    }

    #[test]
    fn horizons_below_threshold_are_undetermined() {
        let sys =
            ModalSystem::new(vec![simple_mode(c(-1.0, 0.0), c(1.0, 0.0))], 1, 1.0, 1.0).unwrap();
        // threshold 2.0: the pair (0.5, 1.0) is undetermined
        let report =
            closure_independence_experiment(&sys, &[0.5, 1.0], 1, &IndependenceOptions::default())
                .unwrap();
        assert!(report
            .pairs
            .iter()
            .all(|p| p.verdict == PairOutcome::Undetermined));
        assert!(report.passed());
    }

    #[test]
    fn exhausted_refinement_reports_panel_diagnostics() {
        let sys =
            ModalSystem::new(vec![simple_mode(c(-0.3, 9.0), c(1.0, 0.0))], 1, 0.0, 1.0).unwrap();
        let real = TruncatedRealization::from_system(&sys, 1).unwrap();
        let quad = GramianQuad {
            initial_panels: Some(1),
            nodes_per_panel: 2,
            rel_tol: 1e-300,
            max_doublings: 1,
        };
        match real.gramian(2.0, &quad) {
            Err(Error::GramianQuadrature { panels, rel_change }) => {
                assert!(panels >= 2);
                assert!(rel_change > 1e-300);
            }
            other => panic!("expected quadrature error, got {other:?}"),
        }
    }

    #[test]
    fn horizon_validation() {
        let sys =
            ModalSystem::new(vec![simple_mode(c(-1.0, 0.0), c(1.0, 0.0))], 1, 0.0, 1.0).unwrap();
        let opts = IndependenceOptions::default();
        assert!(closure_independence_experiment(&sys, &[], 1, &opts).is_err());
        assert!(closure_independence_experiment(&sys, &[2.0, 1.0], 1, &opts).is_err());
        assert!(closure_independence_experiment(&sys, &[-1.0, 1.0], 1, &opts).is_err());
    }
}
