//! Modal spectral data and exact finite-dimensional kernels.
//!
//! A [`SpectralMode`] packages one eigenvalue `λ_j` with its Jordan chain
//! lengths and the input coupling rows `B*Ψ_j`; a [`ModalSystem`] is an
//! ordered finite list of modes. The semigroup acts on modal coordinates
//! block-by-block through the exact Jordan exponential
//!
//! ```text
//! exp(Λ t) = e^{λt} Σ_{k=0}^{β−1} (t^k / k!) E^k
//! ```
//!
//! with `Λ = λI + E` and `E` the superdiagonal nilpotent. The sum is finite,
//! so no general matrix-exponential machinery is involved; every entry is an
//! explicit product `e^{λt} · t^k / k!`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::{Complex64, Error, Result};

/// One Jordan block `Λ = λI + E` of size `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanBlock {
    lambda: Complex64,
    size: usize,
}

impl JordanBlock {
    /// Builds the block. `size` must be at least 1.
    pub fn new(lambda: Complex64, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("Jordan block size must be >= 1"));
        }
        if !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(Error::invalid("Jordan block eigenvalue must be finite"));
        }
        Ok(JordanBlock { lambda, size })
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Dense `λI + E` with ones on the first superdiagonal. Exact entries.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.size, self.size);
        for i in 0..self.size {
            m[(i, i)] = self.lambda;
            if i + 1 < self.size {
                m[(i, i + 1)] = Complex::new(1.0, 0.0);
            }
        }
        m
    }

    /// The nilpotent part `E = Λ − λI`; `E^β = 0`.
    pub fn nilpotent(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.size, self.size);
        for i in 0..self.size.saturating_sub(1) {
            m[(i, i + 1)] = Complex::new(1.0, 0.0);
        }
        m
    }

    /// `exp(Λ t)` by the explicit finite sum: upper-triangular Toeplitz with
    /// entry `e^{λt} t^k / k!` on the k-th superdiagonal.
    pub fn exponential(&self, t: f64) -> Result<DMatrix<Complex64>> {
        if !t.is_finite() {
            return Err(Error::invalid("time must be finite"));
        }
        let scale = (self.lambda * Complex::new(t, 0.0)).exp();
        let mut m = DMatrix::zeros(self.size, self.size);
        // t^k / k! accumulated multiplicatively to keep entries exact for
        // small k and stable for large β.
        let mut coeff = 1.0f64;
        for k in 0..self.size {
            if k > 0 {
                coeff *= t / k as f64;
            }
            let value = scale * Complex::new(coeff, 0.0);
            for i in 0..self.size - k {
                m[(i, i + k)] = value;
            }
        }
        Ok(m)
    }
}

/// Builds `λI + E` with `E` the superdiagonal nilpotent.
pub fn make_jordan_block(lambda: Complex64, beta: usize) -> Result<JordanBlock> {
    JordanBlock::new(lambda, beta)
}

/// `exp(Λ t)` for a single Jordan block (finite-sum kernel).
pub fn jordan_exp(block: &JordanBlock, t: f64) -> Result<DMatrix<Complex64>> {
    block.exponential(t)
}

/// One eigenvalue `λ_j` with its Jordan structure and input coupling.
///
/// `chain_lengths` lists the Jordan chain lengths `β_j1..β_jm`; their sum is
/// the algebraic multiplicity `α_j`, which must equal the row count of
/// `input_coupling`. Row `l` of the coupling block is `B*ψ_jl` for the l-th
/// generalized adjoint eigenvector; within each chain the rows are ordered so
/// that the chain's *last* row corresponds to the adjoint eigenvector itself.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMode {
    index: usize,
    lambda: Complex64,
    chain_lengths: Vec<usize>,
    input_coupling: DMatrix<Complex64>,
}

impl SpectralMode {
    /// Validates and builds a mode. The index defaults to 1 and is reassigned
    /// when the mode is inserted into a [`ModalSystem`].
    pub fn new(
        lambda: Complex64,
        chain_lengths: Vec<usize>,
        input_coupling: DMatrix<Complex64>,
    ) -> Result<Self> {
        if !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(Error::invalid("eigenvalue must be finite"));
        }
        if chain_lengths.is_empty() {
            return Err(Error::invalid("mode needs at least one Jordan chain"));
        }
        if chain_lengths.contains(&0) {
            return Err(Error::invalid("Jordan chain lengths must be >= 1"));
        }
        let alpha: usize = chain_lengths.iter().sum();
        if input_coupling.nrows() != alpha {
            return Err(Error::invalid(format!(
                "input coupling has {} rows but chain lengths sum to {}",
                input_coupling.nrows(),
                alpha
            )));
        }
        if input_coupling
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::invalid("input coupling entries must be finite"));
        }
        Ok(SpectralMode {
            index: 1,
            lambda,
            chain_lengths,
            input_coupling,
        })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn chain_lengths(&self) -> &[usize] {
        &self.chain_lengths
    }

    /// Algebraic multiplicity `α_j = Σ β_jk` (= modal block dimension).
    pub fn block_dim(&self) -> usize {
        self.chain_lengths.iter().sum()
    }

    /// Stacked coupling rows `B*Ψ_j`, shape `α_j × r`.
    pub fn input_coupling(&self) -> &DMatrix<Complex64> {
        &self.input_coupling
    }

    /// The mode-level matrix `Λ_j`: block-diagonal of one Jordan block per
    /// chain, all with eigenvalue `λ_j`.
    pub fn mode_matrix(&self) -> DMatrix<Complex64> {
        let d = self.block_dim();
        let mut m = DMatrix::zeros(d, d);
        let mut off = 0;
        for &len in &self.chain_lengths {
            let block = JordanBlock {
                lambda: self.lambda,
                size: len,
            };
            m.view_mut((off, off), (len, len))
                .copy_from(&block.matrix());
            off += len;
        }
        m
    }

    /// `exp(Λ_j t)` assembled chain-by-chain from the exact block kernels.
    pub fn mode_exponential(&self, t: f64) -> Result<DMatrix<Complex64>> {
        let d = self.block_dim();
        let mut m = DMatrix::zeros(d, d);
        let mut off = 0;
        for &len in &self.chain_lengths {
            let block = JordanBlock {
                lambda: self.lambda,
                size: len,
            };
            m.view_mut((off, off), (len, len))
                .copy_from(&block.exponential(t)?);
            off += len;
        }
        Ok(m)
    }

    /// Row offsets of each chain block inside the mode, with the row index of
    /// the chain's adjoint eigenvector (its last row).
    pub fn eigenvector_rows(&self) -> Vec<usize> {
        let mut rows = Vec::with_capacity(self.chain_lengths.len());
        let mut off = 0;
        for &len in &self.chain_lengths {
            rows.push(off + len - 1);
            off += len;
        }
        rows
    }
}

/// Deterministic total order on eigenvalues: non-decreasing `|λ|`, ties by
/// argument in `(−π, π]`, then by imaginary part.
pub fn spectral_order(a: Complex64, b: Complex64) -> std::cmp::Ordering {
    let norm_arg = |z: Complex64| {
        let arg = z.im.atan2(z.re);
        // atan2 yields −π only for im = −0.0; fold it onto +π so the
        // comparison key lives in (−π, π].
        if arg == -std::f64::consts::PI {
            std::f64::consts::PI
        } else {
            arg
        }
    };
    a.norm()
        .total_cmp(&b.norm())
        .then_with(|| norm_arg(a).total_cmp(&norm_arg(b)))
        .then_with(|| a.im.total_cmp(&b.im))
}

/// A finite truncation of the spectral data of `(A, B)`: ordered modes plus
/// the expansion onset `T` and the claimed minimality horizon `ν`.
///
/// Construction sorts the modes by [`spectral_order`] and renumbers them
/// `1..=N`, so any permutation of the same modes yields an identical system.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalSystem {
    modes: Vec<SpectralMode>,
    input_dim: usize,
    expansion_time: f64,
    minimality_interval: f64,
}

impl ModalSystem {
    pub fn new(
        mut modes: Vec<SpectralMode>,
        input_dim: usize,
        expansion_time: f64,
        minimality_interval: f64,
    ) -> Result<Self> {
        if input_dim == 0 {
            return Err(Error::invalid("input dimension must be >= 1"));
        }
        if !(expansion_time.is_finite() && expansion_time >= 0.0) {
            return Err(Error::invalid("expansion time T must be finite and >= 0"));
        }
        if !(minimality_interval.is_finite() && minimality_interval >= 0.0) {
            return Err(Error::invalid(
                "minimality interval nu must be finite and >= 0",
            ));
        }
        for (i, mode) in modes.iter().enumerate() {
            if mode.input_coupling.ncols() != input_dim {
                return Err(Error::invalid(format!(
                    "mode {} coupling has {} columns, expected input dimension {}",
                    i,
                    mode.input_coupling.ncols(),
                    input_dim
                )));
            }
        }
        modes.sort_by(|a, b| spectral_order(a.lambda, b.lambda));
        for w in modes.windows(2) {
            if w[0].lambda == w[1].lambda {
                return Err(Error::invalid(format!(
                    "eigenvalues must be pairwise distinct (duplicate {})",
                    w[0].lambda
                )));
            }
        }
        for (i, mode) in modes.iter_mut().enumerate() {
            mode.index = i + 1;
        }
        Ok(ModalSystem {
            modes,
            input_dim,
            expansion_time,
            minimality_interval,
        })
    }

    pub fn modes(&self) -> &[SpectralMode] {
        &self.modes
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    /// Onset `T` of the eigenvector-expansion property.
    pub fn expansion_time(&self) -> f64 {
        self.expansion_time
    }

    /// Claimed minimality horizon `ν` of the exponential family.
    pub fn minimality_interval(&self) -> f64 {
        self.minimality_interval
    }

    /// Total state dimension of the truncation to the first `n` modes.
    pub fn state_dim(&self, n: usize) -> usize {
        self.modes.iter().take(n).map(|m| m.block_dim()).sum()
    }

    /// Builds a modal vector after validating the block layout.
    pub fn vector(&self, blocks: Vec<DVector<Complex64>>) -> Result<ModalVector> {
        if blocks.len() != self.modes.len() {
            return Err(Error::invalid(format!(
                "expected {} blocks, got {}",
                self.modes.len(),
                blocks.len()
            )));
        }
        for (mode, block) in self.modes.iter().zip(&blocks) {
            if block.len() != mode.block_dim() {
                return Err(Error::invalid(format!(
                    "mode {} block has length {}, expected {}",
                    mode.index,
                    block.len(),
                    mode.block_dim()
                )));
            }
        }
        Ok(ModalVector { blocks })
    }

    /// Modal vector with every coordinate equal to `value`.
    pub fn constant_vector(&self, value: Complex64) -> ModalVector {
        ModalVector {
            blocks: self
                .modes
                .iter()
                .map(|m| DVector::from_element(m.block_dim(), value))
                .collect(),
        }
    }

    /// Applies the truncated semigroup `S_n(t)` in modal coordinates:
    /// block `j` maps through `exp(Λ_j t)` for `j ≤ n`, blocks beyond `n`
    /// are zeroed.
    pub fn semigroup_apply(&self, v: &ModalVector, t: f64, n: usize) -> Result<ModalVector> {
        if n == 0 || n > self.modes.len() {
            return Err(Error::invalid(format!(
                "truncation index {} out of range 1..={}",
                n,
                self.modes.len()
            )));
        }
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::invalid("time must be finite and >= 0"));
        }
        if v.blocks.len() != self.modes.len() {
            return Err(Error::invalid("vector layout does not match system"));
        }
        let mut blocks = Vec::with_capacity(v.blocks.len());
        for (j, (mode, block)) in self.modes.iter().zip(&v.blocks).enumerate() {
            if block.len() != mode.block_dim() {
                return Err(Error::invalid("vector layout does not match system"));
            }
            if j < n {
                blocks.push(mode.mode_exponential(t)? * block);
            } else {
                blocks.push(DVector::zeros(block.len()));
            }
        }
        Ok(ModalVector { blocks })
    }
}

/// Coordinates of a state with respect to the modal decomposition: one
/// complex block of length `β_j` per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalVector {
    blocks: Vec<DVector<Complex64>>,
}

impl ModalVector {
    pub fn blocks(&self) -> &[DVector<Complex64>] {
        &self.blocks
    }

    /// Largest per-block Euclidean norm.
    pub fn max_block_norm(&self) -> f64 {
        self.blocks.iter().map(|b| b.norm()).fold(0.0, f64::max)
    }

    /// Largest per-block norm of the difference; layouts must agree.
    pub fn max_block_distance(&self, other: &ModalVector) -> f64 {
        assert_eq!(self.blocks.len(), other.blocks.len(), "layout mismatch");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Deviation of the truncated semigroup from the composition law:
/// `max_j ‖(S_n(t1+t2)v − S_n(t1)S_n(t2)v)_j‖`.
///
/// For exact arithmetic this is identically zero; in floating point it stays
/// below `1e−10 · (1 + ‖v‖)` for moderate times.
pub fn semigroup_composition_deviation(
    system: &ModalSystem,
    v: &ModalVector,
    t1: f64,
    t2: f64,
    n: usize,
) -> Result<f64> {
    let direct = system.semigroup_apply(v, t1 + t2, n)?;
    let stepped = system.semigroup_apply(&system.semigroup_apply(v, t2, n)?, t1, n)?;
    Ok(direct.max_block_distance(&stepped))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex::new(re, im)
    }

    #[test]
    fn scalar_block_is_the_eigenvalue() {
        let b = make_jordan_block(c(2.0, 0.0), 1).unwrap();
        assert_eq!(b.matrix(), DMatrix::from_row_slice(1, 1, &[c(2.0, 0.0)]));
    }

    #[test]
    fn block_of_size_two_has_unit_superdiagonal() {
        let b = make_jordan_block(c(0.0, 1.0), 2).unwrap();
        let m = b.matrix();
        assert_eq!(m[(0, 0)], c(0.0, 1.0));
        assert_eq!(m[(0, 1)], c(1.0, 0.0));
        assert_eq!(m[(1, 0)], c(0.0, 0.0));
        assert_eq!(m[(1, 1)], c(0.0, 1.0));
    }

    #[test]
    fn nilpotent_cubes_to_zero() {
        let b = make_jordan_block(c(0.0, 0.0), 3).unwrap();
        let e = b.nilpotent();
        let e3 = &e * &e * &e;
        assert!(e3.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn zero_size_block_is_rejected() {
        assert!(matches!(
            make_jordan_block(c(1.0, 0.0), 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn two_by_two_exponential_closed_form() {
        let lam = c(0.3, -1.2);
        let t = 0.8;
        let b = make_jordan_block(lam, 2).unwrap();
        let m = jordan_exp(&b, t).unwrap();
        let scale = (lam * c(t, 0.0)).exp();
        assert!((m[(0, 0)] - scale).norm() < 1e-15);
        assert!((m[(0, 1)] - scale * c(t, 0.0)).norm() < 1e-15);
        assert_eq!(m[(1, 0)], c(0.0, 0.0));
        assert!((m[(1, 1)] - scale).norm() < 1e-15);
    }

    #[test]
    fn nilpotent_exponential_partial_sum() {
        let b = make_jordan_block(c(0.0, 0.0), 3).unwrap();
        let m = jordan_exp(&b, 1.0).unwrap();
        let expected = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(0.5, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
            ],
        );
        assert_eq!(m, expected);
    }

    #[test]
    fn exponential_at_zero_is_identity_exactly() {
        let b = make_jordan_block(c(-3.0, 7.0), 5).unwrap();
        let m = jordan_exp(&b, 0.0).unwrap();
        assert_eq!(m, DMatrix::identity(5, 5));
    }

    #[test]
    fn derivative_matches_generator() {
        // d/dt exp(Λt) = Λ exp(Λt), checked by central differences.
        let b = make_jordan_block(c(0.4, 1.3), 4).unwrap();
        let t = 0.9;
        let h = 1e-5;
        let fwd = jordan_exp(&b, t + h).unwrap();
        let bwd = jordan_exp(&b, t - h).unwrap();
        let numeric = (fwd - bwd) / c(2.0 * h, 0.0);
        let exact = b.matrix() * jordan_exp(&b, t).unwrap();
        let scale = exact.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let err = (&numeric - &exact)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(err / scale < 1e-6, "relative error {}", err / scale);
    }

    fn simple_mode(lam: Complex64, coupling: f64) -> SpectralMode {
        SpectralMode::new(
            lam,
            vec![1],
            DMatrix::from_row_slice(1, 1, &[c(coupling, 0.0)]),
        )
        .unwrap()
    }

    #[test]
    fn mode_invariants_enforced() {
        // chain/coupling mismatch
        assert!(SpectralMode::new(c(1.0, 0.0), vec![2], DMatrix::zeros(1, 1)).is_err());
        // zero chain length
        assert!(SpectralMode::new(c(1.0, 0.0), vec![0], DMatrix::zeros(0, 1)).is_err());
        // non-finite coupling
        assert!(SpectralMode::new(
            c(1.0, 0.0),
            vec![1],
            DMatrix::from_row_slice(1, 1, &[c(f64::NAN, 0.0)])
        )
        .is_err());
    }

    #[test]
    fn system_sorts_and_renumbers_deterministically() {
        let modes = vec![
            simple_mode(c(0.0, 2.0), 1.0),
            simple_mode(c(0.0, -1.0), 1.0),
            simple_mode(c(0.0, 1.0), 1.0),
            simple_mode(c(-2.0, 0.0), 1.0),
        ];
        let sys = ModalSystem::new(modes.clone(), 1, 0.0, 1.0).unwrap();
        let lambdas: Vec<Complex64> = sys.modes().iter().map(|m| m.lambda()).collect();
        // |−i| = |i| = 1 < 2; arg(−i) = −π/2 < arg(i) = π/2;
        // |−2| = |2i| = 2: arg(2i) = π/2 < arg(−2) = π.
        assert_eq!(
            lambdas,
            vec![c(0.0, -1.0), c(0.0, 1.0), c(0.0, 2.0), c(-2.0, 0.0)]
        );
        assert_eq!(
            sys.modes().iter().map(|m| m.index()).collect::<Vec<_>>(),
            vec![1, 2, 3, 4]
        );

        // any permutation resorts to the identical list
        let mut permuted = modes;
        permuted.reverse();
        let sys2 = ModalSystem::new(permuted, 1, 0.0, 1.0).unwrap();
        assert_eq!(sys, sys2);
    }

    #[test]
    fn duplicate_eigenvalues_rejected() {
        let modes = vec![simple_mode(c(1.0, 0.0), 1.0), simple_mode(c(1.0, 0.0), 2.0)];
        assert!(ModalSystem::new(modes, 1, 0.0, 1.0).is_err());
    }

    #[test]
    fn semigroup_identity_at_time_zero() {
        let modes = vec![
            simple_mode(c(-1.0, 0.0), 1.0),
            SpectralMode::new(
                c(0.0, 1.5),
                vec![2],
                DMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(0.5, 0.0)]),
            )
            .unwrap(),
        ];
        let sys = ModalSystem::new(modes, 1, 0.0, 1.0).unwrap();
        let v = sys.constant_vector(c(1.0, -0.5));
        let out = sys.semigroup_apply(&v, 0.0, sys.mode_count()).unwrap();
        assert_eq!(out, v);
    }

    #[test]
    fn scalar_mode_halves_at_ln_two() {
        let sys = ModalSystem::new(vec![simple_mode(c(-1.0, 0.0), 1.0)], 1, 0.0, 1.0).unwrap();
        let v = sys.constant_vector(c(1.0, 0.0));
        let out = sys.semigroup_apply(&v, std::f64::consts::LN_2, 1).unwrap();
        assert!((out.blocks()[0][0] - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rotational_modes_return_after_full_period() {
        // λ_j = i·j for j = −2..2; every e^{i j 2π} equals 1.
        let modes: Vec<SpectralMode> = (-2..=2)
            .map(|j| simple_mode(c(0.0, j as f64), 1.0))
            .collect();
        let sys = ModalSystem::new(modes, 1, 0.0, 1.0).unwrap();
        let v = sys.constant_vector(c(1.0, 0.0));
        let out = sys
            .semigroup_apply(&v, 2.0 * std::f64::consts::PI, sys.mode_count())
            .unwrap();
        assert!(out.max_block_distance(&v) < 1e-12);
    }

    #[test]
    fn truncation_zeroes_trailing_blocks() {
        let modes = vec![
            simple_mode(c(-1.0, 0.0), 1.0),
            simple_mode(c(-2.0, 0.0), 1.0),
        ];
        let sys = ModalSystem::new(modes, 1, 0.0, 1.0).unwrap();
        let v = sys.constant_vector(c(1.0, 0.0));
        let out = sys.semigroup_apply(&v, 1.0, 1).unwrap();
        assert!(out.blocks()[0][0].norm() > 0.0);
        assert_eq!(out.blocks()[1][0], c(0.0, 0.0));
    }

    #[test]
    fn truncation_index_out_of_range_errors() {
        let sys = ModalSystem::new(vec![simple_mode(c(-1.0, 0.0), 1.0)], 1, 0.0, 1.0).unwrap();
        let v = sys.constant_vector(c(1.0, 0.0));
        assert!(sys.semigroup_apply(&v, 1.0, 2).is_err());
        assert!(sys.semigroup_apply(&v, 1.0, 0).is_err());
    }

    #[test]
    fn composition_deviation_zero_at_zero_times() {
        let sys = ModalSystem::new(vec![simple_mode(c(-1.0, 2.0), 1.0)], 1, 0.0, 1.0).unwrap();
        let v = sys.constant_vector(c(1.0, 1.0));
        let dev = semigroup_composition_deviation(&sys, &v, 0.0, 0.0, 1).unwrap();
        assert_eq!(dev, 0.0);
    }

    #[test]
    fn nilpotent_composition_is_exact_up_to_rounding() {
        let mode = SpectralMode::new(
            c(0.0, 0.0),
            vec![2],
            DMatrix::from_row_slice(2, 1, &[c(0.0, 0.0), c(1.0, 0.0)]),
        )
        .unwrap();
        let sys = ModalSystem::new(vec![mode], 1, 0.0, 1.0).unwrap();
        let v = sys.constant_vector(c(1.0, 0.0));
        let dev = semigroup_composition_deviation(&sys, &v, 1.0, 2.0, 1).unwrap();
        assert!(dev < 1e-14);
    }

    #[test]
    fn negative_real_axis_sorts_as_positive_argument() {
        // arg(−1 ± 0i) must land on +π, never −π, regardless of the sign
        // of the zero imaginary part.
        assert_eq!(
            spectral_order(c(-1.0, 0.0), c(0.0, 1.0)),
            std::cmp::Ordering::Greater
        );
        let neg_zero = Complex::new(-1.0, -0.0);
        assert_eq!(
            spectral_order(neg_zero, c(0.0, 1.0)),
            std::cmp::Ordering::Greater
        );
    }
}
