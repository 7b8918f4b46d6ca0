//! Finite sections of the exponential family `f_jk(t) = (−t)^k e^{−λ_j t}`.
//!
//! Minimality of the family on `[0, ν]` (existence of a biorthogonal
//! sequence) is the hypothesis behind the closure-independence and
//! controllability results. It is a property of the *infinite* family and
//! cannot be certified numerically; what can be computed is finite-section
//! evidence: the Gram matrix of the first `n` functions, its smallest
//! eigenvalue (the *minimality margin*), and the truncated biorthogonal
//! sequence obtained by inverting the section. All verdicts built on top of
//! these quantities are labelled as finite-section evidence, never as a proof
//! of minimality of the infinite family.
//!
//! Gram entries are computed from the closed-form antiderivatives of
//! `t^p e^{−at}`; an adaptive-quadrature route is available as an independent
//! cross-check.

use nalgebra::{Cholesky, DMatrix};
use num_complex::Complex;

use crate::linalg::hermitian_eigen_desc;
use crate::quad::adaptive_simpson;
use crate::spectral::ModalSystem;
use crate::{Complex64, Error, Result};

/// One family member: `f(t) = (−t)^power · e^{−lambda t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyEntry {
    pub lambda: Complex64,
    pub power: usize,
}

impl FamilyEntry {
    /// Value of the member at `t`.
    pub fn value(&self, t: f64) -> Complex64 {
        let base = (-self.lambda * Complex::new(t, 0.0)).exp();
        base * Complex::new((-t).powi(self.power as i32), 0.0)
    }
}

/// Ordered exponential family on `[0, ν]`.
///
/// Entries must be pairwise distinct and, for each eigenvalue present, the
/// powers must form the contiguous range `0..α`, so the family spans
/// `{t^k e^{−λt} : k < α}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialFamily {
    entries: Vec<FamilyEntry>,
    interval_end: f64,
}

impl ExponentialFamily {
    pub fn new(entries: Vec<FamilyEntry>, interval_end: f64) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("family must be nonempty"));
        }
        if !(interval_end.is_finite() && interval_end > 0.0) {
            return Err(Error::invalid("interval end must be positive"));
        }
        for (i, a) in entries.iter().enumerate() {
            if !a.lambda.re.is_finite() || !a.lambda.im.is_finite() {
                return Err(Error::invalid("family eigenvalues must be finite"));
            }
            for b in entries.iter().skip(i + 1) {
                if a.lambda == b.lambda && a.power == b.power {
                    return Err(Error::invalid(format!(
                        "duplicate family entry (λ = {}, k = {})",
                        a.lambda, a.power
                    )));
                }
            }
        }
        // contiguous power range per eigenvalue
        let mut lambdas: Vec<Complex64> = entries.iter().map(|e| e.lambda).collect();
        lambdas.dedup();
        let mut seen: Vec<Complex64> = Vec::new();
        for &lam in &lambdas {
            if seen.contains(&lam) {
                continue;
            }
            seen.push(lam);
            let mut powers: Vec<usize> = entries
                .iter()
                .filter(|e| e.lambda == lam)
                .map(|e| e.power)
                .collect();
            powers.sort_unstable();
            if powers.iter().enumerate().any(|(i, &p)| p != i) {
                return Err(Error::invalid(format!(
                    "powers for λ = {lam} must form a contiguous range starting at 0"
                )));
            }
        }
        Ok(ExponentialFamily {
            entries,
            interval_end,
        })
    }

    /// Family generated by a modal system: entries `(λ_j, k)` for
    /// `k = 0..α_j−1` in mode order, on `[0, ν]` with `ν` the system's
    /// minimality interval.
    pub fn from_system(system: &ModalSystem) -> Result<Self> {
        if system.mode_count() == 0 {
            return Err(Error::invalid("system has no modes"));
        }
        if system.minimality_interval() == 0.0 {
            return Err(Error::invalid(
                "system has ν = 0; no interval to test minimality on",
            ));
        }
        let mut entries = Vec::new();
        for mode in system.modes() {
            for k in 0..mode.block_dim() {
                entries.push(FamilyEntry {
                    lambda: mode.lambda(),
                    power: k,
                });
            }
        }
        ExponentialFamily::new(entries, system.minimality_interval())
    }

    pub fn entries(&self) -> &[FamilyEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Right end `ν` of the analysis interval.
    pub fn interval_end(&self) -> f64 {
        self.interval_end
    }

    /// Gram matrix `G_ij = ∫_0^ν f_i(t) conj(f_j(t)) dt` of the first `n`
    /// members, Hermitian positive semidefinite by construction.
    pub fn gram_matrix(&self, n: usize, quad: &QuadSpec) -> Result<DMatrix<Complex64>> {
        if n == 0 || n > self.entries.len() {
            return Err(Error::invalid(format!(
                "section size {} out of range 1..={}",
                n,
                self.entries.len()
            )));
        }
        let mut g = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = self.gram_entry(i, j, quad)?;
                g[(i, j)] = v;
                g[(j, i)] = v.conj();
            }
        }
        // fold symmetric rounding noise
        let gh = g.adjoint();
        Ok((g + gh) * Complex::new(0.5, 0.0))
    }

    fn gram_entry(&self, i: usize, j: usize, quad: &QuadSpec) -> Result<Complex64> {
        let fi = self.entries[i];
        let fj = self.entries[j];
        match quad {
            QuadSpec::ClosedForm => {
                // f_i conj(f_j) = (−1)^{k_i+k_j} t^{k_i+k_j} e^{−(λ_i + conj λ_j) t}
                let p = fi.power + fj.power;
                let a = fi.lambda + fj.lambda.conj();
                let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
                Ok(power_exp_integral(p, a, self.interval_end) * Complex::new(sign, 0.0))
            }
            QuadSpec::Adaptive { rel_tol } => adaptive_simpson(
                &|t| fi.value(t) * fj.value(t).conj(),
                0.0,
                self.interval_end,
                *rel_tol,
                48,
            ),
        }
    }

    /// Smallest eigenvalue of the n-th Gram section.
    ///
    /// A positive value certifies linear independence of the first `n`
    /// members on `[0, ν]` and admits a biorthogonal truncation. This is
    /// finite-section evidence, not a proof of minimality of the infinite
    /// family.
    pub fn minimality_margin(&self, n: usize) -> Result<f64> {
        let g = self.gram_matrix(n, &QuadSpec::ClosedForm)?;
        let (values, _) = hermitian_eigen_desc(&g)?;
        Ok(*values.last().unwrap())
    }

    /// Inverts the n-th Gram section to produce the truncated biorthogonal
    /// sequence `y_j = Σ_i C_ji conj(f_i)` with `∫ f_i y_j = δ_ij`.
    ///
    /// Fails with [`Error::IllConditionedFamily`] when the margin falls below
    /// `threshold_rel` times the largest Gram eigenvalue (default `1e−10` via
    /// [`ExponentialFamily::biorthogonal_truncation`]); no regularization is
    /// applied, since a regularized inverse would fake minimality.
    pub fn biorthogonal_truncation_with_threshold(
        &self,
        n: usize,
        threshold_rel: f64,
    ) -> Result<BiorthogonalTruncation> {
        let g = self.gram_matrix(n, &QuadSpec::ClosedForm)?;
        let (values, _) = hermitian_eigen_desc(&g)?;
        let largest = values[0];
        let margin = *values.last().unwrap();
        // NaN-safe gate: anything that is not strictly above the threshold
        // (including a NaN margin) refuses to invert
        if margin.partial_cmp(&(threshold_rel * largest)) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::IllConditionedFamily { margin });
        }

        // Equilibrated Cholesky inverse: D (D G D)^{-1} D with D = diag(G_ii^{-1/2}).
        let d: Vec<f64> = (0..n).map(|i| 1.0 / g[(i, i)].re.sqrt()).collect();
        let mut scaled = g.clone();
        for i in 0..n {
            for j in 0..n {
                scaled[(i, j)] *= Complex::new(d[i] * d[j], 0.0);
            }
        }
        let chol = Cholesky::new(scaled).ok_or(Error::IllConditionedFamily { margin })?;
        let mut inv = chol.inverse();
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] *= Complex::new(d[i] * d[j], 0.0);
            }
        }
        // two Newton refinement sweeps: X ← X (2I − G X) squares the
        // inversion residual without touching the conditioning gate
        let identity = DMatrix::<Complex64>::identity(n, n);
        for _ in 0..2 {
            let correction = &identity * Complex::new(2.0, 0.0) - &g * &inv;
            inv = &inv * correction;
        }

        // Definition of biorthogonality uses the unconjugated product, so the
        // coefficient matrix is the transpose of the (Hermitian) inverse.
        let coefficients = inv.transpose();
        let residual = {
            let r = &g * inv.clone() - &identity;
            r.iter().map(|z| z.norm()).fold(0.0, f64::max)
        };
        Ok(BiorthogonalTruncation {
            family: ExponentialFamily {
                entries: self.entries[..n].to_vec(),
                interval_end: self.interval_end,
            },
            coefficients,
            gram_condition: largest / margin,
            residual,
        })
    }

    /// [`Self::biorthogonal_truncation_with_threshold`] at the default
    /// relative margin gate `1e−10`.
    pub fn biorthogonal_truncation(&self, n: usize) -> Result<BiorthogonalTruncation> {
        self.biorthogonal_truncation_with_threshold(n, 1e-10)
    }
}

/// How Gram entries are integrated.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum QuadSpec {
    /// Closed-form antiderivatives of `t^p e^{−at}` (exact up to rounding).
    #[default]
    ClosedForm,
    /// Adaptive Simpson quadrature to the given relative tolerance;
    /// non-convergence reports the worst subinterval.
    Adaptive { rel_tol: f64 },
}

/// `∫_0^ν t^p e^{−a t} dt`.
///
/// Uses the finite closed form for well-scaled arguments and a cancellation-
/// free series when `|a ν|` is small.
fn power_exp_integral(p: usize, a: Complex64, nu: f64) -> Complex64 {
    let x = a * Complex::new(nu, 0.0);
    if x.norm() < 0.5 {
        // I = ν^{p+1} e^{−x} Σ_{q≥0} p! x^q / (q+p+1)!
        let mut factor = Complex::new(1.0, 0.0); // p! x^q / (q+p+1)! at q=0 is p!/(p+1)! = 1/(p+1)
        factor /= Complex::new((p + 1) as f64, 0.0);
        let mut sum = factor;
        for q in 1..80 {
            factor = factor * x / Complex::new((q + p + 1) as f64, 0.0);
            sum += factor;
            if factor.norm() <= 1e-18 * sum.norm() {
                break;
            }
        }
        (-x).exp() * sum * Complex::new(nu.powi(p as i32 + 1), 0.0)
    } else {
        // I = p!/a^{p+1} (1 − e^{−x} Σ_{m≤p} x^m/m!)
        let mut partial = Complex::new(1.0, 0.0);
        let mut term = Complex::new(1.0, 0.0);
        for m in 1..=p {
            term = term * x / Complex::new(m as f64, 0.0);
            partial += term;
        }
        let mut fact = 1.0;
        for m in 2..=p {
            fact *= m as f64;
        }
        let bracket = Complex::new(1.0, 0.0) - (-x).exp() * partial;
        Complex::new(fact, 0.0) / a.powu(p as u32 + 1) * bracket
    }
}

/// Truncated biorthogonal sequence for the leading section of a family.
#[derive(Debug, Clone)]
pub struct BiorthogonalTruncation {
    family: ExponentialFamily,
    coefficients: DMatrix<Complex64>,
    gram_condition: f64,
    residual: f64,
}

impl BiorthogonalTruncation {
    /// The truncated family the sequence is biorthogonal to.
    pub fn family(&self) -> &ExponentialFamily {
        &self.family
    }

    /// Coefficient matrix `C` with `y_j = Σ_i C_ji conj(f_i)`.
    pub fn coefficients(&self) -> &DMatrix<Complex64> {
        &self.coefficients
    }

    /// Ratio of largest to smallest Gram eigenvalue.
    pub fn gram_condition(&self) -> f64 {
        self.gram_condition
    }

    /// Max deviation of `∫ f_i y_j` from `δ_ij`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Value of the j-th biorthogonal function at `t`.
    pub fn y_value(&self, j: usize, t: f64) -> Complex64 {
        let mut acc = Complex::new(0.0, 0.0);
        for (i, entry) in self.family.entries().iter().enumerate() {
            acc += self.coefficients[(j, i)] * entry.value(t).conj();
        }
        acc
    }

    /// `∫_0^ν f_i y_j dt` recomputed by adaptive quadrature, as an
    /// independent Kronecker check of the truncation.
    pub fn kronecker_check(&self, i: usize, j: usize, rel_tol: f64) -> Result<Complex64> {
        let fi = self.family.entries()[i];
        adaptive_simpson(
            &|t| fi.value(t) * self.y_value(j, t),
            0.0,
            self.family.interval_end(),
            rel_tol,
            48,
        )
    }
}
