//! The unitary DFT, its restrictions to residue sets, and matrix norms.

use std::f64::consts::PI;
use std::sync::Arc;

use faer::{ColRef, Mat, MatRef};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::{Fft, FftPlanner};

use crate::alphabet::Alphabet;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// `exp(-2πi · idx / n)` for `0 <= idx < n`. The angle is folded into
/// `(-π, π]` before the float conversion so large `n` keeps full accuracy.
pub fn root_of_unity(idx: u64, n: u64) -> Complex64 {
    debug_assert!(idx < n);
    let signed = if idx > n / 2 {
        -((n - idx) as f64)
    } else {
        idx as f64
    };
    let angle = -2.0 * PI * (signed / n as f64);
    let (s, c) = angle.sin_cos();
    Complex64::new(c, s)
}

/// A cached forward/inverse FFT pair of one length, normalized to be unitary.
#[derive(Clone)]
pub struct Dft {
    len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scale: f64,
}

impl std::fmt::Debug for Dft {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dft").field("len", &self.len).finish()
    }
}

impl Dft {
    pub fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Dft {
            len,
            forward: planner.plan_fft_forward(len),
            inverse: planner.plan_fft_inverse(len),
            scale: 1.0 / (len as f64).sqrt(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `𝓕 v` in place, or `𝓕* v` when `inverse` is set.
    pub fn apply(&self, v: &mut [Complex64], inverse: bool) {
        assert_eq!(v.len(), self.len, "DFT length mismatch");
        if self.len == 0 {
            return;
        }
        if inverse {
            self.inverse.process(v);
        } else {
            self.forward.process(v);
        }
        for x in v.iter_mut() {
            *x *= self.scale;
        }
    }

    /// Unnormalized `Σ_m v(m) e^{+2πi tm/N}`.
    pub(crate) fn inverse_unnormalized(&self, v: &mut [Complex64]) {
        self.inverse.process(v);
    }
}

/// Unitary DFT (`inverse = false`) or its adjoint.
pub fn dft_apply(v: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let mut out = v.to_vec();
    Dft::new(v.len()).apply(&mut out, inverse);
    out
}

/// The `|X|×|Y|` matrix `(1/√N) exp(-2πi jℓ/N)`, `j ∈ X`, `ℓ ∈ Y`, with
/// `jℓ mod N` formed in 128-bit arithmetic.
pub fn restricted_dft_matrix(x: &[u64], y: &[u64], n: u64) -> Result<Mat<Complex64>> {
    if n == 0 {
        return Err(Error::out_of_range("N must be positive", n));
    }
    if let Some(&bad) = x.iter().chain(y).find(|&&v| v >= n) {
        return Err(Error::out_of_range("residue must be below N", bad));
    }
    let scale = 1.0 / (n as f64).sqrt();
    Ok(Mat::from_fn(x.len(), y.len(), |r, c| {
        let idx = (x[r] as u128 * y[c] as u128 % n as u128) as u64;
        root_of_unity(idx, n) * scale
    }))
}

/// All singular values, nonincreasing.
pub fn singular_values(m: MatRef<'_, Complex64>) -> Result<Vec<f64>> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(Vec::new());
    }
    m.singular_values()
        .map_err(|e| Error::SolverFailure(format!("{e:?}")))
}

/// Largest singular value, with the default caps.
pub fn op_norm(m: MatRef<'_, Complex64>) -> Result<f64> {
    op_norm_with(m, &Caps::default())
}

pub fn op_norm_with(m: MatRef<'_, Complex64>, caps: &Caps) -> Result<f64> {
    let big = m.nrows().max(m.ncols());
    if big > caps.norm_dim {
        return Err(Error::cap("matrix dimension", big as u128, caps.norm_dim as u128));
    }
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0.0);
    }
    if m.nrows().min(m.ncols()) <= caps.svd_dim {
        return Ok(singular_values(m)?[0]);
    }
    let report = power_norm(
        m.ncols(),
        |v| matvec(m, v),
        |v| matvec_adjoint(m, v),
        PowerOptions {
            tol: 1e-12,
            max_iter: 20_000,
            seed: 0,
        },
    );
    if report.converged {
        Ok(report.norm)
    } else {
        Err(Error::NonConvergence {
            iterations: report.iterations,
            last_change: report.last_change,
        })
    }
}

/// Dense `m · v`.
pub fn matvec(m: MatRef<'_, Complex64>, v: &[Complex64]) -> Vec<Complex64> {
    let y = m * ColRef::from_slice(v);
    (0..y.nrows()).map(|i| y[i]).collect()
}

/// Dense `m^* · v`.
pub fn matvec_adjoint(m: MatRef<'_, Complex64>, v: &[Complex64]) -> Vec<Complex64> {
    let y = m.adjoint() * ColRef::from_slice(v);
    (0..y.nrows()).map(|i| y[i]).collect()
}

pub fn frobenius_norm(m: MatRef<'_, Complex64>) -> f64 {
    m.norm_l2()
}

/// Hilbert–Schmidt norm `√(|X|·|Y|/N)` of `1_X 𝓕_N 1_Y`.
pub fn hs_norm(size_x: u64, size_y: u64, n: u64) -> f64 {
    ((size_x as f64) * (size_y as f64) / n as f64).sqrt()
}

/// `Π_{s=1}^k G_A(j/M^s)`, which equals `𝓕_N(1_{𝒞_k})(j)`.
pub fn indicator_dft_product(alphabet: &Alphabet, k: u32, j: u64) -> Result<Complex64> {
    let n = alphabet.modulus(k)?;
    if j >= n {
        return Err(Error::out_of_range("frequency must be below M^k", j));
    }
    let mut prod = Complex64::new(1.0, 0.0);
    let mut den = 1u64;
    for _ in 0..k {
        den *= alphabet.base();
        prod *= alphabet.g_rational((j % den) as i128, den);
    }
    Ok(prod)
}

/// `(2/N)|sin(π(j-j')(ℓ-ℓ')/N)|`, the modulus of the determinant of the
/// 2×2 minor of `𝓕_N` on rows `{j,j'}` and columns `{ℓ,ℓ'}`. It bounds
/// `σ₁σ₂` of any restriction containing that minor.
pub fn two_point_minor_bound(j: u64, j2: u64, l: u64, l2: u64, n: u64) -> f64 {
    let dj = (j as i128 - j2 as i128).rem_euclid(n as i128);
    let dl = (l as i128 - l2 as i128).rem_euclid(n as i128);
    let r = ((dj as u128 * dl as u128) % n as u128) as f64;
    2.0 / n as f64 * (PI * r / n as f64).sin().abs()
}

#[derive(Debug, Clone, Copy)]
pub struct PowerOptions {
    /// Stop once the relative change of the norm estimate drops below this.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerReport {
    pub norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub last_change: f64,
}

/// Operator norm of `T` by power iteration on `T*T`, from a seeded random
/// start vector.
pub fn power_norm(
    dim: usize,
    apply: impl Fn(&[Complex64]) -> Vec<Complex64>,
    adjoint: impl Fn(&[Complex64]) -> Vec<Complex64>,
    opts: PowerOptions,
) -> PowerReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    normalize(&mut v);
    let mut estimate = 0.0f64;
    let mut last_change = f64::INFINITY;
    for it in 1..=opts.max_iter {
        let w = adjoint(&apply(&v));
        let lambda = l2(&w);
        if lambda == 0.0 || !lambda.is_finite() {
            return PowerReport {
                norm: 0.0,
                iterations: it,
                converged: lambda == 0.0,
                last_change: 0.0,
            };
        }
        let next = lambda.sqrt();
        last_change = ((next - estimate) / next).abs();
        estimate = next;
        v = w.into_iter().map(|x| x / lambda).collect();
        if last_change < opts.tol {
            return PowerReport {
                norm: estimate,
                iterations: it,
                converged: true,
                last_change,
            };
        }
    }
    PowerReport {
        norm: estimate,
        iterations: opts.max_iter,
        converged: false,
        last_change,
    }
}

pub(crate) fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = l2(v);
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn naive_dft(v: &[Complex64]) -> Vec<Complex64> {
        let n = v.len();
        (0..n)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .map(|(l, &x)| {
                        x * Complex64::from_polar(1.0, -2.0 * PI * (j * l) as f64 / n as f64)
                    })
                    .sum::<Complex64>()
                    / (n as f64).sqrt()
            })
            .collect()
    }

    fn random_vec(n: usize, seed: u64) -> Vec<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect()
    }

    #[test]
    fn delta_transforms_to_constant() {
        let mut v = vec![Complex64::new(0.0, 0.0); 4];
        v[0] = Complex64::new(1.0, 0.0);
        for x in dft_apply(&v, false) {
            assert!((x - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn matches_naive_and_inverts() {
        for n in [1, 5, 12, 27] {
            let v = random_vec(n, n as u64);
            let fast = dft_apply(&v, false);
            for (a, b) in fast.iter().zip(naive_dft(&v)) {
                assert!((a - b).norm() < 1e-12);
            }
            assert!((l2(&fast) - l2(&v)).abs() < 1e-12);
            let back = dft_apply(&fast, true);
            for (a, b) in back.iter().zip(&v) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn restricted_entries() {
        let m = restricted_dft_matrix(&[0], &[0], 1).unwrap();
        assert!((m[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let m = restricted_dft_matrix(&[0, 2], &[0, 2], 9).unwrap();
        let expect = [
            [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, -8.0 * PI / 9.0)],
        ];
        for r in 0..2 {
            for c in 0..2 {
                assert!((m[(r, c)] - expect[r][c] / 3.0).norm() < 1e-15);
                assert!((m[(r, c)].norm() - 1.0 / 3.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn phase_exact_at_large_n() {
        let n = 1_000_000_000_000u64;
        let m = restricted_dft_matrix(&[n - 1], &[n - 1], n).unwrap();
        // (N-1)^2 ≡ 1 mod N
        let expect = Complex64::from_polar(1.0 / (n as f64).sqrt(), -2.0 * PI / n as f64);
        assert!((m[(0, 0)] - expect).norm() <= 2.0 * f64::EPSILON / (n as f64).sqrt());
    }

    #[test]
    fn norms_of_small_matrices() {
        let id = Mat::<Complex64>::identity(3, 3);
        assert!((op_norm(id.as_ref()).unwrap() - 1.0).abs() < 1e-12);
        let m = restricted_dft_matrix(&[0, 2], &[0, 2], 3).unwrap();
        // Gram = (1/3)[[2, 1+ω],[1+ω̄, 2]] with |1+ω| = 1: eigenvalues 1 and 1/3
        let sv = singular_values(m.as_ref()).unwrap();
        assert!((sv[0] - 1.0).abs() < 1e-10);
        assert!((sv[1] - (1.0f64 / 3.0).sqrt()).abs() < 1e-10);
        let all: Vec<u64> = (0..16).collect();
        let full = restricted_dft_matrix(&all, &all, 16).unwrap();
        assert!((op_norm(full.as_ref()).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn power_iteration_agrees_with_svd() {
        let x: Vec<u64> = vec![0, 1, 5, 7, 20, 31];
        let y: Vec<u64> = vec![2, 3, 9, 14, 30];
        let m = restricted_dft_matrix(&x, &y, 37).unwrap();
        let caps = Caps {
            svd_dim: 2,
            ..Caps::default()
        };
        let pow = op_norm_with(m.as_ref(), &caps).unwrap();
        let svd = op_norm(m.as_ref()).unwrap();
        assert!((pow - svd).abs() < 1e-9);
        let tiny = Caps {
            norm_dim: 4,
            ..Caps::default()
        };
        assert!(matches!(op_norm_with(m.as_ref(), &tiny), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn hilbert_schmidt() {
        assert!((hs_norm(2, 2, 9) - 2.0 / 3.0).abs() < 1e-15);
        assert!((hs_norm(7, 7, 7) - 7f64.sqrt()).abs() < 1e-14);
        let x = [1u64, 4, 6];
        let y = [0u64, 2, 3, 10];
        let m = restricted_dft_matrix(&x, &y, 11).unwrap();
        let direct: f64 = (0..3)
            .cartesian_product(0..4)
            .map(|(r, c)| m[(r, c)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!((direct - hs_norm(3, 4, 11)).abs() < 1e-12);
        assert!((frobenius_norm(m.as_ref()) - direct).abs() < 1e-12);
    }

    #[test]
    fn indicator_product_formula() {
        let a = Alphabet::new(3, [0, 2]).unwrap();
        let zero = indicator_dft_product(&a, 4, 0).unwrap();
        assert!((zero.re - (2.0 / 3f64.sqrt()).powi(4)).abs() < 1e-12);
        let one = indicator_dft_product(&a, 1, 1).unwrap();
        let expect =
            (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, -4.0 * PI / 3.0)) / 3f64.sqrt();
        assert!((one - expect).norm() < 1e-14);

        let set = a.cantor_set(3).unwrap();
        let mut indicator = vec![Complex64::new(0.0, 0.0); 27];
        for &p in &set.points {
            indicator[p as usize] = Complex64::new(1.0, 0.0);
        }
        let fft = dft_apply(&indicator, false);
        for j in 0..27u64 {
            let prod = indicator_dft_product(&a, 3, j).unwrap();
            assert!((prod - fft[j as usize]).norm() < 1e-10);
        }
    }

    #[test]
    fn minor_bound_matches_determinant() {
        let (j, j2, l, l2_, n) = (3u64, 7u64, 2u64, 11u64, 13u64);
        let m = restricted_dft_matrix(&[j, j2], &[l, l2_], n).unwrap();
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        assert!((det.norm() - two_point_minor_bound(j, j2, l, l2_, n)).abs() < 1e-14);
    }
}
