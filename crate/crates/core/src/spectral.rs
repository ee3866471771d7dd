//! Spectra of quantum maps: eigenvalues, counting functions, fractal Weyl
//! fits, concentration diagnostics, and resolvent probes.

use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex64;
use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::caps::Caps;
use crate::dft::{l2, power_norm, Dft, PowerOptions};
use crate::error::{Error, Result};
use crate::quantize::{Cutoff, MapInfo, QuantumMap};

/// Resolvent norms above this are reported as [`Error::NearSingular`].
pub const NEAR_SINGULAR: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted by decreasing modulus, then by argument.
    pub eigenvalues: Vec<Complex64>,
    pub source: MapInfo,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn spectral_radius(&self) -> f64 {
        spectral_radius(&self.eigenvalues)
    }

    /// `𝓝(ν) = #{λ : |λ| >= M^{-ν}}`.
    pub fn counting(&self, nu: f64) -> usize {
        counting(&self.eigenvalues, self.source.base, nu)
    }

    /// Eigenvalues with `||λ| - radius| < eps`.
    pub fn annulus_count(&self, radius: f64, eps: f64) -> usize {
        self.eigenvalues
            .iter()
            .filter(|z| (z.norm() - radius).abs() < eps)
            .count()
    }
}

/// All eigenvalues of the working (trimmed if available) matrix.
pub fn eigenvalues(map: &QuantumMap) -> Result<Spectrum> {
    eigenvalues_with(map, &Caps::default())
}

pub fn eigenvalues_with(map: &QuantumMap, caps: &Caps) -> Result<Spectrum> {
    let m = map.working_matrix()?;
    if m.nrows() > caps.eig_dim {
        return Err(Error::cap("eigensolver dimension", m.nrows() as u128, caps.eig_dim as u128));
    }
    let mut eigenvalues = if m.nrows() == 0 {
        Vec::new()
    } else {
        m.eigenvalues()
            .map_err(|e| Error::SolverFailure(format!("{e:?}")))?
    };
    if eigenvalues.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::SolverFailure("non-finite eigenvalue".into()));
    }
    sort_spectrum(&mut eigenvalues);
    Ok(Spectrum {
        eigenvalues,
        source: map.info(),
    })
}

fn sort_spectrum(v: &mut [Complex64]) {
    v.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(a.arg().total_cmp(&b.arg()))
    });
}

pub fn spectral_radius(eigenvalues: &[Complex64]) -> f64 {
    eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn counting(eigenvalues: &[Complex64], base: u64, nu: f64) -> usize {
    let r = (base as f64).powf(-nu);
    eigenvalues.iter().filter(|z| z.norm() >= r).count()
}

/// `m(δ, ν) = min(2ν + 2δ - 1, δ)`, floored at 0.
pub fn weyl_exponent(delta: f64, nu: f64) -> f64 {
    (2.0 * nu + 2.0 * delta - 1.0).min(delta).max(0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylSlope {
    pub nu: f64,
    /// Least-squares slope of `log 𝓝_k(ν) / log M` against `k`, if at least
    /// two levels have a nonzero count.
    pub slope: Option<f64>,
    pub points: usize,
    /// Some level had `𝓝_k(ν) = 0` and was left out.
    pub excluded_zero: bool,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylFit {
    pub base: u64,
    pub symbols: Vec<u64>,
    pub delta: f64,
    pub cutoff: Cutoff,
    pub ks: Vec<u32>,
    pub nus: Vec<f64>,
    /// Trimmed dimension per level.
    pub dimensions: Vec<usize>,
    /// `counts[i][j] = 𝓝_{ks[i]}(nus[j])`.
    pub counts: Vec<Vec<usize>>,
    pub slopes: Vec<WeylSlope>,
}

impl WeylFit {
    /// `log 𝓝_k(ν) / log M`, or `None` for a zero count.
    pub fn log_count(&self, i: usize, j: usize) -> Option<f64> {
        let c = self.counts[i][j];
        (c > 0).then(|| (c as f64).ln() / (self.base as f64).ln())
    }
}

pub fn weyl_fit(alphabet: &Alphabet, ks: &[u32], nus: &[f64], cutoff: Cutoff) -> Result<WeylFit> {
    weyl_fit_with(alphabet, ks, nus, cutoff, &Caps::default())
}

pub fn weyl_fit_with(
    alphabet: &Alphabet,
    ks: &[u32],
    nus: &[f64],
    cutoff: Cutoff,
    caps: &Caps,
) -> Result<WeylFit> {
    if ks.len() < 2 {
        return Err(Error::DegenerateFit(ks.len()));
    }
    let mut counts = Vec::with_capacity(ks.len());
    let mut dimensions = Vec::with_capacity(ks.len());
    for &k in ks {
        let map = QuantumMap::build_trimmed_with(alphabet, k, cutoff, cutoff, caps)?;
        let spectrum = eigenvalues_with(&map, caps)?;
        dimensions.push(spectrum.source.dimension);
        counts.push(nus.iter().map(|&nu| spectrum.counting(nu)).collect::<Vec<_>>());
    }
    let delta = alphabet.dimension();
    let ln_m = (alphabet.base() as f64).ln();
    let slopes = nus
        .iter()
        .enumerate()
        .map(|(j, &nu)| {
            let pts: Vec<(f64, f64)> = ks
                .iter()
                .zip(&counts)
                .filter(|(_, row)| row[j] > 0)
                .map(|(&k, row)| (k as f64, (row[j] as f64).ln() / ln_m))
                .collect();
            WeylSlope {
                nu,
                slope: least_squares_slope(&pts),
                points: pts.len(),
                excluded_zero: pts.len() < ks.len(),
                bound: weyl_exponent(delta, nu),
            }
        })
        .collect();
    Ok(WeylFit {
        base: alphabet.base(),
        symbols: alphabet.symbols().to_vec(),
        delta,
        cutoff,
        ks: ks.to_vec(),
        nus: nus.to_vec(),
        dimensions,
        counts,
        slopes,
    })
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// `X_ρ = ∪ {𝒞_k + m : |m| <= 2N^{1-ρ}}` in `Z_N`.
pub fn x_rho(alphabet: &Alphabet, k: u32, rho: f64) -> Result<Vec<u64>> {
    Ok(x_rho_mask(alphabet, k, rho)?
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect())
}

fn x_rho_mask(alphabet: &Alphabet, k: u32, rho: f64) -> Result<Vec<bool>> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::out_of_range("rho must lie in (0, 1]", rho));
    }
    let set = alphabet.cantor_set(k)?;
    let n = set.modulus;
    if n > Caps::default().enumeration * 64 {
        return Err(Error::cap("N for X_rho", n as u128, (Caps::default().enumeration * 64) as u128));
    }
    let radius = (2.0 * (n as f64).powf(1.0 - rho)).floor() as u64;
    if 2 * radius + 1 >= n {
        return Ok(vec![true; n as usize]);
    }
    // circular interval marking through a difference array
    let mut diff = vec![0i64; n as usize + 1];
    for &c in &set.points {
        let lo = (c + n - radius) % n;
        let hi = (c + radius) % n;
        if lo <= hi {
            diff[lo as usize] += 1;
            diff[hi as usize + 1] -= 1;
        } else {
            diff[lo as usize] += 1;
            diff[n as usize] -= 1;
            diff[0] += 1;
            diff[hi as usize + 1] -= 1;
        }
    }
    let mut acc = 0i64;
    Ok(diff[..n as usize]
        .iter()
        .map(|d| {
            acc += d;
            acc > 0
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Defects {
    pub rho: f64,
    pub k_tilde: u32,
    pub x_rho_size: usize,
    pub n: usize,
    /// Estimate of `‖B^{k̃}(I - 1_{X_ρ})‖`.
    pub space_defect: f64,
    /// Estimate of `‖(I - 𝓕_N^* 1_{X_ρ} 𝓕_N) B^{k̃}‖`.
    pub fourier_defect: f64,
}

/// Power-iteration budget for the defect norms.
const DEFECT_ITERATIONS: usize = 40;
const DEFECT_TOL: f64 = 1e-3;

pub fn propagation_defect(map: &QuantumMap, rho: f64) -> Result<Defects> {
    if !map.left().is_smooth() || map.left() != map.right() {
        return Err(Error::NotSmoothCutoff);
    }
    let k = map.k();
    let k_tilde = ((rho * k as f64).ceil() as u32).clamp(1, k);
    let mask = x_rho_mask(map.alphabet(), k, rho)?;
    let n = map.n();
    let dft = Dft::new(n);
    let outside = |v: &mut [Complex64]| {
        for (z, &inside) in v.iter_mut().zip(&mask) {
            if inside {
                *z = Complex64::new(0.0, 0.0);
            }
        }
    };
    let power = |v: &[Complex64], adjoint: bool| {
        let mut w = v.to_vec();
        for _ in 0..k_tilde {
            w = if adjoint { map.apply_adjoint(&w) } else { map.apply(&w) };
        }
        w
    };
    let fourier_outside = |v: &mut [Complex64]| {
        dft.apply(v, false);
        outside(v);
        dft.apply(v, true);
    };
    let opts = PowerOptions {
        tol: DEFECT_TOL,
        max_iter: DEFECT_ITERATIONS,
        seed: 3,
    };
    let space = power_norm(
        n,
        |v| {
            let mut w = v.to_vec();
            outside(&mut w);
            power(&w, false)
        },
        |v| {
            let mut w = power(v, true);
            outside(&mut w);
            w
        },
        opts,
    );
    let fourier = power_norm(
        n,
        |v| {
            let mut w = power(v, false);
            fourier_outside(&mut w);
            w
        },
        |v| {
            let mut w = v.to_vec();
            fourier_outside(&mut w);
            power(&w, true)
        },
        opts,
    );
    Ok(Defects {
        rho,
        k_tilde,
        x_rho_size: mask.iter().filter(|&&b| b).count(),
        n,
        space_defect: space.norm,
        fourier_defect: fourier.norm,
    })
}

/// `‖(B - λ)^{-1}‖` from power iteration on the inverse Gram operator, using
/// one LU factorization of the dense matrix.
pub fn resolvent_probe(map: &QuantumMap, lambda: Complex64) -> Result<f64> {
    let b = map.dense().ok_or(Error::NotAssembled)?;
    let n = b.nrows();
    let mut shifted = b.clone();
    for i in 0..n {
        shifted[(i, i)] -= lambda;
    }
    let lu = shifted.partial_piv_lu();
    let near = || Error::NearSingular {
        re: lambda.re,
        im: lambda.im,
    };
    let as_col = |v: &[Complex64]| Mat::from_fn(v.len(), 1, |i, _| v[i]);
    let solve = |v: &[Complex64], adjoint: bool| -> Result<Vec<Complex64>> {
        let rhs = as_col(v);
        let x = if adjoint {
            lu.solve_adjoint(&rhs)
        } else {
            lu.solve(&rhs)
        };
        let out: Vec<Complex64> = (0..n).map(|i| x[(i, 0)]).collect();
        if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(near());
        }
        Ok(out)
    };
    // the first solve doubles as a residual check on the factorization
    let probe: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0, (i as f64 * 0.37).sin()))
        .collect();
    let x = solve(&probe, false)?;
    let back = &shifted * as_col(&x);
    let residual: f64 = (0..n)
        .map(|i| (back[(i, 0)] - probe[i]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if !(residual <= 1e-6 * l2(&probe)) {
        return Err(near());
    }
    let failed = std::cell::Cell::new(false);
    let report = power_norm(
        n,
        |v| solve(v, false).unwrap_or_else(|_| {
            failed.set(true);
            vec![Complex64::new(0.0, 0.0); n]
        }),
        |v| solve(v, true).unwrap_or_else(|_| {
            failed.set(true);
            vec![Complex64::new(0.0, 0.0); n]
        }),
        PowerOptions {
            tol: 1e-8,
            max_iter: 500,
            seed: 4,
        },
    );
    if failed.get() || !report.norm.is_finite() || report.norm > NEAR_SINGULAR {
        return Err(near());
    }
    Ok(report.norm)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matching {
    pub radius: f64,
    /// Eigenvalues of each spectrum with `|λ| > radius`.
    pub reference_in_annulus: usize,
    pub other_in_annulus: usize,
    /// Largest distance between paired eigenvalues, over both directions.
    pub max_distance: f64,
    /// Annulus eigenvalues left without a partner.
    pub unmatched: usize,
    /// Pairings whose runner-up candidate was within twice the chosen distance.
    pub ambiguous: usize,
}

/// Greedy nearest-neighbour pairing of the eigenvalues with `|λ| > radius`
/// in each spectrum against the whole other spectrum, in both directions.
pub fn match_annulus(reference: &[Complex64], other: &[Complex64], radius: f64) -> Matching {
    let forward = greedy(reference, other, radius);
    let backward = greedy(other, reference, radius);
    Matching {
        radius,
        reference_in_annulus: forward.count,
        other_in_annulus: backward.count,
        max_distance: forward.max.max(backward.max),
        unmatched: forward.unmatched + backward.unmatched,
        ambiguous: forward.ambiguous + backward.ambiguous,
    }
}

struct OneWay {
    count: usize,
    max: f64,
    unmatched: usize,
    ambiguous: usize,
}

fn greedy(from: &[Complex64], to: &[Complex64], radius: f64) -> OneWay {
    let sources: Vec<Complex64> = from.iter().copied().filter(|z| z.norm() > radius).collect();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(sources.len() * to.len());
    let mut ambiguous = 0;
    for (i, s) in sources.iter().enumerate() {
        let mut d: Vec<(f64, usize)> = to.iter().enumerate().map(|(j, t)| ((s - t).norm(), j)).collect();
        d.sort_by(|a, b| a.0.total_cmp(&b.0));
        if d.len() >= 2 && d[0].0 > 0.0 && d[1].0 < 2.0 * d[0].0 {
            ambiguous += 1;
        }
        pairs.extend(d.into_iter().map(|(dist, j)| (dist, i, j)));
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut used_from = vec![false; sources.len()];
    let mut used_to = vec![false; to.len()];
    let mut max = 0.0f64;
    let mut matched = 0;
    for (dist, i, j) in pairs {
        if used_from[i] || used_to[j] {
            continue;
        }
        used_from[i] = true;
        used_to[j] = true;
        max = max.max(dist);
        matched += 1;
        if matched == sources.len() {
            break;
        }
    }
    OneWay {
        count: sources.len(),
        max,
        unmatched: sources.len() - matched,
        ambiguous,
    }
}
