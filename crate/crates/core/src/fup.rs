//! Fractal uncertainty norms `r_k = ‖1_{𝒞_k} 𝓕_N 1_{𝒞_k}‖`, the exponents
//! `β_k = -log r_k / (k log M)`, and the bounds that sandwich them.
//!
//! Since `r_k` is submultiplicative, `β = sup_k β_k`, so every computed
//! `β_k` is a certified lower bound for the limiting exponent.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::additive::cantor_energy_mod;
use crate::alphabet::Alphabet;
use crate::caps::Caps;
use crate::dft::{indicator_dft_product, op_norm_with, restricted_dft_matrix};
use crate::error::{Error, Result};

/// Absolute slack used when comparing norms against bounds.
pub const NORM_SLACK: f64 = 1e-9;

pub fn r_norm(alphabet: &Alphabet, k: u32) -> Result<f64> {
    r_norm_with(alphabet, k, &Caps::default())
}

pub fn r_norm_with(alphabet: &Alphabet, k: u32, caps: &Caps) -> Result<f64> {
    let size = alphabet.cantor_size(k);
    if size > caps.norm_dim as u128 {
        return Err(Error::cap("|A|^k", size, caps.norm_dim as u128));
    }
    let set = alphabet.cantor_set_capped(k, caps.enumeration)?;
    let m = restricted_dft_matrix(&set.points, &set.points, set.modulus)?;
    op_norm_with(m.as_ref(), caps)
}

/// `β_k` from a norm value.
pub fn beta_from_norm(r: f64, k: u32, base: u64) -> f64 {
    -r.ln() / (k as f64 * (base as f64).ln())
}

/// A key shared by alphabets whose norms `r_k` agree at every level:
/// translation without wraparound and the reflection `x ↦ M-1-x` both map
/// `𝒞_k` to a shifted or negated copy of itself.
pub fn norm_class(alphabet: &Alphabet) -> Vec<u64> {
    let a = alphabet.shifted_to_zero().symbols().to_vec();
    let b = alphabet.reflected().shifted_to_zero().symbols().to_vec();
    a.min(b)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bounds {
    /// `min(1, N^{δ-1/2})`.
    pub trivial: f64,
    /// `N^{(δ-1)/2}`.
    pub lower: f64,
    /// `Ẽ_A(𝒞_k)^{1/8} |𝒞_k|^{3/8} N^{-3/8}`.
    pub additive: f64,
    pub witness_constant: f64,
    /// Best modulated witness over `b ∈ A`.
    pub witness_modulated: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FupLevel {
    pub k: u32,
    pub n: u64,
    pub cantor_size: u64,
    pub r: f64,
    pub beta: f64,
    pub bounds: Bounds,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FupReport {
    pub alphabet: Alphabet,
    pub delta: f64,
    /// `max(0, 1/2 - δ)`, the lower end of the admissible range of `β`.
    pub beta_floor: f64,
    /// `(1 - δ)/2`, the upper end.
    pub beta_ceiling: f64,
    pub levels: Vec<FupLevel>,
    pub beta_best: f64,
}

impl FupReport {
    pub fn level(&self, k: u32) -> Option<&FupLevel> {
        self.levels.iter().find(|l| l.k == k)
    }
}

pub fn fup_report(alphabet: &Alphabet, k_max: u32) -> Result<FupReport> {
    fup_report_with(alphabet, &(1..=k_max).collect::<Vec<_>>(), &Caps::default())
}

pub fn fup_report_with(alphabet: &Alphabet, ks: &[u32], caps: &Caps) -> Result<FupReport> {
    alphabet.require_nondegenerate("fup_report")?;
    if ks.is_empty() {
        return Err(Error::InvalidArgument("no levels requested".into()));
    }
    let delta = alphabet.dimension();
    let mut levels = Vec::with_capacity(ks.len());
    for &k in ks {
        let r = r_norm_with(alphabet, k, caps)?;
        let n = alphabet.modulus(k)?;
        let nf = n as f64;
        let size = alphabet.cantor_size(k);
        let energy = cantor_energy_mod(alphabet, k)?;
        let additive =
            (big_ln(&energy) / 8.0 + 3.0 / 8.0 * (size as f64).ln() - 3.0 / 8.0 * nf.ln()).exp();
        let witness_modulated = alphabet
            .symbols()
            .iter()
            .map(|&b| witness_modulated_with(alphabet, k, b, caps))
            .try_fold(0.0f64, |acc, w| w.map(|w| acc.max(w)))?;
        levels.push(FupLevel {
            k,
            n,
            cantor_size: size as u64,
            r,
            beta: beta_from_norm(r, k, alphabet.base()),
            bounds: Bounds {
                trivial: nf.powf(delta - 0.5).min(1.0),
                lower: nf.powf((delta - 1.0) / 2.0),
                additive,
                witness_constant: witness_constant_with(alphabet, k, caps)?,
                witness_modulated,
            },
        });
    }
    let beta_best = levels.iter().map(|l| l.beta).fold(f64::NEG_INFINITY, f64::max);
    Ok(FupReport {
        alphabet: alphabet.clone(),
        delta,
        beta_floor: (0.5 - delta).max(0.0),
        beta_ceiling: (1.0 - delta) / 2.0,
        levels,
        beta_best,
    })
}

fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit prefix is finite");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `r_k >= ‖1_{𝒞_k} 𝓕_N 1_{𝒞_k}‖ / |𝒞_k|^{1/2}`, tested on the indicator itself.
pub fn witness_constant(alphabet: &Alphabet, k: u32) -> Result<f64> {
    witness_constant_with(alphabet, k, &Caps::default())
}

pub fn witness_constant_with(alphabet: &Alphabet, k: u32, caps: &Caps) -> Result<f64> {
    modulated_sum(alphabet, k, 0, caps)
}

/// Same bound tested on `e^{2πi j_b ℓ/N} 1_{𝒞_k}(ℓ)`, `j_b = Σ_{s<k} b M^s`.
pub fn witness_modulated(alphabet: &Alphabet, k: u32, b: u64) -> Result<f64> {
    witness_modulated_with(alphabet, k, b, &Caps::default())
}

pub fn witness_modulated_with(alphabet: &Alphabet, k: u32, b: u64, caps: &Caps) -> Result<f64> {
    if !alphabet.contains(b) {
        return Err(Error::SymbolNotInAlphabet { symbol: b });
    }
    let mut jb = 0u64;
    let mut place = 1u64;
    for s in 0..k {
        jb += b * place;
        if s + 1 < k {
            place *= alphabet.base();
        }
    }
    modulated_sum(alphabet, k, jb, caps)
}

fn modulated_sum(alphabet: &Alphabet, k: u32, shift: u64, caps: &Caps) -> Result<f64> {
    let set = alphabet.cantor_set_capped(k, caps.enumeration)?;
    let n = set.modulus;
    let mut total = 0.0;
    for &j in &set.points {
        let freq = (j + n - shift % n) % n;
        total += indicator_dft_product(alphabet, k, freq)?.norm_sqr();
    }
    Ok((total / set.len() as f64).sqrt())
}

/// The hypotheses and conclusion of the gap argument: some digit `a` is
/// followed by at least `⌈M^{1-δ} - 1⌉` missing digits, so `𝒞_k` has a gap of
/// length `L = ⌈M^{1-δ} - 1⌉ M^{k-1}`; once `|𝒞_k| <= L` the norm is at most
/// `√(1 - 2^{-2N})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapCondition {
    pub k: u32,
    /// Smallest real level allowed by the corollary.
    pub threshold: f64,
    pub meets_threshold: bool,
    pub guaranteed_gap: u128,
    pub largest_gap: u64,
    pub cantor_size: u64,
    /// `|𝒞_k| <= largest_gap`.
    pub condition: bool,
    /// `log2(1 - r_k^2)` is at least this (`-2N`).
    pub norm_deficit_log2: f64,
    /// `log2` of the resulting lower bound `2^{-2N} / (2k log M)` on `β`.
    pub beta_bound_log2: f64,
}

pub fn gap_condition(alphabet: &Alphabet, k: u32) -> Result<GapCondition> {
    alphabet.require_nondegenerate("gap_condition")?;
    let m = alphabet.base();
    let size = alphabet.size() as u64;
    // M^{1-δ} = M/|A| exactly
    let missing = (m - size).div_ceil(size);
    let one_minus_delta = 1.0 - alphabet.dimension();
    let ln_m = (m as f64).ln();
    let threshold = 1.0 / one_minus_delta - (missing as f64).ln() / (one_minus_delta * ln_m);
    let set = alphabet.cantor_set(k)?;
    let n = set.modulus;
    let largest_gap = set.largest_circular_gap();
    let guaranteed_gap = missing as u128 * (m as u128).pow(k - 1);
    Ok(GapCondition {
        k,
        threshold,
        meets_threshold: k as f64 >= threshold,
        guaranteed_gap,
        largest_gap,
        cantor_size: set.len() as u64,
        condition: set.len() as u64 <= largest_gap,
        norm_deficit_log2: -2.0 * n as f64,
        beta_bound_log2: -2.0 * n as f64 - (2.0 * k as f64 * ln_m).log2(),
    })
}

/// `r_{k1+k2} <= r_{k1} r_{k2}` up to [`NORM_SLACK`].
pub fn check_submultiplicative(alphabet: &Alphabet, k1: u32, k2: u32) -> Result<bool> {
    let r1 = r_norm(alphabet, k1)?;
    let r2 = r_norm(alphabet, k2)?;
    let r12 = r_norm(alphabet, k1 + k2)?;
    Ok(r12 <= r1 * r2 + NORM_SLACK)
}
