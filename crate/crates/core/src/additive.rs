//! Additive portraits and energies of alphabets and of their Cantor sets.
//!
//! For an alphabet `A ⊂ {0..M-1}`, `F_j` counts pairs `(a, b)` with
//! `a - b = j` and `E_ℓ = Σ_j F_j F_{j+ℓ}` counts quadruples with
//! `a + b - c - d = ℓ`, both over the integers. The modular versions `F̃`,
//! `Ẽ` reduce mod `M`. The energy of `𝒞_k` in `Z_{M^k}` follows a linear
//! recursion driven by the 2×2 matrix `M(A)`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// Cost guard for [`cantor_energy_brute`]: `|A|^{3k}` triples.
pub const BRUTE_LIMIT: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyProfile {
    pub base: u64,
    pub symbols: Vec<u64>,
    /// `F_j` for `j = -(M-1) ..= M-1`.
    pub portrait: Vec<u64>,
    /// `F̃_j` for `j ∈ Z_M`.
    pub portrait_mod: Vec<u64>,
    /// `E_ℓ` for `ℓ = -(2M-2) ..= 2M-2`.
    pub energies: Vec<u64>,
    /// `Ẽ_ℓ` for `ℓ ∈ Z_M`.
    pub energies_mod: Vec<u64>,
    /// `[[E_{M-1} + E_{M+1}, 2E_M], [E_1, E_0]]`.
    pub matrix: [[u64; 2]; 2],
    pub rho: f64,
    /// `3δ - log ρ / log M`; absent for degenerate alphabets.
    pub gamma: Option<f64>,
}

impl EnergyProfile {
    /// `F_j`, zero for `|j| >= M`.
    pub fn f(&self, j: i64) -> u64 {
        let m = self.base as i64;
        if j.abs() >= m {
            0
        } else {
            self.portrait[(j + m - 1) as usize]
        }
    }

    /// `E_ℓ`, zero for `|ℓ| >= 2M - 1`.
    pub fn e(&self, ell: i64) -> u64 {
        let m = self.base as i64;
        if ell.abs() > 2 * m - 2 {
            0
        } else {
            self.energies[(ell + 2 * m - 2) as usize]
        }
    }

    pub fn gamma(&self) -> Result<f64> {
        self.gamma.ok_or(Error::DegenerateAlphabet {
            op: "gamma",
            base: self.base,
            size: self.symbols.len(),
        })
    }

    /// The 3×3 carry matrix indexed by carries `-1, 0, 1`.
    pub fn carry_matrix(&self) -> [[u64; 3]; 3] {
        let m = self.base as i64;
        let e = |l| self.e(l);
        [
            [e(m - 1), e(m), e(m + 1)],
            [e(1), e(0), e(1)],
            [e(m + 1), e(m), e(m - 1)],
        ]
    }
}

/// `E_ℓ(A)`: quadruples in `A⁴` with `a + b - c - d = ℓ` in `Z`.
pub fn energy(alphabet: &Alphabet, ell: i64) -> u64 {
    let m = alphabet.base() as i64;
    let portrait = portrait(alphabet);
    let f = |j: i64| {
        if j.abs() >= m {
            0
        } else {
            portrait[(j + m - 1) as usize]
        }
    };
    (-(m - 1)..m).map(|j| f(j) * f(j + ell)).sum()
}

fn portrait(alphabet: &Alphabet) -> Vec<u64> {
    let m = alphabet.base() as i64;
    let mut f = vec![0u64; (2 * m - 1) as usize];
    for &a in alphabet.symbols() {
        for &b in alphabet.symbols() {
            f[(a as i64 - b as i64 + m - 1) as usize] += 1;
        }
    }
    f
}

pub fn profile(alphabet: &Alphabet) -> EnergyProfile {
    let m = alphabet.base() as i64;
    let mu = alphabet.base() as usize;
    let portrait = portrait(alphabet);
    let mut portrait_mod = vec![0u64; mu];
    for (idx, &count) in portrait.iter().enumerate() {
        let j = idx as i64 - (m - 1);
        portrait_mod[j.rem_euclid(m) as usize] += count;
    }
    let f = |j: i64| {
        if j.abs() >= m {
            0
        } else {
            portrait[(j + m - 1) as usize]
        }
    };
    let energies: Vec<u64> = (-(2 * m - 2)..=2 * m - 2)
        .map(|ell| (-(m - 1)..m).map(|j| f(j) * f(j + ell)).sum())
        .collect();
    let e = |ell: i64| {
        if ell.abs() > 2 * m - 2 {
            0
        } else {
            energies[(ell + 2 * m - 2) as usize]
        }
    };
    let energies_mod = (0..m)
        .map(|l| e(l - 2 * m) + e(l - m) + e(l) + e(l + m))
        .collect();
    let matrix = [[e(m - 1) + e(m + 1), 2 * e(m)], [e(1), e(0)]];
    let rho = spectral_radius_2x2(matrix.map(|row| row.map(|x| x as f64)));
    let gamma = (!alphabet.is_degenerate())
        .then(|| 3.0 * alphabet.dimension() - rho.ln() / (m as f64).ln());
    EnergyProfile {
        base: alphabet.base(),
        symbols: alphabet.symbols().to_vec(),
        portrait,
        portrait_mod,
        energies,
        energies_mod,
        matrix,
        rho,
        gamma,
    }
}

/// Larger root of the characteristic polynomial; for a nonnegative matrix
/// this is the spectral radius.
pub fn spectral_radius_2x2(m: [[f64; 2]; 2]) -> f64 {
    let [[p, q], [r, s]] = m;
    let disc = (p - s) * (p - s) + 4.0 * q * r;
    if disc >= 0.0 {
        let lp = (p + s + disc.sqrt()) / 2.0;
        let lm = (p + s - disc.sqrt()) / 2.0;
        lp.abs().max(lm.abs())
    } else {
        // complex pair: |λ|² = det
        (p * s - q * r).abs().sqrt()
    }
}

/// `Ẽ_A(𝒞_k) = ⟨M(A)^k (0,1)ᵀ, (1,1)⟩`, exactly.
pub fn cantor_energy_mod(alphabet: &Alphabet, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::out_of_range("Cantor level must be at least 1", k));
    }
    let [[p, q], [r, s]] = profile(alphabet).matrix;
    let (p, q, r, s) = (BigUint::from(p), BigUint::from(q), BigUint::from(r), BigUint::from(s));
    let mut x = (BigUint::from(0u32), BigUint::from(1u32));
    for _ in 0..k {
        x = (&p * &x.0 + &q * &x.1, &r * &x.0 + &s * &x.1);
    }
    Ok(x.0 + x.1)
}

/// Same quantity through the 3×3 carry recursion from `(0, 1, 0)`.
pub fn cantor_energy_carry(alphabet: &Alphabet, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::out_of_range("Cantor level must be at least 1", k));
    }
    let c = profile(alphabet).carry_matrix().map(|row| row.map(BigUint::from));
    let mut x = [BigUint::from(0u32), BigUint::from(1u32), BigUint::from(0u32)];
    for _ in 0..k {
        x = std::array::from_fn(|i| (0..3).map(|j| &c[i][j] * &x[j]).sum());
    }
    Ok(x.into_iter().sum())
}

/// Direct count of `(a,b,c,d) ∈ 𝒞_k⁴` with `a + b ≡ c + d mod M^k`.
pub fn cantor_energy_brute(alphabet: &Alphabet, k: u32) -> Result<u64> {
    let triples = alphabet.cantor_size(k).saturating_pow(3);
    if triples > BRUTE_LIMIT {
        return Err(Error::cap("|A|^{3k}", triples, BRUTE_LIMIT));
    }
    let set = alphabet.cantor_set(k)?;
    let n = set.modulus;
    let pts = &set.points;
    // bitmap lookup when it is small enough, binary search otherwise
    let bitmap: Option<Vec<bool>> = (n <= 1 << 24).then(|| {
        let mut member = vec![false; n as usize];
        pts.iter().for_each(|&p| member[p as usize] = true);
        member
    });
    let contains = |x: u64| match &bitmap {
        Some(member) => member[x as usize],
        None => set.contains(x),
    };
    Ok(pts
        .par_iter()
        .map(|&a| {
            let mut count = 0u64;
            for &b in pts {
                let s = (a + b) % n;
                for &c in pts {
                    if contains((s + n - c) % n) {
                        count += 1;
                    }
                }
            }
            count
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendixReport {
    pub checks: Vec<InequalityCheck>,
    pub violated: Option<&'static str>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.violated.is_none()
    }
}

/// The individual bounds on the entries of `M(A)`:
/// `max(E_1, 2E_M, E_{M+1} + E_{M-1}) <= E_0 <= (2/3)|A|³ + (1/3)|A| <= (3/4)|A|³`.
pub fn check_appendix_inequalities(alphabet: &Alphabet) -> Result<AppendixReport> {
    alphabet.require_nondegenerate("check_appendix_inequalities")?;
    let p = profile(alphabet);
    let m = alphabet.base() as i64;
    let size = alphabet.size() as u64;
    let e0 = p.e(0);
    // Each bound is compared in integers after clearing denominators;
    // (lhs, rhs, scale) reports lhs/scale <= rhs/scale.
    let cube = size.pow(3);
    let raw = [
        ("E_1 <= E_0", p.e(1), e0, 1),
        ("2E_M <= E_0", 2 * p.e(m), e0, 1),
        ("E_{M+1} + E_{M-1} <= E_0", p.e(m + 1) + p.e(m - 1), e0, 1),
        ("E_0 <= (2/3)|A|^3 + (1/3)|A|", 3 * e0, 2 * cube + size, 3),
        ("(2/3)|A|^3 + (1/3)|A| <= (3/4)|A|^3", 8 * cube + 4 * size, 9 * cube, 12),
    ];
    let checks: Vec<InequalityCheck> = raw
        .iter()
        .map(|&(name, lhs, rhs, scale)| InequalityCheck {
            name,
            lhs: lhs as f64 / scale as f64,
            rhs: rhs as f64 / scale as f64,
            holds: lhs <= rhs,
        })
        .collect();
    let violated = checks.iter().find(|c| !c.holds).map(|c| c.name);
    Ok(AppendixReport { checks, violated })
}

/// Spectral radius of `[[p,q],[r,s]]` is below 1 under the hypotheses
/// `0 <= p,q,r <= s <= 3/4`, `p + r <= 1`, `q + s <= 1`, and either
/// `p + r <= 2√(2ε₀)` or `q + s <= 1 - ε₀`, for `ε₀ ∈ (0, 1/8)`.
pub fn check_two_by_two_lemma(p: f64, q: f64, r: f64, s: f64, eps0: f64) -> Result<bool> {
    let fail = |what: &str| Err(Error::HypothesisViolated(what.to_string()));
    if !(eps0 > 0.0 && eps0 < 0.125) {
        return fail("epsilon_0 must lie in (0, 1/8)");
    }
    if [p, q, r].iter().any(|&x| !(0.0..=s).contains(&x)) || s > 0.75 {
        return fail("need 0 <= p, q, r <= s <= 3/4");
    }
    if p + r > 1.0 || q + s > 1.0 {
        return fail("need p + r <= 1 and q + s <= 1");
    }
    if !(p + r <= 2.0 * (2.0 * eps0).sqrt() || q + s <= 1.0 - eps0) {
        return fail("need p + r <= 2 sqrt(2 eps0) or q + s <= 1 - eps0");
    }
    Ok(spectral_radius_2x2([[p, q], [r, s]]) < 1.0)
}
