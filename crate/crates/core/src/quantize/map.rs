use std::fmt;
use std::sync::OnceLock;

use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cutoff::Cutoff;
use crate::alphabet::Alphabet;
use crate::caps::Caps;
use crate::dft::{matvec, matvec_adjoint, power_norm, Dft, PowerOptions};
use crate::error::{Error, Result};

/// Name of the generator recorded in perturbation metadata.
pub const PERTURBATION_RNG: &str = "ChaCha8";

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `B_{N,χ,χ'} = 𝓕_N^* diag(χ_{N/M} 𝓕_{N/M} χ'_{N/M}, …) I_{A,M}`, where
/// `χ` (left) acts after the block Fourier transform and `χ'` (right)
/// before it. Equal cutoffs give the standard open baker's map `B_N`.
///
/// The operator is always available matrix-free through [`QuantumMap::apply`];
/// the dense matrix and its trimmed version are optional.
#[derive(Clone)]
pub struct QuantumMap {
    alphabet: Alphabet,
    k: u32,
    n: usize,
    block: usize,
    left: Cutoff,
    right: Cutoff,
    left_disc: Vec<f64>,
    right_disc: Vec<f64>,
    dense: Option<Mat<Complex64>>,
    trimmed: Option<Trimmed>,
    perturbation: Option<Perturbation>,
    /// `εQ` on the working index set, kept so `apply` sees the perturbation.
    noise: Option<Mat<Complex64>>,
    plans: OnceLock<(Dft, Dft)>,
}

#[derive(Clone)]
pub struct Trimmed {
    pub matrix: Mat<Complex64>,
    /// Indices of the kept columns (and rows) in `0..N`.
    pub kept: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Perturbation {
    pub rel: f64,
    pub seed: u64,
    pub epsilon: f64,
    pub generator: &'static str,
    pub on_trimmed: bool,
}

/// Parameters describing a map, for report metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapInfo {
    pub base: u64,
    pub symbols: Vec<u64>,
    pub k: u32,
    pub n: usize,
    pub left_cutoff: Cutoff,
    pub right_cutoff: Cutoff,
    pub trimmed: bool,
    pub dimension: usize,
    pub perturbation: Option<Perturbation>,
}

impl fmt::Debug for QuantumMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuantumMap")
            .field("alphabet", &self.alphabet)
            .field("k", &self.k)
            .field("n", &self.n)
            .field("left", &self.left)
            .field("right", &self.right)
            .field("dense", &self.dense.is_some())
            .field("trimmed", &self.trimmed.as_ref().map(|t| t.kept.len()))
            .field("perturbation", &self.perturbation)
            .finish()
    }
}

impl QuantumMap {
    /// An unassembled map; only matrix-free application is available.
    pub fn new(alphabet: &Alphabet, k: u32, left: Cutoff, right: Cutoff) -> Result<Self> {
        if k == 0 {
            return Err(Error::out_of_range("level must be at least 1", k));
        }
        let n = usize::try_from(alphabet.modulus(k)?).map_err(|_| Error::Overflow("M^k"))?;
        let block = n / alphabet.base() as usize;
        Ok(QuantumMap {
            alphabet: alphabet.clone(),
            k,
            n,
            block,
            left,
            right,
            left_disc: left.discretize(block),
            right_disc: right.discretize(block),
            dense: None,
            trimmed: None,
            perturbation: None,
            noise: None,
            plans: OnceLock::new(),
        })
    }

    /// Dense `N×N` assembly.
    pub fn build_map(alphabet: &Alphabet, k: u32, left: Cutoff, right: Cutoff) -> Result<Self> {
        Self::build_map_with(alphabet, k, left, right, &Caps::default())
    }

    pub fn build_map_with(
        alphabet: &Alphabet,
        k: u32,
        left: Cutoff,
        right: Cutoff,
        caps: &Caps,
    ) -> Result<Self> {
        let mut map = Self::new(alphabet, k, left, right)?;
        map.check_dense_cap(caps)?;
        let all: Vec<usize> = (0..map.n).collect();
        let cols = map.structural_columns();
        map.dense = Some(map.assemble(&all, &cols));
        Ok(map)
    }

    /// Assembles only the trimmed matrix, never forming the dense one.
    pub fn build_trimmed(alphabet: &Alphabet, k: u32, left: Cutoff, right: Cutoff) -> Result<Self> {
        Self::build_trimmed_with(alphabet, k, left, right, &Caps::default())
    }

    pub fn build_trimmed_with(
        alphabet: &Alphabet,
        k: u32,
        left: Cutoff,
        right: Cutoff,
        caps: &Caps,
    ) -> Result<Self> {
        let mut map = Self::new(alphabet, k, left, right)?;
        map.check_dense_cap(caps)?;
        let kept = map.structural_columns();
        let matrix = map.assemble_square(&kept);
        map.trimmed = Some(Trimmed { matrix, kept });
        Ok(map)
    }

    fn check_dense_cap(&self, caps: &Caps) -> Result<()> {
        if self.n > caps.dense {
            return Err(Error::cap("N", self.n as u128, caps.dense as u128));
        }
        Ok(())
    }

    /// Columns that are not forced to vanish by `I_{A,M}` or by a zero of the
    /// right cutoff.
    pub fn structural_columns(&self) -> Vec<usize> {
        self.alphabet
            .symbols()
            .iter()
            .flat_map(|&a| {
                let start = a as usize * self.block;
                (0..self.block)
                    .filter(|&l| self.right_disc[l] != 0.0)
                    .map(move |l| start + l)
            })
            .collect()
    }

    /// `h(t) = Σ_m χ(m/n) e^{2πi tm/N}` for `t ∈ Z_N`, via one FFT.
    fn kernel(&self) -> Vec<Complex64> {
        let mut h = vec![ZERO; self.n];
        for (m, &c) in self.left_disc.iter().enumerate() {
            h[m] = Complex64::new(c, 0.0);
        }
        self.plans().0.inverse_unnormalized(&mut h);
        h
    }

    /// `e^{2πi (j mod M) a / M}` indexed by `(j mod M) * M + a`.
    fn phase_table(&self) -> Vec<Complex64> {
        let m = self.alphabet.base();
        (0..m)
            .flat_map(|r| {
                (0..m).map(move |a| {
                    let idx = (m - r * a % m) % m;
                    crate::dft::root_of_unity(idx, m)
                })
            })
            .collect()
    }

    /// Entry `B[j, a·n + ℓ]` from the kernel and phase tables.
    #[inline]
    fn entry(&self, h: &[Complex64], phases: &[Complex64], scale: f64, j: usize, col: usize) -> Complex64 {
        let m = self.alphabet.base() as usize;
        let a = col / self.block;
        let l = col % self.block;
        let chi = self.right_disc[l];
        if chi == 0.0 || !self.alphabet.contains(a as u64) {
            return ZERO;
        }
        let t = (j + self.n - (m * l) % self.n) % self.n;
        phases[(j % m) * m + a] * h[t] * (scale * chi)
    }

    fn assemble(&self, rows: &[usize], cols: &[usize]) -> Mat<Complex64> {
        let h = self.kernel();
        let phases = self.phase_table();
        let scale = (self.alphabet.base() as f64).sqrt() / self.n as f64;
        let mut out = Mat::<Complex64>::zeros(rows.len(), self.n);
        for &c in cols {
            let col = out.col_as_slice_mut(c);
            for (r, &j) in rows.iter().enumerate() {
                col[r] = self.entry(&h, &phases, scale, j, c);
            }
        }
        out
    }

    fn assemble_square(&self, idx: &[usize]) -> Mat<Complex64> {
        let h = self.kernel();
        let phases = self.phase_table();
        let scale = (self.alphabet.base() as f64).sqrt() / self.n as f64;
        let mut out = Mat::<Complex64>::zeros(idx.len(), idx.len());
        for (ci, &c) in idx.iter().enumerate() {
            let col = out.col_as_slice_mut(ci);
            for (r, &j) in idx.iter().enumerate() {
                col[r] = self.entry(&h, &phases, scale, j, c);
            }
        }
        out
    }

    /// Removes the zero columns of the dense matrix and the matching rows.
    pub fn trim(mut self) -> Result<Self> {
        let dense = self.dense.take().ok_or(Error::NotAssembled)?;
        let kept: Vec<usize> = (0..self.n)
            .filter(|&c| dense.col_as_slice(c).iter().any(|z| *z != ZERO))
            .collect();
        let matrix = Mat::from_fn(kept.len(), kept.len(), |r, c| dense[(kept[r], kept[c])]);
        self.trimmed = Some(Trimmed { matrix, kept });
        self.dense = Some(dense);
        Ok(self)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `N = M^k`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn left(&self) -> Cutoff {
        self.left
    }

    pub fn right(&self) -> Cutoff {
        self.right
    }

    pub fn dense(&self) -> Option<&Mat<Complex64>> {
        self.dense.as_ref()
    }

    pub fn trimmed(&self) -> Option<&Trimmed> {
        self.trimmed.as_ref()
    }

    pub fn perturbation(&self) -> Option<&Perturbation> {
        self.perturbation.as_ref()
    }

    /// The matrix handed to eigensolvers: trimmed if present, else dense.
    pub fn working_matrix(&self) -> Result<&Mat<Complex64>> {
        self.trimmed
            .as_ref()
            .map(|t| &t.matrix)
            .or(self.dense.as_ref())
            .ok_or(Error::NotAssembled)
    }

    pub fn info(&self) -> MapInfo {
        MapInfo {
            base: self.alphabet.base(),
            symbols: self.alphabet.symbols().to_vec(),
            k: self.k,
            n: self.n,
            left_cutoff: self.left,
            right_cutoff: self.right,
            trimmed: self.trimmed.is_some(),
            dimension: self.working_matrix().map(|m| m.nrows()).unwrap_or(self.n),
            perturbation: self.perturbation.clone(),
        }
    }

    fn plans(&self) -> &(Dft, Dft) {
        self.plans
            .get_or_init(|| (Dft::new(self.n), Dft::new(self.block)))
    }

    /// `B v` in `O(N log N)`, plus the stored perturbation if any.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n, "vector length must equal N");
        let (big, small) = self.plans();
        let mut y = vec![ZERO; self.n];
        for &a in self.alphabet.symbols() {
            let range = a as usize * self.block..(a as usize + 1) * self.block;
            let out = &mut y[range.clone()];
            for ((o, &x), &c) in out.iter_mut().zip(&v[range]).zip(&self.right_disc) {
                *o = x * c;
            }
            small.apply(out, false);
            for (o, &c) in out.iter_mut().zip(&self.left_disc) {
                *o *= c;
            }
        }
        big.apply(&mut y, true);
        self.add_noise(v, &mut y, false);
        y
    }

    /// `B* v`.
    pub fn apply_adjoint(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n, "vector length must equal N");
        let (big, small) = self.plans();
        let mut w = v.to_vec();
        big.apply(&mut w, false);
        let mut y = vec![ZERO; self.n];
        for &a in self.alphabet.symbols() {
            let range = a as usize * self.block..(a as usize + 1) * self.block;
            let out = &mut y[range.clone()];
            for ((o, &x), &c) in out.iter_mut().zip(&w[range]).zip(&self.left_disc) {
                *o = x * c;
            }
            small.apply(out, true);
            for (o, &c) in out.iter_mut().zip(&self.right_disc) {
                *o *= c;
            }
        }
        self.add_noise(v, &mut y, true);
        y
    }

    fn add_noise(&self, v: &[Complex64], y: &mut [Complex64], adjoint: bool) {
        let Some(noise) = &self.noise else { return };
        let idx: Vec<usize> = match &self.trimmed {
            Some(t) => t.kept.clone(),
            None => (0..self.n).collect(),
        };
        let sub: Vec<Complex64> = idx.iter().map(|&i| v[i]).collect();
        let out = if adjoint {
            matvec_adjoint(noise.as_ref(), &sub)
        } else {
            matvec(noise.as_ref(), &sub)
        };
        for (&i, z) in idx.iter().zip(out) {
            y[i] += z;
        }
    }

    /// Operator norm of the unperturbed map by power iteration.
    pub fn norm_estimate(&self, tol: f64) -> f64 {
        let base = QuantumMap {
            noise: None,
            ..self.clone()
        };
        power_norm(
            self.n,
            |v| base.apply(v),
            |v| base.apply_adjoint(v),
            PowerOptions {
                tol,
                max_iter: 1000,
                seed: 1,
            },
        )
        .norm
    }

    /// Adds `εQ` to the working matrix, `Q` entrywise uniform on `[0,1]`
    /// from a seeded ChaCha8 stream and `ε` chosen so that
    /// `‖εQ‖ = rel·‖B‖`.
    pub fn perturb(&self, rel: f64, seed: u64) -> Result<Self> {
        if !(rel >= 0.0 && rel.is_finite()) {
            return Err(Error::out_of_range("relative perturbation must be nonnegative", rel));
        }
        let dim = self.working_matrix()?.nrows();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = Mat::<Complex64>::from_fn(dim, dim, |_, _| Complex64::new(rng.random::<f64>(), 0.0));
        let opts = PowerOptions {
            tol: 1e-6,
            max_iter: 1000,
            seed: 2,
        };
        let q_norm = power_norm(dim, |v| matvec(q.as_ref(), v), |v| matvec_adjoint(q.as_ref(), v), opts).norm;
        let b_norm = self.norm_estimate(1e-6);
        let epsilon = if q_norm > 0.0 { rel * b_norm / q_norm } else { 0.0 };
        let noise = Mat::from_fn(dim, dim, |r, c| q[(r, c)] * epsilon);
        let mut out = self.clone();
        match (&mut out.trimmed, &mut out.dense) {
            (Some(t), _) => t.matrix += &noise,
            (None, Some(d)) => *d += &noise,
            (None, None) => return Err(Error::NotAssembled),
        }
        out.perturbation = Some(Perturbation {
            rel,
            seed,
            epsilon,
            generator: PERTURBATION_RNG,
            on_trimmed: out.trimmed.is_some(),
        });
        out.noise = Some(match self.noise.as_ref() {
            Some(prev) => prev + &noise,
            None => noise,
        });
        Ok(out)
    }
}
