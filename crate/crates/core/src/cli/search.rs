//! Exhaustive searches behind `scan`, `special` and `fuglede`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::alphabet::{enumerate_alphabets, Alphabet, SPECIAL_TOL};
use crate::caps::Caps;
use crate::dft::root_of_unity;
use crate::error::{Error, Result};
use crate::fup::{beta_from_norm, norm_class, r_norm_with};

/// `(M, |A|, k)` for every row of the table of worst FUP exponents.
pub const TABLE1_LEVELS: [(u64, usize, u32); 36] = [
    (3, 2, 12),
    (4, 2, 12),
    (4, 3, 7),
    (5, 2, 12),
    (5, 3, 7),
    (5, 4, 6),
    (6, 2, 12),
    (6, 3, 7),
    (6, 4, 6),
    (6, 5, 5),
    (7, 2, 12),
    (7, 3, 7),
    (7, 4, 6),
    (7, 5, 5),
    (7, 6, 4),
    (8, 2, 12),
    (8, 3, 7),
    (8, 4, 6),
    (8, 5, 5),
    (8, 6, 4),
    (8, 7, 4),
    (9, 2, 12),
    (9, 3, 7),
    (9, 4, 6),
    (9, 5, 5),
    (9, 6, 4),
    (9, 7, 4),
    (9, 8, 4),
    (10, 2, 12),
    (10, 3, 7),
    (10, 4, 6),
    (10, 5, 5),
    (10, 6, 4),
    (10, 7, 4),
    (10, 8, 4),
    (10, 9, 3),
];

pub fn table1_level(base: u64, size: usize) -> Option<u32> {
    TABLE1_LEVELS
        .iter()
        .find(|&&(m, s, _)| m == base && s == size)
        .map(|&(_, _, k)| k)
}

/// Largest `k` with `|A|^k <= cap`, at least 1.
pub fn largest_level(size: usize, cap: u64) -> u32 {
    let mut k = 1u32;
    while (size as u128).pow(k + 1) <= cap as u128 {
        k += 1;
    }
    k
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub alphabet: Alphabet,
    pub delta: f64,
    pub k: u32,
    pub beta: f64,
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Error::InvalidArgument("--jobs must be positive".into()));
        }
        builder = builder.num_threads(j);
    }
    builder
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))
}

/// Norms for a list of `(alphabet, k)` jobs, computed once per norm class and
/// returned in input order.
fn betas(jobs: &[(Alphabet, u32)], caps: &Caps, threads: Option<usize>) -> Result<Vec<f64>> {
    let mut classes: BTreeMap<(Vec<u64>, u32), usize> = BTreeMap::new();
    let mut reps: Vec<(Alphabet, u32)> = Vec::new();
    let index: Vec<usize> = jobs
        .iter()
        .map(|(a, k)| {
            *classes.entry((norm_class(a), *k)).or_insert_with(|| {
                reps.push((a.clone(), *k));
                reps.len() - 1
            })
        })
        .collect();
    let values: Vec<Result<f64>> = pool(threads)?.install(|| {
        reps.par_iter()
            .map(|(a, k)| r_norm_with(a, *k, caps).map(|r| beta_from_norm(r, *k, a.base())))
            .collect()
    });
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(index.into_iter().map(|i| values[i]).collect())
}

/// One row per non-degenerate alphabet, `k` the largest level with
/// `|A|^k <= cap`. Rows are ordered by `M`, then size, then symbols.
pub fn scan(
    bases: RangeInclusive<u64>,
    size: Option<usize>,
    cap: u64,
    caps: &Caps,
    threads: Option<usize>,
) -> Result<Vec<ScanRow>> {
    let mut jobs = Vec::new();
    for m in bases {
        if m < 2 {
            return Err(Error::out_of_range("M must be at least 2", m));
        }
        let sizes = match size {
            Some(s) if s < 2 || s as u64 >= m => continue,
            Some(s) => s..=s,
            None => 2..=(m as usize - 1),
        };
        for s in sizes {
            let k = largest_level(s, cap);
            jobs.extend(enumerate_alphabets(m, s)?.map(|a| (a, k)));
        }
    }
    let betas = betas(&jobs, caps, threads)?;
    Ok(jobs
        .into_iter()
        .zip(betas)
        .map(|((alphabet, k), beta)| ScanRow {
            delta: alphabet.dimension(),
            alphabet,
            k,
            beta,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub base: u64,
    pub size: usize,
    pub delta: f64,
    pub k: u32,
    pub beta_min: f64,
    /// `β_min - max(0, 1/2 - δ)`.
    pub excess: f64,
    /// Lexicographically least alphabet attaining `β_min`.
    pub minimizer: Alphabet,
    pub arithmetic: bool,
}

/// Minimal `β_k` per `(M, |A|)` at the tabulated level `k`.
pub fn table1(
    bases: RangeInclusive<u64>,
    size: Option<usize>,
    caps: &Caps,
    threads: Option<usize>,
) -> Result<Vec<Table1Row>> {
    let mut rows = Vec::new();
    for &(m, s, k) in TABLE1_LEVELS.iter() {
        if !bases.contains(&m) || size.is_some_and(|x| x != s) {
            continue;
        }
        let jobs: Vec<(Alphabet, u32)> = enumerate_alphabets(m, s)?.map(|a| (a, k)).collect();
        let betas = betas(&jobs, caps, threads)?;
        let (best, beta_min) = jobs
            .iter()
            .zip(betas)
            .fold(None::<(&Alphabet, f64)>, |acc, ((a, _), b)| match acc {
                Some((_, cur)) if cur <= b => acc,
                _ => Some((a, b)),
            })
            .expect("at least one alphabet per row");
        let delta = best.dimension();
        rows.push(Table1Row {
            base: m,
            size: s,
            delta,
            k,
            beta_min,
            excess: beta_min - (0.5 - delta).max(0.0),
            minimizer: best.clone(),
            arithmetic: best.is_arithmetic_progression(),
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialEntry {
    /// Canonical representative.
    pub alphabet: Alphabet,
    pub r2: f64,
    /// `|A|/M`, the value `r_2` must take.
    pub expected_r2: f64,
}

/// Subsets of `Z_M` containing 0, as bitmasks, with size in `2..M`.
fn masks(m: u64) -> impl ParallelIterator<Item = u64> {
    (0..1u64 << (m - 1))
        .into_par_iter()
        .map(|x| (x << 1) | 1)
        .filter(move |x| {
            let c = x.count_ones() as u64;
            c >= 2 && c < m
        })
}

fn symbols_of(mask: u64) -> Vec<u64> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// All non-degenerate special alphabets with `M <= m_max`, one per class of
/// the affine group of `Z_M`, ordered by `M` and canonical symbols.
pub fn special_alphabets(m_max: u64, caps: &Caps, threads: Option<usize>) -> Result<Vec<SpecialEntry>> {
    if m_max > 32 {
        return Err(Error::out_of_range("M-max must not exceed 32", m_max));
    }
    let pool = pool(threads)?;
    let mut out = Vec::new();
    for m in 3..=m_max {
        let roots: Vec<Complex64> = (0..m).map(|j| root_of_unity(j, m)).collect();
        let tol = SPECIAL_TOL * (m as f64).sqrt();
        // The property is translation invariant, so subsets through 0 suffice.
        let found: Vec<Vec<u64>> = pool.install(|| {
            masks(m)
                .filter(|&mask| is_special_mask(mask, m, &roots, tol))
                .map(|mask| {
                    Alphabet::new(m, symbols_of(mask))
                        .expect("valid subset")
                        .canonical_form()
                        .symbols()
                        .to_vec()
                })
                .collect()
        });
        let mut unique: Vec<Vec<u64>> = found;
        unique.sort();
        unique.dedup();
        for symbols in unique {
            let a = Alphabet::new(m, symbols)?;
            let r2 = r_norm_with(&a, 2, caps)?;
            out.push(SpecialEntry {
                expected_r2: a.size() as f64 / m as f64,
                alphabet: a,
                r2,
            });
        }
    }
    Ok(out)
}

fn is_special_mask(mask: u64, m: u64, roots: &[Complex64], tol: f64) -> bool {
    let symbols = symbols_of(mask);
    let mut seen = 0u64;
    for (i, &b) in symbols.iter().enumerate() {
        for &c in &symbols[..i] {
            // G_A(-d) is the conjugate of G_A(d), so one sign suffices.
            let d = (b - c).min(m - (b - c));
            if seen >> d & 1 == 1 {
                continue;
            }
            seen |= 1 << d;
            let g: Complex64 = symbols.iter().map(|&a| roots[((a * d) % m) as usize]).sum();
            if g.norm() > tol {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FugledeCount {
    pub base: u64,
    /// Nonempty subsets containing 0.
    pub subsets: u64,
    pub spectral: u64,
    pub tiles: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub alphabet: Alphabet,
    pub spectrum: Option<Vec<u64>>,
    pub tiling: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FugledeReport {
    pub m_max: u64,
    pub counts: Vec<FugledeCount>,
    pub counterexamples: Vec<Counterexample>,
}

impl FugledeReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `A spectral ⇔ A tiles Z_M` for every nonempty `A ⊂ Z_M`,
/// `M <= m_max`. Both sides are translation invariant, so only subsets
/// containing 0 are visited.
pub fn fuglede(m_max: u64, threads: Option<usize>) -> Result<FugledeReport> {
    if !(2..=20).contains(&m_max) {
        return Err(Error::out_of_range("M-max must lie in 2..=20", m_max));
    }
    let pool = pool(threads)?;
    let mut counts = Vec::new();
    let mut counterexamples = Vec::new();
    for m in 2..=m_max {
        let results: Vec<(bool, bool, Option<Counterexample>)> = pool.install(|| {
            (0..1u64 << (m - 1))
                .into_par_iter()
                .map(|x| {
                    let a = Alphabet::new(m, symbols_of((x << 1) | 1)).expect("valid subset");
                    let spectrum = a.spectrum_set();
                    let tiling = a.tiles();
                    let (s, t) = (spectrum.is_some(), tiling.is_some());
                    let bad = (s != t).then(|| Counterexample {
                        alphabet: a,
                        spectrum,
                        tiling,
                    });
                    (s, t, bad)
                })
                .collect()
        });
        counts.push(FugledeCount {
            base: m,
            subsets: results.len() as u64,
            spectral: results.iter().filter(|r| r.0).count() as u64,
            tiles: results.iter().filter(|r| r.1).count() as u64,
        });
        counterexamples.extend(results.into_iter().filter_map(|r| r.2));
    }
    Ok(FugledeReport {
        m_max,
        counts,
        counterexamples,
    })
}
