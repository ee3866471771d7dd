//! Alphabets, their Cantor sets, and the exponential sum `G_A`.
//!
//! An [`Alphabet`] is a base `M` together with a set of digits `A ⊂ {0..M-1}`.
//! The level-`k` Cantor set is the set of residues mod `M^k` whose base-`M`
//! digits all lie in `A`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dft::root_of_unity;
use crate::error::{Error, Result};

/// Default absolute tolerance for deciding that `G_A` vanishes.
pub const SPECIAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawAlphabet")]
pub struct Alphabet {
    base: u64,
    symbols: Vec<u64>,
}

#[derive(Deserialize)]
struct RawAlphabet {
    base: u64,
    symbols: Vec<u64>,
}

impl TryFrom<RawAlphabet> for Alphabet {
    type Error = Error;

    fn try_from(raw: RawAlphabet) -> Result<Self> {
        Alphabet::new(raw.base, raw.symbols)
    }
}

impl Alphabet {
    /// Validates and sorts `symbols`. Degenerate alphabets (one symbol, or
    /// every residue) are accepted; see [`Alphabet::is_degenerate`].
    pub fn new(base: u64, symbols: impl IntoIterator<Item = u64>) -> Result<Self> {
        if base < 2 {
            return Err(Error::out_of_range("base must be at least 2", base));
        }
        let mut symbols: Vec<u64> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::EmptySymbols);
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s >= base) {
            return Err(Error::out_of_range("symbol must be below the base", bad));
        }
        symbols.sort_unstable();
        if let Some((&dup, _)) = symbols.iter().tuple_windows().find(|(a, b)| a == b) {
            return Err(Error::Duplicate(dup));
        }
        Ok(Alphabet { base, symbols })
    }

    pub fn full(base: u64) -> Result<Self> {
        Alphabet::new(base, 0..base)
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn contains(&self, symbol: u64) -> bool {
        self.symbols.binary_search(&symbol).is_ok()
    }

    pub fn is_degenerate(&self) -> bool {
        self.size() == 1 || self.size() as u64 == self.base
    }

    pub(crate) fn require_nondegenerate(&self, op: &'static str) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateAlphabet {
                op,
                base: self.base,
                size: self.size(),
            })
        } else {
            Ok(())
        }
    }

    /// `log|A| / log M`, the dimension of the limiting Cantor set.
    pub fn dimension(&self) -> f64 {
        (self.size() as f64).ln() / (self.base as f64).ln()
    }

    /// Topological pressure `P(s) = δ - s`.
    pub fn pressure(&self, s: f64) -> f64 {
        self.dimension() - s
    }

    /// `M^k`, or `Overflow` if it does not fit in 64 bits.
    pub fn modulus(&self, k: u32) -> Result<u64> {
        self.base.checked_pow(k).ok_or(Error::Overflow("M^k"))
    }

    /// `|A|^k` as an exact integer, saturating at `u128::MAX`.
    pub fn cantor_size(&self, k: u32) -> u128 {
        (self.size() as u128).checked_pow(k).unwrap_or(u128::MAX)
    }

    pub fn cantor_set(&self, k: u32) -> Result<CantorSet> {
        self.cantor_set_capped(k, crate::Caps::default().enumeration)
    }

    pub fn cantor_set_capped(&self, k: u32, cap: u64) -> Result<CantorSet> {
        if k == 0 {
            return Err(Error::out_of_range("Cantor level must be at least 1", k));
        }
        let size = self.cantor_size(k);
        if size > cap as u128 {
            return Err(Error::cap("Cantor set size", size, cap));
        }
        let modulus = self.modulus(k)?;
        // Top digit outermost keeps the output sorted.
        let mut points = vec![0u64];
        let mut scale = 1u64;
        for _ in 0..k {
            let mut next = Vec::with_capacity(points.len() * self.size());
            for &a in &self.symbols {
                next.extend(points.iter().map(|&p| a * scale + p));
            }
            points = next;
            scale *= self.base;
        }
        Ok(CantorSet {
            level: k,
            modulus,
            points,
        })
    }

    /// The closed intervals `[j/M^k, (j+1)/M^k]`, `j ∈ C_k`, whose
    /// intersection over `k` is the limiting Cantor set.
    pub fn cantor_intervals(&self, k: u32) -> Result<Vec<(f64, f64)>> {
        let set = self.cantor_set(k)?;
        let n = set.modulus as f64;
        Ok(set
            .points
            .iter()
            .map(|&j| (j as f64 / n, (j + 1) as f64 / n))
            .collect())
    }

    /// `G_A(x) = M^{-1/2} Σ_{a∈A} exp(-2πi a x)`.
    pub fn g_function(&self, x: f64) -> Complex64 {
        let frac = x - x.floor();
        let sum: Complex64 = self
            .symbols
            .iter()
            .map(|&a| {
                let t = (a as f64 * frac).fract();
                Complex64::from_polar(1.0, -2.0 * PI * t)
            })
            .sum();
        sum / (self.base as f64).sqrt()
    }

    /// `G_A(num/den)` with the phases `a·num mod den` reduced exactly.
    pub fn g_rational(&self, num: i128, den: u64) -> Complex64 {
        let den_i = den as i128;
        let num = num.rem_euclid(den_i) as u128;
        let sum: Complex64 = self
            .symbols
            .iter()
            .map(|&a| root_of_unity(((a as u128 * num) % den as u128) as u64, den))
            .sum();
        sum / (self.base as f64).sqrt()
    }

    /// `zeros[d]` is true when `|G_A(d/M)| <= tol`, for `d ∈ Z_M`.
    pub fn g_zero_table(&self, tol: f64) -> Vec<bool> {
        (0..self.base)
            .map(|d| self.g_rational(d as i128, self.base).norm() <= tol)
            .collect()
    }

    /// Whether `G_A((b-b')/M) = 0` for all distinct `b, b' ∈ A`.
    pub fn is_special(&self, tol: f64) -> Result<bool> {
        self.require_nondegenerate("is_special")?;
        Ok(self.is_spectrum_with(&self.symbols, &self.g_zero_table(tol)))
    }

    /// Whether `candidate` is a spectrum for this alphabet: same size and
    /// `G_A` vanishes on every nonzero difference.
    pub fn is_spectrum(&self, candidate: &[u64], tol: f64) -> bool {
        candidate.len() == self.size()
            && candidate.iter().all(|&b| b < self.base)
            && candidate.iter().all_unique()
            && self.is_spectrum_with(candidate, &self.g_zero_table(tol))
    }

    fn is_spectrum_with(&self, candidate: &[u64], zeros: &[bool]) -> bool {
        let m = self.base;
        candidate
            .iter()
            .tuple_combinations()
            .all(|(&b, &c)| zeros[((b + m - c) % m) as usize])
    }

    /// Lexicographically least image of `A` under `x ↦ (d·x + q) mod M`
    /// over units `d` and shifts `q`. A deduplication key only: the map does
    /// not preserve `r_k` in general.
    pub fn canonical_form(&self) -> Alphabet {
        let m = self.base;
        let mut best: Option<Vec<u64>> = None;
        for d in (1..m).filter(|&d| gcd(d, m) == 1) {
            for q in 0..m {
                let mut image: Vec<u64> = self
                    .symbols
                    .iter()
                    .map(|&x| ((d as u128 * x as u128 + q as u128) % m as u128) as u64)
                    .collect();
                image.sort_unstable();
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image);
                }
            }
        }
        Alphabet {
            base: m,
            symbols: best.unwrap_or_else(|| self.symbols.clone()),
        }
    }

    /// Some `T` with `Z_M = ⊔_{t∈T} (A + t)`, searched exhaustively. Each step
    /// covers the smallest uncovered residue, trying translates in increasing
    /// order, so the result is deterministic.
    pub fn tiles(&self) -> Option<Vec<u64>> {
        let m = self.base as usize;
        if m % self.size() != 0 {
            return None;
        }
        let mut covered = vec![false; m];
        let mut chosen = Vec::with_capacity(m / self.size());
        if self.tile_search(&mut covered, &mut chosen) {
            chosen.sort_unstable();
            Some(chosen)
        } else {
            None
        }
    }

    fn tile_search(&self, covered: &mut [bool], chosen: &mut Vec<u64>) -> bool {
        let m = self.base;
        let Some(x) = covered.iter().position(|&c| !c) else {
            return true;
        };
        let x = x as u64;
        let mut candidates: Vec<u64> = self.symbols.iter().map(|&a| (x + m - a) % m).collect();
        candidates.sort_unstable();
        for t in candidates {
            let cells: Vec<usize> = self
                .symbols
                .iter()
                .map(|&a| ((a + t) % m) as usize)
                .collect();
            if cells.iter().any(|&c| covered[c]) {
                continue;
            }
            for &c in &cells {
                covered[c] = true;
            }
            chosen.push(t);
            if self.tile_search(covered, chosen) {
                return true;
            }
            chosen.pop();
            for &c in &cells {
                covered[c] = false;
            }
        }
        false
    }

    /// Lexicographically least spectrum `B` for `A`, if one exists.
    pub fn spectrum_set(&self) -> Option<Vec<u64>> {
        self.spectrum_set_with_tol(SPECIAL_TOL)
    }

    pub fn spectrum_set_with_tol(&self, tol: f64) -> Option<Vec<u64>> {
        let zeros = self.g_zero_table(tol);
        // Any spectrum translated to contain 0 is still a spectrum and is
        // lexicographically no larger, so the search can start from {0}.
        let mut chosen = vec![0u64];
        if self.spectrum_search(&zeros, &mut chosen) {
            Some(chosen)
        } else {
            None
        }
    }

    fn spectrum_search(&self, zeros: &[bool], chosen: &mut Vec<u64>) -> bool {
        if chosen.len() == self.size() {
            return true;
        }
        let m = self.base;
        let remaining = self.size() - chosen.len();
        let last = *chosen.last().expect("search starts from {0}");
        for c in last + 1..m {
            if (m - c) < remaining as u64 {
                break;
            }
            if chosen.iter().all(|&b| zeros[(c - b) as usize]) {
                chosen.push(c);
                if self.spectrum_search(zeros, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// The alphabet translated so that its smallest symbol is 0.
    pub fn shifted_to_zero(&self) -> Alphabet {
        let lo = self.symbols[0];
        Alphabet {
            base: self.base,
            symbols: self.symbols.iter().map(|&s| s - lo).collect(),
        }
    }

    /// The mirror image `x ↦ M - 1 - x`.
    pub fn reflected(&self) -> Alphabet {
        let mut symbols: Vec<u64> = self.symbols.iter().map(|&s| self.base - 1 - s).collect();
        symbols.sort_unstable();
        Alphabet {
            base: self.base,
            symbols,
        }
    }

    /// Whether the symbols form an arithmetic progression.
    pub fn is_arithmetic_progression(&self) -> bool {
        let diffs: Vec<u64> = self
            .symbols
            .iter()
            .tuple_windows()
            .map(|(a, b)| b - a)
            .collect();
        diffs.iter().all_equal()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.iter().join(","))
    }
}

/// Parses `"M:a,b,c"`.
impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (base, symbols) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("expected `M:a,b,..`, got `{s}`")))?;
        let base = base
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad base `{base}`")))?;
        Alphabet::new(base, parse_symbols(symbols)?)
    }
}

pub fn parse_symbols(s: &str) -> Result<Vec<u64>> {
    s.trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::InvalidArgument(format!("bad symbol `{t}`")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CantorSet {
    pub level: u32,
    pub modulus: u64,
    pub points: Vec<u64>,
}

impl CantorSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.points.binary_search(&x).is_ok()
    }

    /// Largest run of consecutive residues mod `N` missing from the set.
    pub fn largest_circular_gap(&self) -> u64 {
        let n = self.modulus;
        let Some((&first, &last)) = self.points.first().zip(self.points.last()) else {
            return n;
        };
        let inner = self
            .points
            .iter()
            .tuple_windows()
            .map(|(a, b)| b - a - 1)
            .max()
            .unwrap_or(0);
        inner.max(n - 1 - last + first)
    }
}

/// All `C(M, size)` alphabets of the given size, in lexicographic order.
pub fn enumerate_alphabets(base: u64, size: usize) -> Result<impl Iterator<Item = Alphabet>> {
    if size <= 1 || size as u64 >= base {
        return Err(Error::out_of_range("alphabet size must satisfy 1 < size < M", size));
    }
    Ok((0..base).combinations(size).map(move |symbols| Alphabet { base, symbols }))
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(m: u64, s: &[u64]) -> Alphabet {
        Alphabet::new(m, s.iter().copied()).unwrap()
    }

    #[test]
    fn construction_and_validation() {
        let a = alpha(3, &[2, 0]);
        assert_eq!(a.symbols(), &[0, 2]);
        assert!(!a.is_degenerate());
        assert_eq!(alpha(6, &[1, 4]).symbols(), &[1, 4]);
        assert!(matches!(Alphabet::new(3, [0, 3]), Err(Error::OutOfRange { .. })));
        assert_eq!(Alphabet::new(3, [1, 1]), Err(Error::Duplicate(1)));
        assert_eq!(Alphabet::new(3, []), Err(Error::EmptySymbols));
        assert!(alpha(4, &[2]).is_degenerate());
        assert!(Alphabet::full(4).unwrap().is_degenerate());
    }

    #[test]
    fn dimension_and_pressure() {
        assert!((alpha(6, &[1, 2, 3, 4]).dimension() - 0.7737).abs() < 1e-4);
        assert_eq!(alpha(9, &[3, 4, 5]).dimension(), 0.5);
        assert_eq!(Alphabet::full(7).unwrap().dimension(), 1.0);
        assert_eq!(alpha(9, &[3, 4, 5]).pressure(0.5), 0.0);
        assert!((alpha(6, &[1, 2, 3, 4]).pressure(1.0) + 0.2263).abs() < 1e-4);
        let a = alpha(5, &[0, 3]);
        assert_eq!(a.pressure(0.0), a.dimension());
    }

    #[test]
    fn cantor_sets() {
        assert_eq!(alpha(3, &[0, 2]).cantor_set(2).unwrap().points, vec![0, 2, 6, 8]);
        assert_eq!(
            Alphabet::full(2).unwrap().cantor_set(3).unwrap().points,
            (0..8).collect::<Vec<_>>()
        );
        // enumerate a0 + 6 a1 with a_i in {1,4}
        let brute: Vec<u64> = {
            let mut v: Vec<u64> = [1u64, 4]
                .iter()
                .flat_map(|&a0| [1u64, 4].iter().map(move |&a1| a0 + 6 * a1))
                .collect();
            v.sort();
            v
        };
        assert_eq!(brute, vec![7, 10, 25, 28]);
        assert_eq!(alpha(6, &[1, 4]).cantor_set(2).unwrap().points, brute);
        assert!(matches!(
            alpha(3, &[0, 2]).cantor_set_capped(5, 16),
            Err(Error::CapExceeded { .. })
        ));
        assert!(alpha(3, &[0, 2]).cantor_set(0).is_err());
    }

    #[test]
    fn cantor_intervals_nest() {
        let a = alpha(3, &[0, 2]);
        assert_eq!(a.cantor_intervals(1).unwrap(), vec![(0.0, 1.0 / 3.0), (2.0 / 3.0, 1.0)]);
        let b = alpha(4, &[1, 2]);
        assert_eq!(b.cantor_intervals(1).unwrap(), vec![(0.25, 0.5), (0.5, 0.75)]);
        for alphabet in [a, b] {
            let coarse = alphabet.cantor_intervals(2).unwrap();
            let fine = alphabet.cantor_intervals(3).unwrap();
            for (lo, hi) in fine {
                assert!(coarse.iter().any(|&(a, b)| a <= lo + 1e-15 && hi <= b + 1e-15));
            }
        }
    }

    #[test]
    fn g_function_values() {
        assert!(alpha(6, &[0, 3]).g_function(0.5).norm() < 1e-15);
        let g = alpha(3, &[0, 2]).g_function(2.0 / 3.0);
        let expected = (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, -2.0 * PI / 3.0))
            / 3f64.sqrt();
        // e^{-2πi·2·(2/3)} = e^{-2πi/3}·e^{-2πi} = e^{-2πi/3}
        assert!((g - expected).norm() < 1e-14);
        assert!((g.norm() - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        let a = alpha(7, &[1, 2, 5]);
        assert!((a.g_function(0.0).re - 3.0 / 7f64.sqrt()).abs() < 1e-14);
        assert!((a.g_rational(3, 7) - a.g_function(3.0 / 7.0)).norm() < 1e-13);
        assert!((a.g_rational(-4, 7) - a.g_function(3.0 / 7.0)).norm() < 1e-13);
    }

    #[test]
    fn special_alphabets() {
        assert!(alpha(6, &[0, 3]).is_special(SPECIAL_TOL).unwrap());
        assert!(alpha(6, &[0, 2, 4]).is_special(SPECIAL_TOL).unwrap());
        assert!(!alpha(3, &[0, 2]).is_special(SPECIAL_TOL).unwrap());
        assert!(alpha(4, &[1]).is_special(SPECIAL_TOL).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(alpha(6, &[1, 4]).canonical_form(), alpha(6, &[0, 3]));
        assert_eq!(alpha(6, &[0, 3]).canonical_form(), alpha(6, &[0, 3]));
        assert_eq!(alpha(8, &[1, 3]).canonical_form(), alpha(8, &[0, 2]));
    }

    #[test]
    fn canonical_form_matches_full_enumeration() {
        // independent enumeration over every (d, q) pair
        let a = alpha(10, &[1, 4, 9]);
        let mut images = Vec::new();
        for d in 1..10u64 {
            if gcd(d, 10) != 1 {
                continue;
            }
            for q in 0..10u64 {
                let mut s: Vec<u64> = a.symbols().iter().map(|&x| (d * x + q) % 10).collect();
                s.sort();
                images.push(s);
            }
        }
        let least = images.into_iter().min().unwrap();
        assert_eq!(a.canonical_form().symbols(), &least[..]);
    }

    #[test]
    fn tilings() {
        assert_eq!(alpha(6, &[0, 3]).tiles(), Some(vec![0, 1, 2]));
        assert_eq!(alpha(6, &[0, 1, 3]).tiles(), None);
        assert_eq!(alpha(4, &[0, 1]).tiles(), Some(vec![0, 2]));
        assert_eq!(alpha(5, &[0, 1]).tiles(), None);
    }

    #[test]
    fn spectra() {
        // {0,3} is its own spectrum; {0,1} is lexicographically smaller and also valid.
        let a = alpha(6, &[0, 3]);
        assert!(a.is_spectrum(&[0, 3], SPECIAL_TOL));
        assert_eq!(a.spectrum_set(), Some(vec![0, 1]));
        assert_eq!(alpha(6, &[0, 1, 3]).spectrum_set(), None);
        assert_eq!(alpha(4, &[0, 1]).spectrum_set(), Some(vec![0, 2]));
        assert!(!alpha(4, &[0, 1]).is_spectrum(&[0, 1], SPECIAL_TOL));
    }

    #[test]
    fn no_spectrum_for_013_by_exhaustion() {
        let a = alpha(6, &[0, 1, 3]);
        let found = (0..6u64)
            .combinations(3)
            .any(|b| a.is_spectrum(&b, SPECIAL_TOL));
        assert!(!found);
    }

    #[test]
    fn enumeration() {
        let all: Vec<Vec<u64>> = enumerate_alphabets(4, 2)
            .unwrap()
            .map(|a| a.symbols().to_vec())
            .collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(enumerate_alphabets(3, 2).unwrap().count(), 3);
        assert!(enumerate_alphabets(5, 5).is_err());
        assert!(enumerate_alphabets(5, 1).is_err());
    }

    #[test]
    fn gaps_and_parsing() {
        let c = alpha(3, &[0, 2]).cantor_set(1).unwrap();
        assert_eq!(c.largest_circular_gap(), 1);
        let c = alpha(4, &[1, 2]).cantor_set(1).unwrap();
        assert_eq!(c.largest_circular_gap(), 2);
        assert_eq!("6:1,4".parse::<Alphabet>().unwrap(), alpha(6, &[1, 4]));
        assert_eq!(parse_symbols("{0, 2}").unwrap(), vec![0, 2]);
        assert!(alpha(9, &[3, 4, 5]).is_arithmetic_progression());
        assert!(!alpha(9, &[3, 4, 6]).is_arithmetic_progression());
        assert_eq!(alpha(6, &[1, 2]).reflected(), alpha(6, &[3, 4]));
        assert_eq!(alpha(6, &[3, 4]).shifted_to_zero(), alpha(6, &[0, 1]));
    }
}
