//! The `baker` command line.
//!
//! Every subcommand is a thin wrapper over the library; [`execute`] runs a
//! parsed command and writes its primary output to the given writer, which
//! makes the surface testable in-process.

pub mod output;
pub mod search;
pub mod svg;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;

use crate::additive::{self, EnergyProfile, BRUTE_LIMIT};
use crate::alphabet::Alphabet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fup::{self, beta_from_norm, FupReport};
use crate::quantize::{Cutoff, MapInfo, Perturbation, QuantumMap};
use crate::spectral::{self, Defects, Matching, WeylSlope};

use output::{sig17, write_csv, write_json};

#[derive(Debug, Parser)]
#[command(name = "baker", version, about = "Open quantum baker's maps and fractal uncertainty")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of a quantum map, with counts and reference circles.
    Spectrum(SpectrumArgs),
    /// Norms r_k, exponents β_k and their bounds.
    Fup(FupArgs),
    /// β_k over all alphabets in a range of bases.
    Scan(ScanArgs),
    /// All special alphabets up to a base.
    Special(SpecialArgs),
    /// Exhaustive check that spectral sets and tiles coincide.
    Fuglede(FugledeArgs),
    /// Counting functions and fractal Weyl slopes.
    Weyl(WeylArgs),
    /// Compare spectra across cutoffs.
    CutoffCompare(CutoffCompareArgs),
    /// Additive portrait, energies and γ_A.
    Energy(EnergyArgs),
    /// Propagation defects of the thickened Cantor set.
    Propagate(PropagateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct AlphabetArgs {
    /// Base M.
    #[arg(long = "M", value_name = "M")]
    pub base: u64,
    /// Digits of the alphabet, comma separated.
    #[arg(long = "A", value_name = "DIGITS", value_delimiter = ',', required = true)]
    pub digits: Vec<u64>,
}

impl AlphabetArgs {
    fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(self.base, self.digits.iter().copied())
    }
}

#[derive(Debug, Clone, Args)]
pub struct CutoffArgs {
    /// Width of the smooth cutoff χ_τ.
    #[arg(long, default_value_t = 0.05)]
    pub tau: f64,
    /// Use χ ≡ 1 instead of a smooth cutoff.
    #[arg(long)]
    pub sharp: bool,
}

impl CutoffArgs {
    fn cutoff(&self) -> Result<Cutoff> {
        if self.sharp {
            Ok(Cutoff::SharpOne)
        } else {
            Cutoff::smooth(self.tau)
        }
    }
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub alphabet: AlphabetArgs,
    #[arg(long)]
    pub k: u32,
    #[command(flatten)]
    pub cutoff: CutoffArgs,
    /// Keep the structurally zero columns.
    #[arg(long)]
    pub no_trim: bool,
    /// Thresholds ν for the counting function.
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75,1")]
    pub nu: Vec<f64>,
    /// Half-width of the annulus around the P(1)/2 circle.
    #[arg(long, default_value_t = 0.05)]
    pub band_width: f64,
    /// Also perturb by this relative operator norm and report displacements.
    #[arg(long)]
    pub perturb: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Only eigenvalues with |λ| above this are compared after perturbing.
    #[arg(long, default_value_t = 0.3)]
    pub stability_radius: f64,
    /// Eigenvalue CSV (`re,im`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Eigenvalues of the perturbed map, as CSV.
    #[arg(long)]
    pub perturbed_out: Option<PathBuf>,
    /// JSON summary; stdout when absent.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FupArgs {
    #[command(flatten)]
    pub alphabet: AlphabetArgs,
    /// Levels 1..=kmax.
    #[arg(long, default_value_t = 4)]
    pub kmax: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Bases, `a..b` inclusive or a single value.
    #[arg(long = "M", value_name = "RANGE", default_value = "3..10")]
    pub bases: String,
    /// Largest |A|^k used per alphabet.
    #[arg(long, default_value_t = 5000)]
    pub cap: u64,
    /// Restrict to alphabets of this size.
    #[arg(long)]
    pub size: Option<usize>,
    /// Per-(M, |A|) minima at the tabulated levels.
    #[arg(long)]
    pub table1: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpecialArgs {
    #[arg(long = "M-max", default_value_t = 12)]
    pub m_max: u64,
    /// Required above M = 20.
    #[arg(long)]
    pub long_run: bool,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FugledeArgs {
    #[arg(long = "M-max", default_value_t = 12)]
    pub m_max: u64,
    /// Required above M = 16.
    #[arg(long)]
    pub long_run: bool,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WeylArgs {
    #[command(flatten)]
    pub alphabet: AlphabetArgs,
    /// Levels, `a..b` inclusive.
    #[arg(long)]
    pub k: String,
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1")]
    pub nu: Vec<f64>,
    #[command(flatten)]
    pub cutoff: CutoffArgs,
    /// Table of log 𝓝_k(ν) / log M; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Counts and fitted slopes.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CutoffCompareArgs {
    #[command(flatten)]
    pub alphabet: AlphabetArgs,
    #[arg(long)]
    pub k: u32,
    /// The first entry is the reference.
    #[arg(long, value_delimiter = ',', default_value = "0.05,0.2,0.5")]
    pub taus: Vec<f64>,
    /// Also compare χ ≡ 1.
    #[arg(long)]
    pub sharp: bool,
    /// Only eigenvalues with |λ| above this are matched.
    #[arg(long, default_value_t = 0.25)]
    pub annulus: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub alphabet: AlphabetArgs,
    /// Also count the modular energy of 𝒞_k.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PropagateArgs {
    #[command(flatten)]
    pub alphabet: AlphabetArgs,
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 0.5)]
    pub rho: f64,
    #[arg(long, default_value_t = 0.05)]
    pub tau: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `a..b`, `a..=b` or `a` into an inclusive range.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>> {
    let bad = || Error::InvalidArgument(format!("malformed range `{s}`"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    let r = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if r.is_empty() {
        return Err(bad());
    }
    Ok(r)
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = std::io::stdout();
    match execute(&cli.command, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("baker: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

pub fn execute(command: &Command, stdout: &mut dyn Write) -> Result<()> {
    let caps = Caps::from_env()?;
    match command {
        Command::Spectrum(a) => spectrum(a, &caps, stdout),
        Command::Fup(a) => fup_cmd(a, &caps, stdout),
        Command::Scan(a) => scan(a, &caps, stdout),
        Command::Special(a) => special(a, &caps, stdout),
        Command::Fuglede(a) => fuglede(a, stdout),
        Command::Weyl(a) => weyl(a, &caps, stdout),
        Command::CutoffCompare(a) => cutoff_compare(a, &caps, stdout),
        Command::Energy(a) => energy(a, stdout),
        Command::Propagate(a) => propagate(a, &caps, stdout),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NuCount {
    pub nu: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReferenceCircle {
    pub label: &'static str,
    pub beta: f64,
    pub radius: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Band {
    pub radius: f64,
    pub width: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Stability {
    pub perturbation: Perturbation,
    pub matching: Matching,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSummary {
    pub map: MapInfo,
    pub delta: f64,
    pub eigenvalue_count: usize,
    pub spectral_radius: f64,
    pub counts: Vec<NuCount>,
    pub band: Band,
    pub reference_circles: Vec<ReferenceCircle>,
    pub stability: Option<Stability>,
}

/// FUP (`β_k` at the map's own level, when affordable), P(1/2) and P(1)/2.
pub fn reference_circles(alphabet: &Alphabet, k: u32, caps: &Caps) -> Result<Vec<ReferenceCircle>> {
    let m = alphabet.base() as f64;
    let delta = alphabet.dimension();
    let mut out = Vec::new();
    if !alphabet.is_degenerate() && alphabet.cantor_size(k) <= caps.norm_dim as u128 {
        let beta = beta_from_norm(fup::r_norm_with(alphabet, k, caps)?, k, alphabet.base());
        out.push(ReferenceCircle {
            label: "FUP",
            beta,
            radius: m.powf(-beta),
        });
    }
    for (label, beta) in [("P(1/2)", 0.5 - delta), ("P(1)/2", (1.0 - delta) / 2.0)] {
        out.push(ReferenceCircle {
            label,
            beta,
            radius: m.powf(-beta),
        });
    }
    Ok(out)
}

fn spectrum(args: &SpectrumArgs, caps: &Caps, stdout: &mut dyn Write) -> Result<()> {
    let alphabet = args.alphabet.alphabet()?;
    let cutoff = args.cutoff.cutoff()?;
    let map = if args.no_trim {
        QuantumMap::build_map_with(&alphabet, args.k, cutoff, cutoff, caps)?
    } else {
        QuantumMap::build_trimmed_with(&alphabet, args.k, cutoff, cutoff, caps)?
    };
    let spec = spectral::eigenvalues_with(&map, caps)?;
    let circles = reference_circles(&alphabet, args.k, caps)?;
    let band_radius = (alphabet.base() as f64).powf(-(1.0 - alphabet.dimension()) / 2.0);
    let (stability, perturbed) = match args.perturb {
        Some(rel) => {
            let p = map.perturb(rel, args.seed)?;
            let ps = spectral::eigenvalues_with(&p, caps)?;
            let info = p.perturbation().expect("perturbed map").clone();
            let matching = spectral::match_annulus(&spec.eigenvalues, &ps.eigenvalues, args.stability_radius);
            (
                Some(Stability {
                    perturbation: info,
                    matching,
                }),
                Some(ps.eigenvalues),
            )
        }
        None => (None, None),
    };
    if let Some(path) = &args.out {
        output::write_eigenvalues(&spec.eigenvalues, path)?;
    }
    if let (Some(path), Some(p)) = (&args.perturbed_out, &perturbed) {
        output::write_eigenvalues(p, path)?;
    }
    if let Some(path) = &args.svg {
        let labelled: Vec<svg::Circle> = circles
            .iter()
            .map(|c| svg::Circle {
                label: c.label.to_string(),
                radius: c.radius,
            })
            .collect();
        std::fs::write(path, svg::scatter(&spec.eigenvalues, perturbed.as_deref(), &labelled))?;
    }
    let summary = SpectrumSummary {
        delta: alphabet.dimension(),
        eigenvalue_count: spec.len(),
        spectral_radius: spec.spectral_radius(),
        counts: args
            .nu
            .iter()
            .map(|&nu| NuCount {
                nu,
                count: spec.counting(nu),
            })
            .collect(),
        band: Band {
            radius: band_radius,
            width: args.band_width,
            count: spec.annulus_count(band_radius, args.band_width),
        },
        reference_circles: circles,
        stability,
        map: spec.source,
    };
    write_json("spectrum", summary, args.json.as_deref(), stdout)
}

fn fup_cmd(args: &FupArgs, caps: &Caps, stdout: &mut dyn Write) -> Result<()> {
    let alphabet = args.alphabet.alphabet()?;
    if args.kmax == 0 {
        return Err(Error::out_of_range("kmax must be positive", 0));
    }
    let ks: Vec<u32> = (1..=args.kmax).collect();
    let report: FupReport = fup::fup_report_with(&alphabet, &ks, caps)?;
    write_json("fup", report, args.out.as_deref(), stdout)
}

fn scan(args: &ScanArgs, caps: &Caps, stdout: &mut dyn Write) -> Result<()> {
    let bases = parse_range(&args.bases)?;
    if args.table1 {
        let rows = search::table1(bases, args.size, caps, args.jobs)?;
        let header = ["M", "size", "delta", "k", "beta_min", "excess", "alphabet", "arithmetic"];
        write_csv(
            &header.map(String::from),
            rows.iter().map(|r| {
                [
                    r.base.to_string(),
                    r.size.to_string(),
                    sig17(r.delta),
                    r.k.to_string(),
                    sig17(r.beta_min),
                    sig17(r.excess),
                    r.minimizer.to_string(),
                    r.arithmetic.to_string(),
                ]
            }),
            args.out.as_deref(),
            stdout,
        )
    } else {
        let rows = search::scan(bases, args.size, args.cap, caps, args.jobs)?;
        write_csv(
            &["M", "alphabet", "delta", "k", "beta_k"].map(String::from),
            rows.iter().map(|r| {
                [
                    r.alphabet.base().to_string(),
                    r.alphabet.to_string(),
                    sig17(r.delta),
                    r.k.to_string(),
                    sig17(r.beta),
                ]
            }),
            args.out.as_deref(),
            stdout,
        )
    }
}

fn special(args: &SpecialArgs, caps: &Caps, stdout: &mut dyn Write) -> Result<()> {
    if args.m_max > 20 && !args.long_run {
        return Err(Error::InvalidArgument("M-max above 20 requires --long-run".into()));
    }
    let list = search::special_alphabets(args.m_max, caps, args.jobs)?;
    write_csv(
        &["M", "alphabet", "size", "r_2", "expected_r_2"].map(String::from),
        list.iter().map(|e| {
            [
                e.alphabet.base().to_string(),
                e.alphabet.to_string(),
                e.alphabet.size().to_string(),
                sig17(e.r2),
                sig17(e.expected_r2),
            ]
        }),
        args.out.as_deref(),
        stdout,
    )
}

fn fuglede(args: &FugledeArgs, stdout: &mut dyn Write) -> Result<()> {
    if args.m_max > 16 && !args.long_run {
        return Err(Error::InvalidArgument("M-max above 16 requires --long-run".into()));
    }
    let report = search::fuglede(args.m_max, args.jobs)?;
    write_json("fuglede", report, args.out.as_deref(), stdout)
}

#[derive(Debug, Clone, Serialize)]
pub struct WeylSummary {
    pub base: u64,
    pub symbols: Vec<u64>,
    pub delta: f64,
    pub cutoff: Cutoff,
    pub ks: Vec<u32>,
    pub nus: Vec<f64>,
    pub dimensions: Vec<usize>,
    pub counts: Vec<Vec<usize>>,
    pub slopes: Vec<WeylSlope>,
}

fn weyl(args: &WeylArgs, caps: &Caps, stdout: &mut dyn Write) -> Result<()> {
    let alphabet = args.alphabet.alphabet()?;
    let range = parse_range(&args.k)?;
    let ks: Vec<u32> = range.map(|k| k as u32).collect();
    let fit = spectral::weyl_fit_with(&alphabet, &ks, &args.nu, args.cutoff.cutoff()?, caps)?;
    let mut header = vec!["nu".to_string()];
    header.extend(fit.ks.iter().map(|k| format!("k={k}")));
    let rows: Vec<Vec<String>> = fit
        .nus
        .iter()
        .enumerate()
        .map(|(j, &nu)| {
            let mut row = vec![sig17(nu)];
            row.extend((0..fit.ks.len()).map(|i| fit.log_count(i, j).map(sig17).unwrap_or_default()));
            row
        })
        .collect();
    write_csv(&header, rows, args.out.as_deref(), stdout)?;
    if let Some(path) = &args.json {
        let summary = WeylSummary {
            base: fit.base,
            symbols: fit.symbols,
            delta: fit.delta,
            cutoff: fit.cutoff,
            ks: fit.ks,
            nus: fit.nus,
            dimensions: fit.dimensions,
            counts: fit.counts,
            slopes: fit.slopes,
        };
        write_json("weyl", summary, Some(path), &mut std::io::sink())?;
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct CutoffComparison {
    pub cutoff: Cutoff,
    pub label: String,
    pub dimension: usize,
    pub matching: Matching,
}

#[derive(Debug, Clone, Serialize)]
pub struct CutoffReport {
    pub base: u64,
    pub symbols: Vec<u64>,
    pub k: u32,
    pub annulus: f64,
    pub reference: Cutoff,
    pub comparisons: Vec<CutoffComparison>,
}

/// Annulus matching of the spectrum for `cutoffs[0]` against each other entry.
pub fn compare_cutoffs(
    alphabet: &Alphabet,
    k: u32,
    cutoffs: &[Cutoff],
    annulus: f64,
    caps: &Caps,
) -> Result<CutoffReport> {
    let (reference, rest) = cutoffs
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("no cutoffs given".into()))?;
    let spectrum = |c: Cutoff| -> Result<spectral::Spectrum> {
        let map = QuantumMap::build_trimmed_with(alphabet, k, c, c, caps)?;
        spectral::eigenvalues_with(&map, caps)
    };
    let base = spectrum(*reference)?;
    let comparisons = rest
        .iter()
        .map(|&c| {
            let other = spectrum(c)?;
            Ok(CutoffComparison {
                cutoff: c,
                label: c.label(),
                dimension: other.source.dimension,
                matching: spectral::match_annulus(&base.eigenvalues, &other.eigenvalues, annulus),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CutoffReport {
        base: alphabet.base(),
        symbols: alphabet.symbols().to_vec(),
        k,
        annulus,
        reference: *reference,
        comparisons,
    })
}

fn cutoff_compare(args: &CutoffCompareArgs, caps: &Caps, stdout: &mut dyn Write) -> Result<()> {
    let alphabet = args.alphabet.alphabet()?;
    let mut cutoffs = args
        .taus
        .iter()
        .map(|&t| Cutoff::smooth(t))
        .collect::<Result<Vec<_>>>()?;
    if args.sharp {
        cutoffs.push(Cutoff::SharpOne);
    }
    if cutoffs.len() < 2 {
        return Err(Error::InvalidArgument("need at least two cutoffs to compare".into()));
    }
    let report = compare_cutoffs(&alphabet, args.k, &cutoffs, args.annulus, caps)?;
    write_json("cutoff-compare", report, args.out.as_deref(), stdout)
}

#[derive(Debug, Clone, Serialize)]
pub struct CantorEnergy {
    pub k: u32,
    pub n: u64,
    /// Decimal strings: the counts outgrow 64 bits quickly.
    pub recursion: String,
    pub carry: String,
    pub brute: Option<u64>,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnergySummary {
    pub profile: EnergyProfile,
    pub cantor: Option<CantorEnergy>,
}

fn energy(args: &EnergyArgs, stdout: &mut dyn Write) -> Result<()> {
    let alphabet = args.alphabet.alphabet()?;
    let profile = additive::profile(&alphabet);
    let cantor = match args.k {
        Some(k) => {
            let recursion = additive::cantor_energy_mod(&alphabet, k)?;
            let carry = additive::cantor_energy_carry(&alphabet, k)?;
            let brute = if alphabet.cantor_size(k).pow(3) <= BRUTE_LIMIT {
                Some(additive::cantor_energy_brute(&alphabet, k)?)
            } else {
                None
            };
            let agree = recursion == carry && brute.is_none_or(|b| BigUint::from(b) == recursion);
            Some(CantorEnergy {
                k,
                n: alphabet.modulus(k)?,
                recursion: recursion.to_string(),
                carry: carry.to_string(),
                brute,
                agree,
            })
        }
        None => None,
    };
    write_json("energy", EnergySummary { profile, cantor }, args.out.as_deref(), stdout)
}

#[derive(Debug, Clone, Serialize)]
pub struct PropagationSummary {
    pub map: MapInfo,
    pub defects: Defects,
}

fn propagate(args: &PropagateArgs, caps: &Caps, stdout: &mut dyn Write) -> Result<()> {
    let alphabet = args.alphabet.alphabet()?;
    let c = Cutoff::smooth(args.tau)?;
    let n = alphabet.modulus(args.k)?;
    if n > caps.dense as u64 * 64 {
        return Err(Error::cap("N for matrix-free propagation", n, caps.dense as u64 * 64));
    }
    let map = QuantumMap::new(&alphabet, args.k, c, c)?;
    let defects = spectral::propagation_defect(&map, args.rho)?;
    write_json(
        "propagate",
        PropagationSummary {
            map: map.info(),
            defects,
        },
        args.out.as_deref(),
        stdout,
    )
}

/// Runs the command line given as a full argument list, including the
/// program name.
pub fn run_with_args<I, T>(args: I, stdout: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    execute(&cli.command, stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<String> {
        let mut out = Vec::new();
        run_with_args(std::iter::once("baker").chain(args.iter().copied()), &mut out)?;
        Ok(String::from_utf8(out).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..4").unwrap(), 3..=4);
        assert_eq!(parse_range("3..=5").unwrap(), 3..=5);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn verify_cli() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn validation_errors() {
        let e = run(&["spectrum", "--M", "6", "--A", "0,7", "--k", "2"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(&["fup", "--M", "4", "--A", "0,1,2,3"]).unwrap_err();
        assert!(matches!(e, Error::DegenerateAlphabet { .. }));
        assert_eq!(run(&["special", "--M-max", "24"]).unwrap_err().exit_code(), 2);
        assert_eq!(run(&["fuglede", "--M-max", "18"]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn energy_report() {
        let text = run(&["energy", "--M", "3", "--A", "0,2", "--k", "2"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["cantor"]["recursion"], "36");
        assert_eq!(v["cantor"]["brute"], 36);
        assert_eq!(v["cantor"]["agree"], true);
        assert!((v["profile"]["gamma"].as_f64().unwrap() - 0.2619).abs() < 1e-4);
    }
}
