//! Spectral sets and tiles of Z_M: a spectrum and a tiling complement for a
//! few sets, then the exhaustive comparison for small M.

use openbaker::cli::search::fuglede;
use openbaker::Alphabet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (m, digits) in [(6, vec![0, 3]), (6, vec![0, 1, 3]), (8, vec![0, 1, 4, 5]), (12, vec![0, 1, 6, 7])] {
        let a = Alphabet::new(m, digits)?;
        println!("{m:>2} {a:<12} spectrum {:?}  tiling {:?}", a.spectrum_set(), a.tiles());
    }

    let m_max: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(12);
    let report = fuglede(m_max, None)?;
    println!("\n M  subsets  spectral  tiles");
    for c in &report.counts {
        println!("{:>2} {:>8} {:>9} {:>6}", c.base, c.subsets, c.spectral, c.tiles);
    }
    println!("counterexamples: {}", report.counterexamples.len());
    Ok(())
}
