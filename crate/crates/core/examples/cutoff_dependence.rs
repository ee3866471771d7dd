//! How the spectrum in |λ| > 0.25 depends on the cutoff: narrow smooth
//! cutoffs agree, a wide one and χ ≡ 1 do not.
//!
//! cargo run --release --example cutoff_dependence -- [k]

use openbaker::cli::compare_cutoffs;
use openbaker::{Alphabet, Caps, Cutoff};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    let a = Alphabet::new(4, [1, 2])?;
    let cutoffs = [
        Cutoff::smooth(0.05)?,
        Cutoff::smooth(0.2)?,
        Cutoff::smooth(0.5)?,
        Cutoff::SharpOne,
    ];
    let report = compare_cutoffs(&a, k, &cutoffs, 0.25, &Caps::default())?;
    println!("reference {}, annulus |λ| > {}", report.reference.label(), report.annulus);
    for c in &report.comparisons {
        let m = &c.matching;
        println!(
            "{:>10}: {} vs {} eigenvalues, max distance {:.2e}, unmatched {}",
            c.label, m.reference_in_annulus, m.other_in_annulus, m.max_distance, m.unmatched
        );
    }
    Ok(())
}
