//! Random perturbations of relative size 1e-4 barely move the eigenvalues in
//! the annulus of interest; the resolvent there stays moderate.
//!
//! cargo run --release --example stability -- [k]

use num_complex::Complex64;
use openbaker::spectral::{eigenvalues, match_annulus, resolvent_probe};
use openbaker::{Alphabet, Cutoff, QuantumMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let chi = Cutoff::smooth(0.05)?;
    for digits in [[1, 2, 3], [2, 3, 4], [3, 4, 5]] {
        let a = Alphabet::new(9, digits)?;
        let map = QuantumMap::build_trimmed(&a, k, chi, chi)?;
        let base = eigenvalues(&map)?;
        let perturbed = eigenvalues(&map.perturb(1e-4, 7)?)?;
        let m = match_annulus(&base.eigenvalues, &perturbed.eigenvalues, 0.3);
        println!(
            "A = {a}: {} eigenvalues with |λ| > 0.3, largest displacement {:.2e}",
            m.reference_in_annulus, m.max_distance
        );
    }

    let a = Alphabet::new(3, [0, 2])?;
    let dense = QuantumMap::build_map(&a, 4, chi, chi)?;
    for r in [0.9, 0.7, 0.5] {
        let norm = resolvent_probe(&dense, Complex64::new(r, 0.0))?;
        println!("‖(B - {r})^-1‖ ≈ {norm:.3}");
    }
    Ok(())
}
