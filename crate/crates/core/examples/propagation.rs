//! Numerical concentration of B^k̃ near the thickened Cantor set X_ρ, in
//! position and in frequency, from the matrix-free map.

use openbaker::spectral::{propagation_defect, x_rho};
use openbaker::{Alphabet, Cutoff, QuantumMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Alphabet::new(3, [0, 2])?;
    let chi = Cutoff::smooth(0.05)?;
    for k in [4, 6, 8] {
        let map = QuantumMap::new(&a, k, chi, chi)?;
        for rho in [0.5, 0.75] {
            let d = propagation_defect(&map, rho)?;
            println!(
                "k = {k}, ρ = {rho}: |X_ρ| = {:>5} of {:>5}, k̃ = {}, space {:.2e}, fourier {:.2e}",
                x_rho(&a, k, rho)?.len(),
                d.n,
                d.k_tilde,
                d.space_defect,
                d.fourier_defect
            );
        }
    }
    Ok(())
}
