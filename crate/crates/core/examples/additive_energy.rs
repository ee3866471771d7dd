//! Additive portraits and energies of an alphabet, the growth rate γ_A, and
//! the energy of its Cantor sets by recursion, carries and brute force.

use openbaker::additive::{cantor_energy_brute, cantor_energy_carry, cantor_energy_mod, check_appendix_inequalities, profile};
use openbaker::Alphabet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Alphabet::new(5, [0, 1, 3])?;
    let p = profile(&a);
    println!("A = {a} in Z_{}", a.base());
    println!("F_j  (j = -{}..{}): {:?}", a.base() - 1, a.base() - 1, p.portrait);
    println!("E_ℓ  (ℓ = -{}..{}): {:?}", 2 * a.base() - 2, 2 * a.base() - 2, p.energies);
    println!("Ẽ_ℓ  (ℓ mod {}): {:?}", a.base(), p.energies_mod);
    println!("energy matrix {:?}, spectral radius {:.6}", p.matrix, p.rho);
    println!("γ_A = {:.6}", p.gamma()?);

    for k in 1..=4 {
        let rec = cantor_energy_mod(&a, k)?;
        let carry = cantor_energy_carry(&a, k)?;
        let brute = cantor_energy_brute(&a, k)?;
        println!("k = {k}: Ẽ(C_k) = {rec} (carries {carry}, brute force {brute})");
    }
    let report = check_appendix_inequalities(&a)?;
    println!("appendix inequalities hold: {}", report.passed());
    Ok(())
}
