//! Norms r_k and exponents β_k for a few alphabets, next to the bounds that
//! sandwich them.

use openbaker::fup::fup_report;
use openbaker::Alphabet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (m, digits) in [(3, vec![0, 2]), (4, vec![0, 3]), (6, vec![0, 3]), (5, vec![0, 1, 3])] {
        let a = Alphabet::new(m, digits)?;
        let report = fup_report(&a, 5)?;
        println!(
            "M = {m}, A = {a}, δ = {:.4}, admissible β in [{:.4}, {:.4}]",
            report.delta, report.beta_floor, report.beta_ceiling
        );
        println!("   k        r_k        β_k   additive   witness");
        for l in &report.levels {
            println!(
                "  {:>2}  {:.3e}  {:9.6}  {:.3e}  {:.3e}",
                l.k, l.r, l.beta, l.bounds.additive, l.bounds.witness_modulated
            );
        }
        println!();
    }
    Ok(())
}
