//! Eigenvalues of the open baker's map for (6, {1,4}) and the band of
//! |A|^k eigenvalues around the P(1)/2 circle.
//!
//! cargo run --release --example band_structure -- [k] [out.svg]

use openbaker::cli::reference_circles;
use openbaker::cli::svg::{scatter, Circle};
use openbaker::spectral::eigenvalues;
use openbaker::{Alphabet, Caps, Cutoff, QuantumMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let svg_path = args.next();

    let a = Alphabet::new(6, [1, 4])?;
    let chi = Cutoff::smooth(0.05)?;
    let map = QuantumMap::build_trimmed(&a, k, chi, chi)?;
    let spectrum = eigenvalues(&map)?;

    let radius = 6f64.powf(-(1.0 - a.dimension()) / 2.0);
    println!("N = {}, trimmed dimension = {}", map.n(), spectrum.source.dimension);
    println!("spectral radius = {:.6}", spectrum.spectral_radius());
    println!(
        "eigenvalues with ||λ| - {radius:.4}| < 0.05: {} (|A|^k = {})",
        spectrum.annulus_count(radius, 0.05),
        a.cantor_size(k)
    );

    let circles = reference_circles(&a, k, &Caps::default())?;
    for c in &circles {
        println!("{:>7}: β = {:+.4}, radius {:.4}", c.label, c.beta, c.radius);
    }
    if let Some(path) = svg_path {
        let labelled: Vec<Circle> = circles
            .iter()
            .map(|c| Circle { label: c.label.into(), radius: c.radius })
            .collect();
        std::fs::write(&path, scatter(&spectrum.eigenvalues, None, &labelled))?;
        println!("wrote {path}");
    }
    Ok(())
}
