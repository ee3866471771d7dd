//! Counting functions 𝓝_k(ν) and the fitted growth exponents against the
//! fractal Weyl bound m(δ, ν).
//!
//! cargo run --release --example weyl_law -- [kmax]

use openbaker::spectral::weyl_fit;
use openbaker::{Alphabet, Cutoff};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kmax: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    let a = Alphabet::new(6, [1, 2, 3, 4])?;
    let ks: Vec<u32> = (2..=kmax).collect();
    let nus: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    let fit = weyl_fit(&a, &ks, &nus, Cutoff::smooth(0.05)?)?;

    print!("  ν ");
    for k in &fit.ks {
        print!("    k={k}");
    }
    println!("   slope  m(δ,ν)");
    for (j, s) in fit.slopes.iter().enumerate() {
        print!("{:.1} ", s.nu);
        for i in 0..fit.ks.len() {
            match fit.log_count(i, j) {
                Some(v) => print!(" {v:7.3}"),
                None => print!("       -"),
            }
        }
        match s.slope {
            Some(v) => println!(" {v:7.3} {:7.3}", s.bound),
            None => println!("       - {:7.3}", s.bound),
        }
    }
    Ok(())
}
