//! Every special alphabet up to a base, one per affine class, with the
//! certificate r_2 = |A|/M.

use openbaker::cli::search::special_alphabets;
use openbaker::fup::r_norm;
use openbaker::Caps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m_max: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(16);
    for entry in special_alphabets(m_max, &Caps::default(), None)? {
        let a = &entry.alphabet;
        let r3 = r_norm(a, 3)?;
        let expected3 = (a.size() as f64 / a.base() as f64).powf(1.5);
        println!(
            "M = {:>2}  A = {:<24} r_2 - |A|/M = {:+.1e}  r_3 - (|A|/M)^(3/2) = {:+.1e}",
            a.base(),
            a.to_string(),
            entry.r2 - entry.expected_r2,
            r3 - expected3
        );
    }
    Ok(())
}
