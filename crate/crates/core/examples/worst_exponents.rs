//! Smallest β_k over all alphabets of a given size, as in the table of worst
//! FUP exponents. Rows with large k take minutes each, so the default is the
//! cheap end of the table.
//!
//! cargo run --release --example worst_exponents -- [M-range] [size]

use openbaker::cli::parse_range;
use openbaker::cli::search::table1;
use openbaker::Caps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let bases = parse_range(&args.next().unwrap_or_else(|| "4..5".into()))?;
    let size = args.next().map(|s| s.parse()).transpose()?.or(Some(3));

    println!(" M |A|      δ   k      β_min  β_min - max(0,1/2-δ)  minimizer");
    for row in table1(bases, size, &Caps::default(), None)? {
        println!(
            "{:>2} {:>3} {:.4} {:>3} {:.4e} {:>21.3e}  {}{}",
            row.base,
            row.size,
            row.delta,
            row.k,
            row.beta_min,
            row.excess,
            row.minimizer,
            if row.arithmetic { " (progression)" } else { "" }
        );
    }
    Ok(())
}
