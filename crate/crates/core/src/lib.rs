//! Open quantum baker's maps and the fractal uncertainty principle for
//! discrete Cantor sets.
//!
//! The crate is organized bottom-up:
//!
//! * [`alphabet`]: bases, digit sets, Cantor sets, `G_A`, special alphabets,
//!   tilings and spectra.
//! * [`dft`]: the unitary DFT, restricted DFT matrices and their norms.
//! * [`additive`]: additive portraits and energies, the energy matrix and `γ_A`.
//! * [`fup`]: the norms `r_k`, exponents `β_k` and the bounds that sandwich them.
//! * [`quantize`]: cutoffs and assembly of the quantum maps `B_N`.
//! * [`spectral`]: eigenvalues, counting functions, Weyl fits and diagnostics.
//! * [`cli`]: the `baker` command line, its reports, plots and scans.

pub mod additive;
pub mod alphabet;
pub mod caps;
pub mod dft;
pub mod error;
pub mod fup;
pub mod quantize;
pub mod spectral;
pub mod cli;

pub use alphabet::{Alphabet, CantorSet};
pub use caps::Caps;
pub use error::{Error, Result};
pub use quantize::{Cutoff, QuantumMap};
