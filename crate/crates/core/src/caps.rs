//! Resource caps shared by the library and the `baker` binary.
//!
//! Every enumeration or dense factorization checks its size against one of
//! these limits before allocating. The binary reads overrides from the
//! `BAKER_CAPS` environment variable, a comma-separated list of
//! `name=value` pairs, e.g. `BAKER_CAPS=svd=4096,dense=8192`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest Cantor set `|A|^k` that may be enumerated.
    pub enumeration: u64,
    /// Largest matrix dimension accepted by `op_norm`.
    pub norm_dim: usize,
    /// Largest min-dimension for which `op_norm` runs a full SVD.
    pub svd_dim: usize,
    /// Largest `N` for dense quantum map assembly.
    pub dense: usize,
    /// Largest matrix dimension handed to the eigensolver.
    pub eig_dim: usize,
}

pub const CAPS_ENV: &str = "BAKER_CAPS";

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 1 << 20,
            norm_dim: 8192,
            svd_dim: 4096,
            dense: 16384,
            eig_dim: 8192,
        }
    }
}

impl Caps {
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Self::parse(&spec),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(spec: &str) -> Result<Self> {
        let mut caps = Self::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("malformed cap `{item}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("cap `{name}` is not an integer")))?;
            match name.trim() {
                "enumeration" | "enum" => caps.enumeration = value,
                "norm" => caps.norm_dim = value as usize,
                "svd" => caps.svd_dim = value as usize,
                "dense" => caps.dense = value as usize,
                "eig" => caps.eig_dim = value as usize,
                other => return Err(Error::InvalidArgument(format!("unknown cap `{other}`"))),
            }
        }
        Ok(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_overrides() {
        let caps = Caps::parse("svd=100, dense=64").unwrap();
        assert_eq!(caps.svd_dim, 100);
        assert_eq!(caps.dense, 64);
        assert_eq!(caps.norm_dim, Caps::default().norm_dim);
        assert!(Caps::parse("bogus=1").is_err());
        assert!(Caps::parse("svd").is_err());
    }
}
