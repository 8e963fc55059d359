//! Process-wide size limits.
//!
//! Defaults can be overridden with the `SIGMA1_MAX_GROUP_ORDER` and
//! `SIGMA1_MAX_LATTICE_ORDER` environment variables. The values are read once,
//! on first use.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_GROUP_ORDER: usize = 20_000;
pub const DEFAULT_MAX_LATTICE_ORDER: usize = 400;
pub const DEFAULT_MAX_ISOMORPHISM_ORDER: usize = 64;

/// Groups up to this order get an index-level multiplication table.
pub const MUL_TABLE_MAX_ORDER: usize = 2048;

pub const ENV_MAX_GROUP_ORDER: &str = "SIGMA1_MAX_GROUP_ORDER";
pub const ENV_MAX_LATTICE_ORDER: &str = "SIGMA1_MAX_LATTICE_ORDER";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_group_order: usize,
    pub max_lattice_order: usize,
    pub max_isomorphism_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            max_lattice_order: DEFAULT_MAX_LATTICE_ORDER,
            max_isomorphism_order: DEFAULT_MAX_ISOMORPHISM_ORDER,
        }
    }
}

impl Limits {
    pub fn from_env() -> Result<Limits> {
        let mut limits = Limits::default();
        if let Some(v) = read_env(ENV_MAX_GROUP_ORDER)? {
            limits.max_group_order = v;
        }
        if let Some(v) = read_env(ENV_MAX_LATTICE_ORDER)? {
            limits.max_lattice_order = v;
        }
        Ok(limits)
    }
}

fn read_env(name: &str) -> Result<Option<usize>> {
    match std::env::var(name) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(Some(v)),
            _ => Err(Error::Config(format!(
                "{name} must be a positive integer, got {raw:?}"
            ))),
        },
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Error::Config(format!("{name}: {e}"))),
    }
}

static LIMITS: OnceLock<Limits> = OnceLock::new();

/// Active limits. Malformed environment values fall back to the defaults;
/// front ends should call [`Limits::from_env`] first to surface the error.
pub fn limits() -> &'static Limits {
    LIMITS.get_or_init(|| Limits::from_env().unwrap_or_default())
}
