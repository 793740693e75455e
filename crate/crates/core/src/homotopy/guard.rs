use std::env;

use crate::error::{Error, Result};

/// Environment variable overriding the default search budget, formatted as
/// `partial=N,maps=N` (either key may be omitted).
pub const GUARD_ENV: &str = "LEFDT_GUARD";

/// Budget for exhaustive searches. Exceeding it is an error; results are
/// never truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchGuard {
    /// partial assignments visited by backtracking
    pub max_partial: u64,
    /// complete maps produced or stored
    pub max_maps: u64,
}

impl Default for SearchGuard {
    fn default() -> Self {
        SearchGuard {
            max_partial: 100_000_000,
            max_maps: 10_000_000,
        }
    }
}

impl SearchGuard {
    pub fn new(max_partial: u64, max_maps: u64) -> Self {
        SearchGuard { max_partial, max_maps }
    }

    /// Defaults, overridden by `LEFDT_GUARD` when set.
    pub fn from_env() -> Result<Self> {
        match env::var(GUARD_ENV) {
            Ok(text) => Self::parse(&text),
            Err(env::VarError::NotPresent) => Ok(Self::default()),
            Err(e) => Err(Error::Parse(format!("{GUARD_ENV}: {e}"))),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut guard = Self::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("{GUARD_ENV}: expected key=value, got {item:?}")))?;
            let value: u64 = value
                .trim()
                .replace('_', "")
                .parse()
                .map_err(|e| Error::Parse(format!("{GUARD_ENV}: {key}: {e}")))?;
            match key.trim() {
                "partial" => guard.max_partial = value,
                "maps" => guard.max_maps = value,
                other => return Err(Error::Parse(format!("{GUARD_ENV}: unknown key {other:?}"))),
            }
        }
        Ok(guard)
    }

    pub(crate) fn check_partial(&self, count: u64) -> Result<()> {
        if count > self.max_partial {
            Err(Error::Resource {
                what: "partial assignments",
                limit: self.max_partial,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_maps(&self, count: u64) -> Result<()> {
        if count > self.max_maps {
            Err(Error::Resource {
                what: "maps",
                limit: self.max_maps,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(SearchGuard::parse("partial=5,maps=7").unwrap(), SearchGuard::new(5, 7));
        assert_eq!(SearchGuard::parse("maps=1_000").unwrap().max_maps, 1000);
        assert_eq!(SearchGuard::parse("").unwrap(), SearchGuard::default());
        assert!(SearchGuard::parse("maps").is_err());
        assert!(SearchGuard::parse("depth=3").is_err());
        assert!(SearchGuard::parse("maps=-1").is_err());
    }

    #[test]
    fn limits() {
        let g = SearchGuard::new(10, 2);
        assert!(g.check_partial(10).is_ok());
        assert!(matches!(g.check_partial(11), Err(Error::Resource { .. })));
        assert!(g.check_maps(3).is_err());
    }
}
