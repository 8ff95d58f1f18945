//! Search budgets shared by the bounded procedures.

use std::path::Path;

use crate::error::{Error, Result};
use crate::words::Index;

/// Environment variable naming a config file read by [`Config::load`].
pub const CONFIG_ENV: &str = "BQ_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Index window for candidate pools and probes.
    pub window: (Index, Index),
    /// Maximum number of letters added to a prefix in candidate pools.
    pub prefix_bound: usize,
    /// Probe word length used for hypothesis checks.
    pub probes: usize,
    /// State budget for exact searches.
    pub max_states: usize,
    /// Maximum number of ideals subtracted when building differences.
    pub max_subtract: usize,
}

impl Default for Config {
    fn default() -> Config {
        Config { window: (-4, 4), prefix_bound: 3, probes: 6, max_states: 200_000, max_subtract: 2 }
    }
}

impl Config {
    /// Parses `key = value` lines. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse { input: raw.to_string(), position: lineno + 1, message: msg.to_string() };
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
            let value = value.trim().trim_matches('"');
            match key.trim() {
                "window" => {
                    let inner = value.trim_start_matches('[').trim_end_matches(']');
                    let (lo, hi) = inner.split_once(',').ok_or_else(|| bad("window takes [lo, hi]"))?;
                    let lo = lo.trim().parse().map_err(|_| bad("bad window bound"))?;
                    let hi = hi.trim().parse().map_err(|_| bad("bad window bound"))?;
                    if lo > hi {
                        return Err(bad("empty window"));
                    }
                    cfg.window = (lo, hi);
                }
                "prefix" | "prefix_bound" => cfg.prefix_bound = value.parse().map_err(|_| bad("bad prefix bound"))?,
                "probes" => cfg.probes = value.parse().map_err(|_| bad("bad probe depth"))?,
                "max_states" => cfg.max_states = value.parse().map_err(|_| bad("bad state budget"))?,
                "max_subtract" => cfg.max_subtract = value.parse().map_err(|_| bad("bad subtraction bound"))?,
                other => return Err(bad(&format!("unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read config {}: {e}", path.display())))?;
        Config::parse(&text)
    }

    /// Reads the file named by `BQ_CONFIG`, or returns the defaults.
    pub fn load() -> Result<Config> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) => Config::from_file(Path::new(&p)),
            None => Ok(Config::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let cfg = Config::parse("# comment\nwindow = [-2, 5]\nprefix=4\n\nprobes = 3 # trailing\n").unwrap();
        assert_eq!(cfg.window, (-2, 5));
        assert_eq!(cfg.prefix_bound, 4);
        assert_eq!(cfg.probes, 3);
        assert_eq!(cfg.max_subtract, Config::default().max_subtract);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Config::parse("window = [3, 1]").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("prefix").is_err());
    }
}
