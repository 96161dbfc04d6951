//! Runtime configuration: the modulus pool driving the certificate search,
//! the exponent bound for direct searches, worker count, and the optional
//! result cache location.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Largest accepted exponent bound, in bits.
pub const HARD_BOUND_CEILING: u32 = 4096;

/// Default exponent bound: power values up to 2^96.
pub const DEFAULT_EXPONENT_BOUND: u32 = 96;

/// Moduli tried, in order, when searching for residue certificates.
///
/// Small powers of 2 and 3 come first because their rectangles are tiny;
/// the later entries bring in primes with large even orders.
pub const DEFAULT_MODULUS_POOL: [u64; 16] = [
    8, 3, 24, 5, 40, 16, 9, 48, 120, 240, 13, 97, 193, 577, 720, 6480,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub modulus_pool: Vec<u64>,
    pub exponent_bound: u32,
    pub jobs: usize,
    pub cache_path: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            modulus_pool: DEFAULT_MODULUS_POOL.to_vec(),
            exponent_bound: DEFAULT_EXPONENT_BOUND,
            jobs: 1,
            cache_path: None,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.exponent_bound == 0 {
            return Err(Error::Config("exponent bound must be positive".into()));
        }
        if self.exponent_bound > HARD_BOUND_CEILING {
            return Err(Error::BoundTooLarge {
                bound: self.exponent_bound,
                ceiling: HARD_BOUND_CEILING,
            });
        }
        if let Some(&m) = self.modulus_pool.iter().find(|&&m| m < 2) {
            return Err(Error::Config(format!("modulus {m} is too small (need >= 2)")));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be positive".into()));
        }
        Ok(())
    }

    /// Digest of the inputs that affect classification results.
    ///
    /// Worker count and cache location are deliberately excluded so cached
    /// documents stay valid across machines.
    pub fn hash(&self) -> String {
        let pool: Vec<String> = self.modulus_pool.iter().map(|m| m.to_string()).collect();
        let material = format!("pool={};bound={}", pool.join(","), self.exponent_bound);
        let digest = Sha256::digest(material.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Load settings from a simple key = value file. Unknown keys are errors.
    pub fn from_file(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Config::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {lineno}: expected key = value")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "modulus_pool" => {
                    let mut pool = Vec::new();
                    for part in value.split(',') {
                        let m = part.trim().parse::<u64>().map_err(|_| {
                            Error::Config(format!("line {lineno}: bad modulus {:?}", part.trim()))
                        })?;
                        pool.push(m);
                    }
                    cfg.modulus_pool = pool;
                }
                "exponent_bound" => {
                    cfg.exponent_bound = value.parse().map_err(|_| {
                        Error::Config(format!("line {lineno}: bad exponent bound {value:?}"))
                    })?;
                }
                "jobs" => {
                    cfg.jobs = value.parse().map_err(|_| {
                        Error::Config(format!("line {lineno}: bad job count {value:?}"))
                    })?;
                }
                "cache_path" => {
                    cfg.cache_path = Some(PathBuf::from(value));
                }
                other => {
                    return Err(Error::Config(format!("line {lineno}: unknown key {other:?}")));
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn default_config_is_valid() {
        let cfg = Config::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.modulus_pool.first(), Some(&8));
        assert_eq!(cfg.exponent_bound, 96);
    }

    #[test]
    fn hash_ignores_execution_knobs_but_tracks_search_inputs() {
        let base = Config::default();
        let mut more_jobs = base.clone();
        more_jobs.jobs = 8;
        more_jobs.cache_path = Some(PathBuf::from("/tmp/x.json"));
        assert_eq!(base.hash(), more_jobs.hash());

        let mut other_pool = base.clone();
        other_pool.modulus_pool = vec![8, 3];
        assert_ne!(base.hash(), other_pool.hash());

        let mut other_bound = base.clone();
        other_bound.exponent_bound = 128;
        assert_ne!(base.hash(), other_bound.hash());
        assert_eq!(base.hash().len(), 64);
    }

    #[test]
    fn validation_rejects_bad_settings() {
        let mut cfg = Config::default();
        cfg.exponent_bound = 0;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));

        let mut cfg = Config::default();
        cfg.exponent_bound = HARD_BOUND_CEILING + 1;
        assert!(matches!(cfg.validate(), Err(Error::BoundTooLarge { .. })));

        let mut cfg = Config::default();
        cfg.modulus_pool = vec![8, 1];
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));

        let mut cfg = Config::default();
        cfg.jobs = 0;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn config_files_round_trip_and_report_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ndh.conf");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "# comment").unwrap();
        writeln!(f, "modulus_pool = 8, 3, 24").unwrap();
        writeln!(f).unwrap();
        writeln!(f, "exponent_bound = 64").unwrap();
        writeln!(f, "jobs = 2").unwrap();
        writeln!(f, "cache_path = {}", dir.path().join("cache.json").display()).unwrap();
        drop(f);

        let cfg = Config::from_file(&path).unwrap();
        assert_eq!(cfg.modulus_pool, vec![8, 3, 24]);
        assert_eq!(cfg.exponent_bound, 64);
        assert_eq!(cfg.jobs, 2);
        assert_eq!(cfg.cache_path, Some(dir.path().join("cache.json")));

        let bad = dir.path().join("bad.conf");
        std::fs::write(&bad, "modulus_pool = 8\nwat = 9\n").unwrap();
        let err = Config::from_file(&bad).unwrap_err();
        assert!(matches!(&err, Error::Config(msg) if msg.contains("line 2")));

        let bad2 = dir.path().join("bad2.conf");
        std::fs::write(&bad2, "exponent_bound = soon\n").unwrap();
        let err = Config::from_file(&bad2).unwrap_err();
        assert!(matches!(&err, Error::Config(msg) if msg.contains("line 1")));
    }
}
