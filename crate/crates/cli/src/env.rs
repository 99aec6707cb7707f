//! Resolved run configuration: fields, convention, cache and thread pool.

use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use kronecker_hall::exactfield::{is_supported_prime, SUPPORTED_PRIMES};
use kronecker_hall::hallcore::{calibrate, CalibrationResult, HallAlgebra, HallError, StructureStore, TwistConvention};
use kronecker_hall::kronrep::MAX_TOTAL_DIM;

use crate::{Format, RunArgs};

/// Exit 2 for bad input, 1 for everything that went wrong afterwards.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failure(m) => write!(f, "{m}"),
        }
    }
}

impl From<HallError> for CliError {
    fn from(e: HallError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub struct Env {
    pub q_list: Vec<u32>,
    pub max_dim: usize,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    convention_arg: String,
}

impl Env {
    pub fn new(args: &RunArgs, default_q: &[u32]) -> Result<Self, CliError> {
        if args.max_dim > MAX_TOTAL_DIM {
            return Err(usage(format!(
                "--max-dim {} exceeds the ceiling {MAX_TOTAL_DIM}",
                args.max_dim
            )));
        }
        let q_list = if args.q.is_empty() {
            default_q.to_vec()
        } else {
            args.q.clone()
        };
        if let Some(bad) = q_list.iter().find(|q| !is_supported_prime(**q)) {
            return Err(usage(format!("q = {bad} is not one of {SUPPORTED_PRIMES:?}")));
        }
        if let Some(n) = args.jobs {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global()
                .map_err(|e| CliError::Failure(e.to_string()))?;
        }
        Ok(Env {
            q_list,
            max_dim: args.max_dim,
            format: args.format,
            cache_dir: args.cache_dir.clone(),
            convention_arg: args.convention.clone(),
        })
    }

    /// The convention named by `--convention`.
    pub fn convention(&self) -> Result<TwistConvention, CliError> {
        match self.convention_arg.as_str() {
            "calibrated" => Ok(TwistConvention::calibrated()),
            "calibrate" => Ok(self.calibration(&[2, 3])?.unique()?),
            path => {
                let text = std::fs::read_to_string(path).map_err(|e| usage(format!("convention file {path}: {e}")))?;
                serde_json::from_str(&text).map_err(|e| usage(format!("convention file {path}: {e}")))
            }
        }
    }

    /// Runs the search and writes the surviving set to the cache directory.
    pub fn calibration(&self, q_list: &[u32]) -> Result<CalibrationResult, CliError> {
        let res = calibrate(q_list)?;
        if let Some(dir) = &self.cache_dir {
            std::fs::create_dir_all(dir)?;
            let body = serde_json::to_string_pretty(&res.to_json()).expect("json");
            std::fs::write(dir.join(calibration_file(q_list)), body)?;
        }
        Ok(res)
    }

    /// One algebra per field, backed by the on-disk cache when configured.
    pub fn algebras(&self, conv: TwistConvention) -> Result<Vec<HallAlgebra>, CliError> {
        let mut out = Vec::new();
        for &q in &self.q_list {
            let store = Arc::new(StructureStore::new(q));
            if let Some(dir) = &self.cache_dir {
                store.load(dir, &conv.hash())?;
            }
            out.push(HallAlgebra::with_store(store, conv));
        }
        Ok(out)
    }

    /// Writes back whatever the algebras computed.
    pub fn persist(&self, algs: &[HallAlgebra]) -> Result<(), CliError> {
        if let Some(dir) = &self.cache_dir {
            for a in algs {
                a.store().save(dir, &a.convention().hash())?;
            }
        }
        Ok(())
    }
}

pub fn calibration_file(q_list: &[u32]) -> String {
    let qs: Vec<String> = q_list.iter().map(u32::to_string).collect();
    format!("calibration-q{}.json", qs.join("-"))
}
