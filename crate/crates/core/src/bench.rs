//! Timing closed forms against the elimination oracles.
//!
//! One random node set is drawn per size, then every requested method is
//! timed on that same input `repeats` times. Timings are reported raw.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rand::Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exactdet::DetError;
use crate::method::{MatrixKind, MethodRegistry};
use crate::rational::Rational;
use crate::sympoly::NodeSet;
use crate::verify::sampling::trial_rng;

pub const CSV_HEADER: &str = "method,n,entry_bits,repeat,wall_ns,result_hash";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("invalid benchmark settings: {0}")]
    InvalidConfig(String),
    #[error("unknown method {0:?}")]
    UnknownMethod(String),
    #[error("method {method}: {source}")]
    Guard {
        method: String,
        #[source]
        source: DetError,
    },
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub methods: Vec<String>,
    pub repeats: usize,
    /// Numerators and denominators are drawn from `[1, 2^entry_bits)`.
    pub entry_bits: u32,
    pub seed: u64,
    pub kind: MatrixKind,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![4, 8, 16],
            methods: vec!["closed".into(), "bareiss".into()],
            repeats: 1,
            entry_bits: 16,
            seed: 0,
            kind: MatrixKind::Vieta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub method: String,
    pub n: usize,
    /// Largest numerator/denominator bit length among the input nodes.
    pub entry_bits: u64,
    pub repeat: usize,
    pub wall_ns: u128,
    pub result_hash: String,
}

impl BenchRecord {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.method, self.n, self.entry_bits, self.repeat, self.wall_ns, self.result_hash
        )
    }
}

/// SHA-256 of the canonical text of `value`, hex encoded.
pub fn result_hash(value: &Rational) -> String {
    hex::encode(Sha256::digest(value.to_string().as_bytes()))
}

fn random_magnitude(rng: &mut impl Rng, bits: u32) -> BigInt {
    let words = bits.div_ceil(32) as usize;
    let mut digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
    let spare = words as u32 * 32 - bits;
    if let Some(top) = digits.last_mut() {
        *top >>= spare;
    }
    let value = BigInt::from(BigUint::new(digits));
    if value == BigInt::from(0) {
        BigInt::from(1)
    } else {
        value
    }
}

/// The benchmark input for size `n`; depends only on `(seed, n, bits)`.
pub fn bench_nodes(seed: u64, n: usize, bits: u32) -> NodeSet {
    let mut rng = trial_rng(seed, "bench", n as u64);
    let nodes = (0..n)
        .map(|_| {
            let mut num = random_magnitude(&mut rng, bits);
            if rng.gen::<bool>() {
                num = -num;
            }
            let den = random_magnitude(&mut rng, bits);
            Rational::new(num, den).expect("denominator >= 1")
        })
        .collect();
    NodeSet::new(nodes).expect("n >= 1")
}

impl BenchConfig {
    pub fn validate(&self, registry: &MethodRegistry) -> Result<(), BenchError> {
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(BenchError::InvalidConfig("sizes must be non-empty and at least 1".into()));
        }
        if self.repeats == 0 {
            return Err(BenchError::InvalidConfig("repeats must be at least 1".into()));
        }
        if self.entry_bits == 0 {
            return Err(BenchError::InvalidConfig("entry bits must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(BenchError::InvalidConfig("no methods requested".into()));
        }
        let largest = *self.sizes.iter().max().expect("non-empty");
        for name in &self.methods {
            let method = registry.get(name).ok_or_else(|| BenchError::UnknownMethod(name.clone()))?;
            if let Some(limit) = method.max_size() {
                if largest > limit {
                    return Err(BenchError::Guard {
                        method: name.clone(),
                        source: DetError::TooLarge { n: largest, limit },
                    });
                }
            }
        }
        Ok(())
    }
}

/// Runs the benchmark, handing each record to `sink` as soon as it exists.
pub fn run_bench_with(
    cfg: &BenchConfig,
    registry: &MethodRegistry,
    mut sink: impl FnMut(&BenchRecord),
) -> Result<(), BenchError> {
    cfg.validate(registry)?;
    for &n in &cfg.sizes {
        let ns = bench_nodes(cfg.seed, n, cfg.entry_bits);
        let entry_bits = ns.iter().map(Rational::bits).max().unwrap_or(0);
        for name in &cfg.methods {
            let method = registry.get(name).expect("validated");
            for repeat in 0..cfg.repeats {
                let started = Instant::now();
                let value = method
                    .determinant(&cfg.kind, &ns)
                    .map_err(|source| BenchError::Guard { method: name.clone(), source })?;
                let wall_ns = started.elapsed().as_nanos();
                sink(&BenchRecord {
                    method: name.clone(),
                    n,
                    entry_bits,
                    repeat,
                    wall_ns,
                    result_hash: result_hash(&value),
                });
            }
        }
    }
    Ok(())
}

pub fn run_bench(cfg: &BenchConfig, registry: &MethodRegistry) -> Result<Vec<BenchRecord>, BenchError> {
    let mut records = Vec::new();
    run_bench_with(cfg, registry, |r| records.push(r.clone()))?;
    Ok(records)
}
