//! Library side of the `tau` command: cache handling, reports, and the
//! commands and verification suites behind each subcommand.

pub mod cache;
pub mod commands;
pub mod report;
pub mod suites;

use std::path::PathBuf;

use ramanujan_tau::arith::{Budget, Factorization};
use ramanujan_tau::tau::TauTable;
use ramanujan_tau::Parallelism;

pub use report::{Case, Report, Status, Summary};

pub const DEFAULT_SEED: u64 = 0x7a75_2024;
pub const DEFAULT_TABLE_N: usize = 100_000;

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Context {
    pub cache_dir: PathBuf,
    pub budget: Budget,
    pub mode: Parallelism,
    pub seed: u64,
}

impl Default for Context {
    fn default() -> Self {
        Context {
            cache_dir: cache::cache_dir(),
            budget: Budget::DEFAULT,
            mode: Parallelism::Sequential,
            seed: DEFAULT_SEED,
        }
    }
}

impl Context {
    pub fn table(&self, n: usize) -> anyhow::Result<TauTable> {
        Ok(cache::ensure_table(&self.cache_dir, n.max(1), self.mode)?.table)
    }
}

/// `-2^3 · 3 · [c]` style rendering; `[c]` is an unfactored cofactor.
pub fn format_factorization(f: &Factorization) -> String {
    let mut parts: Vec<String> = f
        .factors
        .iter()
        .map(|(p, e)| {
            if *e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect();
    if !f.complete {
        parts.push(format!("[{}]", f.cofactor));
    }
    if parts.is_empty() {
        parts.push(if f.sign == 0 { "0" } else { "1" }.into());
    }
    let body = parts.join(" · ");
    if f.sign < 0 {
        format!("-{body}")
    } else {
        body
    }
}
