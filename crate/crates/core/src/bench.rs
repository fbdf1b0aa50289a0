//! Benchmark harness comparing socGS and the stable baseline against the
//! exact optimum on random instances.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exact::{exact_max_socially_stable, DEFAULT_AGENT_LIMIT};
use crate::generators::{gen_random, GenConfig};
use crate::socgs::{socgs, stable_baseline};

pub const P_ACCEPT_GRID: [f64; 3] = [0.3, 0.7, 1.0];
pub const P_SOCIAL_GRID: [f64; 4] = [0.0, 0.3, 0.7, 1.0];

pub const CSV_HEADER: &str =
    "instance_id,n_men,n_women,p_accept,p_social,seed,size_socgs,size_baseline,size_exact,ratio_socgs,da_runs";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance_id: usize,
    pub n_men: usize,
    pub n_women: usize,
    pub p_accept: f64,
    pub p_social: f64,
    pub seed: u64,
    pub size_socgs: usize,
    pub size_baseline: usize,
    pub size_exact: Option<usize>,
    pub da_runs: usize,
}

impl BenchRow {
    /// `size_socgs / size_exact`; 1 when both are zero, absent without an
    /// exact size.
    pub fn ratio_socgs(&self) -> Option<f64> {
        self.size_exact.map(|exact| {
            if exact == 0 {
                1.0
            } else {
                self.size_socgs as f64 / exact as f64
            }
        })
    }

    /// `3 * socgs >= 2 * exact` in integers; vacuous without an exact size.
    pub fn meets_bound(&self) -> bool {
        self.size_exact.is_none_or(|exact| 3 * self.size_socgs >= 2 * exact)
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{:?},{:?},{},{},{},{},{},{}",
            self.instance_id,
            self.n_men,
            self.n_women,
            self.p_accept,
            self.p_social,
            self.seed,
            self.size_socgs,
            self.size_baseline,
            self.size_exact.map(|s| s.to_string()).unwrap_or_default(),
            self.ratio_socgs().map(|r| format!("{r:.6}")).unwrap_or_default(),
            self.da_runs,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub count: usize,
    /// Upper bound on `n_men + n_women`; each side gets `1..=max_agents / 2`.
    pub max_agents: usize,
    pub seed: u64,
}

/// Draws the per-instance generator configs. Deterministic in `config.seed`.
pub fn bench_configs(config: &BenchConfig) -> Vec<GenConfig> {
    let half = (config.max_agents / 2).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.count)
        .map(|_| {
            let n_men = rng.random_range(1..=half);
            let n_women = rng.random_range(1..=half);
            let p_accept = P_ACCEPT_GRID[rng.random_range(0..P_ACCEPT_GRID.len())];
            let p_social = P_SOCIAL_GRID[rng.random_range(0..P_SOCIAL_GRID.len())];
            GenConfig::new(n_men, n_women, p_accept, p_social, rng.random())
        })
        .collect()
}

pub fn run_one(instance_id: usize, gen: &GenConfig) -> BenchRow {
    let instance = gen_random(gen);
    let result = socgs(&instance);
    let size_exact = exact_max_socially_stable(&instance, DEFAULT_AGENT_LIMIT)
        .ok()
        .map(|m| m.cardinality());
    BenchRow {
        instance_id,
        n_men: gen.n_men,
        n_women: gen.n_women,
        p_accept: gen.p_accept,
        p_social: gen.p_social,
        seed: gen.seed,
        size_socgs: result.matching.cardinality(),
        size_baseline: stable_baseline(&instance).cardinality(),
        size_exact,
        da_runs: result.da_run_count,
    }
}

/// Evaluates instances in parallel; rows come back in instance-id order.
pub fn run_bench(config: &BenchConfig) -> Vec<BenchRow> {
    bench_configs(config)
        .par_iter()
        .enumerate()
        .map(|(id, gen)| run_one(id, gen))
        .collect()
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    let _ = writeln!(out, "{CSV_HEADER}");
    for row in rows {
        let _ = writeln!(out, "{}", row.to_csv());
    }
    out
}
