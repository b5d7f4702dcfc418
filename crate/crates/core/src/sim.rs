//! Monte-Carlo estimation of the decoding radius of random twisted RS codes.
//!
//! For each `(k, ell)` the sweep samples random codes, and for each `zeta` and each error
//! weight `tau` in the range it runs independent trials: random message, random error of
//! weight exactly `tau`, decode, and count a failure unless the transmitted codeword comes
//! back. `tau_max` is the largest `tau` whose estimated failure rate is below the
//! threshold. Every trial seed is derived from the master seed and the trial's
//! coordinates, so results do not depend on scheduling.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{sample_random_code, CodeParams, TwistedCode};
use crate::decoding::{half_distance, tau_lb, DecodeOutcome, Decoder, Engine, KeyEquationDecoder};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldConfig};

pub const DEFAULT_TRIALS: usize = 200;
pub const PAPER_SCALE_TRIALS: usize = 1000;
pub const DEFAULT_CODES: usize = 10;
pub const DEFAULT_THRESHOLD: f64 = 0.2;

fn default_trials() -> usize {
    DEFAULT_TRIALS
}
fn default_codes() -> usize {
    DEFAULT_CODES
}
fn default_threshold() -> f64 {
    DEFAULT_THRESHOLD
}
fn default_extra() -> usize {
    1
}
fn default_engine() -> Engine {
    Engine::Popov
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub field: FieldConfig,
    pub n: usize,
    pub ks: Vec<usize>,
    pub ells: Vec<usize>,
    pub zetas: Vec<usize>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_codes")]
    pub codes: usize,
    /// Weights above `(n - k) / 2` that are swept as well, so that the failure rate just
    /// past the radius is measured.
    #[serde(default = "default_extra")]
    pub tau_extra: usize,
    #[serde(default)]
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    #[serde(default = "default_engine")]
    pub engine: Engine,
}

impl SimConfig {
    pub fn new(field: FieldConfig, n: usize, ks: Vec<usize>, ells: Vec<usize>, zetas: Vec<usize>) -> SimConfig {
        SimConfig {
            field,
            n,
            ks,
            ells,
            zetas,
            trials: DEFAULT_TRIALS,
            codes: DEFAULT_CODES,
            tau_extra: 1,
            seed: 0,
            threads: None,
            threshold: DEFAULT_THRESHOLD,
            engine: Engine::Popov,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(m.to_string()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.codes == 0 {
            return bad("codes must be at least 1");
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return bad("threshold must lie in (0, 1)");
        }
        if self.ks.iter().any(|&k| k == 0 || k >= self.n) {
            return bad("every k must satisfy 0 < k < n");
        }
        if self.threads == Some(0) {
            return bad("threads must be positive");
        }
        Ok(())
    }

    /// The swept weights: `max(0, tau_LB - 2) ..= (n - k) / 2 + tau_extra`.
    pub fn tau_range(&self, k: usize, ell: usize, zeta: usize) -> std::ops::RangeInclusive<usize> {
        let lo = (tau_lb(self.n, k, ell, zeta) - 2).max(0) as usize;
        let hi = ((self.n - k) / 2 + self.tau_extra).min(self.n);
        lo.min(hi)..=hi
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialOutcome {
    Success,
    Failure,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub code_id: usize,
    pub k: usize,
    pub ell: usize,
    pub seed: u64,
    pub params: CodeParams,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub code_id: usize,
    pub zeta: usize,
    pub tau: usize,
    pub trials: usize,
    pub failures: usize,
    pub failure_rate: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauMax {
    pub code_id: usize,
    pub zeta: usize,
    /// `-1` when no swept weight meets the threshold.
    pub tau_max: i64,
}

/// One table row: statistics over the codes of a `(k, ell)` tuple for one `zeta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowStats {
    pub k: usize,
    pub ell: usize,
    pub zeta: usize,
    pub tau_lb: i64,
    /// Number of codes with `tau_max = tau` for `tau = 0..=(n - k) / 2`.
    pub histogram: Vec<usize>,
    /// Codes whose `tau_max` is `-1` or above `(n - k) / 2`.
    pub unresolved: usize,
    pub p_max_below: Option<f64>,
    pub p_max_at: Option<f64>,
    pub p_min_above: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub config: SimConfig,
    pub codes: Vec<CodeRecord>,
    pub cells: Vec<Cell>,
    pub tau_max: Vec<TauMax>,
    pub rows: Vec<RowStats>,
}

impl SimReport {
    pub fn cell(&self, code_id: usize, zeta: usize, tau: usize) -> Option<&Cell> {
        self.cells.iter().find(|c| c.code_id == code_id && c.zeta == zeta && c.tau == tau)
    }

    pub fn row(&self, k: usize, ell: usize, zeta: usize) -> Option<&RowStats> {
        self.rows.iter().find(|r| r.k == k && r.ell == ell && r.zeta == zeta)
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Folds the coordinates into one seed.
pub fn derive_seed(parts: &[u64]) -> u64 {
    parts.iter().fold(0x5eed_u64, |acc, &p| splitmix(acc ^ splitmix(p)))
}

fn code_seed(master: u64, code_id: usize) -> u64 {
    derive_seed(&[master, 0xc0de, code_id as u64])
}

pub fn trial_seed(master: u64, code_id: usize, zeta: usize, tau: usize, trial: usize) -> u64 {
    derive_seed(&[master, code_id as u64, zeta as u64, tau as u64, trial as u64])
}

/// One transmission over a weight-`tau` channel.
pub fn run_trial<D: Decoder + ?Sized>(code: &TwistedCode, decoder: &D, tau: usize, seed: u64) -> TrialOutcome {
    let f = code.field();
    let n = code.n();
    assert!(tau <= n, "error weight {tau} exceeds length {n}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = f.q() as u64;
    let msg: Vec<Elem> = (0..code.k()).map(|_| f.elem(rng.gen_range(0..q)).unwrap()).collect();
    let cw = code.encode(&msg).expect("message has length k");
    let mut recv = cw.clone();
    for i in sample(&mut rng, n, tau) {
        recv[i] = f.add(recv[i], f.elem(rng.gen_range(1..q)).unwrap());
    }
    match decoder.decode(code, &recv) {
        DecodeOutcome::Success { codeword, .. } => {
            let dist = codeword.iter().zip(&recv).filter(|(a, b)| a != b).count();
            assert!(dist <= half_distance(code), "decoder returned a word at distance {dist}");
            if codeword == cw {
                TrialOutcome::Success
            } else {
                TrialOutcome::Failure
            }
        }
        DecodeOutcome::Failure { .. } => TrialOutcome::Failure,
    }
}

/// The largest `tau` with rate below `threshold`, or `-1`.
pub fn threshold_rule(rates: &[(usize, f64)], threshold: f64) -> i64 {
    rates.iter().filter(|(_, p)| *p < threshold).map(|&(t, _)| t as i64).max().unwrap_or(-1)
}

fn count_failures<D: Decoder + ?Sized>(code: &TwistedCode, decoder: &D, cfg: &SimConfig, code_id: usize, zeta: usize, tau: usize) -> usize {
    (0..cfg.trials)
        .into_par_iter()
        .filter(|&i| run_trial(code, decoder, tau, trial_seed(cfg.seed, code_id, zeta, tau, i)) == TrialOutcome::Failure)
        .count()
}

/// Sweeps the weight range for one code and applies the threshold rule.
pub fn estimate_tau_max<D: Decoder + ?Sized>(
    code: &TwistedCode,
    decoder: &D,
    zeta: usize,
    cfg: &SimConfig,
    code_id: usize,
) -> (i64, Vec<Cell>) {
    let cells: Vec<Cell> = cfg
        .tau_range(code.k(), code.ell(), zeta)
        .map(|tau| {
            let failures = count_failures(code, decoder, cfg, code_id, zeta, tau);
            Cell { code_id, zeta, tau, trials: cfg.trials, failures, failure_rate: failures as f64 / cfg.trials as f64 }
        })
        .collect();
    let rates: Vec<(usize, f64)> = cells.iter().map(|c| (c.tau, c.failure_rate)).collect();
    (threshold_rule(&rates, cfg.threshold), cells)
}

/// The sweep with the key-equation decoder of the configured engine.
pub fn run_sweep(cfg: &SimConfig) -> Result<SimReport> {
    let engine = cfg.engine;
    run_sweep_with(cfg, |zeta| KeyEquationDecoder { zeta, engine })
}

/// The sweep with a decoder built per `zeta`.
pub fn run_sweep_with<D, F>(cfg: &SimConfig, make: F) -> Result<SimReport>
where
    D: Decoder,
    F: Fn(usize) -> D + Sync,
{
    cfg.validate()?;
    match cfg.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Precondition(e.to_string()))?;
            pool.install(|| sweep(cfg, &make))
        }
        None => sweep(cfg, &make),
    }
}

fn sweep<D: Decoder, F: Fn(usize) -> D + Sync>(cfg: &SimConfig, make: &F) -> Result<SimReport> {
    let field = cfg.field.build()?;
    let mut codes = Vec::new();
    let mut built = Vec::new();
    for &k in &cfg.ks {
        for &ell in &cfg.ells {
            for _ in 0..cfg.codes {
                let code_id = codes.len();
                let seed = code_seed(cfg.seed, code_id);
                let code = sample_random_code(&field, cfg.n, k, ell, seed)?;
                codes.push(CodeRecord { code_id, k, ell, seed, params: code.params() });
                built.push(code);
            }
        }
    }
    let jobs: Vec<(usize, usize)> = (0..built.len()).flat_map(|c| cfg.zetas.iter().map(move |&z| (c, z))).collect();
    let results: Vec<(i64, Vec<Cell>)> = jobs
        .par_iter()
        .map(|&(c, zeta)| estimate_tau_max(&built[c], &make(zeta), zeta, cfg, c))
        .collect();

    let mut cells = Vec::new();
    let mut tau_max = Vec::new();
    for (&(code_id, zeta), (tm, cs)) in jobs.iter().zip(results) {
        tau_max.push(TauMax { code_id, zeta, tau_max: tm });
        cells.extend(cs);
    }
    let mut rows = Vec::new();
    for &k in &cfg.ks {
        for &ell in &cfg.ells {
            for &zeta in &cfg.zetas {
                rows.push(row_stats(cfg, &codes, &cells, &tau_max, k, ell, zeta));
            }
        }
    }
    Ok(SimReport { config: cfg.clone(), codes, cells, tau_max, rows })
}

fn row_stats(cfg: &SimConfig, codes: &[CodeRecord], cells: &[Cell], tau_max: &[TauMax], k: usize, ell: usize, zeta: usize) -> RowStats {
    let half = (cfg.n - k) / 2;
    let mut histogram = vec![0; half + 1];
    let mut unresolved = 0;
    let (mut below, mut at, mut above): (Option<f64>, Option<f64>, Option<f64>) = (None, None, None);
    let rate = |id: usize, tau: i64| {
        (tau >= 0)
            .then(|| cells.iter().find(|c| c.code_id == id && c.zeta == zeta && c.tau as i64 == tau))
            .flatten()
            .map(|c| c.failure_rate)
    };
    for rec in codes.iter().filter(|r| r.k == k && r.ell == ell) {
        let tm = tau_max.iter().find(|t| t.code_id == rec.code_id && t.zeta == zeta).map_or(-1, |t| t.tau_max);
        if tm >= 0 && tm as usize <= half {
            histogram[tm as usize] += 1;
        } else {
            unresolved += 1;
        }
        if tm < 0 {
            continue;
        }
        if let Some(p) = rate(rec.code_id, tm - 1) {
            below = Some(below.map_or(p, |b| b.max(p)));
        }
        if let Some(p) = rate(rec.code_id, tm) {
            at = Some(at.map_or(p, |b| b.max(p)));
        }
        if let Some(p) = rate(rec.code_id, tm + 1) {
            above = Some(above.map_or(p, |b| b.min(p)));
        }
    }
    RowStats {
        k,
        ell,
        zeta,
        tau_lb: tau_lb(cfg.n, k, ell, zeta),
        histogram,
        unresolved,
        p_max_below: below,
        p_max_at: at,
        p_min_above: above,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Tsv,
    Json,
}

/// Renders the report. TSV has one row per `(k, ell, zeta)`: the `tau_max` histogram
/// over `tau = 0..=(n - k_min) / 2`, the unresolved count and the three rate columns.
pub fn emit_table(report: &SimReport, format: TableFormat) -> String {
    match format {
        TableFormat::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        TableFormat::Tsv => {
            let n = report.config.n;
            let width = report.rows.iter().map(|r| r.histogram.len()).chain(report.config.ks.iter().map(|&k| (n - k.min(n)) / 2 + 1)).max().unwrap_or(0);
            let mut out = String::from("k\tell\tzeta\ttau_lb");
            for t in 0..width {
                write!(out, "\ttau={t}").unwrap();
            }
            out.push_str("\tunresolved\tP_max(tau_max-1)\tP_max(tau_max)\tP_min(tau_max+1)\n");
            let fmt = |p: Option<f64>| p.map_or("-".to_string(), |p| format!("{p:.3}"));
            for r in &report.rows {
                write!(out, "{}\t{}\t{}\t{}", r.k, r.ell, r.zeta, r.tau_lb).unwrap();
                for t in 0..width {
                    match r.histogram.get(t) {
                        Some(c) => write!(out, "\t{c}").unwrap(),
                        None => out.push_str("\t-"),
                    }
                }
                writeln!(out, "\t{}\t{}\t{}\t{}", r.unresolved, fmt(r.p_max_below), fmt(r.p_max_at), fmt(r.p_min_above)).unwrap();
            }
            out
        }
    }
}
