//! Randomized search for Kurtz-condition SPS expressions of large degree.

use num_bigint::BigUint;
use rand::Rng;
use serde::Serialize;

use super::generate::{random_sps, trial_rng, ExperimentConfig, SpsMode};
use crate::error::Result;
use crate::exec::Exec;
use crate::polynomials::check_kurtz;
use crate::sps::{thm1_shape, to_sps_json, SpsExpression};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchRecord {
    pub index: usize,
    pub k: usize,
    pub m: usize,
    pub t: usize,
    pub d: usize,
    pub kurtz: bool,
    /// `k t^m`.
    pub trivial: String,
    pub kmt: usize,
    pub thm1_shape_approx: f64,
    pub instance: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub config: ExperimentConfig,
    pub records: Vec<SearchRecord>,
    /// Largest `d` among Kurtz instances, earliest index on ties.
    pub best: Option<SearchRecord>,
}

impl SearchReport {
    /// One JSON object per record.
    pub fn to_jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("serializable") + "\n")
            .collect()
    }
}

fn trial(cfg: &ExperimentConfig, index: usize) -> Result<SearchRecord> {
    let mut rng = trial_rng(cfg.seed, index as u64);
    let mode = if rng.random_bool(0.5) { SpsMode::Concave } else { SpsMode::Uniform };
    let e: SpsExpression = random_sps(&mut rng, cfg, mode);
    let a = e.expand()?;
    let (k, m, t, d) = (e.k(), e.m(), e.t(), a.degree());
    let kurtz = d >= 1 && check_kurtz(&a)?.holds;
    Ok(SearchRecord {
        index,
        k,
        m,
        t,
        d,
        kurtz,
        trivial: (BigUint::from(k) * num_traits::pow(BigUint::from(t), m)).to_string(),
        kmt: k * m * t,
        thm1_shape_approx: thm1_shape(k, m, t),
        instance: serde_json::from_str(&to_sps_json(&e, None)).expect("valid json"),
    })
}

pub fn search_extremal_kurtz(cfg: &ExperimentConfig, exec: Exec) -> Result<SearchReport> {
    let records = exec
        .map(cfg.instances, |i| trial(cfg, i))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let best = records
        .iter()
        .filter(|r| r.kurtz)
        .fold(None::<&SearchRecord>, |best, r| match best {
            Some(b) if b.d >= r.d => Some(b),
            _ => Some(r),
        })
        .cloned();
    Ok(SearchReport {
        config: cfg.clone(),
        records,
        best,
    })
}
