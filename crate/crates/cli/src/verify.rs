//! The verification sweep: deterministic work-item generation, parallel
//! evaluation, in-order report emission.
//!
//! Work items are ordered by (theorem, modulus, character index, degree,
//! weight-triple position). Evaluation fans out across a rayon pool sized
//! by `--jobs`, and the records are collected back into item order before
//! anything is written, so the report stream does not depend on the worker
//! count. Weight triples that violate a theorem's parity requirement become
//! "skip" records rather than failures.

use std::sync::Arc;

use rayon::prelude::*;

use eulersym::dirichlet::{enumerate_characters, DirichletCharacter};
use eulersym::symmetry::{
    theorem_arity, theorem_expressions, theorem_requires_odd_weights, verify_theorem_faulted,
    FaultInjection,
};

use crate::output::{DiscrepancyRecord, Sink, VerifyRecord};

/// Which characters of each modulus take part in a sweep.
#[derive(Debug, Clone)]
pub enum CharFilter {
    All,
    PrimitiveOnly,
    Indices(Vec<usize>),
}

impl CharFilter {
    fn admits(&self, chi: &DirichletCharacter) -> bool {
        match self {
            CharFilter::All => true,
            CharFilter::PrimitiveOnly => chi.is_primitive(),
            CharFilter::Indices(indices) => indices.contains(&chi.index()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub theorems: Vec<u8>,
    pub moduli: Vec<u64>,
    pub max_n: usize,
    pub weights: Vec<[u64; 3]>,
    pub characters: CharFilter,
    pub jobs: Option<usize>,
    pub inject_fault: bool,
}

impl SweepConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn parse(
        theorems: &str,
        moduli: &str,
        max_n: usize,
        weights: &str,
        primitive_only: bool,
        char_indices: Option<&str>,
        jobs: Option<usize>,
        inject_fault: bool,
    ) -> Result<Self, String> {
        let theorems = parse_id_list(theorems)?;
        for &t in &theorems {
            theorem_expressions(t).map_err(|e| e.to_string())?;
        }
        let moduli: Vec<u64> = moduli
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("invalid modulus {part:?}"))
            })
            .collect::<Result<_, _>>()?;
        for &d in &moduli {
            if d == 0 || d % 2 == 0 {
                return Err(format!("modulus must be an odd positive integer, got {d}"));
            }
        }
        let weights = parse_weights(weights)?;
        let characters = match (primitive_only, char_indices) {
            (true, Some(_)) => {
                return Err("--primitive-only and --char-indices are mutually exclusive".into())
            }
            (true, None) => CharFilter::PrimitiveOnly,
            (false, Some(list)) => CharFilter::Indices(
                list.split(',')
                    .map(|part| {
                        part.trim()
                            .parse::<usize>()
                            .map_err(|_| format!("invalid character index {part:?}"))
                    })
                    .collect::<Result<_, _>>()?,
            ),
            (false, None) => CharFilter::All,
        };
        if theorems.is_empty() || moduli.is_empty() || weights.is_empty() {
            return Err("empty sweep".to_string());
        }
        Ok(SweepConfig {
            theorems,
            moduli,
            max_n,
            weights,
            characters,
            jobs,
            inject_fault,
        })
    }
}

/// "1,2,5" or "1-8" (ranges and singletons can mix).
fn parse_id_list(input: &str) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    for part in input.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once('-') {
            let lo: u8 = lo.trim().parse().map_err(|_| format!("invalid id {part:?}"))?;
            let hi: u8 = hi.trim().parse().map_err(|_| format!("invalid id {part:?}"))?;
            if lo > hi {
                return Err(format!("empty range {part:?}"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| format!("invalid id {part:?}"))?);
        }
    }
    Ok(out)
}

/// "w1,w2,w3;w1,w2,w3;..." with positive entries.
fn parse_weights(input: &str) -> Result<Vec<[u64; 3]>, String> {
    let mut out = Vec::new();
    for triple in input.split(';') {
        let parts: Vec<&str> = triple.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("weight triple {triple:?} must have three entries"));
        }
        let mut w = [0u64; 3];
        for (slot, part) in w.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| format!("invalid weight {part:?}"))?;
            if *slot == 0 {
                return Err("weights must be positive".to_string());
            }
        }
        out.push(w);
    }
    Ok(out)
}


struct WorkItem {
    theorem: u8,
    chi: Arc<DirichletCharacter>,
    n: usize,
    w: [u64; 3],
    skip_parity: bool,
    fault: Option<FaultInjection>,
}

/// Runs the sweep and emits one record per work item. Returns whether every
/// non-skipped record passed.
pub fn run(config: &SweepConfig, sink: &mut Sink) -> Result<bool, String> {
    let mut characters = Vec::new();
    for &d in &config.moduli {
        let chars: Vec<Arc<DirichletCharacter>> = enumerate_characters(d)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|chi| config.characters.admits(chi))
            .map(Arc::new)
            .collect();
        characters.push(chars);
    }

    let mut items = Vec::new();
    for &theorem in &config.theorems {
        let odd_only = theorem_requires_odd_weights(theorem).map_err(|e| e.to_string())?;
        for chars in &characters {
            for chi in chars {
                for n in 0..=config.max_n {
                    for &w in &config.weights {
                        let skip_parity = odd_only && w.iter().any(|&v| v % 2 == 0);
                        items.push(WorkItem {
                            theorem,
                            chi: Arc::clone(chi),
                            n,
                            w,
                            skip_parity,
                            fault: None,
                        });
                    }
                }
            }
        }
    }

    if config.inject_fault {
        if let Some(item) = items.iter_mut().find(|item| !item.skip_parity) {
            item.fault = Some(FaultInjection { expression: 1 });
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.unwrap_or(0))
        .build()
        .map_err(|e| e.to_string())?;
    let records: Result<Vec<VerifyRecord>, String> =
        pool.install(|| items.par_iter().map(evaluate).collect());
    let records = records?;

    sink.emit_verify(&records).map_err(|e| e.to_string())?;
    Ok(records.iter().all(|r| r.verdict != "fail"))
}

fn evaluate(item: &WorkItem) -> Result<VerifyRecord, String> {
    let chi = item.chi.as_ref();
    let arity = theorem_arity(item.theorem).map_err(|e| e.to_string())?;
    let grid_size = (item.n + 1).pow(arity as u32);
    if item.skip_parity {
        return Ok(VerifyRecord {
            theorem: item.theorem,
            d: chi.modulus(),
            char_index: chi.index(),
            char_order: chi.order(),
            conductor: chi.conductor(),
            primitive: chi.is_primitive(),
            n: item.n,
            w: item.w,
            grid_size,
            verdict: "skip".to_string(),
            skip_reason: Some("parity".to_string()),
            discrepancy: None,
        });
    }
    let report = verify_theorem_faulted(item.theorem, chi, item.n, item.w, item.fault)
        .map_err(|e| e.to_string())?;
    Ok(VerifyRecord {
        theorem: report.theorem,
        d: report.modulus,
        char_index: report.char_index,
        char_order: report.char_order,
        conductor: report.conductor,
        primitive: report.primitive,
        n: report.degree,
        w: report.weights,
        grid_size: report.grid_size(),
        verdict: if report.passed { "pass" } else { "fail" }.to_string(),
        skip_reason: None,
        discrepancy: report.first_discrepancy.map(|d| DiscrepancyRecord {
            expressions: [d.expressions.0, d.expressions.1],
            grid_point: d.grid_point.iter().map(|y| y.to_string()).collect(),
            left: d.left.to_string(),
            right: d.right.to_string(),
        }),
    })
}
