//! Parallel evaluation of statements over a catalog.

use std::path::PathBuf;
use std::time::Instant;

use fsq_core::lattice::cache;
use fsq_core::Lattice;
use rayon::prelude::*;

use crate::catalog::{Catalog, Entry};
use crate::report::{
    decide, Body, CaseReport, CaseTiming, CaseVerdict, CatalogInfo, GroupInfo, Report, Timing,
};
use crate::theorems::{self, Statement, Subject};

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub statements: Vec<Statement>,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(statements: Vec<Statement>) -> Self {
        RunConfig {
            statements,
            jobs: 0,
            cache_dir: None,
        }
    }
}

pub fn run(catalog: &Catalog, config: &RunConfig) -> Report {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .expect("thread pool");
    let per_group: Vec<(Vec<CaseReport>, (String, u128))> = pool.install(|| {
        catalog
            .entries
            .par_iter()
            .map(|e| {
                let t = Instant::now();
                let cases = run_group(e, config);
                (cases, (e.spec.name.clone(), t.elapsed().as_millis()))
            })
            .collect()
    });
    let mut cases = Vec::new();
    let mut groups_ms = Vec::new();
    for (c, t) in per_group {
        cases.extend(c);
        groups_ms.push(t);
    }
    groups_ms.sort();
    let mut groups: Vec<GroupInfo> = catalog
        .entries
        .iter()
        .map(|e| GroupInfo {
            name: e.spec.name.clone(),
            order: e.group.order(),
            degree: e.group.degree(),
        })
        .collect();
    groups.sort_by(|a, b| a.name.cmp(&b.name));
    let mut duplicates = catalog.duplicates.clone();
    duplicates.sort();
    let info = CatalogInfo {
        digest: catalog.digest(),
        groups,
        duplicates,
    };
    let body = Body::new(info, &config.statements, cases);
    let cases_us = body
        .cases
        .iter()
        .map(|c| CaseTiming {
            group: c.group.clone(),
            theorem: c.theorem,
            params: c.params.clone(),
            elapsed_us: c.elapsed_us,
        })
        .collect();
    Report {
        body,
        timing: Timing {
            jobs: config.jobs,
            total_ms: start.elapsed().as_millis(),
            groups_ms,
            cases_us,
        },
    }
}

fn build_lattice(entry: &Entry, config: &RunConfig) -> fsq_core::Result<Lattice> {
    match &config.cache_dir {
        Some(dir) => cache::load_or_build(&entry.group, dir),
        None => Lattice::from_group(&entry.group),
    }
}

/// Every case of one group. A lattice that cannot be built turns all cases
/// into skips (bound exceeded) or failures (anything else).
pub fn run_group(entry: &Entry, config: &RunConfig) -> Vec<CaseReport> {
    let n = entry.group.order() as usize;
    let jobs: Vec<(Statement, theorems::Params)> = config
        .statements
        .iter()
        .flat_map(|&s| theorems::instantiate(s, n).into_iter().map(move |p| (s, p)))
        .collect();
    let lat = match build_lattice(entry, config) {
        Ok(lat) => lat,
        Err(err) => {
            let verdict = if err.is_bound() {
                CaseVerdict::Skipped
            } else {
                CaseVerdict::Fail
            };
            return jobs
                .into_iter()
                .map(|(s, p)| blank_case(entry, s, p, verdict, err.to_string()))
                .collect();
        }
    };
    let subject = Subject::new(&lat);
    jobs.into_par_iter()
        .map(|(s, p)| evaluate_case(entry, &subject, s, p))
        .collect()
}

fn blank_case(
    entry: &Entry,
    s: Statement,
    p: theorems::Params,
    verdict: CaseVerdict,
    error: String,
) -> CaseReport {
    let info = theorems::info(s);
    CaseReport {
        group: entry.spec.name.clone(),
        theorem: info.id,
        statement: s,
        params_key: p,
        params: p.into(),
        direction: info.direction,
        hypothesis: false,
        conclusion: false,
        instances: 0,
        verdict,
        witnesses: Vec::new(),
        flags: Vec::new(),
        imported: info.imported,
        error: Some(error),
        elapsed_us: 0,
    }
}

pub fn evaluate_case(
    entry: &Entry,
    subject: &Subject<'_>,
    s: Statement,
    p: theorems::Params,
) -> CaseReport {
    let info = theorems::info(s);
    let start = Instant::now();
    let outcome = match theorems::evaluate(s, p, subject) {
        Ok(o) => o,
        Err(err) => {
            let verdict = if err.is_bound() {
                CaseVerdict::Skipped
            } else {
                CaseVerdict::Fail
            };
            return blank_case(entry, s, p, verdict, err.to_string());
        }
    };
    let witnesses: Vec<_> = outcome
        .witnesses
        .iter()
        .map(|w| w.record(subject.lat))
        .collect();
    let mut flags = outcome.flags;
    let mut verdict = decide(
        info.direction,
        outcome.instances,
        outcome.hypothesis,
        outcome.conclusion,
    );
    if witnesses.iter().any(|w| !w.rechecked) {
        flags.push("witness_recheck_failed".into());
        verdict = CaseVerdict::Fail;
    }
    CaseReport {
        group: entry.spec.name.clone(),
        theorem: info.id,
        statement: s,
        params_key: p,
        params: p.into(),
        direction: info.direction,
        hypothesis: outcome.hypothesis,
        conclusion: outcome.conclusion,
        instances: outcome.instances,
        verdict,
        witnesses,
        flags,
        imported: info.imported,
        error: None,
        elapsed_us: start.elapsed().as_micros(),
    }
}
