//! JSON run reports.
//!
//! The body of a report is a pure function of the catalog and the selected
//! statements; wall-clock data lives in a separate `timing` section so that
//! two runs can be compared byte for byte with [`Report::body_json`].

use serde::Serialize;

use crate::theorems::{self, Direction, Statement};
use crate::witness::WitnessRecord;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseVerdict {
    Pass,
    Fail,
    Vacuous,
    Skipped,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParamsReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

impl From<theorems::Params> for ParamsReport {
    fn from(p: theorems::Params) -> Self {
        ParamsReport {
            formation: p.formation.map(|f| f.to_string()),
            prime: p.prime,
            depth: p.depth,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub group: String,
    pub theorem: &'static str,
    #[serde(skip)]
    pub statement: Statement,
    #[serde(skip)]
    pub params_key: theorems::Params,
    pub params: ParamsReport,
    pub direction: Direction,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub instances: usize,
    pub verdict: CaseVerdict,
    pub witnesses: Vec<WitnessRecord>,
    pub flags: Vec<String>,
    pub imported: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall-clock evaluation time; reported under `timing` only.
    #[serde(skip)]
    pub elapsed_us: u128,
}

impl CaseReport {
    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }
}

/// Verdict of an evaluated case; witness re-check failures are decided by
/// the caller.
pub fn decide(
    direction: Direction,
    instances: usize,
    hypothesis: bool,
    conclusion: bool,
) -> CaseVerdict {
    let failed = match direction {
        Direction::Implies => hypothesis && !conclusion,
        Direction::Iff => hypothesis != conclusion,
    };
    if failed {
        CaseVerdict::Fail
    } else if instances == 0 {
        CaseVerdict::Vacuous
    } else {
        CaseVerdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInfo {
    pub name: String,
    pub order: u64,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogInfo {
    pub digest: String,
    pub groups: Vec<GroupInfo>,
    pub duplicates: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremInfo {
    pub id: &'static str,
    pub direction: Direction,
    pub imported: bool,
    pub summary: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub theorem: &'static str,
    pub cases: usize,
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub skipped: usize,
    pub hypothesis_true: usize,
    /// Fraction of evaluated cases whose hypothesis held.
    pub non_vacuity: f64,
    pub direction: Direction,
    pub imported: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRef {
    pub group: String,
    pub theorem: &'static str,
    pub params: ParamsReport,
    pub witnesses: Vec<WitnessRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Body {
    pub schema_version: u32,
    pub catalog: CatalogInfo,
    pub theorems: Vec<TheoremInfo>,
    pub aggregates: Vec<Aggregate>,
    pub failures: Vec<FailureRef>,
    pub cases: Vec<CaseReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timing {
    pub jobs: usize,
    pub total_ms: u128,
    /// Per group, in catalog name order.
    pub groups_ms: Vec<(String, u128)>,
    /// Per case, in body case order.
    pub cases_us: Vec<CaseTiming>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTiming {
    pub group: String,
    pub theorem: &'static str,
    pub params: ParamsReport,
    pub elapsed_us: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    #[serde(flatten)]
    pub body: Body,
    pub timing: Timing,
}

impl Body {
    /// Sorts cases and fills in aggregates and the failure list.
    pub fn new(catalog: CatalogInfo, statements: &[Statement], mut cases: Vec<CaseReport>) -> Body {
        cases.sort_by(|a, b| {
            (&a.group, a.statement, a.params_key).cmp(&(&b.group, b.statement, b.params_key))
        });
        let aggregates = statements
            .iter()
            .map(|&s| {
                let info = theorems::info(s);
                let mine: Vec<&CaseReport> = cases.iter().filter(|c| c.statement == s).collect();
                let count = |v: CaseVerdict| mine.iter().filter(|c| c.verdict == v).count();
                let evaluated = mine.len() - count(CaseVerdict::Skipped);
                let hypothesis_true = mine.iter().filter(|c| c.hypothesis).count();
                Aggregate {
                    theorem: info.id,
                    cases: mine.len(),
                    pass: count(CaseVerdict::Pass),
                    fail: count(CaseVerdict::Fail),
                    vacuous: count(CaseVerdict::Vacuous),
                    skipped: count(CaseVerdict::Skipped),
                    hypothesis_true,
                    non_vacuity: if evaluated == 0 {
                        0.0
                    } else {
                        hypothesis_true as f64 / evaluated as f64
                    },
                    direction: info.direction,
                    imported: info.imported,
                }
            })
            .collect();
        let failures = cases
            .iter()
            .filter(|c| c.verdict == CaseVerdict::Fail)
            .map(|c| FailureRef {
                group: c.group.clone(),
                theorem: c.theorem,
                params: c.params.clone(),
                witnesses: c.witnesses.clone(),
            })
            .collect();
        Body {
            schema_version: SCHEMA_VERSION,
            catalog,
            theorems: statements
                .iter()
                .map(|&s| {
                    let i = theorems::info(s);
                    TheoremInfo {
                        id: i.id,
                        direction: i.direction,
                        imported: i.imported,
                        summary: i.summary,
                    }
                })
                .collect(),
            aggregates,
            failures,
            cases,
        }
    }

    pub fn count(&self, v: CaseVerdict) -> usize {
        self.cases.iter().filter(|c| c.verdict == v).count()
    }
}

impl Report {
    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Process exit status: 0 all passed, 1 any failure, 3 skipped cases.
    pub fn exit_code(&self) -> i32 {
        if self.body.count(CaseVerdict::Fail) > 0 {
            1
        } else if self.body.count(CaseVerdict::Skipped) > 0 {
            3
        } else {
            0
        }
    }
}
