//! The JSON report document.
//!
//! Every integer that can exceed 64 bits is a decimal string and every
//! rational is `{"num": .., "den": ..}`, so documents never contain floats.
//! Keys are sorted, so documents re-serialize byte for byte.

use std::collections::BTreeMap;

use relpsi::order_sums::PsiReport;
use relpsi::verify::{BoundCheck, HallViolation, MonotonicityRow, ViolationRecord};
use relpsi::ExactRational;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: String,
    pub den: String,
}

impl From<&ExactRational> for Rational {
    fn from(r: &ExactRational) -> Self {
        Rational {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: Vec<String>,
    pub results: Vec<ResultEntry>,
    pub timing_ms: u64,
}

impl ReportDocument {
    pub fn new(command: Vec<String>, results: Vec<ResultEntry>, timing_ms: u64) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command,
            results,
            timing_ms,
        }
    }

    /// Pretty-printed with keys sorted at every level, newline-terminated.
    pub fn to_json(&self) -> String {
        // Going through `Value` sorts object keys, so any parse and
        // re-serialize cycle reproduces the document exactly.
        let value = serde_json::to_value(self).expect("report documents always serialize");
        let mut out = serde_json::to_string_pretty(&value).expect("values always serialize");
        out.push('\n');
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueCount {
    pub value: usize,
    pub count: usize,
}

fn value_counts(map: &BTreeMap<usize, usize>) -> Vec<ValueCount> {
    map.iter()
        .map(|(&value, &count)| ValueCount { value, count })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupError {
    pub group: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultEntry {
    PsiCyclic {
        n: u64,
        psi_cyclic: String,
        brute_force: Option<String>,
        agrees: Option<bool>,
    },
    Counterexample {
        r: u32,
        q: Option<u64>,
        group_order: String,
        subgroup_order: String,
        psi_h_closed_form: String,
        psi_h_brute_force: Option<String>,
        psi_cyclic_reference: String,
        ratio: Rational,
        violates: bool,
    },
    PsiReport {
        group: String,
        subgroup: String,
        group_order: usize,
        subgroup_order: usize,
        psi_h: String,
        psi_cyclic_reference: String,
        ratio: Rational,
        bound_vi: String,
        normal: bool,
        isolated: bool,
    },
    Violation {
        group: String,
        group_order: usize,
        subgroup_generators: Vec<usize>,
        subgroup_order: usize,
        psi_h: String,
        psi_cyclic_reference: String,
        ratio: Rational,
        nilpotent: bool,
        solvable: bool,
        bijection: Option<bool>,
    },
    ScanSummary {
        max_order: usize,
        include_frobenius: bool,
        groups: usize,
        pairs: usize,
        violations: usize,
        violating_groups: Vec<String>,
        nilpotent_violations: usize,
        theorem11_failures: Vec<String>,
        errors: Vec<GroupError>,
    },
    BoundCheck {
        name: String,
        asserted: bool,
        checked: usize,
        failures: usize,
        first_failure: Option<String>,
    },
    Bijection {
        group: String,
        subgroup: String,
        exists: bool,
        witness: Option<Vec<usize>>,
        hall_left: Option<Vec<ValueCount>>,
        hall_neighborhood: Option<Vec<ValueCount>>,
    },
    Monotonicity {
        r: u32,
        ratio: Rational,
        is_mersenne: bool,
        below_three_halves: bool,
        increasing: bool,
    },
    FRatio {
        a: u32,
        q: u64,
        ratio: Rational,
        above_three_halves: bool,
    },
    CayleyTable {
        group: String,
        order: usize,
        rows: Vec<Vec<usize>>,
    },
}

impl ResultEntry {
    pub fn psi_report(report: &PsiReport, normal: bool, isolated: bool) -> Self {
        ResultEntry::PsiReport {
            group: report.group.clone(),
            subgroup: report.subgroup.clone(),
            group_order: report.group_order,
            subgroup_order: report.subgroup_order,
            psi_h: report.psi_h.to_string(),
            psi_cyclic_reference: report.psi_cyclic_reference.to_string(),
            ratio: (&report.ratio).into(),
            bound_vi: report.bound_vi.to_string(),
            normal,
            isolated,
        }
    }

    pub fn violation(record: &ViolationRecord, bijection: Option<bool>) -> Self {
        ResultEntry::Violation {
            group: record.group.clone(),
            group_order: record.group_order,
            subgroup_generators: record.subgroup_generators.clone(),
            subgroup_order: record.subgroup_order,
            psi_h: record.psi_h.to_string(),
            psi_cyclic_reference: record.reference.to_string(),
            ratio: (&record.ratio).into(),
            nilpotent: record.nilpotent,
            solvable: record.solvable,
            bijection,
        }
    }

    pub fn bound_check(check: &BoundCheck) -> Self {
        ResultEntry::BoundCheck {
            name: check.name.to_string(),
            asserted: check.asserted,
            checked: check.checked,
            failures: check.failures,
            first_failure: check.first_failure.clone(),
        }
    }

    pub fn hall(group: String, subgroup: String, hall: &HallViolation) -> Self {
        ResultEntry::Bijection {
            group,
            subgroup,
            exists: false,
            witness: None,
            hall_left: Some(value_counts(&hall.left)),
            hall_neighborhood: Some(value_counts(&hall.neighborhood)),
        }
    }

    pub fn monotonicity(row: &MonotonicityRow) -> Self {
        ResultEntry::Monotonicity {
            r: row.r,
            ratio: (&row.ratio).into(),
            is_mersenne: row.is_mersenne,
            below_three_halves: row.below_three_halves,
            increasing: row.increasing,
        }
    }
}
