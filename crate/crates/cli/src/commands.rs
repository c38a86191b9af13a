use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context};
use relpsi::group_core::{format_cayley_table, from_cayley_table, parse_cayley_table, GroupSpec};
use relpsi::numtheory::psi_cyclic;
use relpsi::order_sums::{psi_by_divisor_orders, psi_relative, psi_report};
use relpsi::subgroup_lattice::{all_subgroups, generate, is_isolated, is_normal, DEFAULT_LATTICE_CAP};
use relpsi::verify::{
    bijection_exists, bound_checks, build_counterexample, default_catalog, f_ratio_series,
    monotonicity_report, scan_catalog, BijectionOutcome, CounterexampleSpec, ScanOptions,
};
use relpsi::{ExactRational, GroupRef, Subgroup};

use crate::cli::{Command, MAX_SCAN_ORDER};
use crate::report::{GroupError, ResultEntry};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_VIOLATION: u8 = 3;

/// Largest `n` for `psi-cyclic --brute-force`.
pub const PSI_CYCLIC_BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Largest group printed by `table`.
pub const TABLE_EXPORT_LIMIT: usize = 2048;

/// What a command produced: text for the terminal, entries for the JSON
/// report, and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub results: Vec<ResultEntry>,
    pub exit: u8,
}

/// Reads a Cayley-table file if `arg` names one, otherwise parses a
/// construction.
pub fn load_group(arg: &str, seed: u64) -> anyhow::Result<GroupRef> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let rows = parse_cayley_table(&text).with_context(|| arg.to_string())?;
        let label = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| arg.to_string());
        return from_cayley_table(rows, &label, seed).with_context(|| arg.to_string());
    }
    let spec: GroupSpec = arg
        .parse()
        .with_context(|| format!("{arg:?} is neither a readable file nor a group construction"))?;
    Ok(spec.build()?)
}

pub fn parse_generators(list: &str) -> anyhow::Result<Vec<usize>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().with_context(|| format!("bad generator {s:?}")))
        .collect()
}

pub fn run(command: &Command, seed: u64) -> anyhow::Result<Outcome> {
    match command {
        Command::PsiCyclic { n, brute_force } => run_psi_cyclic(*n, *brute_force),
        Command::Frobenius { r, q, brute_force } => run_frobenius(*r, *q, *brute_force),
        Command::Scan {
            max_order,
            include_frobenius,
            no_bijections,
        } => run_scan(*max_order, *include_frobenius, !no_bijections),
        Command::CheckBounds { group } => run_check_bounds(&load_group(group, seed)?),
        Command::Bijection { group, subgroup } => {
            let g = load_group(group, seed)?;
            let h = generate(g.as_ref(), &parse_generators(subgroup)?)?;
            run_bijection(&g, &h)
        }
        Command::Ratios { group } => run_ratios(&load_group(group, seed)?),
        Command::Monotonicity { r_max } => run_monotonicity(*r_max),
        Command::FRatio { a_max } => run_f_ratio(*a_max),
        Command::Table { group } => run_table(&load_group(group, seed)?),
    }
}

fn run_psi_cyclic(n: u64, brute_force: bool) -> anyhow::Result<Outcome> {
    let value = psi_cyclic(n)?;
    let mut text = format!("psi(C_{n}) = {value}\n");
    let (mut brute, mut agrees, mut exit) = (None, None, EXIT_OK);
    if brute_force {
        if n > PSI_CYCLIC_BRUTE_FORCE_LIMIT {
            bail!("--brute-force accepts n <= {PSI_CYCLIC_BRUTE_FORCE_LIMIT}, got {n}");
        }
        let g = relpsi::group_core::cyclic(n as usize)?;
        let sum = psi_by_divisor_orders(g.as_ref())?;
        let ok = sum == value;
        writeln!(text, "brute force = {sum}")?;
        text.push_str(if ok { "OK\n" } else { "MISMATCH\n" });
        if !ok {
            exit = EXIT_MISMATCH;
        }
        brute = Some(sum.to_string());
        agrees = Some(ok);
    }
    Ok(Outcome {
        text,
        results: vec![ResultEntry::PsiCyclic {
            n,
            psi_cyclic: value.to_string(),
            brute_force: brute,
            agrees,
        }],
        exit,
    })
}

fn run_frobenius(r: u32, q: Option<u64>, brute_force: bool) -> anyhow::Result<Outcome> {
    let spec = CounterexampleSpec::new(r, q)?;
    let psi_h = spec.closed_form_psi();
    let reference = spec.closed_form_reference();
    let ratio = spec.closed_form_ratio()?;
    let violates = ratio > ExactRational::one();
    let group = match q {
        Some(q) => format!("frobenius(2,{r}) x cyclic({q})"),
        None => format!("frobenius(2,{r})"),
    };
    let mut text = String::new();
    writeln!(text, "group: {group}")?;
    writeln!(text, "n = {}", spec.group_order())?;
    writeln!(text, "m = {}", spec.subgroup_order())?;
    writeln!(text, "psi_H = {psi_h} (closed form)")?;
    let mut exit = EXIT_OK;
    let mut brute = None;
    if brute_force {
        let ce = build_counterexample(&spec)?;
        let sum = psi_relative(ce.group.as_ref(), &ce.subgroup)?;
        writeln!(text, "psi_H = {sum} (brute force over {} elements)", ce.group.order())?;
        if sum != psi_h {
            text.push_str("MISMATCH\n");
            exit = EXIT_MISMATCH;
        }
        brute = Some(sum.to_string());
    }
    writeln!(text, "m * psi(C_(n/m)) = {reference}")?;
    writeln!(text, "psi' = {ratio} (~{})", ratio.display_approx())?;
    text.push_str(if violates { "VIOLATES (1)\n" } else { "satisfies (1)\n" });
    Ok(Outcome {
        text,
        results: vec![ResultEntry::Counterexample {
            r,
            q,
            group_order: spec.group_order().to_string(),
            subgroup_order: spec.subgroup_order().to_string(),
            psi_h_closed_form: psi_h.to_string(),
            psi_h_brute_force: brute,
            psi_cyclic_reference: reference.to_string(),
            ratio: (&ratio).into(),
            violates,
        }],
        exit,
    })
}

fn plural(k: usize, word: &str) -> String {
    if k == 1 {
        format!("{k} {word}")
    } else {
        format!("{k} {word}s")
    }
}

fn run_scan(max_order: usize, include_frobenius: bool, bijections: bool) -> anyhow::Result<Outcome> {
    if max_order == 0 || max_order > MAX_SCAN_ORDER {
        bail!("--max-order must lie in [1, {MAX_SCAN_ORDER}], got {max_order}");
    }
    let specs = default_catalog(max_order, include_frobenius);
    let options = ScanOptions {
        lattice_cap: DEFAULT_LATTICE_CAP,
        bijections,
    };
    let report = scan_catalog(&specs, &options);

    let mut text = String::new();
    writeln!(
        text,
        "scanned {} with {} (order <= {max_order})",
        plural(report.groups.len(), "group"),
        plural(report.pair_count(), "subgroup pair"),
    )?;
    let mut results = Vec::new();
    for scan in &report.groups {
        for (record, bijection) in scan.records.iter().zip(&scan.bijections) {
            if !record.is_violation() {
                continue;
            }
            let gens: Vec<String> = record.subgroup_generators.iter().map(|x| x.to_string()).collect();
            write!(
                text,
                "  {}  H = <{}> (order {})  psi_H = {}  reference = {}  ratio = {}",
                record.group,
                gens.join(","),
                record.subgroup_order,
                record.psi_h,
                record.reference,
                record.ratio,
            )?;
            match bijection {
                Some(true) => text.push_str("  bijection: yes\n"),
                Some(false) => text.push_str("  bijection: no\n"),
                None => text.push('\n'),
            }
            results.push(ResultEntry::violation(record, *bijection));
        }
    }
    let thm11: Vec<String> = report.theorem11_failures().iter().map(|g| g.group.clone()).collect();
    for (group, message) in &report.errors {
        writeln!(text, "error: {group}: {message}")?;
    }
    if thm11.is_empty() {
        text.push_str("psi(G) <= psi(C_n) with equality exactly for cyclic G: holds\n");
    } else {
        writeln!(text, "psi(G) <= psi(C_n) fails for: {}", thm11.join(", "))?;
    }
    let violating: Vec<String> = report.violating_groups().iter().map(|g| g.group.clone()).collect();
    let violations = report.violation_count();
    writeln!(text, "violations in nilpotent groups: {}", report.nilpotent_violations())?;
    writeln!(text, "{} in {}", plural(violations, "violation"), plural(violating.len(), "group"))?;

    let exit = if violations > 0 || !thm11.is_empty() {
        EXIT_VIOLATION
    } else if !report.errors.is_empty() {
        EXIT_INPUT
    } else {
        EXIT_OK
    };
    results.insert(
        0,
        ResultEntry::ScanSummary {
            max_order,
            include_frobenius,
            groups: report.groups.len(),
            pairs: report.pair_count(),
            violations,
            violating_groups: violating,
            nilpotent_violations: report.nilpotent_violations(),
            theorem11_failures: thm11,
            errors: report
                .errors
                .iter()
                .map(|(group, message)| GroupError {
                    group: group.clone(),
                    message: message.clone(),
                })
                .collect(),
        },
    );
    Ok(Outcome { text, results, exit })
}

fn run_check_bounds(g: &GroupRef) -> anyhow::Result<Outcome> {
    let checks = bound_checks(g.as_ref(), DEFAULT_LATTICE_CAP)?;
    let mut text = format!("group: {} (order {})\n", g.descriptor(), g.order());
    let mut exit = EXIT_OK;
    for c in &checks {
        let tag = match (c.asserted, c.passed()) {
            (true, true) => "PASS",
            (true, false) => {
                exit = EXIT_VIOLATION;
                "FAIL"
            }
            (false, _) => "INFO",
        };
        write!(text, "{tag} {}: {} checked, {} failed", c.name, c.checked, c.failures)?;
        if let Some(first) = &c.first_failure {
            write!(text, " (first: {first})")?;
        }
        text.push('\n');
    }
    Ok(Outcome {
        text,
        results: checks.iter().map(ResultEntry::bound_check).collect(),
        exit,
    })
}

fn format_counts(map: &std::collections::BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = map.iter().map(|(v, c)| format!("{v}:{c}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn run_bijection(g: &GroupRef, h: &Subgroup) -> anyhow::Result<Outcome> {
    let outcome = bijection_exists(g.as_ref(), h)?;
    let mut text = format!(
        "group: {} (order {}), subgroup: {}\n",
        g.descriptor(),
        g.order(),
        h.describe()
    );
    let (entry, exit) = match outcome {
        BijectionOutcome::Exists(witness) => {
            let images: Vec<String> = witness.iter().map(|y| y.to_string()).collect();
            writeln!(text, "BIJECTION EXISTS")?;
            writeln!(text, "f = [{}]", images.join(" "))?;
            let entry = ResultEntry::Bijection {
                group: g.descriptor(),
                subgroup: h.describe(),
                exists: true,
                witness: Some(witness),
                hall_left: None,
                hall_neighborhood: None,
            };
            (entry, EXIT_OK)
        }
        BijectionOutcome::NoBijection(hall) => {
            writeln!(text, "NO BIJECTION")?;
            writeln!(
                text,
                "relative orders in G (value:count) {} total {}",
                format_counts(&hall.left),
                hall.left_size()
            )?;
            writeln!(
                text,
                "compatible relative orders in C_n {} total {}",
                format_counts(&hall.neighborhood),
                hall.neighborhood_size()
            )?;
            (ResultEntry::hall(g.descriptor(), h.describe(), &hall), EXIT_VIOLATION)
        }
    };
    Ok(Outcome {
        text,
        results: vec![entry],
        exit,
    })
}

fn run_ratios(g: &GroupRef) -> anyhow::Result<Outcome> {
    let subs = all_subgroups(g.as_ref(), DEFAULT_LATTICE_CAP)?;
    let mut text = format!("group: {} (order {})\n", g.descriptor(), g.order());
    writeln!(text, "{:<28} {:>6} {:>6} {:>10} {:>10} {:>14}  flags", "subgroup", "order", "index", "psi_H", "reference", "ratio")?;
    let mut results = Vec::new();
    let mut exit = EXIT_OK;
    for h in &subs {
        let report = psi_report(g.as_ref(), h)?;
        let normal = is_normal(g.as_ref(), h);
        let isolated = is_isolated(g.as_ref(), h);
        let mut flags = Vec::new();
        if normal {
            flags.push("normal");
        }
        if isolated {
            flags.push("isolated");
        }
        if report.ratio > ExactRational::one() {
            flags.push("VIOLATES");
            exit = EXIT_VIOLATION;
        }
        let gens: Vec<String> = h.generators().iter().map(|x| x.to_string()).collect();
        writeln!(
            text,
            "{:<28} {:>6} {:>6} {:>10} {:>10} {:>14}  {}",
            format!("<{}>", gens.join(",")),
            report.subgroup_order,
            report.index(),
            report.psi_h,
            report.psi_cyclic_reference,
            report.ratio.to_string(),
            flags.join(" ")
        )?;
        results.push(ResultEntry::psi_report(&report, normal, isolated));
    }
    Ok(Outcome { text, results, exit })
}

fn run_monotonicity(r_max: u32) -> anyhow::Result<Outcome> {
    let rows = monotonicity_report(r_max)?;
    let mut text = String::new();
    writeln!(text, "{:>3}  {:>9}  {:>10}  {:>8}  ratio", "r", "mersenne", "increasing", "< 3/2")?;
    for row in &rows {
        writeln!(
            text,
            "{:>3}  {:>9}  {:>10}  {:>8}  {} (~{})",
            row.r,
            row.is_mersenne,
            row.increasing,
            row.below_three_halves,
            row.ratio,
            row.ratio.display_approx()
        )?;
    }
    let ok = rows.iter().all(|r| r.increasing && r.below_three_halves);
    Ok(Outcome {
        text,
        results: rows.iter().map(ResultEntry::monotonicity).collect(),
        exit: if ok { EXIT_OK } else { EXIT_VIOLATION },
    })
}

fn run_f_ratio(a_max: u32) -> anyhow::Result<Outcome> {
    let series = f_ratio_series(a_max)?;
    let three_halves = ExactRational::new(3, 2)?;
    let mut text = String::new();
    let mut results = Vec::new();
    for (a, f) in &series {
        let q = 3u64 << a;
        let above = *f > three_halves;
        writeln!(text, "a = {a:>2}  q = {q:>8}  f(q) = {f} (~{}){}", f.display_approx(), if above { "  > 3/2" } else { "" })?;
        results.push(ResultEntry::FRatio {
            a: *a,
            q,
            ratio: f.into(),
            above_three_halves: above,
        });
    }
    Ok(Outcome {
        text,
        results,
        exit: EXIT_OK,
    })
}

fn run_table(g: &GroupRef) -> anyhow::Result<Outcome> {
    if g.order() > TABLE_EXPORT_LIMIT {
        bail!("table export is limited to groups of order <= {TABLE_EXPORT_LIMIT}, got {}", g.order());
    }
    let rows = g
        .elements()
        .map(|a| g.elements().map(|b| g.multiply(a, b)).collect())
        .collect();
    Ok(Outcome {
        text: format_cayley_table(g.as_ref()),
        results: vec![ResultEntry::CayleyTable {
            group: g.descriptor(),
            order: g.order(),
            rows,
        }],
        exit: EXIT_OK,
    })
}
