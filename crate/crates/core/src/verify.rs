//! Theorem-level checks: subgroup scans against the cyclic reference, the
//! Frobenius counterexample family, the order-divisibility bijection
//! question, and catalog-wide sweeps.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;

use crate::classify::{is_nilpotent, is_solvable};
use crate::error::{Error, Result, SpecError};
use crate::group_core::{
    cyclic, direct_product, frobenius_field, is_cyclic, Element, FiniteGroup, GroupRef, GroupSpec,
};
use crate::numtheory::{
    f_ratio, frobenius_ratio_closed_form, is_mersenne_exponent, is_prime, psi_cyclic,
};
use crate::order_sums::{
    cyclic_reference, prop23_bounds_for_index, psi, psi_relative,
    psi_upper_bound_vi, relative_order, BRUTE_FORCE_LIMIT,
};
use crate::rational::ExactRational;
use crate::subgroup_lattice::{all_subgroups, generate, is_normal, quotient, Subgroup, DEFAULT_LATTICE_CAP};

/// Largest group accepted by [`bijection_exists`].
pub const BIJECTION_LIMIT: usize = 10_000;

/// The comparison of one subgroup against the cyclic reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationRecord {
    pub group: String,
    pub group_order: usize,
    pub subgroup_generators: Vec<Element>,
    pub subgroup_order: usize,
    pub psi_h: BigUint,
    /// `m · ψ(C_{n/m})`.
    pub reference: BigUint,
    pub ratio: ExactRational,
    pub nilpotent: bool,
    pub solvable: bool,
}

impl ViolationRecord {
    /// True when `ψ_H(G)` exceeds the cyclic reference.
    pub fn is_violation(&self) -> bool {
        self.ratio > ExactRational::one()
    }
}

/// One record per subgroup, in the order of `subgroups`.
pub fn theorem12_records(g: &dyn FiniteGroup, subgroups: &[Subgroup]) -> Result<Vec<ViolationRecord>> {
    let nilpotent = is_nilpotent(g)?;
    let solvable = is_solvable(g)?;
    let n = g.order();
    subgroups
        .iter()
        .map(|h| {
            let psi_h = psi_relative(g, h)?;
            let reference = cyclic_reference(n as u64, h.order() as u64)?;
            Ok(ViolationRecord {
                group: g.descriptor(),
                group_order: n,
                subgroup_generators: h.generators().to_vec(),
                subgroup_order: h.order(),
                ratio: ExactRational::from_biguints(&psi_h, &reference)?,
                psi_h,
                reference,
                nilpotent,
                solvable,
            })
        })
        .collect()
}

/// Compares every subgroup of `g` against the cyclic reference.
pub fn theorem12_scan(g: &dyn FiniteGroup) -> Result<Vec<ViolationRecord>> {
    let subs = all_subgroups(g, DEFAULT_LATTICE_CAP)?;
    theorem12_records(g, &subs)
}

/// Parameters of the Frobenius counterexample `GF(2^r) ⋊ GF(2^r)^×`,
/// optionally times `C_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CounterexampleSpec {
    pub r: u32,
    pub q: Option<u64>,
}

impl CounterexampleSpec {
    pub fn new(r: u32, q: Option<u64>) -> std::result::Result<Self, SpecError> {
        let spec = CounterexampleSpec { r, q };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> std::result::Result<(), SpecError> {
        if self.r < 3 {
            return Err(SpecError::ExponentTooSmall(self.r));
        }
        if !is_mersenne_exponent(self.r).unwrap_or(false) {
            return Err(SpecError::NotMersenneExponent(self.r));
        }
        if let Some(q) = self.q {
            if q % 2 == 0 {
                return Err(SpecError::EvenCofactor(q));
            }
            if !is_prime(q) {
                return Err(SpecError::CofactorNotPrime(q));
            }
            let complement = (BigUint::from(1u32) << self.r) - 1u32;
            if (complement % q) == BigUint::from(0u32) {
                return Err(SpecError::CofactorDividesComplement { q, r: self.r });
            }
        }
        Ok(())
    }

    fn cofactor(&self) -> u64 {
        self.q.unwrap_or(1)
    }

    /// `n = 2^r (2^r - 1) q`.
    pub fn group_order(&self) -> BigUint {
        let two_r = BigUint::from(1u32) << self.r;
        &two_r * (&two_r - 1u32) * self.cofactor()
    }

    /// `m = (2^r - 1) q`.
    pub fn subgroup_order(&self) -> BigUint {
        ((BigUint::from(1u32) << self.r) - 1u32) * self.cofactor()
    }

    /// ψ_H(G) in closed form. With `M = 2^r - 1` prime, `ψ(C_M) = M^2 - M + 1`,
    /// so the Frobenius formula `M(ψ(C_M) + 2)` becomes `M(M^2 - M + 3)`;
    /// the `C_q` factor contributes `ψ_{C_q}(C_q) = q`.
    pub fn closed_form_psi(&self) -> BigUint {
        let m = (BigUint::from(1u32) << self.r) - 1u32;
        &m * (&m * &m - &m + 3u32) * self.cofactor()
    }

    /// `m · ψ(C_{2^r})` with `ψ(C_{2^r}) = (2^{2r+1} + 1) / 3`.
    pub fn closed_form_reference(&self) -> BigUint {
        let psi_two_power = ((BigUint::from(1u32) << (2 * self.r + 1)) + 1u32) / 3u32;
        self.subgroup_order() * psi_two_power
    }

    pub fn closed_form_ratio(&self) -> Result<ExactRational> {
        ExactRational::from_biguints(&self.closed_form_psi(), &self.closed_form_reference())
    }
}

/// A constructed counterexample: the group and the complement (times `C_q`).
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub group: GroupRef,
    pub subgroup: Subgroup,
}

pub fn build_counterexample(spec: &CounterexampleSpec) -> Result<Counterexample> {
    spec.validate()?;
    let order = spec.group_order();
    if order > BigUint::from(BRUTE_FORCE_LIMIT) {
        return Err(Error::BudgetExceeded {
            what: "counterexample construction",
            limit: BRUTE_FORCE_LIMIT,
            actual: usize::try_from(&order).unwrap_or(usize::MAX),
        });
    }
    let frob = frobenius_field(2, spec.r)?;
    // (0, 1) generates the complement and encodes as 1.
    match spec.q {
        None => {
            let subgroup = generate(frob.as_ref(), &[1])?;
            Ok(Counterexample { group: frob, subgroup })
        }
        Some(q) => {
            let q = q as usize;
            let group = direct_product(vec![frob, cyclic(q)?])?;
            // Mixed radix: the Frobenius component is scaled by q.
            let subgroup = generate(group.as_ref(), &[q, 1])?;
            Ok(Counterexample { group, subgroup })
        }
    }
}

/// A set of left-side relative-order values whose compatible right-side
/// elements are too few: `|N(S)| < |S|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallViolation {
    /// Relative-order value in `G` -> number of elements of `G` with it.
    pub left: BTreeMap<usize, usize>,
    /// Relative-order value in `C_n` -> number of elements of `C_n` with it,
    /// over all values divisible by some value in `left`.
    pub neighborhood: BTreeMap<usize, usize>,
}

impl HallViolation {
    pub fn left_size(&self) -> usize {
        self.left.values().sum()
    }

    pub fn neighborhood_size(&self) -> usize {
        self.neighborhood.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BijectionOutcome {
    /// `witness[x]` is the element of `C_n` assigned to `x`.
    Exists(Vec<Element>),
    NoBijection(HallViolation),
}

impl BijectionOutcome {
    pub fn exists(&self) -> bool {
        matches!(self, BijectionOutcome::Exists(_))
    }
}

/// Relative orders in `C_n` with respect to its subgroup of order `m`:
/// `o(y) = q / gcd(y, q)` with `q = n / m`.
pub fn cyclic_relative_orders(n: usize, m: usize) -> Vec<usize> {
    let q = n / m;
    (0..n).map(|y| q / (y % q).gcd(&q)).collect()
}

struct FlowEdge {
    to: usize,
    cap: usize,
}

/// Dinic's algorithm on a small capacitated graph: BFS layering, then
/// blocking flows along layered augmenting paths.
struct FlowNetwork {
    edges: Vec<FlowEdge>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            edges: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: usize) -> usize {
        let id = self.edges.len();
        self.edges.push(FlowEdge { to, cap });
        self.adj[from].push(id);
        self.edges.push(FlowEdge { to: from, cap: 0 });
        self.adj[to].push(id + 1);
        id
    }

    fn levels(&self, source: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.adj.len()];
        level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.edges[e].to;
                if self.edges[e].cap > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, sink: usize, limit: usize, level: &[usize], next: &mut [usize]) -> usize {
        if u == sink {
            return limit;
        }
        while next[u] < self.adj[u].len() {
            let e = self.adj[u][next[u]];
            let v = self.edges[e].to;
            if self.edges[e].cap > 0 && level[v] == level[u] + 1 {
                let pushed = self.augment(v, sink, limit.min(self.edges[e].cap), level, next);
                if pushed > 0 {
                    self.edges[e].cap -= pushed;
                    self.edges[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
            next[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut flow = 0;
        loop {
            let level = self.levels(source);
            if level[sink] == usize::MAX {
                return flow;
            }
            let mut next = vec![0; self.adj.len()];
            loop {
                let pushed = self.augment(source, sink, usize::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
    }
}

fn bucket(values: &[usize]) -> BTreeMap<usize, Vec<Element>> {
    let mut out: BTreeMap<usize, Vec<Element>> = BTreeMap::new();
    for (x, &v) in values.iter().enumerate() {
        out.entry(v).or_default().push(x);
    }
    out
}

/// Decides whether some bijection `f: G -> C_n` has `o_H(x) | o_{H_m}(f(x))`
/// for every `x`.
///
/// Edges depend only on the pair of relative orders, so the matching is
/// solved as a flow on the bipartite graph of relative-order values (with
/// multiplicities as capacities) and then expanded to elements.
pub fn bijection_exists(g: &dyn FiniteGroup, h: &Subgroup) -> Result<BijectionOutcome> {
    let n = g.order();
    if n > BIJECTION_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "bijection search",
            limit: BIJECTION_LIMIT,
            actual: n,
        });
    }
    let left_values = g
        .elements()
        .map(|x| relative_order(g, h, x))
        .collect::<Result<Vec<_>>>()?;
    let right_values = cyclic_relative_orders(n, h.order());
    bijection_from_values(&left_values, &right_values)
}

/// The matching decision on explicit value lists: element `i` on the left
/// may be paired with element `j` on the right iff `left[i] | right[j]`.
pub fn bijection_from_values(left: &[usize], right: &[usize]) -> Result<BijectionOutcome> {
    if left.len() != right.len() {
        return Err(Error::InvalidArgument("sides have different sizes".into()));
    }
    let left_buckets = bucket(left);
    let right_buckets = bucket(right);
    let lk: Vec<usize> = left_buckets.keys().copied().collect();
    let rk: Vec<usize> = right_buckets.keys().copied().collect();
    let source = 0;
    let sink = 1 + lk.len() + rk.len();
    let mut net = FlowNetwork::new(sink + 1);
    for (i, a) in lk.iter().enumerate() {
        net.add_edge(source, 1 + i, left_buckets[a].len());
    }
    for (j, b) in rk.iter().enumerate() {
        net.add_edge(1 + lk.len() + j, sink, right_buckets[b].len());
    }
    let mut middle = Vec::new();
    for (i, a) in lk.iter().enumerate() {
        for (j, b) in rk.iter().enumerate() {
            if b % a == 0 {
                let e = net.add_edge(1 + i, 1 + lk.len() + j, usize::MAX);
                middle.push((i, j, e));
            }
        }
    }
    let flow = net.max_flow(source, sink);

    if flow == left.len() {
        let mut pools: Vec<std::vec::IntoIter<Element>> =
            rk.iter().map(|b| right_buckets[b].clone().into_iter()).collect();
        let mut witness = vec![usize::MAX; left.len()];
        let mut sources: Vec<std::vec::IntoIter<Element>> =
            lk.iter().map(|a| left_buckets[a].clone().into_iter()).collect();
        for &(i, j, e) in &middle {
            let used = net.edges[e ^ 1].cap;
            for _ in 0..used {
                let x = sources[i].next().expect("flow conservation");
                witness[x] = pools[j].next().expect("flow conservation");
            }
        }
        return Ok(BijectionOutcome::Exists(witness));
    }

    // Left buckets still reachable from the source form a Hall violator.
    let level = net.levels(source);
    let left_set: BTreeMap<usize, usize> = lk
        .iter()
        .enumerate()
        .filter(|(i, _)| level[1 + i] != usize::MAX)
        .map(|(_, &a)| (a, left_buckets[&a].len()))
        .collect();
    let neighborhood: BTreeMap<usize, usize> = rk
        .iter()
        .filter(|&&b| left_set.keys().any(|a| b % a == 0))
        .map(|&b| (b, right_buckets[&b].len()))
        .collect();
    Ok(BijectionOutcome::NoBijection(HallViolation {
        left: left_set,
        neighborhood,
    }))
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub lattice_cap: usize,
    /// Also run the bijection decision for every scanned pair.
    pub bijections: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            lattice_cap: DEFAULT_LATTICE_CAP,
            bijections: true,
        }
    }
}

/// Everything found for one catalog group.
#[derive(Clone, Debug)]
pub struct GroupScan {
    pub group: String,
    pub order: usize,
    pub nilpotent: bool,
    pub solvable: bool,
    pub cyclic: bool,
    pub psi: BigUint,
    pub psi_cyclic: BigUint,
    pub records: Vec<ViolationRecord>,
    /// Per record: whether a divisibility bijection exists (when requested).
    pub bijections: Vec<Option<bool>>,
}

impl GroupScan {
    pub fn violations(&self) -> impl Iterator<Item = &ViolationRecord> {
        self.records.iter().filter(|r| r.is_violation())
    }

    /// ψ(G) <= ψ(C_n), with equality exactly for cyclic G.
    pub fn satisfies_theorem11(&self) -> bool {
        self.psi <= self.psi_cyclic && ((self.psi == self.psi_cyclic) == self.cyclic)
    }
}

#[derive(Clone, Debug, Default)]
pub struct CatalogReport {
    pub groups: Vec<GroupScan>,
    /// `(group, error message)` for groups that could not be scanned.
    pub errors: Vec<(String, String)>,
}

impl CatalogReport {
    pub fn pair_count(&self) -> usize {
        self.groups.iter().map(|g| g.records.len()).sum()
    }

    pub fn violation_count(&self) -> usize {
        self.groups.iter().map(|g| g.violations().count()).sum()
    }

    pub fn violating_groups(&self) -> Vec<&GroupScan> {
        self.groups.iter().filter(|g| g.violations().next().is_some()).collect()
    }

    pub fn theorem11_failures(&self) -> Vec<&GroupScan> {
        self.groups.iter().filter(|g| !g.satisfies_theorem11()).collect()
    }

    pub fn nilpotent_violations(&self) -> usize {
        self.groups
            .iter()
            .filter(|g| g.nilpotent)
            .map(|g| g.violations().count())
            .sum()
    }
}

pub fn scan_group(g: &dyn FiniteGroup, options: &ScanOptions) -> Result<GroupScan> {
    let subs = all_subgroups(g, options.lattice_cap)?;
    let records = theorem12_records(g, &subs)?;
    let bijections = if options.bijections {
        subs.iter()
            .map(|h| bijection_exists(g, h).map(|o| Some(o.exists())))
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![None; subs.len()]
    };
    let (nilpotent, solvable) = records
        .first()
        .map(|r| (r.nilpotent, r.solvable))
        .unwrap_or((true, true));
    Ok(GroupScan {
        group: g.descriptor(),
        order: g.order(),
        nilpotent,
        solvable,
        cyclic: is_cyclic(g),
        psi: psi(g)?,
        psi_cyclic: psi_cyclic(g.order() as u64)?,
        records,
        bijections,
    })
}

/// Scans every group in parallel; results are sorted by order and then
/// descriptor. Per-group failures are collected, not fatal.
pub fn scan_catalog(specs: &[GroupSpec], options: &ScanOptions) -> CatalogReport {
    let results: Vec<(String, Result<GroupScan>)> = specs
        .par_iter()
        .map(|spec| {
            let outcome = spec.build().and_then(|g| scan_group(g.as_ref(), options));
            (spec.to_string(), outcome)
        })
        .collect();
    let mut report = CatalogReport::default();
    for (name, outcome) in results {
        match outcome {
            Ok(scan) => report.groups.push(scan),
            Err(e) => report.errors.push((name, e.to_string())),
        }
    }
    report
        .groups
        .sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.group.cmp(&b.group)));
    report.errors.sort();
    report
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Abelian groups of order `n` as lists of prime-power cyclic orders,
/// one per isomorphism type. The cyclic type comes first.
pub fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    let f = crate::numtheory::factorize(n as u64).expect("n >= 1");
    let mut types: Vec<Vec<usize>> = vec![Vec::new()];
    for &(p, a) in f.factors() {
        let mut next = Vec::new();
        for t in &types {
            for part in partitions(a, a) {
                let mut t = t.clone();
                t.extend(part.iter().map(|&l| (p as usize).pow(l)));
                next.push(t);
            }
        }
        types = next;
    }
    types
}

/// The default scan catalog: cyclic groups, non-cyclic abelian groups,
/// dihedral, dicyclic, `S_4`, `S_5`, `A_4`, `A_5`, and direct products of a
/// non-abelian member with an abelian group or another non-abelian member,
/// all of order at most `max_order`. With `include_frobenius`, the affine
/// groups over GF(q), q >= 3, join the non-abelian members.
///
/// Isomorphic duplicates are possible; this is not a census of all groups.
pub fn default_catalog(max_order: usize, include_frobenius: bool) -> Vec<GroupSpec> {
    let mut abelian = Vec::new();
    let mut specs = Vec::new();
    for n in 1..=max_order {
        for (i, t) in abelian_types(n).into_iter().enumerate() {
            let spec = if i == 0 {
                GroupSpec::Cyclic(n)
            } else {
                GroupSpec::Abelian(t)
            };
            abelian.push(spec.clone());
            specs.push(spec);
        }
    }
    let mut bases = Vec::new();
    for k in 3..=max_order / 2 {
        bases.push(GroupSpec::Dihedral(k));
    }
    for k in 2..=max_order / 4 {
        bases.push(GroupSpec::Dicyclic(k));
    }
    bases.extend([
        GroupSpec::Alternating(4),
        GroupSpec::Symmetric(4),
        GroupSpec::Alternating(5),
        GroupSpec::Symmetric(5),
    ]);
    if include_frobenius {
        for q in 3..=max_order {
            let f = crate::numtheory::factorize(q as u64).unwrap();
            if let [(p, r)] = f.factors() {
                bases.push(GroupSpec::Frobenius(*p as u32, *r));
            }
        }
    }
    let order = |s: &GroupSpec| s.order().unwrap_or(usize::MAX);
    bases.retain(|b| order(b) <= max_order);
    specs.extend(bases.iter().cloned());
    for b in &bases {
        for a in abelian.iter().filter(|a| order(a) >= 2) {
            if order(b).saturating_mul(order(a)) <= max_order {
                specs.push(GroupSpec::Product(vec![b.clone(), a.clone()]));
            }
        }
    }
    for (i, b1) in bases.iter().enumerate() {
        for b2 in &bases[i..] {
            if order(b1).saturating_mul(order(b2)) <= max_order {
                specs.push(GroupSpec::Product(vec![b1.clone(), b2.clone()]));
            }
        }
    }
    specs
}

/// One row of the ratio table for the Frobenius family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityRow {
    pub r: u32,
    pub ratio: ExactRational,
    pub is_mersenne: bool,
    pub below_three_halves: bool,
    /// Strictly larger than the previous row (true for the first row).
    pub increasing: bool,
}

pub fn monotonicity_report(r_max: u32) -> Result<Vec<MonotonicityRow>> {
    if !(3..=64).contains(&r_max) {
        return Err(Error::InvalidArgument(format!("r_max must lie in [3, 64], got {r_max}")));
    }
    let three_halves = ExactRational::new(3, 2)?;
    let mut rows: Vec<MonotonicityRow> = Vec::new();
    for r in 3..=r_max {
        let ratio = frobenius_ratio_closed_form(r)?;
        let increasing = rows.last().is_none_or(|prev| ratio > prev.ratio);
        rows.push(MonotonicityRow {
            r,
            below_three_halves: ratio < three_halves,
            is_mersenne: is_mersenne_exponent(r)?,
            increasing,
            ratio,
        });
    }
    Ok(rows)
}

/// `(a, f(3·2^a))` for `a = 1..=a_max`.
pub fn f_ratio_series(a_max: u32) -> Result<Vec<(u32, ExactRational)>> {
    (1..=a_max)
        .map(|a| {
            let q = 3u64
                .checked_shl(a)
                .filter(|&q| q >> a == 3)
                .ok_or_else(|| Error::InvalidArgument(format!("3*2^{a} overflows")))?;
            Ok((a, f_ratio(q)?))
        })
        .collect()
}

/// Outcome of one family of inequality checks over a group's subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    /// Asserted checks count as failures of the library; reported ones are
    /// informational.
    pub asserted: bool,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl BoundCheck {
    fn new(name: &'static str, asserted: bool) -> Self {
        BoundCheck {
            name,
            asserted,
            checked: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs every closed-form bound on every subgroup of `g`:
/// relative orders at most the index, `ψ_H <= m(q^2-q+1)`, the prime-index
/// case, `ψ_K = |K| ψ(G/K)` for normal `K`, both index bounds on ψ', and
/// `ψ(G) <= ψ(C_n)`. The `(p_k+1)/p_k` bound is reported only.
pub fn bound_checks(g: &dyn FiniteGroup, lattice_cap: usize) -> Result<Vec<BoundCheck>> {
    bound_checks_for(g, &all_subgroups(g, lattice_cap)?)
}

/// [`bound_checks`] over an already enumerated list of subgroups.
pub fn bound_checks_for(g: &dyn FiniteGroup, subs: &[Subgroup]) -> Result<Vec<BoundCheck>> {
    let n = g.order();
    let mut order_bound = BoundCheck::new("relative order <= index", true);
    let mut vi = BoundCheck::new("psi_H <= |H|(q^2-q+1)", true);
    let mut prime_index = BoundCheck::new("prime index: psi_H <= m*psi(C_q)", true);
    let mut quotient_identity = BoundCheck::new("normal K: psi_K = |K|*psi(G/K)", true);
    let mut product = BoundCheck::new("psi' < prod (p_i+1)/p_i", true);
    let mut spread = BoundCheck::new("psi' < (p_k+1)/p_1", true);
    let mut power = BoundCheck::new("prod (p_i+1)/p_i <= (3/2)^k", true);
    let mut stated = BoundCheck::new("psi' < (p_k+1)/p_k (reported)", false);
    let mut thm11 = BoundCheck::new("psi(G) <= psi(C_n), equality iff cyclic", true);

    for h in subs {
        let label = || h.describe();
        let q = h.index();
        let rel: Vec<usize> = g
            .elements()
            .map(|x| relative_order(g, h, x))
            .collect::<Result<_>>()?;
        let max_rel = rel.iter().copied().max().unwrap_or(1);
        order_bound.record(max_rel <= q, || format!("{}: max relative order {max_rel} > {q}", label()));
        let psi_h = BigUint::from(rel.iter().map(|&v| v as u64).sum::<u64>());
        let bound = psi_upper_bound_vi(h.order() as u64, q as u64)?;
        vi.record(psi_h <= bound, || format!("{}: {psi_h} > {bound}", label()));
        if is_prime(q as u64) {
            let reference = cyclic_reference(n as u64, h.order() as u64)?;
            prime_index.record(psi_h <= reference, || format!("{}: {psi_h} > {reference}", label()));
        }
        if is_normal(g, h) {
            let quot = quotient(g, h)?;
            let rhs = BigUint::from(h.order()) * psi(quot.as_ref())?;
            quotient_identity.record(psi_h == rhs, || format!("{}: {psi_h} != {rhs}", label()));
        }
        if q >= 2 {
            let reference = cyclic_reference(n as u64, h.order() as u64)?;
            let ratio = ExactRational::from_biguints(&psi_h, &reference)?;
            let b = prop23_bounds_for_index(q as u64)?;
            product.record(ratio < b.product_bound, || format!("{}: {ratio} >= {}", label(), b.product_bound));
            spread.record(ratio < b.spread_bound, || format!("{}: {ratio} >= {}", label(), b.spread_bound));
            power.record(b.product_bound <= b.power_bound, || format!("{}: {} > {}", label(), b.product_bound, b.power_bound));
            stated.record(ratio < b.stated_bound, || format!("{}: {ratio} >= {}", label(), b.stated_bound));
        }
    }
    let psi_g = psi(g)?;
    let psi_c = psi_cyclic(n as u64)?;
    let cyc = is_cyclic(g);
    thm11.record(psi_g <= psi_c && (psi_g == psi_c) == cyc, || {
        format!("psi(G) = {psi_g}, psi(C_n) = {psi_c}, cyclic = {cyc}")
    });
    Ok(vec![order_bound, vi, prime_index, quotient_identity, product, spread, power, stated, thm11])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::{dihedral, symmetric, FrobeniusFieldGroup};
    use crate::order_sums::psi_relative_frobenius_formula;

    #[test]
    fn scan_of_cyclic_group_is_all_ones() {
        let g = cyclic(12).unwrap();
        let recs = theorem12_scan(g.as_ref()).unwrap();
        assert_eq!(recs.len(), 6);
        assert!(recs.iter().all(|r| r.ratio == ExactRational::one() && !r.is_violation()));
    }

    #[test]
    fn scan_of_s3() {
        let g = symmetric(3).unwrap();
        let recs = theorem12_scan(g.as_ref()).unwrap();
        assert!(recs.iter().all(|r| !r.is_violation()));
        assert_eq!(recs[0].ratio, ExactRational::new(13, 21).unwrap());
    }

    #[test]
    fn scan_of_frobenius_2_3_flags_the_complements() {
        let g = frobenius_field(2, 3).unwrap();
        let recs = theorem12_scan(g.as_ref()).unwrap();
        let bad: Vec<_> = recs.iter().filter(|r| r.is_violation()).collect();
        // The complements are the 8 Sylow 7-subgroups.
        assert_eq!(bad.len(), 8);
        assert!(bad.iter().all(|r| r.subgroup_order == 7 && r.ratio == ExactRational::new(45, 43).unwrap()));
        assert!(!bad[0].nilpotent && bad[0].solvable);
    }

    #[test]
    fn counterexample_validation() {
        assert!(CounterexampleSpec::new(3, None).is_ok());
        assert_eq!(CounterexampleSpec::new(4, None), Err(SpecError::NotMersenneExponent(4)));
        assert_eq!(SpecError::NotMersenneExponent(4).to_string(), "2^4-1 not prime");
        assert_eq!(CounterexampleSpec::new(2, None), Err(SpecError::ExponentTooSmall(2)));
        assert_eq!(CounterexampleSpec::new(3, Some(4)), Err(SpecError::EvenCofactor(4)));
        assert_eq!(CounterexampleSpec::new(3, Some(9)), Err(SpecError::CofactorNotPrime(9)));
        assert_eq!(
            CounterexampleSpec::new(3, Some(7)),
            Err(SpecError::CofactorDividesComplement { q: 7, r: 3 })
        );
    }

    #[test]
    fn closed_forms_agree_with_general_formulas() {
        for r in [3, 5, 7, 13, 17, 19, 31] {
            let spec = CounterexampleSpec::new(r, None).unwrap();
            assert_eq!(spec.closed_form_psi(), psi_relative_frobenius_formula(2, r).unwrap());
            assert_eq!(spec.closed_form_reference(), spec.subgroup_order() * psi_cyclic(1 << r).unwrap());
            assert_eq!(spec.closed_form_ratio().unwrap(), frobenius_ratio_closed_form(r).unwrap());
        }
        let big = CounterexampleSpec::new(89, Some(3)).unwrap();
        assert_eq!(big.closed_form_ratio().unwrap(), frobenius_ratio_closed_form(89).unwrap());
    }

    #[test]
    fn counterexamples_match_closed_form() {
        for (r, q) in [(3, None), (3, Some(3)), (5, None)] {
            let spec = CounterexampleSpec::new(r, q).unwrap();
            let ce = build_counterexample(&spec).unwrap();
            assert_eq!(BigUint::from(ce.group.order()), spec.group_order());
            assert_eq!(BigUint::from(ce.subgroup.order()), spec.subgroup_order());
            let psi_h = psi_relative(ce.group.as_ref(), &ce.subgroup).unwrap();
            assert_eq!(psi_h, spec.closed_form_psi());
            let ratio = ExactRational::from_biguints(&psi_h, &spec.closed_form_reference()).unwrap();
            assert_eq!(ratio, spec.closed_form_ratio().unwrap());
            assert_eq!(ratio, frobenius_ratio_closed_form(r).unwrap());
        }
        let ce = build_counterexample(&CounterexampleSpec { r: 3, q: Some(3) }).unwrap();
        assert_eq!(ce.group.order(), 168);
        let huge = CounterexampleSpec::new(13, None).unwrap();
        assert!(matches!(build_counterexample(&huge), Err(Error::BudgetExceeded { .. })));
    }

    /// Element-level augmenting-path matching on the explicit divisibility
    /// graph; independent of the value-bucket flow.
    fn kuhn_perfect_matching(left: &[usize], right: &[usize]) -> bool {
        fn try_kuhn(u: usize, left: &[usize], right: &[usize], seen: &mut [bool], owner: &mut [usize]) -> bool {
            for v in 0..right.len() {
                if right[v] % left[u] == 0 && !seen[v] {
                    seen[v] = true;
                    if owner[v] == usize::MAX || try_kuhn(owner[v], left, right, seen, owner) {
                        owner[v] = u;
                        return true;
                    }
                }
            }
            false
        }
        let mut owner = vec![usize::MAX; right.len()];
        (0..left.len()).all(|u| {
            let mut seen = vec![false; right.len()];
            try_kuhn(u, left, right, &mut seen, &mut owner)
        })
    }

    fn check_outcome(g: &dyn FiniteGroup, h: &Subgroup, outcome: &BijectionOutcome) {
        let left: Vec<usize> = g.elements().map(|x| relative_order(g, h, x).unwrap()).collect();
        let right = cyclic_relative_orders(g.order(), h.order());
        assert_eq!(outcome.exists(), kuhn_perfect_matching(&left, &right));
        match outcome {
            BijectionOutcome::Exists(w) => {
                let mut used = vec![false; w.len()];
                for (x, &y) in w.iter().enumerate() {
                    assert!(!std::mem::replace(&mut used[y], true));
                    assert_eq!(right[y] % left[x], 0);
                }
            }
            BijectionOutcome::NoBijection(hall) => {
                assert!(hall.neighborhood_size() < hall.left_size());
                let s: usize = left.iter().filter(|v| hall.left.contains_key(v)).count();
                let ns = right.iter().filter(|&&b| hall.left.keys().any(|a| b % a == 0)).count();
                assert_eq!(s, hall.left_size());
                assert_eq!(ns, hall.neighborhood_size());
            }
        }
    }

    #[test]
    fn bijection_examples() {
        let c12 = cyclic(12).unwrap();
        for h in all_subgroups(c12.as_ref(), 200).unwrap() {
            let o = bijection_exists(c12.as_ref(), &h).unwrap();
            assert!(o.exists());
            check_outcome(c12.as_ref(), &h, &o);
        }
        let f = FrobeniusFieldGroup::new(2, 3).unwrap();
        let comp = generate(&f, &[f.complement_generator()]).unwrap();
        let o = bijection_exists(&f, &comp).unwrap();
        assert!(!o.exists());
        check_outcome(&f, &comp, &o);

        let s3 = symmetric(3).unwrap();
        let o = bijection_exists(s3.as_ref(), &Subgroup::trivial(s3.as_ref())).unwrap();
        assert!(o.exists());
    }

    #[test]
    fn bijection_agrees_with_element_matching_everywhere_small() {
        for g in [symmetric(4).unwrap(), dihedral(6).unwrap(), frobenius_field(2, 3).unwrap(), frobenius_field(5, 1).unwrap()] {
            for h in all_subgroups(g.as_ref(), 200).unwrap() {
                let o = bijection_exists(g.as_ref(), &h).unwrap();
                check_outcome(g.as_ref(), &h, &o);
            }
        }
    }

    #[test]
    fn abelian_type_enumeration() {
        assert_eq!(abelian_types(8), vec![vec![8], vec![4, 2], vec![2, 2, 2]]);
        assert_eq!(abelian_types(12), vec![vec![4, 3], vec![2, 2, 3]]);
        assert_eq!(abelian_types(1), vec![Vec::<usize>::new()]);
        assert_eq!(abelian_types(64).len(), 11);
    }

    #[test]
    fn catalog_scan_flags_only_frobenius_family() {
        let specs = vec![
            GroupSpec::Cyclic(12),
            GroupSpec::Symmetric(4),
            GroupSpec::Frobenius(2, 3),
            GroupSpec::Dihedral(5),
        ];
        let report = scan_catalog(&specs, &ScanOptions::default());
        assert!(report.errors.is_empty());
        let bad = report.violating_groups();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].group, "frobenius(2,3)");
        assert!(scan_catalog(&[], &ScanOptions::default()).groups.is_empty());
    }

    #[test]
    fn catalog_errors_are_collected() {
        let specs = vec![GroupSpec::Cyclic(12), GroupSpec::Cyclic(300)];
        let report = scan_catalog(&specs, &ScanOptions::default());
        assert_eq!(report.groups.len(), 1);
        assert_eq!(report.errors.len(), 1);
    }

    #[test]
    fn monotonicity_examples() {
        let rows = monotonicity_report(3).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].ratio, ExactRational::new(45, 43).unwrap());
        let rows = monotonicity_report(5).unwrap();
        assert_eq!(rows.iter().map(|r| r.r).collect::<Vec<_>>(), vec![3, 4, 5]);
        assert!(!rows[1].is_mersenne);
        assert_eq!(rows[2].ratio, ExactRational::new(933, 683).unwrap());
        assert!(rows.iter().all(|r| r.below_three_halves && r.increasing));
        assert!(monotonicity_report(2).is_err());
        assert!(monotonicity_report(65).is_err());
    }

    #[test]
    fn bound_checks_on_c12_pass() {
        let g = cyclic(12).unwrap();
        let checks = bound_checks(g.as_ref(), 200).unwrap();
        assert!(checks.iter().filter(|c| c.asserted).all(|c| c.passed()));
    }
}
