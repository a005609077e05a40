//! Named batches of exact checks over families of groups, run in parallel
//! and aggregated into a deterministic report.
//!
//! A [`Check`] is a list of tasks, one per item (a tuple, a presentation, a
//! pair). Each task returns [`Outcome::Pass`] or a failure with a detail
//! string; library errors count as failures. Completed items can be
//! recorded in a checkpoint with one `check\titem\tpass|fail` line each, and
//! a later run skips items already recorded.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{
    conjugacy_classes_by_cyclotomic_sum, conjugacy_quantities, count_conjugacy_classes_epsm1,
    count_cyclic_classes_eps1, cyclic_conjugate_predicate,
};
use crate::error::{Error, Result};
use crate::group::{
    abelianization_invariants, pi_signature, CanonicalPParams, ConditionParse, Epsilon, FiniteGroup,
    GroupElement, MetacyclicPresentation,
};
use crate::invariants::{
    classify_order, compare_vectors, degree_center_check, p_component_sum_check, qg_invariant_vector,
    real_imaginary_center_check, sylow_isomorphism_check_with, QGInvariantVector, PROXY_NOTE,
};
use crate::numtheory::{
    closed_cyclotomic_count, cyclotomic_classes, cyclotomic_count_by_divisors, ese,
    ese_congruence_closed_form, ese_mod, gcd, multiplicative_order, order_closed_form,
    power_images_closed_form, prime_divisors, residue, vp, vp_power_closed_form, Valuation,
};
use crate::wedderburn::{decomposition::decompose_table, DecompositionOptions};

pub const SCHEMA_VERSION: u32 = 1;
const FAILURES_KEPT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, left: T, right: T) -> Outcome {
    if left == right {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{what}: {left:?} != {right:?}"))
    }
}

fn first_failure(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    outcomes
        .into_iter()
        .find(|o| *o != Outcome::Pass)
        .unwrap_or(Outcome::Pass)
}

type Job = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

pub struct Task {
    pub item: String,
    job: Job,
}

impl Task {
    pub fn new(item: impl Into<String>, job: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Self {
        Task {
            item: item.into(),
            job: Box::new(job),
        }
    }

    pub fn run(&self) -> Outcome {
        match (self.job)() {
            Ok(o) => o,
            Err(e) => Outcome::Fail(format!("error: {e}")),
        }
    }
}

pub struct Check {
    pub name: &'static str,
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub item: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
    /// Items taken from the checkpoint instead of being rerun.
    pub resumed: u64,
    pub first_failures: Vec<Failure>,
}

impl CheckSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Completed items keyed by `(check, item)`.
pub type Checkpoint = BTreeMap<(String, String), bool>;

pub fn checkpoint_line(check: &str, item: &str, passed: bool) -> String {
    format!("{check}\t{item}\t{}", if passed { "pass" } else { "fail" })
}

/// Reads checkpoint lines; blank and malformed lines are ignored.
pub fn parse_checkpoint(text: &str) -> Checkpoint {
    let mut out = Checkpoint::new();
    for line in text.lines() {
        let mut parts = line.split('\t');
        if let (Some(c), Some(i), Some(status), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        {
            match status {
                "pass" => out.insert((c.to_string(), i.to_string()), true),
                "fail" => out.insert((c.to_string(), i.to_string()), false),
                _ => None,
            };
        }
    }
    out
}

/// Runs the tasks not already in `resume` in parallel, calling `on_done`
/// after each, and summarizes in task order.
pub fn run_check(
    check: &Check,
    resume: &Checkpoint,
    on_done: &(dyn Fn(&str, &str, bool) + Sync),
) -> CheckSummary {
    let outcomes: Vec<(Outcome, bool)> = check
        .tasks
        .par_iter()
        .map(|t| match resume.get(&(check.name.to_string(), t.item.clone())) {
            Some(true) => (Outcome::Pass, true),
            Some(false) => (Outcome::Fail("recorded as failed in the checkpoint".into()), true),
            None => {
                let o = t.run();
                on_done(check.name, &t.item, o == Outcome::Pass);
                (o, false)
            }
        })
        .collect();
    let mut summary = CheckSummary {
        name: check.name,
        passed: 0,
        failed: 0,
        resumed: 0,
        first_failures: Vec::new(),
    };
    for (task, (outcome, resumed)) in check.tasks.iter().zip(outcomes) {
        summary.resumed += resumed as u64;
        match outcome {
            Outcome::Pass => summary.passed += 1,
            Outcome::Fail(detail) => {
                summary.failed += 1;
                if summary.first_failures.len() < FAILURES_KEPT {
                    summary.first_failures.push(Failure {
                        item: task.item.clone(),
                        detail,
                    });
                }
            }
        }
    }
    summary
}

fn tuples_up_to(bounds: &[(u64, u64)], epsilon: Epsilon) -> Vec<CanonicalPParams> {
    bounds
        .iter()
        .flat_map(|&(p, bound)| CanonicalPParams::enumerate_up_to(p, bound))
        .filter(|t| t.epsilon == epsilon)
        .collect()
}

/// Every consistent presentation with `m·n <= bound`.
pub fn presentations_up_to(bound: u64) -> Vec<MetacyclicPresentation> {
    (1..=bound)
        .flat_map(MetacyclicPresentation::enumerate_of_order)
        .collect()
}

/// Closed-form cyclic-subgroup class count against enumeration, for valid
/// `ε = 1` tuples of order at most `bound` for each `(p, bound)`.
pub fn eps1_cyclic_class_counts(bounds: &[(u64, u64)], cap: u64) -> Check {
    let tasks = tuples_up_to(bounds, Epsilon::Plus)
        .into_iter()
        .map(|t| {
            Task::new(t.to_string(), move || {
                let g = FiniteGroup::new(t.presentation()?, cap)?;
                Ok(expect_eq(
                    "formula vs enumeration",
                    count_cyclic_classes_eps1(&t)?,
                    g.cyclic_subgroup_classes().len() as u64,
                ))
            })
        })
        .collect();
    Check {
        name: "counting.cyclic_classes_eps1",
        tasks,
    }
}

/// Closed-form conjugacy class count against enumeration and against the
/// sum of cyclotomic class counts, for valid `ε = -1` tuples.
pub fn epsm1_class_counts(bound: u64, cap: u64) -> Check {
    let tasks = tuples_up_to(&[(2, bound)], Epsilon::Minus)
        .into_iter()
        .map(|t| {
            Task::new(t.to_string(), move || {
                let g = FiniteGroup::new(t.presentation()?, cap)?;
                let formula = count_conjugacy_classes_epsm1(&t)?;
                let brute = BigInt::from(g.conjugacy_classes().len());
                let by_sum = conjugacy_classes_by_cyclotomic_sum(&t)?;
                Ok(first_failure([
                    expect_eq("formula vs enumeration", &formula, &brute),
                    expect_eq("formula vs cyclotomic sum", &formula, &by_sum),
                ]))
            })
        })
        .collect();
    Check {
        name: "counting.conjugacy_classes_epsm1",
        tasks,
    }
}

/// The congruence criterion for conjugacy of `⟨b^(p^d) a^i⟩` and
/// `⟨b^(p^d) a^j⟩` against conjugacy classes of cyclic subgroups, for all
/// `0 <= d < ν` and `1 <= i, j <= p^μ`. Conjugate generators must also
/// share `k` and `h`.
pub fn cyclic_conjugacy_criterion(bounds: &[(u64, u64)], cap: u64) -> Check {
    let tasks = tuples_up_to(bounds, Epsilon::Plus)
        .into_iter()
        .filter(|t| t.mu >= 1 && t.nu >= 1)
        .map(|t| {
            Task::new(t.to_string(), move || {
                let g = FiniteGroup::new(t.presentation()?, cap)?;
                let mut class_of = BTreeMap::new();
                for (idx, class) in g.cyclic_subgroup_classes().iter().enumerate() {
                    for sub in class {
                        class_of.insert(sub.elements.clone(), idx);
                    }
                }
                let pm = t.p.pow(t.mu);
                for d in 0..t.nu {
                    let label = |i: u64| {
                        class_of[&g
                            .cyclic(g.index_of(GroupElement::new(t.p.pow(d), i % pm)))
                            .elements]
                    };
                    let labels: Vec<usize> = (1..=pm).map(label).collect();
                    for i in 1..=pm {
                        let qi = conjugacy_quantities(&t, d, i)?;
                        for j in 1..=pm {
                            let oracle = labels[(i - 1) as usize] == labels[(j - 1) as usize];
                            if cyclic_conjugate_predicate(&t, d, i, j)? != oracle {
                                return Ok(Outcome::Fail(format!(
                                    "d={d}, i={i}, j={j}: oracle says {oracle}"
                                )));
                            }
                            let qj = conjugacy_quantities(&t, d, j)?;
                            if oracle && (qi.k, qi.h) != (qj.k, qj.h) {
                                return Ok(Outcome::Fail(format!("d={d}, i={i}, j={j}: (k, h) differ")));
                            }
                        }
                    }
                }
                Ok(Outcome::Pass)
            })
        })
        .collect();
    Check {
        name: "counting.cyclic_conjugacy_criterion",
        tasks,
    }
}

fn residues_one_mod(p: u64, r_bound: i64) -> impl Iterator<Item = i64> {
    (-r_bound..=r_bound).filter(move |r| (r - 1).rem_euclid(p as i64) == 0)
}

/// The order of `R` modulo `p^m` by repeated multiplication.
fn order_by_iteration(r: &BigInt, modulus: u64) -> u64 {
    let x = residue(r, modulus);
    let (mut y, mut k) = (x % modulus, 1u64);
    while y != 1 % modulus {
        y = (y as u128 * x as u128 % modulus as u128) as u64;
        k += 1;
    }
    k
}

/// The closed forms for `v_p(R^m - 1)`, the order of `R` modulo `p^m`, the
/// powers of `R` modulo `p^m` and `S(R, n) mod p^m`, against direct
/// computation, for `|R| <= r_bound`, `R ≡ 1 (mod p)` and `1 <= m <= m_max`.
pub fn power_closed_forms(primes: &[u64], r_bound: i64, m_max: u32) -> Check {
    let mut tasks = Vec::new();
    for &p in primes {
        for r in residues_one_mod(p, r_bound) {
            tasks.push(Task::new(format!("p={p},R={r}"), move || {
                power_closed_forms_one(p, r, m_max)
            }));
        }
    }
    Check {
        name: "numtheory.power_closed_forms",
        tasks,
    }
}

fn power_closed_forms_one(p: u64, r: i64, m_max: u32) -> Result<Outcome> {
    let big = BigInt::from(r);
    let a = vp(p, &big - BigInt::one())?;
    for m in 1..=m_max as u64 {
        let direct = vp(p, Pow::pow(&big, m as u32) - BigInt::one())?;
        if vp_power_closed_form(big.clone(), m, p)? != direct {
            return Ok(Outcome::Fail(format!("v_p(R^{m} - 1): direct {direct}")));
        }
        let modulus = p.pow(m as u32);
        let order = order_by_iteration(&big, modulus);
        if order_closed_form(big.clone(), p, m)? != BigInt::from(order)
            || multiplicative_order(big.clone(), modulus)? != order
        {
            return Ok(Outcome::Fail(format!("order modulo {p}^{m}: direct {order}")));
        }
        let Valuation::Finite(a) = a else { continue };
        if a > m || (p == 2 && a < 2) {
            continue;
        }
        let x = residue(&big, modulus);
        let mut powers = BTreeSet::new();
        let mut y = 1 % modulus;
        for _ in 0..order {
            powers.insert(y);
            y = (y as u128 * x as u128 % modulus as u128) as u64;
        }
        if power_images_closed_form(big.clone(), p, a, m)? != powers.into_iter().collect::<Vec<_>>() {
            return Ok(Outcome::Fail(format!("powers modulo {p}^{m}")));
        }
        let step = p.pow((m - a) as u32);
        for k in -3i64..=3 {
            for lift in 0..2u64 {
                let n = (k.rem_euclid(modulus as i64) as u64 * step) % modulus + lift * modulus;
                if n == 0 {
                    continue;
                }
                let direct = ese_mod(x, n, modulus);
                if n <= 64 && residue(&ese(big.clone(), n), modulus) != direct {
                    return Ok(Outcome::Fail(format!("S(R, {n}) modulo {modulus} two ways")));
                }
                let closed = ese_congruence_closed_form(big.clone(), p, a, m, n, k)?;
                if closed != direct {
                    return Ok(Outcome::Fail(format!(
                        "S(R, {n}) mod {p}^{m}: closed {closed}, direct {direct}"
                    )));
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

/// The closed number of `R`-cyclotomic classes modulo `p^m` against the
/// orbit partition, for `|R| <= r_bound`, `R ≡ 1 (mod p)`, `m <= m_max`.
pub fn cyclotomic_closed_form(primes: &[u64], r_bound: i64, m_max: u32) -> Check {
    let mut tasks = Vec::new();
    for &p in primes {
        for r in residues_one_mod(p, r_bound) {
            for m in 0..=m_max as u64 {
                tasks.push(Task::new(format!("p={p},R={r},m={m}"), move || {
                    let classes = cyclotomic_classes(r, p.pow(m as u32))?.count();
                    Ok(expect_eq(
                        "closed form vs orbits",
                        closed_cyclotomic_count(r, p, m)?,
                        BigInt::from(classes),
                    ))
                }));
            }
        }
    }
    Check {
        name: "numtheory.cyclotomic_closed_form",
        tasks,
    }
}

/// `C_{R,n} = Σ_{d|n} φ(d)/o_d(R)` against the orbit partition for every
/// `n <= n_max` and every `R` in `1..n` coprime to `n`.
pub fn cyclotomic_divisor_sum(n_max: u64) -> Check {
    let tasks = (1..=n_max)
        .map(|n| {
            Task::new(format!("n={n}"), move || {
                for r in (0..n.max(2)).filter(|&r| gcd(r, n) == 1) {
                    let direct = cyclotomic_classes(r, n)?.count() as u64;
                    let by_divisors = cyclotomic_count_by_divisors(r, n)?;
                    if direct != by_divisors {
                        return Ok(Outcome::Fail(format!(
                            "R={r}: {direct} orbits, divisor sum {by_divisors}"
                        )));
                    }
                }
                Ok(Outcome::Pass)
            })
        })
        .collect();
    Check {
        name: "numtheory.cyclotomic_divisor_sum",
        tasks,
    }
}

/// Powers through `S(x, n)` against repeated multiplication, for every
/// element and every exponent up to `|G|` in both signs.
pub fn power_law(bound: u64) -> Check {
    let tasks = presentations_up_to(bound)
        .into_iter()
        .map(|g| {
            Task::new(g.to_string(), move || {
                let count = g.elements().count() as u64;
                if count != g.order() {
                    return Ok(Outcome::Fail(format!("{count} elements in normal form")));
                }
                let order = g.order() as i64;
                for x in g.elements() {
                    for k in -order..=order {
                        if g.power(x, k) != g.power_slow(x, k) {
                            return Ok(Outcome::Fail(format!("({x})^{k}")));
                        }
                    }
                }
                Ok(Outcome::Pass)
            })
        })
        .collect();
    Check {
        name: "group.power_law",
        tasks,
    }
}

/// `G/G'` of valid tuples: `C_{p^ρ} × C_{p^ν}` for `ε = 1` and
/// `C_2 × C_{2^ν}` for `ε = -1`, as multisets of nontrivial factors.
pub fn abelianization_form(bounds: &[(u64, u64)]) -> Check {
    let mut tuples = tuples_up_to(bounds, Epsilon::Plus);
    tuples.extend(tuples_up_to(bounds, Epsilon::Minus));
    let tasks = tuples
        .into_iter()
        .map(|t| {
            Task::new(t.to_string(), move || {
                let mut expected: Vec<u64> = match t.epsilon {
                    Epsilon::Plus => vec![t.p.pow(t.rho), t.p.pow(t.nu)],
                    Epsilon::Minus => vec![2, 1 << t.nu],
                };
                expected.retain(|&d| d > 1);
                expected.sort_unstable();
                let mut actual = abelianization_invariants(&t.presentation()?);
                actual.retain(|&d| d > 1);
                actual.sort_unstable();
                Ok(expect_eq("invariant factors", actual, expected))
            })
        })
        .collect();
    Check {
        name: "group.abelianization_form",
        tasks,
    }
}

/// `π_G` by brute force and by the structural characterization (the two
/// are compared inside [`pi_signature`]), and the smallest prime divisor
/// of `|G|` lying in `π_G`.
pub fn pi_signatures(bound: u64, cap: u64) -> Check {
    let tasks = presentations_up_to(bound)
        .into_iter()
        .map(|g| {
            Task::new(g.to_string(), move || {
                let sig = pi_signature(&g, cap)?;
                Ok(match prime_divisors(g.order()).first() {
                    Some(p) if !sig.pi.contains(p) => Outcome::Fail(format!("smallest prime {p} not in π_G")),
                    _ => Outcome::Pass,
                })
            })
        })
        .collect();
    Check {
        name: "group.pi_signature",
        tasks,
    }
}

/// The Wedderburn decomposition of every presentation of order at most
/// `bound`, with every internal identity checked (idempotents, partition
/// of unity, dimension), and Artin's count, the center-dimension sum and
/// the abelian shape checked here.
pub fn wedderburn_identities(bound: u64, options: DecompositionOptions) -> Check {
    let tasks = presentations_up_to(bound)
        .into_iter()
        .map(|g| {
            Task::new(g.to_string(), move || {
                let table = FiniteGroup::new(g, options.cap)?;
                let d = decompose_table(&table, &options)?;
                let center_sum: u64 = d.components.iter().map(|c| c.descriptor.center.degree()).sum();
                let abelian = !g.is_abelian()
                    || d.components
                        .iter()
                        .all(|c| c.descriptor.matrix_size == 1 && c.descriptor.k == 1);
                Ok(first_failure([
                    expect_eq(
                        "components vs cyclic subgroup classes",
                        d.components.len(),
                        table.cyclic_subgroup_classes().len(),
                    ),
                    expect_eq(
                        "center degrees vs conjugacy classes",
                        center_sum as usize,
                        table.conjugacy_classes().len(),
                    ),
                    expect_eq("abelian components are fields", abelian, true),
                ]))
            })
        })
        .collect();
    Check {
        name: "wedderburn.identities",
        tasks,
    }
}

/// Valid tuples of order `p^k` against brute-force isomorphism classes.
pub fn classification(bounds: &[(u64, u64)], cap: u64) -> Check {
    let mut tasks = Vec::new();
    for &(p, bound) in bounds {
        let mut k = 1u32;
        while p.pow(k) <= bound {
            tasks.push(Task::new(format!("{}", p.pow(k)), move || {
                let row = classify_order(p, k, ConditionParse::SELECTED, cap)?;
                Ok(if row.bijection {
                    Outcome::Pass
                } else {
                    Outcome::Fail(format!(
                        "{} tuples, {} classes",
                        row.tuples.len(),
                        row.classes.len()
                    ))
                })
            }));
            k += 1;
        }
    }
    Check {
        name: "classification.bijection",
        tasks,
    }
}

/// All pairs of distinct valid tuples of equal order have invariant
/// vectors that differ however `Unknown` flags resolve.
pub fn separation(bounds: &[(u64, u64)], options: DecompositionOptions) -> Check {
    let mut tasks = Vec::new();
    for &(p, bound) in bounds {
        let mut k = 1u32;
        while p.pow(k) <= bound {
            tasks.push(Task::new(format!("{}", p.pow(k)), move || {
                let tuples = CanonicalPParams::enumerate(p, k, ConditionParse::SELECTED);
                let vectors: Vec<QGInvariantVector> = tuples
                    .iter()
                    .map(|t| qg_invariant_vector(&t.presentation()?, &options))
                    .collect::<Result<_>>()?;
                for i in 0..tuples.len() {
                    for j in i + 1..tuples.len() {
                        let cmp = compare_vectors(&vectors[i], &vectors[j]);
                        if !cmp.is_distinct() {
                            return Ok(Outcome::Fail(format!("{} and {}: {cmp:?}", tuples[i], tuples[j])));
                        }
                    }
                }
                Ok(Outcome::Pass)
            }));
            k += 1;
        }
    }
    Check {
        name: "invariants.separation",
        tasks,
    }
}

/// The two component criteria for `ε = -1` tuples in their hypotheses.
pub fn center_criteria(bound: u64, options: DecompositionOptions) -> Check {
    let mut tasks = Vec::new();
    for t in tuples_up_to(&[(2, bound)], Epsilon::Minus) {
        if t.rho + 1 >= t.mu && t.mu >= 3 {
            tasks.push(Task::new(format!("{t} real/imaginary"), move || {
                Ok(first_failure(real_imaginary_center_check(&t, &options)?.map(
                    |r| {
                        if r.holds {
                            Outcome::Pass
                        } else {
                            Outcome::Fail(format!(
                                "{}: condition {}, component found {}",
                                r.statement, r.condition, r.component_found
                            ))
                        }
                    },
                )))
            }));
        }
        if t.rho < t.mu && t.mu < t.nu + t.rho {
            tasks.push(Task::new(format!("{t} degree"), move || {
                let r = degree_center_check(&t, &options)?;
                Ok(expect_eq(r.statement, r.component_found, r.condition))
            }));
        }
    }
    Check {
        name: "invariants.center_criteria",
        tasks,
    }
}

/// The `p`-component identity for every `p ∈ π_G`.
pub fn p_component_sums(bound: u64, options: DecompositionOptions) -> Check {
    let tasks = presentations_up_to(bound)
        .into_iter()
        .map(|g| {
            Task::new(g.to_string(), move || {
                let sig = pi_signature(&g, options.cap)?;
                for &p in &sig.pi {
                    let r = p_component_sum_check(&g, p, &options)?;
                    if !r.holds {
                        return Ok(Outcome::Fail(format!("p={p}, k={}", r.k)));
                    }
                }
                Ok(Outcome::Pass)
            })
        })
        .collect();
    Check {
        name: "invariants.p_component_sum",
        tasks,
    }
}

/// Pairs whose vectors may be equal: equal `π`, Sylow subgroups for
/// `p ∈ π` with compatible vectors and isomorphic, and isomorphic groups
/// when nilpotent. Vectors free of `Unknown` flags are grouped by exact
/// equality and each member is checked against its group's first
/// presentation, which covers all pairs by transitivity. Vectors with
/// `Unknown` flags are checked against every vector they may equal.
pub fn sylow_vectors(bound: u64, options: DecompositionOptions) -> Result<Check> {
    let groups = presentations_up_to(bound);
    let vectors: Vec<QGInvariantVector> = groups
        .par_iter()
        .map(|g| qg_invariant_vector(g, &options))
        .collect::<Result<_>>()?;
    let key = |v: &QGInvariantVector| {
        let comps: Vec<_> = v
            .components
            .iter()
            .map(|c| (c.degree, c.center.clone(), c.division_flag))
            .collect();
        (
            v.order,
            v.abelianization.clone(),
            v.conjugacy_classes,
            v.cyclic_subgroup_classes,
            comps,
        )
    };
    let unknown = |v: &QGInvariantVector| {
        v.components
            .iter()
            .any(|c| c.division_flag == crate::wedderburn::DivisionFlag::Unknown)
    };
    let mut representative = BTreeMap::new();
    let mut pairs = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if unknown(v) {
            for (j, w) in vectors.iter().enumerate() {
                if j != i && !(unknown(w) && j < i) && compare_vectors(v, w).may_be_equal() {
                    pairs.push((i, j));
                }
            }
        } else {
            match representative.get(&key(v)) {
                Some(&r) => pairs.push((r, i)),
                None => {
                    representative.insert(key(v), i);
                }
            }
        }
    }
    let tasks = pairs
        .into_iter()
        .map(|(i, j)| {
            let (g, h) = (groups[i], groups[j]);
            let (vg, vh) = (vectors[i].clone(), vectors[j].clone());
            Task::new(format!("{g} {h}"), move || {
                let r = sylow_isomorphism_check_with(&g, &h, &vg, &vh, &options)?;
                Ok(if r.passed {
                    Outcome::Pass
                } else {
                    Outcome::Fail(format!(
                        "pi equal {}, sylow {:?}, nilpotent isomorphic {:?}",
                        r.pi_equal,
                        r.sylow.iter().map(|s| (s.p, s.isomorphic)).collect::<Vec<_>>(),
                        r.nilpotent_isomorphic
                    ))
                })
            })
        })
        .collect();
    Ok(Check {
        name: "invariants.sylow_vectors",
        tasks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    /// Largest group order swept.
    pub bound: u64,
    /// Primes for the `p`-group families.
    pub primes: Vec<u64>,
    pub cap: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bound > self.cap {
            return Err(Error::CapExceeded {
                order: self.bound,
                cap: self.cap,
            });
        }
        if self.primes.is_empty() {
            return Err(Error::Precondition("no primes given".into()));
        }
        for &p in &self.primes {
            crate::numtheory::require_prime(p)?;
        }
        Ok(())
    }

    fn options(&self) -> DecompositionOptions {
        DecompositionOptions {
            cap: self.cap,
            check_orthogonality: true,
        }
    }

    fn bounds(&self) -> Vec<(u64, u64)> {
        self.primes.iter().map(|&p| (p, self.bound)).collect()
    }
}

/// Every check family at the scale fixed by `config`. The number theory
/// grids use `|R| <= 100` and `m <= 6`; `π`-related checks use all
/// presentations of order at most the bound.
pub fn sweep_checks(config: &SweepConfig) -> Result<Vec<Check>> {
    config.validate()?;
    let (bound, cap, options, bounds) = (config.bound, config.cap, config.options(), config.bounds());
    let small_primes: Vec<u64> = config.primes.iter().copied().filter(|&p| p <= 7).collect();
    let mut checks = vec![
        power_closed_forms(&small_primes, 100, 6),
        cyclotomic_closed_form(&small_primes, 100, 6),
        cyclotomic_divisor_sum(bound),
        power_law(bound.min(64)),
        abelianization_form(&bounds),
        pi_signatures(bound, cap),
        eps1_cyclic_class_counts(&bounds, cap),
    ];
    if config.primes.contains(&2) {
        checks.push(epsm1_class_counts(bound, cap));
    }
    checks.push(cyclic_conjugacy_criterion(&bounds, cap));
    checks.push(wedderburn_identities(bound, options));
    checks.push(classification(&bounds, cap));
    checks.push(separation(&bounds, options));
    if config.primes.contains(&2) {
        checks.push(center_criteria(bound, options));
    }
    checks.push(p_component_sums(bound, options));
    checks.push(sylow_vectors(bound, options)?);
    Ok(checks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub config: SweepConfig,
    pub checks: Vec<CheckSummary>,
    pub all_passed: bool,
    pub note: &'static str,
}

pub fn run_sweep(
    config: &SweepConfig,
    resume: &Checkpoint,
    on_done: &(dyn Fn(&str, &str, bool) + Sync),
) -> Result<SweepReport> {
    let checks: Vec<CheckSummary> = sweep_checks(config)?
        .iter()
        .map(|c| run_check(c, resume, on_done))
        .collect();
    Ok(SweepReport {
        schema: SCHEMA_VERSION,
        config: config.clone(),
        all_passed: checks.iter().all(CheckSummary::all_passed),
        checks,
        note: PROXY_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkpoint_round_trip() {
        let text = [
            checkpoint_line("a", "mc(1,1,0,0)", true),
            checkpoint_line("b", "x y", false),
        ]
        .join("\n");
        let cp = parse_checkpoint(&format!("{text}\nmalformed\n"));
        assert_eq!(cp.len(), 2);
        assert_eq!(cp[&("b".to_string(), "x y".to_string())], false);
    }

    #[test]
    fn resumed_items_are_not_rerun() {
        let check = Check {
            name: "demo",
            tasks: vec![
                Task::new("one", || Ok(Outcome::Pass)),
                Task::new("two", || Err(Error::Internal("boom".into()))),
            ],
        };
        let mut resume = Checkpoint::new();
        resume.insert(("demo".into(), "two".into()), true);
        let done = std::sync::Mutex::new(Vec::new());
        let s = run_check(&check, &resume, &|_, item, _| {
            done.lock().unwrap().push(item.to_string())
        });
        assert_eq!((s.passed, s.failed, s.resumed), (2, 0, 1));
        assert_eq!(*done.lock().unwrap(), vec!["one".to_string()]);
        let s = run_check(&check, &Checkpoint::new(), &|_, _, _| {});
        assert_eq!(s.failed, 1);
        assert!(s.first_failures[0].detail.contains("boom"));
    }

    #[test]
    fn small_sweep_families_pass() {
        let options = DecompositionOptions::default();
        for check in [
            eps1_cyclic_class_counts(&[(2, 16), (3, 27)], 64),
            epsm1_class_counts(32, 64),
            cyclic_conjugacy_criterion(&[(2, 16), (3, 27)], 64),
            power_closed_forms(&[2, 3], 20, 4),
            cyclotomic_closed_form(&[2, 3], 20, 4),
            cyclotomic_divisor_sum(30),
            power_law(12),
            abelianization_form(&[(2, 32), (3, 27)]),
            pi_signatures(30, 64),
            wedderburn_identities(24, options),
            classification(&[(2, 16)], 64),
            separation(&[(2, 16)], options),
            p_component_sums(24, options),
            sylow_vectors(24, options).unwrap(),
        ] {
            let s = run_check(&check, &Checkpoint::new(), &|_, _, _| {});
            assert!(s.all_passed() && s.passed > 0, "{s:?}");
        }
    }
}
