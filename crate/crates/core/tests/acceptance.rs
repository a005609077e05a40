//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::Instant;

use metacyclic::group::{GroupLiteral, MetacyclicPresentation};
use metacyclic::sweep::{self, Check, CheckSummary, Checkpoint};
use metacyclic::wedderburn::{
    wedderburn_decomposition, AbelianFieldDescriptor, DecompositionOptions, DivisionFlag,
    SimpleComponentDescriptor,
};

struct Verdict {
    passed: bool,
    detail: String,
}

fn summarize(checks: Vec<Check>) -> Verdict {
    let summaries: Vec<CheckSummary> = checks
        .iter()
        .map(|c| sweep::run_check(c, &Checkpoint::new(), &|_, _, _| {}))
        .collect();
    let passed = summaries.iter().all(|s| s.all_passed() && s.passed > 0);
    let mut parts = Vec::new();
    for s in &summaries {
        parts.push(format!("{} {}/{}", s.name, s.passed, s.passed + s.failed));
        for f in &s.first_failures {
            parts.push(format!("[{}: {}]", f.item, f.detail));
        }
    }
    Verdict {
        passed,
        detail: parts.join(", "),
    }
}

fn options(cap: u64) -> DecompositionOptions {
    DecompositionOptions {
        cap,
        check_orthogonality: true,
    }
}

fn descriptor(m: u64, k: u64, x: u64, y: u64, flag: DivisionFlag) -> SimpleComponentDescriptor {
    SimpleComponentDescriptor {
        matrix_size: 1,
        m,
        k,
        x,
        y,
        degree: k,
        center: AbelianFieldDescriptor::rationals(),
        division_flag: flag,
    }
}

/// Order-8 groups: four rational components from `G/G' = C_2 × C_2`
/// (conductors 1, 2, 2, 2) and one degree-2 component over `Q` on the
/// faithful quotient, a quaternion division algebra for `Q_8` (`u² = -1`)
/// and `M_2(Q)` for `D_8` (`u² = 1`).
fn order_eight_descriptors() -> Verdict {
    let linear = || {
        let mut v = vec![descriptor(1, 1, 0, 0, DivisionFlag::Split)];
        v.extend((0..3).map(|_| descriptor(2, 1, 1, 0, DivisionFlag::Split)));
        v
    };
    let mut q8_expected = linear();
    q8_expected.push(descriptor(4, 2, 3, 2, DivisionFlag::Division));
    let mut d8_expected = linear();
    d8_expected.push(descriptor(4, 2, 3, 0, DivisionFlag::Split));
    let mut detail = Vec::new();
    let mut passed = true;
    for (literal, expected) in [
        ("mcp(2,2,1,1,2,-1)", q8_expected),
        ("mcp(2,2,1,2,2,-1)", d8_expected),
    ] {
        let g: MetacyclicPresentation = GroupLiteral::parse(literal)
            .and_then(|l| l.presentation())
            .expect("literal");
        let mut got = wedderburn_decomposition(&g, &options(128))
            .expect("decomposition")
            .descriptors();
        got.sort();
        let mut expected = expected;
        expected.sort();
        let ok = got == expected;
        passed &= ok;
        detail.push(format!(
            "{literal} {}",
            if ok {
                "matches".to_string()
            } else {
                format!("got {got:?}")
            }
        ));
    }
    Verdict {
        passed,
        detail: detail.join(", "),
    }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        (
            "cyclic-subgroup class formula, eps = 1, orders <= 2^8 / 3^5 / 5^4",
            Box::new(|| summarize(vec![sweep::eps1_cyclic_class_counts(&[(2, 256), (3, 243), (5, 625)], 1024)])),
        ),
        (
            "conjugacy class formula and cyclotomic sum, eps = -1, order <= 2^9",
            Box::new(|| summarize(vec![sweep::epsm1_class_counts(512, 512)])),
        ),
        (
            "cyclic-subgroup conjugacy congruence, eps = 1, orders <= 2^7 / 3^5",
            Box::new(|| summarize(vec![sweep::cyclic_conjugacy_criterion(&[(2, 128), (3, 243)], 512)])),
        ),
        (
            "valuation, order, power and geometric-sum closed forms, cyclotomic class count (p <= 7, m <= 8, |R| <= 200)",
            Box::new(|| {
                summarize(vec![
                    sweep::power_closed_forms(&[2, 3, 5, 7], 200, 8),
                    sweep::cyclotomic_closed_form(&[2, 3, 5, 7], 200, 8),
                    sweep::cyclotomic_divisor_sum(200),
                ])
            }),
        ),
        (
            "Artin count, dimension and center sums, every presentation of order <= 128",
            Box::new(|| summarize(vec![sweep::wedderburn_identities(128, options(128))])),
        ),
        ("order-8 quaternion and dihedral decompositions", Box::new(order_eight_descriptors)),
        (
            "real/imaginary center and degree-center criteria, eps = -1, order <= 2^9",
            Box::new(|| summarize(vec![sweep::center_criteria(512, options(512))])),
        ),
        (
            "canonical tuples biject with isomorphism classes, orders <= 64 / 81",
            Box::new(|| summarize(vec![sweep::classification(&[(2, 64), (3, 81)], 128)])),
        ),
        (
            "invariant vectors separate distinct tuples, orders <= 2^7 / 3^4",
            Box::new(|| summarize(vec![sweep::separation(&[(2, 128), (3, 81)], options(128))])),
        ),
        (
            "pi signatures, smallest prime, p-component sums, Sylow vectors, m*n <= 100",
            Box::new(|| {
                let opts = DecompositionOptions {
                    cap: 128,
                    check_orthogonality: false,
                };
                summarize(vec![
                    sweep::pi_signatures(100, 128),
                    sweep::p_component_sums(100, opts),
                    sweep::sylow_vectors(100, opts).expect("invariant vectors"),
                ])
            }),
        ),
    ];
    let mut all = true;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        all &= v.passed;
        println!(
            "criterion {}: {} {} ({:.1}s) {}",
            n + 1,
            if v.passed { "PASS" } else { "FAIL" },
            name,
            start.elapsed().as_secs_f64(),
            v.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
