//! `metacyclic`: command-line front end for metacyclic groups and their
//! rational group algebras.
//!
//! Exit status: 0 when every check passes, 1 when a check or validation
//! fails, 2 on usage errors (bad arguments, unparsable literals, caps).

use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;

use clap::{Parser, Subcommand};
use serde::Serialize;

use metacyclic::counting::{
    conjugacy_classes_by_cyclotomic_sum, count_conjugacy_classes_epsm1, count_cyclic_classes_eps1,
};
use metacyclic::group::presentation::ConsistencyReport;
use metacyclic::group::{
    brute_force_isomorphic, hall_subgroup, pi_signature, sylow_subgroup, CanonicalPParams, ClauseReport,
    Epsilon, FiniteGroup, GroupLiteral, MetacyclicPresentation, PiSignature,
};
use metacyclic::invariants::{
    classify_small_metacyclic, compare_vectors, isop_decide, qg_invariant_vector, Comparison,
    QGInvariantVector, PROXY_NOTE,
};
use metacyclic::sweep::{
    checkpoint_line, parse_checkpoint, run_sweep, SweepConfig, SweepReport, SCHEMA_VERSION,
};
use metacyclic::wedderburn::{
    wedderburn_decomposition, DecompositionOptions, SimpleComponentDescriptor, DEFAULT_ALGEBRA_CAP,
};
use metacyclic::Error;

/// Hard limit on group orders accepted from the command line.
const HARD_CAP: u64 = 1024;

#[derive(Parser, Debug)]
#[command(
    name = "metacyclic",
    version,
    about = "Metacyclic groups and their rational group algebras"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest group order handled by table-based computations.
    #[arg(long, global = true, default_value_t = DEFAULT_ALGEBRA_CAP)]
    cap: u64,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a literal clause by clause.
    Validate { spec: String },
    /// Class counts, by enumeration and by formula where one applies.
    Counts { spec: String },
    /// Wedderburn components of the rational group algebra.
    Wedderburn { spec: String },
    /// Decide isomorphism of two groups and compare their invariant vectors.
    Iso { left: String, right: String },
    /// π-signature with Sylow and Hall subgroups.
    Pi { spec: String },
    /// Run every check family up to a bound.
    Sweep {
        #[arg(long, default_value_t = 64)]
        bound: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u64>,
        /// Progress file: completed items are appended and skipped on rerun.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Canonical tuples against isomorphism classes for prime-power orders.
    Classify {
        #[arg(long, default_value_t = 64)]
        bound: u64,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::CapExceeded { .. } | Error::NotPrime(_) | Error::Precondition(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

/// Rendered output and whether every check in it passed.
struct Output {
    text: String,
    passed: bool,
}

fn render<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(value).expect("serializable");
        s.push('\n');
        s
    } else {
        text()
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

fn envelope<'a, T: Serialize>(command: &'a str, body: T) -> Envelope<'a, T> {
    Envelope {
        schema: SCHEMA_VERSION,
        command,
        body,
    }
}

fn parse(spec: &str) -> Result<GroupLiteral, Failure> {
    GroupLiteral::parse(spec).map_err(|e| Failure::Usage(format!("{spec:?}: {e}")))
}

fn group(spec: &str, cap: u64) -> Result<MetacyclicPresentation, Failure> {
    let g = parse(spec)?
        .presentation()
        .map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
    if g.order() > cap {
        return Err(Failure::Usage(format!(
            "{spec} has order {} above the cap {cap}",
            g.order()
        )));
    }
    Ok(g)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Validation {
    Presentation {
        literal: String,
        clauses: ConsistencyReport,
        valid: bool,
    },
    Canonical {
        literal: String,
        clauses: ClauseReport,
        valid: bool,
    },
}

fn cmd_validate(spec: &str, json: bool) -> Result<Output, Failure> {
    let (v, lines, valid) = match parse(spec)? {
        GroupLiteral::Presentation { m, n, s, r } => {
            let c = MetacyclicPresentation::consistency(m, n, s, r);
            let lines = vec![
                ("m, n positive", c.in_range),
                ("gcd(r, m) = 1", c.r_coprime_to_m),
                ("r^n = 1 mod m", c.r_power_n_is_one),
                ("s(r - 1) = 0 mod m", c.s_fixed_by_r),
            ];
            let literal = format!("mc({m},{n},{s},{r})");
            (
                Validation::Presentation {
                    literal,
                    clauses: c,
                    valid: c.holds(),
                },
                lines,
                c.holds(),
            )
        }
        GroupLiteral::Canonical(t) => {
            let c = t.clause_report(Default::default());
            let lines = vec![
                ("p prime", c.prime),
                ("(A)", c.a),
                ("(B)", c.b),
                ("(C)(a)", c.c_a),
                ("(C)(b)", c.c_b),
            ];
            (
                Validation::Canonical {
                    literal: t.to_string(),
                    clauses: c,
                    valid: c.holds(),
                },
                lines,
                c.holds(),
            )
        }
    };
    let text = render(json, &envelope("validate", &v), || {
        let mut s = format!("{}\n", spec.trim());
        for (name, ok) in &lines {
            s.push_str(&format!("  {name}: {}\n", mark(*ok)));
        }
        s.push_str(if valid { "valid\n" } else { "invalid\n" });
        s
    });
    Ok(Output { text, passed: valid })
}

#[derive(Serialize)]
struct Counts {
    group: MetacyclicPresentation,
    order: u64,
    conjugacy_classes: u64,
    cyclic_subgroup_classes: u64,
    components: u64,
    /// Closed-form counts when the literal is a canonical tuple.
    formula: Option<FormulaCounts>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FormulaCounts {
    CyclicSubgroupClasses {
        value: u64,
    },
    ConjugacyClasses {
        value: String,
        by_cyclotomic_sum: String,
    },
}

fn formula_counts(t: &CanonicalPParams) -> Option<FormulaCounts> {
    match t.epsilon {
        Epsilon::Plus => count_cyclic_classes_eps1(t)
            .ok()
            .map(|value| FormulaCounts::CyclicSubgroupClasses { value }),
        Epsilon::Minus => {
            let value = count_conjugacy_classes_epsm1(t).ok()?;
            let sum = conjugacy_classes_by_cyclotomic_sum(t).ok()?;
            Some(FormulaCounts::ConjugacyClasses {
                value: value.to_string(),
                by_cyclotomic_sum: sum.to_string(),
            })
        }
    }
}

fn cmd_counts(spec: &str, cap: u64, json: bool) -> Result<Output, Failure> {
    let g = group(spec, cap)?;
    let table = FiniteGroup::new(g, cap)?;
    let d = wedderburn_decomposition(&g, &options(cap))?;
    let formula = match parse(spec)? {
        GroupLiteral::Canonical(t) => formula_counts(&t),
        GroupLiteral::Presentation { .. } => None,
    };
    let c = Counts {
        group: g,
        order: g.order(),
        conjugacy_classes: table.conjugacy_classes().len() as u64,
        cyclic_subgroup_classes: table.cyclic_subgroup_classes().len() as u64,
        components: d.components.len() as u64,
        formula,
    };
    let passed = match &c.formula {
        Some(FormulaCounts::CyclicSubgroupClasses { value }) => *value == c.cyclic_subgroup_classes,
        Some(FormulaCounts::ConjugacyClasses {
            value,
            by_cyclotomic_sum,
        }) => *value == c.conjugacy_classes.to_string() && value == by_cyclotomic_sum,
        None => true,
    } && c.components == c.cyclic_subgroup_classes;
    let text = render(json, &envelope("counts", &c), || {
        let mut s = format!(
            "{g} order={}\nclasses={}, cyclic-subgroup-classes={}, components={}\n",
            c.order, c.conjugacy_classes, c.cyclic_subgroup_classes, c.components
        );
        match &c.formula {
            Some(FormulaCounts::CyclicSubgroupClasses { value }) => {
                s.push_str(&format!("formula cyclic-subgroup-classes={value}\n"))
            }
            Some(FormulaCounts::ConjugacyClasses {
                value,
                by_cyclotomic_sum,
            }) => s.push_str(&format!(
                "formula classes={value}, cyclotomic-sum classes={by_cyclotomic_sum}\n"
            )),
            None => {}
        }
        s
    });
    Ok(Output { text, passed })
}

fn options(cap: u64) -> DecompositionOptions {
    DecompositionOptions {
        cap,
        check_orthogonality: true,
    }
}

#[derive(Serialize)]
struct ComponentOut {
    descriptor: SimpleComponentDescriptor,
    h_order: usize,
    k_order: usize,
    normalizer_order: usize,
}

#[derive(Serialize)]
struct WedderburnOut {
    group: MetacyclicPresentation,
    order: u64,
    components: Vec<ComponentOut>,
}

fn cmd_wedderburn(spec: &str, cap: u64, json: bool) -> Result<Output, Failure> {
    let g = group(spec, cap)?;
    let d = wedderburn_decomposition(&g, &options(cap))?;
    let out = WedderburnOut {
        group: g,
        order: g.order(),
        components: d
            .components
            .iter()
            .map(|c| ComponentOut {
                descriptor: c.descriptor.clone(),
                h_order: c.pair.h.order(),
                k_order: c.pair.k.order(),
                normalizer_order: c.pair.normalizer.order(),
            })
            .collect(),
    };
    let text = render(json, &envelope("wedderburn", &out), || {
        let mut s = format!("{g} order={}\n", out.order);
        for c in &out.components {
            s.push_str(&format!(
                "  {}  [H:K]={} [N:H]={} [G:N]={}\n",
                c.descriptor,
                c.h_order / c.k_order,
                c.normalizer_order / c.h_order,
                out.order as usize / c.normalizer_order
            ));
        }
        s
    });
    Ok(Output { text, passed: true })
}

#[derive(Serialize)]
struct IsoOut {
    left: MetacyclicPresentation,
    right: MetacyclicPresentation,
    isomorphic: bool,
    /// `canonical_tuples` when both literals are valid canonical tuples of
    /// the same prime, else `brute_force`.
    decided_by: &'static str,
    vectors: Option<Comparison>,
    note: &'static str,
}

fn cmd_iso(left: &str, right: &str, cap: u64, json: bool) -> Result<Output, Failure> {
    let (g, h) = (group(left, cap)?, group(right, cap)?);
    let opts = options(cap);
    let vectors =
        |g: &MetacyclicPresentation, h: &MetacyclicPresentation| -> Result<Option<Comparison>, Failure> {
            if g.order() != h.order() {
                return Ok(None);
            }
            let (vg, vh): (QGInvariantVector, QGInvariantVector) =
                (qg_invariant_vector(g, &opts)?, qg_invariant_vector(h, &opts)?);
            Ok(Some(compare_vectors(&vg, &vh)))
        };
    let out = match (parse(left)?, parse(right)?) {
        (GroupLiteral::Canonical(t1), GroupLiteral::Canonical(t2)) if t1.p == t2.p => {
            let d = isop_decide(&t1, &t2, &opts)?;
            IsoOut {
                left: g,
                right: h,
                isomorphic: d.isomorphic,
                decided_by: "canonical_tuples",
                vectors: match d.separation {
                    Some(c) => Some(c),
                    None => vectors(&g, &h)?,
                },
                note: PROXY_NOTE,
            }
        }
        _ => IsoOut {
            left: g,
            right: h,
            isomorphic: g.order() == h.order() && brute_force_isomorphic(&g, &h, cap)?,
            decided_by: "brute_force",
            vectors: vectors(&g, &h)?,
            note: PROXY_NOTE,
        },
    };
    let consistent = !(out.isomorphic && out.vectors.as_ref().is_some_and(Comparison::is_distinct));
    let text = render(json, &envelope("iso", &out), || {
        let verdict = match (&out.isomorphic, &out.vectors) {
            (true, _) => "isomorphic".to_string(),
            (false, Some(Comparison::Distinct { field })) => format!("non-isomorphic: {field} differs"),
            (false, None) => "non-isomorphic: order differs".to_string(),
            (false, Some(_)) => "non-isomorphic: invariant vectors agree".to_string(),
        };
        format!("{verdict}\n")
    });
    Ok(Output {
        text,
        passed: consistent,
    })
}

#[derive(Serialize)]
struct PiOut {
    group: MetacyclicPresentation,
    signature: PiSignature,
    sylow: Vec<(u64, MetacyclicPresentation)>,
    hall: MetacyclicPresentation,
}

fn cmd_pi(spec: &str, cap: u64, json: bool) -> Result<Output, Failure> {
    let g = group(spec, cap)?;
    let signature = pi_signature(&g, cap)?;
    let pi: Vec<u64> = signature.pi.iter().copied().collect();
    let sylow = pi
        .iter()
        .map(|&p| Ok((p, sylow_subgroup(&g, p)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let out = PiOut {
        group: g,
        hall: hall_subgroup(&g, &pi)?,
        signature,
        sylow,
    };
    let text = render(json, &envelope("pi", &out), || {
        let set = |s: &std::collections::BTreeSet<u64>| {
            format!(
                "{{{}}}",
                s.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            )
        };
        let mut s = format!(
            "{g} pi={} pi'={}\n",
            set(&out.signature.pi),
            set(&out.signature.pi_prime)
        );
        for (p, sub) in &out.sylow {
            s.push_str(&format!("  sylow {p}: {sub}\n"));
        }
        s.push_str(&format!("  hall pi: {}\n", out.hall));
        s
    });
    Ok(Output { text, passed: true })
}

fn cmd_sweep(config: SweepConfig, checkpoint: Option<PathBuf>, json: bool) -> Result<Output, Failure> {
    if config.bound > HARD_CAP {
        return Err(Error::CapExceeded {
            order: config.bound,
            cap: HARD_CAP,
        }
        .into());
    }
    config.validate()?;
    let resume = match &checkpoint {
        Some(path) if path.exists() => parse_checkpoint(
            &std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        ),
        _ => Default::default(),
    };
    let file: Option<Mutex<File>> = match &checkpoint {
        Some(path) => Some(Mutex::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        )),
        None => None,
    };
    let on_done = |check: &str, item: &str, passed: bool| {
        if let Some(f) = &file {
            let mut f = f.lock().expect("checkpoint lock");
            writeln!(f, "{}", checkpoint_line(check, item, passed)).expect("checkpoint write");
        }
    };
    let report: SweepReport = run_sweep(&config, &resume, &on_done)?;
    let text = render(json, &report, || {
        let mut s = format!(
            "sweep bound={} primes={:?} cap={}\n",
            report.config.bound, report.config.primes, report.config.cap
        );
        for c in &report.checks {
            s.push_str(&format!(
                "{} {} {}/{}\n",
                mark(c.all_passed()),
                c.name,
                c.passed,
                c.passed + c.failed
            ));
            for f in &c.first_failures {
                s.push_str(&format!("    {}: {}\n", f.item, f.detail));
            }
        }
        s.push_str(&format!(
            "{}\n",
            if report.all_passed {
                "all checks pass"
            } else {
                "some checks fail"
            }
        ));
        s
    });
    Ok(Output {
        passed: report.all_passed,
        text,
    })
}

#[derive(Serialize)]
struct ClassifyRowOut {
    order: u64,
    p: u64,
    tuples: Vec<String>,
    classes: Vec<MetacyclicPresentation>,
    bijection: bool,
}

fn cmd_classify(bound: u64, cap: u64, json: bool) -> Result<Output, Failure> {
    let rows: Vec<ClassifyRowOut> = classify_small_metacyclic(bound, cap)?
        .into_iter()
        .map(|r| ClassifyRowOut {
            order: r.order,
            p: r.p,
            tuples: r.tuples.iter().map(|t| t.to_string()).collect(),
            classes: r.classes,
            bijection: r.bijection,
        })
        .collect();
    let passed = rows.iter().all(|r| r.bijection);
    let text = render(json, &envelope("classify", &rows), || {
        let mut s = String::from("order tuples classes bijection\n");
        for r in &rows {
            s.push_str(&format!(
                "{} {} {} {}\n",
                r.order,
                r.tuples.len(),
                r.classes.len(),
                mark(r.bijection)
            ));
        }
        s
    });
    Ok(Output { text, passed })
}

fn run(cli: Cli) -> Result<Output, Failure> {
    if cli.cap > HARD_CAP {
        return Err(Failure::Usage(format!(
            "--cap {} exceeds the hard cap {HARD_CAP}",
            cli.cap
        )));
    }
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let (cap, json) = (cli.cap, cli.json);
    match cli.command {
        Command::Validate { spec } => cmd_validate(&spec, json),
        Command::Counts { spec } => cmd_counts(&spec, cap, json),
        Command::Wedderburn { spec } => cmd_wedderburn(&spec, cap, json),
        Command::Iso { left, right } => cmd_iso(&left, &right, cap, json),
        Command::Pi { spec } => cmd_pi(&spec, cap, json),
        Command::Sweep {
            bound,
            primes,
            checkpoint,
        } => cmd_sweep(SweepConfig { bound, primes, cap }, checkpoint, json),
        Command::Classify { bound } => cmd_classify(bound, cap, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(out) => {
            let written = match &out_path {
                Some(path) => std::fs::write(path, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
