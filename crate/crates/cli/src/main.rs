//! `sufree`: build witness automata, apply operations, inspect semigroups
//! and atoms, and run the verification sweeps.
//!
//! Exit status: 0 when every asserted bound is met, 1 when one is missed,
//! 2 on usage, input or budget errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sufree::atoms::{atom_complexity, atom_dfa, atom_table_with, atoms_with, AtomBasis};
use sufree::classes::{in_bsf, in_vsf, in_wsf, vsf_generators, wsf_generators};
use sufree::exec::{Exec, Limits};
use sufree::ops::{
    boolean_with, concat_with, reverse_with, star_with, suffix_free_report_with, BooleanOp, Construction,
};
use sufree::semigroup::{colliding_pairs, focused_pairs, generate_with, transition_semigroup_with};
use sufree::verify::{
    reports_to_csv, reports_to_json, reports_to_text, search_subsemigroups, sort_reports, verify, verify_all,
    verify_semigroup_classes, verify_tables, Case, ComplexityReport, Measure, DEFAULT_ATOM_CONSTRUCTION_LIMIT,
};
use sufree::witnesses::{binary_product_pair, Family, WitnessId};
use sufree::{Dfa, NamedTransformation, TransitionSemigroup};

#[derive(Parser)]
#[command(name = "sufree", version, about = "Complexity of suffix-free regular languages")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Maximum states of a subset or product construction.
    #[arg(long, global = true, value_name = "N")]
    budget_states: Option<usize>,
    /// Maximum elements of a semigroup closure.
    #[arg(long, global = true, value_name = "N")]
    budget_elements: Option<usize>,
    /// Run sweeps on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a witness automaton.
    Witness {
        #[arg(value_enum)]
        family: WitnessFamily,
        #[arg(long)]
        n: usize,
        /// Left automaton size for `product-binary`.
        #[arg(long)]
        m: Option<usize>,
        /// Partial permutation of the role letters, e.g. `a,b,-`.
        #[arg(long)]
        dialect: Option<String>,
        /// Which automaton of `product-binary` to emit.
        #[arg(long, value_enum)]
        side: Option<Side>,
    },
    /// Apply an operation to automata read from interchange files.
    Op {
        #[arg(value_enum)]
        operation: Operation,
        input: PathBuf,
        second: Option<PathBuf>,
    },
    /// Transition semigroups.
    Semigroup {
        #[arg(value_enum)]
        action: SemigroupAction,
        #[command(flatten)]
        source: SemigroupSource,
    },
    /// Atoms of a minimal automaton.
    Atoms {
        #[arg(value_enum)]
        action: AtomsAction,
        /// Automaton file; defaults to the d6 witness of size `--n`.
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        /// Basis for `complexity`, e.g. `1,2` (empty string for the empty basis).
        #[arg(long)]
        basis: Option<String>,
    },
    /// Compare computed complexities with their bounds.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Closures of all small generator sets drawn from Bsf(n).
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_generators: usize,
    },
    /// Decide whether an automaton accepts a suffix-free language.
    SuffixFree { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessFamily {
    D5,
    D6,
    ProductBinary,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum Operation {
    Star,
    Concat,
    Reverse,
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemigroupAction {
    Generate,
    Classify,
    Collisions,
}

#[derive(Args)]
struct SemigroupSource {
    /// Automaton file whose transition semigroup is used.
    input: Option<PathBuf>,
    /// Use a named generator set instead of a file.
    #[arg(long, value_enum)]
    generators: Option<GeneratorSet>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeneratorSet {
    Vsf,
    Wsf,
}

#[derive(Clone, Copy, ValueEnum)]
enum AtomsAction {
    List,
    Complexity,
    Table,
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// One measure at one size.
    Measure {
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        /// `d5` or `d6` for the boolean operations.
        #[arg(long)]
        family: Option<String>,
    },
    /// Suffix-free atom table rows for n = 4..9.
    Tables {
        /// Rows up to this size are built from the witness.
        #[arg(long, default_value_t = DEFAULT_ATOM_CONSTRUCTION_LIMIT)]
        construct_up_to: usize,
    },
    /// Semigroup classes of the star, reversal and atom witnesses.
    Classes {
        /// Single size; defaults to 4..=7.
        #[arg(long)]
        n: Option<usize>,
    },
    /// The full default sweep.
    All,
}

struct Outcome {
    body: String,
    failed: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli.global, &outcome.body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(global: &Global, body: &str) -> Result<()> {
    match &global.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn limits(global: &Global) -> Limits {
    let mut l = Limits::default();
    if let Some(s) = global.budget_states {
        l.max_states = s;
    }
    if let Some(e) = global.budget_elements {
        l.max_elements = e;
    }
    l
}

fn exec(global: &Global) -> Exec {
    if global.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn read_dfa(path: &Path) -> Result<Dfa> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Dfa::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn render_dfa(d: &Dfa, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(d.to_json()),
        Format::Dot => Ok(d.to_dot()),
        Format::Text => Ok(format!(
            "states {}\nalphabet {}\ninitial {}\nfinals {:?}\n{}",
            d.states(),
            d.alphabet().iter().collect::<String>(),
            d.initial(),
            d.finals().to_vec(),
            d.alphabet().iter().zip(d.transformations()).map(|(c, t)| format!("{c} {t}\n")).collect::<String>()
        )),
        Format::Csv => bail!("csv output is not available for automata"),
    }
}

fn to_json<T: serde::Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let limits = limits(g);
    let exec = exec(g);
    match &cli.command {
        Command::Witness { family, n, m, dialect, side } => {
            witness(*family, *n, *m, dialect.as_deref(), *side, g.format).map(Outcome::ok)
        }
        Command::Op { operation, input, second } => {
            op(*operation, input, second.as_deref(), &limits, g.format).map(Outcome::ok)
        }
        Command::Semigroup { action, source } => semigroup(*action, source, &limits, exec, g.format).map(Outcome::ok),
        Command::Atoms { action, input, n, basis } => {
            atoms(*action, input.as_deref(), *n, basis.as_deref(), exec, g.format)
        }
        Command::Verify { target } => {
            let reports = match target {
                VerifyTarget::Measure { name, n, m, family } => {
                    let measure: Measure = name.parse()?;
                    let mut case = Case::new(measure, *n);
                    case.m = *m;
                    if let Some(f) = family {
                        case = case.with_family(f.parse::<Family>()?);
                    }
                    if measure.is_binary() && m.is_none() {
                        case.m = Some(*n);
                    }
                    vec![verify(case, &limits, exec)?]
                }
                VerifyTarget::Tables { construct_up_to } => verify_tables(*construct_up_to, exec)?,
                VerifyTarget::Classes { n } => {
                    let ns: Vec<usize> = match n {
                        Some(n) => vec![*n],
                        None => (4..=7).collect(),
                    };
                    let mut all = Vec::new();
                    for n in ns {
                        all.extend(verify_semigroup_classes(n, &limits, exec)?);
                    }
                    sort_reports(&mut all);
                    all
                }
                VerifyTarget::All => verify_all(&limits, exec)?,
            };
            render_reports(&reports, g.format)
        }
        Command::Search { n, max_generators } => {
            let r = search_subsemigroups(*n, *max_generators, &limits, exec)?;
            let body = match g.format {
                Format::Json => to_json(&r),
                Format::Text => format!(
                    "n={} generators<={} candidates={} subsets={} suffix-free closures={} max={} \
                     colliding-and-focused={} complete={}\n",
                    r.n,
                    r.max_generators,
                    r.candidates,
                    r.subsets_examined,
                    r.suffix_free_closures,
                    r.max_cardinality,
                    r.colliding_and_focused,
                    r.complete
                ),
                _ => bail!("search supports json and text output"),
            };
            Ok(Outcome { body, failed: !r.complete })
        }
        Command::SuffixFree { input } => {
            let r = suffix_free_report_with(&read_dfa(input)?, &limits)?;
            let body = match g.format {
                Format::Json => to_json(&r),
                Format::Text => match &r.violation {
                    None => format!("suffix-free: yes\nsemigroup in Bsf: {}\n", r.semigroup_in_bsf),
                    Some((w, s)) => format!(
                        "suffix-free: no ({s:?} is a suffix of {w:?})\nsemigroup in Bsf: {}\n",
                        r.semigroup_in_bsf
                    ),
                },
                _ => bail!("suffix-free supports json and text output"),
            };
            Ok(Outcome::ok(body))
        }
    }
}

fn render_reports(reports: &[ComplexityReport], format: Format) -> Result<Outcome> {
    let body = match format {
        Format::Json => reports_to_json(reports) + "\n",
        Format::Text => reports_to_text(reports),
        Format::Csv => reports_to_csv(reports),
        Format::Dot => bail!("dot output is only available for automata"),
    };
    Ok(Outcome { body, failed: reports.iter().any(ComplexityReport::failed) })
}

fn witness(
    family: WitnessFamily,
    n: usize,
    m: Option<usize>,
    dialect: Option<&str>,
    side: Option<Side>,
    format: Format,
) -> Result<String> {
    match family {
        WitnessFamily::D5 | WitnessFamily::D6 => {
            if side.is_some() || m.is_some() {
                bail!("--side and --m apply to product-binary only");
            }
            let f = if matches!(family, WitnessFamily::D5) { Family::D5 } else { Family::D6 };
            render_dfa(&WitnessId::new(f, n, dialect).build()?, format)
        }
        WitnessFamily::ProductBinary => {
            if dialect.is_some() {
                bail!("product-binary takes no dialect");
            }
            let m = m.ok_or_else(|| anyhow!("product-binary needs --m"))?;
            let (l, r) = binary_product_pair(m, n)?;
            match side {
                Some(Side::Left) => render_dfa(&l, format),
                Some(Side::Right) => render_dfa(&r, format),
                None => Ok(format!("{}{}", render_dfa(&l, format)?, render_dfa(&r, format)?)),
            }
        }
    }
}

fn op(operation: Operation, input: &Path, second: Option<&Path>, limits: &Limits, format: Format) -> Result<String> {
    let d1 = read_dfa(input)?;
    let binary = |f: &dyn Fn(&Dfa, &Dfa) -> sufree::Result<Construction>| -> Result<Construction> {
        let path = second.ok_or_else(|| anyhow!("this operation needs two automata"))?;
        Ok(f(&d1, &read_dfa(path)?)?)
    };
    let unary = || -> Result<()> {
        if second.is_some() {
            bail!("this operation takes one automaton");
        }
        Ok(())
    };
    let c = match operation {
        Operation::Star => {
            unary()?;
            star_with(&d1, limits)?
        }
        Operation::Reverse => {
            unary()?;
            reverse_with(&d1, limits)?
        }
        Operation::Concat => binary(&|a, b| concat_with(a, b, limits))?,
        Operation::Union => binary(&|a, b| boolean_with(a, b, BooleanOp::Union, limits))?,
        Operation::Intersection => binary(&|a, b| boolean_with(a, b, BooleanOp::Intersection, limits))?,
        Operation::Difference => binary(&|a, b| boolean_with(a, b, BooleanOp::Difference, limits))?,
        Operation::SymmetricDifference => binary(&|a, b| boolean_with(a, b, BooleanOp::SymmetricDifference, limits))?,
    };
    match format {
        Format::Text => Ok(format!("states {} (raw {})\n", c.dfa.states(), c.raw_states)),
        f => render_dfa(&c.dfa, f),
    }
}

fn semigroup_from(source: &SemigroupSource, limits: &Limits, exec: Exec) -> Result<TransitionSemigroup> {
    match (&source.input, source.generators) {
        (Some(path), None) => Ok(transition_semigroup_with(&read_dfa(path)?, limits.max_elements, exec)?),
        (None, Some(set)) => {
            let n = source.n.ok_or_else(|| anyhow!("--generators needs --n"))?;
            let gens: Vec<NamedTransformation> = match set {
                GeneratorSet::Vsf => vsf_generators(n)?,
                GeneratorSet::Wsf => wsf_generators(n)?,
            };
            Ok(generate_with(n, &gens, limits.max_elements, exec)?)
        }
        _ => bail!("give either an automaton file or --generators"),
    }
}

fn semigroup(
    action: SemigroupAction,
    source: &SemigroupSource,
    limits: &Limits,
    exec: Exec,
    format: Format,
) -> Result<String> {
    let s = semigroup_from(source, limits, exec)?;
    let elements = s.sorted_elements();
    let value = match action {
        SemigroupAction::Generate => json!({
            "degree": s.degree(),
            "size": s.len(),
            "generators": s.generators(),
            "elements": elements,
        }),
        SemigroupAction::Classify => {
            let count = |p: fn(&sufree::Transformation) -> bool| elements.iter().filter(|t| p(t)).count();
            json!({
                "degree": s.degree(),
                "size": s.len(),
                "in_bsf": count(in_bsf),
                "in_vsf": count(in_vsf),
                "in_wsf": count(in_wsf),
                "subsemigroup_of_bsf": count(in_bsf) == s.len(),
                "subsemigroup_of_vsf": count(in_vsf) == s.len(),
                "subsemigroup_of_wsf": count(in_wsf) == s.len(),
            })
        }
        SemigroupAction::Collisions => {
            let show = |v: std::collections::BTreeSet<sufree::StatePair>| -> Vec<String> {
                v.into_iter().map(|p| p.to_string()).collect()
            };
            json!({
                "degree": s.degree(),
                "size": s.len(),
                "colliding": show(colliding_pairs(&s)),
                "focused": show(focused_pairs(&s)),
            })
        }
    };
    match format {
        Format::Json => Ok(to_json(&value)),
        Format::Text => Ok(text_from_json(&value)),
        _ => bail!("semigroup supports json and text output"),
    }
}

/// `key value` lines for the top-level fields of a JSON object.
fn text_from_json(value: &serde_json::Value) -> String {
    let mut out = String::new();
    if let Some(map) = value.as_object() {
        for (k, v) in map {
            out.push_str(&format!("{k} {v}\n"));
        }
    }
    out
}

fn parse_basis(text: &str) -> Result<AtomBasis> {
    let states = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().with_context(|| format!("bad state {s:?} in basis")))
        .collect::<Result<Vec<_>>>()?;
    Ok(AtomBasis::new(states))
}

fn atoms(
    action: AtomsAction,
    input: Option<&Path>,
    n: Option<usize>,
    basis: Option<&str>,
    exec: Exec,
    format: Format,
) -> Result<Outcome> {
    let d = match (input, n) {
        (Some(path), None) => read_dfa(path)?,
        (None, Some(n)) => WitnessId::new(Family::D6, n, None).build()?,
        _ => bail!("give either an automaton file or --n"),
    };
    match action {
        AtomsAction::List => {
            let bases = atoms_with(&d, exec)?;
            let body = match format {
                Format::Json => to_json(&bases),
                Format::Text | Format::Csv => bases.iter().map(|b| format!("{b}\n")).collect(),
                Format::Dot => bail!("dot output is only available for automata"),
            };
            Ok(Outcome::ok(body))
        }
        AtomsAction::Complexity => {
            let b = parse_basis(basis.ok_or_else(|| anyhow!("complexity needs --basis"))?)?;
            if format == Format::Dot {
                return Ok(Outcome::ok(atom_dfa(&d, &b)?.to_dot()));
            }
            let k = atom_complexity(&d, &b)?;
            let body = match format {
                Format::Json => to_json(&json!({ "basis": b, "complexity": k })),
                _ => format!("{b} {k}\n"),
            };
            Ok(Outcome::ok(body))
        }
        AtomsAction::Table => {
            let t = atom_table_with(&d, exec)?;
            let body = match format {
                Format::Json => to_json(&t),
                Format::Csv => t.to_csv(),
                Format::Text => {
                    let mut s: String = t
                        .rows
                        .iter()
                        .map(|r| {
                            format!(
                                "{} {} bound {} {}\n",
                                r.basis,
                                r.complexity,
                                r.bound,
                                if r.met { "met" } else { "MISSED" }
                            )
                        })
                        .collect();
                    let maxima: Vec<String> = t.maxima.iter().map(usize::to_string).collect();
                    s.push_str(&format!("maxima by |S|: {}\n", maxima.join(" ")));
                    s
                }
                Format::Dot => bail!("dot output is only available for automata"),
            };
            Ok(Outcome { body, failed: !t.all_met() })
        }
    }
}
