use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use indecomp_core::corpus::{CorpusOptions, Family};
use indecomp_core::lattice::to_dot;
use indecomp_core::verify::{self, CsaReport, SurveyReport, VerificationReport};
use indecomp_core::{classify, order_cap, ClassLabel, Error, FiniteGroup, GroupSpec, MAX_ORDER};

const EXIT_OK: u8 = 0;
/// A sweep found a disagreement or a non-abelian CSA group.
const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

/// Finite groups all of whose subgroups are directly indecomposable.
///
/// Group specs: C(n) cyclic, Q(n) generalized quaternion of order 2^n,
/// M(m,n,r) metacyclic, PQ(p,a,q,b,r) semidirect Z/p^a by Z/q^b,
/// S(n) symmetric, D(n) dihedral of order 2n, A(f1,f2,...) abelian,
/// X(spec,spec) direct product, Sub(spec,k) the k-th subgroup of spec.
#[derive(Parser)]
#[command(name = "indecomp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one group.
    Classify {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare the classifier with the brute-force oracle over a corpus.
    Verify {
        #[arg(long, default_value_t = 64)]
        max_order: usize,
        /// Comma-separated families (default: all).
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Subgroup lattice statistics for one group.
    Survey {
        spec: String,
        /// Write the Hasse diagram in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Look for a non-abelian CSA group in the corpus.
    CsaCheck {
        #[arg(long, default_value_t = 64)]
        max_order: usize,
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OrderTooLarge { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify { spec, json } => cmd_classify(&spec, json),
        Command::Verify {
            max_order,
            families,
            json,
        } => cmd_verify(max_order, &families, json),
        Command::Survey { spec, dot, json } => cmd_survey(&spec, dot, json),
        Command::CsaCheck {
            max_order,
            families,
            json,
        } => cmd_csa_check(max_order, &families, json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            if f.code == EXIT_USAGE {
                eprintln!("run `indecomp --help` for the spec grammar and options");
            }
            ExitCode::from(f.code)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit(&text);
}

fn build_capped(spec: &str) -> Result<(GroupSpec, FiniteGroup), Failure> {
    let spec: GroupSpec = spec.parse()?;
    let cap = order_cap();
    if let Some(order) = spec.order_hint().filter(|&o| o > cap as u64) {
        return Err(Error::OrderTooLarge {
            order: order.min(usize::MAX as u64) as usize,
            cap,
        }
        .into());
    }
    let g = spec.build()?;
    if g.order() > cap {
        return Err(Error::OrderTooLarge {
            order: g.order(),
            cap,
        }
        .into());
    }
    Ok((spec, g))
}

fn corpus_options(max_order: usize, families: &[String]) -> Result<CorpusOptions, Failure> {
    if max_order == 0 {
        return Err(usage("--max-order must be at least 1"));
    }
    if max_order > MAX_ORDER {
        return Err(usage(format!("--max-order must be at most {MAX_ORDER}")));
    }
    let families = families
        .iter()
        .map(|f| f.parse::<Family>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CorpusOptions::new(max_order).with_families(families))
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    spec: &'a GroupSpec,
    order: usize,
    classification: &'a ClassLabel,
}

fn cmd_classify(spec: &str, json: bool) -> Result<u8, Failure> {
    let (spec, g) = build_capped(spec)?;
    let label = classify(&g);
    if json {
        print_json(&ClassifyOutput {
            spec: &spec,
            order: g.order(),
            classification: &label,
        });
        return Ok(EXIT_OK);
    }
    let mut out = format!("{label}\n");
    if let ClassLabel::NotStronglyIndecomposable { witness: Some(w) } = &label {
        let names = |m: &indecomp_core::Mask| {
            let gens = g.generating_sequence(m);
            let names: Vec<String> = gens.iter().map(|&x| g.element_name(x)).collect();
            format!("<{}>", names.join(", "))
        };
        let (a, b) = w.factor_orders();
        let _ = writeln!(
            out,
            "  witness {} of order {} = {} (order {a}) x {} (order {b})",
            names(&w.subgroup),
            w.order(),
            names(&w.left),
            names(&w.right),
        );
    }
    emit(&out);
    Ok(EXIT_OK)
}

fn render_verification(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "corpus: {}", r.corpus.description);
    for (family, count) in &r.corpus.per_family_counts {
        let _ = writeln!(out, "  {family:<12} {count}");
    }
    let _ = writeln!(out, "groups checked: {}", r.groups_checked);
    let _ = writeln!(out, "agreements:     {}", r.agreements);
    let _ = writeln!(out, "disagreements:  {}", r.disagreements.len());
    for d in &r.disagreements {
        let _ = writeln!(
            out,
            "  {}: classifier {}, oracle {}",
            d.spec, d.classifier, d.oracle
        );
    }
    let si = r
        .results
        .iter()
        .filter(|x| x.oracle_strongly_indecomposable)
        .count();
    let _ = writeln!(out, "strongly indecomposable: {si}");
    let _ = writeln!(out, "elapsed: {} ms", r.elapsed_ms);
    if r.corpus.partial {
        let _ = writeln!(
            out,
            "partial: order bound lowered to {} by {}",
            r.corpus.max_order,
            indecomp_core::MAX_ORDER_ENV
        );
    }
    out
}

fn cmd_verify(max_order: usize, families: &[String], json: bool) -> Result<u8, Failure> {
    let opts = corpus_options(max_order, families)?;
    let report = verify::run_verification(&opts, order_cap())?;
    if json {
        print_json(&report);
    } else {
        emit(&render_verification(&report));
    }
    Ok(if report.corpus.partial {
        EXIT_CAP
    } else if report.all_agree() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn render_survey(r: &SurveyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: order {}", r.ambient, r.order);
    let _ = writeln!(out, "subgroups:          {}", r.subgroup_count);
    let _ = writeln!(out, "normal subgroups:   {}", r.normal_count);
    let _ = writeln!(out, "conjugacy classes:  {}", r.conjugacy_classes);
    let _ = writeln!(out, "isomorphism types:  {}", r.classes.len());
    let _ = writeln!(
        out,
        "strongly indecomposable: {}",
        r.strongly_indecomposable
    );
    let _ = writeln!(
        out,
        "{:>6} {:>6} {:>7}  {:<16} classification",
        "order", "count", "normal", "representative"
    );
    for c in &r.classes {
        let _ = writeln!(
            out,
            "{:>6} {:>6} {:>7}  {:<16} {}",
            c.order,
            c.subgroups,
            c.normal_subgroups,
            c.representative.to_string(),
            c.classification
        );
    }
    out
}

fn cmd_survey(spec: &str, dot: Option<PathBuf>, json: bool) -> Result<u8, Failure> {
    let (spec, g) = build_capped(spec)?;
    let report = verify::survey_group(&spec, &g);
    if let Some(path) = dot {
        std::fs::write(&path, to_dot(&g, &spec.to_string())).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
    }
    if json {
        print_json(&report);
    } else {
        emit(&render_survey(&report));
    }
    Ok(EXIT_OK)
}

fn render_csa(r: &CsaReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "corpus: {}", r.corpus.description);
    let _ = writeln!(out, "groups checked:     {}", r.groups_checked);
    let _ = writeln!(out, "abelian (all CSA):  {}", r.abelian_groups);
    let _ = writeln!(out, "non-abelian:        {}", r.non_abelian_groups);
    let _ = writeln!(out, "non-abelian CSA:    {}", r.non_abelian_csa.len());
    for s in &r.non_abelian_csa {
        let _ = writeln!(out, "  {s}");
    }
    let _ = writeln!(out, "invalid witnesses:  {}", r.invalid_witnesses.len());
    for s in &r.invalid_witnesses {
        let _ = writeln!(out, "  {s}");
    }
    for x in r.results.iter().filter(|x| !x.abelian) {
        if let Some(w) = &x.witness {
            let _ = writeln!(out,
                "  {}: maximal abelian subgroup of order {} is not malnormal (conjugating element {})",
                x.spec,
                w.subgroup.len(),
                w.element
            );
        }
    }
    let _ = writeln!(out, "elapsed: {} ms", r.elapsed_ms);
    if r.corpus.partial {
        let _ = writeln!(
            out,
            "partial: order bound lowered to {} by {}",
            r.corpus.max_order,
            indecomp_core::MAX_ORDER_ENV
        );
    }
    out
}

fn cmd_csa_check(max_order: usize, families: &[String], json: bool) -> Result<u8, Failure> {
    let opts = corpus_options(max_order, families)?;
    let report = verify::run_csa_check(&opts, order_cap())?;
    if json {
        print_json(&report);
    } else {
        emit(&render_csa(&report));
    }
    Ok(if report.corpus.partial {
        EXIT_CAP
    } else if report.clean() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}
