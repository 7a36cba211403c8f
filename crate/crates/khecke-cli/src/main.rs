//! `khecke` — command-line access to Hecke insertion, bounded K-Knuth
//! equivalence, the class bialgebra, truncated generating functions,
//! and both K-theoretic Littlewood–Richardson rules.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict
//! (distinct words, non-unique target, failed check), 2 unknown at the
//! explored bound, 3 usage error. Results go to standard output;
//! progress and errors go to standard error.

mod inputs;
mod verify;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use khecke_core::{
    class_coproduct, class_product, class_slice, coproduct_g, default_equivalence_bound,
    dual_lr_coefficient, equivalent, equivalent_tableaux, expand_in_g, fundamental_l,
    grothendieck_g, insert_word, is_urt, j_from_insertion, lr_coefficient, lr_table,
    minimal_tableau, p_tableau, phi_class, reverse_word, superstandard_tableau, urt_class_coproduct,
    urt_class_product, verify_coproduct_rule, verify_product_rule, weak_j, Agreement,
    DistinctCertificate, GenFunError, InsertionError, KKnuthError, KprError, LRError, LRQuery,
    LRReport, Letter, PolyError, ShapeError, UrtChoice, UrtStatus, Verdict,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "khecke",
    version,
    about = "Hecke insertion, K-Knuth equivalence, tableau bialgebra, and K-theoretic \
             Littlewood–Richardson rules",
    after_help = "Words are digit strings (15133) or comma-separated letters (1,5,1,3,3); \
                  partitions and compositions are comma-separated parts (3,1); tableaux are \
                  JSON files. Exit codes: 0 success, 1 negative verdict, 2 unknown at bound, \
                  3 usage error."
)]
struct Cli {
    /// Output format for standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker-thread cap (falls back to KHECKE_JOBS, then all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Insert a word, printing the insertion and recording tableaux.
    Insert { word: String },
    /// Rebuild a word from its tableau pair and compare.
    Roundtrip { word: String },
    /// All words equivalent to a seed within a length corridor.
    Class {
        word: String,
        /// Longest word length explored.
        #[arg(long)]
        max_len: usize,
        /// Also list the equivalent insertion tableaux.
        #[arg(long)]
        tableaux: bool,
    },
    /// Decide whether two words are K-Knuth equivalent.
    Equiv {
        first: String,
        second: String,
        /// Longest word length explored (defaults to a size-based bound).
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Test whether a tableau is the unique one in its class.
    Urt {
        /// Tableau JSON file.
        tableau: PathBuf,
        /// Longest reading-word length explored.
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Expand the product of two word classes into classes.
    Product {
        first: String,
        second: String,
        /// Longest word length explored.
        #[arg(long)]
        bound: usize,
    },
    /// Expand the coproduct of a word class into tensor terms.
    Coproduct {
        word: String,
        /// Longest word length explored.
        #[arg(long)]
        bound: usize,
    },
    /// Product of two unique-rectification-target classes, as tableaux.
    UrtProduct {
        /// Tableau JSON files.
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 12)]
        bound: usize,
    },
    /// Coproduct of a unique-rectification-target class, as tableau pairs.
    UrtCoproduct {
        tableau: PathBuf,
        #[arg(long, default_value_t = 12)]
        bound: usize,
    },
    /// The signed stable polynomial of a partition, truncated.
    Gpoly {
        partition: String,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        deg: usize,
    },
    /// The weak (unsigned) stable polynomial of a partition, truncated.
    Jpoly {
        partition: String,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        deg: usize,
    },
    /// The fundamental quasisymmetric polynomial of a composition.
    Lpoly {
        composition: String,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        deg: usize,
    },
    /// Expand a product of two signed polynomials back into the basis.
    ExpandProduct {
        lambda: String,
        mu: String,
        #[arg(long)]
        deg: usize,
        /// Defaults to --deg (fewer variables cannot separate the basis).
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Coproduct structure constants of a basis element.
    CoproductG {
        partition: String,
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Quasisymmetric image of a word class, truncated.
    Phi {
        word: String,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        deg: usize,
        /// Longest class member explored (defaults to max(--deg, |word|)).
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Fibre sum over all words inserting to a tableau, truncated.
    Jtab {
        tableau: PathBuf,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        deg: usize,
    },
    /// Product structure constants: one, a table, or an oracle check.
    Lr {
        lambda: String,
        mu: String,
        /// Outer shape; omit to tabulate every nonzero coefficient.
        #[arg(long)]
        nu: Option<String>,
        /// Rectification target for --nu queries: superstandard, minimal,
        /// or a tableau JSON file.
        #[arg(long, default_value = "superstandard")]
        urt: String,
        /// Cross-check the rule against the polynomial oracle.
        #[arg(long, requires = "deg")]
        verify: bool,
        /// Degree window for --verify.
        #[arg(long)]
        deg: Option<usize>,
        /// Variables for --verify (defaults to --deg).
        #[arg(long)]
        vars: Option<usize>,
        /// Extra degrees beyond |λ| + |μ| covered by the table.
        #[arg(long, default_value_t = 2)]
        max_extra: usize,
    },
    /// Coproduct structure constants through two-block fillings.
    DualLr {
        nu: String,
        lambda: String,
        mu: String,
        /// Rectification target of shape ν: superstandard, minimal, or a
        /// tableau JSON file.
        #[arg(long, default_value = "superstandard")]
        urt: String,
        /// Cross-check the rule against the polynomial oracle.
        #[arg(long, requires = "deg")]
        verify: bool,
        /// Degree window for --verify.
        #[arg(long)]
        deg: Option<usize>,
        /// Variables for --verify (defaults to --deg).
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Run the built-in reference checks.
    Verify {
        /// Check every reference value end to end.
        #[arg(long)]
        examples: bool,
    },
}

/// A failure with its process exit code: 1 negative, 2 unknown, 3 usage.
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }

    fn negative(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    fn unknown(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl From<KKnuthError> for CliError {
    fn from(e: KKnuthError) -> Self {
        match e {
            KKnuthError::ClassTooLarge { .. } => CliError::unknown(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<KprError> for CliError {
    fn from(e: KprError) -> Self {
        match e {
            KprError::NotUrt { .. } => CliError::negative(e.to_string()),
            KprError::Exploration(inner) => inner.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::CoefficientOverflow => CliError::unknown(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<GenFunError> for CliError {
    fn from(e: GenFunError) -> Self {
        match e {
            GenFunError::Poly(inner) => inner.into(),
            GenFunError::Exploration(inner) => inner.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<LRError> for CliError {
    fn from(e: LRError) -> Self {
        match e {
            LRError::NotUniqueTarget { .. } => CliError::negative(e.to_string()),
            LRError::GenFun(inner) => inner.into(),
            LRError::Poly(inner) => inner.into(),
            LRError::Exploration(inner) => inner.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<InsertionError> for CliError {
    fn from(e: InsertionError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<ShapeError> for CliError {
    fn from(e: ShapeError) -> Self {
        CliError::usage(e.to_string())
    }
}

/// A successful command: payload plus the verdict-derived exit code.
struct Report {
    code: u8,
    json: serde_json::Value,
    text: String,
}

impl Report {
    fn ok(json: serde_json::Value, text: String) -> Report {
        Report { code: 0, json, text }
    }

    fn coded(code: u8, json: serde_json::Value, text: String) -> Report {
        Report { code, json, text }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_jobs(cli.jobs) {
        eprintln!("error: {}", e.message);
        return ExitCode::from(e.code);
    }
    match run(cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Json => match serde_json::to_string_pretty(&report.json) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: cannot serialize the result: {e}");
                        return ExitCode::from(3);
                    }
                },
                Format::Text => println!("{}", report.text),
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn configure_jobs(flag: Option<usize>) -> Result<(), CliError> {
    let requested = match flag {
        Some(n) => Some(n),
        None => match std::env::var("KHECKE_JOBS") {
            Ok(v) => Some(v.parse().map_err(|_| {
                CliError::usage(format!("KHECKE_JOBS must be a positive integer, found {v:?}"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = requested {
        if n == 0 {
            return Err(CliError::usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::usage(format!("cannot configure {n} worker threads: {e}")))?;
    }
    Ok(())
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Insert { word } => cmd_insert(&word),
        Command::Roundtrip { word } => cmd_roundtrip(&word),
        Command::Class { word, max_len, tableaux } => cmd_class(&word, max_len, tableaux),
        Command::Equiv { first, second, max_len } => cmd_equiv(&first, &second, max_len),
        Command::Urt { tableau, max_len } => cmd_urt(&tableau, max_len),
        Command::Product { first, second, bound } => cmd_product(&first, &second, bound),
        Command::Coproduct { word, bound } => cmd_coproduct(&word, bound),
        Command::UrtProduct { first, second, bound } => cmd_urt_product(&first, &second, bound),
        Command::UrtCoproduct { tableau, bound } => cmd_urt_coproduct(&tableau, bound),
        Command::Gpoly { partition, vars, deg } => {
            let shape = inputs::partition(&partition)?;
            let poly = grothendieck_g(&shape, vars, deg)?;
            Ok(poly_report(poly))
        }
        Command::Jpoly { partition, vars, deg } => {
            let shape = inputs::partition(&partition)?;
            let poly = weak_j(&shape, vars, deg)?;
            Ok(poly_report(poly))
        }
        Command::Lpoly { composition, vars, deg } => {
            let alpha = inputs::composition(&composition)?;
            let poly = fundamental_l(&alpha, vars, deg)?;
            Ok(poly_report(poly))
        }
        Command::ExpandProduct { lambda, mu, deg, vars } => {
            cmd_expand_product(&lambda, &mu, deg, vars)
        }
        Command::CoproductG { partition, deg, vars } => cmd_coproduct_g(&partition, deg, vars),
        Command::Phi { word, vars, deg, bound } => cmd_phi(&word, vars, deg, bound),
        Command::Jtab { tableau, vars, deg } => {
            let tableau = inputs::tableau_file(&tableau)?;
            let poly = j_from_insertion(&tableau, vars, deg)?;
            Ok(poly_report(poly))
        }
        Command::Lr { lambda, mu, nu, urt, verify, deg, vars, max_extra } => {
            cmd_lr(&lambda, &mu, nu.as_deref(), &urt, verify, deg, vars, max_extra)
        }
        Command::DualLr { nu, lambda, mu, urt, verify, deg, vars } => {
            cmd_dual_lr(&nu, &lambda, &mu, &urt, verify, deg, vars)
        }
        Command::Verify { examples } => cmd_verify(examples),
    }
}

fn cmd_insert(word: &str) -> Result<Report, CliError> {
    let word = inputs::word(word)?;
    let (p, q) = insert_word(&word);
    let composition = word.descent_composition();
    let json = json!({
        "word": word,
        "p": p,
        "q": q,
        "descent_composition": composition,
    });
    let text = format!(
        "P:\n{}\nQ:\n{}\ndescent composition: {composition} (from Q: {})",
        indent(&p.to_string(), "  "),
        indent(&q.to_string(), "  "),
        q.descent_composition(),
    );
    Ok(Report::ok(json, text))
}

fn cmd_roundtrip(word: &str) -> Result<Report, CliError> {
    let word = inputs::word(word)?;
    let (p, q) = insert_word(&word);
    let recovered = reverse_word(&p, &q)?;
    let pass = recovered == word;
    let json = json!({ "word": word, "recovered": recovered, "pass": pass });
    let text = format!("recovered: {recovered}\n{}", if pass { "PASS" } else { "FAIL" });
    Ok(Report::coded(u8::from(!pass), json, text))
}

fn cmd_class(word: &str, max_len: usize, tableaux: bool) -> Result<Report, CliError> {
    let word = inputs::word(word)?;
    let slice = class_slice(&word, max_len)?;
    let mut text = format!("{} words of length ≤ {max_len}:", slice.words.len());
    for member in &slice.words {
        write!(text, "\n{member}").expect("writing to a string");
    }
    let mut code = 0;
    let json = if tableaux {
        let class = equivalent_tableaux(&p_tableau(&word), max_len)?;
        write!(text, "\n{} equivalent tableaux:", class.tableaux.len())
            .expect("writing to a string");
        for tableau in &class.tableaux {
            write!(text, "\n{}", indent(&tableau.to_string(), "  "))
                .expect("writing to a string");
        }
        if !class.unresolved.is_empty() {
            code = 2;
            write!(text, "\n{} candidates unresolved at this bound", class.unresolved.len())
                .expect("writing to a string");
        }
        json!({ "slice": slice, "tableaux": class })
    } else {
        json!({ "slice": slice })
    };
    Ok(Report::coded(code, json, text))
}

fn certificate_text(certificate: &DistinctCertificate) -> String {
    match certificate {
        DistinctCertificate::SupportMismatch { left, right } => {
            format!("support {} vs {}", set_text(left), set_text(right))
        }
        DistinctCertificate::LisMismatch { left, right } => format!("lis {left} vs {right}"),
        DistinctCertificate::LdsMismatch { left, right } => format!("lds {left} vs {right}"),
        DistinctCertificate::RestrictionMismatch { lo, hi, certificate } => {
            format!("restriction to [{lo}, {hi}]: {}", certificate_text(certificate))
        }
    }
}

fn set_text(set: &BTreeSet<Letter>) -> String {
    let inner: Vec<String> = set.iter().map(Letter::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn cmd_equiv(first: &str, second: &str, max_len: Option<usize>) -> Result<Report, CliError> {
    let a = inputs::word(first)?;
    let b = inputs::word(second)?;
    let bound = max_len.unwrap_or_else(|| default_equivalence_bound(&a, &b));
    let verdict = equivalent(&a, &b, bound)?;
    let json = serde_json::to_value(&verdict).expect("verdicts serialize");
    let (code, text) = match &verdict {
        Verdict::Equivalent { chain } => {
            let mut text = String::from("equivalent; chain:");
            for step in chain {
                write!(text, "\n  {step}").expect("writing to a string");
            }
            (0, text)
        }
        Verdict::Distinct { certificate } => {
            (1, format!("distinct: {}", certificate_text(certificate)))
        }
        Verdict::Unknown { bound } => (2, format!("unknown at bound {bound}")),
    };
    Ok(Report::coded(code, json, text))
}

fn cmd_urt(path: &std::path::Path, max_len: usize) -> Result<Report, CliError> {
    let tableau = inputs::tableau_file(path)?;
    let status = is_urt(&tableau, max_len)?;
    let json = serde_json::to_value(&status).expect("statuses serialize");
    let (code, text) = match &status {
        UrtStatus::Urt { bound } => (
            0,
            format!("unique rectification target (no second tableau through length {bound})"),
        ),
        UrtStatus::NotUrt { witness } => (
            1,
            format!(
                "not a unique rectification target; the class also contains:\n{}",
                indent(&witness.to_string(), "  ")
            ),
        ),
    };
    Ok(Report::coded(code, json, text))
}

fn cmd_product(first: &str, second: &str, bound: usize) -> Result<Report, CliError> {
    let h1 = inputs::word(first)?;
    let h2 = inputs::word(second)?;
    let expansion = class_product(&h1, &h2, bound)?;
    let mut text = format!(
        "{} classes ({} tableaux) at bound {bound}",
        expansion.classes.len(),
        expansion.classes.iter().map(|c| c.tableaux.len()).sum::<usize>(),
    );
    for class in &expansion.classes {
        write!(
            text,
            "\nclass of {} ({} tableaux):",
            class.representative,
            class.tableaux.len()
        )
        .expect("writing to a string");
        for tableau in &class.tableaux {
            write!(text, "\n{}", indent(&tableau.to_string(), "  "))
                .expect("writing to a string");
        }
    }
    let code = incomplete(&mut text, expansion.unresolved.len());
    let json = serde_json::to_value(&expansion).expect("expansions serialize");
    Ok(Report::coded(code, json, text))
}

fn cmd_coproduct(word: &str, bound: usize) -> Result<Report, CliError> {
    let h = inputs::word(word)?;
    let expansion = class_coproduct(&h, bound)?;
    let mut text = format!("{} tensor terms at bound {bound}", expansion.terms.len());
    for term in &expansion.terms {
        write!(
            text,
            "\n{} ⊗ {} ({} × {} tableaux)",
            term.left.representative,
            term.right.representative,
            term.left.tableaux.len(),
            term.right.tableaux.len(),
        )
        .expect("writing to a string");
    }
    let code = incomplete(&mut text, expansion.unresolved.len());
    let json = serde_json::to_value(&expansion).expect("expansions serialize");
    Ok(Report::coded(code, json, text))
}

/// Appends an unresolved-candidates note; exit 2 when any exist.
fn incomplete(text: &mut String, unresolved: usize) -> u8 {
    if unresolved == 0 {
        return 0;
    }
    write!(text, "\n{unresolved} candidates unresolved at this bound")
        .expect("writing to a string");
    2
}

fn cmd_urt_product(
    first: &std::path::Path,
    second: &std::path::Path,
    bound: usize,
) -> Result<Report, CliError> {
    let t1 = inputs::tableau_file(first)?;
    let t2 = inputs::tableau_file(second)?;
    let tableaux = urt_class_product(&t1, &t2, bound)?;
    let mut text = format!("{} product tableaux:", tableaux.len());
    for tableau in &tableaux {
        write!(text, "\n{}", indent(&tableau.to_string(), "  ")).expect("writing to a string");
    }
    let json = serde_json::to_value(&tableaux).expect("tableaux serialize");
    Ok(Report::ok(json, text))
}

fn cmd_urt_coproduct(path: &std::path::Path, bound: usize) -> Result<Report, CliError> {
    let tableau = inputs::tableau_file(path)?;
    let pairs = urt_class_coproduct(&tableau, bound)?;
    let mut text = format!("{} coproduct pairs:", pairs.len());
    for (left, right) in &pairs {
        write!(
            text,
            "\n{}\n⊗\n{}\n—",
            indent(&left.to_string(), "  "),
            indent(&right.to_string(), "  ")
        )
        .expect("writing to a string");
    }
    let json = serde_json::to_value(&pairs).expect("pairs serialize");
    Ok(Report::ok(json, text))
}

fn poly_report(poly: khecke_core::TruncatedPoly) -> Report {
    let json = serde_json::to_value(&poly).expect("polynomials serialize");
    let text = poly.to_string();
    Report::ok(json, text)
}

fn cmd_expand_product(
    lambda: &str,
    mu: &str,
    deg: usize,
    vars: Option<usize>,
) -> Result<Report, CliError> {
    let lambda = inputs::partition(lambda)?;
    let mu = inputs::partition(mu)?;
    let num_vars = vars.unwrap_or(deg);
    let product =
        grothendieck_g(&lambda, num_vars, deg)?.mul(&grothendieck_g(&mu, num_vars, deg)?)?;
    let expansion = expand_in_g(&product, deg)?;
    let mut text = String::from("expansion:");
    for (shape, coefficient) in &expansion.coefficients {
        write!(text, "\n  {shape}: {coefficient}").expect("writing to a string");
    }
    if !expansion.residual.is_zero() {
        write!(text, "\nresidual: {}", expansion.residual).expect("writing to a string");
    }
    let json = serde_json::to_value(&expansion).expect("expansions serialize");
    Ok(Report::ok(json, text))
}

fn cmd_coproduct_g(partition: &str, deg: usize, vars: Option<usize>) -> Result<Report, CliError> {
    let nu = inputs::partition(partition)?;
    let num_vars = vars.unwrap_or(deg);
    let table = coproduct_g(&nu, num_vars, deg)?;
    let entries: Vec<serde_json::Value> = table
        .iter()
        .map(|((left, right), coefficient)| {
            json!({ "left": left, "right": right, "coefficient": coefficient })
        })
        .collect();
    let mut text = format!("{} coproduct terms:", table.len());
    for ((left, right), coefficient) in &table {
        write!(text, "\n  {left} ⊗ {right}: {coefficient}").expect("writing to a string");
    }
    Ok(Report::ok(serde_json::Value::Array(entries), text))
}

fn cmd_phi(word: &str, vars: usize, deg: usize, bound: Option<usize>) -> Result<Report, CliError> {
    let h = inputs::word(word)?;
    let bound = bound.unwrap_or_else(|| deg.max(h.len()));
    let image = phi_class(&h, vars, deg, bound)?;
    let json = serde_json::to_value(&image).expect("images serialize");
    let text = format!("{}\n(truncated at degree {deg})", image.poly);
    Ok(Report::ok(json, text))
}

fn parse_urt_choice(spec: &str) -> Result<UrtChoice, CliError> {
    match spec {
        "superstandard" => Ok(UrtChoice::Superstandard),
        "minimal" => Ok(UrtChoice::Minimal),
        path if path.ends_with(".json") => {
            let tableau = inputs::tableau_file(std::path::Path::new(path))?;
            Ok(UrtChoice::Explicit(tableau))
        }
        other => Err(CliError::usage(format!(
            "--urt must be superstandard, minimal, or a .json file, found {other:?}"
        ))),
    }
}

fn report_text(report: &LRReport) -> String {
    let mut text = format!(
        "coefficient: {} (sign {} × count {})",
        report.sign * report.count as i64,
        report.sign,
        report.count,
    );
    for (i, witness) in report.witnesses.iter().enumerate() {
        write!(text, "\nwitness {}:\n{}", i + 1, indent(&witness.to_string(), "  "))
            .expect("writing to a string");
    }
    text
}

fn agreement_report<K: serde::Serialize + std::fmt::Debug>(
    agreement: Agreement<K>,
    deg: usize,
) -> Report {
    let mut text = format!(
        "checked {} coefficient slots through degree {deg}: ",
        agreement.checked
    );
    let code = if agreement.agrees() {
        text.push_str("all agree");
        0
    } else {
        write!(text, "{} mismatches", agreement.mismatches.len()).expect("writing to a string");
        for m in &agreement.mismatches {
            write!(text, "\n  {:?}: rule {}, oracle {}", m.key, m.rule_value, m.oracle_value)
                .expect("writing to a string");
        }
        1
    };
    let json = serde_json::to_value(&agreement).expect("agreements serialize");
    Report::coded(code, json, text)
}

#[allow(clippy::too_many_arguments)]
fn cmd_lr(
    lambda: &str,
    mu: &str,
    nu: Option<&str>,
    urt: &str,
    verify: bool,
    deg: Option<usize>,
    vars: Option<usize>,
    max_extra: usize,
) -> Result<Report, CliError> {
    let lambda = inputs::partition(lambda)?;
    let mu = inputs::partition(mu)?;
    if verify {
        let deg = deg.expect("clap enforces --deg with --verify");
        let num_vars = vars.unwrap_or(deg);
        eprintln!("verifying the product rule for {lambda} × {mu} at ({num_vars}, {deg}) …");
        let agreement = verify_product_rule(&lambda, &mu, num_vars, deg)?;
        return Ok(agreement_report(agreement, deg));
    }
    if let Some(nu) = nu {
        let nu = inputs::partition(nu)?;
        let urt_choice = parse_urt_choice(urt)?;
        let report = lr_coefficient(&LRQuery { lambda, mu, nu, urt_choice })?;
        let text = report_text(&report);
        let json = serde_json::to_value(&report).expect("reports serialize");
        return Ok(Report::ok(json, text));
    }
    let table = lr_table(&lambda, &mu, max_extra)?;
    let entries: Vec<serde_json::Value> = table
        .iter()
        .map(|(nu, report)| {
            json!({
                "nu": nu,
                "count": report.count,
                "sign": report.sign,
                "coefficient": report.sign * report.count as i64,
            })
        })
        .collect();
    let shape_width = table
        .keys()
        .map(|nu| nu.to_string().len())
        .max()
        .unwrap_or(1)
        .max("shape".len());
    let mut text = format!("{:<shape_width$}  coefficient  count", "shape");
    for (nu, report) in &table {
        write!(
            text,
            "\n{:<shape_width$}  {:>11}  {:>5}",
            nu.to_string(),
            report.sign * report.count as i64,
            report.count,
        )
        .expect("writing to a string");
    }
    Ok(Report::ok(serde_json::Value::Array(entries), text))
}

fn cmd_dual_lr(
    nu: &str,
    lambda: &str,
    mu: &str,
    urt: &str,
    verify: bool,
    deg: Option<usize>,
    vars: Option<usize>,
) -> Result<Report, CliError> {
    let nu = inputs::partition(nu)?;
    let lambda = inputs::partition(lambda)?;
    let mu = inputs::partition(mu)?;
    let target = match parse_urt_choice(urt)? {
        UrtChoice::Superstandard => superstandard_tableau(&nu),
        UrtChoice::Minimal => minimal_tableau(&nu),
        UrtChoice::Explicit(tableau) => {
            if tableau.shape().outer() != &nu || !tableau.is_straight() {
                return Err(CliError::usage(format!(
                    "the target tableau must have straight shape {nu}"
                )));
            }
            tableau
        }
    };
    if verify {
        let deg = deg.expect("clap enforces --deg with --verify");
        let num_vars = vars.unwrap_or(deg);
        eprintln!("verifying the coproduct rule for {nu} at ({num_vars}, {deg}) …");
        let agreement = verify_coproduct_rule(&target, num_vars, deg)?;
        return Ok(agreement_report(agreement, deg));
    }
    let report = dual_lr_coefficient(&target, &lambda, &mu)?;
    let text = report_text(&report);
    let json = serde_json::to_value(&report).expect("reports serialize");
    Ok(Report::ok(json, text))
}

fn cmd_verify(examples: bool) -> Result<Report, CliError> {
    if !examples {
        return Err(CliError::usage("nothing selected: pass --examples"));
    }
    let outcomes = verify::run_all();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let mut text = String::new();
    for outcome in &outcomes {
        writeln!(
            text,
            "{} — {}: {} ({:.2}s)",
            if outcome.passed { "ok  " } else { "FAIL" },
            outcome.name,
            outcome.detail,
            outcome.seconds,
        )
        .expect("writing to a string");
    }
    write!(text, "{} of {} checks passed", outcomes.len() - failed, outcomes.len())
        .expect("writing to a string");
    let json = serde_json::to_value(&outcomes).expect("outcomes serialize");
    Ok(Report::coded(u8::from(failed > 0), json, text))
}

fn indent(s: &str, prefix: &str) -> String {
    s.lines()
        .map(|line| format!("{prefix}{line}"))
        .collect::<Vec<_>>()
        .join("\n")
}
