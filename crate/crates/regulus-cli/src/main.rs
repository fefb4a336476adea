//! The `regulus` command-line frontend.
//!
//! Exit status: 0 = decisive positive, 1 = decisive negative, 2 = Unknown,
//! 3 or more = usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use regulus::cofinality::{
    is_cofinal, is_filtered, is_sifted, path_criterion_check, preserves_colimits_direct,
    CofinalityLevel, CofinalityStatus,
};
use regulus::completion::{closure_search, eval_recipe, membership_via_elements, Recipe};
use regulus::corpus::run_corpus;
use regulus::dsl::{load_str, Workspace};
use regulus::fincat::karoubi;
use regulus::homotopy::{homology, nerve, weak_contractibility, ContractibilityStatus};
use regulus::presheaf::{are_isomorphic, category_of_elements, terminal_presheaf, Presheaf};
use regulus::{Bounds, FiniteCategory, Verdict, VerdictStatus};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "regulus", version, about = "Colimit completions, regular closures, and cofinality for finite categories", disable_help_subcommand = true)]
struct Cli {
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Stage bound for the closure search.
    #[arg(long, global = true)]
    max_stage: Option<usize>,
    /// Diagram budget for searches and enumerations
    /// (env: REGULUS_MAX_DIAGRAMS).
    #[arg(long, global = true)]
    max_diagrams: Option<usize>,
    /// Worker threads for independent checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FileArg {
    /// A `.cat` workspace file.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and elaborate a file, reporting all validation errors.
    Validate(FileArg),
    /// Decide cofinality of a functor at the requested level.
    CheckCofinal {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        functor: String,
        /// `connected` or `weak`.
        #[arg(long, default_value = "connected")]
        level: String,
    },
    /// Decide siftedness of a category.
    CheckSifted {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        category: String,
        #[arg(long, default_value = "connected")]
        level: String,
    },
    /// Decide filteredness of a category.
    CheckFiltered {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        category: String,
    },
    /// Run the weak-contractibility ladder on a category's nerve.
    CheckContractible {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        category: String,
        /// Nerve truncation dimension.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Search for the terminal presheaf in the free colimit completion.
    Closure {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        category: String,
        #[arg(long)]
        class: String,
        /// Certificate sidecar path (default: FILE.cert.json).
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Evaluate a recipe from the file or a certificate sidecar.
    EvalRecipe {
        #[command(flatten)]
        file: FileArg,
        /// A recipe declared in the file.
        #[arg(long, conflicts_with = "cert")]
        recipe: Option<String>,
        /// A certificate sidecar to re-check against --category/--class.
        #[arg(long, requires = "category", requires = "class")]
        cert: Option<PathBuf>,
        #[arg(long)]
        category: Option<String>,
        #[arg(long)]
        class: Option<String>,
    },
    /// Decide membership of a presheaf in the completion via its category
    /// of elements.
    Membership {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        presheaf: String,
        #[arg(long)]
        class: String,
    },
    /// Print the Karoubi envelope of a category.
    Karoubi {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        category: String,
    },
    /// Print the category of elements of a presheaf.
    Elements {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        presheaf: String,
    },
    /// Integral homology of the truncated nerve.
    Homology {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        category: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Reduce degree 0 by the augmentation.
        #[arg(long)]
        reduced: bool,
    },
    /// Connected components of a category.
    Components {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        category: String,
    },
    /// Test colimit preservation of a functor over a shape, both directly
    /// and through the path criterion.
    CheckPreservation {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        functor: String,
        /// The shape category J, declared in the same file.
        #[arg(long)]
        shape: String,
    },
    /// Run the bundled corpus suite.
    Corpus,
}

/// The JSON report. Field order is fixed; identical invocations produce
/// byte-identical output.
#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: String,
    verdict: String,
    bounds: Option<Bounds>,
    certificate: Option<Recipe>,
    witnesses: Option<serde_json::Value>,
    details: serde_json::Value,
}

enum Outcome {
    Positive,
    Negative,
    Unknown,
}

impl Outcome {
    fn verdict_name(&self) -> &'static str {
        match self {
            Outcome::Positive => "positive",
            Outcome::Negative => "negative",
            Outcome::Unknown => "unknown",
        }
    }

    fn exit(&self) -> ExitCode {
        match self {
            Outcome::Positive => ExitCode::from(0),
            Outcome::Negative => ExitCode::from(1),
            Outcome::Unknown => ExitCode::from(2),
        }
    }
}

struct Failure {
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { message: e.to_string() }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure { message: message.into() }
}

fn load_file(path: &Path) -> Result<Workspace, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(format!("cannot read {}: {e}", path.display())))?;
    load_str(&text).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn find_category<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Arc<FiniteCategory>, Failure> {
    ws.category(name).ok_or_else(|| fail(format!("no category named `{name}` in the file")))
}

fn bounds_from(cli: &Cli) -> Bounds {
    let mut b = Bounds::default();
    if let Ok(v) = std::env::var("REGULUS_MAX_DIAGRAMS") {
        if let Ok(n) = v.parse() {
            b.max_diagrams = n;
        }
    }
    if let Some(n) = cli.max_stage {
        b.max_stage = n;
    }
    if let Some(n) = cli.max_diagrams {
        b.max_diagrams = n;
    }
    b
}

fn verdict_outcome(v: &VerdictStatus) -> Outcome {
    match v {
        VerdictStatus::Member => Outcome::Positive,
        VerdictStatus::NonMember => Outcome::Negative,
        VerdictStatus::Unknown => Outcome::Unknown,
    }
}

fn describe_category(c: &FiniteCategory) -> serde_json::Value {
    serde_json::json!({
        "objects": c.object_names,
        "morphisms": c.morphisms.iter().map(|m| {
            serde_json::json!({"name": m.name, "src": c.object_names[m.src], "tgt": c.object_names[m.tgt]})
        }).collect::<Vec<_>>(),
    })
}

fn print_category_text(c: &FiniteCategory) {
    println!("objects ({}):", c.n_objects());
    for o in &c.object_names {
        println!("  {o}");
    }
    println!("morphisms ({}):", c.n_morphisms());
    for m in &c.morphisms {
        println!("  {}: {} -> {}", m.name, c.object_names[m.src], c.object_names[m.tgt]);
    }
}

fn presheaf_summary(x: &Presheaf) -> String {
    x.base
        .object_names
        .iter()
        .zip(&x.sets)
        .map(|(o, n)| format!("{o}={n}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn parse_level(level: &str) -> Result<CofinalityLevel, Failure> {
    match level {
        "connected" => Ok(CofinalityLevel::Connected),
        "weak" => Ok(CofinalityLevel::WeaklyContractible),
        other => Err(fail(format!("unknown level `{other}`; use `connected` or `weak`"))),
    }
}

fn cofinality_outcome(status: CofinalityStatus) -> Outcome {
    match status {
        CofinalityStatus::Cofinal => Outcome::Positive,
        CofinalityStatus::NotCofinal => Outcome::Negative,
        CofinalityStatus::ProbablyCofinal | CofinalityStatus::Unknown => Outcome::Unknown,
    }
}

fn emit(json: bool, report: Report, text: &str) {
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("{text}");
    }
}

fn run(cli: &Cli) -> Result<(Outcome, Report, String), Failure> {
    let bounds = bounds_from(cli);
    match &cli.command {
        Command::Validate(f) => {
            let ws = load_file(&f.file)?;
            let text = format!(
                "valid: {} categories, {} functors, {} presheaves, {} classes, {} recipes, {} checks",
                ws.categories.len(),
                ws.functors.len(),
                ws.presheaves.len(),
                ws.classes.len(),
                ws.recipes.len(),
                ws.checks.len()
            );
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "validate".into(),
                verdict: "positive".into(),
                bounds: None,
                certificate: None,
                witnesses: None,
                details: serde_json::json!({
                    "categories": ws.categories.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                    "functors": ws.functors.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                    "presheaves": ws.presheaves.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                    "classes": ws.classes.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                    "recipes": ws.recipes.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                }),
            };
            Ok((Outcome::Positive, report, text))
        }
        Command::CheckCofinal { file, functor, level } => {
            let ws = load_file(&file.file)?;
            let f = ws.functor(functor).ok_or_else(|| fail(format!("no functor named `{functor}`")))?;
            let level = parse_level(level)?;
            let v = is_cofinal(f, level);
            let outcome = cofinality_outcome(v.status);
            let target = &f.target;
            let witnesses: Vec<_> = v
                .witnesses
                .iter()
                .map(|(d, ev)| serde_json::json!({"object": target.object_names[*d], "evidence": ev}))
                .collect();
            let text = format!(
                "{functor} at level {level:?}: {:?}{}",
                v.status,
                v.witnesses
                    .last()
                    .map(|(d, ev)| format!(" ({} : {ev})", target.object_names[*d]))
                    .unwrap_or_default()
            );
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "check-cofinal".into(),
                verdict: outcome.verdict_name().into(),
                bounds: None,
                certificate: None,
                witnesses: Some(serde_json::Value::Array(witnesses)),
                details: serde_json::json!({"functor": functor, "level": format!("{level:?}"), "status": format!("{:?}", v.status)}),
            };
            Ok((outcome, report, text))
        }
        Command::CheckSifted { file, category, level } => {
            let ws = load_file(&file.file)?;
            let c = find_category(&ws, category)?;
            let level = parse_level(level)?;
            let v = is_sifted(c, level);
            let outcome = cofinality_outcome(v.status);
            let text = format!("{category} sifted at level {level:?}: {:?}", v.status);
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "check-sifted".into(),
                verdict: outcome.verdict_name().into(),
                bounds: None,
                certificate: None,
                witnesses: Some(serde_json::json!(v
                    .witnesses
                    .iter()
                    .map(|(d, ev)| serde_json::json!({"diagonal_comma": d, "evidence": ev}))
                    .collect::<Vec<_>>())),
                details: serde_json::json!({"category": category, "status": format!("{:?}", v.status)}),
            };
            Ok((outcome, report, text))
        }
        Command::CheckFiltered { file, category } => {
            let ws = load_file(&file.file)?;
            let c = find_category(&ws, category)?;
            let r = is_filtered(c);
            let outcome = if r.filtered { Outcome::Positive } else { Outcome::Negative };
            let text = format!(
                "{category} filtered: {}{}",
                r.filtered,
                r.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default()
            );
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "check-filtered".into(),
                verdict: outcome.verdict_name().into(),
                bounds: None,
                certificate: None,
                witnesses: Some(serde_json::json!(r.witness)),
                details: serde_json::json!({"category": category, "filtered": r.filtered}),
            };
            Ok((outcome, report, text))
        }
        Command::CheckContractible { file, category, depth } => {
            let ws = load_file(&file.file)?;
            let c = find_category(&ws, category)?;
            let v = weak_contractibility(c, *depth);
            let outcome = match v.status {
                ContractibilityStatus::Contractible => Outcome::Positive,
                ContractibilityStatus::NotContractible => Outcome::Negative,
                _ => Outcome::Unknown,
            };
            let text = format!("{category}: {:?} ({})", v.status, v.evidence);
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "check-contractible".into(),
                verdict: outcome.verdict_name().into(),
                bounds: None,
                certificate: None,
                witnesses: Some(serde_json::json!(v.evidence)),
                details: serde_json::json!({"category": category, "status": format!("{:?}", v.status), "depth": depth}),
            };
            Ok((outcome, report, text))
        }
        Command::Closure { file, category, class, cert } => {
            let ws = load_file(&file.file)?;
            let c = find_category(&ws, category)?;
            let entry = ws.class(class).ok_or_else(|| fail(format!("no class named `{class}`")))?;
            let v = closure_search(c, &entry.class, &terminal_presheaf(c), bounds);
            let outcome = verdict_outcome(&v.status);
            let mut text = format!("{category} in closure of {class}: {:?}", v.status);
            if let Some(w) = &v.witness {
                text.push_str(&format!(" ({w})"));
            }
            if let Some(recipe) = &v.certificate {
                let path = cert
                    .clone()
                    .unwrap_or_else(|| PathBuf::from(format!("{}.cert.json", file.file.display())));
                let payload = serde_json::to_string_pretty(recipe).expect("recipe serializes");
                std::fs::write(&path, payload)
                    .map_err(|e| fail(format!("cannot write certificate {}: {e}", path.display())))?;
                text.push_str(&format!("\ncertificate: {} steps, written to {}", recipe.steps.len(), path.display()));
            }
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "closure".into(),
                verdict: outcome.verdict_name().into(),
                bounds: Some(v.bounds_used),
                certificate: v.certificate.clone(),
                witnesses: Some(serde_json::json!(v.witness)),
                details: serde_json::json!({"category": category, "class": class}),
            };
            Ok((outcome, report, text))
        }
        Command::EvalRecipe { file, recipe, cert, category, class } => {
            let ws = load_file(&file.file)?;
            let (base_name, class_name, r) = match (recipe, cert) {
                (Some(name), None) => {
                    let entry = ws.recipe(name).ok_or_else(|| fail(format!("no recipe named `{name}`")))?;
                    (entry.base.clone(), entry.class.clone(), entry.recipe.clone())
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| fail(format!("cannot read {}: {e}", path.display())))?;
                    let r: Recipe = serde_json::from_str(&text)
                        .map_err(|e| fail(format!("{} is not a certificate: {e}", path.display())))?;
                    (category.clone().unwrap(), class.clone().unwrap(), r)
                }
                _ => return Err(fail("pass exactly one of --recipe or --cert")),
            };
            let c = find_category(&ws, &base_name)?;
            let entry = ws.class(&class_name).ok_or_else(|| fail(format!("no class named `{class_name}`")))?;
            match eval_recipe(c, &entry.class, &r) {
                Ok(value) => {
                    let terminal = are_isomorphic(&value, &terminal_presheaf(c)).is_some();
                    let text = format!(
                        "recipe evaluates on {base_name}: [{}]{}",
                        presheaf_summary(&value),
                        if terminal { " (terminal)" } else { "" }
                    );
                    let report = Report {
                        schema_version: SCHEMA_VERSION,
                        command: "eval-recipe".into(),
                        verdict: "positive".into(),
                        bounds: None,
                        certificate: Some(r),
                        witnesses: None,
                        details: serde_json::json!({
                            "base": base_name,
                            "class": class_name,
                            "sets": value.sets,
                            "terminal": terminal,
                        }),
                    };
                    Ok((Outcome::Positive, report, text))
                }
                Err(e) => {
                    let text = format!("recipe does not evaluate: {e}");
                    let report = Report {
                        schema_version: SCHEMA_VERSION,
                        command: "eval-recipe".into(),
                        verdict: "negative".into(),
                        bounds: None,
                        certificate: Some(r),
                        witnesses: Some(serde_json::json!(e.to_string())),
                        details: serde_json::json!({"base": base_name, "class": class_name}),
                    };
                    Ok((Outcome::Negative, report, text))
                }
            }
        }
        Command::Membership { file, presheaf, class } => {
            let ws = load_file(&file.file)?;
            let x = ws.presheaf(presheaf).ok_or_else(|| fail(format!("no presheaf named `{presheaf}`")))?;
            let entry = ws.class(class).ok_or_else(|| fail(format!("no class named `{class}`")))?;
            let v: Verdict = membership_via_elements(&x.base, &entry.class, x, bounds);
            let outcome = verdict_outcome(&v.status);
            let text = format!("{presheaf} in completion over {class}: {:?}", v.status);
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "membership".into(),
                verdict: outcome.verdict_name().into(),
                bounds: Some(v.bounds_used),
                certificate: v.certificate.clone(),
                witnesses: Some(serde_json::json!(v.witness)),
                details: serde_json::json!({"presheaf": presheaf, "class": class}),
            };
            Ok((outcome, report, text))
        }
        Command::Karoubi { file, category } => {
            let ws = load_file(&file.file)?;
            let c = find_category(&ws, category)?;
            let (kar, _) = karoubi(c);
            let text = format!(
                "Karoubi envelope of {category}: {} objects, {} morphisms{}",
                kar.n_objects(),
                kar.n_morphisms(),
                kar.find_terminal()
                    .map(|t| format!(", terminal object {}", kar.object_names[t]))
                    .unwrap_or_default()
            );
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "karoubi".into(),
                verdict: "positive".into(),
                bounds: None,
                certificate: None,
                witnesses: None,
                details: describe_category(&kar),
            };
            if !cli.json {
                print_category_text(&kar);
            }
            Ok((Outcome::Positive, report, text))
        }
        Command::Elements { file, presheaf } => {
            let ws = load_file(&file.file)?;
            let x = ws.presheaf(presheaf).ok_or_else(|| fail(format!("no presheaf named `{presheaf}`")))?;
            let (el, _) = category_of_elements(x);
            let text = format!(
                "category of elements of {presheaf}: {} objects, {} morphisms",
                el.n_objects(),
                el.n_morphisms()
            );
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "elements".into(),
                verdict: "positive".into(),
                bounds: None,
                certificate: None,
                witnesses: None,
                details: describe_category(&el),
            };
            if !cli.json {
                print_category_text(&el);
            }
            Ok((Outcome::Positive, report, text))
        }
        Command::Homology { file, category, depth, reduced } => {
            let ws = load_file(&file.file)?;
            let c = find_category(&ws, category)?;
            let h = homology(&nerve(c, *depth), *reduced);
            let text = format!(
                "{category}: betti {:?}, torsion {:?}{}",
                h.betti,
                h.torsion,
                if *reduced { " (reduced)" } else { "" }
            );
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "homology".into(),
                verdict: "positive".into(),
                bounds: None,
                certificate: None,
                witnesses: None,
                details: serde_json::json!({"category": category, "betti": h.betti, "torsion": h.torsion, "reduced": h.reduced, "depth": depth}),
            };
            Ok((Outcome::Positive, report, text))
        }
        Command::Components { file, category } => {
            let ws = load_file(&file.file)?;
            let c = find_category(&ws, category)?;
            let (parts, _) = c.connected_components();
            let listing: Vec<Vec<&String>> = parts
                .iter()
                .map(|p| p.iter().map(|&o| &c.object_names[o]).collect())
                .collect();
            let text = format!("{category}: {} components {:?}", parts.len(), listing);
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "components".into(),
                verdict: "positive".into(),
                bounds: None,
                certificate: None,
                witnesses: None,
                details: serde_json::json!({"category": category, "components": listing}),
            };
            Ok((Outcome::Positive, report, text))
        }
        Command::CheckPreservation { file, functor, shape } => {
            let ws = load_file(&file.file)?;
            let f = ws.functor(functor).ok_or_else(|| fail(format!("no functor named `{functor}`")))?;
            let j = find_category(&ws, shape)?;
            let direct = preserves_colimits_direct(f, j, bounds);
            let path = path_criterion_check(f, j, bounds);
            let outcome = verdict_outcome(&direct.status);
            let (path_status, agreement) = match &path {
                Ok(r) => (format!("{:?}", r.verdict.status), Some(r.agreement)),
                Err(e) => (format!("unavailable ({e})"), None),
            };
            let text = format!(
                "{functor} preserves {shape}-colimits: {:?}{} | path criterion: {path_status}",
                direct.status,
                direct.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default()
            );
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "check-preservation".into(),
                verdict: outcome.verdict_name().into(),
                bounds: Some(direct.bounds_used),
                certificate: None,
                witnesses: Some(serde_json::json!(direct.witness)),
                details: serde_json::json!({
                    "functor": functor,
                    "shape": shape,
                    "direct": format!("{:?}", direct.status),
                    "path_criterion": path_status,
                    "agreement": agreement,
                }),
            };
            Ok((outcome, report, text))
        }
        Command::Corpus => {
            let results: Vec<(&'static str, Result<(), String>)> = match cli.jobs {
                Some(n) if n > 1 => {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(n)
                        .build()
                        .map_err(|e| fail(e.to_string()))?;
                    pool.install(|| {
                        use rayon::prelude::*;
                        let mut r: Vec<_> = regulus::corpus::corpus_entries()
                            .par_iter()
                            .map(|e| (e.name, e.run()))
                            .collect();
                        r.sort_by_key(|(n, _)| *n);
                        r
                    })
                }
                _ => run_corpus(),
            };
            let failures: Vec<_> = results
                .iter()
                .filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}")))
                .collect();
            let mut lines = Vec::new();
            for (name, r) in &results {
                lines.push(format!("{} {name}", if r.is_ok() { "pass" } else { "FAIL" }));
            }
            lines.push(format!("{}/{} corpus entries pass", results.len() - failures.len(), results.len()));
            let outcome = if failures.is_empty() { Outcome::Positive } else { Outcome::Negative };
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: "corpus".into(),
                verdict: outcome.verdict_name().into(),
                bounds: None,
                certificate: None,
                witnesses: Some(serde_json::json!(failures)),
                details: serde_json::json!({
                    "entries": results.iter().map(|(n, r)| serde_json::json!({"name": n, "pass": r.is_ok()})).collect::<Vec<_>>(),
                }),
            };
            Ok((outcome, report, lines.join("\n")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version to stdout with status 0; usage errors
            // go to stderr with status 3
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(3);
            }
            print!("{e}");
            return ExitCode::from(0);
        }
    };
    match run(&cli) {
        Ok((outcome, report, text)) => {
            emit(cli.json, report, &text);
            outcome.exit()
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(3)
        }
    }
}
