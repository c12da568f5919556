use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sullivan::checker::{run_checker, CheckerReport, PresentationOptions, ThreeStepPresentation, Verdict};
use sullivan::constructions::{tensor, ConnectedSum};
use sullivan::corpus::{build_corpus, run_graph_checker, CorpusParams, Graph, CORPUS_KEYS};
use sullivan::file::DgaFile;
use sullivan::weights::{two_step_weight, WeightGrading};
use sullivan::{Error, SullivanDga};

/// Exact computations with Sullivan algebras.
///
/// Exit status: 0 on success (and for a REFUTED verdict), 1 when the input is
/// well-formed but fails a mathematical check (including an INCONCLUSIVE
/// verdict), 2 for unreadable or malformed input.
#[derive(Parser)]
#[command(name = "sullivan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check d^2 = 0, degrees and, optionally, a weight.
    Verify {
        file: PathBuf,
        /// Comma-separated generator weights to test for compatibility.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<i64>>,
        #[arg(long)]
        json: bool,
    },
    /// Cohomology in one degree.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run the inflexibility checker.
    Check {
        file: Option<PathBuf>,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Name of the fundamental class in the file's [classes] section.
        #[arg(long, default_value = "nu")]
        class: String,
        #[arg(long)]
        full_top_check: bool,
        /// For graph dgas: also decide exactness of psi(nu) in the quotient (slow).
        #[arg(long)]
        direct_quotient: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write a corpus entry as a .dga file.
    Emit {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Connected sum along two classes of equal degree.
    ConnectedSum {
        first: PathBuf,
        first_class: String,
        second: PathBuf,
        second_class: String,
        /// Report cohomology up to this degree (default: twice the class degree).
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Tensor product of two dgas.
    Tensor {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the built-in corpus.
    CorpusList {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct CorpusArgs {
    /// Built-in example instead of a file.
    #[arg(long)]
    corpus: Option<String>,
    #[arg(long)]
    k: Option<u32>,
    /// Graph JSON for the graph family.
    #[arg(long)]
    graph: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Semantic(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Semantic(e.to_string())
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<DgaFile, Failure> {
    DgaFile::parse(&read(path)?).map_err(|e| match e {
        Error::File { .. } => Failure::Input(format!("{}: {e}", path.display())),
        other => Failure::from(other),
    })
}

fn require_d_squared(file: &DgaFile) -> Result<(), Failure> {
    match file.dga.check_d_squared().first() {
        None => Ok(()),
        Some(v) => Err(Failure::Semantic(format!(
            "d^2({}) = {} is not zero",
            v.generator, v.residue
        ))),
    }
}

fn hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn write_out(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_with_header<T: Serialize>(report: &T, input_hash: &str) -> String {
    let mut v = serde_json::to_value(report).expect("reports serialize");
    if let Value::Object(map) = &mut v {
        map.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
        map.insert("input_hash".into(), json!(input_hash));
    }
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn corpus_params(args: &CorpusArgs) -> Result<CorpusParams, Failure> {
    let graph = match &args.graph {
        Some(p) => Some(Graph::from_json(&read(p)?)?),
        None => None,
    };
    Ok(CorpusParams { k: args.k, graph })
}

fn verify(path: &Path, weights: Option<Vec<i64>>, as_json: bool) -> Outcome {
    let file = load(path)?;
    let dga = &file.dga;
    let violations: Vec<Value> = dga
        .check_d_squared()
        .iter()
        .map(|v| json!({"generator": v.generator, "residue": v.residue}))
        .collect();
    let two_step = two_step_weight(dga).ok();
    let weight = match weights {
        Some(w) => Some(WeightGrading::new(dga, w)?),
        None => None,
    };
    let weight_ok = weight.as_ref().map(|w| w.is_compatible());
    let ok = violations.is_empty() && weight_ok != Some(false);
    if as_json {
        let report = json!({
            "generators": dga.algebra().len(),
            "d_squared_violations": violations,
            "two_step_weight": two_step.as_ref().map(|w| w.weights().to_vec()),
            "weight_compatible": weight_ok,
            "incompatible_generator": weight.as_ref().and_then(|w| w.incompatible_generator(dga)),
            "ok": ok,
        });
        print!("{}", json_with_header(&report, &hash(&file.emit())));
    } else {
        println!("generators: {}", dga.algebra().len());
        for v in &violations {
            println!(
                "d^2({}) = {}",
                v["generator"].as_str().unwrap_or(""),
                v["residue"].as_str().unwrap_or("")
            );
        }
        if let Some(w) = &two_step {
            println!("2-step weight: {:?}", w.weights());
        }
        if let Some(w) = &weight {
            match w.incompatible_generator(dga) {
                None => println!("weight compatible"),
                Some(g) => println!("weight not compatible at {g}"),
            }
        }
        println!("{}", if ok { "ok" } else { "FAILED" });
    }
    Ok(ok)
}

fn cohomology(path: &Path, degree: u32, as_json: bool) -> Outcome {
    let file = load(path)?;
    require_d_squared(&file)?;
    let h = file.dga.cohomology(degree);
    let reps: Vec<String> = h.representatives.iter().map(|r| file.dga.format(r)).collect();
    if as_json {
        let report = json!({"degree": degree, "dimension": h.dimension, "representatives": reps});
        print!("{}", json_with_header(&report, &hash(&file.emit())));
    } else {
        println!("H^{degree}: dimension {}", h.dimension);
        for r in reps {
            println!("  {r}");
        }
    }
    Ok(true)
}

fn print_checker(r: &CheckerReport) {
    println!(
        "top generator {} with |dz| = {}, formal dimension {}",
        r.top, r.dz_degree, r.formal_dimension
    );
    for p in &r.pieces {
        println!("  weight {}: {}", p.weight, p.element);
    }
    if let Some(h) = &r.homogeneous {
        println!(
            "dz is weight-homogeneous; w(z) = {}, positive: {}",
            h.weight_of_z, h.positive
        );
    }
    for o in &r.orderings {
        println!(
            "ordering w(P0) = {}, w(P1) = {} (shift {}):",
            o.p0_weight, o.p1_weight, o.shift
        );
        println!("  h1 positive weight on B: {}", o.h1.pass);
        println!(
            "  h2 degree {}: dim H = {}, kernel {}: {}",
            o.h2.degree, o.h2.cohomology_dim, o.h2.kernel_dim, o.h2.pass
        );
        println!(
            "  h3 degree {}: {} classes, solvable: {}: {}",
            o.h3.degree, o.h3.classes, o.h3.feasible, o.h3.pass
        );
        if let Some(d) = &o.direct {
            println!("  psi(nu) = {}", d.psi_nu);
            println!("  psi(nu) exact in B: {}", d.exact_in_bm);
        }
    }
    for w in &r.warnings {
        println!("warning: {w}");
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Refuted => "REFUTED",
        Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

fn check(
    file: Option<PathBuf>,
    corpus: &CorpusArgs,
    class: &str,
    full_top_check: bool,
    direct_quotient: bool,
    as_json: bool,
) -> Outcome {
    let opts = PresentationOptions { full_top_check };
    let (pres, text, graph_entry) = match (&file, &corpus.corpus) {
        (Some(_), Some(_)) => return Err(Failure::Input("give either a file or --corpus, not both".into())),
        (None, None) => return Err(Failure::Input("give a file or --corpus".into())),
        (Some(path), None) => {
            let f = load(path)?;
            require_d_squared(&f)?;
            let nu = f.class(class).map_err(|e| Failure::Input(e.to_string()))?;
            let top = f.top()?;
            (
                Some(ThreeStepPresentation::new(&f.dga, &top, nu, opts)?),
                f.emit(),
                None,
            )
        }
        (None, Some(key)) => {
            let entry = build_corpus(key, &corpus_params(corpus)?)?;
            let text = DgaFile::from_corpus(&entry).emit();
            if entry.graph.is_some() {
                (None, text, Some(entry))
            } else {
                (Some(entry.presentation(opts)?), text, None)
            }
        }
    };
    let input_hash = hash(&text);
    if let Some(entry) = graph_entry {
        let report = run_graph_checker(&entry, &input_hash, direct_quotient)?;
        if as_json {
            print!("{}", json_with_header(&report, &input_hash));
        } else {
            println!(
                "graph dga on {} vertices, formal dimension {}",
                report.vertices.len(),
                report.formal_dimension
            );
            println!("core dga:");
            print_checker(&report.core);
            let q = &report.quotient;
            println!("quotient by the dotted vertex generators:");
            println!(
                "  weight positive: {}, psi verified: {}",
                q.weight_positive, q.psi_verified
            );
            if let Some(d) = q.direct {
                println!("  psi(nu) not exact in the quotient: {d}");
            }
            println!("verdict: {}", verdict_name(report.verdict));
        }
        return Ok(report.verdict == Verdict::Refuted);
    }
    let pres = pres.expect("non-graph inputs have a presentation");
    let report = run_checker(&pres, &input_hash)?;
    if as_json {
        print!("{}", json_with_header(&report, &input_hash));
    } else {
        print_checker(&report);
        println!("verdict: {}", verdict_name(report.verdict));
    }
    if !report.soundness_ok {
        return Err(Failure::Semantic(
            "an ordering passed all hypotheses but psi(nu) is exact".into(),
        ));
    }
    Ok(report.verdict == Verdict::Refuted)
}

fn emit(corpus: &CorpusArgs, output: Option<&Path>) -> Outcome {
    let key = corpus
        .corpus
        .as_deref()
        .ok_or_else(|| Failure::Input("emit needs --corpus".into()))?;
    let entry = build_corpus(key, &corpus_params(corpus)?)?;
    write_out(output, &DgaFile::from_corpus(&entry).emit())?;
    Ok(true)
}

fn resolve_class(file: &DgaFile, name: &str) -> Result<sullivan::Element, Failure> {
    match file.classes.get(name) {
        Some(e) => Ok(e.clone()),
        None => Ok(file.dga.parse(name)?),
    }
}

#[derive(Serialize)]
struct ConnectedSumReport {
    class_degree: u32,
    cohomology: Vec<(u32, usize)>,
    combined_weight: Option<Value>,
}

fn connected_sum(
    first: &Path,
    first_class: &str,
    second: &Path,
    second_class: &str,
    max_degree: Option<u32>,
    output: Option<&Path>,
    as_json: bool,
) -> Outcome {
    let (a, b) = (load(first)?, load(second)?);
    require_d_squared(&a)?;
    require_d_squared(&b)?;
    let (ca, cb) = (resolve_class(&a, first_class)?, resolve_class(&b, second_class)?);
    let input_hash = hash(&(a.emit() + &b.emit()));
    let cs = ConnectedSum::new(a.dga.clone().into(), ca, b.dga.clone().into(), cb)?;
    let top = max_degree.unwrap_or(2 * cs.class_degree());
    let mut dims = Vec::new();
    for n in 0..=top {
        dims.push((n, cs.cohomology_dim(n)?));
    }
    let combined = match (two_step_weight(&a.dga), two_step_weight(&b.dga)) {
        (Ok(w1), Ok(w2)) => cs.combined_weight(&w1, &w2).ok().map(|c| {
            json!({
                "first": c.left.weights(),
                "second": c.right.weights(),
                "class_weight": c.class_weight,
                "positive": c.is_positive(),
            })
        }),
        _ => None,
    };
    let report = ConnectedSumReport {
        class_degree: cs.class_degree(),
        cohomology: dims,
        combined_weight: combined,
    };
    let text = if as_json {
        json_with_header(&report, &input_hash)
    } else {
        let mut t = format!("connected sum along classes of degree {}\n", report.class_degree);
        for (n, d) in &report.cohomology {
            t.push_str(&format!("H^{n}: {d}\n"));
        }
        if let Some(w) = &report.combined_weight {
            t.push_str(&format!("combined weight: {w}\n"));
        }
        t
    };
    write_out(output, &text)?;
    Ok(true)
}

fn tensor_cmd(first: &Path, second: &Path, output: Option<&Path>) -> Outcome {
    let (a, b) = (load(first)?, load(second)?);
    let t: SullivanDga = tensor(&a.dga, &b.dga)?;
    write_out(output, &DgaFile::from_dga(t).emit())?;
    Ok(true)
}

fn corpus_list(as_json: bool) -> Outcome {
    if as_json {
        let list: Vec<Value> = CORPUS_KEYS
            .iter()
            .map(|(k, d)| json!({"key": k, "description": d}))
            .collect();
        println!("{}", serde_json::to_string_pretty(&list).expect("json"));
    } else {
        for (k, d) in CORPUS_KEYS {
            println!("{k:22} {d}");
        }
    }
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { file, weights, json } => verify(&file, weights, json),
        Command::Cohomology { file, degree, json } => cohomology(&file, degree, json),
        Command::Check {
            file,
            corpus,
            class,
            full_top_check,
            direct_quotient,
            json,
        } => check(file, &corpus, &class, full_top_check, direct_quotient, json),
        Command::Emit { corpus, output } => emit(&corpus, output.as_deref()),
        Command::ConnectedSum {
            first,
            first_class,
            second,
            second_class,
            max_degree,
            output,
            json,
        } => connected_sum(
            &first,
            &first_class,
            &second,
            &second_class,
            max_degree,
            output.as_deref(),
            json,
        ),
        Command::Tensor { first, second, output } => tensor_cmd(&first, &second, output.as_deref()),
        Command::CorpusList { json } => corpus_list(json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Semantic(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
