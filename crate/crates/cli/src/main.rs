mod dot;
mod input;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use raag_cc::cococheck::{certify, CertifyOptions};
use raag_cc::cube::{build_core_with, check_local_isometry, enumerate_elements, membership, BuildOptions, SubgroupCore};
use raag_cc::raag::{min_class, normalize, syllable_order, DefiningGraph, Word};
use raag_cc::section8::{
    constants, displacement_upper, family, verify_order_window, verify_star, HLetter, HWord, Section8Family,
};
use serde_json::{json, Value};

use input::{load_core, load_graph, load_model, load_words, CliError, CliResult};

#[derive(Parser)]
#[command(name = "raagcc", version, about = "Normal forms, subgroup cores and convex-cocompactness checks")]
struct Cli {
    /// Worker threads for parallel sweeps; RAAG_THREADS takes precedence.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical normal form of a word.
    Normalize {
        #[arg(long)]
        graph: PathBuf,
        word: String,
    },
    /// All normal forms of the element of a word.
    Minclass {
        #[arg(long)]
        graph: PathBuf,
        word: String,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// The syllable partial order of the normal form of a word.
    Order {
        #[arg(long)]
        graph: PathBuf,
        word: String,
    },
    #[command(subcommand)]
    Core(CoreCommand),
    /// Decides whether the subgroup is convex cocompact.
    Certify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        cell_budget: usize,
        #[arg(long, default_value_t = 5_000_000)]
        enum_budget: usize,
    },
    #[command(subcommand)]
    Section8(Section8Command),
    /// Renders a core file as DOT (default) or JSON.
    Export {
        #[arg(long)]
        core: PathBuf,
    },
}

#[derive(Subcommand)]
enum CoreCommand {
    /// Folds and square-completes the wedge of generator loops.
    Build {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Shuffle the processing order with this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Link-condition report for a core file.
    Check {
        #[arg(long)]
        core: PathBuf,
    },
    /// Whether a word lies in the subgroup; exit 0 if it does, 1 if not.
    Member {
        #[arg(long)]
        core: PathBuf,
        word: String,
    },
    /// Subgroup elements of length at most `--max-len`.
    Enum {
        #[arg(long)]
        core: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 5_000_000)]
        enum_budget: usize,
    },
}

#[derive(Args, Clone, Copy)]
struct FamilyArgs {
    #[arg(long, default_value_t = 6)]
    n: u32,
    #[arg(long = "N", default_value_t = 2)]
    big_n: u32,
}

impl FamilyArgs {
    fn family(self) -> CliResult<Section8Family> {
        Ok(family(self.n, self.big_n)?)
    }
}

#[derive(Subcommand)]
enum Section8Command {
    /// The coincidence graph and the generators w_1..w_N.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
    },
    Constants {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Star-set containment for all words up to length `--kmax`.
    VerifyStar {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Displacement bounds as CSV, for one word or all words up to a length.
    Bound {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, conflicts_with = "max_len")]
        word: Option<String>,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Order-window check on seeded random words.
    OrderWindow {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command prints and how it exits.
struct Report {
    body: String,
    code: u8,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, code: 0 }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn parse_word(text: &str, graph: &DefiningGraph) -> CliResult<Word> {
    Word::parse(text, graph).map_err(|e| CliError::input(format!("word `{text}`: {e}")))
}

fn threads(flag: Option<usize>) -> CliResult<Option<usize>> {
    match std::env::var("RAAG_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::input(format!("RAAG_THREADS must be a positive integer, got `{v}`"))),
        },
        Err(_) => match flag {
            Some(0) => Err(CliError::input("--threads must be positive")),
            other => Ok(other),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = threads(cli.threads).and_then(|t| {
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(t) = t {
            pool = pool.num_threads(t);
        }
        let pool = pool.build().map_err(|e| CliError::input(e.to_string()))?;
        pool.install(|| run(cli.command, cli.format))
    });
    match outcome {
        Ok(report) => {
            let mut out = io::stdout().lock();
            if out.write_all(report.body.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("raagcc: {e}");
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command, format: Option<Format>) -> CliResult<Report> {
    let fmt = |default: Format| format.unwrap_or(default);
    match command {
        Command::Normalize { graph, word } => {
            let g = load_graph(&graph)?;
            let n = normalize(&parse_word(&word, &g)?, &g)?;
            Ok(Report::ok(match fmt(Format::Text) {
                Format::Json => pretty(&json!({
                    "schema": "raagcc.normalize/1",
                    "input": word,
                    "normal": n.spell(&g),
                    "length": n.len(),
                    "syllables": n.syllable_count(),
                })),
                _ => n.spell(&g) + "\n",
            }))
        }
        Command::Minclass { graph, word, budget } => {
            let g = load_graph(&graph)?;
            let class: Vec<String> = min_class(&parse_word(&word, &g)?, &g, budget)?
                .iter()
                .map(|w| w.spell(&g))
                .collect();
            Ok(Report::ok(match fmt(Format::Text) {
                Format::Json => pretty(&json!({ "schema": "raagcc.minclass/1", "size": class.len(), "words": class })),
                _ => class.iter().map(|w| format!("{w}\n")).collect(),
            }))
        }
        Command::Order { graph, word } => {
            let g = load_graph(&graph)?;
            let n = normalize(&parse_word(&word, &g)?, &g)?;
            let order = syllable_order(&n, &g)?;
            let syllables: Vec<String> = n
                .syllables()
                .iter()
                .map(|s| {
                    let label = g.label(s.generator);
                    if s.exponent == 1 {
                        label.to_string()
                    } else {
                        format!("{label}^{}", s.exponent)
                    }
                })
                .collect();
            let pairs = order.pairs();
            Ok(Report::ok(match fmt(Format::Text) {
                Format::Json => pretty(&json!({ "schema": "raagcc.order/1", "syllables": syllables, "pairs": pairs })),
                _ => pairs
                    .iter()
                    .map(|&(p, q)| format!("{p}:{} < {q}:{}\n", syllables[p], syllables[q]))
                    .collect(),
            }))
        }
        Command::Core(c) => run_core(c, fmt),
        Command::Certify {
            graph,
            model,
            gens,
            cell_budget,
            enum_budget,
        } => {
            if cell_budget == 0 || enum_budget == 0 {
                return Err(CliError::input("budgets must be positive"));
            }
            let g = load_graph(&graph)?;
            let m = load_model(&model, Some(&g))?;
            let words = load_words(&gens, &g)?;
            let cert = certify(&g, &m, &words, CertifyOptions { cell_budget, enum_budget })?;
            Ok(Report {
                body: pretty(&cert.to_json()),
                code: cert.exit_code() as u8,
            })
        }
        Command::Section8(c) => run_section8(c, fmt),
        Command::Export { core } => {
            let core = load_core(&core)?;
            Ok(Report::ok(match fmt(Format::Dot) {
                Format::Json => pretty(&serde_json::to_value(core.to_file()).map_err(raag_cc::Error::from)?),
                _ => dot::export_dot(&core),
            }))
        }
    }
}

fn core_summary(core: &SubgroupCore) -> Value {
    let c = &core.complex;
    json!({
        "vertices": c.vertex_count(),
        "edges": c.edges().len(),
        "squares": c.squares().len(),
        "status": core.status,
        "folds": core.stats.folds,
        "squares_added": core.stats.squares_added,
        "rounds": core.stats.rounds,
    })
}

/// Generator indices in violation records become labels.
fn label_violations(v: Value, g: &DefiningGraph) -> Value {
    match v {
        Value::Array(items) => Value::Array(items.into_iter().map(|x| label_violations(x, g)).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, x)| match (k.as_str(), x.as_u64()) {
                    ("label", Some(i)) => (k, json!(g.labels()[i as usize])),
                    _ => (k, label_violations(x, g)),
                })
                .collect(),
        ),
        other => other,
    }
}

fn run_core(command: CoreCommand, fmt: impl Fn(Format) -> Format) -> CliResult<Report> {
    match command {
        CoreCommand::Build {
            graph,
            gens,
            budget,
            seed,
            output,
        } => {
            if budget == 0 {
                return Err(CliError::input("--budget must be positive"));
            }
            let g = load_graph(&graph)?;
            let words = load_words(&gens, &g)?;
            let core = build_core_with(&g, &words, BuildOptions { budget, shuffle: seed })?;
            let code = if core.is_verified() { 0 } else { 2 };
            let file = serde_json::to_value(core.to_file()).map_err(raag_cc::Error::from)?;
            let body = match output {
                Some(path) => {
                    fs::write(&path, pretty(&file)).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                    match fmt(Format::Text) {
                        Format::Json => pretty(&core_summary(&core)),
                        _ => text_summary(&core),
                    }
                }
                None => match fmt(Format::Json) {
                    Format::Text => text_summary(&core),
                    _ => pretty(&file),
                },
            };
            Ok(Report { body, code })
        }
        CoreCommand::Check { core } => {
            let core = load_core(&core)?;
            let report = check_local_isometry(&core.complex, &core.graph);
            let code = if report.is_empty() { 0 } else { 1 };
            let body = match fmt(Format::Json) {
                Format::Text => format!(
                    "{} violations ({} foldable pairs, {} unfilled corners)\n",
                    report.violations.len(),
                    report.foldable_pairs(),
                    report.unfilled_corners()
                ),
                _ => pretty(&json!({
                    "schema": "raagcc.link-report/1",
                    "clean": report.is_empty(),
                    "core": core_summary(&core),
                    "violations": label_violations(serde_json::to_value(&report.violations).map_err(raag_cc::Error::from)?, &core.graph),
                })),
            };
            Ok(Report { body, code })
        }
        CoreCommand::Member { core, word } => {
            let core = load_core(&core)?;
            let w = parse_word(&word, &core.graph)?;
            let member = membership(&core, &w)?;
            let normal = normalize(&w, &core.graph)?.spell(&core.graph);
            let body = match fmt(Format::Text) {
                Format::Json => pretty(&json!({ "schema": "raagcc.member/1", "word": normal, "member": member })),
                _ => format!("{}\n", if member { "member" } else { "not a member" }),
            };
            Ok(Report {
                body,
                code: if member { 0 } else { 1 },
            })
        }
        CoreCommand::Enum {
            core,
            max_len,
            enum_budget,
        } => {
            let core = load_core(&core)?;
            let words: Vec<String> = enumerate_elements(&core, max_len, enum_budget)?
                .iter()
                .map(|w| w.spell(&core.graph))
                .collect();
            Ok(Report::ok(match fmt(Format::Text) {
                Format::Json => pretty(&json!({ "schema": "raagcc.enum/1", "max_len": max_len, "count": words.len(), "elements": words })),
                _ => words.iter().map(|w| format!("{w}\n")).collect(),
            }))
        }
    }
}

fn text_summary(core: &SubgroupCore) -> String {
    let c = &core.complex;
    format!(
        "{}: {} vertices, {} edges, {} squares ({} folds, {} squares added)\n",
        if core.is_verified() { "verified" } else { "budget exceeded" },
        c.vertex_count(),
        c.edges().len(),
        c.squares().len(),
        core.stats.folds,
        core.stats.squares_added
    )
}

fn random_h(fam: &Section8Family, len: usize, rng: &mut ChaCha8Rng) -> HWord {
    let mut out: Vec<HLetter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = HLetter::new(rng.gen_range(1..=fam.big_n()), rng.gen_bool(0.5));
        if out.last() != Some(&l.inverse()) {
            out.push(l);
        }
    }
    HWord(out)
}

fn run_section8(command: Section8Command, fmt: impl Fn(Format) -> Format) -> CliResult<Report> {
    match command {
        Section8Command::Gen { family } => {
            let fam = family.family()?;
            let g = fam.graph();
            let gens: Vec<String> = fam.generators().iter().map(|w| w.spell(g)).collect();
            Ok(Report::ok(match fmt(Format::Json) {
                Format::Text => gens.iter().enumerate().map(|(i, w)| format!("w{} = {w}\n", i + 1)).collect(),
                _ => pretty(&json!({
                    "schema": "raagcc.section8-family/1",
                    "n": fam.n(),
                    "N": fam.big_n(),
                    "genus": fam.genus(),
                    "graph": g.to_file(),
                    "generators": gens,
                })),
            }))
        }
        Section8Command::Constants { family } => {
            let c = constants(&family.family()?)?;
            Ok(Report::ok(match fmt(Format::Json) {
                Format::Text => format!("b={} d={} L={} ell'={} ell={}\n", c.b, c.d, c.big_l, c.ell_prime, c.ell),
                _ => pretty(&serde_json::to_value(c).map_err(raag_cc::Error::from)?),
            }))
        }
        Section8Command::VerifyStar { family, kmax } => {
            let report = verify_star(&family.family()?, kmax)?;
            let code = if report.is_clean() { 0 } else { 1 };
            let body = match fmt(Format::Json) {
                Format::Text => format!(
                    "{} words, {} violations, {} improper spans\n",
                    report.checked,
                    report.violations.len(),
                    report.improper.len()
                ),
                _ => pretty(&serde_json::to_value(&report).map_err(raag_cc::Error::from)?),
            };
            Ok(Report { body, code })
        }
        Section8Command::Bound { family, word, max_len } => {
            let fam = family.family()?;
            let words = match (word, max_len) {
                (Some(w), _) => vec![HWord::parse(&w, &fam)?],
                (None, Some(k)) => fam.reduced_words(k),
                (None, None) => return Err(CliError::input("give --word or --max-len")),
            };
            let rows = words
                .par_iter()
                .map(|h| displacement_upper(h, &fam))
                .collect::<raag_cc::Result<Vec<_>>>()?;
            Ok(Report::ok(match fmt(Format::Csv) {
                Format::Json => pretty(&serde_json::to_value(&rows).map_err(raag_cc::Error::from)?),
                _ => {
                    let mut out = String::from("h,|h|_H,m,bound,span-proper\n");
                    for r in &rows {
                        out += &format!("{},{},{},{},{}\n", r.h, r.length, r.m, r.bound, r.span_proper);
                    }
                    out
                }
            }))
        }
        Section8Command::OrderWindow {
            family,
            samples,
            max_len,
            seed,
        } => {
            let fam = family.family()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sample: Vec<HWord> = (0..samples)
                .map(|_| {
                    let len = rng.gen_range(0..=max_len);
                    random_h(&fam, len, &mut rng)
                })
                .collect();
            let report = verify_order_window(&fam, &sample)?;
            let code = if report.violations.is_empty() { 0 } else { 1 };
            let body = match fmt(Format::Json) {
                Format::Text => format!(
                    "{} words, {} pairs at separation > {}, {} violations\n",
                    report.checked,
                    report.pairs,
                    report.threshold,
                    report.violations.len()
                ),
                _ => pretty(&serde_json::to_value(&report).map_err(raag_cc::Error::from)?),
            };
            Ok(Report { body, code })
        }
    }
}
