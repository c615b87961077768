use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ferrers::decompose::DecomposeError;
use ferrers::oracle::{self, OracleError};
use ferrers::pattern::first_occurrence;
use ferrers::{catalog, decompose, orthant_model, verify_model, BinaryMatrix, Pattern};

#[derive(Parser)]
#[command(name = "ferrers", version, about = "Ferrers dimension three recognition and certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Pattern names, class selectors (e.g. chain3, stick) or pattern files.
    #[arg(long, global = true, value_delimiter = ',')]
    patterns: Vec<String>,

    /// Largest row or column count for exhaustive ordering search.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_SEARCH_BUDGET, value_parser = positive)]
    budget_perm: usize,

    /// Largest zero count for the dimension oracle.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_ZERO_BUDGET, value_parser = positive)]
    budget_zeros: usize,

    /// Worker threads for the oracle searches.
    #[arg(long, global = true, value_parser = positive)]
    jobs: Option<usize>,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Is the matrix free of the selected patterns in its given order?
    Check { input: Option<PathBuf> },
    /// Decompose a Γ,Δ-free matrix into three chain graphs.
    Decompose { input: Option<PathBuf> },
    /// Search for an ordering free of the selected patterns.
    Search { input: Option<PathBuf> },
    /// Exact Ferrers dimension by the covering oracle.
    Dim {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = oracle::DEFAULT_MAX_DIMENSION)]
        d_max: usize,
    },
    /// Build a 3D point/orthant model.
    Represent {
        input: Option<PathBuf>,
        /// Also write plot data (side,label,x,y,z) to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Cross-check freeability against the dimension oracle on all small graphs.
    CrossValidate {
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        /// Without --rows/--cols, sweep every shape up to this side.
        #[arg(long, default_value_t = oracle::MAX_ENUMERATION_SIDE)]
        max_side: usize,
    },
    /// List the forbidden patterns of known graph classes.
    Catalog,
    /// Emit a random Γ,Δ-free intersection of three chain graphs.
    Generate {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Budget(m) | Failure::Io(m) => m,
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            OracleError::CellNotZero { .. } => Failure::Usage(e.to_string()),
        }
    }
}

struct Report {
    json: Value,
    text: String,
    success: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli).and_then(|r| emit(&cli, &r).map(|_| r.success)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), Failure> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("json values serialize") + "\n",
        Format::Text => report.text.clone(),
    };
    match &cli.output {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn read_matrix(path: Option<&Path>) -> Result<BinaryMatrix, Failure> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(e.to_string()))?;
            s
        }
    };
    BinaryMatrix::parse(&text).map_err(|e| Failure::Usage(format!("invalid matrix: {e}")))
}

fn selected_patterns(cli: &Cli) -> Result<Vec<(String, Pattern)>, Failure> {
    if cli.patterns.is_empty() {
        return Ok(catalog::select("chain3").expect("chain3 is in the catalog"));
    }
    let mut out = Vec::new();
    for name in &cli.patterns {
        if let Some(ps) = catalog::select(name) {
            out.extend(ps);
            continue;
        }
        let path = Path::new(name);
        if !path.exists() {
            return Err(Failure::Usage(format!("unknown pattern or file: {name}")));
        }
        let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{name}: {e}")))?;
        let p = Pattern::parse(&text).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
        out.push((name.clone(), p));
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Check { input } => check(cli, &read_matrix(input.as_deref())?),
        Command::Decompose { input } => run_decompose(&read_matrix(input.as_deref())?),
        Command::Search { input } => search(cli, &read_matrix(input.as_deref())?),
        Command::Dim { input, d_max } => dim(cli, &read_matrix(input.as_deref())?, *d_max),
        Command::Represent { input, csv } => represent(cli, &read_matrix(input.as_deref())?, csv.as_deref()),
        Command::CrossValidate { rows, cols, max_side } => cross_validate(cli, *rows, *cols, *max_side),
        Command::Catalog => Ok(catalog_report()),
        Command::Generate { rows, cols } => generate(cli, *rows, *cols),
    }
}

fn check(cli: &Cli, a: &BinaryMatrix) -> Result<Report, Failure> {
    let named = selected_patterns(cli)?;
    let names: Vec<&str> = named.iter().map(|(n, _)| n.as_str()).collect();
    let patterns: Vec<Pattern> = named.iter().map(|(_, p)| p.clone()).collect();
    Ok(match first_occurrence(a, &patterns) {
        None => Report {
            json: json!({ "free": true, "patterns": names, "witness": null }),
            text: "free\n".into(),
            success: true,
        },
        Some((k, occ)) => Report {
            json: json!({ "free": false, "patterns": names, "witness": { "pattern": names[k], "occurrence": occ } }),
            text: format!("contains {} at {}\n", names[k], occurrence_text(&occ)),
            success: false,
        },
    })
}

fn occurrence_text(occ: &ferrers::Occurrence) -> String {
    let one = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
    format!("rows [{}] cols [{}]", one(&occ.rows), one(&occ.cols))
}

fn run_decompose(a: &BinaryMatrix) -> Result<Report, Failure> {
    Ok(match decompose(a) {
        Ok(dec) => {
            let mut text = String::new();
            for (name, f) in [("A1", &dec.a1), ("A2", &dec.a2), ("A3", &dec.a3)] {
                text.push_str(&format!("{name}:\n{f}"));
            }
            text.push_str(&format!("L3: {:?}\ncertified: {}\n", dec.l3.one_based(), dec.is_certified()));
            Report {
                json: serde_json::to_value(&dec).expect("decomposition serializes"),
                text,
                success: true,
            }
        }
        Err(DecomposeError::NotFree { pattern, occurrence }) => Report {
            json: json!({ "error": "NotFree", "pattern": pattern, "witness": occurrence }),
            text: format!("not free: contains {pattern} at {}\n", occurrence_text(&occurrence)),
            success: false,
        },
        Err(e) => Report {
            json: json!({ "error": "InvariantViolation", "detail": e.to_string() }),
            text: format!("{e}\n"),
            success: false,
        },
    })
}

fn search(cli: &Cli, a: &BinaryMatrix) -> Result<Report, Failure> {
    let patterns: Vec<Pattern> = selected_patterns(cli)?.into_iter().map(|(_, p)| p).collect();
    Ok(match oracle::search_free_ordering_with_budget(a, &patterns, cli.budget_perm)? {
        Some((rp, cp)) => {
            let ordered = a.permute(&rp, &cp).expect("orders match the matrix");
            Report {
                json: json!({ "found": true, "row_order": rp, "col_order": cp, "matrix": ordered.to_row_strings() }),
                text: format!("row order {:?}\ncol order {:?}\n{}", rp.one_based(), cp.one_based(), ordered.to_text()),
                success: true,
            }
        }
        None => Report {
            json: json!({ "found": false }),
            text: "none\n".into(),
            success: false,
        },
    })
}

fn dim(cli: &Cli, a: &BinaryMatrix, d_max: usize) -> Result<Report, Failure> {
    let cert = oracle::ferrers_dimension_with_budget(a, d_max, cli.budget_zeros)?;
    let text = match cert.dimension {
        oracle::Dimension::Exact(d) => format!("dimension {d}\n"),
        oracle::Dimension::Exceeds(d) => format!("dimension exceeds {d}\n"),
    };
    Ok(Report {
        json: serde_json::to_value(&cert).expect("certificate serializes"),
        text,
        success: true,
    })
}

fn represent(cli: &Cli, a: &BinaryMatrix, csv: Option<&Path>) -> Result<Report, Failure> {
    let chain3 = catalog::chain3();
    let ordered = if ferrers::is_free(a, &chain3) {
        a.clone()
    } else {
        match oracle::search_free_ordering_with_budget(a, &chain3, cli.budget_perm)? {
            Some((rp, cp)) => a.permute(&rp, &cp).expect("orders match the matrix"),
            None => {
                return Ok(Report {
                    json: json!({ "found": false }),
                    text: "none: no ordering avoids gamma and delta\n".into(),
                    success: false,
                })
            }
        }
    };
    let dec = decompose(&ordered).map_err(|e| Failure::Usage(e.to_string()))?;
    let model = orthant_model(&dec, &ordered).map_err(|e| Failure::Usage(e.to_string()))?;
    let verified = verify_model(&model, &ordered).map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(path) = csv {
        let file = fs::File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        model
            .write_csv(file)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    let mut text = String::new();
    for (label, p) in model.row_labels.iter().zip(&model.points) {
        text.push_str(&format!("point  {label} {p:?}\n"));
    }
    for (label, c) in model.col_labels.iter().zip(&model.corners) {
        text.push_str(&format!("corner {label} {c:?}\n"));
    }
    Ok(Report {
        json: serde_json::to_value(&model).expect("model serializes"),
        text,
        success: verified,
    })
}

fn cross_validate(cli: &Cli, rows: Option<usize>, cols: Option<usize>, max_side: usize) -> Result<Report, Failure> {
    let shapes: Vec<(usize, usize)> = match (rows, cols) {
        (Some(m), Some(n)) => vec![(m, n)],
        (None, None) => (1..=max_side).flat_map(|m| (1..=max_side).map(move |n| (m, n))).collect(),
        _ => return Err(Failure::Usage("--rows and --cols go together".into())),
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    for (m, n) in &shapes {
        let r = oracle::cross_validate_with(*m, *n, cli.budget_perm, cli.budget_zeros)?;
        text.push_str(&format!(
            "{m}x{n}: {} classes, {} freeable, {} with dimension <= 3, {} discrepancies\n",
            r.classes,
            r.freeable,
            r.dim_le_3,
            r.discrepancies.len()
        ));
        reports.push(r);
    }
    let success = reports.iter().all(|r| r.is_clean());
    let json = if reports.len() == 1 {
        serde_json::to_value(&reports[0])
    } else {
        serde_json::to_value(&reports)
    }
    .expect("reports serialize");
    Ok(Report { json, text, success })
}

fn catalog_report() -> Report {
    let mut json = Vec::new();
    let mut text = String::new();
    for class in catalog::CLASSES {
        let patterns: Vec<Value> = class
            .patterns
            .iter()
            .map(|n| json!({ "name": n, "rows": catalog::pattern(n).unwrap().to_row_strings() }))
            .collect();
        json.push(json!({ "class": class.name, "selector": class.selector, "patterns": patterns, "note": class.note }));
        text.push_str(&format!("{} [{}]\n", class.name, class.selector));
        for n in class.patterns {
            let rows = catalog::pattern(n).unwrap().to_row_strings().join(" / ");
            text.push_str(&format!("  {n}: {rows}\n"));
        }
        if let Some(note) = class.note {
            text.push_str(&format!("  note: {note}\n"));
        }
    }
    Report {
        json: Value::Array(json),
        text,
        success: true,
    }
}

fn generate(cli: &Cli, rows: usize, cols: usize) -> Result<Report, Failure> {
    if rows == 0 || cols == 0 {
        return Err(Failure::Usage("--rows and --cols must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let a = ferrers::random::random_chain3_instance(&mut rng, rows, cols);
    Ok(Report {
        json: json!({ "rows": a.to_row_strings() }),
        text: a.to_text(),
        success: true,
    })
}
