//! `sextics`: check and enumerate rigid isotopy classes of real nodal
//! sextics, and poke at the underlying lattice and form arithmetic.
//!
//! Exit codes: 0 success, 1 verification/comparison/validation failure,
//! 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use sextics::classify::{
    class_report, class_totals, compare_tables, enumerate_classes, figure_tables, FigureTables,
    NonsingularTable, RigidIsotopyClass,
};
use sextics::forms::{gauss_signature, glue, FiniteQuadraticForm, SubgroupAntiIsometry};
use sextics::involution::{invariants, MarkedInvolution};
use sextics::lattice::{discriminant_form, discriminant_group, signature, IntLattice};
use sextics::scheme::{
    counts, euler_char_nonorientable_half, parse_viro, render_with, DividingType, Notation,
};
use sextics::verify;
use sextics::Error;

#[derive(Parser)]
#[command(
    name = "sextics",
    version,
    about = "Rigid isotopy classes of real irreducible nodal sextics: check, enumerate, verify"
)]
struct Cli {
    /// Render schemes in ASCII (<1<8>>) instead of Unicode (⟨1⟨8⟩⟩)
    #[arg(long, global = true)]
    ascii: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and inspect Viro notation
    Scheme {
        #[command(subcommand)]
        cmd: SchemeCmd,
    },
    /// Gram-matrix lattice computations
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Finite quadratic form computations
    Form {
        #[command(subcommand)]
        cmd: FormCmd,
    },
    /// Marked involutions on the K3 lattice
    Involution {
        #[command(subcommand)]
        cmd: InvolutionCmd,
    },
    /// Check one candidate class through both condition paths
    Check {
        /// Real scheme in Viro notation
        #[arg(long)]
        scheme: String,
        /// Dividing type: I or II
        #[arg(long = "type")]
        divtype: String,
        /// Number of pairs of non-real nodes (0..=5 are meaningful)
        #[arg(long)]
        m: u32,
        /// Number of crossing pairs (dividing classes only)
        #[arg(long)]
        r: Option<u32>,
    },
    /// Enumerate all classes with m ≤ 5
    Enumerate {
        /// JSON output (default)
        #[arg(long)]
        json: bool,
        /// CSV output
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        /// Emit the grouped classification tables instead of the class list
        #[arg(long, conflicts_with_all = ["json", "csv"])]
        tables: bool,
        /// Compare against a golden figures.json and report
        #[arg(long, value_name = "FILE")]
        compare: Option<PathBuf>,
    },
    /// Run every self-verification suite
    Verify,
}

#[derive(Subcommand)]
enum SchemeCmd {
    /// Parse to canonical form
    Parse { text: String },
    /// Oval census and χ of the non-orientable half
    Invariants { text: String },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Discriminant group and form of an even lattice
    Disc { file: PathBuf },
    /// Inertia indices of the Gram matrix
    Signature { file: PathBuf },
}

#[derive(Subcommand)]
enum FormCmd {
    /// Glue two forms along an anti-isometry: file {"a":…, "b":…, "gamma":…}
    Glue { file: PathBuf },
    /// Milgram signature mod 8
    Gauss { file: PathBuf },
}

#[derive(Subcommand)]
enum InvolutionCmd {
    /// Validate a marking literal and extract (m, a, t, δ, r)
    Invariants { file: PathBuf },
}

/// Failure with the exit code it should produce.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidInput(_) | Error::UnknownLattice(_) => {
                Failure::parse(e.to_string())
            }
            other => Failure::data(other.to_string()),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::parse(format!("cannot parse {}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn notation(ascii: bool) -> Notation {
    if ascii {
        Notation::Ascii
    } else {
        Notation::Unicode
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let note = notation(cli.ascii);
    match cli.command {
        Command::Scheme { cmd } => match cmd {
            SchemeCmd::Parse { text } => {
                let s = parse_viro(&text)?;
                println!("{}", render_with(&s, note));
                Ok(0)
            }
            SchemeCmd::Invariants { text } => {
                let s = parse_viro(&text)?;
                let c = counts(&s);
                #[derive(Serialize)]
                struct SchemeInfo {
                    scheme: String,
                    ovals: u32,
                    even: u32,
                    odd: u32,
                    injective_pairs: u32,
                    max_depth: u32,
                    chi_nonorientable_half: Option<i64>,
                }
                print_json(&SchemeInfo {
                    scheme: render_with(&s, note),
                    ovals: c.ovals,
                    even: c.even,
                    odd: c.odd,
                    injective_pairs: c.injective_pairs,
                    max_depth: c.max_depth,
                    chi_nonorientable_half: euler_char_nonorientable_half(&s).ok(),
                });
                Ok(0)
            }
        },
        Command::Lattice { cmd } => match cmd {
            LatticeCmd::Disc { file } => {
                let lattice: IntLattice = read_json(&file)?;
                let group = discriminant_group(&lattice)?;
                // the quadratic form needs an even lattice; the group does not
                let form = match discriminant_form(&lattice) {
                    Ok(f) => Some(f),
                    Err(Error::OddLattice) => None,
                    Err(e) => return Err(e.into()),
                };
                #[derive(Serialize)]
                struct Disc {
                    group: Vec<String>,
                    form: Option<FiniteQuadraticForm>,
                }
                print_json(&Disc {
                    group: group.iter().map(|d| d.to_string()).collect(),
                    form,
                });
                Ok(0)
            }
            LatticeCmd::Signature { file } => {
                let lattice: IntLattice = read_json(&file)?;
                let (positive, negative) = signature(&lattice)?;
                #[derive(Serialize)]
                struct Sig {
                    positive: usize,
                    negative: usize,
                }
                print_json(&Sig { positive, negative });
                Ok(0)
            }
        },
        Command::Form { cmd } => match cmd {
            FormCmd::Glue { file } => {
                #[derive(serde::Deserialize)]
                struct GlueInput {
                    a: FiniteQuadraticForm,
                    b: FiniteQuadraticForm,
                    gamma: SubgroupAntiIsometry,
                }
                let input: GlueInput = read_json(&file)?;
                let glued = glue(&input.a, &input.b, &input.gamma)?;
                print_json(&glued);
                Ok(0)
            }
            FormCmd::Gauss { file } => {
                let form: FiniteQuadraticForm = read_json(&file)?;
                let sigma = gauss_signature(&form)?;
                #[derive(Serialize)]
                struct Gauss {
                    signature_mod_8: u8,
                }
                print_json(&Gauss {
                    signature_mod_8: sigma,
                });
                Ok(0)
            }
        },
        Command::Involution { cmd } => match cmd {
            InvolutionCmd::Invariants { file } => {
                let marking: MarkedInvolution = read_json(&file)?;
                let inv = invariants(&marking)?;
                print_json(&inv);
                Ok(0)
            }
        },
        Command::Check {
            scheme,
            divtype,
            m,
            r,
        } => {
            let scheme = parse_viro(&scheme)?;
            let divtype: DividingType = divtype.parse()?;
            let class = RigidIsotopyClass::new(m, scheme, divtype, r)?;
            run_check(&class, note)
        }
        Command::Enumerate {
            csv,
            tables,
            compare,
            ..
        } => run_enumerate(csv, tables, compare, note),
        Command::Verify => run_verify(),
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn run_check(class: &RigidIsotopyClass, note: Notation) -> Result<u8, Failure> {
    let table = NonsingularTable::standard();
    let report = class_report(class, &table)?;
    print!(
        "scheme: {}  type: {}  m: {}",
        render_with(&class.scheme, note),
        class.divtype,
        class.m
    );
    match class.r {
        Some(r) => println!("  r: {r}"),
        None => println!(),
    }
    let topo = &report.topological;
    let opt = |v: Option<bool>| v.map_or("n/a".to_string(), |b| pass(b).to_string());
    println!(
        "topological: (1) smoothing: {}  (2) harnack: {}  (3) arnold: {}  (4) injective-pair rule: {}",
        pass(topo.smoothing),
        pass(topo.harnack),
        opt(topo.arnold),
        opt(topo.injective_rule),
    );
    match (&report.translated, &report.arithmetic) {
        (Some(t), Some(a)) => {
            let r_text = t.r.map_or("-".to_string(), |r| r.to_string());
            println!(
                "invariants:  a={} t={} delta={} r={}",
                t.a, t.t, t.delta, r_text
            );
            let entries = a.entries();
            let rendered: Vec<String> = entries
                .iter()
                .map(|(name, ok)| format!("{name} {}", pass(*ok)))
                .collect();
            println!("arithmetic:  {}", rendered.join("  "));
        }
        _ => println!("arithmetic:  n/a (m = 0 is decided by the nonsingular table)"),
    }
    println!(
        "{}",
        if report.exists {
            "EXISTS"
        } else {
            "DOES NOT EXIST"
        }
    );
    Ok(0)
}

#[derive(Serialize)]
struct ClassRecord {
    m: u32,
    scheme: String,
    #[serde(rename = "type")]
    divtype: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<u32>,
}

fn run_enumerate(
    csv: bool,
    tables: bool,
    compare: Option<PathBuf>,
    note: Notation,
) -> Result<u8, Failure> {
    let table = NonsingularTable::standard();
    let classes = enumerate_classes(&table)?;

    if let Some(path) = compare {
        let golden: FigureTables = read_json(&path)?;
        let computed = figure_tables(&classes);
        let diffs = compare_tables(&computed, &golden);
        let (dividing, nondividing, empty) = class_totals(&classes);
        if diffs.is_empty() {
            println!("figure1: {} rows match", computed.figure1.len());
            println!("figure2: {} rows match", computed.figure2.len());
            println!("dividing classes: {dividing}");
            println!(
                "non-dividing classes: {nondividing} = {} (nonempty schemes) + {empty} (empty scheme); \
                 the published total 125 counts nonempty schemes only",
                nondividing - empty
            );
            Ok(0)
        } else {
            for d in &diffs {
                eprintln!("mismatch: {d}");
            }
            Err(Failure::data(format!(
                "{} row mismatches against {}",
                diffs.len(),
                path.display()
            )))
        }
    } else if tables {
        let mut computed = figure_tables(&classes);
        if note == Notation::Ascii {
            for row in &mut computed.figure1 {
                row.scheme = render_with(&parse_viro(&row.scheme).unwrap(), note);
            }
            for row in &mut computed.figure2 {
                row.scheme = render_with(&parse_viro(&row.scheme).unwrap(), note);
            }
        }
        print_json(&computed);
        Ok(0)
    } else if csv {
        println!("m,scheme,type,r");
        for c in &classes {
            let r = c.r.map_or(String::new(), |r| r.to_string());
            println!(
                "{},{},{},{}",
                c.m,
                render_with(&c.scheme, note),
                c.divtype,
                r
            );
        }
        Ok(0)
    } else {
        let records: Vec<ClassRecord> = classes
            .iter()
            .map(|c| ClassRecord {
                m: c.m,
                scheme: render_with(&c.scheme, note),
                divtype: c.divtype.to_string(),
                r: c.r,
            })
            .collect();
        print_json(&records);
        Ok(0)
    }
}

fn run_verify() -> Result<u8, Failure> {
    let checks = verify::run_all();
    let mut failed = 0;
    for c in &checks {
        if c.passed {
            println!("ok   {:<24} {}", c.name, c.detail);
        } else {
            println!("FAIL {:<24} {}", c.name, c.detail);
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all {} suites passed", checks.len());
        Ok(0)
    } else {
        Err(Failure::data(format!("{failed} suites failed")))
    }
}
