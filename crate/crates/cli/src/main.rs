use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use patchtower_core::complexes::{minimize, FreeComplex};
use patchtower_core::graded::{module_invariants, verify_height_amplitude, HAReport, ModuleInvariants};
use patchtower_core::patcher::{certify, patch, FreenessCertificate};
use patchtower_core::scenario::{generate, Perturbation, ScenarioParams};
use patchtower_core::{io, Error, ErrorKind};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "patchtower", version, about = "Height-amplitude checks, minimal complexes and tower patching")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a tower with a known limit, plus an `expected.json` sidecar.
    Gen {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Top degree; defaults to q.
        #[arg(long)]
        d: Option<i32>,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Comma-separated precision schedule m_1,..,m_N.
        #[arg(long, value_delimiter = ',')]
        precisions: Option<Vec<u32>>,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = Perturbation::None)]
        perturb: Perturbation,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Height-amplitude report for a complex over F_p[T].
    VerifyHa { complex: PathBuf },
    /// Depth, projective dimension and Betti numbers of a graded module.
    Invariants { module: PathBuf },
    /// Canonical minimal model of a complex.
    Minimize { complex: PathBuf },
    /// Patch a tower to the given precision and certify the limit.
    Patch {
        tower: PathBuf,
        #[arg(long, default_value_t = 2)]
        precision: u32,
    },
}

/// What a successful run prints, and whether it counts as a violation.
struct Outcome {
    json: Value,
    text: String,
    violation: bool,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Gen { p, q, r, d, levels, precisions, rank, seed, perturb, out_dir } => {
            let mut params = ScenarioParams::new(p, q, r, levels, seed);
            params.d = d;
            params.precisions = precisions;
            params.rank = rank;
            params.perturbation = perturb;
            let sc = generate(&params)?;
            fs::create_dir_all(&out_dir).map_err(|e| Error::InvalidParameter(format!("{}: {e}", out_dir.display())))?;
            let tower = out_dir.join("tower.json");
            let expected = out_dir.join("expected.json");
            write(&tower, &(io::to_string_pretty(&io::tower_to_json(&sc.tower)) + "\n"))?;
            let sidecar = io::sidecar_to_json(&sc.sidecar);
            write(&expected, &(io::to_string_pretty(&sidecar) + "\n"))?;
            let text = format!(
                "wrote {} and {}\nrank {}, tau {:?}, expected error {}\n",
                tower.display(),
                expected.display(),
                sidecar.rank,
                sidecar.tau,
                sidecar.expected_error.as_deref().unwrap_or("none")
            );
            let json = json!({
                "tower": tower.display().to_string(),
                "expected": expected.display().to_string(),
                "rank": sidecar.rank,
                "tau": sidecar.tau,
                "expected_error": sidecar.expected_error,
            });
            Ok(Outcome { json, text, violation: false })
        }
        Command::VerifyHa { complex } => {
            let c = io::parse_complex(&read(&complex)?)?;
            let rep = verify_height_amplitude(&c)?;
            Ok(Outcome { text: ha_text(&rep), violation: !rep.passes(), json: to_value(&rep) })
        }
        Command::Invariants { module } => {
            let m = io::parse_module(&read(&module)?)?;
            let inv = module_invariants(&m)?;
            Ok(Outcome { text: invariants_text(&inv), json: to_value(&inv), violation: false })
        }
        Command::Minimize { complex } => {
            let c = io::parse_complex(&read(&complex)?)?;
            let min = minimize(&c)?;
            Ok(Outcome { text: complex_text(&min), json: to_value(&io::complex_to_json(&min)), violation: false })
        }
        Command::Patch { tower, precision } => {
            let t = io::parse_tower(&read(&tower)?)?;
            let limit = patch(&t, precision)?;
            let cert = certify(&t, &limit)?;
            let mut json = to_value(&cert);
            json["delta"] = to_value(&io::complex_to_json(limit.delta()));
            Ok(Outcome { text: certificate_text(&cert), json, violation: false })
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn ha_text(r: &HAReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "amplitude {} (d- {:?}, d+ {:?})", r.amplitude, r.d_minus, r.d_plus);
    let _ = writeln!(s, "support heights {:?}", r.height_profile);
    for e in &r.cohomology {
        let _ = writeln!(s, "H^{}: {} generators, dim {}", e.degree, e.generators, e.dim);
    }
    let _ = writeln!(s, "part i: {:?}", r.part_i.verdict);
    let _ = writeln!(s, "part ii: {:?} {:?}", r.part_ii.verdict, r.part_ii.failing_degrees);
    let iii = &r.part_iii;
    if iii.applicable {
        let _ = writeln!(
            s,
            "part iii: lower vanishing {}, top perfect {}, duality {:?}",
            iii.lower_vanishing, iii.top_perfect, iii.duality
        );
    } else {
        let _ = writeln!(s, "part iii: not applicable");
    }
    let _ = writeln!(s, "{}", if r.passes() { "PASS" } else { "FAIL" });
    s
}

fn invariants_text(i: &ModuleInvariants) -> String {
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    format!(
        "dim {}\ndepth {}\ngrade {}\nprojdim {}\nperfect {}\nbetti {:?}\n",
        i.dim,
        opt(i.depth),
        opt(i.grade),
        opt(i.projdim),
        i.perfect.map_or("-".to_string(), |b| b.to_string()),
        i.betti
    )
}

fn complex_text(c: &FreeComplex) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ranks {:?} from degree {}", c.ranks(), c.lo());
    for i in c.degrees() {
        if let Some(d) = c.differential(i) {
            let _ = writeln!(s, "d^{i} =");
            for r in 0..d.rows() {
                let row: Vec<String> = d.row(r).iter().map(|e| e.to_string()).collect();
                let _ = writeln!(s, "  [{}]", row.join(", "));
            }
        }
    }
    s
}

fn certificate_text(c: &FreenessCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "certified at precision {} along levels {:?}", c.precision, c.chain);
    let _ = writeln!(s, "H free of rank {} over R", c.rank);
    let _ = writeln!(s, "tau {:?}", c.tau);
    let _ = writeln!(s, "depth {}, projdim {}", c.depth, c.projdim);
    let lower = &c.lower_cohomology;
    if !lower.levels_with_lower_cohomology.is_empty() {
        let _ = writeln!(s, "lower cohomology at levels {:?} vanishes in the limit", lower.levels_with_lower_cohomology);
    }
    s.push_str(&complex_text(c.limit.delta()));
    s
}

/// A closed stdout is not worth a panic.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Violation => 1,
        ErrorKind::InvalidInput => 2,
        ErrorKind::SearchFailure => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => emit(&(serde_json::to_string_pretty(&out.json).expect("serializable") + "\n")),
                Format::Text => emit(&out.text),
            }
            ExitCode::from(if out.violation { 1 } else { 0 })
        }
        Err(e) => {
            match cli.format {
                Format::Json => {
                    let obj = json!({ "error": e.name(), "message": e.to_string() });
                    emit(&(serde_json::to_string_pretty(&obj).expect("serializable") + "\n"));
                }
                Format::Text => eprintln!("error: {} ({})", e, e.name()),
            }
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
