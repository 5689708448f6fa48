//! The `lva` command line: every computation reads JSON (inline or from a
//! file) and writes one JSON document carrying `schema_version`.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lva_core::fock::{element_from_json, integrality_check, reduce_mod_p, to_h_basis, to_s_basis, FockElement, Verdict};
use lva_core::harness::{run_suites, SuiteConfig, SUITES};
use lva_core::lattice::{Lattice, LatticeVector};
use lva_core::rational::fmt_q;
use lva_core::symfunc::{change_basis, jacobi_trudi, schur_by_vertex, Basis, Partition, SymPoly};
use lva_core::vertexops::{divided_power, garland_apply, garland_poly, y_general_mode, VertexWord};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Parser)]
#[command(name = "lva", version, about = "Integral forms of lattice vertex algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    P,
    H,
    S,
}

impl BasisArg {
    fn basis(self) -> Basis {
        match self {
            BasisArg::P => Basis::P,
            BasisArg::H => Basis::H,
            BasisArg::S => Basis::S,
        }
    }
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the document here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    /// Gram matrix: a file or inline JSON (`{"gram": [[2]]}` or `[[2]]`).
    #[arg(long)]
    pub lattice: String,
    /// Vertex word, e.g. `{"heis":[{"alpha":[1],"n":1}],"gamma":[1]}`.
    #[arg(long)]
    pub v: String,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    /// `vacuum`, or an element as a file or inline JSON.
    #[arg(long, default_value = "vacuum")]
    pub on: String,
    #[arg(long, value_enum, default_value = "h")]
    pub basis: BasisArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the mode v_n.
    Act {
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Apply the divided power v_n^r / r! and check integrality.
    DividedPower {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Garland polynomial for (k, n); applied to an element when `--on` is given.
    Garland {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lattice: Option<String>,
        /// Lattice vector as a JSON array.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        on: Option<String>,
        #[arg(long, value_enum, default_value = "h")]
        basis: BasisArg,
        #[command(flatten)]
        output: Output,
    },
    /// Schur function by Jacobi-Trudi and by vertex operators.
    Schur {
        /// Parts, as `3,1` or a JSON array.
        #[arg(long)]
        partition: String,
        #[arg(long, value_enum, default_value = "h")]
        basis: BasisArg,
        #[command(flatten)]
        output: Output,
    },
    /// Dual-lattice coset representatives.
    Cosets {
        #[arg(long)]
        lattice: String,
        #[command(flatten)]
        output: Output,
    },
    /// Run the property suites.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "default")]
        preset: String,
        /// Restrict to these suites (repeatable).
        #[arg(long)]
        suite: Vec<String>,
        /// Record wall time per case (reports are then not reproducible).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Reduce an integral element modulo a prime.
    ModP {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        on: String,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        output: Output,
    },
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

impl From<lva_core::Error> for Failure {
    fn from(e: lva_core::Error) -> Self {
        usage(e)
    }
}

/// Inline JSON, or the contents of the named file.
fn read_json(arg: &str) -> Result<Value, Failure> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| usage(format!("cannot read {arg}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("invalid JSON in {arg}: {e}")))?;
    // a previous output document stands for its result
    match v.get("schema_version") {
        Some(_) if v.get("result").is_some() => Ok(v["result"].clone()),
        _ => Ok(v),
    }
}

fn read_lattice(arg: &str) -> Result<Lattice, Failure> {
    let v = read_json(arg)?;
    let v = if v.is_array() { json!({ "gram": v }) } else { v };
    Ok(Lattice::from_json(&v)?)
}

fn read_element(lattice: &Lattice, arg: &str) -> Result<FockElement, Failure> {
    if arg == "vacuum" {
        return Ok(FockElement::vacuum(lattice.rank()));
    }
    Ok(element_from_json(lattice, &read_json(arg)?)?)
}

fn read_word(lattice: &Lattice, arg: &str) -> Result<VertexWord, Failure> {
    let w = VertexWord::from_json(&read_json(arg)?)?;
    if w.rank() != lattice.rank() {
        return Err(usage(format!("word has rank {}, lattice has rank {}", w.rank(), lattice.rank())));
    }
    Ok(w)
}

fn read_partition(arg: &str) -> Result<Partition, Failure> {
    let parts: Vec<u32> = if arg.trim_start().starts_with('[') {
        serde_json::from_str(arg).map_err(|e| usage(format!("invalid partition {arg}: {e}")))?
    } else if arg.trim().is_empty() {
        Vec::new()
    } else {
        arg.split(',')
            .map(|s| s.trim().parse::<u32>().map_err(|e| usage(format!("invalid part {s:?}: {e}"))))
            .collect::<Result<_, _>>()?
    };
    Ok(Partition::new(parts)?)
}

fn element_json(e: &FockElement, basis: BasisArg) -> Value {
    match basis {
        BasisArg::P => e.to_json(),
        BasisArg::H => to_h_basis(e).to_json(),
        BasisArg::S => to_s_basis(e).to_json(),
    }
}

fn sym_json(f: &SymPoly, basis: BasisArg) -> Value {
    change_basis(f, basis.basis()).to_json()
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Integral => json!({ "integral": true, "witness": null }),
        Verdict::NotIntegral { key, coeff } => {
            json!({ "integral": false, "witness": { "key": key.to_string(), "coeff": fmt_q(coeff) } })
        }
    }
}

fn document(command: &str, body: Value) -> Value {
    let mut doc = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    doc
}

/// Runs one parsed command, returning the exit code and the document.
pub fn execute(cli: Cli) -> Result<(i32, Value, Option<PathBuf>), Failure> {
    match cli.command {
        Command::Act { mode, output } => {
            let lattice = read_lattice(&mode.lattice)?;
            let word = read_word(&lattice, &mode.v)?;
            let on = read_element(&lattice, &mode.on)?;
            let out = y_general_mode(&lattice, &word, mode.n, &on)?;
            let body = json!({
                "lattice": lattice.to_json(), "v": word.to_json(), "n": mode.n,
                "result": element_json(&out, mode.basis),
            });
            Ok((0, document("act", body), output.out))
        }
        Command::DividedPower { mode, r, output } => {
            let lattice = read_lattice(&mode.lattice)?;
            let word = read_word(&lattice, &mode.v)?;
            let on = read_element(&lattice, &mode.on)?;
            let out = divided_power(&lattice, &word, mode.n, r, &on)?;
            let body = json!({
                "lattice": lattice.to_json(), "v": word.to_json(), "n": mode.n, "r": r,
                "result": element_json(&out, mode.basis),
                "integrality": verdict_json(&integrality_check(&out)),
            });
            Ok((0, document("divided-power", body), output.out))
        }
        Command::Garland { k, n, lattice, alpha, on, basis, output } => {
            let f = garland_poly(k, n)?;
            let mut body = json!({ "k": k, "n": n, "polynomial": sym_json(&f, basis), "integral": f.is_integral() });
            match (lattice, alpha, on) {
                (None, None, None) => {}
                (Some(l), Some(a), Some(on)) => {
                    let lattice = read_lattice(&l)?;
                    let alpha = LatticeVector::from_json(&read_json(&a)?)?;
                    let elem = read_element(&lattice, &on)?;
                    let out = garland_apply(&lattice, &alpha, k, n, &elem)?;
                    body["lattice"] = lattice.to_json();
                    body["alpha"] = alpha.to_json();
                    body["result"] = element_json(&out, basis);
                    body["integrality"] = verdict_json(&integrality_check(&out));
                }
                _ => return Err(usage("--lattice, --alpha and --on must be given together")),
            }
            Ok((0, document("garland", body), output.out))
        }
        Command::Schur { partition, basis, output } => {
            let p = read_partition(&partition)?;
            let jt = jacobi_trudi(&p);
            let vx = schur_by_vertex(&p);
            let body = json!({
                "partition": p.parts(),
                "jacobi_trudi": sym_json(&jt, basis),
                "vertex": sym_json(&vx, basis),
                "equal": jt.same_function(&vx),
            });
            Ok((0, document("schur", body), output.out))
        }
        Command::Cosets { lattice, output } => {
            let lattice = read_lattice(&lattice)?;
            let reps: Vec<Value> = lattice.dual_coset_reps().iter().map(LatticeVector::to_json).collect();
            let body = json!({ "lattice": lattice.to_json(), "determinant": lattice.determinant(), "cosets": reps });
            Ok((0, document("cosets", body), output.out))
        }
        Command::Verify { seed, preset, suite, timings, output } => {
            let mut config = SuiteConfig::preset(&preset, seed)?;
            config.timings = timings;
            if let Some(bad) = suite.iter().find(|s| !SUITES.iter().any(|(n, _)| n == s)) {
                return Err(usage(format!("unknown suite {bad:?}")));
            }
            let report = run_suites(&config, |s| suite.is_empty() || suite.iter().any(|x| x == s))?;
            let code = if report.passed() { 0 } else { 1 };
            let mut doc = report.to_json();
            doc["command"] = json!("verify");
            Ok((code, doc, output.out))
        }
        Command::ModP { lattice, on, p, output } => {
            let lattice = read_lattice(&lattice)?;
            let elem = read_element(&lattice, &on)?;
            let reduced = reduce_mod_p(&elem, p)?;
            let body = json!({ "lattice": lattice.to_json(), "p": p, "result": reduced.to_json() });
            Ok((0, document("mod-p", body), output.out))
        }
    }
}

fn write(doc: &Value, out: Option<PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).expect("documents serialize") + "\n";
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| Failure { code: 2, message: format!("cannot write {}: {e}", path.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `argv`, runs the command and writes its document. Returns the
/// process exit code: 0 on success, 1 when a suite fails, 2 on usage errors.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli).and_then(|(code, doc, out)| write(&doc, out).map(|_| code)) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
