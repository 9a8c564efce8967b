//! arrfree: exact invariants of hyperplane (multi)arrangements.
//!
//! Every command reads an arrangement file (or generates one, for the
//! Coxeter families), computes exactly over the rationals, and prints
//! either text or a JSON report. Verdicts (Free/NotFree/Unknown,
//! conjecture pass/fail) are data and exit 0; usage and parse problems
//! exit 1; exhausted resource budgets exit 2.
//!
//! JSON reports have sorted keys and are byte-stable for fixed input and
//! flags; `--timing` deliberately trades that stability for a wall-clock
//! field.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use arrfree_core::arrangement::{Arrangement, Multiplicity};
use arrfree_core::charpoly::{
    betti_numbers, chamber_counts, charpoly, CharpolyMethod, DEFAULT_POINT_BUDGET,
};
use arrfree_core::coxeter::{
    self, conjecture_fe, conjecture_hshift, conjecture_rh_with_override, deformation,
    DeformationSpec, Family, RootSystem,
};
use arrfree_core::derivations::{
    default_dmax, exponents_rank2, hilbert_budgeted, saito_check, DEFAULT_COEFF_BUDGET,
};
use arrfree_core::error::Error;
use arrfree_core::format::{
    fresh_var_name, parse_arrangement_file, parse_basis, serialize_arrangement, ArrangementFile,
};
use arrfree_core::freeness::{
    free_test, free_test_highrank, free_test_rank3, multi_free_search, FreenessCertificate,
};
use arrfree_core::lattice::intersection_lattice;
use arrfree_core::multipoly::default_var_names;
use arrfree_core::scalar::{is_integer, Scalar};
use num::bigint::BigInt;

#[derive(Parser)]
#[command(
    name = "arrfree",
    version,
    about = "Exact invariants, freeness certificates and conjecture checks for hyperplane arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON report (sorted keys, byte-stable) instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Resource budget: finite-field points for `charpoly`, coefficient
    /// count for `hilbert`
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Reserved for randomized property suites; every command here is
    /// deterministic and ignores it
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Add wall-clock milliseconds to the report (breaks byte-stability)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args)]
struct FileArg {
    /// Arrangement file (see README for the grammar)
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial of the arrangement
    Charpoly {
        #[command(flatten)]
        input: FileArg,
        /// mobius, delres or ff
        #[arg(long, default_value = "mobius")]
        method: String,
    },
    /// Flats of the intersection lattice with Mobius values
    Lattice {
        #[command(flatten)]
        input: FileArg,
    },
    /// Chamber and bounded-chamber counts of a real arrangement
    Chambers {
        #[command(flatten)]
        input: FileArg,
    },
    /// Whitney-number Betti sequence
    Betti {
        #[command(flatten)]
        input: FileArg,
    },
    /// Cone: homogenize with one hyperplane at infinity (prints a file)
    Cone {
        #[command(flatten)]
        input: FileArg,
    },
    /// Restriction to one hyperplane (prints a file)
    Restrict {
        #[command(flatten)]
        input: FileArg,
        /// Index of the hyperplane to restrict to (0-based)
        #[arg(long)]
        pivot: usize,
        /// Use Ziegler multirestriction multiplicities
        #[arg(long)]
        ziegler: bool,
    },
    /// Hilbert function of the graded module D(A, m)
    Hilbert {
        #[command(flatten)]
        input: FileArg,
        #[arg(long = "max-degree")]
        max_degree: Option<usize>,
    },
    /// Exponents of a rank-2 multiarrangement
    Exponents2 {
        #[command(flatten)]
        input: FileArg,
    },
    /// Validate a claimed basis via Saito's criterion
    Saito {
        #[command(flatten)]
        input: FileArg,
        /// Basis file: one vector field per line, components split by `;`
        #[arg(long)]
        basis: PathBuf,
    },
    /// Freeness certificate for a central arrangement
    Freetest {
        #[command(flatten)]
        input: FileArg,
        /// Decide at this pivot only (rank >= 3)
        #[arg(long)]
        pivot: Option<usize>,
    },
    /// Generate a truncated affine Weyl arrangement (prints a file)
    Coxeter {
        /// Root-system family: A, B, C, D or G
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: usize,
        /// Level window LO:HI, e.g. -1:1 for Catalan k=1
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Cone the generated arrangement
        #[arg(long)]
        cone: bool,
    },
    /// Exact conjecture checks on a deformation window
    Conjecture {
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: usize,
        /// Level window LO:HI; (a, b) in the conjectures means -a:b
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// rh, fe or hshift
        #[arg(long)]
        check: String,
        /// Run rh even when the window is symmetric (outside its stated
        /// domain); the report flags it as out of domain
        #[arg(long = "allow-equal")]
        allow_equal: bool,
    },
    /// Run one operation over every file matching a glob
    Sweep {
        /// Glob over arrangement files, e.g. 'fixtures/*.arr'
        #[arg(long)]
        family: String,
        /// Currently only exponents2
        #[arg(long, default_value = "exponents2")]
        op: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Charpoly { .. } => "charpoly",
            Command::Lattice { .. } => "lattice",
            Command::Chambers { .. } => "chambers",
            Command::Betti { .. } => "betti",
            Command::Cone { .. } => "cone",
            Command::Restrict { .. } => "restrict",
            Command::Hilbert { .. } => "hilbert",
            Command::Exponents2 { .. } => "exponents2",
            Command::Saito { .. } => "saito",
            Command::Freetest { .. } => "freetest",
            Command::Coxeter { .. } => "coxeter",
            Command::Conjecture { .. } => "conjecture",
            Command::Sweep { .. } => "sweep",
        }
    }
}

/// Exact integers become JSON numbers when they fit i64, decimal strings
/// beyond that; the rule is platform-independent, so reports stay stable.
fn jint(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(n) => Value::from(n),
        Err(_) => Value::from(v.to_string()),
    }
}

fn jscalar(s: &Scalar) -> Value {
    if is_integer(s) {
        jint(&s.to_integer())
    } else {
        Value::from(s.to_string())
    }
}

fn digest_bytes(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}

struct Output {
    text: String,
    json: Map<String, Value>,
    input_digest: String,
}

impl Output {
    fn new(input_digest: String) -> Self {
        Output {
            text: String::new(),
            json: Map::new(),
            input_digest,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn set(&mut self, key: &str, value: Value) {
        self.json.insert(key.to_string(), value);
    }
}

fn read_input(path: &Path) -> Result<(ArrangementFile, String), Error> {
    let bytes = std::fs::read(path).map_err(|e| Error::Parse {
        line: None,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let file = parse_arrangement_file(&String::from_utf8_lossy(&bytes))?;
    Ok((file, digest_bytes(&bytes)))
}

fn certificate_json(cert: &FreenessCertificate, vars: &[String]) -> Vec<(&'static str, Value)> {
    let mut fields = vec![
        ("status", Value::from(cert.status.to_string())),
        (
            "exponents",
            match &cert.exponents {
                Some(e) => Value::from(e.clone()),
                None => Value::Null,
            },
        ),
        (
            "basis",
            match &cert.basis {
                Some(fields) => Value::from(
                    fields
                        .iter()
                        .map(|f| Value::from(f.display(vars)))
                        .collect::<Vec<_>>(),
                ),
                None => Value::Null,
            },
        ),
        (
            "obstruction",
            match &cert.obstruction {
                Some(o) => jint(o),
                None => Value::Null,
            },
        ),
        ("method", Value::from(cert.method.clone())),
    ];
    if let Some(note) = &cert.note {
        fields.push(("note", Value::from(note.clone())));
    }
    fields
}

fn emit_certificate(out: &mut Output, cert: &FreenessCertificate, vars: &[String]) {
    for (key, value) in certificate_json(cert, vars) {
        out.set(key, value);
    }
    out.line(format!("status: {}", cert.status));
    if let Some(e) = &cert.exponents {
        out.line(format!(
            "exponents: {}",
            e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        ));
    }
    out.line(format!("method: {}", cert.method));
    if let Some(o) = &cert.obstruction {
        out.line(format!("obstruction: {o}"));
    }
    if let Some(basis) = &cert.basis {
        out.line("basis:");
        for f in basis {
            out.line(format!("  {}", f.display(vars)));
        }
    }
    if let Some(note) = &cert.note {
        out.line(format!("note: {note}"));
    }
}

fn parse_window(text: &str) -> Result<(i64, i64), Error> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Error::Parse {
        line: None,
        message: format!("bad window {text:?}, expected LO:HI like -1:1"),
    };
    if parts.len() != 2 {
        return Err(bad());
    }
    let lo = parts[0].parse::<i64>().map_err(|_| bad())?;
    let hi = parts[1].parse::<i64>().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn root_system(family: &str, rank: usize) -> Result<RootSystem, Error> {
    coxeter::positive_roots(Family::from_str(family)?, rank)
}

fn arrangement_to_file_text(arr: &Arrangement, m: &Multiplicity, vars: &[String]) -> String {
    serialize_arrangement(arr, m, vars)
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Charpoly { input, method } => {
            let (file, digest) = read_input(&input.file)?;
            let method = CharpolyMethod::from_str(method)?;
            let budget = cli.budget.unwrap_or(DEFAULT_POINT_BUDGET);
            let chi = charpoly(&file.arrangement, method, budget)?;
            let mut out = Output::new(digest);
            out.set("charpoly", Value::from(chi.to_string()));
            out.set("method", Value::from(method.to_string()));
            out.line(chi.to_string());
            Ok(out)
        }
        Command::Lattice { input } => {
            let (file, digest) = read_input(&input.file)?;
            let lat = intersection_lattice(&file.arrangement)?;
            let mut out = Output::new(digest);
            let mut flats = Vec::new();
            for (i, f) in lat.flats().iter().enumerate() {
                let members = f
                    .members
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                out.line(format!(
                    "flat {i}: rank {} members [{members}] mobius {}",
                    f.rank,
                    lat.mobius(i)
                ));
                flats.push(json!({
                    "rank": f.rank,
                    "members": f.members,
                    "mobius": jint(lat.mobius(i)),
                }));
            }
            let whitney = lat.whitney();
            out.line(format!(
                "whitney: {}",
                whitney
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            out.set(
                "result",
                json!({
                    "flats": flats,
                    "whitney": whitney.iter().map(jint).collect::<Vec<_>>(),
                }),
            );
            Ok(out)
        }
        Command::Chambers { input } => {
            let (file, digest) = read_input(&input.file)?;
            let counts = chamber_counts(&file.arrangement)?;
            let mut out = Output::new(digest);
            out.line(format!("chambers: {}", counts.chambers));
            out.line(format!("bounded: {}", counts.bounded));
            out.set(
                "result",
                json!({
                    "chambers": jint(&counts.chambers),
                    "bounded": jint(&counts.bounded),
                }),
            );
            Ok(out)
        }
        Command::Betti { input } => {
            let (file, digest) = read_input(&input.file)?;
            let betti = betti_numbers(&file.arrangement)?;
            let mut out = Output::new(digest);
            out.line(format!(
                "betti: {}",
                betti
                    .iter()
                    .map(|b| b.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            out.set(
                "result",
                json!({ "betti": betti.iter().map(jint).collect::<Vec<_>>() }),
            );
            Ok(out)
        }
        Command::Cone { input } => {
            let (file, digest) = read_input(&input.file)?;
            let coned = file.arrangement.cone();
            // the cone variable is appended last; multiplicity 1 at infinity
            let mut vars = file.var_names.clone();
            vars.push(fresh_var_name(&vars));
            let mut mults = vec![1u32];
            mults.extend(file.multiplicity.values());
            let text =
                arrangement_to_file_text(&coned, &Multiplicity::new(mults), &vars);
            let mut out = Output::new(digest);
            out.text = text.clone();
            out.set("result", json!({ "file": text }));
            Ok(out)
        }
        Command::Restrict {
            input,
            pivot,
            ziegler,
        } => {
            let (file, digest) = read_input(&input.file)?;
            let (restr, mult, chart) = if *ziegler {
                file.arrangement.ziegler(*pivot)?
            } else {
                let (restr, chart) = file.arrangement.restrict(*pivot)?;
                let n = restr.num_hyperplanes();
                (restr, Multiplicity::simple(n), chart)
            };
            let vars: Vec<String> = chart
                .kept_vars
                .iter()
                .map(|&v| file.var_names[v].clone())
                .collect();
            let text = arrangement_to_file_text(&restr, &mult, &vars);
            let mut out = Output::new(digest);
            out.text = text.clone();
            out.set("result", json!({ "file": text, "pivot": pivot }));
            Ok(out)
        }
        Command::Hilbert { input, max_degree } => {
            let (file, digest) = read_input(&input.file)?;
            let dmax = max_degree.unwrap_or_else(|| default_dmax(&file.multiplicity));
            let budget = cli.budget.unwrap_or(DEFAULT_COEFF_BUDGET);
            let table = hilbert_budgeted(&file.arrangement, &file.multiplicity, dmax, budget)?;
            let mut out = Output::new(digest);
            let mut map = Map::new();
            for (d, dim) in &table {
                out.line(format!("h({d}) = {dim}"));
                map.insert(d.to_string(), Value::from(*dim));
            }
            out.set("result", json!({ "hilbert": map }));
            Ok(out)
        }
        Command::Exponents2 { input } => {
            let (file, digest) = read_input(&input.file)?;
            let (d1, d2) = exponents_rank2(&file.arrangement, &file.multiplicity)?;
            let mut out = Output::new(digest);
            out.set("exponents", json!([d1, d2]));
            out.line(format!("exponents: {d1} {d2}"));
            Ok(out)
        }
        Command::Saito { input, basis } => {
            let (file, digest) = read_input(&input.file)?;
            let basis_text = std::fs::read_to_string(basis).map_err(|e| Error::Parse {
                line: None,
                message: format!("cannot read {}: {e}", basis.display()),
            })?;
            let fields = parse_basis(&basis_text, &file.var_names)?;
            let cert = saito_check(&file.arrangement, &file.multiplicity, &fields)?;
            let mut out = Output::new(digest);
            emit_certificate(&mut out, &cert, &file.var_names);
            Ok(out)
        }
        Command::Freetest { input, pivot } => {
            let (file, digest) = read_input(&input.file)?;
            let arr = &file.arrangement;
            // files with multiplicities get the multiarrangement search
            if !file.multiplicity.is_simple() {
                if pivot.is_some() {
                    return Err(Error::ParameterDomain(
                        "--pivot applies to simple arrangements only".into(),
                    ));
                }
                let cert = multi_free_search(arr, &file.multiplicity)?;
                let mut out = Output::new(digest);
                emit_certificate(&mut out, &cert, &file.var_names);
                return Ok(out);
            }
            let cert = match pivot {
                None => free_test(arr)?,
                Some(p) => {
                    let rank = arr.rank();
                    if rank == 3 {
                        free_test_rank3(arr, *p)?
                    } else if rank >= 4 {
                        free_test_highrank(arr, *p)?
                    } else {
                        return Err(Error::ParameterDomain(format!(
                            "--pivot applies to rank >= 3 arrangements, this one has rank {rank}"
                        )));
                    }
                }
            };
            let mut out = Output::new(digest);
            emit_certificate(&mut out, &cert, &file.var_names);
            Ok(out)
        }
        Command::Coxeter {
            family,
            rank,
            window,
            cone,
        } => {
            let system = root_system(family, *rank)?;
            let (lo, hi) = parse_window(window)?;
            let arr = deformation(&DeformationSpec::new(system.clone(), lo, hi)?)?;
            let mut vars = default_var_names(arr.dimension());
            let base_text =
                arrangement_to_file_text(&arr, &Multiplicity::simple(arr.num_hyperplanes()), &vars);
            let digest = digest_bytes(base_text.as_bytes());
            let text = if *cone {
                let coned = arr.cone();
                vars.push(fresh_var_name(&vars));
                arrangement_to_file_text(
                    &coned,
                    &Multiplicity::simple(coned.num_hyperplanes()),
                    &vars,
                )
            } else {
                base_text
            };
            let mut out = Output::new(digest);
            out.text = text.clone();
            out.set("result", json!({ "file": text }));
            Ok(out)
        }
        Command::Conjecture {
            family,
            rank,
            window,
            check,
            allow_equal,
        } => {
            let system = root_system(family, *rank)?;
            let (lo, hi) = parse_window(window)?;
            // the conjectures parameterize the window [-a, b] by (a, b)
            let (a, b) = (-lo, hi);
            let arr = deformation(&DeformationSpec::new(system.clone(), lo, hi)?)?;
            let base_text = arrangement_to_file_text(
                &arr,
                &Multiplicity::simple(arr.num_hyperplanes()),
                &default_var_names(arr.dimension()),
            );
            let mut out = Output::new(digest_bytes(base_text.as_bytes()));
            let name = system.name();
            let entry = match check.as_str() {
                "fe" => {
                    let r = conjecture_fe(&system, a, b)?;
                    out.line(format!(
                        "fe {name} window [{lo},{hi}]: {}",
                        if r.holds { "holds" } else { "fails" }
                    ));
                    if !r.holds {
                        out.line(format!("  lhs: {}", r.lhs));
                        out.line(format!("  rhs: {}", r.rhs));
                    }
                    json!({
                        "check": "fe",
                        "system": name,
                        "window": [lo, hi],
                        "holds": r.holds,
                        "lhs": r.lhs.to_string(),
                        "rhs": r.rhs.to_string(),
                    })
                }
                "hshift" => {
                    let r = conjecture_hshift(&system, a, b)?;
                    out.line(format!(
                        "hshift {name} window [{lo},{hi}]: {}",
                        if r.holds { "holds" } else { "fails" }
                    ));
                    if !r.holds {
                        out.line(format!("  lhs: {}", r.lhs));
                        out.line(format!("  rhs: {}", r.rhs));
                    }
                    json!({
                        "check": "hshift",
                        "system": name,
                        "window": [lo, hi],
                        "holds": r.holds,
                        "lhs": r.lhs.to_string(),
                        "rhs": r.rhs.to_string(),
                    })
                }
                "rh" => {
                    let r = conjecture_rh_with_override(&system, a, b, *allow_equal)?;
                    out.line(format!(
                        "rh {name} window [{lo},{hi}]: {}, center {}{}",
                        if r.holds { "holds" } else { "fails" },
                        r.center,
                        if r.in_domain { "" } else { " (outside the conjecture's domain)" }
                    ));
                    if let Some(w) = &r.witness {
                        out.line(format!("  witness: {w}"));
                    }
                    json!({
                        "check": "rh",
                        "system": name,
                        "window": [lo, hi],
                        "holds": r.holds,
                        "center": jscalar(&r.center),
                        "in_domain": r.in_domain,
                        "witness": r.witness.map(Value::from).unwrap_or(Value::Null),
                    })
                }
                other => {
                    return Err(Error::Parse {
                        line: None,
                        message: format!("unknown check {other:?}, expected rh, fe or hshift"),
                    })
                }
            };
            out.set("checks", Value::from(vec![entry]));
            Ok(out)
        }
        Command::Sweep { family, op } => {
            if op != "exponents2" {
                return Err(Error::Parse {
                    line: None,
                    message: format!("unsupported sweep op {op:?}, expected exponents2"),
                });
            }
            let mut paths: Vec<PathBuf> = glob::glob(family)
                .map_err(|e| Error::Parse {
                    line: None,
                    message: format!("bad glob {family:?}: {e}"),
                })?
                .filter_map(|p| p.ok())
                .collect();
            paths.sort();
            if paths.is_empty() {
                return Err(Error::Parse {
                    line: None,
                    message: format!("no files match {family:?}"),
                });
            }
            let mut out = Output::new(String::new());
            let mut entries = Vec::new();
            let mut digests = String::new();
            for path in &paths {
                let (file, digest) = read_input(path)?;
                let (d1, d2) = exponents_rank2(&file.arrangement, &file.multiplicity)?;
                out.line(format!("{}: {d1} {d2}", path.display()));
                entries.push(json!({
                    "file": path.display().to_string(),
                    "exponents": [d1, d2],
                }));
                digests.push_str(&digest);
                digests.push('\n');
            }
            out.input_digest = digest_bytes(digests.as_bytes());
            out.set("result", json!({ "sweep": entries }));
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    match run(&cli) {
        Ok(mut out) => {
            if cli.json {
                out.set("command", Value::from(cli.command.name()));
                out.set("input", Value::from(out.input_digest.clone()));
                out.set("version", Value::from(env!("CARGO_PKG_VERSION")));
                if cli.timing {
                    out.set(
                        "timing_ms",
                        Value::from(started.elapsed().as_millis() as u64),
                    );
                }
                println!("{}", Value::Object(out.json));
            } else {
                print!("{}", out.text);
                if cli.timing {
                    eprintln!("timing: {} ms", started.elapsed().as_millis());
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
