//! Batch command-line front end.
//!
//! Every command reads JSON problem files and writes one canonical JSON
//! document (sorted keys, rationals as `"p/q"` strings) that embeds a
//! SHA-256 hash of the problem, so certificates cannot be checked against
//! the wrong instance.
//!
//! Exit codes: 0 certificate found or report written, 3 the solver proved
//! there is no certificate, 1 input error, 2 internal inconsistency or a
//! rejected certificate.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::barycenter::{
    solve_barycenter, solve_barycenter_recursive, verify_certificate, BarycenterCertificate,
};
use crate::bounds;
use crate::delprod::{complex_dim, deleted_product, homology, sym_action_check, SimplicialComplex};
use crate::error::{input, Error, Result};
use crate::exact_linalg::{format_rational, parse_rational, parse_vector, Rational};
use crate::plmaps::{check_lift_reflection, join_lift_config};
use crate::polytope::{Face, Point, Polytope};
use crate::tverberg::{
    constrained_partition, random_trial_suite, verify_tverberg_certificate, FaceConstraint, PointConfiguration,
    TrialMode, TrialSpec, TverbergCertificate,
};

pub const SCHEMA_VERSION: u64 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_NONE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "skeleta", version, about = "Exact Tverberg-type certificates and bounds")]
pub struct RunManifest {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a point of a polytope as the barycenter of r points of its k-skeleton.
    Barycenter(BarycenterArgs),
    /// Classical Tverberg partition of a configuration, or a random trial suite.
    Tverberg(PartitionArgs),
    /// Partition with every face in the k-skeleton.
    Vkf(PartitionArgs),
    /// Partition with rainbow faces.
    Colored(PartitionArgs),
    /// Deleted product of a simplicial complex: f-vector, homology, symmetry.
    Delprod(DelprodArgs),
    /// Join lift of a configuration, optionally with the reflection check.
    Lift(LiftArgs),
    /// Bounds on the Tverberg number.
    Bounds(BoundsArgs),
    /// Re-check a certificate against its problem file.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct BarycenterArgs {
    #[arg(long)]
    pub polytope: PathBuf,
    /// Comma-separated rational coordinates, e.g. `1/2,0`.
    #[arg(long)]
    pub point: String,
    #[arg(short)]
    pub k: usize,
    #[arg(short)]
    pub r: usize,
    #[arg(long)]
    pub recursive: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    /// Configuration file; without it a random trial suite runs.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(short)]
    pub r: usize,
    /// Skeleton dimension (vkf only); defaults to ceil((r-1)d/r).
    #[arg(short)]
    pub k: Option<usize>,
    /// Ambient dimension for random trials.
    #[arg(short)]
    pub d: Option<usize>,
    /// Random configurations have n + 1 points.
    #[arg(short)]
    pub n: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSON array of colour ids, one per point (colored only).
    #[arg(long)]
    pub colors: Option<PathBuf>,
    /// Colour classes for random colored trials; vertex i gets i mod classes.
    #[arg(long)]
    pub classes: Option<usize>,
    /// Resample random configurations until they are in general position.
    #[arg(long)]
    pub general_position: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DelprodArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(short)]
    pub r: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(short)]
    pub k: usize,
    /// Also compare partitions of the configuration and of its lift.
    #[arg(short)]
    pub r: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(short)]
    pub r: u64,
    #[arg(short, required_unless_present = "table")]
    pub d: Option<u64>,
    /// Markdown table over d = 1..=DMAX instead of a single report.
    #[arg(long, value_name = "DMAX")]
    pub table: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub certificate: PathBuf,
    /// The polytope or configuration file the certificate was made for.
    #[arg(long)]
    pub problem: PathBuf,
}

/// Text to emit and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub body: String,
    pub exit: i32,
    pub out: Option<PathBuf>,
}

/// Parses arguments, runs, writes output; returns the exit code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let manifest = match RunManifest::try_parse_from(args) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(&manifest) {
        Ok(output) => match emit(&output) {
            Ok(()) => output.exit,
            Err(e) => {
                eprintln!("{e}");
                EXIT_INPUT
            }
        },
        Err(e) => {
            eprintln!("{e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => EXIT_INPUT,
        Error::Inconsistency(_) => EXIT_INCONSISTENT,
    }
}

fn emit(output: &RunOutput) -> Result<()> {
    match &output.out {
        Some(path) => write_atomic(path, &output.body),
        None => {
            print!("{}", output.body);
            Ok(())
        }
    }
}

/// Writes through a temporary file in the target directory and renames it.
pub fn write_atomic(path: &Path, body: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| Error::Input(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(body.as_bytes()).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

pub fn run(manifest: &RunManifest) -> Result<RunOutput> {
    match &manifest.command {
        Command::Barycenter(a) => run_barycenter(a),
        Command::Tverberg(a) => run_partition("tverberg", a),
        Command::Vkf(a) => run_partition("vkf", a),
        Command::Colored(a) => run_partition("colored", a),
        Command::Delprod(a) => run_delprod(a),
        Command::Lift(a) => run_lift(a),
        Command::Bounds(a) => run_bounds(a),
        Command::Verify(a) => run_verify(a),
    }
}

/// Canonical serialization: sorted keys, two-space indent, final newline.
pub fn canonical_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn problem_hash(command: &str, input: &Value, parameters: &Value) -> String {
    let key = json!({ "command": command, "input": input, "parameters": parameters });
    let digest = Sha256::digest(serde_json::to_string(&key).expect("JSON values always serialize"));
    hex::encode(digest)
}

fn document(command: &str, status: &str, hash: &str, parameters: Value, result: Value, provenance: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "status": status,
        "problem_hash": hash,
        "parameters": parameters,
        "result": result,
        "provenance": provenance,
    })
}

fn output(doc: &Value, exit: i32, out: &Option<PathBuf>) -> RunOutput {
    RunOutput {
        body: canonical_json(doc),
        exit,
        out: out.clone(),
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: invalid JSON: {e}", path.display())))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Input(format!("missing field \"{key}\"")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Input(format!("{what} must be a nonnegative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Input(format!("{what} must be an array")))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("checked").into())),
        _ => input(format!("rationals must be strings like \"p/q\" or integers, got {v}")),
    }
}

fn point_from_json(v: &Value) -> Result<Point> {
    as_array(v, "a point")?.iter().map(rational_from_json).collect()
}

fn points_from_json(v: &Value) -> Result<Vec<Point>> {
    as_array(v, "points")?.iter().map(point_from_json).collect()
}

fn index_lists_from_json(v: &Value, what: &str) -> Result<Vec<Vec<usize>>> {
    as_array(v, what)?
        .iter()
        .map(|l| as_array(l, what)?.iter().map(|x| as_usize(x, "a vertex index")).collect())
        .collect()
}

fn rat_json(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn point_json(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rat_json).collect())
}

fn points_json(ps: &[Vec<Rational>]) -> Value {
    Value::Array(ps.iter().map(|p| point_json(p)).collect())
}

/// `{"vertices": [[rationals]], "faces": optional [[indices]]}`.
pub fn polytope_from_json(v: &Value) -> Result<Polytope> {
    let vertices = points_from_json(field(v, "vertices")?)?;
    match v.get("faces") {
        Some(faces) => Polytope::with_faces(vertices, &index_lists_from_json(faces, "faces")?),
        None => Polytope::from_vertices(vertices),
    }
}

/// `{"dim": d, "points": [[rationals]], "colors": optional [ids]}`.
pub fn configuration_from_json(v: &Value) -> Result<(PointConfiguration, Option<Vec<u32>>)> {
    let dim = as_usize(field(v, "dim")?, "dim")?;
    let cfg = PointConfiguration::new(dim, points_from_json(field(v, "points")?)?)?;
    let colors = v.get("colors").map(colors_from_json).transpose()?;
    Ok((cfg, colors))
}

fn colors_from_json(v: &Value) -> Result<Vec<u32>> {
    as_array(v, "colors")?
        .iter()
        .map(|c| {
            c.as_u64()
                .and_then(|c| u32::try_from(c).ok())
                .ok_or_else(|| Error::Input("colours must be small nonnegative integers".into()))
        })
        .collect()
}

pub fn configuration_json(cfg: &PointConfiguration) -> Value {
    json!({ "dim": cfg.dim(), "points": points_json(cfg.points()) })
}

/// `{"vertices": n, "facets": [[indices]]}`.
pub fn complex_from_json(v: &Value) -> Result<SimplicialComplex> {
    let n = as_usize(field(v, "vertices")?, "vertices")?;
    SimplicialComplex::new(n, index_lists_from_json(field(v, "facets")?, "facets")?)
}

fn barycenter_json(cert: &BarycenterCertificate) -> Value {
    json!({
        "faces": cert.faces.iter().map(|f| f.vertices.clone()).collect::<Vec<_>>(),
        "face_dims": cert.faces.iter().map(|f| f.dim).collect::<Vec<_>>(),
        "points": points_json(&cert.points),
        "coefficients": points_json(&cert.coefficients),
    })
}

fn tverberg_json(cert: &TverbergCertificate) -> Value {
    json!({
        "faces": cert.faces,
        "coefficients": points_json(&cert.coefficients),
        "witness": point_json(&cert.witness),
    })
}

fn tverberg_from_json(v: &Value) -> Result<TverbergCertificate> {
    Ok(TverbergCertificate {
        faces: index_lists_from_json(field(v, "faces")?, "faces")?,
        coefficients: points_from_json(field(v, "coefficients")?)?,
        witness: point_from_json(field(v, "witness")?)?,
    })
}

fn run_barycenter(a: &BarycenterArgs) -> Result<RunOutput> {
    let input_json = read_json(&a.polytope)?;
    let poly = polytope_from_json(&input_json)?;
    let p = parse_vector(&a.point)?;
    let parameters = json!({ "point": point_json(&p), "k": a.k, "r": a.r, "recursive": a.recursive });
    let hash = problem_hash("barycenter", &input_json, &parameters);
    let cert = if a.recursive {
        solve_barycenter_recursive(&poly, &p, a.k, a.r)?
    } else {
        solve_barycenter(&poly, &p, a.k, a.r)?
    };
    let provenance = json!({
        "faces": "carrier faces from the exact skeleton search",
        "points": "exact LP solution, reduced to carrier faces",
        "coefficients": "exact convex coefficients over face vertices",
    });
    Ok(match cert {
        Some(cert) => {
            if let Err(why) = verify_certificate(&poly, &p, a.k, a.r, &cert) {
                return Err(Error::Inconsistency(format!("solver produced a rejected certificate: {why}")));
            }
            let doc = document("barycenter", "found", &hash, parameters, barycenter_json(&cert), provenance);
            output(&doc, EXIT_OK, &a.out)
        }
        None => output(
            &document("barycenter", "none", &hash, parameters, Value::Null, provenance),
            EXIT_NONE,
            &a.out,
        ),
    })
}

fn default_k(r: usize, d: usize) -> usize {
    ((r - 1) * d).div_ceil(r)
}

fn run_partition(command: &str, a: &PartitionArgs) -> Result<RunOutput> {
    if a.r < 2 {
        return input(format!("r must be at least 2, got {}", a.r));
    }
    match &a.config {
        Some(path) => run_partition_config(command, a, path),
        None => run_trials(command, a),
    }
}

fn run_partition_config(command: &str, a: &PartitionArgs, path: &Path) -> Result<RunOutput> {
    let input_json = read_json(path)?;
    let (cfg, file_colors) = configuration_from_json(&input_json)?;
    let mut parameters = Map::new();
    parameters.insert("r".into(), json!(a.r));
    let constraint = match command {
        "vkf" => {
            let k = a.k.unwrap_or_else(|| default_k(a.r, cfg.dim()));
            parameters.insert("k".into(), json!(k));
            FaceConstraint::skeleton(k)
        }
        "colored" => {
            let colors = match (&a.colors, file_colors) {
                (Some(p), _) => colors_from_json(&read_json(p)?)?,
                (None, Some(c)) => c,
                (None, None) => return input("colored needs --colors or a \"colors\" field"),
            };
            parameters.insert("colors".into(), json!(colors));
            FaceConstraint::rainbow(colors)
        }
        _ => FaceConstraint::default(),
    };
    let parameters = Value::Object(parameters);
    let hash = problem_hash(command, &input_json, &parameters);
    let provenance = json!({
        "faces": "first feasible family in canonical search order, zero weights trimmed",
        "coefficients": "exact LP solution",
        "witness": "exact convex combination of the first face",
    });
    Ok(match constrained_partition(&cfg, a.r, &constraint)? {
        Some(cert) => {
            if let Err(why) = verify_tverberg_certificate(&cfg, a.r, &cert, &constraint) {
                return Err(Error::Inconsistency(format!("solver produced a rejected certificate: {why}")));
            }
            let doc = document(command, "found", &hash, parameters, tverberg_json(&cert), provenance);
            output(&doc, EXIT_OK, &a.out)
        }
        None => output(
            &document(command, "none", &hash, parameters, Value::Null, provenance),
            EXIT_NONE,
            &a.out,
        ),
    })
}

fn run_trials(command: &str, a: &PartitionArgs) -> Result<RunOutput> {
    let (Some(d), Some(trials)) = (a.d, a.trials) else {
        return input("without --config, -d and --trials are required");
    };
    let r = a.r;
    let (mode, default_n) = match command {
        "vkf" => {
            let k = a.k.unwrap_or_else(|| default_k(r, d));
            (TrialMode::Skeleton { k }, (r - 1) * (d + 2))
        }
        "colored" => {
            let n = a.n.unwrap_or((r - 1) * (d + 1));
            (TrialMode::Colored { classes: a.classes.unwrap_or(n + 1) }, n)
        }
        _ => (TrialMode::Classical, (r - 1) * (d + 1)),
    };
    let spec = TrialSpec {
        d,
        r,
        n: a.n.unwrap_or(default_n),
        trials,
        seed: a.seed,
        mode,
        general_position: a.general_position,
    };
    let mode_json = match mode {
        TrialMode::Classical => json!("classical"),
        TrialMode::Skeleton { k } => json!({ "skeleton": k }),
        TrialMode::Colored { classes } => json!({ "colored": classes }),
    };
    let parameters = json!({
        "d": d, "r": r, "n": spec.n, "trials": trials, "seed": a.seed,
        "mode": mode_json, "general_position": a.general_position,
    });
    let hash = problem_hash(command, &Value::Null, &parameters);
    let report = random_trial_suite(&spec)?;
    let result = json!({
        "trials": report.trials,
        "successes": report.successes,
        "failures": report.failures,
        "failing_seeds": report.failing_seeds,
        "rejected_certificates": report.rejected_certificates,
    });
    let provenance = json!({
        "configurations": "xorshift64* seeded with seed + trial, coordinates in [-1000, 1000] / 1000",
        "successes": "certificates accepted by the independent verifier",
    });
    if report.rejected_certificates > 0 {
        return Err(Error::Inconsistency(format!(
            "{} certificates rejected by the verifier",
            report.rejected_certificates
        )));
    }
    Ok(output(&document(command, "report", &hash, parameters, result, provenance), EXIT_OK, &a.out))
}

fn run_delprod(a: &DelprodArgs) -> Result<RunOutput> {
    let input_json = read_json(&a.config)?;
    let complex = complex_from_json(&input_json)?;
    let c = deleted_product(&complex, a.r)?;
    let parameters = json!({ "r": a.r });
    let hash = problem_hash("delprod", &input_json, &parameters);
    let h = homology(&c);
    let sym = sym_action_check(&c);
    let boundary_ok = c.boundary_squares_to_zero();
    let result = json!({
        "f_vector": c.f_vector(),
        "dim": complex_dim(&c),
        "euler_characteristic": c.euler_characteristic(),
        "betti": h.iter().map(|g| g.betti).collect::<Vec<_>>(),
        "torsion": h.iter().map(|g| g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "sym_free": sym.is_free,
        "orbit_counts": sym.orbit_counts,
        "boundary_squares_to_zero": boundary_ok,
    });
    let provenance = json!({
        "f_vector": "enumeration of ordered tuples of pairwise disjoint faces",
        "betti": "Smith normal form of integer boundary matrices",
        "torsion": "invariant factors greater than one",
        "orbit_counts": "tuples up to permutation of components",
    });
    if !boundary_ok || !sym.is_free {
        return Err(Error::Inconsistency("boundary does not square to zero or action not free".into()));
    }
    Ok(output(&document("delprod", "report", &hash, parameters, result, provenance), EXIT_OK, &a.out))
}

fn run_lift(a: &LiftArgs) -> Result<RunOutput> {
    let input_json = read_json(&a.config)?;
    let (cfg, _) = configuration_from_json(&input_json)?;
    let lift = join_lift_config(&cfg, a.k)?;
    let parameters = json!({ "k": a.k, "r": a.r });
    let hash = problem_hash("lift", &input_json, &parameters);
    let mut doc = configuration_json(&lift);
    let obj = doc.as_object_mut().expect("configuration JSON is an object");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("command".into(), json!("lift"));
    obj.insert("problem_hash".into(), json!(hash));
    obj.insert("parameters".into(), parameters);
    obj.insert(
        "provenance".into(),
        json!({
            "source": a.config.display().to_string(),
            "k": a.k,
            "points": "join lift: copy i of vertex j has index (i-1)(N+1)+j",
        }),
    );
    let mut fatal = false;
    if let Some(r) = a.r {
        let report = check_lift_reflection(&cfg, r, a.k)?;
        fatal = report.fatal;
        obj.insert(
            "reflection".into(),
            json!({
                "base": report.base.as_ref().map(tverberg_json),
                "lifted": report.lifted.as_ref().map(tverberg_json),
                "lambdas": report.lambdas.as_deref().map(point_json),
                "lambdas_agree": report.lambdas_agree,
                "back_projected": report.back_projected.as_ref().map(tverberg_json),
                "fatal": report.fatal,
            }),
        );
    }
    let body = canonical_json(&doc);
    if fatal {
        if let Some(path) = &a.out {
            write_atomic(path, &body)?;
        }
        return Err(Error::Inconsistency("FATAL: the lift has a partition the configuration lacks".into()));
    }
    Ok(RunOutput {
        body,
        exit: EXIT_OK,
        out: a.out.clone(),
    })
}

fn bound_json(b: &bounds::Bound) -> Value {
    json!({ "value": b.value, "provenance": b.provenance })
}

fn run_bounds(a: &BoundsArgs) -> Result<RunOutput> {
    if let Some(dmax) = a.table {
        let mut md = String::from("| d | lower | lower rule | upper | upper rule | exact | conjecture |\n");
        md.push_str("|---|---|---|---|---|---|---|\n");
        for d in 1..=dmax {
            let rep = bounds::report(a.r, d)?;
            md.push_str(&format!(
                "| {d} | {} | {} | {} | {} | {} | {} |\n",
                rep.lower.value,
                rep.lower.provenance,
                rep.upper.value,
                rep.upper.provenance,
                rep.exact.map_or_else(|| "-".to_string(), |e| e.value.to_string()),
                rep.conjecture.value,
            ));
        }
        return Ok(RunOutput {
            body: md,
            exit: EXIT_OK,
            out: a.out.clone(),
        });
    }
    let d = a.d.expect("clap requires -d without --table");
    let rep = bounds::report(a.r, d)?;
    let parameters = json!({ "r": a.r, "d": d });
    let hash = problem_hash("bounds", &Value::Null, &parameters);
    let result = json!({
        "lower": bound_json(&rep.lower),
        "upper": bound_json(&rep.upper),
        "exact": rep.exact.as_ref().map(bound_json),
        "conjecture": bound_json(&rep.conjecture),
    });
    let provenance = json!({
        "lower": "baseline (r-1)(d+1) plus propagated counterexample seeds",
        "upper": "next prime power q >= r, or (2r-6)(d+1) for r >= 6",
        "conjecture": "conjectured value; not a theorem unless r is a prime power",
    });
    Ok(output(&document("bounds", "report", &hash, parameters, result, provenance), EXIT_OK, &a.out))
}

fn verdict(valid: bool, reason: Option<String>) -> RunOutput {
    RunOutput {
        body: canonical_json(&json!({ "valid": valid, "reason": reason })),
        exit: if valid { EXIT_OK } else { EXIT_INCONSISTENT },
        out: None,
    }
}

fn run_verify(a: &VerifyArgs) -> Result<RunOutput> {
    let cert = read_json(&a.certificate)?;
    let problem = read_json(&a.problem)?;
    if cert.get("schema_version").and_then(Value::as_u64) != Some(SCHEMA_VERSION) {
        return input(format!("unsupported schema_version, expected {SCHEMA_VERSION}"));
    }
    let command = field(&cert, "command")?
        .as_str()
        .ok_or_else(|| Error::Input("command must be a string".into()))?;
    if !matches!(command, "barycenter" | "tverberg" | "vkf" | "colored") {
        return input(format!("no verifier for {command} documents"));
    }
    if field(&cert, "status")?.as_str() != Some("found") {
        return input("only documents with status \"found\" carry a certificate");
    }
    let parameters = field(&cert, "parameters")?;
    let result = field(&cert, "result")?;
    if field(&cert, "problem_hash")?.as_str() != Some(problem_hash(command, &problem, parameters).as_str()) {
        return Ok(verdict(false, Some("problem hash mismatch".into())));
    }
    let r = as_usize(field(parameters, "r")?, "r")?;
    if command == "barycenter" {
        let poly = polytope_from_json(&problem)?;
        let p = point_from_json(field(parameters, "point")?)?;
        let k = as_usize(field(parameters, "k")?, "k")?;
        let faces = index_lists_from_json(field(result, "faces")?, "faces")?
            .into_iter()
            .map(|vertices| {
                let dim = poly.face_id(&vertices).map_or(vertices.len() as i32 - 1, |id| poly.face(id).dim);
                Face { vertices, dim }
            })
            .collect();
        let bc = BarycenterCertificate {
            faces,
            points: points_from_json(field(result, "points")?)?,
            coefficients: points_from_json(field(result, "coefficients")?)?,
        };
        return Ok(match verify_certificate(&poly, &p, k, r, &bc) {
            Ok(()) => verdict(true, None),
            Err(why) => verdict(false, Some(why.to_string())),
        });
    }
    let (cfg, _) = configuration_from_json(&problem)?;
    let constraint = match command {
        "vkf" => FaceConstraint::skeleton(as_usize(field(parameters, "k")?, "k")?),
        "colored" => FaceConstraint::rainbow(colors_from_json(field(parameters, "colors")?)?),
        _ => FaceConstraint::default(),
    };
    let tc = tverberg_from_json(result)?;
    Ok(match verify_tverberg_certificate(&cfg, r, &tc, &constraint) {
        Ok(()) => verdict(true, None),
        Err(why) => verdict(false, Some(why.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_json_sorts_keys() {
        let v = json!({ "b": 1, "a": { "d": 2, "c": 3 } });
        assert_eq!(canonical_json(&v), "{\n  \"a\": {\n    \"c\": 3,\n    \"d\": 2\n  },\n  \"b\": 1\n}\n");
    }

    #[test]
    fn rationals_parse_from_strings_and_integers() {
        assert_eq!(rational_from_json(&json!("3/6")).unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(rational_from_json(&json!(-4)).unwrap(), Rational::from_integer((-4).into()));
        assert!(rational_from_json(&json!(0.5)).is_err());
    }

    #[test]
    fn hash_depends_on_parameters() {
        let input = json!({ "dim": 1 });
        assert_ne!(problem_hash("tverberg", &input, &json!({"r": 2})), problem_hash("tverberg", &input, &json!({"r": 3})));
        assert_eq!(problem_hash("tverberg", &input, &json!({"r": 2})).len(), 64);
    }

    #[test]
    fn bounds_report_document() {
        let out = run(&RunManifest::try_parse_from(["skeleta", "bounds", "-r", "6", "-d", "19"]).unwrap()).unwrap();
        assert_eq!(out.exit, EXIT_OK);
        let v: Value = serde_json::from_str(&out.body).unwrap();
        assert_eq!(v["result"]["upper"]["value"], 119);
        assert_eq!(v["result"]["lower"]["value"], 101);
        assert_eq!(v["schema_version"], 1);
    }

    #[test]
    fn bounds_table_is_markdown() {
        let out = run(&RunManifest::try_parse_from(["skeleta", "bounds", "-r", "5", "--table", "3"]).unwrap()).unwrap();
        assert_eq!(out.body.lines().count(), 5);
        assert!(out.body.contains("| 3 | 16 | prime power exact | 16 |"));
    }

    #[test]
    fn usage_errors_exit_with_input_code() {
        assert_eq!(main_from_args(["skeleta", "tverberg"]), EXIT_INPUT);
        assert_eq!(main_from_args(["skeleta", "bounds", "-r", "1", "-d", "3"]), EXIT_INPUT);
    }
}
