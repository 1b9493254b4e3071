//! The `extremal` command line.
//!
//! Every run prints one JSON [`RunReport`] to stdout and exits with
//! 0 (pass), 1 (fail), 2 (not applicable or hypothesis violation) or
//! 3 (usage, parse or I/O error).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::{
    check_thm3_hypotheses, delsarte_bound, msd_bound, two_distance_max, uniform_two_intersection_conjecture,
};
use crate::certifier::{
    certify_independence, hamming_tight_certificate, mod_design_certificate, neumaier_check, neumaier_from_gram,
    ryser_decompose, two_distance_certificate, Certificate, CertificateKind, Verdict,
};
use crate::constructions::{
    fano, hadamard_design, hadamard_plus_full, johnson_pairs, pentagon, projective_lambda_design, projective_plane,
    schlafli27,
};
use crate::error::{Error, Result};
use crate::exactfield::{parse_rational, ExactScalar};
use crate::io::{
    family_to_json, gram_to_json, parse_family, parse_family_or_vectors, parse_gram, parse_matrix,
    vector_system_to_json, FamilyJson, GramData, MatrixData, VectorSystemJson,
};
use crate::search::{search_max, Predicate, SearchOptions, SearchProblem, DEFAULT_MAX_SPACE};
use crate::suite::{verify_paper_suite, SuiteOptions};

/// Environment variable overriding the search-space guard.
pub const MAX_SPACE_ENV: &str = "EXTREMAL_MAX_SPACE";

#[derive(Parser, Debug)]
#[command(
    name = "extremal",
    version,
    about = "Bounds, constructions and basis-property certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a closed-form bound.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Build an extremal object.
    Construct(ConstructArgs),
    /// Run a certifier on an input file.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Exhaustive maximum-family search.
    Search(SearchArgs),
    /// Run the built-in verification suite.
    VerifyPaper(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum BoundCmd {
    /// Sum of C(n,i)(q-1)^i for i <= s.
    Delsarte {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: u64,
    },
    /// Spherical s-distance bound.
    Msd {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        s: u64,
    },
    /// n(n+3)/2.
    TwoDistMax {
        #[arg(long)]
        n: u64,
    },
    /// Clause-by-clause check of the modular constant-distance bound.
    Thm3Check {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        lambda: u64,
    },
    /// C(n-w+2, 2) for w-uniform two-intersection families.
    Conjecture {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        w: u64,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(subcommand)]
    what: ConstructCmd,
    /// Write the constructed object to this file instead of the report payload.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    Fano,
    /// Projective plane of prime order r.
    Pg {
        #[arg(long)]
        r: u64,
    },
    /// Paley–Hadamard (4v-1, 2v-1, v-1) design.
    Hadamard {
        #[arg(long)]
        v: u64,
    },
    /// Hadamard design plus the full set.
    HadamardPlusFull {
        #[arg(long)]
        v: u64,
        /// Emit characteristic vectors instead of sets.
        #[arg(long)]
        vectors: bool,
    },
    /// Type-1 λ-design from the plane of order r (r ≡ 1 mod p).
    LambdaDesign {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: u64,
    },
    Pentagon,
    Schlafli27,
    /// The C(m,2) pair vectors.
    Johnson {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CertifyCmd {
    Independence {
        #[arg(long)]
        matrix: PathBuf,
    },
    HammingTight {
        /// Family or vector-system JSON.
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        lambda: u64,
    },
    TwoDistance {
        #[arg(long)]
        gram: PathBuf,
    },
    /// Either --gram, or --n, --count, --d1sq and --d2sq.
    Neumaier {
        #[arg(long, conflicts_with_all = ["n", "count", "d1sq", "d2sq"])]
        gram: Option<PathBuf>,
        #[arg(long, requires_all = ["count", "d1sq", "d2sq"])]
        n: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        d1sq: Option<String>,
        #[arg(long)]
        d2sq: Option<String>,
    },
    ModDesign {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        p: u64,
    },
    Ryser {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        lambda: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PredArg {
    /// Distances ≡ lambda (mod p).
    DistMod,
    /// Distances in the --within list.
    DistWithin,
    /// Every distance equals lambda.
    Constant,
    /// Every intersection has size lambda (q = 2).
    Intersection,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u8,
    #[arg(long, value_enum)]
    pred: PredArg,
    #[arg(long)]
    lambda: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    /// Comma-separated allowed distances.
    #[arg(long, value_delimiter = ',')]
    within: Vec<usize>,
    #[arg(long)]
    target: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Only run criteria whose name or tag contains this text.
    #[arg(long)]
    filter: Option<String>,
    /// Fault injection: replace the 1/4 entries of the 27-line Gram matrix.
    #[arg(long, value_name = "VALUE")]
    mutate_schlafli: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
    HypothesisViolation,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::NotApplicable | Outcome::HypothesisViolation => 2,
            Outcome::Error => 3,
        }
    }
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Outcome::Pass,
            Verdict::Fail => Outcome::Fail,
            Verdict::NotApplicable => Outcome::NotApplicable,
            Verdict::HypothesisViolation => Outcome::HypothesisViolation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub outcome: Outcome,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    pub wall_time_ms: u64,
}

/// Reads input files and remembers their bytes for the digest.
#[derive(Default)]
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::malformed(format!("cannot read {}: {e}", path.display())))?;
        self.hasher.update(b"\0file\0");
        self.hasher.update(text.as_bytes());
        Ok(text)
    }
}

struct Outcomes {
    outcome: Outcome,
    payload: Value,
    diagnostics: Vec<String>,
}

impl Outcomes {
    fn pass(payload: Value) -> Self {
        Self {
            outcome: Outcome::Pass,
            payload,
            diagnostics: Vec::new(),
        }
    }

    fn certificate(c: &Certificate) -> Self {
        let mut diagnostics: Vec<String> = c
            .hypothesis_report
            .iter()
            .filter(|cl| !cl.holds)
            .map(|cl| format!("clause {} fails: {}", cl.name, cl.detail.as_deref().unwrap_or("")))
            .collect();
        diagnostics.extend(
            c.failed_identities()
                .map(|i| format!("identity {} fails: {} != {}", i.name, i.left_side, i.right_side)),
        );
        Self {
            outcome: c.verdict.into(),
            payload: serde_json::to_value(c).expect("certificates serialize"),
            diagnostics,
        }
    }
}

fn error_outcome(e: &Error) -> Outcome {
    match e {
        Error::HypothesisViolation(_) | Error::UnsupportedOrder(_) => Outcome::HypothesisViolation,
        _ => Outcome::Error,
    }
}

/// Runs the CLI on `args` (without the program name) and returns the exit code.
pub fn main_with_args<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("extremal".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    Outcome::Error.exit_code()
                }
            };
        }
    };
    let (report, code) = dispatch(&cli, &args);
    for d in &report.diagnostics {
        let _ = writeln!(stderr, "{d}");
    }
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    let _ = writeln!(stdout, "{text}");
    code
}

/// Runs one parsed command and returns its report with the exit code.
pub fn dispatch(cli: &Cli, args: &[String]) -> (RunReport, i32) {
    let start = Instant::now();
    let mut inputs = Inputs::default();
    inputs.hasher.update(args.join("\0").as_bytes());
    let result = match &cli.command {
        Command::Bound(b) => run_bound(b),
        Command::Construct(c) => run_construct(c),
        Command::Certify(c) => run_certify(c, &mut inputs),
        Command::Search(s) => run_search(s),
        Command::VerifyPaper(v) => run_verify(v),
    };
    let outcomes = result.unwrap_or_else(|e| Outcomes {
        outcome: error_outcome(&e),
        payload: Value::Null,
        diagnostics: vec![e.to_string()],
    });
    let report = RunReport {
        command: args.to_vec(),
        inputs_digest: hex::encode(inputs.hasher.finalize()),
        outcome: outcomes.outcome,
        payload: outcomes.payload,
        diagnostics: outcomes.diagnostics,
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    let code = report.outcome.exit_code();
    (report, code)
}

fn run_bound(b: &BoundCmd) -> Result<Outcomes> {
    let value = match *b {
        BoundCmd::Delsarte { n, q, s } => delsarte_bound(n, q, s)?,
        BoundCmd::Msd { n, s } => msd_bound(n, s)?,
        BoundCmd::TwoDistMax { n } => two_distance_max(n)?,
        BoundCmd::Conjecture { n, w } => uniform_two_intersection_conjecture(n, w)?,
        BoundCmd::Thm3Check { n, q, p, lambda } => {
            let h = check_thm3_hypotheses(n, q, p, lambda)?;
            let mut out = Outcomes::pass(serde_json::to_value(&h).expect("serializes"));
            if let Some(clause) = h.first_failure() {
                out.outcome = Outcome::HypothesisViolation;
                out.diagnostics.push(format!("clause {clause} fails"));
            }
            return Ok(out);
        }
    };
    // bounds can exceed u64, so they travel as decimal strings
    Ok(Outcomes::pass(json!({ "bound": value.to_string() })))
}

fn run_construct(c: &ConstructArgs) -> Result<Outcomes> {
    let (kind, text) = match c.what {
        ConstructCmd::Fano => ("family", family_to_json(&fano())),
        ConstructCmd::Pg { r } => ("family", family_to_json(&projective_plane(r)?)),
        ConstructCmd::Hadamard { v } => ("family", family_to_json(&hadamard_design(v)?)),
        ConstructCmd::HadamardPlusFull { v, vectors } => {
            let f = hadamard_plus_full(v)?;
            if vectors {
                ("vectorSystem", vector_system_to_json(&f.characteristic_vectors()?))
            } else {
                ("family", family_to_json(&f))
            }
        }
        ConstructCmd::LambdaDesign { r, p } => ("family", family_to_json(&projective_lambda_design(p, r)?)),
        ConstructCmd::Pentagon => ("gram", gram_to_json(&pentagon())),
        ConstructCmd::Schlafli27 => ("gram", gram_to_json(&schlafli27())),
        ConstructCmd::Johnson { m } => ("gram", gram_to_json(&johnson_pairs(m)?)),
    };
    let object: Value = serde_json::from_str(&text).expect("constructed JSON parses");
    let summary = match kind {
        "family" => {
            let f: FamilyJson = serde_json::from_value(object.clone()).expect("family shape");
            json!({ "kind": kind, "n": f.n, "size": f.sets.len() })
        }
        "vectorSystem" => {
            let v: VectorSystemJson = serde_json::from_value(object.clone()).expect("vector shape");
            json!({ "kind": kind, "n": v.n, "q": v.q, "size": v.vectors.len() })
        }
        _ => json!({ "kind": kind, "n": object["n"], "N": object["N"] }),
    };
    let payload = match &c.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Error::malformed(format!("cannot write {}: {e}", path.display())))?;
            json!({ "summary": summary, "written": path.display().to_string() })
        }
        None => json!({ "summary": summary, "object": object }),
    };
    Ok(Outcomes::pass(payload))
}

fn run_certify(c: &CertifyCmd, inputs: &mut Inputs) -> Result<Outcomes> {
    let cert = match c {
        CertifyCmd::Independence { matrix } => match parse_matrix(&inputs.read(matrix)?)? {
            MatrixData::Rational(m) => certify_independence(&m)?,
            MatrixData::Quadratic(m) => certify_independence(&m)?,
            MatrixData::Modular(m) => certify_independence(&m)?,
        },
        CertifyCmd::HammingTight { family, p, lambda } => {
            let h = parse_family_or_vectors(&inputs.read(family)?)?;
            hamming_tight_certificate(&h, *p, *lambda)?
        }
        CertifyCmd::TwoDistance { gram } => {
            let file = parse_gram(&inputs.read(gram)?)?;
            let actual = match &file.data {
                GramData::Rational(g) => g.point_count(),
                GramData::Quadratic(g) => g.point_count(),
            };
            if file.declared_count != actual {
                Certificate::new(CertificateKind::TwoDistance).not_applicable(format!(
                    "declared N = {} but the Gram matrix has {actual} points",
                    file.declared_count
                ))
            } else {
                match &file.data {
                    GramData::Rational(g) => two_distance_certificate(g)?,
                    GramData::Quadratic(g) => two_distance_certificate(g)?,
                }
            }
        }
        CertifyCmd::Neumaier {
            gram,
            n,
            count,
            d1sq,
            d2sq,
        } => match gram {
            Some(path) => match parse_gram(&inputs.read(path)?)?.data {
                GramData::Rational(g) => neumaier_from_gram(&g)?,
                GramData::Quadratic(g) => neumaier_from_gram(&g)?,
            },
            None => {
                let missing = |name: &str| Error::malformed(format!("--{name} is required without --gram"));
                let n = n.ok_or_else(|| missing("n"))?;
                let count = count.ok_or_else(|| missing("count"))?;
                let d1 = d1sq.as_deref().ok_or_else(|| missing("d1sq"))?;
                let d2 = d2sq.as_deref().ok_or_else(|| missing("d2sq"))?;
                match (ExactScalar::parse_real(d1)?, ExactScalar::parse_real(d2)?) {
                    (ExactScalar::Rational(a), ExactScalar::Rational(b)) => neumaier_check(n, count, &a, &b)?,
                    (ExactScalar::Quadratic(a), ExactScalar::Quadratic(b)) => neumaier_check(n, count, &a, &b)?,
                    (ExactScalar::Quadratic(a), ExactScalar::Rational(b)) => {
                        let b = crate::exactfield::QuadExt::from_rational(b, a.radicand())?;
                        neumaier_check(n, count, &a, &b)?
                    }
                    (ExactScalar::Rational(a), ExactScalar::Quadratic(b)) => {
                        let a = crate::exactfield::QuadExt::from_rational(a, b.radicand())?;
                        neumaier_check(n, count, &a, &b)?
                    }
                    _ => return Err(Error::malformed("squared distances must be real scalars")),
                }
            }
        },
        CertifyCmd::ModDesign { family, p } => mod_design_certificate(&parse_family(&inputs.read(family)?)?, *p)?,
        CertifyCmd::Ryser { family, lambda } => ryser_decompose(&parse_family(&inputs.read(family)?)?, *lambda)?,
    };
    Ok(Outcomes::certificate(&cert))
}

fn max_space_from_env() -> Result<u64> {
    match std::env::var(MAX_SPACE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::malformed(format!("{MAX_SPACE_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_SPACE),
    }
}

fn run_search(s: &SearchArgs) -> Result<Outcomes> {
    let need_lambda = || {
        s.lambda
            .ok_or_else(|| Error::malformed(format!("--lambda is required for --pred {:?}", s.pred)))
    };
    let predicate = match s.pred {
        PredArg::DistMod => Predicate::DistanceCongruent {
            lambda: need_lambda()?,
            p: s.p
                .ok_or_else(|| Error::malformed("--p is required for --pred dist-mod"))?,
        },
        PredArg::DistWithin => {
            if s.within.is_empty() {
                return Err(Error::malformed("--within is required for --pred dist-within"));
            }
            Predicate::DistanceSetWithin {
                distances: s.within.iter().copied().collect(),
            }
        }
        PredArg::Constant => Predicate::ConstantDistance {
            lambda: need_lambda()? as usize,
        },
        PredArg::Intersection => Predicate::IntersectionConstant {
            lambda: need_lambda()? as usize,
        },
    };
    let mut problem = SearchProblem::new(s.n, s.q, predicate)?;
    if let Some(t) = s.target {
        problem = problem.with_target(t);
    }
    let options = SearchOptions {
        max_space: max_space_from_env()?,
        jobs: s.jobs,
    };
    let result = search_max(&problem, &options)?;
    Ok(Outcomes::pass(json!({
        "problem": problem,
        "maxSize": result.max_size,
        "witness": VectorSystemJson::from_system(&result.witness),
        "nodesExplored": result.nodes_explored,
    })))
}

fn run_verify(v: &VerifyArgs) -> Result<Outcomes> {
    let skew = v.mutate_schlafli.as_deref().map(parse_rational).transpose()?;
    let report = verify_paper_suite(&SuiteOptions {
        filter: v.filter.clone(),
        schlafli_skew: skew,
    });
    let diagnostics = report
        .criteria
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("criterion {} ({}) failed", c.id, c.name))
        .collect();
    Ok(Outcomes {
        outcome: if report.passed { Outcome::Pass } else { Outcome::Fail },
        payload: serde_json::to_value(&report).expect("serializes"),
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, Value) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(args.iter().copied(), &mut out, &mut err);
        let v = serde_json::from_slice(&out).unwrap_or(Value::Null);
        (code, v)
    }

    #[test]
    fn bound_delsarte() {
        let (code, v) = run(&["bound", "delsarte", "--n", "3", "--q", "2", "--s", "1"]);
        assert_eq!(code, 0);
        assert_eq!(v["payload"]["bound"], "4");
        assert_eq!(v["outcome"], "pass");
    }

    #[test]
    fn usage_errors_exit_three() {
        assert_eq!(run(&["bogus"]).0, 3);
        assert_eq!(run(&["bound", "delsarte", "--n", "3"]).0, 3);
        let (code, v) = run(&["search", "--n", "3", "--q", "2", "--pred", "constant"]);
        assert_eq!(code, 3);
        assert!(v["diagnostics"][0].as_str().unwrap().contains("--lambda"));
    }

    #[test]
    fn thm3_check_reports_clause() {
        let (code, v) = run(&[
            "bound",
            "thm3-check",
            "--n",
            "3",
            "--q",
            "2",
            "--p",
            "5",
            "--lambda",
            "2",
        ]);
        assert_eq!(code, 2);
        assert_eq!(v["payload"]["qLambdaClause"], false);
        let (code, _) = run(&[
            "bound",
            "thm3-check",
            "--n",
            "4",
            "--q",
            "2",
            "--p",
            "3",
            "--lambda",
            "2",
        ]);
        assert_eq!(code, 0);
    }
}
