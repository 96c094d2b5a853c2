//! The `derivkit` command line: batch queries over JSON inputs,
//! certificate emission, and refutation reports.
//!
//! Exit codes: 0 for any completed analysis (non-membership and invalid
//! verdicts are results, not errors), 2 for malformed input, 3 for
//! violated preconditions.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use derivkit_core::algebra::{matrix_algebra, tensor_square_op};
use derivkit_core::bimodule::{
    classify_dn_submodule, classify_lie_ideal, lambda_preserver, BimoduleRep, LambdaMatrix,
    LambdaVerdict,
};
use derivkit_core::derivations::{semiideal_verify, LVerdict, LieSetup};
use derivkit_core::expectation::{factor_expectation, signed_perm_average};
use derivkit_core::freealg::f2_refutation;
use derivkit_core::matrix::Matrix;
use derivkit_core::poly::{
    decide_membership_poly, decompose_one_variable, doubled_vars, verify_certificate, CtxValue,
    EvalContext, MembershipVerdict, MultiPoly,
};
use derivkit_core::rational::to_canonical_string;

use crate::formats::{
    self, certificate_to_doc, load_algebra, load_certificate, load_matrix, matrix_to_doc,
    parse_poly_text, print_free_tensor, print_poly_text, rational_from_str, subspace_to_doc,
    to_canonical_json, FormatError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser)]
#[command(name = "derivkit", version, about = "Exact computations with algebras generated by inner derivations")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the derivation-generated subalgebra with its semiideal
    /// bound and verify the ideal identities.
    LieCheck {
        /// Structure-constant JSON file for a unital algebra.
        #[arg(long)]
        algebra: PathBuf,
        /// Sandwich products sampled for the semiideal report.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Polynomial membership and certificates.
    Poly {
        #[command(subcommand)]
        cmd: PolyCmd,
    },
    /// Canonical classifications inside matrix algebras.
    Classify {
        #[command(subcommand)]
        cmd: ClassifyCmd,
    },
    /// Built-in boundary examples.
    Counterexample {
        #[arg(value_enum)]
        which: CounterexampleKind,
    },
    /// Anti-diagonal criterion for Lie-ideal preservation.
    LambdaCheck {
        /// JSON array of [k, m, "coefficient"] entries.
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Exact group-averaging expectation.
    Expectation {
        #[arg(long)]
        n: usize,
        /// Tensor-factor size; averages over the second factor when given.
        #[arg(long)]
        m: Option<usize>,
        /// Matrix JSON, path or inline.
        #[arg(long)]
        input: String,
    },
    /// Replay a certificate against a target.
    VerifyCert {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, value_enum)]
        context: ContextKind,
        /// Target value: polynomial text (poly), coordinate JSON array
        /// (tensor), or matrix JSON (elementary); path or inline.
        #[arg(long)]
        target: String,
        /// Base algebra file (tensor context).
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Basis label of the generator element (tensor context).
        #[arg(long, default_value = "x")]
        generator: String,
        /// Matrix size for the elementary context (M_n acting on itself).
        #[arg(long)]
        n: Option<usize>,
        /// Element of the acting algebra, matrix JSON (elementary context).
        #[arg(long)]
        element: Option<String>,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Decompose a diagonal-vanishing polynomial in (x, y) into generator
    /// differences and emit the certificate.
    Decompose {
        /// Polynomial text, path or inline.
        #[arg(long)]
        input: String,
    },
    /// Decide membership in the subalgebra generated by all differences,
    /// degree by degree.
    Member {
        #[arg(long)]
        input: String,
        /// Number of base variables.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Degree cap for the graded enumeration.
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Match the Lie ideal generated by the inputs against the four
    /// canonical classes.
    LieIdeal {
        #[arg(long)]
        n: usize,
        /// JSON array of n x n matrices.
        #[arg(long)]
        gens: PathBuf,
    },
    /// Split the diagonal-action Lie submodule generated by the inputs.
    DnSubmodule {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gens: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CounterexampleKind {
    /// (x1 - y1)·x2, uniform of degree 2.
    P2,
    /// (x1 - y1)²·x2, uniform of degree 3.
    P2Cubed,
    /// The free two-generator sandwich element.
    F2,
}

#[derive(Clone, Copy, ValueEnum)]
enum ContextKind {
    Poly,
    Tensor,
    Elementary,
}

enum CliError {
    BadInput(String),
    Precondition(String),
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Core(inner) => CliError::Precondition(inner.to_string()),
            other => CliError::BadInput(other.to_string()),
        }
    }
}

impl From<derivkit_core::Error> for CliError {
    fn from(e: derivkit_core::Error) -> Self {
        CliError::Precondition(e.to_string())
    }
}

/// Parse and execute; returns the process exit code. All regular output
/// goes to `out`, errors to `err`.
pub fn run<O: Write, E: Write>(args: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/usage text
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(rendered) => {
            let _ = out.write_all(rendered.as_bytes());
            EXIT_OK
        }
        Err(CliError::BadInput(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_BAD_INPUT
        }
        Err(CliError::Precondition(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_PRECONDITION
        }
    }
}

fn read_input_arg(arg: &str) -> Result<String, CliError> {
    if Path::new(arg).exists() {
        std::fs::read_to_string(arg).map_err(|e| CliError::BadInput(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::LieCheck { algebra, samples, seed } => {
            lie_check(algebra, *samples, *seed, cli.json)
        }
        Command::Poly { cmd } => match cmd {
            PolyCmd::Decompose { input } => poly_decompose(input, cli.json),
            PolyCmd::Member { input, k, max_degree } => {
                poly_member(input, *k, *max_degree, cli.json)
            }
        },
        Command::Classify { cmd } => match cmd {
            ClassifyCmd::LieIdeal { n, gens } => classify_ideal(*n, gens, cli.json),
            ClassifyCmd::DnSubmodule { n, gens } => classify_submodule(*n, gens, cli.json),
        },
        Command::Counterexample { which } => counterexample(*which, cli.json),
        Command::LambdaCheck { matrix } => lambda_check(matrix, cli.json),
        Command::Expectation { n, m, input } => expectation(*n, *m, input, cli.json),
        Command::VerifyCert { cert, context, target, algebra, generator, n, element } => {
            verify_cert(cert, *context, target, algebra.as_deref(), generator, *n, element.as_deref(), cli.json)
        }
    }
}

fn lie_check(path: &Path, samples: usize, seed: u64, json: bool) -> Result<String, CliError> {
    let algebra = load_algebra(&read_file(path)?)?;
    let setup = LieSetup::new(&algebra)?;
    let tlie = setup.tlie()?;
    let nlie = setup.nlie()?;
    let verdict = derivkit_core::derivations::decide_from_setup(&setup)?;
    let semiideal = semiideal_verify(&algebra, samples, seed)?;
    if json {
        let mut doc = json!({
            "tlie_dim": tlie.dim(),
            "nlie_dim": nlie.dim(),
            "verdict": match verdict { LVerdict::Equal => "Equal", LVerdict::StrictWitness(_) => "Strict" },
            "semiideal": {
                "left_ideal_dim": semiideal.left_ideal_dim,
                "right_ideal_dim": semiideal.right_ideal_dim,
                "left_matches_ker_m": semiideal.left_matches_ker_m,
                "right_matches_ker_m_op": semiideal.right_matches_ker_m_op,
                "meet_matches_nlie": semiideal.meet_matches_nlie,
                "samples": semiideal.samples,
                "samples_inside": semiideal.samples_inside,
            },
        });
        if let LVerdict::StrictWitness(w) = &verdict {
            doc["witness"] = json!(w.iter().map(to_canonical_string).collect::<Vec<_>>());
        }
        Ok(to_canonical_json(&doc))
    } else {
        let mut s = String::new();
        s.push_str(&format!("T_Lie dimension: {}\n", tlie.dim()));
        s.push_str(&format!("N_Lie dimension: {}\n", nlie.dim()));
        match &verdict {
            LVerdict::Equal => s.push_str("verdict: Equal (T_Lie = N_Lie)\n"),
            LVerdict::StrictWitness(w) => {
                s.push_str("verdict: Strict (N_Lie exceeds T_Lie)\n");
                s.push_str(&format!(
                    "witness: [{}]\n",
                    w.iter().map(to_canonical_string).collect::<Vec<_>>().join(", ")
                ));
            }
        }
        s.push_str(&format!(
            "semiideal identities: left {} (dim {}), right {} (dim {}), meet {}\n",
            ok_str(semiideal.left_matches_ker_m),
            semiideal.left_ideal_dim,
            ok_str(semiideal.right_matches_ker_m_op),
            semiideal.right_ideal_dim,
            ok_str(semiideal.meet_matches_nlie),
        ));
        s.push_str(&format!(
            "sampled sandwich products inside N_Lie: {}/{}\n",
            semiideal.samples_inside, semiideal.samples
        ));
        Ok(s)
    }
}

fn ok_str(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn poly_decompose(input: &str, json: bool) -> Result<String, CliError> {
    let text = read_input_arg(input)?;
    let vars = doubled_vars(1);
    let p = parse_poly_text(text.trim(), &vars)?;
    let cert = decompose_one_variable(&p)?;
    let replay = verify_certificate(&cert, &EvalContext::Polynomial, &CtxValue::Poly(p.clone()))?;
    if json {
        let doc = json!({
            "certificate": certificate_to_doc(&cert),
            "input": print_poly_text(&p),
            "replay_exact": replay.pass,
        });
        Ok(to_canonical_json(&doc))
    } else {
        let mut s = String::new();
        s.push_str(&format!("input: {}\n", print_poly_text(&p)));
        s.push_str(&format!("generator leaves: {}\n", cert.leaf_count()));
        s.push_str(&format!("replay: {}\n", if replay.pass { "exact" } else { "RESIDUAL" }));
        s.push_str(&formats::store_certificate(&cert));
        Ok(s)
    }
}

fn poly_member(input: &str, k: usize, max_degree: u32, json: bool) -> Result<String, CliError> {
    if k < 1 {
        return Err(CliError::Precondition("k must be at least 1".into()));
    }
    let text = read_input_arg(input)?;
    let vars = doubled_vars(k);
    let p = parse_poly_text(text.trim(), &vars)?;
    if let Some(d) = p.total_degree() {
        if d > max_degree {
            return Err(CliError::Precondition(format!(
                "degree {d} exceeds the cap {max_degree}; raise --max-degree"
            )));
        }
    }
    let verdict = decide_membership_poly(&p, k)?;
    if json {
        let doc = match &verdict {
            MembershipVerdict::Member => json!({"verdict": "Member"}),
            MembershipVerdict::NonMember { degree, residual } => json!({
                "verdict": "NonMember",
                "degree": degree,
                "residual": print_poly_text(residual),
            }),
        };
        Ok(to_canonical_json(&doc))
    } else {
        Ok(match &verdict {
            MembershipVerdict::Member => "verdict: Member\n".to_string(),
            MembershipVerdict::NonMember { degree, residual } => format!(
                "verdict: NonMember at degree {degree}\nfailing component: {}\n",
                print_poly_text(residual)
            ),
        })
    }
}

fn load_generator_matrices(n: usize, path: &Path) -> Result<Vec<Matrix>, CliError> {
    let docs: Vec<formats::MatrixDoc> = serde_json::from_str(&read_file(path)?)
        .map_err(|e| CliError::BadInput(format!("invalid JSON: {e}")))?;
    let mut out = Vec::with_capacity(docs.len());
    for (i, doc) in docs.iter().enumerate() {
        let m = formats::matrix_from_doc(doc)?;
        if m.rows() != n || m.cols() != n {
            return Err(CliError::BadInput(format!(
                "generator {i} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        out.push(m);
    }
    Ok(out)
}

fn classify_ideal(n: usize, gens: &Path, json: bool) -> Result<String, CliError> {
    let matrices = load_generator_matrices(n, gens)?;
    let class = classify_lie_ideal(n, &matrices)?;
    if json {
        Ok(to_canonical_json(&json!({"class": class.name()})))
    } else {
        Ok(format!("class: {}\n", class.name()))
    }
}

fn classify_submodule(n: usize, gens: &Path, json: bool) -> Result<String, CliError> {
    let matrices = load_generator_matrices(n, gens)?;
    let form = classify_dn_submodule(n, &matrices)?;
    let positions: Vec<_> = form.positions.iter().map(|&(j, k)| vec![j + 1, k + 1]).collect();
    if json {
        let doc = json!({
            "diagonal_part": subspace_to_doc(&form.diagonal_part),
            "positions": positions,
        });
        Ok(to_canonical_json(&doc))
    } else {
        let mut s = String::new();
        s.push_str(&format!("diagonal part dimension: {}\n", form.diagonal_part.dim()));
        for row in form.diagonal_part.basis() {
            s.push_str(&format!(
                "  diag({})\n",
                row.iter().map(to_canonical_string).collect::<Vec<_>>().join(", ")
            ));
        }
        s.push_str(&format!(
            "off-diagonal positions (1-based): {}\n",
            positions.iter().map(|p| format!("({},{})", p[0], p[1])).collect::<Vec<_>>().join(" ")
        ));
        Ok(s)
    }
}

fn counterexample(which: CounterexampleKind, json: bool) -> Result<String, CliError> {
    match which {
        CounterexampleKind::P2 | CounterexampleKind::P2Cubed => {
            let vars = doubled_vars(2);
            let d1 = parse_poly_text("x1 - y1", &vars)?;
            let x2 = MultiPoly::variable(vars.clone(), 1);
            let p = match which {
                CounterexampleKind::P2 => d1.mul(&x2),
                _ => d1.mul(&d1).mul(&x2),
            };
            let verdict = decide_membership_poly(&p, 2)?;
            let (verdict_name, degree) = match &verdict {
                MembershipVerdict::Member => ("Member", None),
                MembershipVerdict::NonMember { degree, .. } => ("NonMember", Some(*degree)),
            };
            if json {
                let mut doc = json!({
                    "polynomial": print_poly_text(&p),
                    "verdict": verdict_name,
                });
                if let Some(d) = degree {
                    doc["degree"] = json!(d);
                }
                Ok(to_canonical_json(&doc))
            } else {
                Ok(match degree {
                    Some(d) => format!(
                        "{}\nverdict: NonMember at degree {d}\n",
                        print_poly_text(&p)
                    ),
                    None => format!("{}\nverdict: Member\n", print_poly_text(&p)),
                })
            }
        }
        CounterexampleKind::F2 => {
            let report = f2_refutation()?;
            let (verdict_name, degree) = match &report.verdict {
                MembershipVerdict::Member => ("Member", None),
                MembershipVerdict::NonMember { degree, .. } => ("NonMember", Some(*degree)),
            };
            if json {
                let mut doc = json!({
                    "element": print_free_tensor(&report.element),
                    "m_vanishes": report.m_vanishes,
                    "m_op_vanishes": report.m_op_vanishes,
                    "image": print_poly_text(&report.image),
                    "verdict": verdict_name,
                });
                if let Some(d) = degree {
                    doc["degree"] = json!(d);
                }
                Ok(to_canonical_json(&doc))
            } else {
                let mut s = String::new();
                s.push_str(&format!("element: {}\n", print_free_tensor(&report.element)));
                s.push_str(&format!(
                    "multiplication maps vanish: m {} / m_op {}\n",
                    report.m_vanishes, report.m_op_vanishes
                ));
                s.push_str(&format!("abelianized image: {}\n", print_poly_text(&report.image)));
                match degree {
                    Some(d) => s.push_str(&format!("image verdict: NonMember at degree {d}\n")),
                    None => s.push_str("image verdict: Member (no obstruction from the image)\n"),
                }
                Ok(s)
            }
        }
    }
}

fn lambda_check(path: &Path, json: bool) -> Result<String, CliError> {
    let entries: Vec<(u32, u32, String)> = serde_json::from_str(&read_file(path)?)
        .map_err(|e| CliError::BadInput(format!("invalid JSON: {e}")))?;
    let mut lambda = LambdaMatrix::new();
    for (i, (k, m, coeff)) in entries.iter().enumerate() {
        let c = rational_from_str(&format!("entry {i}"), coeff)?;
        if lambda.insert((*k, *m), c).is_some() {
            return Err(CliError::BadInput(format!("duplicate entry ({k},{m})")));
        }
    }
    match lambda_preserver(&lambda) {
        LambdaVerdict::Valid => {
            if json {
                Ok(to_canonical_json(&json!({"verdict": "Valid"})))
            } else {
                Ok("verdict: Valid (all anti-diagonals sum to zero)\n".to_string())
            }
        }
        LambdaVerdict::Invalid(w) => {
            if json {
                let doc = json!({
                    "verdict": "Invalid",
                    "witness": {
                        "ring": format!("Q[t]/(t^{})", w.modulus_degree),
                        "first_failing": w.first_failing,
                        "mu": w.mu.iter().map(to_canonical_string).collect::<Vec<_>>(),
                        "element": w.element.iter().map(to_canonical_string).collect::<Vec<_>>(),
                        "escapes_line": w.escapes_line,
                    },
                });
                Ok(to_canonical_json(&doc))
            } else {
                let mut s = String::new();
                s.push_str(&format!(
                    "verdict: Invalid (anti-diagonal {} sums to {})\n",
                    w.first_failing,
                    to_canonical_string(&w.mu[w.first_failing])
                ));
                s.push_str(&format!(
                    "witness ring Q[t]/(t^{}), a = b = t, element coordinates [{}], escapes the line Q·t: {}\n",
                    w.modulus_degree,
                    w.element.iter().map(to_canonical_string).collect::<Vec<_>>().join(", "),
                    w.escapes_line
                ));
                Ok(s)
            }
        }
    }
}

fn expectation(n: usize, m: Option<usize>, input: &str, json: bool) -> Result<String, CliError> {
    let x = load_matrix(&read_input_arg(input)?)?;
    match m {
        None => {
            if x.rows() != n || x.cols() != n {
                return Err(CliError::Precondition(format!(
                    "input is {}x{}, expected {n}x{n}",
                    x.rows(),
                    x.cols()
                )));
            }
            let avg = signed_perm_average(&x)?;
            let expected = Matrix::identity(n).scale(&(x.trace() / derivkit_core::rational::rat(n as i64)));
            let matches = avg == expected;
            if json {
                let doc = json!({
                    "average": matrix_to_doc(&avg),
                    "equals_trace_projection": matches,
                });
                Ok(to_canonical_json(&doc))
            } else {
                Ok(format!(
                    "average:\n{}equals (tr x / n)·1: {matches}\n",
                    render_matrix(&avg)
                ))
            }
        }
        Some(m) => {
            let e = factor_expectation(n, m, &x)?;
            let idempotent = factor_expectation(n, m, &e)? == e;
            if json {
                let doc = json!({
                    "expectation": matrix_to_doc(&e),
                    "idempotent": idempotent,
                });
                Ok(to_canonical_json(&doc))
            } else {
                Ok(format!("expectation:\n{}idempotent: {idempotent}\n", render_matrix(&e)))
            }
        }
    }
}

fn render_matrix(m: &Matrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        s.push_str("  [");
        s.push_str(&m.row(i).iter().map(to_canonical_string).collect::<Vec<_>>().join(", "));
        s.push_str("]\n");
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn verify_cert(
    cert_path: &Path,
    context: ContextKind,
    target: &str,
    algebra: Option<&Path>,
    generator: &str,
    n: Option<usize>,
    element: Option<&str>,
    json: bool,
) -> Result<String, CliError> {
    let cert = load_certificate(&read_file(cert_path)?)?;
    let outcome = match context {
        ContextKind::Poly => {
            let vars = doubled_vars(1);
            let p = parse_poly_text(read_input_arg(target)?.trim(), &vars)?;
            verify_certificate(&cert, &EvalContext::Polynomial, &CtxValue::Poly(p))?
        }
        ContextKind::Tensor => {
            let Some(path) = algebra else {
                return Err(CliError::BadInput("tensor context needs --algebra".into()));
            };
            let base = load_algebra(&read_file(path)?)?;
            let Some(gen_index) = base.labels().iter().position(|l| l == generator) else {
                return Err(CliError::BadInput(format!(
                    "no basis element labeled `{generator}` (labels: {})",
                    base.labels().join(", ")
                )));
            };
            let tensor = tensor_square_op(&base)?;
            let coords: Vec<String> = serde_json::from_str(&read_input_arg(target)?)
                .map_err(|e| CliError::BadInput(format!("invalid JSON: {e}")))?;
            let target_coords: Vec<_> = coords
                .iter()
                .enumerate()
                .map(|(i, c)| rational_from_str(&format!("target[{i}]"), c))
                .collect::<Result<_, _>>()?;
            let generator_coords = base.basis_vec(gen_index);
            verify_certificate(
                &cert,
                &EvalContext::TensorSquare { base: &base, tensor: &tensor, generator: &generator_coords },
                &CtxValue::Tensor(target_coords),
            )?
        }
        ContextKind::Elementary => {
            let Some(n) = n else {
                return Err(CliError::BadInput("elementary context needs --n".into()));
            };
            let Some(element) = element else {
                return Err(CliError::BadInput("elementary context needs --element".into()));
            };
            let alg = matrix_algebra(n)?;
            let rep = BimoduleRep::regular(&alg)?;
            let a = load_matrix(&read_input_arg(element)?)?;
            if a.rows() != n || a.cols() != n {
                return Err(CliError::Precondition(format!(
                    "element is {}x{}, expected {n}x{n}",
                    a.rows(),
                    a.cols()
                )));
            }
            let target_m = load_matrix(&read_input_arg(target)?)?;
            verify_certificate(
                &cert,
                &EvalContext::Elementary { rep: &rep, element: &a.flatten() },
                &CtxValue::Operator(target_m),
            )?
        }
    };
    if json {
        let residual = match &outcome.residual {
            CtxValue::Poly(p) => json!(print_poly_text(p)),
            CtxValue::Tensor(v) => json!(v.iter().map(to_canonical_string).collect::<Vec<_>>()),
            CtxValue::Operator(m) => json!(matrix_to_doc(m)),
        };
        Ok(to_canonical_json(&json!({"pass": outcome.pass, "residual": residual})))
    } else {
        Ok(format!("pass: {}\n", outcome.pass))
    }
}

