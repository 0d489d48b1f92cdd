//! `canon`: exact linear-algebra reports from the command line.
//!
//! Each subcommand wraps exactly one library operation. Reports are
//! byte-deterministic; the same payload is rendered as text, JSON, or
//! LaTeX. Exit codes: 0 success, 1 domain error (typed name in the
//! report), 2 usage or input-parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use canon_core::canonical::{
    elementary_divisors, is_similar, jordan_form, rational_form, similarity_invariants,
    similarity_transform, CanonicalError, ElementaryDivisorList,
};
use canon_core::matrices::{characteristic_matrix, parse_matrix_text, MatrixError, ParseMatrixError};
use canon_core::numeric::{
    factor_over_rationals, isolate_real_roots, parse_polynomial, NumericError, Polynomial, Rational,
    RootInterval,
};
use canon_core::oscillations::{
    analyze_second_order, classify_stability_first_order, splitting_criterion, OscillationError,
    StabilityVerdict, UnboundedWitness,
};
use canon_core::pencil::{
    inertia, pencil_invariants, pencil_to_jordan, simultaneous_diagonalize, DiagonalizationOutcome,
    Pencil, PencilError,
};
use canon_core::smith::smith_normal_form;
use canon_core::canonical::equivalence_normal_form;
use canon_core::{FactorConfig, Matrix, SymmetricMatrix};

#[derive(Parser)]
#[command(name = "canon", version, about = "Exact canonical forms, pencils, and ODE stability")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Override the irreducible-factor degree bound.
    #[arg(long, global = true)]
    degree_bound: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Domain {
    Int,
    Poly,
}

#[derive(Subcommand)]
enum Cmd {
    /// Smith normal form: of the matrix over the integers (`--domain int`)
    /// or of its characteristic matrix sI - A over Q[s] (default).
    Snf {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Domain::Poly)]
        domain: Domain,
    },
    /// Invariant factors of sI - A.
    Invariants { input: PathBuf },
    /// Elementary divisors of sI - A.
    Divisors { input: PathBuf },
    /// Rational (Frobenius) canonical form.
    RationalForm { input: PathBuf },
    /// Jordan canonical form (rational spectrum required).
    Jordan { input: PathBuf },
    /// Similarity test for two matrices, with transform or invariant witness.
    Similar { a: PathBuf, b: PathBuf },
    /// Equivalence normal form P A Q = diag(I_r, 0) over Q.
    EquivForm { input: PathBuf },
    /// Weierstrass invariants of the pencil A + sB.
    Pencil { a: PathBuf, b: PathBuf },
    /// Reduce s*Phi - Psi to sI - J with invertible H, K.
    PencilJordan { phi: PathBuf, psi: PathBuf },
    /// Simultaneously diagonalize a symmetric pair (Psi positive definite).
    Quadpair { phi: PathBuf, psi: PathBuf },
    /// Inertia (signature) of a symmetric matrix.
    Inertia { input: PathBuf },
    /// Stability of x' = Ax.
    Ode1 { input: PathBuf },
    /// Stability of M x'' + K x = 0.
    Ode2 { m: PathBuf, k: PathBuf },
    /// Factor a polynomial over the rationals.
    Factor { input: PathBuf },
    /// Isolate the real roots of a polynomial.
    Roots { input: PathBuf },
}

enum CliError {
    /// Bad input files or malformed content; exit 2.
    Usage(String),
    /// A typed library error; exit 1.
    Domain { name: &'static str, message: String },
}

impl CliError {
    fn domain(name: &'static str, message: impl ToString) -> Self {
        let mut message = message.to_string();
        // library Display strings already lead with the variant name
        if let Some(rest) = message.strip_prefix(&format!("{name}: ")) {
            message = rest.to_string();
        }
        CliError::Domain { name, message }
    }
}

fn numeric_error(e: NumericError) -> CliError {
    let name = match &e {
        NumericError::ZeroPolynomial => "ZeroPolynomial",
        NumericError::FactorDegreeExceeded(_, _) => "FactorDegreeExceeded",
        NumericError::IntegerFactorizationExceeded(_, _) => "IntegerFactorizationExceeded",
        NumericError::Parse(_) => return CliError::Usage(e.to_string()),
    };
    CliError::domain(name, e)
}

fn matrix_error(e: MatrixError) -> CliError {
    let name = match &e {
        MatrixError::NotSquare { .. } => "NotSquare",
        MatrixError::BadOrder { .. } => "BadOrder",
        MatrixError::NotAnEigenvalue(_) => "NotAnEigenvalue",
        MatrixError::AdjugateVanishes(_) => "AdjugateVanishes",
        MatrixError::DimensionMismatch(..) => "DimensionMismatch",
        MatrixError::NotSymmetric(..) => "NotSymmetric",
    };
    CliError::domain(name, e)
}

fn canonical_error(e: CanonicalError) -> CliError {
    match e {
        CanonicalError::Matrix(m) => matrix_error(m),
        CanonicalError::Numeric(n) => numeric_error(n),
        CanonicalError::NonSplitCharPoly(_) => CliError::domain("NonSplitCharPoly", e),
        CanonicalError::NotSimilar => CliError::domain("NotSimilar", e),
        CanonicalError::EmptyList => CliError::domain("EmptyList", e),
    }
}

fn pencil_error(e: PencilError) -> CliError {
    match e {
        PencilError::Matrix(m) => matrix_error(m),
        PencilError::Numeric(n) => numeric_error(n),
        PencilError::Canonical(c) => canonical_error(c),
        PencilError::SingularPencil => CliError::domain("SingularPencil", e),
        PencilError::SingularPhi => CliError::domain("SingularPhi", e),
        PencilError::SingularPsi => CliError::domain("SingularPsi", e),
        PencilError::PsiNotDefinite => CliError::domain("PsiNotDefinite", e),
    }
}

fn oscillation_error(e: OscillationError) -> CliError {
    match e {
        OscillationError::Matrix(m) => matrix_error(m),
        OscillationError::Numeric(n) => numeric_error(n),
        OscillationError::Canonical(c) => canonical_error(c),
        OscillationError::Pencil(p) => pencil_error(p),
        OscillationError::MNotDefinite => CliError::domain("MNotDefinite", e),
    }
}

fn parse_error(path: &Path, e: ParseMatrixError) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

struct Report {
    operation: &'static str,
    inputs: Vec<(String, Value)>,
    result: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = FactorConfig::default();
    if let Some(b) = cli.degree_bound {
        config.degree_bound = b;
    }
    match run(&cli.cmd, &config) {
        Ok(report) => {
            print!("{}", render(&report, cli.format));
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Domain { name, message }) => {
            print!("{}", render_error(name, &message, cli.format));
            ExitCode::from(1)
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<Matrix<Rational>, CliError> {
    parse_matrix_text(&read_file(path)?).map_err(|e| parse_error(path, e))
}

fn load_symmetric(path: &Path) -> Result<SymmetricMatrix, CliError> {
    SymmetricMatrix::new(load_matrix(path)?).map_err(matrix_error)
}

fn load_polynomial(path: &Path) -> Result<Polynomial, CliError> {
    parse_polynomial(&read_file(path)?, 's').map_err(|e| match e {
        NumericError::Parse(m) => CliError::Usage(format!("{}: {m}", path.display())),
        other => numeric_error(other),
    })
}

fn input(path: &Path, m: &Matrix<Rational>) -> (String, Value) {
    (path.display().to_string(), vmat(m))
}

fn run(cmd: &Cmd, config: &FactorConfig) -> Result<Report, CliError> {
    match cmd {
        Cmd::Snf { input: path, domain } => {
            let a = load_matrix(path)?;
            let result = match domain {
                Domain::Poly => {
                    let cm = characteristic_matrix(&a).map_err(matrix_error)?;
                    let dec = smith_normal_form(&cm);
                    obj([
                        ("domain", json!("poly")),
                        ("diagonal", Value::Array(dec.diagonal.iter().map(vpoly).collect())),
                        ("left", vmat_poly(&dec.left)),
                        ("right", vmat_poly(&dec.right)),
                    ])
                }
                Domain::Int => {
                    let mut entries = Vec::with_capacity(a.rows() * a.cols());
                    for i in 0..a.rows() {
                        for j in 0..a.cols() {
                            let c = &a[(i, j)];
                            if !c.is_integer() {
                                return Err(CliError::domain(
                                    "NonIntegerEntry",
                                    format!("entry ({i},{j}) = {c} is not an integer"),
                                ));
                            }
                            entries.push(c.to_integer());
                        }
                    }
                    let m = Matrix::new(a.rows(), a.cols(), entries);
                    let dec = smith_normal_form(&m);
                    obj([
                        ("domain", json!("int")),
                        (
                            "diagonal",
                            Value::Array(dec.diagonal.iter().map(|d| json!(d.to_string())).collect()),
                        ),
                        ("left", vmat_generic(&dec.left, |v| v.to_string())),
                        ("right", vmat_generic(&dec.right, |v| v.to_string())),
                    ])
                }
            };
            Ok(Report { operation: "snf", inputs: vec![input(path, &a)], result })
        }
        Cmd::Invariants { input: path } => {
            let a = load_matrix(path)?;
            let inv = similarity_invariants(&a).map_err(canonical_error)?;
            Ok(Report {
                operation: "invariants",
                inputs: vec![input(path, &a)],
                result: obj([(
                    "invariant_factors",
                    Value::Array(inv.iter().map(vpoly).collect()),
                )]),
            })
        }
        Cmd::Divisors { input: path } => {
            let a = load_matrix(path)?;
            let d = elementary_divisors(&a, config).map_err(canonical_error)?;
            Ok(Report {
                operation: "divisors",
                inputs: vec![input(path, &a)],
                result: obj([("elementary_divisors", vdivisors(&d))]),
            })
        }
        Cmd::RationalForm { input: path } => {
            let a = load_matrix(path)?;
            let f = rational_form(&a).map_err(canonical_error)?;
            Ok(Report {
                operation: "rational-form",
                inputs: vec![input(path, &a)],
                result: obj([
                    (
                        "invariant_factors",
                        Value::Array(f.blocks.iter().map(vpoly).collect()),
                    ),
                    ("matrix", vmat(&f.matrix)),
                ]),
            })
        }
        Cmd::Jordan { input: path } => {
            let a = load_matrix(path)?;
            let j = jordan_form(&a, config).map_err(canonical_error)?;
            Ok(Report {
                operation: "jordan",
                inputs: vec![input(path, &a)],
                result: obj([
                    (
                        "blocks",
                        Value::Array(
                            j.blocks
                                .iter()
                                .map(|(e, s)| json!([vrat(e), s]))
                                .collect(),
                        ),
                    ),
                    ("matrix", vmat(&j.matrix)),
                ]),
            })
        }
        Cmd::Similar { a: pa, b: pb } => {
            let a = load_matrix(pa)?;
            let b = load_matrix(pb)?;
            let verdict = is_similar(&a, &b).map_err(canonical_error)?;
            let witness = if verdict {
                let s = similarity_transform(&a, &b).map_err(canonical_error)?;
                obj([("transform", vmat(&s))])
            } else {
                let ia = similarity_invariants(&a).map_err(canonical_error)?;
                let ib = similarity_invariants(&b).map_err(canonical_error)?;
                obj([
                    ("invariants_a", Value::Array(ia.iter().map(vpoly).collect())),
                    ("invariants_b", Value::Array(ib.iter().map(vpoly).collect())),
                ])
            };
            Ok(Report {
                operation: "similar",
                inputs: vec![input(pa, &a), input(pb, &b)],
                result: obj([("verdict", json!(verdict)), ("witness", witness)]),
            })
        }
        Cmd::EquivForm { input: path } => {
            let a = load_matrix(path)?;
            let (p, q, rank) = equivalence_normal_form(&a);
            Ok(Report {
                operation: "equiv-form",
                inputs: vec![input(path, &a)],
                result: obj([
                    ("rank", json!(rank)),
                    ("left", vmat(&p)),
                    ("right", vmat(&q)),
                    ("normal_form", vmat(&p.mul(&a).mul(&q))),
                ]),
            })
        }
        Cmd::Pencil { a: pa, b: pb } => {
            let a = load_matrix(pa)?;
            let b = load_matrix(pb)?;
            let pencil = Pencil::new(a.clone(), b.clone()).map_err(pencil_error)?;
            let inv = pencil_invariants(&pencil, config).map_err(pencil_error)?;
            Ok(Report {
                operation: "pencil",
                inputs: vec![input(pa, &a), input(pb, &b)],
                result: obj([
                    ("regular", json!(inv.regular)),
                    ("finite_divisors", vdivisors(&inv.finite)),
                    ("infinite_degrees", json!(inv.infinite_degrees)),
                ]),
            })
        }
        Cmd::PencilJordan { phi: pp, psi: ps } => {
            let phi = load_matrix(pp)?;
            let psi = load_matrix(ps)?;
            let (h, k, j) = pencil_to_jordan(&phi, &psi, config).map_err(pencil_error)?;
            Ok(Report {
                operation: "pencil-jordan",
                inputs: vec![input(pp, &phi), input(ps, &psi)],
                result: obj([
                    ("h", vmat(&h)),
                    ("k", vmat(&k)),
                    (
                        "jordan_blocks",
                        Value::Array(j.blocks.iter().map(|(e, s)| json!([vrat(e), s])).collect()),
                    ),
                    ("jordan_matrix", vmat(&j.matrix)),
                ]),
            })
        }
        Cmd::Quadpair { phi: pp, psi: ps } => {
            let phi = load_symmetric(pp)?;
            let psi = load_symmetric(ps)?;
            let result = match simultaneous_diagonalize(&phi, &psi, config).map_err(pencil_error)? {
                DiagonalizationOutcome::Diagonalized(d) => obj([
                    ("diagonalized", json!(true)),
                    ("transform", vmat(&d.t)),
                    ("diag_phi", Value::Array(d.diag_phi.iter().map(vrat).collect())),
                    ("diag_psi", Value::Array(d.diag_psi.iter().map(vrat).collect())),
                ]),
                DiagonalizationOutcome::Certificate(c) => obj([
                    ("diagonalized", json!(false)),
                    ("root_intervals", vintervals(&c.root_intervals)),
                    ("all_divisors_linear", json!(c.all_divisors_linear)),
                ]),
            };
            Ok(Report {
                operation: "quadpair",
                inputs: vec![input(pp, phi.matrix()), input(ps, psi.matrix())],
                result,
            })
        }
        Cmd::Inertia { input: path } => {
            let s = load_symmetric(path)?;
            let i = inertia(&s);
            Ok(Report {
                operation: "inertia",
                inputs: vec![input(path, s.matrix())],
                result: obj([
                    ("positive", json!(i.positive)),
                    ("negative", json!(i.negative)),
                    ("zero", json!(i.zero)),
                    (
                        "principal_minors",
                        Value::Array(i.principal_minors.iter().map(vrat).collect()),
                    ),
                ]),
            })
        }
        Cmd::Ode1 { input: path } => {
            let a = load_matrix(path)?;
            let verdict = classify_stability_first_order(&a, config).map_err(oscillation_error)?;
            let splits = splitting_criterion(&a).map_err(oscillation_error)?;
            Ok(Report {
                operation: "ode1",
                inputs: vec![input(path, &a)],
                result: obj([
                    ("verdict", vverdict(&verdict)),
                    ("witness", vwitness(&verdict)),
                    ("all_divisors_linear", json!(splits)),
                ]),
            })
        }
        Cmd::Ode2 { m: pm, k: pk } => {
            let m = load_symmetric(pm)?;
            let k = load_symmetric(pk)?;
            let out = analyze_second_order(&m, &k, config).map_err(oscillation_error)?;
            Ok(Report {
                operation: "ode2",
                inputs: vec![input(pm, m.matrix()), input(pk, k.matrix())],
                result: obj([
                    ("pencil_roots", vintervals(&out.pencil_roots)),
                    ("verdict", vverdict(&out.verdict)),
                    ("witness", vwitness(&out.verdict)),
                ]),
            })
        }
        Cmd::Factor { input: path } => {
            let p = load_polynomial(path)?;
            let f = factor_over_rationals(&p, config).map_err(numeric_error)?;
            Ok(Report {
                operation: "factor",
                inputs: vec![(path.display().to_string(), vpoly(&p))],
                result: obj([
                    ("unit", vrat(&f.unit)),
                    (
                        "factors",
                        Value::Array(
                            f.factors
                                .iter()
                                .map(|(g, e)| obj([("factor", vpoly(g)), ("exponent", json!(e))]))
                                .collect(),
                        ),
                    ),
                ]),
            })
        }
        Cmd::Roots { input: path } => {
            let p = load_polynomial(path)?;
            let roots = isolate_real_roots(&p).map_err(numeric_error)?;
            Ok(Report {
                operation: "roots",
                inputs: vec![(path.display().to_string(), vpoly(&p))],
                result: obj([("real_roots", vintervals(&roots))]),
            })
        }
    }
}

// ---- payload builders -------------------------------------------------

fn obj<const N: usize>(fields: [(&str, Value); N]) -> Value {
    let mut map = Map::new();
    for (k, v) in fields {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

fn vrat(r: &Rational) -> Value {
    json!(r.to_string())
}

fn vpoly(p: &Polynomial) -> Value {
    json!(p.display_with('s'))
}

fn vmat(m: &Matrix<Rational>) -> Value {
    vmat_generic(m, |c| c.to_string())
}

fn vmat_poly(m: &Matrix<Polynomial>) -> Value {
    vmat_generic(m, |p| p.display_with('s'))
}

fn vmat_generic<T: canon_core::ring::Ring>(m: &Matrix<T>, f: impl Fn(&T) -> String) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array((0..m.cols()).map(|j| json!(f(&m[(i, j)]))).collect())
            })
            .collect(),
    )
}

fn vdivisors(d: &ElementaryDivisorList) -> Value {
    Value::Array(
        d.entries()
            .iter()
            .map(|(f, e)| obj([("factor", vpoly(f)), ("exponent", json!(e))]))
            .collect(),
    )
}

fn vintervals(intervals: &[RootInterval]) -> Value {
    Value::Array(
        intervals
            .iter()
            .map(|r| {
                obj([
                    ("low", vrat(&r.low)),
                    ("high", vrat(&r.high)),
                    ("multiplicity", json!(r.multiplicity)),
                    (
                        "exact",
                        r.exact_root.as_ref().map(vrat).unwrap_or(Value::Null),
                    ),
                ])
            })
            .collect(),
    )
}

fn vverdict(v: &StabilityVerdict) -> Value {
    match v {
        StabilityVerdict::Bounded => json!("bounded"),
        StabilityVerdict::Unbounded(_) => json!("unbounded"),
        StabilityVerdict::Undecided { .. } => json!("undecided"),
    }
}

fn vwitness(v: &StabilityVerdict) -> Value {
    match v {
        StabilityVerdict::Bounded => Value::Null,
        StabilityVerdict::Unbounded(w) => match w {
            UnboundedWitness::PositiveRealPart { factor } => obj([
                ("kind", json!("positive_real_part")),
                ("factor", vpoly(factor)),
            ]),
            UnboundedWitness::NonlinearCriticalDivisor { factor, exponent } => obj([
                ("kind", json!("nonlinear_critical_divisor")),
                ("factor", vpoly(factor)),
                ("exponent", json!(exponent)),
            ]),
            UnboundedWitness::NegativePencilRoot { root } => obj([
                ("kind", json!("negative_pencil_root")),
                ("root", vintervals(std::slice::from_ref(root))),
            ]),
            UnboundedWitness::ZeroRootDrift { direction } => obj([
                ("kind", json!("zero_root_drift")),
                (
                    "direction",
                    Value::Array(direction.iter().map(vrat).collect()),
                ),
            ]),
        },
        StabilityVerdict::Undecided { real_root_intervals } => obj([
            ("kind", json!("real_spectrum_certificate")),
            ("real_root_intervals", vintervals(real_root_intervals)),
        ]),
    }
}

// ---- rendering --------------------------------------------------------

fn render(report: &Report, format: Format) -> String {
    let mut envelope = Map::new();
    envelope.insert("operation".into(), json!(report.operation));
    envelope.insert(
        "inputs".into(),
        Value::Array(
            report
                .inputs
                .iter()
                .map(|(path, v)| obj([("path", json!(path)), ("content", v.clone())]))
                .collect(),
        ),
    );
    envelope.insert("result".into(), report.result.clone());
    let envelope = Value::Object(envelope);
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&envelope).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            render_text(&envelope, 0, None, &mut out);
            out
        }
        Format::Latex => {
            let mut out = String::new();
            render_latex(&envelope, &mut out);
            out
        }
    }
}

fn render_error(name: &str, message: &str, format: Format) -> String {
    let v = obj([("error", obj([("name", json!(name)), ("message", json!(message))]))]);
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => format!("error: {name}: {message}\n"),
        Format::Latex => format!("\\textbf{{error}}: {name}: {}\n", latex_escape(message)),
    }
}

/// Is this a rectangular array of scalar strings (a rendered matrix)?
fn as_matrix(v: &Value) -> Option<Vec<Vec<String>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    let mut out = Vec::new();
    let mut width = None;
    for row in rows {
        let cells = row.as_array()?;
        if *width.get_or_insert(cells.len()) != cells.len() || cells.is_empty() {
            return None;
        }
        out.push(
            cells
                .iter()
                .map(|c| c.as_str().map(str::to_string))
                .collect::<Option<Vec<_>>>()?,
        );
    }
    Some(out)
}

fn render_text(v: &Value, indent: usize, key: Option<&str>, out: &mut String) {
    let pad = "  ".repeat(indent);
    let label = key.map(|k| format!("{k}: ")).unwrap_or_default();
    match v {
        Value::Object(map) => {
            if let Some(k) = key {
                out.push_str(&format!("{pad}{k}:\n"));
            }
            for (k, val) in map {
                render_text(val, indent + usize::from(key.is_some()), Some(k), out);
            }
        }
        Value::Array(_) if as_matrix(v).is_some() => {
            let m = as_matrix(v).unwrap();
            out.push_str(&format!("{pad}{}\n", label.trim_end()));
            for row in m {
                out.push_str(&format!("{pad}  {}\n", row.join(" ")));
            }
        }
        Value::Array(items) => {
            if items.iter().all(|i| !i.is_object() && !i.is_array()) {
                let rendered: Vec<String> = items.iter().map(scalar_text).collect();
                out.push_str(&format!("{pad}{label}[{}]\n", rendered.join(", ")));
            } else {
                out.push_str(&format!("{pad}{}\n", label.trim_end()));
                for (i, item) in items.iter().enumerate() {
                    render_text(item, indent + 1, Some(&format!("[{i}]")), out);
                }
            }
        }
        scalar => out.push_str(&format!("{pad}{label}{}\n", scalar_text(scalar))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn latex_escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash ")
        .replace('_', "\\_")
        .replace('^', "\\^{}")
}

/// Polynomial and rational payload strings: digits, the variable `s`,
/// and arithmetic punctuation only.
fn is_formula(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_digit() || "s/^*+- .()".contains(c))
}

/// Math-mode rendering of the polynomial/rational strings the payload uses:
/// `*` dropped, `^` kept (valid in math mode).
fn latex_math(s: &str) -> String {
    s.replace('*', " ")
}

fn render_latex(v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            out.push_str("\\begin{itemize}\n");
            for (k, val) in map {
                out.push_str(&format!("\\item \\textbf{{{}}}:", latex_escape(k)));
                out.push('\n');
                render_latex(val, out);
            }
            out.push_str("\\end{itemize}\n");
        }
        Value::Array(_) if as_matrix(v).is_some() => {
            let m = as_matrix(v).unwrap();
            out.push_str("\\[\\begin{pmatrix}\n");
            for row in m {
                let cells: Vec<String> = row.iter().map(|c| latex_math(c)).collect();
                out.push_str(&cells.join(" & "));
                out.push_str(" \\\\\n");
            }
            out.push_str("\\end{pmatrix}\\]\n");
        }
        Value::Array(items) => {
            // divisor lists render as a product
            let divisors: Option<Vec<(String, u64)>> = items
                .iter()
                .map(|i| {
                    let o = i.as_object()?;
                    if o.len() != 2 {
                        return None;
                    }
                    Some((
                        o.get("factor")?.as_str()?.to_string(),
                        o.get("exponent")?.as_u64()?,
                    ))
                })
                .collect();
            match divisors {
                Some(list) if !list.is_empty() => {
                    let product: Vec<String> = list
                        .iter()
                        .map(|(f, e)| {
                            if *e == 1 {
                                format!("({})", latex_math(f))
                            } else {
                                format!("({})^{{{e}}}", latex_math(f))
                            }
                        })
                        .collect();
                    out.push_str(&format!("\\[{}\\]\n", product.join("\\,")));
                }
                _ => {
                    out.push_str("\\begin{itemize}\n");
                    for item in items {
                        out.push_str("\\item ");
                        render_latex(item, out);
                    }
                    if items.is_empty() {
                        out.push_str("\\item (empty)\n");
                    }
                    out.push_str("\\end{itemize}\n");
                }
            }
        }
        scalar => {
            let s = scalar_text(scalar);
            if scalar.is_string() && is_formula(&s) {
                out.push_str(&format!("${}$\n", latex_math(&s)));
            } else {
                out.push_str(&latex_escape(&s));
                out.push('\n');
            }
        }
    }
}
