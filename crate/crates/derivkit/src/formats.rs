//! JSON schemas and text formats for the algebraic objects.
//!
//! Inputs are strictly canonical: rationals must arrive reduced with a
//! positive denominator (`2/4` is rejected with the suggestion `1/2`),
//! and stored documents round-trip byte-identically.

use std::fmt;

use derivkit_core::algebra::FinAlg;
use derivkit_core::freealg::FreeTensor;
use derivkit_core::matrix::Matrix;
use derivkit_core::poly::{Certificate, MultiPoly};
use derivkit_core::rational::{parse_strict, to_canonical_string, ParsedRational, Rational};
use derivkit_core::subspace::{span_canonical, Subspace};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub enum FormatError {
    Json { message: String },
    InvalidRational { field: String, found: String },
    NonCanonicalRational { field: String, found: String, suggestion: String },
    Schema { field: String, message: String },
    Parse { offset: usize, message: String },
    Core(derivkit_core::Error),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Json { message } => write!(f, "invalid JSON: {message}"),
            FormatError::InvalidRational { field, found } => {
                write!(f, "{field}: `{found}` is not a rational")
            }
            FormatError::NonCanonicalRational { field, found, suggestion } => {
                write!(f, "{field}: `{found}` is not canonical, write `{suggestion}`")
            }
            FormatError::Schema { field, message } => write!(f, "{field}: {message}"),
            FormatError::Parse { offset, message } => {
                write!(f, "parse error at byte {offset}: {message}")
            }
            FormatError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json { message: e.to_string() }
    }
}

impl From<derivkit_core::Error> for FormatError {
    fn from(e: derivkit_core::Error) -> Self {
        FormatError::Core(e)
    }
}

pub type Result<T> = std::result::Result<T, FormatError>;

pub fn rational_from_str(field: &str, text: &str) -> Result<Rational> {
    match parse_strict(text) {
        ParsedRational::Canonical(v) => Ok(v),
        ParsedRational::NonCanonical { suggestion, .. } => Err(FormatError::NonCanonicalRational {
            field: field.to_string(),
            found: text.to_string(),
            suggestion,
        }),
        ParsedRational::Invalid => Err(FormatError::InvalidRational {
            field: field.to_string(),
            found: text.to_string(),
        }),
    }
}

fn rationals_from(field: &str, texts: &[String]) -> Result<Vec<Rational>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| rational_from_str(&format!("{field}[{i}]"), t))
        .collect()
}

fn rationals_to(values: &[Rational]) -> Vec<String> {
    values.iter().map(to_canonical_string).collect()
}

/// Canonical serialization: pretty JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize infallibly");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- matrices

/// A matrix is an array of rows of canonical rational strings.
pub type MatrixDoc = Vec<Vec<String>>;

pub fn matrix_to_doc(m: &Matrix) -> MatrixDoc {
    (0..m.rows()).map(|i| rationals_to(m.row(i))).collect()
}

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<Matrix> {
    let rows = doc.len();
    let cols = doc.first().map_or(0, Vec::len);
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in doc.iter().enumerate() {
        if row.len() != cols {
            return Err(FormatError::Schema {
                field: format!("row {i}"),
                message: format!("expected {cols} entries, found {}", row.len()),
            });
        }
        entries.extend(rationals_from(&format!("row {i}"), row)?);
    }
    Ok(Matrix::from_entries(rows, cols, entries)?)
}

pub fn load_matrix(text: &str) -> Result<Matrix> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    matrix_from_doc(&doc)
}

pub fn store_matrix(m: &Matrix) -> String {
    to_canonical_json(&matrix_to_doc(m))
}

// --------------------------------------------------------------- subspaces

#[derive(Serialize, Deserialize)]
pub struct SubspaceDoc {
    pub ambient: usize,
    pub basis: Vec<Vec<String>>,
}

pub fn subspace_to_doc(s: &Subspace) -> SubspaceDoc {
    SubspaceDoc {
        ambient: s.ambient(),
        basis: s.basis().iter().map(|r| rationals_to(r)).collect(),
    }
}

pub fn subspace_from_doc(doc: &SubspaceDoc) -> Result<Subspace> {
    let rows: Vec<Vec<Rational>> = doc
        .basis
        .iter()
        .enumerate()
        .map(|(i, r)| rationals_from(&format!("basis[{i}]"), r))
        .collect::<Result<_>>()?;
    Ok(span_canonical(&rows, doc.ambient)?)
}

pub fn load_subspace(text: &str) -> Result<Subspace> {
    subspace_from_doc(&serde_json::from_str(text)?)
}

pub fn store_subspace(s: &Subspace) -> String {
    to_canonical_json(&subspace_to_doc(s))
}

// ---------------------------------------------------------------- algebras

/// Structure constants document: omitted `(i, j)` pairs mean the product
/// is zero.
#[derive(Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub labels: Vec<String>,
    pub structure: Vec<(usize, usize, Vec<String>)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
}

pub fn algebra_to_doc(a: &FinAlg) -> AlgebraDoc {
    AlgebraDoc {
        dim: a.dim(),
        labels: a.labels().to_vec(),
        structure: a
            .structure_entries()
            .into_iter()
            .map(|(i, j, coords)| (i, j, rationals_to(&coords)))
            .collect(),
        unit: a.unit().map(|u| rationals_to(u)),
    }
}

pub fn algebra_from_doc(doc: &AlgebraDoc) -> Result<FinAlg> {
    let products: Vec<(usize, usize, Vec<Rational>)> = doc
        .structure
        .iter()
        .map(|(i, j, coords)| Ok((*i, *j, rationals_from(&format!("structure[{i},{j}]"), coords)?)))
        .collect::<Result<_>>()?;
    let unit = match &doc.unit {
        None => None,
        Some(u) => Some(rationals_from("unit", u)?),
    };
    Ok(FinAlg::new(doc.dim, doc.labels.clone(), products, unit)?)
}

pub fn load_algebra(text: &str) -> Result<FinAlg> {
    algebra_from_doc(&serde_json::from_str(text)?)
}

pub fn store_algebra(a: &FinAlg) -> String {
    to_canonical_json(&algebra_to_doc(a))
}

// ------------------------------------------------------------- polynomials

#[derive(Serialize, Deserialize)]
pub struct PolyTermDoc {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
pub struct PolyDoc {
    pub vars: Vec<String>,
    pub terms: Vec<PolyTermDoc>,
}

pub fn poly_to_doc(p: &MultiPoly) -> PolyDoc {
    PolyDoc {
        vars: p.vars().to_vec(),
        terms: p
            .terms()
            .map(|(e, c)| PolyTermDoc { exp: e.clone(), coeff: to_canonical_string(c) })
            .collect(),
    }
}

pub fn poly_from_doc(doc: &PolyDoc) -> Result<MultiPoly> {
    let terms: Vec<(Vec<u32>, Rational)> = doc
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| Ok((t.exp.clone(), rational_from_str(&format!("terms[{i}].coeff"), &t.coeff)?)))
        .collect::<Result<_>>()?;
    Ok(MultiPoly::from_terms(doc.vars.clone(), terms)?)
}

pub fn load_poly_json(text: &str) -> Result<MultiPoly> {
    poly_from_doc(&serde_json::from_str(text)?)
}

pub fn store_poly(p: &MultiPoly) -> String {
    to_canonical_json(&poly_to_doc(p))
}

// ------------------------------------------------------------ certificates

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertDoc {
    Gen(PolyDoc),
    Scale { coeff: String, of: Box<CertDoc> },
    Sum(Vec<CertDoc>),
    Product(Vec<CertDoc>),
}

pub fn certificate_to_doc(c: &Certificate) -> CertDoc {
    match c {
        Certificate::Gen(f) => CertDoc::Gen(poly_to_doc(f)),
        Certificate::Scale(k, inner) => CertDoc::Scale {
            coeff: to_canonical_string(k),
            of: Box::new(certificate_to_doc(inner)),
        },
        Certificate::Sum(parts) => CertDoc::Sum(parts.iter().map(certificate_to_doc).collect()),
        Certificate::Product(parts) => {
            CertDoc::Product(parts.iter().map(certificate_to_doc).collect())
        }
    }
}

pub fn certificate_from_doc(doc: &CertDoc) -> Result<Certificate> {
    Ok(match doc {
        CertDoc::Gen(p) => Certificate::Gen(poly_from_doc(p)?),
        CertDoc::Scale { coeff, of } => Certificate::Scale(
            rational_from_str("scale.coeff", coeff)?,
            Box::new(certificate_from_doc(of)?),
        ),
        CertDoc::Sum(parts) => Certificate::Sum(
            parts.iter().map(certificate_from_doc).collect::<Result<_>>()?,
        ),
        CertDoc::Product(parts) => Certificate::Product(
            parts.iter().map(certificate_from_doc).collect::<Result<_>>()?,
        ),
    })
}

pub fn load_certificate(text: &str) -> Result<Certificate> {
    certificate_from_doc(&serde_json::from_str(text)?)
}

pub fn store_certificate(c: &Certificate) -> String {
    to_canonical_json(&certificate_to_doc(c))
}

// -------------------------------------------------------- polynomial text

/// Parse `c*x1^2*y2 - x*y` style polynomial text over a declared variable
/// universe. Terms are separated by top-level `+`/`-`; factors by `*`;
/// exponents by `^`.
pub fn parse_poly_text(text: &str, vars: &[String]) -> Result<MultiPoly> {
    let mut terms: Vec<(Vec<u32>, Rational)> = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    let n = bytes.len();
    let mut sign = Rational::from_integer(1.into());
    let mut expecting_term = true;
    skip_ws(bytes, &mut pos);
    if pos >= n {
        return Err(FormatError::Parse { offset: pos, message: "empty polynomial".into() });
    }
    while pos < n {
        skip_ws(bytes, &mut pos);
        if pos >= n {
            break;
        }
        match bytes[pos] {
            b'+' if !expecting_term => {
                sign = Rational::from_integer(1.into());
                pos += 1;
                expecting_term = true;
            }
            b'-' if !expecting_term => {
                sign = Rational::from_integer((-1).into());
                pos += 1;
                expecting_term = true;
            }
            b'-' if expecting_term => {
                sign = -sign;
                pos += 1;
            }
            _ => {
                if !expecting_term {
                    return Err(FormatError::Parse {
                        offset: pos,
                        message: "expected `+` or `-` between terms".into(),
                    });
                }
                let (exps, coeff) = parse_term(bytes, &mut pos, vars)?;
                terms.push((exps, coeff * &sign));
                sign = Rational::from_integer(1.into());
                expecting_term = false;
            }
        }
    }
    if expecting_term {
        return Err(FormatError::Parse { offset: pos, message: "dangling sign".into() });
    }
    Ok(MultiPoly::from_terms(vars.to_vec(), terms)?)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_term(bytes: &[u8], pos: &mut usize, vars: &[String]) -> Result<(Vec<u32>, Rational)> {
    let mut coeff = Rational::from_integer(1.into());
    let mut exps = vec![0u32; vars.len()];
    loop {
        skip_ws(bytes, pos);
        let start = *pos;
        if *pos < bytes.len() && (bytes[*pos].is_ascii_digit()) {
            // rational coefficient
            while *pos < bytes.len() && (bytes[*pos].is_ascii_digit() || bytes[*pos] == b'/') {
                *pos += 1;
            }
            let text = std::str::from_utf8(&bytes[start..*pos]).expect("ascii slice");
            let c = match parse_strict(text) {
                ParsedRational::Canonical(v) => v,
                ParsedRational::NonCanonical { suggestion, .. } => {
                    return Err(FormatError::Parse {
                        offset: start,
                        message: format!("`{text}` is not canonical, write `{suggestion}`"),
                    })
                }
                ParsedRational::Invalid => {
                    return Err(FormatError::Parse {
                        offset: start,
                        message: format!("`{text}` is not a rational"),
                    })
                }
            };
            coeff *= c;
        } else if *pos < bytes.len() && bytes[*pos].is_ascii_alphabetic() {
            while *pos < bytes.len() && bytes[*pos].is_ascii_alphanumeric() {
                *pos += 1;
            }
            let name = std::str::from_utf8(&bytes[start..*pos]).expect("ascii slice");
            let Some(idx) = vars.iter().position(|v| v == name) else {
                return Err(FormatError::Parse {
                    offset: start,
                    message: format!(
                        "unknown variable `{name}` (expected one of {})",
                        vars.join(", ")
                    ),
                });
            };
            let mut exp = 1u32;
            if *pos < bytes.len() && bytes[*pos] == b'^' {
                *pos += 1;
                let estart = *pos;
                while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                    *pos += 1;
                }
                if estart == *pos {
                    return Err(FormatError::Parse {
                        offset: estart,
                        message: "expected an exponent after `^`".into(),
                    });
                }
                exp = std::str::from_utf8(&bytes[estart..*pos])
                    .expect("ascii slice")
                    .parse()
                    .map_err(|_| FormatError::Parse {
                        offset: estart,
                        message: "exponent out of range".into(),
                    })?;
            }
            exps[idx] += exp;
        } else {
            return Err(FormatError::Parse {
                offset: *pos,
                message: "expected a coefficient or variable".into(),
            });
        }
        skip_ws(bytes, pos);
        if *pos < bytes.len() && bytes[*pos] == b'*' {
            *pos += 1;
            continue;
        }
        break;
    }
    Ok((exps, coeff))
}

/// Render a polynomial as `x^2*y - x*y^2` style text in canonical term
/// order.
pub fn print_poly_text(p: &MultiPoly) -> String {
    use num_traits::{One, Signed};
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (i, (exps, coeff)) in terms.into_iter().rev().enumerate() {
        let negative = coeff.is_negative();
        let mag = if negative { -coeff.clone() } else { coeff.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let monomial: Vec<String> = p
            .vars()
            .iter()
            .zip(exps)
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if monomial.is_empty() {
            out.push_str(&to_canonical_string(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&to_canonical_string(&mag));
                out.push('*');
            }
            out.push_str(&monomial.join("*"));
        }
    }
    out
}

// ------------------------------------------------------------- free tensors

/// Render a free tensor as `c*u|v + ...` with words written `a.b.a` and
/// the empty word written `1`.
pub fn print_free_tensor(t: &FreeTensor) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    let word = |w: &[usize]| -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter().map(|&g| t.alphabet()[g].clone()).collect::<Vec<_>>().join(".")
        }
    };
    t.terms()
        .map(|((u, v), c)| format!("{}*{}|{}", to_canonical_string(c), word(u), word(v)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Parse `c*u|v + ...` free tensor text over the given alphabet.
pub fn parse_free_tensor(text: &str, alphabet: &[String]) -> Result<FreeTensor> {
    let mut out = FreeTensor::zero(alphabet.to_vec());
    for (i, piece) in text.split('+').enumerate() {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(FormatError::Parse { offset: 0, message: format!("empty term {i}") });
        }
        if piece == "0" {
            continue;
        }
        let (coeff_text, words_text) = match piece.split_once('*') {
            Some((c, w)) => (c.trim(), w.trim()),
            None => ("1", piece),
        };
        let coeff = rational_from_str(&format!("term {i}"), coeff_text)?;
        let Some((u_text, v_text)) = words_text.split_once('|') else {
            return Err(FormatError::Parse {
                offset: 0,
                message: format!("term {i}: expected `u|v`"),
            });
        };
        let parse_word = |w: &str| -> Result<Vec<usize>> {
            let w = w.trim();
            if w == "1" {
                return Ok(Vec::new());
            }
            w.split('.')
                .map(|g| {
                    alphabet.iter().position(|a| a == g.trim()).ok_or_else(|| FormatError::Parse {
                        offset: 0,
                        message: format!("unknown generator `{g}`"),
                    })
                })
                .collect()
        };
        let u = parse_word(u_text)?;
        let v = parse_word(v_text)?;
        out = out
            .add(&FreeTensor::elementary(alphabet.to_vec(), u, v).scale(&coeff))
            .map_err(FormatError::Core)?;
    }
    Ok(out)
}
