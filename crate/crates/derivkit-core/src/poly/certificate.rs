//! Replayable membership certificates.
//!
//! A certificate is an expression tree whose leaves are generator
//! differences `f(x) − f(y)`. Exact evaluation of the tree in a chosen
//! context (polynomials, a tensor square `B ⊗ B^op`, or elementary
//! operators on a bimodule) is the proof-checking half of every
//! constructive membership statement in this crate.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{poly_quotient, FinAlg};
use crate::bimodule::BimoduleRep;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::rational::{rat, Rational};
use crate::subspace::membership_with_coords;
use crate::Result;

use super::format_debug_string;

/// Membership certificate. `Gen(f)` means the generator difference
/// determined by the one-variable polynomial `f`; products are ordered
/// since target contexts may be noncommutative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Gen(MultiPoly),
    Scale(Rational, Box<Certificate>),
    Sum(Vec<Certificate>),
    Product(Vec<Certificate>),
}

impl Certificate {
    fn scaled(c: Rational, inner: Certificate) -> Certificate {
        if c.is_one() {
            inner
        } else {
            Certificate::Scale(c, Box::new(inner))
        }
    }

    /// Number of `Gen` leaves.
    pub fn leaf_count(&self) -> usize {
        match self {
            Certificate::Gen(_) => 1,
            Certificate::Scale(_, c) => c.leaf_count(),
            Certificate::Sum(cs) | Certificate::Product(cs) => cs.iter().map(Certificate::leaf_count).sum(),
        }
    }
}

/// Where a certificate is replayed, fixing the meaning of `Gen(f)`.
pub enum EvalContext<'a> {
    /// `Gen(f) = f(x) − f(y)` in the two-variable polynomial ring.
    Polynomial,
    /// `Gen(f) = f(g)⊗1 − 1⊗f(g)` inside `tensor`, which must be the
    /// tensor square of `base`, with `g` an element of `base`.
    TensorSquare { base: &'a FinAlg, tensor: &'a FinAlg, generator: &'a [Rational] },
    /// `Gen(f) = L_{f(a)} − R_{f(a)}` as an operator on the bimodule, for
    /// `a` given by its coordinates in the acting algebra.
    Elementary { rep: &'a BimoduleRep, element: &'a [Rational] },
}

/// Evaluation result in the chosen context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CtxValue {
    Poly(MultiPoly),
    Tensor(Vec<Rational>),
    Operator(Matrix),
}

impl CtxValue {
    pub fn is_zero(&self) -> bool {
        match self {
            CtxValue::Poly(p) => p.is_zero(),
            CtxValue::Tensor(v) => v.iter().all(Zero::is_zero),
            CtxValue::Operator(m) => m.is_zero(),
        }
    }
}

trait CertSemantics {
    type Value: Clone;
    fn gen(&self, f: &MultiPoly) -> Result<Self::Value>;
    fn zero(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn scale(&self, c: &Rational, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
}

fn eval_with<S: CertSemantics>(cert: &Certificate, sem: &S) -> Result<S::Value> {
    match cert {
        Certificate::Gen(f) => {
            if f.num_vars() != 1 {
                return Err(Error::BadCertificate { reason: "Gen payload must be a one-variable polynomial" });
            }
            sem.gen(f)
        }
        Certificate::Scale(c, inner) => Ok(sem.scale(c, &eval_with(inner, sem)?)),
        Certificate::Sum(parts) => {
            let mut acc = sem.zero();
            for p in parts {
                let v = eval_with(p, sem)?;
                acc = sem.add(&acc, &v);
            }
            Ok(acc)
        }
        Certificate::Product(parts) => {
            if parts.is_empty() {
                return Err(Error::BadCertificate { reason: "empty product has no value in a non-unital target" });
            }
            let mut acc = eval_with(&parts[0], sem)?;
            for p in &parts[1..] {
                let v = eval_with(p, sem)?;
                acc = sem.mul(&acc, &v)?;
            }
            Ok(acc)
        }
    }
}

struct PolySem;

impl CertSemantics for PolySem {
    type Value = MultiPoly;
    fn gen(&self, f: &MultiPoly) -> Result<MultiPoly> {
        Ok(f.difference_of_copies())
    }
    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(super::doubled_vars(1))
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.add(b)
    }
    fn scale(&self, c: &Rational, a: &MultiPoly) -> MultiPoly {
        a.scale(c)
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        Ok(a.mul(b))
    }
}

struct TensorSem<'a> {
    base: &'a FinAlg,
    tensor: &'a FinAlg,
    generator: &'a [Rational],
}

impl TensorSem<'_> {
    /// Evaluate a one-variable polynomial at the chosen generator of the
    /// base algebra.
    fn apply_poly(&self, f: &MultiPoly) -> Result<Vec<Rational>> {
        let coeffs = f.one_var_coeffs();
        let unit = self.base.unit().ok_or(Error::NotUnital)?;
        let mut acc = vec![Rational::zero(); self.base.dim()];
        // Horner from the top coefficient down
        for c in coeffs.iter().rev() {
            acc = self.base.mul(&acc, self.generator)?;
            if !c.is_zero() {
                for (a, u) in acc.iter_mut().zip(unit) {
                    *a += c * u;
                }
            }
        }
        Ok(acc)
    }
}

impl CertSemantics for TensorSem<'_> {
    type Value = Vec<Rational>;
    fn gen(&self, f: &MultiPoly) -> Result<Vec<Rational>> {
        let c = self.apply_poly(f)?;
        let unit = self.base.unit().ok_or(Error::NotUnital)?;
        let n = self.base.dim();
        let mut out = vec![Rational::zero(); n * n];
        for p in 0..n {
            for q in 0..n {
                // c⊗1 − 1⊗c
                let v = &c[p] * &unit[q] - &unit[p] * &c[q];
                if !v.is_zero() {
                    out[p * n + q] = v;
                }
            }
        }
        Ok(out)
    }
    fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.tensor.dim()]
    }
    fn add(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn scale(&self, c: &Rational, a: &Vec<Rational>) -> Vec<Rational> {
        a.iter().map(|x| x * c).collect()
    }
    fn mul(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Result<Vec<Rational>> {
        self.tensor.mul(a, b)
    }
}

struct ElemSem<'a> {
    rep: &'a BimoduleRep,
    element: &'a [Rational],
}

impl CertSemantics for ElemSem<'_> {
    type Value = Matrix;
    fn gen(&self, f: &MultiPoly) -> Result<Matrix> {
        let alg = self.rep.algebra();
        let coeffs = f.one_var_coeffs();
        let unit = alg.unit().ok_or(Error::NotUnital)?;
        let mut fa = vec![Rational::zero(); alg.dim()];
        for c in coeffs.iter().rev() {
            fa = alg.mul(&fa, self.element)?;
            if !c.is_zero() {
                for (a, u) in fa.iter_mut().zip(unit) {
                    *a += c * u;
                }
            }
        }
        // L_{f(a)} − R_{f(a)} as a matrix on the module
        let left = self.rep.left_of(&fa)?;
        let right = self.rep.right_of(&fa)?;
        Ok(&left - &right)
    }
    fn zero(&self) -> Matrix {
        let d = self.rep.module_dim();
        Matrix::zeros(d, d)
    }
    fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a + b
    }
    fn scale(&self, c: &Rational, a: &Matrix) -> Matrix {
        a.scale(c)
    }
    fn mul(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.mul_checked(b)
    }
}

/// Exact evaluation of a certificate in a context.
pub fn evaluate(cert: &Certificate, ctx: &EvalContext<'_>) -> Result<CtxValue> {
    match ctx {
        EvalContext::Polynomial => Ok(CtxValue::Poly(eval_with(cert, &PolySem)?)),
        EvalContext::TensorSquare { base, tensor, generator } => {
            if tensor.dim() != base.dim() * base.dim() {
                return Err(Error::ShapeMismatch { context: "tensor algebra is not the square of the base" });
            }
            if generator.len() != base.dim() {
                return Err(Error::ElementMismatch { algebra_dim: base.dim(), coords_len: generator.len() });
            }
            let sem = TensorSem { base, tensor, generator };
            Ok(CtxValue::Tensor(eval_with(cert, &sem)?))
        }
        EvalContext::Elementary { rep, element } => {
            if element.len() != rep.algebra().dim() {
                return Err(Error::ElementMismatch {
                    algebra_dim: rep.algebra().dim(),
                    coords_len: element.len(),
                });
            }
            let sem = ElemSem { rep, element };
            Ok(CtxValue::Operator(eval_with(cert, &sem)?))
        }
    }
}

/// Replay outcome: exact pass/fail plus the residual `evaluation − target`.
#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub pass: bool,
    pub residual: CtxValue,
}

/// Evaluate and compare against a target of the matching shape.
pub fn verify_certificate(
    cert: &Certificate,
    ctx: &EvalContext<'_>,
    target: &CtxValue,
) -> Result<VerifyOutcome> {
    let value = evaluate(cert, ctx)?;
    let residual = match (&value, target) {
        (CtxValue::Poly(v), CtxValue::Poly(t)) => CtxValue::Poly(v.sub(t)),
        (CtxValue::Tensor(v), CtxValue::Tensor(t)) => {
            if v.len() != t.len() {
                return Err(Error::DimensionMismatch { expected: v.len(), found: t.len(), index: None });
            }
            CtxValue::Tensor(v.iter().zip(t).map(|(a, b)| a - b).collect())
        }
        (CtxValue::Operator(v), CtxValue::Operator(t)) => {
            if (v.rows(), v.cols()) != (t.rows(), t.cols()) {
                return Err(Error::ShapeMismatch { context: "operator target size" });
            }
            CtxValue::Operator(v - t)
        }
        _ => return Err(Error::ShapeMismatch { context: "certificate target does not match context" }),
    };
    Ok(VerifyOutcome { pass: residual.is_zero(), residual })
}

/// Constructive decomposition of a diagonal-vanishing polynomial in `(x,y)`
/// into generator differences.
///
/// Per uniform component `q` of degree `n`: degree one is a multiple of the
/// base generator; otherwise with `u = q/(x−y)` and `λ = s(u)/n` (where `s`
/// is the coefficient sum), the component splits as
/// `q = λ(xⁿ−yⁿ) + (x−y)·(u − λ(x^{n−1} + x^{n−2}y + … + y^{n−1}))`,
/// whose second factor is uniform of degree `n−1` with coefficient sum
/// zero, so the recursion terminates.
pub fn decompose_one_variable(p: &MultiPoly) -> Result<Certificate> {
    if p.num_vars() != 2 {
        return Err(Error::ShapeMismatch { context: "decomposition expects a polynomial in (x, y)" });
    }
    let diag = p.diagonal_restriction(1);
    if !diag.is_zero() {
        return Err(Error::NotDiagonalVanishing { restriction: format_debug_string(&diag) });
    }
    let mut parts = Vec::new();
    for (degree, comp) in p.uniform_components() {
        parts.push(decompose_component(&comp, degree)?);
    }
    Ok(match parts.len() {
        1 => parts.pop().expect("length checked"),
        _ => Certificate::Sum(parts),
    })
}

fn decompose_component(q: &MultiPoly, degree: u32) -> Result<Certificate> {
    let x = MultiPoly::from_one_var_coeffs("x", &[Rational::zero(), rat(1)]);
    if degree == 1 {
        // q = c·(x − y)
        let c = q.coefficient(&[1, 0]);
        return Ok(Certificate::scaled(c, Certificate::Gen(x)));
    }
    let u = q.divide_by_x_minus_y()?;
    let lambda = u.coefficient_sum() / rat(degree as i64);
    // u_e = (xⁿ − yⁿ)/(x − y) = x^{n−1} + x^{n−2}y + … + y^{n−1}
    let mut u_e = MultiPoly::zero(q.vars().to_vec());
    for i in 0..degree {
        u_e = u_e.add(&MultiPoly::from_terms(
            q.vars().to_vec(),
            [(vec![degree - 1 - i, i], rat(1))],
        )?);
    }
    let rest = u.sub(&u_e.scale(&lambda));
    let mut parts = Vec::new();
    if !lambda.is_zero() {
        let xn = MultiPoly::from_one_var_coeffs(
            "x",
            &core::iter::repeat_with(Rational::zero)
                .take(degree as usize)
                .chain(core::iter::once(rat(1)))
                .collect::<Vec<_>>(),
        );
        parts.push(Certificate::scaled(lambda, Certificate::Gen(xn)));
    }
    if !rest.is_zero() {
        let inner = decompose_component(&rest, degree - 1)?;
        parts.push(Certificate::Product(vec![Certificate::Gen(x), inner]));
    }
    Ok(match parts.len() {
        0 => Certificate::Sum(Vec::new()),
        1 => parts.pop().expect("length checked"),
        _ => Certificate::Sum(parts),
    })
}

/// Lift a tensor `t ∈ N_Lie(C)` over a one-generator quotient
/// `C = ℚ[x]/(modulus)` to a certificate over `C`.
///
/// The lift `g(x,y) = Σ tᵢⱼ xⁱyʲ` has `g(x,x)` in the modulus ideal, so
/// `g(x,y) − g(x,x)` vanishes on the diagonal and decomposes; replaying the
/// certificate inside the tensor square of `C` reproduces `t` because the
/// subtracted part maps to zero.
pub fn transfer_quotient(modulus: &MultiPoly, t: &[Rational]) -> Result<Certificate> {
    let c_alg = poly_quotient(modulus)?;
    let n = c_alg.dim();
    if t.len() != n * n {
        return Err(Error::ElementMismatch { algebra_dim: n * n, coords_len: t.len() });
    }
    let nlie = crate::derivations::nlie_subspace(&c_alg)?;
    if membership_with_coords(t, &nlie)?.is_none() {
        return Err(Error::NotInNlie);
    }
    let vars = super::doubled_vars(1);
    let mut lift = MultiPoly::zero(vars.clone());
    for i in 0..n {
        for j in 0..n {
            let c = &t[i * n + j];
            if !c.is_zero() {
                lift = lift.add(&MultiPoly::from_terms(
                    vars.clone(),
                    [(vec![i as u32, j as u32], c.clone())],
                )?);
            }
        }
    }
    let diag = lift.diagonal_restriction(1); // lies in the modulus ideal
    let mut diag_in_xy = MultiPoly::zero(vars.clone());
    for (e, c) in diag.terms() {
        diag_in_xy = diag_in_xy.add(&MultiPoly::from_terms(vars.clone(), [(vec![e[0], 0], c.clone())])?);
    }
    decompose_one_variable(&lift.sub(&diag_in_xy))
}
