//! Sparse commutative polynomials over the rationals, and the graded
//! membership decision for the derivation-generated subalgebra of a
//! polynomial ring in doubled variables.
//!
//! In the doubled convention a polynomial ring in base variables
//! `x1..xk` is tensored with itself, giving variables `x1..xk, y1..yk`.
//! The subalgebra generated by all differences `a(x⃗) − a(y⃗)` is graded:
//! its generators split into monomial differences, which are homogeneous,
//! so membership can be decided one uniform degree at a time against a
//! finite span of products of monomial differences.

mod certificate;

pub use certificate::{
    decompose_one_variable, evaluate, transfer_quotient, verify_certificate, Certificate,
    CtxValue, EvalContext, VerifyOutcome,
};

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::Error;
use crate::rational::{rat, to_canonical_string, Rational};
use crate::subspace::{membership_with_coords, span_canonical, Subspace};
use crate::Result;

/// Sparse multivariate polynomial. Terms map exponent vectors (one entry
/// per declared variable) to nonzero coefficients; the map's lexicographic
/// key order fixes the canonical term order.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Self {
        let n = vars.len();
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn variable(vars: Vec<String>, index: usize) -> Self {
        let n = vars.len();
        assert!(index < n, "variable index out of range");
        let mut exps = vec![0u32; n];
        exps[index] = 1;
        let mut p = MultiPoly::zero(vars);
        p.terms.insert(exps, rat(1));
        p
    }

    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let n = vars.len();
        let mut p = MultiPoly::zero(vars);
        for (i, (exps, coeff)) in terms.into_iter().enumerate() {
            if exps.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: exps.len(), index: Some(i) });
            }
            p.add_term(exps, coeff);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Sum of all coefficients, i.e. the value at `(1,…,1)`.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    fn assert_same_vars(&self, other: &MultiPoly) {
        assert_eq!(self.vars, other.vars, "polynomial variable universes differ");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, k) in &self.terms {
            out.terms.insert(e.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.vars.clone(), rat(1));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Split into homogeneous pieces keyed by total degree.
    pub fn uniform_components(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d: u32 = e.iter().sum();
            out.entry(d)
                .or_insert_with(|| MultiPoly::zero(self.vars.clone()))
                .terms
                .insert(e.clone(), c.clone());
        }
        out
    }

    /// For a polynomial in `2k` doubled variables, substitute `yᵢ := xᵢ`,
    /// producing a polynomial in the `k` base variables.
    pub fn diagonal_restriction(&self, k: usize) -> MultiPoly {
        assert_eq!(self.vars.len(), 2 * k, "not a doubled-variable polynomial");
        let vars = self.vars[..k].to_vec();
        let mut out = MultiPoly::zero(vars);
        for (e, c) in &self.terms {
            let merged = (0..k).map(|i| e[i] + e[k + i]).collect();
            out.add_term(merged, c.clone());
        }
        out
    }

    /// Exact division by `x − y` for a two-variable polynomial, viewing the
    /// first variable as `x`. Errors when the remainder is nonzero.
    pub fn divide_by_x_minus_y(&self) -> Result<MultiPoly> {
        assert_eq!(self.vars.len(), 2, "division by x - y needs two variables");
        // collect as a polynomial in x with coefficients in Q[y]
        let mut by_x: BTreeMap<u32, BTreeMap<u32, Rational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            by_x.entry(e[0]).or_default().insert(e[1], c.clone());
        }
        let n = match by_x.keys().next_back() {
            None => return Ok(MultiPoly::zero(self.vars.clone())),
            Some(&n) => n,
        };
        let coeff = |i: u32| -> BTreeMap<u32, Rational> { by_x.get(&i).cloned().unwrap_or_default() };
        // (x - y) Σ b_i x^i matches Σ a_i x^i iff a_i = b_{i-1} - y·b_i
        let mut quotient: BTreeMap<u32, BTreeMap<u32, Rational>> = BTreeMap::new();
        let mut carry = coeff(n); // b_{n-1} = a_n
        for i in (1..=n).rev() {
            quotient.insert(i - 1, carry.clone());
            if i == 1 {
                break;
            }
            // b_{i-2} = a_{i-1} + y·b_{i-1}
            let mut next = coeff(i - 1);
            for (j, c) in &carry {
                let entry = next.entry(j + 1).or_insert_with(Rational::zero);
                *entry += c;
                if entry.is_zero() {
                    next.remove(&(j + 1));
                }
            }
            carry = next;
        }
        // remainder a_0 + y·b_0 must vanish
        let b0 = quotient.get(&0).cloned().unwrap_or_default();
        let mut rem = coeff(0);
        for (j, c) in &b0 {
            let entry = rem.entry(j + 1).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                rem.remove(&(j + 1));
            }
        }
        if !rem.is_empty() {
            return Err(Error::InexactDivision);
        }
        let mut out = MultiPoly::zero(self.vars.clone());
        for (i, ys) in quotient {
            for (j, c) in ys {
                out.add_term(vec![i, j], c);
            }
        }
        Ok(out)
    }

    /// One-variable polynomial as dense coefficients `[c₀, c₁, …]`.
    pub fn one_var_coeffs(&self) -> Vec<Rational> {
        assert_eq!(self.vars.len(), 1, "expected a one-variable polynomial");
        let deg = self.total_degree().map_or(0, |d| d as usize);
        let mut out = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        out
    }

    pub fn from_one_var_coeffs(var: &str, coeffs: &[Rational]) -> MultiPoly {
        let mut p = MultiPoly::zero(vec![var.to_owned()]);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![i as u32], c.clone());
        }
        p
    }

    /// For a one-variable `f`, build `f(x) − f(y)` in the two-variable ring.
    pub fn difference_of_copies(&self) -> MultiPoly {
        assert_eq!(self.vars.len(), 1, "expected a one-variable polynomial");
        let vars = vec!["x".to_owned(), "y".to_owned()];
        let mut out = MultiPoly::zero(vars);
        for (e, c) in &self.terms {
            if e[0] == 0 {
                continue; // constants cancel
            }
            out.add_term(vec![e[0], 0], c.clone());
            out.add_term(vec![0, e[0]], -c.clone());
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", to_canonical_string(c))?;
            for (v, &k) in self.vars.iter().zip(e) {
                if k > 0 {
                    write!(f, "*{v}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn format_debug_string(p: &MultiPoly) -> String {
    alloc::format!("{p:?}")
}

/// Canonical doubled variable names: `x, y` for one base variable,
/// `x1..xk, y1..yk` otherwise.
pub fn doubled_vars(k: usize) -> Vec<String> {
    assert!(k >= 1);
    if k == 1 {
        vec!["x".to_owned(), "y".to_owned()]
    } else {
        let mut vars: Vec<String> = (1..=k).map(|i| {
            let mut s = String::from("x");
            s.push_str(&i.to_string());
            s
        }).collect();
        vars.extend((1..=k).map(|i| {
            let mut s = String::from("y");
            s.push_str(&i.to_string());
            s
        }));
        vars
    }
}

/// All exponent vectors over `nvars` variables with total degree exactly
/// `d`, in lexicographic order. This fixes the coordinate order on each
/// uniform slice.
pub fn slice_monomials(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if nvars == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            go(nvars - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(nvars, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Coordinates of a uniform polynomial in the slice basis given by
/// [`slice_monomials`].
pub fn slice_vector(p: &MultiPoly, d: u32) -> Result<Vec<Rational>> {
    let monos = slice_monomials(p.num_vars(), d);
    let index: BTreeMap<&Vec<u32>, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = vec![Rational::zero(); monos.len()];
    for (e, c) in &p.terms {
        let Some(&i) = index.get(e) else {
            return Err(Error::ShapeMismatch { context: "polynomial is not uniform of the stated degree" });
        };
        out[i] = c.clone();
    }
    Ok(out)
}

/// Membership verdict for the doubled-variable subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    Member,
    NonMember { degree: u32, residual: MultiPoly },
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipVerdict::Member)
    }
}

/// Uniform degree-`d` slice of the subalgebra generated by all
/// `a(x⃗) − a(y⃗)` inside polynomials in `x1..xk, y1..yk`.
///
/// The slice is spanned by products `Π (mⱼ(x⃗) − mⱼ(y⃗))` over multisets of
/// nonconstant monomials with total degree `d`; generators decompose into
/// monomial differences, which are homogeneous, so these products exhaust
/// the degree-`d` part.
pub fn graded_tlie_component(num_base_vars: usize, degree: u32) -> Result<Subspace> {
    if num_base_vars < 1 || degree < 1 {
        return Err(Error::ShapeMismatch { context: "graded component needs k >= 1 and d >= 1" });
    }
    let k = num_base_vars;
    let ambient = slice_monomials(2 * k, degree).len();
    let vars = doubled_vars(k);
    let mut vectors = Vec::new();
    let mut factors: Vec<MultiPoly> = Vec::new();
    enumerate_products(k, degree, degree, 0, &vars, &mut factors, &mut vectors, degree)?;
    span_canonical(&vectors, ambient)
}

/// Recursively build products of monomial differences with non-increasing
/// factor degrees; equal-degree runs take monomials in non-decreasing index
/// order so each multiset appears once.
#[allow(clippy::too_many_arguments)]
fn enumerate_products(
    k: usize,
    remaining: u32,
    max_part: u32,
    min_index_for_max: usize,
    vars: &[String],
    factors: &mut Vec<MultiPoly>,
    out: &mut Vec<Vec<Rational>>,
    total: u32,
) -> Result<()> {
    if remaining == 0 {
        let mut prod = MultiPoly::constant(vars.to_vec(), rat(1));
        for f in factors.iter() {
            prod = prod.mul(f);
        }
        out.push(slice_vector(&prod, total)?);
        return Ok(());
    }
    for part in (1..=remaining.min(max_part)).rev() {
        let monos = slice_monomials(k, part);
        let start = if part == max_part { min_index_for_max } else { 0 };
        for (idx, mono) in monos.iter().enumerate().skip(start) {
            factors.push(monomial_difference(k, mono, vars));
            enumerate_products(k, remaining - part, part, idx, vars, factors, out, total)?;
            factors.pop();
        }
    }
    Ok(())
}

/// `m(x⃗) − m(y⃗)` in the doubled ring, for a monomial exponent vector over
/// the base variables.
fn monomial_difference(k: usize, mono: &[u32], vars: &[String]) -> MultiPoly {
    let mut p = MultiPoly::zero(vars.to_vec());
    let mut ex = vec![0u32; 2 * k];
    ex[..k].copy_from_slice(mono);
    p.add_term(ex, rat(1));
    let mut ey = vec![0u32; 2 * k];
    ey[k..].copy_from_slice(mono);
    p.add_term(ey, rat(-1));
    p
}

/// Check that the variable list matches the doubled convention for `k`.
pub fn expect_doubled(p: &MultiPoly, k: usize) -> Result<()> {
    if p.vars() == doubled_vars(k).as_slice() {
        Ok(())
    } else {
        Err(Error::UnknownVariable {
            name: p.vars().iter().find(|v| !doubled_vars(k).contains(v)).cloned().unwrap_or_else(|| "missing".to_string()),
        })
    }
}

/// Decide membership of `p` in the subalgebra generated by all
/// `a(x⃗) − a(y⃗)`, degree by degree. A nonzero constant term fails at
/// degree 0; otherwise the first uniform component outside its graded
/// slice is reported.
pub fn decide_membership_poly(p: &MultiPoly, k: usize) -> Result<MembershipVerdict> {
    expect_doubled(p, k)?;
    for (d, comp) in p.uniform_components() {
        if d == 0 {
            return Ok(MembershipVerdict::NonMember { degree: 0, residual: comp });
        }
        let space = graded_tlie_component(k, d)?;
        let vec = slice_vector(&comp, d)?;
        if membership_with_coords(&vec, &space)?.is_none() {
            return Ok(MembershipVerdict::NonMember { degree: d, residual: comp });
        }
    }
    Ok(MembershipVerdict::Member)
}
