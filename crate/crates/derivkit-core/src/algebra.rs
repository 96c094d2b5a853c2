//! Finite-dimensional associative algebras as structure constants.
//!
//! An algebra is a labeled basis together with the sparse coordinates of
//! every basis product, plus an optional unit vector. Elements are plain
//! coordinate vectors; all arithmetic goes through the owning `FinAlg`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::subspace::{SpanBuilder, Subspace};
use crate::Result;

/// Sparse coordinate vector: ascending `(index, nonzero coefficient)` pairs.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
pub struct FinAlg {
    dim: usize,
    labels: Vec<String>,
    /// `table[i * dim + j]` holds the coordinates of `basis_i · basis_j`.
    table: Vec<SparseVec>,
    unit: Option<Vec<Rational>>,
}

impl FinAlg {
    /// Assemble an algebra from explicit products. Missing `(i, j)` pairs
    /// mean the product is zero. Associativity is not enforced here; run
    /// [`validate_algebra`] for that.
    pub fn new(
        dim: usize,
        labels: Vec<String>,
        products: impl IntoIterator<Item = (usize, usize, Vec<Rational>)>,
        unit: Option<Vec<Rational>>,
    ) -> Result<Self> {
        if labels.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: labels.len(), index: None });
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(Error::ElementMismatch { algebra_dim: dim, coords_len: u.len() });
            }
        }
        let mut table = vec![SparseVec::new(); dim * dim];
        for (i, j, coords) in products {
            if i >= dim || j >= dim {
                return Err(Error::DimensionMismatch { expected: dim, found: i.max(j) + 1, index: None });
            }
            if coords.len() != dim {
                return Err(Error::ElementMismatch { algebra_dim: dim, coords_len: coords.len() });
            }
            table[i * dim + j] = to_sparse(&coords);
        }
        Ok(FinAlg { dim, labels, table, unit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&Vec<Rational>> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// Sparse coordinates of `basis_i · basis_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn check_element(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::ElementMismatch { algebra_dim: self.dim, coords_len: v.len() });
        }
        Ok(())
    }

    /// Product of two elements.
    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_element(u)?;
        self.check_element(v)?;
        let mut out = vec![Rational::zero(); self.dim];
        for (i, ci) in u.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in v.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                let prod = ci * cj;
                for (k, s) in self.basis_product(i, j) {
                    if s.is_one() {
                        out[*k] += &prod;
                    } else {
                        out[*k] += &prod * s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Commutator `uv − vu`.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        let uv = self.mul(u, v)?;
        let vu = self.mul(v, u)?;
        Ok(uv.iter().zip(&vu).map(|(a, b)| a - b).collect())
    }

    /// The same space with reversed multiplication.
    pub fn opposite(&self) -> FinAlg {
        let mut table = vec![SparseVec::new(); self.dim * self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                table[i * self.dim + j] = self.table[j * self.dim + i].clone();
            }
        }
        FinAlg { dim: self.dim, labels: self.labels.clone(), table, unit: self.unit.clone() }
    }

    /// Dense products for serialization, sorted by `(i, j)`, zeros omitted.
    pub fn structure_entries(&self) -> Vec<(usize, usize, Vec<Rational>)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let sp = self.basis_product(i, j);
                if sp.is_empty() {
                    continue;
                }
                let mut dense = vec![Rational::zero(); self.dim];
                for (k, c) in sp {
                    dense[*k] = c.clone();
                }
                out.push((i, j, dense));
            }
        }
        out
    }
}

fn to_sparse(coords: &[Rational]) -> SparseVec {
    coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// Constructor specifications for the standard algebra zoo.
#[derive(Clone, Debug)]
pub enum AlgebraSpec {
    /// Full matrix algebra `M_n` on matrix units.
    MatrixAlgebra(usize),
    /// Diagonal matrices `D_n` on idempotents.
    DiagonalAlgebra(usize),
    /// `ℚ[x]/(p)` for a monic one-variable `p` of degree ≥ 1.
    PolyQuotient(MultiPoly),
    DirectSum(Box<AlgebraSpec>, Box<AlgebraSpec>),
    Unitization(Box<AlgebraSpec>),
    /// Quotient by a verified two-sided ideal.
    Quotient(Box<AlgebraSpec>, Subspace),
}

pub fn build_standard_algebra(spec: &AlgebraSpec) -> Result<FinAlg> {
    match spec {
        AlgebraSpec::MatrixAlgebra(n) => matrix_algebra(*n),
        AlgebraSpec::DiagonalAlgebra(n) => Ok(diagonal_algebra(*n)),
        AlgebraSpec::PolyQuotient(p) => poly_quotient(p),
        AlgebraSpec::DirectSum(a, b) => {
            direct_sum(&build_standard_algebra(a)?, &build_standard_algebra(b)?)
        }
        AlgebraSpec::Unitization(a) => unitization(&build_standard_algebra(a)?),
        AlgebraSpec::Quotient(a, ideal) => quotient(&build_standard_algebra(a)?, ideal),
    }
}

/// `M_n` with basis `e_{ij}`, ordered row-major, `e_{ij} e_{kl} = δ_{jk} e_{il}`.
pub fn matrix_algebra(n: usize) -> Result<FinAlg> {
    if n == 0 {
        return Err(Error::ShapeMismatch { context: "matrix algebra needs n >= 1" });
    }
    let dim = n * n;
    let labels = (0..n)
        .flat_map(|i| (0..n).map(move |j| matrix_unit_label(n, i, j)))
        .collect();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j == k {
                        let mut coords = vec![Rational::zero(); dim];
                        coords[i * n + l] = Rational::one();
                        products.push((i * n + j, k * n + l, coords));
                    }
                }
            }
        }
    }
    let mut unit = vec![Rational::zero(); dim];
    for i in 0..n {
        unit[i * n + i] = Rational::one();
    }
    FinAlg::new(dim, labels, products, Some(unit))
}

fn matrix_unit_label(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        let mut s = String::from("e");
        s.push_str(&(i + 1).to_string());
        s.push_str(&(j + 1).to_string());
        s
    } else {
        let mut s = String::from("e");
        s.push_str(&(i + 1).to_string());
        s.push('_');
        s.push_str(&(j + 1).to_string());
        s
    }
}

/// `D_n`: commutative algebra on orthogonal idempotents.
pub fn diagonal_algebra(n: usize) -> FinAlg {
    let labels = (1..=n).map(|i| {
        let mut s = String::from("e");
        s.push_str(&i.to_string());
        s
    }).collect();
    let mut products = Vec::new();
    for i in 0..n {
        let mut coords = vec![Rational::zero(); n];
        coords[i] = Rational::one();
        products.push((i, i, coords));
    }
    let unit = vec![Rational::one(); n];
    FinAlg::new(n, labels, products, Some(unit)).expect("shapes are consistent")
}

/// `ℚ[x]/(p)` on the basis `1, x, …, x^{deg−1}`.
pub fn poly_quotient(p: &MultiPoly) -> Result<FinAlg> {
    if p.num_vars() != 1 {
        return Err(Error::ShapeMismatch { context: "quotient modulus must be a one-variable polynomial" });
    }
    let coeffs = p.one_var_coeffs();
    let deg = coeffs.len() - 1;
    if deg < 1 || !coeffs[deg].is_one() {
        return Err(Error::NotMonic);
    }
    // powers[k] = coordinates of x^k in the quotient, for k <= 2(deg-1)
    let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(2 * deg);
    for k in 0..deg {
        let mut v = vec![Rational::zero(); deg];
        v[k] = Rational::one();
        powers.push(v);
    }
    for k in deg..=2 * deg.saturating_sub(1) {
        let prev = powers[k - 1].clone();
        let mut v = vec![Rational::zero(); deg];
        // multiply by x: shift, then reduce x^deg = -(c_0 + … + c_{deg-1} x^{deg-1})
        v[1..deg].clone_from_slice(&prev[..deg - 1]);
        let top = prev[deg - 1].clone();
        if !top.is_zero() {
            for i in 0..deg {
                v[i] -= &top * &coeffs[i];
            }
        }
        powers.push(v);
    }
    let labels = (0..deg)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => {
                let mut s = String::from("x^");
                s.push_str(&k.to_string());
                s
            }
        })
        .collect();
    let mut products = Vec::new();
    for i in 0..deg {
        for j in 0..deg {
            products.push((i, j, powers[i + j].clone()));
        }
    }
    let mut unit = vec![Rational::zero(); deg];
    unit[0] = Rational::one();
    FinAlg::new(deg, labels, products, Some(unit))
}

pub fn direct_sum(a: &FinAlg, b: &FinAlg) -> Result<FinAlg> {
    let dim = a.dim + b.dim;
    let mut labels = Vec::with_capacity(dim);
    for l in &a.labels {
        let mut s = String::from("a.");
        s.push_str(l);
        labels.push(s);
    }
    for l in &b.labels {
        let mut s = String::from("b.");
        s.push_str(l);
        labels.push(s);
    }
    let mut products = Vec::new();
    for i in 0..a.dim {
        for j in 0..a.dim {
            let sp = a.basis_product(i, j);
            if sp.is_empty() {
                continue;
            }
            let mut coords = vec![Rational::zero(); dim];
            for (k, c) in sp {
                coords[*k] = c.clone();
            }
            products.push((i, j, coords));
        }
    }
    for i in 0..b.dim {
        for j in 0..b.dim {
            let sp = b.basis_product(i, j);
            if sp.is_empty() {
                continue;
            }
            let mut coords = vec![Rational::zero(); dim];
            for (k, c) in sp {
                coords[a.dim + *k] = c.clone();
            }
            products.push((a.dim + i, a.dim + j, coords));
        }
    }
    let unit = match (&a.unit, &b.unit) {
        (Some(u), Some(v)) => {
            let mut w = u.clone();
            w.extend_from_slice(v);
            Some(w)
        }
        _ => None,
    };
    FinAlg::new(dim, labels, products, unit)
}

/// Adjoin a fresh unit as basis element 0, regardless of whether the
/// algebra already had one.
pub fn unitization(a: &FinAlg) -> Result<FinAlg> {
    let dim = a.dim + 1;
    let mut labels = vec!["u".to_string()];
    labels.extend(a.labels.iter().cloned());
    let mut products = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let mut coords = vec![Rational::zero(); dim];
            match (i, j) {
                (0, _) => coords[j] = Rational::one(),
                (_, 0) => coords[i] = Rational::one(),
                _ => {
                    for (k, c) in a.basis_product(i - 1, j - 1) {
                        coords[k + 1] = c.clone();
                    }
                }
            }
            products.push((i, j, coords));
        }
    }
    let mut unit = vec![Rational::zero(); dim];
    unit[0] = Rational::one();
    FinAlg::new(dim, labels, products, Some(unit))
}

/// Quotient by a two-sided ideal. The ideal property is verified; the
/// error carries a witness product escaping the subspace.
pub fn quotient(a: &FinAlg, ideal: &Subspace) -> Result<FinAlg> {
    if ideal.ambient() != a.dim {
        return Err(Error::AmbientMismatch { left: a.dim, right: ideal.ambient() });
    }
    for i in 0..a.dim {
        let e = a.basis_vec(i);
        for row in ideal.basis() {
            for prod in [a.mul(&e, row)?, a.mul(row, &e)?] {
                if !ideal.contains_vector(&prod)? {
                    return Err(Error::NotAnIdeal { witness: prod });
                }
            }
        }
    }
    let pivots = ideal.pivot_columns();
    let mut is_pivot = vec![false; a.dim];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..a.dim).filter(|i| !is_pivot[*i]).collect();
    let class_index: BTreeMap<usize, usize> = free.iter().enumerate().map(|(q, &c)| (c, q)).collect();
    let dim = free.len();
    // canonical representative: eliminate ideal pivot coordinates
    let reducer = {
        let mut b = SpanBuilder::new(a.dim);
        for row in ideal.basis() {
            b.insert(row.clone()).expect("ideal rows have ambient length");
        }
        b
    };
    let project = |v: &[Rational]| -> Result<Vec<Rational>> {
        let residual = reducer.residual(v);
        let mut out = vec![Rational::zero(); dim];
        for (c, val) in residual.iter().enumerate() {
            if !val.is_zero() {
                out[*class_index.get(&c).expect("residual is supported on free columns")] = val.clone();
            }
        }
        Ok(out)
    };
    let labels = free.iter().map(|&c| a.labels[c].clone()).collect();
    let mut products = Vec::new();
    for (qi, &ci) in free.iter().enumerate() {
        for (qj, &cj) in free.iter().enumerate() {
            let prod = a.mul(&a.basis_vec(ci), &a.basis_vec(cj))?;
            products.push((qi, qj, project(&prod)?));
        }
    }
    let unit = match &a.unit {
        Some(u) => Some(project(u)?),
        None => None,
    };
    FinAlg::new(dim, labels, products, unit)
}

/// `B ⊗ B^op` on the basis `e_i ⊗ e_j`, ordered by `i·dim + j`, with
/// `(a⊗b)(c⊗d) = ac ⊗ db`. Requires a unital `B`.
pub fn tensor_square_op(b: &FinAlg) -> Result<FinAlg> {
    let unit = b.unit().ok_or(Error::NotUnital)?;
    let n = b.dim;
    let dim = n * n;
    let mut labels = Vec::with_capacity(dim);
    for i in 0..n {
        for j in 0..n {
            let mut s = b.labels[i].clone();
            s.push('|');
            s.push_str(&b.labels[j]);
            labels.push(s);
        }
    }
    let mut table = vec![SparseVec::new(); dim * dim];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let first = b.basis_product(i, k);
                    if first.is_empty() {
                        continue;
                    }
                    let second = b.basis_product(l, j); // op twist
                    if second.is_empty() {
                        continue;
                    }
                    let mut coords = SparseVec::new();
                    for (p, cp) in first {
                        for (q, cq) in second {
                            coords.push((p * n + q, cp * cq));
                        }
                    }
                    coords.sort_by_key(|(idx, _)| *idx);
                    table[(i * n + j) * dim + (k * n + l)] = coords;
                }
            }
        }
    }
    let mut tensor_unit = vec![Rational::zero(); dim];
    for (p, up) in unit.iter().enumerate() {
        if up.is_zero() {
            continue;
        }
        for (q, uq) in unit.iter().enumerate() {
            if !uq.is_zero() {
                tensor_unit[p * n + q] = up * uq;
            }
        }
    }
    Ok(FinAlg { dim, labels, table, unit: Some(tensor_unit) })
}

/// Kronecker coordinates of `u ⊗ v` in the tensor-square basis.
pub fn tensor_elem(b: &FinAlg, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
    b.check_element(u)?;
    b.check_element(v)?;
    let n = b.dim;
    let mut out = vec![Rational::zero(); n * n];
    for (p, up) in u.iter().enumerate() {
        if up.is_zero() {
            continue;
        }
        for (q, vq) in v.iter().enumerate() {
            if !vq.is_zero() {
                out[p * n + q] = up * vq;
            }
        }
    }
    Ok(out)
}

/// The two multiplication maps on `B ⊗ B^op`: `m` sends `Σ aₖ⊗bₖ` to
/// `Σ aₖbₖ` and `m_op` to `Σ bₖaₖ`. Both are `dim × dim²` matrices.
pub fn multiplication_maps(b: &FinAlg) -> Result<(Matrix, Matrix)> {
    if !b.is_unital() {
        return Err(Error::NotUnital);
    }
    let n = b.dim;
    let mut m = Matrix::zeros(n, n * n);
    let mut m_op = Matrix::zeros(n, n * n);
    for i in 0..n {
        for j in 0..n {
            for (k, c) in b.basis_product(i, j) {
                m[(*k, i * n + j)] = c.clone();
            }
            for (k, c) in b.basis_product(j, i) {
                m_op[(*k, i * n + j)] = c.clone();
            }
        }
    }
    Ok((m, m_op))
}

/// Associativity / unit diagnostic.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    /// First triple `(i, j, k)` with `(eᵢeⱼ)eₖ ≠ eᵢ(eⱼeₖ)`, if any.
    pub associativity_failure: Option<(usize, usize, usize)>,
    /// First basis index where the declared unit fails to act trivially.
    pub unit_failure: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.associativity_failure.is_none() && self.unit_failure.is_none()
    }
}

pub fn validate_algebra(a: &FinAlg) -> ValidationReport {
    let mut associativity_failure = None;
    'outer: for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let mut lhs = vec![Rational::zero(); a.dim];
                for (p, c) in a.basis_product(i, j) {
                    for (t, s) in a.basis_product(*p, k) {
                        lhs[*t] += c * s;
                    }
                }
                let mut rhs = vec![Rational::zero(); a.dim];
                for (q, c) in a.basis_product(j, k) {
                    for (t, s) in a.basis_product(i, *q) {
                        rhs[*t] += c * s;
                    }
                }
                if lhs != rhs {
                    associativity_failure = Some((i, j, k));
                    break 'outer;
                }
            }
        }
    }
    let mut unit_failure = None;
    if let Some(u) = &a.unit {
        for i in 0..a.dim {
            let e = a.basis_vec(i);
            let left = a.mul(u, &e).expect("unit has algebra dimension");
            let right = a.mul(&e, u).expect("unit has algebra dimension");
            if left != e || right != e {
                unit_failure = Some(i);
                break;
            }
        }
    }
    ValidationReport { associativity_failure, unit_failure }
}
