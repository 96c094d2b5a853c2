//! Elementary operators on finite-dimensional bimodules, the comparison
//! of the derivation-generated operator algebra with its elementary-
//! operator bound, and the canonical classifications: Lie submodules of
//! `M_n` over the diagonal algebra and Lie ideals of `M_n`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{diagonal_algebra, matrix_algebra, poly_quotient, FinAlg};
use crate::closures::{generated_subalgebra, lie_closure, Acting, ModuleActions};
use crate::derivations::nlie_subspace;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::subspace::{span_canonical, subspace_meet_join, Subspace};
use crate::Result;

/// A bimodule over a finite-dimensional algebra, given by the matrices of
/// left and right multiplication per basis element of the algebra.
///
/// Construction checks that left is a homomorphism, right an
/// anti-homomorphism, and that the two actions commute.
#[derive(Clone, Debug)]
pub struct BimoduleRep {
    algebra: FinAlg,
    module_dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl BimoduleRep {
    pub fn new(algebra: FinAlg, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Self> {
        let actions = ModuleActions { left, right };
        let module_dim = validate_actions(&algebra, &actions)?;
        Ok(BimoduleRep { algebra, module_dim, left: actions.left, right: actions.right })
    }

    /// The regular bimodule: the algebra acting on itself.
    pub fn regular(b: &FinAlg) -> Result<Self> {
        let n = b.dim();
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for i in 0..n {
            let mut l = Matrix::zeros(n, n);
            let mut r = Matrix::zeros(n, n);
            for j in 0..n {
                for (k, c) in b.basis_product(i, j) {
                    l[(*k, j)] = c.clone();
                }
                for (k, c) in b.basis_product(j, i) {
                    r[(*k, j)] = c.clone();
                }
            }
            left.push(l);
            right.push(r);
        }
        BimoduleRep::new(b.clone(), left, right)
    }

    /// `M_n` as a bimodule over the diagonal algebra, with matrices
    /// flattened row-major.
    pub fn diagonal_on_matrices(n: usize) -> Result<Self> {
        let d = diagonal_algebra(n);
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for i in 0..n {
            let e = Matrix::unit(n, i, i);
            let id = Matrix::identity(n);
            left.push(e.kron(&id));
            right.push(id.kron(&e.transpose()));
        }
        BimoduleRep::new(d, left, right)
    }

    pub fn algebra(&self) -> &FinAlg {
        &self.algebra
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn left_action(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right_action(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    pub fn module_actions(&self) -> ModuleActions {
        ModuleActions { left: self.left.clone(), right: self.right.clone() }
    }

    /// Left multiplication by an algebra element.
    pub fn left_of(&self, coords: &[Rational]) -> Result<Matrix> {
        self.action_of(coords, &self.left)
    }

    /// Right multiplication by an algebra element.
    pub fn right_of(&self, coords: &[Rational]) -> Result<Matrix> {
        self.action_of(coords, &self.right)
    }

    fn action_of(&self, coords: &[Rational], actions: &[Matrix]) -> Result<Matrix> {
        self.algebra.check_element(coords)?;
        let mut out = Matrix::zeros(self.module_dim, self.module_dim);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &actions[i].scale(c);
            }
        }
        Ok(out)
    }
}

fn validate_actions(algebra: &FinAlg, actions: &ModuleActions) -> Result<usize> {
    let n = algebra.dim();
    if actions.left.len() != n || actions.right.len() != n {
        return Err(Error::ShapeMismatch { context: "one action matrix per algebra basis element" });
    }
    let d = actions
        .module_dim()
        .ok_or(Error::ShapeMismatch { context: "bimodule needs a nonempty action list" })?;
    for m in actions.left.iter().chain(&actions.right) {
        if m.rows() != d || m.cols() != d {
            return Err(Error::ShapeMismatch { context: "action matrices must be square of equal size" });
        }
    }
    let combine = |table: &[Matrix], i: usize, j: usize, twisted: bool| -> Matrix {
        let (p, q) = if twisted { (j, i) } else { (i, j) };
        let mut out = Matrix::zeros(d, d);
        for (k, c) in algebra.basis_product(p, q) {
            out = &out + &table[*k].scale(c);
        }
        out
    };
    for i in 0..n {
        for j in 0..n {
            if &actions.left[i] * &actions.left[j] != combine(&actions.left, i, j, false) {
                return Err(Error::ShapeMismatch { context: "left action is not a homomorphism" });
            }
            if &actions.right[i] * &actions.right[j] != combine(&actions.right, i, j, true) {
                return Err(Error::ShapeMismatch { context: "right action is not an anti-homomorphism" });
            }
            if &actions.left[i] * &actions.right[j] != &actions.right[j] * &actions.left[i] {
                return Err(Error::ShapeMismatch { context: "left and right actions do not commute" });
            }
        }
    }
    Ok(d)
}

/// The elementary operator `Σ c_{ij} L_{e_i} R_{e_j}` attached to a tensor
/// element with coordinates `c` in the basis `e_i ⊗ e_j`.
pub fn represent_elementary(t: &[Rational], rep: &BimoduleRep) -> Result<Matrix> {
    let n = rep.algebra.dim();
    if t.len() != n * n {
        return Err(Error::ElementMismatch { algebra_dim: n * n, coords_len: t.len() });
    }
    let d = rep.module_dim;
    let mut out = Matrix::zeros(d, d);
    for i in 0..n {
        for j in 0..n {
            let c = &t[i * n + j];
            if !c.is_zero() {
                out = &out + &(&rep.left[i] * &rep.right[j]).scale(c);
            }
        }
    }
    Ok(out)
}

/// The operator algebra generated by the inner derivations, next to the
/// image of `N_Lie` under the elementary-operator representation.
#[derive(Clone, Debug)]
pub struct DlieMlieReport {
    pub dlie: Subspace,
    pub mlie: Subspace,
    pub equal: bool,
}

pub fn dlie_vs_mlie(rep: &BimoduleRep) -> Result<DlieMlieReport> {
    if !rep.algebra.is_unital() {
        return Err(Error::NotUnital);
    }
    let d = rep.module_dim;
    let op_alg = matrix_algebra(d)?;
    let gens: Vec<Vec<Rational>> = (0..rep.algebra.dim())
        .map(|i| (&rep.left[i] - &rep.right[i]).flatten())
        .collect();
    let dlie = generated_subalgebra(&op_alg, &gens)?;
    let nlie = nlie_subspace(&rep.algebra)?;
    let images: Vec<Vec<Rational>> = nlie
        .basis()
        .iter()
        .map(|t| represent_elementary(t, rep).map(|m| m.flatten()))
        .collect::<Result<_>>()?;
    let mlie = span_canonical(&images, d * d)?;
    let equal = dlie == mlie;
    Ok(DlieMlieReport { dlie, mlie, equal })
}

/// How the tensors over the diagonal algebra act on `M_n`: entrywise
/// multiplication by a multiplier matrix vanishing on the diagonal.
#[derive(Clone, Debug)]
pub struct HadamardReport {
    pub dim: usize,
    /// Off-diagonal positions carrying the multipliers, 1-based.
    pub positions: Vec<(usize, usize)>,
    pub image_is_offdiagonal_multipliers: bool,
    pub kills_diagonal: bool,
}

pub fn hadamard_check(n: usize) -> Result<HadamardReport> {
    if n < 2 {
        return Err(Error::ShapeMismatch { context: "hadamard check needs n >= 2" });
    }
    let rep = BimoduleRep::diagonal_on_matrices(n)?;
    let d_n = rep.algebra();
    let nlie = nlie_subspace(d_n)?;
    let images: Vec<Vec<Rational>> = nlie
        .basis()
        .iter()
        .map(|t| represent_elementary(t, &rep).map(|m| m.flatten()))
        .collect::<Result<_>>()?;
    let image = span_canonical(&images, n * n * n * n)?;
    // expected: diagonal operator matrices with one multiplier per
    // off-diagonal position of the module
    let mut expected_gens = Vec::new();
    let mut positions = Vec::new();
    for j in 0..n {
        for k in 0..n {
            if j != k {
                positions.push((j + 1, k + 1));
                let pos = j * n + k;
                expected_gens.push(Matrix::unit(n * n, pos, pos).flatten());
            }
        }
    }
    let expected = span_canonical(&expected_gens, n * n * n * n)?;
    let image_is_offdiagonal_multipliers = image == expected;
    // every image operator kills the diagonal subalgebra of the module
    let mut kills_diagonal = true;
    'outer: for t in nlie.basis() {
        let op = represent_elementary(t, &rep)?;
        for i in 0..n {
            let diag_unit = Matrix::unit(n, i, i).flatten();
            if !op.apply(&diag_unit)?.iter().all(Zero::is_zero) {
                kills_diagonal = false;
                break 'outer;
            }
        }
    }
    Ok(HadamardReport {
        dim: image.dim(),
        positions,
        image_is_offdiagonal_multipliers,
        kills_diagonal,
    })
}

/// Canonical form of a Lie submodule of `M_n` over the diagonal algebra:
/// a subspace of the diagonal plus full coordinate lines at a set of
/// off-diagonal positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSubmoduleForm {
    /// Subspace of the diagonal, in diagonal coordinates (ambient `n`).
    pub diagonal_part: Subspace,
    /// Off-diagonal positions `(j, k)`, 0-based, whose matrix units lie in
    /// the submodule.
    pub positions: BTreeSet<(usize, usize)>,
}

impl LieSubmoduleForm {
    /// Rebuild the submodule inside flattened `M_n`.
    pub fn reconstruct(&self, n: usize) -> Result<Subspace> {
        let mut gens = Vec::new();
        for row in self.diagonal_part.basis() {
            let mut m = Matrix::zeros(n, n);
            for (i, c) in row.iter().enumerate() {
                m[(i, i)] = c.clone();
            }
            gens.push(m.flatten());
        }
        for &(j, k) in &self.positions {
            gens.push(Matrix::unit(n, j, k).flatten());
        }
        span_canonical(&gens, n * n)
    }
}

/// Close the generators under all inner derivations by diagonal matrices
/// and split the result as diagonal part plus coordinate lines.
pub fn classify_dn_submodule(n: usize, gens: &[Matrix]) -> Result<LieSubmoduleForm> {
    if n < 1 {
        return Err(Error::ShapeMismatch { context: "module size must be positive" });
    }
    let rep = BimoduleRep::diagonal_on_matrices(n)?;
    let flat: Vec<Vec<Rational>> = gens
        .iter()
        .map(|g| {
            if g.rows() != n || g.cols() != n {
                Err(Error::ShapeMismatch { context: "generators must be n x n matrices" })
            } else {
                Ok(g.flatten())
            }
        })
        .collect::<Result<_>>()?;
    let closure = lie_closure(
        rep.algebra(),
        &Acting::WholeAlgebra,
        Some(&rep.module_actions()),
        &flat,
    )?;
    // diagonal part: meet with the diagonal subspace, then strip to
    // diagonal coordinates
    let diag_embed = {
        let gens: Vec<Vec<Rational>> = (0..n).map(|i| Matrix::unit(n, i, i).flatten()).collect();
        span_canonical(&gens, n * n)?
    };
    let (meet, _) = subspace_meet_join(&closure, &diag_embed)?;
    let mut diag_rows = Vec::new();
    for row in meet.basis() {
        diag_rows.push((0..n).map(|i| row[i * n + i].clone()).collect());
    }
    let diagonal_part = span_canonical(&diag_rows, n)?;
    let mut positions = BTreeSet::new();
    for j in 0..n {
        for k in 0..n {
            if j != k && closure.contains_vector(&Matrix::unit(n, j, k).flatten())? {
                positions.insert((j, k));
            }
        }
    }
    let form = LieSubmoduleForm { diagonal_part, positions };
    let rebuilt = form.reconstruct(n)?;
    if rebuilt != closure {
        let witness = closure
            .basis()
            .iter()
            .find(|row| !rebuilt.contains_vector(row).unwrap_or(false))
            .cloned()
            .unwrap_or_default();
        return Err(Error::ClassificationFailed { witness });
    }
    Ok(form)
}

/// The four Lie ideals of a full matrix algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieIdealClass {
    Zero,
    Scalars,
    Traceless,
    Full,
}

impl LieIdealClass {
    /// The canonical subspace of flattened `M_n` in this class.
    pub fn subspace(self, n: usize) -> Result<Subspace> {
        match self {
            LieIdealClass::Zero => Ok(Subspace::zero(n * n)),
            LieIdealClass::Scalars => Ok(Subspace::line(&Matrix::identity(n).flatten())),
            LieIdealClass::Traceless => {
                let mut gens = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            gens.push(Matrix::unit(n, i, j).flatten());
                        }
                    }
                }
                for i in 0..n.saturating_sub(1) {
                    let d = &Matrix::unit(n, i, i) - &Matrix::unit(n, i + 1, i + 1);
                    gens.push(d.flatten());
                }
                span_canonical(&gens, n * n)
            }
            LieIdealClass::Full => Ok(Subspace::full(n * n)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LieIdealClass::Zero => "Zero",
            LieIdealClass::Scalars => "Scalars",
            LieIdealClass::Traceless => "Traceless",
            LieIdealClass::Full => "Full",
        }
    }
}

/// Close the generators under all inner derivations of `M_n` and match the
/// result against the four canonical Lie ideals.
pub fn classify_lie_ideal(n: usize, gens: &[Matrix]) -> Result<LieIdealClass> {
    if n < 2 {
        return Err(Error::ShapeMismatch { context: "lie ideal classification needs n >= 2" });
    }
    let m_n = matrix_algebra(n)?;
    let flat: Vec<Vec<Rational>> = gens
        .iter()
        .map(|g| {
            if g.rows() != n || g.cols() != n {
                Err(Error::ShapeMismatch { context: "generators must be n x n matrices" })
            } else {
                Ok(g.flatten())
            }
        })
        .collect::<Result<_>>()?;
    let closure = lie_closure(&m_n, &Acting::WholeAlgebra, None, &flat)?;
    for class in [LieIdealClass::Zero, LieIdealClass::Scalars, LieIdealClass::Traceless, LieIdealClass::Full] {
        if closure == class.subspace(n)? {
            return Ok(class);
        }
    }
    let witness = closure.basis().first().cloned().unwrap_or_default();
    Err(Error::ClassificationFailed { witness })
}

/// Sparse coefficient matrix for sandwich operators `Σ λ_{k,m} a^k b a^m`.
pub type LambdaMatrix = BTreeMap<(u32, u32), Rational>;

/// Witness data for a failing coefficient matrix: in `ℚ[t]/(t^N)` with
/// `L = ℚ·t` and `a = b = t`, the element `Σ μ_n aⁿ b` where
/// `μ_n = Σ_{k+m=n} λ_{k,m}`.
#[derive(Clone, Debug)]
pub struct NecessityWitness {
    /// `N`, the degree of the truncation `ℚ[t]/(t^N)`.
    pub modulus_degree: usize,
    /// Anti-diagonal sums `μ_n`, indexed by `n`.
    pub mu: Vec<Rational>,
    /// Least `n` with `μ_n ≠ 0`.
    pub first_failing: usize,
    /// Coordinates of `Σ μ_n t^{n+1}` in the witness ring.
    pub element: Vec<Rational>,
    /// Whether the element escapes the line `ℚ·t`. This fails only when
    /// the sole nonzero anti-diagonal is `n = 0`, where the operator is a
    /// scalar plus a preserving part and no counterexample exists.
    pub escapes_line: bool,
}

impl NecessityWitness {
    /// Recompute the witness membership from scratch in the stated ring.
    pub fn verify(&self) -> Result<bool> {
        let mut modulus = vec![Rational::zero(); self.modulus_degree + 1];
        modulus[self.modulus_degree] = Rational::one();
        let ring = poly_quotient(&MultiPoly::from_one_var_coeffs("t", &modulus))?;
        let t = ring.basis_vec(1);
        let mut powers = vec![ring.unit().expect("quotient ring is unital").clone()];
        for _ in 0..self.mu.len() {
            let last = powers.last().expect("nonempty").clone();
            powers.push(ring.mul(&last, &t)?);
        }
        let mut elem = vec![Rational::zero(); ring.dim()];
        for (n, mu_n) in self.mu.iter().enumerate() {
            if mu_n.is_zero() {
                continue;
            }
            // μ_n aⁿ b = μ_n t^{n+1}
            let term = ring.mul(&powers[n], &t)?;
            for (e, v) in elem.iter_mut().zip(&term) {
                *e += mu_n * v;
            }
        }
        if elem != self.element {
            return Ok(false);
        }
        let line = Subspace::line(&t);
        Ok(!line.contains_vector(&elem)?)
    }
}

/// Verdict of the anti-diagonal criterion for Lie-ideal preservation.
#[derive(Clone, Debug)]
pub enum LambdaVerdict {
    Valid,
    Invalid(NecessityWitness),
}

impl LambdaVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, LambdaVerdict::Valid)
    }
}

/// Accept exactly the matrices whose anti-diagonals `k + m = n` all sum to
/// zero; otherwise produce the witness ring data.
pub fn lambda_preserver(lambda: &LambdaMatrix) -> LambdaVerdict {
    let max_n = lambda
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((k, m), _)| (k + m) as usize)
        .max();
    let Some(max_n) = max_n else {
        return LambdaVerdict::Valid; // the zero operator
    };
    let mut mu = vec![Rational::zero(); max_n + 1];
    for ((k, m), c) in lambda {
        mu[(k + m) as usize] += c;
    }
    let Some(first_failing) = mu.iter().position(|c| !c.is_zero()) else {
        return LambdaVerdict::Valid;
    };
    let modulus_degree = max_n + 2;
    let mut element = vec![Rational::zero(); modulus_degree];
    for (n, mu_n) in mu.iter().enumerate() {
        element[n + 1] = mu_n.clone();
    }
    let escapes_line = mu.iter().enumerate().any(|(n, c)| n >= 1 && !c.is_zero());
    LambdaVerdict::Invalid(NecessityWitness {
        modulus_degree,
        mu,
        first_failing,
        element,
        escapes_line,
    })
}

/// `Σ λ_{k,m} a^k b a^m` for matrices.
pub fn apply_sandwich(lambda: &LambdaMatrix, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.cols() {
        return Err(Error::ShapeMismatch { context: "sandwich operands must be square of equal size" });
    }
    let max_pow = lambda.keys().map(|&(k, m)| k.max(m)).max().unwrap_or(0);
    let mut powers = vec![Matrix::identity(a.rows())];
    for _ in 0..max_pow {
        let last = powers.last().expect("nonempty");
        powers.push(last * a);
    }
    let mut out = Matrix::zeros(a.rows(), a.cols());
    for (&(k, m), c) in lambda {
        if c.is_zero() {
            continue;
        }
        let term = &(&powers[k as usize] * b) * &powers[m as usize];
        out = &out + &term.scale(c);
    }
    Ok(out)
}

/// The doubled-variable polynomial `P(x, y) = Σ λ_{k,m} x^k y^m` attached
/// to a coefficient matrix; valid matrices give diagonal-vanishing `P`.
pub fn lambda_poly(lambda: &LambdaMatrix) -> MultiPoly {
    let vars = crate::poly::doubled_vars(1);
    let mut p = MultiPoly::zero(vars.clone());
    for (&(k, m), c) in lambda {
        if !c.is_zero() {
            p = p.add(
                &MultiPoly::from_terms(vars.clone(), [(vec![k, m], c.clone())])
                    .expect("two exponents for two variables"),
            );
        }
    }
    p
}

/// The matrix of the operator `x ↦ Σ λ_{k,m} a^k x a^m` on flattened
/// `n × n` matrices.
pub fn sandwich_operator_matrix(lambda: &LambdaMatrix, a: &Matrix) -> Result<Matrix> {
    if a.rows() != a.cols() {
        return Err(Error::ShapeMismatch { context: "sandwich base must be square" });
    }
    let n = a.rows();
    let max_pow = lambda.keys().map(|&(k, m)| k.max(m)).max().unwrap_or(0);
    let mut powers = vec![Matrix::identity(n)];
    for _ in 0..max_pow {
        let last = powers.last().expect("nonempty");
        powers.push(last * a);
    }
    let mut out = Matrix::zeros(n * n, n * n);
    for (&(k, m), c) in lambda {
        if c.is_zero() {
            continue;
        }
        let term = powers[k as usize].kron(&powers[m as usize].transpose());
        out = &out + &term.scale(c);
    }
    Ok(out)
}
