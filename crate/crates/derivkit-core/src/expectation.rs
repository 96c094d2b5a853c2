//! Exact conditional expectations by finite group averaging.
//!
//! The signed permutation group has trivial commutant in `M_n`, so
//! averaging a matrix over conjugation by it lands in the scalars while
//! preserving the trace: the average IS the trace expectation, with no
//! integration and no roots of unity. On a tensor factor the same average
//! over `1 ⊗ g` realizes the partial-trace expectation onto `M_n ⊗ 1`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::matrix_algebra;
use crate::bimodule::{dlie_vs_mlie, BimoduleRep};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::rational::{rat, Rational};
use crate::subspace::membership_with_coords;
use crate::Result;

/// Default bound on the degree of the signed permutation group; the group
/// has `2^n n!` elements.
pub const DEFAULT_GROUP_GUARD: usize = 4;

/// All signed permutation matrices of size `n`.
pub fn signed_permutations(n: usize) -> Vec<Matrix> {
    let mut perms = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permute(&mut current, 0, &mut perms);
    let mut out = Vec::with_capacity(perms.len() << n);
    for p in &perms {
        for signs in 0..(1u32 << n) {
            let mut m = Matrix::zeros(n, n);
            for (j, &i) in p.iter().enumerate() {
                m[(i, j)] = if signs >> j & 1 == 1 { rat(-1) } else { rat(1) };
            }
            out.push(m);
        }
    }
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Average `g x g⁻¹` over the signed permutation group, which equals
/// `(tr x / n)·1`. Guarded at `n ≤ 4` by default.
pub fn signed_perm_average(x: &Matrix) -> Result<Matrix> {
    signed_perm_average_with_guard(x, DEFAULT_GROUP_GUARD)
}

pub fn signed_perm_average_with_guard(x: &Matrix, max_n: usize) -> Result<Matrix> {
    let n = x.rows();
    if x.cols() != n {
        return Err(Error::ShapeMismatch { context: "conjugation average needs a square matrix" });
    }
    if n > max_n {
        return Err(Error::GroupTooLarge { n, max: max_n });
    }
    let group = signed_permutations(n);
    let mut acc = Matrix::zeros(n, n);
    for g in &group {
        // signed permutation matrices are orthogonal: g⁻¹ = gᵀ
        acc = &acc + &(&(g * x) * &g.transpose());
    }
    Ok(acc.scale(&(rat(1) / rat(group.len() as i64))))
}

/// Expectation onto the first tensor factor: average `x` over conjugation
/// by `1_n ⊗ g`, `g` running over signed permutations of size `m`. The
/// result lies in `M_n ⊗ 1_m`.
pub fn factor_expectation(n: usize, m: usize, x: &Matrix) -> Result<Matrix> {
    factor_expectation_with_guard(n, m, x, DEFAULT_GROUP_GUARD)
}

pub fn factor_expectation_with_guard(n: usize, m: usize, x: &Matrix, max_m: usize) -> Result<Matrix> {
    if x.rows() != n * m || x.cols() != n * m {
        return Err(Error::ShapeMismatch { context: "factor expectation input must be nm x nm" });
    }
    if m > max_m {
        return Err(Error::GroupTooLarge { n: m, max: max_m });
    }
    let id = Matrix::identity(n);
    let group = signed_permutations(m);
    let mut acc = Matrix::zeros(n * m, n * m);
    for g in &group {
        let u = id.kron(g);
        acc = &acc + &(&(&u * x) * &u.transpose());
    }
    Ok(acc.scale(&(rat(1) / rat(group.len() as i64))))
}

/// Partial trace over the second tensor factor: the `n × n` matrix with
/// entries `Σ_j x[(i,j),(k,j)]`.
pub fn partial_trace_second(n: usize, m: usize, x: &Matrix) -> Result<Matrix> {
    if x.rows() != n * m || x.cols() != n * m {
        return Err(Error::ShapeMismatch { context: "partial trace input must be nm x nm" });
    }
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            let mut s = Rational::zero();
            for j in 0..m {
                s += &x[(i * m + j, k * m + j)];
            }
            out[(i, k)] = s;
        }
    }
    Ok(out)
}

/// Membership of the averaged expectation defect `E − I` in the operator
/// algebra generated by the inner derivations of `M_n`.
#[derive(Clone, Debug)]
pub struct ExpectationMembership {
    pub dlie_dim: usize,
    pub member: bool,
    /// Coordinates of `E − I` in the canonical basis of the derivation
    /// algebra, when the membership holds.
    pub coords: Option<Vec<Rational>>,
    /// `(E − I)` annihilates the scalar line.
    pub kills_scalars: bool,
}

/// Build `E − I` on `M_n` for the signed-permutation expectation `E` and
/// test membership in the derivation-generated operator algebra.
///
/// Each group term `L_g R_{g⁻¹} − I` is an elementary operator whose
/// coefficient tensor `g ⊗ g⁻¹ − 1 ⊗ 1` is killed by both multiplication
/// maps, so the average lies in the elementary-operator bound; membership
/// in the derivation algebra itself is what gets verified here.
pub fn expectation_in_dlie(n: usize) -> Result<ExpectationMembership> {
    if !(2..=3).contains(&n) {
        return Err(Error::GroupTooLarge { n, max: 3 });
    }
    let m_n = matrix_algebra(n)?;
    let rep = BimoduleRep::regular(&m_n)?;
    let report = dlie_vs_mlie(&rep)?;
    let group = signed_permutations(n);
    let mut acc = Matrix::zeros(n * n, n * n);
    for g in &group {
        // operator matrix of x ↦ g x g⁻¹ on row-major flattened M_n
        acc = &acc + &g.kron(g);
    }
    let e_op = acc.scale(&(rat(1) / rat(group.len() as i64)));
    let defect = &e_op - &Matrix::identity(n * n);
    let coords = membership_with_coords(&defect.flatten(), &report.dlie)?;
    let scalars = Matrix::identity(n).flatten();
    let kills_scalars = defect.apply(&scalars)?.iter().all(Zero::is_zero);
    Ok(ExpectationMembership {
        dlie_dim: report.dlie.dim(),
        member: coords.is_some(),
        coords,
        kills_scalars,
    })
}
