//! The derivation subalgebra `T_Lie(B)` and its semiideal bound `N_Lie(B)`
//! inside `B ⊗ B^op`.
//!
//! `T_Lie(B)` is generated by all `a⊗1 − 1⊗a`; by linearity the basis
//! elements of `B` suffice as `a`. `N_Lie(B)` collects the tensors killed
//! by both multiplication maps. The containment `T ⊆ N` always holds;
//! equality is the property this crate decides exactly.

use alloc::vec::Vec;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{multiplication_maps, tensor_square_op, FinAlg};
use crate::closures::{generated_one_sided_ideal, generated_subalgebra, Side};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::rational::{rat, Rational};
use crate::subspace::{kernel, membership_with_coords, subspace_meet_join, Subspace};
use crate::Result;

/// Everything repeatedly needed when analysing one algebra: the tensor
/// square, the derivation generators, and the two multiplication maps.
pub struct LieSetup {
    pub tensor: FinAlg,
    pub generators: Vec<Vec<Rational>>,
    pub m: Matrix,
    pub m_op: Matrix,
}

impl LieSetup {
    pub fn new(b: &FinAlg) -> Result<Self> {
        let unit = b.unit().ok_or(Error::NotUnital)?;
        let tensor = tensor_square_op(b)?;
        let n = b.dim();
        let mut generators = Vec::with_capacity(n);
        for i in 0..n {
            // e_i⊗1 − 1⊗e_i
            let mut g = alloc::vec![Rational::zero(); n * n];
            for (q, uq) in unit.iter().enumerate() {
                if !uq.is_zero() {
                    g[i * n + q] += uq;
                    g[q * n + i] -= uq;
                }
            }
            generators.push(g);
        }
        let (m, m_op) = multiplication_maps(b)?;
        Ok(LieSetup { tensor, generators, m, m_op })
    }

    pub fn tlie(&self) -> Result<Subspace> {
        generated_subalgebra(&self.tensor, &self.generators)
    }

    pub fn nlie(&self) -> Result<Subspace> {
        let (meet, _) = subspace_meet_join(&kernel(&self.m), &kernel(&self.m_op))?;
        Ok(meet)
    }
}

/// Subspace generated by all `a⊗1 − 1⊗a` under the tensor product.
pub fn tlie_subspace(b: &FinAlg) -> Result<Subspace> {
    LieSetup::new(b)?.tlie()
}

/// Tensors `Σ aₖ⊗bₖ` with `Σ aₖbₖ = Σ bₖaₖ = 0`, as `ker m ∩ ker m_op`.
pub fn nlie_subspace(b: &FinAlg) -> Result<Subspace> {
    LieSetup::new(b)?.nlie()
}

/// Outcome of comparing the two subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LVerdict {
    Equal,
    /// A basis element of `N_Lie` outside `T_Lie`, first in canonical
    /// basis order.
    StrictWitness(Vec<Rational>),
}

impl LVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, LVerdict::Equal)
    }
}

/// Decide whether `T_Lie(B) = N_Lie(B)`.
pub fn decide_l_property(b: &FinAlg) -> Result<LVerdict> {
    let setup = LieSetup::new(b)?;
    decide_from_setup(&setup)
}

pub fn decide_from_setup(setup: &LieSetup) -> Result<LVerdict> {
    let t = setup.tlie()?;
    let n = setup.nlie()?;
    if t == n {
        return Ok(LVerdict::Equal);
    }
    for row in n.basis() {
        if membership_with_coords(row, &t)?.is_none() {
            return Ok(LVerdict::StrictWitness(row.clone()));
        }
    }
    // T ⊆ N always; inequality must show a witness in N \ T
    Err(Error::ShapeMismatch { context: "subspaces differ without witness; T exceeds N" })
}

/// Diagnostic for the semiideal identities: the one-sided ideals generated
/// by the derivation generators against the kernels of the multiplication
/// maps, their meet against `N_Lie`, and sampled sandwich products.
#[derive(Clone, Debug)]
pub struct SemiidealReport {
    pub left_ideal_dim: usize,
    pub right_ideal_dim: usize,
    pub left_matches_ker_m: bool,
    pub right_matches_ker_m_op: bool,
    pub meet_matches_nlie: bool,
    pub nlie_dim: usize,
    pub samples: usize,
    /// Sampled products `t₁ · s · t₂` that landed inside `N_Lie`.
    pub samples_inside: usize,
}

impl SemiidealReport {
    pub fn all_hold(&self) -> bool {
        self.left_matches_ker_m
            && self.right_matches_ker_m_op
            && self.meet_matches_nlie
            && self.samples_inside == self.samples
    }
}

/// Verify the semiideal identities on `b`, sampling `samples` products
/// with a deterministic seed.
pub fn semiideal_verify(b: &FinAlg, samples: usize, seed: u64) -> Result<SemiidealReport> {
    let setup = LieSetup::new(b)?;
    let left = generated_one_sided_ideal(&setup.tensor, &setup.generators, Side::Left)?;
    let right = generated_one_sided_ideal(&setup.tensor, &setup.generators, Side::Right)?;
    let ker_m = kernel(&setup.m);
    let ker_m_op = kernel(&setup.m_op);
    let (meet, _) = subspace_meet_join(&left, &right)?;
    let nlie = setup.nlie()?;
    let tlie = setup.tlie()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inside = 0;
    for _ in 0..samples {
        let t1 = random_combination(&mut rng, tlie.basis(), setup.tensor.dim());
        let t2 = random_combination(&mut rng, tlie.basis(), setup.tensor.dim());
        let s = random_vector(&mut rng, setup.tensor.dim());
        let prod = setup.tensor.mul(&setup.tensor.mul(&t1, &s)?, &t2)?;
        if membership_with_coords(&prod, &nlie)?.is_some() {
            inside += 1;
        }
    }
    Ok(SemiidealReport {
        left_ideal_dim: left.dim(),
        right_ideal_dim: right.dim(),
        left_matches_ker_m: left == ker_m,
        right_matches_ker_m_op: right == ker_m_op,
        meet_matches_nlie: meet == nlie,
        nlie_dim: nlie.dim(),
        samples,
        samples_inside: inside,
    })
}

pub(crate) fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| rat(rng.random_range(-3..=3))).collect()
}

pub(crate) fn random_combination(
    rng: &mut ChaCha8Rng,
    basis: &[Vec<Rational>],
    ambient: usize,
) -> Vec<Rational> {
    let mut out = alloc::vec![Rational::zero(); ambient];
    for row in basis {
        let c = rat(rng.random_range(-2..=2));
        if c.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            *o += &c * r;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{diagonal_algebra, matrix_algebra};

    #[test]
    fn trivial_unital_algebra_has_zero_tlie() {
        let triv = diagonal_algebra(1);
        let t = tlie_subspace(&triv).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn diagonal_two_by_two() {
        // the single independent generator g = e1⊗e2 − e2⊗e1 squares to
        // e1⊗e2 + e2⊗e1, so the closure is the full off-diagonal grid
        let d2 = diagonal_algebra(2);
        let t = tlie_subspace(&d2).unwrap();
        assert_eq!(t.dim(), 2);
        let n = nlie_subspace(&d2).unwrap();
        assert_eq!(n.dim(), 2);
        assert_eq!(decide_l_property(&d2).unwrap(), LVerdict::Equal);
    }

    #[test]
    fn unit_tensor_is_never_in_nlie() {
        let m2 = matrix_algebra(2).unwrap();
        let setup = LieSetup::new(&m2).unwrap();
        let n = setup.nlie().unwrap();
        let unit = setup.tensor.unit().unwrap();
        assert!(membership_with_coords(unit, &n).unwrap().is_none());
    }

    #[test]
    fn matrix_two_dimensions() {
        let m2 = matrix_algebra(2).unwrap();
        let setup = LieSetup::new(&m2).unwrap();
        let t = setup.tlie().unwrap();
        let n = setup.nlie().unwrap();
        assert_eq!(t.dim(), 9);
        assert_eq!(n.dim(), 9);
        // ker m alone has dimension dim(B)² − dim(B) = 12
        assert_eq!(kernel(&setup.m).dim(), 12);
        assert_eq!(decide_from_setup(&setup).unwrap(), LVerdict::Equal);
    }

    #[test]
    fn semiideal_on_m2() {
        let m2 = matrix_algebra(2).unwrap();
        let report = semiideal_verify(&m2, 25, 7).unwrap();
        assert_eq!(report.left_ideal_dim, 12);
        assert_eq!(report.right_ideal_dim, 12);
        assert_eq!(report.nlie_dim, 9);
        assert!(report.all_hold(), "{report:?}");
    }

    #[test]
    fn semiideal_on_commutative_d3() {
        let d3 = diagonal_algebra(3);
        let report = semiideal_verify(&d3, 25, 11).unwrap();
        assert_eq!(report.left_ideal_dim, 6);
        assert_eq!(report.right_ideal_dim, 6);
        assert_eq!(report.nlie_dim, 6);
        assert!(report.all_hold(), "{report:?}");
    }
}
