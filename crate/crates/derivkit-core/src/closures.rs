//! Span-product closure engines.
//!
//! Each closure keeps a worklist of independent vectors spanning the space
//! found so far. When a vector enters the pool, its products with every
//! earlier pool member (in both orders, plus itself) are reduced against
//! the running echelon; products that grow the dimension join the pool.
//! Bilinearity makes pairwise products of a spanning set sufficient, every
//! pool entry is a product expression in the generators, and the pool can
//! gain at most `ambient` members, so the loop terminates with the smallest
//! closed subspace containing the generators.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::FinAlg;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::subspace::{SpanBuilder, Subspace};
use crate::Result;

/// Which multiplications an ideal closure absorbs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// The acting set for a Lie closure.
pub enum Acting<'a> {
    WholeAlgebra,
    Subalgebra(&'a Subspace),
}

/// Left/right action matrices of an algebra on a module, one pair per
/// basis element of the algebra.
#[derive(Clone, Debug)]
pub struct ModuleActions {
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

impl ModuleActions {
    pub fn module_dim(&self) -> Option<usize> {
        self.left.first().map(Matrix::rows)
    }

    fn check(&self, algebra_dim: usize) -> Result<usize> {
        if self.left.len() != algebra_dim || self.right.len() != algebra_dim {
            return Err(Error::ShapeMismatch { context: "one action matrix per algebra basis element" });
        }
        let d = self.module_dim().ok_or(Error::ShapeMismatch { context: "empty action list" })?;
        for m in self.left.iter().chain(&self.right) {
            if m.rows() != d || m.cols() != d {
                return Err(Error::ShapeMismatch { context: "action matrices must be square of equal size" });
            }
        }
        Ok(d)
    }
}

struct Pool {
    builder: SpanBuilder,
    items: Vec<Vec<Rational>>,
}

impl Pool {
    fn new(ambient: usize) -> Self {
        Pool { builder: SpanBuilder::new(ambient), items: Vec::new() }
    }

    fn offer(&mut self, v: Vec<Rational>) -> Result<()> {
        if self.builder.insert(v.clone())? {
            self.items.push(v);
        }
        Ok(())
    }
}

/// Smallest subspace containing `gens` and closed under the product of
/// `alg`. The unit is not adjoined; pass `adjoin_unit` through
/// [`generated_unital_subalgebra`] when the unitalization is wanted.
pub fn generated_subalgebra(alg: &FinAlg, gens: &[Vec<Rational>]) -> Result<Subspace> {
    subalgebra_closure(alg, gens, false)
}

/// As [`generated_subalgebra`], with the unit of `alg` adjoined first.
pub fn generated_unital_subalgebra(alg: &FinAlg, gens: &[Vec<Rational>]) -> Result<Subspace> {
    subalgebra_closure(alg, gens, true)
}

fn subalgebra_closure(alg: &FinAlg, gens: &[Vec<Rational>], adjoin_unit: bool) -> Result<Subspace> {
    let mut pool = Pool::new(alg.dim());
    if adjoin_unit {
        let unit = alg.unit().ok_or(Error::NotUnital)?;
        pool.offer(unit.clone())?;
    }
    for g in gens {
        alg.check_element(g)?;
        pool.offer(g.clone())?;
    }
    let mut done = 0;
    while done < pool.items.len() {
        let i = done;
        done += 1;
        for j in 0..done {
            let forward = alg.mul(&pool.items[i], &pool.items[j])?;
            pool.offer(forward)?;
            if j != i {
                let backward = alg.mul(&pool.items[j], &pool.items[i])?;
                pool.offer(backward)?;
            }
        }
    }
    Ok(pool.builder.finish())
}

/// Smallest subspace containing `gens` absorbing multiplication by the
/// whole algebra on the requested side(s).
pub fn generated_one_sided_ideal(alg: &FinAlg, gens: &[Vec<Rational>], side: Side) -> Result<Subspace> {
    let mut pool = Pool::new(alg.dim());
    for g in gens {
        alg.check_element(g)?;
        pool.offer(g.clone())?;
    }
    let mut done = 0;
    while done < pool.items.len() {
        let v = pool.items[done].clone();
        done += 1;
        for i in 0..alg.dim() {
            let e = alg.basis_vec(i);
            if side != Side::Right {
                pool.offer(alg.mul(&e, &v)?)?;
            }
            if side != Side::Left {
                pool.offer(alg.mul(&v, &e)?)?;
            }
        }
    }
    Ok(pool.builder.finish())
}

/// Smallest subspace containing `gens` invariant under `x ↦ ax − xa` for
/// every `a` in the acting set.
///
/// Closure under the derivations of a spanning set of the acting space is
/// enough, since `δ_a` is linear in `a`. Without `actions` the generators
/// live in the algebra itself; with `actions` they live in the module and
/// `a` acts through the left/right matrices.
pub fn lie_closure(
    alg: &FinAlg,
    acting: &Acting<'_>,
    actions: Option<&ModuleActions>,
    gens: &[Vec<Rational>],
) -> Result<Subspace> {
    let acting_basis: Vec<Vec<Rational>> = match acting {
        Acting::WholeAlgebra => (0..alg.dim()).map(|i| alg.basis_vec(i)).collect(),
        Acting::Subalgebra(s) => {
            if s.ambient() != alg.dim() {
                return Err(Error::AmbientMismatch { left: alg.dim(), right: s.ambient() });
            }
            s.basis().to_vec()
        }
    };
    // precompute δ_a as a matrix when module actions are given
    let deltas: Option<Vec<Matrix>> = match actions {
        None => None,
        Some(acts) => {
            let d = acts.check(alg.dim())?;
            let mut out = Vec::with_capacity(acting_basis.len());
            for a in &acting_basis {
                let mut m = Matrix::zeros(d, d);
                for (i, c) in a.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let diff = &acts.left[i] - &acts.right[i];
                    m = &m + &diff.scale(c);
                }
                out.push(m);
            }
            Some(out)
        }
    };
    let ambient = match &deltas {
        None => alg.dim(),
        Some(ds) => ds.first().map_or(alg.dim(), Matrix::rows),
    };
    let mut pool = Pool::new(ambient);
    for g in gens {
        if g.len() != ambient {
            return Err(Error::DimensionMismatch { expected: ambient, found: g.len(), index: None });
        }
        pool.offer(g.clone())?;
    }
    let mut done = 0;
    while done < pool.items.len() {
        let v = pool.items[done].clone();
        done += 1;
        match &deltas {
            None => {
                for a in &acting_basis {
                    pool.offer(alg.bracket(a, &v)?)?;
                }
            }
            Some(ds) => {
                for d in ds {
                    pool.offer(d.apply(&v)?)?;
                }
            }
        }
    }
    Ok(pool.builder.finish())
}
