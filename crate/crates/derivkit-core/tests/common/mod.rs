//! Shared helpers for the integration tests: seeded randomness and an
//! independent integer-rank oracle.

#![allow(dead_code)]

use derivkit_core::algebra::{
    build_standard_algebra, diagonal_algebra, matrix_algebra, AlgebraSpec, FinAlg,
};
use derivkit_core::poly::MultiPoly;
use derivkit_core::rational::{rat, Rational};
use derivkit_core::subspace::{span_canonical, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-4..=4))
}

pub fn random_vec(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| random_rat(rng)).collect()
}

pub fn random_subspace(rng: &mut ChaCha8Rng, ambient: usize, generators: usize) -> Subspace {
    let vecs: Vec<Vec<Rational>> = (0..generators).map(|_| random_vec(rng, ambient)).collect();
    span_canonical(&vecs, ambient).expect("generated with matching ambient")
}

/// A random monic one-variable polynomial of the given degree with small
/// integer coefficients.
pub fn random_monic(rng: &mut ChaCha8Rng, degree: usize) -> MultiPoly {
    let mut coeffs: Vec<Rational> = (0..degree).map(|_| rat(rng.random_range(-2..=2))).collect();
    coeffs.push(rat(1));
    MultiPoly::from_one_var_coeffs("x", &coeffs)
}

/// Random unital algebra from the standard constructors, small enough for
/// quantified testing.
pub fn random_unital_algebra(rng: &mut ChaCha8Rng) -> FinAlg {
    let pick = rng.random_range(0..5);
    let spec = match pick {
        0 => AlgebraSpec::MatrixAlgebra(2),
        1 => AlgebraSpec::DiagonalAlgebra(rng.random_range(1..=4)),
        2 => {
            let deg = rng.random_range(1..=4);
            AlgebraSpec::PolyQuotient(random_monic(rng, deg))
        }
        3 => {
            let n = rng.random_range(1..=2);
            let deg = rng.random_range(1..=3);
            AlgebraSpec::DirectSum(
                Box::new(AlgebraSpec::DiagonalAlgebra(n)),
                Box::new(AlgebraSpec::PolyQuotient(random_monic(rng, deg))),
            )
        }
        _ => {
            let deg = rng.random_range(1..=3);
            AlgebraSpec::Unitization(Box::new(AlgebraSpec::PolyQuotient(random_monic(rng, deg))))
        }
    };
    build_standard_algebra(&spec).expect("standard specs are well-formed")
}

pub fn m2() -> FinAlg {
    matrix_algebra(2).unwrap()
}

pub fn d(n: usize) -> FinAlg {
    diagonal_algebra(n)
}

/// Fraction-free rank of an integer matrix (Bareiss elimination on i128),
/// independent of the library's rational row reduction.
pub fn integer_rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev = 1i128;
    let mut row = 0;
    for col in 0..ncols {
        let Some(piv) = (row..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, piv);
        for r in 0..nrows {
            if r == row {
                continue;
            }
            for c in 0..ncols {
                if c == col {
                    continue;
                }
                m[r][c] = (m[row][col] * m[r][c] - m[r][col] * m[row][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[row][col];
        row += 1;
        rank += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

/// Convert a rational vector with integer entries to i128, panicking on
/// genuine fractions (the oracles below only feed integer data).
pub fn to_int_row(v: &[Rational]) -> Vec<i128> {
    use num_traits::ToPrimitive;
    v.iter()
        .map(|r| {
            assert!(num_traits::One::is_one(r.denom()), "oracle rows must be integral");
            r.numer().to_i128().expect("oracle entries fit i128")
        })
        .collect()
}
