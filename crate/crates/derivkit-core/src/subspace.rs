//! Canonical subspaces of ℚ^n.
//!
//! A `Subspace` stores its reduced row-echelon basis: rows are nonzero,
//! pivot columns strictly increase, each pivot entry is 1 and is the only
//! nonzero entry in its column. The form is unique per subspace, so two
//! values represent the same subspace exactly when their fields are equal.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::rational::{to_canonical_string, Rational};
use crate::Result;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

/// Incrementally maintained reduced row echelon form.
///
/// Inserting a vector reduces it against the current rows, and on success
/// back-eliminates its pivot column from them, so the rows are in canonical
/// form after every step. Canonicity makes the final basis independent of
/// insertion order.
pub struct SpanBuilder {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(ambient: usize) -> Self {
        SpanBuilder { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduce `v` modulo the current rows in place; returns the coefficient
    /// of each row used.
    fn reduce(&self, v: &mut [Rational]) -> Vec<Rational> {
        let mut coeffs = vec![Rational::zero(); self.rows.len()];
        for (r, (&p, row)) in self.pivots.iter().zip(&self.rows).enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let c = core::mem::replace(&mut v[p], Rational::zero());
            for (j, e) in row.iter().enumerate().skip(p + 1) {
                if !e.is_zero() {
                    let delta = &c * e;
                    v[j] -= delta;
                }
            }
            coeffs[r] = c;
        }
        coeffs
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// `v` minus its projection onto the span; zero iff `v` is contained.
    pub fn residual(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w
    }

    /// Insert a vector; returns `true` when the dimension grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> Result<bool> {
        self.insert_indexed(v, None)
    }

    fn insert_indexed(&mut self, mut v: Vec<Rational>, index: Option<usize>) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len(), index });
        }
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|e| !e.is_zero()) else {
            return Ok(false);
        };
        let lead = core::mem::replace(&mut v[p], Rational::one());
        for e in v.iter_mut().skip(p + 1) {
            if !e.is_zero() {
                *e = &*e / &lead;
            }
        }
        // back-eliminate the new pivot column from the existing rows
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = core::mem::replace(&mut row[p], Rational::zero());
            for (j, e) in v.iter().enumerate().skip(p + 1) {
                if !e.is_zero() {
                    let delta = &c * e;
                    row[j] -= delta;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        Ok(true)
    }

    pub fn finish(self) -> Subspace {
        Subspace { ambient: self.ambient, basis: self.rows }
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let mut basis = Vec::with_capacity(ambient);
        for i in 0..ambient {
            let mut row = vec![Rational::zero(); ambient];
            row[i] = Rational::one();
            basis.push(row);
        }
        Subspace { ambient, basis }
    }

    /// Span of a single vector.
    pub fn line(v: &[Rational]) -> Self {
        span_canonical(core::slice::from_ref(&v.to_vec()), v.len()).expect("length is its own ambient")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|e| !e.is_zero()).expect("basis rows are nonzero"))
            .collect()
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        Ok(membership_with_coords(v, self)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        for row in &other.basis {
            if !self.contains_vector(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn to_builder(&self) -> SpanBuilder {
        let mut b = SpanBuilder::new(self.ambient);
        for row in &self.basis {
            b.insert(row.clone()).expect("basis rows have ambient length");
        }
        b
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Subspace dim {} of Q^{} [", self.dim(), self.ambient)?;
        for row in &self.basis {
            write!(f, "  [")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", to_canonical_string(e))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Canonical span of a generating set.
pub fn span_canonical(vectors: &[Vec<Rational>], ambient_dim: usize) -> Result<Subspace> {
    let mut b = SpanBuilder::new(ambient_dim);
    for (i, v) in vectors.iter().enumerate() {
        b.insert_indexed(v.clone(), Some(i))?;
    }
    Ok(b.finish())
}

/// Coordinates of `v` in the canonical basis of `s`, when `v ∈ s`.
///
/// The returned coefficients reproduce `v` exactly as a combination of
/// `s.basis()` rows.
pub fn membership_with_coords(v: &[Rational], s: &Subspace) -> Result<Option<Vec<Rational>>> {
    if v.len() != s.ambient {
        return Err(Error::DimensionMismatch { expected: s.ambient, found: v.len(), index: None });
    }
    let mut w = v.to_vec();
    let builder = SpanBuilder {
        ambient: s.ambient,
        rows: s.basis.clone(),
        pivots: s.pivot_columns(),
    };
    let coeffs = builder.reduce(&mut w);
    if w.iter().all(Zero::is_zero) {
        Ok(Some(coeffs))
    } else {
        Ok(None)
    }
}

/// Intersection and sum in one pass (Zassenhaus block trick).
pub fn subspace_meet_join(s1: &Subspace, s2: &Subspace) -> Result<(Subspace, Subspace)> {
    if s1.ambient != s2.ambient {
        return Err(Error::AmbientMismatch { left: s1.ambient, right: s2.ambient });
    }
    let d = s1.ambient;
    let mut b = SpanBuilder::new(2 * d);
    for row in &s1.basis {
        let mut doubled = row.clone();
        doubled.extend_from_slice(row);
        b.insert(doubled)?;
    }
    for row in &s2.basis {
        let mut padded = row.clone();
        padded.resize(2 * d, Rational::zero());
        b.insert(padded)?;
    }
    let mut sum = SpanBuilder::new(d);
    let mut meet = SpanBuilder::new(d);
    for (p, row) in b.pivots.iter().zip(&b.rows) {
        if *p < d {
            sum.insert(row[..d].to_vec())?;
        } else {
            meet.insert(row[d..].to_vec())?;
        }
    }
    Ok((meet.finish(), sum.finish()))
}

/// Canonical basis of the null space of `m`.
pub fn kernel(m: &Matrix) -> Subspace {
    let n = m.cols();
    let mut echelon = SpanBuilder::new(n);
    for i in 0..m.rows() {
        echelon.insert(m.row(i).to_vec()).expect("row length matches ambient");
    }
    let pivot_set: Vec<usize> = echelon.pivots.clone();
    let mut is_pivot = vec![false; n];
    for &p in &pivot_set {
        is_pivot[p] = true;
    }
    let mut b = SpanBuilder::new(n);
    for f in 0..n {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![Rational::zero(); n];
        v[f] = Rational::one();
        for (&p, row) in pivot_set.iter().zip(&echelon.rows) {
            v[p] = -row[f].clone();
        }
        b.insert(v).expect("kernel vector has ambient length");
    }
    b.finish()
}

/// Sum of two subspaces.
pub fn subspace_sum(s1: &Subspace, s2: &Subspace) -> Result<Subspace> {
    if s1.ambient != s2.ambient {
        return Err(Error::AmbientMismatch { left: s1.ambient, right: s2.ambient });
    }
    let mut b = s1.to_builder();
    for row in &s2.basis {
        b.insert(row.clone())?;
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio, rvec};

    #[test]
    fn empty_span_is_zero() {
        let s = span_canonical(&[], 3).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.ambient(), 3);
    }

    #[test]
    fn dependent_pair_collapses() {
        let s = span_canonical(&[rvec(&[1, 1]), rvec(&[2, 2])], 2).unwrap();
        assert_eq!(s.basis(), &[rvec(&[1, 1])]);
    }

    #[test]
    fn rank_two_span_with_expected_pivots() {
        // third vector is the sum of the first two; hand row-reduction gives
        // basis {(1,0,1),(0,1,1)} with pivots in columns 0 and 1
        let s = span_canonical(
            &[rvec(&[1, 0, 1]), rvec(&[0, 1, 1]), rvec(&[1, 1, 2])],
            3,
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivot_columns(), vec![0, 1]);
        assert_eq!(s.basis(), &[rvec(&[1, 0, 1]), rvec(&[0, 1, 1])]);
    }

    #[test]
    fn dimension_mismatch_reports_index() {
        let err = span_canonical(&[rvec(&[1, 0]), rvec(&[1, 0, 0])], 2).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3, index: Some(1) });
    }

    #[test]
    fn membership_coords_reproduce_vector() {
        let s = span_canonical(&[rvec(&[1, 0, 1]), rvec(&[0, 1, 1])], 3).unwrap();
        let coords = membership_with_coords(&rvec(&[2, 3, 5]), &s).unwrap().unwrap();
        assert_eq!(coords, rvec(&[2, 3]));
        // hand oracle: a(1,0,1)+b(0,1,1) = (1,2,4) forces a=1, b=2, giving
        // third coordinate 3 != 4
        assert!(membership_with_coords(&rvec(&[1, 2, 4]), &s).unwrap().is_none());
        let zero = membership_with_coords(&rvec(&[0, 0, 0]), &s).unwrap().unwrap();
        assert!(zero.iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn membership_in_line() {
        let s = span_canonical(&[rvec(&[1, 1])], 2).unwrap();
        assert_eq!(membership_with_coords(&rvec(&[1, 1]), &s).unwrap(), Some(rvec(&[1])));
    }

    #[test]
    fn meet_join_axes() {
        let e1 = span_canonical(&[rvec(&[1, 0])], 2).unwrap();
        let e2 = span_canonical(&[rvec(&[0, 1])], 2).unwrap();
        let (meet, join) = subspace_meet_join(&e1, &e2).unwrap();
        assert!(meet.is_zero());
        assert_eq!(join, Subspace::full(2));
    }

    #[test]
    fn meet_join_idempotent() {
        let s = span_canonical(&[rvec(&[1, 2, 3]), rvec(&[0, 1, 7])], 3).unwrap();
        let (meet, join) = subspace_meet_join(&s, &s).unwrap();
        assert_eq!(meet, s);
        assert_eq!(join, s);
    }

    #[test]
    fn canonical_form_handles_fractions() {
        let s = span_canonical(&[alloc::vec![ratio(2, 3), rat(4)]], 2).unwrap();
        assert_eq!(s.basis(), &[alloc::vec![rat(1), rat(6)]]);
    }

    #[test]
    fn kernel_of_rank_one_map() {
        // x + y + z = 0 has a 2-dimensional solution space
        let m = Matrix::from_i64(&[&[1, 1, 1]]);
        let k = kernel(&m);
        assert_eq!(k.dim(), 2);
        for row in k.basis() {
            assert!(m.apply(row).unwrap().iter().all(num_traits::Zero::is_zero));
        }
    }
}
