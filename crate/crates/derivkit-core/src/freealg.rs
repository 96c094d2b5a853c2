//! Noncommutative polynomials in free generators and tensor squares of
//! free algebras.
//!
//! Free tensor elements are maps on pairs of words; no quotient
//! construction is needed because the only normal form is word
//! concatenation. The op twist lives in the multiplication:
//! `(u⊗v)(w⊗z) = uw ⊗ zv`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::Error;
use crate::poly::{decide_membership_poly, doubled_vars, MembershipVerdict, MultiPoly};
use crate::rational::{rat, to_canonical_string, Rational};
use crate::Result;

/// Word in generator indices; the empty word is the unit.
pub type Word = Vec<usize>;

/// Noncommutative polynomial over a fixed alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct FreePoly {
    alphabet: Vec<String>,
    terms: BTreeMap<Word, Rational>,
}

/// Element of the tensor square of a free algebra: a rational combination
/// of `u ⊗ v` over pairs of words.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeTensor {
    alphabet: Vec<String>,
    terms: BTreeMap<(Word, Word), Rational>,
}

impl FreePoly {
    pub fn zero(alphabet: Vec<String>) -> Self {
        FreePoly { alphabet, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: Vec<String>) -> Self {
        let mut p = FreePoly::zero(alphabet);
        p.terms.insert(Vec::new(), rat(1));
        p
    }

    pub fn generator(alphabet: Vec<String>, index: usize) -> Self {
        assert!(index < alphabet.len(), "generator index out of range");
        let mut p = FreePoly::zero(alphabet);
        p.terms.insert(vec![index], rat(1));
        p
    }

    pub fn word(alphabet: Vec<String>, word: Word) -> Self {
        let mut p = FreePoly::zero(alphabet);
        p.add_term(word, rat(1));
        p
    }

    fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_alphabet(&self, other: &[String]) -> Result<()> {
        if self.alphabet == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn add(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check_alphabet(&other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check_alphabet(&other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> FreePoly {
        let mut out = FreePoly::zero(self.alphabet.clone());
        if c.is_zero() {
            return out;
        }
        for (w, k) in &self.terms {
            out.terms.insert(w.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check_alphabet(&other.alphabet)?;
        let mut out = FreePoly::zero(self.alphabet.clone());
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, cu * cv);
            }
        }
        Ok(out)
    }
}

impl FreeTensor {
    pub fn zero(alphabet: Vec<String>) -> Self {
        FreeTensor { alphabet, terms: BTreeMap::new() }
    }

    /// `u ⊗ v` with coefficient 1.
    pub fn elementary(alphabet: Vec<String>, u: Word, v: Word) -> Self {
        let mut t = FreeTensor::zero(alphabet);
        t.add_term((u, v), rat(1));
        t
    }

    /// Bilinear extension of `p ⊗ q`.
    pub fn from_pair(p: &FreePoly, q: &FreePoly) -> Result<Self> {
        p.check_alphabet(&q.alphabet)?;
        let mut t = FreeTensor::zero(p.alphabet.clone());
        for (u, cu) in &p.terms {
            for (v, cv) in &q.terms {
                t.add_term((u.clone(), v.clone()), cu * cv);
            }
        }
        Ok(t)
    }

    /// `g⊗1 − 1⊗g` for a single generator.
    pub fn delta(alphabet: Vec<String>, index: usize) -> Self {
        let mut t = FreeTensor::zero(alphabet);
        t.add_term((vec![index], Vec::new()), rat(1));
        t.add_term((Vec::new(), vec![index]), rat(-1));
        t
    }

    fn add_term(&mut self, key: (Word, Word), c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FreeTensor) -> Result<FreeTensor> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FreeTensor) -> Result<FreeTensor> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> FreeTensor {
        let mut out = FreeTensor::zero(self.alphabet.clone());
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    /// Tensor-square product with the op twist in the second slot:
    /// `(u⊗v)(w⊗z) = uw ⊗ zv`.
    pub fn mul(&self, other: &FreeTensor) -> Result<FreeTensor> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = FreeTensor::zero(self.alphabet.clone());
        for ((u, v), cs) in &self.terms {
            for ((w, z), ct) in &other.terms {
                let mut first = u.clone();
                first.extend_from_slice(w);
                let mut second = z.clone();
                second.extend_from_slice(v);
                out.add_term((first, second), cs * ct);
            }
        }
        Ok(out)
    }

    /// First multiplication map: `u ⊗ v ↦ uv`.
    pub fn m(&self) -> FreePoly {
        let mut out = FreePoly::zero(self.alphabet.clone());
        for ((u, v), c) in &self.terms {
            let mut w = u.clone();
            w.extend_from_slice(v);
            out.add_term(w, c.clone());
        }
        out
    }

    /// Opposite multiplication map: `u ⊗ v ↦ vu`.
    pub fn m_op(&self) -> FreePoly {
        let mut out = FreePoly::zero(self.alphabet.clone());
        for ((u, v), c) in &self.terms {
            let mut w = v.clone();
            w.extend_from_slice(u);
            out.add_term(w, c.clone());
        }
        out
    }

    /// Drop every term whose words contain one of the forbidden adjacent
    /// generator pairs. This is evaluation in the quotient by the relations
    /// "those products are zero": a word containing a forbidden pair stays
    /// forbidden under concatenation, so one pass suffices.
    pub fn annihilate_adjacent(&self, forbidden: &[(usize, usize)]) -> FreeTensor {
        let bad = |w: &Word| w.windows(2).any(|p| forbidden.contains(&(p[0], p[1])));
        let mut out = FreeTensor::zero(self.alphabet.clone());
        for ((u, v), c) in &self.terms {
            if !bad(u) && !bad(v) {
                out.terms.insert((u.clone(), v.clone()), c.clone());
            }
        }
        out
    }

    /// Image under the abelianization `π⊗π`: generator `i` goes to the
    /// commuting base variable `var_map[i]`, the first word lands in the
    /// x-copy and the second in the y-copy.
    pub fn abelianize(&self, var_map: &[usize], num_base_vars: usize) -> Result<MultiPoly> {
        if var_map.len() != self.alphabet.len() {
            return Err(Error::DimensionMismatch {
                expected: self.alphabet.len(),
                found: var_map.len(),
                index: None,
            });
        }
        if let Some(&bad) = var_map.iter().find(|&&v| v >= num_base_vars) {
            return Err(Error::DimensionMismatch { expected: num_base_vars, found: bad, index: None });
        }
        let k = num_base_vars;
        let vars = doubled_vars(k);
        let mut out = MultiPoly::zero(vars.clone());
        for ((u, v), c) in &self.terms {
            let mut exps = vec![0u32; 2 * k];
            for &g in u {
                exps[var_map[g]] += 1;
            }
            for &g in v {
                exps[k + var_map[g]] += 1;
            }
            out = out.add(&MultiPoly::from_terms(vars.clone(), [(exps, c.clone())])?);
        }
        Ok(out)
    }
}

fn fmt_word(alphabet: &[String], w: &Word, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if w.is_empty() {
        return write!(f, "1");
    }
    for (i, g) in w.iter().enumerate() {
        if i > 0 {
            write!(f, ".")?;
        }
        write!(f, "{}", alphabet[*g])?;
    }
    Ok(())
}

impl fmt::Debug for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*", to_canonical_string(c))?;
            fmt_word(&self.alphabet, w, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((u, v), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*", to_canonical_string(c))?;
            fmt_word(&self.alphabet, u, f)?;
            write!(f, "|")?;
            fmt_word(&self.alphabet, v, f)?;
        }
        Ok(())
    }
}

/// Residuals of the square identity and the annihilator sandwich
/// identity, expanded in free tensor squares.
#[derive(Clone, Debug)]
pub struct LemmaIdentityReport {
    /// `2(1⊗x² − x⊗x) − [(x⊗1 − 1⊗x)² − (x²⊗1 − 1⊗x²)]` on `{x}`.
    pub identity_i_residual: FreeTensor,
    /// `(1⊗x² − x⊗x)(1⊗a − a⊗1)(x⊗1 − 1⊗x) − a⊗x³` on `{a,x}` after
    /// sending every word containing `ax` or `xa` to zero.
    pub identity_ii_residual: FreeTensor,
    /// The same product compared before rewriting; the relations are
    /// genuinely needed, so this must stay nonzero.
    pub identity_ii_unrewritten_nonzero: bool,
}

impl LemmaIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.identity_i_residual.is_zero()
            && self.identity_ii_residual.is_zero()
            && self.identity_ii_unrewritten_nonzero
    }
}

/// Expand and check both identities.
pub fn verify_lemma_identities() -> Result<LemmaIdentityReport> {
    // identity (i) on the one-letter alphabet
    let ab_x: Vec<String> = vec![String::from("x")];
    let x = 0usize;
    let one_x2 = FreeTensor::elementary(ab_x.clone(), Vec::new(), vec![x, x]);
    let x_x = FreeTensor::elementary(ab_x.clone(), vec![x], vec![x]);
    let lhs = one_x2.sub(&x_x)?.scale(&rat(2));
    let dx = FreeTensor::delta(ab_x.clone(), x);
    let dx2 = FreeTensor::elementary(ab_x.clone(), vec![x, x], Vec::new())
        .sub(&FreeTensor::elementary(ab_x.clone(), Vec::new(), vec![x, x]))?;
    let rhs = dx.mul(&dx)?.sub(&dx2)?;
    let identity_i_residual = lhs.sub(&rhs)?;

    // identity (ii) on {a, x} with the relations ax = xa = 0
    let ab_ax: Vec<String> = vec![String::from("a"), String::from("x")];
    let (a, x) = (0usize, 1usize);
    let one_x2 = FreeTensor::elementary(ab_ax.clone(), Vec::new(), vec![x, x]);
    let x_x = FreeTensor::elementary(ab_ax.clone(), vec![x], vec![x]);
    let first = one_x2.sub(&x_x)?;
    let middle = FreeTensor::elementary(ab_ax.clone(), Vec::new(), vec![a])
        .sub(&FreeTensor::elementary(ab_ax.clone(), vec![a], Vec::new()))?;
    let last = FreeTensor::delta(ab_ax.clone(), x);
    let product = first.mul(&middle)?.mul(&last)?;
    let target = FreeTensor::elementary(ab_ax.clone(), vec![a], vec![x, x, x]);
    let relations = [(a, x), (x, a)];
    let identity_ii_residual = product.annihilate_adjacent(&relations).sub(&target)?;
    let identity_ii_unrewritten_nonzero = !product.sub(&target)?.is_zero();

    Ok(LemmaIdentityReport {
        identity_i_residual,
        identity_ii_residual,
        identity_ii_unrewritten_nonzero,
    })
}

/// Obstruction report for the two-generator sandwich element: membership
/// in `N_Lie` checked by word expansion, and the graded verdict on its
/// abelianized image.
#[derive(Clone, Debug)]
pub struct F2Report {
    /// `(a⊗1 − 1⊗a)(b⊗1)(a⊗1 − 1⊗a)` in the free tensor square.
    pub element: FreeTensor,
    pub m_vanishes: bool,
    pub m_op_vanishes: bool,
    /// `(x₁−y₁)² x₂`, the image under abelianization.
    pub image: MultiPoly,
    pub verdict: MembershipVerdict,
}

impl F2Report {
    /// The refutation stands when the element satisfies both kernel
    /// conditions yet its commutative image is a non-member.
    pub fn refutes(&self) -> bool {
        self.m_vanishes && self.m_op_vanishes && !self.verdict.is_member()
    }
}

/// Build the two-generator sandwich element and run the graded obstruction
/// on its commutative image.
pub fn f2_refutation() -> Result<F2Report> {
    let alphabet: Vec<String> = vec![String::from("a"), String::from("b")];
    let (a, b) = (0usize, 1usize);
    let da = FreeTensor::delta(alphabet.clone(), a);
    let b1 = FreeTensor::elementary(alphabet.clone(), vec![b], Vec::new());
    let element = da.mul(&b1)?.mul(&da)?;
    let m_vanishes = element.m().is_zero();
    let m_op_vanishes = element.m_op().is_zero();
    let image = element.abelianize(&[0, 1], 2)?;
    let verdict = decide_membership_poly(&image, 2)?;
    Ok(F2Report { element, m_vanishes, m_op_vanishes, image, verdict })
}
