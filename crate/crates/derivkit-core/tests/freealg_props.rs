//! Quantified properties of free tensor arithmetic and the
//! abelianization homomorphism.

mod common;

use derivkit_core::freealg::{FreePoly, FreeTensor, Word};
use derivkit_core::rational::rat;
use rand::Rng;

fn alphabet() -> Vec<String> {
    vec![String::from("a"), String::from("b")]
}

fn random_word(rng: &mut rand_chacha::ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| rng.random_range(0..2)).collect()
}

fn random_tensor(rng: &mut rand_chacha::ChaCha8Rng, terms: usize) -> FreeTensor {
    let mut t = FreeTensor::zero(alphabet());
    for _ in 0..terms {
        let u = random_word(rng, 2);
        let v = random_word(rng, 2);
        let c = rat(rng.random_range(-3..=3));
        t = t
            .add(&FreeTensor::elementary(alphabet(), u, v).scale(&c))
            .unwrap();
    }
    t
}

#[test]
fn tensor_multiplication_is_associative_and_unital() {
    let mut rng = common::rng(41);
    let unit = FreeTensor::elementary(alphabet(), Vec::new(), Vec::new());
    for _ in 0..200 {
        let a = random_tensor(&mut rng, 3);
        let b = random_tensor(&mut rng, 3);
        let c = random_tensor(&mut rng, 3);
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(unit.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&unit).unwrap(), a);
    }
}

#[test]
fn abelianization_is_a_homomorphism() {
    let mut rng = common::rng(42);
    for _ in 0..200 {
        let s = random_tensor(&mut rng, 3);
        let t = random_tensor(&mut rng, 3);
        let lhs = s.mul(&t).unwrap().abelianize(&[0, 1], 2).unwrap();
        let rhs = s.abelianize(&[0, 1], 2).unwrap().mul(&t.abelianize(&[0, 1], 2).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn abelianization_respects_addition_and_scaling() {
    let mut rng = common::rng(43);
    for _ in 0..100 {
        let s = random_tensor(&mut rng, 3);
        let t = random_tensor(&mut rng, 3);
        let sum = s.add(&t).unwrap().abelianize(&[0, 1], 2).unwrap();
        let parts = s
            .abelianize(&[0, 1], 2)
            .unwrap()
            .add(&t.abelianize(&[0, 1], 2).unwrap());
        assert_eq!(sum, parts);
    }
}

#[test]
fn multiplication_maps_respect_products_by_kernel_elements() {
    // m(t·s) = 0 whenever m(s) = 0, in the free setting
    let mut rng = common::rng(44);
    for _ in 0..100 {
        let t = random_tensor(&mut rng, 3);
        // s = u⊗v − 1⊗uv is killed by m
        let u = random_word(&mut rng, 2);
        let v = random_word(&mut rng, 2);
        let mut uv = u.clone();
        uv.extend_from_slice(&v);
        let s = FreeTensor::elementary(alphabet(), u, v)
            .sub(&FreeTensor::elementary(alphabet(), Vec::new(), uv))
            .unwrap();
        assert!(s.m().is_zero());
        assert!(t.mul(&s).unwrap().m().is_zero());
    }
}

#[test]
fn free_poly_concatenation() {
    let a = FreePoly::generator(alphabet(), 0);
    let b = FreePoly::generator(alphabet(), 1);
    let ab = a.mul(&b).unwrap();
    let ba = b.mul(&a).unwrap();
    assert_ne!(ab, ba);
    assert_eq!(ab, FreePoly::word(alphabet(), vec![0, 1]));
    let one = FreePoly::one(alphabet());
    assert_eq!(one.mul(&ab).unwrap(), ab);
}

#[test]
fn alphabet_mismatch_is_rejected() {
    let t1 = FreeTensor::elementary(alphabet(), vec![0], Vec::new());
    let t2 = FreeTensor::elementary(vec![String::from("z")], vec![0], Vec::new());
    assert!(t1.mul(&t2).is_err());
    assert!(t1.add(&t2).is_err());
}

#[test]
fn pair_tensor_extends_bilinearly() {
    let a = FreePoly::generator(alphabet(), 0);
    let b = FreePoly::generator(alphabet(), 1);
    let p = a.add(&b).unwrap();
    let q = a.sub(&b).unwrap();
    // (a + b) ⊗ (a − b) expands into four elementary tensors
    let t = FreeTensor::from_pair(&p, &q).unwrap();
    let expected = FreeTensor::elementary(alphabet(), vec![0], vec![0])
        .sub(&FreeTensor::elementary(alphabet(), vec![0], vec![1]))
        .unwrap()
        .add(&FreeTensor::elementary(alphabet(), vec![1], vec![0]))
        .unwrap()
        .sub(&FreeTensor::elementary(alphabet(), vec![1], vec![1]))
        .unwrap();
    assert_eq!(t, expected);
}
