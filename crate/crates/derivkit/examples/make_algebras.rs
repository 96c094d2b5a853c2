//! Regenerates the sample algebra files in `data/`.

use derivkit::formats::store_algebra;
use derivkit_core::algebra::{diagonal_algebra, matrix_algebra, poly_quotient, FinAlg};
use derivkit_core::poly::MultiPoly;
use derivkit_core::rational::rvec;

fn quotient(coeffs: &[i64]) -> FinAlg {
    poly_quotient(&MultiPoly::from_one_var_coeffs("x", &rvec(coeffs))).unwrap()
}

/// Upper-triangular 2x2 matrices on the basis e11, e12, e22.
fn upper_triangular_2() -> FinAlg {
    FinAlg::new(
        3,
        vec!["e11".into(), "e12".into(), "e22".into()],
        [
            (0, 0, rvec(&[1, 0, 0])),
            (0, 1, rvec(&[0, 1, 0])),
            (1, 2, rvec(&[0, 1, 0])),
            (2, 2, rvec(&[0, 0, 1])),
        ],
        Some(rvec(&[1, 0, 1])),
    )
    .unwrap()
}

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let write = |name: &str, alg: &FinAlg| {
        std::fs::write(dir.join(name), store_algebra(alg)).unwrap();
        println!("wrote {name}");
    };
    write("m2.json", &matrix_algebra(2).unwrap());
    write("m3.json", &matrix_algebra(3).unwrap());
    write("d3.json", &diagonal_algebra(3));
    write("d5.json", &diagonal_algebra(5));
    write("qx2.json", &quotient(&[0, 0, 1]));
    write("qx3.json", &quotient(&[0, 0, 0, 1]));
    write("qx3m2.json", &quotient(&[-2, 0, 0, 1]));
    write("qx4mx.json", &quotient(&[0, -1, 0, 0, 1]));
    write("ut2.json", &upper_triangular_2());
}
