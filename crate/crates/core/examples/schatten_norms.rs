//! Singular values and Schatten norms of a few small matrices.

use fredholm_chern::linalg::{operator_norm, schatten_norm, singular_values};
use fredholm_chern::{c64, ComplexMatrix};

pub fn main() {
    let d = ComplexMatrix::real_diag(&[3.0, 4.0]);
    for p in [1.0, 2.0, 4.0, f64::INFINITY] {
        println!("||diag(3, 4)||_{p} = {:.6}", schatten_norm(&d, p).unwrap());
    }
    assert!((schatten_norm(&d, 2.0).unwrap() - 5.0).abs() < 1e-12);

    let nilpotent = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
    let s = singular_values(&nilpotent).unwrap();
    println!("singular values of [[0, 2], [0, 0]]: {:?}", s.values());

    let m = ComplexMatrix::from_rows(&[
        vec![c64(1.0, 1.0), c64(0.0, -2.0), c64(0.5, 0.0)],
        vec![c64(-1.0, 0.0), c64(0.3, 0.3), c64(0.0, 1.0)],
    ])
    .unwrap();
    let s = singular_values(&m).unwrap();
    println!("2x3 complex matrix: singular values {:?}", s.values());
    println!("  operator norm {:.6}", operator_norm(&m).unwrap());
    // the norms decrease in p
    let norms: Vec<f64> = [1.0, 1.5, 2.0, 3.0, 8.0]
        .iter()
        .map(|&p| schatten_norm(&m, p).unwrap())
        .collect();
    println!("  ||m||_p for p = 1, 1.5, 2, 3, 8: {norms:.6?}");
    assert!(norms.windows(2).all(|w| w[1] <= w[0] + 1e-12));

    match schatten_norm(&m, 0.5) {
        Err(e) => println!("p = 0.5 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
