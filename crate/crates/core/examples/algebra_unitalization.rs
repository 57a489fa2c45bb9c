//! A non-unital algebra given by structure constants, its validation and the
//! algebra with a unit adjoined.

use fredholm_chern::fixtures::BaseAlgebra;
use fredholm_chern::{c64, AlgebraElement};

pub fn main() {
    // span{e11, e12} inside 2x2 matrices: e11 e11 = e11, e11 e12 = e12
    let alg = BaseAlgebra::Row.algebra();
    println!("basis {:?}, unit {:?}", alg.basis(), alg.unit());
    let report = alg.validate();
    println!(
        "associativity residual {:.1e}",
        report.associativity_residual
    );
    assert!(report.passes(1e-12));

    let x = AlgebraElement::new(vec![c64(1.0, 0.0), c64(0.0, 2.0)]);
    let y = AlgebraElement::new(vec![c64(0.5, 0.0), c64(-1.0, 0.0)]);
    println!("x y = {:?}", alg.multiply(&x, &y).unwrap().coords);
    println!("y x = {:?}", alg.multiply(&y, &x).unwrap().coords);

    let tilde = alg.unitalize();
    println!("unitalization: basis {:?}", tilde.basis());
    let one = AlgebraElement::basis(tilde.dim(), tilde.dim() - 1);
    let x_tilde = AlgebraElement::new(vec![c64(1.0, 0.0), c64(0.0, 2.0), c64(0.0, 0.0)]);
    let prod = tilde.multiply(&one, &x_tilde).unwrap();
    assert_eq!(prod, x_tilde);
    let report = tilde.validate();
    println!(
        "associativity {:.1e}, unit residual {:?}",
        report.associativity_residual, report.unit_residual
    );
}
