//! Building a Fredholm module from blocks, validating it, and watching the
//! validator reject a broken one.

use fredholm_chern::fixtures::{proj_module, random_instance};
use fredholm_chern::fredholm::validate_fredholm;
use fredholm_chern::{c64, AlgebraElement, ComplexMatrix, GradedOperator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn main() {
    let fm = proj_module();
    let r = validate_fredholm(&fm, 1e-12);
    println!("projection module: {r:?}");
    assert!(r.passed);

    let e = AlgebraElement::new(vec![c64(2.0, 0.0)]);
    let op = fm.apply_rho(&e).unwrap();
    println!("rho(2e) = pp {:?}, mm {:?}", op.block(0).pp, op.block(0).mm);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let random = random_instance(&mut rng, 4);
    let r = random.validate(1e-10);
    println!(
        "random module over {} simples: F^2 {:.1e}, homomorphism {:.1e}, passed {}",
        random.space().num_simples(),
        r.f_squared_residual,
        r.homomorphism_residual,
        r.passed
    );

    // rho(e) = diag(1, 2) is not idempotent
    let bad = GradedOperator::even(
        fm.space().clone(),
        vec![ComplexMatrix::real_diag(&[1.0])],
        vec![ComplexMatrix::real_diag(&[2.0])],
    )
    .unwrap();
    let broken = fm.with_rho(0, bad).unwrap();
    let r = broken.validate(1e-12);
    println!(
        "broken module: homomorphism residual {}, passed {}",
        r.homomorphism_residual, r.passed
    );
    assert!(!r.passed);
}
