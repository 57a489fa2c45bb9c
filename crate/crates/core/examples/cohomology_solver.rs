//! Deciding whether two cyclic cocycles differ by a coboundary.

use std::sync::Arc;

use fredholm_chern::cyclic::{cohomologous, cyclic_basis, hochschild_b};
use fredholm_chern::fixtures::{proj_module, random_instance, BaseAlgebra};
use fredholm_chern::omega::chern_character;
use fredholm_chern::{c64, CyclicCochain};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fm = random_instance(&mut rng, 0);
    let tau = chern_character(&fm, 2).unwrap();

    // add the coboundary of a cyclic 1-cochain
    let basis = cyclic_basis(tau.algebra(), 1);
    println!(
        "cyclic 1-cochains on a {}-dimensional algebra: {} basis vectors",
        tau.dim(),
        basis.len()
    );
    let shifted = tau
        .add(&hochschild_b(&basis[0].scaled(c64(0.25, -1.0))))
        .unwrap();
    let d = cohomologous(&shifted, &tau, 1e-9).unwrap();
    println!(
        "tau + b x ~ tau: {} (residual {:.1e})",
        d.cohomologous, d.residual
    );
    assert!(d.cohomologous);

    // the projection algebra has no cyclic 1-cochains, so its tau^2 is not a coboundary
    let tau = chern_character(&proj_module(), 2).unwrap();
    let doubled = tau.scaled(c64(2.0, 0.0));
    let d = cohomologous(&doubled, &tau, 1e-9).unwrap();
    println!(
        "projection: 2 tau ~ tau: {} (residual {:.3})",
        d.cohomologous, d.residual
    );
    assert!(!d.cohomologous);

    // a non-cyclic cochain is refused
    let alg = Arc::new(BaseAlgebra::Diagonal.algebra());
    let skew = CyclicCochain::from_fn(alg.clone(), 1, |idx| c64(idx[0] as f64, 0.0));
    match cohomologous(&skew, &CyclicCochain::zeros(alg.clone(), 1), 1e-9) {
        Err(e) => println!("non-cocycle: {e}"),
        Ok(d) => println!("unexpected decision {d:?}"),
    }

    // in degree 0 there are no coboundaries, so distinct traces stay distinct
    let trace = CyclicCochain::from_fn(alg.clone(), 0, |idx| c64(idx[0] as f64 + 1.0, 0.0));
    let d = cohomologous(&trace, &CyclicCochain::zeros(alg, 0), 1e-9).unwrap();
    println!("degree 0: {} (residual {:.3})", d.cohomologous, d.residual);
    assert!(!d.cohomologous);
}
