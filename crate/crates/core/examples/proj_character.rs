//! Chern characters of the projection module and of a random module,
//! checked to be cyclic cocycles.

use fredholm_chern::cyclic::is_cyclic_cocycle;
use fredholm_chern::fixtures::{proj_module, random_instance};
use fredholm_chern::omega::chern_character;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn main() {
    let fm = proj_module();
    for n in [0, 2, 4] {
        let tau = chern_character(&fm, n).unwrap();
        let idx = vec![0; n + 1];
        println!("tau^{n}(e, ..., e) = {:.12}", tau.get(&idx));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let random = random_instance(&mut rng, 1);
    for n in [0, 2] {
        let tau = chern_character(&random, n).unwrap();
        let r = is_cyclic_cocycle(&tau, 1e-9);
        println!(
            "random module, n = {n}: |(1 - lambda) tau| = {:.1e}, |b tau| = {:.1e}, scale {:.3}",
            r.cyclicity_residual, r.coboundary_residual, r.scale
        );
        assert!(r.passed);
    }
}
