//! The periodicity operator and the explicit witness `phi` with
//! `b(c phi) = S tau^n - tau^(n+2)`.

use fredholm_chern::cyclic::{cohomologous, periodicity_witness};
use fredholm_chern::fixtures::{proj_module, random_instance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn main() {
    let w = periodicity_witness(&proj_module(), 0).unwrap();
    println!(
        "projection, n = 0: S tau(e,e,e) = {:.12}, tau^2(e,e,e) = {:.12}, residual {:.1e}",
        w.s_tau.get(&[0, 0, 0]),
        w.tau_next.get(&[0, 0, 0]),
        w.residual
    );

    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let fm = random_instance(&mut rng, 3);
    for n in [0, 2] {
        let w = periodicity_witness(&fm, n).unwrap();
        let d = cohomologous(&w.s_tau, &w.tau_next, 1e-9).unwrap();
        println!(
            "random module, n = {n}: witness residual {:.1e} (scale {:.2}), solver says cohomologous = {}",
            w.residual,
            w.scale(),
            d.cohomologous
        );
        assert!(w.residual < 1e-9 * w.scale() && d.cohomologous);
    }
}
