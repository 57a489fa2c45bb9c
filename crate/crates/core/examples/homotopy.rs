//! Homotopy invariance along a path of modules whose symmetry varies:
//! normalize the symmetry, integrate the transgression cochain, and compare
//! with the change of the degree-2 character.

use fredholm_chern::fixtures::projection_conjugation_path;
use fredholm_chern::homotopy::{homotopy_check, normalize_conjugate, validate_path};

pub fn main() {
    let path = projection_conjugation_path();
    println!(
        "symmetry is standard before normalizing: {}",
        path.has_standard_symmetry()
    );
    let path = normalize_conjugate(&path).unwrap();
    let v = validate_path(&path, 64, 1e-9).unwrap();
    println!(
        "normalized path: F^2 {:.1e}, homomorphism {:.1e} over 65 grid points",
        v.worst_f_squared(),
        v.worst_homomorphism()
    );

    let mut previous: Option<f64> = None;
    for steps in [16, 32, 64] {
        let r = homotopy_check(&path, 2, steps, 1e-6).unwrap();
        let ratio = previous
            .map(|p| format!(", shrink {:.1}x", p / r.b0_residual))
            .unwrap_or_default();
        println!(
            "{steps:>3} steps: |tau_1 - tau_0| = {:.4}, |B0 phi - (tau_1 - tau_0)| = {:.2e}{ratio}, S-classes agree: {}",
            r.character_change, r.b0_residual, r.periodicity_class.cohomologous
        );
        previous = Some(r.b0_residual);
    }
}
