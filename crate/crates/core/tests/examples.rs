//! Every example runs to completion.

#[path = "../examples/schatten_norms.rs"]
mod schatten_norms;

#[path = "../examples/category_morphisms.rs"]
mod category_morphisms;

#[path = "../examples/algebra_unitalization.rs"]
mod algebra_unitalization;

#[path = "../examples/fredholm_validate.rs"]
mod fredholm_validate;

#[path = "../examples/omega_calculus.rs"]
mod omega_calculus;

#[path = "../examples/proj_character.rs"]
mod proj_character;

#[path = "../examples/periodicity.rs"]
mod periodicity;

#[path = "../examples/cohomology_solver.rs"]
mod cohomology_solver;

#[path = "../examples/homotopy.rs"]
mod homotopy;

#[path = "../examples/scenario_io.rs"]
#[allow(dead_code)]
mod scenario_io;

#[test]
fn schatten_norms_runs() {
    schatten_norms::main();
}

#[test]
fn category_morphisms_runs() {
    category_morphisms::main();
}

#[test]
fn algebra_unitalization_runs() {
    algebra_unitalization::main();
}

#[test]
fn fredholm_validate_runs() {
    fredholm_validate::main();
}

#[test]
fn omega_calculus_runs() {
    omega_calculus::main();
}

#[test]
fn proj_character_runs() {
    proj_character::main();
}

#[test]
fn periodicity_runs() {
    periodicity::main();
}

#[test]
fn cohomology_solver_runs() {
    cohomology_solver::main();
}

#[test]
fn homotopy_runs() {
    homotopy::main();
}

#[test]
fn scenario_io_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    scenario_io::run(dir.path());
    assert!(dir.path().join("tau2.json").exists());
}
