//! Writes scenario files for the projection module and the conjugation path,
//! reloads them, and round-trips a character through a cochain file.
//!
//! `cargo run --example scenario_io -- <dir>` writes into `<dir>`; without an
//! argument a temporary directory is used.

use std::path::{Path, PathBuf};

use fredholm_chern::fixtures::{proj_module, projection_conjugation_path};
use fredholm_chern::omega::chern_character;
use fredholm_chern::scenario::{CochainFile, Scenario};

pub fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("fredholm-chern-scenarios"));
    run(&dir);
}

pub fn run(dir: &Path) {
    std::fs::create_dir_all(dir).unwrap();

    let proj = proj_module();
    let proj_file = dir.join("proj.json");
    std::fs::write(&proj_file, Scenario::to_file(&proj, None).to_json_string()).unwrap();

    let path = projection_conjugation_path();
    let start = path.eval_path(0.0).unwrap();
    let path_file = dir.join("conjugation_path.json");
    std::fs::write(
        &path_file,
        Scenario::to_file(&start, Some(&path)).to_json_string(),
    )
    .unwrap();

    let reloaded = Scenario::load(&proj_file).unwrap();
    assert_eq!(reloaded.module, proj);
    let reloaded = Scenario::load(&path_file).unwrap();
    assert_eq!(reloaded.path.as_ref(), Some(&path));

    let tau = chern_character(&reloaded.module, 2).unwrap();
    let cochain_file = dir.join("tau2.json");
    std::fs::write(
        &cochain_file,
        CochainFile::from_cochain(&tau).to_json_string(),
    )
    .unwrap();
    let back = CochainFile::load(&cochain_file)
        .unwrap()
        .to_cochain(reloaded.module.algebra(), "tau2")
        .unwrap();
    assert_eq!(back, tau);

    println!("wrote {}", proj_file.display());
    println!("wrote {}", path_file.display());
    println!("wrote {} (bit-exact round trip)", cochain_file.display());
}
