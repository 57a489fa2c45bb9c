//! The differential `d`, words in the calculus, the supertrace and the cycle
//! integral on the projection module.

use fredholm_chern::fixtures::proj_module;
use fredholm_chern::omega::{cycle_integral, d_op, omega_word, supertrace};
use fredholm_chern::{c64, AlgebraElement, GradedOperator};

pub fn main() {
    let fm = proj_module();
    let e = AlgebraElement::new(vec![c64(1.0, 0.0)]);
    let rho_e = fm.apply_rho(&e).unwrap();

    let de = d_op(&fm, &rho_e).unwrap();
    println!("d rho(e): pm {:?}, mp {:?}", de.block(0).pm, de.block(0).mp);
    let dde = d_op(&fm, &de).unwrap();
    println!("d d rho(e) max entry {:.1e}", dde.max_abs());

    let w = omega_word(&fm, &e, &[e.clone(), e.clone()]).unwrap();
    println!("rho(e) d rho(e) d rho(e) has degree {}", w.degree);
    println!("Tr_s(rho(e)) = {}", supertrace(&fm, &rho_e).unwrap());
    let v = cycle_integral(&fm, &w, 1).unwrap();
    println!("integral of the degree-2 word = {v:.12}");

    let id = GradedOperator::identity(fm.space());
    println!("Tr_s(id) = {}", supertrace(&fm, &id).unwrap());
}
