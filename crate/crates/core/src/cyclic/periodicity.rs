use std::f64::consts::PI;

use super::{hochschild_b, CyclicCochain};
use crate::error::{Error, Result};
use crate::fredholm::{FredholmModule, GradedOperator};
use crate::linalg::{c64, C64};
use crate::omega::{chern_character, cycle_constant, WordKit};
use crate::par;

fn check_even(n: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::Domain(format!(
            "periodicity needs an even degree, got {n}"
        )));
    }
    Ok(())
}

/// `Sτⁿ`, a cochain of degree `n + 2`.
///
/// `Sτⁿ(a₀, …, a_{n+2}) = (2iπ)^{m+1} m! Σ_j Tr_s(ρ(a₀)dρ(a₁)…dρ(a_{j−1}) ρ(a_j)ρ(a_{j+1}) dρ(a_{j+2})…dρ(a_{n+2}))`.
/// The `j = 0` term is an odd word and vanishes, so only `j = 1 … n+1` is summed.
pub fn s_operator(fm: &FredholmModule, n: usize) -> Result<CyclicCochain> {
    check_even(n)?;
    let m = n / 2;
    let kit = WordKit::new(fm, false);
    let dim = fm.algebra().dim();
    let slots = n + 3;
    let constant = cycle_constant(m + 1) / (m as f64 + 1.0);
    let tensor = par::tabulate(dim.pow(slots as u32), |flat| {
        let idx = par::decode(flat, dim, slots);
        let mut total = C64::new(0.0, 0.0);
        for j in 1..=n + 1 {
            let mut w = kit.rho[idx[0]].clone();
            for &k in &idx[1..j] {
                w = &w * &kit.drho[k];
            }
            w = &(&w * &kit.rho[idx[j]]) * &kit.rho[idx[j + 1]];
            for &k in &idx[j + 2..] {
                w = &w * &kit.drho[k];
            }
            total += kit.supertrace(&w);
        }
        constant * total
    });
    CyclicCochain::new(fm.algebra().clone(), n + 2, tensor)
}

/// `2^m i^{m+2} π^{m+1} m!`, the factor in front of `φ` in the coboundary identity.
pub fn witness_constant(m: usize) -> C64 {
    let factorial: f64 = (1..=m).map(|k| k as f64).product();
    c64(0.0, 1.0).powu(m as u32 + 2) * 2f64.powi(m as i32) * PI.powi(m as i32 + 1) * factorial
}

/// The cochain `φ` with `b(cφ) = Sτⁿ − τ^{n+2}` and everything that went into the check.
#[derive(Debug, Clone)]
pub struct PeriodicityWitness {
    /// `φ = Σ_j (−1)^j φ_j`, degree `n + 1`.
    pub phi: CyclicCochain,
    /// `c·φ` with `c = 2^m i^{m+2} π^{m+1} m!`.
    pub scaled_phi: CyclicCochain,
    pub s_tau: CyclicCochain,
    pub tau_next: CyclicCochain,
    /// `||b(cφ) − (Sτⁿ − τ^{n+2})||_∞`
    pub residual: f64,
}

impl PeriodicityWitness {
    /// `max(1, max|Sτⁿ|, max|τ^{n+2}|)`.
    pub fn scale(&self) -> f64 {
        self.s_tau.scale().max(self.tau_next.scale())
    }
}

/// `φ_j(a₀, …, a_{n+1}) = Trace(εF ρ(a_j) dρ(a_{j+1}) … dρ(a_{n+1}) dρ(a₀) … dρ(a_{j−1}))`.
fn phi_tensor(kit: &WordKit, dim: usize, n: usize) -> Vec<C64> {
    let slots = n + 2;
    par::tabulate(dim.pow(slots as u32), |flat| {
        let idx = par::decode(flat, dim, slots);
        let mut total = C64::new(0.0, 0.0);
        for j in 0..slots {
            let mut w: GradedOperator = kit.rho[idx[j]].clone();
            for &k in idx[j + 1..].iter().chain(&idx[..j]) {
                w = &w * &kit.drho[k];
            }
            let term = (&kit.eps_f * &w).total_trace();
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    })
}

pub fn periodicity_witness(fm: &FredholmModule, n: usize) -> Result<PeriodicityWitness> {
    check_even(n)?;
    let m = n / 2;
    let kit = WordKit::new(fm, false);
    let alg = fm.algebra().clone();
    let phi = CyclicCochain::new(alg.clone(), n + 1, phi_tensor(&kit, alg.dim(), n))?;
    let scaled_phi = phi.scaled(witness_constant(m));
    let s_tau = s_operator(fm, n)?;
    let tau_next = chern_character(fm, n + 2)?;
    let target = s_tau.sub(&tau_next)?;
    let residual = hochschild_b(&scaled_phi).sup_distance(&target)?;
    Ok(PeriodicityWitness {
        phi,
        scaled_phi,
        s_tau,
        tau_next,
        residual,
    })
}
