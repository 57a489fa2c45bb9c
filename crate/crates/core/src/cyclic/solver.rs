use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{cyclic_symmetrize, hochschild_b, is_cyclic_cocycle, CyclicCochain};
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::par;

/// Outcome of a coboundary search for `ψ₁ − ψ₂`.
#[derive(Debug, Clone)]
pub struct CohomologyDecision {
    pub cohomologous: bool,
    /// `||b x − (ψ₁ − ψ₂)||_∞` for the least-squares `x`.
    pub residual: f64,
    /// `max(1, max|ψ₁|, max|ψ₂|)`
    pub scale: f64,
    pub tolerance: f64,
    /// The cyclic cochain `x`, present when the decision is positive.
    pub witness: Option<CyclicCochain>,
}

/// A spanning set of `C^k_λ`: one symmetrized basis tensor per rotation orbit.
///
/// Orbits whose symmetrization vanishes are dropped; the rest have disjoint
/// supports and are therefore independent.
pub fn cyclic_basis(algebra: &Arc<FiniteAlgebra>, degree: usize) -> Vec<CyclicCochain> {
    let dim = algebra.dim();
    let slots = degree + 1;
    let len = dim.pow(slots as u32);
    let mut seen = vec![false; len];
    let mut basis = Vec::new();
    for flat in 0..len {
        if seen[flat] {
            continue;
        }
        let mut idx = par::decode(flat, dim, slots);
        for _ in 0..slots {
            seen[par::encode(&idx, dim)] = true;
            idx.rotate_left(1);
        }
        let mut tensor = vec![C64::new(0.0, 0.0); len];
        tensor[flat] = C64::new(1.0, 0.0);
        let e = CyclicCochain::new(algebra.clone(), degree, tensor).expect("shape");
        let sym = cyclic_symmetrize(&e);
        if sym.max_abs() > 0.5 {
            basis.push(sym);
        }
    }
    basis
}

/// Decides whether `ψ₁ − ψ₂ ∈ b(C^{k−1}_λ)` by least squares.
pub fn cohomologous(
    psi1: &CyclicCochain,
    psi2: &CyclicCochain,
    tol: f64,
) -> Result<CohomologyDecision> {
    if psi1.degree() != psi2.degree() || psi1.algebra() != psi2.algebra() {
        return Err(Error::Structure(
            "cochains differ in degree or algebra".into(),
        ));
    }
    for (name, psi) in [("lhs", psi1), ("rhs", psi2)] {
        let report = is_cyclic_cocycle(psi, tol);
        if !report.passed {
            return Err(Error::Precondition(format!(
                "{name} is not a cyclic cocycle: ||(1-λ)ψ|| = {:.3e}, ||bψ|| = {:.3e}",
                report.cyclicity_residual, report.coboundary_residual
            )));
        }
    }
    let delta = psi1.sub(psi2)?;
    let scale = psi1.scale().max(psi2.scale());
    let k = psi1.degree();
    let alg = psi1.algebra().clone();

    let basis = if k == 0 {
        Vec::new()
    } else {
        cyclic_basis(&alg, k - 1)
    };
    let (residual, witness) = if basis.is_empty() {
        (
            delta.max_abs(),
            (k > 0).then(|| CyclicCochain::zeros(alg.clone(), k - 1)),
        )
    } else {
        let images: Vec<CyclicCochain> = basis.iter().map(hochschild_b).collect();
        let rows = delta.tensor().len();
        let m = DMatrix::from_fn(rows, images.len(), |r, c| images[c].tensor()[r]);
        let rhs = DVector::from_column_slice(delta.tensor());
        let svd = m.clone().svd(true, true);
        let cutoff = svd.singular_values.max() * 1e-12 * (rows.max(images.len()) as f64);
        let x = svd
            .solve(&rhs, cutoff)
            .map_err(|e| Error::Structure(format!("least-squares solve failed: {e}")))?;
        let fitted = &m * &x;
        let residual = (fitted - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut w = CyclicCochain::zeros(alg.clone(), k - 1);
        for (coef, b) in x.iter().zip(&basis) {
            w = w.add(&b.scaled(*coef))?;
        }
        (residual, Some(w))
    };
    let cohomologous = residual <= tol * scale;
    Ok(CohomologyDecision {
        cohomologous,
        residual,
        scale,
        tolerance: tol,
        witness: if cohomologous { witness } else { None },
    })
}
