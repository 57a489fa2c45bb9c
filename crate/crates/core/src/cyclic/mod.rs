//! Cochains on a finite algebra and the operators of the cyclic complex.
//!
//! A degree-`k` cochain is stored densely as its values on all `(k+1)`-tuples
//! of basis indices, first slot most significant. Multilinearity extends the
//! basis values to arbitrary elements.

mod periodicity;
mod solver;

use std::sync::Arc;

pub use periodicity::{periodicity_witness, s_operator, witness_constant, PeriodicityWitness};
pub use solver::{cohomologous, cyclic_basis, CohomologyDecision};

use crate::algebra::{AlgebraElement, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::par;

/// A multilinear functional on `A^{⊗(k+1)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicCochain {
    algebra: Arc<FiniteAlgebra>,
    degree: usize,
    tensor: Vec<C64>,
}

impl CyclicCochain {
    pub fn new(algebra: Arc<FiniteAlgebra>, degree: usize, tensor: Vec<C64>) -> Result<Self> {
        let want = algebra.dim().pow(degree as u32 + 1);
        if tensor.len() != want {
            return Err(Error::Structure(format!(
                "degree-{degree} cochain over a {}-dimensional algebra needs {want} entries, got {}",
                algebra.dim(),
                tensor.len()
            )));
        }
        if tensor.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidInput("cochain has non-finite entries".into()));
        }
        Ok(CyclicCochain {
            algebra,
            degree,
            tensor,
        })
    }

    pub fn zeros(algebra: Arc<FiniteAlgebra>, degree: usize) -> Self {
        let len = algebra.dim().pow(degree as u32 + 1);
        CyclicCochain {
            algebra,
            degree,
            tensor: vec![C64::new(0.0, 0.0); len],
        }
    }

    /// Tabulates `f` on every basis tuple.
    pub fn from_fn<F>(algebra: Arc<FiniteAlgebra>, degree: usize, f: F) -> Self
    where
        F: Fn(&[usize]) -> C64 + Sync + Send,
    {
        let dim = algebra.dim();
        let slots = degree + 1;
        let tensor = par::tabulate(dim.pow(slots as u32), |flat| {
            f(&par::decode(flat, dim, slots))
        });
        CyclicCochain {
            algebra,
            degree,
            tensor,
        }
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn tensor(&self) -> &[C64] {
        &self.tensor
    }

    pub fn into_tensor(self) -> Vec<C64> {
        self.tensor
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        debug_assert_eq!(idx.len(), self.degree + 1);
        self.tensor[par::encode(idx, self.dim())]
    }

    /// Multilinear evaluation on arbitrary elements.
    pub fn evaluate(&self, args: &[AlgebraElement]) -> Result<C64> {
        if args.len() != self.degree + 1 {
            return Err(Error::Structure(format!(
                "degree-{} cochain takes {} arguments, got {}",
                self.degree,
                self.degree + 1,
                args.len()
            )));
        }
        if args.iter().any(|a| a.dim() != self.dim()) {
            return Err(Error::Structure(
                "argument dimension does not match the algebra".into(),
            ));
        }
        let mut total = C64::new(0.0, 0.0);
        for (flat, value) in self.tensor.iter().enumerate() {
            if *value == C64::new(0.0, 0.0) {
                continue;
            }
            let idx = par::decode(flat, self.dim(), self.degree + 1);
            let w: C64 = idx.iter().zip(args).map(|(&i, a)| a.coords[i]).product();
            total += w * value;
        }
        Ok(total)
    }

    pub fn max_abs(&self) -> f64 {
        self.tensor.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max(1, max |entry|)`, the scale that relative tolerances refer to.
    pub fn scale(&self) -> f64 {
        self.max_abs().max(1.0)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree || self.algebra != other.algebra {
            return Err(Error::Structure(format!(
                "cochains of degree {} and {} over different or unequal algebras",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let tensor = self
            .tensor
            .iter()
            .zip(&other.tensor)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclicCochain {
            algebra: self.algebra.clone(),
            degree: self.degree,
            tensor,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let tensor = self
            .tensor
            .iter()
            .zip(&other.tensor)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CyclicCochain {
            algebra: self.algebra.clone(),
            degree: self.degree,
            tensor,
        })
    }

    pub fn scaled(&self, factor: C64) -> Self {
        CyclicCochain {
            algebra: self.algebra.clone(),
            degree: self.degree,
            tensor: self.tensor.iter().map(|z| z * factor).collect(),
        }
    }

    /// `||self − other||_∞`.
    pub fn sup_distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    /// Restricts a cochain over `Ã` to tuples drawn from the original basis.
    pub fn restrict_to_base(&self, base: &Arc<FiniteAlgebra>) -> Result<Self> {
        if !self.algebra.has_adjoined_unit() || self.algebra.dim() != base.dim() + 1 {
            return Err(Error::Structure(
                "restriction needs a cochain over the unitalization of the target algebra".into(),
            ));
        }
        let big = self.dim();
        let small = base.dim();
        let slots = self.degree + 1;
        let tensor = (0..small.pow(slots as u32))
            .map(|flat| self.tensor[par::encode(&par::decode(flat, small, slots), big)])
            .collect();
        CyclicCochain::new(base.clone(), self.degree, tensor)
    }
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `(λψ)(x₀, …, x_k) = (−1)^k ψ(x₁, …, x_k, x₀)`.
pub fn lambda_op(psi: &CyclicCochain) -> CyclicCochain {
    let k = psi.degree;
    let s = sign(k);
    CyclicCochain::from_fn(psi.algebra.clone(), k, |idx| {
        let mut rotated = idx[1..].to_vec();
        rotated.push(idx[0]);
        psi.get(&rotated) * s
    })
}

/// `(1 + λ + … + λ^k) ψ`.
pub fn cyclic_symmetrize(psi: &CyclicCochain) -> CyclicCochain {
    let mut acc = psi.clone();
    let mut power = psi.clone();
    for _ in 0..psi.degree {
        power = lambda_op(&power);
        acc = acc.add(&power).expect("same shape");
    }
    acc
}

/// The Hochschild coboundary
/// `(bψ)(x₀, …, x_{k+1}) = Σ_{i=0}^{k} (−1)^i ψ(…, x_i x_{i+1}, …) + (−1)^{k+1} ψ(x_{k+1}x₀, x₁, …, x_k)`.
pub fn hochschild_b(psi: &CyclicCochain) -> CyclicCochain {
    let alg = psi.algebra.clone();
    let k = psi.degree;
    let dim = alg.dim();
    CyclicCochain::from_fn(alg.clone(), k + 1, |idx| {
        let mut total = C64::new(0.0, 0.0);
        let mut args = vec![0usize; k + 1];
        for i in 0..=k {
            let prod = alg.product_of_basis(idx[i], idx[i + 1]);
            let s = sign(i);
            args[..i].copy_from_slice(&idx[..i]);
            args[i + 1..].copy_from_slice(&idx[i + 2..]);
            for (l, c) in prod.iter().enumerate().take(dim) {
                if *c != C64::new(0.0, 0.0) {
                    args[i] = l;
                    total += psi.get(&args) * c * s;
                }
            }
        }
        let prod = alg.product_of_basis(idx[k + 1], idx[0]);
        let s = sign(k + 1);
        args[1..].copy_from_slice(&idx[1..=k]);
        for (l, c) in prod.iter().enumerate() {
            if *c != C64::new(0.0, 0.0) {
                args[0] = l;
                total += psi.get(&args) * c * s;
            }
        }
        total
    })
}

/// `(B₀ψ)(a₀, …, a_{k−1}) = ψ(1, a₀, …, a_{k−1}) − ψ(a₀, …, a_{k−1}, 1)`.
///
/// The cochain must live over an algebra with a unit, typically `Ã`.
pub fn b0_op(psi: &CyclicCochain) -> Result<CyclicCochain> {
    let unit = psi.algebra.unit().ok_or_else(|| {
        Error::UnsupportedOperand(
            "B₀ needs a cochain that can be evaluated on the unit (use Ã)".into(),
        )
    })?;
    if psi.degree == 0 {
        return Err(Error::Domain(
            "B₀ lowers the degree; degree-0 cochains have no image".into(),
        ));
    }
    let unit: Vec<(usize, C64)> = unit
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, u)| *u != C64::new(0.0, 0.0))
        .collect();
    let k = psi.degree - 1;
    Ok(CyclicCochain::from_fn(psi.algebra.clone(), k, |idx| {
        let mut front = Vec::with_capacity(k + 2);
        let mut back = Vec::with_capacity(k + 2);
        let mut total = C64::new(0.0, 0.0);
        for &(l, u) in &unit {
            front.clear();
            front.push(l);
            front.extend_from_slice(idx);
            back.clear();
            back.extend_from_slice(idx);
            back.push(l);
            total += u * (psi.get(&front) - psi.get(&back));
        }
        total
    }))
}

/// `B = (1 + λ + … + λ^k) ∘ B₀`.
pub fn big_b_op(psi: &CyclicCochain) -> Result<CyclicCochain> {
    Ok(cyclic_symmetrize(&b0_op(psi)?))
}

/// Residuals of the cyclic cocycle conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleReport {
    /// `||(1 − λ)ψ||_∞`
    pub cyclicity_residual: f64,
    /// `||bψ||_∞`
    pub coboundary_residual: f64,
    /// `max(1, max |ψ|)`
    pub scale: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Checks `(1 − λ)ψ = 0` and `bψ = 0` relative to the cochain's scale.
pub fn is_cyclic_cocycle(psi: &CyclicCochain, tol: f64) -> CocycleReport {
    let cyclicity_residual = psi.sup_distance(&lambda_op(psi)).expect("same shape");
    let coboundary_residual = hochschild_b(psi).max_abs();
    let scale = psi.scale();
    let passed = cyclicity_residual <= tol * scale && coboundary_residual <= tol * scale;
    CocycleReport {
        cyclicity_residual,
        coboundary_residual,
        scale,
        tolerance: tol,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{proj_algebra, proj_module, random_cochain, random_instance};
    use crate::linalg::c64;
    use crate::omega::chern_character;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn proj() -> Arc<FiniteAlgebra> {
        Arc::new(proj_algebra())
    }

    fn one() -> C64 {
        c64(1.0, 0.0)
    }

    #[test]
    fn new_checks_length() {
        assert!(CyclicCochain::new(proj(), 1, vec![one(); 2]).is_err());
        assert!(CyclicCochain::new(proj(), 1, vec![c64(f64::NAN, 0.0)]).is_err());
        assert!(CyclicCochain::new(proj(), 1, vec![one()]).is_ok());
    }

    #[test]
    fn lambda_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let alg = random_instance(&mut rng, 0).algebra().clone();
        let psi0 = random_cochain(&mut rng, &alg, 0);
        assert_eq!(lambda_op(&psi0), psi0);
        let psi1 = CyclicCochain::new(proj(), 1, vec![one()]).unwrap();
        assert_eq!(lambda_op(&psi1).get(&[0, 0]), -one());
        for k in 0..4 {
            let psi = random_cochain(&mut rng, &alg, k);
            let mut x = psi.clone();
            for _ in 0..=k {
                x = lambda_op(&x);
            }
            assert_eq!(x, psi);
            assert_eq!(lambda_op(&psi).max_abs(), psi.max_abs());
        }
    }

    #[test]
    fn b_on_proj() {
        let psi = CyclicCochain::new(proj(), 1, vec![one()]).unwrap();
        assert_eq!(hochschild_b(&psi).get(&[0, 0, 0]), one());
        assert_eq!(
            hochschild_b(&CyclicCochain::zeros(proj(), 2)).max_abs(),
            0.0
        );
    }

    #[test]
    fn b_squared_vanishes_on_cyclic_cochains() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for seed in 0..6 {
            let alg = random_instance(&mut rng, seed).algebra().clone();
            for k in 0..3 {
                let psi = cyclic_symmetrize(&random_cochain(&mut rng, &alg, k));
                let bpsi = hochschild_b(&psi);
                assert!(bpsi.sup_distance(&lambda_op(&bpsi)).unwrap() < 1e-12 * bpsi.scale());
                assert!(hochschild_b(&bpsi).max_abs() < 1e-12 * bpsi.scale());
            }
        }
    }

    #[test]
    fn b0_needs_a_unit() {
        let psi = CyclicCochain::new(proj(), 1, vec![one()]).unwrap();
        assert!(matches!(b0_op(&psi), Err(Error::UnsupportedOperand(_))));
        assert!(matches!(big_b_op(&psi), Err(Error::UnsupportedOperand(_))));
    }

    #[test]
    fn b0_cancels_on_balanced_cochains() {
        let alg = Arc::new(proj_algebra().unitalize());
        let psi = CyclicCochain::new(alg.clone(), 2, vec![c64(0.5, -1.0); 8]).unwrap();
        assert_eq!(b0_op(&psi).unwrap().max_abs(), 0.0);
        assert_eq!(
            big_b_op(&CyclicCochain::zeros(alg, 3)).unwrap().max_abs(),
            0.0
        );
    }

    #[test]
    fn big_b_is_cyclic_and_multiplies_cyclic_images() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let alg = Arc::new(random_instance(&mut rng, 1).algebra().unitalize());
        for k in 1..4 {
            let psi = random_cochain(&mut rng, &alg, k);
            let bb = big_b_op(&psi).unwrap();
            assert!(bb.sup_distance(&lambda_op(&bb)).unwrap() < 1e-12 * bb.scale());
        }
        // ψ(1, x₁, …) = χ(x₁, …) with χ cyclic and supported away from the unit
        let n = alg.dim() - 1;
        for k in 1..4 {
            let raw = random_cochain(&mut rng, &alg, k - 1);
            let masked = CyclicCochain::from_fn(alg.clone(), k - 1, |idx| {
                if idx.contains(&n) {
                    C64::new(0.0, 0.0)
                } else {
                    raw.get(idx)
                }
            });
            let chi = cyclic_symmetrize(&masked);
            let psi = CyclicCochain::from_fn(alg.clone(), k, |idx| {
                if idx[0] == n {
                    chi.get(&idx[1..])
                } else {
                    C64::new(0.0, 0.0)
                }
            });
            assert_eq!(b0_op(&psi).unwrap(), chi);
            let expect = chi.scaled(c64(k as f64, 0.0));
            assert!(
                big_b_op(&psi).unwrap().sup_distance(&expect).unwrap() < 1e-12 * expect.scale()
            );
        }
    }

    #[test]
    fn proj_characters_are_cocycles() {
        let fm = proj_module();
        let r0 = is_cyclic_cocycle(&chern_character(&fm, 0).unwrap(), 1e-12);
        assert_eq!((r0.cyclicity_residual, r0.coboundary_residual), (0.0, 0.0));
        let r2 = is_cyclic_cocycle(&chern_character(&fm, 2).unwrap(), 1e-12);
        assert!(r2.passed);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let other = random_instance(&mut rng, 0);
        let mut t4 = chern_character(&other, 2).unwrap().into_tensor();
        t4[1] += one();
        let broken = CyclicCochain::new(other.algebra().clone(), 2, t4).unwrap();
        let r = is_cyclic_cocycle(&broken, 1e-9);
        assert!(!r.passed);
        assert!(r.cyclicity_residual > 0.5);
    }

    #[test]
    fn evaluate_is_multilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let alg = random_instance(&mut rng, 3).algebra().clone();
        let psi = random_cochain(&mut rng, &alg, 1);
        let x = AlgebraElement::new(vec![c64(1.0, 2.0), c64(-0.5, 0.0)]);
        let y = AlgebraElement::new(vec![c64(0.0, 1.0), c64(3.0, 0.0)]);
        let mut expect = C64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                expect += x.coords[i] * y.coords[j] * psi.get(&[i, j]);
            }
        }
        assert!((psi.evaluate(&[x.clone(), y]).unwrap() - expect).norm() < 1e-12);
        assert!(psi.evaluate(&[x]).is_err());
    }

    #[test]
    fn proj_periodicity() {
        let fm = proj_module();
        let s = s_operator(&fm, 0).unwrap();
        assert!((s.get(&[0, 0, 0]) - c64(0.0, 2.0 * std::f64::consts::PI)).norm() < 1e-12);
        let w = periodicity_witness(&fm, 0).unwrap();
        assert_eq!(w.phi.max_abs(), 0.0);
        assert_eq!(w.residual, 0.0);
        assert!(s.sup_distance(&w.tau_next).unwrap() < 1e-12);
        assert!(matches!(s_operator(&fm, 1), Err(Error::Domain(_))));
        assert!(matches!(periodicity_witness(&fm, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_representation_gives_zero_s() {
        let fm = proj_module();
        let zero = crate::fredholm::GradedOperator::zero(fm.space());
        let fm0 = fm.with_rho(0, zero).unwrap();
        assert_eq!(s_operator(&fm0, 0).unwrap().max_abs(), 0.0);
        assert_eq!(s_operator(&fm0, 2).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn random_periodicity_witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for seed in 0..8 {
            let fm = random_instance(&mut rng, seed);
            for n in [0, 2] {
                let w = periodicity_witness(&fm, n).unwrap();
                assert!(
                    w.residual < 1e-9 * w.scale(),
                    "seed {seed} n {n}: {}",
                    w.residual
                );
                assert!(w.phi.sup_distance(&lambda_op(&w.phi)).unwrap() < 1e-12 * w.phi.scale());
            }
        }
    }

    #[test]
    fn cohomologous_examples() {
        let fm = proj_module();
        let t0 = chern_character(&fm, 0).unwrap();
        let same = cohomologous(&t0, &t0, 1e-9).unwrap();
        assert!(same.cohomologous);
        let s = s_operator(&fm, 0).unwrap();
        let t2 = chern_character(&fm, 2).unwrap();
        let d = cohomologous(&s, &t2, 1e-9).unwrap();
        assert!(d.cohomologous);
        assert!(d.witness.unwrap().max_abs() < 1e-12);
        let zero = CyclicCochain::zeros(fm.algebra().clone(), 0);
        let no = cohomologous(&t0, &zero, 1e-9).unwrap();
        assert!(!no.cohomologous);
        assert!(no.witness.is_none());
        assert_eq!(no.residual, 1.0);
    }

    #[test]
    fn cohomologous_finds_coboundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for seed in 0..4 {
            let fm = random_instance(&mut rng, seed);
            let t2 = chern_character(&fm, 2).unwrap();
            let x = cyclic_symmetrize(&random_cochain(&mut rng, fm.algebra(), 1));
            let shifted = t2.add(&hochschild_b(&x)).unwrap();
            let d = cohomologous(&shifted, &t2, 1e-9).unwrap();
            assert!(d.cohomologous, "seed {seed}: {}", d.residual);
            let w = d.witness.unwrap();
            assert!(hochschild_b(&w).sup_distance(&hochschild_b(&x)).unwrap() < 1e-9 * d.scale);
        }
    }

    #[test]
    fn cohomologous_rejects_non_cocycles() {
        let psi = CyclicCochain::new(proj(), 1, vec![one()]).unwrap();
        assert!(matches!(
            cohomologous(&psi, &psi, 1e-9),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn restriction_needs_unitalization() {
        let fm = proj_module();
        let t = chern_character(&fm, 0).unwrap();
        assert!(t.restrict_to_base(fm.algebra()).is_err());
    }
}
