//! The differential graded algebra generated by a Fredholm module.
//!
//! `dθ = i[F, θ]` with the graded commutator `[F, θ] = Fθ − (−1)^{deg θ} θF`,
//! words `ρ(a₀) dρ(a₁) … dρ(a_j)`, the supertrace `Tr_s(θ) = ½ Trace(εF[F, θ])`,
//! the cycle integral `(2iπ)^m m! Tr_s` and the Chern character `τⁿ`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, FiniteAlgebra};
use crate::category::CatMorphism;
use crate::cyclic::CyclicCochain;
use crate::error::{Error, Result};
use crate::fredholm::{FredholmModule, GradedOperator, Parity};
use crate::linalg::{c64, C64};
use crate::par;

/// A homogeneous element of `Ωʲ`: an operator together with its degree `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaElement {
    pub op: GradedOperator,
    pub degree: usize,
}

impl OmegaElement {
    pub fn new(op: GradedOperator, degree: usize) -> Result<Self> {
        let want = Parity::of_degree(degree);
        // the zero operator is stored even; accept it in any degree
        if op.parity() != want && op.max_abs() != 0.0 {
            return Err(Error::Structure(format!(
                "operator of parity {:?} cannot have degree {degree}",
                op.parity()
            )));
        }
        Ok(OmegaElement { op, degree })
    }
}

/// Anything with a total trace `Σ_c trace(θ_c)`.
pub trait Traceable {
    fn total_trace(&self) -> Result<C64>;
}

impl Traceable for GradedOperator {
    fn total_trace(&self) -> Result<C64> {
        Ok(GradedOperator::total_trace(self))
    }
}

impl Traceable for CatMorphism {
    fn total_trace(&self) -> Result<C64> {
        CatMorphism::total_trace(self)
    }
}

pub fn total_trace<T: Traceable + ?Sized>(theta: &T) -> Result<C64> {
    theta.total_trace()
}

/// `Fθ − (−1)^{deg θ} θF`, part by part for mixed operators.
pub fn graded_commutator(f: &GradedOperator, theta: &GradedOperator) -> GradedOperator {
    match theta.parity() {
        Parity::Even => &(f * theta) - &(theta * f),
        Parity::Odd => &(f * theta) + &(theta * f),
        Parity::Mixed => {
            let even = theta.even_part();
            let odd = theta.odd_part();
            &(&(f * &even) - &(&even * f)) + &(&(f * &odd) + &(&odd * f))
        }
    }
}

fn same_space(fm: &FredholmModule, theta: &GradedOperator) -> Result<()> {
    if theta.space() != fm.space() {
        return Err(Error::Structure(
            "operator acts on a different graded object".into(),
        ));
    }
    Ok(())
}

/// `dθ = i[F, θ]`; flips parity.
pub fn d_op(fm: &FredholmModule, theta: &GradedOperator) -> Result<GradedOperator> {
    same_space(fm, theta)?;
    Ok(graded_commutator(fm.symmetry(), theta).scale(c64(0.0, 1.0)))
}

/// `ρ(a₀) dρ(a₁) … dρ(a_j)`. Elements may live in `A` or in `Ã`.
pub fn omega_word(
    fm: &FredholmModule,
    a0: &AlgebraElement,
    rest: &[AlgebraElement],
) -> Result<OmegaElement> {
    let mut op = fm.apply_rho(a0)?;
    for a in rest {
        let da = d_op(fm, &fm.apply_rho(a)?)?;
        op = &op * &da;
    }
    OmegaElement::new(op, rest.len())
}

/// `Tr_s(θ) = ½ Trace(εF[F, θ])`.
pub fn supertrace(fm: &FredholmModule, theta: &GradedOperator) -> Result<C64> {
    same_space(fm, theta)?;
    let f = fm.symmetry();
    let eps_f = &fm.grading() * f;
    let comm = graded_commutator(f, theta);
    Ok((&eps_f * &comm).total_trace() * 0.5)
}

/// `(2iπ)^m m!`.
pub fn cycle_constant(m: usize) -> C64 {
    let factorial: f64 = (1..=m).map(|k| k as f64).product();
    c64(0.0, 2.0 * PI).powu(m as u32) * factorial
}

/// `∫ω = (2iπ)^m m! Tr_s(ω)` for `ω` of degree `2m`.
pub fn cycle_integral(fm: &FredholmModule, omega: &OmegaElement, m: usize) -> Result<C64> {
    if omega.degree != 2 * m {
        return Err(Error::Domain(format!(
            "cycle integral of dimension {} applied to a degree-{} element",
            2 * m,
            omega.degree
        )));
    }
    Ok(cycle_constant(m) * supertrace(fm, &omega.op)?)
}

/// Generators and their differentials, precomputed for word evaluation.
pub(crate) struct WordKit {
    pub rho: Vec<GradedOperator>,
    pub drho: Vec<GradedOperator>,
    pub eps_f: GradedOperator,
    pub f: GradedOperator,
}

impl WordKit {
    pub fn new(fm: &FredholmModule, unital: bool) -> Self {
        let rho = if unital {
            fm.unital_generators()
        } else {
            fm.rho().to_vec()
        };
        let drho = rho
            .iter()
            .map(|r| d_op(fm, r).expect("same space"))
            .collect();
        let eps_f = &fm.grading() * fm.symmetry();
        WordKit {
            rho,
            drho,
            eps_f,
            f: fm.symmetry().clone(),
        }
    }

    /// `ρ(i₀) dρ(i₁) … dρ(i_k)`
    pub fn word(&self, idx: &[usize]) -> GradedOperator {
        let mut op = self.rho[idx[0]].clone();
        for &i in &idx[1..] {
            op = &op * &self.drho[i];
        }
        op
    }

    pub fn supertrace(&self, theta: &GradedOperator) -> C64 {
        (&self.eps_f * &graded_commutator(&self.f, theta)).total_trace() * 0.5
    }
}

fn character_over(
    fm: &FredholmModule,
    n: usize,
    algebra: Arc<FiniteAlgebra>,
    unital: bool,
) -> Result<CyclicCochain> {
    if n % 2 == 1 {
        return Err(Error::Domain(format!(
            "Chern character needs an even degree, got {n}"
        )));
    }
    let m = n / 2;
    if (n as f64) < fm.summability() - 1.0 {
        log::warn!(
            "degree {n} is below p - 1 = {} for this module; the character is still computed",
            fm.summability() - 1.0
        );
    }
    let kit = WordKit::new(fm, unital);
    let dim = algebra.dim();
    let constant = cycle_constant(m);
    let len = dim.pow(n as u32 + 1);
    let tensor = par::tabulate(len, |flat| {
        let idx = par::decode(flat, dim, n + 1);
        constant * kit.supertrace(&kit.word(&idx))
    });
    CyclicCochain::new(algebra, n, tensor)
}

/// `τⁿ(a₀, …, a_n) = (2iπ)^m m! Tr_s(ρ(a₀) dρ(a₁) … dρ(a_n))` on basis tuples of `A`.
pub fn chern_character(fm: &FredholmModule, n: usize) -> Result<CyclicCochain> {
    character_over(fm, n, fm.algebra().clone(), false)
}

/// The same character evaluated on basis tuples of `Ã`, so that operators
/// needing the unit in one slot (such as `B₀`) can act on it.
pub fn chern_character_unital(fm: &FredholmModule, n: usize) -> Result<CyclicCochain> {
    character_over(fm, n, Arc::new(fm.algebra().unitalize()), true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{proj_module, random_graded_operator};
    use crate::linalg::ComplexMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn i() -> C64 {
        c64(0.0, 1.0)
    }

    #[test]
    fn d_of_proj_generator() {
        let fm = proj_module();
        let d = d_op(&fm, &fm.rho()[0]).unwrap();
        assert_eq!(d.parity(), Parity::Odd);
        // i·[[0, -1], [1, 0]]
        assert_eq!(d.block(0).pm, ComplexMatrix::diag(&[-i()]));
        assert_eq!(d.block(0).mp, ComplexMatrix::diag(&[i()]));
    }

    #[test]
    fn d_of_identity_and_f() {
        let fm = proj_module();
        let id = GradedOperator::identity(fm.space());
        assert_eq!(d_op(&fm, &id).unwrap().max_abs(), 0.0);
        let df = d_op(&fm, fm.symmetry()).unwrap();
        assert_eq!(df, id.scale(c64(0.0, 2.0)));
    }

    #[test]
    fn omega_words() {
        let fm = proj_module();
        let e = AlgebraElement::new(vec![c64(1.0, 0.0)]);
        let w0 = omega_word(&fm, &e, &[]).unwrap();
        assert_eq!(w0.op, fm.rho()[0]);
        let w2 = omega_word(&fm, &e, &[e.clone(), e.clone()]).unwrap();
        assert_eq!(w2.degree, 2);
        // (dρ(e))² = id, so the word is ρ(e)
        assert!((&w2.op - &fm.rho()[0]).max_abs() < 1e-15);
        let unit = AlgebraElement::new(vec![c64(0.0, 0.0), c64(1.0, 0.0)]);
        let w = omega_word(&fm, &e, &[e.clone(), unit]).unwrap();
        assert_eq!(w.op.max_abs(), 0.0);
    }

    #[test]
    fn total_trace_examples() {
        let fm = proj_module();
        let id = GradedOperator::identity(fm.space());
        assert_eq!(total_trace(&id).unwrap(), c64(2.0, 0.0));
        assert_eq!(total_trace(fm.symmetry()).unwrap(), c64(0.0, 0.0));
        let ctx = Arc::new(
            crate::category::CategoryContext::new(vec!["a".into(), "b".into()], None).unwrap(),
        );
        let space = crate::fredholm::GradedHilbObject::from_dims(ctx, &[(1, 0), (2, 0)]).unwrap();
        let op = GradedOperator::even(
            space,
            vec![
                ComplexMatrix::real_diag(&[1.0]),
                ComplexMatrix::real_diag(&[2.0, 3.0]),
            ],
            vec![ComplexMatrix::zeros(0, 0), ComplexMatrix::zeros(0, 0)],
        )
        .unwrap();
        assert_eq!(total_trace(&op).unwrap(), c64(6.0, 0.0));
        let point = crate::category::CategoryContext::point();
        let h = crate::category::HilbObject::new(point.clone(), vec![2]).unwrap();
        let h1 = crate::category::HilbObject::new(point, vec![1]).unwrap();
        let non_square = CatMorphism::zero(h.clone(), h1).unwrap();
        assert!(total_trace(&non_square).is_err());
        assert_eq!(
            total_trace(&CatMorphism::identity(h)).unwrap(),
            c64(2.0, 0.0)
        );
    }

    #[test]
    fn supertrace_examples() {
        let fm = proj_module();
        assert!((supertrace(&fm, &fm.rho()[0]).unwrap() - c64(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(supertrace(&fm, fm.symmetry()).unwrap(), c64(0.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let theta = random_graded_operator(&mut rng, fm.space(), Parity::Even);
            let lhs = supertrace(&fm, &theta).unwrap();
            let rhs = (&fm.grading() * &theta).total_trace();
            assert!((lhs - rhs).norm() < 1e-12);
            let odd = random_graded_operator(&mut rng, fm.space(), Parity::Odd);
            assert_eq!(supertrace(&fm, &odd).unwrap(), c64(0.0, 0.0));
        }
    }

    #[test]
    fn cycle_integral_examples() {
        let fm = proj_module();
        let e = AlgebraElement::new(vec![c64(1.0, 0.0)]);
        let w0 = omega_word(&fm, &e, &[]).unwrap();
        assert_eq!(
            cycle_integral(&fm, &w0, 0).unwrap(),
            supertrace(&fm, &w0.op).unwrap()
        );
        let w2 = omega_word(&fm, &e, &[e.clone(), e.clone()]).unwrap();
        let v = cycle_integral(&fm, &w2, 1).unwrap();
        assert!((v - c64(0.0, 2.0 * PI)).norm() < 1e-12);
        assert!(matches!(cycle_integral(&fm, &w2, 0), Err(Error::Domain(_))));
        let zero = OmegaElement::new(GradedOperator::zero(fm.space()), 2).unwrap();
        assert_eq!(cycle_integral(&fm, &zero, 1).unwrap(), c64(0.0, 0.0));
    }

    #[test]
    fn proj_characters() {
        let fm = proj_module();
        let t0 = chern_character(&fm, 0).unwrap();
        assert!((t0.get(&[0]) - c64(1.0, 0.0)).norm() < 1e-12);
        let t2 = chern_character(&fm, 2).unwrap();
        assert!((t2.get(&[0, 0, 0]) - c64(0.0, 2.0 * PI)).norm() < 1e-12);
        assert!(matches!(chern_character(&fm, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn scalar_representation_has_vanishing_higher_characters() {
        // ρ(e) = id on a balanced graded space: dρ = 0
        let fm = proj_module();
        let id = GradedOperator::identity(fm.space());
        let scalar = fm.with_rho(0, id).unwrap();
        for n in [2, 4] {
            let t = chern_character(&scalar, n).unwrap();
            assert_eq!(t.max_abs(), 0.0);
        }
    }

    #[test]
    fn unital_character_restricts_to_plain_one() {
        let fm = proj_module();
        let t = chern_character(&fm, 2).unwrap();
        let tu = chern_character_unital(&fm, 2).unwrap();
        let r = tu.restrict_to_base(fm.algebra()).unwrap();
        assert!(r.sup_distance(&t).unwrap() < 1e-15);
    }
}
